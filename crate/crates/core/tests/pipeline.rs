use qcoh_core::bundle::{cotensor_slice, glue_iso, sections_space, Cover};
use qcoh_core::charts::{ChartKind, TrivializationChart};
use qcoh_core::check::all_ok;
use qcoh_core::coherent::{describe_family, mu_density, solve_coherent};
use qcoh_core::hopf::HopfData;
use qcoh_core::parse::parse_expr;

#[test]
fn chart_data() {
    let d = TrivializationChart::new(ChartKind::D).unwrap();
    let b = TrivializationChart::new(ChartKind::B).unwrap();
    assert_eq!(d.coinvariant_generator().to_string(), "b d^-1");
    assert_eq!(*b.coinvariant_generator(), parse_expr("d b^-1", b.algebra()).unwrap());
    assert_eq!(d.gamma_weight(-3).unwrap().to_string(), "d^3");
    assert!(all_ok(&d.verify(3).unwrap()));
    assert!(all_ok(&b.verify(3).unwrap()));
}

#[test]
fn sections_match_the_cotensor_slice() {
    let cover = Cover::new().unwrap();
    let h = HopfData::sl2().unwrap();
    for n in 0..=2 {
        for degree in n + 1..=n + 2 {
            assert_eq!(sections_space(&cover, n, degree).unwrap().len(), n + 1);
            assert_eq!(cotensor_slice(n, degree as i64).unwrap().basis.len(), n + 1);
        }
        let (iso, checks) = glue_iso(&cover, &h, n, n + 1).unwrap();
        assert!(all_ok(&checks), "{checks:?}");
        assert_eq!(iso.images.len(), n + 1);
        assert!(iso.intertwiner.is_some());
    }
}

#[test]
fn coherent_family_and_density() {
    let d = TrivializationChart::new(ChartKind::D).unwrap();
    let fam = solve_coherent(&d, 2).unwrap();
    let text = describe_family(&fam);
    assert_eq!(text, "x^0 y^2 ⊗ (1) + x^1 y^1 ⊗ ((1 + q^-2)*u) + x^2 y^0 ⊗ (q^-1*u^2)");
    assert_eq!(mu_density(&d, 1).unwrap().to_string(), "1 + q^-1 b c");
}
