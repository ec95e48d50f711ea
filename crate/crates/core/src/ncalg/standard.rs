//! The fixed family of presentations: O(SL_q(2)) and its localizations,
//! the lower Borel quotient and the Manin plane.

use alloc::sync::Arc;

use super::presentation::{OrderedRule, Pres, Presentation, Rhs, Swap};
use crate::scalars::QScalar;

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

pub const LAMBDA: usize = 0;
pub const XI: usize = 1;

pub const X: usize = 0;
pub const Y: usize = 1;

fn one() -> QScalar {
    QScalar::one()
}

fn sl2(name: &str, b_inv: bool, d_inv: bool) -> Pres {
    let mut p = Presentation::free_commutative(
        name,
        &[("a", false), ("b", b_inv), ("c", false), ("d", d_inv)],
    );
    // ab = q ba, ac = q ca, bd = q db, cd = q dc, bc = cb
    p.set_swap(B, A, Swap::QCommute(-1));
    p.set_swap(C, A, Swap::QCommute(-1));
    p.set_swap(D, B, Swap::QCommute(-1));
    p.set_swap(D, C, Swap::QCommute(-1));
    // da = 1 + q^-1 bc
    let da: Rhs = alloc::vec![(one(), alloc::vec![]), (QScalar::q_pow(-1), alloc::vec![(B, 1), (C, 1)])];
    p.set_swap(D, A, Swap::Rewrite(da));
    // ad = 1 + q bc
    p.ordered.push(OrderedRule {
        left: A,
        right: D,
        rhs: alloc::vec![(one(), alloc::vec![]), (QScalar::q(), alloc::vec![(B, 1), (C, 1)])],
    });
    if d_inv {
        // a = (1 + q bc) d^-1
        p.elim[A] = Some(alloc::vec![
            (one(), alloc::vec![(D, -1)]),
            (QScalar::q(), alloc::vec![(B, 1), (C, 1), (D, -1)]),
        ]);
    }
    p.star = Some(alloc::vec![
        (one(), D),
        (-QScalar::q(), C),
        (-QScalar::q_pow(-1), B),
        (one(), A),
    ]);
    Arc::new(p)
}

/// O(SL_q(2)) on generators a < b < c < d.
pub fn g() -> Pres {
    sl2("G", false, false)
}

/// G with b inverted.
pub fn g_b() -> Pres {
    sl2("G_b", true, false)
}

/// G with d inverted; `a` is eliminated via `a = (1 + q bc) d^-1`.
pub fn g_d() -> Pres {
    sl2("G_d", false, true)
}

/// G with b and d inverted.
pub fn g_bd() -> Pres {
    sl2("G_bd", true, true)
}

/// Lower Borel quotient: lambda invertible, lambda xi = q xi lambda.
pub fn borel() -> Pres {
    let mut p = Presentation::free_commutative("B", &[("lambda", true), ("xi", false)]);
    p.set_swap(XI, LAMBDA, Swap::QCommute(-1));
    Arc::new(p)
}

/// Manin plane: xy = q yx.
pub fn manin() -> Pres {
    let mut p = Presentation::free_commutative("V", &[("x", false), ("y", false)]);
    p.set_swap(Y, X, Swap::QCommute(-1));
    Arc::new(p)
}

pub fn scalars() -> Pres {
    Presentation::scalars()
}

/// Looks up a base presentation by its CLI name.
pub fn by_name(name: &str) -> Option<Pres> {
    Some(match name {
        "G" => g(),
        "G_b" | "Gb" => g_b(),
        "G_d" | "Gd" => g_d(),
        "G_bd" | "Gbd" => g_bd(),
        "B" | "Borel" => borel(),
        "V" | "Manin" => manin(),
        "k" | "scalars" => scalars(),
        _ => return None,
    })
}
