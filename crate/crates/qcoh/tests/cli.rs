use std::process::{Command, Output};

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_normal_form_star_and_haar() {
    let o = qcoh(&["eval", "d a", "G", "nf"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + q^-1 b c\n");
    assert_eq!(stdout(&qcoh(&["eval", "b", "G", "star"])), "-q c\n");
    assert_eq!(stdout(&qcoh(&["eval", "b c", "--action", "haar"])), "-q/(q^2 + 1)\n");
    assert_eq!(
        stdout(&qcoh(&["eval", "lambda", "B", "coproduct"])),
        "lambda ⊗ lambda\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(qcoh(&["eval", "a *", "G"]).status.code(), Some(2));
    assert_eq!(qcoh(&["eval", "b^-1", "G"]).status.code(), Some(3));
    assert_eq!(qcoh(&["eval", "b^-1 a", "G_b", "haar"]).status.code(), Some(3));
    assert_eq!(qcoh(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qcoh(&["verify", "gram", "--q", "0"]).status.code(), Some(2));
}

#[test]
fn corrupted_fixture_exits_one_with_witness() {
    let o = qcoh(&["verify", "hopf", "--fixture", "corrupted", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failing: Vec<&serde_json::Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["witness"].is_string()));
}

#[test]
fn resolution_report_at_half() {
    let o = qcoh(&["verify", "resolution", "--n", "2", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["resolution"][0]["alpha_at_q"], "1/21");
    assert_eq!(v["resolution"][0]["alpha_exact"], "q^4/(q^4 + q^2 + 1)");

    let o = qcoh(&["resolution", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha_at_q"], "1/5");
    assert_eq!(v["matrix_is_scalar"], true);
    assert_eq!(v["chart_agreement"], true);
    assert_eq!(v["lemma_checks"].as_array().unwrap().len(), 4);
    assert!(v["qbeta_checks"].as_array().unwrap().iter().all(|c| c["equal"] == true));
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "charts", "--seed", "5"];
    let a = qcoh(&args);
    let b = qcoh(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["runtime_ms"], 0);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn timing_and_formats() {
    let o = qcoh(&["verify", "gram", "--n", "0..2", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["runtime_ms"].as_u64().unwrap() > 0);
    let tsv = stdout(&qcoh(&["verify", "gram", "--n", "1", "--format", "tsv"]));
    assert!(tsv.starts_with("name\tstatus\twitness\tanchor\n"));
    let text = stdout(&qcoh(&["verify", "gram", "--n", "1", "--format", "text"]));
    assert!(text.contains(" 0 failed"));
}

#[test]
fn errata_report_lists_required_entries() {
    let o = qcoh(&["verify", "errata"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v["errata"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    for id in qcoh_core::errata::REQUIRED {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn haar_subcommand() {
    let o = qcoh(&["haar", "a d", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
}
