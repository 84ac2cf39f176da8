use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use spintft::corpus::FILES;
use spintft::schema::{LatticeDoc, MetricGroupDoc, SummaryDoc, SurgeryDoc};

fn spintft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spintft")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("spintft-test-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ising_genus_one_odd_structure() {
    let out = spintft(&["dims", "--input", "summary=@ising", "--spin", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"dim_plus":"0","dim_minus":"1"}"#);
}

#[test]
fn gauss_sum_of_z4() {
    let out = spintft(&["gauss-sum", "--input", "group=@z4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let tau = &v["tau_plus"];
    assert_eq!(tau["order"], 8);
    assert_eq!(tau["expression"], "z8");
    let re = tau["float"]["re"].as_f64().unwrap();
    let im = tau["float"]["im"].as_f64().unwrap();
    assert!((re - 0.5f64.sqrt()).abs() < 1e-10 && (im - 0.5f64.sqrt()).abs() < 1e-10);
    assert_eq!(v["signature"], 1);
    assert_eq!(v["tau_product"]["expression"], "1");
}

#[test]
fn precision_controls_float_digits() {
    let v = json(&spintft(&["gauss-sum", "--input", "group=@z4", "--precision", "3"]));
    assert_eq!(v["tau_plus"]["float"]["re"].as_f64().unwrap(), 0.707);
}

#[test]
fn fermion_with_wrong_twist_is_a_schema_error() {
    let path = temp_file(
        "bad-fermion.json",
        r#"{"orders": [2, 2], "q": {"gram": [["1/4", "0"], ["0", "1/4"]]}, "fermion": [1, 0]}"#,
    );
    let psm = format!("psm={path}");
    for cmd in ["classify", "gauss-sum", "mcg", "dims"] {
        let out = spintft(&[cmd, "--input", &psm, "--genus", "1"][..if cmd == "dims" { 5 } else { 3 }]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
        let v = json(&out);
        assert_eq!(v["error"]["kind"], "schema");
        assert!(v["error"]["message"].as_str().unwrap().starts_with("fermion:"), "{cmd}");
    }
}

#[test]
fn malformed_documents_name_the_field() {
    let path = temp_file("bad-table.json", r#"{"orders": [2], "q": {"table": {"(0)": "0"}}, "fermion": [1]}"#);
    let out = spintft(&["gauss-sum", "--input", &format!("group={path}")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("missing element (1)"));
    let path = temp_file("bad-sublink.json", r#"{"linking_matrix": [[1]], "sublink": [0]}"#);
    let out = spintft(&["invariant", "--input", "psm=@z4", "--input", &format!("link={path}")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["error"]["message"].as_str().unwrap().starts_with("sublink:"));
}

#[test]
fn usage_errors() {
    assert_eq!(spintft(&["classify"]).status.code(), Some(2));
    assert_eq!(spintft(&["classify", "--input", "link=@lens5"]).status.code(), Some(2));
    assert_eq!(spintft(&["mcg", "--input", "psm=@missing"]).status.code(), Some(2));
    assert_eq!(spintft(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(spintft(&[]).status.code(), Some(2));
}

#[test]
fn coloring_bound_is_a_cap_error() {
    let m: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect()).collect();
    let path = temp_file("six.json", &serde_json::json!({"linking_matrix": m}).to_string());
    let out = spintft(&["invariant", "--input", "psm=@z4z4", "--input", &format!("link={path}")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn corpus_run_is_deterministic_and_passes() {
    let a = spintft(&["--corpus"]);
    let b = spintft(&["--corpus", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["corpus"].as_array().unwrap().iter().all(|r| r["ok"] == true));
}

#[test]
fn threaded_sums_match_sequential() {
    let args = ["check-refinement", "--input", "psm=@z12", "--input", "link=@random4"];
    let one = spintft(&args);
    let many = spintft(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(json(&one)["holds"], true);
    assert_eq!(json(&one)["kappa"]["expression"], "1");
}

#[test]
fn bundled_files_validate() {
    for (name, role, text) in FILES {
        let checked = match *role {
            "psm" => serde_json::from_str::<MetricGroupDoc>(text).unwrap().pointed().map(|_| ()),
            "group" => serde_json::from_str::<MetricGroupDoc>(text).unwrap().form().map(|_| ()),
            "summary" => serde_json::from_str::<SummaryDoc>(text).unwrap().summary().map(|_| ()),
            "link" => serde_json::from_str::<SurgeryDoc>(text).unwrap().link().map(|_| ()),
            "lattice" => serde_json::from_str::<LatticeDoc>(text).unwrap().lattice().map(|_| ()),
            other => panic!("unknown role {other}"),
        };
        assert!(checked.is_ok(), "{name}: {checked:?}");
    }
}

#[test]
fn mcg_output_shape() {
    let v = json(&spintft(&["mcg", "--input", "psm=@z4z4"]));
    let sectors = v["sectors"].as_array().unwrap();
    assert_eq!(sectors.len(), 4);
    for s in sectors {
        assert_eq!(s["labels"].as_array().unwrap().len(), 4);
    }
    assert_eq!(sectors[1]["t"]["target"], serde_json::json!([0, 0]));
    assert_eq!(v["intertwiner"]["t_phase_order"], 1);
    assert_eq!(v["restriction_check"], true);
}

#[test]
fn lattice_commands() {
    let v = json(&spintft(&["classify", "--from-lattice", "--input", "lattice=@odd_cubic"]));
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["psm"]["orders"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).product::<u64>(), 4);
    let v = json(&spintft(&["classify", "--from-lattice", "--input", "lattice=@a2"]));
    assert!(v["psm"].is_null());
    assert_eq!(v["ascs"]["sigma"], 2);
    let v = json(&spintft(&["lattice", "--input", "lattice=@a2"]));
    assert_eq!(v["determinant"], 3);
}
