//! Bundled example inputs, compiled into the binary and addressable as
//! `@name` wherever a file path is accepted.

use serde_json::{json, Value};

use crate::commands::{self, Outcome};
use crate::error::CliError;
use crate::{Command, Job};

/// `(name, role, contents)`
pub const FILES: &[(&str, &str, &str)] = &[
    ("z4", "psm", include_str!("../corpus/z4.json")),
    ("z12", "psm", include_str!("../corpus/z12.json")),
    ("z2z2", "psm", include_str!("../corpus/z2z2.json")),
    ("z4z4", "psm", include_str!("../corpus/z4z4.json")),
    ("z8_no_fermion", "group", include_str!("../corpus/z8_no_fermion.json")),
    ("ising", "summary", include_str!("../corpus/ising.json")),
    ("lens5", "link", include_str!("../corpus/lens5.json")),
    ("hyperbolic", "link", include_str!("../corpus/hyperbolic.json")),
    ("three_zero", "link", include_str!("../corpus/three_zero.json")),
    ("random4", "link", include_str!("../corpus/random4.json")),
    ("odd_cubic", "lattice", include_str!("../corpus/odd_cubic.json")),
    ("a2", "lattice", include_str!("../corpus/a2.json")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _, _)| *n == name).map(|(_, _, c)| *c)
}

pub fn read(source: &str) -> Result<String, CliError> {
    match source.strip_prefix('@') {
        Some(name) => {
            bundled(name).map(str::to_owned).ok_or_else(|| CliError::Usage(format!("no bundled corpus file `{name}`")))
        }
        None => std::fs::read_to_string(source).map_err(|e| CliError::Usage(format!("{source}: {e}"))),
    }
}

fn jobs() -> Vec<(&'static str, Job)> {
    let dims = |genus, spin: Option<&str>| Command::Dims { genus, spin: spin.map(str::to_owned) };
    vec![
        ("gauss-sum", Job::new(Command::GaussSum, &[("group", "@z4")])),
        ("gauss-sum", Job::new(Command::GaussSum, &[("group", "@z8_no_fermion")])),
        ("gauss-sum", Job::new(Command::GaussSum, &[("psm", "@z2z2")])),
        ("dims", Job::new(dims(None, Some("1,1")), &[("summary", "@ising")])),
        ("dims", Job::new(dims(Some(2), None), &[("summary", "@ising")])),
        ("dims", Job::new(dims(Some(1), None), &[("psm", "@z4z4")])),
        ("invariant", Job::new(Command::Invariant, &[("psm", "@z4"), ("link", "@lens5")])),
        ("invariant", Job::new(Command::Invariant, &[("psm", "@z12"), ("link", "@three_zero")])),
        (
            "check-refinement",
            Job::new(
                Command::CheckRefinement,
                &[
                    ("psm", "@z2z2"),
                    ("link", "@lens5"),
                    ("link", "@hyperbolic"),
                    ("link", "@three_zero"),
                    ("link", "@random4"),
                ],
            ),
        ),
        ("classify", Job::new(Command::Classify { from_lattice: false }, &[("psm", "@z12")])),
        ("classify", Job::new(Command::Classify { from_lattice: false }, &[("psm", "@z4z4")])),
        ("classify --from-lattice", Job::new(Command::Classify { from_lattice: true }, &[("lattice", "@odd_cubic")])),
        ("classify --from-lattice", Job::new(Command::Classify { from_lattice: true }, &[("lattice", "@a2")])),
        ("lattice", Job::new(Command::Lattice, &[("lattice", "@a2")])),
        ("mcg", Job::new(Command::Mcg, &[("psm", "@z4")])),
        ("mcg", Job::new(Command::Mcg, &[("psm", "@z4z4")])),
    ]
}

pub fn run_all(precision: usize, threads: usize, cap: usize) -> Outcome {
    let mut all_ok = true;
    let runs: Vec<Value> = jobs()
        .into_iter()
        .map(|(name, mut job)| {
            job.precision = precision;
            job.jobs = threads;
            job.cap = cap;
            let inputs: Vec<String> = job.inputs.iter().map(|(r, s)| format!("{r}={s}")).collect();
            let (ok, result) = match commands::run(&job) {
                Ok(o) => (o.ok, o.output),
                Err(e) => (false, json!({"error": {"kind": e.kind(), "message": e.message()}})),
            };
            all_ok &= ok;
            json!({"command": name, "inputs": inputs, "ok": ok, "result": result})
        })
        .collect();
    Outcome { output: json!({"corpus": runs}), ok: all_ok }
}
