use std::thread;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use spintft_core::classify::{
    ascs_from_lattice, ascs_isomorphism, functor_f, kernel_automorphism, lattice_determinant, psm_from_even_sublattice,
    two_to_one_check,
};
use spintft_core::mcg::{
    intertwiner_check, oriented_restriction_check, oriented_s_squared_check, representative_independence, spin_s,
    spin_s_invertible, spin_t, Sector, SectorMap,
};
use spintft_core::metric::QuadraticForm;
use spintft_core::spin::{
    arf, spin_state_dims, summary_from_pointed, t3_closed_form, PointedSpinModular, SurfaceSpinStructure,
};
use spintft_core::surgery::{
    characteristic_sublinks, inertia, rt_oriented_from_sum, tau_from_graded, z_spin_from_tau, ColoringSum,
    LinkingMatrix,
};
use spintft_core::{Cyclotomic, Error, Rational};

use crate::error::CliError;
use crate::render::{self, Render};
use crate::schema::{LatticeDoc, MetricGroupDoc, SummaryDoc, SurgeryDoc};
use crate::{corpus, Command, Job};

/// Largest genus for which `dims` enumerates all `4^g` spin structures.
pub const MAX_ENUMERATED_GENUS: usize = 8;

pub struct Outcome {
    pub output: Value,
    /// False when a check ran to completion and failed.
    pub ok: bool,
}

fn ok(output: Value) -> Outcome {
    Outcome { output, ok: true }
}

impl Job {
    fn allow(&self, roles: &[&str]) -> Result<(), CliError> {
        for (role, _) in &self.inputs {
            if !roles.contains(&role.as_str()) {
                return Err(CliError::Usage(format!(
                    "input role `{role}` is not used by this command (expected one of {roles:?})"
                )));
            }
        }
        Ok(())
    }

    fn docs<T: DeserializeOwned>(&self, role: &str) -> Result<Vec<T>, CliError> {
        self.inputs
            .iter()
            .filter(|(r, _)| r == role)
            .map(|(_, source)| {
                let text = corpus::read(source)?;
                serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{source}: {e}")))
            })
            .collect()
    }

    fn one<T: DeserializeOwned>(&self, role: &str) -> Result<T, CliError> {
        let mut docs = self.docs(role)?;
        match docs.len() {
            1 => Ok(docs.remove(0)),
            n => Err(CliError::Usage(format!("expected exactly one `--input {role}=FILE`, got {n}"))),
        }
    }

    fn render(&self) -> Render {
        Render { precision: self.precision }
    }
}

pub fn run(job: &Job) -> Result<Outcome, CliError> {
    match &job.command {
        Command::GaussSum => gauss_sum(job),
        Command::Dims { genus, spin } => dims(job, *genus, spin.as_deref()),
        Command::Invariant => invariant(job),
        Command::CheckRefinement => check_refinement(job),
        Command::Classify { from_lattice } => {
            if *from_lattice {
                classify_lattice(job)
            } else {
                classify(job)
            }
        }
        Command::Lattice => lattice(job),
        Command::Mcg => mcg(job),
    }
}

fn form_input(job: &Job) -> Result<QuadraticForm, CliError> {
    job.allow(&["group", "psm"])?;
    let groups: Vec<MetricGroupDoc> = job.docs("group")?;
    let psms: Vec<MetricGroupDoc> = job.docs("psm")?;
    match (groups.as_slice(), psms.as_slice()) {
        ([g], []) => g.form(),
        // under `psm` the fermion is part of the input and must be valid
        ([], [p]) => p.pointed().map(|psm| psm.form().clone()),
        _ => Err(CliError::Usage(format!(
            "expected exactly one `--input group=FILE` or `psm=FILE`, got {}",
            groups.len() + psms.len()
        ))),
    }
}

fn gauss_sum(job: &Job) -> Result<Outcome, CliError> {
    let q = form_input(job)?;
    let r = job.render();
    let plus = q.gauss_sum(1);
    let minus = q.gauss_sum(-1);
    let product = plus.try_mul(&minus)?;
    Ok(ok(json!({
        "group": render::group(q.group()),
        "homogeneous": q.is_homogeneous(),
        "nondegenerate": q.is_nondegenerate(),
        "tau_plus": r.cyclotomic(&plus),
        "tau_minus": r.cyclotomic(&minus),
        "tau_product": r.cyclotomic(&product),
        "signature": q.signature().ok(),
    })))
}

fn parse_spin(text: &str) -> Result<SurfaceSpinStructure, CliError> {
    let vals = text
        .split(',')
        .map(|t| match t.trim() {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            other => Err(CliError::Usage(format!("--spin: `{other}` is not 0 or 1"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if vals.is_empty() || vals.len() % 2 == 1 {
        return Err(CliError::Usage("--spin: expected pairs a1,b1,a2,b2,...".into()));
    }
    let pairs: Vec<(u8, u8)> = vals.chunks(2).map(|c| (c[0], c[1])).collect();
    SurfaceSpinStructure::new(pairs.len(), pairs).map_err(|e| CliError::Usage(format!("--spin: {e}")))
}

fn integer_text(c: &Cyclotomic) -> Value {
    json!(c.to_rational().map(|r| r.to_string()).unwrap_or_else(|| c.to_expression()))
}

fn dims(job: &Job, genus: Option<usize>, spin: Option<&str>) -> Result<Outcome, CliError> {
    job.allow(&["summary", "psm"])?;
    let summaries: Vec<SummaryDoc> = job.docs("summary")?;
    let pointed: Vec<MetricGroupDoc> = job.docs("psm")?;
    let summary = match (summaries.as_slice(), pointed.as_slice()) {
        ([s], []) => s.summary()?,
        ([], [p]) => summary_from_pointed(&p.pointed()?),
        _ => return Err(CliError::Usage("expected exactly one `--input summary=FILE` or `--input psm=FILE`".into())),
    };
    if let Some(text) = spin {
        let sigma = parse_spin(text)?;
        if genus.is_some_and(|g| g != sigma.genus()) {
            return Err(CliError::Usage("--genus disagrees with the length of --spin".into()));
        }
        let d = spin_state_dims(&summary, &sigma)?;
        return Ok(ok(json!({"dim_plus": integer_text(&d.plus), "dim_minus": integer_text(&d.minus)})));
    }
    let genus = genus.unwrap_or(1);
    if genus > MAX_ENUMERATED_GENUS {
        return Err(CliError::Cap(format!(
            "--genus {genus} exceeds {MAX_ENUMERATED_GENUS}; pass --spin for a single structure"
        )));
    }
    let mut structures = Vec::new();
    for sigma in SurfaceSpinStructure::all(genus) {
        let d = spin_state_dims(&summary, &sigma)?;
        structures.push(json!({
            "spin": sigma.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "arf": arf(&sigma),
            "dim_plus": integer_text(&d.plus),
            "dim_minus": integer_text(&d.minus),
        }));
    }
    Ok(ok(json!({"genus": genus, "structures": structures})))
}

/// Sum over the colorings, split into `jobs` contiguous ranges.
pub fn evaluate(sum: &ColoringSum, jobs: usize) -> Cyclotomic {
    let n = sum.len();
    if jobs <= 1 || n < 1 << 12 {
        return sum.evaluate();
    }
    let chunk = n.div_ceil(jobs as u64);
    let parts: Vec<Vec<u64>> = thread::scope(|s| {
        let handles: Vec<_> =
            (0..jobs as u64).map(|k| s.spawn(move || sum.histogram(k * chunk..((k + 1) * chunk).min(n)))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    sum.from_histogram(&spintft_core::surgery::merge_histograms(parts))
}

fn z_spin(p: &PointedSpinModular, l: &LinkingMatrix, s: &[u8], jobs: usize) -> Result<(Cyclotomic, Cyclotomic), Error> {
    let graded = evaluate(&ColoringSum::graded(p, l, s)?, jobs);
    let tau = tau_from_graded(p, l, &graded)?;
    Ok((z_spin_from_tau(p, l, &tau)?, tau))
}

fn rt_oriented(p: &PointedSpinModular, l: &LinkingMatrix, jobs: usize) -> Result<Cyclotomic, Error> {
    rt_oriented_from_sum(p, l, &evaluate(&ColoringSum::all(p, l)?, jobs))
}

fn inertia_json(l: &LinkingMatrix) -> Value {
    let i = inertia(l);
    json!({"b_plus": i.b_plus, "b_minus": i.b_minus, "b_one": i.b_one, "signature": i.signature()})
}

fn invariant(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["psm", "link"])?;
    let p = job.one::<MetricGroupDoc>("psm")?.pointed()?;
    let (l, given) = job.one::<SurgeryDoc>("link")?.link()?;
    let r = job.render();
    let all = characteristic_sublinks(&l)?;
    let chosen = match given {
        Some(s) => vec![s],
        None => all.clone(),
    };
    let is_t3 = l.size() == 3 && l.entries().iter().flatten().all(|&x| x == 0);
    let summary = summary_from_pointed(&p);
    let mut structures = Vec::new();
    for s in &chosen {
        let (z, tau) = z_spin(&p, &l, s, job.jobs)?;
        let mut entry = json!({"sublink": s, "z_spin": r.cyclotomic(&z), "tau": r.cyclotomic(&tau)});
        if is_t3 {
            entry["t3_closed_form"] = r.cyclotomic(&t3_closed_form(&summary, [s[0], s[1], s[2]]));
        }
        structures.push(entry);
    }
    Ok(ok(json!({
        "inertia": inertia_json(&l),
        "sublink_count": all.len(),
        "structures": structures,
        "rt_oriented": r.cyclotomic(&rt_oriented(&p, &l, job.jobs)?),
    })))
}

fn check_refinement(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["psm", "link"])?;
    let p = job.one::<MetricGroupDoc>("psm")?.pointed()?;
    let links =
        job.docs::<SurgeryDoc>("link")?.iter().map(|d| d.link().map(|(l, _)| l)).collect::<Result<Vec<_>, _>>()?;
    if links.is_empty() {
        return Err(CliError::Usage("expected at least one `--input link=FILE`".into()));
    }
    let r = job.render();
    let half = Rational::new(1.into(), 2.into());
    let mut rows = Vec::new();
    for l in &links {
        let subs = characteristic_sublinks(l)?;
        let mut total = Cyclotomic::zero();
        for s in &subs {
            total = total.try_add(&z_spin(&p, l, s, job.jobs)?.0)?;
        }
        let spin_side = total.scale(&half);
        let oriented = rt_oriented(&p, l, job.jobs)?;
        let kappa = if oriented.is_zero() { None } else { Some(spin_side.try_div(&oriented)?) };
        rows.push((spin_side, oriented, kappa, subs.len()));
    }
    let kappa = rows.iter().find_map(|row| row.2.clone());
    let holds = rows.iter().all(|(spin_side, oriented, _, _)| match &kappa {
        Some(k) => *spin_side == k * oriented,
        None => spin_side.is_zero(),
    });
    let links_json: Vec<Value> = rows
        .iter()
        .map(|(spin_side, oriented, k, n)| {
            json!({
                "spin_side": r.cyclotomic(spin_side),
                "oriented": r.cyclotomic(oriented),
                "kappa": k.as_ref().map(|k| r.cyclotomic(k)),
                "structures": n,
            })
        })
        .collect();
    Ok(Outcome {
        output: json!({"links": links_json, "kappa": kappa.as_ref().map(|k| r.cyclotomic(k)), "holds": holds}),
        ok: holds,
    })
}

fn classify(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["psm"])?;
    let p = job.one::<MetricGroupDoc>("psm")?.pointed()?;
    let image = functor_f(&p)?;
    let kernel = kernel_automorphism(&p)?;
    let report = two_to_one_check(&p, job.cap)?;
    let r = job.render();
    Ok(Outcome {
        output: json!({
            "input": render::pointed(&p),
            "ascs": render::ascs(&image.ascs),
            "a": render::element(&image.a),
            "w2": render::element(&image.w2),
            "even_part_size": image.even.len(),
            "tau_plus": r.cyclotomic(&image.ascs.form().gauss_sum(1)),
            "kernel_automorphism": kernel.images.iter().map(render::element).collect::<Vec<_>>(),
            "two_to_one": {
                "pointed_automorphisms": report.pointed,
                "ascs_automorphisms": report.ascs,
                "image_size": report.image,
                "holds": report.holds(),
            },
        }),
        ok: report.holds(),
    })
}

fn lattice_header(doc: &LatticeDoc) -> Result<(spintft_core::classify::LatticeData, Value), CliError> {
    let lat = doc.lattice()?;
    let header = json!({
        "gram": lat.gram(),
        "w2": lat.w2(),
        "determinant": lattice_determinant(&lat),
        "signature": lat.signature(),
    });
    Ok((lat, header))
}

fn classify_lattice(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["lattice"])?;
    let (lat, mut out) = lattice_header(&job.one::<LatticeDoc>("lattice")?)?;
    let direct = ascs_from_lattice(&lat)?;
    out["ascs"] = render::ascs(&direct);
    match psm_from_even_sublattice(&lat) {
        Ok(p) => {
            let image = functor_f(&p)?;
            let iso = ascs_isomorphism(&image.ascs, &direct, job.cap.max(direct.group().size()))?;
            out["psm"] = render::pointed(&p);
            out["functor_image"] = render::ascs(&image.ascs);
            out["round_trip"] = json!(iso.is_some());
            if let Some((_, delta)) = iso {
                out["shift_witness"] = render::element(&delta);
            }
            let round_trip = out["round_trip"] == json!(true);
            Ok(Outcome { output: out, ok: round_trip })
        }
        Err(Error::NotSpin) => {
            out["psm"] = Value::Null;
            out["note"] = json!(Error::NotSpin.to_string());
            Ok(ok(out))
        }
        Err(e) => Err(e.into()),
    }
}

fn lattice(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["lattice"])?;
    let (lat, mut out) = lattice_header(&job.one::<LatticeDoc>("lattice")?)?;
    out["discriminant"] = render::ascs(&ascs_from_lattice(&lat)?);
    out["w2_odd"] = json!(lat.w2().iter().any(|x| x % 2 != 0));
    Ok(ok(out))
}

fn sector_json(s: Sector) -> Value {
    json!([s.alpha, s.beta])
}

fn sector_map(r: &Render, m: &SectorMap) -> Value {
    json!({"target": sector_json(m.target.sector), "matrix": r.matrix(&m.matrix)})
}

fn mcg(job: &Job) -> Result<Outcome, CliError> {
    job.allow(&["psm"])?;
    let p = job.one::<MetricGroupDoc>("psm")?.pointed()?;
    let r = job.render();
    let sectors: Vec<Value> = Sector::all()
        .into_iter()
        .map(|s| {
            let t = spin_t(&p, s);
            let labels: Vec<Value> = t
                .source
                .labels
                .iter()
                .map(|g| json!(format!("e{}_{g}", if s.alpha == 0 { "+" } else { "-" })))
                .collect();
            json!({"sector": sector_json(s), "labels": labels, "t": sector_map(&r, &t), "s": sector_map(&r, &spin_s(&p, s))})
        })
        .collect();
    let restriction = oriented_restriction_check(&p)?;
    let s_squared = oriented_s_squared_check(&p);
    let independent = representative_independence(&p);
    let invertible = spin_s_invertible(&p);
    let inter = intertwiner_check(&p)?;
    let all_ok = restriction && s_squared && independent && invertible && inter.holds();
    Ok(Outcome {
        output: json!({
            "sectors": sectors,
            "restriction_check": restriction,
            "oriented_s_squared": s_squared,
            "representative_independence": independent,
            "spin_s_invertible": invertible,
            "intertwiner": {
                "s_agrees": inter.s_agrees,
                "t_phase": inter.t_phase.as_ref().map(|c| r.cyclotomic(c)),
                "t_phase_order": inter.t_phase_order,
                "holds": inter.holds(),
            },
        }),
        ok: all_ok,
    })
}
