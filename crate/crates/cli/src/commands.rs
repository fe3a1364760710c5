use crate::args::{Cli, Command, Family, Global};
use crate::json;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;
use std::{fs, io};
use thiserror::Error;
use tv4_core::census::{CensusEntry, GroupingReport};
use tv4_core::triang::{LensError, MoveError, TriangulationError};
use tv4_core::tvr::{tv4_bruteforce_exact, tv_r_bruteforce};
use tv4_core::{
    betti_z2, generate_bipyramid_lens_space, generate_lens_space, integral_h1, parse_triangulation, random_pachner_23,
    tv4_compute, HomologyError, TVReport, Triangulation, Tv4Error, Tv4Options, TvrError,
};

/// Agreement tolerance between the complex state sum and the exact value.
const COMPLEX_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: TriangulationError },
    #[error(transparent)]
    Tv4(#[from] Tv4Error),
    #[error(transparent)]
    Tvr(#[from] TvrError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("brute force gives {brute_force} but the class sum gives {class_sum}")]
    OracleMismatch { brute_force: String, class_sum: String },
}

impl CliError {
    /// 2 for rejected arguments, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lens(LensError::InvalidParameters { .. }) | CliError::Tvr(TvrError::InvalidParameters { .. }) => 2,
            _ => 1,
        }
    }
}

struct Output {
    json: Map<String, Value>,
    text: String,
}

fn load(path: &Path) -> Result<Triangulation, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    parse_triangulation(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write { path: path.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs `f` on every file in parallel and prints the results in input
/// order. Returns whether every file succeeded.
fn per_file<F>(global: &Global, files: &[PathBuf], f: F) -> bool
where
    F: Fn(&Triangulation) -> Result<Output, CliError> + Sync,
{
    let results: Vec<_> = files
        .par_iter()
        .map(|path| {
            let start = Instant::now();
            let result = load(path).and_then(|t| f(&t));
            (result, start.elapsed())
        })
        .collect();
    let mut ok = true;
    for (path, (result, elapsed)) in files.iter().zip(results) {
        let name = path.display().to_string();
        match result {
            Ok(out) => {
                if global.json {
                    let mut record = Map::new();
                    record.insert("file".into(), json!(name));
                    record.extend(out.json);
                    if global.timing {
                        record.insert("wall_time_ms".into(), json!(elapsed.as_secs_f64() * 1e3));
                    }
                    println!("{}", Value::Object(record));
                } else {
                    println!("{name}");
                    print!("{}", out.text);
                    if global.timing {
                        println!("  wall time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
                    }
                }
            }
            Err(e) => {
                ok = false;
                if global.json {
                    println!("{}", json!({ "file": name, "error": e.to_string() }));
                } else {
                    eprintln!("{name}: error: {e}");
                }
            }
        }
    }
    ok
}

fn report_text(r: &TVReport) -> String {
    let mut s = String::new();
    let z = if r.z_sign < 0 { "-√2" } else { "√2" };
    let _ = writeln!(
        s,
        "  n = {}, v = {}, beta1 = {}, classes = {}, q = {}, z = {z}",
        r.tetrahedra,
        r.vertices,
        r.beta1,
        r.class_count(),
        r.q
    );
    let _ = writeln!(s, "  TV = {}  (raw {}, ≈ {:.12})", r.normalized, r.raw, r.normalized.to_f64());
    let _ = writeln!(s, "{}", triple_text(r));
    let _ = writeln!(s, "  P_T(z) = {}", r.polynomial);
    for (m, plus) in &r.b_plus {
        let minus = r.b_minus.get(m).cloned().unwrap_or_default();
        let _ = writeln!(s, "  chi = {m}: {plus} even, {minus} odd");
    }
    s
}

fn triple_text(r: &TVReport) -> String {
    format!(
        "  triple: trivial {}, even chi {}, odd chi {}",
        r.triple[0], r.triple[1], r.triple[2]
    )
}

fn compute(t: &Triangulation, q: u32, oracle: bool, budget: u64) -> Result<Output, CliError> {
    let r = tv4_compute(t, q)?;
    let mut out = Output {
        json: json::report(&r),
        text: report_text(&r),
    };
    if oracle {
        let value = match tv4_bruteforce_exact(t, q, budget) {
            Ok(e) if e.raw == r.raw => {
                out.text.push_str("  oracle: agrees\n");
                json!({ "status": "agrees", "result": json::exact_oracle(&e) })
            }
            Ok(e) => {
                return Err(CliError::OracleMismatch {
                    brute_force: e.raw.to_string(),
                    class_sum: r.raw.to_string(),
                })
            }
            Err(TvrError::BudgetExceeded { budget }) => {
                out.text.push_str(&format!("  oracle: skipped, more than {budget} search nodes\n"));
                json!({ "status": "skipped", "budget": budget })
            }
            Err(e) => return Err(e.into()),
        };
        out.json.insert("oracle".into(), value);
    }
    Ok(out)
}

fn triple(t: &Triangulation, q: u32) -> Result<Output, CliError> {
    let r = tv4_compute(t, q)?;
    let mut m = Map::new();
    m.insert("q".into(), json!(q));
    m.insert("triple".into(), json::triple(&r.triple));
    m.insert("triple_raw".into(), json::triple(&r.triple_raw));
    Ok(Output {
        json: m,
        text: triple_text(&r) + "\n",
    })
}

fn poly(t: &Triangulation) -> Result<Output, CliError> {
    let r = tv4_compute(t, 1)?;
    let at_minus = r.polynomial.evaluate_at_signed_sqrt2(-1);
    let at_plus = r.polynomial.evaluate_at_signed_sqrt2(1);
    let mut m = Map::new();
    m.insert("polynomial".into(), json::polynomial(&r.polynomial));
    m.insert("at_minus_sqrt2".into(), json::dyadic(&at_minus));
    m.insert("at_plus_sqrt2".into(), json::dyadic(&at_plus));
    let text = format!(
        "  P_T(z) = {}\n  P_T(-√2) = {at_minus}  (raw TV, q = 1, 7)\n  P_T(√2) = {at_plus}  (raw TV, q = 3, 5)\n",
        r.polynomial
    );
    Ok(Output { json: m, text })
}

fn oracle(t: &Triangulation, r: u32, q: u32, budget: u64) -> Result<Output, CliError> {
    let complex = tv_r_bruteforce(t, r, q, budget)?;
    let mut m = Map::new();
    m.insert("r".into(), json!(r));
    m.insert("q".into(), json!(q));
    m.insert("complex".into(), json!({ "re": complex.re, "im": complex.im }));
    let mut text = format!("  TV({r},{q}) ≈ {:.12} {:+.12}i\n", complex.re, complex.im);
    let mut agrees = true;
    if r == 4 {
        let exact = tv4_bruteforce_exact(t, q, budget)?;
        let fast = tv4_compute(t, q)?;
        let close = (complex.re - fast.normalized.to_f64()).abs() < COMPLEX_TOL && complex.im.abs() < COMPLEX_TOL;
        agrees = exact.raw == fast.raw && close && exact.gamma_agrees;
        m.insert("exact".into(), json::exact_oracle(&exact));
        m.insert("class_sum_raw".into(), json::dyadic(&fast.raw));
        m.insert("agrees".into(), json!(agrees));
        let _ = writeln!(
            text,
            "  exact raw {} over {} colourings; class sum raw {}; {}",
            exact.raw,
            exact.colourings,
            fast.raw,
            if agrees { "agrees" } else { "DISAGREES" }
        );
    }
    if agrees {
        Ok(Output { json: m, text })
    } else {
        Err(CliError::OracleMismatch {
            brute_force: format!("{complex}"),
            class_sum: m["class_sum_raw"].to_string(),
        })
    }
}

fn homology(t: &Triangulation) -> Result<Output, CliError> {
    let (beta0, beta1) = betti_z2(t)?;
    let h = integral_h1(t);
    let mut m = Map::new();
    m.insert("n".into(), json!(t.size()));
    m.insert("v".into(), json!(t.vertex_count()));
    m.insert("beta0".into(), json!(beta0));
    m.insert("beta1".into(), json!(beta1));
    m.insert("h1".into(), json::h1(&h));
    let factors: Vec<String> = h.torsion.iter().map(BigUint::to_string).collect();
    let text = format!(
        "  beta0 = {beta0}, beta1(Z2) = {beta1}\n  H1 = {h}\n  invariant factors: [{}], free rank {}\n",
        factors.join(", "),
        h.free_rank
    );
    Ok(Output { json: m, text })
}

fn census_group(global: &Global, dir: &Path) -> Result<bool, CliError> {
    let read_dir = fs::read_dir(dir).map_err(|source| CliError::Read { path: dir.into(), source })?;
    let mut files: Vec<PathBuf> = read_dir
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tri"))
        .collect();
    files.sort();
    let results: Vec<_> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            let entry = load(path).and_then(|t| Ok(CensusEntry::compute(name.clone(), &t, &Tv4Options::default())?));
            (name, entry)
        })
        .collect();
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (name, result) in results {
        match result {
            Ok(e) => entries.push(e),
            Err(e) => {
                eprintln!("warning: skipping {name}: {e}");
                skipped.push((name, e.to_string()));
            }
        }
    }
    let report = GroupingReport::new(entries);
    if global.json {
        println!("{}", json::grouping(&report, &skipped));
    } else {
        println!("inputs: {} ({} skipped)", report.entries.len(), skipped.len());
        println!("groups by H1: {}", report.coarse_count());
        println!("groups by H1 and TV triples: {}", report.refined_count());
        println!("refinement factor: {:.4}", report.refinement_factor());
        for g in &report.refined {
            let names: Vec<&str> = g.members.iter().map(|&i| report.entries[i].name.as_str()).collect();
            let (t1, t3) = g.triples.as_ref().expect("refined groups carry triples");
            println!(
                "  H1 = {}; q=1 [{}, {}, {}]; q=3 [{}, {}, {}]: {}",
                g.h1,
                t1[0],
                t1[1],
                t1[2],
                t3[0],
                t3[1],
                t3[2],
                names.join(" ")
            );
        }
    }
    Ok(true)
}

pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute { q, oracle, budget, files } => {
            Ok(per_file(g, files, |t| compute(t, q.q, *oracle, budget.budget)))
        }
        Command::Triple { q, files } => Ok(per_file(g, files, |t| triple(t, q.q))),
        Command::Poly { files } => Ok(per_file(g, files, poly)),
        Command::Oracle { q, r, budget, files } => {
            tv4_core::tvr::QuantumRing::new(*r, q.q)?;
            Ok(per_file(g, files, |t| oracle(t, *r, q.q, budget.budget)))
        }
        Command::Homology { files } => Ok(per_file(g, files, homology)),
        Command::Gen { family, p, q, output } => {
            let t = match family {
                Family::Lens => generate_lens_space(*p, *q)?,
                Family::Bipyramid => generate_bipyramid_lens_space(*p, *q)?,
            };
            write_or_print(output.as_deref(), &t.to_tri_string())?;
            Ok(true)
        }
        Command::Move { count, seed, file, output } => {
            let mut t = load(file)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                t = random_pachner_23(&t, &mut rng)?;
            }
            write_or_print(output.as_deref(), &t.to_tri_string())?;
            Ok(true)
        }
        Command::CensusGroup { dir } => census_group(g, dir),
    }
}
