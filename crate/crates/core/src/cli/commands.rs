use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use super::args::{Cli, Command, CountCommand, EnumArgs, RepCommand, RepIo};
use super::{Failure, Report};
use crate::census::{self, CensusError, CensusOptions, DeOutcome};
use crate::exact_arith::{smith_normal_form, IntMatrix};
use crate::json::{big_value, biguint_value};
use crate::rep_lab::{self, EigenConfig, RepError, Representation};
use crate::torus_groups::{self, GroupError};
use crate::GroupSpec;

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::domain(e.name(), e)
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::domain(e.name(), e)
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::domain(e.name(), e)
    }
}

pub(super) fn dispatch(cli: Cli) -> Result<Report, Failure> {
    let Cli { seed, tol, command, .. } = cli;
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be a positive number, got {t}")));
        }
    }
    match command {
        Command::Classify(a) => classify(&a.n),
        Command::Abelianize(a) => abelianize(&a.n),
        Command::Snf { matrix } => snf(&matrix),
        Command::Count(c) => count(c),
        Command::Rep(r) => rep(r, seed, tol),
    }
}

fn report(payload: Value, text: String) -> Result<Report, Failure> {
    Ok(Report { payload, text, diagnostics: Vec::new() })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn classify(spec: &GroupSpec) -> Result<Report, Failure> {
    let class = torus_groups::classify(spec);
    let payload = json!({ "n": spec.exponents(), "classification": class });
    report(payload, format!("{spec}: {class}\n"))
}

fn abelianize(spec: &GroupSpec) -> Result<Report, Failure> {
    let ab = torus_groups::abelianize(spec)?;
    let text = format!("{spec}: {ab}\n");
    report(to_value(&ab), text)
}

fn snf(path: &Path) -> Result<Report, Failure> {
    let a: IntMatrix = read_json("--matrix", path)?;
    let d = smith_normal_form(&a);
    let mut payload = to_value(&d);
    payload["rank"] = json!(d.rank());
    let factors: Vec<String> = d.factors.iter().map(|x| x.to_string()).collect();
    let text = format!("rank: {}\nfactors: {}\n", d.rank(), factors.join(" "));
    report(payload, text)
}

fn options(e: &EnumArgs) -> CensusOptions {
    CensusOptions { budget: e.budget, witness: e.witness }
}

fn census_text<W>(r: &census::CensusReport<W>) -> String {
    let mut text = String::new();
    writeln!(text, "components: {}", r.component_count).unwrap();
    writeln!(text, "orbits: {} ({} exceptional)", r.total_orbits, r.exceptional_orbits).unwrap();
    writeln!(text, "tuples enumerated: {}", r.enumerated).unwrap();
    if !r.by_sign.is_empty() {
        writeln!(text, "{:>5} {:>8} {:>8} {:>11} {:>10}", "sign", "tuples", "orbits", "exceptional", "components").unwrap();
        for t in &r.by_sign {
            writeln!(text, "{:>5} {:>8} {:>8} {:>11} {:>10}", t.sign.as_i8(), t.tuples, t.orbits, t.exceptional, t.components)
                .unwrap();
        }
    }
    if let Some(ws) = &r.witnesses {
        writeln!(text, "witnesses: {}", ws.len()).unwrap();
    }
    text
}

fn count(c: CountCommand) -> Result<Report, Failure> {
    match c {
        CountCommand::Sl2 { spec, formula, both, enumeration } => count_sl2(&spec.n, formula, both, options(&enumeration)),
        CountCommand::FreeProduct { m, spec } => {
            let n = census::free_product_components_gl(m, &spec.n)?;
            let payload = json!({ "m": m, "n": spec.n.exponents(), "component_count": biguint_value(&n) });
            report(payload, format!("components: {n}\n"))
        }
        CountCommand::Roots { m, root_order, budget } => {
            let classes = census::nth_root_classes(m, root_order, budget)?;
            let mut payload = to_value(&classes);
            payload["m"] = json!(m);
            payload["root_order"] = json!(root_order);
            let text = format!("classes: {}\nrepresentatives listed: {}\n", classes.count, classes.representatives.len());
            report(payload, text)
        }
        CountCommand::De { m, spec, enumeration } => {
            let outcome = census::de_components(m, &spec.n, options(&enumeration))?;
            let mut payload = to_value(&outcome);
            payload["m"] = json!(m);
            payload["n"] = json!(spec.n.exponents());
            payload["component_count"] = json!(outcome.component_count());
            let text = match &outcome {
                DeOutcome::Empty => "components: 0 (empty: m exceeds min n_i)\n".to_string(),
                DeOutcome::Orbits(r) => census_text(r),
            };
            report(payload, text)
        }
        CountCommand::Gl2(spec) => {
            let k = census::gl2_irr_components(&spec.n)?;
            report(json!({ "n": spec.n.exponents(), "component_count": k }), format!("components: {k}\n"))
        }
        CountCommand::Mccrudden { m, root_order, budget } => {
            let check = census::mccrudden_bound_check(m, root_order, budget)?;
            let mut payload = to_value(&check);
            payload["m"] = json!(m);
            payload["root_order"] = json!(root_order);
            let text = format!(
                "GL classes: {}\nbound: {} central x {} SL classes = {}\nholds: {}\n",
                check.lhs, check.central_roots, check.sl_classes, check.rhs, check.bound_ok
            );
            report(payload, text)
        }
    }
}

fn count_sl2(spec: &GroupSpec, formula: bool, both: bool, opts: CensusOptions) -> Result<Report, Failure> {
    let n = spec.exponents();
    if formula {
        let k = census::sl2_components_formula(spec)?;
        let payload = json!({ "n": n, "method": "formula", "component_count": big_value(&k) });
        return report(payload, format!("components (formula): {k}\n"));
    }
    let enumerated = census::sl2_components_enumerate(spec, opts)?;
    let mut payload = to_value(&enumerated);
    payload["n"] = json!(n);
    let mut text = census_text(&enumerated);
    if both {
        let k = census::sl2_components_formula(spec)?;
        if k != enumerated.component_count.into() {
            return Err(Failure::domain(
                "FormulaMismatch",
                format!("formula gives {k}, enumeration gives {}", enumerated.component_count),
            ));
        }
        payload["method"] = json!("both");
        payload["formula_count"] = big_value(&k);
        writeln!(text, "formula agrees: {k}").unwrap();
    } else {
        payload["method"] = json!("enumeration");
    }
    report(payload, text)
}

fn read_json<T: DeserializeOwned>(flag: &str, path: &Path) -> Result<T, Failure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("{flag}: invalid input in {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, x: &T) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(x).expect("output serializes");
    s.push('\n');
    fs::write(path, s).map_err(|e| Failure::domain("IoError", format!("cannot write {}: {e}", path.display())))
}

fn read_rep(io: &RepIo, tol: Option<f64>) -> Result<Representation, Failure> {
    let rep: Representation = read_json("--in", &io.input)?;
    match tol {
        Some(t) => Ok(rep.with_tolerance(t)?),
        None => Ok(rep),
    }
}

fn complex_json(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

fn fmt_complex(z: num_complex::Complex64) -> String {
    format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

/// Relation check summary shared by several commands.
fn relations_json(rep: &Representation) -> (Value, String) {
    let check = rep_lab::verify_relations(rep);
    let mut text = format!("relation residual: {:e}\n", check.max_residual);
    match check.omega {
        Some(w) => writeln!(text, "central charge: {}", fmt_complex(w)).unwrap(),
        None => writeln!(text, "central charge: none (residual {:e})", check.central_residual).unwrap(),
    }
    (to_value(&check), text)
}

/// Emit a representation-producing command.
fn rep_output(rep: &Representation, io: &RepIo, mut payload: Value, mut text: String) -> Result<Report, Failure> {
    let (relations, rel_text) = relations_json(rep);
    payload["relations"] = relations;
    payload["representation"] = to_value(rep);
    text.push_str(&rel_text);
    if let Some(out) = &io.out {
        write_json(out, rep)?;
        writeln!(text, "written: {}", out.display()).unwrap();
    }
    report(payload, text)
}

fn rep(r: RepCommand, seed: u64, tol: Option<f64>) -> Result<Report, Failure> {
    match r {
        RepCommand::Build(io) => {
            let mut config: EigenConfig = read_json("--in", &io.input)?;
            if let Some(t) = tol {
                config.tol = t;
            }
            let rep = rep_lab::build_representation(&config, seed)?;
            let payload = json!({ "seed": seed, "sign": config.sign });
            let text = format!("built {} generators of size {} (seed {seed})\n", rep.spec().rank(), rep.size());
            rep_output(&rep, &io, payload, text)
        }
        RepCommand::Verify(io) => {
            let rep = read_rep(&io, tol)?;
            let (mut payload, mut text) = relations_json(&rep);
            let commutator = rep_lab::max_commutator_norm(&rep);
            payload["max_commutator"] = json!(commutator);
            writeln!(text, "max commutator |[A_i,A_j] - I|: {commutator:e}").unwrap();
            if rep.size() == 2 {
                payload["irreducible"] = match rep_lab::is_irreducible_sl2(&rep) {
                    Ok(b) => {
                        writeln!(text, "irreducible: {b}").unwrap();
                        json!(b)
                    }
                    Err(e) => {
                        writeln!(text, "irreducible: undecided ({})", e.name()).unwrap();
                        json!(e.name())
                    }
                };
            }
            if let Some(out) = &io.out {
                write_json(out, &payload)?;
            }
            report(payload, text)
        }
        RepCommand::Sdr { io, s } => {
            let rep = read_rep(&io, tol)?;
            let out = rep_lab::sdr_step(&rep, s)?;
            rep_output(&out, &io, json!({ "s": s }), format!("retracted at s = {s}\n"))
        }
        RepCommand::Zflow { io, k } => {
            let rep = read_rep(&io, tol)?;
            let out = rep_lab::z_flow(&rep, k)?;
            rep_output(&out, &io, json!({ "k": k }), format!("flowed by k = {k}\n"))
        }
        RepCommand::Path { io, steps } => {
            let rep = read_rep(&io, tol)?;
            let path = rep_lab::path_to_abelian(&rep, steps, seed)?;
            let endpoint = path.path.last().expect("non-empty path");
            let payload = json!({
                "steps": steps,
                "seed": seed,
                "max_residual": path.max_residual,
                "endpoint_commutator": path.endpoint_commutator,
            });
            let text = format!(
                "path of {} samples\nmax relation residual: {:e}\nendpoint commutator: {:e}\n",
                path.path.len(),
                path.max_residual,
                path.endpoint_commutator
            );
            rep_output(endpoint, &io, payload, text)
        }
        RepCommand::Invariant { io, index } => {
            let rep = read_rep(&io, tol)?;
            let a = generator(&rep, index)?;
            let x = rep_lab::double_coset_invariant(a, rep.tolerance())?;
            let payload = json!({ "index": index, "ad": complex_json(x), "bc": complex_json(x - 1.0) });
            if let Some(out) = &io.out {
                write_json(out, &payload)?;
            }
            report(payload, format!("ad = {}\nbc = {}\n", fmt_complex(x), fmt_complex(x - 1.0)))
        }
        RepCommand::Eigenspan { io, index, k } => {
            let rep = read_rep(&io, tol)?;
            let a = generator(&rep, index)?;
            let r = rep_lab::eigenspan_check(a, k, rep.tolerance())?;
            let mut payload = to_value(&r);
            payload["index"] = json!(index);
            payload["k"] = json!(k);
            if let Some(out) = &io.out {
                write_json(out, &payload)?;
            }
            report(payload, format!("dim Eig(A) = {}, dim Eig(A^{k}) = {}, equal: {}\n", r.dim_a, r.dim_ak, r.equal))
        }
    }
}

fn generator(rep: &Representation, index: usize) -> Result<&rep_lab::ComplexMatrix, Failure> {
    rep.matrices()
        .get(index)
        .ok_or_else(|| Failure::Usage(format!("--index: {index} is out of range for {} generators", rep.matrices().len())))
}
