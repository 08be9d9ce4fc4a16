use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use lietruss::format::{Structure, StructureFile};
use lietruss::group::{parse_group_spec, spec_string, AbelianGroup};
use lietruss::heap::validate_heap;
use lietruss::lie::{
    affebra_to_ternary, bracket_from_truss, derivations_lie_truss, retract_lie_ring,
    strengthen_bracket, ternary_to_affebra, LieBase, LieTernary,
};
use lietruss::search::{
    enumerate_derivations, search_lie_brackets, search_rings, search_trusses,
    search_weak_not_strong, SearchKind, SearchOutcome, SearchSpec,
};
use lietruss::symbolic::{
    self, expand_lie_macro, parse, parse_identity, prove_identity, random_falsify, Expr,
    FreeElement, LieMacro, Theory,
};
use lietruss::{Error, ReportMode, Result, TrussStructure, ViolationReport};
use serde_json::{json, Value};

use crate::{KindArg, OpArg, SearchArgs, TheoryArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

/// Class counts quoted in the literature for Zp x Zp.
const QUOTED_TRUSS_CLASSES: usize = 23;
const QUOTED_RING_CLASSES: usize = 8;

pub fn report_error(e: &Error) -> ExitCode {
    let code = match e {
        Error::InvalidStructure(report) => {
            print_json(&serde_json::to_value(report).expect("reports serialize"));
            EXIT_VIOLATION
        }
        Error::LimitExceeded(_) => EXIT_BUDGET,
        Error::CharacteristicTwo => EXIT_GUARD,
        _ => EXIT_MALFORMED,
    };
    eprintln!("error: {e}");
    ExitCode::from(code)
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<(StructureFile, Structure)> {
    let file = StructureFile::from_json(&read_input(path)?)?;
    let s = file.to_structure()?;
    Ok((file, s))
}

fn verdict_code(r: &ViolationReport) -> ExitCode {
    ExitCode::from(if r.ok { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn check(path: &Path, strong: bool, all: bool) -> Result<ExitCode> {
    let mode = if all {
        ReportMode::All
    } else {
        ReportMode::First
    };
    let file = StructureFile::from_json(&read_input(path)?)?;
    // a bad heap table is reported as a violation, not as malformed input
    if let Some(table) = file.raw_heap_table()? {
        let r = validate_heap(&table, mode)?;
        if !r.ok {
            print_json(&serde_json::to_value(&r).expect("reports serialize"));
            return Ok(verdict_code(&r));
        }
    }
    let r = file.to_structure()?.validate(mode, strong)?;
    print_json(&serde_json::to_value(&r).expect("reports serialize"));
    Ok(verdict_code(&r))
}

fn search_spec(args: &SearchArgs, up_to_iso: bool) -> Result<SearchSpec> {
    let orders = parse_group_spec(&args.group)?;
    let group = AbelianGroup::cyclic_product(&orders)?;
    let kind = match args.kind {
        KindArg::Truss => SearchKind::Truss,
        KindArg::Ring => SearchKind::Ring,
        KindArg::LieTruss => SearchKind::LieTruss,
        KindArg::Derivation => {
            return Err(Error::Format(
                "derivations depend on a multiplication; use `lietruss derivations FILE`".into(),
            ))
        }
    };
    Ok(SearchSpec::new(group, kind)
        .up_to_iso(up_to_iso)
        .limit(args.limit)
        .workers(args.jobs)
        .allow_large(args.allow_large))
}

enum Found {
    Trusses(SearchOutcome<TrussStructure>),
    Brackets(SearchOutcome<LieTernary>),
}

impl Found {
    fn total(&self) -> usize {
        match self {
            Found::Trusses(o) => o.total(),
            Found::Brackets(o) => o.total(),
        }
    }

    fn class_count(&self) -> usize {
        match self {
            Found::Trusses(o) => o.class_count(),
            Found::Brackets(o) => o.class_count(),
        }
    }

    fn files(&self, up_to_iso: bool, limit: Option<usize>) -> Vec<Value> {
        let as_value = |s: Structure| serde_json::to_value(s.to_file()).expect("files serialize");
        match self {
            Found::Trusses(o) => o
                .listing(up_to_iso, limit)
                .into_iter()
                .map(|t| as_value(Structure::Truss(t)))
                .collect(),
            Found::Brackets(o) => o
                .listing(up_to_iso, limit)
                .into_iter()
                .map(|l| as_value(Structure::LieTruss(l)))
                .collect(),
        }
    }
}

fn run_search(spec: &SearchSpec) -> Result<Found> {
    Ok(match spec.kind {
        SearchKind::Truss => Found::Trusses(search_trusses(spec)?),
        SearchKind::Ring => Found::Trusses(search_rings(spec)?),
        _ => Found::Brackets(search_lie_brackets(spec)?),
    })
}

/// A comparison with the quoted figures for Zp x Zp, when applicable.
fn comparison(group: &AbelianGroup, kind: SearchKind, classes: usize) -> Option<String> {
    let orders = group.orders()?;
    let square_of_prime =
        orders.len() == 2 && orders[0] == orders[1] && group.elementary_prime().is_some();
    if !square_of_prime {
        return None;
    }
    let (quoted, what) = match kind {
        SearchKind::Truss => (QUOTED_TRUSS_CLASSES, "truss"),
        SearchKind::Ring => (QUOTED_RING_CLASSES, "ring"),
        _ => return None,
    };
    let verdict = if classes == quoted {
        "agrees"
    } else {
        "differs"
    };
    Some(format!(
        "{classes} {what} classes on {} versus {quoted} quoted for Zp x Zp: {verdict}",
        spec_string(orders)
    ))
}

fn summary(spec: &SearchSpec, found: &Found, args: &SearchArgs) -> serde_json::Map<String, Value> {
    let mut out = serde_json::Map::new();
    out.insert("classes".into(), json!(found.class_count()));
    out.insert("group".into(), json!(args.group));
    out.insert(
        "kind".into(),
        serde_json::to_value(spec.kind).expect("kinds serialize"),
    );
    out.insert("total".into(), json!(found.total()));
    if let Some(line) = comparison(&spec.group, spec.kind, found.class_count()) {
        out.insert("comparison".into(), json!(line));
    }
    out
}

pub fn enumerate(args: &SearchArgs) -> Result<ExitCode> {
    let spec = search_spec(args, args.up_to_iso)?;
    let found = run_search(&spec)?;
    let mut out = summary(&spec, &found, args);
    out.insert(
        "representatives".into(),
        Value::Array(found.files(args.up_to_iso, args.limit)),
    );
    print_json(&Value::Object(out));
    Ok(ExitCode::from(EXIT_OK))
}

pub fn classify(args: &SearchArgs) -> Result<ExitCode> {
    let spec = search_spec(args, true)?;
    let found = run_search(&spec)?;
    let mut out = summary(&spec, &found, args);
    let sizes: Vec<usize> = match &found {
        Found::Trusses(o) => o.classes.iter().map(|c| c.size).collect(),
        Found::Brackets(o) => o.classes.iter().map(|c| c.size).collect(),
    };
    let reps = found.files(true, None);
    let classes: Vec<Value> = reps
        .into_iter()
        .zip(sizes)
        .take(args.limit.unwrap_or(usize::MAX))
        .map(|(rep, size)| json!({"representative": rep, "size": size}))
        .collect();
    out.insert("representatives".into(), Value::Array(classes));
    if spec.kind == SearchKind::LieTruss {
        let weak = search_weak_not_strong(&spec)?;
        let listed: Vec<Value> = weak
            .iter()
            .map(|w| {
                json!({
                    "bracket3": w.bracket.table(),
                    "violations": serde_json::to_value(&w.report.violations).expect("reports serialize"),
                })
            })
            .collect();
        out.insert("weak_not_strong".into(), Value::Array(listed));
    }
    print_json(&Value::Object(out));
    Ok(ExitCode::from(EXIT_OK))
}

fn ternary_of(s: Structure) -> Result<LieTernary> {
    match s {
        Structure::LieTruss(l) | Structure::HeapLieAffebra(l) => Ok(l),
        other => Err(Error::Format(format!(
            "expected a ternary bracket, got kind {:?}",
            other.kind()
        ))),
    }
}

fn truss_of(s: Structure) -> Result<TrussStructure> {
    match s {
        Structure::Truss(t) => Ok(t),
        other => Err(Error::Format(format!(
            "expected a truss, got kind {:?}",
            other.kind()
        ))),
    }
}

fn ternary_structure(l: LieTernary) -> Structure {
    match l.base() {
        LieBase::Affine(_) => Structure::HeapLieAffebra(l),
        LieBase::Heap(_) => Structure::LieTruss(l),
    }
}

pub fn convert(path: &Path, op: OpArg, at: Option<usize>, force_char2: bool) -> Result<ExitCode> {
    let (_, input) = load(path)?;
    let at = || at.ok_or_else(|| Error::Format(format!("--at is required for {op:?}")));
    let out = match op {
        OpArg::AffebraToTernary => match input {
            Structure::LieAffebra(l) => {
                Structure::HeapLieAffebra(affebra_to_ternary(&l, force_char2)?)
            }
            other => {
                return Err(Error::Format(format!(
                    "expected lie_affebra, got {:?}",
                    other.kind()
                )))
            }
        },
        OpArg::TernaryToAffebra => {
            Structure::LieAffebra(ternary_to_affebra(&ternary_of(input)?, at()?)?)
        }
        OpArg::RetractLieRing => {
            let l = ternary_of(input)?;
            let ring = retract_lie_ring(&l, at()?)?;
            Structure::LieRing {
                base: l.base().clone(),
                ring,
            }
        }
        OpArg::Strengthen => ternary_structure(strengthen_bracket(&ternary_of(input)?, at()?)?),
        OpArg::BracketFromTruss => Structure::LieTruss(bracket_from_truss(&truss_of(input)?)),
        OpArg::Derivations => Structure::LieTruss(derivations_lie_truss(&truss_of(input)?)?.lie),
    };
    let report = out.validate(ReportMode::First, false)?;
    if !report.ok {
        return Err(Error::InvalidStructure(report));
    }
    print!("{}", out.to_file().to_json());
    Ok(ExitCode::from(EXIT_OK))
}

fn theory(t: TheoryArg) -> Theory {
    match t {
        TheoryArg::FreeHeap => Theory::FreeHeap,
        TheoryArg::FreeTruss => Theory::FreeTruss,
    }
}

fn check_vars(exprs: &[&Expr], vars: Option<&[String]>) -> Result<()> {
    let Some(vars) = vars else { return Ok(()) };
    for e in exprs {
        if let Some(v) = e.variables().into_iter().find(|v| !vars.contains(v)) {
            return Err(Error::Format(format!("variable '{v}' is not among --vars")));
        }
    }
    Ok(())
}

/// `+x -y +2ab`
pub fn signed_terms(nf: &FreeElement) -> String {
    nf.coeffs()
        .iter()
        .map(|(w, c)| {
            let sign = if c.sign() == num_bigint::Sign::Minus {
                "-"
            } else {
                "+"
            };
            let mag = c.magnitude();
            if mag == &num_bigint::BigUint::from(1u8) {
                format!("{sign}{w}")
            } else {
                format!("{sign}{mag}{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn normalize(t: TheoryArg, vars: Option<&[String]>, text: &str) -> Result<ExitCode> {
    let e = parse(text)?;
    check_vars(&[&e], vars)?;
    let th = theory(t);
    let e = match th {
        Theory::FreeTruss => expand_lie_macro(&e, LieMacro::TrussCommutator)?,
        Theory::FreeHeap => e,
    };
    println!("{}", signed_terms(&symbolic::normalize(&e, th)?));
    Ok(ExitCode::from(EXIT_OK))
}

pub fn prove(
    t: TheoryArg,
    vars: Option<&[String]>,
    falsify: Option<usize>,
    text: &str,
) -> Result<ExitCode> {
    let (lhs, rhs) = parse_identity(text)?;
    check_vars(&[&lhs, &rhs], vars)?;
    let v = prove_identity(&lhs, &rhs, theory(t))?;
    if v.equal {
        println!("EQUAL");
        println!("normal form: {}", signed_terms(&v.lhs_nf));
    } else {
        println!("NOT-EQUAL");
        println!("lhs: {}", signed_terms(&v.lhs_nf));
        println!("rhs: {}", signed_terms(&v.rhs_nf));
        let diff: Vec<String> = v.diff.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        println!("diff: {{{}}}", diff.join(", "));
    }
    if let Some(samples) = falsify {
        match random_falsify(&lhs, &rhs, samples, 0)? {
            Some(ce) => {
                let assignment: Vec<String> = ce
                    .assignment
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                println!(
                    "counterexample: {} with {} gives {} != {}",
                    serde_json::to_string(&Structure::Truss(ce.model).to_file())
                        .expect("files serialize"),
                    assignment.join(" "),
                    ce.lhs,
                    ce.rhs
                );
            }
            None => println!("no counterexample in {samples} samples"),
        }
    }
    Ok(ExitCode::from(if v.equal {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }))
}

pub fn derivations(path: &Path) -> Result<ExitCode> {
    let (_, s) = load(path)?;
    let t = truss_of(s)?;
    let ders = enumerate_derivations(&t)?;
    let maps: Vec<&Vec<usize>> = ders.iter().map(|d| &d.0).collect();
    print_json(&json!({"count": ders.len(), "derivations": maps}));
    Ok(ExitCode::from(EXIT_OK))
}
