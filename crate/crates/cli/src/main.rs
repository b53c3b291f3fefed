//! `leibniz`: command-line front end for `leibniz-core`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use leibniz_core::functors::{check_diagram_d_budget, check_diagram_u_budget, d_functor_budget, u_functor_budget};
use leibniz_core::homology::{homology_dim, n_complex_budget, n_homology_dim};
use leibniz_core::nalg::{center, derived_ideal, derived_series, is_perfect, liezation, validate_fi};
use leibniz_core::regression::{self, Check};
use leibniz_core::tensoruce::{center_kernel_check_budget, phi_map_budget, uce_budget};
use leibniz_core::textfmt::{emit_algebra, format_vector, parse_algebra, parse_crossed_module};
use leibniz_core::xmod::{check_xmod_diagrams, i_functor, kernel_is_central, xmod_validate, Witness};
use leibniz_core::{Budget, Error, NAlgebra};

/// Number of seeded random-basis checks appended to `corpus`.
const RANDOMIZED_CHECKS: usize = 8;

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact computations with Leibniz n-algebras")]
struct Cli {
    /// Machine-readable output with stable keys.
    #[arg(long, global = true)]
    json: bool,
    /// Row cap for intermediate matrices.
    #[arg(long, global = true, default_value_t = Budget::default().0)]
    budget: usize,
    /// Seed for the randomized checks of `corpus`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fundamental identity.
    Validate { file: PathBuf },
    /// Arity, dimension, perfectness, center, skew-symmetry, derived series.
    Info { file: PathBuf },
    /// Re-read an n-algebra as a p-algebra through nested brackets.
    Uf {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The derived p-ary bracket on a tensor power.
    Df {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The universal skew-symmetric quotient.
    Liezation {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimension of nHL_k with trivial coefficients of the given dimension.
    Homology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        coeff_dim: usize,
    },
    /// The universal central extension of a perfect algebra.
    Uce { file: PathBuf },
    /// The comparison map between the arity-p and arity-n tensor powers.
    Phi {
        file: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// Functor-composition diagrams that apply to the given arities.
    Diagrams {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Action and crossed-module axioms of a crossed-module file.
    XmodCheck { file: PathBuf },
    /// The built-in regression table; exits 0 iff every check passes.
    Corpus,
}

/// Ordered `key: value` fields; the JSON form carries the same keys.
struct Report {
    fields: Vec<(&'static str, Value)>,
    passed: bool,
    /// Replaces the `key: value` lines in text mode.
    text: Option<String>,
    /// Exit code 2 instead of 1 when the report fails.
    budget_exceeded: bool,
}

impl Report {
    fn new() -> Self {
        Report { fields: Vec::new(), passed: true, text: None, budget_exceeded: false }
    }

    fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut map: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            map.insert("passed".into(), Value::Bool(self.passed));
            return format!("{}\n", Value::Object(map));
        }
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    fn exit_code(&self) -> u8 {
        match (self.passed, self.budget_exceeded) {
            (true, _) => 0,
            (false, true) => 2,
            (false, false) => 1,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<NAlgebra> {
    let text = read(path)?;
    parse_algebra(&text).with_context(|| format!("in {}", path.display()))
}

fn one_based(x: &[usize]) -> Vec<usize> {
    x.iter().map(|i| i + 1).collect()
}

fn validate(a: &NAlgebra) -> Report {
    let r = validate_fi(a);
    let mut rep = Report::new().field("arity", a.arity()).field("dim", a.dim());
    match r.failure {
        None => rep.field("fundamental_identity", "holds"),
        Some(f) => {
            rep.passed = false;
            rep.field("fundamental_identity", "fails")
                .field("witness_x", one_based(&f.x))
                .field("witness_y", one_based(&f.y))
                .field("lhs", format_vector(&f.lhs))
                .field("rhs", format_vector(&f.rhs))
        }
    }
}

fn info(a: &NAlgebra) -> Report {
    let n = a.arity();
    let perfect = is_perfect(a);
    let derived = derived_ideal(a).dim();
    let mut rep = Report::new()
        .field("field", a.field().to_string())
        .field("arity", n)
        .field("dim", a.dim())
        .field("perfect", perfect)
        .field("derived_dim", derived)
        .field("center_dim", center(a).dim())
        .field("skew_symmetric", a.is_skew_symmetric())
        .field("derived_series", derived_series(a));
    let head = format!("perfect: {perfect}, dim [L^{n}] = {derived}\n");
    rep.text = Some(head + &rep.render(false));
    rep
}

fn emitted(a: &NAlgebra, output: Option<&Path>) -> Result<Report> {
    let text = emit_algebra(a);
    let mut rep = Report::new().field("arity", a.arity()).field("dim", a.dim());
    match output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            rep = rep.field("output", path.display().to_string());
        }
        None => rep.text = Some(text.clone()),
    }
    Ok(rep.field("algebra", text))
}

fn homology(a: &NAlgebra, degree: usize, coeff_dim: usize, budget: Budget) -> Result<Report> {
    let c = n_complex_budget(a, coeff_dim, degree + 1, budget)?;
    Ok(Report::new().field("degree", degree).field("coeff_dim", coeff_dim).field("homology_dim", homology_dim(&c, degree)?))
}

fn uce(a: &NAlgebra, budget: Budget) -> Result<Report> {
    let u = uce_budget(a, budget)?;
    let hl1 = n_homology_dim(a, 1, budget)?;
    let kernel = u.extension.kernel.dim();
    let central = u.extension.is_central();
    let mut rep = Report::new()
        .field("star_dim", u.star.coker_dim())
        .field("kernel_dim", kernel)
        .field("homology_dim_1", hl1)
        .field("central", central);
    rep.passed = central && kernel == hl1;
    Ok(rep)
}

fn phi(a: &NAlgebra, p: usize, budget: Budget) -> Result<Report> {
    let map = phi_map_budget(a, p, budget)?;
    let c = center_kernel_check_budget(a, p, budget)?;
    let slots: Vec<Value> = c
        .slots
        .iter()
        .map(|s| json!({"position": s.position, "holds_n_center": s.holds_n_center, "holds_p_center": s.holds_p_center}))
        .collect();
    let mut rep = Report::new()
        .field("n", c.n)
        .field("p", c.p)
        .field("source_dim", map.source.coker_dim())
        .field("target_dim", map.target.coker_dim())
        .field("commutes_with_brackets", true)
        .field("surjective", map.rank() == map.target.coker_dim())
        .field("kernel_dim", c.kernel_dim)
        .field("center_n_dim", c.center_n_dim)
        .field("center_p_dim", c.center_p_dim)
        .field("center_vacuous", c.is_vacuous())
        .field("center_span_dim", c.sum_dim)
        .field("slots", slots)
        .field("center_in_kernel", c.verdict());
    rep.passed = c.verdict();
    Ok(rep)
}

/// `Ok(None)` when the arities do not fit the diagram.
fn applicable(r: leibniz_core::Result<bool>) -> Result<Option<bool>> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::IncompatibleArities { .. } | Error::ArityMismatch(..)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn diagrams(a: &NAlgebra, p: usize, q: usize, budget: Budget) -> Result<Report> {
    let u = applicable(check_diagram_u_budget(a, p, q, budget))?;
    let d = applicable(check_diagram_d_budget(a, q, p, budget))?;
    let x = applicable(i_functor(a, 1).and_then(|cm| check_xmod_diagrams(a, &cm, p)).map(|r| r.passed()))?;
    let show = |v: Option<bool>| v.map_or(Value::from("not applicable"), Value::from);
    let mut rep = Report::new().field("u_diagram", show(u)).field("d_diagram", show(d)).field("xmod_diagrams", show(x));
    rep.passed = [u, d, x].iter().all(|v| v.unwrap_or(true));
    Ok(rep)
}

fn witness(w: &Option<Witness>) -> String {
    match w {
        None => "holds".into(),
        Some(w) => format!("fails at {:?} replacing slots {:?}", one_based(&w.tuple), one_based(&w.replaced)),
    }
}

fn xmod_check(path: &Path) -> Result<Report> {
    let text = read(path)?;
    let cm = parse_crossed_module(&text).with_context(|| format!("in {}", path.display()))?;
    let r = xmod_validate(&cm);
    let action = if r.action.passed() {
        "holds".to_string()
    } else if let Some(g) = &r.action.grading {
        format!("bracket {:?} leaves its graded piece", one_based(&g.tuple))
    } else {
        format!("fundamental identity fails, L slots {:?}", r.action.fi_pattern.clone().unwrap_or_default())
    };
    let mut rep = Report::new()
        .field("arity", cm.arity())
        .field("l_dim", cm.action.l_dim())
        .field("p_dim", cm.action.p_dim())
        .field("action", action)
        .field("homomorphism", witness(&r.homomorphism))
        .field("cm1", witness(&r.cm1))
        .field("cm2", witness(&r.cm2))
        .field("cm3", witness(&r.cm3))
        .field("kernel_central", kernel_is_central(&cm)?);
    rep.passed = r.passed();
    Ok(rep)
}

fn corpus(budget: Budget, seed: u64) -> Report {
    let mut checks: Vec<Check> = regression::run(budget);
    checks.extend(regression::run_randomized(seed, RANDOMIZED_CHECKS, budget));
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} [{}] {}: {}\n", c.criterion, c.name, c.detail));
    }
    text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    let mut rep = Report::new()
        .field("seed", seed)
        .field("total", checks.len())
        .field("failed", failed)
        .field("checks", serde_json::to_value(&checks).expect("checks serialize"));
    rep.passed = failed == 0;
    rep.budget_exceeded = checks.iter().any(|c| c.budget_exceeded);
    rep.text = Some(text);
    rep
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let budget = Budget(cli.budget);
    match &cli.command {
        Command::Validate { file } => Ok(validate(&load(file)?)),
        Command::Info { file } => Ok(info(&load(file)?)),
        Command::Uf { file, p, output } => emitted(&u_functor_budget(&load(file)?, *p, budget)?, output.as_deref()),
        Command::Df { file, p, output } => emitted(&d_functor_budget(&load(file)?, *p, budget)?, output.as_deref()),
        Command::Liezation { file, output } => emitted(&liezation(&load(file)?)?.quotient, output.as_deref()),
        Command::Homology { file, degree, coeff_dim } => homology(&load(file)?, *degree, *coeff_dim, budget),
        Command::Uce { file } => uce(&load(file)?, budget),
        Command::Phi { file, p } => phi(&load(file)?, *p, budget),
        Command::Diagrams { file, p, q } => diagrams(&load(file)?, *p, *q, budget),
        Command::XmodCheck { file } => xmod_check(file),
        Command::Corpus => Ok(corpus(budget, cli.seed)),
    }
}

/// 2 for an exhausted budget, 3 for unreadable or malformed input, else 1.
fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 2,
        Some(Error::Parse { .. } | Error::NonPrimeModulus { .. }) => 3,
        _ if e.downcast_ref::<std::io::Error>().is_some() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(rep) => {
            print!("{}", rep.render(cli.json));
            ExitCode::from(rep.exit_code())
        }
        Err(e) => {
            let code = error_code(&e);
            if cli.json {
                println!("{}", json!({"error": format!("{e:#}"), "exit_code": code}));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
