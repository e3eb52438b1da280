//! The `rnmat` command line.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! code together with everything destined for standard output and standard
//! error, so the whole surface can be driven from tests.
//!
//! Exit codes: 0 entailed / valid / verified, 1 refuted or failed check,
//! 2 usage or input error, 3 a resource cap was hit.

use std::collections::btree_map::{BTreeMap, Entry};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolalg::{AlgebraError, FiniteBooleanAlgebra, Subalgebra};
use crate::category::{self, CategoryError};
use crate::decide::{self, DecideError, EntailmentQuery, Instantiation};
use crate::formula::{parse, parse_list, Closure, Formula};
use crate::hilbert::{self, check_derivation, dc_schema, Derivation};
use crate::swap::{self, SwapError, SwapStructure, TableOp};
use crate::valuation::{self, DumpEntry, ValuationError};
use crate::Limits;

#[derive(Parser, Debug)]
#[command(name = "rnmat", version, about = "Restricted swap structures for da Costa's C_n")]
pub struct Cli {
    /// Level of the hierarchy.
    #[arg(short = 'n', global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Boolean algebra, e.g. `P(2)` or `P(a,b)`; `P(1)` is the two-element algebra.
    #[arg(long, global = true, default_value = "P(1)")]
    pub algebra: String,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for anything sampled at random.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on candidate rows tried by the decision procedure.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rows: Option<u64>,
    /// Cap on materialized carrier sizes.
    #[arg(long, global = true)]
    pub max_carrier: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide Γ ⊨ φ.
    Entail {
        /// Premises, separated by `;`.
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        phi: String,
    },
    /// Check every axiom instance for validity.
    Axioms {
        /// Variables the metavariables range over.
        #[arg(long, default_value = "p,q,r", value_delimiter = ',')]
        vars: Vec<String>,
        /// Only the instance A ↦ p, B ↦ q, C ↦ r of each schema.
        #[arg(long)]
        canonical: bool,
        /// Also check the dc_n schema.
        #[arg(long)]
        dc: bool,
    },
    /// Snapshot counts, closed form against enumeration.
    Census,
    /// Print a multioperation table.
    Table {
        #[arg(long, value_enum)]
        op: OpArg,
    },
    /// Morphisms, functors and substructures.
    Category {
        /// Check both functor round trips and the functor laws.
        #[arg(long)]
        verify_iso: bool,
        /// Algebras for --verify-iso, separated by commas.
        #[arg(long, default_value = "P(1),P(2)")]
        algebras: String,
        /// Compare the structure over P(M) with the M-th power of the two-element one.
        #[arg(long, value_name = "M")]
        power: Option<usize>,
        /// Run the subRNmatrix test for every atom partition of --algebra.
        #[arg(long)]
        subalgebras: bool,
    },
    /// Check a derivation file (one derivation, or a corpus of blocks).
    Checkproof {
        file: PathBuf,
        /// Premises for entries that do not declare their own.
        #[arg(long, default_value = "")]
        gamma: String,
        /// Also decide Γ ⊨ conclusion over --algebra.
        #[arg(long)]
        semantic: bool,
    },
    /// Build a ℬ-valuation from seeds and lift it to a restricted valuation.
    Generate {
        /// Formulas whose closure is valued, separated by `;`.
        #[arg(long)]
        formulas: String,
        /// Seeds `p=b(p)/b(~p)`, separated by `;`, e.g. `p={a}/{b}`.
        /// Variables without a seed get random ones.
        #[arg(long, default_value = "")]
        seeds: String,
        /// Resample random seeds until the point is nontrivial.
        #[arg(long)]
        nontrivial: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Neg,
    And,
    Or,
    Imp,
}

impl From<OpArg> for TableOp {
    fn from(op: OpArg) -> Self {
        match op {
            OpArg::Neg => TableOp::Neg,
            OpArg::And => TableOp::And,
            OpArg::Or => TableOp::Or,
            OpArg::Imp => TableOp::Imp,
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            DecideError::Swap(s) => s.into(),
        }
    }
}

impl From<SwapError> for Failure {
    fn from(e: SwapError) -> Self {
        match e {
            SwapError::CarrierCap { .. } => Failure::Cap(e.to_string()),
            SwapError::Algebra(a) => a.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::TooManyAtoms(..) => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<CategoryError> for Failure {
    fn from(e: CategoryError) -> Self {
        match e {
            CategoryError::Swap(s) => s.into(),
            CategoryError::Algebra(a) => a.into(),
            CategoryError::TooManyMaps { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ValuationError> for Failure {
    fn from(e: ValuationError) -> Self {
        match e {
            ValuationError::Algebra(a) => a.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<crate::formula::ParseError> for Failure {
    fn from(e: crate::formula::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Cap(msg)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(r) = cli.max_rows {
        l.max_rows = r;
    }
    if let Some(c) = cli.max_carrier {
        l.max_carrier = c;
    }
    l
}

fn algebra(text: &str, limits: &Limits) -> Result<FiniteBooleanAlgebra, Failure> {
    Ok(FiniteBooleanAlgebra::parse_capped(text, limits.max_atoms)?)
}

/// Splits `P(1),P(a,b)` at the commas outside parentheses.
pub fn split_algebra_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let limits = limits(cli);
    match &cli.command {
        Command::Entail { gamma, phi } => cmd_entail(cli, &limits, gamma, phi),
        Command::Axioms { vars, canonical, dc } => cmd_axioms(cli, &limits, vars, *canonical, *dc),
        Command::Census => cmd_census(cli, &limits),
        Command::Table { op } => cmd_table(cli, &limits, (*op).into()),
        Command::Category {
            verify_iso,
            algebras,
            power,
            subalgebras,
        } => cmd_category(cli, &limits, *verify_iso, algebras, *power, *subalgebras),
        Command::Checkproof { file, gamma, semantic } => cmd_checkproof(cli, &limits, file, gamma, *semantic),
        Command::Generate {
            formulas,
            seeds,
            nontrivial,
        } => cmd_generate(cli, &limits, formulas, seeds, *nontrivial),
    }
}

fn write_dump(out: &mut String, rows: &[DumpEntry]) {
    let width = rows.iter().map(|r| r.formula.chars().count()).max().unwrap_or(0);
    for r in rows {
        let pad = width - r.formula.chars().count();
        let value = if r.snapshot.len() == 1 {
            r.snapshot[0].clone()
        } else {
            format!("({})", r.snapshot.join(","))
        };
        let _ = writeln!(out, "  {}{}  {}", r.formula, " ".repeat(pad), value);
    }
}

fn cmd_entail(cli: &Cli, limits: &Limits, gamma: &str, phi: &str) -> Result<(i32, String), Failure> {
    let q = EntailmentQuery::new(cli.n, parse_list(gamma, cli.n)?, parse(phi, cli.n)?)
        .over(algebra(&cli.algebra, limits)?);
    let v = decide::entails(&q, limits)?;
    let report = v.report(&q);
    let code = if v.entailed { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, algebra {}", report.n, report.algebra);
    let _ = writeln!(out, "premises: {}", report.premises.join("; "));
    let _ = writeln!(out, "conclusion: {}", report.conclusion);
    let _ = writeln!(
        out,
        "verdict: {}",
        if report.entailed { "entailed" } else { "not entailed" }
    );
    let p = report.rows_pruned_by_clause;
    let _ = writeln!(
        out,
        "rows explored: {} (pruned: clause 1: {}, clause 2: {}, clause 3: {}, designation: {})",
        report.rows_explored, p.clause1, p.clause2, p.clause3, p.designation
    );
    if let Some(cm) = &report.countermodel {
        let _ = writeln!(out, "countermodel:");
        write_dump(&mut out, cm);
    }
    Ok((code, out))
}

fn cmd_axioms(
    cli: &Cli,
    limits: &Limits,
    vars: &[String],
    canonical: bool,
    dc: bool,
) -> Result<(i32, String), Failure> {
    let b = algebra(&cli.algebra, limits)?;
    let scheme = if canonical {
        Instantiation::Canonical
    } else {
        Instantiation::AllVariables(vars.to_vec())
    };
    let extra = if dc { vec![dc_schema(cli.n)] } else { Vec::new() };
    let report = decide::validate_axioms(cli.n, &b, &scheme, &extra, limits)?;
    let code = if report.ok() { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, algebra {}", report.n, report.algebra);
    let _ = writeln!(out, "schemas: {}", report.schemas.join(", "));
    let _ = writeln!(
        out,
        "instances: {}, rows explored: {}",
        report.instances, report.rows_explored
    );
    if report.ok() {
        let _ = writeln!(out, "all instances valid");
    }
    for f in &report.failures {
        let _ = writeln!(out, "INVALID {} instance {}", f.schema, f.instance);
        write_dump(&mut out, &f.countermodel);
    }
    Ok((code, out))
}

fn cmd_census(cli: &Cli, limits: &Limits) -> Result<(i32, String), Failure> {
    let b = algebra(&cli.algebra, limits)?;
    let report = swap::verify_census(&b, cli.n, limits.max_carrier)?;
    let code = if report.matches { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "algebra {} (m = {}), n = {}", b, report.m, report.n);
    let _ = writeln!(out, "total: {}", report.total);
    let _ = writeln!(out, "designated: {}", report.designated);
    let _ = writeln!(out, "boolean: {}", report.boolean);
    let strata: Vec<String> = report.by_meet_order.iter().map(u128::to_string).collect();
    let _ = writeln!(out, "by meet order: {}", strata.join(" "));
    let _ = writeln!(
        out,
        "enumeration {}",
        if report.matches { "matches" } else { "DIFFERS" }
    );
    Ok((code, out))
}

fn cmd_table(cli: &Cli, limits: &Limits, op: TableOp) -> Result<(i32, String), Failure> {
    let b = algebra(&cli.algebra, limits)?;
    let s = SwapStructure::with_cap(b, cli.n, limits.max_carrier)?;
    let t = swap::table(&s, op);
    Ok((0, if cli.json { json(&t) } else { t.to_string() }))
}

#[derive(Serialize)]
struct SubalgebraEntry {
    partition: String,
    sub: bool,
    reason: Option<String>,
}

#[derive(Serialize)]
struct CategoryReport {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    iso: Option<category::IsoReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power: Option<category::PowerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subalgebras: Option<Vec<SubalgebraEntry>>,
    ok: bool,
}

fn cmd_category(
    cli: &Cli,
    limits: &Limits,
    verify_iso: bool,
    algebras: &str,
    power: Option<usize>,
    subalgebras: bool,
) -> Result<(i32, String), Failure> {
    let verify_iso = verify_iso || (power.is_none() && !subalgebras);
    let mut report = CategoryReport {
        n: cli.n,
        iso: None,
        power: None,
        subalgebras: None,
        ok: true,
    };
    if verify_iso {
        let list = split_algebra_list(algebras)
            .iter()
            .map(|a| algebra(a, limits))
            .collect::<Result<Vec<_>, _>>()?;
        let r = category::verify_iso_roundtrip(&list, cli.n, limits.max_carrier)?;
        report.ok &= r.ok();
        report.iso = Some(r);
    }
    if let Some(m) = power {
        let r = category::verify_power(m, cli.n, limits.max_carrier)?;
        report.ok &= r.ok();
        report.power = Some(r);
    }
    if subalgebras {
        let b = algebra(&cli.algebra, limits)?;
        let mut entries = Vec::new();
        for sub in Subalgebra::enumerate(&b) {
            let r = category::is_subrnmatrix_partition(&sub, cli.n, limits.max_carrier)?;
            report.ok &= r.sub;
            entries.push(SubalgebraEntry {
                partition: sub.as_algebra().to_string(),
                sub: r.sub,
                reason: r.reason,
            });
        }
        report.subalgebras = Some(entries);
    }
    let code = if report.ok { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    if let Some(r) = &report.iso {
        let _ = writeln!(out, "functor round trips, n = {}, algebras {}", r.n, r.algebras.join(", "));
        for p in &r.pairs {
            let _ = writeln!(
                out,
                "  {} -> {}: {} homs, Boo∘A {}, A∘Boo {}, accepted {}, designation {}, strict Σ-homs {} (injective {})",
                p.source,
                p.target,
                p.homs,
                p.boo_after_lift,
                p.lift_after_boo,
                p.accepted,
                p.designation_preserved,
                p.strict_homomorphisms,
                p.injective
            );
        }
        let _ = writeln!(
            out,
            "  identity laws: {}/{}, compositions checked: {}, failures: {}",
            r.identity_laws,
            r.algebras.len(),
            r.compositions,
            r.composition_failures.len()
        );
    }
    if let Some(p) = &report.power {
        let _ = writeln!(out, "power comparison, m = {}, n = {}", p.m, p.n);
        let _ = writeln!(out, "  carrier {} vs product {}; bijective: {}", p.carrier, p.product_carrier, p.bijective);
        let _ = writeln!(
            out,
            "  designation: {}, Boolean: {}, projections are morphisms: {}, universal property: {}",
            p.designation, p.boolean, p.projections_are_morphisms, p.universal_property
        );
        let _ = writeln!(
            out,
            "  coordinatewise tables: {} of {} cells differ{}",
            p.mismatched_cells,
            p.cells,
            p.mismatch_example
                .as_ref()
                .map(|e| format!(" (e.g. {e})"))
                .unwrap_or_default()
        );
    }
    if let Some(entries) = &report.subalgebras {
        let _ = writeln!(out, "subalgebras of {}, n = {}", cli.algebra, cli.n);
        for e in entries {
            let _ = writeln!(out, "  {}: {}", e.partition, if e.sub { "subRNmatrix" } else { "rejected" });
        }
    }
    let _ = writeln!(out, "{}", if report.ok { "verified" } else { "FAILED" });
    Ok((code, out))
}

#[derive(Serialize)]
struct ProofEntry {
    name: String,
    n: u32,
    valid: bool,
    conclusion: Option<String>,
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entailed: Option<bool>,
}

#[derive(Serialize)]
struct ProofReport {
    file: String,
    entries: Vec<ProofEntry>,
    ok: bool,
}

fn cmd_checkproof(
    cli: &Cli,
    limits: &Limits,
    file: &PathBuf,
    gamma: &str,
    semantic: bool,
) -> Result<(i32, String), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let base = if semantic { Some(algebra(&cli.algebra, limits)?) } else { None };
    let mut swaps: BTreeMap<u32, SwapStructure> = BTreeMap::new();
    let mut entries = Vec::new();
    for e in hilbert::parse_corpus(&text) {
        let n = e.n.unwrap_or(cli.n);
        let premises = if e.gamma.is_empty() { gamma } else { &e.gamma };
        let checked = parse_list(premises, n)
            .map_err(|err| err.to_string())
            .and_then(|g| {
                let d = Derivation::parse(&e.body, n).map_err(|err| err.to_string())?;
                check_derivation(&d, &g, n).map(|c| (g, c)).map_err(|err| err.to_string())
            });
        let mut entry = ProofEntry {
            name: e.name.clone(),
            n,
            valid: checked.is_ok(),
            conclusion: checked.as_ref().ok().map(|(_, c)| c.to_string()),
            error: checked.as_ref().err().cloned(),
            entailed: None,
        };
        if let (Some(b), Ok((g, c))) = (&base, &checked) {
            let s = match swaps.entry(n) {
                Entry::Occupied(o) => o.into_mut(),
                Entry::Vacant(v) => {
                    v.insert(SwapStructure::with_cap(b.clone(), n, limits.max_carrier)?)
                }
            };
            entry.entailed = Some(decide::Decider::new(s, limits.max_rows).entails(g, c)?.entailed);
        }
        entries.push(entry);
    }
    if entries.is_empty() {
        return Err(Failure::Usage(format!("{} contains no derivation", file.display())));
    }
    let ok = entries.iter().all(|e| e.valid && e.entailed != Some(false));
    let report = ProofReport {
        file: file.display().to_string(),
        entries,
        ok,
    };
    let code = if ok { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    for e in &report.entries {
        match (&e.conclusion, &e.error) {
            (Some(c), _) => {
                let _ = write!(out, "{} (n = {}): valid, proves {}", e.name, e.n, c);
            }
            (None, Some(err)) => {
                let _ = write!(out, "{} (n = {}): INVALID: {}", e.name, e.n, err);
            }
            _ => {}
        }
        match e.entailed {
            Some(true) => out.push_str("; entailed\n"),
            Some(false) => out.push_str("; NOT entailed\n"),
            None => out.push('\n'),
        }
    }
    Ok((code, out))
}

#[derive(Serialize)]
struct GenerateReport {
    n: u32,
    algebra: String,
    seeds: Vec<SeedEntry>,
    attempts: usize,
    bvaluation: Vec<DumpEntry>,
    bvaluation_ok: bool,
    valuation: Vec<DumpEntry>,
    valuation_ok: bool,
    nontriviality: valuation::Nontriviality,
}

#[derive(Serialize)]
struct SeedEntry {
    var: String,
    value: String,
    neg: String,
}

fn parse_seeds(text: &str, b: &FiniteBooleanAlgebra) -> Result<valuation::Seeds, Failure> {
    let mut seeds = valuation::Seeds::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::Usage(format!("seed `{part}` is not of the form p=x/y"));
        let (var, rest) = part.split_once('=').ok_or_else(bad)?;
        let (x, y) = rest.split_once('/').ok_or_else(bad)?;
        seeds.insert(
            var.trim().to_string(),
            (b.parse_element(x.trim())?, b.parse_element(y.trim())?),
        );
    }
    Ok(seeds)
}

fn cmd_generate(
    cli: &Cli,
    limits: &Limits,
    formulas: &str,
    seed_text: &str,
    nontrivial: bool,
) -> Result<(i32, String), Failure> {
    let b = algebra(&cli.algebra, limits)?;
    let gamma: Vec<Formula> = parse_list(formulas, cli.n)?;
    if gamma.is_empty() {
        return Err(Failure::Usage("--formulas must name at least one formula".into()));
    }
    let (_, outer) = valuation::bridge_domain(&gamma, cli.n);
    let inner = Closure::new(&gamma, cli.n);
    let fixed = parse_seeds(seed_text, &b)?;
    let vars: Vec<String> = gamma
        .iter()
        .flat_map(|f| f.vars())
        .map(|v| v.to_string())
        .filter(|v| !fixed.contains_key(v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let max_attempts = if nontrivial { 1000 } else { 1 };
    let mut attempts = 0;
    let (seeds, bv, v, nt) = loop {
        attempts += 1;
        let mut seeds = valuation::random_seeds(&b, vars.iter().cloned(), &mut rng);
        seeds.extend(fixed.clone());
        let bv = valuation::generate_nontrivial_bvaluation(&b, cli.n, &seeds, outer.clone())?;
        let v = bv.to_valuation_on(std::sync::Arc::new(inner.clone()))?;
        let nt = valuation::nontriviality(&bv, &v);
        if !nontrivial || nt.holds() || attempts >= max_attempts {
            break (seeds, bv, v, nt);
        }
    };
    let mut seed_list: Vec<SeedEntry> = seeds
        .iter()
        .map(|(var, &(x, y))| SeedEntry {
            var: var.clone(),
            value: b.format(x),
            neg: b.format(y),
        })
        .collect();
    seed_list.sort_by(|a, c| a.var.cmp(&c.var));
    let bv_check = bv.check();
    let v_check = v.check();
    let report = GenerateReport {
        n: cli.n,
        algebra: b.to_string(),
        seeds: seed_list,
        attempts,
        bvaluation: bv.dump(),
        bvaluation_ok: bv_check.ok(),
        valuation: v.dump(),
        valuation_ok: v_check.ok(),
        nontriviality: nt,
    };
    let ok = report.bvaluation_ok && report.valuation_ok && (!nontrivial || report.nontriviality.holds());
    let code = if ok { 0 } else { 1 };
    if cli.json {
        return Ok((code, json(&report)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, algebra {}", report.n, report.algebra);
    for s in &report.seeds {
        let _ = writeln!(out, "seed {}: b({0}) = {}, b(~{0}) = {}", s.var, s.value, s.neg);
    }
    let _ = writeln!(out, "B-valuation ({}):", if report.bvaluation_ok { "V1-V6 hold" } else { "VIOLATED" });
    write_dump(&mut out, &report.bvaluation);
    let _ = writeln!(out, "restricted valuation ({}):", if report.valuation_ok { "all clauses hold" } else { "VIOLATED" });
    write_dump(&mut out, &report.valuation);
    let nt = &report.nontriviality;
    let _ = writeln!(
        out,
        "nontrivial: {} (non-binary value: {}, non-classical negation: {}, outside Boo: {}, outside two-valued: {})",
        nt.holds(),
        nt.non_binary_value,
        if nt.non_classical_negations.is_empty() {
            "none".to_string()
        } else {
            nt.non_classical_negations.join(", ")
        },
        nt.outside_boolean,
        nt.outside_two_valued
    );
    Ok((code, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("rnmat").chain(args.iter().copied()))
    }

    #[test]
    fn algebra_lists_split_outside_parentheses() {
        assert_eq!(split_algebra_list("P(1),P(a,b), P(3)"), ["P(1)", "P(a,b)", "P(3)"]);
    }

    #[test]
    fn entail_exit_codes() {
        let o = go(&["entail", "-n", "1", "--gamma", "p; ~p", "--phi", "q"]);
        assert_eq!(o.code, 1, "{o:?}");
        assert!(o.stdout.contains("countermodel"));
        let o = go(&["entail", "-n", "1", "--gamma", "p; ~p; p^(1)", "--phi", "q"]);
        assert_eq!(o.code, 0);
        assert_eq!(go(&["entail", "--phi", "p &"]).code, 2);
        assert_eq!(go(&["entail", "-n", "0", "--phi", "p"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        let o = go(&["entail", "-n", "2", "--max-rows", "2", "--phi", "(p -> q) -> (q -> p)"]);
        assert_eq!(o.code, 3);
    }

    #[test]
    fn census_and_table() {
        let o = go(&["census", "-n", "2", "--algebra", "P(2)"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("total: 16"));
        let o = go(&["table", "-n", "1", "--op", "neg", "--algebra", "P(1)"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains('T') && o.stdout.contains('F'));
        assert_eq!(go(&["census", "--algebra", "P(40)"]).code, 3);
    }

    #[test]
    fn help_is_not_an_error() {
        let o = go(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("entail"));
    }
}
