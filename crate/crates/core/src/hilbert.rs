//! The Hilbert calculus `C_n`: axiom schemata, instance matching and
//! derivation checking.
//!
//! Derivation files are line oriented:
//!
//! ```text
//! # comments and blank lines are ignored
//! 1. q -> (p -> q) ; ax Ax1
//! 2. q ; premise
//! 3. p -> q ; mp 2 1
//! ```
//!
//! `mp i j` requires line `i` to be `α` and line `j` to be `α -> β`, where
//! `β` is the current line.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::FiniteBooleanAlgebra;
use crate::decide::{DecideError, Decider};
use crate::formula::{parse, parse_list, Formula, ParseError};
use crate::swap::SwapStructure;
use crate::Limits;

/// Metavariable bindings of a schema instance.
pub type Bindings = BTreeMap<String, Formula>;

/// An axiom schema: a template whose variables are metavariables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    name: String,
    template: Formula,
    depends_on_n: bool,
}

impl Schema {
    fn new(name: &str, template: &str, n: u32) -> Schema {
        Schema {
            name: name.to_string(),
            template: parse(template, n).expect("built-in template parses"),
            depends_on_n: template.contains("^("),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn template(&self) -> &Formula {
        &self.template
    }

    pub fn depends_on_n(&self) -> bool {
        self.depends_on_n
    }

    pub fn metavariables(&self) -> Vec<String> {
        self.template.vars().iter().map(|v| v.to_string()).collect()
    }

    pub fn instantiate(&self, sigma: &Bindings) -> Formula {
        let map: HashMap<String, Formula> = sigma.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        self.template.substitute(&map)
    }

    /// Bindings under which the template becomes `phi`, if any.
    pub fn matches(&self, phi: &Formula) -> Option<Bindings> {
        let mut b = Bindings::new();
        unify(&self.template, phi, &mut b).then_some(b)
    }
}

fn unify(t: &Formula, f: &Formula, b: &mut Bindings) -> bool {
    match (t, f) {
        (Formula::Var(m), _) => match b.get(m.as_ref()) {
            Some(bound) => bound == f,
            None => {
                b.insert(m.to_string(), f.clone());
                true
            }
        },
        (Formula::Neg(x), Formula::Neg(y)) => unify(x, y, b),
        _ => match (t.as_binary(), f.as_binary()) {
            (Some((o1, a1, b1)), Some((o2, a2, b2))) if o1 == o2 => unify(a1, a2, b) && unify(b1, b2, b),
            _ => false,
        },
    }
}

/// The thirteen schemata of `C_n`, in order `Ax1 … Ax11, bc_n, P_n`.
pub fn schemas(n: u32) -> Vec<Schema> {
    vec![
        Schema::new("Ax1", "A -> (B -> A)", n),
        Schema::new("Ax2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))", n),
        Schema::new("Ax3", "A -> (B -> (A & B))", n),
        Schema::new("Ax4", "(A & B) -> A", n),
        Schema::new("Ax5", "(A & B) -> B", n),
        Schema::new("Ax6", "A -> (A | B)", n),
        Schema::new("Ax7", "B -> (A | B)", n),
        Schema::new("Ax8", "(A -> C) -> ((B -> C) -> ((A | B) -> C))", n),
        Schema::new("Ax9", "(A -> B) | A", n),
        Schema::new("Ax10", "A | ~A", n),
        Schema::new("Ax11", "~~A -> A", n),
        Schema::new("bc_n", &format!("A^({n}) -> (A -> (~A -> B))"), n),
        Schema::new(
            "P_n",
            &format!("(A^({n}) & B^({n})) -> ((A & B)^({n}) & (A | B)^({n}) & (A -> B)^({n}))"),
            n,
        ),
    ]
}

/// da Costa's original alternative to `bc_n`.
pub fn dc_schema(n: u32) -> Schema {
    Schema::new("dc_n", &format!("A^({n}) -> ((B -> A) -> ((B -> ~A) -> ~B))"), n)
}

/// Looks a schema up by name; `bc`, `bcn`, `P`, `Pn` and case variants are accepted.
pub fn schema_by_name(name: &str, n: u32) -> Option<Schema> {
    let key = name.to_ascii_lowercase().replace('_', "");
    let key = match key.as_str() {
        "bc" | "bcn" => "bcn".to_string(),
        "p" | "pn" => "pn".to_string(),
        "dc" | "dcn" => return Some(dc_schema(n)),
        k => k.to_string(),
    };
    schemas(n)
        .into_iter()
        .find(|s| s.name.to_ascii_lowercase().replace('_', "") == key)
}

/// First schema of `C_n` that `phi` instantiates, with its bindings.
pub fn match_schema(phi: &Formula, n: u32) -> Option<(Schema, Bindings)> {
    schemas(n).into_iter().find_map(|s| s.matches(phi).map(|b| (s, b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Axiom(String),
    /// 1-based line numbers of `α` and `α → β`.
    Mp(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    pub lines: Vec<Line>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Formula(#[from] ParseError),
    #[error("expected line number {expected}, found {found}")]
    Numbering { expected: usize, found: String },
    #[error("formula is not a premise")]
    NotPremise,
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("formula is not an instance of {0}")]
    NotInstance(String),
    #[error("line {0} cited before it exists")]
    BadIndex(usize),
    #[error("modus ponens needs line {j} to be line {i} -> this line")]
    MalformedMp { i: usize, j: usize },
    #[error("empty derivation")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct DerivationError {
    pub line: usize,
    pub kind: DerivationErrorKind,
}

impl Derivation {
    /// Parses the line-oriented format; `line` in errors is the 1-based text line.
    pub fn parse(text: &str, n: u32) -> Result<Derivation, DerivationError> {
        let mut lines = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let err = |kind| DerivationError { line: ln, kind };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (num, rest) = t
                .split_once('.')
                .ok_or_else(|| err(DerivationErrorKind::Syntax("expected `<idx>. <formula> ; <justification>`".into())))?;
            let expected = lines.len() + 1;
            if num.trim().parse::<usize>() != Ok(expected) {
                return Err(err(DerivationErrorKind::Numbering {
                    expected,
                    found: num.trim().to_string(),
                }));
            }
            let (formula, just) = rest
                .rsplit_once(';')
                .ok_or_else(|| err(DerivationErrorKind::Syntax("missing `;` before the justification".into())))?;
            let formula = parse(formula, n).map_err(|e| err(e.into()))?;
            let words: Vec<&str> = just.split_whitespace().collect();
            let justification = match words.as_slice() {
                ["premise"] => Justification::Premise,
                ["ax", name] => Justification::Axiom(name.to_string()),
                ["mp", i, j] => match (i.parse(), j.parse()) {
                    (Ok(i), Ok(j)) => Justification::Mp(i, j),
                    _ => return Err(err(DerivationErrorKind::Syntax("mp needs two line numbers".into()))),
                },
                _ => {
                    return Err(err(DerivationErrorKind::Syntax(format!(
                        "unknown justification `{}`",
                        just.trim()
                    ))))
                }
            };
            lines.push(Line {
                formula,
                justification,
            });
        }
        Ok(Derivation { lines })
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// Checks every line; on success returns the conclusion. Error line numbers
/// are derivation line numbers.
pub fn check_derivation(d: &Derivation, gamma: &[Formula], n: u32) -> Result<Formula, DerivationError> {
    for (idx, line) in d.lines.iter().enumerate() {
        let num = idx + 1;
        let err = |kind| DerivationError { line: num, kind };
        match &line.justification {
            Justification::Premise => {
                if !gamma.contains(&line.formula) {
                    return Err(err(DerivationErrorKind::NotPremise));
                }
            }
            Justification::Axiom(name) => {
                let s = schema_by_name(name, n)
                    .filter(|s| s.name != "dc_n")
                    .ok_or_else(|| err(DerivationErrorKind::UnknownSchema(name.clone())))?;
                if s.matches(&line.formula).is_none() {
                    return Err(err(DerivationErrorKind::NotInstance(s.name.clone())));
                }
            }
            &Justification::Mp(i, j) => {
                for k in [i, j] {
                    if k == 0 || k >= num {
                        return Err(err(DerivationErrorKind::BadIndex(k)));
                    }
                }
                let major = &d.lines[j - 1].formula;
                let ok = matches!(major, Formula::Imp(a, b)
                    if **a == d.lines[i - 1].formula && **b == line.formula);
                if !ok {
                    return Err(err(DerivationErrorKind::MalformedMp { i, j }));
                }
            }
        }
    }
    d.conclusion()
        .cloned()
        .ok_or(DerivationError {
            line: 0,
            kind: DerivationErrorKind::Empty,
        })
}

/// One derivation of a corpus file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// Premises as written (`;`-separated).
    pub gamma: String,
    /// Restricts the entry to one `n`; `None` means any.
    pub n: Option<u32>,
    pub body: String,
}

/// Splits a corpus into entries: blocks separated by blank lines, each
/// with optional `# name:`, `# gamma:` and `# n:` directives.
pub fn parse_corpus(text: &str) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for block in text.split("\n\n").map(str::trim).filter(|b| !b.is_empty()) {
        let mut entry = CorpusEntry {
            name: format!("derivation {}", out.len() + 1),
            gamma: String::new(),
            n: None,
            body: String::new(),
        };
        let mut has_lines = false;
        for line in block.lines() {
            let t = line.trim();
            if let Some(d) = t.strip_prefix('#') {
                let d = d.trim();
                if let Some(v) = d.strip_prefix("name:") {
                    entry.name = v.trim().to_string();
                } else if let Some(v) = d.strip_prefix("gamma:") {
                    entry.gamma = v.trim().to_string();
                } else if let Some(v) = d.strip_prefix("n:") {
                    entry.n = v.trim().parse().ok();
                }
            } else {
                has_lines = true;
                entry.body.push_str(line);
                entry.body.push('\n');
            }
        }
        if has_lines {
            out.push(entry);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessCheck {
    pub name: String,
    pub n: u32,
    pub algebra: String,
    pub derivation_ok: bool,
    pub error: Option<String>,
    pub entailed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub checks: Vec<SoundnessCheck>,
    pub discrepancies: usize,
}

/// For each entry and each applicable `n`, checks the derivation and
/// decides `Γ ⊨ conclusion` over every algebra. A discrepancy is a valid
/// derivation whose conclusion is not entailed, or an invalid derivation.
pub fn soundness_harness(
    entries: &[CorpusEntry],
    ns: &[u32],
    algebras: &[FiniteBooleanAlgebra],
    limits: &Limits,
) -> Result<SoundnessReport, DecideError> {
    let mut checks = Vec::new();
    for &n in ns {
        let structures = algebras
            .iter()
            .map(|b| SwapStructure::with_cap(b.clone(), n, limits.max_carrier))
            .collect::<Result<Vec<_>, _>>()?;
        for e in entries.iter().filter(|e| e.n.is_none_or(|k| k == n)) {
            let parsed = parse_list(&e.gamma, n)
                .map_err(|err| DerivationError {
                    line: 0,
                    kind: err.into(),
                })
                .and_then(|gamma| {
                    let d = Derivation::parse(&e.body, n)?;
                    check_derivation(&d, &gamma, n).map(|c| (gamma, c))
                });
            for s in &structures {
                let mut check = SoundnessCheck {
                    name: e.name.clone(),
                    n,
                    algebra: s.algebra().to_string(),
                    derivation_ok: parsed.is_ok(),
                    error: parsed.as_ref().err().map(|e| e.to_string()),
                    entailed: false,
                };
                if let Ok((gamma, concl)) = &parsed {
                    check.entailed = Decider::new(s, limits.max_rows).entails(gamma, concl)?.entailed;
                }
                checks.push(check);
            }
        }
    }
    let discrepancies = checks.iter().filter(|c| !(c.derivation_ok && c.entailed)).count();
    Ok(SoundnessReport { checks, discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s, 2).unwrap()
    }

    #[test]
    fn schema_matching() {
        let (s, b) = match_schema(&f("p -> (q -> p)"), 1).unwrap();
        assert_eq!(s.name(), "Ax1");
        assert_eq!(b["A"], f("p"));
        assert_eq!(b["B"], f("q"));
        let (s, b) = match_schema(&f("p | ~p"), 1).unwrap();
        assert_eq!(s.name(), "Ax10");
        assert_eq!(b["A"], f("p"));
        assert!(match_schema(&f("p -> p"), 1).is_none());
        assert_eq!(match_schema(&f("~~(p & q) -> p & q"), 1).unwrap().0.name(), "Ax11");
    }

    #[test]
    fn n_dependent_schemas() {
        let bc2 = parse("p^(2) -> (p -> (~p -> q))", 2).unwrap();
        assert_eq!(match_schema(&bc2, 2).unwrap().0.name(), "bc_n");
        assert!(match_schema(&bc2, 1).is_none());
        assert!(schemas(3)[11].depends_on_n());
        assert!(!schemas(3)[0].depends_on_n());
        let pn = schemas(1)[12].instantiate(&[("A".into(), f("p")), ("B".into(), f("q"))].into());
        assert_eq!(match_schema(&pn, 1).unwrap().0.name(), "P_n");
    }

    #[test]
    fn instances_round_trip() {
        for n in 1..=3 {
            for s in schemas(n).into_iter().chain([dc_schema(n)]) {
                let sigma: Bindings = s
                    .metavariables()
                    .into_iter()
                    .zip([f("p -> q"), f("~r"), f("p^1")])
                    .collect();
                let inst = s.instantiate(&sigma);
                let b = s.matches(&inst).unwrap();
                assert_eq!(s.instantiate(&b), inst);
            }
        }
    }

    #[test]
    fn valid_derivation() {
        let text = "1. q -> (p -> q) ; ax Ax1\n2. q ; premise\n3. p -> q ; mp 2 1\n";
        let d = Derivation::parse(text, 1).unwrap();
        let c = check_derivation(&d, &[f("q")], 1).unwrap();
        assert_eq!(c, f("p -> q"));
        let d = Derivation::parse("1. ~~p -> p ; ax Ax11", 1).unwrap();
        assert!(check_derivation(&d, &[], 1).is_ok());
    }

    #[test]
    fn invalid_derivations_located() {
        let d = Derivation::parse("1. q ; premise\n2. p -> q ; mp 1 3\n3. q -> (p -> q) ; ax Ax1", 1).unwrap();
        let e = check_derivation(&d, &[f("q")], 1).unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, DerivationErrorKind::BadIndex(3));

        let d = Derivation::parse("1. q ; premise", 1).unwrap();
        assert_eq!(check_derivation(&d, &[], 1).unwrap_err().kind, DerivationErrorKind::NotPremise);

        let d = Derivation::parse("1. p -> p ; ax Ax1", 1).unwrap();
        assert!(matches!(
            check_derivation(&d, &[], 1).unwrap_err().kind,
            DerivationErrorKind::NotInstance(_)
        ));

        let d = Derivation::parse("1. p ; premise\n2. p -> q ; premise\n3. p ; mp 1 2", 1).unwrap();
        assert!(matches!(
            check_derivation(&d, &[f("p"), f("p -> q")], 1).unwrap_err().kind,
            DerivationErrorKind::MalformedMp { i: 1, j: 2 }
        ));

        let d = Derivation::parse("1. p ; ax Ax99", 1).unwrap();
        assert!(matches!(
            check_derivation(&d, &[], 1).unwrap_err().kind,
            DerivationErrorKind::UnknownSchema(_)
        ));

        let e = Derivation::parse("2. p ; premise", 1).unwrap_err();
        assert!(matches!(e.kind, DerivationErrorKind::Numbering { .. }));
        let e = Derivation::parse("\n1. p & ; premise", 1).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(check_derivation(&Derivation::default(), &[], 1).is_err());
    }

    #[test]
    fn corpus_blocks() {
        let text = "# name: a\n# gamma: p\n1. p ; premise\n\n# n: 2\n1. p | ~p ; ax Ax10\n\n# only a comment\n";
        let entries = parse_corpus(text);
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "a");
        assert_eq!(entries[0].gamma, "p");
        assert_eq!(entries[1].n, Some(2));
    }

    #[test]
    fn harness_flags_unsound_steps() {
        let entries = parse_corpus("# gamma: p\n1. p ; premise\n\n1. p -> p ; ax Ax1\n");
        let r = soundness_harness(&entries, &[1], &[FiniteBooleanAlgebra::two()], &Limits::default()).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert_eq!(r.discrepancies, 1);
        assert!(r.checks[1].error.is_some());
    }
}
