//! Restricted non-deterministic matrix semantics for da Costa's calculi `C_n`
//! over finite Boolean algebras.
//!
//! * [`formula`]: syntax, derived operators, closures.
//! * [`boolalg`]: powerset Boolean algebras, homomorphisms, subalgebras.
//! * [`swap`]: snapshots, the swap structure and its census.
//! * [`valuation`]: ℬ-valuations, restricted valuations and the bridges between them.
//! * [`decide`]: the row-branching decision procedure.
//! * [`hilbert`]: axiom schemata and derivation checking.
//! * [`category`]: morphisms of swap structures and the functors to and from Boolean algebras.
//! * [`cli`]: the `rnmat` command line.

pub mod boolalg;
pub mod formula;
pub mod swap;
pub mod valuation;
pub mod decide;
pub mod hilbert;
pub mod category;
pub mod cli;

pub use boolalg::{BooleanHom, Element, FiniteBooleanAlgebra, Subalgebra};
pub use formula::{parse, BinOp, Closure, Formula};
pub use swap::{Snapshot, SwapStructure};

/// Resource caps shared by the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Candidate assignments the decision procedure may try.
    pub max_rows: u64,
    /// Snapshots a materialized carrier may hold.
    pub max_carrier: usize,
    /// Atoms accepted in algebra literals.
    pub max_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rows: 10_000_000,
            max_carrier: swap::DEFAULT_MAX_CARRIER,
            max_atoms: boolalg::DEFAULT_ATOM_CAP,
        }
    }
}
