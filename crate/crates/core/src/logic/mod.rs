//! Propositional formulas, the knowledge-base formula language, clause form
//! and the satisfiability oracle shared by every reasoning module.

pub mod clause;
pub mod formula;
pub mod parser;
pub mod sat;
pub mod simplify;

pub use clause::{to_clauses, Clause, Literal};
pub use formula::{Atom, Formula, Interpretation};
pub use parser::parse_formula;
pub use sat::{entails, enumerate_models, is_satisfiable, Goal, Oracle};
