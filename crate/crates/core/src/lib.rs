//! Clausal logic and default-negation logic programming over finite
//! domains, with a formal-concept-analysis front end and a bridge to
//! classical answer set programming.

pub mod asp;
pub mod cp;
pub mod error;
pub mod fca;
pub mod fixtures;
pub mod generate;
pub mod logic;
pub mod poset;
pub mod program;
pub mod syntax;

pub use asp::{AnswerSet, ClassicalProgram, ClassicalRule, Literal, LiteralSet, Vocabulary};
pub use error::{Error, Result};
pub use fca::{AocPoset, Concept, Embedding, FormalContext};
pub use logic::{Clause, ClosedTheory, Theory};
pub use poset::{Domain, ElementId, ElementSet};
pub use program::{ExtendedRule, Program};
