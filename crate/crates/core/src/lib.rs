pub mod closure;
pub mod decide;
pub mod error;
pub mod graphs;
pub mod groups;
pub mod monoid;
pub mod presentation;
pub mod words;

pub use closure::{
    ClosureBudget, ClosureOperator, ClosureResult, Expansion, Mode, RelationSystem, Status,
};
pub use decide::{
    check_equal, check_geq, expansion_trace, graph_export, Decision, GraphExport, Reason,
    RoundStats, Verdict,
};
pub use error::{Error, Result};
pub use graphs::{Edge, Subgraph};
pub use groups::{Group, GroupElem, GroupKind};
pub use monoid::{Element, MonoidContext};
pub use presentation::{parse_presentation, Builtin, Presentation};
pub use words::{parse_term, parse_word, Alphabet, FTerm, Letter, Word};
