pub mod additive;
pub mod certify;
pub mod error;
pub mod field;
pub mod format;
pub mod maps;
pub mod pipeline;
pub mod poly;

pub use additive::{AdditivePoly, Mobius};
pub use certify::{Certificate, CheckPolicy, CheckRecord, FiberStats, Method};
pub use error::{Condition, ConditionTally, Error, Result};
pub use field::{FieldConfig, FieldElement, FieldLimits};
pub use format::{parse_chain, parse_triple, write_chain, write_triple, FORMAT_VERSION};
pub use maps::{CoordChange, GoodTriple, ProjMap, Step2};
pub use pipeline::{ChainStep, CoverChain, SearchPolicy, StepKind};
pub use poly::{MPoly, Monomial, UPoly, UPolyView};
