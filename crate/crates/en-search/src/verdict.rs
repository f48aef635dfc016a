use std::collections::BTreeSet;
use std::fmt;

use en_core::IntTuple;

/// Outcome of a bounded search or propagation run. Cap-bounded outcomes
/// carry the shell bound that was in effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    /// Least solution in the shell-lexicographic order.
    Found(IntTuple),
    /// No solution with max-norm up to the cap.
    NoneUpToCap { shell_cap: u64 },
    /// Every tuple of the domain admitted a witness.
    Holds,
    /// A tuple violating the checked property, certified exactly.
    Counterexample(IntTuple),
    /// Some tuple had no witness below the cap and propagation could not
    /// settle it either way.
    UnknownCapExhausted { shell_cap: u64 },
    /// Propagation closed: the full set of relation-preserving tuples.
    Determined(BTreeSet<IntTuple>),
    /// No seed constraint or propagation stalled before closing.
    Indeterminate,
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchVerdict::Found(t) => write!(f, "FOUND {}", t),
            SearchVerdict::NoneUpToCap { shell_cap } => {
                write!(f, "NONE_UP_TO_CAP {}", shell_cap)
            }
            SearchVerdict::Holds => write!(f, "HOLDS"),
            SearchVerdict::Counterexample(t) => write!(f, "COUNTEREXAMPLE {}", t),
            SearchVerdict::UnknownCapExhausted { shell_cap } => {
                write!(f, "UNKNOWN_CAP_EXHAUSTED {}", shell_cap)
            }
            SearchVerdict::Determined(set) => {
                write!(f, "DETERMINED {{")?;
                for (pos, t) in set.iter().enumerate() {
                    if pos > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "({})", t)?;
                }
                write!(f, "}}")
            }
            SearchVerdict::Indeterminate => write!(f, "INDETERMINATE"),
        }
    }
}
