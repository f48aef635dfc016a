use en_core::{relations_of, IntTuple};

use crate::order::shell_tuples;
use crate::verdict::SearchVerdict;

/// Search in shell-lexicographic order for a tuple that preserves every
/// relation of `x` (units included) yet differs in the first coordinate.
/// Finding one refutes first-coordinate rigidity for `x`.
pub fn check_property4(x: &IntTuple, shell_cap: u64) -> SearchVerdict {
    let n = x.len();
    let rels = relations_of(x);
    for m in 0..=shell_cap {
        for y in shell_tuples(n, m) {
            if y.coord(1) != x.coord(1) && rels.holds_in(&y, true) {
                return SearchVerdict::Counterexample(y);
            }
        }
    }
    SearchVerdict::NoneUpToCap { shell_cap }
}
