use std::fmt;

/// A single equation of one of the three admissible shapes.
///
/// 1-based variable indices; `Add` and `Mul` are stored with `i <= j` so
/// that commutatively equal equations compare equal. The derived `Ord`
/// sorts units before additions before multiplications, each group by
/// its index triple, which fixes the rendering order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnEquation {
    /// `x_i = 1`
    Unit { i: usize },
    /// `x_i + x_j = x_k`
    Add { i: usize, j: usize, k: usize },
    /// `x_i * x_j = x_k`
    Mul { i: usize, j: usize, k: usize },
}

impl EnEquation {
    pub fn unit(i: usize) -> Self {
        assert!(i >= 1, "variable indices are 1-based");
        EnEquation::Unit { i }
    }

    pub fn add(i: usize, j: usize, k: usize) -> Self {
        assert!(i >= 1 && j >= 1 && k >= 1, "variable indices are 1-based");
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        EnEquation::Add { i, j, k }
    }

    pub fn mul(i: usize, j: usize, k: usize) -> Self {
        assert!(i >= 1 && j >= 1 && k >= 1, "variable indices are 1-based");
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        EnEquation::Mul { i, j, k }
    }

    /// Largest variable index mentioned by the equation.
    pub fn max_index(&self) -> usize {
        match *self {
            EnEquation::Unit { i } => i,
            EnEquation::Add { i, j, k } | EnEquation::Mul { i, j, k } => i.max(j).max(k),
        }
    }
}

impl fmt::Display for EnEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EnEquation::Unit { i } => write!(f, "x{} = 1", i),
            EnEquation::Add { i, j, k } => write!(f, "x{} + x{} = x{}", i, j, k),
            EnEquation::Mul { i, j, k } => write!(f, "x{} * x{} = x{}", i, j, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_shapes_canonicalize() {
        assert_eq!(EnEquation::mul(2, 1, 3), EnEquation::mul(1, 2, 3));
        assert_eq!(
            EnEquation::add(5, 5, 1),
            EnEquation::Add { i: 5, j: 5, k: 1 }
        );
    }

    #[test]
    fn ordering_groups_by_shape() {
        let unit = EnEquation::unit(9);
        let add = EnEquation::add(1, 1, 2);
        let mul = EnEquation::mul(1, 1, 1);
        assert!(unit < add && add < mul);
    }

    #[test]
    fn display_matches_text_format() {
        assert_eq!(EnEquation::unit(1).to_string(), "x1 = 1");
        assert_eq!(EnEquation::add(2, 1, 3).to_string(), "x1 + x2 = x3");
        assert_eq!(EnEquation::mul(4, 4, 5).to_string(), "x4 * x4 = x5");
    }
}
