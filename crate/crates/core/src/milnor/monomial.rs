use std::cmp::Ordering;
use std::fmt;

/// Exponents and degrees are kept below this bound.
pub const EXPONENT_LIMIT: u64 = 1 << 31;

/// A Milnor basis element `Sq(r_1, r_2, ...)`.
///
/// Slot `t` (1-based) carries weight `2^t - 1`. The exponent list never ends
/// in a zero, so the unit `Sq()` is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MilnorMonomial(Vec<u32>);

impl MilnorMonomial {
    pub fn unit() -> Self {
        MilnorMonomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        MilnorMonomial(exponents)
    }

    /// `P_t(r)`: exponent `r` in slot `t`.
    pub fn p_t(t: usize, r: u32) -> Self {
        assert!(t >= 1, "Milnor slots start at 1");
        let mut e = vec![0; t];
        e[t - 1] = r;
        Self::new(e)
    }

    /// `P^s_t = P_t(2^s)`.
    pub fn p(s: u32, t: usize) -> Self {
        Self::p_t(t, 1 << s)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// `r_t` for `t >= 1`; zero past the end.
    pub fn get(&self, t: usize) -> u32 {
        if t == 0 {
            return 0;
        }
        self.0.get(t - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| ((1u64 << (i + 1)) - 1) * r as u64)
            .sum()
    }

    pub fn excess(&self) -> u64 {
        self.0.iter().map(|&r| r as u64).sum()
    }

    /// Componentwise sum `Sq(r + s)`.
    pub fn sum(&self, other: &MilnorMonomial) -> MilnorMonomial {
        let n = self.0.len().max(other.0.len());
        MilnorMonomial::new((1..=n).map(|t| self.get(t) + other.get(t)).collect())
    }
}

impl Ord for MilnorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MilnorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        f.write_str("Sq(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<u32>> for MilnorMonomial {
    fn from(v: Vec<u32>) -> Self {
        MilnorMonomial::new(v)
    }
}

impl From<&[u32]> for MilnorMonomial {
    fn from(v: &[u32]) -> Self {
        MilnorMonomial::new(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(MilnorMonomial::unit().degree(), 0);
        assert_eq!(MilnorMonomial::new(vec![0, 2]).degree(), 6);
        assert_eq!(MilnorMonomial::p(1, 2).degree(), 6);
        for s in 0..5 {
            for t in 1..6 {
                assert_eq!(
                    MilnorMonomial::p(s, t).degree(),
                    (1u64 << s) * ((1u64 << t) - 1)
                );
            }
        }
    }

    #[test]
    fn excess_examples() {
        assert_eq!(MilnorMonomial::unit().excess(), 0);
        assert_eq!(MilnorMonomial::new(vec![1, 1]).excess(), 2);
        assert_eq!(MilnorMonomial::new(vec![3, 1]).excess(), 4);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(MilnorMonomial::new(vec![0, 0]), MilnorMonomial::unit());
        assert_eq!(MilnorMonomial::new(vec![1, 0]).exponents(), &[1]);
    }

    #[test]
    fn order_is_degree_then_lex() {
        let a = MilnorMonomial::new(vec![0, 1]);
        let b = MilnorMonomial::new(vec![3]);
        let c = MilnorMonomial::new(vec![1, 1]);
        assert!(a < b && b < c);
    }
}
