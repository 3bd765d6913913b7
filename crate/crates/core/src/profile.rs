//! Profile functions `t ↦ h(t)` and the named families of sub-Hopf algebras.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::milnor::MilnorMonomial;

/// `h(1), ..., h(T)` followed by a constant tail value for every `t > T`.
///
/// A zero tail is a finite profile. A nonzero tail only arises for the
/// infinite algebras `B_i` and their normal hulls, which are used as
/// intermediate values (intersections, ideal criteria) and never enumerated.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Profile {
    head: Vec<u32>,
    tail: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProfileFlags {
    pub valid: bool,
    pub normal_in_ambient: bool,
}

impl Profile {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn finite(values: Vec<u32>) -> Self {
        Self::with_tail(values, 0)
    }

    pub fn with_tail(mut head: Vec<u32>, tail: u32) -> Self {
        while head.last() == Some(&tail) {
            head.pop();
        }
        Profile { head, tail }
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> u32) -> Self {
        Self::finite((1..=len).map(f).collect())
    }

    /// `h(t)` for `t ≥ 1`.
    pub fn get(&self, t: usize) -> u32 {
        assert!(t >= 1);
        self.head.get(t - 1).copied().unwrap_or(self.tail)
    }

    /// Number of explicitly stored values.
    pub fn len(&self) -> usize {
        self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty() && self.tail == 0
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn values(&self) -> &[u32] {
        &self.head
    }

    pub fn is_finite(&self) -> bool {
        self.tail == 0
    }

    /// Condition `h(u) ≤ v + h(u+v)` or `h(v) ≤ h(u+v)`, and the stronger
    /// `h(v) ≤ h(u+v)` for normality in the whole Steenrod algebra. Pairs with
    /// `u` or `v` past the stored values repeat earlier cases, so only
    /// `u, v ≤ len` are checked.
    pub fn flags(&self) -> ProfileFlags {
        let n = self.head.len();
        let mut valid = true;
        let mut normal = true;
        for u in 1..=n {
            for v in 1..=n {
                let (hu, hv, huv) = (self.get(u), self.get(v), self.get(u + v));
                if !(hu <= v as u32 + huv || hv <= huv) {
                    valid = false;
                }
                if hv > huv {
                    normal = false;
                }
            }
        }
        ProfileFlags {
            valid,
            normal_in_ambient: normal,
        }
    }

    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let n = self.head.len();
        for u in 1..=n {
            for v in 1..=n {
                let (hu, hv, huv) = (self.get(u), self.get(v), self.get(u + v));
                if !(hu <= v as u32 + huv || hv <= huv) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.flags().valid
    }

    pub fn check(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some((u, v)) => Err(Error::InvalidProfile {
                profile: self.to_string(),
                reason: format!("condition fails at u={u}, v={v}"),
            }),
        }
    }

    /// `Σ h(t)`, the base-2 logarithm of the dimension.
    pub fn exponent_sum(&self) -> Option<u64> {
        self.is_finite()
            .then(|| self.head.iter().map(|&h| h as u64).sum())
    }

    pub fn dimension(&self) -> Option<u128> {
        self.exponent_sum()
            .filter(|&e| e < 128)
            .map(|e| 1u128 << e)
    }

    /// `Σ (2^h(t) − 1)(2^t − 1)`.
    pub fn top_degree(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        let mut total: u64 = 0;
        for (i, &h) in self.head.iter().enumerate() {
            let a = 1u64.checked_shl(h)? - 1;
            let b = (1u64 << (i + 1)) - 1;
            total = total.checked_add(a.checked_mul(b)?)?;
        }
        Some(total)
    }

    /// `Sq(2^h(1) − 1, 2^h(2) − 1, ...)`.
    pub fn top_class(&self) -> Option<MilnorMonomial> {
        if !self.is_finite() || self.head.iter().any(|&h| h >= 32) {
            return None;
        }
        Some(MilnorMonomial::new(
            self.head.iter().map(|&h| ((1u64 << h) - 1) as u32).collect(),
        ))
    }

    /// `r_t < 2^h(t)` for every `t`.
    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        m.exponents()
            .iter()
            .enumerate()
            .all(|(i, &r)| self.get(i + 1) >= 32 || (r as u64) < (1u64 << self.get(i + 1)))
    }

    /// `(s, t)` with `s < h(t)`, ordered by `t` then `s`.
    pub fn generators(&self) -> Vec<(u32, usize)> {
        assert!(self.is_finite());
        let mut out = Vec::new();
        for t in 1..=self.head.len() {
            for s in 0..self.get(t) {
                out.push((s, t));
            }
        }
        out
    }

    /// Pointwise minimum: the profile of the intersection.
    pub fn meet(&self, other: &Profile) -> Profile {
        let n = self.head.len().max(other.head.len());
        Profile::with_tail(
            (1..=n).map(|t| self.get(t).min(other.get(t))).collect(),
            self.tail.min(other.tail),
        )
    }

    pub fn join(&self, other: &Profile) -> Profile {
        let n = self.head.len().max(other.head.len());
        Profile::with_tail(
            (1..=n).map(|t| self.get(t).max(other.get(t))).collect(),
            self.tail.max(other.tail),
        )
    }

    /// Pointwise `≤`: containment of the corresponding algebras.
    pub fn is_le(&self, other: &Profile) -> bool {
        let n = self.head.len().max(other.head.len());
        (1..=n).all(|t| self.get(t) <= other.get(t)) && self.tail <= other.tail
    }

    /// Smallest nondecreasing profile above `self`: the least sub-Hopf algebra
    /// normal in the whole Steenrod algebra that contains this one.
    pub fn normal_hull(&self) -> Profile {
        let mut running = 0;
        let head: Vec<u32> = self
            .head
            .iter()
            .map(|&h| {
                running = running.max(h);
                running
            })
            .collect();
        Profile::with_tail(head, running.max(self.tail))
    }

    /// Elementwise `h(t) + c` for `t ≤ len`.
    fn bumped(&self, upto: usize, c: u32) -> Profile {
        Profile::finite((1..=upto).map(|t| self.get(t) + c).collect())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.head.is_empty() && self.tail == 0 {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.head.iter().map(u32::to_string).collect();
        if self.tail != 0 {
            parts.push(self.tail.to_string());
            parts.push("...".into());
        }
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({self})")
    }
}

/// Comma list `h1,h2,...`; a trailing `...` repeats the last value forever.
impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut tail = false;
        let mut offset = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            if tail {
                return Err(Error::Syntax {
                    position: offset,
                    message: "'...' must come last".into(),
                });
            }
            if trimmed == "..." {
                tail = true;
            } else {
                let v: u32 = trimmed.parse().map_err(|_| Error::Syntax {
                    position: offset,
                    message: format!("expected a profile value, found {trimmed:?}"),
                })?;
                if v >= 31 {
                    return Err(Error::OutOfRange(format!("profile value {v}")));
                }
                values.push(v);
            }
            offset += part.chars().count() + 1;
        }
        if tail {
            let last = values.last().copied().ok_or(Error::Syntax {
                position: 0,
                message: "'...' needs a value to repeat".into(),
            })?;
            Ok(Profile::with_tail(values, last))
        } else {
            Ok(Profile::finite(values))
        }
    }
}

/// Sufficient condition for `h1` to be a profile function when `h1 ≤ h2`,
/// `h2` is one, and the two agree from `t0` on: only `u + v ≤ t0` needs
/// checking.
pub fn restriction_criterion(h1: &Profile, h2: &Profile, t0: usize) -> bool {
    if !h1.is_le(h2) || !h2.is_valid() {
        return false;
    }
    let agree = (t0..=h1.len().max(h2.len()) + 1).all(|t| h1.get(t) == h2.get(t));
    if !agree {
        return false;
    }
    for u in 1..t0 {
        for v in 1..=t0 - u {
            let (hu, hv, huv) = (h1.get(u), h1.get(v), h1.get(u + v));
            if !(hu <= v as u32 + huv || hv <= huv) {
                return false;
            }
        }
    }
    true
}

/// Sufficient condition for zeroing `h` at `t0` to keep it a profile
/// function: for `1 ≤ u < t0`, `h1(t0 − u) > 0` forces `h1(u) ≤ t0 − u`.
pub fn zeroing_criterion(h: &Profile, t0: usize) -> Option<Profile> {
    if !h.is_valid() {
        return None;
    }
    let n = h.len().max(t0);
    let h1 = Profile::with_tail(
        (1..=n).map(|t| if t == t0 { 0 } else { h.get(t) }).collect(),
        h.tail(),
    );
    let ok = (1..t0).all(|u| h1.get(t0 - u) == 0 || h1.get(u) as usize <= t0 - u);
    ok.then_some(h1)
}

fn out_of_range(what: &str) -> Error {
    Error::OutOfRange(what.to_string())
}

/// `a = ⌊(n − 1)/2⌋`.
pub fn family_bound(n: u32) -> u32 {
    (n - 1) / 2
}

fn check_family(n: u32, i: u32, name: &str) -> Result<()> {
    if n < 2 {
        return Err(out_of_range(&format!("{name}: n = {n} must be at least 2")));
    }
    let a = family_bound(n);
    if i < 1 || i > a + 1 {
        return Err(out_of_range(&format!(
            "{name}: i = {i} outside 1..={} for n = {n}",
            a + 1
        )));
    }
    Ok(())
}

/// `A(n)`: `h(t) = max(n + 2 − t, 0)`.
pub fn a(n: u32) -> Profile {
    Profile::from_fn(n as usize + 1, |t| n + 2 - t as u32)
}

/// `E(n)`: exterior on `P^0_t`, `t ≤ n + 1`.
pub fn e(n: u32) -> Profile {
    Profile::from_fn(n as usize + 1, |_| 1)
}

/// `J(t)`: exterior on `P^0_t, ..., P^{t−1}_t`.
pub fn j(t: u32) -> Result<Profile> {
    if t < 1 {
        return Err(out_of_range("J(t) needs t ≥ 1"));
    }
    Ok(Profile::from_fn(t as usize, |u| if u as u32 == t { t } else { 0 }))
}

/// `B_i`: `0` for `t < i`, `i` from `t = i` on. Infinite.
pub fn b(i: u32) -> Result<Profile> {
    if i < 1 {
        return Err(out_of_range("B_i needs i ≥ 1"));
    }
    Ok(Profile::with_tail(vec![0; i as usize - 1], i))
}

/// `⟨P^0_t⟩`: exterior on a single generator.
pub fn single(t: u32) -> Result<Profile> {
    if t < 1 {
        return Err(out_of_range("P^0_t needs t ≥ 1"));
    }
    Ok(Profile::from_fn(t as usize, |u| (u as u32 == t) as u32))
}

/// `B_i'(n)`: `h_{B_i ∩ A(n−1)}(t) + 1` for `t ≤ n + 1`.
pub fn b_prime(n: u32, i: u32) -> Result<Profile> {
    check_family(n, i, "B'")?;
    let inner = b(i)?.meet(&a(n - 1));
    let p = inner.bumped(n as usize + 1, 1);
    replay_restriction(&p, &a(n))?;
    Ok(p)
}

/// `D_i(n)`: `B_i'(n)` with the values below `i` zeroed.
pub fn d(n: u32, i: u32) -> Result<Profile> {
    let bp = b_prime(n, i)?;
    let p = Profile::finite(
        (1..=bp.len())
            .map(|t| if t < i as usize { 0 } else { bp.get(t) })
            .collect(),
    );
    replay_restriction(&p, &a(n))?;
    Ok(p)
}

/// `Y_i(n)`: `2i + 1 − t` for `i + 1 ≤ t ≤ 2i − 1`.
pub fn y(n: u32, i: u32) -> Result<Profile> {
    check_family(n, i, "Y")?;
    let target = Profile::from_fn(2 * i as usize, |t| {
        let t = t as u32;
        if t > i && t < 2 * i {
            2 * i + 1 - t
        } else {
            0
        }
    });
    // Obtained from A(2i − 1) by zeroing t = 1, ..., i and then t = 2i.
    if i >= 2 {
        let mut h = a(2 * i - 1);
        let steps = (1..=i as usize).chain([2 * i as usize]);
        for t0 in steps {
            h = zeroing_criterion(&h, t0).ok_or_else(|| Error::InvalidProfile {
                profile: h.to_string(),
                reason: format!("zeroing at t = {t0} not justified"),
            })?;
        }
        if h != target {
            return Err(Error::Structure(format!(
                "zeroing sequence gave {h}, expected {target}"
            )));
        }
    }
    target.check()?;
    Ok(target)
}

/// `X_i(n)`: `i + 1` at `t = i`, `1` at `t = 2i`.
pub fn x(n: u32, i: u32) -> Result<Profile> {
    check_family(n, i, "X")?;
    let p = Profile::from_fn(2 * i as usize, |t| {
        if t as u32 == i {
            i + 1
        } else if t as u32 == 2 * i {
            1
        } else {
            0
        }
    });
    p.check()?;
    Ok(p)
}

/// `O_i = ⟨P^0_t | i ≤ t ≤ n + 1⟩`.
pub fn o(n: u32, i: u32) -> Result<Profile> {
    if n < 1 || i < 1 || i > n + 1 {
        return Err(out_of_range(&format!("O: i = {i} outside 1..={}", n + 1)));
    }
    Ok(Profile::from_fn(n as usize + 1, |t| (t as u32 >= i) as u32))
}

/// First `t0` with `h1(t) = h2(t)` for every `t ≥ t0`.
pub fn agreement_start(h1: &Profile, h2: &Profile) -> usize {
    if h1.tail() != h2.tail() {
        return usize::MAX;
    }
    let n = h1.len().max(h2.len());
    (1..=n)
        .rev()
        .find(|&t| h1.get(t) != h2.get(t))
        .map_or(1, |t| t + 1)
}

fn replay_restriction(p: &Profile, ambient: &Profile) -> Result<()> {
    let t0 = agreement_start(p, ambient);
    if restriction_criterion(p, ambient, t0) {
        p.check()
    } else {
        Err(Error::InvalidProfile {
            profile: p.to_string(),
            reason: format!("restriction criterion against {ambient} fails at t0 = {t0}"),
        })
    }
}

/// `B_i ∩ A(n)` for `1 ≤ i ≤ ⌊n/2⌋ + 1`.
pub fn maximal_elementary_profiles(n: u32) -> Vec<Profile> {
    (1..=n / 2 + 1)
        .map(|i| b(i).expect("i ≥ 1").meet(&a(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Profile {
        Profile::finite(v.to_vec())
    }

    #[test]
    fn named_examples() {
        assert_eq!(a(2), p(&[3, 2, 1]));
        assert_eq!(e(1), p(&[1, 1]));
        assert_eq!(j(2).unwrap(), p(&[0, 2]));
        assert_eq!(b_prime(2, 1).unwrap(), p(&[2, 2, 1]));
        assert_eq!(d(2, 1).unwrap(), b_prime(2, 1).unwrap());
        assert_eq!(b_prime(3, 2).unwrap(), p(&[1, 3, 2, 1]));
        assert_eq!(d(3, 2).unwrap(), p(&[0, 3, 2, 1]));
        assert_eq!(y(3, 2).unwrap(), p(&[0, 0, 2]));
        assert_eq!(x(3, 2).unwrap(), p(&[0, 3, 0, 1]));
        assert_eq!(o(3, 2).unwrap(), p(&[0, 1, 1, 1]));
        assert_eq!(o(3, 2).unwrap().dimension(), Some(8));
    }

    #[test]
    fn family_ranges() {
        assert!(b_prime(1, 1).is_err());
        assert!(b_prime(2, 2).is_err());
        assert!(b_prime(3, 2).is_ok());
        assert!(d(4, 3).is_err());
        assert!(y(5, 3).is_ok());
    }

    #[test]
    fn validity_flags() {
        let f = a(2).flags();
        assert!(f.valid && !f.normal_in_ambient);
        assert!(j(2).unwrap().is_valid());
        assert!(b(1).unwrap().flags().normal_in_ambient);
        assert!(b(2).unwrap().flags().normal_in_ambient);
        // h(1) = 2, h(2) = 0: u = v = 1 gives 2 > 1 + 0 and 2 > 0
        assert!(!p(&[2]).is_valid());
        assert_eq!(p(&[2]).first_violation(), Some((1, 1)));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(b(2).unwrap().meet(&a(2)), p(&[0, 2, 1]));
        assert_eq!(a(3).meet(&a(3)), a(3));
        assert_eq!(a(3).meet(&Profile::zero()), Profile::zero());
    }

    #[test]
    fn sizes() {
        assert_eq!(a(1).dimension(), Some(8));
        assert_eq!(a(1).top_degree(), Some(6));
        assert_eq!(a(2).dimension(), Some(64));
        assert_eq!(a(2).top_degree(), Some(23));
        assert_eq!(e(1).top_degree(), Some(4));
        assert_eq!(a(2).top_class().unwrap().to_string(), "Sq(7,3,1)");
        assert_eq!(b_prime(3, 2).unwrap().top_degree(), Some(58));
    }

    #[test]
    fn maximal_elementary_counts() {
        assert_eq!(maximal_elementary_profiles(1), vec![e(1)]);
        assert_eq!(maximal_elementary_profiles(2).len(), 2);
        assert_eq!(maximal_elementary_profiles(4).len(), 3);
    }

    #[test]
    fn text_round_trip() {
        for q in [a(3), Profile::zero(), b(2).unwrap(), p(&[0, 2])] {
            assert_eq!(q.to_string().parse::<Profile>().unwrap(), q);
        }
        assert_eq!("0,2,...".parse::<Profile>().unwrap(), b(2).unwrap());
        assert!("1,x".parse::<Profile>().is_err());
        assert!("...,1".parse::<Profile>().is_err());
    }

    #[test]
    fn normal_hull_is_nondecreasing() {
        assert_eq!(p(&[0, 1, 0, 1]).normal_hull(), Profile::with_tail(vec![0], 1));
        assert!(e(3).normal_hull().flags().normal_in_ambient);
    }
}
