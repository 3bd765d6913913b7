//! Commutation identities among the `P_t(r)`, checked by direct
//! multiplication.

use super::{multiply_monomials, MilnorElement, MilnorMonomial};

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFamily {
    /// 1 to 6, in the order listed on [`commutation_identities`].
    pub part: u8,
    pub statement: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl IdentityFamily {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn p(t: usize, r: u32) -> MilnorMonomial {
    if r == 0 {
        MilnorMonomial::unit()
    } else {
        MilnorMonomial::p_t(t, r)
    }
}

fn mul(a: &MilnorMonomial, b: &MilnorMonomial) -> MilnorElement {
    multiply_monomials(a, b)
}

fn commutator(a: &MilnorMonomial, b: &MilnorMonomial) -> MilnorElement {
    &mul(a, b) + &mul(b, a)
}

fn binom_odd(r: u32, s: u32) -> bool {
    r & s == 0
}

struct Family {
    part: u8,
    statement: &'static str,
    instances: usize,
    failures: Vec<String>,
}

impl Family {
    fn new(part: u8, statement: &'static str) -> Self {
        Family {
            part,
            statement,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: String, lhs: MilnorElement, rhs: MilnorElement) {
        self.instances += 1;
        if lhs != rhs {
            self.failures.push(format!("{label}: {lhs} vs {rhs}"));
        }
    }

    fn done(self) -> IdentityFamily {
        IdentityFamily {
            part: self.part,
            statement: self.statement,
            instances: self.instances,
            failures: self.failures,
        }
    }
}

/// The six identities, over all `t, v, i ≤ bound`:
///
/// 1. `r < 2^v`, `u < 2^t`: `[P_t(r), P_v(u)] = 0`
/// 2. `r < 2^t`: `P_t(r)P_t(s) = (r,s) P_t(r+s)` (with `s < 2^(t+1)`)
/// 3. `P^t_t P^t_t = P_t(2^t − 1) P^0_{2t}`
/// 4. `1 ≤ r < 2^t`: `[P^t_t, P_t(r)] = P_t(r−1) P^0_{2t}`
/// 5. `1 ≤ r ≤ 2^i ≤ 2^t`, `r < 2^t`: `[P_i(r), P^i_t] = P_i(r−1) P^0_{t+i}`
/// 6. `2^i ≤ r ≤ 2^t`: `[P^0_i, P_t(r)] = P_t(r−2^i) P^0_{t+i}`
pub fn commutation_identities(bound: u32) -> Vec<IdentityFamily> {
    let b = bound as usize;
    let mut f1 = Family::new(1, "[P_t(r), P_v(u)] = 0 for r < 2^v, u < 2^t");
    let mut f2 = Family::new(2, "P_t(r)P_t(s) = (r,s)P_t(r+s) for r < 2^t");
    let mut f3 = Family::new(3, "P^t_t P^t_t = P_t(2^t-1)P^0_2t");
    let mut f4 = Family::new(4, "[P^t_t, P_t(r)] = P_t(r-1)P^0_2t for 1 <= r < 2^t");
    let mut f5 = Family::new(5, "[P_i(r), P^i_t] = P_i(r-1)P^0_t+i for 1 <= r <= 2^i <= 2^t, r < 2^t");
    let mut f6 = Family::new(6, "[P^0_i, P_t(r)] = P_t(r-2^i)P^0_t+i for 2^i <= r <= 2^t");
    for t in 1..=b {
        for v in 1..=b {
            for r in 1..(1u32 << v) {
                for u in 1..(1u32 << t) {
                    f1.check(
                        format!("t={t} v={v} r={r} u={u}"),
                        commutator(&p(t, r), &p(v, u)),
                        MilnorElement::zero(),
                    );
                }
            }
        }
        for r in 1..(1u32 << t) {
            for s in 0..(1u32 << (t + 1)) {
                let rhs = if binom_odd(r, s) {
                    MilnorElement::from(p(t, r + s))
                } else {
                    MilnorElement::zero()
                };
                f2.check(format!("t={t} r={r} s={s}"), mul(&p(t, r), &p(t, s)), rhs);
            }
        }
        let ptt = p(t, 1 << t);
        let p02t = p(2 * t, 1);
        f3.check(
            format!("t={t}"),
            mul(&ptt, &ptt),
            mul(&p(t, (1 << t) - 1), &p02t),
        );
        for r in 1..(1u32 << t) {
            f4.check(
                format!("t={t} r={r}"),
                commutator(&ptt, &p(t, r)),
                mul(&p(t, r - 1), &p02t),
            );
        }
        for i in 1..=t {
            let pit = p(t, 1 << i);
            for r in 1..=(1u32 << i) {
                if r >= 1 << t {
                    continue;
                }
                f5.check(
                    format!("i={i} t={t} r={r}"),
                    commutator(&p(i, r), &pit),
                    mul(&p(i, r - 1), &p(t + i, 1)),
                );
            }
            for r in (1u32 << i)..=(1u32 << t) {
                f6.check(
                    format!("i={i} t={t} r={r}"),
                    commutator(&p(i, 1), &p(t, r)),
                    mul(&p(t, r - (1 << i)), &p(t + i, 1)),
                );
            }
        }
    }
    vec![f1.done(), f2.done(), f3.done(), f4.done(), f5.done(), f6.done()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_for_small_bounds() {
        for fam in commutation_identities(3) {
            assert!(fam.passed(), "part {}: {:?}", fam.part, &fam.failures[..1]);
            assert!(fam.instances > 0);
        }
    }
}
