//! Milnor-basis arithmetic in the mod-2 Steenrod algebra.

mod element;
mod identities;
mod monomial;
mod product;

use std::collections::HashMap;

pub use element::MilnorElement;
pub use identities::{commutation_identities, IdentityFamily};
pub use monomial::{MilnorMonomial, EXPONENT_LIMIT};
pub use product::{
    enumerate_allowable, multinomial_mod2, multiply, multiply_monomials, AllowableMatrices,
    AllowableMatrix,
};

/// `ΔSq(R) = Σ_{S+T=R} Sq(S) ⊗ Sq(T)`. Each splitting appears once, so the
/// list is already reduced mod 2.
pub fn coproduct(m: &MilnorMonomial) -> Vec<(MilnorMonomial, MilnorMonomial)> {
    let r = m.exponents();
    let mut out = Vec::new();
    let mut s = vec![0u32; r.len()];
    loop {
        let t: Vec<u32> = r.iter().zip(&s).map(|(a, b)| a - b).collect();
        out.push((MilnorMonomial::new(s.clone()), MilnorMonomial::new(t)));
        let mut k = 0;
        loop {
            if k == r.len() {
                return out;
            }
            if s[k] < r[k] {
                s[k] += 1;
                break;
            }
            s[k] = 0;
            k += 1;
        }
    }
}

/// Splittings with both factors of positive degree.
pub fn reduced_coproduct(m: &MilnorMonomial) -> Vec<(MilnorMonomial, MilnorMonomial)> {
    coproduct(m)
        .into_iter()
        .filter(|(a, b)| !a.is_unit() && !b.is_unit())
        .collect()
}

/// Antipode on a monomial, using and filling `memo`.
///
/// `S(x) = x + Σ S(x') x''` over the reduced coproduct.
pub fn antipode_monomial(
    m: &MilnorMonomial,
    memo: &mut HashMap<MilnorMonomial, MilnorElement>,
) -> MilnorElement {
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let mut out = MilnorElement::from(m.clone());
    for (a, b) in reduced_coproduct(m) {
        let sa = antipode_monomial(&a, memo);
        for x in sa.iter() {
            out += &multiply_monomials(x, &b);
        }
    }
    memo.insert(m.clone(), out.clone());
    out
}

pub fn antipode(a: &MilnorElement) -> MilnorElement {
    let mut memo = HashMap::new();
    let mut out = MilnorElement::zero();
    for m in a.iter() {
        out += &antipode_monomial(m, &mut memo);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(e: &[u32]) -> MilnorMonomial {
        MilnorMonomial::new(e.to_vec())
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            coproduct(&sq(&[1])),
            vec![(sq(&[]), sq(&[1])), (sq(&[1]), sq(&[]))]
        );
        assert_eq!(coproduct(&sq(&[2])).len(), 3);
        assert!(coproduct(&sq(&[2])).contains(&(sq(&[1]), sq(&[1]))));
        assert_eq!(coproduct(&sq(&[0, 1])).len(), 2);
        assert_eq!(coproduct(&sq(&[])), vec![(sq(&[]), sq(&[]))]);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&MilnorElement::one()), MilnorElement::one());
        assert_eq!(antipode(&sq(&[1]).into()), sq(&[1]).into());
        // χ(Sq(2)) = Sq(2)
        assert_eq!(antipode(&sq(&[2]).into()), sq(&[2]).into());
        // no reduced coproduct, so fixed
        assert_eq!(antipode(&sq(&[0, 1]).into()), sq(&[0, 1]).into());
    }
}
