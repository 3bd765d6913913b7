use std::collections::HashSet;

use proptest::prelude::*;
use steenrod_core::milnor::{antipode, coproduct, multiply, multiply_monomials, MilnorElement, MilnorMonomial};

fn mono() -> impl Strategy<Value = MilnorMonomial> {
    prop::collection::vec(0u32..10, 0..4).prop_map(MilnorMonomial::new)
}

fn small_mono() -> impl Strategy<Value = MilnorMonomial> {
    prop::collection::vec(0u32..6, 0..3).prop_map(MilnorMonomial::new)
}

fn elem() -> impl Strategy<Value = MilnorElement> {
    prop::collection::vec(mono(), 0..4).prop_map(|ms| {
        let mut e = MilnorElement::zero();
        for m in ms {
            e.toggle(m);
        }
        e
    })
}

fn sq(a: u32) -> MilnorElement {
    MilnorElement::from(MilnorMonomial::new(vec![a]))
}

fn binom_odd(n: i64, k: i64) -> bool {
    k >= 0 && n >= k && (n & k) == k
}

type Tensor = HashSet<(MilnorMonomial, MilnorMonomial)>;

fn toggle(set: &mut Tensor, x: (MilnorMonomial, MilnorMonomial)) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

fn delta(a: &MilnorElement) -> Tensor {
    let mut out = Tensor::new();
    for m in a.iter() {
        for t in coproduct(m) {
            toggle(&mut out, t);
        }
    }
    out
}

fn tensor_product(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (a1, a2) in x {
        for (b1, b2) in y {
            for l in multiply_monomials(a1, b1).iter() {
                for r in multiply_monomials(a2, b2).iter() {
                    toggle(&mut out, (l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

/// `Sq(a)Sq(b) = Σ_j C(a+b-3j, a-2j) Sq(a+b-3j, j)`, from the two-row
/// allowable matrices written out by hand.
fn two_squares_closed_form(a: u32, b: u32) -> MilnorElement {
    let mut out = MilnorElement::zero();
    let (a, b) = (a as i64, b as i64);
    for j in 0..=a / 2 {
        if j > b {
            break;
        }
        if binom_odd(a + b - 3 * j, a - 2 * j) {
            out.toggle(MilnorMonomial::new(vec![(a + b - 3 * j) as u32, j as u32]));
        }
    }
    out
}

#[test]
fn product_of_two_squares_matches_closed_form() {
    for a in 0..24 {
        for b in 0..24 {
            assert_eq!(multiply(&sq(a), &sq(b)), two_squares_closed_form(a, b), "Sq({a})Sq({b})");
        }
    }
}

/// Adem relations `Sq^a Sq^b = Σ_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c` for `a < 2b`.
#[test]
fn adem_relations_hold() {
    for b in 1..14u32 {
        for a in 1..2 * b {
            let lhs = multiply(&sq(a), &sq(b));
            let mut rhs = MilnorElement::zero();
            for c in 0..=a / 2 {
                if binom_odd(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
                    rhs += &multiply(&sq(a + b - c), &sq(c));
                }
            }
            assert_eq!(lhs, rhs, "Sq^{a} Sq^{b}");
        }
    }
}

#[test]
fn worked_products() {
    let p = |s: &str| s.parse::<MilnorElement>().unwrap();
    assert_eq!(multiply(&p("Sq(2)"), &p("Sq(2)")), p("Sq(1,1)"));
    assert_eq!(multiply(&p("Sq(1)"), &p("Sq(1)")), MilnorElement::zero());
    assert_eq!(multiply(&p("Sq(1)"), &p("Sq(2)")), p("Sq(3)"));
    assert_eq!(multiply(&p("Sq(2)"), &p("Sq(1)")), p("Sq(3) + Sq(0,1)"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(multiply(&multiply(&a, &b), &c), multiply(&a, &multiply(&b, &c)));
    }

    #[test]
    fn unit(a in elem()) {
        prop_assert_eq!(multiply(&MilnorElement::one(), &a), a.clone());
        prop_assert_eq!(multiply(&a, &MilnorElement::one()), a);
    }

    #[test]
    fn coproduct_is_multiplicative(a in small_mono(), b in small_mono()) {
        let ab = multiply_monomials(&a, &b);
        let lhs = delta(&ab);
        let rhs = tensor_product(&delta(&MilnorElement::from(a)), &delta(&MilnorElement::from(b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocommutative(a in mono()) {
        let d: Tensor = coproduct(&a).into_iter().collect();
        for (x, y) in &d {
            prop_assert!(d.contains(&(y.clone(), x.clone())));
        }
    }

    #[test]
    fn coassociative(a in mono()) {
        let mut left = HashSet::new();
        let mut right = HashSet::new();
        for (x, y) in coproduct(&a) {
            for (x1, x2) in coproduct(&x) {
                assert!(left.insert((x1, x2, y.clone())));
            }
            for (y1, y2) in coproduct(&y) {
                assert!(right.insert((x.clone(), y1, y2)));
            }
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn excess_bounded(a in mono(), b in mono()) {
        for t in multiply_monomials(&a, &b).iter() {
            prop_assert!(t.excess() <= a.excess() + b.excess());
            prop_assert_eq!(t.degree(), a.degree() + b.degree());
        }
    }

    #[test]
    fn antipode_is_an_involution_and_inverse(a in small_mono()) {
        let e = MilnorElement::from(a.clone());
        prop_assert_eq!(antipode(&antipode(&e)), e);
        // Σ S(a') a'' = ε(a).
        let mut sum = MilnorElement::zero();
        for (x, y) in coproduct(&a) {
            sum += &multiply(&antipode(&MilnorElement::from(x)), &MilnorElement::from(y));
        }
        let counit = if a.is_unit() { MilnorElement::one() } else { MilnorElement::zero() };
        prop_assert_eq!(sum, counit);
    }

    #[test]
    fn text_round_trip(a in elem()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<MilnorElement>().unwrap(), a);
    }
}
