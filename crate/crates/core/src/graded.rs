//! Degrees, Koszul signs and sparse exact linear combinations.
//!
//! Every sign produced anywhere in the crate by moving homogeneous objects
//! past each other goes through [`graded_permutation_sign`] or
//! [`suspension_sign`]; there are no hand-derived closed-form sign formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::basis::{Mono, Space};
use crate::error::{Error, Result};

/// Exact scalars.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Cohomological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(pub i32);

impl Degree {
    /// Degree of the same element viewed in `M[k]`.
    pub fn shift(self, k: i32) -> Degree {
        Degree(self.0 - k)
    }

    pub fn is_odd(self) -> bool {
        self.0.rem_euclid(2) == 1
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree(self.0 + rhs.0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn pow(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Sign of transposing two homogeneous objects of the given degrees.
    pub fn koszul(a: i32, b: i32) -> Sign {
        Sign::pow(a as i64 * b as i64)
    }

    pub fn to_q(self) -> Q {
        match self {
            Sign::Plus => Q::one(),
            Sign::Minus => -Q::one(),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Koszul sign of reordering homogeneous factors.
///
/// The reordered word has `perm[k]`-th original factor in position `k`.  The
/// sign is the product of `(-1)^{d_i d_j}` over all pairs of factors whose
/// relative order is inverted.
pub fn graded_permutation_sign(degrees: &[Degree], perm: &[usize]) -> Result<Sign> {
    if degrees.len() != perm.len() {
        return Err(Error::LengthMismatch {
            expected: degrees.len(),
            found: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let mut sign = Sign::Plus;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = sign * Sign::koszul(degrees[perm[i]].0, degrees[perm[j]].0);
            }
        }
    }
    Ok(sign)
}

/// Sign of `s^{⊗n}(x_1 ⊗ ... ⊗ x_n) = ± s x_1 ⊗ ... ⊗ s x_n`.
///
/// Each suspension is moved into its slot one elementary transposition at a
/// time; crossing an element of degree `d` costs `(-1)^{d·|s|}` with `|s| = -1`.
pub fn suspension_sign(degrees: &[i32]) -> Sign {
    const SUSPENSION: i32 = -1;
    let mut sign = Sign::Plus;
    for k in 0..degrees.len() {
        for &d in &degrees[..k] {
            sign = sign * Sign::koszul(SUSPENSION, d);
        }
    }
    sign
}

/// Sign picked up by an operator of degree `op_deg` passing over the
/// suspended entries `entries`.
pub fn passing_sign(op_deg: i32, entries: &[Mono]) -> Sign {
    let total: i64 = entries.iter().map(|e| e.shifted_deg() as i64).sum();
    Sign::pow(op_deg as i64 * total)
}

impl Neg for Element {
    type Output = Element;
    fn neg(mut self) -> Element {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

/// A finite exact linear combination of basis monomials of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    space: Space,
    terms: BTreeMap<Mono, Q>,
}

impl Element {
    pub fn zero(space: Space) -> Self {
        Element {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(space: Space, mono: Mono) -> Self {
        Self::term(space, mono, Q::one())
    }

    pub fn term(space: Space, mono: Mono, coeff: Q) -> Self {
        debug_assert!(space.contains(&mono), "{mono} not in {space}");
        let mut e = Element::zero(space);
        e.add_term(mono, coeff);
        e
    }

    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Mono, Q)>) -> Result<Self> {
        let mut e = Element::zero(space);
        for (m, c) in terms {
            if !e.space.contains(&m) {
                return Err(Error::SpaceMismatch {
                    left: e.space.clone(),
                    right: Space::Ground,
                });
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, mono: &Mono) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`; both must live in the same space.
    pub fn add_scaled(&mut self, other: &Element, c: &Q) {
        debug_assert_eq!(self.space, other.space);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_space(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_space(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        Ok(out)
    }

    fn check_space(&self, other: &Element) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.clone(),
                right: other.space.clone(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> Element {
        let mut out = Element::zero(self.space.clone());
        out.add_scaled(self, c);
        out
    }

    /// The degree shared by all terms; `None` for the zero element.
    pub fn homogeneous_degree(&self) -> Result<Option<Degree>> {
        let mut degs = self.terms.keys().map(Mono::degree);
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn homogeneous_weight(&self) -> Result<Option<i64>> {
        let mut ws = self.terms.keys().map(Mono::weight);
        let Some(first) = ws.next() else {
            return Ok(None);
        };
        if ws.all(|w| w == first) {
            Ok(Some(first))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    /// `k1 ⊗ (b_1|...|b_q) ⊗ k2`, multilinear in every slot and without any
    /// implicit sign.
    pub fn tensor(left: &Element, middle: &[Element], right: &Element, middle_space: Space) -> Result<Element> {
        for b in middle {
            if *b.space() != middle_space {
                return Err(Error::SpaceMismatch {
                    left: middle_space,
                    right: b.space().clone(),
                });
            }
        }
        let space = Space::tensor(left.space.clone(), middle_space, right.space.clone());
        let mut out = Element::zero(space);
        let mut partial: Vec<(Vec<Mono>, Q)> = vec![(Vec::new(), Q::one())];
        for b in middle {
            let mut next = Vec::new();
            for (word, c) in &partial {
                for (m, v) in b.terms() {
                    let mut w = word.clone();
                    w.push(m.clone());
                    next.push((w, c * v));
                }
            }
            partial = next;
        }
        for (l, lc) in left.terms() {
            for (r, rc) in right.terms() {
                for (word, c) in &partial {
                    out.add_term(Mono::tensor(l.clone(), word.clone(), r.clone()), lc * rc * c);
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute numerator/denominator size, for reporting.
    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

/// An ordered list of homogeneous factors with an overall sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWord {
    pub factors: Vec<(Mono, Degree)>,
    pub sign: Sign,
}

impl SignedWord {
    pub fn new(factors: Vec<Mono>) -> Self {
        let factors = factors
            .into_iter()
            .map(|m| {
                let d = m.degree();
                (m, d)
            })
            .collect();
        SignedWord {
            factors,
            sign: Sign::Plus,
        }
    }

    /// Reorders the factors, accumulating the Koszul sign.
    pub fn permute(&self, perm: &[usize]) -> Result<SignedWord> {
        let degrees: Vec<Degree> = self.factors.iter().map(|(_, d)| *d).collect();
        let s = graded_permutation_sign(&degrees, perm)?;
        Ok(SignedWord {
            factors: perm.iter().map(|&p| self.factors[p].clone()).collect(),
            sign: self.sign * s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::SymMonomial;

    fn d(v: &[i32]) -> Vec<Degree> {
        v.iter().map(|&x| Degree(x)).collect()
    }

    #[test]
    fn permutation_sign_examples() {
        assert_eq!(graded_permutation_sign(&d(&[1, 1]), &[1, 0]).unwrap(), Sign::Minus);
        assert_eq!(graded_permutation_sign(&d(&[0, 5]), &[1, 0]).unwrap(), Sign::Plus);
        assert_eq!(graded_permutation_sign(&d(&[1, 2]), &[1, 0]).unwrap(), Sign::Plus);
    }

    #[test]
    fn permutation_sign_errors() {
        assert!(matches!(
            graded_permutation_sign(&d(&[1, 1]), &[0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            graded_permutation_sign(&d(&[1, 1]), &[0, 0]),
            Err(Error::NotAPermutation(_))
        ));
    }

    #[test]
    fn suspension_sign_small_cases() {
        assert_eq!(suspension_sign(&[7]), Sign::Plus);
        assert_eq!(suspension_sign(&[0, 0]), Sign::Plus);
        assert_eq!(suspension_sign(&[1, 0]), Sign::Minus);
        assert_eq!(suspension_sign(&[0, 1]), Sign::Plus);
        // the third suspension crosses both odd entries
        assert_eq!(suspension_sign(&[1, 1, 0]), Sign::Minus);
    }

    fn x1() -> Element {
        Element::monomial(Space::Sym { dim: 2 }, Mono::Sym(SymMonomial::new(vec![1, 0])))
    }

    #[test]
    fn exact_arithmetic() {
        let x = x1();
        let zero = Element::zero(Space::Sym { dim: 2 });
        assert_eq!(x.try_add(&zero).unwrap(), x);
        assert_eq!(x.scale(&q(1)), x);
        let sum = x.scale(&q_frac(2, 3)).try_add(&x.scale(&q_frac(1, 3))).unwrap();
        assert_eq!(sum, x);
        assert!(x.try_sub(&x).unwrap().is_zero());
    }

    #[test]
    fn space_mismatch_is_reported() {
        let y = Element::monomial(Space::Ground, Mono::Unit);
        assert!(matches!(x1().try_add(&y), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn homogeneity_query() {
        let sp = Space::Sym { dim: 2 };
        let one = Element::monomial(sp.clone(), Mono::Sym(SymMonomial::one(2)));
        assert_eq!(x1().homogeneous_degree().unwrap(), Some(Degree(0)));
        assert!(x1().try_add(&one).unwrap().homogeneous_weight().is_err());
        assert_eq!(Element::zero(sp).homogeneous_degree().unwrap(), None);
    }

    #[test]
    fn signed_word_permutation() {
        use crate::polyalg::ExtMonomial;
        let e = |i| Mono::Ext(ExtMonomial::new(vec![i]).unwrap());
        let w = SignedWord::new(vec![e(0), e(1)]);
        let p = w.permute(&[1, 0]).unwrap();
        assert_eq!(p.sign, Sign::Minus);
        assert_eq!(p.factors[0].0, e(1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
            Just((0..n).collect::<Vec<_>>()).prop_shuffle()
        }

        fn degrees_and_two_perms() -> impl Strategy<Value = (Vec<i32>, Vec<usize>, Vec<usize>)> {
            (1usize..6).prop_flat_map(|n| (proptest::collection::vec(-3i32..4, n), perm_of(n), perm_of(n)))
        }

        fn sym_el() -> impl Strategy<Value = Element> {
            proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
                let mut e = Element::zero(Space::Sym { dim: 2 });
                for ((a, b), n, d) in ts {
                    e.add_term(Mono::Sym(SymMonomial::new(vec![a, b])), q_frac(n, d));
                }
                e
            })
        }

        proptest! {
            #[test]
            fn permutation_sign_is_multiplicative((ds, p, r) in degrees_and_two_perms()) {
                let d = d(&ds);
                let moved: Vec<Degree> = p.iter().map(|&i| d[i]).collect();
                let composite: Vec<usize> = r.iter().map(|&k| p[k]).collect();
                let lhs = graded_permutation_sign(&d, &composite).unwrap();
                let rhs = graded_permutation_sign(&d, &p).unwrap() * graded_permutation_sign(&moved, &r).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn even_entries_cost_nothing(ds in proptest::collection::vec(-2i32..3, 0..6)) {
                let even: Vec<i32> = ds.iter().map(|x| 2 * x).collect();
                prop_assert_eq!(suspension_sign(&even), Sign::Plus);
            }

            #[test]
            fn addition_laws(a in sym_el(), b in sym_el(), c in sym_el()) {
                prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
                prop_assert_eq!(
                    a.try_add(&b).unwrap().try_add(&c).unwrap(),
                    a.try_add(&b.try_add(&c).unwrap()).unwrap()
                );
                prop_assert!(a.try_add(&-a.clone()).unwrap().is_zero());
            }

            #[test]
            fn scaling_distributes(a in sym_el(), b in sym_el(), n in -4i64..5, m in 1i64..5) {
                let c = q_frac(n, m);
                prop_assert_eq!(
                    a.try_add(&b).unwrap().scale(&c),
                    a.scale(&c).try_add(&b.scale(&c)).unwrap()
                );
            }
        }
    }
}
