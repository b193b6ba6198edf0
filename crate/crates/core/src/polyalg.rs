//! The concrete algebras: `A = S(V*)`, `B = ∧V` in the `∂_θ` picture, and
//! the superalgebra `K[x_i, θ_j]` underlying the Koszul complex.
//!
//! Indices are 0-based internally and printed 1-based.

use std::fmt;

use num_traits::Zero;

use crate::basis::{Mono, Space};
use crate::error::{Error, Result};
use crate::graded::{q, Element, Sign, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial(Vec<u32>);

impl SymMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        SymMonomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        SymMonomial(vec![0; dim])
    }

    /// The coordinate `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        SymMonomial(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.weight() == 0
    }

    /// Index `i` when the monomial is exactly `x_i`.
    pub fn linear_index(&self) -> Option<usize> {
        if self.weight() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1)
    }

    pub fn mul(&self, other: &SymMonomial) -> SymMonomial {
        SymMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `∂/∂y_j`: the multiplicity and the lowered monomial.
    pub fn derivative(&self, j: usize) -> Option<(u32, SymMonomial)> {
        let e = self.0[j];
        if e == 0 {
            return None;
        }
        let mut lowered = self.0.clone();
        lowered[j] -= 1;
        Some((e, SymMonomial(lowered)))
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// `e_{i_1} ∧ ... ∧ e_{i_p}` with strictly increasing indices, identified with
/// `∂_{θ_{i_1}} ⋯ ∂_{θ_{i_p}}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtMonomial(Vec<usize>);

impl ExtMonomial {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Unsupported(format!(
                "exterior indices must be strictly increasing: {indices:?}"
            )));
        }
        Ok(ExtMonomial(indices))
    }

    pub fn one() -> Self {
        ExtMonomial(Vec::new())
    }

    /// Sorts arbitrary indices, returning the sign, or `None` on a repeat.
    pub fn from_unsorted(indices: &[usize]) -> Option<(Sign, ExtMonomial)> {
        let (sign, sorted) = sort_odd(indices)?;
        Some((sign, ExtMonomial(sorted)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> i32 {
        self.0.len() as i32
    }

    pub fn mul(&self, other: &ExtMonomial) -> Option<(Sign, ExtMonomial)> {
        let (s, v) = merge_odd(&self.0, &other.0)?;
        Some((s, ExtMonomial(v)))
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for i in &self.0 {
            write!(f, "e{}", i + 1)?;
        }
        Ok(())
    }
}

/// `x^α θ_{i_1} ⋯ θ_{i_q}` with strictly increasing θ-indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoszulMonomial {
    exponents: SymMonomial,
    thetas: Vec<usize>,
}

impl KoszulMonomial {
    pub fn new(exponents: SymMonomial, thetas: Vec<usize>) -> Result<Self> {
        if thetas.windows(2).any(|w| w[0] >= w[1]) || thetas.iter().any(|&t| t >= exponents.dim()) {
            return Err(Error::Unsupported(format!("bad θ-indices {thetas:?}")));
        }
        Ok(KoszulMonomial { exponents, thetas })
    }

    pub fn exponents(&self) -> &SymMonomial {
        &self.exponents
    }

    pub fn thetas(&self) -> &[usize] {
        &self.thetas
    }

    pub fn degree(&self) -> i32 {
        -(self.thetas.len() as i32)
    }

    pub fn weight(&self) -> u32 {
        self.exponents.weight() + self.thetas.len() as u32
    }

    pub fn mul(&self, other: &KoszulMonomial) -> Option<(Sign, KoszulMonomial)> {
        let (s, thetas) = merge_odd(&self.thetas, &other.thetas)?;
        Some((
            s,
            KoszulMonomial {
                exponents: self.exponents.mul(&other.exponents),
                thetas,
            },
        ))
    }
}

impl fmt::Display for KoszulMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_one() && self.thetas.is_empty() {
            return write!(f, "1");
        }
        if !self.exponents.is_one() {
            write!(f, "{}", self.exponents)?;
        }
        for t in &self.thetas {
            write!(f, "θ{}", t + 1)?;
        }
        Ok(())
    }
}

fn sort_odd(indices: &[usize]) -> Option<(Sign, Vec<usize>)> {
    let mut v = indices.to_vec();
    let mut sign = Sign::Plus;
    // insertion sort, one transposition of odd generators at a time
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

fn merge_odd(a: &[usize], b: &[usize]) -> Option<(Sign, Vec<usize>)> {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    sort_odd(&all)
}

fn expect_space(e: &Element, want: &Space) -> Result<()> {
    if e.space() != want {
        return Err(Error::SpaceMismatch {
            left: want.clone(),
            right: e.space().clone(),
        });
    }
    Ok(())
}

fn sym_dim(e: &Element) -> Result<usize> {
    match e.space() {
        Space::Sym { dim } => Ok(*dim),
        other => Err(Error::SpaceMismatch {
            left: Space::Sym { dim: 0 },
            right: other.clone(),
        }),
    }
}

pub fn sym_element(dim: usize, terms: &[(Vec<u32>, i64)]) -> Element {
    let mut e = Element::zero(Space::Sym { dim });
    for (exps, c) in terms {
        e.add_term(Mono::Sym(SymMonomial::new(exps.clone())), q(*c));
    }
    e
}

pub fn sym_multiply(a: &Element, b: &Element) -> Result<Element> {
    let dim = sym_dim(a)?;
    expect_space(b, a.space())?;
    let mut out = Element::zero(Space::Sym { dim });
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let (Mono::Sym(sa), Mono::Sym(sb)) = (ma, mb) else {
                unreachable!()
            };
            out.add_term(Mono::Sym(sa.mul(sb)), ca * cb);
        }
    }
    Ok(out)
}

pub fn ext_multiply(a: &Element, b: &Element) -> Result<Element> {
    let Space::Ext { .. } = a.space() else {
        return Err(Error::SpaceMismatch {
            left: Space::Ext { dim: 0 },
            right: a.space().clone(),
        });
    };
    expect_space(b, a.space())?;
    let mut out = Element::zero(a.space().clone());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let (Mono::Ext(ea), Mono::Ext(eb)) = (ma, mb) else {
                unreachable!()
            };
            if let Some((s, e)) = ea.mul(eb) {
                out.add_term(Mono::Ext(e), s.to_q() * ca * cb);
            }
        }
    }
    Ok(out)
}

/// Product in the superalgebra `K[x_i, θ_j]`.
pub fn koszul_multiply(a: &Element, b: &Element) -> Result<Element> {
    let Space::Koszul { .. } = a.space() else {
        return Err(Error::SpaceMismatch {
            left: Space::Koszul { dim: 0 },
            right: a.space().clone(),
        });
    };
    expect_space(b, a.space())?;
    let mut out = Element::zero(a.space().clone());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let (Mono::Koszul(ka), Mono::Koszul(kb)) = (ma, mb) else {
                unreachable!()
            };
            if let Some((s, k)) = ka.mul(kb) {
                out.add_term(Mono::Koszul(k), s.to_q() * ca * cb);
            }
        }
    }
    Ok(out)
}

pub fn partial_derivative(a: &Element, j: usize) -> Result<Element> {
    let dim = sym_dim(a)?;
    if j >= dim {
        return Err(Error::DimensionOutOfRange(j + 1));
    }
    let mut out = Element::zero(Space::Sym { dim });
    for (m, c) in a.terms() {
        let Mono::Sym(s) = m else { unreachable!() };
        if let Some((mult, lowered)) = s.derivative(j) {
            out.add_term(Mono::Sym(lowered), c * q(mult as i64));
        }
    }
    Ok(out)
}

/// Constant term of a polynomial.
pub fn evaluate_at_zero(a: &Element) -> Result<Q> {
    let dim = sym_dim(a)?;
    Ok(a.coeff(&Mono::Sym(SymMonomial::one(dim))))
}

/// Projection of `∧V` onto its degree-0 part.
pub fn ext_augmentation(b: &Element) -> Q {
    b.coeff(&Mono::Ext(ExtMonomial::one()))
}

/// `⟨a, v⟩` for `a ∈ V*` and `v ∈ V`, with `⟨x_i, e_j⟩ = δ_ij`.
pub fn duality_pairing(a: &Element, v: &Element) -> Result<Q> {
    sym_dim(a)?;
    let mut total = Q::zero();
    for (ma, ca) in a.terms() {
        let i = ma
            .as_sym()
            .and_then(SymMonomial::linear_index)
            .ok_or_else(|| Error::OutsidePairing(format!("{a} is not linear")))?;
        for (mv, cv) in v.terms() {
            let e = mv
                .as_ext()
                .filter(|e| e.degree() == 1)
                .ok_or_else(|| Error::OutsidePairing(format!("{v} is not in V")))?;
            if e.indices()[0] == i {
                total += ca * cv;
            }
        }
    }
    Ok(total)
}

/// `∂` on a monomial: the left derivation with `∂x_i = 0`, `∂θ_i = x_i`.
pub fn euler_contraction_mono(k: &KoszulMonomial) -> Vec<(Q, KoszulMonomial)> {
    let mut out = Vec::new();
    for (r, &i) in k.thetas.iter().enumerate() {
        // ∂ passes the r odd generators to its left
        let sign = Sign::pow(r as i64);
        let mut thetas = k.thetas.clone();
        thetas.remove(r);
        let mut exps = k.exponents.0.clone();
        exps[i] += 1;
        out.push((
            sign.to_q(),
            KoszulMonomial {
                exponents: SymMonomial(exps),
                thetas,
            },
        ));
    }
    out
}

pub fn euler_contraction(eta: &Element) -> Element {
    let mut out = Element::zero(eta.space().clone());
    for (m, c) in eta.terms() {
        let Mono::Koszul(k) = m else { continue };
        for (s, t) in euler_contraction_mono(k) {
            out.add_term(Mono::Koszul(t), s * c);
        }
    }
    out
}

/// `Σ_i θ_i ∂/∂x_i`, the odd left derivation of degree −1 with
/// `∂h + h∂ = weight · id`.
pub fn euler_homotopy_mono(k: &KoszulMonomial) -> Vec<(Q, KoszulMonomial)> {
    let mut out = Vec::new();
    for i in 0..k.exponents.dim() {
        let Some((mult, lowered)) = k.exponents.derivative(i) else {
            continue;
        };
        let mut thetas = vec![i];
        thetas.extend_from_slice(&k.thetas);
        if let Some((s, sorted)) = sort_odd(&thetas) {
            out.push((
                s.to_q() * q(mult as i64),
                KoszulMonomial {
                    exponents: lowered,
                    thetas: sorted,
                },
            ));
        }
    }
    out
}

/// `∂_{θ_j}` as a left derivation on a monomial.
fn theta_derivative(j: usize, k: &KoszulMonomial) -> Option<(Sign, KoszulMonomial)> {
    let r = k.thetas.iter().position(|&t| t == j)?;
    let mut thetas = k.thetas.clone();
    thetas.remove(r);
    Some((
        Sign::pow(r as i64),
        KoszulMonomial {
            exponents: k.exponents.clone(),
            thetas,
        },
    ))
}

/// `∂_{θ_{j_1}} ⋯ ∂_{θ_{j_p}}` applied to a monomial, rightmost factor first.
pub fn polyderivation_mono(b: &ExtMonomial, k: &KoszulMonomial) -> Option<(Sign, KoszulMonomial)> {
    let mut sign = Sign::Plus;
    let mut cur = k.clone();
    for &j in b.0.iter().rev() {
        let (s, next) = theta_derivative(j, &cur)?;
        sign = sign * s;
        cur = next;
    }
    Some((sign, cur))
}

pub fn polyderivation_apply(b: &Element, eta: &Element) -> Result<Element> {
    let (Space::Ext { dim: db }, Space::Koszul { dim: dk }) = (b.space(), eta.space()) else {
        return Err(Error::SpaceMismatch {
            left: b.space().clone(),
            right: eta.space().clone(),
        });
    };
    if db != dk {
        return Err(Error::SpaceMismatch {
            left: b.space().clone(),
            right: eta.space().clone(),
        });
    }
    let mut out = Element::zero(eta.space().clone());
    for (mb, cb) in b.terms() {
        let Mono::Ext(e) = mb else { unreachable!() };
        for (mk, ck) in eta.terms() {
            let Mono::Koszul(k) = mk else { unreachable!() };
            if let Some((s, r)) = polyderivation_mono(e, k) {
                out.add_term(Mono::Koszul(r), s.to_q() * cb * ck);
            }
        }
    }
    Ok(out)
}

/// Left multiplication of `K(V)` by a polynomial.
pub fn sym_act(a: &SymMonomial, k: &KoszulMonomial) -> KoszulMonomial {
    KoszulMonomial {
        exponents: a.mul(&k.exponents),
        thetas: k.thetas.clone(),
    }
}

pub fn koszul_mono(exps: Vec<u32>, thetas: Vec<usize>) -> Mono {
    Mono::Koszul(KoszulMonomial::new(SymMonomial::new(exps), thetas).expect("valid Koszul monomial"))
}

pub fn ext_mono(indices: Vec<usize>) -> Mono {
    Mono::Ext(ExtMonomial::new(indices).expect("strictly increasing"))
}

pub fn sym_mono(exps: Vec<u32>) -> Mono {
    Mono::Sym(SymMonomial::new(exps))
}
