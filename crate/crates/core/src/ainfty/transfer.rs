//! Homotopy transfer of a dg bimodule structure onto a deformation retract.

use num_traits::One;

use super::{AInfBimodule, UnaryOp};
use crate::basis::{Mono, Space};
use crate::error::{Error, Result};
use crate::graded::{passing_sign, Element, Q};

/// `(i, p, h)` with `p i = 1` and `∂h + h∂ = 1 − i p` on the big module.
#[derive(Clone)]
pub struct Contraction {
    pub small: Space,
    pub include: UnaryOp,
    pub project: UnaryOp,
    pub homotopy: UnaryOp,
}

impl Contraction {
    fn map(op: &UnaryOp, x: &Element, space: &Space) -> Element {
        let mut out = Element::zero(space.clone());
        for (m, c) in x.terms() {
            out.add_scaled(&op(m), c);
        }
        out
    }

    /// `(1 − i p − ∂h − h∂)(k)`, zero for a genuine contraction.
    pub fn defect(&self, big: &AInfBimodule, k: &Mono) -> Element {
        let space = big.space();
        let d = |x: &Element| big.apply_element(&[], x, &[]);
        let one = Element::monomial(space.clone(), k.clone());
        let ip = Self::map(&self.include, &(self.project)(k), space);
        let dh = d(&(self.homotopy)(k));
        let hd = Self::map(&self.homotopy, &big.apply(&[], k, &[]), space);
        let mut out = one;
        for t in [ip, dh, hd] {
            out.add_scaled(&t, &-Q::one());
        }
        out
    }

    /// `h i(small)`, `p h(k)` and `h h(k)`, which all vanish under the side
    /// conditions.
    pub fn side_conditions(&self, big: &AInfBimodule, small: &Mono, k: &Mono) -> [Element; 3] {
        let space = big.space();
        let hi = Self::map(&self.homotopy, &(self.include)(small), space);
        let h = (self.homotopy)(k);
        let ph = Self::map(&self.project, &h, &self.small);
        let hh = Self::map(&self.homotopy, &h, space);
        [hi, ph, hh]
    }
}

/// `d'^{m,n}(a, k, b) = p δ (−h δ)^{m+n−1} i` where the perturbation `δ`
/// absorbs one algebra element into the module slot at a time.
///
/// Left arguments are absorbed innermost first, right arguments outermost
/// last; every ordering of the two streams contributes.  Algebra products
/// among the `a`'s or `b`'s never survive the side conditions and are
/// skipped.  `big` must be a dg bimodule (components up to arity one).
pub fn transferred_component(
    big: &AInfBimodule,
    contraction: &Contraction,
    left: &[Mono],
    k: &Mono,
    right: &[Mono],
) -> Result<Element> {
    if big.max_arity().is_none_or(|b| b > 1) {
        return Err(Error::Unsupported(format!(
            "{} has higher components; transfer needs a dg bimodule",
            big.name()
        )));
    }
    let start = (contraction.include)(k);
    if left.is_empty() && right.is_empty() {
        let d = big.apply_element(&[], &start, &[]);
        return Ok(Contraction::map(&contraction.project, &d, &contraction.small));
    }
    Ok(absorb(big, contraction, left, right, start, left.len(), 0))
}

fn absorb(
    big: &AInfBimodule,
    c: &Contraction,
    left: &[Mono],
    right: &[Mono],
    state: Element,
    j: usize,
    r: usize,
) -> Element {
    let mut out = Element::zero(c.small.clone());
    let mut next = Vec::with_capacity(2);
    if j > 0 {
        let sign = passing_sign(1, &left[..j - 1]).to_q();
        let v = big.apply_element(std::slice::from_ref(&left[j - 1]), &state, &[]);
        next.push((v.scale(&sign), j - 1, r));
    }
    if r < right.len() {
        let sign = passing_sign(1, &left[..j]).to_q();
        let v = big.apply_element(&[], &state, std::slice::from_ref(&right[r]));
        next.push((v.scale(&sign), j, r + 1));
    }
    for (v, j2, r2) in next {
        if v.is_zero() {
            continue;
        }
        if j2 == 0 && r2 == right.len() {
            out.add_scaled(&Contraction::map(&c.project, &v, &c.small), &Q::one());
        } else {
            let sign = -passing_sign(-1, &left[..j2]).to_q();
            let h = Contraction::map(&c.homotopy, &v, big.space()).scale(&sign);
            if !h.is_zero() {
                out.add_scaled(&absorb(big, c, left, right, h, j2, r2), &Q::one());
            }
        }
    }
    out
}
