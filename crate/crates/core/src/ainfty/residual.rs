//! The defining quadratic relations, evaluated on one input word.
//!
//! Each residual applies the bar codifferential once and then the outer
//! component, so it is zero exactly when the relation holds on that word.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AInfAlgebra, AInfBimodule, BimoduleMorphism};
use crate::basis::Mono;
use crate::graded::{passing_sign, Element, Q};

/// `a_1 … a_m | k | b_1 … b_n`, all entries suspended.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BimoduleWord {
    pub left: Vec<Mono>,
    pub mid: Mono,
    pub right: Vec<Mono>,
}

impl BimoduleWord {
    pub fn new(left: Vec<Mono>, mid: Mono, right: Vec<Mono>) -> Self {
        BimoduleWord { left, mid, right }
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(Q::zero);
    *slot += c;
}

/// One application of the coderivation `D` on the bar word `s x_1 ⊗ … ⊗ s x_n`.
pub fn algebra_codifferential(alg: &AInfAlgebra, word: &[Mono]) -> BTreeMap<Vec<Mono>, Q> {
    let n = word.len();
    let mut out = BTreeMap::new();
    for i in 0..=n {
        let sign = passing_sign(1, &word[..i]).to_q();
        for &j in alg.support() {
            if i + j > n {
                break;
            }
            let inner = alg.apply(&word[i..i + j]);
            for (m, c) in inner.terms() {
                let mut w = Vec::with_capacity(n - j + 1);
                w.extend_from_slice(&word[..i]);
                w.push(m.clone());
                w.extend_from_slice(&word[i + j..]);
                accumulate(&mut out, w, &sign * c);
            }
        }
    }
    out
}

/// `Σ d^{n-j+1}(…, d^j(…), …)` on `word`.
pub fn ainfty_relation_residual(alg: &AInfAlgebra, word: &[Mono]) -> Element {
    let mut out = Element::zero(alg.space().clone());
    for (w, c) in algebra_codifferential(alg, word) {
        out.add_scaled(&alg.apply(&w), &c);
    }
    out
}

/// The part of the residual coming from inserting the curvature `d^0`.
pub fn curvature_contribution(alg: &AInfAlgebra, word: &[Mono]) -> Element {
    let curv = alg.curvature();
    let mut out = Element::zero(alg.space().clone());
    if curv.is_zero() {
        return out;
    }
    for i in 0..=word.len() {
        let sign = passing_sign(1, &word[..i]).to_q();
        for (m, c) in curv.terms() {
            let mut w = word[..i].to_vec();
            w.push(m.clone());
            w.extend_from_slice(&word[i..]);
            out.add_scaled(&alg.apply(&w), &(&sign * c));
        }
    }
    out
}

/// One application of the bimodule coderivation on `word`.
///
/// Terms come from the left algebra acting on a block of `a`'s, the module
/// component on a block around `k`, and the right algebra on a block of `b`'s.
pub fn bimodule_codifferential(bim: &AInfBimodule, word: &BimoduleWord) -> BTreeMap<BimoduleWord, Q> {
    let (left, right) = (&word.left, &word.right);
    let (m, n) = (left.len(), right.len());
    let mut out = BTreeMap::new();

    let lalg = bim.left();
    for i in 0..=m {
        let sign = passing_sign(1, &left[..i]).to_q();
        for &j in lalg.support() {
            if i + j > m {
                break;
            }
            for (x, c) in lalg.apply(&left[i..i + j]).terms() {
                let mut l = Vec::with_capacity(m - j + 1);
                l.extend_from_slice(&left[..i]);
                l.push(x.clone());
                l.extend_from_slice(&left[i + j..]);
                accumulate(
                    &mut out,
                    BimoduleWord::new(l, word.mid.clone(), right.clone()),
                    &sign * c,
                );
            }
        }
    }

    let bound = bim.max_arity().unwrap_or(usize::MAX);
    for i in 0..=m {
        let sign = passing_sign(1, &left[..m - i]).to_q();
        for j in 0..=n {
            if i + j > bound {
                break;
            }
            for (x, c) in bim.apply(&left[m - i..], &word.mid, &right[..j]).terms() {
                accumulate(
                    &mut out,
                    BimoduleWord::new(left[..m - i].to_vec(), x.clone(), right[j..].to_vec()),
                    &sign * c,
                );
            }
        }
    }

    let ralg = bim.right();
    let before = passing_sign(1, left) * passing_sign(1, std::slice::from_ref(&word.mid));
    for i in 0..=n {
        let sign = (before * passing_sign(1, &right[..i])).to_q();
        for &j in ralg.support() {
            if i + j > n {
                break;
            }
            for (x, c) in ralg.apply(&right[i..i + j]).terms() {
                let mut r = Vec::with_capacity(n - j + 1);
                r.extend_from_slice(&right[..i]);
                r.push(x.clone());
                r.extend_from_slice(&right[i + j..]);
                accumulate(
                    &mut out,
                    BimoduleWord::new(left.clone(), word.mid.clone(), r),
                    &sign * c,
                );
            }
        }
    }
    out
}

/// `pr_M ∘ D ∘ D` on `word`.
pub fn bimodule_relation_residual(bim: &AInfBimodule, word: &BimoduleWord) -> Element {
    let mut out = Element::zero(bim.space().clone());
    for (w, c) in bimodule_codifferential(bim, word) {
        out.add_scaled(&bim.apply(&w.left, &w.mid, &w.right), &c);
    }
    out
}

/// `f ∘ D_src − D_tgt ∘ f`, projected to the target module.
pub fn morphism_relation_residual(f: &BimoduleMorphism, word: &BimoduleWord) -> Element {
    let tgt = f.target();
    let mut out = Element::zero(tgt.space().clone());
    for (w, c) in bimodule_codifferential(f.source(), word) {
        out.add_scaled(&f.apply(&w.left, &w.mid, &w.right), &c);
    }
    let (left, right) = (&word.left, &word.right);
    let (m, n) = (left.len(), right.len());
    let minus = -Q::from_integer(1.into());
    for i in 0..=m {
        for j in 0..=n {
            let inner = f.apply(&left[i..], &word.mid, &right[..n - j]);
            if inner.is_zero() {
                continue;
            }
            let outer = tgt.apply_element(&left[..i], &inner, &right[n - j..]);
            out.add_scaled(&outer, &minus);
        }
    }
    out
}
