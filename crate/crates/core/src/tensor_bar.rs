//! Tensor products of A∞-bimodules and the bar resolution `A ⊗_A K`.

use std::sync::Arc;

use num_traits::One;

use crate::ainfty::{AInfAlgebra, AInfBimodule, BimoduleMorphism, BimoduleRule};
use crate::basis::{Mono, Space, TensorWord};
use crate::error::{Error, Result};
use crate::graded::{passing_sign, Element, Sign, Q};
use crate::polyalg::SymMonomial;

/// `A` as a bimodule over itself, `d^{m,n}(a | k | b) = d_A^{m+1+n}(a, k, b)`.
pub fn algebra_as_bimodule(alg: Arc<AInfAlgebra>) -> AInfBimodule {
    let a = alg.clone();
    let bound = alg.support().last().map(|&top| top.saturating_sub(1));
    AInfBimodule::new(
        format!("{} as bimodule", alg.name()),
        alg.clone(),
        alg.clone(),
        alg.space().clone(),
        bound,
        Arc::new(move |l: &[Mono], k: &Mono, r: &[Mono]| {
            let mut inp = Vec::with_capacity(l.len() + 1 + r.len());
            inp.extend_from_slice(l);
            inp.push(k.clone());
            inp.extend_from_slice(r);
            a.apply(&inp)
        }),
    )
}

fn word_parts(k: &Mono) -> Option<&TensorWord> {
    k.as_tensor()
}

fn push_word(out: &mut Element, left: Mono, middle: Vec<Mono>, right: Mono, c: Q) {
    out.add_term(Mono::tensor(left, middle, right), c);
}

/// `K1 ⊗_B K2 = K1 ⊗ T(B[1]) ⊗ K2` with the four families of components:
/// zero for `m, n > 0`, left collapse into `K1`, right collapse into `K2`,
/// and the internal differential.
pub fn tensor_bimodule(k1: Arc<AInfBimodule>, k2: Arc<AInfBimodule>) -> Result<AInfBimodule> {
    if !k1.right().same_as(k2.left()) {
        return Err(Error::AlgebraMismatch {
            left: k1.right().name().to_string(),
            right: k2.left().name().to_string(),
        });
    }
    let b = k1.right().clone();
    let space = Space::tensor(k1.space().clone(), b.space().clone(), k2.space().clone());
    let sp = space.clone();
    let (kk1, kk2) = (k1.clone(), k2.clone());
    let rule: BimoduleRule = Arc::new(move |a: &[Mono], mid: &Mono, c: &[Mono]| {
        let mut out = Element::zero(sp.clone());
        let Some(w) = word_parts(mid) else { return out };
        let (k1v, bs, k2v) = (&w.left, &w.middle, &w.right);
        let q = bs.len();
        match (a.len(), c.len()) {
            (m, n) if m > 0 && n > 0 => {}
            (m, 0) if m > 0 => {
                for l in 0..=q {
                    for (x, coef) in kk1.apply(a, k1v, &bs[..l]).terms() {
                        push_word(&mut out, x.clone(), bs[l..].to_vec(), k2v.clone(), coef.clone());
                    }
                }
            }
            (0, n) if n > 0 => {
                let sign = right_collapse_sign(k1v, bs);
                for l in 0..=q {
                    for (x, coef) in kk2.apply(&bs[l..], k2v, c).terms() {
                        push_word(&mut out, k1v.clone(), bs[..l].to_vec(), x.clone(), &sign * coef);
                    }
                }
            }
            _ => {
                for l in 0..=q {
                    for (x, coef) in kk1.apply(&[], k1v, &bs[..l]).terms() {
                        push_word(&mut out, x.clone(), bs[l..].to_vec(), k2v.clone(), coef.clone());
                    }
                }
                for l in 0..=q {
                    let sign = passing_sign(1, std::slice::from_ref(k1v)) * passing_sign(1, &bs[..l]);
                    let sign = sign.to_q();
                    for &p in b.support() {
                        if l + p > q {
                            break;
                        }
                        for (x, coef) in b.apply(&bs[l..l + p]).terms() {
                            let mut middle = bs[..l].to_vec();
                            middle.push(x.clone());
                            middle.extend_from_slice(&bs[l + p..]);
                            push_word(&mut out, k1v.clone(), middle, k2v.clone(), &sign * coef);
                        }
                    }
                }
                let sign = right_collapse_sign(k1v, bs);
                for l in 0..=q {
                    for (x, coef) in kk2.apply(&bs[l..], k2v, &[]).terms() {
                        push_word(&mut out, k1v.clone(), bs[..l].to_vec(), x.clone(), &sign * coef);
                    }
                }
            }
        }
        out
    });
    Ok(AInfBimodule::new(
        format!("{} ⊗ {}", k1.name(), k2.name()),
        k1.left().clone(),
        k2.right().clone(),
        space,
        None,
        rule,
    ))
}

/// `(−1)^{|k_1| + Σ_j (|b_j| − 1)}`.
fn right_collapse_sign(k1: &Mono, bs: &[Mono]) -> Q {
    let total: i64 = k1.deg() as i64 + bs.iter().map(|b| b.shifted_deg() as i64).sum::<i64>();
    Sign::pow(total).to_q()
}

/// The bar resolution `A ⊗_A K` of a bimodule `K` over `(A, B)`, together
/// with the comparison map `μ` to `K` and the homotopy data `ν`, `σ`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    algebra: Arc<AInfAlgebra>,
    module: Arc<AInfBimodule>,
    bimodule: Arc<AInfBimodule>,
}

impl BarResolution {
    pub fn new(module: Arc<AInfBimodule>) -> Result<Self> {
        let algebra = module.left().clone();
        if !algebra.is_flat() {
            return Err(Error::NotFlat(algebra.name().to_string()));
        }
        let a = Arc::new(algebra_as_bimodule(algebra.clone()));
        let bimodule = Arc::new(tensor_bimodule(a, module.clone())?);
        Ok(BarResolution {
            algebra,
            module,
            bimodule,
        })
    }

    pub fn algebra(&self) -> &Arc<AInfAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &Arc<AInfBimodule> {
        &self.module
    }

    /// The generic tensor product structure.
    pub fn bimodule(&self) -> &Arc<AInfBimodule> {
        &self.bimodule
    }

    pub fn space(&self) -> &Space {
        self.bimodule.space()
    }

    /// The same structure written out for a commutative `A = S(V*)` and
    /// `K` on the ground field: the Hochschild-bar differential ending in
    /// evaluation at 0, left multiplication into the first slot, and the
    /// right collapse into `d_K^{q−l,n}` with prefactor `(−1)^q`.
    pub fn closed_form(&self) -> Result<AInfBimodule> {
        let Space::Sym { dim } = *self.algebra.space() else {
            return Err(Error::Unsupported(format!("closed form needs S(V*), got {}", self.algebra.space())));
        };
        if self.module.space() != &Space::Ground {
            return Err(Error::Unsupported("closed form needs K on the ground field".into()));
        }
        let sp = self.space().clone();
        let module = self.module.clone();
        let rule: BimoduleRule = Arc::new(move |a: &[Mono], mid: &Mono, b: &[Mono]| {
            let mut out = Element::zero(sp.clone());
            let Some(w) = word_parts(mid) else { return out };
            let Some(x) = w.left.as_sym() else { return out };
            let tildes = &w.middle;
            let q = tildes.len();
            let sym = |m: &Mono| m.as_sym().cloned().expect("bar entries lie in S(V*)");
            match (a.len(), b.len()) {
                (0, 0) => {
                    if q > 0 {
                        let first = Mono::Sym(x.mul(&sym(&tildes[0])));
                        push_word(&mut out, first, tildes[1..].to_vec(), w.right.clone(), Q::one());
                        for i in 1..q {
                            let mut middle = tildes[..i - 1].to_vec();
                            middle.push(Mono::Sym(sym(&tildes[i - 1]).mul(&sym(&tildes[i]))));
                            middle.extend_from_slice(&tildes[i + 1..]);
                            push_word(&mut out, w.left.clone(), middle, w.right.clone(), Sign::pow(i as i64).to_q());
                        }
                        if sym(&tildes[q - 1]) == SymMonomial::one(dim) {
                            push_word(
                                &mut out,
                                w.left.clone(),
                                tildes[..q - 1].to_vec(),
                                w.right.clone(),
                                Sign::pow(q as i64).to_q(),
                            );
                        }
                    }
                }
                (1, 0) => {
                    let prod = Mono::Sym(x.mul(&sym(&a[0])));
                    push_word(&mut out, prod, tildes.clone(), w.right.clone(), Q::one());
                }
                (0, _) => {
                    let sign = Sign::pow(q as i64).to_q();
                    for l in 0..=q {
                        for (k, c) in module.apply(&tildes[l..], &w.right, b).terms() {
                            push_word(&mut out, w.left.clone(), tildes[..l].to_vec(), k.clone(), &sign * c);
                        }
                    }
                }
                _ => {}
            }
            out
        });
        Ok(AInfBimodule::new(
            format!("{} (closed form)", self.bimodule.name()),
            self.algebra.clone(),
            self.module.right().clone(),
            self.space().clone(),
            None,
            rule,
        ))
    }

    /// `μ^{m,n}(a_1 … a_m | a ⊗ (ã) ⊗ k | b) = ± d_K^{m+1+q,n}(a_1 … a_m, a, ã, k, b)`
    /// with sign `(−1)^{Σ(|a_i|−1) + |a| + Σ(|ã_j|−1)}`.
    pub fn mu(&self) -> Result<BimoduleMorphism> {
        let module = self.module.clone();
        BimoduleMorphism::new(
            "μ",
            self.bimodule.clone(),
            self.module.clone(),
            None,
            Arc::new(move |a: &[Mono], mid: &Mono, b: &[Mono]| {
                let Some(w) = word_parts(mid) else {
                    return Element::zero(module.space().clone());
                };
                let total: i64 = a.iter().map(|x| x.shifted_deg() as i64).sum::<i64>()
                    + w.left.deg() as i64
                    + w.middle.iter().map(|x| x.shifted_deg() as i64).sum::<i64>();
                let mut left = a.to_vec();
                left.push(w.left.clone());
                left.extend_from_slice(&w.middle);
                module.apply(&left, &w.right, b).scale(&Sign::pow(total).to_q())
            }),
        )
    }

    /// `ν(k) = 1 ⊗ () ⊗ k`.
    pub fn nu(&self, k: &Element) -> Result<Element> {
        let unit = self.unit()?;
        let mut out = Element::zero(self.space().clone());
        for (m, c) in k.terms() {
            push_word(&mut out, unit.clone(), Vec::new(), m.clone(), c.clone());
        }
        Ok(out)
    }

    /// `σ(a ⊗ (ã_1 | … | ã_q) ⊗ k) = 1 ⊗ (a | ã_1 | … | ã_q) ⊗ k`.
    pub fn sigma(&self, x: &Element) -> Result<Element> {
        let unit = self.unit()?;
        let mut out = Element::zero(self.space().clone());
        for (m, c) in x.terms() {
            let w = word_parts(m).ok_or(Error::SpaceMismatch {
                left: self.space().clone(),
                right: x.space().clone(),
            })?;
            let mut middle = vec![w.left.clone()];
            middle.extend_from_slice(&w.middle);
            push_word(&mut out, unit.clone(), middle, w.right.clone(), c.clone());
        }
        Ok(out)
    }

    fn unit(&self) -> Result<Mono> {
        self.algebra
            .unit()
            .cloned()
            .ok_or_else(|| Error::NoUnit(self.algebra.name().to_string()))
    }

    /// `d^{0,0}` extended linearly.
    pub fn differential(&self, x: &Element) -> Element {
        self.bimodule.apply_element(&[], x, &[])
    }

    /// `x − ν μ^{0,0}(x) − (dσ + σd)(x)`, zero when `σ` is a contracting
    /// homotopy for `ν μ^{0,0}`.
    pub fn homotopy_residual(&self, x: &Element) -> Result<Element> {
        let mu = self.mu()?;
        let numu = self.nu(&mu.apply_00(x))?;
        let dsigma = self.differential(&self.sigma(x)?);
        let sigmad = self.sigma(&self.differential(x))?;
        let mut out = x.clone();
        for t in [numu, dsigma, sigmad] {
            out = out.try_sub(&t)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{bimodule_relation_residual, morphism_relation_residual, sym_algebra, BimoduleWord};
    use crate::enumerate::{ext_monomials, sym_monomials_up_to, tuples};
    use crate::koszul::{augmentation_bimodule, KoszulPair};
    use crate::polyalg::sym_mono;

    fn bar(dim: usize) -> (KoszulPair, BarResolution) {
        let pair = KoszulPair::new(dim).unwrap();
        let k = Arc::new(augmentation_bimodule(&pair));
        (pair, BarResolution::new(k).unwrap())
    }

    fn word(left: Mono, middle: Vec<Mono>) -> Mono {
        Mono::tensor(left, middle, Mono::Unit)
    }

    fn one() -> Mono {
        sym_mono(vec![0, 0])
    }

    fn x(i: usize) -> Mono {
        let mut e = vec![0, 0];
        e[i] = 1;
        sym_mono(e)
    }

    fn el(space: &Space, m: Mono) -> Element {
        Element::monomial(space.clone(), m)
    }

    #[test]
    fn algebra_as_bimodule_components() {
        let a = Arc::new(sym_algebra(2).unwrap());
        let bim = algebra_as_bimodule(a);
        assert_eq!(bim.apply(&[x(0)], &x(1), &[]), el(&Space::Sym { dim: 2 }, sym_mono(vec![1, 1])));
        assert_eq!(bim.apply(&[], &x(1), &[x(0)]), el(&Space::Sym { dim: 2 }, sym_mono(vec![1, 1])));
        assert!(bim.apply(&[x(0)], &x(1), &[x(0)]).is_zero());
        let w = BimoduleWord::new(vec![x(0)], x(1), vec![x(0)]);
        assert!(bimodule_relation_residual(&bim, &w).is_zero());
    }

    #[test]
    fn bar_differential_examples() {
        let (_, bar) = bar(2);
        let sp = bar.space().clone();
        let d = |m: Mono| bar.differential(&el(&sp, m));
        assert_eq!(d(word(one(), vec![x(0)])), el(&sp, word(x(0), vec![])));
        assert!(d(word(one(), vec![one()])).is_zero());
        let left = bar.bimodule().apply(&[x(1)], &word(x(0), vec![x(1)]), &[]);
        assert_eq!(left, el(&sp, word(sym_mono(vec![1, 1]), vec![x(1)])));
    }

    #[test]
    fn mixed_components_vanish() {
        let (_, bar) = bar(2);
        let e1 = Mono::Ext(crate::polyalg::ExtMonomial::new(vec![0]).unwrap());
        assert!(bar.bimodule().apply(&[x(0)], &word(one(), vec![x(1)]), &[e1]).is_zero());
    }

    #[test]
    fn closed_form_agrees_with_tensor_product() {
        let (pair, bar) = bar(2);
        let closed = bar.closed_form().unwrap();
        let a: Vec<Mono> = sym_monomials_up_to(2, 1).into_iter().map(Mono::Sym).collect();
        let b: Vec<Mono> = ext_monomials(2).into_iter().map(Mono::Ext).collect();
        let _ = pair;
        for q in 0..=3 {
            for t in tuples(&a, q + 1) {
                let mid = word(t[0].clone(), t[1..].to_vec());
                for (m, n) in [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1)] {
                    for l in tuples(&a, m) {
                        for r in tuples(&b, n) {
                            assert_eq!(
                                closed.apply(&l, &mid, &r),
                                bar.bimodule().apply(&l, &mid, &r),
                                "({m},{n}) {l:?} {mid} {r:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mu_nu_sigma() {
        let (_, bar) = bar(2);
        let sp = bar.space().clone();
        let mu = bar.mu().unwrap();
        let k = Element::monomial(Space::Ground, Mono::Unit);
        assert_eq!(mu.apply(&[], &word(one(), vec![]), &[]), k);
        assert!(mu.apply(&[], &word(x(0), vec![]), &[]).is_zero());
        assert!(mu.apply(&[], &word(one(), vec![x(0)]), &[]).is_zero());
        let five = k.scale(&crate::graded::q(5));
        assert_eq!(bar.nu(&five).unwrap(), el(&sp, word(one(), vec![])).scale(&crate::graded::q(5)));
        assert_eq!(mu.apply_00(&bar.nu(&five).unwrap()), five);
        assert_eq!(bar.sigma(&el(&sp, word(x(0), vec![]))).unwrap(), el(&sp, word(one(), vec![x(0)])));
        assert_eq!(
            bar.sigma(&el(&sp, word(x(0), vec![x(1)]))).unwrap(),
            el(&sp, word(one(), vec![x(0), x(1)]))
        );
        for m in [word(one(), vec![]), word(x(0), vec![]), word(one(), vec![x(0)]), word(x(1), vec![x(0)])] {
            assert!(bar.homotopy_residual(&el(&sp, m.clone())).unwrap().is_zero(), "{m}");
        }
        let w = BimoduleWord::new(vec![x(0)], word(x(1), vec![x(0)]), vec![]);
        assert!(morphism_relation_residual(&mu, &w).is_zero());
    }

    #[test]
    fn flatness_and_algebra_checks() {
        let curved = Arc::new(crate::ainfty::curved_toy_algebra(1));
        let k = Arc::new(algebra_as_bimodule(curved));
        assert!(matches!(BarResolution::new(k), Err(Error::NotFlat(_))));

        let pair = KoszulPair::new(2).unwrap();
        let kk = Arc::new(augmentation_bimodule(&pair));
        assert!(matches!(tensor_bimodule(kk.clone(), kk), Err(Error::AlgebraMismatch { .. })));
    }
}
