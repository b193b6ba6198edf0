//! A∞-algebras, A∞-bimodules and their morphisms, stored as families of
//! suspended Taylor components.
//!
//! Every rule here is in the suspended convention: it receives basis
//! monomials `x_1, …, x_n` standing for `s x_1 ⊗ … ⊗ s x_n` and returns `X`
//! with `d(s x_1 ⊗ … ⊗ s x_n) = s X`.  Unsuspended (`m`) components are
//! derived on demand with [`conjugate_component`].

mod residual;
mod transfer;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};


pub use residual::{
    ainfty_relation_residual, algebra_codifferential, bimodule_codifferential, bimodule_relation_residual,
    curvature_contribution, morphism_relation_residual, BimoduleWord,
};
pub use transfer::{transferred_component, Contraction};

use crate::basis::{Mono, Space};
use crate::error::{Error, Result};
use crate::graded::{q, suspension_sign, Element, Sign};
use crate::polyalg::{ExtMonomial, SymMonomial};
use crate::taylor::{conjugate_component, Arity, Convention, TaylorMap};

pub type AlgebraRule = Arc<dyn Fn(&[Mono]) -> Element + Send + Sync>;
pub type BimoduleRule = Arc<dyn Fn(&[Mono], &Mono, &[Mono]) -> Element + Send + Sync>;
/// An `m`-convention operation on basis monomials.
pub type UnaryOp = Arc<dyn Fn(&Mono) -> Element + Send + Sync>;
pub type BinaryOp = Arc<dyn Fn(&Mono, &Mono) -> Element + Send + Sync>;

#[derive(Clone)]
pub struct AInfAlgebra {
    name: String,
    space: Space,
    /// Arities whose component may be nonzero, ascending.
    support: Vec<usize>,
    unit: Option<Mono>,
    rule: AlgebraRule,
}

impl AInfAlgebra {
    pub fn new(name: impl Into<String>, space: Space, support: Vec<usize>, unit: Option<Mono>, rule: AlgebraRule) -> Self {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        AInfAlgebra {
            name: name.into(),
            space,
            support,
            unit,
            rule,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn unit(&self) -> Option<&Mono> {
        self.unit.as_ref()
    }

    /// `d^n` on suspended basis inputs.
    pub fn apply(&self, inputs: &[Mono]) -> Element {
        if self.support.binary_search(&inputs.len()).is_err() {
            return Element::zero(self.space.clone());
        }
        (self.rule)(inputs)
    }

    pub fn component(&self, n: usize) -> TaylorMap {
        let this = self.clone();
        TaylorMap::new(
            Arity::Algebra(n),
            Convention::Shifted,
            1,
            self.space.clone(),
            Arc::new(move |inp: &[Mono]| this.apply(inp)),
        )
    }

    pub fn curvature(&self) -> Element {
        self.apply(&[])
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    pub fn same_as(&self, other: &AInfAlgebra) -> bool {
        self.name == other.name && self.space == other.space
    }

    /// A copy whose components are post-processed by `f(inputs, value)`.
    pub fn modified(
        &self,
        name: impl Into<String>,
        f: impl Fn(&[Mono], Element) -> Element + Send + Sync + 'static,
    ) -> AInfAlgebra {
        let inner = self.rule.clone();
        AInfAlgebra {
            name: name.into(),
            space: self.space.clone(),
            support: self.support.clone(),
            unit: self.unit.clone(),
            rule: Arc::new(move |inp: &[Mono]| f(inp, inner(inp))),
        }
    }

    pub fn with_unit(mut self, unit: Option<Mono>) -> Self {
        self.unit = unit;
        self
    }
}

impl fmt::Debug for AInfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AInfAlgebra")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("support", &self.support)
            .finish()
    }
}

/// A (possibly curved) dg algebra viewed as an A∞-algebra.
///
/// `sample` is used to check the declared degrees, associativity and
/// `δ² = 0` before the structure is accepted.
pub fn build_dga(
    name: impl Into<String>,
    space: Space,
    product: BinaryOp,
    differential: Option<UnaryOp>,
    curvature: Option<Element>,
    unit: Option<Mono>,
    sample: &[Mono],
) -> Result<AInfAlgebra> {
    for a in sample {
        for b in sample {
            let ab = product(a, b);
            check_degree(&ab, a.deg() + b.deg())?;
            for c in sample {
                let left = apply_binary(&product, &ab, c);
                let right = apply_binary_left(&product, a, &product(b, c));
                if left != right {
                    return Err(Error::Unsupported(format!("product not associative on ({a}, {b}, {c})")));
                }
            }
        }
        if let Some(delta) = &differential {
            let da = delta(a);
            check_degree(&da, a.deg() + 1)?;
            let mut dda = Element::zero(space.clone());
            for (m, c) in da.terms() {
                dda.add_scaled(&delta(m), c);
            }
            if !dda.is_zero() {
                return Err(Error::Unsupported(format!("differential does not square to zero on {a}")));
            }
        }
    }
    if let Some(c) = &curvature {
        check_degree(c, 2)?;
    }

    let mut support = vec![2];
    if differential.is_some() {
        support.push(1);
    }
    if curvature.as_ref().is_some_and(|c| !c.is_zero()) {
        support.push(0);
    }
    let target = space.clone();
    let unshifted: AlgebraRule = Arc::new(move |inp: &[Mono]| match inp.len() {
        0 => curvature.clone().unwrap_or_else(|| Element::zero(target.clone())),
        1 => match &differential {
            Some(d) => d(&inp[0]),
            None => Element::zero(target.clone()),
        },
        2 => product(&inp[0], &inp[1]),
        _ => Element::zero(target.clone()),
    });
    Ok(AInfAlgebra::new(name, space, support, unit, shift_algebra_rule(unshifted)))
}

fn check_degree(e: &Element, expected: i32) -> Result<()> {
    if let Some(d) = e.homogeneous_degree()? {
        if d.0 != expected {
            return Err(Error::DegreeMismatch {
                declared: expected,
                computed: d.0,
            });
        }
    }
    Ok(())
}

fn apply_binary(op: &BinaryOp, x: &Element, y: &Mono) -> Element {
    let mut out = Element::zero(x.space().clone());
    for (m, c) in x.terms() {
        out.add_scaled(&op(m, y), c);
    }
    out
}

fn apply_binary_left(op: &BinaryOp, x: &Mono, y: &Element) -> Element {
    let mut out = Element::zero(y.space().clone());
    for (m, c) in y.terms() {
        out.add_scaled(&op(x, m), c);
    }
    out
}

/// Suspends an `m`-convention algebra rule of any arity.
fn shift_algebra_rule(m: AlgebraRule) -> AlgebraRule {
    Arc::new(move |inp: &[Mono]| {
        let degrees: Vec<i32> = inp.iter().map(Mono::deg).collect();
        let v = m(inp);
        match suspension_sign(&degrees) {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    })
}

/// Suspends an `m`-convention bimodule rule.
pub(crate) fn shift_bimodule_rule(m: BimoduleRule) -> BimoduleRule {
    Arc::new(move |left: &[Mono], mid: &Mono, right: &[Mono]| {
        let degrees: Vec<i32> = left
            .iter()
            .chain(std::iter::once(mid))
            .chain(right)
            .map(Mono::deg)
            .collect();
        let v = m(left, mid, right);
        match suspension_sign(&degrees) {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    })
}

/// `A = S(V*)`: flat, unital, only the product.
pub fn sym_algebra(dim: usize) -> Result<AInfAlgebra> {
    check_dim(dim)?;
    let space = Space::Sym { dim };
    let sp = space.clone();
    let product: BinaryOp = Arc::new(move |a: &Mono, b: &Mono| {
        let (Mono::Sym(x), Mono::Sym(y)) = (a, b) else {
            return Element::zero(sp.clone());
        };
        Element::monomial(sp.clone(), Mono::Sym(x.mul(y)))
    });
    let sample: Vec<Mono> = crate::enumerate::sym_monomials_up_to(dim, 1).into_iter().map(Mono::Sym).collect();
    build_dga(
        format!("S(V*) dim {dim}"),
        space,
        product,
        None,
        None,
        Some(Mono::Sym(SymMonomial::one(dim))),
        &sample,
    )
}

/// `B = ∧V`: flat, unital, only the product.
pub fn ext_algebra(dim: usize) -> Result<AInfAlgebra> {
    check_dim(dim)?;
    let space = Space::Ext { dim };
    let sp = space.clone();
    let product: BinaryOp = Arc::new(move |a: &Mono, b: &Mono| {
        let mut out = Element::zero(sp.clone());
        if let (Mono::Ext(x), Mono::Ext(y)) = (a, b) {
            if let Some((s, p)) = x.mul(y) {
                out.add_term(Mono::Ext(p), s.to_q());
            }
        }
        out
    });
    let sample: Vec<Mono> = crate::enumerate::ext_monomials(dim).into_iter().map(Mono::Ext).collect();
    build_dga(
        format!("∧V dim {dim}"),
        space,
        product,
        None,
        None,
        Some(Mono::Ext(ExtMonomial::one())),
        &sample,
    )
}

/// The ground field as a unital algebra.
pub fn ground_algebra() -> AInfAlgebra {
    let product: BinaryOp = Arc::new(|_: &Mono, _: &Mono| Element::monomial(Space::Ground, Mono::Unit));
    build_dga("K", Space::Ground, product, None, None, Some(Mono::Unit), &[Mono::Unit])
        .expect("the ground field is a dg algebra")
}

/// `K[u]` with `|u| = 2` and curvature `c · u`.
pub fn curved_toy_algebra(curvature: i64) -> AInfAlgebra {
    let product: BinaryOp = Arc::new(|a: &Mono, b: &Mono| {
        let (Mono::Power(i), Mono::Power(j)) = (a, b) else {
            return Element::zero(Space::Curved);
        };
        Element::monomial(Space::Curved, Mono::Power(i + j))
    });
    let curv = Element::term(Space::Curved, Mono::Power(1), q(curvature));
    let sample = [Mono::Power(0), Mono::Power(1), Mono::Power(2)];
    build_dga(
        format!("K[u] curvature {curvature}"),
        Space::Curved,
        product,
        None,
        Some(curv),
        Some(Mono::Power(0)),
        &sample,
    )
    .expect("K[u] is a curved dg algebra")
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > crate::MAX_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    Ok(())
}

#[derive(Clone)]
pub struct AInfBimodule {
    name: String,
    left: Arc<AInfAlgebra>,
    right: Arc<AInfAlgebra>,
    space: Space,
    /// Components vanish when `m + n` exceeds this.
    max_arity: Option<usize>,
    rule: BimoduleRule,
}

impl AInfBimodule {
    pub fn new(
        name: impl Into<String>,
        left: Arc<AInfAlgebra>,
        right: Arc<AInfAlgebra>,
        space: Space,
        max_arity: Option<usize>,
        rule: BimoduleRule,
    ) -> Self {
        AInfBimodule {
            name: name.into(),
            left,
            right,
            space,
            max_arity,
            rule,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &Arc<AInfAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<AInfAlgebra> {
        &self.right
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn max_arity(&self) -> Option<usize> {
        self.max_arity
    }

    /// `d^{m,n}(s a_1, …, s a_m, s k, s b_1, …, s b_n)`, desuspended.
    pub fn apply(&self, left: &[Mono], mid: &Mono, right: &[Mono]) -> Element {
        if self.max_arity.is_some_and(|b| left.len() + right.len() > b) {
            return Element::zero(self.space.clone());
        }
        (self.rule)(left, mid, right)
    }

    /// Multilinear extension in the module slot.
    pub fn apply_element(&self, left: &[Mono], mid: &Element, right: &[Mono]) -> Element {
        let mut out = Element::zero(self.space.clone());
        for (m, c) in mid.terms() {
            out.add_scaled(&self.apply(left, m, right), c);
        }
        out
    }

    pub fn component(&self, m: usize, n: usize) -> TaylorMap {
        let this = self.clone();
        TaylorMap::new(
            Arity::Bimodule(m, n),
            Convention::Shifted,
            1,
            self.space.clone(),
            Arc::new(move |inp: &[Mono]| this.apply(&inp[..m], &inp[m], &inp[m + 1..])),
        )
    }

    /// `m^{m,n}`, of degree `1 - m - n`.
    pub fn m_component(&self, m: usize, n: usize) -> TaylorMap {
        conjugate_component(&self.component(m, n))
    }

    /// The left A∞-module components `d^{m,0}`.
    ///
    /// Only offered when both algebras are flat: over a curved algebra the
    /// bimodule structure does not restrict to one-sided modules.
    pub fn left_module_component(&self, m: usize) -> Result<TaylorMap> {
        self.require_flat()?;
        Ok(self.component(m, 0))
    }

    pub fn right_module_component(&self, n: usize) -> Result<TaylorMap> {
        self.require_flat()?;
        Ok(self.component(0, n))
    }

    fn require_flat(&self) -> Result<()> {
        for alg in [&self.left, &self.right] {
            if !alg.is_flat() {
                return Err(Error::Unsupported(format!(
                    "{} does not restrict to one-sided modules: {} is curved",
                    self.name,
                    alg.name()
                )));
            }
        }
        Ok(())
    }

    /// Memoizes components on basis words; worthwhile when they are
    /// computed rather than looked up.
    pub fn cached(self) -> AInfBimodule {
        type Memo = RwLock<HashMap<(Vec<Mono>, Mono, Vec<Mono>), Element>>;
        let inner = self.rule.clone();
        let memo: Arc<Memo> = Arc::default();
        AInfBimodule {
            rule: Arc::new(move |l: &[Mono], k: &Mono, r: &[Mono]| {
                let key = (l.to_vec(), k.clone(), r.to_vec());
                if let Some(v) = memo.read().expect("memo lock").get(&key) {
                    return v.clone();
                }
                let v = inner(l, k, r);
                memo.write().expect("memo lock").insert(key, v.clone());
                v
            }),
            ..self
        }
    }

    pub fn modified(
        &self,
        name: impl Into<String>,
        f: impl Fn(&[Mono], &Mono, &[Mono], Element) -> Element + Send + Sync + 'static,
    ) -> AInfBimodule {
        let inner = self.rule.clone();
        AInfBimodule {
            name: name.into(),
            left: self.left.clone(),
            right: self.right.clone(),
            space: self.space.clone(),
            max_arity: self.max_arity,
            rule: Arc::new(move |l: &[Mono], k: &Mono, r: &[Mono]| f(l, k, r, inner(l, k, r))),
        }
    }
}

impl fmt::Debug for AInfBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AInfBimodule")
            .field("name", &self.name)
            .field("left", &self.left.name())
            .field("right", &self.right.name())
            .field("space", &self.space)
            .finish()
    }
}

/// A morphism of A∞-bimodules over the same pair of algebras, given by its
/// degree-0 suspended Taylor components.
#[derive(Clone)]
pub struct BimoduleMorphism {
    name: String,
    source: Arc<AInfBimodule>,
    target: Arc<AInfBimodule>,
    max_arity: Option<usize>,
    rule: BimoduleRule,
}

impl BimoduleMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<AInfBimodule>,
        target: Arc<AInfBimodule>,
        max_arity: Option<usize>,
        rule: BimoduleRule,
    ) -> Result<Self> {
        for (a, b) in [(source.left(), target.left()), (source.right(), target.right())] {
            if !a.same_as(b) {
                return Err(Error::AlgebraMismatch {
                    left: a.name().to_string(),
                    right: b.name().to_string(),
                });
            }
        }
        Ok(BimoduleMorphism {
            name: name.into(),
            source,
            target,
            max_arity,
            rule,
        })
    }

    pub fn identity(bim: Arc<AInfBimodule>) -> Self {
        let space = bim.space().clone();
        BimoduleMorphism {
            name: format!("id {}", bim.name()),
            source: bim.clone(),
            target: bim,
            max_arity: Some(0),
            rule: Arc::new(move |_: &[Mono], k: &Mono, _: &[Mono]| Element::monomial(space.clone(), k.clone())),
        }
    }

    pub fn zero(source: Arc<AInfBimodule>, target: Arc<AInfBimodule>) -> Result<Self> {
        let space = target.space().clone();
        BimoduleMorphism::new(
            format!("0: {} → {}", source.name(), target.name()),
            source,
            target,
            Some(0),
            Arc::new(move |_: &[Mono], _: &Mono, _: &[Mono]| Element::zero(space.clone())),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<AInfBimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInfBimodule> {
        &self.target
    }

    pub fn apply(&self, left: &[Mono], mid: &Mono, right: &[Mono]) -> Element {
        if self.max_arity.is_some_and(|b| left.len() + right.len() > b) {
            return Element::zero(self.target.space().clone());
        }
        (self.rule)(left, mid, right)
    }

    /// The chain-level map `φ^{0,0}` extended linearly.
    pub fn apply_00(&self, x: &Element) -> Element {
        let mut out = Element::zero(self.target.space().clone());
        for (m, c) in x.terms() {
            out.add_scaled(&self.apply(&[], m, &[]), c);
        }
        out
    }

    pub fn component(&self, m: usize, n: usize) -> TaylorMap {
        let this = self.clone();
        TaylorMap::new(
            Arity::Bimodule(m, n),
            Convention::Shifted,
            0,
            self.target.space().clone(),
            Arc::new(move |inp: &[Mono]| this.apply(&inp[..m], &inp[m], &inp[m + 1..])),
        )
    }

    /// Composite at the chain level only: `(ψ ∘ φ)^{0,0}`.
    pub fn compose_00(&self, after: &BimoduleMorphism) -> Result<BimoduleMorphism> {
        if self.target.space() != after.source.space() {
            return Err(Error::SpaceMismatch {
                left: self.target.space().clone(),
                right: after.source.space().clone(),
            });
        }
        let first = self.clone();
        let second = after.clone();
        BimoduleMorphism::new(
            format!("{} ∘ {}", after.name, self.name),
            self.source.clone(),
            after.target.clone(),
            Some(0),
            Arc::new(move |_: &[Mono], k: &Mono, _: &[Mono]| second.apply_00(&first.apply(&[], k, &[]))),
        )
    }

    pub fn modified(
        &self,
        name: impl Into<String>,
        f: impl Fn(&[Mono], &Mono, &[Mono], Element) -> Element + Send + Sync + 'static,
    ) -> BimoduleMorphism {
        let inner = self.rule.clone();
        BimoduleMorphism {
            name: name.into(),
            source: self.source.clone(),
            target: self.target.clone(),
            max_arity: self.max_arity,
            rule: Arc::new(move |l: &[Mono], k: &Mono, r: &[Mono]| f(l, k, r, inner(l, k, r))),
        }
    }
}

impl fmt::Debug for BimoduleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BimoduleMorphism").field("name", &self.name).finish()
    }
}

/// Outcome of a unitality check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }
}

/// Checks `m²(1,a) = m²(a,1) = a` and `m^n(…,1,…) = 0` for `n ≠ 2` on all
/// tuples from `basis` of length at most `max_arity`.
pub fn check_unital(alg: &AInfAlgebra, basis: &[Mono], max_arity: usize) -> Result<UnitReport> {
    let unit = alg.unit().cloned().ok_or_else(|| Error::NoUnit(alg.name().to_string()))?;
    let mut report = UnitReport::default();
    let m2 = conjugate_component(&alg.component(2));
    for a in basis {
        let expect = Element::monomial(alg.space().clone(), a.clone());
        let l = m2.apply(&[unit.clone(), a.clone()]);
        report.record(l == expect, || format!("m2(1, {a}) = {l}"));
        let r = m2.apply(&[a.clone(), unit.clone()]);
        report.record(r == expect, || format!("m2({a}, 1) = {r}"));
    }
    for n in 1..=max_arity {
        if n == 2 {
            continue;
        }
        let mn = conjugate_component(&alg.component(n));
        for pos in 0..n {
            for rest in crate::enumerate::tuples(basis, n - 1) {
                let mut inp = rest.clone();
                inp.insert(pos, unit.clone());
                let v = mn.apply(&inp);
                report.record(v.is_zero(), || format!("m{n}{} = {v}", fmt_tuple(&inp)));
            }
        }
    }
    Ok(report)
}

/// Left unitality of a bimodule: `m^{1,0}(1, k) = k` and
/// `m^{m,n}(…, 1, …, k, …) = 0` for `m ≠ 1`.
pub fn check_left_unital(
    bim: &AInfBimodule,
    left_basis: &[Mono],
    module_basis: &[Mono],
    right_basis: &[Mono],
    max_arity: usize,
) -> Result<UnitReport> {
    let unit = bim
        .left()
        .unit()
        .cloned()
        .ok_or_else(|| Error::NoUnit(bim.left().name().to_string()))?;
    let mut report = UnitReport::default();
    let m10 = bim.m_component(1, 0);
    for k in module_basis {
        let v = m10.apply(&[unit.clone(), k.clone()]);
        let expect = Element::monomial(bim.space().clone(), k.clone());
        report.record(v == expect, || format!("m(1,0)(1, {k}) = {v}"));
    }
    for total in 1..=max_arity {
        for m in 0..=total {
            let n = total - m;
            if m == 1 || m == 0 {
                continue;
            }
            let map = bim.m_component(m, n);
            for pos in 0..m {
                for rest in crate::enumerate::tuples(left_basis, m - 1) {
                    for bs in crate::enumerate::tuples(right_basis, n) {
                        for k in module_basis {
                            let mut inp = rest.clone();
                            inp.insert(pos, unit.clone());
                            inp.push(k.clone());
                            inp.extend(bs.iter().cloned());
                            let v = map.apply(&inp);
                            report.record(v.is_zero(), || format!("m({m},{n}){} = {v}", fmt_tuple(&inp)));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

pub(crate) fn fmt_tuple(inp: &[Mono]) -> String {
    let parts: Vec<String> = inp.iter().map(|m| m.to_string()).collect();
    format!("({})", parts.join(" | "))
}
