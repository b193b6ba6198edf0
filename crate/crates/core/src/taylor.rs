//! Single Taylor components and the passage between the suspended
//! (`d`, every component of degree 1) and unsuspended (`m`) conventions.

use std::fmt;
use std::sync::Arc;

use crate::basis::{Mono, Space};
use crate::error::{Error, Result};
use crate::graded::{suspension_sign, Element, Sign};

pub type Rule = Arc<dyn Fn(&[Mono]) -> Element + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arity {
    Algebra(usize),
    /// `(m, n)`: `m` left arguments, one module argument, `n` right arguments.
    Bimodule(usize, usize),
}

impl Arity {
    pub fn inputs(self) -> usize {
        match self {
            Arity::Algebra(n) => n,
            Arity::Bimodule(m, n) => m + 1 + n,
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Algebra(n) => write!(f, "{n}"),
            Arity::Bimodule(m, n) => write!(f, "({m},{n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Inputs and output suspended; the rule returns `X` with `d(s a_1 ⊗ …) = s X`.
    Shifted,
    /// Plain multilinear map `m(a_1 ⊗ …)`.
    Unshifted,
}

/// One multilinear component, evaluated on basis tuples.
#[derive(Clone)]
pub struct TaylorMap {
    arity: Arity,
    convention: Convention,
    degree: i32,
    target: Space,
    rule: Rule,
}

impl TaylorMap {
    /// `degree` is measured in the given convention: on suspended inputs for
    /// [`Convention::Shifted`], on plain inputs otherwise.
    pub fn new(arity: Arity, convention: Convention, degree: i32, target: Space, rule: Rule) -> Self {
        TaylorMap {
            arity,
            convention,
            degree,
            target,
            rule,
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn apply(&self, inputs: &[Mono]) -> Element {
        debug_assert_eq!(inputs.len(), self.arity.inputs());
        (self.rule)(inputs)
    }

    /// Evaluates and checks the output degree against the declared one.
    pub fn try_apply(&self, inputs: &[Mono]) -> Result<Element> {
        if inputs.len() != self.arity.inputs() {
            return Err(Error::LengthMismatch {
                expected: self.arity.inputs(),
                found: inputs.len(),
            });
        }
        let out = (self.rule)(inputs);
        if let Some(d) = out.homogeneous_degree()? {
            let computed = match self.convention {
                Convention::Shifted => (d.0 - 1) - inputs.iter().map(Mono::shifted_deg).sum::<i32>(),
                Convention::Unshifted => d.0 - inputs.iter().map(Mono::deg).sum::<i32>(),
            };
            if computed != self.degree {
                return Err(Error::DegreeMismatch {
                    declared: self.degree,
                    computed,
                });
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for TaylorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TaylorMap")
            .field("arity", &self.arity)
            .field("convention", &self.convention)
            .field("degree", &self.degree)
            .field("target", &self.target)
            .finish()
    }
}

/// `m = s^{-1} ∘ d ∘ s^{⊗n}` and back.
///
/// Both directions multiply the value on a tuple by the sign of moving the
/// suspensions into place, so the operation is an involution on values.
pub fn conjugate_component(map: &TaylorMap) -> TaylorMap {
    let n = map.arity.inputs() as i32;
    let (convention, degree) = match map.convention {
        Convention::Shifted => (Convention::Unshifted, map.degree + 1 - n),
        Convention::Unshifted => (Convention::Shifted, map.degree - 1 + n),
    };
    let inner = map.rule.clone();
    let rule: Rule = Arc::new(move |inputs: &[Mono]| {
        let degrees: Vec<i32> = inputs.iter().map(Mono::deg).collect();
        let v = inner(inputs);
        match suspension_sign(&degrees) {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    });
    TaylorMap {
        arity: map.arity,
        convention,
        degree,
        target: map.target.clone(),
        rule,
    }
}

/// Wraps an `m`-convention rule as a suspended component of the given arity.
pub fn suspended(arity: Arity, unshifted_degree: i32, target: Space, rule: Rule) -> TaylorMap {
    conjugate_component(&TaylorMap::new(arity, Convention::Unshifted, unshifted_degree, target, rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::q;
    use crate::polyalg::{ext_mono, ExtMonomial};

    fn ext_identity_plus_one() -> TaylorMap {
        // m^1 on ∧V: degree-1 map e_i ↦ e_i e_2 (a toy)
        let rule: Rule = Arc::new(|inp: &[Mono]| {
            let e = inp[0].as_ext().unwrap();
            let mut out = Element::zero(Space::Ext { dim: 3 });
            if let Some((s, p)) = e.mul(&ExtMonomial::new(vec![2]).unwrap()) {
                out.add_term(Mono::Ext(p), s.to_q());
            }
            out
        });
        TaylorMap::new(Arity::Algebra(1), Convention::Unshifted, 1, Space::Ext { dim: 3 }, rule)
    }

    #[test]
    fn unary_conjugation_has_no_sign() {
        let m = ext_identity_plus_one();
        let d = conjugate_component(&m);
        assert_eq!(d.degree(), 1);
        let x = [ext_mono(vec![0])];
        assert_eq!(d.apply(&x), m.apply(&x));
        assert!(d.try_apply(&x).is_ok());
    }

    fn ext_product() -> TaylorMap {
        let rule: Rule = Arc::new(|inp: &[Mono]| {
            let mut out = Element::zero(Space::Ext { dim: 2 });
            if let Some((s, p)) = inp[0].as_ext().unwrap().mul(inp[1].as_ext().unwrap()) {
                out.add_term(Mono::Ext(p), s.to_q());
            }
            out
        });
        TaylorMap::new(Arity::Algebra(2), Convention::Unshifted, 0, Space::Ext { dim: 2 }, rule)
    }

    #[test]
    fn binary_conjugation_signs() {
        let d = conjugate_component(&ext_product());
        assert_eq!(d.degree(), 1);
        // degrees (0,0): +1
        let one = ext_mono(vec![]);
        assert_eq!(d.apply(&[one.clone(), one.clone()]), ext_product().apply(&[one.clone(), one.clone()]));
        // degrees (1,0): −1
        let e1 = ext_mono(vec![0]);
        assert_eq!(
            d.apply(&[e1.clone(), one.clone()]),
            ext_product().apply(&[e1.clone(), one]).scale(&q(-1))
        );
    }

    #[test]
    fn conjugation_is_an_involution() {
        let m = ext_product();
        let back = conjugate_component(&conjugate_component(&m));
        assert_eq!(back.degree(), m.degree());
        assert_eq!(back.convention(), Convention::Unshifted);
        for a in [vec![], vec![0], vec![1], vec![0, 1]] {
            for b in [vec![], vec![0], vec![1]] {
                let inp = [ext_mono(a.clone()), ext_mono(b)];
                assert_eq!(back.apply(&inp), m.apply(&inp));
            }
        }
    }

    #[test]
    fn degree_bookkeeping_is_checked() {
        let m = ext_product();
        let wrong = TaylorMap::new(Arity::Algebra(2), Convention::Unshifted, 1, Space::Ext { dim: 2 }, m.rule.clone());
        let e1 = ext_mono(vec![0]);
        let e2 = ext_mono(vec![1]);
        assert!(matches!(wrong.try_apply(&[e1, e2]), Err(Error::DegreeMismatch { declared: 1, computed: 0 })));
    }
}
