//! Basis monomials of every graded space the crate works with, and the tags
//! naming those spaces.
//!
//! All spaces carry two gradings: the cohomological degree and an auxiliary
//! weight (polynomial degree plus number of odd variables).  Elements of the
//! exterior algebra have weight `-degree`, so that every structure map in the
//! crate preserves total weight.

use std::fmt;
use std::sync::Arc;

use crate::graded::Degree;
use crate::polyalg::{ExtMonomial, KoszulMonomial, SymMonomial};

/// A basis monomial of one of the graded spaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mono {
    /// The basis vector `1` of the ground field.
    Unit,
    Sym(SymMonomial),
    Ext(ExtMonomial),
    Koszul(KoszulMonomial),
    /// `u^k` in the one-variable algebra with `|u| = 2`.
    Power(u32),
    Tensor(Box<TensorWord>),
}

/// `k1 ⊗ (b_1|...|b_q) ⊗ k2`: the middle entries are suspended.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    pub left: Mono,
    pub middle: Vec<Mono>,
    pub right: Mono,
}

impl TensorWord {
    pub fn new(left: Mono, middle: Vec<Mono>, right: Mono) -> Self {
        TensorWord { left, middle, right }
    }

    pub fn bar_length(&self) -> usize {
        self.middle.len()
    }
}

impl Mono {
    pub fn tensor(left: Mono, middle: Vec<Mono>, right: Mono) -> Mono {
        Mono::Tensor(Box::new(TensorWord::new(left, middle, right)))
    }

    pub fn degree(&self) -> Degree {
        Degree(self.deg())
    }

    /// Raw cohomological degree.
    pub fn deg(&self) -> i32 {
        match self {
            Mono::Unit | Mono::Sym(_) => 0,
            Mono::Ext(e) => e.degree(),
            Mono::Koszul(k) => k.degree(),
            Mono::Power(k) => 2 * *k as i32,
            Mono::Tensor(w) => {
                w.left.deg() + w.middle.iter().map(|b| b.deg() - 1).sum::<i32>() + w.right.deg()
            }
        }
    }

    /// Degree after suspension, `|s x| = |x| - 1`.
    pub fn shifted_deg(&self) -> i32 {
        self.deg() - 1
    }

    pub fn weight(&self) -> i64 {
        match self {
            Mono::Unit | Mono::Power(_) => 0,
            Mono::Sym(s) => s.weight() as i64,
            Mono::Ext(e) => -(e.degree() as i64),
            Mono::Koszul(k) => k.weight() as i64,
            Mono::Tensor(w) => {
                w.left.weight() + w.middle.iter().map(Mono::weight).sum::<i64>() + w.right.weight()
            }
        }
    }

    pub fn as_sym(&self) -> Option<&SymMonomial> {
        match self {
            Mono::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtMonomial> {
        match self {
            Mono::Ext(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_koszul(&self) -> Option<&KoszulMonomial> {
        match self {
            Mono::Koszul(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<&TensorWord> {
        match self {
            Mono::Tensor(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mono::Unit => write!(f, "1"),
            Mono::Sym(s) => write!(f, "{s}"),
            Mono::Ext(e) => write!(f, "{e}"),
            Mono::Koszul(k) => write!(f, "{k}"),
            Mono::Power(0) => write!(f, "1"),
            Mono::Power(1) => write!(f, "u"),
            Mono::Power(k) => write!(f, "u^{k}"),
            Mono::Tensor(w) => {
                write!(f, "{}⊗(", w.left)?;
                for (i, b) in w.middle.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")⊗{}", w.right)
            }
        }
    }
}

/// Tag of an ambient graded space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// The ground field, concentrated in degree 0.
    Ground,
    /// `S(V*)`, polynomials on `V`.
    Sym { dim: usize },
    /// `∧V`, written as constant-coefficient polyderivations `∂_θ`.
    Ext { dim: usize },
    /// The Koszul complex `K[x_i, θ_j]`.
    Koszul { dim: usize },
    /// One even generator `u` of degree 2.
    Curved,
    /// `K1 ⊗ T(B[1]) ⊗ K2` with the three factor spaces.
    Tensor(Arc<[Space; 3]>),
}

impl Space {
    pub fn tensor(left: Space, middle: Space, right: Space) -> Space {
        Space::Tensor(Arc::new([left, middle, right]))
    }

    pub fn contains(&self, mono: &Mono) -> bool {
        match (self, mono) {
            (Space::Ground, Mono::Unit) => true,
            (Space::Sym { dim }, Mono::Sym(s)) => s.dim() == *dim,
            (Space::Ext { dim }, Mono::Ext(e)) => e.indices().iter().all(|&i| i < *dim),
            (Space::Koszul { dim }, Mono::Koszul(k)) => {
                k.exponents().dim() == *dim && k.thetas().iter().all(|&i| i < *dim)
            }
            (Space::Curved, Mono::Power(_)) => true,
            (Space::Tensor(parts), Mono::Tensor(w)) => {
                parts[0].contains(&w.left)
                    && w.middle.iter().all(|b| parts[1].contains(b))
                    && parts[2].contains(&w.right)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Ground => write!(f, "K"),
            Space::Sym { dim } => write!(f, "S(V*)[dim {dim}]"),
            Space::Ext { dim } => write!(f, "∧V[dim {dim}]"),
            Space::Koszul { dim } => write!(f, "K(V)[dim {dim}]"),
            Space::Curved => write!(f, "K[u]"),
            Space::Tensor(p) => write!(f, "{}⊗T({}[1])⊗{}", p[0], p[1], p[2]),
        }
    }
}
