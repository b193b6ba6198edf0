//! Homology of weight-graded complexes, block by block.
//!
//! Every differential in scope preserves weight, so a complex splits into
//! finite blocks indexed by `(weight, degree)` and each block is handled
//! exactly.

mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::sync::Arc;

use rayon::prelude::*;

pub use linalg::{axpy, kernel, unit_vector, Echelon, SparseMatrix, SparseVec};

use crate::ainfty::{AInfBimodule, BimoduleMorphism};
use crate::basis::Mono;
use crate::enumerate::{koszul_monomials, sym_monomials_up_to};
use crate::error::{Error, Result};
use crate::graded::{Element, Q};
use crate::koszul::KoszulBridge;

/// Largest weight and bar length the builders accept.
pub const MAX_WEIGHT: u32 = 8;
pub const MAX_BAR_LENGTH: usize = 8;

/// `(weight, degree)`.
pub type Block = (u32, i32);

/// A cochain complex split by weight, with `d: C^q → C^{q+1}`.
#[derive(Clone)]
pub struct WeightedComplex {
    name: String,
    differential: Arc<AInfBimodule>,
    bases: BTreeMap<Block, Vec<Mono>>,
    index: BTreeMap<Block, BTreeMap<Mono, usize>>,
    matrices: BTreeMap<Block, SparseMatrix>,
    /// Lowest degree whose homology is not affected by truncation, per weight.
    reliable_from: Option<i32>,
}

impl fmt::Debug for WeightedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedComplex")
            .field("name", &self.name)
            .field("blocks", &self.bases.iter().map(|(k, v)| (*k, v.len())).collect::<Vec<_>>())
            .finish()
    }
}

impl WeightedComplex {
    /// Builds the blocks from `d^{0,0}` of `module` on the given bases.
    ///
    /// Fails when the differential of a basis element leaves the block at
    /// `(weight, degree + 1)`.
    pub fn build(
        name: impl Into<String>,
        module: Arc<AInfBimodule>,
        bases: BTreeMap<Block, Vec<Mono>>,
        reliable_from: Option<i32>,
    ) -> Result<Self> {
        let index: BTreeMap<Block, BTreeMap<Mono, usize>> = bases
            .iter()
            .map(|(k, v)| (*k, v.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()))
            .collect();
        let keys: Vec<Block> = bases.keys().copied().collect();
        let matrices: Result<Vec<(Block, SparseMatrix)>> = keys
            .par_iter()
            .map(|&(w, q)| {
                let empty = BTreeMap::new();
                let target = index.get(&(w, q + 1)).unwrap_or(&empty);
                let mut cols = Vec::with_capacity(bases[&(w, q)].len());
                for m in &bases[&(w, q)] {
                    let image = module.apply(&[], m, &[]);
                    cols.push(coordinates(&image, target, (w, q + 1))?);
                }
                Ok(((w, q), SparseMatrix::from_columns(target.len(), cols)))
            })
            .collect();
        Ok(WeightedComplex {
            name: name.into(),
            differential: module,
            bases,
            index,
            matrices: matrices?.into_iter().collect(),
            reliable_from,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.bases.keys().copied()
    }

    pub fn basis(&self, w: u32, q: i32) -> &[Mono] {
        self.bases.get(&(w, q)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, w: u32, q: i32) -> usize {
        self.basis(w, q).len()
    }

    /// `d: C^{w,q} → C^{w,q+1}`.
    pub fn matrix(&self, w: u32, q: i32) -> SparseMatrix {
        self.matrices
            .get(&(w, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.dim(w, q + 1), self.dim(w, q)))
    }

    pub fn is_reliable(&self, q: i32) -> bool {
        self.reliable_from.is_none_or(|lo| q >= lo)
    }

    /// Expresses `x` in the basis of block `(w, q)`.
    pub fn coordinates(&self, x: &Element, w: u32, q: i32) -> Result<SparseVec> {
        let empty = BTreeMap::new();
        coordinates(x, self.index.get(&(w, q)).unwrap_or(&empty), (w, q))
    }

    /// Checks `d ∘ d = 0` on every block.
    pub fn check_d_squared(&self) -> Vec<Block> {
        self.blocks()
            .filter(|&(w, q)| !self.matrix(w, q + 1).mul(&self.matrix(w, q)).is_zero())
            .collect()
    }

    /// `dim H^{w,q}`; fails on truncation-boundary degrees.
    pub fn betti(&self, w: u32, q: i32) -> Result<usize> {
        if !self.is_reliable(q) {
            return Err(Error::WindowBoundary { weight: w, degree: q });
        }
        let out = self.matrix(w, q).rank();
        let inc = self.matrix(w, q - 1).rank();
        Ok(self.dim(w, q) - out - inc)
    }

    pub fn betti_table(&self, weights: RangeInclusive<u32>, degrees: RangeInclusive<i32>) -> BettiTable {
        let cells: Vec<Block> = weights
            .flat_map(|w| degrees.clone().map(move |q| (w, q)))
            .collect();
        let entries = cells
            .par_iter()
            .map(|&(w, q)| {
                let e = match self.betti(w, q) {
                    Ok(b) => BettiEntry::Value(b),
                    Err(_) => BettiEntry::Boundary,
                };
                ((w, q), e)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        BettiTable {
            name: self.name.clone(),
            entries,
        }
    }

    /// Cycle representatives of a basis of `H^{w,q}`, and an echelon form of
    /// the boundaries followed by those representatives.
    fn homology_basis(&self, w: u32, q: i32) -> Result<(Vec<SparseVec>, Echelon)> {
        if !self.is_reliable(q) {
            return Err(Error::WindowBoundary { weight: w, degree: q });
        }
        let mut ech = Echelon::new();
        for col in self.matrix(w, q - 1).columns() {
            ech.insert(col);
        }
        // generators after the boundary columns are the chosen cycles
        let mut reps = Vec::new();
        for z in kernel(&self.matrix(w, q)) {
            if !ech.contains(&z) {
                ech.insert(&z);
                reps.push(z);
            }
        }
        Ok((reps, ech))
    }

    /// Sparse-triplet export: one `weight degree row col num/den` line per
    /// nonzero entry of every differential.
    pub fn export_triplets(&self, out: &mut impl Write) -> io::Result<()> {
        for (&(w, q), m) in &self.matrices {
            let mut entries: Vec<(usize, usize, &Q)> = m.triplets().collect();
            entries.sort_by_key(|&(i, j, _)| (i, j));
            for (i, j, v) in entries {
                writeln!(out, "{w} {q} {i} {j} {}/{}", v.numer(), v.denom())?;
            }
        }
        Ok(())
    }

    /// A copy with every basis reordered by `perm_for(len)`, for checking
    /// that results do not depend on enumeration order.
    pub fn with_permuted_bases(&self, perm_for: impl Fn(usize) -> Vec<usize>) -> Result<WeightedComplex> {
        let bases = self
            .bases
            .iter()
            .map(|(k, v)| (*k, perm_for(v.len()).into_iter().map(|i| v[i].clone()).collect()))
            .collect();
        WeightedComplex::build(self.name.clone(), self.differential.clone(), bases, self.reliable_from)
    }
}

fn coordinates(x: &Element, index: &BTreeMap<Mono, usize>, (w, q): Block) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (m, c) in x.terms() {
        let &i = index.get(m).ok_or_else(|| Error::OutsideBasis {
            weight: w,
            degree: q,
            mono: m.to_string(),
        })?;
        v.insert(i, c.clone());
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiEntry {
    Value(usize),
    /// Affected by the bar-length truncation.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub name: String,
    pub entries: BTreeMap<Block, BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, w: u32, q: i32) -> Option<BettiEntry> {
        self.entries.get(&(w, q)).copied()
    }

    /// Whether the table is that of a resolution of the ground field:
    /// 1 at `(0, 0)`, 0 elsewhere, boundary cells ignored.
    pub fn resolves_ground_field(&self) -> bool {
        self.entries.iter().all(|(&(w, q), e)| match e {
            BettiEntry::Boundary => true,
            BettiEntry::Value(b) => *b == usize::from(w == 0 && q == 0),
        })
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<u32> = {
            let mut v: Vec<u32> = self.entries.keys().map(|k| k.0).collect();
            v.dedup();
            v
        };
        let mut degrees: Vec<i32> = self.entries.keys().map(|k| k.1).collect();
        degrees.sort_unstable();
        degrees.dedup();
        writeln!(f, "{}", self.name)?;
        write!(f, "{:>8}", "w \\ q")?;
        for q in &degrees {
            write!(f, "{q:>5}")?;
        }
        writeln!(f)?;
        for w in weights {
            write!(f, "{w:>8}")?;
            for &q in &degrees {
                match self.get(w, q) {
                    Some(BettiEntry::Value(b)) => write!(f, "{b:>5}")?,
                    Some(BettiEntry::Boundary) => write!(f, "{:>5}", "*")?,
                    None => write!(f, "{:>5}", "")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The Koszul complex, all blocks of weight at most `max_weight`.
pub fn koszul_complex(bridge: &KoszulBridge, max_weight: u32) -> Result<WeightedComplex> {
    check_bounds(bridge.pair.dim, max_weight, 0)?;
    let dim = bridge.pair.dim;
    let mut bases = BTreeMap::new();
    for w in 0..=max_weight {
        for t in 0..=dim.min(w as usize) {
            let basis: Vec<Mono> = koszul_monomials(dim, w, t).into_iter().map(Mono::Koszul).collect();
            bases.insert((w, -(t as i32)), basis);
        }
    }
    WeightedComplex::build(format!("K(V), dim {dim}"), bridge.koszul.clone(), bases, None)
}

/// The unreduced bar complex `A ⊗ T(A[1]) ⊗ K` with at most
/// `max_bar_length` middle entries.  Degrees below `1 − max_bar_length`
/// are on the truncation boundary.
pub fn bar_complex(bridge: &KoszulBridge, max_weight: u32, max_bar_length: usize) -> Result<WeightedComplex> {
    check_bounds(bridge.pair.dim, max_weight, max_bar_length)?;
    if max_bar_length == 0 {
        return Err(Error::BoundOverflow("bar length must be at least 1".into()));
    }
    let dim = bridge.pair.dim;
    let by_weight: Vec<Vec<Mono>> = {
        let mut v = vec![Vec::new(); max_weight as usize + 1];
        for m in sym_monomials_up_to(dim, max_weight) {
            v[m.weight() as usize].push(Mono::Sym(m));
        }
        v
    };
    let mut bases: BTreeMap<Block, Vec<Mono>> = BTreeMap::new();
    for len in 0..=max_bar_length {
        for slots in weight_compositions(len + 1, max_weight) {
            let mut partial: Vec<Vec<Mono>> = vec![Vec::new()];
            for &sw in &slots {
                let mut next = Vec::new();
                for p in &partial {
                    for m in &by_weight[sw as usize] {
                        let mut p2 = p.clone();
                        p2.push(m.clone());
                        next.push(p2);
                    }
                }
                partial = next;
            }
            let w: u32 = slots.iter().sum();
            let entry = bases.entry((w, -(len as i32))).or_default();
            for p in partial {
                entry.push(Mono::tensor(p[0].clone(), p[1..].to_vec(), Mono::Unit));
            }
        }
    }
    WeightedComplex::build(
        format!("bar complex, dim {dim}, length ≤ {max_bar_length}"),
        bridge.bar.bimodule().clone(),
        bases,
        Some(1 - max_bar_length as i32),
    )
}

/// `K` itself: one basis vector in weight 0, degree 0.
pub fn augmentation_complex(bridge: &KoszulBridge) -> Result<WeightedComplex> {
    let bases = BTreeMap::from([((0, 0), vec![Mono::Unit])]);
    WeightedComplex::build("K", bridge.augmentation.clone(), bases, None)
}

/// All vectors of `parts` weights with sum at most `max_total`.
fn weight_compositions(parts: usize, max_total: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in weight_compositions(parts - 1, max_total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn check_bounds(dim: usize, max_weight: u32, max_bar_length: usize) -> Result<()> {
    if dim == 0 || dim > crate::MAX_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    if max_weight > MAX_WEIGHT {
        return Err(Error::BoundOverflow(format!("weight {max_weight} > {MAX_WEIGHT}")));
    }
    if max_bar_length > MAX_BAR_LENGTH {
        return Err(Error::BoundOverflow(format!("bar length {max_bar_length} > {MAX_BAR_LENGTH}")));
    }
    Ok(())
}

/// The matrix of `f^{0,0}: C^{w,q} → D^{w,q}` in the chosen bases.
pub fn chain_matrix(f: &BimoduleMorphism, src: &WeightedComplex, tgt: &WeightedComplex, w: u32, q: i32) -> Result<SparseMatrix> {
    let cols = src
        .basis(w, q)
        .iter()
        .map(|m| tgt.coordinates(&f.apply(&[], m, &[]), w, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(tgt.dim(w, q), cols))
}

/// The map induced by `f` on `H^{w,q}`, as a `dim H(tgt) × dim H(src)`
/// matrix in the chosen homology bases.
pub fn induced_h_map(
    f: &BimoduleMorphism,
    src: &WeightedComplex,
    tgt: &WeightedComplex,
    w: u32,
    q: i32,
) -> Result<SparseMatrix> {
    // chain-map condition on the two squares touching degree q
    for p in [q - 1, q] {
        let fp = chain_matrix(f, src, tgt, w, p)?;
        let fp1 = chain_matrix(f, src, tgt, w, p + 1)?;
        if fp1.mul(&src.matrix(w, p)) != tgt.matrix(w, p).mul(&fp) {
            return Err(Error::NotAChainMap { weight: w, degree: p });
        }
    }
    let (src_reps, _) = src.homology_basis(w, q)?;
    let (tgt_reps, tgt_ech) = tgt.homology_basis(w, q)?;
    let boundaries = tgt.matrix(w, q - 1).cols();
    let fq = chain_matrix(f, src, tgt, w, q)?;
    let mut cols = Vec::with_capacity(src_reps.len());
    for z in &src_reps {
        let (rem, comb) = tgt_ech.reduce(&fq.apply(z));
        debug_assert!(rem.is_empty(), "image of a cycle is a cycle");
        cols.push(homology_coordinates(&comb, boundaries));
    }
    Ok(SparseMatrix::from_columns(tgt_reps.len(), cols))
}

/// Generators of the echelon built in `homology_basis` are the boundary
/// columns followed by the cycle representatives, so dropping the first
/// `boundaries` ids leaves homology coordinates.
fn homology_coordinates(comb: &SparseVec, boundaries: usize) -> SparseVec {
    comb.iter()
        .filter(|(&id, _)| id >= boundaries)
        .map(|(&id, c)| (id - boundaries, c.clone()))
        .collect()
}

/// Outcome of [`quasi_iso_verdict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_quasi_iso: bool,
    /// First block where the induced map is not an isomorphism.
    pub witness: Option<Block>,
    /// Blocks checked, with `(dim H(src), dim H(tgt), rank of induced map)`.
    pub blocks: Vec<(Block, usize, usize, usize)>,
    /// Blocks left out because they sit on a truncation boundary.
    pub skipped: Vec<Block>,
}

/// Whether `f` induces isomorphisms on every `H^{w,q}` in the windows.
pub fn quasi_iso_verdict(
    f: &BimoduleMorphism,
    src: &WeightedComplex,
    tgt: &WeightedComplex,
    weights: RangeInclusive<u32>,
    degrees: RangeInclusive<i32>,
) -> Result<Verdict> {
    let cells: Vec<Block> = weights.flat_map(|w| degrees.clone().map(move |q| (w, q))).collect();
    // (dim H(src), dim H(tgt), rank), or None on the truncation boundary
    type Dims = Option<(usize, usize, usize)>;
    let results: Vec<(Block, Dims)> = cells
        .par_iter()
        .map(|&(w, q)| {
            if !src.is_reliable(q) || !tgt.is_reliable(q) {
                return Ok(((w, q), None));
            }
            let m = induced_h_map(f, src, tgt, w, q)?;
            Ok(((w, q), Some((m.cols(), m.rows(), m.rank()))))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict {
        is_quasi_iso: true,
        witness: None,
        blocks: Vec::new(),
        skipped: Vec::new(),
    };
    for (block, r) in results {
        match r {
            None => verdict.skipped.push(block),
            Some((hs, ht, rank)) => {
                let iso = hs == ht && rank == hs;
                if !iso && verdict.witness.is_none() {
                    verdict.is_quasi_iso = false;
                    verdict.witness = Some(block);
                }
                verdict.blocks.push((block, hs, ht, rank));
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::q;
    use crate::polyalg::{koszul_mono, sym_mono};

    #[test]
    fn koszul_blocks() {
        let b1 = KoszulBridge::new(1).unwrap();
        let c = koszul_complex(&b1, 2).unwrap();
        assert_eq!(c.basis(1, 0), &[koszul_mono(vec![1], vec![])]);
        assert_eq!(c.basis(1, -1), &[koszul_mono(vec![0], vec![0])]);
        assert_eq!(c.matrix(1, -1).get(0, 0), q(1));
        let b2 = KoszulBridge::new(2).unwrap();
        let c2 = koszul_complex(&b2, 2).unwrap();
        assert_eq!(c2.basis(2, -2), &[koszul_mono(vec![0, 0], vec![0, 1])]);
        assert!(c2.check_d_squared().is_empty());
        assert_eq!(c2.betti(0, 0).unwrap(), 1);
        assert_eq!(c2.betti(1, -1).unwrap(), 0);
    }

    #[test]
    fn bar_blocks() {
        let b1 = KoszulBridge::new(1).unwrap();
        let c = bar_complex(&b1, 1, 2).unwrap();
        let one = sym_mono(vec![0]);
        let w = |mid: Vec<Mono>| Mono::tensor(one.clone(), mid, Mono::Unit);
        let i1 = c.basis(0, -1).iter().position(|m| *m == w(vec![one.clone()])).unwrap();
        let i2 = c.basis(0, -2).iter().position(|m| *m == w(vec![one.clone(), one.clone()])).unwrap();
        assert!(c.matrix(0, -1).column(i1).is_empty());
        assert_eq!(c.matrix(0, -2).column(i2), &SparseVec::from([(i1, q(1))]));
        assert!(c.check_d_squared().is_empty());
        assert_eq!(c.betti(1, 0).unwrap(), 0);
        assert_eq!(c.betti(0, 0).unwrap(), 1);
        assert!(matches!(c.betti(0, -2), Err(Error::WindowBoundary { .. })));
    }

    #[test]
    fn induced_maps() {
        let bridge = KoszulBridge::new(2).unwrap();
        let kv = koszul_complex(&bridge, 2).unwrap();
        let bar = bar_complex(&bridge, 2, 3).unwrap();
        let k = augmentation_complex(&bridge).unwrap();
        let phi0 = induced_h_map(&bridge.phi, &kv, &bar, 0, 0).unwrap();
        assert_eq!((phi0.rows(), phi0.cols(), phi0.get(0, 0)), (1, 1, q(1)));
        let phi1 = induced_h_map(&bridge.phi, &kv, &bar, 1, 0).unwrap();
        assert_eq!((phi1.rows(), phi1.cols()), (0, 0));
        let mu = bridge.bar.mu().unwrap();
        let mu0 = induced_h_map(&mu, &bar, &k, 0, 0).unwrap();
        assert_eq!(mu0.get(0, 0), q(1));
    }

    #[test]
    fn verdicts() {
        let bridge = KoszulBridge::new(2).unwrap();
        let kv = koszul_complex(&bridge, 2).unwrap();
        let bar = bar_complex(&bridge, 2, 3).unwrap();
        let v = quasi_iso_verdict(&bridge.phi, &kv, &bar, 0..=2, -2..=0).unwrap();
        assert!(v.is_quasi_iso, "{v:?}");
        let zero = BimoduleMorphism::zero(bridge.koszul.clone(), bridge.bar.bimodule().clone()).unwrap();
        let v = quasi_iso_verdict(&zero, &kv, &bar, 0..=2, -2..=0).unwrap();
        assert!(!v.is_quasi_iso);
        assert_eq!(v.witness, Some((0, 0)));
    }

    #[test]
    fn betti_ignores_basis_order() {
        let bridge = KoszulBridge::new(2).unwrap();
        let bar = bar_complex(&bridge, 2, 3).unwrap();
        let rev = bar.with_permuted_bases(|n| (0..n).rev().collect()).unwrap();
        let t1 = bar.betti_table(0..=2, -2..=0);
        let t2 = rev.betti_table(0..=2, -2..=0);
        assert_eq!(t1.entries, t2.entries);
    }

    #[test]
    fn triplet_export() {
        let bridge = KoszulBridge::new(1).unwrap();
        let kv = koszul_complex(&bridge, 1).unwrap();
        let mut buf = Vec::new();
        kv.export_triplets(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1 -1 0 0 1/1\n");
    }
}
