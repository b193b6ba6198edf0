//! Sparse exact linear algebra over `Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::graded::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// A `rows × cols` matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(&i, v)| (i, j, v)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.cols[j]);
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "inner dimensions differ");
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Reorders rows and columns: new row `i` is old row `row_perm[i]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut inv = vec![0; row_perm.len()];
        for (new, &old) in row_perm.iter().enumerate() {
            inv[old] = new;
        }
        let cols = col_perm
            .iter()
            .map(|&old| self.cols[old].iter().map(|(&i, v)| (inv[i], v.clone())).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// Rank by fraction-free elimination on integer rows.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for (i, j, v) in self.triplets() {
            rows[i].insert(j, v.numer().clone() * (lcm_of_denominators(&self.cols[j]) / v.denom()));
        }
        // every row now holds integers up to a positive per-column factor,
        // which does not change the rank
        let mut rows: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut rank = 0;
        while let Some(pos) = pivot_row(&rows) {
            let pivot = rows.swap_remove(pos);
            let (&pc, pv) = pivot.iter().next().expect("non-empty pivot row");
            let pv = pv.clone();
            rank += 1;
            for r in rows.iter_mut() {
                let Some(rv) = r.get(&pc).cloned() else { continue };
                // r ← pv·r − rv·pivot, then divide by the content
                for v in r.values_mut() {
                    *v *= &pv;
                }
                for (&c, v) in &pivot {
                    let e = r.entry(c).or_insert_with(BigInt::zero);
                    *e -= &rv * v;
                }
                r.retain(|_, v| !v.is_zero());
                normalize_content(r);
            }
            rows.retain(|r| !r.is_empty());
        }
        rank
    }
}

fn lcm_of_denominators(col: &SparseVec) -> BigInt {
    col.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// The row whose leading column is smallest, ties broken by fewest entries.
fn pivot_row(rows: &[BTreeMap<usize, BigInt>]) -> Option<usize> {
    rows.iter()
        .enumerate()
        .min_by_key(|(_, r)| (*r.keys().next().expect("rows are non-empty"), r.len()))
        .map(|(i, _)| i)
}

fn normalize_content(r: &mut BTreeMap<usize, BigInt>) {
    let g = r.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in r.values_mut() {
            *v /= &g;
        }
    }
}

/// `y ← y + c·x`, dropping cancelled entries.
pub fn axpy(y: &mut SparseVec, c: &Q, x: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, v) in x {
        let e = y.entry(i).or_insert_with(Q::zero);
        *e += c * v;
        if e.is_zero() {
            y.remove(&i);
        }
    }
}

pub fn unit_vector(i: usize) -> SparseVec {
    SparseVec::from([(i, Q::one())])
}

/// Incremental row echelon form.  Each stored vector remembers how it was
/// combined from the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// pivot ↦ (vector with leading entry 1 at the pivot, combination)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    generators: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.  Returns the remainder and the
    /// combination `c` of generators with `v = remainder + Σ c_g g`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        let mut cursor = 0;
        loop {
            let next = rem.range(cursor..).map(|(&k, _)| k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = rem[&k].clone();
            let (row, rc) = &self.rows[&k];
            axpy(&mut rem, &-c.clone(), row);
            axpy(&mut comb, &c, rc);
            cursor = k + 1;
        }
        (rem, comb)
    }

    /// Adds `v` as the next generator.  Returns the combination of earlier
    /// generators equal to `v` when `v` is dependent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let id = self.generators;
        self.generators += 1;
        let (rem, comb) = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return Some(comb);
        };
        let inv = lead.recip();
        let row: SparseVec = rem.iter().map(|(&i, x)| (i, x * &inv)).collect();
        // row = (v − Σ comb) / lead
        let mut rc = SparseVec::new();
        axpy(&mut rc, &inv, &unit_vector(id));
        axpy(&mut rc, &-inv.clone(), &comb);
        self.rows.insert(pivot, (row, rc));
        None
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// A basis of `ker m`, as sparse vectors in the column space.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for j in 0..m.cols() {
        if let Some(comb) = ech.insert(m.column(j)) {
            let mut k = unit_vector(j);
            axpy(&mut k, &-Q::one(), &comb);
            out.push(k);
        }
    }
    out
}
