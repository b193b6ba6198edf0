//! Enumeration of monomial bases and input tuples.

use crate::basis::Mono;
use crate::polyalg::{ExtMonomial, KoszulMonomial, SymMonomial};

/// All exponent vectors of length `dim` summing to `total`, in lexicographic
/// order with the first variable's exponent decreasing.
fn compositions(dim: usize, total: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(dim - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn sym_monomials_of_weight(dim: usize, weight: u32) -> Vec<SymMonomial> {
    compositions(dim, weight).into_iter().map(SymMonomial::new).collect()
}

pub fn sym_monomials_up_to(dim: usize, max_weight: u32) -> Vec<SymMonomial> {
    (0..=max_weight).flat_map(|w| sym_monomials_of_weight(dim, w)).collect()
}

/// Strictly increasing index lists of length `size` from `0..dim`.
pub fn subsets(dim: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == size {
            out.push(acc.clone());
            return;
        }
        for i in start..dim {
            acc.push(i);
            go(i + 1, dim, size, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, size, &mut Vec::new(), &mut out);
    out
}

pub fn ext_monomials_of_degree(dim: usize, degree: usize) -> Vec<ExtMonomial> {
    subsets(dim, degree)
        .into_iter()
        .map(|s| ExtMonomial::new(s).expect("subsets are increasing"))
        .collect()
}

/// Every basis monomial of `∧V`, by increasing degree.
pub fn ext_monomials(dim: usize) -> Vec<ExtMonomial> {
    (0..=dim).flat_map(|d| ext_monomials_of_degree(dim, d)).collect()
}

/// Basis of the Koszul complex in weight `weight` and degree `-thetas`.
pub fn koszul_monomials(dim: usize, weight: u32, thetas: usize) -> Vec<KoszulMonomial> {
    if thetas as u32 > weight || thetas > dim {
        return Vec::new();
    }
    let mut out = Vec::new();
    for exps in compositions(dim, weight - thetas as u32) {
        for t in subsets(dim, thetas) {
            out.push(KoszulMonomial::new(SymMonomial::new(exps.clone()), t).expect("subsets are increasing"));
        }
    }
    out
}

pub fn koszul_monomials_of_weight(dim: usize, weight: u32) -> Vec<KoszulMonomial> {
    (0..=dim).flat_map(|t| koszul_monomials(dim, weight, t)).collect()
}

pub fn koszul_monomials_up_to(dim: usize, max_weight: u32) -> Vec<KoszulMonomial> {
    (0..=max_weight).flat_map(|w| koszul_monomials_of_weight(dim, w)).collect()
}

/// The `n`-fold cartesian power of `basis`.
pub fn tuples(basis: &[Mono], n: usize) -> Vec<Vec<Mono>> {
    let mut out: Vec<Vec<Mono>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * basis.len());
        for t in &out {
            for b in basis {
                let mut t2 = t.clone();
                t2.push(b.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Tuples of length `n` whose weights sum to at most `max_total`.
pub fn tuples_with_weight_bound(basis: &[Mono], n: usize, max_total: i64) -> Vec<Vec<Mono>> {
    fn go(basis: &[Mono], n: usize, budget: i64, acc: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for b in basis {
            let w = b.weight().abs();
            if w <= budget {
                acc.push(b.clone());
                go(basis, n, budget - w, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(basis, n, max_total, &mut Vec::new(), &mut out);
    out
}

/// Words `a ⊗ (ã_1 | … | ã_q) ⊗ 1` with `q ≤ max_len` and total weight at
/// most `max_weight`, grouped by length.
pub fn bar_words(dim: usize, max_weight: u32, max_len: usize) -> Vec<Mono> {
    let basis: Vec<Mono> = sym_monomials_up_to(dim, max_weight).into_iter().map(Mono::Sym).collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        for t in tuples_with_weight_bound(&basis, len + 1, max_weight as i64) {
            out.push(Mono::tensor(t[0].clone(), t[1..].to_vec(), Mono::Unit));
        }
    }
    out
}

/// Words `1 ⊗ (b̃_1 | … | b̃_q) ⊗ b` over `∧V` with `q ≤ max_len` and
/// total exterior degree at most `max_weight`.
pub fn right_bar_words(dim: usize, max_weight: u32, max_len: usize) -> Vec<Mono> {
    let basis: Vec<Mono> = ext_monomials(dim).into_iter().map(Mono::Ext).collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        for t in tuples_with_weight_bound(&basis, len + 1, max_weight as i64) {
            out.push(Mono::tensor(Mono::Unit, t[..len].to_vec(), t[len].clone()));
        }
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Number of `SymMonomial`s of weight at most `w` in `dim` variables.
pub fn count_sym_up_to(dim: usize, w: u32) -> usize {
    binomial(dim + w as usize, dim)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
