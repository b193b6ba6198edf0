//! Input enumeration and parallel evaluation of checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use koszul_bar::ainfty::BimoduleWord;
use koszul_bar::enumerate::{tuples, tuples_with_weight_bound};
use koszul_bar::Mono;

use crate::report::{Check, Status};

/// `(m, n)` with `min ≤ m + n ≤ max`, by total then `m`.
pub(crate) fn arities(min: usize, max: usize) -> Vec<(usize, usize)> {
    (min..=max).flat_map(|t| (0..=t).map(move |m| (m, t - m))).collect()
}

/// Either every input, or seeded samples.
pub(crate) enum Draw<'a> {
    All,
    Sample { rng: &'a mut ChaCha8Rng, count: usize },
}

/// Bound on the inputs of a sweep.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Budget {
    /// Every entry is drawn from the full bases.
    PerEntry,
    /// Algebra entries on the left and the middle word share one weight
    /// budget (absolute weights).
    Total(u32),
}

fn abs_weight(m: &Mono) -> u32 {
    m.weight().unsigned_abs() as u32
}

/// Words with `m` entries from `left`, a middle from `mids` and `n` from
/// `right`.  When sampling, families no larger than the sample count are
/// still enumerated in full.
pub(crate) fn words(
    left: &[Mono],
    mids: &[Mono],
    right: &[Mono],
    (m, n): (usize, usize),
    budget: Budget,
    draw: &mut Draw,
) -> Vec<BimoduleWord> {
    let all = || {
        let ls = match budget {
            Budget::PerEntry => tuples(left, m),
            Budget::Total(w) => tuples_with_weight_bound(left, m, w as i64),
        };
        let rs = tuples(right, n);
        let mut out = Vec::new();
        for l in &ls {
            let used: u32 = l.iter().map(abs_weight).sum();
            for k in mids {
                if let Budget::Total(w) = budget {
                    if used + abs_weight(k) > w {
                        continue;
                    }
                }
                for r in &rs {
                    out.push(BimoduleWord::new(l.clone(), k.clone(), r.clone()));
                }
            }
        }
        out
    };
    if left.is_empty() && m > 0 || mids.is_empty() || right.is_empty() && n > 0 {
        return Vec::new();
    }
    match draw {
        Draw::All => all(),
        Draw::Sample { rng, count } => {
            let size = family_size(left.len(), mids.len(), right.len(), m, n);
            if size.is_some_and(|s| s <= *count) {
                return all();
            }
            let mut out = Vec::with_capacity(*count);
            while out.len() < *count {
                let mut spare = match budget {
                    Budget::PerEntry => u32::MAX,
                    Budget::Total(w) => w,
                };
                let mut pick = |pool: &[Mono], spare: &mut u32| -> Option<Mono> {
                    let fits: Vec<&Mono> = pool.iter().filter(|x| abs_weight(x) <= *spare).collect();
                    if fits.is_empty() {
                        return None;
                    }
                    let x = fits[rng.gen_range(0..fits.len())].clone();
                    if let Budget::Total(_) = budget {
                        *spare -= abs_weight(&x);
                    }
                    Some(x)
                };
                let l: Option<Vec<Mono>> = (0..m).map(|_| pick(left, &mut spare)).collect();
                let (Some(l), Some(k)) = (l, pick(mids, &mut spare)) else { continue };
                let r = (0..n).map(|_| right[rng.gen_range(0..right.len())].clone()).collect();
                out.push(BimoduleWord::new(l, k, r));
            }
            out
        }
    }
}

fn family_size(left: usize, mids: usize, right: usize, m: usize, n: usize) -> Option<usize> {
    let l = left.checked_pow(m as u32)?;
    let r = right.checked_pow(n as u32)?;
    l.checked_mul(r)?.checked_mul(mids)
}

/// Picks `count` items from `items` (all of them when exhaustive or small).
pub(crate) fn subsample<T: Clone>(items: Vec<T>, draw: &mut Draw) -> Vec<T> {
    match draw {
        Draw::Sample { rng, count } if items.len() > *count => {
            (0..*count).map(|_| items[rng.gen_range(0..items.len())].clone()).collect()
        }
        _ => items,
    }
}

pub(crate) fn describe_word(w: &BimoduleWord) -> String {
    let join = |v: &[Mono]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("({} | {} | {})", join(&w.left), w.mid, join(&w.right))
}

/// Evaluates every item; `eval` returns the number of residual terms, or a
/// message when the check could not be carried out.  The witness is the
/// first failing item in input order.
pub(crate) fn run_check<T: Sync>(
    name: impl Into<String>,
    input: impl Into<String>,
    items: &[T],
    describe: impl Fn(&T) -> String + Sync,
    eval: impl Fn(&T) -> Result<usize, String> + Sync,
) -> Check {
    let failure = items.par_iter().find_map_first(|t| match eval(t) {
        Ok(0) => None,
        Ok(terms) => Some((describe(t), terms, None)),
        Err(msg) => Some((describe(t), 0, Some(msg))),
    });
    let (status, residual_terms, witness) = match failure {
        None => (Status::Ok, 0, None),
        Some((w, terms, msg)) => (Status::Fail, terms, Some(msg.map_or(w.clone(), |m| format!("{w}: {m}")))),
    };
    Check {
        name: name.into(),
        input: input.into(),
        cases: items.len(),
        status,
        residual_terms,
        witness,
    }
}

/// A check with a single precomputed outcome.
pub(crate) fn single_check(name: impl Into<String>, input: impl Into<String>, outcome: Result<(), String>) -> Check {
    let (status, witness) = match outcome {
        Ok(()) => (Status::Ok, None),
        Err(w) => (Status::Fail, Some(w)),
    };
    Check {
        name: name.into(),
        input: input.into(),
        cases: 1,
        status,
        residual_terms: 0,
        witness,
    }
}
