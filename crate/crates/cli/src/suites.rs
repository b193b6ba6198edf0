//! The individual suites.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use koszul_bar::ainfty::{bimodule_relation_residual, morphism_relation_residual, AInfBimodule, BimoduleMorphism};
use koszul_bar::enumerate::{bar_words, ext_monomials, koszul_monomials_up_to, right_bar_words, subsets, sym_monomials_up_to};
use koszul_bar::homology::{augmentation_complex, bar_complex, koszul_complex, quasi_iso_verdict, BettiEntry, WeightedComplex};
use koszul_bar::koszul::{contraction_scale, AugmentationOptions, HigherComponents, KoszulBridge, PhiVariant};
use koszul_bar::polyalg::KoszulMonomial;
use koszul_bar::tensor_bar::{algebra_as_bimodule, tensor_bimodule};
use koszul_bar::{Element, Mono, Space};

use crate::config::{ConfigError, Injection, Suite, SuiteConfig};
use crate::report::Check;
use crate::sweep::{arities, describe_word, run_check, single_check, subsample, words, Budget, Draw};

/// Everything the suites share for one configuration.
pub(crate) struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    bridge: KoszulBridge,
    rng: ChaCha8Rng,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(cfg: &'a SuiteConfig, suite: Suite) -> Result<Self, ConfigError> {
        let mut opts = AugmentationOptions {
            higher: HigherComponents::Transferred,
            scale: None,
        };
        if cfg.inject == Some(Injection::FlipM21) {
            opts.scale = Some(Arc::new(|p| if p == 2 { -contraction_scale(p) } else { contraction_scale(p) }));
        }
        let variant = if cfg.inject == Some(Injection::DropPhiSign) {
            PhiVariant::Unsigned
        } else {
            PhiVariant::Signed
        };
        // one stream per suite, so `all` reproduces the single-suite runs
        let stream = Suite::EACH.iter().position(|&s| s == suite).unwrap_or(0) as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Ok(Ctx {
            cfg,
            bridge: KoszulBridge::with_options(cfg.dim, opts, variant)?,
            rng,
        })
    }

    fn draw(&mut self) -> Draw<'_> {
        if self.cfg.exhaustive() {
            Draw::All
        } else {
            Draw::Sample {
                rng: &mut self.rng,
                count: self.cfg.samples,
            }
        }
    }

    fn dim(&self) -> usize {
        self.cfg.dim
    }

    fn sym(&self) -> Vec<Mono> {
        sym_monomials_up_to(self.dim(), self.cfg.max_weight).into_iter().map(Mono::Sym).collect()
    }

    fn ext(&self) -> Vec<Mono> {
        ext_monomials(self.dim()).into_iter().map(Mono::Ext).collect()
    }

    fn koszul_basis(&self) -> Vec<Mono> {
        koszul_monomials_up_to(self.dim(), self.cfg.max_weight).into_iter().map(Mono::Koszul).collect()
    }

    fn bar_basis(&self) -> Vec<Mono> {
        bar_words(self.dim(), self.cfg.max_weight, self.cfg.max_bar_length)
    }

    fn scope(&self, budget: Budget) -> String {
        match budget {
            Budget::PerEntry => format!("dim {}, entry weight ≤ {}", self.dim(), self.cfg.max_weight),
            Budget::Total(w) => format!("dim {}, total weight ≤ {w}", self.dim()),
        }
    }

    fn total(&self) -> Budget {
        Budget::Total(self.cfg.max_weight)
    }

    /// `bimodule_relation_residual` over every arity up to `max_arity`.
    fn relation_checks(
        &mut self,
        label: &str,
        bim: &AInfBimodule,
        (left, mids, right): (&[Mono], &[Mono], &[Mono]),
        budget: Budget,
    ) -> Vec<Check> {
        let mut out = Vec::new();
        for (m, n) in arities(0, self.cfg.max_arity) {
            let ws = words(left, mids, right, (m, n), budget, &mut self.draw());
            let input = format!("{label} words of arity ({m},{n}), {}", self.scope(budget));
            out.push(run_check(format!("relation {label} ({m},{n})"), input, &ws, describe_word, |w| {
                Ok(bimodule_relation_residual(bim, w).len())
            }));
        }
        out
    }

    fn morphism_checks(
        &mut self,
        label: &str,
        f: &BimoduleMorphism,
        (left, mids, right): (&[Mono], &[Mono], &[Mono]),
        budget: Budget,
        max: usize,
    ) -> Vec<Check> {
        let mut out = Vec::new();
        for (m, n) in arities(0, max) {
            let ws = words(left, mids, right, (m, n), budget, &mut self.draw());
            let input = format!("{label} inputs of arity ({m},{n}), {}", self.scope(budget));
            out.push(run_check(format!("morphism {label} ({m},{n})"), input, &ws, describe_word, |w| {
                Ok(morphism_relation_residual(f, w).len())
            }));
        }
        out
    }
}

pub(crate) fn run(ctx: &mut Ctx, suite: Suite) -> Result<Vec<Check>, ConfigError> {
    Ok(match suite {
        Suite::RelationsK => relations_k(ctx),
        Suite::RelationsKV => relations_kv(ctx),
        Suite::TensorClosure => tensor_closure(ctx)?,
        Suite::BarEquivalence => bar_equivalence(ctx)?,
        Suite::MuMorphism => mu_morphism(ctx)?,
        Suite::Homotopy => homotopy(ctx),
        Suite::PhiTheorem => phi_theorem(ctx),
        Suite::Homology => homology(ctx)?,
        Suite::QuasiIso => quasi_iso(ctx)?,
        Suite::All => unreachable!("expanded by the caller"),
    })
}

fn relations_k(ctx: &mut Ctx) -> Vec<Check> {
    let k = ctx.bridge.augmentation.clone();
    let (a, b) = (ctx.sym(), ctx.ext());
    ctx.relation_checks("K", &k, (&a, &[Mono::Unit], &b), Budget::PerEntry)
}

fn relations_kv(ctx: &mut Ctx) -> Vec<Check> {
    let kv = ctx.bridge.koszul.clone();
    let (a, b, mids) = (ctx.sym(), ctx.ext(), ctx.koszul_basis());
    ctx.relation_checks("K(V)", &kv, (&a, &mids, &b), Budget::PerEntry)
}

fn tensor_closure(ctx: &mut Ctx) -> Result<Vec<Check>, ConfigError> {
    let (a, b) = (ctx.sym(), ctx.ext());
    let left = ctx.bridge.bar.bimodule().clone();
    let mids = ctx.bar_basis();
    let mut out = ctx.relation_checks("A⊗K", &left, (&a, &mids, &b), ctx.total());

    let ext = Arc::new(algebra_as_bimodule(ctx.bridge.pair.ext.clone()));
    let right = tensor_bimodule(ctx.bridge.augmentation.clone(), ext)?;
    let mids = right_bar_words(ctx.dim(), ctx.cfg.max_weight, ctx.cfg.max_bar_length);
    out.extend(ctx.relation_checks("K⊗B", &right, (&a, &mids, &b), ctx.total()));
    Ok(out)
}

fn bar_equivalence(ctx: &mut Ctx) -> Result<Vec<Check>, ConfigError> {
    let closed = ctx.bridge.bar.closed_form()?;
    let generic = ctx.bridge.bar.bimodule().clone();
    let (a, b, mids) = (ctx.sym(), ctx.ext(), ctx.bar_basis());
    let mut out = Vec::new();
    for (m, n) in arities(0, ctx.cfg.max_arity) {
        let ws = words(&a, &mids, &b, (m, n), ctx.total(), &mut ctx.draw());
        let input = format!("bar words of arity ({m},{n}), length ≤ {}, {}", ctx.cfg.max_bar_length, ctx.scope(ctx.total()));
        out.push(run_check(format!("closed form ({m},{n})"), input, &ws, describe_word, |w| {
            let x = closed.apply(&w.left, &w.mid, &w.right);
            let y = generic.apply(&w.left, &w.mid, &w.right);
            x.try_sub(&y).map(|d| d.len()).map_err(|e| e.to_string())
        }));
    }
    Ok(out)
}

fn mu_morphism(ctx: &mut Ctx) -> Result<Vec<Check>, ConfigError> {
    let bar = ctx.bridge.bar.clone();
    let mu = bar.mu()?;
    let (a, b, mids) = (ctx.sym(), ctx.ext(), ctx.bar_basis());
    let mut out = ctx.morphism_checks("μ", &mu, (&a, &mids, &b), ctx.total(), ctx.cfg.max_arity.min(3));
    let k = Element::monomial(Space::Ground, Mono::Unit);
    let outcome = bar
        .nu(&k)
        .map_err(|e| e.to_string())
        .and_then(|x| if mu.apply_00(&x) == k { Ok(()) } else { Err(format!("μν(1) = {}", mu.apply_00(&x))) });
    out.push(single_check("μν = id", "1 ∈ K", outcome));
    Ok(out)
}

fn homotopy(ctx: &mut Ctx) -> Vec<Check> {
    let bar = ctx.bridge.bar.clone();
    let space = bar.space().clone();
    let basis = subsample(ctx.bar_basis(), &mut ctx.draw());
    let input = format!("bar words of length ≤ {}, {}", ctx.cfg.max_bar_length, ctx.scope(ctx.total()));
    vec![run_check("1 − νμ = dσ + σd", input, &basis, ToString::to_string, |m| {
        bar.homotopy_residual(&Element::monomial(space.clone(), m.clone()))
            .map(|r| r.len())
            .map_err(|e| e.to_string())
    })]
}

fn phi_theorem(ctx: &mut Ctx) -> Vec<Check> {
    let dim = ctx.dim();
    let bridge = ctx.bridge.clone();
    let (a, b, mids) = (ctx.sym(), ctx.ext(), ctx.koszul_basis());
    let mut out = ctx.morphism_checks("Φ", &bridge.phi, (&a, &mids, &b), Budget::PerEntry, ctx.cfg.max_arity.min(3));

    // η = x^α θ_I with |α| ≤ max_weight and any I
    let etas: Vec<Mono> = sym_monomials_up_to(dim, ctx.cfg.max_weight)
        .into_iter()
        .flat_map(|s| {
            (0..=dim).flat_map(move |t| {
                let s = s.clone();
                subsets(dim, t)
                    .into_iter()
                    .map(move |th| Mono::Koszul(KoszulMonomial::new(s.clone(), th).expect("increasing")))
            })
        })
        .collect();
    let pairs: Vec<(Mono, Vec<Mono>)> = etas
        .iter()
        .flat_map(|e| b.iter().map(move |x| (e.clone(), vec![x.clone()])))
        .collect();
    let pairs = subsample(pairs, &mut ctx.draw());
    let describe = |(e, bs): &(Mono, Vec<Mono>)| {
        format!("({e} | {})", bs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
    };
    let input = format!("(η, b), polynomial degree ≤ {}, dim {dim}", ctx.cfg.max_weight);
    out.push(run_check("Φ identity n=1", input, &pairs, describe, |(e, bs)| {
        Ok(bridge.thm_identity_residual_1(e, &bs[0]).len())
    }));
    for n in 2..=3.min(ctx.cfg.max_arity) {
        let ws = words(&[], &etas, &b, (0, n), Budget::PerEntry, &mut ctx.draw());
        let items: Vec<(Mono, Vec<Mono>)> = ws.into_iter().map(|w| (w.mid, w.right)).collect();
        let input = format!("(η, b_1..b_{n}), polynomial degree ≤ {}, dim {dim}", ctx.cfg.max_weight);
        out.push(run_check(format!("Φ identity n={n}"), input, &items, describe, |(e, bs)| {
            bridge.thm_identity_residual_n(e, bs).map(|r| r.len()).map_err(|e| e.to_string())
        }));
    }
    out
}

/// Degrees `1 − L ..= 0`, the window where the bar complex of length `L`
/// is exact.
fn degree_window(cfg: &SuiteConfig) -> std::ops::RangeInclusive<i32> {
    1 - cfg.max_bar_length as i32..=0
}

fn resolution_check(c: &WeightedComplex, cfg: &SuiteConfig) -> Check {
    let table = c.betti_table(0..=cfg.max_weight, degree_window(cfg));
    let bad = table.entries.iter().find(|(&(w, q), e)| match e {
        BettiEntry::Boundary => false,
        BettiEntry::Value(b) => *b != usize::from(w == 0 && q == 0),
    });
    let input = format!("w ≤ {}, {} ≤ q ≤ 0", cfg.max_weight, 1 - cfg.max_bar_length as i32);
    let outcome = match bad {
        None => Ok(()),
        Some((&(w, q), e)) => Err(format!("H at (w={w}, q={q}) = {e:?}")),
    };
    let mut check = single_check(format!("betti {}", c.name()), input, outcome);
    check.cases = table.entries.len();
    check
}

fn homology(ctx: &mut Ctx) -> Result<Vec<Check>, ConfigError> {
    let cfg = ctx.cfg;
    let kv = koszul_complex(&ctx.bridge, cfg.max_weight)?;
    let bar = bar_complex(&ctx.bridge, cfg.max_weight, cfg.max_bar_length)?;
    let mut out = Vec::new();
    for c in [&kv, &bar] {
        let bad = c.check_d_squared();
        let outcome = match bad.first() {
            None => Ok(()),
            Some((w, q)) => Err(format!("d² ≠ 0 at (w={w}, q={q})")),
        };
        let mut check = single_check(format!("d² = 0 {}", c.name()), format!("all blocks, w ≤ {}", cfg.max_weight), outcome);
        check.cases = c.blocks().count();
        out.push(check);
        out.push(resolution_check(c, cfg));
    }
    let reversed = bar.with_permuted_bases(|n| (0..n).rev().collect())?;
    let window = (0..=cfg.max_weight, degree_window(cfg));
    let same = bar.betti_table(window.0.clone(), window.1.clone()).entries
        == reversed.betti_table(window.0, window.1).entries;
    out.push(single_check(
        "betti independent of basis order",
        format!("{} with every basis reversed", bar.name()),
        if same { Ok(()) } else { Err("tables differ".into()) },
    ));
    Ok(out)
}

fn quasi_iso(ctx: &mut Ctx) -> Result<Vec<Check>, ConfigError> {
    let cfg = ctx.cfg;
    let bridge = &ctx.bridge;
    let kv = koszul_complex(bridge, cfg.max_weight)?;
    let bar = bar_complex(bridge, cfg.max_weight, cfg.max_bar_length)?;
    let k = augmentation_complex(bridge)?;
    let phi = if cfg.inject == Some(Injection::ZeroMorphism) {
        BimoduleMorphism::zero(bridge.koszul.clone(), bridge.bar.bimodule().clone())?
    } else {
        bridge.phi.clone()
    };
    let mu = bridge.bar.mu()?;
    let composite = phi.compose_00(&mu)?;
    let mut out = Vec::new();
    for (label, f, src, tgt) in [("Φ", &phi, &kv, &bar), ("μ", &mu, &bar, &k), ("μ∘Φ", &composite, &kv, &k)] {
        let input = format!("{} → {}, w ≤ {}, {} ≤ q ≤ 0", src.name(), tgt.name(), cfg.max_weight, 1 - cfg.max_bar_length as i32);
        let verdict = quasi_iso_verdict(f, src, tgt, 0..=cfg.max_weight, degree_window(cfg));
        let (outcome, cases) = match verdict {
            Ok(v) if v.is_quasi_iso => (Ok(()), v.blocks.len()),
            Ok(v) => {
                let (w, q) = v.witness.expect("a failing verdict has a witness");
                let detail = v.blocks.iter().find(|b| b.0 == (w, q)).map_or(String::new(), |b| {
                    format!(": dim H = {} → {}, rank {}", b.1, b.2, b.3)
                });
                (Err(format!("(w={w}, q={q}){detail}")), v.blocks.len())
            }
            Err(e) => (Err(e.to_string()), 0),
        };
        let mut check = single_check(format!("quasi-iso {label}"), input, outcome);
        check.cases = cases;
        out.push(check);
    }
    Ok(out)
}
