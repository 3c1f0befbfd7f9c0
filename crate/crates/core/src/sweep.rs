//! Exhaustive enumeration of K-linear codes in `L^m` and of all their
//! K-linear isometries, classified by extendibility.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::codes::{space_tuple, GenMatrix, LMatrix};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, KElem};
use crate::isometry::{is_extendible_bruteforce, is_extendible_tuples, is_isometry_criterion, CodeMap};
use crate::kspace::{self, gaussian_binomial};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub m: usize,
    pub max_k: usize,
    /// Extendible isometries per code cross-checked with the witness search;
    /// unextendible ones are always cross-checked.
    pub sample_oracle: usize,
    /// Skip codes whose column-space multiset was already seen.
    pub dedup: bool,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub budget: u128,
    /// How many unextendible instances to keep in the report; `None` keeps all.
    pub witness_limit: Option<usize>,
}

impl SweepParams {
    pub fn new(m: usize, max_k: usize) -> Self {
        Self { m, max_k, sample_oracle: 1, dedup: false, threads: None, budget: DEFAULT_BUDGET, witness_limit: Some(16) }
    }
}

/// Counts from a sweep plus the smallest unextendible instances found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub field: FieldL,
    pub m: usize,
    pub max_k: usize,
    pub dedup: bool,
    pub codes: u64,
    pub isometries: u64,
    pub extendible: u64,
    pub unextendible: u64,
    pub oracle_checked: u64,
    pub witnesses: Vec<CodeMap>,
}

#[derive(Default)]
struct CodeOutcome {
    isometries: u64,
    extendible: u64,
    unextendible: u64,
    oracle_checked: u64,
    witnesses: Vec<CodeMap>,
}

fn flat_weight(v: &[KElem], n: usize) -> usize {
    v.chunks(n).filter(|c| c.iter().any(|x| !x.is_zero())).count()
}

/// Upper bound on the work: per code, every generator image is drawn from the
/// largest weight class of `L^m`, and every candidate is checked against
/// `q^k` codewords.
pub fn estimate_work(field: &FieldL, m: usize, max_k: usize) -> u128 {
    let q = field.subfield().order() as u128;
    let big_q = field.order() as u128;
    let n = field.degree();
    let widest = (0..=m)
        .map(|w| binomial(m, w) * (big_q - 1).saturating_pow(w as u32))
        .max()
        .unwrap_or(1);
    (0..=max_k.min(n * m))
        .map(|k| {
            gaussian_binomial(n * m, k, q as u64)
                .saturating_mul(widest.saturating_pow(k as u32))
                .saturating_mul(q.saturating_pow(k as u32))
        })
        .fold(0u128, u128::saturating_add)
}

fn binomial(n: usize, r: usize) -> u128 {
    (0..r as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

struct Context<'a> {
    field: &'a FieldL,
    params: &'a SweepParams,
    by_weight: Vec<Vec<Vec<KElem>>>,
}

impl Context<'_> {
    fn kf(&self) -> &FieldK {
        self.field.subfield()
    }

    fn n(&self) -> usize {
        self.field.degree()
    }
}

/// Enumerates every K-linear code of dimension `≤ max_k` in `L^m` (as reduced
/// echelon generator matrices over `K^(nm)`) and every K-linear
/// weight-preserving map of it into `L^m`; each map is classified by tuple
/// equivalence and checked against the indicator-sum criterion.
pub fn sweep_theorem(field: &FieldL, params: &SweepParams) -> Result<SweepReport> {
    let estimate = estimate_work(field, params.m, params.max_k);
    if estimate > params.budget {
        return Err(Error::BudgetExceeded { estimate, budget: params.budget });
    }
    let kf = field.subfield();
    let n = field.degree();
    let m = params.m;
    let points = kspace::all_points(kf, n * m)?;
    let mut by_weight = vec![Vec::new(); m + 1];
    for p in points {
        by_weight[flat_weight(&p, n)].push(p);
    }
    let max_k = params.max_k.min(n * m);
    let mut codes = Vec::new();
    for k in 0..=max_k {
        codes.extend(kspace::enumerate_subspaces(kf, n * m, Some(k))?);
    }
    if params.dedup {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(codes.len());
        for c in codes {
            let g = LMatrix::from_flat_rows(field, m, &c.basis_rows())?;
            if seen.insert(space_tuple(&g).sorted()) {
                kept.push(c);
            }
        }
        codes = kept;
    }
    let ctx = Context { field, params, by_weight };
    let run = || codes.par_iter().map(|c| process_code(&ctx, &c.basis_rows())).collect::<Vec<_>>();
    let outcomes = match params.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut report = SweepReport {
        field: field.clone(),
        m,
        max_k: params.max_k,
        dedup: params.dedup,
        codes: codes.len() as u64,
        isometries: 0,
        extendible: 0,
        unextendible: 0,
        oracle_checked: 0,
        witnesses: Vec::new(),
    };
    for o in outcomes {
        let o = o?;
        report.isometries += o.isometries;
        report.extendible += o.extendible;
        report.unextendible += o.unextendible;
        report.oracle_checked += o.oracle_checked;
        report.witnesses.extend(o.witnesses);
    }
    sort_witnesses(&mut report.witnesses, params.witness_limit);
    if m <= kf.order() as usize && report.unextendible > 0 {
        return Err(Error::VerificationFailed(format!(
            "{} unextendible isometries at m = {m} <= q = {}; first: {:?}",
            report.unextendible,
            kf.order(),
            report.witnesses.first()
        )));
    }
    Ok(report)
}

fn witness_key(w: &CodeMap) -> (Vec<KElem>, Vec<KElem>) {
    (w.source().flattened().data().to_vec(), w.image().flattened().data().to_vec())
}

fn sort_witnesses(w: &mut Vec<CodeMap>, limit: Option<usize>) {
    w.sort_by_cached_key(witness_key);
    if let Some(l) = limit {
        w.truncate(l);
    }
}

fn process_code(ctx: &Context, gens: &[Vec<KElem>]) -> Result<CodeOutcome> {
    let mut out = CodeOutcome::default();
    let source = GenMatrix::try_from(LMatrix::from_flat_rows(ctx.field, ctx.params.m, gens)?)?;
    let width = ctx.n() * ctx.params.m;
    let mut chosen = Vec::with_capacity(gens.len());
    let xs = vec![vec![KElem::ZERO; width]];
    let ys = xs.clone();
    let mut visit = |images: &[Vec<KElem>]| -> Result<()> {
        let image = LMatrix::from_flat_rows(ctx.field, ctx.params.m, images)?;
        let fmap = CodeMap::new(source.clone(), image)?;
        out.isometries += 1;
        if !is_isometry_criterion(&fmap)? {
            return Err(Error::VerificationFailed(format!(
                "weight-preserving map fails the indicator criterion: {fmap:?}"
            )));
        }
        let extendible = is_extendible_tuples(&fmap);
        let sampled = out.isometries <= ctx.params.sample_oracle as u64;
        if !extendible || sampled {
            out.oracle_checked += 1;
            let witness = is_extendible_bruteforce(&fmap)?;
            if witness.is_some() != extendible {
                return Err(Error::VerificationFailed(format!(
                    "tuple criterion says extendible = {extendible}, witness search disagrees: {fmap:?}"
                )));
            }
        }
        if extendible {
            out.extendible += 1;
        } else {
            out.unextendible += 1;
            out.witnesses.push(fmap);
        }
        Ok(())
    };
    extend(ctx, gens, xs, ys, &mut chosen, &mut visit)?;
    sort_witnesses(&mut out.witnesses, ctx.params.witness_limit);
    Ok(out)
}

/// Chooses the image of generator `chosen.len()` among vectors of matching
/// weight, keeping only choices for which every new codeword pair still has
/// equal weights.
fn extend(
    ctx: &Context,
    gens: &[Vec<KElem>],
    xs: Vec<Vec<KElem>>,
    ys: Vec<Vec<KElem>>,
    chosen: &mut Vec<Vec<KElem>>,
    visit: &mut dyn FnMut(&[Vec<KElem>]) -> Result<()>,
) -> Result<()> {
    let j = chosen.len();
    if j == gens.len() {
        return visit(chosen);
    }
    let kf = ctx.kf();
    let n = ctx.n();
    let x = &gens[j];
    let scalars: Vec<KElem> = kf.nonzero_elements().collect();
    let scaled_x: Vec<Vec<KElem>> = scalars.iter().map(|&c| kspace::scale_vec(kf, c, x)).collect();
    let x_weights: Vec<Vec<usize>> = scaled_x
        .iter()
        .map(|cx| xs.iter().map(|s| flat_weight(&kspace::add_vec(kf, s, cx), n)).collect())
        .collect();
    for y in &ctx.by_weight[flat_weight(x, n)] {
        let scaled_y: Vec<Vec<KElem>> = scalars.iter().map(|&c| kspace::scale_vec(kf, c, y)).collect();
        let consistent = scaled_y.iter().zip(&x_weights).all(|(cy, wx)| {
            ys.iter().zip(wx).all(|(s, &w)| flat_weight(&kspace::add_vec(kf, s, cy), n) == w)
        });
        if !consistent {
            continue;
        }
        let mut nxs = xs.clone();
        let mut nys = ys.clone();
        for (cx, cy) in scaled_x.iter().zip(&scaled_y) {
            nxs.extend(xs.iter().map(|s| kspace::add_vec(kf, s, cx)));
            nys.extend(ys.iter().map(|s| kspace::add_vec(kf, s, cy)));
        }
        chosen.push(y.clone());
        extend(ctx, gens, nxs, nys, chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}
