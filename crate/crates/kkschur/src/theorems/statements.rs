//! The statement registry: deterministic instance enumeration and a checker
//! per statement, run in parallel by `verify`.
//!
//! Theorem statements must come back with zero counterexamples; a
//! counterexample there is an implementation bug. Conjecture statements
//! (the CONJ_* ids) are report-only: a counterexample is a finding, never
//! an assertion failure inside the library.

use super::{
    a_coeff_recursive, binom_gen, complementary_rectangle, interval_above, minindex,
    quotient_rect_row, rect_multisets, rect_pieri, strong_down_set, t_operator, t_prime_operator,
    Counterexample, MinindexOutcome, Verdict,
};
use crate::context::LevelContext;
use crate::cores;
use crate::error::{Error, Result};
use crate::partition::{bounded_partitions, bounded_partitions_up_to, subpartitions, Partition};
use crate::ring::{divide_exact, multiply, pieri_kk, Basis, RectangleMultiset, SymFunc};
use crate::strips::{self, r_stat_shapes};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::str::FromStr;

/// Instance-range caps for a single-level verification run.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Largest size of the free partition parameter.
    pub max_lambda_size: u32,
    /// Cap on the total rectangle multiplicity of a rectangle multiset.
    pub max_rect_total: u32,
    /// Cap on the multiplicity of each rectangle width.
    pub max_rect_mult: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_lambda_size: 8,
            max_rect_total: 3,
            max_rect_mult: 3,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StatementId {
    PFactor,
    RtTwice,
    MultiplicityFreeQuotient,
    RectPieri,
    RectRowQuotient,
    StripClassification,
    ExplicitPieriRect,
    SummationIndependence,
    Expansion,
    ProductFormula,
    SplitRectangles,
    DoubleRect,
    ConjPositivity,
    ConjInterval,
    ConjMinindexMonotone,
    ConjMinindexRect,
    ConjFilterPartition,
}

impl StatementId {
    pub fn name(self) -> &'static str {
        match self {
            StatementId::PFactor => "P_FACTOR",
            StatementId::RtTwice => "RT_TWICE",
            StatementId::MultiplicityFreeQuotient => "MULTIPLICITY_FREE_QUOTIENT",
            StatementId::RectPieri => "RECT_PIERI",
            StatementId::RectRowQuotient => "RECT_ROW_QUOTIENT",
            StatementId::StripClassification => "STRIP_CLASSIFICATION",
            StatementId::ExplicitPieriRect => "EXPLICIT_PIERI_RECT",
            StatementId::SummationIndependence => "SUMMATION_INDEPENDENCE",
            StatementId::Expansion => "EXPANSION",
            StatementId::ProductFormula => "PRODUCT_FORMULA",
            StatementId::SplitRectangles => "SPLIT_RECTANGLES",
            StatementId::DoubleRect => "DOUBLE_RECT",
            StatementId::ConjPositivity => "CONJ_POSITIVITY",
            StatementId::ConjInterval => "CONJ_INTERVAL",
            StatementId::ConjMinindexMonotone => "CONJ_MININDEX_MONOTONE",
            StatementId::ConjMinindexRect => "CONJ_MININDEX_RECT",
            StatementId::ConjFilterPartition => "CONJ_FILTER_PARTITION",
        }
    }

    /// Conjecture statements are scanned and reported, never asserted.
    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            StatementId::ConjPositivity
                | StatementId::ConjInterval
                | StatementId::ConjMinindexMonotone
                | StatementId::ConjMinindexRect
                | StatementId::ConjFilterPartition
        )
    }

    pub fn all() -> &'static [StatementId] {
        &[
            StatementId::PFactor,
            StatementId::RtTwice,
            StatementId::MultiplicityFreeQuotient,
            StatementId::RectPieri,
            StatementId::RectRowQuotient,
            StatementId::StripClassification,
            StatementId::ExplicitPieriRect,
            StatementId::SummationIndependence,
            StatementId::Expansion,
            StatementId::ProductFormula,
            StatementId::SplitRectangles,
            StatementId::DoubleRect,
            StatementId::ConjPositivity,
            StatementId::ConjInterval,
            StatementId::ConjMinindexMonotone,
            StatementId::ConjMinindexRect,
            StatementId::ConjFilterPartition,
        ]
    }
}

impl FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StatementId::all()
            .iter()
            .copied()
            .find(|id| id.name() == s.to_ascii_uppercase())
            .ok_or_else(|| Error::UnknownStatement(s.into()))
    }
}

impl std::fmt::Display for StatementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn gbe(ctx: &LevelContext, lambda: Partition) -> SymFunc {
    SymFunc::basis_element(ctx.k(), Basis::KKSchur, lambda).expect("index is bounded")
}

/// Partitions with exactly `len` parts, each between 1 and `width`.
fn full_length_partitions(width: u32, len: usize) -> Vec<Partition> {
    if len == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Partition>, acc: &mut Vec<u32>, width: u32, len: usize) {
        if acc.len() == len {
            out.push(Partition::new(acc.clone()).expect("weakly decreasing"));
            return;
        }
        let hi = acc.last().copied().unwrap_or(width);
        for v in (1..=hi).rev() {
            acc.push(v);
            rec(out, acc, width, len);
            acc.pop();
        }
    }
    rec(&mut out, &mut acc, width, len);
    out
}

fn rects_of(v: &Value) -> RectangleMultiset {
    RectangleMultiset::parse(v["P"].as_str().expect("P is a string"))
        .expect("instances carry valid rectangle multisets")
}

fn opt_rects_of(v: &Value) -> Option<RectangleMultiset> {
    v.get("P")
        .and_then(Value::as_str)
        .map(|s| RectangleMultiset::parse(s).expect("instances carry valid rectangle multisets"))
}

fn partition_of(v: &Value, key: &str) -> Partition {
    serde_json::from_value(v[key].clone()).expect("instances carry valid partitions")
}

fn u32_of(v: &Value, key: &str) -> u32 {
    v[key].as_u64().expect("instance field") as u32
}

fn mismatch(inputs: Value, expected: impl ToString, got: impl ToString) -> Counterexample {
    Counterexample {
        inputs,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn symfunc_eq(inputs: &Value, expected: &SymFunc, got: &SymFunc) -> Option<Counterexample> {
    if expected == got {
        None
    } else {
        Some(mismatch(inputs.clone(), expected, got))
    }
}

/// Deterministic instance descriptors for a statement under bounds.
pub fn instances(ctx: &LevelContext, id: StatementId, bounds: &Bounds) -> Vec<Value> {
    let k = ctx.k();
    let lambdas = bounded_partitions_up_to(k, bounds.max_lambda_size);
    let rects = rect_multisets(k, bounds.max_rect_total, bounds.max_rect_mult);
    let mut out = Vec::new();
    match id {
        StatementId::PFactor | StatementId::ConjPositivity => {
            for rm in &rects {
                for lam in &lambdas {
                    out.push(json!({"P": rm.to_string(), "lambda": lam}));
                }
            }
        }
        StatementId::RtTwice => {
            for t in 1..=k {
                for lam in &lambdas {
                    out.push(json!({"t": t, "lambda": lam}));
                }
            }
        }
        StatementId::MultiplicityFreeQuotient => {
            for rm in &rects {
                if rm.entries().iter().any(|&(_, a)| a > 1) {
                    for lam in &lambdas {
                        out.push(json!({"P": rm.to_string(), "lambda": lam}));
                    }
                }
            }
        }
        StatementId::RectPieri | StatementId::RectRowQuotient => {
            for rm in &rects {
                for r in 0..=k {
                    out.push(json!({"P": rm.to_string(), "r": r}));
                }
            }
        }
        StatementId::StripClassification => {
            for l in 1..=k as usize {
                for mu in full_length_partitions(k + 1 - l as u32, l) {
                    for u in 0..=mu.last() {
                        out.push(json!({"mu": mu, "u": u}));
                        for rm in &rects {
                            out.push(json!({"mu": mu, "u": u, "P": rm.to_string()}));
                        }
                    }
                }
            }
        }
        StatementId::ExplicitPieriRect => {
            for l in 1..=k as usize {
                for mu in full_length_partitions(k + 1 - l as u32, l) {
                    for r in 0..=mu.last() {
                        out.push(json!({"mu": mu, "r": r}));
                        for rm in &rects {
                            if rm.max_width() <= mu.last() {
                                out.push(json!({"mu": mu, "r": r, "P": rm.to_string()}));
                            }
                        }
                    }
                }
            }
        }
        StatementId::SummationIndependence => {
            for l in 1..=k as usize {
                for nu in full_length_partitions(k + 1 - l as u32, l) {
                    for u in 0..=nu.last() {
                        for n in -2i64..=3 {
                            out.push(json!({"nu": nu, "u": u, "n": n}));
                            for rm in &rects {
                                out.push(json!({"nu": nu, "u": u, "n": n, "P": rm.to_string()}));
                            }
                        }
                    }
                }
            }
        }
        StatementId::Expansion => {
            for l in 1..=k as usize {
                for base in full_length_partitions(k + 1 - l as u32, l) {
                    for r in 1..=base.last() {
                        let lam = base.union_row(r);
                        out.push(json!({"lambda": lam}));
                        for rm in &rects {
                            if rm.max_width() <= base.last() {
                                out.push(json!({"lambda": lam, "P": rm.to_string()}));
                            }
                        }
                    }
                }
            }
        }
        StatementId::ProductFormula => {
            for rm in &rects {
                for r in 1..=k {
                    out.push(
                        json!({"lambda": Partition::empty().union_row(r), "P": rm.to_string()}),
                    );
                }
                for l in 1..=k as usize {
                    for base in full_length_partitions(k + 1 - l as u32, l) {
                        if rm.max_width() < base.last() {
                            for r in 1..=base.last() {
                                out.push(json!({"lambda": base.union_row(r), "P": rm.to_string()}));
                            }
                        }
                    }
                }
            }
        }
        StatementId::SplitRectangles => {
            for rm in &rects {
                out.push(json!({"P": rm.to_string()}));
            }
        }
        StatementId::DoubleRect => {
            for t in 1..=k {
                out.push(json!({"t": t}));
            }
        }
        StatementId::ConjInterval | StatementId::ConjFilterPartition => {
            for t in 1..=k {
                for lam in &lambdas {
                    out.push(json!({"t": t, "lambda": lam}));
                }
            }
        }
        StatementId::ConjMinindexMonotone => {
            for t in 1..=k {
                for lam in &lambdas {
                    for mu in subpartitions(lam) {
                        if mu != *lam {
                            out.push(json!({"t": t, "mu": mu, "lambda": lam}));
                        }
                    }
                }
            }
        }
        StatementId::ConjMinindexRect => {
            for t in 1..=k {
                for s in 1..=k {
                    if s != t {
                        for lam in &lambdas {
                            out.push(json!({"t": t, "s": s, "lambda": lam}));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs a single instance; `None` means the instance passed.
pub fn run_instance(
    ctx: &LevelContext,
    id: StatementId,
    inst: &Value,
) -> Result<Option<Counterexample>> {
    match id {
        StatementId::PFactor => check_p_factor(ctx, inst),
        StatementId::RtTwice => check_rt_twice(ctx, inst),
        StatementId::MultiplicityFreeQuotient => check_mult_free_quotient(ctx, inst),
        StatementId::RectPieri => check_rect_pieri(ctx, inst),
        StatementId::RectRowQuotient => check_rect_row_quotient(ctx, inst),
        StatementId::StripClassification => check_strip_classification(ctx, inst),
        StatementId::ExplicitPieriRect => check_explicit_pieri(ctx, inst),
        StatementId::SummationIndependence => check_summation_independence(ctx, inst),
        StatementId::Expansion => check_expansion(ctx, inst),
        StatementId::ProductFormula => check_product_formula(ctx, inst),
        StatementId::SplitRectangles => check_split_rectangles(ctx, inst),
        StatementId::DoubleRect => check_double_rect(ctx, inst),
        StatementId::ConjPositivity => check_conj_positivity(ctx, inst),
        StatementId::ConjInterval => check_conj_interval(ctx, inst),
        StatementId::ConjMinindexMonotone => check_conj_minindex_monotone(ctx, inst),
        StatementId::ConjMinindexRect => check_conj_minindex_rect(ctx, inst),
        StatementId::ConjFilterPartition => check_conj_filter_partition(ctx, inst),
    }
}

/// Checks one statement over its bounded instance range, fanning instances
/// out over the current thread pool. Counterexamples come back in a
/// canonical order independent of scheduling.
pub fn verify(ctx: &LevelContext, id: StatementId, bounds: &Bounds) -> Result<Verdict> {
    let start = std::time::Instant::now();
    let insts = instances(ctx, id, bounds);
    let results: Vec<Result<Option<Counterexample>>> = insts
        .par_iter()
        .map(|inst| run_instance(ctx, id, inst))
        .collect();
    let mut counterexamples = Vec::new();
    for r in results {
        if let Some(ce) = r? {
            counterexamples.push(ce);
        }
    }
    counterexamples.sort_by(|a, b| {
        a.inputs
            .to_string()
            .cmp(&b.inputs.to_string())
            .then_with(|| a.expected.cmp(&b.expected))
    });
    Ok(Verdict {
        statement: id.name().into(),
        k: ctx.k(),
        checked: insts.len() as u64,
        counterexamples,
        ms: start.elapsed().as_millis(),
    })
}

fn check_p_factor(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let lam = partition_of(inst, "lambda");
    let p_part = rm.as_partition(ctx.k())?;
    let num = gbe(ctx, p_part.union(&lam));
    let den = gbe(ctx, p_part);
    match divide_exact(ctx, &num, &den) {
        Ok(_) => Ok(None),
        Err(Error::NotDivisible { index, coeff }) => Ok(Some(mismatch(
            inst.clone(),
            "exact quotient",
            format!("residual {coeff}*{index}"),
        ))),
        Err(e) => Err(e),
    }
}

fn check_rt_twice(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let lam = partition_of(inst, "lambda");
    let rect = Partition::k_rectangle(t, ctx.k())?;
    let ratio = divide_exact(ctx, &gbe(ctx, rect.union(&rect)), &gbe(ctx, rect.clone()))?;
    let got = multiply(ctx, &gbe(ctx, lam.union(&rect)), &ratio)?;
    let expected = gbe(ctx, lam.union(&rect).union(&rect));
    Ok(symfunc_eq(inst, &expected, &got))
}

fn check_mult_free_quotient(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let lam = partition_of(inst, "lambda");
    let p_part = rm.as_partition(ctx.k())?;
    let q_part = rm.distinct().as_partition(ctx.k())?;
    let lhs = divide_exact(ctx, &gbe(ctx, p_part.union(&lam)), &gbe(ctx, p_part))?;
    let rhs = divide_exact(ctx, &gbe(ctx, q_part.union(&lam)), &gbe(ctx, q_part))?;
    Ok(symfunc_eq(inst, &rhs, &lhs))
}

fn check_rect_pieri(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let r = u32_of(inst, "r");
    let closed = rect_pieri(ctx, &rm, r)?;
    let enumerated = pieri_kk(ctx, &rm.as_partition(ctx.k())?, r)?;
    Ok(symfunc_eq(inst, &enumerated, &closed))
}

fn check_rect_row_quotient(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let r = u32_of(inst, "r");
    let closed = quotient_rect_row(ctx, &rm, r)?;
    let p_part = rm.as_partition(ctx.k())?;
    let divided = divide_exact(ctx, &gbe(ctx, p_part.union_row(r)), &gbe(ctx, p_part))?;
    Ok(symfunc_eq(inst, &divided, &closed))
}

fn check_strip_classification(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let mu = partition_of(inst, "mu");
    let u = u32_of(inst, "u");
    let l = mu.len() as u32;
    match opt_rects_of(inst) {
        None => {
            // weak u-strips over a shape inside its complementary rectangle
            // are exactly the horizontal-strip extensions staying inside it
            let mu_core = cores::to_core(ctx, &mu)?;
            for kappa in bounded_partitions(ctx.k(), mu.size() + u) {
                let lhs = strips::is_weak_strip(ctx, &cores::to_core(ctx, &kappa)?, &mu_core, u)?;
                let rhs = kappa.is_horizontal_strip_over(&mu) && kappa.first() <= ctx.k() + 1 - l;
                if lhs != rhs {
                    return Ok(Some(mismatch(
                        inst.clone(),
                        format!("strip test {rhs} for {kappa}"),
                        lhs,
                    )));
                }
            }
        }
        Some(rm) => {
            let p_part = rm.as_partition(ctx.k())?;
            let top = p_part.union(&mu);
            let top_core = cores::to_core(ctx, &top)?;
            for kappa_t in bounded_partitions(ctx.k(), top.size() + u) {
                let lhs =
                    strips::is_weak_strip(ctx, &cores::to_core(ctx, &kappa_t)?, &top_core, u)?;
                let rhs = match kappa_t.multiset_difference(&p_part) {
                    None => false,
                    Some(kappa) => strips::is_weak_strip(
                        ctx,
                        &cores::to_core(ctx, &kappa)?,
                        &cores::to_core(ctx, &mu)?,
                        u,
                    )?,
                };
                if lhs != rhs {
                    return Ok(Some(mismatch(
                        inst.clone(),
                        format!("decorated strip test {rhs} for {kappa_t}"),
                        lhs,
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Horizontal-strip extensions of `mu` inside its complementary rectangle.
fn rect_strip_extensions(ctx: &LevelContext, mu: &Partition) -> Result<Vec<Partition>> {
    let rect = complementary_rectangle(ctx.k(), mu)?;
    Ok(interval_above(mu, &rect)
        .into_iter()
        .filter(|nu| nu.is_horizontal_strip_over(mu))
        .collect())
}

fn check_explicit_pieri(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let mu = partition_of(inst, "mu");
    let r = u32_of(inst, "r");
    let level = ctx.level();
    let extensions = rect_strip_extensions(ctx, &mu)?;
    match opt_rects_of(inst) {
        None => {
            let mut rhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
            for nu in &extensions {
                let added = nu.size() - mu.size();
                if added > r {
                    continue;
                }
                let p = r_stat_shapes(level, nu, &mu) as i64;
                rhs = rhs.plus(&t_operator(ctx, nu, r - added, p)?);
            }
            let lhs = pieri_kk(ctx, &mu, r)?;
            if let Some(ce) = symfunc_eq(inst, &lhs, &rhs) {
                return Ok(Some(ce));
            }
            // residue statistic after stacking one extra row
            for nu in &extensions {
                for x in 0..=nu.last() {
                    let got = r_stat_shapes(
                        level,
                        cores::to_core(ctx, &nu.union_row(x))?.shape(),
                        cores::to_core(ctx, &mu)?.shape(),
                    );
                    let base = r_stat_shapes(level, nu, &mu);
                    let expected = base - u32::from(x >= mu.last());
                    if got != expected {
                        return Ok(Some(mismatch(
                            json!({"mu": mu, "nu": nu, "x": x}),
                            expected,
                            got,
                        )));
                    }
                }
            }
        }
        Some(rm) => {
            let p_part = rm.as_partition(ctx.k())?;
            let shifted = rm.max_width() == mu.last();
            let mut rhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
            for nu in &extensions {
                let added = nu.size() - mu.size();
                if added > r {
                    continue;
                }
                let p = r_stat_shapes(level, nu, &mu) as i64 - i64::from(shifted);
                rhs = rhs.plus(&t_prime_operator(ctx, &rm, nu, r - added, p)?);
            }
            let lhs = pieri_kk(ctx, &p_part.union(&mu), r)?;
            if let Some(ce) = symfunc_eq(inst, &lhs, &rhs) {
                return Ok(Some(ce));
            }
            // decorated residue statistic
            for nu in &extensions {
                for x in 0..=nu.last() {
                    let got = r_stat_shapes(
                        level,
                        cores::to_core(ctx, &p_part.union(nu).union_row(x))?.shape(),
                        cores::to_core(ctx, &p_part.union(&mu))?.shape(),
                    );
                    let base = r_stat_shapes(level, nu, &mu) + rm.alpha(x + 1);
                    let expected = if shifted {
                        base - 1
                    } else {
                        base - u32::from(x >= mu.last())
                    };
                    if got != expected {
                        return Ok(Some(mismatch(
                            json!({"mu": mu, "nu": nu, "x": x, "P": rm.to_string()}),
                            expected,
                            got,
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_summation_independence(
    ctx: &LevelContext,
    inst: &Value,
) -> Result<Option<Counterexample>> {
    let nu = partition_of(inst, "nu");
    let u = u32_of(inst, "u");
    let n = inst["n"].as_i64().expect("integer n");
    match opt_rects_of(inst) {
        None => {
            let mut rhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
            for s in 0..=u {
                rhs.add_term(nu.union_row(u - s), binom_gen(n + s as i64 - 1, s as i64));
            }
            for p in 0..=3i64 {
                let mut lhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
                for i in 0..=u {
                    let c = binom_gen(p + n + i as i64 - 1, i as i64);
                    lhs.add_scaled(&t_operator(ctx, &nu, u - i, p)?, &c);
                }
                if lhs != rhs {
                    return Ok(Some(mismatch(
                        json!({"nu": nu, "u": u, "n": n, "p": p}),
                        &rhs,
                        &lhs,
                    )));
                }
            }
        }
        Some(rm) => {
            let p_part = rm.as_partition(ctx.k())?;
            let mut rhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
            for s in 0..=u {
                rhs.add_term(
                    p_part.union(&nu).union_row(u - s),
                    binom_gen(n - rm.alpha(u + 1 - s) as i64 + s as i64 - 1, s as i64),
                );
            }
            for p in 0..=3i64 {
                let mut lhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
                for i in 0..=u {
                    let c = binom_gen(p + n + i as i64 - 1, i as i64);
                    lhs.add_scaled(&t_prime_operator(ctx, &rm, &nu, u - i, p)?, &c);
                }
                if lhs != rhs {
                    return Ok(Some(mismatch(
                        json!({"nu": nu, "u": u, "n": n, "p": p, "P": rm.to_string()}),
                        &rhs,
                        &lhs,
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn check_expansion(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let lam = partition_of(inst, "lambda");
    let base = lam.drop_last();
    let r = lam.last();
    let table = a_coeff_recursive(ctx, &base)?;
    let rect = complementary_rectangle(ctx.k(), &base)?;
    let rm = opt_rects_of(inst);
    let (prefix, alpha_r, shifted) = match &rm {
        None => (Partition::empty(), 0i64, false),
        Some(rm) => (
            rm.as_partition(ctx.k())?,
            rm.alpha(r) as i64,
            rm.max_width() == base.last(),
        ),
    };
    let mut rhs = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for mu in interval_above(&base, &rect) {
        let skew = mu.size() - base.size();
        if skew > r {
            continue;
        }
        for (q, a) in table.entries_for(&mu) {
            for i in 0..=(r - skew) {
                let binom = match &rm {
                    None => binom_gen(q + i as i64 - 1, i as i64),
                    Some(_) => {
                        let extra = if shifted {
                            alpha_r - 2 + i64::from(mu.last() != base.last())
                        } else {
                            alpha_r - 1
                        };
                        binom_gen(q + i as i64 + extra, i as i64)
                    }
                };
                let c = &a * binom;
                if c == BigInt::from(0) {
                    continue;
                }
                let product = pieri_kk(ctx, &prefix.union(&mu), r - skew - i)?;
                rhs.add_scaled(&product, &c);
            }
        }
    }
    let lhs = gbe(ctx, prefix.union(&lam));
    Ok(symfunc_eq(inst, &lhs, &rhs))
}

fn check_product_formula(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let lam = partition_of(inst, "lambda");
    let rm = rects_of(inst);
    let base = lam.drop_last();
    let r = lam.last();
    let p_part = rm.as_partition(ctx.k())?;
    // alternating product expansion
    let mut expansion = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=r {
        let sign = if s % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        let c = sign * binom_gen(rm.alpha(r + 1 - s) as i64, s as i64);
        if c != BigInt::from(0) {
            expansion.add_term(p_part.union(&base).union_row(r - s), c);
        }
    }
    let product = multiply(ctx, &gbe(ctx, p_part.clone()), &gbe(ctx, lam.clone()))?;
    if let Some(ce) = symfunc_eq(inst, &expansion, &product) {
        return Ok(Some(ce));
    }
    // factored quotient form
    let mut inner = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=r {
        let c = binom_gen(rm.alpha(r) as i64 + s as i64 - 1, s as i64);
        if c != BigInt::from(0) {
            inner.add_term(base.union_row(r - s), c);
        }
    }
    let rhs = multiply(ctx, &gbe(ctx, p_part.clone()), &inner)?;
    let lhs = gbe(ctx, p_part.union(&lam));
    Ok(symfunc_eq(inst, &lhs, &rhs))
}

fn check_split_rectangles(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let mut product = SymFunc::unit(ctx.k(), Basis::KKSchur);
    for &(t, a) in rm.entries() {
        let factor = RectangleMultiset::new(vec![(t, a)])?;
        product = multiply(ctx, &product, &gbe(ctx, factor.as_partition(ctx.k())?))?;
    }
    let expected = gbe(ctx, rm.as_partition(ctx.k())?);
    Ok(symfunc_eq(inst, &expected, &product))
}

fn check_double_rect(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let rect = Partition::k_rectangle(t, ctx.k())?;
    let mut sum = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for nu in subpartitions(&rect) {
        sum.add_term(nu, BigInt::one());
    }
    let got = multiply(ctx, &gbe(ctx, rect.clone()), &sum)?;
    let expected = gbe(ctx, rect.union(&rect));
    Ok(symfunc_eq(inst, &expected, &got))
}

fn check_conj_positivity(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let rm = rects_of(inst);
    let lam = partition_of(inst, "lambda");
    let p_part = rm.as_partition(ctx.k())?;
    let quotient = match divide_exact(ctx, &gbe(ctx, p_part.union(&lam)), &gbe(ctx, p_part)) {
        Ok(q) => q,
        Err(Error::NotDivisible { index, coeff }) => {
            return Ok(Some(mismatch(
                inst.clone(),
                "exact quotient",
                format!("residual {coeff}*{index}"),
            )))
        }
        Err(e) => return Err(e),
    };
    for (idx, c) in quotient.terms() {
        if c.is_negative() {
            return Ok(Some(mismatch(
                inst.clone(),
                "nonnegative coefficients",
                format!("{c} at {idx}"),
            )));
        }
    }
    Ok(None)
}

fn check_conj_interval(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let lam = partition_of(inst, "lambda");
    match minindex(ctx, &lam, t)? {
        MinindexOutcome::Mu(_) => Ok(None),
        MinindexOutcome::Failure(f) => Ok(Some(mismatch(
            inst.clone(),
            "unrepeated strong-order interval",
            f,
        ))),
    }
}

fn minindex_mu(
    ctx: &LevelContext,
    lam: &Partition,
    t: u32,
    inst: &Value,
) -> Result<std::result::Result<Partition, Counterexample>> {
    Ok(match minindex(ctx, lam, t)? {
        MinindexOutcome::Mu(mu) => Ok(mu),
        MinindexOutcome::Failure(f) => Err(mismatch(
            inst.clone(),
            format!("minindex defined at {lam}"),
            f,
        )),
    })
}

fn check_conj_minindex_monotone(
    ctx: &LevelContext,
    inst: &Value,
) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let mu = partition_of(inst, "mu");
    let lam = partition_of(inst, "lambda");
    let m_small = match minindex_mu(ctx, &mu, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    let m_big = match minindex_mu(ctx, &lam, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    if strips::strong_leq(ctx, &m_small, &m_big)? {
        Ok(None)
    } else {
        Ok(Some(mismatch(
            inst.clone(),
            format!("minindex({mu}) <= minindex({lam})"),
            format!("{m_small} vs {m_big}"),
        )))
    }
}

fn check_conj_minindex_rect(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let s = u32_of(inst, "s");
    let lam = partition_of(inst, "lambda");
    let rect_s = Partition::k_rectangle(s, ctx.k())?;
    let m_plain = match minindex_mu(ctx, &lam, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    let decorated = rect_s.union(&lam);
    let m_dec = match minindex_mu(ctx, &decorated, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    let pulled = match m_dec.multiset_difference(&rect_s) {
        Some(p) => p,
        None => {
            return Ok(Some(mismatch(
                inst.clone(),
                format!("minindex({decorated}) contains the width-{s} rectangle"),
                m_dec,
            )))
        }
    };
    if strips::strong_leq(ctx, &m_plain, &pulled)? {
        Ok(None)
    } else {
        Ok(Some(mismatch(
            inst.clone(),
            format!("{m_plain} <= {pulled} in strong order"),
            "violated",
        )))
    }
}

fn check_conj_filter_partition(ctx: &LevelContext, inst: &Value) -> Result<Option<Counterexample>> {
    let t = u32_of(inst, "t");
    let lam = partition_of(inst, "lambda");
    let rect = Partition::k_rectangle(t, ctx.k())?;
    let m_plain = match minindex_mu(ctx, &lam, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    let decorated = rect.union(&lam);
    let m_dec = match minindex_mu(ctx, &decorated, t, inst)? {
        Ok(m) => m,
        Err(ce) => return Ok(Some(ce)),
    };
    let mut rect_sum = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for nu in subpartitions(&rect) {
        rect_sum.add_term(nu, BigInt::one());
    }
    // the filters attached to the inner interval
    let inner: Vec<Partition> = strong_down_set(ctx, &lam)?
        .into_iter()
        .filter(|mu| {
            strips::strong_leq(ctx, &m_plain, mu).unwrap_or(false)
                && strips::strong_leq(ctx, mu, &lam).unwrap_or(false)
        })
        .collect();
    let mut combined = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for mu in &inner {
        let f = multiply(ctx, &gbe(ctx, mu.clone()), &rect_sum)?;
        let top = rect.union(mu);
        for (idx, c) in f.terms() {
            if !c.is_one() {
                return Ok(Some(mismatch(
                    inst.clone(),
                    format!("0/1 coefficients in the filter at {mu}"),
                    format!("{c} at {idx}"),
                )));
            }
            if !strips::strong_leq(ctx, idx, &top)? {
                return Ok(Some(mismatch(
                    inst.clone(),
                    format!("filter at {mu} within the interval below {top}"),
                    format!("stray {idx}"),
                )));
            }
        }
        // upward closure inside [empty, rect + mu]
        for gamma in strong_down_set(ctx, &top)? {
            if f.coeff(&gamma).is_one() {
                for higher in strong_down_set(ctx, &top)? {
                    if strips::strong_leq(ctx, &gamma, &higher)? && !f.coeff(&higher).is_one() {
                        return Ok(Some(mismatch(
                            inst.clone(),
                            format!("filter at {mu} upward closed under {top}"),
                            format!("{gamma} in, {higher} out"),
                        )));
                    }
                }
            }
        }
        combined = combined.plus(&f);
    }
    // disjoint union equal to the decorated interval
    for (idx, c) in combined.terms() {
        if !c.is_one() {
            return Ok(Some(mismatch(
                inst.clone(),
                "pairwise disjoint filters",
                format!("{idx} covered {c} times"),
            )));
        }
    }
    for gamma in strong_down_set(ctx, &decorated)? {
        let in_interval = strips::strong_leq(ctx, &m_dec, &gamma)?;
        if in_interval != combined.coeff(&gamma).is_one() {
            return Ok(Some(mismatch(
                inst.clone(),
                format!("filters partition the interval [{m_dec}, {decorated}]"),
                format!("mismatch at {gamma}"),
            )));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_bounds() -> Bounds {
        Bounds {
            max_lambda_size: 4,
            max_rect_total: 2,
            max_rect_mult: 2,
        }
    }

    #[test]
    fn statement_ids_round_trip() {
        for id in StatementId::all() {
            assert_eq!(StatementId::from_str(id.name()).unwrap(), *id);
        }
        assert!(StatementId::from_str("NOPE").is_err());
    }

    #[test]
    fn quick_p_factor() {
        let ctx = LevelContext::new(2).unwrap();
        let v = verify(&ctx, StatementId::PFactor, &small_bounds()).unwrap();
        assert!(v.passed(), "{:?}", v.counterexamples.first());
        assert!(v.checked > 0);
    }

    #[test]
    fn quick_rect_pieri() {
        let ctx = LevelContext::new(3).unwrap();
        let v = verify(&ctx, StatementId::RectPieri, &small_bounds()).unwrap();
        assert!(v.passed(), "{:?}", v.counterexamples.first());
    }

    #[test]
    fn quick_double_rect() {
        let ctx = LevelContext::new(3).unwrap();
        let v = verify(&ctx, StatementId::DoubleRect, &small_bounds()).unwrap();
        assert!(v.passed(), "{:?}", v.counterexamples.first());
    }

    #[test]
    fn quick_split() {
        let ctx = LevelContext::new(2).unwrap();
        let v = verify(&ctx, StatementId::SplitRectangles, &small_bounds()).unwrap();
        assert!(v.passed(), "{:?}", v.counterexamples.first());
    }

    #[test]
    fn quick_conj_interval() {
        let ctx = LevelContext::new(2).unwrap();
        let v = verify(&ctx, StatementId::ConjInterval, &small_bounds()).unwrap();
        assert!(v.passed(), "{:?}", v.counterexamples.first());
    }
}
