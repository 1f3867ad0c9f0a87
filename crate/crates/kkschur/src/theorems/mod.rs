//! Executable statements: closed-form Pieri and quotient formulas for
//! rectangle unions, binomial inversion, the recursive and closed expansion
//! coefficient tables, the truncated alternating operators, minimal interval
//! indices, and a verdict-producing verification harness over bounded
//! parameter ranges.

mod statements;

pub use statements::{instances, run_instance, verify, Bounds, StatementId};

use crate::context::LevelContext;
use crate::cores;
use crate::error::{Error, Result};
pub use crate::num::binom_gen;
use crate::partition::{bounded_partitions_up_to, Partition};
use crate::ring::{divide_exact, Basis, RectangleMultiset, SymFunc};
use crate::strips::{self, r_stat_shapes};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Outcome of checking one statement over a bounded instance range.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub statement: String,
    pub k: u32,
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub ms: u128,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: serde_json::Value,
    pub expected: String,
    pub got: String,
}

/// Checks that the alternating binomial matrix built from a step sequence
/// and its closed-form inverse multiply to the identity on both sides.
/// The sequence must satisfy beta_i >= beta_(i+1) >= beta_i - 1.
pub fn check_binom_inverse(l: usize, beta: &[i64]) -> Result<Verdict> {
    let start = std::time::Instant::now();
    if beta.len() != l + 1 {
        return Err(Error::PreconditionViolated(format!(
            "need {} entries, got {}",
            l + 1,
            beta.len()
        )));
    }
    for i in 0..l {
        if !(beta[i] >= beta[i + 1] && beta[i + 1] >= beta[i] - 1) {
            return Err(Error::BadBetaSequence(i + 1));
        }
    }
    // beta is 1-based in the formulas
    let b = |i: usize| -> i64 {
        if i == 0 {
            0
        } else {
            beta[i - 1]
        }
    };
    let n = l + 1;
    let c = |r: usize, s: usize| -> BigInt {
        let sign = if (r as i64 - s as i64) % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        sign * binom_gen(b(s + 1), r as i64 - s as i64)
    };
    let d = |r: usize, s: usize| -> BigInt {
        binom_gen(b(r) + r as i64 - s as i64 - 1, r as i64 - s as i64)
    };
    let mut counterexamples = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let mut cd = BigInt::zero();
            let mut dc = BigInt::zero();
            for i in 0..n {
                cd += c(p, i) * d(i, q);
                dc += d(p, i) * c(i, q);
            }
            let expect = if p == q {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if cd != expect || dc != expect {
                counterexamples.push(Counterexample {
                    inputs: serde_json::json!({"beta": beta, "row": p, "col": q}),
                    expected: expect.to_string(),
                    got: format!("CD={cd}, DC={dc}"),
                });
            }
        }
    }
    Ok(Verdict {
        statement: "BINOM_INVERSE".into(),
        k: 0,
        checked: (n * n) as u64,
        counterexamples,
        ms: start.elapsed().as_millis(),
    })
}

/// Closed-form Pieri product of a rectangle union with h_r: an alternating
/// binomial combination of the one-extra-row indices.
pub fn rect_pieri(ctx: &LevelContext, rects: &RectangleMultiset, r: u32) -> Result<SymFunc> {
    if r > ctx.k() {
        return Err(Error::RankOutOfRange { r, k: ctx.k() });
    }
    let base = rects.as_partition(ctx.k())?;
    let mut out = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=r {
        let sign = if (r - s).is_multiple_of(2) {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        let coeff = sign * binom_gen(rects.alpha(s + 1) as i64, (r - s) as i64);
        if !coeff.is_zero() {
            out.add_term(base.union_row(s), coeff);
        }
    }
    Ok(out)
}

/// Closed-form quotient of a rectangle union with one extra row by the
/// rectangle union itself, as a nonnegative combination of single rows.
pub fn quotient_rect_row(ctx: &LevelContext, rects: &RectangleMultiset, r: u32) -> Result<SymFunc> {
    if r > ctx.k() {
        return Err(Error::RankOutOfRange { r, k: ctx.k() });
    }
    rects.as_partition(ctx.k())?;
    let alpha_r = rects.alpha(r) as i64;
    let mut out = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=r {
        let coeff = binom_gen(alpha_r + (r - s) as i64 - 1, (r - s) as i64);
        if !coeff.is_zero() {
            out.add_term(Partition::empty().union_row(s), coeff);
        }
    }
    Ok(out)
}

/// Expansion coefficients indexed by (mu, q) for a base shape inside its
/// complementary rectangle. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACoefficientTable {
    pub base: Partition,
    pub entries: BTreeMap<(Partition, i64), BigInt>,
}

impl ACoefficientTable {
    pub fn entry(&self, mu: &Partition, q: i64) -> BigInt {
        self.entries
            .get(&(mu.clone(), q))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// The q-support for a fixed index.
    pub fn entries_for(&self, mu: &Partition) -> Vec<(i64, BigInt)> {
        self.entries
            .iter()
            .filter(|((m, _), _)| m == mu)
            .map(|((_, q), v)| (*q, v.clone()))
            .collect()
    }
}

/// The rectangle complementary to a base of length l is the k-rectangle of
/// width k + 1 - l; for the empty base it degenerates to the empty shape.
pub fn complementary_rectangle(k: u32, base: &Partition) -> Result<Partition> {
    let l = base.len() as u32;
    if l == 0 || l > k {
        return Ok(Partition::empty());
    }
    Partition::k_rectangle(k + 1 - l, k)
}

fn check_base(k: u32, base: &Partition) -> Result<Partition> {
    let rect = complementary_rectangle(k, base)?;
    if base.is_empty() {
        return Ok(rect);
    }
    if !rect.contains(base) {
        return Err(Error::BaseNotInRectangle {
            base: base.clone(),
            width: k + 1 - base.len() as u32,
        });
    }
    Ok(rect)
}

/// Every partition in the containment interval [base, rect] with exactly
/// the rows of the base, sized ascending.
pub(crate) fn interval_above(base: &Partition, rect: &Partition) -> Vec<Partition> {
    let l = base.len();
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::with_capacity(l);
    fn rec(
        out: &mut Vec<Partition>,
        acc: &mut Vec<u32>,
        base: &Partition,
        rect: &Partition,
        row: usize,
    ) {
        if row > base.len() {
            out.push(Partition::new(acc.clone()).expect("rows are weakly decreasing"));
            return;
        }
        let lo = base.part(row);
        let hi = rect
            .part(row)
            .min(if row == 1 { u32::MAX } else { acc[row - 2] });
        for v in lo..=hi {
            acc.push(v);
            rec(out, acc, base, rect, row + 1);
            acc.pop();
        }
    }
    rec(&mut out, &mut acc, base, rect, 1);
    out.sort();
    out
}

/// Expansion coefficients computed by the alternating recursion over
/// horizontal-strip predecessors.
pub fn a_coeff_recursive(ctx: &LevelContext, base: &Partition) -> Result<ACoefficientTable> {
    let rect = check_base(ctx.k(), base)?;
    let level = ctx.level();
    let mut entries: BTreeMap<(Partition, i64), BigInt> = BTreeMap::new();
    entries.insert(
        (base.clone(), r_stat_shapes(level, base, base) as i64),
        BigInt::one(),
    );
    let interval = interval_above(base, &rect);
    for mu in &interval {
        if mu == base {
            continue;
        }
        let r_mu_mu = r_stat_shapes(level, mu, mu) as i64;
        let mut row: BTreeMap<i64, BigInt> = BTreeMap::new();
        for kappa in &interval {
            if kappa == mu || !mu.contains(kappa) || !mu.is_horizontal_strip_over(kappa) {
                continue;
            }
            let shift = r_mu_mu - r_stat_shapes(level, mu, kappa) as i64;
            for ((m, q), v) in entries.iter() {
                if m == kappa {
                    let e = row.entry(q + shift).or_insert_with(BigInt::zero);
                    *e -= v;
                }
            }
        }
        for (q, v) in row {
            if !v.is_zero() {
                entries.insert((mu.clone(), q), v);
            }
        }
    }
    Ok(ACoefficientTable {
        base: base.clone(),
        entries,
    })
}

/// Expansion coefficients in closed form: a sign on vertical strips placed
/// at a single q determined by the conjugate residue statistic.
pub fn a_coeff_closed(ctx: &LevelContext, base: &Partition) -> Result<ACoefficientTable> {
    let rect = check_base(ctx.k(), base)?;
    let level = ctx.level();
    let mut entries = BTreeMap::new();
    for mu in interval_above(base, &rect) {
        if !mu.is_vertical_strip_over(base) {
            continue;
        }
        let cells = (mu.size() - base.size()) as i64;
        let q = cells + r_stat_shapes(level, &mu.conjugate(), &base.conjugate()) as i64;
        let sign = if cells % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        entries.insert((mu, q), sign);
    }
    Ok(ACoefficientTable {
        base: base.clone(),
        entries,
    })
}

fn check_t_preconditions(ctx: &LevelContext, nu: &Partition, u: u32) -> Result<()> {
    let rect = check_base(ctx.k(), nu)?;
    let _ = rect;
    let cap = if nu.is_empty() { ctx.k() } else { nu.last() };
    if u > cap {
        return Err(Error::PreconditionViolated(format!(
            "row size {u} exceeds the last part of {nu}"
        )));
    }
    Ok(())
}

/// Truncated alternating operator: sum of signed binomials in `p` against
/// the one-extra-row indices of `nu`.
pub fn t_operator(ctx: &LevelContext, nu: &Partition, u: u32, p: i64) -> Result<SymFunc> {
    check_t_preconditions(ctx, nu, u)?;
    let mut out = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=u {
        let sign = if s % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        let coeff = sign * binom_gen(p, s as i64);
        if !coeff.is_zero() {
            out.add_term(nu.union_row(u - s), coeff);
        }
    }
    Ok(out)
}

/// The rectangle-decorated variant of the truncated alternating operator.
pub fn t_prime_operator(
    ctx: &LevelContext,
    rects: &RectangleMultiset,
    nu: &Partition,
    u: u32,
    p: i64,
) -> Result<SymFunc> {
    check_t_preconditions(ctx, nu, u)?;
    let prefix = rects.as_partition(ctx.k())?;
    let mut out = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=u {
        let sign = if s % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        let coeff = sign * binom_gen(p + rects.alpha(u + 1 - s) as i64, s as i64);
        if !coeff.is_zero() {
            out.add_term(prefix.union(nu).union_row(u - s), coeff);
        }
    }
    Ok(out)
}

/// Result of the minimal-interval-index computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinindexOutcome {
    Mu(Partition),
    Failure(MinindexFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinindexFailure {
    NonUnitCoefficient { index: Partition, coeff: String },
    SupportOutsideDownSet { index: Partition },
    NoUniqueMinimum { minima: Vec<Partition> },
    NotAnInterval { missing: Partition },
}

impl fmt::Display for MinindexFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinindexFailure::NonUnitCoefficient { index, coeff } => {
                write!(f, "coefficient {coeff} at {index} is not 0 or 1")
            }
            MinindexFailure::SupportOutsideDownSet { index } => {
                write!(f, "support term {index} is not below the top index")
            }
            MinindexFailure::NoUniqueMinimum { minima } => {
                write!(f, "support has {} minimal elements", minima.len())
            }
            MinindexFailure::NotAnInterval { missing } => {
                write!(f, "support misses the interval element {missing}")
            }
        }
    }
}

impl MinindexOutcome {
    pub fn mu(&self) -> Option<&Partition> {
        match self {
            MinindexOutcome::Mu(m) => Some(m),
            MinindexOutcome::Failure(_) => None,
        }
    }
}

/// Everything weakly below `lambda` in the strong order, up to its size.
pub fn strong_down_set(ctx: &LevelContext, lambda: &Partition) -> Result<Vec<Partition>> {
    let top_core = cores::to_core(ctx, lambda)?;
    let mut out = Vec::new();
    for nu in bounded_partitions_up_to(ctx.k(), lambda.size()) {
        if top_core.shape().contains(cores::to_core(ctx, &nu)?.shape()) {
            out.push(nu);
        }
    }
    Ok(out)
}

/// Divides the rectangle-decorated basis element by the rectangle one and
/// reads off the minimal index when the quotient is an unrepeated
/// strong-order interval ending at `lambda`; otherwise reports which
/// property broke.
pub fn minindex(ctx: &LevelContext, lambda: &Partition, t: u32) -> Result<MinindexOutcome> {
    ctx.check_bounded(lambda)?;
    let rect = Partition::k_rectangle(t, ctx.k())?;
    let num = SymFunc::basis_element(ctx.k(), Basis::KKSchur, rect.union(lambda))?;
    let den = SymFunc::basis_element(ctx.k(), Basis::KKSchur, rect)?;
    let quotient = divide_exact(ctx, &num, &den)?;
    for (idx, c) in quotient.terms() {
        if !c.is_one() {
            return Ok(MinindexOutcome::Failure(
                MinindexFailure::NonUnitCoefficient {
                    index: idx.clone(),
                    coeff: c.to_string(),
                },
            ));
        }
    }
    let support = quotient.support();
    let down_set = strong_down_set(ctx, lambda)?;
    for idx in &support {
        if !down_set.contains(idx) {
            return Ok(MinindexOutcome::Failure(
                MinindexFailure::SupportOutsideDownSet { index: idx.clone() },
            ));
        }
    }
    let mut minima = Vec::new();
    for cand in &support {
        let mut minimal = true;
        for other in &support {
            if other != cand && strips::strong_leq(ctx, other, cand)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            minima.push(cand.clone());
        }
    }
    if minima.len() != 1 {
        return Ok(MinindexOutcome::Failure(MinindexFailure::NoUniqueMinimum {
            minima,
        }));
    }
    let mu = minima.pop().expect("one minimum");
    for nu in &down_set {
        if strips::strong_leq(ctx, &mu, nu)? && !support.contains(nu) {
            return Ok(MinindexOutcome::Failure(MinindexFailure::NotAnInterval {
                missing: nu.clone(),
            }));
        }
    }
    Ok(MinindexOutcome::Mu(mu))
}

/// All nonempty rectangle multisets over widths 1..=k with per-width
/// multiplicity at most `max_each` and total multiplicity at most
/// `max_total`.
pub fn rect_multisets(k: u32, max_total: u32, max_each: u32) -> Vec<RectangleMultiset> {
    let mut out = Vec::new();
    let mut mults = vec![0u32; k as usize];
    fn rec(
        out: &mut Vec<RectangleMultiset>,
        mults: &mut Vec<u32>,
        t: usize,
        left: u32,
        max_each: u32,
    ) {
        if t == mults.len() {
            let entries: Vec<(u32, u32)> = mults
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| (i as u32 + 1, a))
                .collect();
            if !entries.is_empty() {
                out.push(RectangleMultiset::new(entries).expect("widths increase"));
            }
            return;
        }
        for a in 0..=max_each.min(left) {
            mults[t] = a;
            rec(out, mults, t + 1, left - a, max_each);
            mults[t] = 0;
        }
    }
    rec(&mut out, &mut mults, 0, max_total, max_each);
    out.sort_by_key(|r| (r.total_multiplicity(), r.entries().to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn binom_inverse_small() {
        let v = check_binom_inverse(1, &[1, 1]).unwrap();
        assert!(v.passed());
        let v = check_binom_inverse(3, &[2, 2, 1, 1]).unwrap();
        assert!(v.passed());
        assert!(matches!(
            check_binom_inverse(1, &[1, 3]),
            Err(Error::BadBetaSequence(_))
        ));
    }

    #[test]
    fn rect_pieri_examples() {
        let ctx = LevelContext::new(3).unwrap();
        let r2 = RectangleMultiset::new(vec![(2, 1)]).unwrap();
        let f = rect_pieri(&ctx, &r2, 1).unwrap();
        assert_eq!(f.coeff(&p(&[2, 2, 1])), BigInt::one());
        assert_eq!(f.coeff(&p(&[2, 2])), BigInt::from(-1));
        assert_eq!(f.num_terms(), 2);

        let f = rect_pieri(&ctx, &r2, 2).unwrap();
        assert_eq!(f.coeff(&p(&[2, 2, 2])), BigInt::one());
        assert_eq!(f.coeff(&p(&[2, 2, 1])), BigInt::from(-1));
        assert_eq!(f.num_terms(), 2);

        let f = rect_pieri(&ctx, &r2, 0).unwrap();
        assert_eq!(f.coeff(&p(&[2, 2])), BigInt::one());
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn quotient_rect_row_examples() {
        let ctx = LevelContext::new(3).unwrap();
        let r2 = RectangleMultiset::new(vec![(2, 1)]).unwrap();
        let f = quotient_rect_row(&ctx, &r2, 1).unwrap();
        assert_eq!(f.coeff(&p(&[1])), BigInt::one());
        assert_eq!(f.coeff(&Partition::empty()), BigInt::one());
        assert_eq!(f.num_terms(), 2);

        let r3 = RectangleMultiset::new(vec![(3, 1)]).unwrap();
        let f = quotient_rect_row(&ctx, &r3, 2).unwrap();
        assert_eq!(f.num_terms(), 3);
        for idx in [p(&[2]), p(&[1]), Partition::empty()] {
            assert_eq!(f.coeff(&idx), BigInt::one());
        }

        let r1 = RectangleMultiset::new(vec![(1, 1)]).unwrap();
        let f = quotient_rect_row(&ctx, &r1, 2).unwrap();
        assert_eq!(f.coeff(&p(&[2])), BigInt::one());
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn a_coeff_examples() {
        let ctx = LevelContext::new(3).unwrap();
        let table = a_coeff_recursive(&ctx, &p(&[1])).unwrap();
        // base entry sits at q = 1 (one unblocked corner)
        assert_eq!(table.entry(&p(&[1]), 1), BigInt::one());
        // single vertical cell at q = 1 + 0
        assert_eq!(table.entry(&p(&[2]), 1), BigInt::from(-1));
        // two cells in a row are not a vertical strip
        assert!(table.entries_for(&p(&[3])).is_empty());
        assert_eq!(table, a_coeff_closed(&ctx, &p(&[1])).unwrap());
    }

    #[test]
    fn t_operator_examples() {
        let ctx = LevelContext::new(3).unwrap();
        let f = t_operator(&ctx, &p(&[2]), 0, 5).unwrap();
        assert_eq!(f.coeff(&p(&[2])), BigInt::one());
        assert_eq!(f.num_terms(), 1);

        let f = t_operator(&ctx, &p(&[2]), 1, 1).unwrap();
        assert_eq!(f.coeff(&p(&[2, 1])), BigInt::one());
        assert_eq!(f.coeff(&p(&[2])), BigInt::from(-1));
        assert_eq!(f.num_terms(), 2);

        let f = t_operator(&ctx, &p(&[2]), 2, 0).unwrap();
        assert_eq!(f.coeff(&p(&[2, 2])), BigInt::one());
        assert_eq!(f.num_terms(), 1);
    }

    #[test]
    fn minindex_examples() {
        let ctx = LevelContext::new(3).unwrap();
        assert_eq!(
            minindex(&ctx, &p(&[2]), 1).unwrap(),
            MinindexOutcome::Mu(p(&[2]))
        );
        for t in 1..=3 {
            assert_eq!(
                minindex(&ctx, &p(&[1]), t).unwrap(),
                MinindexOutcome::Mu(Partition::empty())
            );
        }
        assert_eq!(
            minindex(&ctx, &p(&[2, 2]), 2).unwrap(),
            MinindexOutcome::Mu(Partition::empty())
        );
    }

    #[test]
    fn rect_multiset_enumeration() {
        let ms = rect_multisets(3, 2, 2);
        // singles: 3 widths x mult 1; mult 2 of one width: 3; pairs of
        // distinct widths: 3
        assert_eq!(ms.len(), 9);
        assert!(ms.iter().all(|m| m.total_multiplicity() <= 2));
    }
}
