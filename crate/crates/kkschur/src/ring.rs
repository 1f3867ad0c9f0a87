//! Exact arithmetic in the subring Z[h_1, ..., h_k] of symmetric functions:
//! the k-Schur and K-k-Schur bases, Pieri multiplication, triangular basis
//! change, products, and exact division.
//!
//! The ambient partial order used for all triangular eliminations puts
//! `mu` below `lambda` when `|mu| < |lambda|`, or when the sizes agree and
//! `mu` strictly dominates `lambda`. Every Pieri product and every basis
//! element product is unitriangular with respect to it, with leading index
//! the multiset union of the factor indices.

use crate::context::LevelContext;
use crate::cores;
use crate::error::{Error, Result};
use crate::num::binom_gen;
use crate::partition::Partition;
use crate::strips;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// The three bases handled by the engine. `H` indexes products of complete
/// homogeneous generators; the other two are the Schur-like bases.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    H,
    KSchur,
    KKSchur,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::H => "H",
            Basis::KSchur => "KSCHUR",
            Basis::KKSchur => "KKSCHUR",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(Basis::H),
            "KSCHUR" => Ok(Basis::KSchur),
            "KKSCHUR" => Ok(Basis::KKSchur),
            other => Err(Error::PreconditionViolated(format!(
                "unknown basis {other}"
            ))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finitely supported integer combination of basis elements indexed by
/// k-bounded partitions. Zero coefficients are never stored. Immutable from
/// the outside once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    k: u32,
    basis: Basis,
    terms: BTreeMap<Partition, BigInt>,
}

impl SymFunc {
    pub fn zero(k: u32, basis: Basis) -> Self {
        SymFunc {
            k,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element indexed by `lambda`.
    pub fn basis_element(k: u32, basis: Basis, lambda: Partition) -> Result<Self> {
        if !lambda.bounded_by(k) {
            return Err(Error::NotKBounded { lambda, k });
        }
        let mut terms = BTreeMap::new();
        terms.insert(lambda, BigInt::one());
        Ok(SymFunc { k, basis, terms })
    }

    /// The unit of the ring in the given basis.
    pub fn unit(k: u32, basis: Basis) -> Self {
        SymFunc::basis_element(k, basis, Partition::empty()).expect("empty index is bounded")
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, index: &Partition) -> BigInt {
        self.terms.get(index).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates terms in graded-lex ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Iterates terms in the canonical output order, graded-lex descending.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> Vec<Partition> {
        self.terms.keys().cloned().collect()
    }

    /// Maximal index size with nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.size()).max()
    }

    /// Leading term for triangular elimination: among the indices of maximal
    /// size, the lexicographically smallest (the dominance-minimal one).
    pub fn leading(&self) -> Option<(&Partition, &BigInt)> {
        let mut iter = self.terms.iter().rev();
        let (mut idx, mut coeff) = iter.next()?;
        let top = idx.size();
        for (p, c) in iter {
            if p.size() != top {
                break;
            }
            idx = p;
            coeff = c;
        }
        Some((idx, coeff))
    }

    pub(crate) fn add_term(&mut self, index: Partition, value: BigInt) {
        if value.is_zero() {
            return;
        }
        let entry = self.terms.entry(index);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += value;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// self += scale * other.
    pub(crate) fn add_scaled(&mut self, other: &SymFunc, scale: &BigInt) {
        debug_assert_eq!(self.basis, other.basis);
        debug_assert_eq!(self.k, other.k);
        if scale.is_zero() {
            return;
        }
        for (idx, c) in &other.terms {
            self.add_term(idx.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &BigInt) -> SymFunc {
        let mut out = SymFunc::zero(self.k, self.basis);
        out.add_scaled(self, scale);
        out
    }

    pub fn plus(&self, other: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn minus(&self, other: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1));
        out
    }

    /// Terms whose index has the given size. For an H-basis value this is
    /// the homogeneous component of that degree.
    pub fn graded_part(&self, d: u32) -> SymFunc {
        let mut out = SymFunc::zero(self.k, self.basis);
        for (idx, c) in &self.terms {
            if idx.size() == d {
                out.add_term(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Converts to another basis through the unitriangular transitions.
    pub fn to_basis(&self, ctx: &LevelContext, target: Basis) -> Result<SymFunc> {
        if ctx.k() != self.k {
            return Err(Error::LevelMismatch(self.k + 1, ctx.level()));
        }
        if target == self.basis {
            return Ok(self.clone());
        }
        match (self.basis, target) {
            (Basis::H, _) => {
                let mut out = SymFunc::zero(self.k, target);
                for (idx, c) in &self.terms {
                    out.add_scaled(&expand_h(ctx, idx, target)?, c);
                }
                Ok(out)
            }
            (_, Basis::H) => Ok(to_h_basis(ctx, self)),
            _ => to_h_basis(ctx, self).to_basis(ctx, target),
        }
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let tag = match self.basis {
            Basis::H => "h",
            Basis::KSchur => "s",
            Basis::KKSchur => "g",
        };
        for (n, (idx, c)) in self.terms_desc().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{tag}{idx}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    index: Partition,
    coeff: String,
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Terms<'a>(&'a SymFunc);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.terms.len()))?;
                for (idx, c) in self.0.terms_desc() {
                    seq.serialize_element(&TermJson {
                        index: idx.clone(),
                        coeff: c.to_string(),
                    })?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("SymFunc", 3)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("basis", self.basis.name())?;
        s.serialize_field("terms", &Terms(self))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: u32,
            basis: String,
            terms: Vec<TermJson>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let basis: Basis = raw.basis.parse().map_err(D::Error::custom)?;
        let mut out = SymFunc::zero(raw.k, basis);
        for t in raw.terms {
            if !t.index.bounded_by(raw.k) {
                return Err(D::Error::custom(format!(
                    "index {} is not {}-bounded",
                    t.index, raw.k
                )));
            }
            let c = BigInt::from_str(&t.coeff)
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {e}", t.coeff)))?;
            out.add_term(t.index, c);
        }
        Ok(out)
    }
}

/// A multiset of k-rectangles, stored as (width, multiplicity) with strictly
/// increasing widths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectangleMultiset {
    entries: Vec<(u32, u32)>,
}

impl RectangleMultiset {
    pub fn new(entries: Vec<(u32, u32)>) -> Result<Self> {
        if !entries.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::PreconditionViolated(
                "rectangle widths must be strictly increasing".into(),
            ));
        }
        if entries.iter().any(|&(t, a)| t == 0 || a == 0) {
            return Err(Error::PreconditionViolated(
                "rectangle widths and multiplicities must be positive".into(),
            ));
        }
        Ok(RectangleMultiset { entries })
    }

    /// Builds from arbitrary (width, multiplicity) pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (t, a) in pairs {
            if t == 0 || a == 0 {
                return Err(Error::PreconditionViolated(
                    "rectangle widths and multiplicities must be positive".into(),
                ));
            }
            *map.entry(t).or_insert(0) += a;
        }
        Ok(RectangleMultiset {
            entries: map.into_iter().collect(),
        })
    }

    /// Parses a comma-separated list of `t` or `t^a` tokens, e.g. `2^1,3^2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for token in s.split(',').filter(|t| !t.trim().is_empty()) {
            let token = token.trim();
            let (t, a) = match token.split_once('^') {
                Some((t, a)) => (
                    t.parse::<u32>()
                        .map_err(|_| Error::PreconditionViolated(format!("bad token {token}")))?,
                    a.parse::<u32>()
                        .map_err(|_| Error::PreconditionViolated(format!("bad token {token}")))?,
                ),
                None => (
                    token
                        .parse::<u32>()
                        .map_err(|_| Error::PreconditionViolated(format!("bad token {token}")))?,
                    1,
                ),
            };
            pairs.push((t, a));
        }
        RectangleMultiset::from_pairs(pairs)
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct widths at least `u`, counted without multiplicity.
    pub fn alpha(&self, u: u32) -> u32 {
        self.entries.iter().filter(|&&(t, _)| t >= u).count() as u32
    }

    pub fn max_width(&self) -> u32 {
        self.entries.last().map_or(0, |&(t, _)| t)
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|&(_, a)| a).sum()
    }

    /// The multiset with every multiplicity collapsed to one.
    pub fn distinct(&self) -> RectangleMultiset {
        RectangleMultiset {
            entries: self.entries.iter().map(|&(t, _)| (t, 1)).collect(),
        }
    }

    /// The union of all rectangles as a k-bounded partition.
    pub fn as_partition(&self, k: u32) -> Result<Partition> {
        let mut acc = Partition::empty();
        for &(t, a) in &self.entries {
            let rect = Partition::k_rectangle(t, k)?;
            for _ in 0..a {
                acc = acc.union(&rect);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for RectangleMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (t, a)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}^{a}")?;
        }
        Ok(())
    }
}

/// The bounded index of a union of rectangles with an extra partition.
pub fn kk_schur_of_union(
    ctx: &LevelContext,
    rects: &RectangleMultiset,
    lambda: &Partition,
) -> Result<Partition> {
    ctx.check_bounded(lambda)?;
    Ok(rects.as_partition(ctx.k())?.union(lambda))
}

/// K-theoretic Pieri product h_r * g_lambda in the K-k-Schur basis:
/// alternating sum over weak strips, weighted by binomials in the residue
/// statistic.
pub fn pieri_kk(ctx: &LevelContext, lambda: &Partition, r: u32) -> Result<SymFunc> {
    Ok((*pieri_kk_arc(ctx, lambda, r)?).clone())
}

pub(crate) fn pieri_kk_arc(ctx: &LevelContext, lambda: &Partition, r: u32) -> Result<Arc<SymFunc>> {
    ctx.check_bounded(lambda)?;
    if r > ctx.k() {
        return Err(Error::RankOutOfRange { r, k: ctx.k() });
    }
    let key = (lambda.clone(), r);
    if let Some(hit) = ctx.pieri_kk_cache.get(&key) {
        return Ok(hit.clone());
    }
    let beta = cores::to_core(ctx, lambda)?;
    let mut acc = SymFunc::zero(ctx.k(), Basis::KKSchur);
    for s in 0..=r {
        let sign = if (r - s).is_multiple_of(2) {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        for strip in strips::weak_strips_over(ctx, &beta, s)? {
            let rs = strips::r_stat(ctx, &strip.outer, &beta)?;
            let weight = binom_gen(rs as i64, (r - s) as i64);
            if weight.is_zero() {
                continue;
            }
            let index = cores::to_bounded(ctx, &strip.outer)?;
            acc.add_term(index, &weight * &sign);
        }
    }
    let arc = Arc::new(acc);
    ctx.pieri_kk_cache.insert(key, arc.clone());
    Ok(arc)
}

/// Weak Pieri product h_r * s_lambda in the k-Schur basis: multiplicity-free
/// sum over weak strips.
pub fn pieri_k(ctx: &LevelContext, lambda: &Partition, r: u32) -> Result<SymFunc> {
    Ok((*pieri_k_arc(ctx, lambda, r)?).clone())
}

pub(crate) fn pieri_k_arc(ctx: &LevelContext, lambda: &Partition, r: u32) -> Result<Arc<SymFunc>> {
    ctx.check_bounded(lambda)?;
    if r > ctx.k() {
        return Err(Error::RankOutOfRange { r, k: ctx.k() });
    }
    let key = (lambda.clone(), r);
    if let Some(hit) = ctx.pieri_k_cache.get(&key) {
        return Ok(hit.clone());
    }
    let beta = cores::to_core(ctx, lambda)?;
    let mut acc = SymFunc::zero(ctx.k(), Basis::KSchur);
    for strip in strips::weak_strips_over(ctx, &beta, r)? {
        acc.add_term(cores::to_bounded(ctx, &strip.outer)?, BigInt::one());
    }
    let arc = Arc::new(acc);
    ctx.pieri_k_cache.insert(key, arc.clone());
    Ok(arc)
}

fn pieri_step(ctx: &LevelContext, f: &SymFunc, r: u32) -> Result<SymFunc> {
    let mut out = SymFunc::zero(f.k(), f.basis());
    for (idx, c) in f.terms() {
        let product = match f.basis() {
            Basis::KKSchur => pieri_kk_arc(ctx, idx, r)?,
            Basis::KSchur => pieri_k_arc(ctx, idx, r)?,
            Basis::H => {
                let mut single = SymFunc::zero(f.k(), Basis::H);
                single.add_term(idx.union_row(r), BigInt::one());
                Arc::new(single)
            }
        };
        out.add_scaled(&product, c);
    }
    Ok(out)
}

/// Multiplies `f` by the h-monomial indexed by `nu`, largest part first.
pub(crate) fn mul_h_monomial(ctx: &LevelContext, nu: &Partition, f: &SymFunc) -> Result<SymFunc> {
    let mut acc = f.clone();
    for &r in nu.parts() {
        acc = pieri_step(ctx, &acc, r)?;
    }
    Ok(acc)
}

/// The h-monomial indexed by `lambda` expanded in a Schur-like basis by
/// iterated Pieri products, largest part applied first. Unitriangular with
/// leading index `lambda`.
pub fn expand_h(ctx: &LevelContext, lambda: &Partition, target: Basis) -> Result<SymFunc> {
    Ok((*expand_h_arc(ctx, lambda, target)?).clone())
}

fn expand_h_arc(ctx: &LevelContext, lambda: &Partition, target: Basis) -> Result<Arc<SymFunc>> {
    ctx.check_bounded(lambda)?;
    if target == Basis::H {
        return Ok(Arc::new(SymFunc::basis_element(
            ctx.k(),
            Basis::H,
            lambda.clone(),
        )?));
    }
    if let Some(hit) = ctx.expand_cache.get(&(target, lambda.clone())) {
        return Ok(hit.clone());
    }
    // walk prefixes (largest part first); each prefix is a partition
    let mut prefix = Partition::empty();
    let mut acc = Arc::new(SymFunc::unit(ctx.k(), target));
    for i in 1..=lambda.len() {
        prefix = prefix.union_row(lambda.part(i));
        if let Some(hit) = ctx.expand_cache.get(&(target, prefix.clone())) {
            acc = hit.clone();
            continue;
        }
        let next = Arc::new(pieri_step(ctx, &acc, lambda.part(i))?);
        ctx.expand_cache
            .insert((target, prefix.clone()), next.clone());
        acc = next;
    }
    Ok(acc)
}

/// A Schur-like basis element written in the h basis, by inverting the
/// unitriangular expansion.
fn h_form_arc(ctx: &LevelContext, basis: Basis, index: &Partition) -> Result<Arc<SymFunc>> {
    if let Some(hit) = ctx.h_form_cache.get(&(basis, index.clone())) {
        return Ok(hit.clone());
    }
    // collect every index reachable through expansion corrections
    let mut needed: Vec<Partition> = Vec::new();
    let mut stack = vec![index.clone()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(index.clone());
    while let Some(cur) = stack.pop() {
        if ctx.h_form_cache.contains_key(&(basis, cur.clone())) {
            continue;
        }
        needed.push(cur.clone());
        for (dep, _) in expand_h_arc(ctx, &cur, basis)?.terms() {
            if dep != &cur && seen.insert(dep.clone()) {
                stack.push(dep.clone());
            }
        }
    }
    // dependencies are strictly below in (size, dominance-reversed) order;
    // computing by size ascending and lex descending respects that
    needed.sort_by(|a, b| {
        a.size()
            .cmp(&b.size())
            .then_with(|| b.parts().cmp(a.parts()))
    });
    for cur in needed {
        let key = (basis, cur.clone());
        if ctx.h_form_cache.contains_key(&key) {
            continue;
        }
        let mut form = SymFunc::basis_element(ctx.k(), Basis::H, cur.clone())?;
        for (dep, c) in expand_h_arc(ctx, &cur, basis)?.terms() {
            if dep == &cur {
                debug_assert!(c.is_one(), "expansion of {cur} is not unitriangular");
                continue;
            }
            let dep_form = ctx
                .h_form_cache
                .get(&(basis, dep.clone()))
                .expect("dependency computed first")
                .clone();
            form.add_scaled(&dep_form, &(-c));
        }
        ctx.h_form_cache.insert(key, Arc::new(form));
    }
    Ok(ctx
        .h_form_cache
        .get(&(basis, index.clone()))
        .expect("just inserted")
        .clone())
}

/// Rewrites `f` in the h basis by triangular elimination. Round-trips with
/// `expand_h` on basis elements.
pub fn to_h_basis(ctx: &LevelContext, f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero(f.k(), Basis::H);
    if f.basis() == Basis::H {
        out.add_scaled(f, &BigInt::one());
        return out;
    }
    for (idx, c) in f.terms() {
        let form = h_form_arc(ctx, f.basis(), idx).expect("stored indices are bounded");
        out.add_scaled(&form, c);
    }
    out
}

/// Exact product, expressed in the K-k-Schur basis: one factor is rewritten
/// in the h basis and folded into the other through the Pieri rule.
pub fn multiply(ctx: &LevelContext, f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
    multiply_in_basis(ctx, f, g, Basis::KKSchur)
}

/// Product in a chosen Schur-like target basis.
pub fn multiply_in_basis(
    ctx: &LevelContext,
    f: &SymFunc,
    g: &SymFunc,
    target: Basis,
) -> Result<SymFunc> {
    if f.k() != g.k() {
        return Err(Error::LevelMismatch(f.k() + 1, g.k() + 1));
    }
    if f.k() != ctx.k() {
        return Err(Error::LevelMismatch(f.k() + 1, ctx.level()));
    }
    // rewrite the factor of smaller degree; its lower set is smaller
    let (small, big) = if f.degree().unwrap_or(0) <= g.degree().unwrap_or(0) {
        (f, g)
    } else {
        (g, f)
    };
    let small_h = to_h_basis(ctx, small);
    let big_t = big.to_basis(ctx, target)?;
    let mut out = SymFunc::zero(ctx.k(), target);
    for (nu, c) in small_h.terms() {
        out.add_scaled(&mul_h_monomial(ctx, nu, &big_t)?, c);
    }
    Ok(out)
}

/// Exact division in the K-k-Schur basis by descending triangular
/// elimination: the leading index of the divisor splits off the leading
/// index of every partial residual as a multiset union. The quotient is
/// verified by re-multiplication before being returned.
pub fn divide_exact(ctx: &LevelContext, f: &SymFunc, d: &SymFunc) -> Result<SymFunc> {
    if f.k() != d.k() || f.k() != ctx.k() {
        return Err(Error::LevelMismatch(f.k() + 1, d.k() + 1));
    }
    let f_kk = f.to_basis(ctx, Basis::KKSchur)?;
    let d_kk = d.to_basis(ctx, Basis::KKSchur)?;
    let (lead_idx, lead_coeff) = match d_kk.leading() {
        Some((i, c)) => (i.clone(), c.clone()),
        None => {
            return Err(Error::PreconditionViolated(
                "division by the zero element".into(),
            ))
        }
    };
    let d_h = to_h_basis(ctx, &d_kk);
    let mut residual = f_kk.clone();
    let mut quotient = SymFunc::zero(ctx.k(), Basis::KKSchur);
    while let Some((nu, c)) = residual.leading() {
        let nu = nu.clone();
        let c = c.clone();
        let mu = nu
            .multiset_difference(&lead_idx)
            .ok_or(Error::NotDivisible {
                index: nu.clone(),
                coeff: c.to_string(),
            })?;
        let (q, rem) = num_integer_div_rem(&c, &lead_coeff);
        if !rem.is_zero() {
            return Err(Error::NotDivisible {
                index: nu,
                coeff: c.to_string(),
            });
        }
        quotient.add_term(mu.clone(), q.clone());
        // residual -= q * d * g_mu
        let mut step = SymFunc::zero(ctx.k(), Basis::KKSchur);
        let g_mu = SymFunc::basis_element(ctx.k(), Basis::KKSchur, mu)?;
        for (h_idx, h_c) in d_h.terms() {
            step.add_scaled(&mul_h_monomial(ctx, h_idx, &g_mu)?, h_c);
        }
        residual.add_scaled(&step, &(-q));
    }
    let check = multiply(ctx, &d_kk, &quotient)?;
    if check != f_kk {
        let diff = f_kk.minus(&check);
        let (idx, c) = diff.leading().expect("difference is nonzero");
        return Err(Error::NotDivisible {
            index: idx.clone(),
            coeff: c.to_string(),
        });
    }
    Ok(quotient)
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

/// Brute-force reference routes used as differential oracles: products and
/// exact division carried out directly on h-monomials.
pub mod oracle {
    use super::*;

    /// Product via full rewriting of both factors in the h basis and
    /// monomial-by-monomial multiset unions.
    pub fn multiply_h(ctx: &LevelContext, f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
        let fh = to_h_basis(ctx, f);
        let gh = to_h_basis(ctx, g);
        let mut prod = SymFunc::zero(ctx.k(), Basis::H);
        for (a, ca) in fh.terms() {
            for (b, cb) in gh.terms() {
                prod.add_term(a.union(b), ca * cb);
            }
        }
        prod.to_basis(ctx, Basis::KKSchur)
    }

    /// Exact division of multivariate polynomials in the h generators under
    /// the graded-lex monomial order with h_k > ... > h_1.
    pub fn divide_h(ctx: &LevelContext, f: &SymFunc, d: &SymFunc) -> Result<SymFunc> {
        let fh = to_h_basis(ctx, f);
        let dh = to_h_basis(ctx, d);
        let lead = |s: &SymFunc| -> Option<(Partition, BigInt)> {
            s.terms()
                .max_by(|(a, _), (b, _)| {
                    a.size()
                        .cmp(&b.size())
                        .then_with(|| exponent_vector(a, ctx.k()).cmp(&exponent_vector(b, ctx.k())))
                })
                .map(|(p, c)| (p.clone(), c.clone()))
        };
        let (dl_idx, dl_coeff) =
            lead(&dh).ok_or_else(|| Error::PreconditionViolated("division by zero".into()))?;
        let mut residual = fh;
        let mut quotient = SymFunc::zero(ctx.k(), Basis::H);
        while let Some((r_idx, r_coeff)) = lead(&residual) {
            let m = r_idx
                .multiset_difference(&dl_idx)
                .ok_or(Error::NotDivisible {
                    index: r_idx.clone(),
                    coeff: r_coeff.to_string(),
                })?;
            let (q, rem) = num_integer_div_rem(&r_coeff, &dl_coeff);
            if !rem.is_zero() {
                return Err(Error::NotDivisible {
                    index: r_idx,
                    coeff: r_coeff.to_string(),
                });
            }
            quotient.add_term(m.clone(), q.clone());
            for (b, cb) in dh.terms() {
                residual.add_term(m.union(b), -(&q * cb));
            }
        }
        quotient.to_basis(ctx, Basis::KKSchur)
    }

    /// Exponents of h_k, ..., h_1 in the monomial indexed by a partition.
    fn exponent_vector(p: &Partition, k: u32) -> Vec<u32> {
        let mut v = vec![0u32; k as usize];
        for &part in p.parts() {
            v[(k - part) as usize] += 1;
        }
        v
    }
}
