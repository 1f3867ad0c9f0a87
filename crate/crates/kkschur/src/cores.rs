//! (k+1)-cores, the bounded/core bijection, the affine generator action on
//! cores, residue reading words, and k-conjugation.

use crate::context::LevelContext;
use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A residue modulo the level, normalized to `0..=k`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Residue(u32);

impl Residue {
    pub fn new(level: u32, value: i64) -> Self {
        Residue(value.rem_euclid(level as i64) as u32)
    }

    pub fn of_cell(level: u32, c: Cell) -> Self {
        Residue::new(level, c.content())
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A partition none of whose cells has hook length equal to `level`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Core {
    level: u32,
    shape: Partition,
}

impl Core {
    pub fn new(shape: Partition, level: u32) -> Result<Self> {
        if !is_core(&shape, level) {
            return Err(Error::NotACore { shape, level });
        }
        Ok(Core { level, shape })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }
}

impl fmt::Display for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)
    }
}

/// Checks the core condition: no hook length equals `level`. Hooks strictly
/// decrease along a row, so each row is scanned once.
pub fn is_core(shape: &Partition, level: u32) -> bool {
    if level < 2 {
        return false;
    }
    let conj = shape.conjugate();
    for i in 1..=shape.len() {
        for j in 1..=shape.part(i) {
            let hook = shape.part(i) - j + conj.part(j as usize) - i as u32 + 1;
            if hook == level {
                return false;
            }
            if hook < level {
                break;
            }
        }
    }
    true
}

/// Number of cells with hook length smaller than the level; the grading of
/// the core poset. Equals the size of the bounded partition of the core.
pub fn core_length(kappa: &Core) -> u32 {
    let shape = kappa.shape();
    let conj = shape.conjugate();
    let mut count = 0;
    for i in 1..=shape.len() {
        // hooks decrease left to right: count the suffix with hook <= k
        let mut j = shape.part(i);
        while j >= 1 {
            let hook = shape.part(i) - j + conj.part(j as usize) - i as u32 + 1;
            if hook >= kappa.level() {
                break;
            }
            count += 1;
            j -= 1;
        }
    }
    count
}

fn core_shape_of(ctx: &LevelContext, lambda: &Partition) -> Arc<Partition> {
    if let Some(hit) = ctx.core_cache.get(lambda) {
        return hit.clone();
    }
    let computed = Arc::new(core_by_row_recursion(ctx.k(), lambda));
    if ctx.sliding_check() {
        let slid = to_core_by_sliding(ctx.k(), lambda);
        assert_eq!(
            *computed, slid,
            "row recursion and row sliding disagree on {lambda}"
        );
    }
    ctx.core_cache.insert(lambda.clone(), computed.clone());
    computed
}

/// Row recursion for the core of a bounded partition: row j of the core is
/// row j + k + 1 - lambda_j of the core plus lambda_j, computed upward from
/// the last row.
fn core_by_row_recursion(k: u32, lambda: &Partition) -> Partition {
    let l = lambda.len();
    if l == 0 {
        return Partition::empty();
    }
    let mut rows = vec![0u32; l + k as usize + 2];
    for j in (1..=l).rev() {
        let jump = j + (k + 1 - lambda.part(j)) as usize;
        rows[j] = rows[jump] + lambda.part(j);
    }
    Partition::new(rows[1..=l].to_vec()).expect("core rows are weakly decreasing")
}

/// Reference implementation of the bounded-to-core map: starting from the
/// smallest row, slide each row right until all of its hooks, measured
/// against the rows already placed above, are at most k.
pub fn to_core_by_sliding(k: u32, lambda: &Partition) -> Partition {
    let l = lambda.len();
    let mut offset = vec![0u32; l + 1]; // 1-based
    for i in (1..=l).rev() {
        'slide: loop {
            let start = offset[i];
            let len = lambda.part(i);
            for j in start + 1..=start + len {
                // cells of column j among rows above i, at their offsets
                let leg = (i + 1..=l)
                    .filter(|&r| j > offset[r] && j <= offset[r] + lambda.part(r))
                    .count() as u32;
                let arm = start + len - j;
                if arm + leg + 1 > k {
                    offset[i] += 1;
                    continue 'slide;
                }
            }
            break;
        }
    }
    let parts: Vec<u32> = (1..=l).map(|i| offset[i] + lambda.part(i)).collect();
    Partition::new(parts).expect("slid rows are weakly decreasing")
}

/// The core attached to a k-bounded partition.
pub fn to_core(ctx: &LevelContext, lambda: &Partition) -> Result<Core> {
    ctx.check_bounded(lambda)?;
    let shape = core_shape_of(ctx, lambda);
    debug_assert!(is_core(&shape, ctx.level()));
    Ok(Core {
        level: ctx.level(),
        shape: (*shape).clone(),
    })
}

/// The bounded partition attached to a core: row i keeps its cells of hook
/// length at most k.
pub fn to_bounded(ctx: &LevelContext, kappa: &Core) -> Result<Partition> {
    if kappa.level() != ctx.level() {
        return Err(Error::LevelMismatch(kappa.level(), ctx.level()));
    }
    Ok(bounded_shape(ctx.k(), kappa.shape()))
}

fn bounded_shape(k: u32, shape: &Partition) -> Partition {
    let conj = shape.conjugate();
    let mut parts = Vec::with_capacity(shape.len());
    for i in 1..=shape.len() {
        let mut count = 0;
        let mut j = shape.part(i);
        while j >= 1 {
            let hook = shape.part(i) - j + conj.part(j as usize) - i as u32 + 1;
            if hook > k {
                break;
            }
            count += 1;
            j -= 1;
        }
        parts.push(count);
    }
    Partition::new(parts).expect("bounded rows are weakly decreasing")
}

/// The affine generator action on cores: adds all addable corners of the
/// given residue if any exist, otherwise removes all removable corners of
/// that residue, otherwise acts as the identity. An involution.
pub fn apply_s(ctx: &LevelContext, i: Residue, kappa: &Core) -> Core {
    let level = ctx.level();
    let shape = kappa.shape();
    let addable: Vec<Cell> = shape
        .addable_corners()
        .into_iter()
        .filter(|&c| Residue::of_cell(level, c) == i)
        .collect();
    let removable: Vec<Cell> = shape
        .removable_corners()
        .into_iter()
        .filter(|&c| Residue::of_cell(level, c) == i)
        .collect();
    assert!(
        addable.is_empty() || removable.is_empty(),
        "core {shape} has both addable and removable corners of residue {i}"
    );
    let mut parts: Vec<u32> = shape.parts().to_vec();
    if !addable.is_empty() {
        for c in &addable {
            let r = c.row as usize;
            if r > parts.len() {
                parts.push(0);
            }
            parts[r - 1] += 1;
        }
    } else {
        for c in &removable {
            parts[c.row as usize - 1] -= 1;
        }
    }
    let shape = Partition::sorted(parts);
    debug_assert!(is_core(&shape, level), "generator action left the cores");
    Core { level, shape }
}

/// The residue reading word of a bounded partition: rows from shortest to
/// longest, each row right to left. Folding the generator action over the
/// word in reverse, starting from the empty core, rebuilds the core.
pub fn word(ctx: &LevelContext, lambda: &Partition) -> Result<Vec<Residue>> {
    ctx.check_bounded(lambda)?;
    let level = ctx.level();
    let mut out = Vec::with_capacity(lambda.size() as usize);
    for i in (1..=lambda.len()).rev() {
        for j in (1..=lambda.part(i)).rev() {
            out.push(Residue::of_cell(level, Cell::new(i as u32, j)));
        }
    }
    Ok(out)
}

/// k-conjugation: the bounded partition of the transposed core.
pub fn k_conjugate(ctx: &LevelContext, lambda: &Partition) -> Result<Partition> {
    ctx.check_bounded(lambda)?;
    let core = core_shape_of(ctx, lambda);
    Ok(bounded_shape(ctx.k(), &core.conjugate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ctx(k: u32) -> LevelContext {
        LevelContext::new(k).unwrap().with_sliding_check(true)
    }

    #[test]
    fn to_core_table_values() {
        let c = ctx(3);
        assert_eq!(*to_core(&c, &p(&[2, 2, 1])).unwrap().shape(), p(&[3, 2, 1]));
        assert_eq!(*to_core(&c, &p(&[3, 2])).unwrap().shape(), p(&[5, 2]));
        assert_eq!(*to_core(&c, &p(&[2, 2])).unwrap().shape(), p(&[2, 2]));
        assert!(to_core(&c, &p(&[4])).is_err());
    }

    #[test]
    fn to_bounded_table_values() {
        let c = ctx(3);
        let k1 = Core::new(p(&[5, 2]), 4).unwrap();
        assert_eq!(to_bounded(&c, &k1).unwrap(), p(&[3, 2]));
        let k2 = Core::new(p(&[2, 1, 1, 1]), 4).unwrap();
        assert_eq!(to_bounded(&c, &k2).unwrap(), p(&[1, 1, 1, 1]));
        let k3 = Core::new(p(&[1]), 4).unwrap();
        assert_eq!(to_bounded(&c, &k3).unwrap(), p(&[1]));
        assert!(Core::new(p(&[2, 2, 1]), 4).is_err());
    }

    #[test]
    fn apply_s_examples() {
        let c = ctx(3);
        let empty = Core::new(Partition::empty(), 4).unwrap();
        let one = apply_s(&c, Residue::new(4, 0), &empty);
        assert_eq!(*one.shape(), p(&[1]));
        let two = apply_s(&c, Residue::new(4, 1), &one);
        assert_eq!(*two.shape(), p(&[2]));
        let r22 = Core::new(p(&[2, 2]), 4).unwrap();
        let bigger = apply_s(&c, Residue::new(4, 2), &r22);
        assert_eq!(*bigger.shape(), p(&[3, 2, 1]));
        // involution
        assert_eq!(apply_s(&c, Residue::new(4, 2), &bigger), r22);
    }

    #[test]
    fn word_examples() {
        let c = ctx(3);
        let w: Vec<u32> = word(&c, &p(&[2, 1]))
            .unwrap()
            .iter()
            .map(|r| r.value())
            .collect();
        assert_eq!(w, vec![3, 1, 0]);
        let w1: Vec<u32> = word(&c, &p(&[1]))
            .unwrap()
            .iter()
            .map(|r| r.value())
            .collect();
        assert_eq!(w1, vec![0]);
        assert!(word(&c, &Partition::empty()).unwrap().is_empty());
    }

    #[test]
    fn word_action_rebuilds_core() {
        let c = ctx(3);
        for lam in crate::partition::bounded_partitions_up_to(3, 7) {
            let w = word(&c, &lam).unwrap();
            let mut acc = Core::new(Partition::empty(), 4).unwrap();
            for r in w.iter().rev() {
                acc = apply_s(&c, *r, &acc);
            }
            assert_eq!(
                acc,
                to_core(&c, &lam).unwrap(),
                "word action failed for {lam}"
            );
        }
    }

    #[test]
    fn k_conjugate_examples() {
        let c = ctx(3);
        assert_eq!(k_conjugate(&c, &p(&[2, 1])).unwrap(), p(&[2, 1]));
        assert_eq!(k_conjugate(&c, &p(&[3])).unwrap(), p(&[1, 1, 1]));
        assert_eq!(
            k_conjugate(&c, &Partition::empty()).unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn core_json_schema() {
        let core = Core::new(p(&[5, 2]), 4).unwrap();
        let json = serde_json::to_string(&core).unwrap();
        assert_eq!(json, r#"{"level":4,"shape":[5,2]}"#);
        let back: Core = serde_json::from_str(&json).unwrap();
        assert_eq!(back, core);
    }

    #[test]
    fn core_length_examples() {
        assert_eq!(core_length(&Core::new(p(&[2, 2]), 4).unwrap()), 4);
        assert_eq!(core_length(&Core::new(p(&[5, 2]), 4).unwrap()), 5);
        assert_eq!(core_length(&Core::new(Partition::empty(), 4).unwrap()), 0);
    }

    #[test]
    fn bijection_round_trip_small() {
        for k in 2..=4 {
            let c = ctx(k);
            for lam in crate::partition::bounded_partitions_up_to(k, 10) {
                let core = to_core(&c, &lam).unwrap();
                assert_eq!(to_bounded(&c, &core).unwrap(), lam);
                assert_eq!(core_length(&core), lam.size());
            }
        }
    }

    #[test]
    fn row_recursion_holds_on_every_row() {
        for k in 2..=4u32 {
            let c = ctx(k);
            for lam in crate::partition::bounded_partitions_up_to(k, 8) {
                let core = to_core(&c, &lam).unwrap();
                for j in 1..=lam.len() {
                    let jump = j + (k + 1 - lam.part(j)) as usize;
                    assert_eq!(core.shape().part(j), core.shape().part(jump) + lam.part(j));
                }
            }
        }
    }
}
