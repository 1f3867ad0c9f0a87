//! Partitions, Young diagrams (French convention, row 1 at the bottom),
//! and the shape predicates the rest of the crate is built on.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A cell of a Young diagram, 1-based, French convention.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    /// Content of the cell, `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// An integer partition: weakly decreasing positive parts, no trailing zeros.
/// The empty partition is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::MalformedPartition(format!("zero part in {parts:?}")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::MalformedPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary entries: zeros are dropped and the
    /// rest is sorted decreasingly. Used for multiset-style constructions.
    pub fn sorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part, 1-based; 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("parts are 1-based");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn bounded_by(&self, k: u32) -> bool {
        self.parts.first().is_none_or(|&p| p <= k)
    }

    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn last(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    /// Diagram containment: `other` fits inside `self` row by row.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len()
            && other
                .parts
                .iter()
                .zip(self.parts.iter())
                .all(|(&o, &s)| o <= s)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && self.part(c.row as usize) >= c.col
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            parts.push(self.parts.iter().take_while(|&&p| p >= j).count() as u32);
        }
        Partition { parts }
    }

    /// Multiset union of parts, reordered decreasingly. Commutative and
    /// associative.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Partition::sorted(parts)
    }

    /// Stacks `self` on top of `other` after widening every row of `self`
    /// by `other`'s first part: (l1+m1, ..., ll+m1, m1, ..., lm).
    pub fn oplus(&self, other: &Partition) -> Partition {
        let shift = other.first();
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend(self.parts.iter().map(|&p| p + shift));
        parts.extend_from_slice(&other.parts);
        Partition { parts }
    }

    /// Hook length of a cell of the diagram.
    pub fn hook(&self, c: Cell) -> Result<u32> {
        if !self.contains_cell(c) {
            return Err(Error::CellOutsideShape {
                cell: c,
                shape: self.clone(),
            });
        }
        let arm = self.part(c.row as usize) - c.col;
        let leg = self.conjugate().part(c.col as usize) - c.row;
        Ok(arm + leg + 1)
    }

    /// Removable corners: cells of the diagram whose removal leaves a
    /// partition shape.
    pub fn removable_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.len() {
            if self.part(i) > self.part(i + 1) {
                out.push(Cell::new(i as u32, self.part(i)));
            }
        }
        out
    }

    /// Addable corners: cells outside the diagram whose addition keeps a
    /// partition shape, with the boundary convention that row 0 and column 0
    /// belong to every diagram.
    pub fn addable_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.len() + 1 {
            if i == 1 || self.part(i - 1) > self.part(i) {
                out.push(Cell::new(i as u32, self.part(i) + 1));
            }
        }
        out
    }

    /// (removable, addable) corner sets.
    pub fn corners(&self) -> (Vec<Cell>, Vec<Cell>) {
        (self.removable_corners(), self.addable_corners())
    }

    /// True iff `inner` is contained in `self` and `self`/`inner` has at most
    /// one cell per column.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| self.part(i + 1) <= inner.part(i))
    }

    /// True iff `inner` is contained in `self` and `self`/`inner` has at most
    /// one cell per row.
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| self.part(i) - inner.part(i) <= 1)
    }

    /// Dominance order: true iff sizes agree and every partial sum of `self`
    /// is at most the corresponding partial sum of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Strict dominance.
    pub fn dominance_lt(&self, other: &Partition) -> bool {
        self != other && self.dominance_leq(other)
    }

    /// The k-rectangle (t^(k+1-t)).
    pub fn k_rectangle(t: u32, k: u32) -> Result<Partition> {
        if t < 1 || t > k {
            return Err(Error::OutOfRange { t, k });
        }
        Ok(Partition {
            parts: vec![t; (k + 1 - t) as usize],
        })
    }

    /// Removes one copy of each part of `other` from the multiset of parts,
    /// if possible.
    pub fn multiset_difference(&self, other: &Partition) -> Option<Partition> {
        let mut remaining = self.parts.clone();
        for &p in &other.parts {
            let pos = remaining.iter().position(|&q| q == p)?;
            remaining.remove(pos);
        }
        Some(Partition { parts: remaining })
    }

    /// Drops the last (smallest) part.
    pub fn drop_last(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.pop();
        Partition { parts }
    }

    /// Drops the first (largest) part.
    pub fn drop_first(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Appends `r` as a new part via multiset union; `r = 0` is a no-op.
    pub fn union_row(&self, r: u32) -> Partition {
        if r == 0 {
            self.clone()
        } else {
            self.union(&Partition { parts: vec![r] })
        }
    }
}

/// Graded lexicographic order: by size first, then lexicographically on the
/// part sequences. Map iteration in this order is ascending; emitters that
/// need the canonical descending order iterate in reverse.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n` with parts at most `max_part`.
pub fn bounded_partitions(max_part: u32, n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(out: &mut Vec<Partition>, acc: &mut Vec<u32>, remaining: u32, cap: u32) {
        if remaining == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        let hi = cap.min(remaining);
        for p in (1..=hi).rev() {
            acc.push(p);
            rec(out, acc, remaining - p, p);
            acc.pop();
        }
    }
    rec(&mut out, &mut acc, n, max_part);
    out
}

/// All partitions of size at most `max_size` with parts at most `max_part`,
/// graded by size and lexicographically descending within each grade.
pub fn bounded_partitions_up_to(max_part: u32, max_size: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=max_size {
        out.extend(bounded_partitions(max_part, n));
    }
    out
}

/// All `mu` containing `inner` with `mu/inner` a horizontal strip of size
/// `r` and all parts at most `max_part`.
pub fn horizontal_strip_extensions(inner: &Partition, r: u32, max_part: u32) -> Vec<Partition> {
    let rows = inner.len() + 1;
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::with_capacity(rows);
    fn rec(
        out: &mut Vec<Partition>,
        acc: &mut Vec<u32>,
        inner: &Partition,
        rows: usize,
        row: usize,
        remaining: u32,
        max_part: u32,
    ) {
        if row > rows {
            if remaining == 0 {
                out.push(Partition::sorted(acc.clone()));
            }
            return;
        }
        let lo = inner.part(row);
        // horizontal strip: new row may not reach past the previous inner row
        let hi = if row == 1 {
            max_part
        } else {
            inner.part(row - 1)
        };
        for v in lo..=hi {
            if v - lo > remaining {
                break;
            }
            acc.push(v);
            rec(
                out,
                acc,
                inner,
                rows,
                row + 1,
                remaining - (v - lo),
                max_part,
            );
            acc.pop();
        }
    }
    rec(&mut out, &mut acc, inner, rows, 1, r, max_part);
    out
}

/// All subdiagrams of `outer` (diagram containment).
pub fn subpartitions(outer: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc: Vec<u32> = Vec::new();
    fn rec(out: &mut Vec<Partition>, acc: &mut Vec<u32>, outer: &Partition, row: usize) {
        if row > outer.len() {
            out.push(Partition {
                parts: acc.iter().copied().take_while(|&p| p > 0).collect(),
            });
            return;
        }
        let hi = outer
            .part(row)
            .min(if row == 1 { u32::MAX } else { acc[row - 2] });
        // a zero row forces all later rows to zero
        if row > 1 && acc[row - 2] == 0 {
            rec(out, acc, outer, outer.len() + 1);
            return;
        }
        for v in 0..=hi {
            acc.push(v);
            rec(out, acc, outer, row + 1);
            acc.pop();
        }
    }
    rec(&mut out, &mut acc, outer, 1);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 2]).conjugate(), p(&[2, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
    }

    #[test]
    fn union_examples() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 2])), p(&[3, 2, 2, 1]));
        assert_eq!(p(&[3, 1]).union(&Partition::empty()), p(&[3, 1]));
        assert_eq!(p(&[2, 2]).union(&p(&[2])), p(&[2, 2, 2]));
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(p(&[2, 1]).oplus(&p(&[2])), p(&[4, 3, 2]));
        assert_eq!(Partition::empty().oplus(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(p(&[1]).oplus(&p(&[1, 1])), p(&[2, 1, 1]));
    }

    #[test]
    fn hook_examples() {
        assert_eq!(p(&[4, 2]).hook(Cell::new(1, 1)).unwrap(), 5);
        assert_eq!(p(&[4, 2]).hook(Cell::new(2, 2)).unwrap(), 1);
        // conjugate of (5,2) is (2,2,1,1,1)
        assert_eq!(p(&[5, 2]).hook(Cell::new(1, 3)).unwrap(), 3);
        assert!(p(&[4, 2]).hook(Cell::new(3, 1)).is_err());
    }

    #[test]
    fn corners_examples() {
        let (rem, add) = p(&[2, 2]).corners();
        assert_eq!(rem, vec![Cell::new(2, 2)]);
        assert_eq!(add, vec![Cell::new(1, 3), Cell::new(3, 1)]);

        let (rem, add) = Partition::empty().corners();
        assert!(rem.is_empty());
        assert_eq!(add, vec![Cell::new(1, 1)]);

        let (rem, add) = p(&[2, 1]).corners();
        assert_eq!(rem, vec![Cell::new(1, 2), Cell::new(2, 1)]);
        assert_eq!(add, vec![Cell::new(1, 3), Cell::new(2, 2), Cell::new(3, 1)]);
    }

    #[test]
    fn strip_examples() {
        assert!(p(&[3, 2]).is_horizontal_strip_over(&p(&[2, 2])));
        assert!(p(&[2, 2]).is_horizontal_strip_over(&p(&[2])));
        assert!(p(&[2, 1]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[3, 3]).is_horizontal_strip_over(&p(&[3, 1])));
        assert!(!p(&[2, 2]).is_horizontal_strip_over(&p(&[1])));
        assert!(!p(&[1]).is_horizontal_strip_over(&p(&[2])));

        assert!(p(&[2, 1]).is_vertical_strip_over(&p(&[1, 1])));
        assert!(!p(&[3, 1]).is_vertical_strip_over(&p(&[1, 1])));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])));
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])));
        assert!(p(&[2, 1, 1]).dominance_leq(&p(&[2, 2])));
        assert!(!p(&[2, 1]).dominance_leq(&p(&[2])));
    }

    #[test]
    fn k_rectangle_examples() {
        assert_eq!(Partition::k_rectangle(2, 3).unwrap(), p(&[2, 2]));
        assert_eq!(Partition::k_rectangle(3, 3).unwrap(), p(&[3]));
        assert_eq!(Partition::k_rectangle(1, 3).unwrap(), p(&[1, 1, 1]));
        assert!(Partition::k_rectangle(0, 3).is_err());
        assert!(Partition::k_rectangle(4, 3).is_err());
    }

    #[test]
    fn multiset_difference_examples() {
        assert_eq!(
            p(&[2, 2, 2]).multiset_difference(&p(&[2, 2])),
            Some(p(&[2]))
        );
        assert_eq!(p(&[2, 1]).multiset_difference(&p(&[2, 2])), None);
    }

    #[test]
    fn enumeration_helpers() {
        assert_eq!(bounded_partitions(3, 4).len(), 4); // (3,1),(2,2),(2,1,1),(1,1,1,1)
        assert_eq!(bounded_partitions_up_to(3, 6).len(), 23);

        let exts = horizontal_strip_extensions(&p(&[1]), 1, 3);
        assert_eq!(exts.len(), 2); // (2) and (1,1)

        let subs = subpartitions(&p(&[2, 1]));
        assert_eq!(subs.len(), 5); // {}, (1), (2), (1,1), (2,1)
    }

    #[test]
    fn graded_lex_order() {
        assert!(p(&[1, 1]) < p(&[1, 1, 1]));
        assert!(p(&[1, 1]) < p(&[2]));
        assert!(p(&[2, 1]) < p(&[3]));
    }

    #[test]
    fn display_matches_json_shape() {
        assert_eq!(p(&[2, 2, 1]).to_string(), "[2,2,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        let json = serde_json::to_string(&p(&[3, 2, 2, 1])).unwrap();
        assert_eq!(json, "[3,2,2,1]");
        let back: Partition = serde_json::from_str("[3,2,2,1]").unwrap();
        assert_eq!(back, p(&[3, 2, 2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
