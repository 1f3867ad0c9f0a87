//! Reference tables and poset diagrams: quotient tables over rectangle
//! unions, minimal-index tables, and Hasse diagrams of the weak and strong
//! orders in DOT form. All output orders are deterministic.

use crate::context::LevelContext;
use crate::cores;
use crate::error::Result;
use crate::partition::{bounded_partitions_up_to, Partition};
use crate::ring::{divide_exact, Basis, SymFunc};
use crate::strips;
use crate::theorems::{minindex, MinindexOutcome};
use serde::Serialize;

/// One cell of the quotient table: the quotient of the decorated basis
/// element by the rectangle-union one.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCell {
    pub q: Partition,
    pub lambda: Partition,
    pub quotient: SymFunc,
}

/// Rectangle-union row indices: unions of distinct rectangles, grouped by
/// the number of rectangles, widest-first within a group.
pub fn quotient_table_rows(k: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for m in 1..=k {
        let mut group: Vec<Vec<u32>> = Vec::new();
        let mut acc: Vec<u32> = Vec::new();
        fn rec(group: &mut Vec<Vec<u32>>, acc: &mut Vec<u32>, next: u32, m: u32) {
            if acc.len() as u32 == m {
                group.push(acc.clone());
                return;
            }
            for t in (1..=next).rev() {
                acc.push(t);
                rec(group, acc, t - 1, m);
                acc.pop();
            }
        }
        rec(&mut group, &mut acc, k, m);
        group.sort_by(|a, b| b.cmp(a));
        rows.extend(group);
    }
    rows
}

/// Column indices: nonempty bounded partitions in which no part occurs
/// often enough to complete a k-rectangle, by size then lex descending.
pub fn quotient_table_columns(k: u32) -> Vec<Partition> {
    let max: u32 = (1..=k).map(|t| t * (k - t)).sum();
    bounded_partitions_up_to(k, max)
        .into_iter()
        .filter(|lam| {
            !lam.is_empty()
                && (1..=k)
                    .all(|t| lam.parts().iter().filter(|&&p| p == t).count() < (k + 1 - t) as usize)
        })
        .collect()
}

/// The full quotient table, row-major.
pub fn table1(ctx: &LevelContext) -> Result<Vec<QuotientCell>> {
    let k = ctx.k();
    let mut out = Vec::new();
    for widths in quotient_table_rows(k) {
        let mut q = Partition::empty();
        for &t in &widths {
            q = q.union(&Partition::k_rectangle(t, k)?);
        }
        let den = SymFunc::basis_element(k, Basis::KKSchur, q.clone())?;
        for lam in quotient_table_columns(k) {
            let num = SymFunc::basis_element(k, Basis::KKSchur, q.union(&lam))?;
            out.push(QuotientCell {
                q: q.clone(),
                lambda: lam,
                quotient: divide_exact(ctx, &num, &den)?,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MinindexEntry {
    pub t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinindexRow {
    pub lambda: Partition,
    pub core: Partition,
    pub minindex: Vec<MinindexEntry>,
}

/// Minimal indices for every bounded partition up to `max_size` and every
/// rectangle width.
pub fn table2(ctx: &LevelContext, max_size: u32) -> Result<Vec<MinindexRow>> {
    let mut out = Vec::new();
    for lam in bounded_partitions_up_to(ctx.k(), max_size) {
        let core = cores::to_core(ctx, &lam)?.shape().clone();
        let mut entries = Vec::new();
        for t in 1..=ctx.k() {
            match minindex(ctx, &lam, t)? {
                MinindexOutcome::Mu(mu) => {
                    let mu_core = cores::to_core(ctx, &mu)?.shape().clone();
                    entries.push(MinindexEntry {
                        t,
                        mu: Some(mu),
                        core: Some(mu_core),
                        failure: None,
                    });
                }
                MinindexOutcome::Failure(f) => entries.push(MinindexEntry {
                    t,
                    mu: None,
                    core: None,
                    failure: Some(f.to_string()),
                }),
            }
        }
        out.push(MinindexRow {
            lambda: lam,
            core,
            minindex: entries,
        });
    }
    Ok(out)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PosetOrder {
    Weak,
    Strong,
}

/// Cover edges of the chosen order on bounded partitions up to `max_size`,
/// as (lower, upper, is_weak_cover).
pub fn cover_edges(
    ctx: &LevelContext,
    order: PosetOrder,
    max_size: u32,
) -> Result<Vec<(Partition, Partition, bool)>> {
    let nodes = bounded_partitions_up_to(ctx.k(), max_size);
    let mut edges = Vec::new();
    for lower in &nodes {
        for upper in &nodes {
            if lower.size() + 1 != upper.size() {
                continue;
            }
            let weak = strips::weak_cover(ctx, lower, upper)?;
            let strong = strips::strong_cover(ctx, lower, upper)?;
            let keep = match order {
                PosetOrder::Weak => weak,
                PosetOrder::Strong => strong,
            };
            if keep {
                edges.push((lower.clone(), upper.clone(), weak));
            }
        }
    }
    Ok(edges)
}

/// Hasse diagram in DOT form. Weak covers are drawn solid; in the strong
/// order the covers that are not weak covers are drawn dashed, matching the
/// usual picture of the two orders on one diagram.
pub fn poset_dot(ctx: &LevelContext, order: PosetOrder, max_size: u32) -> Result<String> {
    let nodes = bounded_partitions_up_to(ctx.k(), max_size);
    let edges = cover_edges(ctx, order, max_size)?;
    let mut out = String::new();
    out.push_str("digraph poset {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext];\n");
    for n in &nodes {
        out.push_str(&format!("  \"{n}\";\n"));
    }
    for (lower, upper, weak) in &edges {
        let style = if *weak { "solid" } else { "dashed" };
        out.push_str(&format!("  \"{lower}\" -> \"{upper}\" [style={style}];\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn row_and_column_sets_at_level_three() {
        let rows = quotient_table_rows(3);
        assert_eq!(
            rows,
            vec![
                vec![3],
                vec![2],
                vec![1],
                vec![3, 2],
                vec![3, 1],
                vec![2, 1],
                vec![3, 2, 1]
            ]
        );
        let cols = quotient_table_columns(3);
        assert_eq!(
            cols,
            vec![p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 1, 1])]
        );
    }

    #[test]
    fn table1_has_all_cells() {
        let ctx = LevelContext::new(3).unwrap();
        let cells = table1(&ctx).unwrap();
        assert_eq!(cells.len(), 35);
        // the single-rectangle row (3): quotient at (1) is g[1] + g[]
        let cell = &cells[0];
        assert_eq!(cell.q, p(&[3]));
        assert_eq!(cell.lambda, p(&[1]));
        assert_eq!(cell.quotient.num_terms(), 2);
    }

    #[test]
    fn poset_nodes_count() {
        let ctx = LevelContext::new(3).unwrap();
        let dot = poset_dot(&ctx, PosetOrder::Strong, 6).unwrap();
        assert_eq!(dot.matches(";\n").count() - 2, {
            let nodes = 23;
            let edges = cover_edges(&ctx, PosetOrder::Strong, 6).unwrap().len();
            nodes + edges
        });
    }
}
