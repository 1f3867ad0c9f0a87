//! A fixed level `k` together with every memo table the engine uses.
//!
//! All cached values are canonical: a cache hit returns exactly what a fresh
//! recomputation would. Caches are concurrent maps so one context can be
//! shared across the verification harness's worker threads.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{Basis, SymFunc};
use dashmap::DashMap;
use std::sync::Arc;

pub struct LevelContext {
    k: u32,
    /// Differential check: recompute every core by the row-sliding procedure
    /// and compare against the row recursion. Slow; for tests.
    sliding_check: bool,
    pub(crate) core_cache: DashMap<Partition, Arc<Partition>>,
    /// (bounded inner, r) -> bounded indices of the weak-strip outers.
    pub(crate) strip_cache: DashMap<(Partition, u32), Arc<Vec<Partition>>>,
    pub(crate) pieri_kk_cache: DashMap<(Partition, u32), Arc<SymFunc>>,
    pub(crate) pieri_k_cache: DashMap<(Partition, u32), Arc<SymFunc>>,
    /// h_lambda expanded in a Schur-like basis.
    pub(crate) expand_cache: DashMap<(Basis, Partition), Arc<SymFunc>>,
    /// Basis element of a Schur-like basis expressed in the h basis.
    pub(crate) h_form_cache: DashMap<(Basis, Partition), Arc<SymFunc>>,
}

impl LevelContext {
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::PreconditionViolated("k must be at least 1".into()));
        }
        Ok(LevelContext {
            k,
            sliding_check: false,
            core_cache: DashMap::new(),
            strip_cache: DashMap::new(),
            pieri_kk_cache: DashMap::new(),
            pieri_k_cache: DashMap::new(),
            expand_cache: DashMap::new(),
            h_form_cache: DashMap::new(),
        })
    }

    /// Enables the slow row-sliding cross-check inside `to_core`.
    pub fn with_sliding_check(mut self, enabled: bool) -> Self {
        self.sliding_check = enabled;
        self
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The core level, k + 1.
    pub fn level(&self) -> u32 {
        self.k + 1
    }

    pub(crate) fn sliding_check(&self) -> bool {
        self.sliding_check
    }

    pub(crate) fn check_bounded(&self, lambda: &Partition) -> Result<()> {
        if lambda.bounded_by(self.k) {
            Ok(())
        } else {
            Err(Error::NotKBounded {
                lambda: lambda.clone(),
                k: self.k,
            })
        }
    }
}
