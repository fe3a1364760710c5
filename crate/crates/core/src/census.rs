//! Grouping a collection of manifolds by integral homology, then refining
//! the groups by the `TV(4,1)` and `TV(4,3)` triples.

use crate::homology::{integral_h1, IntegralH1};
use crate::triang::Triangulation;
use crate::tv4::{tv4_compute_with, DyadicSqrt2, TVReport, Tv4Error, Tv4Options};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Exact encoding `(a, b, k)` of a [`DyadicSqrt2`], used as an ordered key.
pub type ExactKey = (BigInt, BigInt, u32);

pub fn exact_key(x: &DyadicSqrt2) -> ExactKey {
    (x.a().clone(), x.b().clone(), x.k())
}

/// Invariants of one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub name: String,
    pub h1: IntegralH1,
    /// Normalized triple for `q = 1`.
    pub triple_q1: [DyadicSqrt2; 3],
    /// Normalized triple for `q = 3`.
    pub triple_q3: [DyadicSqrt2; 3],
}

impl CensusEntry {
    /// One cocycle enumeration serves both values of `q`.
    pub fn compute(name: impl Into<String>, t: &Triangulation, opts: &Tv4Options) -> Result<Self, Tv4Error> {
        let q1 = tv4_compute_with(t, 1, opts)?;
        let q3 = TVReport::from_records(t, 3, q1.beta1, q1.class_space_dim, q1.classes.clone())?;
        Ok(CensusEntry {
            name: name.into(),
            h1: integral_h1(t),
            triple_q1: q1.triple,
            triple_q3: q3.triple,
        })
    }

    fn refined_key(&self) -> RefinedKey {
        (
            self.h1.clone(),
            self.triple_q1.each_ref().map(exact_key),
            self.triple_q3.each_ref().map(exact_key),
        )
    }
}

type RefinedKey = (IntegralH1, [ExactKey; 3], [ExactKey; 3]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub h1: IntegralH1,
    /// `None` for homology-only groups.
    pub triples: Option<([DyadicSqrt2; 3], [DyadicSqrt2; 3])>,
    /// Indices into [`GroupingReport::entries`], increasing.
    pub members: Vec<usize>,
}

/// Homology groups and their refinement by TV triples. Groups are ordered
/// by key, so the report does not depend on input order beyond member
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupingReport {
    pub entries: Vec<CensusEntry>,
    pub coarse: Vec<Group>,
    pub refined: Vec<Group>,
}

impl GroupingReport {
    pub fn new(entries: Vec<CensusEntry>) -> Self {
        let mut coarse: BTreeMap<IntegralH1, Vec<usize>> = BTreeMap::new();
        let mut refined: BTreeMap<RefinedKey, (usize, Vec<usize>)> = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            coarse.entry(e.h1.clone()).or_default().push(i);
            refined.entry(e.refined_key()).or_insert_with(|| (i, Vec::new())).1.push(i);
        }
        let coarse = coarse
            .into_iter()
            .map(|(h1, members)| Group { h1, triples: None, members })
            .collect();
        let refined = refined
            .into_values()
            .map(|(first, members)| {
                let e = &entries[first];
                Group {
                    h1: e.h1.clone(),
                    triples: Some((e.triple_q1.clone(), e.triple_q3.clone())),
                    members,
                }
            })
            .collect();
        GroupingReport { entries, coarse, refined }
    }

    pub fn coarse_count(&self) -> usize {
        self.coarse.len()
    }

    pub fn refined_count(&self) -> usize {
        self.refined.len()
    }

    /// `refined / coarse`; 1 for an empty input.
    pub fn refinement_factor(&self) -> f64 {
        if self.coarse.is_empty() {
            1.0
        } else {
            self.refined.len() as f64 / self.coarse.len() as f64
        }
    }
}
