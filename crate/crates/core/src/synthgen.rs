//! Chain-of-cliques benchmark graphs and the merge/split adjustment study.
//!
//! Every community is a complete subgraph and consecutive communities are
//! joined by one bridge between their lowest-id nodes. Adjusted graphs are
//! rebuilt from scratch over the adjusted community list (chained in
//! descending size order) while keeping node ids, so the planted partition
//! of the original graph stays comparable with anything measured on the
//! adjusted one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detection::Detector;
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::metrics::{adjusted_rand_index, modularity};

/// Ordered community sizes of a chain-of-cliques graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunitySpec {
    sizes: Vec<usize>,
}

impl CommunitySpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::validation("community spec is empty"));
        }
        if sizes.contains(&0) {
            return Err(Error::validation("community sizes must be at least 1"));
        }
        Ok(CommunitySpec { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn node_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Node ids of each community, contiguous in spec order.
    fn groups(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let g = (next..next + s).collect();
                next += s;
                g
            })
            .collect()
    }

    /// Community indices ordered largest first, ties by position.
    fn by_size(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.sizes.len()).collect();
        idx.sort_by(|&a, &b| self.sizes[b].cmp(&self.sizes[a]).then(a.cmp(&b)));
        idx
    }
}

impl fmt::Display for CommunitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for CommunitySpec {
    type Err = Error;

    /// Accepts `100,50,25`, `{100,50,25}` or whitespace-separated sizes.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        let sizes = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Config(format!("invalid community size {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CommunitySpec::new(sizes)
    }
}

/// The six extreme community adjustments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdjustmentOp {
    MergeLargestTwo,
    SplitSmallest,
    MergeLargeSplitSmall,
    MergeSmallestTwo,
    SplitLargest,
    MergeSmallSplitLarge,
}

impl AdjustmentOp {
    pub const ALL: [AdjustmentOp; 6] = [
        AdjustmentOp::MergeLargestTwo,
        AdjustmentOp::SplitSmallest,
        AdjustmentOp::MergeLargeSplitSmall,
        AdjustmentOp::MergeSmallestTwo,
        AdjustmentOp::SplitLargest,
        AdjustmentOp::MergeSmallSplitLarge,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AdjustmentOp::MergeLargestTwo => "Merge large",
            AdjustmentOp::SplitSmallest => "Split small",
            AdjustmentOp::MergeLargeSplitSmall => "Merge large & split small",
            AdjustmentOp::MergeSmallestTwo => "Merge small",
            AdjustmentOp::SplitLargest => "Split large",
            AdjustmentOp::MergeSmallSplitLarge => "Merge small & split large",
        }
    }
}

/// Builds cliques over `groups` and chains them in the given order.
fn build_chain(node_count: usize, groups: &[Vec<usize>]) -> (Graph, Partition) {
    let mut g = Graph::empty(node_count);
    let mut labels = vec![0; node_count];
    for (c, members) in groups.iter().enumerate() {
        for (i, &u) in members.iter().enumerate() {
            labels[u] = c;
            for &v in &members[i + 1..] {
                g.insert_unchecked(u, v);
            }
        }
    }
    for pair in groups.windows(2) {
        let a = *pair[0].iter().min().expect("non-empty community");
        let b = *pair[1].iter().min().expect("non-empty community");
        g.insert_unchecked(a, b);
    }
    (g, Partition::new(labels))
}

/// Complete subgraph per community, consecutive communities bridged once.
/// Returns the graph and its planted partition.
pub fn generate_chain_of_cliques(spec: &CommunitySpec) -> (Graph, Partition) {
    build_chain(spec.node_count(), &spec.groups())
}

/// A rebuilt graph after one adjustment, with both partitions over its ids.
#[derive(Debug, Clone)]
pub struct Adjustment {
    pub graph: Graph,
    /// Planted partition of the adjusted graph.
    pub new_partition: Partition,
    /// Planted partition of the original graph on the same node ids.
    pub old_partition: Partition,
    /// Community sizes of the adjusted graph in chain order.
    pub sizes: Vec<usize>,
}

fn split(group: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut ids = group.to_vec();
    ids.sort_unstable();
    let first = ids.len().div_ceil(2);
    let second = ids.split_off(first);
    (ids, second)
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut ids: Vec<usize> = a.iter().chain(b).copied().collect();
    ids.sort_unstable();
    ids
}

/// Applies `op` to `spec` and rebuilds the chain-of-cliques graph.
pub fn apply_adjustment(spec: &CommunitySpec, op: AdjustmentOp) -> Result<Adjustment> {
    let groups = spec.groups();
    let rank = spec.by_size();
    let k = groups.len();
    let largest = rank[0];
    let smallest = rank[k - 1];

    let need = |count: usize| -> Result<()> {
        if k < count {
            Err(Error::validation(format!(
                "{} needs at least {count} communities, spec has {k}",
                op.label()
            )))
        } else {
            Ok(())
        }
    };
    let splittable = |c: usize| -> Result<()> {
        if groups[c].len() < 2 {
            Err(Error::validation(format!(
                "cannot split a community of size {}",
                groups[c].len()
            )))
        } else {
            Ok(())
        }
    };

    // (indices merged together, index split in two)
    let (merged, split_idx): (Option<(usize, usize)>, Option<usize>) = match op {
        AdjustmentOp::MergeLargestTwo => {
            need(2)?;
            (Some((rank[0], rank[1])), None)
        }
        AdjustmentOp::SplitSmallest => {
            splittable(smallest)?;
            (None, Some(smallest))
        }
        AdjustmentOp::MergeLargeSplitSmall => {
            need(3)?;
            splittable(smallest)?;
            (Some((rank[0], rank[1])), Some(smallest))
        }
        AdjustmentOp::MergeSmallestTwo => {
            need(2)?;
            (Some((rank[k - 2], rank[k - 1])), None)
        }
        AdjustmentOp::SplitLargest => {
            splittable(largest)?;
            (None, Some(largest))
        }
        AdjustmentOp::MergeSmallSplitLarge => {
            need(3)?;
            splittable(largest)?;
            (Some((rank[k - 2], rank[k - 1])), Some(largest))
        }
    };

    let mut adjusted: Vec<Vec<usize>> = Vec::with_capacity(k + 1);
    for (c, members) in groups.iter().enumerate() {
        match merged {
            Some((a, b)) if c == a.min(b) => adjusted.push(merge(&groups[a], &groups[b])),
            Some((a, b)) if c == a.max(b) => {}
            _ if Some(c) == split_idx => {
                let (first, second) = split(members);
                adjusted.push(first);
                adjusted.push(second);
            }
            _ => adjusted.push(members.clone()),
        }
    }
    // stable: equal sizes keep their relative order
    adjusted.sort_by(|a, b| b.len().cmp(&a.len()));

    let n = spec.node_count();
    let (graph, new_partition) = build_chain(n, &adjusted);
    let (_, old_partition) = build_chain(n, &groups);
    Ok(Adjustment {
        graph,
        new_partition,
        old_partition,
        sizes: adjusted.iter().map(Vec::len).collect(),
    })
}

/// One row of the adjustment study.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StudyRow {
    /// `None` for the unadjusted graph.
    pub op: Option<AdjustmentOp>,
    pub node_count: usize,
    pub sizes: Vec<usize>,
    pub modularity: f64,
    /// ARI against the original planted partition; `None` for the original row.
    pub ari: Option<f64>,
}

impl StudyRow {
    pub fn operation_label(&self) -> &'static str {
        self.op.map_or("Original", |op| op.label())
    }
}

/// Measures an adjusted graph the way a defender would see it: `detector`
/// runs on the adjusted graph, and the row reports the modularity of the
/// detected partition and its ARI against the original planted partition.
pub fn adjustment_study(
    spec: &CommunitySpec,
    op: Option<AdjustmentOp>,
    detector: &Detector,
) -> Result<StudyRow> {
    let (graph, old, sizes) = match op {
        None => {
            let (g, p) = generate_chain_of_cliques(spec);
            (g, p, spec.sizes().to_vec())
        }
        Some(op) => {
            let adj = apply_adjustment(spec, op)?;
            (adj.graph, adj.old_partition, adj.sizes)
        }
    };
    let detected = detector.detect(&graph)?;
    Ok(StudyRow {
        op,
        node_count: spec.node_count(),
        sizes,
        modularity: modularity(&graph, &detected)?,
        ari: match op {
            None => None,
            Some(_) => Some(adjusted_rand_index(&old, &detected)?),
        },
    })
}

/// The two base distributions of the adjustment study (n = 200 and n = 400).
pub fn study_specs() -> [CommunitySpec; 2] {
    [
        CommunitySpec { sizes: vec![100, 50, 25, 15, 10] },
        CommunitySpec { sizes: vec![200, 100, 50, 30, 20] },
    ]
}

/// Original row plus the six adjustments for each base distribution.
pub fn adjustment_table(detector: &Detector) -> Result<Vec<StudyRow>> {
    let mut rows = Vec::with_capacity(14);
    for spec in study_specs() {
        rows.push(adjustment_study(&spec, None, detector)?);
        for op in AdjustmentOp::ALL {
            rows.push(adjustment_study(&spec, Some(op), detector)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &[usize]) -> CommunitySpec {
        CommunitySpec::new(s.to_vec()).unwrap()
    }

    #[test]
    fn two_triangles_and_a_bridge() {
        let (g, p) = generate_chain_of_cliques(&spec(&[3, 3]));
        assert_eq!(g.edge_count(), 7);
        assert!(g.has_edge(0, 3));
        assert_eq!(p, Partition::new(vec![0, 0, 0, 1, 1, 1]));
    }

    #[test]
    fn single_node() {
        let (g, p) = generate_chain_of_cliques(&spec(&[1]));
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        assert_eq!(p.community_count(), 1);
    }

    #[test]
    fn edge_count_of_study_graph() {
        let (g, _) = generate_chain_of_cliques(&spec(&[100, 50, 25, 15, 10]));
        assert_eq!(g.edge_count(), 4950 + 1225 + 300 + 105 + 45 + 4);
    }

    #[test]
    fn invalid_specs() {
        assert!(CommunitySpec::new(vec![]).is_err());
        assert!(CommunitySpec::new(vec![3, 0]).is_err());
        assert!("".parse::<CommunitySpec>().is_err());
        assert_eq!("{3, 4,5}".parse::<CommunitySpec>().unwrap().sizes(), &[3, 4, 5]);
    }

    #[test]
    fn adjusted_sizes() {
        let base = spec(&[100, 50, 25, 15, 10]);
        let cases = [
            (AdjustmentOp::MergeLargestTwo, vec![150, 25, 15, 10]),
            (AdjustmentOp::SplitSmallest, vec![100, 50, 25, 15, 5, 5]),
            (AdjustmentOp::MergeLargeSplitSmall, vec![150, 25, 15, 5, 5]),
            (AdjustmentOp::MergeSmallestTwo, vec![100, 50, 25, 25]),
            (AdjustmentOp::SplitLargest, vec![50, 50, 50, 25, 15, 10]),
            (AdjustmentOp::MergeSmallSplitLarge, vec![50, 50, 50, 25, 25]),
        ];
        for (op, sizes) in cases {
            let adj = apply_adjustment(&base, op).unwrap();
            assert_eq!(adj.sizes, sizes, "{op:?}");
            assert_eq!(adj.new_partition.community_sizes().iter().sum::<usize>(), 200);
            assert_eq!(adj.old_partition.community_count(), 5);
        }
    }

    #[test]
    fn odd_split_is_ceil_then_floor() {
        let adj = apply_adjustment(&spec(&[15, 20]), AdjustmentOp::SplitSmallest).unwrap();
        assert_eq!(adj.sizes, vec![20, 8, 7]);
        // first half keeps the lower ids
        assert!(adj.new_partition.same_community(0, 7));
        assert!(!adj.new_partition.same_community(7, 8));
    }

    #[test]
    fn infeasible_adjustments() {
        assert!(apply_adjustment(&spec(&[5]), AdjustmentOp::MergeLargestTwo).is_err());
        assert!(apply_adjustment(&spec(&[4, 1]), AdjustmentOp::SplitSmallest).is_err());
        assert!(apply_adjustment(&spec(&[4, 3]), AdjustmentOp::MergeSmallSplitLarge).is_err());
    }

    #[test]
    fn planted_modularity_of_merges() {
        let base = spec(&[100, 50, 25, 15, 10]);
        let (g, p) = generate_chain_of_cliques(&base);
        assert!((modularity(&g, &p).unwrap() - 0.4051).abs() < 1e-4);
        let adj = apply_adjustment(&base, AdjustmentOp::MergeLargestTwo).unwrap();
        let q = modularity(&adj.graph, &adj.new_partition).unwrap();
        assert!((q - 0.0753).abs() < 1e-4);
    }
}
