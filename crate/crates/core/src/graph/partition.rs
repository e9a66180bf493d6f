use serde::{Deserialize, Serialize};

/// Assignment of every node to a community.
///
/// Labels are normalized on construction to `0..k` in order of first
/// appearance by node id, so two partitions compare equal exactly when they
/// group nodes identically. Serializes as a plain JSON array of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    labels: Vec<usize>,
    communities: usize,
}

impl Partition {
    pub fn new(raw: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = raw
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            labels,
            communities: map.len(),
        }
    }

    /// Every node in its own community.
    pub fn singletons(node_count: usize) -> Self {
        Partition {
            labels: (0..node_count).collect(),
            communities: node_count,
        }
    }

    /// All nodes in one community.
    pub fn single(node_count: usize) -> Self {
        Partition {
            labels: vec![0; node_count],
            communities: usize::from(node_count > 0),
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn community_count(&self) -> usize {
        self.communities
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same_community(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    /// Member lists per community, each sorted by node id.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.communities];
        for (node, &l) in self.labels.iter().enumerate() {
            out[l].push(node);
        }
        out
    }

    pub fn community_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.communities];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

impl From<Vec<usize>> for Partition {
    fn from(raw: Vec<usize>) -> Self {
        Partition::new(raw)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.labels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_is_canonical() {
        let a = Partition::new(vec![7, 7, 3, 9, 3]);
        let b = Partition::new(vec![0, 0, 1, 2, 1]);
        assert_eq!(a, b);
        assert_eq!(a.community_count(), 3);
        assert_eq!(a.communities(), vec![vec![0, 1], vec![2, 4], vec![3]]);
    }

    #[test]
    fn json_is_a_label_array() {
        let p = Partition::new(vec![5, 5, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0,0,1]");
        let back: Partition = serde_json::from_str("[4,1,4]").unwrap();
        assert_eq!(back.labels(), &[0, 1, 0]);
    }
}
