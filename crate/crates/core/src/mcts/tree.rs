//! Search tree over populations.

use serde::{Deserialize, Serialize};

use crate::dvso::VariableSample;
use crate::error::{Error, Result};
use crate::solution::Population;

use super::ucb;

/// How a fresh evaluation is folded into the statistics of the ancestors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackpropMode {
    /// Every ancestor below the root adds the evaluation to its value.
    #[default]
    Sum,
    /// Every ancestor below the root keeps the running mean of its own
    /// evaluation and all descendant evaluations.
    Mean,
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    /// `None` once discarded.
    pub population: Option<Population>,
    /// Exploitation value used by UCB.
    pub delta: f64,
    /// The node's own evaluation, fixed at creation.
    pub evaluation: f64,
    /// Number of evaluations folded into `delta` in mean mode.
    pub samples: u64,
    pub visits: u64,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Variables optimized when this node was created (`None` for the root).
    pub sample: Option<VariableSample>,
}

/// The best-evaluated node so far and its evaluation when it was archived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Archive {
    pub node: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Tree {
    nodes: Vec<TreeNode>,
    k: usize,
    archive: Archive,
}

pub const ROOT: usize = 0;

impl Tree {
    /// A tree holding only the root. The root's value is 0 and it is the
    /// initial archive.
    pub fn new(root: Population, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("branching factor must be at least 1".into()));
        }
        let node = TreeNode {
            population: Some(root),
            delta: 0.0,
            evaluation: 0.0,
            samples: 0,
            visits: 0,
            children: Vec::new(),
            parent: None,
            depth: 0,
            sample: None,
        };
        Ok(Self { nodes: vec![node], k, archive: Archive { node: ROOT, value: 0.0 } })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn node_mut(&mut self, id: usize) -> &mut TreeNode {
        &mut self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn archive(&self) -> Archive {
        self.archive
    }

    pub fn is_full(&self, id: usize) -> bool {
        self.nodes[id].children.len() >= self.k
    }

    /// Child of `id` with the highest UCB; ties go to the earliest child.
    /// `None` if `id` has no children.
    pub fn best_child(&self, id: usize) -> Option<usize> {
        let children = &self.nodes[id].children;
        let total: u64 = children.iter().map(|&c| self.nodes[c].visits).sum();
        let mut best: Option<(usize, f64)> = None;
        for &c in children {
            let score = ucb(self.nodes[c].delta, self.nodes[c].visits, total);
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((c, score));
            }
        }
        best.map(|(c, _)| c)
    }

    /// Descends from the root through full nodes, always into the best child
    /// and counting a visit for every node entered, and returns the first
    /// node with fewer than `k` children.
    pub fn select(&mut self) -> usize {
        let mut current = ROOT;
        while self.is_full(current) {
            let next = self.best_child(current).expect("full node has children");
            self.nodes[next].visits += 1;
            current = next;
        }
        current
    }

    /// Attaches a new child to `parent`. The child starts with
    /// `initial_visits` visits and its evaluation as value.
    pub fn add_child(
        &mut self,
        parent: usize,
        population: Population,
        evaluation: f64,
        sample: Option<VariableSample>,
        initial_visits: u64,
    ) -> Result<usize> {
        if self.is_full(parent) {
            return Err(Error::NodeFull { node: parent, k: self.k });
        }
        if self.nodes[parent].population.is_none() {
            return Err(Error::DiscardedPopulation(parent));
        }
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(TreeNode {
            population: Some(population),
            delta: evaluation,
            evaluation,
            samples: 1,
            visits: initial_visits,
            children: Vec::new(),
            parent: Some(parent),
            depth,
            sample,
        });
        self.nodes[parent].children.push(id);
        Ok(id)
    }

    /// Replaces the archive if `node`'s evaluation strictly exceeds the
    /// archived value. Returns whether it did.
    pub fn update_archive(&mut self, node: usize) -> bool {
        let value = self.nodes[node].evaluation;
        if self.archive.value < value {
            self.archive = Archive { node, value };
            true
        } else {
            false
        }
    }

    /// Releases the population of every full node other than the archive.
    /// Returns how many populations were released by this call.
    pub fn discard_populations(&mut self) -> usize {
        let k = self.k;
        let keep = self.archive.node;
        let mut released = 0;
        for (id, node) in self.nodes.iter_mut().enumerate() {
            if id != keep && node.children.len() >= k && node.population.take().is_some() {
                released += 1;
            }
        }
        released
    }

    /// Folds `child`'s evaluation into every ancestor strictly below the root.
    pub fn backpropagate(&mut self, child: usize, mode: BackpropMode) {
        let value = self.nodes[child].evaluation;
        let mut cursor = self.nodes[child].parent;
        while let Some(id) = cursor {
            if id == ROOT {
                break;
            }
            let node = &mut self.nodes[id];
            match mode {
                BackpropMode::Sum => node.delta += value,
                BackpropMode::Mean => {
                    node.samples += 1;
                    node.delta += (value - node.delta) / node.samples as f64;
                }
            }
            cursor = node.parent;
        }
    }

    pub fn live_populations(&self) -> usize {
        self.nodes.iter().filter(|n| n.population.is_some()).count()
    }

    /// Number of nodes that may still be expanded, plus one for the archive.
    pub fn census_bound(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.len() < self.k).count() + 1
    }
}
