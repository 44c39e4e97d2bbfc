//! A plain directed graph over named nodes, used for the merged discovery
//! output and as the substrate for the d-separation test oracle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Directed graph with signed edge weights. Node identity is positional; the
/// `nodes` list carries the instance names.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Digraph {
    pub nodes: Vec<String>,
    /// (from, to, weight) triples, kept sorted for canonical serialization.
    pub edges: Vec<(usize, usize, f64)>,
}

impl Digraph {
    pub fn new(nodes: Vec<String>) -> Self {
        Digraph { nodes, edges: Vec::new() }
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weight: f64) {
        self.edges.push((from, to, weight));
        self.edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.iter().any(|&(f, t, _)| f == from && t == to)
    }

    pub fn parents(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|&&(_, t, _)| t == v).map(|&(f, _, _)| f).collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|&&(f, _, _)| f == v).map(|&(_, t, _)| t).collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.children(v).len()
    }

    /// Kahn topological sort; errors on cyclic input.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for &(_, t, _) in &self.edges {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for c in self.children(v) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        if order.len() != n {
            return Err(CoreError::Cyclic);
        }
        Ok(order)
    }

    fn ancestors_with(&self, seeds: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut seen = seeds.clone();
        let mut stack: Vec<usize> = seeds.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for p in self.parents(v) {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Exports the graph in DOT syntax with weights as edge labels.
    pub fn to_dot(&self, name: &str) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for node in &self.nodes {
            writeln!(out, "  \"{node}\";").unwrap();
        }
        for &(f, t, w) in &self.edges {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{:.3}\"];",
                self.nodes[f], self.nodes[t], w
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Whether `x` and `y` are d-separated by `z` in the DAG `g`.
///
/// Standard active-trail reachability: a path is blocked unless every
/// collider on it is in `z` or has a descendant in `z`, and no non-collider
/// on it is in `z`. Errors on cyclic input.
pub fn d_separated(g: &Digraph, x: usize, y: usize, z: &BTreeSet<usize>) -> Result<bool> {
    g.topological_order()?;
    if x == y {
        return Ok(false);
    }
    // Ancestors of z (inclusive) open colliders.
    let collider_openers = g.ancestors_with(z);

    // State: (node, arrived-moving-with-the-arrow). Starting node behaves as
    // if entered against an arrow, which permits every initial move.
    let mut visited = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((x, false));
    while let Some((v, entered_forward)) = queue.pop_front() {
        if !visited.insert((v, entered_forward)) {
            continue;
        }
        if v == y {
            return Ok(false);
        }
        let in_z = z.contains(&v);
        if entered_forward {
            // Arrived along an edge pointing into v.
            if !in_z {
                for c in g.children(v) {
                    queue.push_back((c, true));
                }
            }
            if collider_openers.contains(&v) {
                for p in g.parents(v) {
                    queue.push_back((p, false));
                }
            }
        } else if !in_z {
            // Arrived against an arrow (or starting out): chain or fork at v.
            for c in g.children(v) {
                queue.push_back((c, true));
            }
            for p in g.parents(v) {
                queue.push_back((p, false));
            }
        }
    }
    Ok(true)
}

/// Name-based convenience wrapper around [`d_separated`].
pub fn d_separated_names(g: &Digraph, x: &str, y: &str, z: &[&str]) -> Result<bool> {
    let xi = g.node_index(x).ok_or_else(|| CoreError::UnknownArgument(x.into()))?;
    let yi = g.node_index(y).ok_or_else(|| CoreError::UnknownArgument(y.into()))?;
    let zi: BTreeSet<usize> = z
        .iter()
        .map(|n| g.node_index(n).ok_or_else(|| CoreError::UnknownArgument((*n).into())))
        .collect::<Result<_>>()?;
    d_separated(g, xi, yi, &zi)
}

/// All subsets of `pool` with size at most `max_size`, smallest first and in
/// lexicographic order within each size. `pool` is assumed sorted.
pub fn subsets_up_to(pool: &[usize], max_size: usize) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new()];
    for size in 1..=max_size.min(pool.len()) {
        let mut combo: Vec<usize> = (0..size).collect();
        'combos: loop {
            out.push(combo.iter().map(|&k| pool[k]).collect());
            let mut i = size;
            while i > 0 {
                i -= 1;
                if combo[i] != i + pool.len() - size {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    continue 'combos;
                }
            }
            break;
        }
    }
    out
}

/// Lookup map from node name to index.
pub fn index_map(nodes: &[String]) -> BTreeMap<&str, usize> {
    nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}
