//! Strong components in topological order (iterative Tarjan).

use serde::{Deserialize, Serialize};

use super::SignedDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Ascending vertex ids.
    pub vertices: Vec<usize>,
    /// No arc enters from outside.
    pub initial: bool,
    /// No arc leaves to the outside.
    pub terminal: bool,
    /// The induced subgraph has at least one arc, i.e. contains a cycle
    /// (a single vertex with a loop is non-trivial).
    pub non_trivial: bool,
}

impl Component {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Components listed so that no arc goes from a later component to an
/// earlier one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    // index into `components` for each id; usize::MAX for absent vertices
    #[serde(skip)]
    index_of: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn component_of(&self, v: usize) -> Option<&Component> {
        self.index_of
            .get(v.wrapping_sub(1))
            .and_then(|&i| self.components.get(i))
    }

    pub fn component_index(&self, v: usize) -> Option<usize> {
        self.index_of
            .get(v.wrapping_sub(1))
            .copied()
            .filter(|&i| i != usize::MAX)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn initial(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.initial)
    }
}

impl SignedDigraph {
    pub fn scc(&self) -> ComponentDecomposition {
        const UNVISITED: usize = usize::MAX;
        let n = self.order();
        let mut index = vec![UNVISITED; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut on_stack = vec![false; n + 1];
        let mut stack: Vec<usize> = Vec::new();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0usize;
        // (vertex, position in its out-arc list)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in self.vertices() {
            if index[root] != UNVISITED {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let out = self.out_arcs(v);
                if *pos < out.len() {
                    let w = out[*pos].target;
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    found.push(comp);
                }
            }
        }

        // Tarjan emits sinks first.
        found.reverse();
        let mut index_of = vec![usize::MAX; n];
        for (i, comp) in found.iter().enumerate() {
            for &v in comp {
                index_of[v - 1] = i;
            }
        }
        let mut components: Vec<Component> = found
            .into_iter()
            .map(|vertices| Component {
                vertices,
                initial: true,
                terminal: true,
                non_trivial: false,
            })
            .collect();
        for a in self.arcs() {
            let (cs, ct) = (index_of[a.source - 1], index_of[a.target - 1]);
            if cs == ct {
                components[cs].non_trivial = true;
            } else {
                components[cs].terminal = false;
                components[ct].initial = false;
            }
        }
        ComponentDecomposition {
            components,
            index_of,
        }
    }

    /// Strongly connected with at least one vertex.
    pub fn is_strong(&self) -> bool {
        let d = self.scc();
        d.len() == 1
    }
}
