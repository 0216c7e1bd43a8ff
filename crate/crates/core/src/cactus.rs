//! Block decomposition of cacti, gates and apices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{interval_vertices, DistanceMatrix};
use crate::vset::{Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Edge,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    /// Cycle order starting at the smallest vertex; both ends for an edge.
    pub order: Vec<Vertex>,
    pub members: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Block(usize),
    Cut(Vertex),
}

#[derive(Clone, Debug)]
pub struct CactusStructure {
    pub blocks: Vec<Block>,
    pub cut_vertices: VertexSet,
    blocks_of: Vec<Vec<usize>>,
}

impl CactusStructure {
    /// Decomposes `g` into blocks and checks each is a cycle or an edge.
    pub fn new(g: &Graph) -> Result<Self> {
        g.check_connected()?;
        let n = g.n();
        let raw = biconnected_components(g);
        let mut blocks = Vec::with_capacity(raw.len());
        let mut blocks_of = vec![Vec::new(); n];
        for (bi, edges) in raw.into_iter().enumerate() {
            let members = VertexSet::from_iter(n, edges.iter().flat_map(|&(a, b)| [a, b]));
            let block = if edges.len() == 1 {
                Block {
                    kind: BlockKind::Edge,
                    order: members.to_vec(),
                    members,
                }
            } else if edges.len() == members.len() {
                Block {
                    kind: BlockKind::Cycle,
                    order: cycle_order(&edges, &members),
                    members,
                }
            } else {
                return Err(Error::NotCactus(format!(
                    "block {members} has {} edges on {} vertices",
                    edges.len(),
                    members.len()
                )));
            };
            for v in block.members.iter() {
                blocks_of[v].push(bi);
            }
            blocks.push(block);
        }
        let cut_vertices = VertexSet::from_iter(n, (0..n).filter(|&v| blocks_of[v].len() > 1));
        Ok(CactusStructure {
            blocks,
            cut_vertices,
            blocks_of,
        })
    }

    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.blocks_of[v]
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.contains(v)
    }

    fn node_of(&self, v: Vertex) -> Option<Node> {
        match self.blocks_of[v][..] {
            [] => None,
            [b] => Some(Node::Block(b)),
            _ => Some(Node::Cut(v)),
        }
    }

    fn tree_neighbors(&self, node: Node) -> Vec<Node> {
        match node {
            Node::Block(b) => self.blocks[b]
                .members
                .iter()
                .filter(|&v| self.is_cut_vertex(v))
                .map(Node::Cut)
                .collect(),
            Node::Cut(v) => self.blocks_of[v].iter().map(|&b| Node::Block(b)).collect(),
        }
    }

    /// Blocks on the block-tree path from `C(u)` to `C(v)`, in path order.
    pub fn block_path(&self, u: Vertex, v: Vertex) -> Vec<usize> {
        let (Some(a), Some(b)) = (self.node_of(u), self.node_of(v)) else {
            return Vec::new();
        };
        let key = |x: Node| match x {
            Node::Block(i) => i,
            Node::Cut(c) => self.blocks.len() + c,
        };
        let size = self.blocks.len() + self.blocks_of.len();
        let mut prev: Vec<Option<Node>> = vec![None; size];
        let mut seen = vec![false; size];
        seen[key(a)] = true;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            if x == b {
                break;
            }
            for y in self.tree_neighbors(x) {
                if !seen[key(y)] {
                    seen[key(y)] = true;
                    prev[key(y)] = Some(x);
                    q.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = Some(b);
        while let Some(x) = cur {
            if let Node::Block(i) = x {
                path.push(i);
            }
            cur = prev[key(x)];
        }
        path.reverse();
        path
    }

    /// Union of the blocks on the path between `C(u)` and `C(v)`.
    pub fn path_union(&self, u: Vertex, v: Vertex) -> VertexSet {
        let mut s = VertexSet::singleton(self.blocks_of.len(), u);
        s.insert(v);
        for b in self.block_path(u, v) {
            s.union_with(&self.blocks[b].members);
        }
        s
    }
}

/// Edge sets of the biconnected components (iterative Tarjan).
fn biconnected_components(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(Vertex, Vertex)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    estack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    estack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

fn cycle_order(edges: &[(Vertex, Vertex)], members: &VertexSet) -> Vec<Vertex> {
    let mut nb: std::collections::HashMap<Vertex, Vec<Vertex>> = Default::default();
    for &(a, b) in edges {
        nb.entry(a).or_default().push(b);
        nb.entry(b).or_default().push(a);
    }
    let start = members.first().expect("non-empty block");
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *nb[&start].iter().min().expect("cycle vertex has neighbors");
    while cur != start {
        order.push(cur);
        let next = nb[&cur]
            .iter()
            .copied()
            .find(|&w| w != prev)
            .unwrap_or(start);
        prev = cur;
        cur = next;
    }
    order
}

/// The member of `block` closest to `z`, checked to lie on a shortest path
/// from `z` to every member.
pub fn gate(d: &DistanceMatrix, z: Vertex, block: &VertexSet) -> Result<Vertex> {
    let best = block
        .iter()
        .map(|w| d.get(z, w))
        .min()
        .ok_or_else(|| Error::NotCactus("gate into an empty set".into()))?;
    let mut closest = block.iter().filter(|&w| d.get(z, w) == best);
    let g = closest.next().expect("minimum is attained");
    if closest.next().is_some() {
        return Err(Error::NotCactus(format!(
            "vertex {z} has no unique gate in {block}"
        )));
    }
    if let Some(w) = block.iter().find(|&w| best + d.get(g, w) != d.get(z, w)) {
        return Err(Error::NotCactus(format!(
            "{g} is not a gate of {z}: not on a shortest path to {w}"
        )));
    }
    Ok(g)
}

/// The vertex of `I(x,u) ∩ I(x,v)` farthest from `x`, required to be unique.
pub fn apex(d: &DistanceMatrix, x: Vertex, u: Vertex, v: Vertex) -> Result<Vertex> {
    let common = interval_vertices(d, x, u).intersection(&interval_vertices(d, x, v));
    let far = common
        .iter()
        .map(|y| d.get(x, y))
        .max()
        .expect("x lies in both intervals");
    let mut top = common.iter().filter(|&y| d.get(x, y) == far);
    let y = top.next().expect("maximum is attained");
    if top.next().is_some() {
        return Err(Error::NotCactus(format!(
            "apex of {x} for {u},{v} is not unique"
        )));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, cycle, path, random_cactus, random_tree};
    use crate::metric::all_pairs_distances;

    fn two_triangles() -> Graph {
        // triangles 0-1-2 and 2-3-4 sharing 2, pendant 5 on 4
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn blocks_of_small_cactus() {
        let c = CactusStructure::new(&two_triangles()).unwrap();
        assert_eq!(c.blocks.len(), 3);
        assert_eq!(c.cut_vertices.to_vec(), vec![2, 4]);
        let kinds: Vec<_> = c.blocks.iter().map(|b| b.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == BlockKind::Cycle).count(), 2);
        assert_eq!(c.block_path(0, 5).len(), 3);
        assert_eq!(c.path_union(0, 3).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(c.block_path(2, 2), Vec::<usize>::new());
    }

    #[test]
    fn cycle_order_walks_the_cycle() {
        let c = CactusStructure::new(&cycle(6).unwrap()).unwrap();
        assert_eq!(c.blocks.len(), 1);
        assert_eq!(c.blocks[0].order, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn rejects_non_cactus() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(
            CactusStructure::new(&k4),
            Err(Error::NotCactus(_))
        ));
        let k23 = complete_bipartite(2, 3).unwrap();
        assert!(matches!(
            CactusStructure::new(&k23),
            Err(Error::NotCactus(_))
        ));
    }

    #[test]
    fn random_cacti_decompose() {
        for seed in 0..40 {
            let g = random_cactus(30, seed).unwrap();
            let c = CactusStructure::new(&g).unwrap();
            let total: usize = c
                .blocks
                .iter()
                .map(|b| {
                    if b.kind == BlockKind::Edge {
                        1
                    } else {
                        b.order.len()
                    }
                })
                .sum();
            assert_eq!(total, g.m(), "every edge in exactly one block");
        }
        let t = random_tree(20, 1).unwrap();
        let c = CactusStructure::new(&t).unwrap();
        assert!(c.blocks.iter().all(|b| b.kind == BlockKind::Edge));
    }

    #[test]
    fn gates_and_apices() {
        let g = two_triangles();
        let d = all_pairs_distances(&g).unwrap();
        let tri = VertexSet::from_iter(6, [0, 1, 2]);
        assert_eq!(gate(&d, 5, &tri).unwrap(), 2);
        assert_eq!(gate(&d, 1, &tri).unwrap(), 1);
        // vertex 2 of C4 is equally close to 1 and 3
        let c4 = all_pairs_distances(&cycle(4).unwrap()).unwrap();
        assert!(gate(&c4, 2, &VertexSet::from_iter(4, [0, 1, 3])).is_err());

        let p = all_pairs_distances(&path(5).unwrap()).unwrap();
        assert_eq!(apex(&p, 2, 0, 4).unwrap(), 2);
        // star with a long arm: x off the u-v path meets it at the center
        let t = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let d = all_pairs_distances(&t).unwrap();
        assert_eq!(apex(&d, 4, 1, 2).unwrap(), 0);
        assert_eq!(apex(&d, 4, 1, 1).unwrap(), 1);
    }
}
