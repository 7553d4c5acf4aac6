//! Mayer diagrams and their combinatorics.
//!
//! Nodes are particles numbered from 1, edges are f-bonds. Star graphs
//! (biconnected diagrams) are enumerated exactly by canonical-form
//! deduplication over all labeled edge subsets, which is cheap for the small
//! orders supported here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub const MIN_STAR_ORDER: usize = 2;
pub const MAX_STAR_ORDER: usize = 6;
pub const MAX_AUTOMORPHISM_ORDER: usize = 8;

/// A labeled Mayer diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClusterGraph {
    order: usize,
    /// Sorted, each pair (i, j) with 1 ≤ i < j ≤ order.
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

/// Alphabetic edge label: A..Z, then AA, AB, ...
pub fn edge_label(index: usize) -> String {
    let mut n = index;
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

impl ClusterGraph {
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid(format!("graph order must be >= 2, got {order}")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop at node {a}")));
            }
            if a < 1 || b < 1 || a > order || b > order {
                return Err(Error::invalid(format!("edge {a}-{b} outside nodes 1..={order}")));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::invalid(format!("duplicate edge {}-{}", e.0, e.1)));
            }
        }
        Ok(Self {
            order,
            edges: set.into_iter().collect(),
            labels: None,
        })
    }

    /// Attach per-edge labels (in sorted edge order).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.edges.len() {
            return Err(Error::invalid("one label per edge required"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The m-membered ring 1-2-…-m-1.
    pub fn ring(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::invalid("a ring needs at least 3 nodes"));
        }
        Self::new(m, (1..=m).map(|i| (i, i % m + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// Four-membered ring with one diagonal: two 3-vertices and two 2-vertices.
    pub fn ring_with_diagonal() -> Self {
        Self::new(4, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]).expect("valid graph")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => l.clone(),
            None => (0..self.edges.len()).map(edge_label).collect(),
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Index of edge {a, b} in [`ClusterGraph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// Neighbor lists indexed by node (index 0 unused).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order];
        for &(a, b) in &self.edges {
            deg[a - 1] += 1;
            deg[b - 1] += 1;
        }
        deg
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.order + 1];
        let mut count = 0;
        for start in 1..=self.order {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Number of independent loops: edges − nodes + components.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.order
    }

    /// Nodes whose removal disconnects the graph (Tarjan low-link search).
    pub fn articulation_points(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.order;
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut is_cut = vec![false; n + 1];
        let mut timer = 0;

        for root in 1..=n {
            if disc[root] != 0 {
                continue;
            }
            timer += 1;
            disc[root] = timer;
            low[root] = timer;
            let mut root_children = 0;
            // (node, parent, next neighbor index)
            let mut stack = vec![(root, 0usize, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.2 < adj[u].len() {
                    let v = adj[u][top.2];
                    top.2 += 1;
                    if disc[v] == 0 {
                        timer += 1;
                        disc[v] = timer;
                        low[v] = timer;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else if v != parent {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if parent != 0 {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (1..=n).filter(|&v| is_cut[v]).collect()
    }

    /// Star graph: connected with no articulation point.
    pub fn is_biconnected(&self) -> bool {
        self.is_connected() && self.articulation_points().is_empty()
    }

    /// The graph with nodes relabeled by `perm` (node i becomes perm[i−1]).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::invalid("permutation length must equal graph order"));
        }
        Self::new(self.order, self.edges.iter().map(|&(a, b)| (perm[a - 1], perm[b - 1])))
    }
}

impl fmt::Display for ClusterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order:{};edges:", self.order)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ClusterGraph {
    type Err = Error;

    /// `order:<n>;edges:<a>-<b>,<a>-<b>,...`
    fn from_str(spec: &str) -> Result<Self> {
        let (order_part, edges_part) = spec
            .split_once(';')
            .ok_or_else(|| Error::parse(0, spec, "expected `order:<n>;edges:<a>-<b>,...`"))?;
        let order_str = order_part
            .strip_prefix("order:")
            .ok_or_else(|| Error::parse(0, order_part, "expected `order:<n>`"))?;
        let order: usize = order_str
            .parse()
            .map_err(|_| Error::parse(6, order_str, "order is not a positive integer"))?;
        let base = order_part.len() + 1;
        let list = edges_part
            .strip_prefix("edges:")
            .ok_or_else(|| Error::parse(base, edges_part, "expected `edges:<a>-<b>,...`"))?;

        let mut edges = Vec::new();
        let mut offset = base + "edges:".len();
        if !list.is_empty() {
            for item in list.split(',') {
                let position = offset;
                offset += item.len() + 1;
                let pair = item.split_once('-').and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
                match pair {
                    Some(e) => edges.push(e),
                    None => return Err(Error::parse(position, item, "expected `<a>-<b>`")),
                }
            }
        }
        Self::new(order, edges).map_err(|e| Error::parse(0, spec, e.to_string()))
    }
}

/// Lexicographic next permutation; false once the last one is reached.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of 1..=n in lexicographic order.
pub(crate) fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        current = if next_permutation(&mut next) { Some(next) } else { None };
        Some(out)
    })
}

/// Size of the node-permutation automorphism group.
pub fn automorphism_order(g: &ClusterGraph) -> Result<usize> {
    if g.order > MAX_AUTOMORPHISM_ORDER {
        return Err(Error::UnsupportedOrder {
            order: g.order,
            min: 2,
            max: MAX_AUTOMORPHISM_ORDER,
        });
    }
    Ok(permutations(g.order)
        .filter(|p| g.edges.iter().all(|&(a, b)| g.has_edge(p[a - 1], p[b - 1])))
        .count())
}

/// An unlabeled star graph together with its number of labeled copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    pub graph: ClusterGraph,
    pub labeled_count: usize,
}

/// Edge-bitmask encoding over the pairs of an n-node graph.
struct PairIndex {
    n: usize,
    index: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl PairIndex {
    fn new(n: usize) -> Self {
        let mut index = vec![vec![usize::MAX; n + 1]; n + 1];
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push((i, j));
            }
        }
        for (slot, &(i, j)) in pairs.iter().enumerate() {
            index[i][j] = slot;
            index[j][i] = slot;
        }
        Self { n, index, pairs }
    }

    fn graph(&self, mask: u32) -> ClusterGraph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        ClusterGraph::new(self.n, edges).expect("valid mask")
    }

    fn permute(&self, mask: u32, perm: &[usize]) -> u32 {
        let mut out = 0;
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out |= 1 << self.index[perm[a - 1]][perm[b - 1]];
            }
        }
        out
    }
}

/// All star graphs on `order` nodes up to isomorphism, with labeled counts.
///
/// Sorted by edge count, then by canonical edge mask.
pub fn enumerate_stars(order: usize) -> Result<Vec<StarGraph>> {
    if !(MIN_STAR_ORDER..=MAX_STAR_ORDER).contains(&order) {
        return Err(Error::UnsupportedOrder {
            order,
            min: MIN_STAR_ORDER,
            max: MAX_STAR_ORDER,
        });
    }
    let pairs = PairIndex::new(order);
    let perms: Vec<Vec<usize>> = permutations(order).collect();
    let total = pairs.pairs.len();

    let mut classes: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for mask in 0u32..(1u32 << total) {
        if !pairs.graph(mask).is_biconnected() {
            continue;
        }
        let canonical = perms.iter().map(|p| pairs.permute(mask, p)).min().expect("non-empty");
        *classes.entry((mask.count_ones(), canonical)).or_default() += 1;
    }
    Ok(classes
        .into_iter()
        .map(|((_, canonical), labeled_count)| StarGraph {
            graph: pairs.graph(canonical),
            labeled_count,
        })
        .collect())
}

/// One term of the boundary expansion of D_1 ∩ … ∩ D_k: particles in
/// `surface` contribute their boundary Σ, the rest their domain D.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexTerm {
    pub surface: Vec<usize>,
    pub domain: Vec<usize>,
}

impl fmt::Display for VertexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.surface.len() + self.domain.len();
        let mut first = true;
        for i in 1..=n {
            if !first {
                f.write_str("∩")?;
            }
            first = false;
            if self.surface.contains(&i) {
                write!(f, "Σ{i}")?;
            } else {
                write!(f, "D{i}")?;
            }
        }
        Ok(())
    }
}

fn subsets_of_size(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, size, &mut Vec::new(), &mut out);
    out
}

fn boundary_terms(k: usize, max_surfaces: usize) -> Vec<VertexTerm> {
    (1..=k.min(max_surfaces))
        .flat_map(|j| subsets_of_size(k, j))
        .map(|surface| {
            let domain = (1..=k).filter(|i| !surface.contains(i)).collect();
            VertexTerm { surface, domain }
        })
        .collect()
}

/// Expansion of ∂(D_1 ∩ … ∩ D_k) in n dimensions. Terms intersecting more
/// than n surfaces vanish and are dropped. Ordered by surface count, then
/// lexicographically.
pub fn boundary_expand(k: usize, n: usize) -> Result<Vec<VertexTerm>> {
    if k < 1 {
        return Err(Error::invalid("boundary expansion needs k >= 1"));
    }
    if n < 2 {
        return Err(Error::invalid("boundary expansion needs dimension n >= 2"));
    }
    Ok(boundary_terms(k, n))
}

/// The expansion without the dimensional truncation (all 2^k − 1 terms).
pub fn boundary_expand_untruncated(k: usize) -> Vec<VertexTerm> {
    boundary_terms(k, k)
}

/// Degree multiset of the diagram, largest first: node i becomes a k-vertex
/// with k its number of f-bonds.
pub fn vertex_split(g: &ClusterGraph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Breadth-first spanning tree rooted at node 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// Parent of each node (index 0 unused; the root has none).
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Nodes in visiting order, root first.
    pub visit_order: Vec<usize>,
}

impl SpanningTree {
    /// Tree edges as (parent, child) in visiting order of the child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.visit_order
            .iter()
            .filter_map(|&c| self.parent[c].map(|p| (p, c)))
            .collect()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }
}

pub fn spanning_tree(g: &ClusterGraph) -> Result<SpanningTree> {
    if !g.is_connected() {
        return Err(Error::invalid("graph is disconnected"));
    }
    let adj = g.adjacency();
    let mut parent = vec![None; g.order + 1];
    let mut depth = vec![0; g.order + 1];
    let mut seen = vec![false; g.order + 1];
    let mut visit_order = Vec::with_capacity(g.order);
    let mut queue = VecDeque::from([1]);
    seen[1] = true;
    while let Some(u) = queue.pop_front() {
        visit_order.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(SpanningTree {
        parent,
        depth,
        visit_order,
    })
}

/// A closed walk given by its node sequence; the walk returns from the last
/// node to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub nodes: Vec<usize>,
}

impl Loop {
    /// Directed steps (from, to), closing back to the first node.
    pub fn steps(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        (0..n).map(|i| (self.nodes[i], self.nodes[(i + 1) % n])).collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Fundamental cycles of a spanning tree, one per non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub loops: Vec<Loop>,
}

impl CycleBasis {
    /// Signed loop coefficients of every edge of `g` (in `g.edges()` order):
    /// +1 if the loop traverses (i, j) from i to j with i < j, −1 for the
    /// reverse direction, 0 if the loop avoids the edge.
    pub fn edge_coefficients(&self, g: &ClusterGraph) -> Vec<Vec<i32>> {
        let mut coeff = vec![vec![0i32; self.loops.len()]; g.edge_count()];
        for (l, lp) in self.loops.iter().enumerate() {
            for (a, b) in lp.steps() {
                let e = g.edge_index(a, b).expect("loop step is an edge");
                coeff[e][l] += if a < b { 1 } else { -1 };
            }
        }
        coeff
    }
}

pub fn cycle_basis(g: &ClusterGraph) -> Result<CycleBasis> {
    let tree = spanning_tree(g)?;
    let mut loops = Vec::new();
    for &(u, v) in g.edges() {
        if tree.contains(u, v) {
            continue;
        }
        // u → … → lca → … → v, closed by the edge v → u
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while tree.depth[a] > tree.depth[b] {
            a = tree.parent[a].expect("non-root");
            up.push(a);
        }
        while tree.depth[b] > tree.depth[a] {
            b = tree.parent[b].expect("non-root");
            down.push(b);
        }
        while a != b {
            a = tree.parent[a].expect("non-root");
            b = tree.parent[b].expect("non-root");
            up.push(a);
            down.push(b);
        }
        down.pop(); // the lca is already on `up`
        down.reverse();
        up.extend(down);
        loops.push(Loop { nodes: up });
    }
    Ok(CycleBasis { loops })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_biconnected(g: &ClusterGraph) -> bool {
        // independent check: removing any single node leaves it connected
        if !g.is_connected() {
            return false;
        }
        if g.order == 2 {
            return true;
        }
        (1..=g.order).all(|drop| {
            let keep: Vec<usize> = (1..=g.order).filter(|&v| v != drop).collect();
            let remap = |v: usize| keep.iter().position(|&k| k == v).unwrap() + 1;
            let edges = g
                .edges()
                .iter()
                .filter(|&&(a, b)| a != drop && b != drop)
                .map(|&(a, b)| (remap(a), remap(b)));
            ClusterGraph::new(g.order - 1, edges).unwrap().is_connected()
        })
    }

    #[test]
    fn graph_literal_round_trip() {
        let g: ClusterGraph = "order:4;edges:1-2,2-3,3-4,4-1,2-4".parse().unwrap();
        assert_eq!(g, ClusterGraph::ring_with_diagonal());
        assert_eq!(g.to_string(), "order:4;edges:1-2,1-4,2-3,2-4,3-4");
        assert_eq!(g.to_string().parse::<ClusterGraph>().unwrap(), g);
        assert_eq!(g.labels(), vec!["A", "B", "C", "D", "E"]);
    }

    #[test]
    fn graph_literal_errors() {
        for bad in [
            "order:4",
            "order:x;edges:1-2",
            "order:3;edges:1-1",
            "order:3;edges:1-2,2-1",
            "order:3;edges:1-4",
            "order:3;edges:1+2",
            "nodes:3;edges:1-2",
        ] {
            assert!(matches!(bad.parse::<ClusterGraph>(), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn star_enumeration_small_orders() {
        let s2 = enumerate_stars(2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!((s2[0].graph.edge_count(), s2[0].labeled_count), (1, 1));

        let s3 = enumerate_stars(3).unwrap();
        assert_eq!(s3.len(), 1);
        assert_eq!((s3[0].graph.edge_count(), s3[0].labeled_count), (3, 1));

        let s4 = enumerate_stars(4).unwrap();
        let summary: Vec<(usize, usize)> = s4.iter().map(|s| (s.graph.edge_count(), s.labeled_count)).collect();
        assert_eq!(summary, vec![(4, 3), (5, 6), (6, 1)]);
    }

    #[test]
    fn star_enumeration_matches_brute_force() {
        // oracle: count labeled biconnected graphs by brute force with the
        // node-removal check, then compare totals and per-class counts.
        for n in 2..=5 {
            let pairs = PairIndex::new(n);
            let brute = (0u32..1 << pairs.pairs.len())
                .filter(|&m| brute_biconnected(&pairs.graph(m)))
                .count();
            let stars = enumerate_stars(n).unwrap();
            let total: usize = stars.iter().map(|s| s.labeled_count).sum();
            assert_eq!(total, brute, "order {n}");
            let fact: usize = (1..=n).product();
            for s in &stars {
                assert!(brute_biconnected(&s.graph));
                assert_eq!(s.labeled_count, fact / automorphism_order(&s.graph).unwrap());
            }
        }
    }

    #[test]
    fn star_counts_orders_five_and_six() {
        // unlabeled 10 / 56, labeled 238 / 11368
        let s5 = enumerate_stars(5).unwrap();
        assert_eq!(s5.len(), 10);
        assert_eq!(s5.iter().map(|s| s.labeled_count).sum::<usize>(), 238);
        let s6 = enumerate_stars(6).unwrap();
        assert_eq!(s6.len(), 56);
        assert_eq!(s6.iter().map(|s| s.labeled_count).sum::<usize>(), 11368);
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(enumerate_stars(1), Err(Error::UnsupportedOrder { .. })));
        assert!(matches!(enumerate_stars(7), Err(Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_order(&ClusterGraph::complete(3).unwrap()).unwrap(), 6);
        assert_eq!(automorphism_order(&ClusterGraph::ring(4).unwrap()).unwrap(), 8);
        assert_eq!(automorphism_order(&ClusterGraph::complete(4).unwrap()).unwrap(), 24);
        assert_eq!(automorphism_order(&ClusterGraph::ring_with_diagonal()).unwrap(), 4);
        assert_eq!(automorphism_order(&ClusterGraph::path(4).unwrap()).unwrap(), 2);
    }

    #[test]
    fn boundary_expansion_terms() {
        let t: Vec<String> = boundary_expand(2, 3).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(t, vec!["Σ1∩D2", "D1∩Σ2", "Σ1∩Σ2"]);

        let t = boundary_expand(4, 3).unwrap();
        assert_eq!(t.len(), 14);
        assert!(t.iter().all(|t| t.surface.len() <= 3));
        assert_eq!(boundary_expand_untruncated(4).len(), 15);

        let t = boundary_expand(1, 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].to_string(), "Σ1");

        assert!(boundary_expand(0, 3).is_err());
        assert!(boundary_expand(2, 1).is_err());
    }

    #[test]
    fn vertex_splits() {
        assert_eq!(vertex_split(&ClusterGraph::ring_with_diagonal()), vec![3, 3, 2, 2]);
        assert_eq!(vertex_split(&ClusterGraph::complete(3).unwrap()), vec![2, 2, 2]);
        assert_eq!(vertex_split(&ClusterGraph::complete(2).unwrap()), vec![1, 1]);
    }

    #[test]
    fn cycle_bases() {
        let tri = cycle_basis(&ClusterGraph::complete(3).unwrap()).unwrap();
        assert_eq!(tri.loops.len(), 1);
        assert_eq!(tri.loops[0].len(), 3);

        let fig = cycle_basis(&ClusterGraph::ring_with_diagonal()).unwrap();
        assert_eq!(fig.loops.len(), 2);

        let path = cycle_basis(&ClusterGraph::path(4).unwrap()).unwrap();
        assert!(path.loops.is_empty());

        let split = ClusterGraph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert!(matches!(cycle_basis(&split), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn loop_steps_are_edges_and_close() {
        for n in 3..=5 {
            for s in enumerate_stars(n).unwrap() {
                let basis = cycle_basis(&s.graph).unwrap();
                assert_eq!(basis.loops.len(), s.graph.cyclomatic_number());
                for lp in &basis.loops {
                    for (a, b) in lp.steps() {
                        assert!(s.graph.has_edge(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn articulation_points_found() {
        // bowtie: two triangles sharing node 3
        let g = ClusterGraph::new(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.articulation_points(), vec![3]);
        assert!(!g.is_biconnected());
        assert_eq!(ClusterGraph::path(4).unwrap().articulation_points(), vec![2, 3]);
    }
}
