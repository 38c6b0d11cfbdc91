//! Tree decompositions of the cell adjacency graph: an exact subset dynamic
//! program for small graphs, a min-fill elimination heuristic for the rest,
//! and conversion to nice form.

use serde::Serialize;
use std::collections::BTreeSet;

/// Simple undirected graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct Graph {
    pub n: usize,
    pub adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// True iff the graph is the cycle C_n (n >= 3).
    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && self.edge_count() == self.n
            && self.adj.iter().all(|a| a.len() == 2)
            && self.components().len() == 1
    }
}

/// Rooted tree decomposition. Node 0 is the root; `parent[0]` is unused.
#[derive(Clone, Debug, Serialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<usize>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for i in 1..self.bags.len() {
            ch[self.parent[i]].push(i);
        }
        ch
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// Nice tree decomposition: every node is a leaf, a single-vertex
/// introduce/forget step, or a join of equal bags. The root bag is empty.
#[derive(Clone, Debug, Serialize)]
pub struct NiceTreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<usize>,
    pub kind: Vec<NodeKind>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for i in 0..self.bags.len() {
            if i != self.root {
                ch[self.parent[i]].push(i);
            }
        }
        ch
    }

    /// Bottom-up evaluation order (children before parents).
    pub fn topo_order(&self) -> Vec<usize> {
        let ch = self.children();
        let mut order = Vec::with_capacity(self.bags.len());
        let mut stack = vec![(self.root, false)];
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                order.push(u);
            } else {
                stack.push((u, true));
                for &c in &ch[u] {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

/// Checks the three decomposition axioms against `g`.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> bool {
    validate_cover_and_connect(&td.bags, &tree_edges(&td.parent, 0), g)
}

pub fn validate_nice(ntd: &NiceTreeDecomposition, g: &Graph) -> bool {
    // Shape constraints per node kind.
    let ch = ntd.children();
    for i in 0..ntd.bags.len() {
        let ok = match ntd.kind[i] {
            NodeKind::Leaf => ch[i].is_empty() && ntd.bags[i].len() == 1,
            NodeKind::Introduce(v) => {
                ch[i].len() == 1 && {
                    let c = ch[i][0];
                    let mut expect = ntd.bags[c].clone();
                    expect.push(v);
                    expect.sort();
                    expect.dedup();
                    !ntd.bags[c].contains(&v)
                        && expect.len() == ntd.bags[c].len() + 1
                        && expect == ntd.bags[i]
                }
            }
            NodeKind::Forget(v) => {
                ch[i].len() == 1 && {
                    let c = ch[i][0];
                    let expect: Vec<usize> =
                        ntd.bags[c].iter().copied().filter(|&u| u != v).collect();
                    ntd.bags[c].contains(&v) && expect == ntd.bags[i]
                }
            }
            NodeKind::Join => {
                ch[i].len() == 2 && ch[i].iter().all(|&c| ntd.bags[c] == ntd.bags[i])
            }
        };
        if !ok {
            return false;
        }
    }
    if !ntd.bags[ntd.root].is_empty() {
        return false;
    }
    let edges: Vec<(usize, usize)> = (0..ntd.bags.len())
        .filter(|&i| i != ntd.root)
        .map(|i| (ntd.parent[i], i))
        .collect();
    validate_cover_and_connect(&ntd.bags, &edges, g)
}

fn tree_edges(parent: &[usize], root: usize) -> Vec<(usize, usize)> {
    (0..parent.len())
        .filter(|&i| i != root)
        .map(|i| (parent[i], i))
        .collect()
}

fn validate_cover_and_connect(bags: &[Vec<usize>], edges: &[(usize, usize)], g: &Graph) -> bool {
    // Every vertex appears and its nodes induce a connected subtree.
    let mut nodes_of: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n {
                return false;
            }
            nodes_of[v].push(i);
        }
    }
    if nodes_of.iter().any(|ns| ns.is_empty()) {
        return false;
    }
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); bags.len()];
    for &(a, b) in edges {
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    for v in 0..g.n {
        let member: BTreeSet<usize> = nodes_of[v].iter().copied().collect();
        let start = nodes_of[v][0];
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &tree_adj[u] {
                if member.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != member.len() {
            return false;
        }
    }
    // Every graph edge covered by some bag.
    for (u, v) in g.edges() {
        let covered = bags.iter().any(|bag| bag.contains(&u) && bag.contains(&v));
        if !covered {
            return false;
        }
    }
    true
}

/// Decomposes `g`: exact minimum width via a subset dynamic program when
/// n <= 12, min-fill elimination otherwise. Components are handled by the
/// elimination framework uniformly; their subtrees end up joined under the
/// overall root.
pub fn decompose(g: &Graph) -> TreeDecomposition {
    assert!(g.n > 0, "decomposition of the empty graph");
    let order = if g.n <= 12 {
        exact_elimination_order(g)
    } else {
        min_fill_order(g)
    };
    decomposition_from_elimination(g, &order)
}

/// Exact treewidth via the elimination-order subset DP: opt(S) is the least
/// possible maximum fill-degree over orders eliminating exactly S first.
fn exact_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let full: u32 = (1u32 << n) - 1;
    // Fill-degree of v when S \ {v}... callers pass the already-eliminated
    // set: neighbors of v outside `s`, counting paths through `s`.
    let deg = |s: u32, v: usize| -> usize {
        let mut seen: u32 = (1 << v) | s & 0; // placeholder to keep types
        seen = 1 << v;
        let mut stack = vec![v];
        let mut counted: u32 = 0;
        let mut count = 0usize;
        while let Some(u) = stack.pop() {
            for &w in &g.adj[u] {
                let bit = 1u32 << w;
                if seen & bit != 0 {
                    continue;
                }
                seen |= bit;
                if s & bit != 0 {
                    stack.push(w);
                } else if counted & bit == 0 {
                    counted |= bit;
                    count += 1;
                }
            }
        }
        count
    };
    let mut opt = vec![usize::MAX; (full as usize) + 1];
    let mut pick = vec![usize::MAX; (full as usize) + 1];
    opt[0] = 0;
    for s in 1..=(full as usize) {
        let su = s as u32;
        let mut best = usize::MAX;
        let mut best_v = usize::MAX;
        for v in 0..n {
            if su & (1 << v) == 0 {
                continue;
            }
            let prev = opt[(su ^ (1 << v)) as usize];
            if prev == usize::MAX {
                continue;
            }
            let d = deg(su ^ (1 << v), v);
            let cost = prev.max(d);
            if cost < best || (cost == best && v < best_v) {
                best = cost;
                best_v = v;
            }
        }
        opt[s] = best;
        pick[s] = best_v;
    }
    // pick[S] is eliminated last within S; unwind from the full set.
    let mut order = vec![0usize; n];
    let mut s = full as usize;
    for slot in (0..n).rev() {
        let v = pick[s];
        order[slot] = v;
        s ^= 1 << v;
    }
    order
}

/// Min-fill heuristic: repeatedly eliminate the vertex adding the fewest
/// fill edges, ties broken by lowest id.
fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut adj: Vec<BTreeSet<usize>> = g.adj.clone();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let mut best = (usize::MAX, usize::MAX);
        for &v in &alive {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0usize;
            for i in 0..nb.len() {
                for j in (i + 1)..nb.len() {
                    if !adj[nb[i]].contains(&nb[j]) {
                        fill += 1;
                    }
                }
            }
            if fill < best.0 {
                best = (fill, v);
            }
        }
        let v = best.1;
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        }
        for &u in &nb {
            adj[u].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Standard decomposition from an elimination order: bag(v) = v plus its
/// later neighbors in the fill graph; bag(v)'s parent is the bag of the
/// earliest-eliminated later neighbor.
fn decomposition_from_elimination(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n;
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = g.adj.clone();
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut later_of: Vec<Option<usize>> = vec![None; n];
    for &v in order {
        let nb: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort();
        bags[pos[v]] = bag;
        later_of[pos[v]] = nb.iter().copied().min_by_key(|&u| pos[u]);
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        }
    }
    // The bag of the last-eliminated vertex in each component is a root;
    // hang extra roots under the overall last bag (still a valid tree).
    let mut parent = vec![usize::MAX; n];
    let mut roots = Vec::new();
    for i in 0..n {
        match later_of[i] {
            Some(u) => parent[i] = pos[u],
            None => roots.push(i),
        }
    }
    let root = *roots.last().unwrap();
    for &r in &roots {
        if r != root {
            parent[r] = root;
        }
    }
    reroot(bags, parent, root)
}

fn reroot(bags: Vec<Vec<usize>>, parent: Vec<usize>, root: usize) -> TreeDecomposition {
    let n = bags.len();
    let mut map = vec![usize::MAX; n];
    let mut order = vec![root];
    map[root] = 0;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        if i != root {
            children[parent[i]].push(i);
        }
    }
    let mut idx = 0;
    while idx < order.len() {
        let u = order[idx];
        idx += 1;
        for &c in &children[u] {
            map[c] = order.len();
            order.push(c);
        }
    }
    let mut new_bags = vec![Vec::new(); n];
    let mut new_parent = vec![usize::MAX; n];
    for (new_id, &old) in order.iter().enumerate() {
        new_bags[new_id] = bags[old].clone();
        if old != root {
            new_parent[new_id] = map[parent[old]];
        }
    }
    new_parent[0] = 0;
    TreeDecomposition {
        bags: new_bags,
        parent: new_parent,
    }
}

/// Converts to nice form without increasing the width. The root bag is
/// drained by a forget chain so the answer is read at one empty root state.
pub fn make_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let mut out = NiceBuilder::default();
    let children = td.children();
    let top = build_nice(td, &children, 0, &mut out);
    let mut bag = td.bags[0].clone();
    bag.sort();
    let mut cur = top;
    while let Some(v) = bag.pop() {
        cur = out.add(bag.clone(), NodeKind::Forget(v), vec![cur]);
    }
    let root = cur;
    let mut parent = vec![usize::MAX; out.bags.len()];
    for (i, ch) in out.children.iter().enumerate() {
        for &c in ch {
            parent[c] = i;
        }
    }
    parent[root] = root;
    NiceTreeDecomposition {
        bags: out.bags,
        parent,
        kind: out.kind,
        root,
    }
}

#[derive(Default)]
struct NiceBuilder {
    bags: Vec<Vec<usize>>,
    kind: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl NiceBuilder {
    fn add(&mut self, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        let id = self.bags.len();
        self.bags.push(bag);
        self.kind.push(kind);
        self.children.push(children);
        id
    }

    /// Leaf-anchored chain building the sorted bag from scratch.
    fn chain_up_from_empty(&mut self, bag: &[usize]) -> usize {
        assert!(!bag.is_empty());
        let mut sorted = bag.to_vec();
        sorted.sort();
        let mut cur = self.add(vec![sorted[0]], NodeKind::Leaf, vec![]);
        let mut acc = vec![sorted[0]];
        for &v in &sorted[1..] {
            acc.push(v);
            let mut b = acc.clone();
            b.sort();
            cur = self.add(b, NodeKind::Introduce(v), vec![cur]);
        }
        cur
    }

    /// Forget/introduce chain transforming bag `from` into bag `to`.
    fn chain_between(&mut self, below: usize, from: &[usize], to: &[usize]) -> usize {
        let from_set: BTreeSet<usize> = from.iter().copied().collect();
        let to_set: BTreeSet<usize> = to.iter().copied().collect();
        let mut cur = below;
        let mut acc = from_set.clone();
        for &v in from_set.difference(&to_set) {
            acc.remove(&v);
            cur = self.add(acc.iter().copied().collect(), NodeKind::Forget(v), vec![cur]);
        }
        for &v in to_set.difference(&from_set) {
            acc.insert(v);
            cur = self.add(
                acc.iter().copied().collect(),
                NodeKind::Introduce(v),
                vec![cur],
            );
        }
        cur
    }
}

fn build_nice(
    td: &TreeDecomposition,
    children: &[Vec<usize>],
    node: usize,
    out: &mut NiceBuilder,
) -> usize {
    let mut bag = td.bags[node].clone();
    bag.sort();
    let kids = &children[node];
    if kids.is_empty() {
        return out.chain_up_from_empty(&bag);
    }
    // Transform each child subtree's top bag into this node's bag, then join.
    let mut tops = Vec::new();
    for &c in kids {
        let sub = build_nice(td, children, c, out);
        let mut cbag = td.bags[c].clone();
        cbag.sort();
        let adjusted = out.chain_between(sub, &cbag, &bag);
        tops.push(adjusted);
    }
    let mut cur = tops[0];
    for &t in &tops[1..] {
        cur = out.add(bag.clone(), NodeKind::Join, vec![cur, t]);
    }
    cur
}

/// JSON-friendly dump of a nice decomposition for debugging.
pub fn dump_nice(ntd: &NiceTreeDecomposition) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = (0..ntd.bags.len())
        .map(|i| {
            serde_json::json!({
                "node": i,
                "kind": format!("{:?}", ntd.kind[i]),
                "bag": ntd.bags[i],
                "parent": if i == ntd.root { serde_json::Value::Null } else { serde_json::json!(ntd.parent[i]) },
            })
        })
        .collect();
    serde_json::json!({ "root": ntd.root, "width": ntd.width(), "nodes": nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        g.add_edge(n - 1, 0);
        g
    }

    fn k2() -> Graph {
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        g
    }

    #[test]
    fn k2_width_one() {
        let g = k2();
        let td = decompose(&g);
        assert!(validate(&td, &g));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn paths_have_width_one() {
        for n in 2..8 {
            let g = path(n);
            let td = decompose(&g);
            assert!(validate(&td, &g));
            assert_eq!(td.width(), 1);
        }
    }

    #[test]
    fn cycles_have_width_two() {
        for n in 3..9 {
            let g = cycle(n);
            let td = decompose(&g);
            assert!(validate(&td, &g));
            assert_eq!(td.width(), 2);
        }
    }

    #[test]
    fn nice_form_preserves_width_and_validates() {
        for g in [k2(), path(5), cycle(6)] {
            let td = decompose(&g);
            let ntd = make_nice(&td);
            assert!(validate_nice(&ntd, &g));
            assert_eq!(ntd.width(), td.width());
            assert!(ntd.bags[ntd.root].is_empty());
        }
    }

    #[test]
    fn invalid_decompositions_rejected() {
        let g = k2();
        // Missing edge cover.
        let td = TreeDecomposition {
            bags: vec![vec![0], vec![1]],
            parent: vec![0, 0],
        };
        assert!(!validate(&td, &g));
        // Disconnected vertex subtree: vertex 0 in non-adjacent nodes 0 and 2.
        let mut g3 = path(3);
        g3.add_edge(0, 2);
        let td2 = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            parent: vec![0, 0, 1],
        };
        assert!(!validate(&td2, &g3));
    }

    #[test]
    fn random_graphs_validate_and_nice_preserves_width() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.random_range(2..9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let td = decompose(&g);
            assert!(validate(&td, &g), "invalid for {:?}", g.edges());
            let ntd = make_nice(&td);
            assert!(validate_nice(&ntd, &g));
            assert_eq!(ntd.width(), td.width());
        }
    }

    #[test]
    fn heuristic_at_least_exact_on_small() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.random_range(3..10);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let exact = decomposition_from_elimination(&g, &exact_elimination_order(&g));
            let heur = decomposition_from_elimination(&g, &min_fill_order(&g));
            assert!(validate(&exact, &g));
            assert!(validate(&heur, &g));
            assert!(heur.width() >= exact.width());
        }
    }
}
