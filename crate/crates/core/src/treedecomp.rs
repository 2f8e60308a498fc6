//! Matroid tree-decompositions: a tree plus an arbitrary map from elements to
//! tree vertices. Bags may be empty.
//!
//! A vertex `v` displays the element sets of the components of `T − v`; the
//! rank defect of a displayed set `B` is `r(M) − r(E − B)`, and the node width
//! of `v` is `r(M)` minus the sum of the rank defects it displays.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{elements, full_mask, Matroid, RankFn};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidTree(
                "a tree needs at least one vertex".into(),
            ));
        }
        if edges.len() != vertices - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges on {vertices} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices || u == v {
                return Err(Error::InvalidTree(format!("bad edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let tree = Tree {
            vertices,
            edges,
            adj,
        };
        if tree.component(0, usize::MAX).len() != vertices {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(tree)
    }

    pub fn single() -> Self {
        Tree::new(1, Vec::new()).unwrap()
    }

    pub fn path(vertices: usize) -> Self {
        Tree::new(vertices, (1..vertices).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.vertices > 1 && self.adj[v].len() == 1
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u < self.vertices && self.adj[u].binary_search(&w).is_ok()
    }

    /// Vertices reachable from `start` without passing through `blocked`.
    pub fn component(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![start];
        seen[start] = true;
        if blocked < self.vertices {
            seen[blocked] = true;
        }
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Tree,
    tau: Vec<usize>,
}

impl TreeDecomposition {
    pub fn new(tree: Tree, tau: Vec<usize>) -> Result<Self> {
        if let Some(&v) = tau.iter().find(|&&v| v >= tree.vertex_count()) {
            return Err(Error::NotInTree(v));
        }
        Ok(TreeDecomposition { tree, tau })
    }

    /// Every element in the one bag of a single-vertex tree.
    pub fn single_vertex(n: usize) -> Self {
        TreeDecomposition {
            tree: Tree::single(),
            tau: vec![0; n],
        }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn assignment(&self) -> &[usize] {
        &self.tau
    }

    pub fn element_count(&self) -> usize {
        self.tau.len()
    }

    pub fn bag(&self, v: usize) -> u32 {
        self.tau
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t == v)
            .fold(0, |m, (e, _)| m | (1 << e))
    }

    fn elements_on(&self, vertices: &[usize]) -> u32 {
        let mut on = vec![false; self.tree.vertex_count()];
        for &v in vertices {
            on[v] = true;
        }
        self.tau
            .iter()
            .enumerate()
            .filter(|&(_, &t)| on[t])
            .fold(0, |m, (e, _)| m | (1 << e))
    }

    /// Element sets of the components of `T − v`, one per neighbour of `v`
    /// in increasing order.
    pub fn displayed_sets_vertex(&self, v: usize) -> Result<Vec<u32>> {
        if v >= self.tree.vertex_count() {
            return Err(Error::NotInTree(v));
        }
        Ok(self
            .tree
            .neighbors(v)
            .iter()
            .map(|&u| self.elements_on(&self.tree.component(u, v)))
            .collect())
    }

    /// `(U, W)`: the elements on the `u` side and the `w` side of edge `uw`.
    pub fn displayed_sets_edge(&self, u: usize, w: usize) -> Result<(u32, u32)> {
        if !self.tree.has_edge(u, w) {
            return Err(Error::EdgeNotInTree(u, w));
        }
        let us = self.elements_on(&self.tree.component(u, w));
        let ws = self.elements_on(&self.tree.component(w, u));
        Ok((us, ws))
    }

    /// Moves the listed elements to vertex `v`. Used to extend a decomposition
    /// to new elements.
    pub fn with_elements_at(&self, v: usize, count: usize) -> Result<Self> {
        if v >= self.tree.vertex_count() {
            return Err(Error::NotInTree(v));
        }
        let mut tau = self.tau.clone();
        tau.extend(std::iter::repeat_n(v, count));
        Ok(TreeDecomposition {
            tree: self.tree.clone(),
            tau,
        })
    }
}

pub fn rank_defect<R: RankFn + ?Sized>(m: &R, set: u32) -> usize {
    m.full_rank() - m.rank(m.ground() & !set)
}

pub fn node_width(m: &Matroid, dec: &TreeDecomposition, v: usize) -> Result<usize> {
    let defects: usize = dec
        .displayed_sets_vertex(v)?
        .into_iter()
        .map(|b| rank_defect(m, b))
        .sum();
    Ok(m.full_rank() - defects)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplayedSet {
    pub elements: u32,
    pub rank_defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub node_widths: Vec<usize>,
    pub displayed: Vec<Vec<DisplayedSet>>,
    pub width: usize,
    /// Some edge displays a side of full rank.
    pub spanning_side: bool,
}

pub fn width(m: &Matroid, dec: &TreeDecomposition) -> Result<WidthReport> {
    check_sizes(m, dec)?;
    let r = m.full_rank();
    let mut node_widths = Vec::with_capacity(dec.tree.vertex_count());
    let mut displayed = Vec::with_capacity(dec.tree.vertex_count());
    for v in 0..dec.tree.vertex_count() {
        let sets: Vec<DisplayedSet> = dec
            .displayed_sets_vertex(v)?
            .into_iter()
            .map(|b| DisplayedSet {
                elements: b,
                rank_defect: rank_defect(m, b),
            })
            .collect();
        node_widths.push(r - sets.iter().map(|s| s.rank_defect).sum::<usize>());
        displayed.push(sets);
    }
    let mut spanning_side = false;
    for &(u, w) in dec.tree.edges() {
        let (us, ws) = dec.displayed_sets_edge(u, w)?;
        spanning_side |= m.rank(us) == r || m.rank(ws) == r;
    }
    Ok(WidthReport {
        width: node_widths.iter().copied().max().unwrap_or(0),
        node_widths,
        displayed,
        spanning_side,
    })
}

fn check_sizes(m: &Matroid, dec: &TreeDecomposition) -> Result<()> {
    if dec.element_count() != m.size() {
        Err(Error::Parse(format!(
            "decomposition covers {} elements, matroid has {}",
            dec.element_count(),
            m.size()
        )))
    } else {
        Ok(())
    }
}

/// One reduction: for the first edge (by sorted endpoint pair) with a side
/// contained in the closure of the other, drop that side's subtree and move
/// its elements to the surviving endpoint.
pub fn reduce_step(m: &Matroid, dec: &TreeDecomposition) -> Result<Option<TreeDecomposition>> {
    check_sizes(m, dec)?;
    let mut edges: Vec<(usize, usize)> = dec
        .tree
        .edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let (sa, sb) = dec.displayed_sets_edge(a, b)?;
        let (drop_root, keep) = if sa & !m.closure(sb) == 0 {
            (a, b)
        } else if sb & !m.closure(sa) == 0 {
            (b, a)
        } else {
            continue;
        };
        let dropped = dec.tree.component(drop_root, keep);
        let mut gone = vec![false; dec.tree.vertex_count()];
        for &v in &dropped {
            gone[v] = true;
        }
        let mut relabel = vec![usize::MAX; dec.tree.vertex_count()];
        let mut next = 0;
        for v in 0..dec.tree.vertex_count() {
            if !gone[v] {
                relabel[v] = next;
                next += 1;
            }
        }
        let edges = dec
            .tree
            .edges()
            .iter()
            .filter(|&&(x, y)| !gone[x] && !gone[y])
            .map(|&(x, y)| (relabel[x], relabel[y]))
            .collect();
        let tau = dec
            .tau
            .iter()
            .map(|&t| if gone[t] { relabel[keep] } else { relabel[t] })
            .collect();
        return Ok(Some(TreeDecomposition::new(Tree::new(next, edges)?, tau)?));
    }
    Ok(None)
}

/// Applies [`reduce_step`] until no edge qualifies.
pub fn reduce(m: &Matroid, dec: &TreeDecomposition) -> Result<TreeDecomposition> {
    let mut cur = dec.clone();
    while let Some(next) = reduce_step(m, &cur)? {
        cur = next;
    }
    Ok(cur)
}

/// Same as [`reduce`] but returns every intermediate decomposition, starting
/// with the input.
pub fn reduce_trace(m: &Matroid, dec: &TreeDecomposition) -> Result<Vec<TreeDecomposition>> {
    let mut trace = vec![dec.clone()];
    while let Some(next) = reduce_step(m, trace.last().unwrap())? {
        trace.push(next);
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    SingleVertex,
    /// Path of singleton bags, ordered greedily by connectivity.
    GreedyPath,
    /// Path of singleton bags in column order.
    ColumnPath,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "single" => Strategy::SingleVertex,
            "path" => Strategy::GreedyPath,
            "columns" => Strategy::ColumnPath,
            other => return Err(Error::Parse(format!("unknown strategy {other:?}"))),
        })
    }
}

pub fn heuristic_decomposition(m: &Matroid, strategy: Strategy) -> TreeDecomposition {
    let n = m.size();
    if n == 0 {
        return TreeDecomposition::single_vertex(0);
    }
    let order: Vec<usize> = match strategy {
        Strategy::SingleVertex => return TreeDecomposition::single_vertex(n),
        Strategy::ColumnPath => (0..n).collect(),
        Strategy::GreedyPath => {
            let full = full_mask(n);
            let r = m.full_rank();
            let mut prefix = 0u32;
            let mut order = Vec::with_capacity(n);
            while prefix != full {
                let e = elements(full & !prefix)
                    .min_by_key(|&e| {
                        let a = prefix | (1 << e);
                        m.rank(a) + m.rank(full & !a) - r
                    })
                    .unwrap();
                prefix |= 1 << e;
                order.push(e);
            }
            order
        }
    };
    let mut tau = vec![0; n];
    for (pos, &e) in order.iter().enumerate() {
        tau[e] = pos;
    }
    TreeDecomposition::new(Tree::path(n), tau).unwrap()
}

/// The narrowest of the built-in heuristics.
pub fn best_heuristic(m: &Matroid) -> (TreeDecomposition, usize) {
    [
        Strategy::SingleVertex,
        Strategy::GreedyPath,
        Strategy::ColumnPath,
    ]
    .into_iter()
    .map(|s| {
        let d = heuristic_decomposition(m, s);
        let w = width(m, &d).unwrap().width;
        (d, w)
    })
    .min_by_key(|(_, w)| *w)
    .unwrap()
}

pub const EXACT_MAX_ELEMENTS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTreewidth {
    pub width: usize,
    /// Fewest tree vertices among optimal decompositions found.
    pub vertex_count: usize,
    pub witness: TreeDecomposition,
}

/// Canonical string of the subtree at `v` hanging away from `parent`.
fn rooted_code(tree: &Tree, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = tree
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(tree, w, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

fn canonical_code(tree: &Tree) -> String {
    (0..tree.vertex_count())
        .map(|v| rooted_code(tree, v, usize::MAX))
        .min()
        .unwrap()
}

/// One representative of every unlabeled tree on `vertices` vertices.
pub fn nonisomorphic_trees(vertices: usize) -> Vec<Tree> {
    if vertices <= 2 {
        return vec![Tree::path(vertices.max(1))];
    }
    let mut found: BTreeMap<String, Tree> = BTreeMap::new();
    let len = vertices - 2;
    let mut seq = vec![0usize; len];
    loop {
        let tree = prufer_tree(&seq, vertices);
        found.entry(canonical_code(&tree)).or_insert(tree);
        let mut i = 0;
        while i < len && seq[i] == vertices - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
        seq[i] += 1;
    }
    found.into_values().collect()
}

fn prufer_tree(seq: &[usize], vertices: usize) -> Tree {
    let mut degree = vec![1usize; vertices];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(vertices - 1);
    for &s in seq {
        let leaf = (0..vertices).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..vertices).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(vertices, edges).unwrap()
}

struct Search<'a> {
    rank: &'a [usize],
    full: u32,
    r: usize,
    n: usize,
    // per vertex: vertex masks of the components of T − v
    components: Vec<Vec<u32>>,
    leaves: Vec<usize>,
    tau: Vec<usize>,
    // element mask currently assigned to each tree vertex
    bags: Vec<u32>,
    best: usize,
    best_tau: Option<Vec<usize>>,
}

impl Search<'_> {
    fn rd(&self, set: u32) -> usize {
        self.r - self.rank[(self.full & !set) as usize]
    }

    // Lower bound on the final width: unassigned elements may still join any
    // displayed set, and rank defect only grows with the set.
    fn lower_bound_reaches_best(&self, unassigned: u32) -> bool {
        for comps in &self.components {
            let defects: usize = comps
                .iter()
                .map(|&vs| {
                    let placed = elements(vs).fold(0, |m, t| m | self.bags[t]);
                    self.rd(placed | unassigned)
                })
                .sum();
            if self.r - defects.min(self.r) >= self.best {
                return true;
            }
        }
        false
    }

    fn recurse(&mut self, e: usize, first_choices: &[usize]) {
        let unassigned = self.full & !((1u32 << e) - 1);
        let empty_leaves = self.leaves.iter().filter(|&&v| self.bags[v] == 0).count();
        if empty_leaves > self.n - e {
            return;
        }
        if self.lower_bound_reaches_best(unassigned) {
            return;
        }
        if e == self.n {
            let width = self
                .components
                .iter()
                .map(|comps| {
                    let defects: usize = comps
                        .iter()
                        .map(|&vs| self.rd(elements(vs).fold(0, |m, t| m | self.bags[t])))
                        .sum();
                    self.r - defects
                })
                .max()
                .unwrap_or(0);
            self.best = width;
            self.best_tau = Some(self.tau.clone());
            return;
        }
        let choices: Vec<usize> = if e == 0 {
            first_choices.to_vec()
        } else {
            (0..self.components.len()).collect()
        };
        for v in choices {
            self.tau[e] = v;
            self.bags[v] |= 1 << e;
            self.recurse(e + 1, first_choices);
            self.bags[v] &= !(1 << e);
            if self.best == 0 {
                return;
            }
        }
    }
}

/// Minimum width over all tree-decompositions whose tree has at most
/// `|E(M)|` vertices.
pub fn exact_treewidth_small(m: &Matroid) -> Result<ExactTreewidth> {
    let n = m.size();
    if n > EXACT_MAX_ELEMENTS {
        return Err(Error::TooLarge(format!(
            "exact tree-width needs at most {EXACT_MAX_ELEMENTS} elements, got {n}"
        )));
    }
    let full = full_mask(n);
    let rank: Vec<usize> = (0..=full).map(|s| m.rank(s)).collect();
    let r = m.full_rank();
    let mut best = ExactTreewidth {
        width: r,
        vertex_count: 1,
        witness: TreeDecomposition::single_vertex(n),
    };
    for vertices in 2..=n {
        for tree in nonisomorphic_trees(vertices) {
            let components: Vec<Vec<u32>> = (0..vertices)
                .map(|v| {
                    tree.neighbors(v)
                        .iter()
                        .map(|&u| tree.component(u, v).iter().fold(0u32, |m, &t| m | (1 << t)))
                        .collect()
                })
                .collect();
            // element 0 only needs one vertex per automorphism orbit
            let mut orbit_reps: HashMap<String, usize> = HashMap::new();
            for v in 0..vertices {
                orbit_reps
                    .entry(rooted_code(&tree, v, usize::MAX))
                    .or_insert(v);
            }
            let mut first: Vec<usize> = orbit_reps.into_values().collect();
            first.sort_unstable();
            let mut search = Search {
                rank: &rank,
                full,
                r,
                n,
                components,
                leaves: (0..vertices).filter(|&v| tree.is_leaf(v)).collect(),
                tau: vec![0; n],
                bags: vec![0; vertices],
                best: best.width,
                best_tau: None,
            };
            search.recurse(0, &first);
            if let Some(tau) = search.best_tau {
                best = ExactTreewidth {
                    width: search.best,
                    vertex_count: vertices,
                    witness: TreeDecomposition::new(tree.clone(), tau)?,
                };
            }
            if best.width == 0 {
                return Ok(best);
            }
        }
    }
    Ok(best)
}

/// A ten-vertex decomposition of `U_{11,16}` whose vertex 3 has a one-element
/// bag and displays four sets of sizes 6, 3, 3, 3.
pub fn sample_decomposition_u11_16() -> (Matroid, TreeDecomposition) {
    let m = Matroid::uniform(11, 16).unwrap();
    // v0-v1-v2-v3, v3-v4-v5, v3-v6-v7-v8, v3-v9
    let tree = Tree::new(
        10,
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (3, 6),
            (6, 7),
            (7, 8),
            (3, 9),
        ],
    )
    .unwrap();
    let sizes = [2, 2, 2, 1, 2, 1, 1, 1, 1, 3];
    let tau = sizes
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v, k))
        .collect();
    (m, TreeDecomposition::new(tree, tau).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::tests::fano;

    #[test]
    fn tree_validation() {
        assert!(Tree::new(3, vec![(0, 1)]).is_err());
        assert!(Tree::new(3, vec![(0, 1), (0, 1)]).is_err());
        assert!(Tree::new(2, vec![(0, 0)]).is_err());
        assert!(Tree::new(0, vec![]).is_err());
        assert!(Tree::new(4, vec![(0, 1), (2, 3), (1, 0)]).is_err());
    }

    #[test]
    fn displayed_sets() {
        let d = TreeDecomposition::single_vertex(3);
        assert!(d.displayed_sets_vertex(0).unwrap().is_empty());
        assert_eq!(d.displayed_sets_vertex(1), Err(Error::NotInTree(1)));

        let path = TreeDecomposition::new(Tree::path(16), (0..16).collect()).unwrap();
        for i in 0..15 {
            let (u, w) = path.displayed_sets_edge(i, i + 1).unwrap();
            assert_eq!(u, (1 << (i + 1)) - 1);
            assert_eq!(w, full_mask(16) & !u);
        }
        assert_eq!(
            path.displayed_sets_edge(0, 2),
            Err(Error::EdgeNotInTree(0, 2))
        );
    }

    #[test]
    fn sample_u11_16_vertex_widths() {
        let (m, d) = sample_decomposition_u11_16();
        let sets = d.displayed_sets_vertex(3).unwrap();
        assert_eq!(sets.len(), 4);
        let rds: Vec<usize> = sets.iter().map(|&b| rank_defect(&m, b)).collect();
        assert_eq!(rds, vec![1, 0, 0, 0]);
        assert_eq!(d.bag(3).count_ones(), 1);
        assert_eq!(node_width(&m, &d, 3).unwrap(), 10);
        assert_eq!(
            d.displayed_sets_vertex(3).unwrap()[2],
            d.elements_on(&[6, 7, 8])
        );
    }

    #[test]
    fn singleton_path_of_u11_16_has_width_six() {
        let m = Matroid::uniform(11, 16).unwrap();
        let path = TreeDecomposition::new(Tree::path(16), (0..16).collect()).unwrap();
        assert_eq!(width(&m, &path).unwrap().width, 6);
        assert_eq!(
            width(&m, &heuristic_decomposition(&m, Strategy::GreedyPath))
                .unwrap()
                .width,
            6
        );
    }

    #[test]
    fn rank_defect_edges() {
        let m = fano();
        assert_eq!(rank_defect(&m, 0), 0);
        assert_eq!(rank_defect(&m, 0x7f), 3);
    }

    #[test]
    fn single_vertex_width_is_rank() {
        let m = fano();
        let d = TreeDecomposition::single_vertex(7);
        assert_eq!(width(&m, &d).unwrap().width, 3);
        assert_eq!(node_width(&m, &d, 0).unwrap(), 3);
    }

    #[test]
    fn reduce_examples() {
        // empty leaf is removed
        let m = fano();
        let tree = Tree::new(2, vec![(0, 1)]).unwrap();
        let d = TreeDecomposition::new(tree, vec![0; 7]).unwrap();
        let r = reduce(&m, &d).unwrap();
        assert_eq!(r.tree().vertex_count(), 1);

        let (m, d) = sample_decomposition_u11_16();
        let before = width(&m, &d).unwrap().width;
        let r = reduce(&m, &d).unwrap();
        assert!(r.tree().vertex_count() < 10);
        assert!(width(&m, &r).unwrap().width <= before);

        let m = Matroid::uniform(11, 16).unwrap();
        let path = TreeDecomposition::new(Tree::path(16), (0..16).collect()).unwrap();
        let r = reduce(&m, &path).unwrap();
        assert!(width(&m, &r).unwrap().width <= 6);
        for &(u, w) in r.tree().edges() {
            let (a, b) = r.displayed_sets_edge(u, w).unwrap();
            assert!(a & !m.closure(b) != 0 && b & !m.closure(a) != 0);
        }
        assert_eq!(reduce_step(&m, &r).unwrap(), None);
    }

    #[test]
    fn tree_enumeration_counts() {
        // OEIS A000055
        let counts: Vec<usize> = (1..=8).map(|v| nonisomorphic_trees(v).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn exact_examples() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        assert_eq!(exact_treewidth_small(&u25).unwrap().width, 2);
        let pg = fano();
        let ex = exact_treewidth_small(&pg).unwrap();
        assert_eq!((ex.width, ex.vertex_count), (3, 1));
        let u11 = Matroid::uniform(1, 1).unwrap();
        assert_eq!(exact_treewidth_small(&u11).unwrap().width, 1);
        let free = Matroid::uniform(4, 4).unwrap();
        let ex = exact_treewidth_small(&free).unwrap();
        assert_eq!(ex.width, 1);
        assert_eq!(width(&free, &ex.witness).unwrap().width, 1);
        assert!(matches!(
            exact_treewidth_small(&Matroid::uniform(2, 8).unwrap()),
            Err(Error::TooLarge(_))
        ));
    }
}
