//! Independent oracles: brute force over small objects, sharing nothing with
//! the library beyond its data types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use dendrite::dendrite_model::{DendriteModel, VertexId};
use dendrite::labelled_trees::{LabelledTree, OrderLabel, TreeVertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn adjacency(tree: &LabelledTree) -> BTreeMap<u32, Vec<u32>> {
    let mut adj: BTreeMap<u32, Vec<u32>> = tree.vertices.iter().map(|v| (v.id, Vec::new())).collect();
    for &[a, b] in &tree.edges {
        adj.get_mut(&a).unwrap().push(b);
        adj.get_mut(&b).unwrap().push(a);
    }
    adj
}

fn labels(tree: &LabelledTree) -> BTreeMap<u32, OrderLabel> {
    tree.vertices.iter().map(|v| (v.id, v.label)).collect()
}

fn mark_sets(tree: &LabelledTree) -> BTreeMap<u32, Vec<usize>> {
    let mut m: BTreeMap<u32, Vec<usize>> = tree.vertices.iter().map(|v| (v.id, Vec::new())).collect();
    for (i, &v) in tree.marks.iter().enumerate() {
        m.get_mut(&v).unwrap().push(i);
    }
    m
}

fn bfs_order(adj: &BTreeMap<u32, Vec<u32>>, root: u32) -> Vec<(u32, Option<u32>)> {
    let mut order = vec![(root, None)];
    let mut seen = BTreeSet::from([root]);
    let mut i = 0;
    while i < order.len() {
        let v = order[i].0;
        for &w in &adj[&v] {
            if seen.insert(w) {
                order.push((w, Some(v)));
            }
        }
        i += 1;
    }
    order
}

/// Counts bijections `a → b` preserving adjacency, labels and mark sets,
/// with `root_a ↦ root_b`, by backtracking along a BFS order of `a`.
fn count_maps(a: &LabelledTree, root_a: u32, b: &LabelledTree, root_b: u32, stop_at_one: bool) -> u128 {
    if a.vertices.len() != b.vertices.len() {
        return 0;
    }
    let (adj_a, adj_b) = (adjacency(a), adjacency(b));
    let (lab_a, lab_b) = (labels(a), labels(b));
    let (mk_a, mk_b) = (mark_sets(a), mark_sets(b));
    let order = bfs_order(&adj_a, root_a);
    let compatible =
        |u: u32, v: u32| lab_a[&u] == lab_b[&v] && adj_a[&u].len() == adj_b[&v].len() && mk_a[&u] == mk_b[&v];
    if !compatible(root_a, root_b) {
        return 0;
    }
    let mut image: BTreeMap<u32, u32> = BTreeMap::from([(root_a, root_b)]);
    let mut used: BTreeSet<u32> = BTreeSet::from([root_b]);

    fn go(
        k: usize,
        order: &[(u32, Option<u32>)],
        image: &mut BTreeMap<u32, u32>,
        used: &mut BTreeSet<u32>,
        adj_b: &BTreeMap<u32, Vec<u32>>,
        compatible: &dyn Fn(u32, u32) -> bool,
        stop_at_one: bool,
    ) -> u128 {
        if k == order.len() {
            return 1;
        }
        let (v, parent) = order[k];
        let pimg = image[&parent.unwrap()];
        let mut total = 0;
        for &c in &adj_b[&pimg] {
            if used.contains(&c) || !compatible(v, c) {
                continue;
            }
            image.insert(v, c);
            used.insert(c);
            total += go(k + 1, order, image, used, adj_b, compatible, stop_at_one);
            used.remove(&c);
            image.remove(&v);
            if stop_at_one && total > 0 {
                break;
            }
        }
        total
    }
    go(1, &order, &mut image, &mut used, &adj_b, &compatible, stop_at_one)
}

/// Label-preserving automorphisms of `tree` fixing `x`; marks ignored.
pub fn brute_force_stabilizer(tree: &LabelledTree, x: u32) -> u128 {
    let bare = LabelledTree {
        marks: vec![],
        ..tree.clone()
    };
    count_maps(&bare, x, &bare, x, false)
}

/// Isomorphism of marked labelled trees, by trying every image of the first mark.
pub fn brute_force_isomorphic(a: &LabelledTree, b: &LabelledTree) -> bool {
    if a.vertices.len() != b.vertices.len() || a.marks.len() != b.marks.len() {
        return false;
    }
    let root = a.marks.first().copied().unwrap_or(a.vertices[0].id);
    b.vertices.iter().any(|v| count_maps(a, root, b, v.id, true) > 0)
}

fn ahu(adj: &BTreeMap<u32, Vec<u32>>, v: u32, parent: Option<u32>) -> String {
    let mut kids: Vec<String> = adj[&v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| ahu(adj, w, Some(v)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Every unlabelled tree on `1..=max_n` vertices, one per isomorphism class,
/// as edge lists on `0..n`.
pub fn unlabelled_trees(max_n: usize) -> Vec<(usize, Vec<[u32; 2]>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen = BTreeSet::new();
        let mut parent = vec![0u32; n];
        loop {
            let edges: Vec<[u32; 2]> = (1..n as u32).map(|i| [parent[i as usize], i]).collect();
            let mut adj: BTreeMap<u32, Vec<u32>> = (0..n as u32).map(|i| (i, Vec::new())).collect();
            for &[a, b] in &edges {
                adj.get_mut(&a).unwrap().push(b);
                adj.get_mut(&b).unwrap().push(a);
            }
            let code = (0..n as u32).map(|r| ahu(&adj, r, None)).min().unwrap();
            if seen.insert(code) {
                out.push((n, edges));
            }
            let Some(i) = (1..n).rev().find(|&i| (parent[i] as usize) + 1 < i) else {
                break;
            };
            parent[i] += 1;
            parent[i + 1..].fill(0);
        }
    }
    out
}

pub fn tree_from(n: usize, edges: &[[u32; 2]], labels: &[OrderLabel], marks: Vec<u32>) -> LabelledTree {
    LabelledTree {
        vertices: (0..n as u32)
            .map(|id| TreeVertex {
                id,
                label: labels[id as usize],
            })
            .collect(),
        edges: edges.to_vec(),
        marks,
    }
}

/// Random tree on `n` vertices with labels from `pool` and `p` marks.
pub fn random_tree(n: usize, pool: &[OrderLabel], p: usize, rng: &mut impl Rng) -> LabelledTree {
    let edges: Vec<[u32; 2]> = (1..n as u32).map(|i| [rng.gen_range(0..i), i]).collect();
    let labels: Vec<OrderLabel> = (0..n).map(|_| *pool.choose(rng).unwrap()).collect();
    let marks = (0..p).map(|_| rng.gen_range(0..n as u32)).collect();
    tree_from(n, &edges, &labels, marks)
}

/// The same tree with vertex ids permuted and edges/vertices shuffled.
pub fn relabel(tree: &LabelledTree, rng: &mut impl Rng) -> LabelledTree {
    let mut ids: Vec<u32> = tree.vertices.iter().map(|v| v.id).collect();
    let mut fresh: Vec<u32> = ids.iter().map(|i| i * 7 + 100).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<u32, u32> = ids.drain(..).zip(fresh).collect();
    let mut vertices: Vec<TreeVertex> = tree
        .vertices
        .iter()
        .map(|v| TreeVertex {
            id: map[&v.id],
            label: v.label,
        })
        .collect();
    vertices.shuffle(rng);
    let mut edges: Vec<[u32; 2]> = tree
        .edges
        .iter()
        .map(|&[a, b]| {
            if rng.gen() {
                [map[&a], map[&b]]
            } else {
                [map[&b], map[&a]]
            }
        })
        .collect();
    edges.shuffle(rng);
    LabelledTree {
        vertices,
        edges,
        marks: tree.marks.iter().map(|m| map[m]).collect(),
    }
}

/// Path between two model vertices by breadth-first search on the edge list.
pub fn model_path(model: &DendriteModel, x: VertexId, y: VertexId) -> Vec<VertexId> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for [a, b] in model.edges() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([x]);
    let mut seen = BTreeSet::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == y {
            break;
        }
        for &w in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![y];
    while *path.last().unwrap() != x {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Every rooted tree order on `0..n` (one root, arbitrary labels): `n^(n-1)`
/// of them, given as parent arrays.
pub fn all_rooted_tree_orders(n: usize) -> Vec<Vec<Option<u32>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for root in 0..n {
        let mut choice = vec![0usize; n];
        loop {
            let parent: Vec<Option<u32>> = (0..n)
                .map(|i| if i == root { None } else { Some(choice[i] as u32) })
                .collect();
            let acyclic = (0..n).all(|i| {
                let mut cur = i;
                for _ in 0..=n {
                    match parent[cur] {
                        None => return true,
                        Some(p) => cur = p as usize,
                    }
                }
                false
            });
            if acyclic {
                out.push(parent);
            }
            let Some(i) = (0..n).find(|&i| i != root && choice[i] + 1 < n) else {
                break;
            };
            choice[i] += 1;
            for j in (0..i).filter(|&j| j != root) {
                choice[j] = 0;
            }
        }
    }
    out
}

/// `↓x` for every `x`, read off a parent array.
pub fn principal_down_sets(parent: &[Option<u32>]) -> Vec<Vec<u32>> {
    let mut sets: Vec<Vec<u32>> = (0..parent.len())
        .map(|x| {
            let mut down = vec![x as u32];
            let mut cur = parent[x];
            while let Some(p) = cur {
                down.push(p);
                cur = parent[p as usize];
            }
            down.sort_unstable();
            down
        })
        .collect();
    sets.sort();
    sets
}
