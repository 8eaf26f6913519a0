//! The dual graph of a multicurve: one vertex per component of the cut surface, one edge per curve.
//! Canonical forms, contractions and isomorphisms of these graphs index multicurve types.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Topology of one cut component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
    /// Puncture labels carried by this component; empty when punctures are unlabeled.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub puncture_labels: Vec<u32>,
}

impl VertexLabel {
    fn key(&self) -> (Reverse<u32>, u32, u32, &[u32]) {
        (Reverse(self.genus), self.punctures, self.boundary, &self.puncture_labels)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64 - self.boundary as i64
    }

    fn render(&self) -> String {
        if self.puncture_labels.is_empty() {
            format!("({},{},{})", self.genus, self.punctures, self.boundary)
        } else {
            let labels: Vec<String> = self.puncture_labels.iter().map(|l| l.to_string()).collect();
            format!("({},{{{}}},{})", self.genus, labels.join(","), self.boundary)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MulticurveGraph {
    pub vertices: Vec<VertexLabel>,
    /// Edge `i` joins the two sides of curve `i`.
    pub edges: Vec<(usize, usize)>,
}

/// A canonically ordered copy of a graph together with the relabelling that produced it.
#[derive(Clone, Debug)]
pub struct CanonicalGraph {
    pub graph: MulticurveGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

fn norm(e: (usize, usize)) -> (usize, usize) {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

/// Calls `f` on every permutation of `items` (Heap's algorithm).
fn for_each_permutation(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn heap(k: usize, a: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(a);
            return;
        }
        heap(k - 1, a, f);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, f);
        }
    }
    let n = items.len();
    heap(n, items, f);
}

/// Enumerates all maps choosing one permutation per group; `f` receives the concatenated
/// images aligned with the concatenated groups.
fn for_each_group_permutation(groups: &[Vec<usize>], f: &mut dyn FnMut(&[Vec<usize>])) {
    fn rec(i: usize, groups: &[Vec<usize>], chosen: &mut Vec<Vec<usize>>, f: &mut dyn FnMut(&[Vec<usize>])) {
        if i == groups.len() {
            f(chosen);
            return;
        }
        let mut items = groups[i].clone();
        for_each_permutation(&mut items, &mut |p| {
            chosen.push(p.to_vec());
            rec(i + 1, groups, chosen, f);
            chosen.pop();
        });
    }
    rec(0, groups, &mut Vec::new(), f);
}

impl MulticurveGraph {
    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.iter().map(VertexLabel::euler_characteristic).sum()
    }

    fn sorted_vertex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].key().cmp(&self.vertices[b].key()));
        order
    }

    /// Positions in canonical order grouped by equal labels.
    fn label_groups(&self, order: &[usize]) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (pos, &v) in order.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if self.vertices[order[g[0]]] == self.vertices[v] => g.push(pos),
                _ => groups.push(vec![pos]),
            }
        }
        groups
    }

    pub fn canonical(&self) -> CanonicalGraph {
        let order = self.sorted_vertex_order();
        let groups = self.label_groups(&order);
        let n = self.vertices.len();
        let mut best: Option<(Vec<(usize, usize)>, Vec<usize>)> = None;
        for_each_group_permutation(&groups, &mut |perms| {
            // positions in group g are assigned the old vertices order[perm[..]]
            let mut vmap = vec![0usize; n];
            for (g, p) in groups.iter().zip(perms) {
                for (&pos, &src) in g.iter().zip(p) {
                    vmap[order[src]] = pos;
                }
            }
            let mut es: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| norm((vmap[u], vmap[v]))).collect();
            es.sort();
            if best.as_ref().is_none_or(|(b, _)| es < *b) {
                best = Some((es, vmap));
            }
        });
        let (edges, vertex_map) = best.unwrap_or_default();
        let mut vertices = vec![self.vertices.first().cloned().unwrap_or(VertexLabel {
            genus: 0,
            punctures: 0,
            boundary: 0,
            puncture_labels: vec![],
        }); n];
        for (old, &new) in vertex_map.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let mut used = vec![false; edges.len()];
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            let e = norm((vertex_map[u], vertex_map[v]));
            let k = (0..edges.len()).find(|&k| !used[k] && edges[k] == e).expect("edge present");
            used[k] = true;
            edge_map.push(k);
        }
        CanonicalGraph { graph: MulticurveGraph { vertices, edges }, vertex_map, edge_map }
    }

    /// Remove edge `e`, merging its endpoints (or closing a handle if it is a loop).
    /// Remaining edges keep their relative order.
    pub fn contract(&self, e: usize) -> MulticurveGraph {
        let (u, v) = self.edges[e];
        let mut vertices = self.vertices.clone();
        let remap: Vec<usize>;
        if u == v {
            vertices[u].genus += 1;
            vertices[u].boundary -= 2;
            remap = (0..vertices.len()).collect();
        } else {
            let (keep, drop) = (u.min(v), u.max(v));
            let other = vertices[drop].clone();
            let k = &mut vertices[keep];
            k.genus += other.genus;
            k.punctures += other.punctures;
            k.boundary = k.boundary + other.boundary - 2;
            k.puncture_labels.extend(other.puncture_labels);
            k.puncture_labels.sort_unstable();
            vertices.remove(drop);
            remap = (0..self.vertices.len())
                .map(|x| if x == drop { keep } else if x > drop { x - 1 } else { x })
                .collect();
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (remap[a], remap[b]))
            .collect();
        MulticurveGraph { vertices, edges }
    }

    /// Edge permutations induced by automorphisms (vertex permutations preserving labels and
    /// incidence, combined with arbitrary permutations of parallel edges).
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let c = self.canonical();
        let auts = c.graph.canonical_automorphisms();
        let mut inv = vec![0usize; c.edge_map.len()];
        for (i, &k) in c.edge_map.iter().enumerate() {
            inv[k] = i;
        }
        auts.into_iter()
            .map(|a| (0..self.edges.len()).map(|i| inv[a[c.edge_map[i]]]).collect())
            .collect()
    }

    /// Edge bijections `self -> other` induced by graph isomorphisms; empty if not isomorphic.
    pub fn isomorphisms(&self, other: &MulticurveGraph) -> Vec<Vec<usize>> {
        let cs = self.canonical();
        let co = other.canonical();
        if cs.graph != co.graph {
            return Vec::new();
        }
        let mut inv = vec![0usize; co.edge_map.len()];
        for (i, &k) in co.edge_map.iter().enumerate() {
            inv[k] = i;
        }
        cs.graph
            .canonical_automorphisms()
            .into_iter()
            .map(|a| (0..self.edges.len()).map(|i| inv[a[cs.edge_map[i]]]).collect())
            .collect()
    }

    /// Automorphisms of a graph already in canonical form, as edge permutations.
    fn canonical_automorphisms(&self) -> Vec<Vec<usize>> {
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        let groups = self.label_groups(&order);
        let mut out = Vec::new();
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, &e) in self.edges.iter().enumerate() {
            classes.entry(norm(e)).or_default().push(i);
        }
        for_each_group_permutation(&groups, &mut |perms| {
            let mut vmap = vec![0usize; self.vertices.len()];
            for (g, p) in groups.iter().zip(perms) {
                for (&pos, &src) in g.iter().zip(p) {
                    vmap[src] = pos;
                }
            }
            let mut es: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| norm((vmap[u], vmap[v]))).collect();
            es.sort();
            if es != self.edges {
                return;
            }
            // source class -> target class, then all bijections between them
            let pairs: Vec<(Vec<usize>, Vec<usize>)> = classes
                .iter()
                .map(|(&(u, v), src)| (src.clone(), classes[&norm((vmap[u], vmap[v]))].clone()))
                .collect();
            let targets: Vec<Vec<usize>> = pairs.iter().map(|(_, t)| t.clone()).collect();
            for_each_group_permutation(&targets, &mut |choice| {
                let mut perm = vec![0usize; self.edges.len()];
                for ((src, _), tgt) in pairs.iter().zip(choice) {
                    for (&s, &t) in src.iter().zip(tgt) {
                        perm[s] = t;
                    }
                }
                out.push(perm);
            });
        });
        out
    }

    /// Canonical text label of the multicurve type.
    pub fn type_label(&self) -> String {
        let c = self.canonical().graph;
        let mut s = String::new();
        if c.has_loop() {
            s.push_str("nonseparating: ");
        }
        let comps: Vec<String> = c.vertices.iter().map(VertexLabel::render).collect();
        write!(s, "[{}]", comps.join(",")).unwrap();
        if c.edges.len() >= 2 {
            let inc: Vec<String> = c.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            write!(s, " ~ [{}]", inc.join(",")).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(g: u32, p: u32, b: u32) -> VertexLabel {
        VertexLabel { genus: g, punctures: p, boundary: b, puncture_labels: vec![] }
    }

    #[test]
    fn theta_graph_has_twelve_automorphisms() {
        let g = MulticurveGraph { vertices: vec![v(0, 0, 3), v(0, 0, 3)], edges: vec![(0, 1), (1, 0), (0, 1)] };
        assert_eq!(g.automorphisms().len(), 12);
    }

    #[test]
    fn dumbbell_automorphisms_swap_the_ends() {
        let g = MulticurveGraph { vertices: vec![v(0, 0, 3), v(0, 0, 3)], edges: vec![(0, 0), (0, 1), (1, 1)] };
        let auts = g.automorphisms();
        assert_eq!(auts.len(), 2);
        assert!(auts.contains(&vec![2, 1, 0]));
    }

    #[test]
    fn relabelled_graphs_share_canonical_form() {
        let g = MulticurveGraph { vertices: vec![v(0, 2, 1), v(0, 1, 2), v(0, 2, 1)], edges: vec![(0, 1), (1, 2)] };
        let h = MulticurveGraph { vertices: vec![v(0, 1, 2), v(0, 2, 1), v(0, 2, 1)], edges: vec![(2, 0), (1, 0)] };
        assert_eq!(g.canonical().graph, h.canonical().graph);
        assert_eq!(g.isomorphisms(&h).len(), 2);
        assert_eq!(g.type_label(), "[(0,1,2),(0,2,1),(0,2,1)] ~ [0-1,0-2]");
    }

    #[test]
    fn contraction_of_loop_adds_genus() {
        let g = MulticurveGraph { vertices: vec![v(0, 1, 2)], edges: vec![(0, 0)] };
        let c = g.contract(0);
        assert_eq!(c.vertices, vec![v(1, 1, 0)]);
        assert!(c.edges.is_empty());
    }
}
