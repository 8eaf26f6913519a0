//! Enumeration oracle for quotient catalogs: every pants-decomposition type of a surface,
//! every sub-multicurve type by edge contraction, faces and symmetries read off the dual graphs.

use std::collections::{BTreeMap, HashSet};

use crate::error::Result;
use crate::topology::{MulticurveGraph, Surface, VertexLabel};

use super::catalog::{Catalog, CatalogSimplex, CatalogSurface};

/// Canonical dual graphs of all pants decompositions of `surface`, up to homeomorphism.
pub fn pants_graph_types(surface: Surface) -> Vec<MulticurveGraph> {
    let pants = surface.pants_count() as usize;
    let curves = surface.complexity() as usize;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for punctures in puncture_splits(pants, surface.punctures) {
        let vertices: Vec<VertexLabel> = punctures
            .iter()
            .map(|&p| VertexLabel { genus: 0, punctures: p, boundary: 3 - p, puncture_labels: vec![] })
            .collect();
        let stubs: Vec<usize> = vertices.iter().enumerate().flat_map(|(v, l)| std::iter::repeat_n(v, l.boundary as usize)).collect();
        if stubs.len() != 2 * curves {
            continue;
        }
        let mut used = vec![false; stubs.len()];
        let mut edges = Vec::with_capacity(curves);
        pair_stubs(&stubs, &mut used, &mut edges, &mut |edges| {
            let g = MulticurveGraph { vertices: vertices.clone(), edges: edges.to_vec() };
            if is_connected(&g) {
                let c = g.canonical().graph;
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
        });
    }
    out.sort_by_key(|g| g.type_label());
    out
}

/// Non-increasing puncture counts per pants, each at most 2, summing to `total`.
fn puncture_splits(pants: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(left: usize, total: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=max.min(total)).rev() {
            cur.push(p);
            go(left - 1, total - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pants, total, 2, &mut Vec::new(), &mut out);
    out
}

fn pair_stubs(stubs: &[usize], used: &mut [bool], edges: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
    let Some(first) = used.iter().position(|u| !u) else {
        f(edges);
        return;
    };
    used[first] = true;
    for j in first + 1..stubs.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        edges.push((stubs[first], stubs[j]));
        pair_stubs(stubs, used, edges, f);
        edges.pop();
        used[j] = false;
    }
    used[first] = false;
}

fn is_connected(g: &MulticurveGraph) -> bool {
    let n = g.vertices.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in &g.edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn simplex_id(dim: usize, k: usize) -> String {
    match dim {
        0 => format!("v{k}"),
        1 => format!("e{k}"),
        2 => format!("t{k}"),
        _ => format!("s{dim}_{k}"),
    }
}

/// The quotient of the curve complex by the mapping class group, as a catalog.
pub fn generate_catalog(surface: Surface) -> Result<Catalog> {
    let surface = Surface::new(surface.genus, surface.punctures)?;
    // canonical graph -> (dim, label), filled by contracting edges from the chambers down
    let mut graphs: BTreeMap<(usize, String), MulticurveGraph> = BTreeMap::new();
    let mut stack = pants_graph_types(surface);
    while let Some(g) = stack.pop() {
        let key = (g.edges.len() - 1, g.type_label());
        if graphs.contains_key(&key) {
            continue;
        }
        if g.edges.len() > 1 {
            for e in 0..g.edges.len() {
                stack.push(g.contract(e).canonical().graph);
            }
        }
        graphs.insert(key, g);
    }
    let mut ids: BTreeMap<String, String> = BTreeMap::new();
    let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
    for (dim, label) in graphs.keys() {
        let k = counters.entry(*dim).or_default();
        ids.insert(label.clone(), simplex_id(*dim, *k));
        *k += 1;
    }
    let mut simplices = Vec::with_capacity(graphs.len());
    for ((dim, label), g) in &graphs {
        let mut faces = Vec::new();
        let mut face_vertices = Vec::new();
        if *dim > 0 {
            for i in 0..g.edges.len() {
                let c = g.contract(i).canonical();
                faces.push(ids[&c.graph.type_label()].clone());
                let mut map = vec![0usize; c.edge_map.len()];
                for (k, &pos) in c.edge_map.iter().enumerate() {
                    map[pos] = if k < i { k } else { k + 1 };
                }
                face_vertices.push(map);
            }
        }
        let mut symmetries = g.automorphisms();
        symmetries.sort();
        symmetries.dedup();
        simplices.push(CatalogSimplex {
            id: ids[label].clone(),
            dim: *dim,
            type_label: label.clone(),
            faces,
            face_vertices: Some(face_vertices).filter(|f| !f.is_empty()),
            symmetries: Some(symmetries).filter(|s| s.len() > 1),
        });
    }
    Ok(Catalog {
        surface: CatalogSurface { genus: surface.genus, punctures: surface.punctures },
        multiplicity: None,
        simplices,
    })
}
