//! On-disk quotient catalogs and the validated semi-simplicial complex they describe.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{Surface, UnionFind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSurface {
    pub genus: u32,
    pub punctures: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSimplex {
    pub id: String,
    pub dim: usize,
    pub type_label: String,
    /// `faces[i]` is the face opposite vertex `i`.
    pub faces: Vec<String>,
    /// `face_vertices[i][k]`: the vertex of this simplex that vertex `k` of face `i` maps to.
    /// Defaults to the order-preserving map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_vertices: Option<Vec<Vec<usize>>>,
    /// Vertex permutations realized by mapping classes. Defaults to the identity alone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetries: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub surface: CatalogSurface,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
    pub simplices: Vec<CatalogSimplex>,
}

impl Catalog {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes") + "\n"
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    pub id: String,
    pub dim: usize,
    pub type_label: String,
    pub faces: Vec<usize>,
    pub face_vertices: Vec<Vec<usize>>,
    /// A group of vertex permutations, identity first.
    pub symmetries: Vec<Vec<usize>>,
}

impl Simplex {
    pub fn vertex_count(&self) -> usize {
        self.dim + 1
    }
}

/// A finite all-right spherical complex with face maps and simplex symmetries.
#[derive(Clone, Debug)]
pub struct SphericalComplex {
    pub surface: Surface,
    pub multiplicity: u32,
    simplices: Vec<Simplex>,
    by_id: HashMap<String, usize>,
    by_label: HashMap<String, usize>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&k| outer[k]).collect()
}

/// Closure of a set of permutations of `0..n` under composition, identity first.
fn group_closure(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut group = vec![identity];
    let mut i = 0;
    while i < group.len() {
        for g in gens {
            let h = compose(&group[i], g);
            if !group.contains(&h) {
                group.push(h);
            }
        }
        i += 1;
    }
    group
}

impl SphericalComplex {
    pub fn from_catalog(catalog: &Catalog) -> Result<Self> {
        let surface = Surface::new(catalog.surface.genus, catalog.surface.punctures)
            .map_err(|e| schema("surface", e.to_string()))?;
        let max_dim = surface.complexity() as usize - 1;
        let mut by_id = HashMap::new();
        let mut by_label = HashMap::new();
        for (i, s) in catalog.simplices.iter().enumerate() {
            let path = format!("simplices[{i}]");
            if by_id.insert(s.id.clone(), i).is_some() {
                return Err(schema(format!("{path}.id"), format!("duplicate id `{}`", s.id)));
            }
            if by_label.insert(s.type_label.clone(), i).is_some() {
                return Err(schema(format!("{path}.type_label"), "duplicate type label"));
            }
            if s.dim > max_dim {
                return Err(schema(format!("{path}.dim"), format!("dimension above {max_dim}")));
            }
        }
        let mut simplices = Vec::with_capacity(catalog.simplices.len());
        for (i, s) in catalog.simplices.iter().enumerate() {
            let path = format!("simplices[{i}]");
            let n = s.dim + 1;
            let expected = if s.dim == 0 { 0 } else { n };
            if s.faces.len() != expected {
                return Err(schema(format!("{path}.faces"), format!("expected {expected} face maps, found {}", s.faces.len())));
            }
            let mut faces = Vec::with_capacity(expected);
            for (k, f) in s.faces.iter().enumerate() {
                let &j = by_id.get(f).ok_or_else(|| schema(format!("{path}.faces[{k}]"), format!("unknown simplex `{f}`")))?;
                if catalog.simplices[j].dim + 1 != s.dim {
                    return Err(schema(format!("{path}.faces[{k}]"), "face has wrong dimension"));
                }
                faces.push(j);
            }
            let face_vertices = match &s.face_vertices {
                Some(fv) => fv.clone(),
                None => (0..expected).map(|i| (0..n).filter(|&k| k != i).collect()).collect(),
            };
            if face_vertices.len() != expected {
                return Err(schema(format!("{path}.face_vertices"), "one vertex map per face required"));
            }
            for (k, m) in face_vertices.iter().enumerate() {
                let mut full = m.clone();
                full.push(k);
                if !is_permutation(&full, n) {
                    return Err(schema(format!("{path}.face_vertices[{k}]"), "must map bijectively onto the vertices other than the opposite one"));
                }
            }
            let gens = s.symmetries.clone().unwrap_or_default();
            for (k, g) in gens.iter().enumerate() {
                if !is_permutation(g, n) {
                    return Err(schema(format!("{path}.symmetries[{k}]"), "not a vertex permutation"));
                }
            }
            simplices.push(Simplex {
                id: s.id.clone(),
                dim: s.dim,
                type_label: s.type_label.clone(),
                faces,
                face_vertices,
                symmetries: group_closure(&gens, n),
            });
        }
        let complex = SphericalComplex {
            surface,
            multiplicity: catalog.multiplicity.unwrap_or(1),
            simplices,
            by_id,
            by_label,
        };
        complex.check_identities()?;
        complex.check_connected()?;
        Ok(complex)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let catalog: Catalog = serde_json::from_str(text)
            .map_err(|e| schema(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_catalog(&catalog)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Schema { path: p, message } => schema(format!("{}: {p}", path.display()), message),
            other => other,
        })
    }

    /// Whether `a` equals `b ∘ h` for some symmetry `h` of simplex `s`.
    fn equal_up_to_symmetry(&self, s: usize, a: &[usize], b: &[usize]) -> bool {
        self.simplices[s].symmetries.iter().any(|h| compose(b, h) == a)
    }

    fn check_identities(&self) -> Result<()> {
        for (pi, p) in self.simplices.iter().enumerate() {
            let path = format!("simplices[{pi}]");
            // symmetries permute faces compatibly
            for g in &p.symmetries {
                for i in 0..p.faces.len() {
                    let gi = g[i];
                    let a = compose(g, &p.face_vertices[i]);
                    if p.faces[gi] != p.faces[i] || !self.equal_up_to_symmetry(p.faces[i], &a, &p.face_vertices[gi]) {
                        return Err(schema(format!("{path}.symmetries"), "symmetry does not respect the face maps"));
                    }
                }
            }
            if p.dim < 2 {
                continue;
            }
            for i in 0..p.faces.len() {
                for j in i + 1..p.faces.len() {
                    let via = |a: usize, b: usize| {
                        let f = &self.simplices[p.faces[a]];
                        let pos = p.face_vertices[a].iter().position(|&v| v == b).expect("vertex present");
                        (f.faces[pos], compose(&p.face_vertices[a], &f.face_vertices[pos]))
                    };
                    let (g1, m1) = via(i, j);
                    let (g2, m2) = via(j, i);
                    if g1 != g2 || !self.equal_up_to_symmetry(g1, &m1, &m2) {
                        return Err(schema(format!("{path}.faces"), format!("face maps {i} and {j} are not compatible")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        if self.simplices.is_empty() {
            return Err(schema("simplices", "empty complex"));
        }
        let mut uf = UnionFind::new(self.simplices.len());
        for (i, s) in self.simplices.iter().enumerate() {
            for &f in &s.faces {
                uf.union(i, f);
            }
        }
        let root = uf.find(0);
        if (0..self.simplices.len()).any(|i| uf.find(i) != root) {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn by_type_label(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.simplices.len()).filter(|&i| self.simplices[i].dim == 0)
    }

    /// Simplices of dimension `d(S) - 1`.
    pub fn maximal_simplices(&self) -> Vec<usize> {
        let top = self.surface.complexity() as usize - 1;
        (0..self.simplices.len()).filter(|&i| self.simplices[i].dim == top).collect()
    }

    /// First simplex that is not a face of a simplex of dimension `d(S) - 1`.
    pub fn non_pure_simplex(&self) -> Option<&str> {
        let mut covered = vec![false; self.simplices.len()];
        let mut stack = self.maximal_simplices();
        while let Some(i) = stack.pop() {
            if !std::mem::replace(&mut covered[i], true) {
                stack.extend(&self.simplices[i].faces);
            }
        }
        covered.iter().position(|c| !c).map(|i| self.simplices[i].id.as_str())
    }

    /// Isomorphism invariant: simplices keyed by type label, face maps reduced modulo symmetries.
    pub fn canonical_form(&self) -> Vec<CanonicalSimplex> {
        let mut out: Vec<CanonicalSimplex> = self
            .simplices
            .iter()
            .map(|s| {
                let mut faces: Vec<(String, Vec<usize>)> = s
                    .faces
                    .iter()
                    .zip(&s.face_vertices)
                    .map(|(&f, m)| {
                        let sym = &self.simplices[f].symmetries;
                        let best = sym.iter().map(|h| compose(m, h)).min().expect("identity present");
                        (self.simplices[f].type_label.clone(), best)
                    })
                    .collect();
                faces.sort();
                let mut symmetries = s.symmetries.clone();
                symmetries.sort();
                CanonicalSimplex { dim: s.dim, type_label: s.type_label.clone(), faces, symmetries }
            })
            .collect();
        out.sort_by(|a, b| (a.dim, &a.type_label).cmp(&(b.dim, &b.type_label)));
        out
    }

    pub fn to_catalog(&self) -> Catalog {
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let n = s.vertex_count();
                let default_faces: Vec<Vec<usize>> = (0..s.faces.len()).map(|i| (0..n).filter(|&k| k != i).collect()).collect();
                CatalogSimplex {
                    id: s.id.clone(),
                    dim: s.dim,
                    type_label: s.type_label.clone(),
                    faces: s.faces.iter().map(|&f| self.simplices[f].id.clone()).collect(),
                    face_vertices: Some(s.face_vertices.clone()).filter(|f| *f != default_faces),
                    symmetries: Some(s.symmetries.clone()).filter(|g| g.len() > 1),
                }
            })
            .collect();
        Catalog {
            surface: CatalogSurface { genus: self.surface.genus, punctures: self.surface.punctures },
            multiplicity: Some(self.multiplicity).filter(|&m| m != 1),
            simplices,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSimplex {
    pub dim: usize,
    pub type_label: String,
    pub faces: Vec<(String, Vec<usize>)>,
    pub symmetries: Vec<Vec<usize>>,
}
