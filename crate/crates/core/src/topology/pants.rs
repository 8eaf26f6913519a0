//! Surfaces, pants decompositions and sub-multicurves of a decomposition.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::{MulticurveGraph, VertexLabel};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let s = Surface { genus, punctures };
        if s.complexity_signed() < 1 {
            return Err(Error::UnsupportedSurface { genus, punctures });
        }
        Ok(s)
    }

    fn complexity_signed(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.punctures as i64
    }

    /// `3g - 3 + p`, clamped at zero.
    pub fn complexity(&self) -> u32 {
        self.complexity_signed().max(0) as u32
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn pants_count(&self) -> u32 {
        (2 * self.genus as i64 - 2 + self.punctures as i64).max(0) as u32
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

pub fn complexity(surface: Surface) -> u32 {
    surface.complexity()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: String,
    pub slots: [String; 2],
}

/// On-disk form of a pants decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub genus: u32,
    pub punctures: u32,
    pub pants: Vec<Vec<String>>,
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub puncture_slots: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnsupportedSurface,
    PantsCount { expected: u32, found: usize },
    CurveCount { expected: u32, found: usize },
    PunctureCount { expected: u32, found: usize },
    SlotCount { pants: usize, found: usize },
    DuplicateSlot(String),
    DuplicateCurve(String),
    UnknownSlot(String),
    SlotReused(String),
    SlotUnused(String),
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsupportedSurface => write!(f, "complexity 3g-3+p < 1"),
            Violation::PantsCount { expected, found } => {
                write!(f, "pants count ≠ 2g-2+p (expected {expected}, found {found})")
            }
            Violation::CurveCount { expected, found } => {
                write!(f, "curve count ≠ d(S) (expected {expected}, found {found})")
            }
            Violation::PunctureCount { expected, found } => {
                write!(f, "puncture slot count ≠ p (expected {expected}, found {found})")
            }
            Violation::SlotCount { pants, found } => write!(f, "pants {pants} has {found} slots, expected 3"),
            Violation::DuplicateSlot(s) => write!(f, "slot `{s}` declared twice"),
            Violation::DuplicateCurve(s) => write!(f, "curve `{s}` declared twice"),
            Violation::UnknownSlot(s) => write!(f, "slot `{s}` is not declared by any pants"),
            Violation::SlotReused(s) => write!(f, "slot `{s}` is used more than once"),
            Violation::SlotUnused(s) => write!(f, "slot `{s}` is used by no curve or puncture"),
            Violation::Disconnected => write!(f, "gluing graph is disconnected"),
        }
    }
}

pub fn validate_pants_decomposition(file: &PantsFile) -> std::result::Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let surface = Surface { genus: file.genus, punctures: file.punctures };
    if surface.complexity_signed() < 1 {
        v.push(Violation::UnsupportedSurface);
    }
    if file.pants.len() != surface.pants_count() as usize {
        v.push(Violation::PantsCount { expected: surface.pants_count(), found: file.pants.len() });
    }
    if file.curves.len() != surface.complexity() as usize {
        v.push(Violation::CurveCount { expected: surface.complexity(), found: file.curves.len() });
    }
    if file.puncture_slots.len() != file.punctures as usize {
        v.push(Violation::PunctureCount { expected: file.punctures, found: file.puncture_slots.len() });
    }
    let mut slot_pants: HashMap<&str, usize> = HashMap::new();
    for (i, p) in file.pants.iter().enumerate() {
        if p.len() != 3 {
            v.push(Violation::SlotCount { pants: i, found: p.len() });
        }
        for s in p {
            if slot_pants.insert(s.as_str(), i).is_some() {
                v.push(Violation::DuplicateSlot(s.clone()));
            }
        }
    }
    let mut ids = HashSet::new();
    for c in &file.curves {
        if !ids.insert(c.id.as_str()) {
            v.push(Violation::DuplicateCurve(c.id.clone()));
        }
    }
    let mut used: HashSet<&str> = HashSet::new();
    let uses = file.curves.iter().flat_map(|c| c.slots.iter()).chain(file.puncture_slots.iter());
    for s in uses {
        if !slot_pants.contains_key(s.as_str()) {
            v.push(Violation::UnknownSlot(s.clone()));
        } else if !used.insert(s.as_str()) {
            v.push(Violation::SlotReused(s.clone()));
        }
    }
    for p in &file.pants {
        for s in p {
            if !used.contains(s.as_str()) {
                v.push(Violation::SlotUnused(s.clone()));
            }
        }
    }
    if v.is_empty() && !file.pants.is_empty() {
        let mut uf = UnionFind::new(file.pants.len());
        for c in &file.curves {
            uf.union(slot_pants[c.slots[0].as_str()], slot_pants[c.slots[1].as_str()]);
        }
        if uf.components() != 1 {
            v.push(Violation::Disconnected);
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub pants: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotUse {
    /// Side `side` of curve `curve`.
    Curve { curve: usize, side: usize },
    Puncture(usize),
}

/// A validated pants decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PantsFile", into = "PantsFile")]
pub struct PantsDecomposition {
    file: PantsFile,
    surface: Surface,
    curve_slots: Vec<[SlotRef; 2]>,
    slot_use: Vec<[SlotUse; 3]>,
}

impl TryFrom<PantsFile> for PantsDecomposition {
    type Error = Error;
    fn try_from(file: PantsFile) -> Result<Self> {
        PantsDecomposition::from_file(file)
    }
}

impl From<PantsDecomposition> for PantsFile {
    fn from(pd: PantsDecomposition) -> PantsFile {
        pd.file
    }
}

impl PantsDecomposition {
    pub fn from_file(file: PantsFile) -> Result<Self> {
        if let Err(v) = validate_pants_decomposition(&file) {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::InvalidDecomposition(msgs.join("; ")));
        }
        let surface = Surface { genus: file.genus, punctures: file.punctures };
        let mut slot_ref = HashMap::new();
        for (i, p) in file.pants.iter().enumerate() {
            for (k, s) in p.iter().enumerate() {
                slot_ref.insert(s.clone(), SlotRef { pants: i, position: k });
            }
        }
        let mut slot_use = vec![[SlotUse::Puncture(usize::MAX); 3]; file.pants.len()];
        let mut curve_slots = Vec::new();
        for (ci, c) in file.curves.iter().enumerate() {
            let a = slot_ref[&c.slots[0]];
            let b = slot_ref[&c.slots[1]];
            slot_use[a.pants][a.position] = SlotUse::Curve { curve: ci, side: 0 };
            slot_use[b.pants][b.position] = SlotUse::Curve { curve: ci, side: 1 };
            curve_slots.push([a, b]);
        }
        for (pi, s) in file.puncture_slots.iter().enumerate() {
            let r = slot_ref[s];
            slot_use[r.pants][r.position] = SlotUse::Puncture(pi);
        }
        Ok(PantsDecomposition { file, surface, curve_slots, slot_use })
    }

    /// A decomposition realizing a pants dual graph: vertex `v` becomes pants `v`, edge `i`
    /// becomes curve `c{i}`, punctures are numbered in vertex order.
    pub fn from_graph(genus: u32, graph: &MulticurveGraph) -> Result<Self> {
        let mut pants: Vec<Vec<String>> = vec![Vec::new(); graph.vertices.len()];
        let mut curves = Vec::with_capacity(graph.edges.len());
        for (i, &(u, v)) in graph.edges.iter().enumerate() {
            let (a, b) = (format!("c{i}+"), format!("c{i}-"));
            pants.get_mut(u).ok_or_else(|| Error::InvalidDecomposition(format!("edge {i} has no vertex {u}")))?.push(a.clone());
            pants.get_mut(v).ok_or_else(|| Error::InvalidDecomposition(format!("edge {i} has no vertex {v}")))?.push(b.clone());
            curves.push(CurveSpec { id: format!("c{i}"), slots: [a, b] });
        }
        let mut puncture_slots = Vec::new();
        for (v, label) in graph.vertices.iter().enumerate() {
            for _ in 0..label.punctures {
                let p = format!("p{}", puncture_slots.len() + 1);
                pants[v].push(p.clone());
                puncture_slots.push(p);
            }
        }
        let punctures = puncture_slots.len() as u32;
        PantsDecomposition::from_file(PantsFile { name: None, genus, punctures, pants, curves, puncture_slots, alphabet: None })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PantsFile = serde_json::from_str(text)
            .map_err(|e| Error::Schema { path: format!("line {}", e.line()), message: e.to_string() })?;
        PantsDecomposition::from_file(file)
    }

    pub fn file(&self) -> &PantsFile {
        &self.file
    }

    pub fn name(&self) -> Option<&str> {
        self.file.name.as_deref()
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn pants_count(&self) -> usize {
        self.slot_use.len()
    }

    pub fn curve_count(&self) -> usize {
        self.curve_slots.len()
    }

    pub fn curve_id(&self, i: usize) -> &str {
        &self.file.curves[i].id
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = &str> {
        self.file.curves.iter().map(|c| c.id.as_str())
    }

    pub fn curve_index(&self, id: &str) -> Result<usize> {
        self.file
            .curves
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn curve_slots(&self, i: usize) -> [SlotRef; 2] {
        self.curve_slots[i]
    }

    pub fn slot_use(&self, s: SlotRef) -> SlotUse {
        self.slot_use[s.pants][s.position]
    }

    pub fn alphabet_names(&self) -> Option<&[String]> {
        self.file.alphabet.as_deref()
    }

    pub fn all_curves(&self) -> DecompositionSimplex {
        DecompositionSimplex { curves: (0..self.curve_count()).collect() }
    }

    pub fn simplex(&self, ids: &[&str]) -> Result<DecompositionSimplex> {
        let idx = ids.iter().map(|id| self.curve_index(id)).collect::<Result<Vec<_>>>()?;
        DecompositionSimplex::new(idx, self.curve_count())
    }

    /// Vertex set of the dual graph of `sigma`: pants joined along curves outside `sigma`.
    pub fn cut_graph(&self, sigma: &DecompositionSimplex, labeled: bool) -> MulticurveGraph {
        let in_sigma: HashSet<usize> = sigma.curves.iter().copied().collect();
        let mut uf = UnionFind::new(self.pants_count());
        for (ci, s) in self.curve_slots.iter().enumerate() {
            if !in_sigma.contains(&ci) {
                uf.union(s[0].pants, s[1].pants);
            }
        }
        let mut comp_of_root = HashMap::new();
        let mut comp = vec![0usize; self.pants_count()];
        for (p, c) in comp.iter_mut().enumerate() {
            let r = uf.find(p);
            let n = comp_of_root.len();
            *c = *comp_of_root.entry(r).or_insert(n);
        }
        let n = comp_of_root.len();
        let mut pants_n = vec![0u32; n];
        let mut punct = vec![0u32; n];
        let mut labels: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut boundary = vec![0u32; n];
        for (p, uses) in self.slot_use.iter().enumerate() {
            let c = comp[p];
            pants_n[c] += 1;
            for u in uses {
                match *u {
                    SlotUse::Puncture(i) => {
                        punct[c] += 1;
                        if labeled {
                            labels[c].push(i as u32 + 1);
                        }
                    }
                    SlotUse::Curve { curve, .. } if in_sigma.contains(&curve) => boundary[c] += 1,
                    SlotUse::Curve { .. } => {}
                }
            }
        }
        let vertices = (0..n)
            .map(|c| {
                labels[c].sort_unstable();
                let twice_genus = 2 + pants_n[c] as i64 - punct[c] as i64 - boundary[c] as i64;
                VertexLabel {
                    genus: (twice_genus / 2) as u32,
                    punctures: punct[c],
                    boundary: boundary[c],
                    puncture_labels: std::mem::take(&mut labels[c]),
                }
            })
            .collect();
        let edges = sigma
            .curves
            .iter()
            .map(|&ci| {
                let s = self.curve_slots[ci];
                (comp[s[0].pants], comp[s[1].pants])
            })
            .collect();
        MulticurveGraph { vertices, edges }
    }
}

/// A nonempty set of curves of a fixed pants decomposition, stored as sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompositionSimplex {
    curves: Vec<usize>,
}

impl DecompositionSimplex {
    pub fn new(mut curves: Vec<usize>, curve_count: usize) -> Result<Self> {
        curves.sort_unstable();
        curves.dedup();
        if curves.is_empty() {
            return Err(Error::EmptySimplex);
        }
        if let Some(&c) = curves.iter().find(|&&c| c >= curve_count) {
            return Err(Error::UnknownCurve(format!("#{c}")));
        }
        Ok(DecompositionSimplex { curves })
    }

    pub fn curves(&self) -> &[usize] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.curves.binary_search(&c).is_ok()
    }

    pub fn ids<'a>(&self, pd: &'a PantsDecomposition) -> Vec<&'a str> {
        self.curves.iter().map(|&c| pd.curve_id(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSurface {
    pub components: Vec<CutComponent>,
}

impl CutSurface {
    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(|c| 2 - 2 * c.genus as i64 - c.punctures as i64 - c.boundary as i64)
            .sum()
    }
}

/// Components of `S` cut along `sigma`, in canonical order.
pub fn cut_surface(pd: &PantsDecomposition, sigma: &DecompositionSimplex) -> CutSurface {
    let g = pd.cut_graph(sigma, false).canonical().graph;
    CutSurface {
        components: g
            .vertices
            .iter()
            .map(|v| CutComponent { genus: v.genus, punctures: v.punctures, boundary: v.boundary })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeLabel(pub String);

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PunctureLabels {
    #[default]
    Unlabeled,
    Labeled,
}

pub fn multicurve_type(pd: &PantsDecomposition, sigma: &DecompositionSimplex) -> TypeLabel {
    multicurve_type_with(pd, sigma, PunctureLabels::Unlabeled)
}

pub fn multicurve_type_with(pd: &PantsDecomposition, sigma: &DecompositionSimplex, mode: PunctureLabels) -> TypeLabel {
    TypeLabel(pd.cut_graph(sigma, mode == PunctureLabels::Labeled).type_label())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
