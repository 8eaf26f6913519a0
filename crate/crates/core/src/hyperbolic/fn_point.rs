use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::topology::PantsDecomposition;
use crate::words::{CurveClass, Word};

/// A pants decomposition together with the surface-group presentation it determines.
#[derive(Debug)]
pub struct MarkedSurface {
    pd: PantsDecomposition,
    presentation: Presentation,
    peripheral: Vec<Word>,
}

impl MarkedSurface {
    pub fn new(pd: PantsDecomposition) -> Result<Arc<Self>> {
        let presentation = Presentation::derive(&pd)?;
        let peripheral = presentation.peripheral_words(&pd).iter().map(Word::canonical).collect();
        Ok(Arc::new(MarkedSurface { pd, presentation, peripheral }))
    }

    pub fn pd(&self) -> &PantsDecomposition {
        &self.pd
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// True if `w` is conjugate to a power of a puncture loop.
    pub fn is_peripheral(&self, w: &Word) -> bool {
        let c = w.canonical();
        if c.is_empty() {
            return false;
        }
        self.peripheral.iter().any(|p| {
            let n = c.len() / p.len().max(1);
            c.len() % p.len() == 0 && {
                let mut q = Word::empty();
                for _ in 0..n {
                    q = q.mul(p);
                }
                q.canonical() == c
            }
        })
    }

    pub fn curve_class(&self, curve: usize) -> CurveClass {
        CurveClass::new(self.presentation.curve_word(curve)).expect("pants curves are nontrivial")
    }

    pub fn parse_class(&self, text: &str) -> Result<CurveClass> {
        CurveClass::new(&self.presentation.alphabet().parse(text)?)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.presentation.alphabet().format(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FnCoordinate {
    pub length: f64,
    pub twist: f64,
}

/// A point of Teichmüller space in Fenchel–Nielsen coordinates. Twists are in length units,
/// so a full Dehn twist adds `length` to `twist`.
#[derive(Clone, Debug)]
pub struct FNPoint {
    surface: Arc<MarkedSurface>,
    coords: Vec<FnCoordinate>,
}

impl PartialEq for FNPoint {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.surface, &other.surface) || self.surface.pd == other.surface.pd) && self.coords == other.coords
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FnPointFile {
    pub coordinates: BTreeMap<String, FnCoordinate>,
}

impl FNPoint {
    pub fn new(surface: Arc<MarkedSurface>, coords: Vec<FnCoordinate>) -> Result<Self> {
        if coords.len() != surface.pd.curve_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                surface.pd.curve_count(),
                coords.len()
            )));
        }
        for c in &coords {
            if !(c.length > 0.0 && c.length.is_finite()) {
                return Err(Error::NonPositiveLength(c.length));
            }
            if !c.twist.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite twist {}", c.twist)));
            }
        }
        Ok(FNPoint { surface, coords })
    }

    pub fn from_lengths_twists(surface: Arc<MarkedSurface>, lengths: &[f64], twists: &[f64]) -> Result<Self> {
        let coords = lengths.iter().zip(twists).map(|(&length, &twist)| FnCoordinate { length, twist }).collect();
        FNPoint::new(surface, coords)
    }

    pub fn from_file(surface: Arc<MarkedSurface>, file: &FnPointFile) -> Result<Self> {
        let pd = surface.pd();
        for id in file.coordinates.keys() {
            pd.curve_index(id)?;
        }
        let coords = pd
            .curve_ids()
            .map(|id| {
                file.coordinates
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("missing coordinate for curve `{id}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        FNPoint::new(surface, coords)
    }

    pub fn to_file(&self) -> FnPointFile {
        FnPointFile {
            coordinates: self
                .surface
                .pd
                .curve_ids()
                .zip(&self.coords)
                .map(|(id, c)| (id.to_string(), *c))
                .collect(),
        }
    }

    pub fn surface(&self) -> &Arc<MarkedSurface> {
        &self.surface
    }

    pub fn pd(&self) -> &PantsDecomposition {
        &self.surface.pd
    }

    pub fn coordinates(&self) -> &[FnCoordinate] {
        &self.coords
    }

    pub fn length(&self, curve: usize) -> f64 {
        self.coords[curve].length
    }

    pub fn twist(&self, curve: usize) -> f64 {
        self.coords[curve].twist
    }

    pub fn with_coordinate(&self, curve: usize, c: FnCoordinate) -> Result<Self> {
        let mut coords = self.coords.clone();
        coords[curve] = c;
        FNPoint::new(self.surface.clone(), coords)
    }

    /// Twist fraction `θ/l`, so that a full Dehn twist shifts it by one.
    pub fn twist_fraction(&self, curve: usize) -> f64 {
        self.coords[curve].twist / self.coords[curve].length
    }
}

/// `u = -log l^{1/2}`.
pub fn u_coordinate(length: f64) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::NonPositiveLength(length));
    }
    Ok(-0.5 * length.ln())
}

/// Inverse of [`u_coordinate`].
pub fn length_from_u(u: f64) -> f64 {
    (-2.0 * u).exp()
}

/// Flow the twist of `curve` by `t` length units.
pub fn twist_flow(x: &FNPoint, curve: usize, t: f64) -> Result<FNPoint> {
    let c = x.coords.get(curve).ok_or_else(|| Error::UnknownCurve(format!("#{curve}")))?;
    x.with_coordinate(curve, FnCoordinate { length: c.length, twist: c.twist + t })
}
