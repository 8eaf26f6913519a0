//! A presentation of the surface group read off a pants decomposition, together with the
//! word-level action of Dehn twists along pants curves.
//!
//! Pants are visited breadth first from pants 0. Each pants contributes generators for its free
//! boundary slots, except one slot that is solved from the product relation. A curve joining a
//! pants to one visited earlier (or to itself) contributes a stable letter `t` conjugating the
//! second slot onto the inverse of the first. Relators with a letter of multiplicity one are
//! eliminated, so punctured surfaces end up with a free basis and closed surfaces with one relator.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::topology::{PantsDecomposition, SlotRef, SlotUse};
use crate::words::{Alphabet, CurveClass, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The boundary element of a pants slot.
    Slot(SlotRef),
    /// The stable letter of a non-tree curve.
    Stable { curve: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gluing {
    /// Spanning-tree edge; `child` lies in the pants farther from the root.
    Tree { parent: SlotRef, child: SlotRef },
    /// Closed by the stable letter `letter` (a raw generator index).
    Stable { first: SlotRef, second: SlotRef, letter: usize },
}

/// Direction of a Dehn twist acting on words. `Positive` sends `b` to a conjugate of `ba` on
/// a one-holed torus with core `a`; `Negative` is its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistDirection {
    Positive,
    Negative,
}

impl TwistDirection {
    pub fn inverse(self) -> Self {
        match self {
            TwistDirection::Positive => TwistDirection::Negative,
            TwistDirection::Negative => TwistDirection::Positive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    raw_kinds: Vec<GeneratorKind>,
    /// Raw generator -> word in final letters.
    raw_to_final: Vec<Word>,
    /// Final letter -> raw generator.
    final_raw: Vec<usize>,
    raw_slot_words: Vec<[Word; 3]>,
    slot_words: Vec<[Word; 3]>,
    relators: Vec<Word>,
    order: Vec<usize>,
    gluings: Vec<Gluing>,
    /// Per tree curve, membership of each pants in the child's subtree.
    descendants: Vec<Option<Vec<bool>>>,
    curve_words: Vec<Word>,
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("g{i}")).collect()
    }
}

impl Presentation {
    pub fn derive(pd: &PantsDecomposition) -> Result<Self> {
        let np = pd.pants_count();
        let other = |s: SlotRef| -> Option<SlotRef> {
            match pd.slot_use(s) {
                SlotUse::Curve { curve, side } => Some(pd.curve_slots(curve)[1 - side]),
                SlotUse::Puncture(_) => None,
            }
        };
        let curve_of = |s: SlotRef| -> Option<usize> {
            match pd.slot_use(s) {
                SlotUse::Curve { curve, .. } => Some(curve),
                SlotUse::Puncture(_) => None,
            }
        };

        // breadth-first spanning tree
        let mut order = Vec::with_capacity(np);
        let mut parent_edge: Vec<Option<(usize, SlotRef, SlotRef)>> = vec![None; np];
        let mut visited = vec![false; np];
        let mut is_tree = vec![false; pd.curve_count()];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(j) = queue.pop_front() {
            order.push(j);
            for k in 0..3 {
                let s = SlotRef { pants: j, position: k };
                if let (Some(c), Some(t)) = (curve_of(s), other(s)) {
                    if !visited[t.pants] {
                        visited[t.pants] = true;
                        is_tree[c] = true;
                        parent_edge[t.pants] = Some((c, s, t));
                        queue.push_back(t.pants);
                    }
                }
            }
        }
        let rank: Vec<usize> = {
            let mut r = vec![0; np];
            for (i, &j) in order.iter().enumerate() {
                r[j] = i;
            }
            r
        };

        let mut raw_kinds = Vec::new();
        let mut raw_slot_words: Vec<[Word; 3]> = vec![Default::default(); np];
        let mut raw_relators = Vec::new();
        let mut gluings: Vec<Option<Gluing>> = vec![None; pd.curve_count()];
        for &j in &order {
            let mut known: [Option<Word>; 3] = Default::default();
            if let Some((c, ps, cs)) = parent_edge[j] {
                known[cs.position] = Some(raw_slot_words[ps.pants][ps.position].inverse());
                gluings[c] = Some(Gluing::Tree { parent: ps, child: cs });
            }
            #[derive(Clone, Copy, PartialEq)]
            enum Kind {
                Known,
                Stable(SlotRef),
                Free,
                /// First side of a curve glued back to this same pants at a later slot.
                FreeLoop,
            }
            let mut kinds = [Kind::Free; 3];
            for k in 0..3 {
                let s = SlotRef { pants: j, position: k };
                if known[k].is_some() {
                    kinds[k] = Kind::Known;
                    continue;
                }
                if let (Some(c), Some(t)) = (curve_of(s), other(s)) {
                    if !is_tree[c] {
                        if rank[t.pants] < rank[j] || (t.pants == j && t.position < k) {
                            kinds[k] = Kind::Stable(t);
                        } else if t.pants == j {
                            kinds[k] = Kind::FreeLoop;
                        }
                    }
                }
            }
            let solved = (0..3).rev().find(|&k| kinds[k] == Kind::Free);
            for k in 0..3 {
                match kinds[k] {
                    Kind::Known => {}
                    _ if Some(k) == solved => {}
                    Kind::Free | Kind::FreeLoop => {
                        raw_kinds.push(GeneratorKind::Slot(SlotRef { pants: j, position: k }));
                        known[k] = Some(Word::letter(raw_kinds.len() as u16 - 1));
                    }
                    Kind::Stable(t) => {
                        let c = curve_of(SlotRef { pants: j, position: k }).unwrap();
                        raw_kinds.push(GeneratorKind::Stable { curve: c });
                        let letter = raw_kinds.len() - 1;
                        let tw = Word::letter(letter as u16);
                        let w = if t.pants == j {
                            known[t.position].clone().expect("earlier slot expressed")
                        } else {
                            raw_slot_words[t.pants][t.position].clone()
                        };
                        known[k] = Some(Word::concat(&[&tw.inverse(), &w.inverse(), &tw]));
                        gluings[c] = Some(Gluing::Stable { first: t, second: SlotRef { pants: j, position: k }, letter });
                    }
                }
            }
            match solved {
                Some(k) => {
                    let a = known[(k + 1) % 3].clone().unwrap();
                    let b = known[(k + 2) % 3].clone().unwrap();
                    // B_k B_{k+1} B_{k+2} = 1 up to cyclic rotation
                    known[k] = Some(a.mul(&b).inverse());
                }
                None => {
                    let w = Word::concat(&[known[0].as_ref().unwrap(), known[1].as_ref().unwrap(), known[2].as_ref().unwrap()]);
                    if !w.is_empty() {
                        raw_relators.push(w);
                    }
                }
            }
            raw_slot_words[j] = known.map(|w| w.unwrap());
        }
        let gluings: Vec<Gluing> = gluings.into_iter().map(|g| g.expect("every curve glued")).collect();

        // Tietze elimination of letters occurring once in a relator
        let nraw = raw_kinds.len();
        let mut images: Vec<Word> = (0..nraw).map(|g| Word::letter(g as u16)).collect();
        let mut alive = vec![true; nraw];
        let mut relators = raw_relators;
        loop {
            let mut hit = None;
            'outer: for (ri, r) in relators.iter().enumerate() {
                for g in (0..nraw).rev() {
                    if alive[g] && r.count_generator(g as u16) == 1 {
                        hit = Some((ri, g));
                        break 'outer;
                    }
                }
            }
            let Some((ri, g)) = hit else { break };
            let r = relators.remove(ri);
            let pos = r.0.iter().position(|l| l.generator as usize == g).unwrap();
            let u = Word(r.0[..pos].to_vec());
            let v = Word(r.0[pos + 1..].to_vec());
            let value = if r.0[pos].inverse { v.mul(&u) } else { u.inverse().mul(&v.inverse()) };
            let mut sub: Vec<Word> = (0..nraw).map(|h| Word::letter(h as u16)).collect();
            sub[g] = value;
            for img in images.iter_mut() {
                *img = img.substitute(&sub);
            }
            for rel in relators.iter_mut() {
                *rel = rel.substitute(&sub).cyclically_reduced();
            }
            relators.retain(|r| !r.is_empty());
            alive[g] = false;
        }
        let final_raw: Vec<usize> = (0..nraw).filter(|&g| alive[g]).collect();
        let mut renumber: Vec<Word> = vec![Word::empty(); nraw];
        for (i, &g) in final_raw.iter().enumerate() {
            renumber[g] = Word::letter(i as u16);
        }
        let raw_to_final: Vec<Word> = images.iter().map(|w| w.substitute(&renumber)).collect();
        let relators: Vec<Word> = relators.iter().map(|w| w.substitute(&renumber)).collect();
        let slot_words: Vec<[Word; 3]> = raw_slot_words
            .iter()
            .map(|ws| ws.clone().map(|w| w.substitute(&raw_to_final)))
            .collect();

        let names = match pd.alphabet_names() {
            Some(n) if n.len() == final_raw.len() => n.to_vec(),
            Some(n) => {
                return Err(Error::InvalidDecomposition(format!(
                    "alphabet has {} names but the derived presentation has {} generators",
                    n.len(),
                    final_raw.len()
                )))
            }
            None => default_names(final_raw.len()),
        };

        let mut descendants = vec![None; pd.curve_count()];
        for (c, g) in gluings.iter().enumerate() {
            if let Gluing::Tree { child, .. } = g {
                let mut inside = vec![false; np];
                inside[child.pants] = true;
                for &j in &order {
                    if let Some((_, ps, _)) = parent_edge[j] {
                        if inside[ps.pants] {
                            inside[j] = true;
                        }
                    }
                }
                descendants[c] = Some(inside);
            }
        }

        let curve_words = gluings
            .iter()
            .map(|g| match *g {
                Gluing::Tree { child, .. } => slot_words[child.pants][child.position].clone(),
                Gluing::Stable { first, .. } => slot_words[first.pants][first.position].clone(),
            })
            .collect();

        Ok(Presentation {
            alphabet: Alphabet::new(names),
            raw_kinds,
            raw_to_final,
            final_raw,
            raw_slot_words,
            slot_words,
            relators,
            order,
            gluings,
            descendants,
            curve_words,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_count(&self) -> usize {
        self.final_raw.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Breadth-first order of the pants.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn gluing(&self, curve: usize) -> Gluing {
        self.gluings[curve]
    }

    pub(crate) fn raw_kinds(&self) -> &[GeneratorKind] {
        &self.raw_kinds
    }

    pub(crate) fn final_raw(&self) -> &[usize] {
        &self.final_raw
    }

    pub(crate) fn raw_to_final(&self) -> &[Word] {
        &self.raw_to_final
    }

    pub(crate) fn raw_slot_words(&self) -> &[[Word; 3]] {
        &self.raw_slot_words
    }

    /// Word (in final letters) representing the boundary element of a slot.
    pub fn slot_word(&self, s: SlotRef) -> &Word {
        &self.slot_words[s.pants][s.position]
    }

    /// Word representing pants curve `curve`.
    pub fn curve_word(&self, curve: usize) -> &Word {
        &self.curve_words[curve]
    }

    /// Words of the punctures' peripheral loops.
    pub fn peripheral_words(&self, pd: &PantsDecomposition) -> Vec<Word> {
        let mut out = Vec::new();
        for j in 0..pd.pants_count() {
            for k in 0..3 {
                let s = SlotRef { pants: j, position: k };
                if let SlotUse::Puncture(_) = pd.slot_use(s) {
                    out.push(self.slot_word(s).clone());
                }
            }
        }
        out
    }

    /// Image of each raw generator under the twist along `curve`, as raw words.
    /// `power = 1` is the automorphism realized by the twist flow through one full length.
    fn raw_twist_images(&self, curve: usize, power: i32) -> Vec<Word> {
        let mut images: Vec<Word> = (0..self.raw_kinds.len()).map(|g| Word::letter(g as u16)).collect();
        match self.gluings[curve] {
            Gluing::Tree { child, .. } => {
                let y = self.raw_slot_words[child.pants][child.position].clone();
                let yk = if power > 0 { y } else { y.inverse() };
                let inside = self.descendants[curve].as_ref().unwrap();
                for (g, kind) in self.raw_kinds.iter().enumerate() {
                    let t = Word::letter(g as u16);
                    images[g] = match *kind {
                        GeneratorKind::Slot(s) if inside[s.pants] => yk.conjugate(&t),
                        GeneratorKind::Slot(_) => t,
                        GeneratorKind::Stable { curve: f } => {
                            let (first, second) = match self.gluings[f] {
                                Gluing::Stable { first, second, .. } => (first, second),
                                Gluing::Tree { .. } => unreachable!(),
                            };
                            match (inside[first.pants], inside[second.pants]) {
                                (true, true) => yk.conjugate(&t),
                                (true, false) => yk.mul(&t),
                                (false, true) => t.mul(&yk.inverse()),
                                (false, false) => t,
                            }
                        }
                    };
                }
            }
            Gluing::Stable { first, letter, .. } => {
                let w = self.raw_slot_words[first.pants][first.position].clone();
                let wk = if power > 0 { w.inverse() } else { w };
                images[letter] = wk.mul(&Word::letter(letter as u16));
            }
        }
        images
    }

    /// Images of the final letters under the Dehn twist along `curve`.
    pub fn twist_automorphism(&self, curve: usize, direction: TwistDirection) -> Result<Vec<Word>> {
        if curve >= self.gluings.len() {
            return Err(Error::UnknownCurve(format!("#{curve}")));
        }
        let power = match direction {
            TwistDirection::Positive => -1,
            TwistDirection::Negative => 1,
        };
        let raw = self.raw_twist_images(curve, power);
        Ok(self.final_raw.iter().map(|&g| raw[g].substitute(&self.raw_to_final)).collect())
    }

    pub fn twist_word(&self, curve: usize, direction: TwistDirection, w: &Word) -> Result<Word> {
        Ok(w.substitute(&self.twist_automorphism(curve, direction)?))
    }
}

/// The class of `c` after the Dehn twist along pants curve `curve`.
pub fn dehn_twist_action(
    presentation: &Presentation,
    curve: usize,
    direction: TwistDirection,
    c: &CurveClass,
) -> Result<CurveClass> {
    CurveClass::new(&presentation.twist_word(curve, direction, c.word())?)
}
