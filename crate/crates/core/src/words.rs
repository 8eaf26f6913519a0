//! Words in free generators, free and cyclic reduction, and conjugacy-class canonical forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its inverse. Ordering puts `x` before `x^-1` before the next generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u16, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(generator: u16) -> Self {
        Word(vec![Letter::new(generator, false)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|&p| p.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Product followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn concat(parts: &[&Word]) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v).reduced()
    }

    /// `self * w * self^{-1}`.
    pub fn conjugate(&self, w: &Word) -> Word {
        Word::concat(&[self, w, &self.inverse()])
    }

    pub fn cyclically_reduced(&self) -> Word {
        let w = self.reduced().0;
        let mut i = 0;
        let mut j = w.len();
        while j - i >= 2 && w[i].cancels(w[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        let w = &self.0;
        w.windows(2).all(|p| !p[0].cancels(p[1]))
            && (w.len() < 2 || !w[0].cancels(w[w.len() - 1]))
    }

    /// Canonical representative of the conjugacy class of `self` up to inversion.
    pub fn canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return w;
        }
        let a = min_rotation(&w.0);
        let b = min_rotation(&w.inverse().0);
        Word(a.min(b))
    }

    /// True if the cyclically reduced word is `v^k` for some `k ≥ 2`.
    pub fn is_proper_power(&self) -> bool {
        let w = self.cyclically_reduced().0;
        let n = w.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p]))
    }

    /// Apply a substitution `generator -> word` to every letter.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator as usize];
            if l.inverse {
                v.extend(img.inverse().0);
            } else {
                v.extend_from_slice(&img.0);
            }
        }
        Word(v).reduced()
    }

    pub fn count_generator(&self, g: u16) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }
}

fn min_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    (0..n)
        .map(|r| w[r..].iter().chain(w[..r].iter()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Names of the generators of a free (or one-relator) presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Self {
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| {
            let mut cs = n.chars();
            matches!((cs.next(), cs.next()), (Some(c), None) if c.is_ascii_lowercase())
        })
    }

    /// Parse a word. Accepts whitespace-separated tokens with an optional `^-1` suffix
    /// (`a b^-1`), or, for single-letter lowercase alphabets, the compact form where an
    /// uppercase letter is the inverse (`aB`).
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let mut letters = Vec::new();
        if text.contains(char::is_whitespace) || text.contains('^') || !self.single_char() {
            for tok in text.split_whitespace() {
                let (name, inverse) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let g = self
                    .index(name)
                    .ok_or_else(|| Error::InvalidWord(format!("unknown generator `{name}`")))?;
                letters.push(Letter::new(g, inverse));
            }
        } else {
            for ch in text.chars() {
                let lower = ch.to_ascii_lowercase().to_string();
                let g = self
                    .index(&lower)
                    .ok_or_else(|| Error::InvalidWord(format!("unknown generator `{ch}`")))?;
                letters.push(Letter::new(g, ch.is_ascii_uppercase()));
            }
        }
        Ok(Word(letters))
    }

    pub fn format(&self, w: &Word) -> String {
        if self.single_char() {
            w.0.iter()
                .map(|l| {
                    let n = &self.names[l.generator as usize];
                    if l.inverse {
                        n.to_ascii_uppercase()
                    } else {
                        n.clone()
                    }
                })
                .collect()
        } else {
            w.0.iter()
                .map(|l| {
                    let n = &self.names[l.generator as usize];
                    if l.inverse {
                        format!("{n}^-1")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// A free homotopy class of closed curves, stored as a canonical word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    word: Word,
}

impl CurveClass {
    pub fn new(word: &Word) -> Result<Self> {
        let word = word.canonical();
        if word.is_empty() {
            return Err(Error::InvalidWord("trivial class".into()));
        }
        Ok(CurveClass { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("x{}^-1", l.generator) } else { format!("x{}", l.generator) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a".into(), "b".into()])
    }

    #[test]
    fn compact_and_token_forms_agree() {
        let al = ab();
        assert_eq!(al.parse("aB").unwrap(), al.parse("a b^-1").unwrap());
        assert_eq!(al.format(&al.parse("a b^-1").unwrap()), "aB");
    }

    #[test]
    fn canonical_of_conjugates_and_inverse() {
        let al = ab();
        let c = al.parse("ba").unwrap().canonical();
        assert_eq!(c, al.parse("ab").unwrap().canonical());
        assert_eq!(c, al.parse("AB").unwrap().canonical());
        assert_eq!(c, al.parse("bbaB").unwrap().canonical());
    }

    #[test]
    fn proper_powers() {
        let al = ab();
        assert!(al.parse("abab").unwrap().is_proper_power());
        assert!(!al.parse("aab").unwrap().is_proper_power());
        assert!(!al.parse("a").unwrap().is_proper_power());
    }

    #[test]
    fn trivial_class_rejected() {
        let al = ab();
        assert!(CurveClass::new(&al.parse("aA").unwrap()).is_err());
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u16..3, any::<bool>()), 0..12)
            .prop_map(|v| Word(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn canonical_is_conjugation_invariant(w in word_strategy(), u in word_strategy()) {
            let c = u.conjugate(&w);
            prop_assert_eq!(c.canonical(), w.canonical());
            prop_assert_eq!(w.inverse().canonical(), w.canonical());
        }

        #[test]
        fn canonical_is_cyclically_reduced(w in word_strategy()) {
            prop_assert!(w.canonical().is_cyclically_reduced());
        }

        #[test]
        fn inverse_cancels(w in word_strategy()) {
            prop_assert!(w.mul(&w.inverse()).is_empty());
        }
    }
}
