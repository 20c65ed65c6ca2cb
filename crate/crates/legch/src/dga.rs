//! Free unital noncommutative graded algebra over Z/2 with a Leibniz-extended
//! degree -1 differential.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

pub type Action = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DgaError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("d^2 != 0: fails at `{generator}` with residual {residual}")]
    DSquared { generator: String, residual: String },
    #[error("word in d({generator}) has degree {got}, expected {expected}")]
    Degree {
        generator: String,
        got: i64,
        expected: i64,
    },
    #[error("differential of `{0}` is not action-decreasing")]
    ActionOrder(String),
    #[error("malformed dga dump: {0}")]
    Parse(String),
}

/// A named generator with its grading and optional action.
///
/// Gradings live in Z when `modulus == 0` on the owning [`Dga`], otherwise in
/// Z/modulus (values normalized to `0..modulus`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub grading: i64,
    pub action: Option<Action>,
}

/// Index of a generator within its DGA.
pub type GenId = usize;

/// A word in the free algebra: an ordered list of generator ids. The empty
/// word is the unit 1.
pub type Word = Vec<GenId>;

/// A finite Z/2-linear combination of words, kept in canonical form: no
/// duplicate words, words ordered length-lexicographically by generator name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    words: BTreeSet<Word>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        let mut words = BTreeSet::new();
        words.insert(Vec::new());
        AlgebraElement { words }
    }

    pub fn from_word(w: Word) -> Self {
        let mut words = BTreeSet::new();
        words.insert(w);
        AlgebraElement { words }
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut el = AlgebraElement::zero();
        for w in iter {
            el.toggle(w);
        }
        el
    }

    /// Adds a word mod 2.
    pub fn toggle(&mut self, w: Word) {
        if !self.words.remove(&w) {
            self.words.insert(w);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for w in &other.words {
            out.toggle(w.clone());
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in &self.words {
            for b in &other.words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.toggle(w);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// The coefficient of the empty word.
    pub fn constant_part(&self) -> bool {
        self.words.contains(&Vec::new())
    }

    /// The words of length exactly one, as generator ids.
    pub fn linear_part(&self) -> Vec<GenId> {
        self.words
            .iter()
            .filter(|w| w.len() == 1)
            .map(|w| w[0])
            .collect()
    }
}

/// Semi-free DGA over Z/2: named graded generators plus a differential given
/// on generators and extended by the Leibniz rule.
///
/// Construction does not require `d^2 = 0`; use [`Dga::verify_d_squared`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    generators: Vec<Generator>,
    by_name: BTreeMap<String, GenId>,
    diff: Vec<AlgebraElement>,
    /// 0 means Z-graded; m > 0 means gradings are in Z/m.
    pub modulus: i64,
}

/// Outcome of the `d^2 = 0` check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DSquaredReport {
    Ok,
    Fails { generator: String, residual: String },
}

impl Dga {
    pub fn new(generators: Vec<Generator>, modulus: i64) -> Result<Self, DgaError> {
        let mut by_name = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(DgaError::DuplicateGenerator(g.name.clone()));
            }
        }
        let diff = vec![AlgebraElement::zero(); generators.len()];
        let mut dga = Dga {
            generators,
            by_name,
            diff,
            modulus,
        };
        for g in &mut dga.generators {
            g.grading = reduce(g.grading, dga.modulus);
        }
        Ok(dga)
    }

    pub fn set_diff(&mut self, id: GenId, value: AlgebraElement) {
        self.diff[id] = value;
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id]
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn diff_of(&self, id: GenId) -> &AlgebraElement {
        &self.diff[id]
    }

    pub fn name_of(&self, id: GenId) -> &str {
        &self.generators[id].name
    }

    /// Generator ids sorted by name.
    pub fn ids_by_name(&self) -> Vec<GenId> {
        self.by_name.values().copied().collect()
    }

    pub fn reduce_grading(&self, g: i64) -> i64 {
        reduce(g, self.modulus)
    }

    /// Sum of gradings of the letters of a word (empty word has degree 0).
    pub fn word_grading(&self, w: &Word) -> Result<i64, DgaError> {
        let mut sum = 0i64;
        for &id in w {
            let g = self
                .generators
                .get(id)
                .ok_or_else(|| DgaError::UnknownGenerator(format!("#{id}")))?;
            sum += g.grading;
        }
        Ok(reduce(sum, self.modulus))
    }

    /// Z/2-linear, Leibniz-extended application of the differential.
    pub fn boundary(&self, x: &AlgebraElement) -> Result<AlgebraElement, DgaError> {
        let mut out = AlgebraElement::zero();
        for w in x.words() {
            for (i, &id) in w.iter().enumerate() {
                if id >= self.generators.len() {
                    return Err(DgaError::UnknownGenerator(format!("#{id}")));
                }
                for dw in self.diff[id].words() {
                    let mut word = Vec::with_capacity(w.len() - 1 + dw.len());
                    word.extend_from_slice(&w[..i]);
                    word.extend_from_slice(dw);
                    word.extend_from_slice(&w[i + 1..]);
                    out.toggle(word);
                }
            }
        }
        Ok(out)
    }

    /// Checks `d(d(g)) = 0` for every generator.
    pub fn verify_d_squared(&self) -> DSquaredReport {
        for (id, g) in self.generators.iter().enumerate() {
            let residual = self
                .boundary(&self.diff[id])
                .expect("differential uses known generators");
            if !residual.is_zero() {
                return DSquaredReport::Fails {
                    generator: g.name.clone(),
                    residual: self.render(&residual),
                };
            }
        }
        DSquaredReport::Ok
    }

    /// Checks that every word of `d(g)` has degree `|g| - 1`.
    pub fn verify_degrees(&self) -> Result<(), DgaError> {
        for (id, g) in self.generators.iter().enumerate() {
            let expected = reduce(g.grading - 1, self.modulus);
            for w in self.diff[id].words() {
                let got = self.word_grading(w)?;
                if got != expected {
                    return Err(DgaError::Degree {
                        generator: g.name.clone(),
                        got,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    /// When every generator carries an action, checks that the differential
    /// strictly decreases total action.
    pub fn verify_action_decreasing(&self) -> Result<(), DgaError> {
        if !self.generators.iter().all(|g| g.action.is_some()) {
            return Ok(());
        }
        for (id, g) in self.generators.iter().enumerate() {
            let la = g.action.unwrap();
            for w in self.diff[id].words() {
                let total: Action = w
                    .iter()
                    .map(|&i| self.generators[i].action.unwrap())
                    .fold(Action::zero(), |a, b| a + b);
                if total >= la {
                    return Err(DgaError::ActionOrder(g.name.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter()
                .map(|&id| self.generators[id].name.clone())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Renders an element with words in length-lexicographic order by
    /// generator name.
    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut rendered: Vec<(usize, Vec<String>)> = x
            .words()
            .map(|w| {
                (
                    w.len(),
                    w.iter()
                        .map(|&id| self.generators[id].name.clone())
                        .collect(),
                )
            })
            .collect();
        rendered.sort();
        rendered
            .into_iter()
            .map(|(_, names)| {
                if names.is_empty() {
                    "1".to_string()
                } else {
                    names.join(" ")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Text dump, one line per generator: `name : grading : ∂ = <element>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if self.modulus != 0 {
            out.push_str(&format!("modulus {}\n", self.modulus));
        }
        for (id, g) in self.generators.iter().enumerate() {
            out.push_str(&format!(
                "{} : {} : ∂ = {}\n",
                g.name,
                g.grading,
                self.render(&self.diff[id])
            ));
        }
        out
    }

    /// Parses the output of [`Dga::dump`].
    pub fn parse_dump(text: &str) -> Result<Dga, DgaError> {
        let mut modulus = 0i64;
        let mut raw: Vec<(String, i64, String)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("modulus ") {
                modulus = rest
                    .trim()
                    .parse()
                    .map_err(|_| DgaError::Parse(format!("bad modulus line `{line}`")))?;
                continue;
            }
            let parts: Vec<&str> = line.splitn(3, ':').collect();
            if parts.len() != 3 {
                return Err(DgaError::Parse(format!("expected 3 fields in `{line}`")));
            }
            let name = parts[0].trim().to_string();
            let grading: i64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| DgaError::Parse(format!("bad grading in `{line}`")))?;
            let body = parts[2].trim();
            let body = body
                .strip_prefix("∂ =")
                .or_else(|| body.strip_prefix("∂="))
                .or_else(|| body.strip_prefix("d ="))
                .or_else(|| body.strip_prefix("d="))
                .ok_or_else(|| DgaError::Parse(format!("missing `∂ =` in `{line}`")))?
                .trim()
                .to_string();
            raw.push((name, grading, body));
        }
        let generators: Vec<Generator> = raw
            .iter()
            .map(|(name, grading, _)| Generator {
                name: name.clone(),
                grading: *grading,
                action: None,
            })
            .collect();
        let mut dga = Dga::new(generators, modulus)?;
        for (id, (_, _, body)) in raw.iter().enumerate() {
            let el = dga.parse_element(body)?;
            dga.set_diff(id, el);
        }
        Ok(dga)
    }

    /// Parses `b1 b2 + 1 + a1` style sums of words.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement, DgaError> {
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(AlgebraElement::zero());
        }
        let mut el = AlgebraElement::zero();
        for term in text.split('+') {
            let term = term.trim();
            if term == "1" {
                el.toggle(Vec::new());
                continue;
            }
            let mut word = Vec::new();
            for tok in term.split_whitespace() {
                let id = self
                    .id_of(tok)
                    .ok_or_else(|| DgaError::UnknownGenerator(tok.to_string()))?;
                word.push(id);
            }
            el.toggle(word);
        }
        Ok(el)
    }
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

pub(crate) fn reduce(g: i64, modulus: i64) -> i64 {
    if modulus == 0 {
        g
    } else {
        g.rem_euclid(modulus)
    }
}
