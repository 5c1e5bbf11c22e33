//! Prefix and bifix codes inside a factorial language.
//!
//! Codes are finite sets of nonempty words. A prefix code `X` contained in
//! `S` is `S`-maximal when every word of `S` of length `max |x|` has a
//! prefix in `X`. For bifix codes the number of parses `δ_X(w)` is the
//! number of suffixes of `w` without a prefix in `X`, and the `S`-degree is
//! its maximum over `S`; words longer than every internal factor attain it.
//!
//! When `S` is the language of an exchange `T`, the intervals `I_x`
//! (`x ∈ X`) tile `[0,1[`, and for a bifix code so do the `J_x`. The
//! induced transformation `T_f` is the exchange on those intervals with
//! translation `alpha_x`, which is how [`build_tf`] constructs it.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::symbolic::FactorialLanguage;
use crate::word::{is_proper_prefix, is_proper_suffix, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    /// Any finite set of nonempty words.
    Any,
    Prefix,
    Suffix,
    Bifix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeSet {
    words: BTreeSet<Word>,
}

impl CodeSet {
    /// Checks the words are nonempty and satisfy `kind`.
    pub fn new(words: impl IntoIterator<Item = Word>, kind: CodeKind) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.iter().any(Vec::is_empty) {
            return Err(Error::InvalidMorphism("code words must be nonempty".into()));
        }
        let code = CodeSet { words };
        if matches!(kind, CodeKind::Prefix | CodeKind::Bifix) {
            if let Some((u, v)) = code.prefix_violation() {
                return Err(Error::NotPrefix(format!("{u:?}"), format!("{v:?}")));
            }
        }
        if matches!(kind, CodeKind::Suffix | CodeKind::Bifix) {
            if let Some((u, v)) = code.suffix_violation() {
                return Err(Error::NotBifix(format!("{u:?}"), format!("{v:?}")));
            }
        }
        Ok(code)
    }

    /// Parses whitespace- or comma-separated words.
    pub fn parse(alphabet: &Alphabet, text: &str, kind: CodeKind) -> Result<Self> {
        let words = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| alphabet.parse_word(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(words, kind)
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

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.contains(w)
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A pair `(u, v)` with `u` a proper prefix of `v`.
    pub fn prefix_violation(&self) -> Option<(Word, Word)> {
        // in lexicographic order a proper prefix is immediately followed by
        // a word it prefixes, if any
        let v: Vec<&Word> = self.words.iter().collect();
        v.windows(2).find(|p| is_proper_prefix(p[0], p[1])).map(|p| (p[0].clone(), p[1].clone()))
    }

    /// A pair `(u, v)` with `u` a proper suffix of `v`.
    pub fn suffix_violation(&self) -> Option<(Word, Word)> {
        let set: HashSet<&[Letter]> = self.words.iter().map(Vec::as_slice).collect();
        self.words.iter().find_map(|v| (1..v.len()).find_map(|i| set.get(&v[i..]).map(|u| (u.to_vec(), v.clone()))))
    }

    pub fn is_prefix_code(&self) -> bool {
        self.prefix_violation().is_none()
    }

    pub fn is_bifix_code(&self) -> bool {
        self.prefix_violation().is_none() && self.suffix_violation().is_none()
    }

    /// Whether some code word is a prefix of `w` (or equals it).
    pub fn has_prefix_in(&self, w: &[Letter]) -> bool {
        (1..=w.len()).any(|n| self.words.contains(&w[..n]))
    }

    pub fn format(&self, alphabet: &Alphabet) -> Vec<String> {
        self.words.iter().map(|w| alphabet.format_word(w)).collect()
    }
}

/// A bijection from a source alphabet `B` onto a code `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingMorphism {
    source: Alphabet,
    images: Vec<Word>,
}

/// On-disk form of a [`CodingMorphism`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub source_alphabet: Vec<String>,
    pub images: BTreeMap<String, String>,
}

const DEFAULT_NAMES: &str = "uvwxyztsrqponm";

impl CodingMorphism {
    pub fn new(source: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidMorphism(format!("{} images for {} letters", images.len(), source.len())));
        }
        if images.iter().any(Vec::is_empty) {
            return Err(Error::InvalidMorphism("images must be nonempty".into()));
        }
        let distinct: HashSet<&Word> = images.iter().collect();
        if distinct.len() != images.len() {
            return Err(Error::InvalidMorphism("images are not distinct".into()));
        }
        Ok(CodingMorphism { source, images })
    }

    /// Names the words of `x`, in lexicographic order, `u, v, w, x, ...`
    /// (or `x0, x1, ...` for large codes).
    pub fn from_code(x: &CodeSet) -> Self {
        let names: Vec<String> = if x.len() <= DEFAULT_NAMES.len() {
            DEFAULT_NAMES.chars().take(x.len()).map(String::from).collect()
        } else {
            (0..x.len()).map(|i| format!("x{i}")).collect()
        };
        Self::new(Alphabet::new(names).expect("distinct names"), x.words().cloned().collect()).expect("valid code")
    }

    pub fn from_file(file: &CodeFile, target: &Alphabet) -> Result<Self> {
        let source = Alphabet::new(file.source_alphabet.clone())?;
        if file.images.len() != source.len() {
            return Err(Error::InvalidMorphism("images must match the source alphabet".into()));
        }
        let images = source
            .names()
            .iter()
            .map(|b| {
                let img = file.images.get(b).ok_or_else(|| Error::InvalidMorphism(format!("no image for `{b}`")))?;
                target.parse_word(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, images)
    }

    pub fn from_json(s: &str, target: &Alphabet) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?, target)
    }

    pub fn to_file(&self, target: &Alphabet) -> CodeFile {
        CodeFile {
            source_alphabet: self.source.names().to_vec(),
            images: self
                .source
                .letters()
                .map(|b| (self.source.name(b).to_string(), target.format_word(&self.images[b as usize])))
                .collect(),
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn image(&self, b: Letter) -> &[Letter] {
        &self.images[b as usize]
    }

    pub fn code(&self) -> CodeSet {
        CodeSet { words: self.images.iter().cloned().collect() }
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, y: &[Letter]) -> Word {
        y.iter().flat_map(|&b| self.images[b as usize].iter().copied()).collect()
    }
}

pub(crate) fn require_len(s: &FactorialLanguage, needed: usize) -> Result<()> {
    if s.max_len() < needed {
        return Err(Error::TruncationTooShort { needed, available: s.max_len() });
    }
    Ok(())
}

fn require_inside(x: &CodeSet, s: &FactorialLanguage) -> Result<()> {
    match x.words().find(|w| !s.contains(w)) {
        Some(w) => Err(Error::NotInLanguage(s.format_word(w))),
        None => Ok(()),
    }
}

/// Some word of `S` of length `max |x|` without a prefix in `X`.
fn maximality_witness(x: &CodeSet, s: &FactorialLanguage) -> Option<Word> {
    s.words_of_length(x.max_word_len()).find(|w| !x.has_prefix_in(w)).cloned()
}

/// Whether `X` is a prefix code contained in `S` that is `S`-maximal.
pub fn is_s_maximal_prefix(x: &CodeSet, s: &FactorialLanguage) -> Result<bool> {
    require_len(s, x.max_word_len())?;
    require_inside(x, s)?;
    Ok(x.is_prefix_code() && maximality_witness(x, s).is_none())
}

/// `δ_X(w)`: suffixes of `w`, from `w` itself down to the empty word,
/// having no prefix in `X`.
pub fn parse_count(x: &CodeSet, w: &[Letter]) -> usize {
    (0..=w.len()).filter(|&i| !x.has_prefix_in(&w[i..])).count()
}

/// Words `w` with `uwv ∈ X` for nonempty `u, v`.
pub fn internal_factors(x: &CodeSet) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in x.words() {
        for i in 1..w.len() {
            for j in i..w.len() {
                out.insert(w[i..j].to_vec());
            }
        }
    }
    out
}

fn degree_on(x: &CodeSet, s: &FactorialLanguage) -> usize {
    s.words_of_length(s.max_len()).map(|w| parse_count(x, w)).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifixReport {
    pub s_maximal: bool,
    pub degree: usize,
    pub internal_factors: BTreeSet<Word>,
    pub kernel: BTreeSet<Word>,
    /// `X` sorted by the left endpoints of `I_x` (exchange-backed only).
    pub order1: Option<Vec<Word>>,
    /// `X` sorted by the left endpoints of `J_x` (exchange-backed only).
    pub order2: Option<Vec<Word>>,
}

/// Degree, internal factors, kernel, and (given the exchange generating
/// `S`) the two interval orders of an `S`-maximal bifix code.
///
/// Requires `S` truncated at no less than twice the longest code word.
pub fn analyze_bifix(x: &CodeSet, s: &FactorialLanguage, t: Option<&Iet>) -> Result<BifixReport> {
    if let Some((u, v)) = x.prefix_violation() {
        return Err(Error::NotPrefix(s.format_word(&u), s.format_word(&v)));
    }
    if let Some((u, v)) = x.suffix_violation() {
        return Err(Error::NotBifix(s.format_word(&u), s.format_word(&v)));
    }
    require_len(s, 2 * x.max_word_len())?;
    require_inside(x, s)?;
    if let Some(w) = maximality_witness(x, s) {
        return Err(Error::NotSMaximal(s.format_word(&w)));
    }
    let degree = degree_on(x, s);
    let internal = internal_factors(x);
    let kernel = x.words().filter(|w| internal.contains(*w)).cloned().collect();
    let (order1, order2) = match t {
        Some(t) => {
            let (o1, o2) = interval_orders(t, x)?;
            (Some(o1), Some(o2))
        }
        None => (None, None),
    };
    Ok(BifixReport { s_maximal: true, degree, internal_factors: internal, kernel, order1, order2 })
}

/// `X` sorted by left endpoints of `I_x` and of `J_x`.
pub fn interval_orders(t: &Iet, x: &CodeSet) -> Result<(Vec<Word>, Vec<Word>)> {
    let mut with_i = Vec::new();
    let mut with_j = Vec::new();
    for w in x.words() {
        let i = t.i_interval(w).ok_or_else(|| Error::NotInLanguage(t.alphabet().format_word(w)))?;
        let j = i.translate(&t.word_translation(w));
        with_i.push((i.left, w.clone()));
        with_j.push((j.left, w.clone()));
    }
    let sort =
        |v: &mut Vec<(crate::QuadraticNumber, Word)>| v.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("same field"));
    sort(&mut with_i);
    sort(&mut with_j);
    Ok((with_i.into_iter().map(|p| p.1).collect(), with_j.into_iter().map(|p| p.1).collect()))
}

struct Search<'a> {
    s: &'a FactorialLanguage,
    degree: usize,
    max_word_len: usize,
    chosen: Vec<Word>,
    expanded: HashSet<Word>,
    found: Vec<CodeSet>,
}

impl Search<'_> {
    fn suffix_compatible(&self, w: &[Letter]) -> bool {
        self.chosen.iter().all(|x| !w.ends_with(x) && !x.ends_with(w))
    }

    /// Lower bound on `δ_X(w)` for an expanded node `w`: its suffixes that
    /// are expanded nodes (or empty) can have no prefix in the final code.
    fn expanded_suffixes(&self, w: &[Letter]) -> usize {
        1 + (0..w.len()).filter(|&i| self.expanded.contains(&w[i..])).count()
    }

    fn run(&mut self, pending: &mut Vec<Word>) {
        let Some(w) = pending.pop() else {
            let code = CodeSet { words: self.chosen.iter().cloned().collect() };
            if degree_on(&code, self.s) == self.degree {
                self.found.push(code);
            }
            return;
        };
        if self.suffix_compatible(&w) {
            self.chosen.push(w.clone());
            self.run(pending);
            self.chosen.pop();
        }
        if w.len() < self.max_word_len {
            let children: Vec<Word> = self
                .s
                .right_extensions(&w)
                .into_iter()
                .map(|a| {
                    let mut wa = w.clone();
                    wa.push(a);
                    wa
                })
                .collect();
            if !children.is_empty() {
                self.expanded.insert(w.clone());
                if self.expanded_suffixes(&w) <= self.degree {
                    let base = pending.len();
                    pending.extend(children.into_iter().rev());
                    self.run(pending);
                    pending.truncate(base);
                }
                self.expanded.remove(&w);
            }
        }
        pending.push(w);
    }
}

/// Every `S`-maximal bifix code of `S`-degree `degree` whose words have
/// length at most `max_word_len`, sorted. Complete relative to the bound.
pub fn enumerate_maximal_bifix(s: &FactorialLanguage, degree: usize, max_word_len: usize) -> Result<Vec<CodeSet>> {
    if degree == 0 {
        return Err(Error::Format("degree must be at least 1".into()));
    }
    require_len(s, max_word_len)?;
    let mut search =
        Search { s, degree, max_word_len, chosen: Vec::new(), expanded: HashSet::new(), found: Vec::new() };
    let mut pending: Vec<Word> = s.alphabet().letters().rev().map(|a| vec![a]).filter(|w| s.contains(w)).collect();
    search.expanded.insert(Word::new());
    search.run(&mut pending);
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// Result of [`decode_word`]: `f(symbols)` is the first `consumed` letters
/// and `remainder` is a proper prefix of a code word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub symbols: Word,
    pub consumed: usize,
    pub remainder: Word,
}

/// Greedy left-to-right factorization over a prefix code.
pub fn decode_word(x: &[Letter], f: &CodingMorphism) -> Result<Decoded> {
    if let Some((u, v)) = f.code().prefix_violation() {
        return Err(Error::NotPrefix(format!("{u:?}"), format!("{v:?}")));
    }
    let mut symbols = Word::new();
    let mut pos = 0;
    'outer: while pos < x.len() {
        for b in f.source().letters() {
            if x[pos..].starts_with(f.image(b)) {
                symbols.push(b);
                pos += f.image(b).len();
                continue 'outer;
            }
        }
        let rest = &x[pos..];
        if f.source().letters().any(|b| is_proper_prefix(rest, f.image(b))) {
            break;
        }
        return Err(Error::NotDecodable(pos));
    }
    Ok(Decoded { symbols, consumed: pos, remainder: x[pos..].to_vec() })
}

/// The exchange `T_f` on the source alphabet of `f`: letter `b` acts on
/// `I_{f(b)}` by the translation `alpha_{f(b)}`.
pub fn build_tf(t: &Iet, f: &CodingMorphism, s: &FactorialLanguage) -> Result<Iet> {
    let x = f.code();
    let fmt = |w: &[Letter]| t.alphabet().format_word(w);
    if let Some((u, v)) = x.prefix_violation() {
        return Err(Error::NotPrefix(fmt(&u), fmt(&v)));
    }
    if let Some((u, v)) = x.suffix_violation() {
        return Err(Error::NotBifix(fmt(&u), fmt(&v)));
    }
    require_len(s, x.max_word_len())?;
    require_inside(&x, s)?;
    if let Some(w) = maximality_witness(&x, s) {
        return Err(Error::NotSMaximal(fmt(&w)));
    }
    let mut intervals = Vec::with_capacity(x.len());
    let mut translations = Vec::with_capacity(x.len());
    for b in f.source().letters() {
        let img = f.image(b);
        intervals.push(t.i_interval(img).ok_or_else(|| Error::NotInLanguage(fmt(img)))?);
        translations.push(t.word_translation(img));
    }
    let mut tf = Iet::from_intervals(f.source().names().to_vec(), intervals, translations)?;
    tf.set_field(t.field());
    Ok(tf)
}

/// Words `y` over the source alphabet with `|y| <= out_len` and `f(y) ∈ S`.
pub fn decode_language(s: &FactorialLanguage, f: &CodingMorphism, out_len: usize) -> Result<FactorialLanguage> {
    require_len(s, out_len * f.max_image_len())?;
    let mut words = Vec::new();
    let mut frontier = vec![(Word::new(), Word::new())];
    for _ in 0..out_len {
        let mut next = Vec::new();
        for (y, fy) in &frontier {
            for b in f.source().letters() {
                let mut fyb = fy.clone();
                fyb.extend_from_slice(f.image(b));
                if s.contains(&fyb) {
                    let mut yb = y.clone();
                    yb.push(b);
                    next.push((yb, fyb));
                }
            }
        }
        words.extend(next.iter().map(|(y, _)| y.clone()));
        frontier = next;
    }
    FactorialLanguage::from_words(f.source().clone(), out_len, words)
}

/// Checks `X ⊂ S`, bifix, and `S`-maximal, reporting the first failure.
pub fn require_maximal_bifix(x: &CodeSet, s: &FactorialLanguage) -> Result<()> {
    if let Some((u, v)) = x.prefix_violation() {
        return Err(Error::NotPrefix(s.format_word(&u), s.format_word(&v)));
    }
    if let Some((u, v)) = x.suffix_violation() {
        return Err(Error::NotBifix(s.format_word(&u), s.format_word(&v)));
    }
    require_len(s, x.max_word_len())?;
    require_inside(x, s)?;
    match maximality_witness(x, s) {
        Some(w) => Err(Error::NotSMaximal(s.format_word(&w))),
        None => Ok(()),
    }
}

/// Whether `u` is a proper suffix of `v`; re-exported for callers building codes.
pub fn suffix_of(u: &[Letter], v: &[Letter]) -> bool {
    is_proper_suffix(u, v)
}
