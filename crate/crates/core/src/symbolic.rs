//! Natural codings and truncated factorial languages.
//!
//! A [`FactorialLanguage`] holds every word of a factorial set up to a
//! fixed length. Languages of exchanges are generated by refining the
//! intervals `I_w`, which does not depend on a base point; substitution
//! languages by iterating the substitution until the truncated factor set
//! is stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact_field::QuadraticNumber;
use crate::iet::{Iet, SemiInterval};
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialLanguage {
    alphabet: Alphabet,
    levels: Vec<BTreeSet<Word>>,
}

impl FactorialLanguage {
    /// Builds a language from words of length at most `max_len`, checking
    /// that the set is closed under taking factors.
    pub fn from_words(alphabet: Alphabet, max_len: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut levels = vec![BTreeSet::new(); max_len + 1];
        levels[0].insert(Word::new());
        for w in words {
            if w.len() > max_len {
                return Err(Error::Format(format!("word `{}` longer than {max_len}", alphabet.format_word(&w))));
            }
            if w.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::Format("letter outside the alphabet".into()));
            }
            levels[w.len()].insert(w);
        }
        let lang = FactorialLanguage { alphabet, levels };
        if let Some(w) = lang.factoriality_violation() {
            return Err(Error::Format(format!(
                "not factorial: a factor of `{}` is missing",
                lang.alphabet.format_word(&w)
            )));
        }
        Ok(lang)
    }

    fn from_levels(alphabet: Alphabet, levels: Vec<BTreeSet<Word>>) -> Self {
        FactorialLanguage { alphabet, levels }
    }

    /// Words of `self` up to length `max_len`.
    pub fn truncate(&self, max_len: usize) -> FactorialLanguage {
        let levels = self.levels.iter().take(max_len + 1).cloned().collect();
        FactorialLanguage { alphabet: self.alphabet.clone(), levels }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.levels.get(w.len()).is_some_and(|l| l.contains(w))
    }

    /// Words of length `n`, sorted in alphabet order.
    pub fn words_of_length(&self, n: usize) -> impl Iterator<Item = &Word> {
        self.levels.get(n).into_iter().flatten()
    }

    /// All words, by length then alphabet order; starts with the empty word.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.levels.iter().flatten()
    }

    pub fn count(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    pub fn count_of_length(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, BTreeSet::len)
    }

    /// `R(w) = {a | wa in S}`.
    pub fn right_extensions(&self, w: &[Letter]) -> Vec<Letter> {
        let mut wa = w.to_vec();
        wa.push(0);
        self.alphabet
            .letters()
            .filter(|&a| {
                *wa.last_mut().unwrap() = a;
                self.contains(&wa)
            })
            .collect()
    }

    /// `L(w) = {a | aw in S}`.
    pub fn left_extensions(&self, w: &[Letter]) -> Vec<Letter> {
        let mut aw = Vec::with_capacity(w.len() + 1);
        aw.push(0);
        aw.extend_from_slice(w);
        self.alphabet
            .letters()
            .filter(|&a| {
                aw[0] = a;
                self.contains(&aw)
            })
            .collect()
    }

    /// `E(w) = {(a, b) | awb in S}`.
    pub fn bi_extensions(&self, w: &[Letter]) -> Vec<(Letter, Letter)> {
        let mut awb = Vec::with_capacity(w.len() + 2);
        awb.push(0);
        awb.extend_from_slice(w);
        awb.push(0);
        let last = awb.len() - 1;
        let mut out = Vec::new();
        for a in self.alphabet.letters() {
            for b in self.alphabet.letters() {
                awb[0] = a;
                awb[last] = b;
                if self.contains(&awb) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Some word whose two maximal proper factors are not both present.
    pub fn factoriality_violation(&self) -> Option<Word> {
        self.words()
            .filter(|w| !w.is_empty())
            .find(|w| !self.contains(&w[1..]) || !self.contains(&w[..w.len() - 1]))
            .cloned()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        self.alphabet.format_word(w)
    }

    /// Plain-text form: `alphabet:` and `maxlen:` headers followed by one
    /// word per line. The empty word is implicit.
    pub fn to_text(&self) -> Result<String> {
        if !self.alphabet.single_char() {
            return Err(Error::Format("language files need single-character symbols".into()));
        }
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet.names().join(" ")).unwrap();
        writeln!(out, "maxlen: {}", self.max_len()).unwrap();
        for w in self.words().filter(|w| !w.is_empty()) {
            writeln!(out, "{}", self.alphabet.format_word(w)).unwrap();
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut max_len = None;
        let mut words = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(Alphabet::new(rest.split_whitespace().map(String::from))?);
            } else if let Some(rest) = line.strip_prefix("maxlen:") {
                max_len = Some(rest.trim().parse::<usize>().map_err(|e| Error::Format(format!("maxlen: {e}")))?);
            } else {
                let a = alphabet.as_ref().ok_or_else(|| Error::Format("word before alphabet header".into()))?;
                words.push(a.parse_word(line)?);
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Format("missing alphabet header".into()))?;
        if !alphabet.single_char() {
            return Err(Error::Format("language files need single-character symbols".into()));
        }
        let max_len = max_len.ok_or_else(|| Error::Format("missing maxlen header".into()))?;
        Self::from_words(alphabet, max_len, words)
    }
}

/// The first `n` letters of the natural coding of `z`.
pub fn natural_coding(t: &Iet, z: &QuadraticNumber, n: usize) -> Result<Word> {
    t.letter_at(z)?;
    let mut z = z.clone();
    let mut out = Word::with_capacity(n);
    for _ in 0..n {
        let (a, next) = t.step(&z);
        out.push(a);
        z = next;
    }
    Ok(out)
}

/// Words of length at most `max_len` with nonempty `I_w`, by interval
/// refinement. Requires no connection within `max_len` steps; see
/// [`language_of_iet_unchecked`] to skip that check.
pub fn language_of_iet(t: &Iet, max_len: usize) -> Result<FactorialLanguage> {
    t.require_regular(max_len.max(1))?;
    Ok(language_of_iet_unchecked(t, max_len))
}

/// Same refinement without the regularity precheck. For a transformation
/// with connections the result is `{w | I_w nonempty}`, which may differ
/// from the factors of a particular orbit.
pub fn language_of_iet_unchecked(t: &Iet, max_len: usize) -> FactorialLanguage {
    language_with_intervals(t, max_len).0
}

/// The language together with `I_w` for every member, level by level.
pub fn language_with_intervals(t: &Iet, max_len: usize) -> (FactorialLanguage, Vec<Vec<(Word, SemiInterval)>>) {
    let mut levels = vec![BTreeSet::from([Word::new()])];
    let mut intervals = vec![vec![(Word::new(), SemiInterval::unit())]];
    let mut frontier = vec![(Word::new(), SemiInterval::unit(), QuadraticNumber::zero())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, iw, shift) in &frontier {
            for a in t.alphabet().letters() {
                if let Some(iwa) = t.refine(iw, shift, a) {
                    let mut wa = w.clone();
                    wa.push(a);
                    next.push((wa, iwa, shift + &t.translations()[a as usize]));
                }
            }
        }
        levels.push(next.iter().map(|(w, _, _)| w.clone()).collect());
        intervals.push(next.iter().map(|(w, i, _)| (w.clone(), i.clone())).collect());
        frontier = next;
    }
    (FactorialLanguage::from_levels(t.alphabet().clone(), levels), intervals)
}

/// `lambda(w) = |I_w|`, zero when `I_w` is empty.
pub fn invariant_measure(t: &Iet, w: &[Letter]) -> QuadraticNumber {
    t.i_interval(w).map_or_else(QuadraticNumber::zero, |i| i.length())
}

/// A morphism sending each letter to a nonempty word over the same alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Word>,
}

impl Substitution {
    /// Rules as `(letter, image)` pairs; the pair order fixes the alphabet order.
    pub fn new(rules: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(rules.iter().map(|(l, _)| l.to_string()))?;
        let images = rules
            .iter()
            .map(|(l, img)| {
                let w = alphabet.parse_word(img)?;
                if w.is_empty() {
                    return Err(Error::InvalidSubstitution(format!("image of `{l}` is empty")));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { alphabet, rules: images })
    }

    /// Parses `a:ab;b:a`.
    pub fn parse(spec: &str) -> Result<Self> {
        let pairs = spec
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let (l, img) =
                    p.split_once(':').ok_or_else(|| Error::InvalidSubstitution(format!("rule `{p}` lacks `:`")))?;
                Ok((l.trim(), img.trim()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&pairs)
    }

    pub fn fibonacci() -> Self {
        Self::new(&[("a", "ab"), ("b", "a")]).unwrap()
    }

    pub fn tribonacci() -> Self {
        Self::new(&[("a", "ab"), ("b", "ac"), ("c", "a")]).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.rules[a as usize]
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&a| self.rules[a as usize].iter().copied()).collect()
    }

    /// Some power `f^k`, `k <= |A|^2`, has every letter in every image.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        let base: Vec<Vec<bool>> =
            (0..n).map(|a| (0..n).map(|b| self.rules[a].contains(&(b as Letter))).collect()).collect();
        let mut power = base.clone();
        for _ in 0..n * n {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            // reach[a][c] = exists b: power[a][b] && base[b][c]
            power = (0..n).map(|a| (0..n).map(|c| (0..n).any(|b| power[a][b] && base[b][c])).collect()).collect();
        }
        false
    }
}

fn factors_up_to(w: &[Letter], max_len: usize) -> Vec<BTreeSet<Word>> {
    let mut levels = vec![BTreeSet::new(); max_len + 1];
    levels[0].insert(Word::new());
    for (n, level) in levels.iter_mut().enumerate().take(max_len.min(w.len()) + 1).skip(1) {
        level.extend(w.windows(n).map(<[Letter]>::to_vec));
    }
    levels
}

/// Factors of length at most `max_len` of the fixpoint `f^ω(seed)`.
///
/// Iterates `f` on the seed until two successive iterates have the same
/// truncated factor set; since the factors of `f(w)` up to a given length
/// are determined by those of `w`, the set is then final. When
/// `f(seed) = seed` the fixpoint is taken to be `seed^ω`.
pub fn substitution_language(f: &Substitution, seed: &str, max_len: usize) -> Result<FactorialLanguage> {
    let seed_letter = f.alphabet.letter(seed)?;
    let first = f.image(seed_letter);
    if first[0] != seed_letter {
        return Err(Error::NoFixpoint(seed.to_string()));
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if first.len() == 1 {
        let periodic = vec![seed_letter; max_len];
        return Ok(FactorialLanguage::from_levels(f.alphabet.clone(), factors_up_to(&periodic, max_len)));
    }
    let mut w = vec![seed_letter];
    let mut current = factors_up_to(&w, max_len);
    loop {
        w = f.apply(&w);
        let next = factors_up_to(&w, max_len);
        if next == current {
            return Ok(FactorialLanguage::from_levels(f.alphabet.clone(), next));
        }
        current = next;
    }
}

/// Words of length `n` with at least two right (resp. left) extensions.
pub fn special_words(s: &FactorialLanguage, n: usize) -> Result<(Vec<Word>, Vec<Word>)> {
    if n >= s.max_len() {
        return Err(Error::TruncationTooShort { needed: n + 1, available: s.max_len() });
    }
    let right = s.words_of_length(n).filter(|w| s.right_extensions(w).len() >= 2).cloned().collect();
    let left = s.words_of_length(n).filter(|w| s.left_extensions(w).len() >= 2).cloned().collect();
    Ok((right, left))
}

/// For each `n` up to the truncation, the least `m` such that every word
/// of length `m` contains all words of length `n` as factors, if such an
/// `m` exists within the truncation. A finite-range witness of uniform
/// recurrence, not a proof.
pub fn recurrence_windows(s: &FactorialLanguage) -> Vec<Option<usize>> {
    (0..=s.max_len())
        .map(|n| {
            let targets: Vec<&Word> = s.words_of_length(n).collect();
            (n..=s.max_len()).find(|&m| s.words_of_length(m).all(|w| targets.iter().all(|t| has_factor(w, t))))
        })
        .collect()
}

fn has_factor(w: &[Letter], t: &[Letter]) -> bool {
    t.is_empty() || w.windows(t.len()).any(|x| x == t)
}

/// Looks for `u, w` with `|u|, |w| <= k` such that no `v` makes `uvw` a
/// member within the truncation. `None` means recurrent on the tested range.
pub fn recurrence_counterexample(s: &FactorialLanguage, k: usize) -> Option<(Word, Word)> {
    let short: Vec<&Word> = (1..=k).flat_map(|n| s.words_of_length(n)).collect();
    for u in &short {
        for w in &short {
            let found = s.words().filter(|x| x.len() >= u.len() + w.len()).any(|x| x.starts_with(u) && x.ends_with(w));
            if !found {
                return Some(((*u).clone(), (*w).clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::golden_alpha;
    use crate::iet::golden_rotation;

    fn word(s: &str) -> Word {
        Alphabet::from_chars("abc").unwrap().parse_word(s).unwrap()
    }

    fn strings(lang: &FactorialLanguage) -> Vec<String> {
        lang.words().map(|w| lang.format_word(w)).collect()
    }

    #[test]
    fn natural_codings() {
        let r = golden_rotation();
        let a = golden_alpha();
        assert_eq!(natural_coding(&r, &a, 8).unwrap(), word("abaababa"));
        assert_eq!(natural_coding(&r, &QuadraticNumber::zero(), 9).unwrap(), word("aabaababa"));
        assert_eq!(natural_coding(&r, &a, 0).unwrap(), Word::new());
        assert!(natural_coding(&r, &QuadraticNumber::one(), 3).is_err());
    }

    #[test]
    fn fibonacci_language_small() {
        let r = golden_rotation();
        let s = language_of_iet(&r, 2).unwrap();
        assert_eq!(strings(&s), ["", "a", "b", "aa", "ab", "ba"]);
        let s4 = language_of_iet(&r, 4).unwrap();
        for w in ["aaba", "abaa", "abab", "baab", "baba"] {
            assert!(s4.contains(&word(w)), "{w}");
        }
        assert!(!s4.contains(&word("bb")));
        assert!(!s4.contains(&word("aaa")));
        assert_eq!(strings(&language_of_iet(&r, 0).unwrap()), [""]);
    }

    #[test]
    fn language_requires_regularity() {
        let id =
            crate::iet::iet_from_pairs(&[("a", "1/2".parse().unwrap()), ("b", "1/2".parse().unwrap())], &["a", "b"])
                .unwrap();
        assert!(matches!(language_of_iet(&id, 3), Err(Error::NotRegularToDepth { .. })));
        let forced = language_of_iet_unchecked(&id, 3);
        assert_eq!(forced.count_of_length(3), 2);
    }

    #[test]
    fn measures() {
        let r = golden_rotation();
        let a = golden_alpha();
        let one = QuadraticNumber::one();
        assert_eq!(invariant_measure(&r, &word("bab")), &(&a * &QuadraticNumber::from(3)) - &one);
        assert_eq!(invariant_measure(&r, &[]), one);
        assert_eq!(invariant_measure(&r, &word("baa")), &one - &(&a + &a));
        assert_eq!(invariant_measure(&r, &word("bb")), QuadraticNumber::zero());
    }

    #[test]
    fn substitution_languages() {
        let fib = substitution_language(&Substitution::fibonacci(), "a", 4).unwrap();
        assert_eq!(fib, language_of_iet(&golden_rotation(), 4).unwrap());
        let tri = substitution_language(&Substitution::tribonacci(), "a", 2).unwrap();
        assert_eq!(strings(&tri), ["", "a", "b", "c", "aa", "ab", "ac", "ba", "ca"]);
        let id = Substitution::new(&[("a", "a")]).unwrap();
        assert_eq!(strings(&substitution_language(&id, "a", 3).unwrap()), ["", "a", "aa", "aaa"]);
    }

    #[test]
    fn substitution_errors() {
        let f = Substitution::fibonacci();
        assert!(matches!(substitution_language(&f, "b", 3), Err(Error::NoFixpoint(_))));
        let reducible = Substitution::new(&[("a", "ab"), ("b", "b")]).unwrap();
        assert!(!reducible.is_primitive());
        assert!(matches!(substitution_language(&reducible, "a", 3), Err(Error::NotPrimitive)));
        assert!(Substitution::parse("a:ab;b:").is_err());
        assert!(Substitution::parse("a:ac").is_err());
        assert_eq!(Substitution::parse("a:ab;b:a").unwrap(), f);
    }

    #[test]
    fn special() {
        let fib = language_of_iet(&golden_rotation(), 4).unwrap();
        let (r, l) = special_words(&fib, 1).unwrap();
        assert_eq!(r, vec![word("a")]);
        assert_eq!(l, vec![word("a")]);
        assert!(special_words(&fib, 4).is_err());

        let tri = substitution_language(&Substitution::tribonacci(), "a", 6).unwrap();
        let (r, _) = special_words(&tri, 0).unwrap();
        assert_eq!(r, vec![Word::new()]);
        assert_eq!(tri.right_extensions(&[]).len(), 3);
        let (r, l) = special_words(&tri, 2).unwrap();
        assert!(r.contains(&word("ba")));
        assert!(l.contains(&word("ab")));
        let (r, l) = special_words(&tri, 4).unwrap();
        assert!(r.contains(&word("caba")));
        assert!(l.contains(&word("abac")));
    }

    #[test]
    fn text_round_trip() {
        let tri = substitution_language(&Substitution::tribonacci(), "a", 5).unwrap();
        let text = tri.to_text().unwrap();
        assert!(text.starts_with("alphabet: a b c\nmaxlen: 5\n"));
        assert_eq!(FactorialLanguage::from_text(&text).unwrap(), tri);
        let commented = "# test\nalphabet: a b\nmaxlen: 2\na\nb # letters\nab\n";
        let l = FactorialLanguage::from_text(commented).unwrap();
        assert_eq!(l.count(), 4);
        assert!(FactorialLanguage::from_text("alphabet: a b\nmaxlen: 2\nab\n").is_err());
        assert!(FactorialLanguage::from_text("maxlen: 2\n").is_err());
    }

    #[test]
    fn windows_and_recurrence() {
        let fib = language_of_iet(&golden_rotation(), 10).unwrap();
        let win = recurrence_windows(&fib);
        assert_eq!(win[0], Some(0));
        assert_eq!(win[1], Some(3));
        assert!(recurrence_counterexample(&fib, 2).is_none());
    }
}
