//! Skew products of an exchange with a transitive permutation action.
//!
//! `U(z, q) = (T(z), q·φ(a))` for `z ∈ I_a`, with permutations acting on
//! the right: along a word `w = a_1 ... a_n` the point `q` is moved by
//! `φ(a_1)` first. The copies `I × {q}` are stacked on `[0, 1[` through
//! `(z, q) ↦ (q - 1 + z)/d`, copies in increasing `q`, each in `<_1` order.

use std::collections::BTreeSet;
use std::fmt;

use crate::bifix::{CodeKind, CodeSet};
use crate::error::{Error, Result};
use crate::exact_field::{QuadraticNumber, Rational};
use crate::iet::{Iet, RegularityReport, SemiInterval};
use crate::word::{Alphabet, Letter, Word};

/// A bijection of `{1, ..., d}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d).collect() }
    }

    /// From 1-based images `[σ(1), ..., σ(d)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in images {
            if i == 0 || i > d || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images: images.iter().map(|i| i - 1).collect() })
    }

    /// Cycle notation such as `(2 3)`, `(1 2)(3 4)` or `()`, on `{1..d}`.
    pub fn parse_cycles(s: &str, d: usize) -> Result<Self> {
        let bad = || Error::InvalidPermutation(s.to_string());
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            for &p in &cycle {
                if p == 0 || p > d || std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad());
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            rest = inner[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    /// Largest point named in a cycle string, 0 for `()`.
    fn max_point(s: &str) -> usize {
        s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse().ok()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `q·σ` for 1-based `q`.
    pub fn act(&self, q: usize) -> usize {
        self.images[q - 1] + 1
    }

    /// `self` then `other`: `q·(self other) = (q·self)·other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if done[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !done[i] {
                done[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `φ`: one permutation per letter, generating a transitive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermMorphism {
    d: usize,
    perms: Vec<Permutation>,
}

impl PermMorphism {
    /// `perms[a]` is `φ(a)`; all must act on the same `{1..d}`.
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let d = perms.first().map_or(0, Permutation::degree);
        if d == 0 || perms.iter().any(|p| p.degree() != d) {
            return Err(Error::InvalidPermutation("permutations must share a nonzero degree".into()));
        }
        let m = PermMorphism { d, perms };
        if !m.is_transitive() {
            return Err(Error::NotTransitive(d));
        }
        Ok(m)
    }

    /// Parses `a:(2 3);b:(1 2)`. Letters left out map to the identity;
    /// `d` defaults to the largest point mentioned.
    pub fn parse(alphabet: &Alphabet, spec: &str, d: Option<usize>) -> Result<Self> {
        let mut assigned: Vec<Option<&str>> = vec![None; alphabet.len()];
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, cycles) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected `letter:cycles` in `{part}`")))?;
            let l = alphabet.letter(name.trim())?;
            if assigned[l as usize].replace(cycles.trim()).is_some() {
                return Err(Error::InvalidPermutation(format!("letter `{}` assigned twice", name.trim())));
            }
        }
        let d =
            d.unwrap_or_else(|| assigned.iter().flatten().map(|c| Permutation::max_point(c)).max().unwrap_or(0).max(1));
        let perms = assigned
            .into_iter()
            .map(|c| c.map_or_else(|| Ok(Permutation::identity(d)), |c| Permutation::parse_cycles(c, d)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(perms)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn perm(&self, a: Letter) -> &Permutation {
        &self.perms[a as usize]
    }

    /// `q·φ(w)`.
    pub fn act_word(&self, q: usize, w: &[Letter]) -> usize {
        w.iter().fold(q, |q, &a| self.perms[a as usize].act(q))
    }

    fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.d];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(q) = stack.pop() {
            for p in &self.perms {
                let r = p.images[q];
                if !std::mem::replace(&mut seen[r], true) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        alphabet
            .letters()
            .map(|a| format!("{}:{}", alphabet.name(a), self.perms[a as usize]))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewIet {
    base: Iet,
    perm: PermMorphism,
}

impl SkewIet {
    pub fn new(base: Iet, perm: PermMorphism) -> Result<Self> {
        if perm.perms.len() != base.letter_count() {
            return Err(Error::AlphabetMismatch(format!(
                "{} permutations for {} letters",
                perm.perms.len(),
                base.letter_count()
            )));
        }
        Ok(SkewIet { base, perm })
    }

    pub fn base(&self) -> &Iet {
        &self.base
    }

    pub fn perm(&self) -> &PermMorphism {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.d
    }

    fn check_copy(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.perm.d {
            return Err(Error::OutOfDomain(format!("copy {q} of {}", self.perm.d)));
        }
        Ok(())
    }

    /// Position of `(z, q)` in the stack.
    pub fn stack_point(&self, z: &QuadraticNumber, q: usize) -> QuadraticNumber {
        let d = self.perm.d as i64;
        (z + &QuadraticNumber::from_integer(q as i64 - 1)).scale(&Rational::new(1.into(), d.into()))
    }

    /// Inverse of [`SkewIet::stack_point`].
    pub fn unstack_point(&self, x: &QuadraticNumber) -> Result<(QuadraticNumber, usize)> {
        if x.signum() < 0 || *x >= QuadraticNumber::one() {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        let scaled = x * &QuadraticNumber::from_integer(self.perm.d as i64);
        let mut q = 1;
        while scaled >= QuadraticNumber::from_integer(q as i64) {
            q += 1;
        }
        Ok((&scaled - &QuadraticNumber::from_integer(q as i64 - 1), q))
    }
}

/// `U(z, q) = (T(z), q·ψ(z))`.
pub fn skew_apply(u: &SkewIet, z: &QuadraticNumber, q: usize) -> Result<(QuadraticNumber, usize)> {
    u.check_copy(q)?;
    let a = u.base.letter_at(z)?;
    let (_, next) = u.base.step(z);
    Ok((next, u.perm.perms[a as usize].act(q)))
}

fn skew_name(u: &SkewIet, a: Letter, q: usize) -> String {
    format!("{}_{q}", u.base.alphabet().name(a))
}

/// The skew product as one exchange on `d·s` letters named `a_q`.
pub fn skew_as_iet(u: &SkewIet) -> Iet {
    let d = u.perm.d;
    let inv_d = Rational::new(1.into(), (d as i64).into());
    let mut names = Vec::new();
    let mut intervals = Vec::new();
    let mut translations = Vec::new();
    for q in 1..=d {
        for a in u.base.alphabet().letters() {
            let i = u.base.interval(a);
            let target = u.perm.perms[a as usize].act(q);
            names.push(skew_name(u, a, q));
            intervals.push(SemiInterval { left: u.stack_point(&i.left, q), right: u.stack_point(&i.right, q) });
            let shift = &u.base.translations()[a as usize] + &QuadraticNumber::from_integer(target as i64 - q as i64);
            translations.push(shift.scale(&inv_d));
        }
    }
    let mut t = Iet::from_intervals(names, intervals, translations).expect("stacked copies tile the interval");
    t.set_field(u.base.field());
    t
}

/// Connection search for the skew product over the points `(mu_i, q)`,
/// `mu_i` a nonzero separation point of the base. The copy boundaries
/// `(0, q)` are left out: in the stack they are separation points that the
/// dynamics always connects once `d >= 2`. Witness indices refer to the
/// list of these points ordered by stack position.
pub fn skew_check_regular(u: &SkewIet, depth: usize) -> RegularityReport {
    let stack = skew_as_iet(u);
    let base_seps = &u.base.mu()[..u.base.letter_count() - 1];
    let points: Vec<QuadraticNumber> = (1..=u.perm.d)
        .flat_map(|q| base_seps.iter().map(move |m| (m.clone(), q)))
        .map(|(m, q)| u.stack_point(&m, q))
        .collect();
    stack.connection_report(&points, depth)
}

/// Words read along first-return orbit segments from copy `home` back to
/// itself, of length at most `max_word_len`, found by refining `I_w` in
/// the base.
pub fn return_words(u: &SkewIet, home: usize, max_word_len: usize) -> Result<BTreeSet<Word>> {
    Ok(return_words_with_intervals(u, home, max_word_len)?.into_iter().map(|(w, _)| w).collect())
}

fn return_words_with_intervals(u: &SkewIet, home: usize, max_word_len: usize) -> Result<Vec<(Word, SemiInterval)>> {
    u.check_copy(home)?;
    u.base.require_regular(max_word_len.max(1))?;
    let t = &u.base;
    let mut out = Vec::new();
    let mut stack = vec![(Word::new(), SemiInterval::unit(), QuadraticNumber::zero(), home)];
    while let Some((w, iw, shift, q)) = stack.pop() {
        for a in t.alphabet().letters().rev() {
            let Some(iwa) = t.refine(&iw, &shift, a) else { continue };
            let mut wa = w.clone();
            wa.push(a);
            let qa = u.perm.perms[a as usize].act(q);
            if qa == home {
                out.push((wa, iwa));
            } else if wa.len() < max_word_len {
                let s = &shift + &t.translations()[a as usize];
                stack.push((wa, iwa, s, qa));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// The map induced on `I × {home}` as an exchange whose letters are the
/// return words, named by their spelling. Fails unless the return words
/// found within `max_word_len` cover the whole copy.
pub fn induced_on_home(u: &SkewIet, home: usize, max_word_len: usize) -> Result<(CodeSet, Iet)> {
    let found = return_words_with_intervals(u, home, max_word_len)?;
    let covered = found.iter().fold(QuadraticNumber::zero(), |acc, (_, i)| &acc + &i.length());
    if covered != QuadraticNumber::one() {
        return Err(Error::TruncationTooShort { needed: max_word_len + 1, available: max_word_len });
    }
    let t = &u.base;
    let names = found.iter().map(|(w, _)| t.alphabet().format_word(w)).collect();
    let translations = found.iter().map(|(w, _)| t.word_translation(w)).collect();
    let code = CodeSet::new(found.iter().map(|(w, _)| w.clone()), CodeKind::Bifix)?;
    let intervals = found.into_iter().map(|(_, i)| i).collect();
    let mut induced = Iet::from_intervals(names, intervals, translations)?;
    induced.set_field(t.field());
    Ok((code, induced))
}

/// Schreier's count: a basis of an index-`d` subgroup of a free group of
/// rank `s` has `d(s - 1) + 1` elements.
pub fn schreier_check(x: &CodeSet, d: usize, s: usize) -> bool {
    s >= 1 && x.len() == d * (s - 1) + 1
}
