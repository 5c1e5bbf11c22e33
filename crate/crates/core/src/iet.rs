//! Interval exchange transformations over exact quadratic lengths.
//!
//! An [`Iet`] is given by an alphabet carrying two total orders, the
//! letter order (`<_1`, the order of [`Iet::alphabet`]) and a second
//! order `<_2` ([`Iet::order2`]), together with positive lengths summing
//! to exactly one. Letter `a` moves the semi-interval `I_a = [gamma_a, mu_a[`
//! onto `J_a = [delta_a, nu_a[` by the translation `alpha_a = nu_a - mu_a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_field::QuadraticNumber;
use crate::word::{ranks, Alphabet, Letter, Word};

/// The semi-interval `[left, right[`, never empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemiInterval {
    pub left: QuadraticNumber,
    pub right: QuadraticNumber,
}

impl SemiInterval {
    /// `None` when `left >= right`.
    pub fn new(left: QuadraticNumber, right: QuadraticNumber) -> Option<Self> {
        (left < right).then_some(SemiInterval { left, right })
    }

    pub fn unit() -> Self {
        SemiInterval { left: QuadraticNumber::zero(), right: QuadraticNumber::one() }
    }

    pub fn length(&self) -> QuadraticNumber {
        &self.right - &self.left
    }

    pub fn contains(&self, z: &QuadraticNumber) -> bool {
        &self.left <= z && z < &self.right
    }

    pub fn intersect(&self, other: &SemiInterval) -> Option<SemiInterval> {
        let left = if self.left >= other.left { &self.left } else { &other.left };
        let right = if self.right <= other.right { &self.right } else { &other.right };
        SemiInterval::new(left.clone(), right.clone())
    }

    pub fn translate(&self, by: &QuadraticNumber) -> SemiInterval {
        SemiInterval { left: &self.left + by, right: &self.right + by }
    }

    /// `self < other`: every point of `self` lies left of every point of `other`.
    pub fn precedes(&self, other: &SemiInterval) -> bool {
        self.right <= other.left
    }
}

impl fmt::Display for SemiInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}[", self.left, self.right)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Iet {
    alphabet: Alphabet,
    order2: Vec<Letter>,
    field_d: u64,
    lengths: Vec<QuadraticNumber>,
    mu: Vec<QuadraticNumber>,
    nu: Vec<QuadraticNumber>,
    gamma: Vec<QuadraticNumber>,
    delta: Vec<QuadraticNumber>,
    alpha: Vec<QuadraticNumber>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityStatus {
    RegularUpToDepth,
    ConnectionFound,
}

/// `T^k(mu_i) = mu_j`, separation points numbered from 1 in `<_1` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// Outcome of the bounded connection search. `RegularUpToDepth` is not a
/// proof of regularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub status: RegularityStatus,
    pub depth: usize,
    pub witness: Option<Connection>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.status == RegularityStatus::RegularUpToDepth
    }
}

pub const DEFAULT_DEPTH: usize = 64;

/// On-disk form of an [`Iet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IetFile {
    pub field_d: u64,
    pub order1: Vec<String>,
    pub order2: Vec<String>,
    pub lengths: BTreeMap<String, QuadraticNumber>,
}

impl Iet {
    /// Builds the transformation from named lengths and the two orders,
    /// each listing every letter once.
    pub fn new(
        lengths: &BTreeMap<String, QuadraticNumber>,
        order1: &[impl AsRef<str>],
        order2: &[impl AsRef<str>],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(order1.iter().map(|s| s.as_ref().to_string()))
            .map_err(|e| Error::AlphabetMismatch(e.to_string()))?;
        let order2 = alphabet.order(order2).map_err(|e| Error::AlphabetMismatch(e.to_string()))?;
        if lengths.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch(format!("{} lengths for {} letters", lengths.len(), alphabet.len())));
        }
        let lens = alphabet
            .names()
            .iter()
            .map(|n| lengths.get(n).cloned().ok_or_else(|| Error::AlphabetMismatch(format!("no length for `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(alphabet, order2, lens)
    }

    /// Builds from an alphabet in `<_1` order, the `<_2` order as letters,
    /// and lengths indexed by letter.
    pub fn from_parts(alphabet: Alphabet, order2: Vec<Letter>, lengths: Vec<QuadraticNumber>) -> Result<Self> {
        let s = alphabet.len();
        if order2.len() != s || lengths.len() != s {
            return Err(Error::AlphabetMismatch("orders and lengths must cover the alphabet".into()));
        }
        let mut seen = vec![false; s];
        for &l in &order2 {
            if (l as usize) >= s || std::mem::replace(&mut seen[l as usize], true) {
                return Err(Error::AlphabetMismatch("second order is not a permutation".into()));
            }
        }
        let mut field_d = 0;
        for (l, len) in lengths.iter().enumerate() {
            match (field_d, len.field()) {
                (_, 0) => {}
                (0, e) => field_d = e,
                (d, e) if d != e => return Err(Error::MixedField(d, e)),
                _ => {}
            }
            if len.signum() <= 0 {
                return Err(Error::NonPositiveLength(alphabet.name(l as Letter).to_string()));
            }
        }
        let total = lengths.iter().fold(QuadraticNumber::zero(), |acc, x| &acc + x);
        if total != QuadraticNumber::one() {
            return Err(Error::LengthSum(total.to_string()));
        }

        let mut gamma = Vec::with_capacity(s);
        let mut mu = Vec::with_capacity(s);
        let mut acc = QuadraticNumber::zero();
        for len in &lengths {
            gamma.push(acc.clone());
            acc = &acc + len;
            mu.push(acc.clone());
        }
        let mut delta = vec![QuadraticNumber::zero(); s];
        let mut nu = vec![QuadraticNumber::zero(); s];
        let mut acc = QuadraticNumber::zero();
        for &l in &order2 {
            delta[l as usize] = acc.clone();
            acc = &acc + &lengths[l as usize];
            nu[l as usize] = acc.clone();
        }
        let alpha = nu.iter().zip(&mu).map(|(n, m)| n - m).collect();
        Ok(Iet { alphabet, order2, field_d, lengths, mu, nu, gamma, delta, alpha })
    }

    /// Builds from named semi-intervals and translation values given in
    /// any order: `<_1` is read off the left endpoints, `<_2` off the
    /// images. Fails unless the intervals and their images both tile `[0,1[`.
    pub(crate) fn from_intervals(
        names: Vec<String>,
        intervals: Vec<SemiInterval>,
        translations: Vec<QuadraticNumber>,
    ) -> Result<Self> {
        let mut idx: Vec<usize> = (0..names.len()).collect();
        idx.sort_by(|&a, &b| intervals[a].left.partial_cmp(&intervals[b].left).expect("same field"));
        let alphabet = Alphabet::new(idx.iter().map(|&i| names[i].clone()))?;
        let intervals: Vec<SemiInterval> = idx.iter().map(|&i| intervals[i].clone()).collect();
        let translations: Vec<QuadraticNumber> = idx.iter().map(|&i| translations[i].clone()).collect();
        let mut order2: Vec<Letter> = alphabet.letters().collect();
        let image_left: Vec<QuadraticNumber> = intervals.iter().zip(&translations).map(|(i, t)| &i.left + t).collect();
        order2.sort_by(|&a, &b| image_left[a as usize].partial_cmp(&image_left[b as usize]).expect("same field"));
        let lengths = intervals.iter().map(SemiInterval::length).collect();
        let iet = Self::from_parts(alphabet, order2, lengths)?;
        for (l, i) in intervals.iter().enumerate() {
            if iet.gamma[l] != i.left || iet.alpha[l] != translations[l] {
                return Err(Error::AlphabetMismatch("intervals do not form an exchange".into()));
            }
        }
        Ok(iet)
    }

    pub fn from_file(file: &IetFile) -> Result<Self> {
        for (name, len) in &file.lengths {
            if len.field() != 0 && len.field() != file.field_d {
                return Err(Error::Format(format!(
                    "length of `{name}` lies in Q(sqrt({})), file declares {}",
                    len.field(),
                    file.field_d
                )));
            }
        }
        let mut iet = Self::new(&file.lengths, &file.order1, &file.order2)?;
        iet.field_d = file.field_d;
        Ok(iet)
    }

    pub fn to_file(&self) -> IetFile {
        IetFile {
            field_d: self.field_d,
            order1: self.alphabet.names().to_vec(),
            order2: self.order2.iter().map(|&l| self.alphabet.name(l).to_string()).collect(),
            lengths: self
                .alphabet
                .letters()
                .map(|l| (self.alphabet.name(l).to_string(), self.lengths[l as usize].clone()))
                .collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn field(&self) -> u64 {
        self.field_d
    }

    /// Overrides the recorded field, e.g. when every derived length
    /// happens to be rational.
    pub(crate) fn set_field(&mut self, d: u64) {
        self.field_d = d;
    }

    /// Letters listed in `<_2` order.
    pub fn order2(&self) -> &[Letter] {
        &self.order2
    }

    pub fn lengths(&self) -> &[QuadraticNumber] {
        &self.lengths
    }

    /// Right boundaries of the `I_a`.
    pub fn mu(&self) -> &[QuadraticNumber] {
        &self.mu
    }

    /// Right boundaries of the `J_a`.
    pub fn nu(&self) -> &[QuadraticNumber] {
        &self.nu
    }

    /// Left boundaries of the `I_a`.
    pub fn gamma(&self) -> &[QuadraticNumber] {
        &self.gamma
    }

    /// Left boundaries of the `J_a`.
    pub fn delta(&self) -> &[QuadraticNumber] {
        &self.delta
    }

    /// Translation values.
    pub fn translations(&self) -> &[QuadraticNumber] {
        &self.alpha
    }

    pub fn interval(&self, a: Letter) -> SemiInterval {
        SemiInterval { left: self.gamma[a as usize].clone(), right: self.mu[a as usize].clone() }
    }

    pub fn image_interval(&self, a: Letter) -> SemiInterval {
        SemiInterval { left: self.delta[a as usize].clone(), right: self.nu[a as usize].clone() }
    }

    fn check_domain(&self, z: &QuadraticNumber) -> Result<()> {
        if z.field() != 0 && self.field_d != 0 && z.field() != self.field_d {
            return Err(Error::MixedField(self.field_d, z.field()));
        }
        if z.signum() < 0 || z >= &QuadraticNumber::one() {
            return Err(Error::OutOfDomain(z.to_string()));
        }
        Ok(())
    }

    /// The letter `a` with `z` in `I_a`.
    pub fn letter_at(&self, z: &QuadraticNumber) -> Result<Letter> {
        self.check_domain(z)?;
        Ok(self.letter_at_unchecked(z))
    }

    fn letter_at_unchecked(&self, z: &QuadraticNumber) -> Letter {
        self.mu.partition_point(|m| m <= z) as Letter
    }

    pub fn apply(&self, z: &QuadraticNumber) -> Result<QuadraticNumber> {
        let a = self.letter_at(z)?;
        Ok(z + &self.alpha[a as usize])
    }

    pub(crate) fn step(&self, z: &QuadraticNumber) -> (Letter, QuadraticNumber) {
        let a = self.letter_at_unchecked(z);
        (a, z + &self.alpha[a as usize])
    }

    pub fn apply_n(&self, z: &QuadraticNumber, n: usize) -> Result<QuadraticNumber> {
        self.check_domain(z)?;
        let mut z = z.clone();
        for _ in 0..n {
            z = self.step(&z).1;
        }
        Ok(z)
    }

    /// Inverse transformation: the images `J_a` become the domain
    /// partition, with translations negated. Letters keep their names; the
    /// two orders swap roles.
    pub fn inverse(&self) -> Iet {
        let names: Vec<String> = self.order2.iter().map(|&l| self.alphabet.name(l).to_string()).collect();
        let alphabet = Alphabet::new(names).expect("valid alphabet");
        let new_index = ranks(&self.order2);
        let order2 = self.alphabet.letters().map(|l| new_index[l as usize] as Letter).collect();
        let lengths = self.order2.iter().map(|&l| self.lengths[l as usize].clone()).collect();
        let mut inv = Iet::from_parts(alphabet, order2, lengths).expect("inverse of a valid exchange");
        inv.field_d = self.field_d;
        inv
    }

    /// `alpha_w`, the sum of the translation values along `w`.
    pub fn word_translation(&self, w: &[Letter]) -> QuadraticNumber {
        w.iter().fold(QuadraticNumber::zero(), |acc, &a| &acc + &self.alpha[a as usize])
    }

    /// Extends `I_w` (with `alpha_w`) by one letter: `I_{wa} = I_w ∩ (I_a - alpha_w)`.
    pub(crate) fn refine(&self, iw: &SemiInterval, shift: &QuadraticNumber, a: Letter) -> Option<SemiInterval> {
        iw.intersect(&self.interval(a).translate(&-shift))
    }

    /// `I_w`: points whose natural coding starts with `w`.
    pub fn i_interval(&self, w: &[Letter]) -> Option<SemiInterval> {
        let mut cur = SemiInterval::unit();
        let mut shift = QuadraticNumber::zero();
        for &a in w {
            cur = self.refine(&cur, &shift, a)?;
            shift = &shift + &self.alpha[a as usize];
        }
        Some(cur)
    }

    /// `J_w = T^{|w|}(I_w) = I_w + alpha_w`.
    pub fn j_interval(&self, w: &[Letter]) -> Option<SemiInterval> {
        self.i_interval(w).map(|i| i.translate(&self.word_translation(w)))
    }

    /// All words of length `n` with nonempty `I_w`, with their intervals,
    /// in `<_1` lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<(Word, SemiInterval)> {
        let mut frontier = vec![(Word::new(), SemiInterval::unit(), QuadraticNumber::zero())];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, iw, shift) in &frontier {
                for a in self.alphabet.letters() {
                    if let Some(iwa) = self.refine(iw, shift, a) {
                        let mut wa = w.clone();
                        wa.push(a);
                        next.push((wa, iwa, shift + &self.alpha[a as usize]));
                    }
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(w, i, _)| (w, i)).collect()
    }

    /// `T^n` as an exchange on the words of length `n` with nonempty
    /// `I_w`; each letter is named by its word.
    pub fn power(&self, n: usize) -> Result<Iet> {
        if n == 0 {
            return Err(Error::Format("power must be at least 1".into()));
        }
        let words = self.words_of_length(n);
        let names = words.iter().map(|(w, _)| self.alphabet.format_word(w)).collect();
        let translations = words.iter().map(|(w, _)| self.word_translation(w)).collect();
        let intervals = words.into_iter().map(|(_, i)| i).collect();
        let mut p = Iet::from_intervals(names, intervals, translations)?;
        p.field_d = self.field_d;
        Ok(p)
    }

    /// `[0, mu_1, ..., mu_{s-1}]`.
    pub fn separation_points(&self) -> Vec<QuadraticNumber> {
        std::iter::once(QuadraticNumber::zero()).chain(self.mu[..self.mu.len() - 1].iter().cloned()).collect()
    }

    /// Bounded search for a connection `T^k(mu_i) = mu_j`, `1 <= k <= depth`,
    /// among the nonzero separation points. Reports the smallest `k` found.
    pub fn check_regular(&self, depth: usize) -> RegularityReport {
        self.connection_report(&self.mu[..self.mu.len() - 1], depth)
    }

    /// Same search restricted to the given points, numbered from 1 in the
    /// order given.
    pub(crate) fn connection_report(&self, seps: &[QuadraticNumber], depth: usize) -> RegularityReport {
        let index: HashMap<&QuadraticNumber, usize> = seps.iter().enumerate().map(|(j, m)| (m, j)).collect();
        let mut points: Vec<QuadraticNumber> = seps.to_vec();
        for k in 1..=depth {
            for (i, z) in points.iter_mut().enumerate() {
                *z = self.step(z).1;
                if let Some(&j) = index.get(&*z) {
                    return RegularityReport {
                        status: RegularityStatus::ConnectionFound,
                        depth,
                        witness: Some(Connection { i: i + 1, j: j + 1, k }),
                    };
                }
            }
        }
        RegularityReport { status: RegularityStatus::RegularUpToDepth, depth, witness: None }
    }

    /// Fails with [`Error::NotRegularToDepth`] on a connection.
    pub(crate) fn require_regular(&self, depth: usize) -> Result<()> {
        match self.check_regular(depth).witness {
            None => Ok(()),
            Some(Connection { i, j, k }) => Err(Error::NotRegularToDepth { depth, i, j, k }),
        }
    }
}

/// Whether the permutation sending the `i`-th letter of `order1` to the
/// `i`-th letter of `order2` fixes no proper nonempty `<_1`-prefix.
pub fn perm_indecomposable(order1: &[impl AsRef<str>], order2: &[impl AsRef<str>]) -> Result<bool> {
    let alphabet = Alphabet::new(order1.iter().map(|s| s.as_ref().to_string()))?;
    let order2 = alphabet.order(order2)?;
    let mut max_seen = 0usize;
    for (k, &l) in order2.iter().enumerate().take(order2.len() - 1) {
        max_seen = max_seen.max(l as usize);
        // the first k+1 letters of order2 are exactly the first k+1 of order1
        if max_seen == k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience constructor from `(name, length)` pairs in `<_1` order.
pub fn iet_from_pairs(pairs: &[(&str, QuadraticNumber)], order2: &[&str]) -> Result<Iet> {
    let lengths = pairs.iter().map(|(n, l)| (n.to_string(), l.clone())).collect();
    let order1: Vec<&str> = pairs.iter().map(|(n, _)| *n).collect();
    Iet::new(&lengths, &order1, order2)
}

/// The rotation `z -> z + alpha mod 1` with `alpha = (3 - sqrt(5))/2`, as a
/// two-interval exchange with `a <_1 b` and `b <_2 a`.
pub fn golden_rotation() -> Iet {
    let alpha = crate::exact_field::golden_alpha();
    iet_from_pairs(&[("a", &QuadraticNumber::one() - &alpha), ("b", alpha)], &["b", "a"]).expect("valid rotation")
}
