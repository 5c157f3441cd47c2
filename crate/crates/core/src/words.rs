//! Noncommutative polynomials in `a, b` and in `c, d`, and the ab/cd-index of
//! a graded poset.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// A word over `{a, b}` of length at most 64. Letter `i` (from the left) is
/// `b` when bit `len - 1 - i` is set, so comparing bits compares words
/// lexicographically with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AbWord {
    len: u8,
    bits: u64,
}

impl AbWord {
    pub fn empty() -> Self {
        AbWord { len: 0, bits: 0 }
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Whether letter `i` is `b`.
    pub fn is_b(self, i: usize) -> bool {
        self.bits >> (self.len as usize - 1 - i) & 1 == 1
    }

    pub fn push(self, b: bool) -> Self {
        assert!(self.len < 64, "ab-words are limited to 64 letters");
        AbWord {
            len: self.len + 1,
            bits: self.bits << 1 | b as u64,
        }
    }

    pub fn concat(self, other: AbWord) -> Self {
        assert!(self.len as usize + other.len as usize <= 64);
        AbWord {
            len: self.len + other.len,
            bits: if other.len == 64 {
                other.bits
            } else {
                self.bits << other.len | other.bits
            },
        }
    }

    pub fn letters(self) -> impl Iterator<Item = char> {
        (0..self.len()).map(move |i| if self.is_b(i) { 'b' } else { 'a' })
    }
}

impl FromStr for AbWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars().try_fold(AbWord::empty(), |w, ch| match ch {
            'a' => Ok(w.push(false)),
            'b' => Ok(w.push(true)),
            _ => Err(Error::Parse(format!("unexpected letter {ch:?} in ab-word"))),
        })
    }
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, self.letters())
    }
}

fn write_runs<I: Iterator<Item = char>>(f: &mut fmt::Formatter<'_>, letters: I) -> fmt::Result {
    let letters: Vec<char> = letters.collect();
    if letters.is_empty() {
        return write!(f, "1");
    }
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        write!(f, "{}", letters[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

fn write_poly<'a, W: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a W, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (w, c) in terms {
        let abs = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let word = w.to_string();
        if !abs.is_one() || word == "1" {
            if word == "1" {
                write!(f, "{abs}")?;
                continue;
            }
            write!(f, "{abs}")?;
        }
        write!(f, "{word}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// An integer combination of ab-words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AbPolynomial {
    terms: BTreeMap<AbWord, BigInt>,
}

impl AbPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(AbWord::empty(), BigInt::one())
    }

    pub fn monomial(w: AbWord, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: AbWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AbWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &str) -> BigInt {
        w.parse::<AbWord>()
            .ok()
            .and_then(|w| self.terms.get(&w).cloned())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, i.e. the value at `a = b = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(*v), a * b);
            }
        }
        out
    }

    /// The lexicographically largest word with a nonzero coefficient.
    pub fn leading(&self) -> Option<(AbWord, BigInt)> {
        self.terms.iter().next_back().map(|(w, c)| (*w, c.clone()))
    }
}

impl fmt::Display for AbPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms.iter())
    }
}

impl fmt::Debug for AbPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CdLetter {
    C,
    D,
}

/// A word over `{c, d}`, ordered by degree and then lexicographically with
/// `c < d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CdWord(pub Vec<CdLetter>);

impl CdWord {
    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .map(|l| if *l == CdLetter::C { 1 } else { 2 })
            .sum()
    }

    /// All ab-words of the expansion `c = a + b`, `d = ab + ba`; every word
    /// appears with coefficient one.
    pub fn expand(&self) -> Vec<AbWord> {
        let mut words = vec![AbWord::empty()];
        for l in &self.0 {
            words = words
                .into_iter()
                .flat_map(|w| match l {
                    CdLetter::C => vec![w.push(false), w.push(true)],
                    CdLetter::D => vec![w.push(false).push(true), w.push(true).push(false)],
                })
                .collect();
        }
        words
    }

    /// The largest word of the expansion: `c ↦ b`, `d ↦ ba`.
    pub fn leading_ab(&self) -> AbWord {
        self.0.iter().fold(AbWord::empty(), |w, l| match l {
            CdLetter::C => w.push(true),
            CdLetter::D => w.push(true).push(false),
        })
    }

    /// Inverse of [`CdWord::leading_ab`], when the word has that shape.
    pub fn from_leading_ab(w: AbWord) -> Option<CdWord> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < w.len() {
            if !w.is_b(i) {
                return None;
            }
            if i + 1 < w.len() && !w.is_b(i + 1) {
                out.push(CdLetter::D);
                i += 2;
            } else {
                out.push(CdLetter::C);
                i += 1;
            }
        }
        Some(CdWord(out))
    }
}

impl Ord for CdWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CdWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CdWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(
            f,
            self.0
                .iter()
                .map(|l| if *l == CdLetter::C { 'c' } else { 'd' }),
        )
    }
}

/// An integer combination of cd-words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CdPolynomial {
    terms: BTreeMap<CdWord, BigInt>,
}

impl CdPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(CdWord::default(), BigInt::one());
        p
    }

    pub fn c() -> Self {
        let mut p = Self::zero();
        p.add_term(CdWord(vec![CdLetter::C]), BigInt::one());
        p
    }

    pub fn d() -> Self {
        let mut p = Self::zero();
        p.add_term(CdWord(vec![CdLetter::D]), BigInt::one());
        p
    }

    pub fn add_term(&mut self, w: CdWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CdWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &str) -> BigInt {
        match w.parse::<CdPolynomial>() {
            Ok(p) if p.terms.len() == 1 => {
                let (word, _) = p.terms.iter().next().unwrap();
                self.terms.get(word).cloned().unwrap_or_default()
            }
            _ => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous polynomial (`None` for zero or mixed degree).
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|w| w.degree());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                out.add_term(CdWord(w), a * b);
            }
        }
        out
    }

    /// `self · c^k`.
    pub fn times_c_pow(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.mul(&Self::c()))
    }

    pub fn expand(&self) -> AbPolynomial {
        let mut out = AbPolynomial::zero();
        for (w, c) in &self.terms {
            for ab in w.expand() {
                out.add_term(ab, c.clone());
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Rewrites an ab-polynomial in `c = a + b`, `d = ab + ba`. Each cd-word
    /// has a distinct largest expansion word, so peeling off the largest
    /// remaining word is a triangular solve.
    pub fn from_ab(ab: &AbPolynomial) -> Result<CdPolynomial> {
        let mut rest = ab.clone();
        let mut out = CdPolynomial::zero();
        while let Some((lead, coeff)) = rest.leading() {
            let word = CdWord::from_leading_ab(lead)
                .ok_or_else(|| Error::NotCd(format!("word {lead} cannot lead a cd-expansion")))?;
            for w in word.expand() {
                rest.add_term(w, -coeff.clone());
            }
            out.add_term(word, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for CdPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms.iter())
    }
}

impl fmt::Debug for CdPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CdPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the printed form, e.g. `c^3 + 2cd - dc` or `1`.
impl FromStr for CdPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty cd-polynomial".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(Error::Parse(format!("expected sign at position {i}")));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse::<BigInt>()
                    .unwrap()
            } else {
                BigInt::one()
            };
            let mut word = Vec::new();
            while i < chars.len() && (chars[i] == 'c' || chars[i] == 'd') {
                let letter = if chars[i] == 'c' {
                    CdLetter::C
                } else {
                    CdLetter::D
                };
                i += 1;
                let mut times = 1usize;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s2 = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    times = chars[s2..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse("bad exponent".into()))?;
                }
                word.extend(std::iter::repeat_n(letter, times));
            }
            if i == start {
                return Err(Error::Parse(format!("empty term at position {start}")));
            }
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(Error::Parse(format!("unexpected {:?}", chars[i])));
            }
            out.add_term(CdWord(word), sign * coeff);
        }
        Ok(out)
    }
}

/// Flag f-vector of a bounded graded poset of rank `n + 1`: entry `S`
/// (bit `i - 1` for rank `i`) counts chains of the open interval whose rank
/// set is exactly `S`.
pub fn flag_f_vector(p: &FinitePoset) -> Result<Vec<BigInt>> {
    match flag_counts::<u128>(p)? {
        Some(v) => Ok(v.into_iter().map(BigInt::from).collect()),
        None => Ok(flag_counts::<BigInt>(p)?.expect("big integers do not overflow")),
    }
}

fn flag_counts<T>(p: &FinitePoset) -> Result<Option<Vec<T>>>
where
    T: Clone + Zero + One + CheckedAdd,
{
    let ranks = p.ranks()?;
    let (_, top) = p.bounds()?;
    let total = ranks[top];
    if total == 0 {
        return Err(Error::Invariant("ab-index needs rank at least one".into()));
    }
    let n = total - 1;
    if n > 63 {
        return Err(Error::TooLarge(n));
    }
    let mut f = vec![T::zero(); 1 << n];
    f[0] = T::one();
    // counts[x][S] for S ⊆ {1..rk(x)-1}: chains ending at x with ranks S ∪ {rk(x)}
    let mut counts: Vec<Vec<T>> = vec![Vec::new(); p.len()];
    for &x in p.linear_extension() {
        let r = ranks[x];
        if r == 0 || r > n {
            continue;
        }
        let mut c = vec![T::zero(); 1 << (r - 1)];
        c[0] = T::one();
        for y in p.down_set(x).ones() {
            let ry = ranks[y];
            if y == x || ry == 0 {
                continue;
            }
            let bit = 1usize << (ry - 1);
            for (s, v) in counts[y].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let slot = &mut c[s | bit];
                match slot.checked_add(v) {
                    Some(sum) => *slot = sum,
                    None => return Ok(None),
                }
            }
        }
        let bit = 1usize << (r - 1);
        for (s, v) in c.iter().enumerate() {
            let slot = &mut f[s | bit];
            match slot.checked_add(v) {
                Some(sum) => *slot = sum,
                None => return Ok(None),
            }
        }
        counts[x] = c;
    }
    Ok(Some(f))
}

/// `Ψ(P) = Σ_C w(C)` over chains of the open interval, with `w_i = b` when
/// rank `i` is used and `a - b` otherwise.
pub fn ab_index(p: &FinitePoset) -> Result<AbPolynomial> {
    let f = flag_f_vector(p)?;
    let n = f.len().trailing_zeros() as usize;
    // flag h-vector by inclusion-exclusion over subsets
    let mut h = f;
    for i in 0..n {
        for s in 0..h.len() {
            if s >> i & 1 == 1 {
                let lower = h[s ^ 1 << i].clone();
                h[s] -= lower;
            }
        }
    }
    let mut out = AbPolynomial::zero();
    for (s, c) in h.into_iter().enumerate() {
        let word = (0..n).fold(AbWord::empty(), |w, i| w.push(s >> i & 1 == 1));
        out.add_term(word, c);
    }
    Ok(out)
}

pub fn cd_index(p: &FinitePoset) -> Result<CdPolynomial> {
    CdPolynomial::from_ab(&ab_index(p)?)
}

/// Outcome of comparing `Ψ1 · c^pad` against `Ψ2` coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdComparison {
    pub leq: bool,
    /// A word where the padded left side exceeds the right side.
    pub witness: Option<CdWord>,
}

pub fn cd_compare(psi1: &CdPolynomial, psi2: &CdPolynomial, pad: usize) -> Result<CdComparison> {
    let left = psi1.times_c_pow(pad);
    if let (Some(d1), Some(d2)) = (left.degree(), psi2.degree()) {
        if d1 != d2 {
            return Err(Error::DegreeMismatch(d1, d2));
        }
    }
    let witness = left
        .terms
        .iter()
        .find(|(w, c)| psi2.terms.get(*w).is_none_or(|d| *c > d))
        .map(|(w, _)| w.clone());
    Ok(CdComparison {
        leq: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "c^3 + 2cd + 3dc",
            "1",
            "c^2 + d",
            "-cd + 4dc",
            "c^2d - 7d^2",
        ] {
            let p: CdPolynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("c+x".parse::<CdPolynomial>().is_err());
        assert!("c d".parse::<CdPolynomial>().is_ok());
    }

    #[test]
    fn canonical_order() {
        let p: CdPolynomial = "3dc + cd + c^3".parse().unwrap();
        assert_eq!(p.to_string(), "c^3 + cd + 3dc");
    }

    #[test]
    fn expansion_and_extraction() {
        let p: CdPolynomial = "c^2 + d".parse().unwrap();
        let ab = p.expand();
        assert_eq!(ab.to_string(), "a^2 + 2ab + 2ba + b^2");
        assert_eq!(CdPolynomial::from_ab(&ab).unwrap(), p);
        let not_cd = AbPolynomial::monomial("ab".parse().unwrap(), BigInt::one());
        assert!(matches!(
            CdPolynomial::from_ab(&not_cd),
            Err(Error::NotCd(_))
        ));
    }

    #[test]
    fn leading_words_are_distinct() {
        for w in ["ccc", "cd", "dc"] {
            let word: CdPolynomial = w.parse().unwrap();
            let (cw, _) = word.terms().next().unwrap();
            let lead = cw.leading_ab();
            assert_eq!(CdWord::from_leading_ab(lead).as_ref(), Some(cw));
            assert_eq!(cw.expand().into_iter().max(), Some(lead));
        }
    }

    #[test]
    fn boolean_indices() {
        let b2 = FinitePoset::boolean(2);
        assert_eq!(ab_index(&b2).unwrap().to_string(), "a + b");
        assert_eq!(
            cd_index(&FinitePoset::boolean(3)).unwrap().to_string(),
            "c^2 + d"
        );
        assert_eq!(
            ab_index(&FinitePoset::boolean(1)).unwrap(),
            AbPolynomial::one()
        );
    }

    #[test]
    fn chain_is_not_cd() {
        assert!(matches!(
            cd_index(&FinitePoset::chain(3)),
            Err(Error::NotCd(_))
        ));
    }

    #[test]
    fn comparison() {
        let a: CdPolynomial = "c^3 + cd + 3dc".parse().unwrap();
        let b: CdPolynomial = "c^3 + 2cd + 3dc".parse().unwrap();
        assert!(cd_compare(&a, &b, 0).unwrap().leq);
        let r = cd_compare(&b, &a, 0).unwrap();
        assert!(!r.leq);
        assert_eq!(r.witness.unwrap().to_string(), "cd");
        let one: CdPolynomial = "c^2 + d".parse().unwrap();
        assert!(cd_compare(&one, &b, 1).unwrap().leq);
        assert_eq!(cd_compare(&one, &b, 0), Err(Error::DegreeMismatch(2, 3)));
    }
}
