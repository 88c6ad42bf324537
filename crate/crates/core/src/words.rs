//! Words over a finite inverse-closed alphabet.
//!
//! Text syntax: a lowercase letter is a generator, the matching uppercase
//! letter its inverse. Tokens may carry a power, `a^3`, `a^-3`, `A^3`;
//! whitespace is ignored. Printing uses run-length form with uppercase for
//! inverse runs, e.g. `t^3a^2T^3`.

use std::fmt;

use crate::error::{Error, Result};

/// Generator letters, in order. Each generator has a formal inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenAlphabet {
    letters: Vec<char>,
}

impl GenAlphabet {
    pub fn new(letters: &[char]) -> Result<Self> {
        for (i, c) in letters.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidParams(format!("generator '{c}' is not a lowercase ASCII letter")));
            }
            if letters[..i].contains(c) {
                return Err(Error::InvalidParams(format!("duplicate generator '{c}'")));
            }
        }
        Ok(GenAlphabet { letters: letters.to_vec() })
    }

    /// `{a, t}` for `BS(1,q)`.
    pub fn bs() -> Self {
        GenAlphabet { letters: vec!['a', 't'] }
    }

    /// `{a, b, c, d, s}` for Stallings' group.
    pub fn stallings() -> Self {
        GenAlphabet { letters: vec!['a', 'b', 'c', 'd', 's'] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, gen: u8) -> char {
        self.letters[gen as usize]
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u8)
    }

    /// All letters `x` and `x⁻¹`, generator-major.
    pub fn signed_letters(&self) -> Vec<Letter> {
        (0..self.letters.len() as u8).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect()
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: u8, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// BS letters.
pub const A: Letter = Letter::new(0, false);
pub const A_INV: Letter = Letter::new(0, true);
pub const T: Letter = Letter::new(1, false);
pub const T_INV: Letter = Letter::new(1, true);

/// A finite sequence of letters; no implicit reduction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    /// Appends `l^k` (`l⁻¹^|k|` for negative `k`).
    pub fn push_power(&mut self, l: Letter, k: i64) {
        let l = if k < 0 { l.inverse() } else { l };
        self.letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
    }

    /// `l^k` as a word.
    pub fn power(l: Letter, k: i64) -> Self {
        let mut w = Word::empty();
        w.push_power(l, k);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// The prefix `w(i)`; the whole word when `i ≥ l(w)`.
    pub fn prefix(&self, i: usize) -> Word {
        Word { letters: self.letters[..i.min(self.len())].to_vec() }
    }

    /// The suffix of length `i`.
    pub fn suffix(&self, i: usize) -> Word {
        let i = i.min(self.len());
        Word { letters: self.letters[self.len() - i..].to_vec() }
    }

    /// Signed count of occurrences of generator `gen`.
    pub fn gen_exp_sum(&self, gen: u8) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.sign()).sum()
    }

    /// Exponent sum of `t` letters (generator index 1 in the BS alphabet).
    pub fn sigma_t(&self) -> i64 {
        self.gen_exp_sum(T.gen)
    }

    /// Sum of signs over all letters.
    pub fn exp_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn display<'a>(&'a self, alphabet: &'a GenAlphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }

    /// Run-length form using `alphabet`.
    pub fn to_text(&self, alphabet: &GenAlphabet) -> String {
        self.display(alphabet).to_string()
    }

    pub fn parse(text: &str, alphabet: &GenAlphabet) -> Result<Word> {
        parse_word(text, alphabet)
    }

    /// Shorthand for parsing over `{a, t}`; panics on bad input.
    pub fn bs(text: &str) -> Word {
        parse_word(text, &GenAlphabet::bs()).expect("valid BS word literal")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a GenAlphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let name = self.alphabet.name(l.gen);
            let name = if l.inv { name.to_ascii_uppercase() } else { name };
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Parses the ASCII word syntax. No reduction is applied.
pub fn parse_word(text: &str, alphabet: &GenAlphabet) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let gen = alphabet.index_of(c.to_ascii_lowercase()).filter(|_| c.is_ascii_alphabetic());
        let Some(gen) = gen else {
            return Err(Error::UnknownLetter(c, i));
        };
        let upper = c.is_ascii_uppercase();
        i += 1;
        let mut power: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            let start = i;
            i += 1;
            let negative = i < chars.len() && chars[i] == '-';
            if negative {
                if upper {
                    return Err(Error::MalformedPower(start));
                }
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits_start {
                return Err(Error::MalformedPower(start));
            }
            let digits: String = chars[digits_start..i].iter().collect();
            power = digits.parse::<i64>().map_err(|_| Error::MalformedPower(start))?;
            if negative {
                power = -power;
            }
        }
        let letter = Letter::new(gen, upper);
        let letter = if power < 0 { letter.inverse() } else { letter };
        letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
    }
    Ok(Word { letters })
}

/// Shape tag of a word over `{a, t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum WordClass {
    E,
    X,
    N,
    XN,
    P,
    PX,
    NP,
    NPX,
    XNP,
    Other,
}

impl WordClass {
    /// The geodesic class (1-4) a tag belongs to, `None` for `Other`.
    pub fn geodesic_class(self) -> Option<u8> {
        use WordClass::*;
        match self {
            E | X => Some(1),
            N | XN => Some(2),
            P | PX => Some(3),
            NP | NPX | XNP => Some(4),
            Other => None,
        }
    }
}

/// Maximal runs of equal `t`-letters, as (sign, length).
pub(crate) fn t_blocks(w: &Word) -> Vec<(i64, usize)> {
    let mut blocks: Vec<(i64, usize)> = Vec::new();
    for l in w.letters().iter().filter(|l| l.gen == T.gen) {
        match blocks.last_mut() {
            Some((s, n)) if *s == l.sign() => *n += 1,
            _ => blocks.push((l.sign(), 1)),
        }
    }
    blocks
}

/// Classifies a word over `{a, t}` into the finest shape tag.
pub fn classify(w: &Word) -> WordClass {
    use WordClass::*;
    let blocks = t_blocks(w);
    let sigma = w.sigma_t();
    match blocks.as_slice() {
        [] => E,
        [(1, _)] => P,
        [(-1, _)] => N,
        [(1, x), (-1, y)] => match x.cmp(y) {
            std::cmp::Ordering::Equal => X,
            std::cmp::Ordering::Less => XN,
            std::cmp::Ordering::Greater => PX,
        },
        [(-1, _), (1, _)] => NP,
        [(-1, _), (1, y), (-1, z)] if y > z && sigma >= 0 => NPX,
        [(1, z), (-1, x), (1, _)] if x > z && sigma <= 0 => XNP,
        _ => Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> Word {
        Word::bs(s)
    }

    #[test]
    fn parses_inverse_letters_and_powers() {
        let ab = GenAlphabet::bs();
        assert_eq!(parse_word("tAt", &ab).unwrap().letters(), &[T, A_INV, T]);
        assert_eq!(parse_word("a^-3 t^2", &ab).unwrap().letters(), &[A_INV, A_INV, A_INV, T, T]);
        assert_eq!(parse_word("A^2", &ab).unwrap(), parse_word("a^-2", &ab).unwrap());
        assert_eq!(parse_word("a^0", &ab).unwrap(), Word::empty());
        assert_eq!(parse_word("", &ab).unwrap(), Word::empty());
    }

    #[test]
    fn parse_errors() {
        let ab = GenAlphabet::bs();
        assert!(matches!(parse_word("x", &ab), Err(Error::UnknownLetter('x', 0))));
        assert!(matches!(parse_word("a^", &ab), Err(Error::MalformedPower(1))));
        assert!(matches!(parse_word("A^-2", &ab), Err(Error::MalformedPower(1))));
        assert!(matches!(parse_word("a^-", &ab), Err(Error::MalformedPower(1))));
        assert!(matches!(parse_word("a3", &ab), Err(Error::UnknownLetter('3', 1))));
    }

    #[test]
    fn printing_is_run_length() {
        let ab = GenAlphabet::bs();
        assert_eq!(bs("t t t a a T T T").to_text(&ab), "t^3a^2T^3");
        assert_eq!(bs("A t").to_text(&ab), "At");
        assert_eq!(Word::empty().to_text(&ab), "");
    }

    #[test]
    fn sigma_and_exp_sum() {
        assert_eq!(bs("t a T a^-2").sigma_t(), 0);
        assert_eq!(bs("T a t t").sigma_t(), 1);
        assert_eq!(Word::empty().sigma_t(), 0);
        let st = GenAlphabet::stallings();
        assert_eq!(parse_word("Ab", &st).unwrap().exp_sum(), 0);
        assert_eq!(parse_word("abab", &st).unwrap().exp_sum(), 4);
        assert_eq!(parse_word("aBcD", &st).unwrap().exp_sum(), 0);
    }

    #[test]
    fn free_reduction() {
        let st = GenAlphabet::stallings();
        assert_eq!(parse_word("aAb", &st).unwrap().free_reduce().to_text(&st), "b");
        assert_eq!(parse_word("abBA", &st).unwrap().free_reduce(), Word::empty());
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert!(!parse_word("abBA", &st).unwrap().is_reduced());
    }

    #[test]
    fn classification_examples() {
        use WordClass::*;
        assert_eq!(classify(&bs("a^3")), E);
        assert_eq!(classify(&bs("t a T")), X);
        assert_eq!(classify(&bs("T a t")), NP);
        assert_eq!(classify(&bs("t a T T a")), XN);
        assert_eq!(classify(&bs("t t a T")), PX);
        assert_eq!(classify(&bs("a t a")), P);
        assert_eq!(classify(&bs("T a")), N);
        assert_eq!(classify(&bs("T t t a T")), NPX);
        assert_eq!(classify(&bs("t T T a t")), XNP);
        // sign constraints on the mixed shapes
        assert_eq!(classify(&bs("T T T t t a T")), Other);
        assert_eq!(classify(&bs("t a T a T a T t t t")), Other);
        assert_eq!(classify(&bs("T a t T")), Other);
    }

    #[test]
    fn prefixes_and_suffixes() {
        let w = bs("t a T a");
        assert_eq!(w.prefix(2), bs("t a"));
        assert_eq!(w.suffix(1), bs("a"));
        assert_eq!(w.inverse().prefix(1).inverse(), w.suffix(1));
        assert_eq!(w.prefix(10), w);
    }
}
