use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

pub type Letter = u16;

/// A word in the free monoid, ordered degree-lexicographically: longer words
/// are larger, equal lengths compare letter by letter with the generator
/// index order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_indices(letters: &[usize]) -> Word {
        Word(letters.iter().map(|&l| l as Letter).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `left · self · right`
    pub fn sandwich(&self, left: &[Letter], right: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.0.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        self.sandwich(&[], &other.0)
    }

    /// First position where `sub` occurs as a factor.
    pub fn find(&self, sub: &[Letter]) -> Option<usize> {
        if sub.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - sub.len()).find(|&p| &self.0[p..p + sub.len()] == sub)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An element of the free associative algebra over Q.
///
/// Terms are kept sorted strictly descending in the word order with no zero
/// coefficients, so the first term is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreePoly {
    nvars: usize,
    terms: Vec<(Word, Q)>,
}

impl FreePoly {
    pub fn zero(nvars: usize) -> FreePoly {
        FreePoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> FreePoly {
        FreePoly::monomial(nvars, Word::empty(), c)
    }

    pub fn one(nvars: usize) -> FreePoly {
        FreePoly::constant(nvars, Q::one())
    }

    pub fn monomial(nvars: usize, w: Word, c: Q) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero(nvars);
        }
        FreePoly { nvars, terms: vec![(w, c)] }
    }

    pub fn var(nvars: usize, i: usize) -> FreePoly {
        FreePoly::monomial(nvars, Word::from_indices(&[i]), Q::one())
    }

    /// Collects like terms; input order is irrelevant.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Word, Q)>) -> FreePoly {
        let mut m: BTreeMap<Word, Q> = BTreeMap::new();
        for (w, c) in terms {
            debug_assert!(w.letters().iter().all(|&l| (l as usize) < nvars));
            *m.entry(w).or_insert_with(Q::zero) += c;
        }
        FreePoly::from_map(nvars, m)
    }

    pub(crate) fn from_map(nvars: usize, m: BTreeMap<Word, Q>) -> FreePoly {
        let terms = m.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        FreePoly { nvars, terms }
    }

    /// Terms already strictly descending and nonzero.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Word, Q)>) -> FreePoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        FreePoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Word, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Word, Q)> {
        self.terms.first()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_word().map(Word::len)
    }

    /// Whether the polynomial is a nonzero scalar.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.len() == w[1].0.len())
    }

    pub fn scale(&self, c: &Q) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero(self.nvars);
        }
        FreePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> FreePoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// `left · self · right`; multiplying by words preserves the term order.
    pub fn sandwich(&self, left: &[Letter], right: &[Letter]) -> FreePoly {
        FreePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.sandwich(left, right), c.clone()))
                .collect(),
        }
    }

    /// Substitutes each generator by a polynomial.
    pub fn substitute(&self, images: &[FreePoly]) -> FreePoly {
        let nvars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut acc = FreePoly::zero(nvars);
        for (w, c) in &self.terms {
            let mut t = FreePoly::constant(nvars, c.clone());
            for &l in w.letters() {
                t = &t * &images[l as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Renders with generator names, e.g. `x(13)*x(12) - 2*x(23) + 1`.
    pub fn display(&self, alphabet: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let names: Vec<&str> = w.letters().iter().map(|&l| alphabet[l as usize].as_str()).collect();
            if w.is_empty() {
                s.push_str(&fmt_q(&a));
            } else if a.is_one() {
                s.push_str(&names.join("*"));
            } else {
                s.push_str(&format!("{}*{}", fmt_q(&a), names.join("*")));
            }
        }
        s
    }

    /// Parses sums of terms like `2*x*y - 1/3*y*x + 5` over `alphabet`.
    /// Generator names may not start with a digit, `+`, `-`, `*` or `/`.
    pub fn parse(alphabet: &[String], s: &str) -> Result<FreePoly> {
        let nvars = alphabet.len();
        let bad = |m: &str| Error::Invalid(format!("cannot parse polynomial {s:?}: {m}"));
        let mut names: Vec<(usize, &str)> = alphabet.iter().map(|a| a.as_str()).enumerate().collect();
        // longest names first so that `x1` does not shadow `x12`
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let text: String = chars.iter().collect();
        let mut pos = 0;
        let mut terms = Vec::new();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        while pos < text.len() {
            let mut sign = Q::one();
            while let Some(c) = text[pos..].chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut coeff = sign;
            let mut letters = Vec::new();
            let mut factor_seen = false;
            loop {
                let rest = &text[pos..];
                if rest.is_empty() || rest.starts_with('+') || rest.starts_with('-') {
                    break;
                }
                if factor_seen {
                    if let Some(r) = rest.strip_prefix('*') {
                        pos += 1;
                        if r.is_empty() {
                            return Err(bad("dangling *"));
                        }
                        continue;
                    }
                }
                let rest = &text[pos..];
                if rest.starts_with(|c: char| c.is_ascii_digit()) {
                    let len = rest
                        .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                        .unwrap_or(rest.len());
                    coeff *= parse_q(&rest[..len])?;
                    pos += len;
                } else if let Some((i, n)) = names.iter().find(|(_, n)| rest.starts_with(n)) {
                    letters.push(*i as Letter);
                    pos += n.len();
                } else {
                    return Err(bad(&format!("unknown symbol at {rest:?}")));
                }
                factor_seen = true;
            }
            if !factor_seen {
                return Err(bad("empty term"));
            }
            terms.push((Word::new(letters), coeff));
        }
        Ok(FreePoly::from_terms(nvars, terms))
    }
}

fn merge(a: &FreePoly, b: &FreePoly, negate_b: bool) -> FreePoly {
    assert_eq!(a.nvars, b.nvars, "alphabet mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (w, c) = &b.terms[j];
                out.push((w.clone(), if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    FreePoly { nvars: a.nvars, terms: out }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        merge(self, rhs, false)
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        merge(self, rhs, true)
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        assert_eq!(self.nvars, rhs.nvars, "alphabet mismatch");
        FreePoly::from_terms(
            self.nvars,
            self.terms.iter().flat_map(|(u, a)| {
                rhs.terms.iter().map(move |(v, b)| (u.concat(v), a * b))
            }),
        )
    }
}
