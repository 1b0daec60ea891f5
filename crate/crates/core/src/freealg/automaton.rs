use std::collections::VecDeque;

use super::groebner::{GbStatus, GroebnerBasis};
use super::poly::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum QuotientDim {
    Finite(u128),
    Infinite,
    UnknownTruncated,
}

/// Aho-Corasick automaton recognizing words that contain some leading word.
/// Normal words are exactly those whose run never enters a dead state.
pub(crate) struct NormalWords {
    nvars: usize,
    goto: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl NormalWords {
    pub(crate) fn new(nvars: usize, patterns: &[Word]) -> NormalWords {
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; nvars]];
        let mut dead = vec![false];
        for w in patterns {
            let mut s = 0;
            for &l in w.letters() {
                s = match goto[s][l as usize] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; nvars]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[s][l as usize] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }
        let mut full = vec![vec![0usize; nvars]; goto.len()];
        let mut fail = vec![0usize; goto.len()];
        let mut queue = VecDeque::new();
        for a in 0..nvars {
            match goto[0][a] {
                Some(t) => {
                    full[0][a] = t;
                    queue.push_back(t);
                }
                None => full[0][a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for a in 0..nvars {
                match goto[s][a] {
                    Some(t) => {
                        fail[t] = full[fail[s]][a];
                        full[s][a] = t;
                        queue.push_back(t);
                    }
                    None => full[s][a] = full[fail[s]][a],
                }
            }
        }
        NormalWords { nvars, goto: full, dead }
    }

    fn live_edges(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.goto[s].iter().copied().filter(move |&t| !self.dead[t])
    }

    /// Total number of normal words, or `None` if infinitely many.
    pub(crate) fn count(&self) -> Option<u128> {
        if self.dead[0] {
            return Some(0);
        }
        // Iterative DFS with colors: 0 unseen, 1 on stack, 2 finished.
        let n = self.goto.len();
        let mut color = vec![0u8; n];
        let mut count = vec![0u128; n];
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        color[0] = 1;
        while let Some(&mut (s, ref mut next)) = stack.last_mut() {
            if *next < self.nvars {
                let t = self.goto[s][*next];
                *next += 1;
                if self.dead[t] {
                    continue;
                }
                match color[t] {
                    1 => return None,
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    _ => {}
                }
            } else {
                stack.pop();
                color[s] = 2;
                count[s] = self
                    .live_edges(s)
                    .fold(1u128, |acc, t| acc.saturating_add(count[t]));
            }
        }
        Some(count[0])
    }

    /// Number of normal words of each degree `0..=up_to`.
    pub(crate) fn per_degree(&self, up_to: usize) -> Vec<u128> {
        let mut out = Vec::with_capacity(up_to + 1);
        if self.dead[0] {
            return vec![0; up_to + 1];
        }
        let mut cur = vec![0u128; self.goto.len()];
        cur[0] = 1;
        for _ in 0..=up_to {
            out.push(cur.iter().fold(0u128, |a, &b| a.saturating_add(b)));
            let mut nxt = vec![0u128; self.goto.len()];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in self.live_edges(s) {
                    nxt[t] = nxt[t].saturating_add(c);
                }
            }
            cur = nxt;
        }
        out
    }

    /// Enumerates normal words up to a length, in increasing word order.
    pub(crate) fn words(&self, up_to: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if self.dead[0] {
            return out;
        }
        let mut layer: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), 0)];
        for _ in 0..=up_to {
            out.extend(layer.iter().map(|(w, _)| Word::new(w.clone())));
            let mut next = Vec::new();
            for (w, s) in &layer {
                for a in 0..self.nvars {
                    let t = self.goto[*s][a];
                    if !self.dead[t] {
                        let mut v = w.clone();
                        v.push(a as Letter);
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        out
    }
}

impl GroebnerBasis {
    fn automaton(&self) -> NormalWords {
        NormalWords::new(self.nvars(), &self.leading_words())
    }

    /// Dimension of the quotient algebra, counted as normal words.
    pub fn quotient_dim(&self) -> QuotientDim {
        if self.is_trivial_quotient() {
            return QuotientDim::Finite(0);
        }
        if let GbStatus::TruncatedAtDegree(_) = self.status() {
            return QuotientDim::UnknownTruncated;
        }
        match self.automaton().count() {
            Some(d) => QuotientDim::Finite(d),
            None => QuotientDim::Infinite,
        }
    }

    /// Normal words per degree `0..=up_to` (saturating at `u128::MAX`).
    pub fn hilbert_series(&self, up_to: usize) -> Vec<u128> {
        self.automaton().per_degree(up_to)
    }

    /// Normal words of length at most `up_to`, a basis of that filtered
    /// piece of the quotient when the basis is complete.
    pub fn normal_words(&self, up_to: usize) -> Vec<Word> {
        self.automaton().words(up_to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{groebner_default, FreePoly};

    fn p(n: usize, s: &str) -> FreePoly {
        let ab: Vec<String> = ["x", "y"][..n].iter().map(|s| s.to_string()).collect();
        FreePoly::parse(&ab, s).unwrap()
    }

    #[test]
    fn exterior_algebra_dims() {
        let gb = groebner_default(2, &[p(2, "x*x"), p(2, "y*y"), p(2, "x*y + y*x")]).unwrap();
        assert_eq!(gb.quotient_dim(), QuotientDim::Finite(4));
        assert_eq!(gb.hilbert_series(3), vec![1, 2, 1, 0]);
        let w = gb.normal_words(3);
        assert_eq!(w.len(), 4);
        assert_eq!(w[3], Word::from_indices(&[0, 1]));
    }

    #[test]
    fn one_generator() {
        let gb = groebner_default(1, &[p(1, "x*x")]).unwrap();
        assert_eq!(gb.quotient_dim(), QuotientDim::Finite(2));
        let gb = groebner_default(1, &[]).unwrap();
        assert_eq!(gb.quotient_dim(), QuotientDim::Infinite);
    }

    #[test]
    fn free_algebra_series() {
        let gb = groebner_default(2, &[]).unwrap();
        assert_eq!(gb.hilbert_series(4), vec![1, 2, 4, 8, 16]);
        assert_eq!(gb.quotient_dim(), QuotientDim::Infinite);
    }

    #[test]
    fn zero_quotient() {
        let gb = groebner_default(1, &[p(1, "x - 1"), p(1, "x")]).unwrap();
        assert_eq!(gb.quotient_dim(), QuotientDim::Finite(0));
        assert_eq!(gb.hilbert_series(2), vec![0, 0, 0]);
    }

    #[test]
    fn overlapping_patterns() {
        // avoid "xy" and "yx": normal words are x^n and y^n, infinite
        let nw = NormalWords::new(2, &[Word::from_indices(&[0, 1]), Word::from_indices(&[1, 0])]);
        assert_eq!(nw.count(), None);
        assert_eq!(nw.per_degree(3), vec![1, 2, 2, 2]);
        // avoid "xx", "yy", "xyx", "yxy"... 1,x,y,xy,yx
        let pats: Vec<Word> = [&[0, 0][..], &[1, 1], &[0, 1, 0], &[1, 0, 1]]
            .iter()
            .map(|w| Word::from_indices(w))
            .collect();
        assert_eq!(NormalWords::new(2, &pats).count(), Some(5));
    }
}
