use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use num::Zero;
use rayon::prelude::*;

use super::poly::{FreePoly, Letter, Word};
use crate::error::{Error, Result};
use crate::rational::Q;

pub const DEFAULT_MAX_DEG: usize = 16;
pub const DEFAULT_MAX_BASIS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Obstructions of larger degree are not processed.
    pub max_deg: usize,
    /// Completion aborts once the working basis grows past this.
    pub max_basis: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_deg: DEFAULT_MAX_DEG, max_basis: DEFAULT_MAX_BASIS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "degree")]
pub enum GbStatus {
    Complete,
    /// Some obstruction above this degree was skipped.
    TruncatedAtDegree(usize),
}

/// Index from leading words to polynomials, used for reduction.
#[derive(Clone, Debug, Default)]
struct Reducer {
    by_word: HashMap<Vec<Letter>, usize>,
    /// Number of indexed leading words of each length.
    lengths: BTreeMap<usize, usize>,
}

impl Reducer {
    fn insert(&mut self, w: &Word, idx: usize) {
        self.by_word.insert(w.letters().to_vec(), idx);
        *self.lengths.entry(w.len()).or_default() += 1;
    }

    fn remove(&mut self, w: &Word) {
        self.by_word.remove(w.letters());
        let c = self.lengths.get_mut(&w.len()).expect("indexed length");
        *c -= 1;
        if *c == 0 {
            self.lengths.remove(&w.len());
        }
    }

    /// Finds a leading word occurring in `w`: (element, start position).
    fn find_divisor(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for &len in self.lengths.keys() {
            if len > w.len() {
                break;
            }
            for p in 0..=w.len() - len {
                if let Some(&i) = self.by_word.get(&w[p..p + len]) {
                    return Some((i, p));
                }
            }
        }
        None
    }

    /// Full reduction of `p` by the monic polynomials in `polys`.
    fn reduce(&self, p: &FreePoly, polys: &[Option<FreePoly>]) -> FreePoly {
        let nvars = p.nvars();
        let mut pending: BTreeMap<Word, Q> = p.terms().iter().cloned().collect();
        let mut done: Vec<(Word, Q)> = Vec::new();
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_divisor(w.letters()) {
                None => done.push((w, c)),
                Some((i, pos)) => {
                    let g = polys[i].as_ref().expect("indexed element is alive");
                    let lw = g.leading_word().unwrap().len();
                    let (left, right) = (&w.letters()[..pos], &w.letters()[pos + lw..]);
                    for (t, a) in &g.terms()[1..] {
                        let e = pending.entry(t.sandwich(left, right)).or_insert_with(Q::zero);
                        *e -= &c * a;
                    }
                }
            }
        }
        FreePoly::from_sorted(nvars, done)
    }
}

/// Overlap of leading words: a proper suffix of `lw(i)` of length `k`
/// equals a proper prefix of `lw(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Obstruction {
    degree: usize,
    seq: u64,
    i: usize,
    j: usize,
    k: usize,
}

/// All overlaps of `a` (on the left) with `b` (on the right): lengths `k` of
/// a proper suffix of `a` equal to a proper prefix of `b`.
fn overlaps<'a>(a: &'a [Letter], b: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
    (1..a.len().min(b.len())).filter(move |&k| a[a.len() - k..] == b[..k])
}

/// S-element `f_i · w_j[k..] − w_i[..|w_i|−k] · f_j` for monic `f_i`, `f_j`.
fn s_element(fi: &FreePoly, fj: &FreePoly, k: usize) -> FreePoly {
    let wi = fi.leading_word().unwrap().letters();
    let wj = fj.leading_word().unwrap().letters();
    &fi.sandwich(&[], &wj[k..]) - &fj.sandwich(&wi[..wi.len() - k], &[])
}

struct Completion {
    nvars: usize,
    elems: Vec<Option<FreePoly>>,
    reducer: Reducer,
    queue: BinaryHeap<Reverse<Obstruction>>,
    seq: u64,
    alive: usize,
    skipped_above: bool,
    trivial: bool,
    config: GroebnerConfig,
}

impl Completion {
    fn new(nvars: usize, config: GroebnerConfig) -> Self {
        Completion {
            nvars,
            elems: Vec::new(),
            reducer: Reducer::default(),
            queue: BinaryHeap::new(),
            seq: 0,
            alive: 0,
            skipped_above: false,
            trivial: false,
            config,
        }
    }

    fn push_obstruction(&mut self, i: usize, j: usize, k: usize, degree: usize) {
        if degree > self.config.max_deg {
            self.skipped_above = true;
            return;
        }
        self.seq += 1;
        self.queue.push(Reverse(Obstruction { degree, seq: self.seq, i, j, k }));
    }

    fn add(&mut self, p: FreePoly) -> Result<()> {
        let mut work = vec![p];
        while let Some(p) = work.pop() {
            if self.trivial {
                return Ok(());
            }
            let p = self.reducer.reduce(&p, &self.elems).monic();
            let Some(lw) = p.leading_word().cloned() else { continue };
            if lw.is_empty() {
                // 1 lies in the ideal; the quotient is zero.
                self.trivial = true;
                self.queue.clear();
                return Ok(());
            }
            let idx = self.elems.len();
            // Elements whose leading word contains the new one are reduced again.
            for e in 0..self.elems.len() {
                let hit = match &self.elems[e] {
                    Some(f) => f.leading_word().unwrap().find(lw.letters()).is_some(),
                    None => false,
                };
                if hit {
                    let f = self.elems[e].take().unwrap();
                    self.reducer.remove(f.leading_word().unwrap());
                    self.alive -= 1;
                    work.push(f);
                }
            }
            self.elems.push(Some(p));
            self.reducer.insert(&lw, idx);
            self.alive += 1;
            if self.alive > self.config.max_basis {
                return Err(Error::ResourceBudgetExceeded(format!(
                    "Gröbner basis exceeded {} elements",
                    self.config.max_basis
                )));
            }
            let a = lw.letters().to_vec();
            for e in 0..=idx {
                let Some(f) = &self.elems[e] else { continue };
                let b = f.leading_word().unwrap().letters().to_vec();
                let ks: Vec<usize> = overlaps(&a, &b).collect();
                for k in ks {
                    self.push_obstruction(idx, e, k, a.len() + b.len() - k);
                }
                if e != idx {
                    let ks: Vec<usize> = overlaps(&b, &a).collect();
                    for k in ks {
                        self.push_obstruction(e, idx, k, a.len() + b.len() - k);
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        while let Some(Reverse(ob)) = self.queue.pop() {
            let (Some(fi), Some(fj)) = (&self.elems[ob.i], &self.elems[ob.j]) else { continue };
            let s = s_element(fi, fj, ob.k);
            self.add(s)?;
            if self.trivial {
                break;
            }
        }
        Ok(())
    }

    fn live(&self) -> Vec<FreePoly> {
        self.elems.iter().flatten().cloned().collect()
    }
}

/// A completed (or degree-truncated) reduction system for a two-sided ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    basis: Vec<FreePoly>,
    status: GbStatus,
    reducer: Reducer,
    slots: Vec<Option<FreePoly>>,
}

impl GroebnerBasis {
    /// Wraps a list of polynomials, made monic, as a reduction system
    /// without running completion.
    pub fn from_basis(nvars: usize, polys: Vec<FreePoly>, status: GbStatus) -> Result<GroebnerBasis> {
        let mut basis: Vec<FreePoly> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        basis.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        let mut reducer = Reducer::default();
        let mut seen = BTreeSet::new();
        for (i, p) in basis.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(Error::Invalid("alphabet size mismatch".into()));
            }
            let lw = p.leading_word().unwrap();
            if !seen.insert(lw.clone()) {
                return Err(Error::Invalid("two basis elements share a leading word".into()));
            }
            reducer.insert(lw, i);
        }
        let slots = basis.iter().cloned().map(Some).collect();
        Ok(GroebnerBasis { nvars, basis, status, reducer, slots })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &[FreePoly] {
        &self.basis
    }

    pub fn status(&self) -> GbStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GbStatus::Complete
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.basis.iter().map(|p| p.leading_word().unwrap().clone()).collect()
    }

    pub fn normal_form(&self, p: &FreePoly) -> FreePoly {
        assert_eq!(p.nvars(), self.nvars, "alphabet mismatch");
        self.reducer.reduce(p, &self.slots)
    }

    /// Reduces many polynomials concurrently; output order matches input.
    pub fn normal_forms(&self, ps: &[FreePoly]) -> Vec<FreePoly> {
        ps.par_iter().map(|p| self.normal_form(p)).collect()
    }

    /// Ideal membership, conclusive when the basis is complete.
    pub fn reduces_to_zero(&self, p: &FreePoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// True iff the basis contains a nonzero constant. For a truncated
    /// basis a `false` answer is not conclusive.
    pub fn is_trivial_quotient(&self) -> bool {
        self.basis.iter().any(FreePoly::is_nonzero_constant)
    }

    /// Normal forms of all overlap S-elements up to `max_deg` that do not
    /// reduce to zero. Empty for a correct complete basis.
    pub fn audit_obstructions(&self, max_deg: usize) -> Vec<FreePoly> {
        let mut jobs = Vec::new();
        for (i, fi) in self.basis.iter().enumerate() {
            for (j, fj) in self.basis.iter().enumerate() {
                let (a, b) = (fi.leading_word().unwrap(), fj.leading_word().unwrap());
                for k in overlaps(a.letters(), b.letters()) {
                    if a.len() + b.len() - k <= max_deg {
                        jobs.push((i, j, k));
                    }
                }
            }
        }
        jobs.par_iter()
            .map(|&(i, j, k)| self.normal_form(&s_element(&self.basis[i], &self.basis[j], k)))
            .filter(|r| !r.is_zero())
            .collect::<Vec<_>>()
    }
}

/// Computes an interreduced Gröbner basis of the two-sided ideal generated
/// by `gens`, processing overlap obstructions lowest degree first.
pub fn groebner(nvars: usize, gens: &[FreePoly], config: GroebnerConfig) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::Invalid("generator alphabet mismatch".into()));
    }
    let mut c = Completion::new(nvars, config);
    // Adding lower-degree generators first keeps the first pass small.
    let mut sorted: Vec<&FreePoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    for g in sorted {
        c.add(g.clone())?;
    }
    loop {
        c.run()?;
        if c.trivial {
            return GroebnerBasis::from_basis(nvars, vec![FreePoly::one(nvars)], GbStatus::Complete);
        }
        // Tail reduction: leading words are unchanged, tails become normal.
        let live = c.live();
        let reduced: Vec<FreePoly> = live
            .par_iter()
            .map(|f| {
                let (lw, lc) = f.leading().unwrap().clone();
                let tail = FreePoly::from_sorted(c.nvars, f.terms()[1..].to_vec());
                &FreePoly::monomial(c.nvars, lw, lc) + &c.reducer.reduce(&tail, &c.elems)
            })
            .collect();
        let status = if c.skipped_above {
            GbStatus::TruncatedAtDegree(config.max_deg)
        } else {
            GbStatus::Complete
        };
        let gb = GroebnerBasis::from_basis(nvars, reduced, status)?;
        // Post-hoc audit; anything it finds goes back into completion.
        let missed = gb.audit_obstructions(config.max_deg);
        if missed.is_empty() {
            return Ok(gb);
        }
        for m in missed {
            c.add(m)?;
        }
    }
}

/// Convenience: groebner with the default budgets.
pub fn groebner_default(nvars: usize, gens: &[FreePoly]) -> Result<GroebnerBasis> {
    groebner(nvars, gens, GroebnerConfig::default())
}
