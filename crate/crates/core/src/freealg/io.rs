use serde::{Deserialize, Serialize};

use super::groebner::{GbStatus, GroebnerBasis};
use super::poly::{FreePoly, Word};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    #[serde(with = "crate::rational")]
    pub coeff: Q,
}

/// `{"alphabet": [...], "polys": [[{"word": [..], "coeff": "p/q"}, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub alphabet: Vec<String>,
    pub polys: Vec<Vec<TermJson>>,
}

fn poly_terms(p: &FreePoly) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(w, c)| TermJson {
            word: w.letters().iter().map(|&l| l as usize).collect(),
            coeff: c.clone(),
        })
        .collect()
}

fn parse_polys(alphabet: &[String], polys: &[Vec<TermJson>]) -> Result<Vec<FreePoly>> {
    let n = alphabet.len();
    if n > u16::MAX as usize {
        return Err(Error::Invalid("alphabet too large".into()));
    }
    polys
        .iter()
        .map(|terms| {
            for t in terms {
                if let Some(&bad) = t.word.iter().find(|&&l| l >= n) {
                    return Err(Error::Invalid(format!("letter {bad} outside alphabet of size {n}")));
                }
            }
            Ok(FreePoly::from_terms(
                n,
                terms.iter().map(|t| (Word::from_indices(&t.word), t.coeff.clone())),
            ))
        })
        .collect()
}

impl IdealFile {
    pub fn new(alphabet: Vec<String>, polys: &[FreePoly]) -> IdealFile {
        IdealFile { alphabet, polys: polys.iter().map(poly_terms).collect() }
    }

    pub fn polys(&self) -> Result<Vec<FreePoly>> {
        parse_polys(&self.alphabet, &self.polys)
    }
}

/// A Gröbner basis in the ideal-file format, plus its status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbFile {
    pub alphabet: Vec<String>,
    pub polys: Vec<Vec<TermJson>>,
    pub status: GbStatus,
}

impl GbFile {
    pub fn new(alphabet: Vec<String>, gb: &GroebnerBasis) -> GbFile {
        GbFile {
            alphabet,
            polys: gb.basis().iter().map(poly_terms).collect(),
            status: gb.status(),
        }
    }

    pub fn basis(&self) -> Result<GroebnerBasis> {
        let polys = parse_polys(&self.alphabet, &self.polys)?;
        GroebnerBasis::from_basis(self.alphabet.len(), polys, self.status)
    }
}
