//! Named racks and cocycles used throughout the CLI and tests.
//!
//! Racks: `o2N` (transpositions in S_N, N ≥ 2) and `o44` (4-cycles in S_4).
//! Cocycles: `const:ω` for a nonzero rational ω, and `chi` on transpositions.

use crate::cocycle::{Cocycle, CocycleKind};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};
use crate::rack::Rack;
use crate::rational::parse_q;

/// A conjugacy-class rack together with its permutations.
#[derive(Clone, Debug)]
pub struct ClassRack {
    pub name: String,
    pub degree: usize,
    pub rack: Rack,
    pub perms: Vec<Perm>,
}

/// Largest symmetric group degree accepted for `o2N`.
pub const MAX_TRANSPOSITION_DEGREE: usize = 9;

pub fn rack_by_name(name: &str) -> Result<ClassRack> {
    let bad = || Error::Invalid(format!("unknown rack {name:?}; expected o2N (N = 2..9) or o44"));
    let (degree, seed) = match name {
        "o44" => (4, "(1234)"),
        _ => {
            let n: usize = name.strip_prefix("o2").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if !(2..=MAX_TRANSPOSITION_DEGREE).contains(&n) {
                return Err(bad());
            }
            (n, "(12)")
        }
    };
    let group = PermGroup::symmetric(degree);
    let seed = Perm::parse_cycles(degree, seed)?;
    let (rack, perms) = Rack::conjugacy(&group, &seed)?;
    Ok(ClassRack { name: name.to_string(), degree, rack, perms })
}

/// Parses `const:ω` or `chi` into a cocycle kind for a rack of the given
/// permutation degree.
pub fn cocycle_kind(name: &str, degree: usize) -> Result<CocycleKind> {
    if name == "chi" {
        return Ok(CocycleKind::ChiTranspositions(degree));
    }
    match name.strip_prefix("const:") {
        Some(w) => Ok(CocycleKind::Constant(parse_q(w)?)),
        None => Err(Error::Invalid(format!("unknown cocycle {name:?}; expected const:ω or chi"))),
    }
}

pub fn cocycle_by_name(rack: &ClassRack, name: &str) -> Result<Cocycle> {
    Cocycle::make(&rack.rack, &cocycle_kind(name, rack.degree)?)
}

/// Shorthand for tests and examples: the rack and cocycle by name.
pub fn setting(rack: &str, cocycle: &str) -> Result<(ClassRack, Cocycle)> {
    let r = rack_by_name(rack)?;
    let q = cocycle_by_name(&r, cocycle)?;
    Ok((r, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(rack_by_name("o23").unwrap().rack.len(), 3);
        assert_eq!(rack_by_name("o24").unwrap().rack.len(), 6);
        assert_eq!(rack_by_name("o25").unwrap().rack.len(), 10);
        assert_eq!(rack_by_name("o44").unwrap().rack.len(), 6);
        assert!(rack_by_name("o21").is_err());
        assert!(rack_by_name("foo").is_err());
        assert!(setting("o24", "chi").is_ok());
        assert!(setting("o44", "chi").is_err());
        assert!(setting("o23", "const:0").is_err());
        assert!(setting("o23", "const:2/3").is_ok());
        assert!(setting("o23", "bogus").is_err());
    }
}
