//! Resolving racks, cocycles and parameter lists from flags and files.

use std::path::Path;

use rackalg::builtin::{cocycle_kind, rack_by_name, ClassRack};
use rackalg::cocycle::Cocycle;
use rackalg::rack::Rack;
use rackalg::rational::parse_q;
use rackalg::{Error, Q, Result};
use serde::Deserialize;
use serde_json::Value;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Invalid(e.to_string()))
}

/// Same layout as the library's rack JSON, but validated here so that axiom
/// failures keep their own error instead of becoming parse errors.
#[derive(Deserialize)]
struct RawRack {
    n: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

impl RawRack {
    fn build(self) -> Result<Rack> {
        let labels = self.labels.unwrap_or_else(|| (0..self.n).map(|i| i.to_string()).collect());
        Rack::validate(self.n, self.table, labels)
    }
}

#[derive(Deserialize)]
struct RawCocycle {
    rack: RawRack,
    q: Vec<Vec<String>>,
}

/// A rack, remembered as builtin when it came by name.
pub struct RackInput {
    pub rack: Rack,
    pub builtin: Option<ClassRack>,
    file_q: Option<Vec<Vec<String>>>,
}

/// `--rack NAME` or `--file PATH`; the file holds a rack or a cocycle file
/// (`{"rack": ..., "q": ...}`).
pub fn load_rack(name: Option<&str>, file: Option<&Path>) -> Result<RackInput> {
    match (name, file) {
        (Some(name), None) => {
            let r = rack_by_name(name)?;
            Ok(RackInput { rack: r.rack.clone(), builtin: Some(r), file_q: None })
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            if v.get("q").is_some() {
                let raw: RawCocycle = from_value(v)?;
                Ok(RackInput { rack: raw.rack.build()?, builtin: None, file_q: Some(raw.q) })
            } else {
                let raw: RawRack = from_value(v)?;
                Ok(RackInput { rack: raw.build()?, builtin: None, file_q: None })
            }
        }
        (Some(_), Some(_)) => Err(Error::Invalid("give either --rack or --file, not both".into())),
        (None, None) => Err(Error::Invalid("a rack is required: --rack NAME or --file PATH".into())),
    }
}

/// The cocycle from the file if it carried one, else `--cocycle NAME`.
pub fn load_cocycle(input: &RackInput, name: Option<&str>) -> Result<Cocycle> {
    match (&input.file_q, name) {
        (Some(_), Some(_)) => Err(Error::Invalid("the file already carries a cocycle; drop --cocycle".into())),
        (Some(q), None) => {
            let values = q
                .iter()
                .map(|row| row.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Cocycle::validate(&input.rack, values)
        }
        (None, Some(name)) => {
            let degree = input.builtin.as_ref().map_or(0, |r| r.degree);
            let kind = cocycle_kind(name, degree)?;
            if input.builtin.is_none() && name == "chi" {
                return Err(Error::WrongRackForChi);
            }
            Cocycle::make(&input.rack, &kind)
        }
        (None, None) => Err(Error::Invalid("a cocycle is required: --cocycle NAME or a cocycle file".into())),
    }
}

/// Comma-separated fractions.
pub fn parse_list(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}
