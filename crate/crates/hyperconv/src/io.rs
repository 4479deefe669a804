//! JSON serialization of arrangements. Rationals are decimal-free strings
//! `"p/q"` or `"p"`; matrices are arrays of arrays of such strings.
//!
//! Format:
//! `{ "n": 4, "k": 1, "A": [["1"],...], "w": ["-1",...], "xi": ["1"]?, "c": "0"? }`

use crate::arrangement::{Arrangement, PolarizedArrangement, StrongPolarizedArrangement};
use crate::error::{Error, Result};
use crate::qlinalg::{parse_rat, rat_to_string, Mat, Rat};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ArrangementJson {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub w: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

/// One of the three arrangement kinds the JSON format can carry.
#[derive(Debug, Clone)]
pub enum LoadedArrangement {
    Plain(Arrangement),
    Polarized(PolarizedArrangement),
    Strong(StrongPolarizedArrangement),
}

impl LoadedArrangement {
    pub fn polarized(self) -> Result<PolarizedArrangement> {
        match self {
            LoadedArrangement::Polarized(p) => Ok(p),
            LoadedArrangement::Strong(s) => Ok(s.polarized),
            LoadedArrangement::Plain(_) => {
                Err(Error::Precondition("arrangement JSON has no `xi` field".into()))
            }
        }
    }

    pub fn base(&self) -> &Arrangement {
        match self {
            LoadedArrangement::Plain(a) => a,
            LoadedArrangement::Polarized(p) => p.base(),
            LoadedArrangement::Strong(s) => s.polarized.base(),
        }
    }
}

fn parse_vec(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn from_json(dto: &ArrangementJson) -> Result<LoadedArrangement> {
    if dto.a.len() != dto.n {
        return Err(Error::Shape(format!("A has {} rows, expected n = {}", dto.a.len(), dto.n)));
    }
    if dto.a.iter().any(|row| row.len() != dto.k) {
        return Err(Error::Shape(format!("A rows must have k = {} entries", dto.k)));
    }
    let rows: Result<Vec<Vec<Rat>>> = dto.a.iter().map(|r| parse_vec(r)).collect();
    let a = Mat::from_rows(rows?);
    let w = parse_vec(&dto.w)?;
    let arr = Arrangement::new(a, w)?;
    match &dto.xi {
        None => {
            if dto.c.is_some() {
                return Err(Error::Precondition("`c` given without `xi`".into()));
            }
            Ok(LoadedArrangement::Plain(arr))
        }
        Some(xi) => {
            let pol = PolarizedArrangement::new(arr, parse_vec(xi)?)?;
            match &dto.c {
                None => Ok(LoadedArrangement::Polarized(pol)),
                Some(c) => Ok(LoadedArrangement::Strong(StrongPolarizedArrangement {
                    polarized: pol,
                    c: parse_rat(c)?,
                })),
            }
        }
    }
}

pub fn arrangement_to_json(arr: &Arrangement) -> ArrangementJson {
    ArrangementJson {
        n: arr.n(),
        k: arr.k(),
        a: (0..arr.n())
            .map(|i| arr.matrix().row(i).iter().map(rat_to_string).collect())
            .collect(),
        w: arr.shift().iter().map(rat_to_string).collect(),
        xi: None,
        c: None,
    }
}

pub fn polarized_to_json(pol: &PolarizedArrangement) -> ArrangementJson {
    let mut dto = arrangement_to_json(pol.base());
    dto.xi = Some(pol.xi().iter().map(rat_to_string).collect());
    dto
}

pub fn strong_to_json(s: &StrongPolarizedArrangement) -> ArrangementJson {
    let mut dto = polarized_to_json(&s.polarized);
    dto.c = Some(rat_to_string(&s.c));
    dto
}

pub fn load_str(s: &str) -> Result<LoadedArrangement> {
    let dto: ArrangementJson = serde_json::from_str(s)?;
    from_json(&dto)
}

pub fn dump(loaded: &LoadedArrangement) -> String {
    let dto = match loaded {
        LoadedArrangement::Plain(a) => arrangement_to_json(a),
        LoadedArrangement::Polarized(p) => polarized_to_json(p),
        LoadedArrangement::Strong(s) => strong_to_json(s),
    };
    serde_json::to_string_pretty(&dto).expect("arrangement DTO serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::reference_left;

    #[test]
    fn round_trip_polarized() {
        let pol = reference_left(4, 2).unwrap();
        let text = dump(&LoadedArrangement::Polarized(pol));
        let loaded = load_str(&text).unwrap();
        let again = dump(&loaded);
        assert_eq!(text, again);
    }

    #[test]
    fn rejects_c_without_xi() {
        let text = r#"{"n":2,"k":1,"A":[["1"],["1"]],"w":["-1","-2"],"c":"0"}"#;
        assert!(load_str(text).is_err());
    }

    #[test]
    fn rejects_bad_entry() {
        let text = r#"{"n":2,"k":1,"A":[["1"],["x"]],"w":["-1","-2"]}"#;
        assert!(load_str(text).is_err());
    }
}
