//! Input parsing: inline vector lists and JSON files.

use convfan::exact::parse_rat;
use convfan::{GradedSystem, MonomialIdeal, QVector, Rat};
use serde::Deserialize;
use serde_json::Value;

use crate::Failure;

/// Parses `"1,0;0,1;1,1"` into vectors.
pub fn parse_vector_list(s: &str) -> Result<Vec<QVector>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_vector).collect()
}

/// Parses `"1,1/2,-3"`.
pub fn parse_vector(s: &str) -> Result<QVector, Failure> {
    s.split(',')
        .map(|x| {
            parse_rat(x.trim()).ok_or_else(|| Failure::usage(format!("not a rational number: {x:?}")))
        })
        .collect()
}

fn value_to_rat(v: &Value) -> Result<Rat, Failure> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .or_else(|| n.as_u64().map(|u| Rat::from_integer(u.into())))
            .ok_or_else(|| Failure::usage(format!("numbers must be integers or \"p/q\" strings: {n}"))),
        Value::String(s) => parse_rat(s).ok_or_else(|| Failure::usage(format!("not a rational number: {s:?}"))),
        other => Err(Failure::usage(format!("expected a number, found {other}"))),
    }
}

fn value_to_vector(v: &Value) -> Result<QVector, Failure> {
    match v {
        Value::Array(xs) => xs.iter().map(value_to_rat).collect(),
        other => Err(Failure::usage(format!("expected an array of numbers, found {other}"))),
    }
}

/// Geometry input for `phi` and `fan`: `{"generators": [[..]], "alpha": [..], "v": [..]}`.
#[derive(Debug, Default)]
pub struct GeometryInput {
    pub generators: Vec<QVector>,
    pub alpha: Option<QVector>,
    pub v: Option<QVector>,
}

pub fn parse_geometry(text: &str) -> Result<GeometryInput, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed JSON: {e}")))?;
    let Value::Object(map) = value else {
        return Err(Failure::usage("expected a JSON object"));
    };
    let allowed = ["generators", "alpha", "v"];
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Failure::usage(format!("unknown field {k:?}")));
    }
    let generators = match map.get("generators") {
        Some(Value::Array(gs)) => gs.iter().map(value_to_vector).collect::<Result<_, _>>()?,
        Some(other) => return Err(Failure::usage(format!("generators must be an array, found {other}"))),
        None => return Err(Failure::usage("missing field \"generators\"")),
    };
    let alpha = map.get("alpha").map(value_to_vector).transpose()?;
    let v = map.get("v").map(value_to_vector).transpose()?;
    Ok(GeometryInput { generators, alpha, v })
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub d_cap: Option<u64>,
    pub p_bound: Option<u64>,
    #[serde(rename = "L")]
    pub ell_bound: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub degree: Vec<i64>,
    pub ideal: Vec<Vec<u64>>,
}

/// JSON description of a graded system by its generators.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub ambient_dim: usize,
    pub grading_rank: usize,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub caps: Caps,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed system file: {e}")))
    }

    pub fn build(&self) -> Result<GradedSystem, Failure> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let ideal = MonomialIdeal::new(self.ambient_dim, g.ideal.clone())
                .map_err(|e| Failure::usage(format!("invalid ideal: {e}")))?;
            gens.push((g.degree.clone(), ideal));
        }
        GradedSystem::new(self.grading_rank, self.ambient_dim, gens)
            .map_err(|e| Failure::usage(format!("invalid system: {e}")))
    }

}
