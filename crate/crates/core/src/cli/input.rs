use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::chainkit::{ComplexJson, FreeComplex};
use crate::corpus;
use crate::error::{Error, Result};
use crate::hoengine::{DiagramFile, FiniteDiagram};
use crate::intlin::Int;
use crate::simpkit::{parse_simplex_key, ComplexFile, SimpComplex, SimplexChain, SimplicialMap};
use crate::zxmod::{dual_cell_complex, XComplex, XComplexFile};

/// A parsed input document with the digest of its bytes.
pub struct Loaded {
    pub name: String,
    pub sha256: String,
    pub value: Value,
}

/// Reads `PATH`, or `corpus:NAME` for a bundled complex.
pub fn load(path: &str) -> Result<Loaded> {
    let bytes = match path.strip_prefix("corpus:") {
        Some(name) => {
            let f = corpus::file(name)
                .ok_or_else(|| Error::Format(format!("no corpus complex named {name:?}")))?;
            serde_json::to_vec(&f)?
        }
        None => std::fs::read(path).map_err(|e| Error::Format(format!("{path}: {e}")))?,
    };
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let value = serde_json::from_slice(&bytes)?;
    Ok(Loaded {
        name: path.to_string(),
        sha256,
        value,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    Ok(T::deserialize(v)?)
}

fn has(v: &Value, key: &str) -> bool {
    v.get(key).is_some()
}

pub fn simplicial(v: &Value) -> Result<SimpComplex> {
    if !has(v, "facets") {
        return Err(Error::Format(
            "expected a simplicial complex {\"vertices\", \"facets\"}".into(),
        ));
    }
    SimpComplex::from_json(&parse::<ComplexFile>(v)?)
}

/// The dual cell complex of the identity on a simplicial complex.
pub fn identity_dual_cells(k: &SimpComplex) -> Result<XComplex> {
    Ok(dual_cell_complex(k, Arc::new(k.clone()), &SimplicialMap::identity(k))?.0)
}

/// An X-based complex; a plain simplicial complex stands for its dual cells.
pub fn xcomplex(v: &Value) -> Result<XComplex> {
    if has(v, "base") {
        XComplex::from_json(&parse::<XComplexFile>(v)?)
    } else {
        identity_dual_cells(&simplicial(v)?)
    }
}

pub fn free(v: &Value) -> Result<FreeComplex> {
    if has(v, "ranks") {
        FreeComplex::from_json(&parse::<ComplexJson>(v)?)
    } else if has(v, "base") {
        Ok(xcomplex(v)?.assemble().clone())
    } else {
        Ok(simplicial(v)?.chains())
    }
}

pub fn diagram(v: &Value) -> Result<FiniteDiagram> {
    FiniteDiagram::from_json(&parse::<DiagramFile>(v)?)
}

#[derive(Deserialize)]
struct FormFile {
    form: Vec<Vec<Int>>,
}

/// `{"form": [[..], ..]}`.
pub fn form(v: &Value) -> Result<Option<Vec<Vec<Int>>>> {
    if !has(v, "form") {
        return Ok(None);
    }
    let m = parse::<FormFile>(v)?.form;
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::DimensionMismatch("form is not square".into()));
    }
    Ok(Some(m))
}

#[derive(Deserialize)]
struct PairFile {
    complex: ComplexFile,
    subcomplex: Vec<Vec<usize>>,
    #[serde(default)]
    cycle: Option<BTreeMap<String, Int>>,
}

/// `{"complex", "subcomplex": facets, "cycle"?: {σ-key: coeff}}`.
pub fn pair(v: &Value) -> Result<(SimpComplex, SimpComplex, Option<SimplexChain>)> {
    let p = parse::<PairFile>(v)?;
    let k = SimpComplex::from_json(&p.complex)?;
    let l = SimpComplex::new(k.n_vertices(), &p.subcomplex)?;
    let z = match p.cycle {
        None => None,
        Some(m) => Some(
            m.iter()
                .map(|(key, c)| Ok((k.require(&parse_simplex_key(key)?)?, c.clone())))
                .collect::<Result<SimplexChain>>()?,
        ),
    };
    Ok((k, l, z))
}

#[derive(Deserialize)]
struct MapFile {
    source: ComplexFile,
    target: ComplexFile,
    vertex_map: Vec<usize>,
}

/// `{"source", "target", "vertex_map"}`.
pub fn simplicial_map(v: &Value) -> Result<(SimpComplex, Arc<SimpComplex>, SimplicialMap)> {
    let m = parse::<MapFile>(v)?;
    let (s, t) = (
        SimpComplex::from_json(&m.source)?,
        SimpComplex::from_json(&m.target)?,
    );
    let f = SimplicialMap::new(&s, &t, m.vertex_map)?;
    Ok((s, Arc::new(t), f))
}

/// `{"left", "right"}` of X-based complexes, or one complex paired with itself.
pub fn product(v: &Value) -> Result<(XComplex, XComplex)> {
    match (v.get("left"), v.get("right")) {
        (Some(a), Some(b)) => Ok((xcomplex(a)?, xcomplex(b)?)),
        _ => {
            let c = xcomplex(v)?;
            Ok((c.clone(), c))
        }
    }
}

/// Largest simplicial complex the input is built on, for `--max-size`.
pub fn size(v: &Value) -> usize {
    let of = |c: &Value| simplicial(c).map(|k| k.len()).unwrap_or(0);
    [
        Some(v),
        v.get("base"),
        v.get("complex"),
        v.get("source"),
        v.get("target"),
    ]
    .into_iter()
    .flatten()
    .map(of)
    .max()
    .unwrap_or(0)
}
