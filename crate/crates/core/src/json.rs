//! JSON formats shared by the CLI and reports.
//!
//! Algebra: `{"elements": [labels], "leq": [[0/1 or bool]]}` or `{"elements": [...], "hasse":
//! [[lower, upper], ...]}`, with an optional `"neg": [...]` table. Indices refer to positions in
//! `elements`. Subordination: `{"algebra": <algebra, built-in name or file path>, "prec": [[a, b],
//! ...]}`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras;
use crate::bits::Relation;
use crate::completion::CanonicalExtension;
use crate::duality::SubordinationSpace;
use crate::order::{Carrier, FinPoset, OrderError};
use crate::subordination::{ProtoSubAlg, SubordError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("algebra needs exactly one of \"leq\" and \"hasse\"")]
    OrderShape,
    #[error("\"leq\" has {rows} rows for {n} elements")]
    LeqRows { rows: usize, n: usize },
    #[error("\"leq\" entries must be true/false or 0/1, got {0}")]
    LeqEntry(i64),
    #[error("unknown algebra '{0}': not a built-in and no such file")]
    UnknownAlgebra(String),
    #[error("negation table: {0}")]
    Negation(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Subord(#[from] SubordError),
}

pub type Result<T, E = JsonError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LeqCell {
    Bool(bool),
    Int(i64),
}

impl LeqCell {
    fn get(self) -> Result<bool> {
        match self {
            LeqCell::Bool(b) => Ok(b),
            LeqCell::Int(0) => Ok(false),
            LeqCell::Int(1) => Ok(true),
            LeqCell::Int(k) => Err(JsonError::LeqEntry(k)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<LeqCell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hasse: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<Vec<usize>>,
}

/// A carrier read from JSON. Lattice carriers hold the negation themselves; `neg` keeps it for
/// poset carriers too.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub carrier: Carrier,
    pub neg: Option<Vec<usize>>,
}

impl AlgebraJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Algebra> {
        let n = self.elements.len();
        let poset = match (&self.leq, &self.hasse) {
            (Some(rows), None) => {
                if rows.len() != n {
                    return Err(JsonError::LeqRows { rows: rows.len(), n });
                }
                let m: Vec<Vec<bool>> =
                    rows.iter().map(|r| r.iter().map(|c| c.get()).collect::<Result<_>>()).collect::<Result<_>>()?;
                crate::order::validate_poset(&m)?
            }
            (None, Some(covers)) => {
                let covers: Vec<(usize, usize)> = covers.iter().map(|&[a, b]| (a, b)).collect();
                FinPoset::from_hasse(n, &covers)?
            }
            _ => return Err(JsonError::OrderShape),
        };
        let poset = poset.with_labels(self.elements.iter().cloned())?;
        let carrier = Carrier::from_poset(poset);
        with_negation(carrier, self.neg.clone())
    }

    /// The `leq` form of a carrier, with its negation when it has one.
    pub fn of(carrier: &Carrier, neg: Option<&[usize]>) -> Self {
        let p = carrier.poset();
        let n = p.n();
        AlgebraJson {
            elements: p.labels().to_vec(),
            leq: Some((0..n).map(|a| (0..n).map(|b| LeqCell::Int(p.leq(a, b) as i64)).collect()).collect()),
            hasse: None,
            neg: neg.or(carrier.neg()).map(<[usize]>::to_vec),
        }
    }
}

fn with_negation(carrier: Carrier, neg: Option<Vec<usize>>) -> Result<Algebra> {
    let Some(neg) = neg else {
        let neg = carrier.neg().map(<[usize]>::to_vec);
        return Ok(Algebra { carrier, neg });
    };
    let n = carrier.n();
    if neg.len() != n {
        return Err(JsonError::Negation(format!("{} entries for {n} elements", neg.len())));
    }
    if let Some(&bad) = neg.iter().find(|&&x| x >= n) {
        return Err(JsonError::Negation(format!("index {bad} out of range for {n} elements")));
    }
    let carrier = match carrier {
        Carrier::Lattice(l) => Carrier::Lattice(l.with_negation(neg.clone())?),
        poset => poset,
    };
    Ok(Algebra { carrier, neg: Some(neg) })
}

/// An algebra given inline, by built-in name, or by a path to an algebra JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraJson),
    Named(String),
}

impl AlgebraRef {
    /// Built-in names win over files; relative paths resolve against `base`.
    pub fn resolve(&self, base: Option<&Path>) -> Result<(String, Algebra)> {
        match self {
            AlgebraRef::Inline(a) => Ok(("inline".to_string(), a.build()?)),
            AlgebraRef::Named(name) => load_algebra(name, base),
        }
    }
}

/// A built-in carrier, or an algebra JSON file.
pub fn load_algebra(name: &str, base: Option<&Path>) -> Result<(String, Algebra)> {
    if let Some(c) = algebras::builtin(name) {
        let mut alg = with_negation(c, None)?;
        if name == "antichain2" {
            alg.neg = Some(algebras::ANTICHAIN2_SWAP.to_vec());
        }
        return Ok((name.to_string(), alg));
    }
    let path = base.map_or_else(|| PathBuf::from(name), |b| b.join(name));
    if !path.exists() {
        return Err(JsonError::UnknownAlgebra(name.to_string()));
    }
    let text = read(&path)?;
    Ok((name.to_string(), AlgebraJson::parse(&text)?.build()?))
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| JsonError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubordinationJson {
    pub algebra: AlgebraRef,
    pub prec: Vec<[usize; 2]>,
}

/// A subordination instance read from JSON.
#[derive(Debug, Clone)]
pub struct LoadedSubordination {
    pub algebra_name: String,
    pub sub: ProtoSubAlg,
    pub neg: Option<Vec<usize>>,
}

impl SubordinationJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(&self, base: Option<&Path>) -> Result<LoadedSubordination> {
        let (algebra_name, alg) = self.algebra.resolve(base)?;
        let pairs: Vec<(usize, usize)> = self.prec.iter().map(|&[a, b]| (a, b)).collect();
        let sub = ProtoSubAlg::from_pairs(Arc::new(alg.carrier), &pairs)?;
        Ok(LoadedSubordination { algebra_name, sub, neg: alg.neg })
    }

    /// Refers to the algebra by name, for carriers that are built-ins or files.
    pub fn named(algebra: &str, prec: &Relation) -> Self {
        SubordinationJson {
            algebra: AlgebraRef::Named(algebra.to_string()),
            prec: prec.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn inline(s: &ProtoSubAlg, neg: Option<&[usize]>) -> Self {
        SubordinationJson {
            algebra: AlgebraRef::Inline(AlgebraJson::of(s.carrier(), neg)),
            prec: s.prec().pairs().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// The completion as an algebra, plus where each base element lands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionJson {
    #[serde(flatten)]
    pub delta: AlgebraJson,
    pub embed: Vec<usize>,
}

impl CompletionJson {
    pub fn of(ext: &CanonicalExtension) -> Self {
        let delta = Carrier::Lattice(ext.delta().clone().without_negation());
        CompletionJson { delta: AlgebraJson::of(&delta, None), embed: ext.embed().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    /// `[x, y]` with `x ≤ y` among points.
    pub order: Vec<[usize; 2]>,
    #[serde(rename = "R")]
    pub r: Vec<[usize; 2]>,
}

impl SpaceJson {
    pub fn of(sp: &SubordinationSpace) -> Self {
        SpaceJson {
            points: sp.labels.clone(),
            order: sp.order.pairs().map(|(a, b)| [a, b]).collect(),
            r: sp.r.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn build(&self) -> Result<SubordinationSpace> {
        let n = self.points.len();
        let rel = |pairs: &[[usize; 2]]| {
            Relation::from_pairs(n, pairs.iter().map(|&[a, b]| (a, b)))
                .ok_or(JsonError::Order(OrderError::IndexOutOfRange { index: n, n }))
        };
        Ok(SubordinationSpace { labels: self.points.clone(), order: rel(&self.order)?, r: rel(&self.r)? })
    }
}
