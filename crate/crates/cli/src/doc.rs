//! Input documents: JSON files carrying a set of Bloch directions either as
//! [x, y, z] triples or as [theta, phi] angle pairs, plus optional labels
//! and priors. Built-in fixtures cover the sets the test suite leans on.

use antipar::BlochVector;
use serde::Deserialize;
use std::path::Path;

use crate::{CliError, Result};

/// Direction sets drift off unit length in hand-written files; anything
/// beyond this is treated as a typo rather than rounding.
const NORMALIZE_TOL: f64 = 1e-6;

/// Within this of unit length the stored bits are kept untouched, so a
/// report's emitted vectors reload to the identical set.
const KEEP_TOL: f64 = 1e-12;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSetDocument {
    pub vectors: Option<Vec<[f64; 3]>>,
    pub angles: Option<Vec<[f64; 2]>>,
    pub labels: Option<Vec<String>>,
    pub priors: Option<Vec<f64>>,
}

/// A validated document: unit directions plus display labels and, when the
/// document carried them, priors.
pub struct LoadedSet {
    pub vectors: Vec<BlochVector>,
    pub labels: Vec<String>,
    pub priors: Option<Vec<f64>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fixture {
    /// Four directions with pairwise dot product −1/3.
    Tetrahedron,
    /// Three coplanar directions in the z = 0 plane.
    Equator,
    /// Three coplanar directions in the y = 0 plane.
    MeridianXz,
}

pub fn load_set(input: Option<&Path>, fixture: Option<Fixture>) -> Result<LoadedSet> {
    match (input, fixture) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either an input file or --fixture, not both".into(),
        )),
        (None, None) => Err(CliError::Input(
            "no input: pass a document path or --fixture".into(),
        )),
        (None, Some(f)) => Ok(fixture_set(f)),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let doc: VectorSetDocument = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))?;
            validate(doc)
        }
    }
}

fn validate(doc: VectorSetDocument) -> Result<LoadedSet> {
    let vectors = match (doc.vectors, doc.angles) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "document must carry either vectors or angles, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation(
                "document carries neither vectors nor angles".into(),
            ))
        }
        (Some(triples), None) => triples
            .iter()
            .enumerate()
            .map(|(i, &[x, y, z])| unit_vector(i, x, y, z))
            .collect::<Result<Vec<_>>>()?,
        (None, Some(pairs)) => pairs
            .iter()
            .map(|&[theta, phi]| {
                let v = BlochVector::new(
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                )
                .map_err(|e| CliError::Validation(format!("bad angle pair: {e}")))?;
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if vectors.is_empty() {
        return Err(CliError::Validation("document carries no directions".into()));
    }

    let labels = match doc.labels {
        Some(labels) => {
            if labels.len() != vectors.len() {
                return Err(CliError::Validation(format!(
                    "{} labels for {} directions",
                    labels.len(),
                    vectors.len()
                )));
            }
            labels
        }
        None => default_labels(vectors.len()),
    };
    if let Some(priors) = &doc.priors {
        if priors.len() != vectors.len() {
            return Err(CliError::Validation(format!(
                "{} priors for {} directions",
                priors.len(),
                vectors.len()
            )));
        }
    }

    Ok(LoadedSet {
        vectors,
        labels,
        priors: doc.priors,
    })
}

fn unit_vector(index: usize, x: f64, y: f64, z: f64) -> Result<BlochVector> {
    let norm = (x * x + y * y + z * z).sqrt();
    let deviation = (norm - 1.0).abs();
    if deviation <= KEEP_TOL {
        BlochVector::new(x, y, z)
            .map_err(|e| CliError::Validation(format!("vector {index}: {e}")))
    } else if deviation <= NORMALIZE_TOL {
        eprintln!("warning: vector {index} normalized (|length - 1| = {deviation:.3e})");
        BlochVector::normalized(x, y, z)
            .map_err(|e| CliError::Validation(format!("vector {index}: {e}")))
    } else {
        Err(CliError::Validation(format!(
            "vector {index} has length {norm}, more than {NORMALIZE_TOL} from unit"
        )))
    }
}

fn default_labels(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("v{i}")).collect()
}

fn fixture_set(fixture: Fixture) -> LoadedSet {
    let vectors = match fixture {
        Fixture::Tetrahedron => vec![
            BlochVector::Z,
            BlochVector::new(8.0f64.sqrt() / 3.0, 0.0, -1.0 / 3.0).unwrap(),
            BlochVector::new(-(2.0f64.sqrt()) / 3.0, (2.0 / 3.0f64).sqrt(), -1.0 / 3.0).unwrap(),
            BlochVector::new(-(2.0f64.sqrt()) / 3.0, -((2.0 / 3.0f64).sqrt()), -1.0 / 3.0)
                .unwrap(),
        ],
        Fixture::Equator => vec![
            BlochVector::X,
            BlochVector::Y,
            BlochVector::X.antipode(),
        ],
        Fixture::MeridianXz => vec![BlochVector::Z, BlochVector::X, BlochVector::Z.antipode()],
    };
    let labels = default_labels(vectors.len());
    LoadedSet {
        vectors,
        labels,
        priors: None,
    }
}
