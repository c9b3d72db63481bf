//! Human tables and the JSON report schema. Human output prints reals with
//! ten significant digits; JSON carries full double precision and keeps a
//! stable field set so downstream tooling can rely on it.

use antipar::bloch::CircleFit;
use antipar::linalg::ComplexMatrix;
use antipar::protrans::{FeasibilityResult, ImpossibleReason, UsdResult};
use antipar::states::{Transformability, WitnessKind};
use antipar::{BlochVector, Complex64};
use serde::Serialize;

/// %.10g: ten significant digits, trailing zeros trimmed. Negative zero
/// prints as plain 0.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..10).contains(&magnitude) {
        let decimals = (9 - magnitude).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        format!("{x:.9e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {} {}i", sig10(z.re), sign, sig10(z.im.abs()))
}

pub fn fmt_vector(v: &BlochVector) -> String {
    format!("({}, {}, {})", sig10(v.x()), sig10(v.y()), sig10(v.z()))
}

/// Rows rendered as aligned cells inside brackets.
pub fn fmt_matrix(m: &ComplexMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_complex(m.get(i, j))).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(0);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("[ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn vec3(v: &BlochVector) -> [f64; 3] {
    [v.x(), v.y(), v.z()]
}

pub fn matrix_json(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
pub struct FlipJson {
    pub normal: [f64; 3],
    pub u2: Vec<Vec<[f64; 2]>>,
    pub u4: Vec<Vec<[f64; 2]>>,
    pub probe: Option<[f64; 3]>,
    pub fidelity: Option<f64>,
}

#[derive(Serialize)]
pub struct CircleJson {
    pub on_circle: bool,
    pub normal: Option<[f64; 3]>,
    pub residual: Option<f64>,
}

pub fn circle_json(fit: &CircleFit) -> CircleJson {
    match fit {
        CircleFit::Fit(circle) => CircleJson {
            on_circle: true,
            normal: Some(vec3(&circle.normal())),
            residual: None,
        },
        CircleFit::NoFit { residual } => CircleJson {
            on_circle: false,
            normal: None,
            residual: Some(*residual),
        },
    }
}

pub fn render_circle(fit: &CircleFit) -> String {
    match fit {
        CircleFit::Fit(circle) => {
            format!("on circle: yes\nnormal: {}", fmt_vector(&circle.normal()))
        }
        CircleFit::NoFit { residual } => {
            format!("on circle: no\nresidual: {}", sig10(*residual))
        }
    }
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub pair: [usize; 2],
    pub kind: String,
    pub residual: f64,
}

#[derive(Serialize)]
pub struct ExactJson {
    pub exact: bool,
    pub phases: Option<Vec<f64>>,
    pub witness: Option<WitnessJson>,
}

pub fn exact_json(verdict: &Transformability) -> ExactJson {
    match verdict {
        Transformability::Exact { phases } => ExactJson {
            exact: true,
            phases: Some(phases.clone()),
            witness: None,
        },
        Transformability::Infeasible(witness) => ExactJson {
            exact: false,
            phases: None,
            witness: Some(WitnessJson {
                pair: [witness.pair.0, witness.pair.1],
                kind: match witness.kind {
                    WitnessKind::Modulus => "modulus".into(),
                    WitnessKind::Phase => "phase".into(),
                },
                residual: witness.residual,
            }),
        },
    }
}

pub fn render_exact(verdict: &Transformability, labels: &[String]) -> String {
    match verdict {
        Transformability::Exact { phases } => {
            let mut out = String::from("exact: yes\nphases:\n");
            for (label, phase) in labels.iter().zip(phases) {
                out.push_str(&format!("  {label}: {}\n", sig10(*phase)));
            }
            out.pop();
            out
        }
        Transformability::Infeasible(witness) => {
            let what = match witness.kind {
                WitnessKind::Modulus => "overlap moduli differ",
                WitnessKind::Phase => "overlap phases are inconsistent",
            };
            format!(
                "exact: no\nwitness: {what} at pair ({}, {}), residual {}",
                labels[witness.pair.0],
                labels[witness.pair.1],
                sig10(witness.residual)
            )
        }
    }
}

#[derive(Serialize)]
pub struct FeasJson {
    pub verdict: String,
    pub gamma: Option<f64>,
    pub certificate: Option<f64>,
    pub phases: Option<Vec<f64>>,
    pub reason: Option<String>,
    pub rank_in: Option<usize>,
    pub rank_out: Option<usize>,
}

pub fn feas_json(result: &FeasibilityResult) -> FeasJson {
    match result {
        FeasibilityResult::Exact { phases } => FeasJson {
            verdict: "exact".into(),
            gamma: Some(1.0),
            certificate: None,
            phases: Some(phases.clone()),
            reason: None,
            rank_in: None,
            rank_out: None,
        },
        FeasibilityResult::Probabilistic {
            gamma,
            phases,
            certificate,
        } => FeasJson {
            verdict: "probabilistic".into(),
            gamma: Some(*gamma),
            certificate: Some(*certificate),
            phases: Some(phases.clone()),
            reason: None,
            rank_in: None,
            rank_out: None,
        },
        FeasibilityResult::Impossible { reason } => {
            let (reason, rank_in, rank_out) = match reason {
                ImpossibleReason::RankObstruction { rank_in, rank_out } => {
                    ("rank-obstruction".to_string(), Some(*rank_in), Some(*rank_out))
                }
                ImpossibleReason::PsdInfeasible => ("psd-infeasible".to_string(), None, None),
            };
            FeasJson {
                verdict: "impossible".into(),
                gamma: None,
                certificate: None,
                phases: None,
                reason: Some(reason),
                rank_in,
                rank_out,
            }
        }
    }
}

pub fn render_feas(result: &FeasibilityResult) -> String {
    match result {
        FeasibilityResult::Exact { .. } => {
            "verdict: exact (succeeds with certainty)".to_string()
        }
        FeasibilityResult::Probabilistic {
            gamma, certificate, ..
        } => format!(
            "verdict: probabilistic\nbest uniform success probability: {}\ncertificate eigenvalue: {}",
            sig10(*gamma),
            sig10(*certificate)
        ),
        FeasibilityResult::Impossible { reason } => match reason {
            ImpossibleReason::RankObstruction { rank_in, rank_out } => format!(
                "verdict: impossible\nreason: outputs span {rank_out} dimensions, inputs only {rank_in}"
            ),
            ImpossibleReason::PsdInfeasible => {
                "verdict: impossible\nreason: no positive success probability satisfies the feasibility condition"
                    .to_string()
            }
        },
    }
}

#[derive(Serialize)]
pub struct UsdJson {
    pub value: f64,
    pub gammas: Vec<f64>,
}

pub fn usd_json(result: &UsdResult) -> UsdJson {
    UsdJson {
        value: result.value,
        gammas: result.gammas.clone(),
    }
}

pub fn render_usd(result: &UsdResult, labels: &[String]) -> String {
    let mut out = String::from("per-state success probabilities:\n");
    for (label, gamma) in labels.iter().zip(&result.gammas) {
        out.push_str(&format!("  {label}: {}\n", sig10(*gamma)));
    }
    out.push_str(&format!("total success probability: {}", sig10(result.value)));
    out
}

#[derive(Serialize)]
pub struct SpanJson {
    pub parallel: usize,
    pub antiparallel: usize,
}

#[derive(Serialize)]
pub struct AnalyzeJson {
    pub tol: f64,
    pub vectors: Vec<[f64; 3]>,
    pub circle: CircleJson,
    pub dims: [usize; 2],
    pub exact_pa: ExactJson,
    pub exact_ap: ExactJson,
    pub protrans_pa: FeasJson,
    pub protrans_ap: FeasJson,
    pub usd_parallel: UsdJson,
    pub usd_antiparallel: UsdJson,
}
