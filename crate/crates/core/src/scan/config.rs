//! JSON scenario files.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::dynamics::replica::{default_t_decay, DecayChainSpec, DriveSpec, ReplicaSettings};
use crate::monotone::MonotoneFunction;
use crate::operator::{transition, ComplexMatrix, HermitianOperator};
use crate::scan::grid::SimplexGrid;
use crate::{Error, Result, C64};

/// Parses JSON with the failing field path and position in the message.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Config(inner.to_string())
        } else {
            Error::Config(format!("at `{path}`: {inner}"))
        }
    })
}

/// Drive Hamiltonian of a scan.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "template", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianTemplate {
    /// `i(Ω/2)(|0⟩⟨1| + |1⟩⟨2|) + h.c.`
    Ladder {
        #[serde(default = "default_omega")]
        omega: f64,
    },
    /// `-i·rate·(w_01|0⟩⟨1| + w_12|1⟩⟨2| + w_02|0⟩⟨2|) + h.c.`
    Triangle {
        #[serde(default = "default_triangle_rate")]
        rate: f64,
        #[serde(default = "default_triangle_weights")]
        weights: [f64; 3],
    },
    Matrix {
        matrix: ComplexMatrix,
    },
}

fn default_omega() -> f64 {
    2.0 * PI * 10.0
}

fn default_triangle_rate() -> f64 {
    2.0 * PI * 2.5
}

fn default_triangle_weights() -> [f64; 3] {
    [1.0, 4.0, 1.0]
}

impl Default for HamiltonianTemplate {
    fn default() -> Self {
        HamiltonianTemplate::Ladder { omega: default_omega() }
    }
}

impl HamiltonianTemplate {
    pub fn build(&self) -> Result<HermitianOperator> {
        let couple = |entries: &[(usize, usize, C64)]| {
            let mut m = DMatrix::<C64>::zeros(3, 3);
            for &(j, k, z) in entries {
                m[(j, k)] += z;
                m[(k, j)] += z.conj();
            }
            HermitianOperator::hermitized(m)
        };
        match self {
            HamiltonianTemplate::Ladder { omega } => {
                let z = C64::new(0.0, 0.5 * omega);
                Ok(couple(&[(0, 1, z), (1, 2, z)]))
            }
            HamiltonianTemplate::Triangle { rate, weights } => {
                let z = |w: f64| C64::new(0.0, -rate * w);
                Ok(couple(&[(0, 1, z(weights[0])), (1, 2, z(weights[1])), (0, 2, z(weights[2]))]))
            }
            HamiltonianTemplate::Matrix { matrix } => {
                HermitianOperator::new(matrix.clone()).map_err(|e| Error::Config(format!("hamiltonian: {e}")))
            }
        }
    }
}

/// Observable of a scan.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "template", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservableTemplate {
    /// `|0⟩⟨1| + |1⟩⟨0|`
    X01,
    /// `|0⟩⟨1| + |1⟩⟨2| + h.c.`
    Ladder,
    Matrix {
        matrix: ComplexMatrix,
    },
}

impl ObservableTemplate {
    pub fn build(&self, dim: usize) -> Result<HermitianOperator> {
        match self {
            ObservableTemplate::X01 => Ok(transition(dim, 0, 1)),
            ObservableTemplate::Ladder => {
                if dim < 3 {
                    return Err(Error::Config("the ladder observable needs dimension 3 or more".into()));
                }
                transition(dim, 0, 1).add(&transition(dim, 1, 2))
            }
            ObservableTemplate::Matrix { matrix } => {
                HermitianOperator::new(matrix.clone()).map_err(|e| Error::Config(format!("observable: {e}")))
            }
        }
    }
}

/// Simplex discretization.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub dim: usize,
    pub step: f64,
    pub floor: f64,
    /// Restricts a qutrit scan to the line with this `p_0`.
    pub fixed_p0: Option<f64>,
    /// Replaces the lattice by these points.
    pub points: Option<Vec<Vec<f64>>>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { dim: 3, step: 0.005, floor: 0.0025, fixed_p0: None, points: None }
    }
}

impl GridConfig {
    pub fn build(&self) -> Result<SimplexGrid> {
        if let Some(points) = &self.points {
            return SimplexGrid::from_points(points.clone());
        }
        match self.fixed_p0 {
            Some(p0) => {
                if self.dim != 3 {
                    return Err(Error::Config("fixed_p0 is only defined for dim = 3".into()));
                }
                SimplexGrid::line(self.step, self.floor, p0)
            }
            None => SimplexGrid::new(self.dim, self.step, self.floor),
        }
    }
}

/// Scenario shared by the simplex scans. Every field has a default matching
/// the ladder-drive qutrit.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub hamiltonian: HamiltonianTemplate,
    /// Defaults to `x01`, or `ladder` for fast-Hamiltonian scans.
    pub observable: Option<ObservableTemplate>,
    pub grid: GridConfig,
    /// Spacing of the `β` grid used before refinement.
    pub beta_step: f64,
    /// Metric for energy-bound scans; defaults to RLD.
    pub beta: Option<MonotoneFunction>,
    /// Seminorm of the fast Hamiltonians.
    pub norm_budget: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            hamiltonian: HamiltonianTemplate::default(),
            observable: None,
            grid: GridConfig::default(),
            beta_step: 0.01,
            beta: None,
            norm_budget: 1.0,
        }
    }
}

impl ScanConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta_step > 0.0 && self.beta_step <= 1.0) {
            return Err(Error::Config(format!("beta_step must lie in (0, 1], got {}", self.beta_step)));
        }
        if !(self.norm_budget > 0.0 && self.norm_budget.is_finite()) {
            return Err(Error::Config(format!("norm_budget must be positive, got {}", self.norm_budget)));
        }
        Ok(())
    }
}

/// Decay rates: a named preset or explicit values.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesConfig {
    pub preset: Option<String>,
    pub gamma_fe: Option<f64>,
    pub gamma_eg: Option<f64>,
}

impl RatesConfig {
    pub fn build(&self) -> Result<DecayChainSpec> {
        match (&self.preset, self.gamma_fe, self.gamma_eg) {
            (Some(name), None, None) => DecayChainSpec::preset(name),
            (None, Some(fe), Some(eg)) => DecayChainSpec::new(fe, eg).map_err(|e| Error::Config(e.to_string())),
            _ => Err(Error::Config("rates: give either `preset` or both `gamma_fe` and `gamma_eg`".into())),
        }
    }
}

/// Decay-chain experiment scenario.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_rates")]
    pub rates: RatesConfig,
    #[serde(default)]
    pub drive: DriveSpec,
    #[serde(default = "default_t_decay")]
    pub t_decay: Vec<f64>,
    /// Metrics reported; SLD and RLD are always included.
    #[serde(default)]
    pub beta_list: Vec<MonotoneFunction>,
    #[serde(default = "default_window")]
    pub window: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    pub observable: Option<ObservableTemplate>,
}

fn default_rates() -> RatesConfig {
    RatesConfig { preset: Some("per_ms".into()), gamma_fe: None, gamma_eg: None }
}

fn default_window() -> f64 {
    ReplicaSettings::default().window
}

fn default_dt() -> f64 {
    ReplicaSettings::default().dt
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        parse_json("{}").expect("all fields default")
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse_json(text)
    }

    /// Betas other than ±1, in the order given, without repeats.
    pub fn extra_betas(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for f in &self.beta_list {
            let b = f.beta();
            if b != 1.0 && b != -1.0 && !out.contains(&b) {
                out.push(b);
            }
        }
        out
    }

    pub fn settings(&self) -> ReplicaSettings {
        ReplicaSettings { window: self.window, dt: self.dt, extra_betas: self.extra_betas() }
    }
}
