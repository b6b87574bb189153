use serde::{Deserialize, Serialize};

use super::{
    check_cubic_relations, is_characteristic, solve_bhat_with, verify_refinement, BhatSolution, CubicFormSpec,
    CubicPoly, CubicReport, LatticeError, RefinementReport, SolveOptions, TrilinearLattice,
};

/// Lattice file contents. `b` defaults to the solved functional and
/// `modulus` to 24.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeInput {
    pub rank: usize,
    pub trilinear: Vec<Vec<Vec<i64>>>,
    pub a: Vec<i64>,
    #[serde(default)]
    pub b: Option<Vec<i64>>,
    #[serde(default)]
    pub modulus: Option<u32>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl LatticeInput {
    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(s).map_err(|e| LatticeError::Input(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub characteristic: bool,
    pub modulus: u32,
    pub bhat: Option<BhatSolution>,
    /// Why no functional was found, if none was.
    pub bhat_error: Option<String>,
    pub relations: Option<CubicReport>,
    pub refinement: RefinementReport,
    pub passed: bool,
}

/// Runs the characteristic test, the solver and the relation checks on one
/// lattice file.
pub fn run_lattice_input(input: &LatticeInput, samples: usize) -> Result<LatticeReport, LatticeError> {
    let l = TrilinearLattice::new(input.rank, input.trilinear.clone())?;
    let seed = input.seed.unwrap_or(0);
    let modulus = input.modulus.unwrap_or(24);
    let characteristic = is_characteristic(&l, &input.a)?;
    let (bhat, bhat_error) = match solve_bhat_with(&l, &input.a, modulus, SolveOptions { samples, seed }) {
        Ok(s) => (Some(s), None),
        Err(e @ LatticeError::NoSolution { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let b = match (&input.b, &bhat) {
        (Some(b), _) => Some(b.clone()),
        (None, Some(s)) if modulus == 24 => Some(s.bhat.clone()),
        _ => None,
    };
    let relations = match b {
        Some(b) => Some(check_cubic_relations(&l, &CubicFormSpec::new(&l, input.a.clone(), b)?, samples, seed)?),
        None => None,
    };
    let refinement = verify_refinement(&l, &CubicPoly::standard(&l), samples, seed)?;
    let passed = bhat.is_some() && relations.as_ref().is_none_or(|r| r.passed) && refinement.passed;
    Ok(LatticeReport { characteristic, modulus, bhat, bhat_error, relations, refinement, passed })
}
