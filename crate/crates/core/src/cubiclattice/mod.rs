//! Cubic forms on finitely generated free abelian groups: characteristic
//! elements, the linear functional `b` solving the mod 24 / 12 / 3
//! congruences, and the relations between the polynomials `f` and `f~`.
//!
//! Products follow the trilinear form: `x^3 = T(x,x,x)`, `a x^2 = T(a,x,x)`
//! and `a^2 x = T(a,a,x)`.

mod bhat;
mod input;
mod poly;
mod relations;

pub use bhat::{defect, solve_bhat, solve_bhat_with, BhatSolution, SolveOptions, MAX_EXHAUSTIVE_POINTS};
pub use input::{run_lattice_input, LatticeInput, LatticeReport};
pub use poly::MPoly;
pub use relations::{
    check_cubic_relations, f_ab, f_tilde_ab, verify_refinement, CubicPoly, CubicReport, RefinementReport,
};

use serde::{Deserialize, Serialize};

/// Largest rank accepted by [`is_characteristic`].
pub const MAX_CHAR_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("rank {rank} exceeds the limit {limit} for this operation")]
    ScaleError { rank: usize, limit: usize },
    #[error("trilinear form is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    ArgumentError(String),
    #[error("no linear functional solves the congruence mod {modulus}; fails at x = {counterexample:?}{}", warning.as_ref().map(|w| format!(" ({w})")).unwrap_or_default())]
    NoSolution { modulus: u32, counterexample: Vec<i64>, warning: Option<String> },
    #[error("malformed lattice input: {0}")]
    Input(String),
}

/// A symmetric trilinear form on `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLattice", into = "RawLattice")]
pub struct TrilinearLattice {
    rank: usize,
    t: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawLattice {
    rank: usize,
    trilinear: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<RawLattice> for TrilinearLattice {
    type Error = LatticeError;
    fn try_from(r: RawLattice) -> Result<Self, LatticeError> {
        TrilinearLattice::new(r.rank, r.trilinear)
    }
}

impl From<TrilinearLattice> for RawLattice {
    fn from(l: TrilinearLattice) -> Self {
        RawLattice { rank: l.rank, trilinear: l.to_nested() }
    }
}

impl TrilinearLattice {
    /// Validates shape and full symmetry.
    pub fn new(rank: usize, tensor: Vec<Vec<Vec<i64>>>) -> Result<Self, LatticeError> {
        if rank == 0 {
            return Err(LatticeError::ArgumentError("rank must be positive".into()));
        }
        let shape_ok = tensor.len() == rank && tensor.iter().all(|m| m.len() == rank && m.iter().all(|r| r.len() == rank));
        if !shape_ok {
            return Err(LatticeError::DimensionMismatch(format!("trilinear form must be {rank}x{rank}x{rank}")));
        }
        let t: Vec<i64> = tensor.into_iter().flatten().flatten().collect();
        let l = TrilinearLattice { rank, t };
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let v = l.entry(i, j, k);
                    for (p, q, r) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        if l.entry(p, q, r) != v {
                            return Err(LatticeError::NotSymmetric(format!(
                                "T[{i}][{j}][{k}] = {v} but T[{p}][{q}][{r}] = {}",
                                l.entry(p, q, r)
                            )));
                        }
                    }
                }
            }
        }
        Ok(l)
    }

    /// Builds the symmetric form from its values on sorted index triples
    /// `i <= j <= k`, listed lexicographically.
    pub fn from_upper(rank: usize, values: &[i64]) -> Result<Self, LatticeError> {
        let mut triples = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                for k in j..rank {
                    triples.push((i, j, k));
                }
            }
        }
        if triples.len() != values.len() {
            return Err(LatticeError::DimensionMismatch(format!(
                "rank {rank} needs {} independent entries, got {}",
                triples.len(),
                values.len()
            )));
        }
        let mut t = vec![0; rank * rank * rank];
        for (&(i, j, k), &v) in triples.iter().zip(values) {
            for (p, q, r) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                t[(p * rank + q) * rank + r] = v;
            }
        }
        Ok(TrilinearLattice { rank, t })
    }

    /// The form `xyz` on `Z` scaled by `t`.
    pub fn rank_one(t: i64) -> Self {
        TrilinearLattice { rank: 1, t: vec![t] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> i64 {
        self.t[(i * self.rank + j) * self.rank + k]
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| (0..self.rank).map(|k| self.entry(i, j, k)).collect()).collect())
            .collect()
    }

    /// `T(u, v, w)`.
    #[allow(clippy::needless_range_loop)]
    pub fn eval(&self, u: &[i64], v: &[i64], w: &[i64]) -> i128 {
        let n = self.rank;
        let mut s: i128 = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 {
                    continue;
                }
                let uv = u[i] as i128 * v[j] as i128;
                for k in 0..n {
                    s += uv * w[k] as i128 * self.entry(i, j, k) as i128;
                }
            }
        }
        s
    }

    /// `T(x, x, x)` as a polynomial in the coordinates.
    pub fn cube_poly(&self) -> MPoly {
        let n = self.rank;
        let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
        self.trilinear_poly(&xs, &xs, &xs)
    }

    /// `sum T_ijk u_i v_j w_k` for polynomial coordinates.
    #[allow(clippy::needless_range_loop)]
    pub fn trilinear_poly(&self, u: &[MPoly], v: &[MPoly], w: &[MPoly]) -> MPoly {
        let n = self.rank;
        let m = u[0].nvars();
        let mut out = MPoly::zero(m);
        for i in 0..n {
            for j in 0..n {
                let uv = &u[i] * &v[j];
                for k in 0..n {
                    let t = self.entry(i, j, k);
                    if t != 0 {
                        out = &out + &(&uv * &w[k]).scale(&crate::exactmath::Rat::from_int(t));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn check_vec(&self, v: &[i64], what: &str) -> Result<(), LatticeError> {
        if v.len() != self.rank {
            return Err(LatticeError::DimensionMismatch(format!("{what} has length {}, rank is {}", v.len(), self.rank)));
        }
        Ok(())
    }
}

/// `a` in `L` and `b` in the dual, for `f_{a,b}(x) = (a+x)^3 - b(a+x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFormSpec {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl CubicFormSpec {
    pub fn new(l: &TrilinearLattice, a: Vec<i64>, b: Vec<i64>) -> Result<Self, LatticeError> {
        l.check_vec(&a, "a")?;
        l.check_vec(&b, "b")?;
        Ok(CubicFormSpec { a, b })
    }
}

pub(crate) fn dot(b: &[i64], x: &[i64]) -> i128 {
    b.iter().zip(x).map(|(p, q)| *p as i128 * *q as i128).sum()
}

/// Points of `(Z/m)^n` in lexicographic order.
pub(crate) fn grid(n: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (m as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for c in v.iter_mut().rev() {
            *c = (idx % m as u64) as i64;
            idx /= m as u64;
        }
        v
    })
}

/// [`grid`] for callers outside the crate.
pub fn grid_points(n: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    grid(n, m)
}

/// `a` is characteristic iff `a x y = x x y + x y y` mod 2 for all `x, y`
/// in `(Z/2)^n`.
pub fn is_characteristic(l: &TrilinearLattice, a: &[i64]) -> Result<bool, LatticeError> {
    l.check_vec(a, "a")?;
    if l.rank > MAX_CHAR_RANK {
        return Err(LatticeError::ScaleError { rank: l.rank, limit: MAX_CHAR_RANK });
    }
    let a2: Vec<i64> = a.iter().map(|v| v.rem_euclid(2)).collect();
    let pts: Vec<Vec<i64>> = grid(l.rank, 2).collect();
    for x in &pts {
        for y in &pts {
            let lhs = l.eval(&a2, x, y);
            let rhs = l.eval(x, x, y) + l.eval(x, y, y);
            if (lhs - rhs).rem_euclid(2) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_examples() {
        let l = TrilinearLattice::rank_one(1);
        assert!(is_characteristic(&l, &[2]).unwrap());
        assert!(!is_characteristic(&l, &[1]).unwrap());
        // x^2 y + x y^2 vanishes mod 2 for the doubled form
        let l2 = TrilinearLattice::rank_one(2);
        assert!(is_characteristic(&l2, &[0]).unwrap());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            TrilinearLattice::new(2, vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]]),
            Err(LatticeError::NotSymmetric(_))
        ));
        let l = TrilinearLattice::from_upper(2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(l.entry(1, 0, 1), 3);
        assert_eq!(TrilinearLattice::new(2, l.to_nested()).unwrap(), l);
        let big = TrilinearLattice::from_upper(9, &vec![0; 165]).unwrap();
        assert!(matches!(is_characteristic(&big, &[0; 9]), Err(LatticeError::ScaleError { .. })));
    }
}
