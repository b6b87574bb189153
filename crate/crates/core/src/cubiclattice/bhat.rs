use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{grid, is_characteristic, LatticeError, TrilinearLattice, MAX_CHAR_RANK};

/// Above this many points of `(Z/m)^n` the solver samples instead.
pub const MAX_EXHAUSTIVE_POINTS: u64 = 576;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Random points checked when `(Z/m)^n` is too large to exhaust.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { samples: 1000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BhatSolution {
    pub modulus: u32,
    /// Values on the standard basis, in `[0, m)`.
    pub bhat: Vec<i64>,
    /// Whether every point of `(Z/m)^n` was checked.
    pub exhaustive: bool,
    pub points_checked: u64,
    /// Exactly one functional works. Exhaustive mode counts all candidates;
    /// otherwise uniqueness follows from the values on the basis.
    pub unique: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// `4x^3 + 6ax^2 + 3a^2x`.
fn target(l: &TrilinearLattice, a: &[i64], x: &[i64]) -> i128 {
    4 * l.eval(x, x, x) + 6 * l.eval(a, x, x) + 3 * l.eval(a, a, x)
}

/// `4x^3 + 6ax^2 + 3a^2x` mod `m` with the contractions against `a`
/// precomputed, for the exhaustive sweep.
struct Target {
    n: usize,
    m: i64,
    t: Vec<i64>,
    ta: Vec<i64>,
    taa: Vec<i64>,
}

impl Target {
    fn new(l: &TrilinearLattice, a: &[i64], m: i64) -> Self {
        let n = l.rank();
        let mut t = vec![0; n * n * n];
        let mut ta = vec![0; n * n];
        let mut taa = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = l.entry(i, j, k).rem_euclid(m);
                    t[(i * n + j) * n + k] = 4 * e % m;
                    ta[j * n + k] = (ta[j * n + k] + 6 * a[i].rem_euclid(m) * e) % m;
                    taa[k] = (taa[k] + 3 * (a[i].rem_euclid(m) * a[j].rem_euclid(m) % m) * e) % m;
                }
            }
        }
        Target { n, m, t, ta, taa }
    }

    /// `x` has entries in `[0, m)`.
    #[allow(clippy::needless_range_loop)]
    fn eval(&self, x: &[i64]) -> i64 {
        let (n, m) = (self.n, self.m);
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                let xij = x[i] * x[j] % m;
                s += self.ta[i * n + j] * xij;
                for k in 0..n {
                    s += self.t[(i * n + j) * n + k] * (xij * x[k] % m);
                }
                s %= m;
            }
            s = (s + self.taa[i] * x[i]) % m;
        }
        s
    }
}

/// `4x^3 + 6ax^2 + 3a^2x - b(x)` reduced into `[0, m)`.
pub fn defect(l: &TrilinearLattice, a: &[i64], bhat: &[i64], m: u32, x: &[i64]) -> i64 {
    (target(l, a, x) - super::dot(bhat, x)).rem_euclid(m as i128) as i64
}

/// [`solve_bhat_with`] with the default options.
pub fn solve_bhat(l: &TrilinearLattice, a: &[i64], m: u32) -> Result<BhatSolution, LatticeError> {
    solve_bhat_with(l, a, m, SolveOptions::default())
}

/// Finds `b` in `Hom(L, Z/m)` with `b(x) = 4x^3 + 6ax^2 + 3a^2x` mod `m`
/// for all `x`, for `m` in {24, 12, 3}. The candidate is read off the basis
/// and then checked on all of `(Z/m)^n`, or on random points when that has
/// more than [`MAX_EXHAUSTIVE_POINTS`] elements.
pub fn solve_bhat_with(
    l: &TrilinearLattice,
    a: &[i64],
    m: u32,
    opts: SolveOptions,
) -> Result<BhatSolution, LatticeError> {
    if ![24, 12, 3].contains(&m) {
        return Err(LatticeError::ArgumentError(format!("modulus must be 24, 12 or 3, got {m}")));
    }
    l.check_vec(a, "a")?;
    let n = l.rank();
    let warning = if m == 24 && n <= MAX_CHAR_RANK && !is_characteristic(l, a)? {
        Some("a is not characteristic; the mod 24 statement assumes it is".to_string())
    } else {
        None
    };
    let bhat: Vec<i64> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            target(l, a, &e).rem_euclid(m as i128) as i64
        })
        .collect();
    let fail = |x: Vec<i64>| LatticeError::NoSolution { modulus: m, counterexample: x, warning: warning.clone() };
    let total = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total <= MAX_EXHAUSTIVE_POINTS {
        let target = Target::new(l, a, m as i64);
        let points: Vec<Vec<i64>> = grid(n, m as i64).collect();
        let values: Vec<i64> = points.iter().map(|x| target.eval(x)).collect();
        let linear = |b: &[i64], x: &[i64]| b.iter().zip(x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(m as i64);
        if let Some(i) = (0..points.len()).find(|&i| linear(&bhat, &points[i]) != values[i]) {
            return Err(fail(points[i].clone()));
        }
        let solutions = points
            .iter()
            .filter(|cand| points.iter().zip(&values).all(|(x, v)| linear(cand, x) == *v))
            .count();
        Ok(BhatSolution { modulus: m, bhat, exhaustive: true, points_checked: total, unique: solutions == 1, warning })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let samples = opts.samples.max(1000);
        for _ in 0..samples {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..m as i64)).collect();
            if defect(l, a, &bhat, m, &x) != 0 {
                return Err(fail(x));
            }
        }
        Ok(BhatSolution {
            modulus: m,
            bhat,
            exhaustive: false,
            points_checked: samples as u64,
            unique: true,
            warning,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_examples() {
        let l = TrilinearLattice::rank_one(1);
        let s = solve_bhat(&l, &[0], 24).unwrap();
        assert_eq!(s.bhat, vec![4]);
        assert!(s.exhaustive && s.unique && s.warning.is_none());
        assert_eq!(solve_bhat(&l, &[2], 24).unwrap().bhat, vec![4]);
    }

    #[test]
    fn non_characteristic_warns_or_fails() {
        let l = TrilinearLattice::rank_one(1);
        // a = 1: 4x^3 + 6x^2 + 3x is not linear mod 24
        match solve_bhat(&l, &[1], 24) {
            Err(LatticeError::NoSolution { warning, counterexample, .. }) => {
                assert!(warning.is_some());
                assert_eq!(counterexample.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tabulated_target_matches_direct() {
        let l = TrilinearLattice::from_upper(2, &[2, -1, 3, -3]).unwrap();
        for a in [[0, 0], [5, -7], [23, 1]] {
            let t = Target::new(&l, &a, 24);
            for x in grid(2, 24) {
                assert_eq!(t.eval(&x), target(&l, &a, &x).rem_euclid(24) as i64);
            }
        }
    }

    #[test]
    fn mod3_uses_diagonal() {
        let l = TrilinearLattice::from_upper(2, &[2, -1, 3, 1]).unwrap();
        let s = solve_bhat(&l, &[0, 0], 3).unwrap();
        assert_eq!(s.bhat, vec![(4 * 2i64).rem_euclid(3), 4i64.rem_euclid(3)]);
    }

    #[test]
    fn sampling_mode_for_large_rank() {
        let l = TrilinearLattice::from_upper(3, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap();
        let s = solve_bhat(&l, &[0, 0, 0], 24).unwrap();
        assert!(!s.exhaustive);
        assert!(s.points_checked >= 1000);
        assert!(matches!(solve_bhat(&l, &[0, 0, 0], 5), Err(LatticeError::ArgumentError(_))));
    }
}
