use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::poly::ScaledPoly;
use super::{dot, is_characteristic, solve_bhat, CubicFormSpec, LatticeError, MPoly, TrilinearLattice};
use crate::exactmath::Rat;

/// Sampled coordinates lie in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
const SAMPLE_RANGE: i64 = 50;

fn plus(a: &[i64], x: &[i64]) -> Vec<i64> {
    a.iter().zip(x).map(|(p, q)| p + q).collect()
}

/// `f_{a,b}(x) = (a+x)^3 - b(a+x)`.
pub fn f_ab(l: &TrilinearLattice, s: &CubicFormSpec, x: &[i64]) -> i128 {
    let y = plus(&s.a, x);
    l.eval(&y, &y, &y) - dot(&s.b, &y)
}

/// `f~_{a,b}(x) = 4(a+x)^3 - 6a(a+x)^2 - (b - 3a^2)(a+x)`.
pub fn f_tilde_ab(l: &TrilinearLattice, s: &CubicFormSpec, x: &[i64]) -> i128 {
    let a = &s.a;
    let y = plus(a, x);
    4 * l.eval(&y, &y, &y) - 6 * l.eval(a, &y, &y) - dot(&s.b, &y) + 3 * l.eval(a, a, &y)
}

fn shifted(a: &[i64], scale: i64, n: usize) -> Vec<MPoly> {
    a.iter()
        .enumerate()
        .map(|(i, &ai)| &MPoly::constant(n, Rat::from_int(ai)) + &MPoly::var(n, i).scale(&Rat::from_int(scale)))
        .collect()
}

fn f_poly(l: &TrilinearLattice, s: &CubicFormSpec, scale: i64) -> MPoly {
    let n = l.rank();
    let y = shifted(&s.a, scale, n);
    let b = MPoly::linear(&s.b).compose(&y);
    &l.trilinear_poly(&y, &y, &y) - &b
}

fn f_tilde_poly(l: &TrilinearLattice, s: &CubicFormSpec) -> MPoly {
    let n = l.rank();
    let y = shifted(&s.a, 1, n);
    let a: Vec<MPoly> = s.a.iter().map(|&v| MPoly::constant(n, Rat::from_int(v))).collect();
    let r = |k: i64| Rat::from_int(k);
    let cube = l.trilinear_poly(&y, &y, &y).scale(&r(4));
    let sq = l.trilinear_poly(&a, &y, &y).scale(&r(6));
    let lin = &MPoly::linear(&s.b).compose(&y) - &l.trilinear_poly(&a, &a, &y).scale(&r(3));
    &(&cube - &sq) - &lin
}

/// A polynomial of degree at most 3 on the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicPoly(MPoly);

impl CubicPoly {
    pub fn new(p: MPoly) -> Result<Self, LatticeError> {
        match p.degree() {
            Some(d) if d > 3 => Err(LatticeError::ArgumentError(format!("degree {d} is above 3"))),
            _ => Ok(CubicPoly(p)),
        }
    }

    /// `T(x,x,x)/6`.
    pub fn standard(l: &TrilinearLattice) -> Self {
        CubicPoly(l.cube_poly().scale(&Rat::new(1, 6)))
    }

    /// `(f_{a,b}(2x) - f_{a,b}(0))/48`.
    pub fn from_spec(l: &TrilinearLattice, s: &CubicFormSpec) -> Self {
        let f0 = MPoly::constant(l.rank(), Rat::from_bigint(f_ab(l, s, &vec![0; l.rank()]).into()));
        CubicPoly((&f_poly(l, s, 2) - &f0).scale(&Rat::new(1, 48)))
    }

    /// Adds `sum c_i x_i`.
    pub fn with_linear(&self, c: &[i64]) -> Self {
        CubicPoly(&self.0 + &MPoly::linear(c))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CubicPoly(self.0.scale(r))
    }

    pub fn poly(&self) -> &MPoly {
        &self.0
    }

    pub fn eval(&self, x: &[i64]) -> Rat {
        self.0.eval(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicReport {
    pub samples: usize,
    pub seed: u64,
    /// `2 f~(x) = f(2x) + f(0)` as polynomials.
    pub symbolic: bool,
    /// First sampled `x` where `2 f~(x) != f(2x) + f(0)`.
    pub relation_witness: Option<Vec<i64>>,
    /// `a` characteristic and `b` congruent mod 24 to the solution.
    pub hypothesis: bool,
    /// First sampled `x` where `(f(2x) - f(0))/48` or `(f~(x) - f~(0))/24`
    /// is not an integer.
    pub integrality_witness: Option<Vec<i64>>,
    pub passed: bool,
}

/// Checks `f~(x) = (f(2x) + f(0))/2` symbolically and on `samples` random
/// points, and the two integrality statements when `a` and `b` satisfy the
/// mod 24 hypothesis. Integrality is still probed without the hypothesis;
/// a witness then only shows that the hypothesis matters.
pub fn check_cubic_relations(
    l: &TrilinearLattice,
    s: &CubicFormSpec,
    samples: usize,
    seed: u64,
) -> Result<CubicReport, LatticeError> {
    l.check_vec(&s.a, "a")?;
    l.check_vec(&s.b, "b")?;
    let n = l.rank();
    let zero = vec![0; n];
    let f0 = MPoly::constant(n, Rat::from_bigint(f_ab(l, s, &zero).into()));
    let symbolic = f_tilde_poly(l, s).scale(&Rat::from_int(2)) == &f_poly(l, s, 2) + &f0;
    let hypothesis = is_characteristic(l, &s.a)?
        && match solve_bhat(l, &s.a, 24) {
            Ok(sol) => sol.bhat.iter().zip(&s.b).all(|(p, q)| (p - q).rem_euclid(24) == 0),
            Err(_) => false,
        };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ff0, ft0) = (f_ab(l, s, &zero), f_tilde_ab(l, s, &zero));
    let mut relation_witness = None;
    let mut integrality_witness = None;
    for i in 0..samples {
        let x: Vec<i64> = if i == 0 { zero.clone() } else { (0..n).map(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)).collect() };
        let x2: Vec<i64> = x.iter().map(|v| 2 * v).collect();
        let f2 = f_ab(l, s, &x2);
        let ft = f_tilde_ab(l, s, &x);
        if relation_witness.is_none() && 2 * ft != f2 + ff0 {
            relation_witness = Some(x.clone());
        }
        if integrality_witness.is_none() && ((f2 - ff0) % 48 != 0 || (ft - ft0) % 24 != 0) {
            integrality_witness = Some(x);
        }
    }
    let passed = symbolic && relation_witness.is_none() && (!hypothesis || integrality_witness.is_none());
    Ok(CubicReport { samples, seed, symbolic, relation_witness, hypothesis, integrality_witness, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub samples: usize,
    pub seed: u64,
    /// The alternating sum equals `T(x,y,z)` as a polynomial in `3n` variables.
    pub symbolic: bool,
    pub witness: Option<[Vec<i64>; 3]>,
    pub passed: bool,
}

fn alternating_sum(h: &MPoly, x: &[MPoly], y: &[MPoly], z: &[MPoly]) -> MPoly {
    let add = |u: &[MPoly], v: &[MPoly]| -> Vec<MPoly> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    let m = x[0].nvars();
    let zero: Vec<MPoly> = (0..x.len()).map(|_| MPoly::zero(m)).collect();
    let xy = add(x, y);
    let xyz = add(&xy, z);
    let xz = add(x, z);
    let yz = add(y, z);
    let plus = [&xyz, &x.to_vec(), &y.to_vec(), &z.to_vec()];
    let minus = [&xy, &xz, &yz, &zero];
    let mut out = MPoly::zero(m);
    for p in plus {
        out = &out + &h.compose(p);
    }
    for p in minus {
        out = &out - &h.compose(p);
    }
    out
}

fn alternating_sum_at(h: &CubicPoly, x: &[i64], y: &[i64], z: &[i64]) -> Rat {
    let add = |u: &[i64], v: &[i64]| -> Vec<i64> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    let zero = vec![0; x.len()];
    let xy = add(x, y);
    h.eval(&add(&xy, z)) - h.eval(&xy) - h.eval(&add(x, z)) - h.eval(&add(y, z)) + h.eval(x) + h.eval(y) + h.eval(z)
        - h.eval(&zero)
}

/// Same sum times the common denominator of `h`, in machine integers.
fn scaled_alternating_sum_at(h: &ScaledPoly, x: &[i64], y: &[i64], z: &[i64]) -> Option<i128> {
    let add = |u: &[i64], v: &[i64]| -> Vec<i64> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    let zero = vec![0; x.len()];
    let xy = add(x, y);
    let plus = [h.eval(&add(&xy, z))?, h.eval(x)?, h.eval(y)?, h.eval(z)?];
    let minus = [h.eval(&xy)?, h.eval(&add(x, z))?, h.eval(&add(y, z))?, h.eval(&zero)?];
    let mut s: i128 = 0;
    for v in plus {
        s = s.checked_add(v)?;
    }
    for v in minus {
        s = s.checked_sub(v)?;
    }
    Some(s)
}

/// `T(x,y,z) = h(x+y+z) - h(x+y) - h(x+z) - h(y+z) + h(x) + h(y) + h(z) - h(0)`,
/// symbolically and on `samples` random triples.
pub fn verify_refinement(
    l: &TrilinearLattice,
    h: &CubicPoly,
    samples: usize,
    seed: u64,
) -> Result<RefinementReport, LatticeError> {
    let n = l.rank();
    if h.poly().nvars() != n {
        return Err(LatticeError::DimensionMismatch(format!("h has {} variables, rank is {n}", h.poly().nvars())));
    }
    let m = 3 * n;
    let block = |o: usize| -> Vec<MPoly> { (0..n).map(|i| MPoly::var(m, o + i)).collect() };
    let (x, y, z) = (block(0), block(n), block(2 * n));
    let symbolic = alternating_sum(h.poly(), &x, &y, &z) == l.trilinear_poly(&x, &y, &z);
    let scaled = ScaledPoly::new(h.poly());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for _ in 0..samples {
        let mut pick = || -> Vec<i64> { (0..n).map(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)).collect() };
        let (a, b, c) = (pick(), pick(), pick());
        let t = l.eval(&a, &b, &c);
        let fast = scaled.as_ref().and_then(|s| Some((s.den.checked_mul(t)?, scaled_alternating_sum_at(s, &a, &b, &c)?)));
        let agrees = match fast {
            Some((lhs, rhs)) => lhs == rhs,
            None => Rat::from_bigint(t.into()) == alternating_sum_at(h, &a, &b, &c),
        };
        if !agrees {
            witness = Some([a, b, c]);
            break;
        }
    }
    let passed = symbolic && witness.is_none();
    Ok(RefinementReport { samples, seed, symbolic, witness, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_at_zero_and_symbolic() {
        let l = TrilinearLattice::from_upper(2, &[1, -2, 0, 3]).unwrap();
        let s = CubicFormSpec::new(&l, vec![1, 2], vec![5, -7]).unwrap();
        assert_eq!(f_tilde_ab(&l, &s, &[0, 0]), f_ab(&l, &s, &[0, 0]));
        let r = check_cubic_relations(&l, &s, 200, 1).unwrap();
        assert!(r.symbolic && r.relation_witness.is_none());
    }

    #[test]
    fn rank_one_integrality_scan() {
        let l = TrilinearLattice::rank_one(1);
        let s = CubicFormSpec::new(&l, vec![2], vec![4]).unwrap();
        for x in -50..=50 {
            assert_eq!((f_ab(&l, &s, &[2 * x]) - f_ab(&l, &s, &[0])) % 48, 0);
        }
        assert!(check_cubic_relations(&l, &s, 500, 3).unwrap().hypothesis);
    }

    #[test]
    fn integrality_needs_the_congruence() {
        let l = TrilinearLattice::from_upper(2, &[0, 1, 1, 0]).unwrap();
        let a = vec![0, 0];
        assert!(is_characteristic(&l, &a).unwrap());
        let good = solve_bhat(&l, &a, 24).unwrap().bhat;
        let bad = vec![good[0] + 1, good[1]];
        let r = check_cubic_relations(&l, &CubicFormSpec::new(&l, a, bad).unwrap(), 500, 9).unwrap();
        assert!(!r.hypothesis);
        assert!(r.integrality_witness.is_some());
    }

    #[test]
    fn refinement_examples() {
        let l = TrilinearLattice::rank_one(1);
        let h = CubicPoly::standard(&l);
        assert!(verify_refinement(&l, &h, 100, 0).unwrap().passed);
        assert!(verify_refinement(&l, &h.with_linear(&[5]), 100, 0).unwrap().passed);
        let r = verify_refinement(&l, &h.scale(&Rat::from_int(2)), 100, 0).unwrap();
        assert!(!r.symbolic && r.witness.is_some());
    }
}
