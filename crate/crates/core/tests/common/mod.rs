//! Splitting-principle oracle: bundles are written through explicit formal
//! roots `y1..y6` (tangent) and `c` (line), characters are sums of truncated
//! exponentials, and library answers in `p1, p2, p3, c` are pulled back along
//! `p_j = e_j(y1^2, .., y6^2)` for comparison.
#![allow(dead_code)]

use charmod::charring::{Gen, GradedPoly};
use charmod::cubiclattice::MPoly;
use charmod::Rat;

pub const NROOTS: usize = 6;
/// Index of `c` among the oracle variables.
pub const C: usize = 6;
pub const NVARS: usize = 7;
/// Root degree cutoff; cohomological degree 12.
pub const TOP: u32 = 6;

pub fn trunc(p: &MPoly) -> MPoly {
    (0..=TOP).fold(MPoly::zero(p.nvars()), |acc, d| &acc + &p.component(d))
}

pub fn mul(a: &MPoly, b: &MPoly) -> MPoly {
    trunc(&(a * b))
}

/// Linear form `sum c_i v_i` in the oracle variables.
pub fn lin(c: &[(usize, i64)]) -> MPoly {
    let mut v = vec![0; NVARS];
    for &(i, k) in c {
        v[i] += k;
    }
    MPoly::linear(&v)
}

/// `exp(z)` through degree [`TOP`].
pub fn exp(z: &MPoly) -> MPoly {
    let mut term = MPoly::constant(NVARS, Rat::one());
    let mut out = term.clone();
    for k in 1..=TOP {
        term = mul(&term, z).scale(&Rat::new(1, k as i64));
        out = &out + &term;
    }
    out
}

/// `ch` of a bundle with the given Chern roots.
pub fn ch(roots: &[MPoly]) -> MPoly {
    roots.iter().fold(MPoly::zero(NVARS), |acc, z| &acc + &exp(z))
}

/// Chern roots `+-y_i` of the complexified tangent bundle of a 12-manifold.
pub fn tangent_roots() -> Vec<MPoly> {
    (0..NROOTS).flat_map(|i| [lin(&[(i, 1)]), lin(&[(i, -1)])]).collect()
}

/// Roots `+-c` of `xi (+) conj(xi)`.
pub fn line_pair_roots() -> Vec<MPoly> {
    vec![lin(&[(C, 1)]), lin(&[(C, -1)])]
}

/// Roots of `Lambda^2` (`a < b`) or `S^2` (`a <= b`).
pub fn pair_roots(roots: &[MPoly], symmetric: bool) -> Vec<MPoly> {
    let mut out = Vec::new();
    for a in 0..roots.len() {
        let start = if symmetric { a } else { a + 1 };
        for b in start..roots.len() {
            out.push(&roots[a] + &roots[b]);
        }
    }
    out
}

pub fn constant(n: i64) -> MPoly {
    MPoly::constant(NVARS, Rat::from_int(n))
}

/// Elementary symmetric polynomial `e_j(y1^2, .., y6^2)`.
pub fn e_sq(j: usize) -> MPoly {
    let sq: Vec<MPoly> = (0..NROOTS).map(|i| &MPoly::var(NVARS, i) * &MPoly::var(NVARS, i)).collect();
    // coefficient of t^j in prod (1 + t y_i^2)
    let mut e = vec![constant(1)];
    for s in &sq {
        let mut next = e.clone();
        next.push(MPoly::zero(NVARS));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * s);
        }
        e = next;
    }
    e.get(j).cloned().unwrap_or_else(|| MPoly::zero(NVARS))
}

/// Pulls a class in `p1, p2, p3, c` back to the root ring. Panics on any
/// other generator.
pub fn to_roots(p: &GradedPoly) -> MPoly {
    let images = [e_sq(1), e_sq(2), e_sq(3), MPoly::var(NVARS, C)];
    let mut out = MPoly::zero(NVARS);
    for (m, c) in p.terms() {
        let mut t = MPoly::constant(NVARS, c.clone());
        for (g, k) in m.gens() {
            let img = match g {
                Gen::P1 => &images[0],
                Gen::P2 => &images[1],
                Gen::P3 => &images[2],
                Gen::C => &images[3],
                other => panic!("oracle has no roots for {other:?}"),
            };
            t = mul(&t, &img.pow(k as u32));
        }
        out = &out + &t;
    }
    trunc(&out)
}

/// `prod_i f(y_i)` for an even power series `f = sum_k a_k y^(2k)`.
pub fn root_product(a: &[Rat]) -> MPoly {
    let mut out = constant(1);
    for i in 0..NROOTS {
        let y2 = &MPoly::var(NVARS, i) * &MPoly::var(NVARS, i);
        let mut f = MPoly::zero(NVARS);
        for (k, c) in a.iter().enumerate() {
            f = &f + &y2.pow(k as u32).scale(c);
        }
        out = mul(&out, &trunc(&f));
    }
    out
}
