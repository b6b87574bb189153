use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Free generators of the graded class ring, in rendering order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Gen {
    P1,
    P2,
    P3,
    C,
    X,
    G1,
    G2,
    G3,
    Q1,
    Q2,
    E,
    TP1,
    TP2,
    TX,
}

pub const NGENS: usize = 14;

impl Gen {
    pub const ALL: [Gen; NGENS] = [
        Gen::P1,
        Gen::P2,
        Gen::P3,
        Gen::C,
        Gen::X,
        Gen::G1,
        Gen::G2,
        Gen::G3,
        Gen::Q1,
        Gen::Q2,
        Gen::E,
        Gen::TP1,
        Gen::TP2,
        Gen::TX,
    ];

    /// Cohomological degree.
    pub fn degree(self) -> u32 {
        match self {
            Gen::C | Gen::E => 2,
            Gen::P1 | Gen::X | Gen::G1 | Gen::Q1 | Gen::TP1 | Gen::TX => 4,
            Gen::P2 | Gen::G2 | Gen::Q2 | Gen::TP2 => 8,
            Gen::P3 | Gen::G3 => 12,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::P1 => "p1",
            Gen::P2 => "p2",
            Gen::P3 => "p3",
            Gen::C => "c",
            Gen::X => "x",
            Gen::G1 => "g1",
            Gen::G2 => "g2",
            Gen::G3 => "g3",
            Gen::Q1 => "q1",
            Gen::Q2 => "q2",
            Gen::E => "e",
            Gen::TP1 => "tP1",
            Gen::TP2 => "tP2",
            Gen::TX => "tx",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gen {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Gen::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

/// Exponent vector over [`Gen::ALL`]. Ordered by total degree, then
/// lexicographically with larger powers of earlier generators first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; NGENS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn gen(g: Gen) -> Self {
        Self::gen_pow(g, 1)
    }

    pub fn gen_pow(g: Gen, k: u8) -> Self {
        let mut m = Monomial::default();
        m.exps[g.index()] = k;
        m
    }

    pub fn exps(&self) -> &[u8; NGENS] {
        &self.exps
    }

    pub fn exp(&self, g: Gen) -> u8 {
        self.exps[g.index()]
    }

    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .zip(Gen::ALL.iter())
            .map(|(e, g)| *e as u32 * g.degree())
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        m
    }

    /// `self / g^k` when the power divides.
    pub fn div_gen(&self, g: Gen, k: u8) -> Option<Monomial> {
        let e = self.exps[g.index()];
        if e < k {
            return None;
        }
        let mut m = *self;
        m.exps[g.index()] = e - k;
        Some(m)
    }

    pub fn gens(&self) -> impl Iterator<Item = (Gen, u8)> + '_ {
        Gen::ALL
            .iter()
            .zip(self.exps.iter())
            .filter(|(_, e)| **e > 0)
            .map(|(g, e)| (*g, *e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&o.degree()).then_with(|| o.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, e) in self.gens() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
