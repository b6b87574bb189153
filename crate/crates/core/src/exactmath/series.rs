use std::collections::BTreeMap;
use std::fmt;

use super::{QAlgebra, Rat, Ring, SeriesError};

/// Exponent denominator: a stored key `k` stands for `q^(k/24)`.
pub const GRID: u32 = 24;

/// Truncated series in `q` with exponents on the `1/24` grid.
///
/// Terms with exponent above the order `N` are never stored, nor are zero
/// coefficients, so structural equality is series equality.
#[derive(Clone, PartialEq)]
pub struct QExpSeries<R: Ring> {
    ctx: R::Ctx,
    order: u32,
    terms: BTreeMap<u32, R>,
}

impl<R: Ring> QExpSeries<R> {
    pub fn zero(ctx: R::Ctx, order: u32) -> Self {
        QExpSeries { ctx, order, terms: BTreeMap::new() }
    }

    pub fn one(ctx: R::Ctx, order: u32) -> Self {
        let one = R::one_in(&ctx);
        Self::constant(one, order)
    }

    pub fn constant(c: R, order: u32) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c * q^(k/24)`.
    pub fn monomial(k: u32, c: R, order: u32) -> Self {
        let mut s = Self::zero(c.ctx(), order);
        s.add_term(k, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, R)>>(ctx: R::Ctx, order: u32, terms: I) -> Self {
        let mut s = Self::zero(ctx, order);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// Adds `c * q^(k/24)` in place, discarding it beyond the order.
    pub fn add_term(&mut self, k: u32, c: R) {
        if k > self.limit() || c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero_elem() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Largest stored grid key, `24 * order`.
    pub fn limit(&self) -> u32 {
        self.order * GRID
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &R)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Option<&R> {
        self.terms.get(&k)
    }

    pub fn coeff_or_zero(&self, k: u32) -> R {
        self.terms.get(&k).cloned().unwrap_or_else(|| R::zero_in(&self.ctx))
    }

    /// Coefficient of `q^n` for an integer exponent `n`.
    pub fn coeff_q(&self, n: u32) -> R {
        self.coeff_or_zero(n * GRID)
    }

    pub fn min_key(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    /// True when every stored exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|k| k % GRID == 0)
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let lim = order * GRID;
        QExpSeries {
            ctx: self.ctx.clone(),
            order,
            terms: self.terms.range(..=lim).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, ctx: S::Ctx, f: F) -> QExpSeries<S> {
        QExpSeries::from_terms(ctx, self.order, self.terms.iter().map(|(k, v)| (*k, f(v))))
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.ctx != o.ctx {
            return Err(SeriesError::RingMismatch(format!("{:?} vs {:?}", self.ctx, o.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let mut out = self.truncate(o.order);
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QExpSeries {
            ctx: self.ctx.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (*k, v.negate())).collect(),
        }
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_terms(self.ctx.clone(), self.order, self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let order = self.order.min(o.order);
        let lim = order * GRID;
        let mut acc: BTreeMap<u32, R> = BTreeMap::new();
        for (i, a) in &self.terms {
            if *i > lim {
                break;
            }
            for (j, b) in o.terms.range(..=lim - i) {
                let p = a.mul_ref(b);
                match acc.get_mut(&(i + j)) {
                    Some(v) => v.add_assign_ref(&p),
                    None => {
                        acc.insert(i + j, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero_elem());
        Ok(QExpSeries { ctx: self.ctx.clone(), order, terms: acc })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx.clone(), self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        let lead = self
            .min_key()
            .ok_or_else(|| SeriesError::NotInvertible("zero series".into()))?;
        if lead % GRID != 0 {
            return Err(SeriesError::GridError(format!(
                "fractional leading exponent {}",
                exponent(lead)
            )));
        }
        if lead != 0 {
            return Err(SeriesError::NotInvertible(format!(
                "no constant term (leading exponent {})",
                exponent(lead)
            )));
        }
        let a0 = &self.terms[&0];
        let inv0 = a0
            .unit_inverse()
            .ok_or_else(|| SeriesError::NotInvertible(format!("constant term {a0:?} is not a unit")))?;
        let lim = self.limit();
        let mut out: BTreeMap<u32, R> = BTreeMap::new();
        out.insert(0, inv0.clone());
        for k in 1..=lim {
            let mut s: Option<R> = None;
            for (j, aj) in self.terms.range(1..=k) {
                if let Some(b) = out.get(&(k - j)) {
                    let p = aj.mul_ref(b);
                    match &mut s {
                        Some(v) => v.add_assign_ref(&p),
                        None => s = Some(p),
                    }
                }
            }
            if let Some(s) = s {
                let bk = s.mul_ref(&inv0).negate();
                if !bk.is_zero_elem() {
                    out.insert(k, bk);
                }
            }
        }
        Ok(QExpSeries { ctx: self.ctx.clone(), order: self.order, terms: out })
    }
}

impl<R: QAlgebra> QExpSeries<R> {
    pub fn scale(&self, r: &Rat) -> Self {
        Self::from_terms(self.ctx.clone(), self.order, self.terms.iter().map(|(k, v)| (*k, v.scale(r))))
    }

    /// `exp` of a series whose constant term is zero or nilpotent.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let e0 = match self.terms.get(&0) {
            Some(a0) => a0
                .exp_nilpotent()
                .ok_or_else(|| SeriesError::NotExponentiable(format!("constant term {a0:?}")))?,
            None => R::one_in(&self.ctx),
        };
        let lim = self.limit();
        let mut out: BTreeMap<u32, R> = BTreeMap::new();
        out.insert(0, R::one_in(&self.ctx));
        for k in 1..=lim {
            let mut s: Option<R> = None;
            for (j, aj) in self.terms.range(1..=k) {
                if let Some(b) = out.get(&(k - j)) {
                    let p = aj.mul_ref(b).scale(&Rat::from_int(*j as i64));
                    match &mut s {
                        Some(v) => v.add_assign_ref(&p),
                        None => s = Some(p),
                    }
                }
            }
            if let Some(s) = s {
                let bk = s.scale(&Rat::new(1, k as i64));
                if !bk.is_zero_elem() {
                    out.insert(k, bk);
                }
            }
        }
        let body = QExpSeries { ctx: self.ctx.clone(), order: self.order, terms: out };
        Ok(body.scale_by(&e0))
    }

    /// `log` of a series whose constant term is one plus a nilpotent.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let b0 = self
            .terms
            .get(&0)
            .ok_or_else(|| SeriesError::NotLogarithmic("no constant term".into()))?;
        let l0 = b0
            .log_unipotent()
            .ok_or_else(|| SeriesError::NotLogarithmic(format!("constant term {b0:?}")))?;
        let inv0 = b0
            .unit_inverse()
            .ok_or_else(|| SeriesError::NotLogarithmic(format!("constant term {b0:?}")))?;
        let c = self.scale_by(&inv0);
        let lim = self.limit();
        let mut out: BTreeMap<u32, R> = BTreeMap::new();
        for k in 1..=lim {
            let mut ak = c.coeff_or_zero(k);
            let mut s: Option<R> = None;
            for (j, aj) in out.range(1..k) {
                if let Some(cc) = c.terms.get(&(k - j)) {
                    let p = aj.mul_ref(cc).scale(&Rat::from_int(*j as i64));
                    match &mut s {
                        Some(v) => v.add_assign_ref(&p),
                        None => s = Some(p),
                    }
                }
            }
            if let Some(s) = s {
                ak = ak.sub_ref(&s.scale(&Rat::new(1, k as i64)));
            }
            if !ak.is_zero_elem() {
                out.insert(k, ak);
            }
        }
        let mut res = QExpSeries { ctx: self.ctx.clone(), order: self.order, terms: out };
        res.add_term(0, l0);
        Ok(res)
    }
}

/// The rational exponent of grid key `k`.
pub fn exponent(k: u32) -> Rat {
    Rat::new(k as i64, GRID as i64)
}

impl<R: Ring> fmt::Debug for QExpSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QExpSeries(order {}; ", self.order)?;
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "q^{}: {:?}", exponent(*k), v)?;
        }
        write!(f, ")")
    }
}

impl<R: Ring + fmt::Display> fmt::Display for QExpSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(q^{})", self.order + 1);
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *k {
                0 => write!(f, "({v})")?,
                k if k == GRID => write!(f, "({v})*q")?,
                k => write!(f, "({v})*q^{}", exponent(k))?,
            }
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

pub fn qs_mul<R: Ring>(a: &QExpSeries<R>, b: &QExpSeries<R>) -> Result<QExpSeries<R>, SeriesError> {
    a.mul(b)
}

pub fn qs_inv<R: Ring>(a: &QExpSeries<R>) -> Result<QExpSeries<R>, SeriesError> {
    a.inv()
}

pub fn qs_exp<R: QAlgebra>(a: &QExpSeries<R>) -> Result<QExpSeries<R>, SeriesError> {
    a.exp()
}

pub fn qs_log<R: QAlgebra>(a: &QExpSeries<R>) -> Result<QExpSeries<R>, SeriesError> {
    a.log()
}
