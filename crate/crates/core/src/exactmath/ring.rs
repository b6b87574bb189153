use std::fmt;

use super::{Rat, ZMod};

/// Commutative ring with a runtime context (modulus, degree cap, ...) that
/// must agree between operands.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn unit_inverse(&self) -> Option<Self>;

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
}

/// Ring containing the rationals, with exp/log on the elements where the
/// power series terminate.
pub trait QAlgebra: Ring {
    fn scale(&self, r: &Rat) -> Self;
    /// `exp(self)` when `self` is nilpotent.
    fn exp_nilpotent(&self) -> Option<Self>;
    /// `log(self)` when `self - 1` is nilpotent.
    fn log_unipotent(&self) -> Option<Self>;
}

impl Ring for Rat {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        Rat::zero()
    }
    fn one_in(_: &()) -> Self {
        Rat::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
}

impl QAlgebra for Rat {
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn exp_nilpotent(&self) -> Option<Self> {
        self.is_zero().then(Rat::one)
    }
    fn log_unipotent(&self) -> Option<Self> {
        self.is_one().then(Rat::zero)
    }
}

impl Ring for ZMod {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus()
    }
    fn zero_in(m: &u64) -> Self {
        ZMod::zero(*m)
    }
    fn one_in(m: &u64) -> Self {
        ZMod::one(*m)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}
