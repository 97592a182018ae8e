use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::presentation::SpinPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueGroup {
    Integers,
    IntegersMod2,
}

/// An element of one of the supported value groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantValue {
    Integer(i128),
    Mod2(bool),
}

impl InvariantValue {
    pub fn zero(group: ValueGroup) -> Self {
        match group {
            ValueGroup::Integers => Self::Integer(0),
            ValueGroup::IntegersMod2 => Self::Mod2(false),
        }
    }

    pub fn group(self) -> ValueGroup {
        match self {
            Self::Integer(_) => ValueGroup::Integers,
            Self::Mod2(_) => ValueGroup::IntegersMod2,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Self::Integer(0) | Self::Mod2(false))
    }

    /// Integer representative: the integer itself, or 0/1.
    pub fn as_i128(self) -> i128 {
        match self {
            Self::Integer(v) => v,
            Self::Mod2(b) => i128::from(b),
        }
    }
}

impl Add for InvariantValue {
    type Output = Self;

    // Addition in Z/2 is xor.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Integer(a), Self::Integer(b)) => {
                Self::Integer(a.checked_add(b).expect("integer invariant overflow"))
            }
            (Self::Mod2(a), Self::Mod2(b)) => Self::Mod2(a ^ b),
            _ => panic!("adding invariant values from different groups"),
        }
    }
}

impl Neg for InvariantValue {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            Self::Integer(a) => Self::Integer(-a),
            Self::Mod2(a) => Self::Mod2(a),
        }
    }
}

impl Sub for InvariantValue {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i128())
    }
}

/// A function of spin presentations with values in a fixed group.
pub trait SpinInvariant: Sync {
    fn value_group(&self) -> ValueGroup;

    fn evaluate(&self, p: &SpinPresentation) -> InvariantValue;
}

/// The invariant that ignores its argument.
#[derive(Clone, Copy, Debug)]
pub struct Constant(pub InvariantValue);

impl SpinInvariant for Constant {
    fn value_group(&self) -> ValueGroup {
        self.0.group()
    }

    fn evaluate(&self, _: &SpinPresentation) -> InvariantValue {
        self.0
    }
}

impl<F> SpinInvariant for (ValueGroup, F)
where
    F: Fn(&SpinPresentation) -> InvariantValue + Sync,
{
    fn value_group(&self) -> ValueGroup {
        self.0
    }

    fn evaluate(&self, p: &SpinPresentation) -> InvariantValue {
        (self.1)(p)
    }
}
