//! Edge multiplicities and path counts with an absorbing infinity.

use std::fmt;
use std::num::NonZeroU64;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

/// Multiplicity of an edge bundle: a positive integer or ω (countably many
/// parallel edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(NonZeroU64),
    Omega,
}

impl Multiplicity {
    /// Finite multiplicity; `None` for zero.
    pub const fn finite(n: u64) -> Option<Self> {
        match NonZeroU64::new(n) {
            Some(n) => Some(Multiplicity::Finite(n)),
            None => None,
        }
    }

    /// A single edge.
    pub const ONE: Multiplicity = match Multiplicity::finite(1) {
        Some(m) => m,
        None => unreachable!(),
    };

    pub fn is_omega(self) -> bool {
        matches!(self, Multiplicity::Omega)
    }

    /// Whether `index` addresses an edge of a bundle with this multiplicity.
    pub fn admits(self, index: u64) -> bool {
        match self {
            Multiplicity::Finite(n) => index < n.get(),
            Multiplicity::Omega => true,
        }
    }

    pub fn to_cardinal(self) -> Cardinal {
        match self {
            Multiplicity::Finite(n) => Cardinal::Finite(BigUint::from(n.get())),
            Multiplicity::Omega => Cardinal::Omega,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => f.write_str("ω"),
        }
    }
}

/// A cardinality in ℕ ∪ {ω}.
///
/// ω absorbs addition, and multiplication by any nonzero value; `ω · 0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Omega,
}

impl Cardinal {
    pub fn from_u64(n: u64) -> Self {
        Cardinal::Finite(BigUint::from(n))
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Cardinal::Omega)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_omega()
    }

    /// The value as `u64`, if finite and small enough.
    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => u64::try_from(n).ok(),
            Cardinal::Omega => None,
        }
    }
}

impl Zero for Cardinal {
    fn zero() -> Self {
        Cardinal::Finite(BigUint::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Cardinal::Finite(n) if n.is_zero())
    }
}

impl One for Cardinal {
    fn one() -> Self {
        Cardinal::Finite(BigUint::one())
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a + b),
            _ => Cardinal::Omega,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        if self.is_zero() || rhs.is_zero() {
            return Cardinal::zero();
        }
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a * b),
            _ => Cardinal::Omega,
        }
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Omega => f.write_str("ω"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => match u64::try_from(n) {
                Ok(small) => serializer.serialize_u64(small),
                Err(_) => serializer.serialize_str(&n.to_string()),
            },
            Cardinal::Omega => serializer.serialize_str("omega"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> Cardinal {
        Cardinal::from_u64(k)
    }

    #[test]
    fn omega_absorbs() {
        assert_eq!(Cardinal::Omega + n(3), Cardinal::Omega);
        assert_eq!(n(3) * Cardinal::Omega, Cardinal::Omega);
        assert_eq!(Cardinal::Omega * n(0), n(0));
        assert_eq!(n(0) * Cardinal::Omega, n(0));
    }

    #[test]
    fn finite_arithmetic() {
        assert_eq!(n(2) + n(5), n(7));
        assert_eq!(n(2) * n(5), n(10));
        assert_eq!(vec![n(1), n(2), n(3)].into_iter().sum::<Cardinal>(), n(6));
    }

    #[test]
    fn zero_multiplicity_rejected() {
        assert!(Multiplicity::finite(0).is_none());
        assert!(Multiplicity::finite(2).unwrap().admits(1));
        assert!(!Multiplicity::finite(2).unwrap().admits(2));
        assert!(Multiplicity::Omega.admits(1 << 40));
    }
}
