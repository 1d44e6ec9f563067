//! Exact numbers of the form `c·√r` with `r` squarefree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `coeff · √radicand`, radicand squarefree (and 1 for zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Radical {
    coeff: BigUint,
    radicand: BigUint,
}

impl Radical {
    pub fn integer(n: impl Into<BigUint>) -> Self {
        Radical {
            coeff: n.into(),
            radicand: BigUint::one(),
        }
    }

    /// `√n`, splitting `n` into square and squarefree parts by trial division.
    pub fn sqrt_of(n: u64) -> Self {
        if n == 0 {
            return Radical::integer(0u32);
        }
        let (mut rest, mut coeff, mut radicand) = (n, 1u64, 1u64);
        let mut p = 2u64;
        while p * p <= rest {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            coeff *= p.pow(e / 2);
            if e % 2 == 1 {
                radicand *= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        Radical {
            coeff: coeff.into(),
            radicand: BigUint::from(radicand) * rest,
        }
    }

    /// `base^(exp/2)`.
    pub fn pow_half(base: u64, exp: u32) -> Self {
        Radical::sqrt_of(base).pow(exp)
    }

    pub fn coeff(&self) -> &BigUint {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_integer(&self) -> bool {
        self.radicand.is_one() || self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let g = self.radicand.gcd(&other.radicand);
        let coeff = &self.coeff * &other.coeff * &g;
        let radicand = (&self.radicand / &g) * (&other.radicand / &g);
        Radical::normalized(coeff, radicand)
    }

    pub fn pow(&self, e: u32) -> Radical {
        (0..e).fold(Radical::integer(1u32), |acc, _| acc.mul(self))
    }

    fn normalized(coeff: BigUint, radicand: BigUint) -> Radical {
        if coeff.is_zero() {
            Radical::integer(0u32)
        } else {
            Radical { coeff, radicand }
        }
    }

    /// The exact square `c²·r`.
    pub fn square(&self) -> BigUint {
        &self.coeff * &self.coeff * &self.radicand
    }

    /// Exact `⌈c·√r⌉`.
    pub fn ceil(&self) -> BigUint {
        let sq = self.square();
        if sq.is_zero() {
            return sq;
        }
        (sq - 1u32).sqrt() + 1u32
    }

    /// Exact `⌊c·√r⌋`.
    pub fn floor(&self) -> BigUint {
        self.square().sqrt()
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::INFINITY);
        let r = self.radicand.to_f64().unwrap_or(f64::INFINITY);
        c * r.sqrt()
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp(&other.square())
    }
}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_one(), self.radicand.is_one()) {
            (_, true) => write!(f, "{}", self.coeff),
            (true, false) => write!(f, "sqrt({})", self.radicand),
            (false, false) => write!(f, "{}*sqrt({})", self.coeff, self.radicand),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ninety_six_root_two() {
        let f = Radical::integer(24u32).mul(&Radical::pow_half(2, 5));
        assert_eq!(f.to_string(), "96*sqrt(2)");
        assert_eq!(f.ceil(), BigUint::from(136u32));
        assert_eq!(f.floor(), BigUint::from(135u32));
        assert!((f.to_f64() - 96.0 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn squarefree_split() {
        let r = Radical::sqrt_of(72);
        assert_eq!((r.coeff().clone(), r.radicand().clone()), (6u32.into(), 2u32.into()));
        assert_eq!(Radical::sqrt_of(49).to_string(), "7");
        assert_eq!(Radical::sqrt_of(3).mul(&Radical::sqrt_of(6)).to_string(), "3*sqrt(2)");
        assert_eq!(Radical::sqrt_of(1).to_string(), "1");
    }

    proptest! {
        #[test]
        fn product_matches_floats(a in 1u64..5000, b in 1u64..5000) {
            let p = Radical::sqrt_of(a).mul(&Radical::sqrt_of(b));
            prop_assert_eq!(p.square(), BigUint::from(a * b));
            prop_assert!((p.to_f64() - ((a * b) as f64).sqrt()).abs() < 1e-6);
        }

        #[test]
        fn ceil_brackets_value(a in 1u64..1_000_000) {
            let r = Radical::sqrt_of(a);
            let c = r.ceil().to_u64().unwrap();
            prop_assert!(c * c >= a && (c - 1) * (c - 1) < a);
        }

        #[test]
        fn order_agrees_with_squares(a in 1u64..10_000, b in 1u64..10_000) {
            prop_assert_eq!(Radical::sqrt_of(a).cmp(&Radical::sqrt_of(b)), a.cmp(&b));
        }
    }
}
