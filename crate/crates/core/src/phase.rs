//! Exact roots of unity stored as rational exponents in [0, 1).

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// The root of unity `exp(2πi·r)` for a rational `r` reduced mod 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub const ONE: Phase = Phase(Ratio::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase with zero denominator");
        let r = Ratio::new(num, den);
        Phase(r - r.floor())
    }

    /// Exponent as a reduced fraction in [0,1).
    pub fn exponent(&self) -> (i64, i64) {
        (*self.0.numer(), *self.0.denom())
    }

    pub fn is_one(&self) -> bool {
        *self.0.numer() == 0
    }

    /// Order of the root of unity.
    pub fn order(&self) -> i64 {
        *self.0.denom()
    }

    pub fn conj(self) -> Phase {
        -self
    }

    /// Principal square root: halves the exponent taken in [0,1).
    pub fn sqrt(self) -> Phase {
        Phase(self.0 / 2)
    }

    pub fn pow(self, k: i64) -> Phase {
        let r = self.0 * k;
        Phase(r - r.floor())
    }

    pub fn to_complex(self) -> Complex64 {
        let (n, d) = self.exponent();
        match (n, d) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, 2.0 * PI * n as f64 / d as f64),
        }
    }

    /// Sign of a phase that is ±1, `None` otherwise.
    pub fn as_sign(self) -> Option<i8> {
        match self.exponent() {
            (0, _) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }

    pub fn from_sign(s: i8) -> Phase {
        if s < 0 {
            Phase::new(1, 2)
        } else {
            Phase::ONE
        }
    }

    pub fn lcm_denominator<'a>(it: impl IntoIterator<Item = &'a Phase>) -> i64 {
        it.into_iter().fold(1i64, |acc, p| acc.lcm(&p.order()))
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        let r = self.0 + o.0;
        Phase(r - r.floor())
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        self + (-o)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        let r = -self.0;
        Phase(r - r.floor())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.exponent();
        write!(f, "e({n}/{d})")
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_mod_one() {
        assert_eq!(Phase::new(5, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(-1, 4), Phase::new(3, 4));
        assert!(Phase::new(3, 3).is_one());
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(1, 2), (1, 3), (2, 3), (3, 8), (0, 1)] {
            let p = Phase::new(n, d);
            assert_eq!(p.sqrt() + p.sqrt(), p);
        }
    }

    #[test]
    fn complex_values() {
        assert!((Phase::new(1, 4).to_complex() - Complex64::i()).norm() < 1e-15);
        assert_eq!(Phase::new(1, 2).as_sign(), Some(-1));
        assert_eq!(Phase::new(1, 3).as_sign(), None);
    }
}
