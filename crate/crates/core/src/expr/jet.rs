//! First-order jets: a function value and its derivative propagated together.
//!
//! Arithmetic on jets follows the sum, product, quotient and chain rules, so
//! the derivative of any expression built from jets is exact up to rounding.
//! There is no truncation error of the finite-difference kind.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value and first derivative of a holomorphic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl Jet {
    pub fn new(value: Complex64, deriv: Complex64) -> Jet {
        Jet { value, deriv }
    }

    /// The jet of a constant: `(c, 0)`.
    pub fn constant(c: Complex64) -> Jet {
        Jet {
            value: c,
            deriv: Complex64::new(0.0, 0.0),
        }
    }

    /// The jet of the variable itself: `(z0, 1)`.
    pub fn variable(z0: Complex64) -> Jet {
        Jet {
            value: z0,
            deriv: Complex64::new(1.0, 0.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.deriv.is_finite()
    }

    pub fn exp(self) -> Jet {
        let e = self.value.exp();
        Jet {
            value: e,
            deriv: self.deriv * e,
        }
    }

    /// Principal-branch logarithm. The caller guards `value != 0`.
    pub fn ln(self) -> Jet {
        Jet {
            value: self.value.ln(),
            deriv: self.deriv / self.value,
        }
    }

    /// Principal-branch square root. The caller guards `value != 0`.
    pub fn sqrt(self) -> Jet {
        let s = self.value.sqrt();
        Jet {
            value: s,
            deriv: self.deriv / (s * 2.0),
        }
    }

    pub fn sin(self) -> Jet {
        Jet {
            value: self.value.sin(),
            deriv: self.deriv * self.value.cos(),
        }
    }

    pub fn cos(self) -> Jet {
        Jet {
            value: self.value.cos(),
            deriv: -self.deriv * self.value.sin(),
        }
    }

    /// `sin/cos` without a pole check; the evaluator guards the divisor.
    pub fn tan(self) -> Jet {
        self.sin() / self.cos()
    }

    pub fn sinh(self) -> Jet {
        Jet {
            value: self.value.sinh(),
            deriv: self.deriv * self.value.cosh(),
        }
    }

    pub fn cosh(self) -> Jet {
        Jet {
            value: self.value.cosh(),
            deriv: self.deriv * self.value.sinh(),
        }
    }

    /// Integer power by repeated multiplication, exact for small exponents.
    /// The caller guards `value != 0` when `n < 0`.
    pub fn powi(self, n: i32) -> Jet {
        if n == 0 {
            return Jet::constant(Complex64::new(1.0, 0.0));
        }
        let m = n.unsigned_abs();
        // value^(|n|-1) once; both the value and the derivative reuse it
        let lower = powu(self.value, m - 1);
        let pw = lower * self.value;
        if n > 0 {
            Jet {
                value: pw,
                deriv: self.deriv * lower * (n as f64),
            }
        } else {
            Jet {
                value: pw.inv(),
                deriv: self.deriv * (n as f64) / (pw * self.value),
            }
        }
    }
}

/// `base^n` by binary exponentiation (products of squarings).
fn powu(base: Complex64, mut n: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut sq = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= sq;
        }
        sq *= sq;
        n >>= 1;
    }
    acc
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet {
            value: self.value + rhs.value,
            deriv: self.deriv + rhs.deriv,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet {
            value: self.value - rhs.value,
            deriv: self.deriv - rhs.deriv,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let value = self.value / rhs.value;
        Jet {
            value,
            deriv: (self.deriv - value * rhs.deriv) / rhs.value,
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            value: -self.value,
            deriv: -self.deriv,
        }
    }
}
