//! Exact arithmetic in `Q(φ)`, `φ² = φ + 1`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;

/// `(a + b·φ) / d` in lowest terms with `d > 0`.
///
/// Root coordinates only ever need `d ∈ {1, 2}`; intermediate dot products
/// may carry larger denominators, so the type does not restrict `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenScalar {
    a: i64,
    b: i64,
    d: i64,
}

impl GoldenScalar {
    pub const ZERO: GoldenScalar = GoldenScalar { a: 0, b: 0, d: 1 };
    pub const ONE: GoldenScalar = GoldenScalar { a: 1, b: 0, d: 1 };
    pub const PHI: GoldenScalar = GoldenScalar { a: 0, b: 1, d: 1 };

    pub fn new(a: i64, b: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let sign = d.signum();
        let (a, b, d) = (a * sign, b * sign, d * sign);
        let g = a.gcd(&b).gcd(&d);
        GoldenScalar {
            a: a / g,
            b: b / g,
            d: d / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        GoldenScalar { a: n, b: 0, d: 1 }
    }

    /// `n / 2`.
    pub fn half(n: i64) -> Self {
        Self::new(n, 0, 2)
    }

    pub fn parts(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Galois conjugate, `φ ↦ 1 − φ`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a + self.b, -self.b, self.d)
    }

    /// Field norm of the numerator `a + bφ`, i.e. `a² + ab − b²`.
    fn numerator_norm(&self) -> i64 {
        self.a * self.a + self.a * self.b - self.b * self.b
    }

    pub fn to_f64(&self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        (self.a as f64 + self.b as f64 * phi) / self.d as f64
    }
}

impl Add for GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, o: GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)
    }
}

impl Sub for GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, o: GoldenScalar) -> GoldenScalar {
        self + (-o)
    }
}

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, o: GoldenScalar) -> GoldenScalar {
        // (a + bφ)(c + eφ) = (ac + be) + (ae + bc + be)φ
        let (a, b, c, e) = (self.a, self.b, o.a, o.b);
        GoldenScalar::new(a * c + b * e, a * e + b * c + b * e, self.d * o.d)
    }
}

impl Div for GoldenScalar {
    type Output = GoldenScalar;
    fn div(self, o: GoldenScalar) -> GoldenScalar {
        assert!(!o.is_zero(), "division by zero");
        let norm = o.numerator_norm();
        let num = self * GoldenScalar::new(o.a + o.b, -o.b, 1);
        GoldenScalar::new(num.a * o.d, num.b * o.d, num.d * norm)
    }
}

impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a, self.b) {
            (a, 0) => format!("{a}"),
            (0, b) => format!("{b}φ"),
            (a, b) if b < 0 => format!("{a}-{}φ", -b),
            (a, b) => format!("{a}+{b}φ"),
        };
        if self.d == 1 {
            write!(f, "{num}")
        } else if self.b == 0 || self.a == 0 {
            write!(f, "{num}/{}", self.d)
        } else {
            write!(f, "({num})/{}", self.d)
        }
    }
}

impl fmt::Debug for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
