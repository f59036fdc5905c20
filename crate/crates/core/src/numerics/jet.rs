//! Jet types: values bundled with their first few derivatives.
//!
//! A 3-jet carries enough data to evaluate Schwarzian-type expressions at a
//! point without any numerical differentiation. Curves supply [`Jet3Real`],
//! analytic functions supply [`Jet3Complex`], dilatation square roots supply
//! [`Jet2Complex`]. All arithmetic is plain truncated-Taylor (Leibniz/chain
//! rule) algebra.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value and first three derivatives of a curve point in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet3Real {
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub d3: Vec<f64>,
}

impl Jet3Real {
    pub fn new(value: Vec<f64>, d1: Vec<f64>, d2: Vec<f64>, d3: Vec<f64>) -> Result<Self> {
        let n = value.len();
        if n == 0 || d1.len() != n || d2.len() != n || d3.len() != n {
            return Err(Error::InvalidInput(format!(
                "jet entries must share one dimension n >= 1, got {}/{}/{}/{}",
                n,
                d1.len(),
                d2.len(),
                d3.len()
            )));
        }
        let jet = Self { value, d1, d2, d3 };
        if !jet.is_finite() {
            return Err(Error::InvalidInput("non-finite jet entry".into()));
        }
        Ok(jet)
    }

    pub fn dim(&self) -> usize {
        self.value.len()
    }

    pub fn is_finite(&self) -> bool {
        self.value
            .iter()
            .chain(&self.d1)
            .chain(&self.d2)
            .chain(&self.d3)
            .all(|v| v.is_finite())
    }

    /// Jet of the scalar product <self, other> (same parameter).
    pub fn dot_jet(&self, other: &Jet3Real) -> ScalarJet3 {
        let d = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        let (f, g) = (self, other);
        ScalarJet3([
            d(&f.value, &g.value),
            d(&f.d1, &g.value) + d(&f.value, &g.d1),
            d(&f.d2, &g.value) + 2.0 * d(&f.d1, &g.d1) + d(&f.value, &g.d2),
            d(&f.d3, &g.value) + 3.0 * d(&f.d2, &g.d1) + 3.0 * d(&f.d1, &g.d2) + d(&f.value, &g.d3),
        ])
    }

    /// Component-wise sum with a constant vector added to the value only.
    pub fn translate(&self, a: &[f64]) -> Jet3Real {
        let mut out = self.clone();
        for (v, t) in out.value.iter_mut().zip(a) {
            *v += t;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Jet3Real {
        let m = |v: &[f64]| v.iter().map(|x| s * x).collect();
        Jet3Real {
            value: m(&self.value),
            d1: m(&self.d1),
            d2: m(&self.d2),
            d3: m(&self.d3),
        }
    }

    /// Apply a fixed matrix (rows of `m`) to every jet entry.
    pub fn linear_map(&self, m: &[Vec<f64>]) -> Jet3Real {
        let ap = |v: &[f64]| -> Vec<f64> {
            m.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        };
        Jet3Real {
            value: ap(&self.value),
            d1: ap(&self.d1),
            d2: ap(&self.d2),
            d3: ap(&self.d3),
        }
    }

    /// Product of a scalar jet with a vector jet, order 3 Leibniz.
    pub fn mul_scalar_jet(&self, s: &ScalarJet3) -> Jet3Real {
        let n = self.dim();
        let mut out = Jet3Real {
            value: vec![0.0; n],
            d1: vec![0.0; n],
            d2: vec![0.0; n],
            d3: vec![0.0; n],
        };
        for i in 0..n {
            let (y0, y1, y2, y3) = (self.value[i], self.d1[i], self.d2[i], self.d3[i]);
            out.value[i] = y0 * s.0[0];
            out.d1[i] = y1 * s.0[0] + y0 * s.0[1];
            out.d2[i] = y2 * s.0[0] + 2.0 * y1 * s.0[1] + y0 * s.0[2];
            out.d3[i] = y3 * s.0[0] + 3.0 * y2 * s.0[1] + 3.0 * y1 * s.0[2] + y0 * s.0[3];
        }
        out
    }

    pub fn sub(&self, other: &Jet3Real) -> Jet3Real {
        let s = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        Jet3Real {
            value: s(&self.value, &other.value),
            d1: s(&self.d1, &other.d1),
            d2: s(&self.d2, &other.d2),
            d3: s(&self.d3, &other.d3),
        }
    }
}

/// Scalar real 3-jet `[f, f', f'', f''']` with the algebra needed for
/// chain-rule propagation through Mobius factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarJet3(pub [f64; 4]);

impl ScalarJet3 {
    pub fn constant(c: f64) -> Self {
        ScalarJet3([c, 0.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    pub fn add(&self, o: &ScalarJet3) -> ScalarJet3 {
        ScalarJet3([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn add_const(&self, c: f64) -> ScalarJet3 {
        let mut out = *self;
        out.0[0] += c;
        out
    }

    pub fn scale(&self, s: f64) -> ScalarJet3 {
        ScalarJet3([s * self.0[0], s * self.0[1], s * self.0[2], s * self.0[3]])
    }

    pub fn mul(&self, o: &ScalarJet3) -> ScalarJet3 {
        let (f, g) = (&self.0, &o.0);
        ScalarJet3([
            f[0] * g[0],
            f[1] * g[0] + f[0] * g[1],
            f[2] * g[0] + 2.0 * f[1] * g[1] + f[0] * g[2],
            f[3] * g[0] + 3.0 * f[2] * g[1] + 3.0 * f[1] * g[2] + f[0] * g[3],
        ])
    }

    /// 1/f as a 3-jet; caller guarantees f != 0.
    pub fn recip(&self) -> ScalarJet3 {
        let [f0, f1, f2, f3] = self.0;
        let r0 = 1.0 / f0;
        let r1 = -f1 * r0 * r0;
        let r2 = (2.0 * f1 * f1 - f0 * f2) * r0 * r0 * r0;
        let r3 = (-6.0 * f1 * f1 * f1 + 6.0 * f0 * f1 * f2 - f0 * f0 * f3) * r0 * r0 * r0 * r0;
        ScalarJet3([r0, r1, r2, r3])
    }
}

/// Value and first three derivatives of an analytic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3Complex {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

/// Value and first two derivatives; used for the dilatation square root q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2Complex {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet2Complex {
    pub const ZERO: Jet2Complex = Jet2Complex {
        value: Complex64::new(0.0, 0.0),
        d1: Complex64::new(0.0, 0.0),
        d2: Complex64::new(0.0, 0.0),
    };

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl From<Jet3Complex> for Jet2Complex {
    fn from(j: Jet3Complex) -> Self {
        Jet2Complex {
            value: j.value,
            d1: j.d1,
            d2: j.d2,
        }
    }
}

impl Jet3Complex {
    pub const ZERO: Jet3Complex = Jet3Complex {
        value: Complex64::new(0.0, 0.0),
        d1: Complex64::new(0.0, 0.0),
        d2: Complex64::new(0.0, 0.0),
        d3: Complex64::new(0.0, 0.0),
    };

    /// The identity function z at the base point.
    pub fn variable(z: Complex64) -> Self {
        Jet3Complex {
            value: z,
            d1: Complex64::new(1.0, 0.0),
            d2: Complex64::ZERO,
            d3: Complex64::ZERO,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Jet3Complex {
            value: c,
            d1: Complex64::ZERO,
            d2: Complex64::ZERO,
            d3: Complex64::ZERO,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }

    pub fn add(&self, o: &Jet3Complex) -> Jet3Complex {
        Jet3Complex {
            value: self.value + o.value,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            d3: self.d3 + o.d3,
        }
    }

    pub fn sub(&self, o: &Jet3Complex) -> Jet3Complex {
        Jet3Complex {
            value: self.value - o.value,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
            d3: self.d3 - o.d3,
        }
    }

    pub fn neg(&self) -> Jet3Complex {
        Jet3Complex {
            value: -self.value,
            d1: -self.d1,
            d2: -self.d2,
            d3: -self.d3,
        }
    }

    pub fn scale(&self, s: Complex64) -> Jet3Complex {
        Jet3Complex {
            value: s * self.value,
            d1: s * self.d1,
            d2: s * self.d2,
            d3: s * self.d3,
        }
    }

    pub fn mul(&self, o: &Jet3Complex) -> Jet3Complex {
        let (f, g) = (self, o);
        Jet3Complex {
            value: f.value * g.value,
            d1: f.d1 * g.value + f.value * g.d1,
            d2: f.d2 * g.value + 2.0 * f.d1 * g.d1 + f.value * g.d2,
            d3: f.d3 * g.value + 3.0 * f.d2 * g.d1 + 3.0 * f.d1 * g.d2 + f.value * g.d3,
        }
    }

    /// 1/f; caller keeps f away from zero.
    pub fn recip(&self) -> Jet3Complex {
        let (f0, f1, f2, f3) = (self.value, self.d1, self.d2, self.d3);
        let r0 = f0.finv();
        let r0_2 = r0 * r0;
        let r1 = -f1 * r0_2;
        let r2 = (2.0 * f1 * f1 - f0 * f2) * r0_2 * r0;
        let r3 = (-6.0 * f1 * f1 * f1 + 6.0 * f0 * f1 * f2 - f0 * f0 * f3) * r0_2 * r0_2;
        Jet3Complex {
            value: r0,
            d1: r1,
            d2: r2,
            d3: r3,
        }
    }

    pub fn div(&self, o: &Jet3Complex) -> Jet3Complex {
        self.mul(&o.recip())
    }

    /// exp(f) by the chain rule on Taylor coefficients.
    pub fn exp(&self) -> Jet3Complex {
        let e = self.value.exp();
        let (f1, f2, f3) = (self.d1, self.d2, self.d3);
        Jet3Complex {
            value: e,
            d1: f1 * e,
            d2: (f2 + f1 * f1) * e,
            d3: (f3 + 3.0 * f1 * f2 + f1 * f1 * f1) * e,
        }
    }

    /// Principal branch log(f); caller keeps f off the branch cut.
    pub fn ln(&self) -> Jet3Complex {
        let (f0, f1, f2, f3) = (self.value, self.d1, self.d2, self.d3);
        let w1 = f1 / f0;
        let w2 = f2 / f0 - w1 * w1;
        let w3 = f3 / f0 - 3.0 * f1 * f2 / (f0 * f0) + 2.0 * w1 * w1 * w1;
        Jet3Complex {
            value: f0.ln(),
            d1: w1,
            d2: w2,
            d3: w3,
        }
    }

    /// f^a for real exponent a, principal branch.
    pub fn powf(&self, a: f64) -> Jet3Complex {
        self.ln().scale(Complex64::new(a, 0.0)).exp()
    }
}

/// Horner evaluation of a polynomial (ascending coefficients) as a 3-jet.
pub fn polynomial_jet(coeffs: &[Complex64], z: Complex64) -> Jet3Complex {
    let zj = Jet3Complex::variable(z);
    let mut acc = Jet3Complex::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc.mul(&zj).add(&Jet3Complex::constant(c));
    }
    acc
}
