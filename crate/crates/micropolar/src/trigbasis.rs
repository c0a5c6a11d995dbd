//! Exact algebra on separable fields `c · T₁(kx x₁) · T₂(ky x₂)` with
//! `T ∈ {sin, cos}`.
//!
//! A [`TrigField`] keeps one coefficient per pattern, so addition merges
//! like terms and projection is a lookup. Derivatives map the pattern set onto
//! itself, which is what turns the plate operators into small matrices.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trig {
    Sin,
    Cos,
}

impl Trig {
    pub fn other(self) -> Self {
        match self {
            Trig::Sin => Trig::Cos,
            Trig::Cos => Trig::Sin,
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Sin => x.sin(),
            Trig::Cos => x.cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrigPattern {
    pub fx: Trig,
    pub fy: Trig,
}

impl TrigPattern {
    pub const SS: Self = Self::new(Trig::Sin, Trig::Sin);
    pub const SC: Self = Self::new(Trig::Sin, Trig::Cos);
    pub const CS: Self = Self::new(Trig::Cos, Trig::Sin);
    pub const CC: Self = Self::new(Trig::Cos, Trig::Cos);
    pub const ALL: [Self; 4] = [Self::SS, Self::SC, Self::CS, Self::CC];

    pub const fn new(fx: Trig, fy: Trig) -> Self {
        Self { fx, fy }
    }

    /// Both factors swapped between sine and cosine.
    pub fn complement(self) -> Self {
        Self::new(self.fx.other(), self.fy.other())
    }

    fn index(self) -> usize {
        match (self.fx, self.fy) {
            (Trig::Sin, Trig::Sin) => 0,
            (Trig::Sin, Trig::Cos) => 1,
            (Trig::Cos, Trig::Sin) => 2,
            (Trig::Cos, Trig::Cos) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub coeff: f64,
    pub pattern: TrigPattern,
    pub kx: f64,
    pub ky: f64,
}

/// Sum of separable terms sharing one wavenumber pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigField {
    pub kx: f64,
    pub ky: f64,
    coeffs: [f64; 4],
}

impl TrigField {
    pub fn zero(kx: f64, ky: f64) -> Self {
        Self {
            kx,
            ky,
            coeffs: [0.0; 4],
        }
    }

    pub fn term(coeff: f64, pattern: TrigPattern, kx: f64, ky: f64) -> Self {
        let mut f = Self::zero(kx, ky);
        f.coeffs[pattern.index()] = coeff;
        f
    }

    /// Wavenumbers `nπ/a`, `mπ/a` of mode `(n, m)` on a square of side `a`.
    pub fn wavenumbers(n: u32, m: u32, a: f64) -> (f64, f64) {
        let k = std::f64::consts::PI / a;
        (n as f64 * k, m as f64 * k)
    }

    /// Nonzero terms in the fixed order SS, SC, CS, CC.
    pub fn terms(&self) -> Vec<TrigTerm> {
        TrigPattern::ALL
            .iter()
            .filter(|p| self.coeffs[p.index()] != 0.0)
            .map(|&p| TrigTerm {
                coeff: self.coeffs[p.index()],
                pattern: p,
                kx: self.kx,
                ky: self.ky,
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        TrigPattern::ALL
            .iter()
            .map(|p| self.coeffs[p.index()] * p.fx.eval(self.kx * x1) * p.fy.eval(self.ky * x2))
            .sum()
    }

    pub fn d_dx1(&self) -> Self {
        let mut out = Self::zero(self.kx, self.ky);
        for p in TrigPattern::ALL {
            let c = self.coeffs[p.index()];
            let (q, s) = match p.fx {
                Trig::Sin => (TrigPattern::new(Trig::Cos, p.fy), self.kx),
                Trig::Cos => (TrigPattern::new(Trig::Sin, p.fy), -self.kx),
            };
            out.coeffs[q.index()] += s * c;
        }
        out
    }

    pub fn d_dx2(&self) -> Self {
        let mut out = Self::zero(self.kx, self.ky);
        for p in TrigPattern::ALL {
            let c = self.coeffs[p.index()];
            let (q, s) = match p.fy {
                Trig::Sin => (TrigPattern::new(p.fx, Trig::Cos), self.ky),
                Trig::Cos => (TrigPattern::new(p.fx, Trig::Sin), -self.ky),
            };
            out.coeffs[q.index()] += s * c;
        }
        out
    }

    /// `∂/∂x_α` with `alpha ∈ {0, 1}`.
    pub fn d(&self, alpha: usize) -> Self {
        if alpha == 0 {
            self.d_dx1()
        } else {
            self.d_dx2()
        }
    }

    /// Coefficient of pattern `p`.
    pub fn project(&self, p: TrigPattern) -> f64 {
        self.coeffs[p.index()]
    }
}

pub fn d_dx1(f: &TrigField) -> TrigField {
    f.d_dx1()
}

pub fn d_dx2(f: &TrigField) -> TrigField {
    f.d_dx2()
}

pub fn project(f: &TrigField, p: TrigPattern) -> f64 {
    f.project(p)
}

impl Add for TrigField {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for TrigField {
    fn add_assign(&mut self, rhs: Self) {
        debug_assert!(self.kx == rhs.kx && self.ky == rhs.ky, "wavenumber mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for TrigField {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for TrigField {
    type Output = Self;
    fn neg(self) -> Self {
        -1.0 * self
    }
}

impl Mul<TrigField> for f64 {
    type Output = TrigField;
    fn mul(self, mut f: TrigField) -> TrigField {
        for c in f.coeffs.iter_mut() {
            *c *= self;
        }
        f
    }
}
