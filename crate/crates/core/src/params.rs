//! Smoothness and integrability parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which admissible parameter region a [`BesovParams`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// β ∈ (0,n), p ∈ [1, n/β), q ∈ (0,∞).
    A,
    /// β ∈ (0,1), p = q ∈ (n/(n+β), 1).
    B,
    /// Outside both regimes; built by [`BesovParams::seminorm_only`] and only
    /// meaningful as input to the seminorm itself.
    SeminormOnly,
}

/// The Besov triple (β, p, q) in dimension `dim`, with difference order k = 1 + ⌊β⌋.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesovParams {
    beta: f64,
    p: f64,
    q: f64,
    k: u32,
    dim: usize,
    regime: Regime,
}

impl BesovParams {
    pub fn new(beta: f64, p: f64, q: f64, dim: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParams(format!("dimension {dim} not in 1..=3")));
        }
        if !(beta.is_finite() && p.is_finite() && q.is_finite()) {
            return Err(Error::InvalidParams("beta, p, q must be finite".into()));
        }
        if beta <= 0.0 {
            return Err(Error::InvalidParams(format!("beta = {beta} must be positive")));
        }
        if beta >= 2.0 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta}: difference orders k >= 3 are not supported"
            )));
        }
        if beta.fract() == 0.0 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta}: fractional part must lie in (0,1)"
            )));
        }
        let n = dim as f64;
        let regime = if beta < n && p >= 1.0 && p < n / beta && q > 0.0 {
            Regime::A
        } else if beta < 1.0 && p == q && p > n / (n + beta) && p < 1.0 {
            Regime::B
        } else {
            return Err(Error::InvalidParams(describe_violation(beta, p, q, n)));
        };
        Ok(Self {
            beta,
            p,
            q,
            k: 1 + beta.floor() as u32,
            dim,
            regime,
        })
    }

    /// A triple for evaluating the seminorm outside the embedding regimes
    /// (e.g. pβ ≥ n). Only β ∈ (0,2) non-integer and p, q > 0 are required;
    /// the embedding exponents of such a triple are meaningless.
    pub fn seminorm_only(beta: f64, p: f64, q: f64, dim: usize) -> Result<Self> {
        match Self::new(beta, p, q, dim) {
            Ok(x) => return Ok(x),
            Err(_) if !(1..=3).contains(&dim) => return Err(Error::InvalidParams(format!("dimension {dim} not in 1..=3"))),
            Err(_) => {}
        }
        if !(beta > 0.0 && beta < 2.0 && beta.fract() != 0.0) {
            return Err(Error::InvalidParams(format!("beta = {beta} must lie in (0,2) and not be an integer")));
        }
        if !(p > 0.0 && p.is_finite() && q > 0.0 && q.is_finite()) {
            return Err(Error::InvalidParams(format!("p = {p} and q = {q} must be positive and finite")));
        }
        Ok(Self {
            beta,
            p,
            q,
            k: 1 + beta.floor() as u32,
            dim,
            regime: Regime::SeminormOnly,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Order of the finite difference.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// max(p, q)
    pub fn p_or_q(&self) -> f64 {
        self.p.max(self.q)
    }

    /// Sobolev exponent np/(n − pβ).
    pub fn sobolev_exponent(&self) -> f64 {
        let n = self.dim as f64;
        n * self.p / (n - self.p * self.beta)
    }

    /// Hardy weight exponent γ = n(1 − (p∨q)/p) + β(p∨q).
    pub fn hardy_gamma(&self) -> f64 {
        let n = self.dim as f64;
        let m = self.p_or_q();
        n * (1.0 - m / self.p) + self.beta * m
    }

    /// Same (β, p, q) in another dimension.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.beta, self.p, self.q, dim)
    }
}

fn describe_violation(beta: f64, p: f64, q: f64, n: f64) -> String {
    let mut why = Vec::new();
    if beta >= n {
        why.push(format!("beta = {beta} >= n = {n}"));
    }
    if p >= 1.0 && p >= n / beta {
        why.push(format!("p = {p} >= n/beta = {}", n / beta));
    }
    if p < 1.0 {
        if p != q {
            why.push(format!("p = {p} < 1 requires p = q (got q = {q})"));
        }
        if beta >= 1.0 {
            why.push(format!("p < 1 requires beta < 1 (got {beta})"));
        }
        if p <= n / (n + beta) {
            why.push(format!("p = {p} <= n/(n+beta) = {}", n / (n + beta)));
        }
    }
    if q <= 0.0 {
        why.push(format!("q = {q} must be positive"));
    }
    if why.is_empty() {
        why.push("outside both admissible regimes".into());
    }
    why.join("; ")
}

/// Lorentz exponents (p₀, q₀); `q0 = None` is the weak space q₀ = ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzParams {
    p0: f64,
    q0: Option<f64>,
}

impl LorentzParams {
    pub fn new(p0: f64, q0: f64) -> Result<Self> {
        if !(p0 > 0.0 && p0.is_finite()) {
            return Err(Error::InvalidParams(format!("p0 = {p0} must be positive")));
        }
        if q0 == f64::INFINITY {
            return Ok(Self { p0, q0: None });
        }
        if !(q0 > 0.0 && q0.is_finite()) {
            return Err(Error::InvalidParams(format!("q0 = {q0} must be positive")));
        }
        Ok(Self { p0, q0: Some(q0) })
    }

    pub fn weak(p0: f64) -> Result<Self> {
        Self::new(p0, f64::INFINITY)
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn q0(&self) -> Option<f64> {
        self.q0
    }
}
