//! Second-kind Chebyshev polynomials and their rational mapping to `[0, ∞)`.
//!
//! `U*_n(x) = U_n((x - 1) / (x + 1))`. All derivatives are produced by the
//! term-by-term differentiated three-term recurrence, which stays finite at
//! `s = ±1` (the closed-form derivative divides by `1 - s²`).

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Slack allowed on `|s| ≤ 1` before a point is rejected.
const S_SLACK: f64 = 64.0 * f64::EPSILON;

/// A point of the half line together with its image in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPoint {
    pub x: f64,
    pub s: f64,
}

impl MappedPoint {
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(domain(format!(
                "x = {x} is not a finite non-negative number"
            )));
        }
        Ok(Self {
            x,
            s: (x - 1.0) / (x + 1.0),
        })
    }

    /// Inverse map. `s = 1` corresponds to the point at infinity.
    pub fn from_s(s: f64) -> Result<Self> {
        if !(-1.0..1.0).contains(&s) {
            return Err(domain(format!("s = {s} is outside [-1, 1)")));
        }
        Ok(Self {
            x: (1.0 + s) / (1.0 - s),
            s,
        })
    }
}

/// `U_0..U_{n_max}` and their first two `s`-derivatives at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalEval {
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

/// `U*_0..U*_{n_max}` and their first two `x`-derivatives at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEval {
    pub n_max: usize,
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

pub fn eval_classical(n_max: usize, s: f64) -> Result<ClassicalEval> {
    if !(s.abs() <= 1.0 + S_SLACK) {
        return Err(domain(format!("s = {s} is outside [-1, 1]")));
    }
    let len = n_max + 1;
    let mut values = vec![0.0; len];
    let mut d1 = vec![0.0; len];
    let mut d2 = vec![0.0; len];
    values[0] = 1.0;
    if n_max >= 1 {
        values[1] = 2.0 * s;
        d1[1] = 2.0;
    }
    for n in 2..len {
        values[n] = 2.0 * s * values[n - 1] - values[n - 2];
        d1[n] = 2.0 * values[n - 1] + 2.0 * s * d1[n - 1] - d1[n - 2];
        d2[n] = 4.0 * d1[n - 1] + 2.0 * s * d2[n - 1] - d2[n - 2];
    }
    Ok(ClassicalEval { values, d1, d2 })
}

pub fn eval_rcs(n_max: usize, x: f64) -> Result<BasisEval> {
    let p = MappedPoint::from_x(x)?;
    let ClassicalEval {
        values,
        mut d1,
        mut d2,
    } = eval_classical(n_max, p.s)?;
    let xp1 = 1.0 + x;
    let ds = 2.0 / (xp1 * xp1);
    let dds = -4.0 / (xp1 * xp1 * xp1);
    for (g1, g2) in d1.iter_mut().zip(d2.iter_mut()) {
        let (du, ddu) = (*g1, *g2);
        *g1 = du * ds;
        *g2 = ddu * ds * ds + du * dds;
    }
    Ok(BasisEval {
        n_max,
        values,
        d1,
        d2,
    })
}

/// First derivative of `U*_n` from the closed form
/// `(2/(1+x)²)·((n+2)U*_{n-1} - n·U*_{n+1}) / (2(1 - s²))`.
///
/// Singular at `x = 0`; only used to cross-check [`eval_rcs`] away from the
/// endpoint.
pub fn rcs_d1_closed_form(n: usize, x: f64) -> Result<f64> {
    let p = MappedPoint::from_x(x)?;
    let one_minus_s2 = 1.0 - p.s * p.s;
    if one_minus_s2 <= 0.0 {
        return Err(domain("closed-form derivative is singular at s = ±1"));
    }
    let u = eval_classical(n + 1, p.s)?.values;
    let below = if n == 0 { 0.0 } else { u[n - 1] };
    let ds = 2.0 / ((1.0 + x) * (1.0 + x));
    Ok(ds * ((n as f64 + 2.0) * below - n as f64 * u[n + 1]) / (2.0 * one_minus_s2))
}

/// Weight under which the `U*_n` are orthogonal on `[0, ∞)`: `4√x / (x+1)³`.
pub fn rcs_weight(x: f64) -> f64 {
    4.0 * x.sqrt() / (x + 1.0).powi(3)
}

/// Gauss rule for `∫_{-1}^{1} f(s) √(1-s²) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * f(s))
            .sum()
    }
}

/// Nodes are the zeros `cos(kπ/(n+1))` of `U_n`, weights `π/(n+1)·sin²(kπ/(n+1))`.
/// Exact for polynomials of degree `≤ 2n - 1`.
pub fn gauss_chebyshev2(n_nodes: usize) -> Result<QuadratureRule> {
    if n_nodes == 0 {
        return Err(domain("a quadrature rule needs at least one node"));
    }
    let h = PI / (n_nodes as f64 + 1.0);
    let (nodes, weights) = (1..=n_nodes)
        .map(|k| {
            let theta = k as f64 * h;
            (theta.cos(), h * theta.sin().powi(2))
        })
        .unzip();
    Ok(QuadratureRule { nodes, weights })
}

/// `⟨U*_i, U*_j⟩` under [`rcs_weight`], evaluated on the half line.
///
/// The integral is pulled back to `[-1, 1]` through `x = (1+s)/(1-s)`; the
/// factor `w*(x)·dx/ds` is divided by the rule's own weight `√(1-s²)` at each
/// node, so a wrong half-line weight shows up as a wrong inner product.
pub fn inner_product_rcs(i: usize, j: usize, n_nodes: usize) -> Result<f64> {
    if n_nodes <= i + j {
        return Err(Error::InsufficientNodes {
            nodes: n_nodes,
            degree: i + j,
        });
    }
    let rule = gauss_chebyshev2(n_nodes)?;
    let n_max = i.max(j);
    let mut total = 0.0;
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let p = MappedPoint::from_s(s)?;
        let dx_ds = 2.0 / ((1.0 - s) * (1.0 - s));
        let rule_weight = (1.0 - s * s).sqrt();
        let b = eval_rcs(n_max, p.x)?;
        total += w * b.values[i] * b.values[j] * rcs_weight(p.x) * dx_ds / rule_weight;
    }
    Ok(total)
}
