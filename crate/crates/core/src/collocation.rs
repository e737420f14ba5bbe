//! Collocation nodes and assembly of the residual vector and its Jacobian.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::problem::LaneEmdenProblem;
use crate::trial::{ShapeFunctions, TrialEval};

/// How the `N+1` nodes are spread over `(0, q]`. Neither variant places a node at the singular point `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeDistribution {
    /// `x_j = q(j+1)/(N+1)`.
    Uniform,
    /// Chebyshev–Lobatto points of the mapped coordinate `s = (x-1)/(x+1)`
    /// on `[s(0), s(q)]`, with the `s = -1` end dropped.
    #[default]
    MappedChebyshev,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub q: f64,
    pub n: usize,
    pub distribution: NodeDistribution,
    pub nodes: Vec<f64>,
}

/// Uniform nodes `q(j+1)/(N+1)`, `j = 0..=N`.
pub fn make_nodes(q: f64, n: usize) -> Result<NodeSet> {
    make_nodes_with(q, n, NodeDistribution::Uniform)
}

pub fn make_nodes_with(q: f64, n: usize, distribution: NodeDistribution) -> Result<NodeSet> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(domain(format!(
            "collocation endpoint q = {q} must be positive"
        )));
    }
    if n < 1 {
        return Err(domain("truncation N must be at least 1"));
    }
    let count = n + 1;
    let nodes = match distribution {
        NodeDistribution::Uniform => (1..=count).map(|j| q * j as f64 / count as f64).collect(),
        NodeDistribution::MappedChebyshev => {
            let s_q = (q - 1.0) / (q + 1.0);
            (1..=count)
                .map(|j| {
                    if j == count {
                        return q;
                    }
                    let t = 0.5 * (1.0 - (j as f64 * PI / count as f64).cos());
                    let s = -1.0 + (s_q + 1.0) * t;
                    (1.0 + s) / (1.0 - s)
                })
                .collect()
        }
    };
    Ok(NodeSet {
        q,
        n,
        distribution,
        nodes,
    })
}

/// The square system `Res(x_j; a) = 0`, `j = 0..=N`, with shape functions cached per node.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub problem: LaneEmdenProblem,
    pub nodes: NodeSet,
    shapes: Vec<ShapeFunctions>,
}

/// Magnitudes of the individual terms of one residual evaluation; used to
/// bound the round-off in the residual itself.
#[derive(Debug, Clone, Copy)]
pub struct ResidualScale(pub f64);

impl CollocationSystem {
    pub fn new(problem: LaneEmdenProblem, nodes: NodeSet) -> Result<Self> {
        problem.validate()?;
        let shapes = nodes
            .nodes
            .iter()
            .map(|&x| ShapeFunctions::at(nodes.n, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            problem,
            nodes,
            shapes,
        })
    }

    pub fn n(&self) -> usize {
        self.nodes.n
    }

    pub fn unknowns(&self) -> usize {
        self.nodes.n + 1
    }

    fn check_len(&self, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() != self.unknowns() {
            return Err(Error::LengthMismatch {
                expected: self.unknowns(),
                got: coeffs.len(),
            });
        }
        Ok(())
    }

    fn trial(&self, j: usize, coeffs: &[f64]) -> TrialEval {
        let x = self.nodes.nodes[j];
        self.shapes[j].combine(x, self.problem.a, self.problem.b, coeffs)
    }

    /// Residual at an arbitrary `x > 0`.
    pub fn residual_at(&self, coeffs: &[f64], x: f64) -> Result<f64> {
        self.check_len(coeffs)?;
        if !(x > 0.0) {
            return Err(domain(format!(
                "residual is evaluated at x > 0 only, got {x}"
            )));
        }
        let t = ShapeFunctions::at(self.n(), x)?.combine(x, self.problem.a, self.problem.b, coeffs);
        let r = self.problem.residual(x, t.u, t.du, t.ddu);
        if !r.is_finite() {
            return Err(domain(format!(
                "nonlinearity is not finite at u({x}) = {}",
                t.u
            )));
        }
        Ok(r)
    }

    pub fn residual_vector(&self, coeffs: &[f64]) -> Result<DVector<f64>> {
        self.check_len(coeffs)?;
        Ok(DVector::from_iterator(
            self.unknowns(),
            self.nodes.nodes.iter().enumerate().map(|(j, &x)| {
                let t = self.trial(j, coeffs);
                self.problem.residual(x, t.u, t.du, t.ddu)
            }),
        ))
    }

    /// Residual vector and analytic Jacobian
    /// `∂Res_j/∂a_i = φᵢ''(x_j) + (α/x_j)φᵢ'(x_j) + f(x_j)·g'(u(x_j))·φᵢ(x_j)`.
    pub fn assemble(&self, coeffs: &[f64]) -> Result<(DVector<f64>, DMatrix<f64>)> {
        self.check_len(coeffs)?;
        let size = self.unknowns();
        let p = &self.problem;
        let mut residual = DVector::zeros(size);
        let mut jacobian = DMatrix::zeros(size, size);
        for (j, &x) in self.nodes.nodes.iter().enumerate() {
            let t = self.trial(j, coeffs);
            residual[j] = p.residual(x, t.u, t.du, t.ddu);
            let sh = &self.shapes[j];
            let damp = p.alpha / x;
            let react = (p.f)(x) * (p.dg)(t.u);
            for i in 0..size {
                jacobian[(j, i)] = sh.ddphi[i] + damp * sh.dphi[i] + react * sh.phi[i];
            }
        }
        Ok((residual, jacobian))
    }

    /// Largest sum of absolute term sizes over the nodes.
    pub fn residual_scale(&self, coeffs: &[f64]) -> Result<ResidualScale> {
        self.check_len(coeffs)?;
        let p = &self.problem;
        let mut worst: f64 = 0.0;
        for (j, &x) in self.nodes.nodes.iter().enumerate() {
            let sh = &self.shapes[j];
            let abs_dot = |v: &[f64]| {
                v.iter()
                    .zip(coeffs)
                    .map(|(a, c)| (a * c).abs())
                    .sum::<f64>()
            };
            let u = self.trial(j, coeffs).u;
            let damp = p.alpha / x;
            let total = abs_dot(&sh.ddphi)
                + damp * (p.b.abs() + abs_dot(&sh.dphi))
                + ((p.f)(x) * (p.g)(u)).abs()
                + (p.h)(x).abs();
            worst = worst.max(total);
        }
        Ok(ResidualScale(worst))
    }
}
