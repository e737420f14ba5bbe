//! The boundary-embedded approximant `u(x) = A + Bx + x²·Σ aᵢ U*ᵢ(x)`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::{eval_rcs, BasisEval};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSolution {
    pub problem: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub q: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialEval {
    pub u: f64,
    pub du: f64,
    pub ddu: f64,
}

/// `φᵢ = x²U*ᵢ` and its first two derivatives at a point.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ShapeFunctions {
    pub phi: Vec<f64>,
    pub dphi: Vec<f64>,
    pub ddphi: Vec<f64>,
}

impl ShapeFunctions {
    pub fn at(n: usize, x: f64) -> Result<Self> {
        let BasisEval { values, d1, d2, .. } = eval_rcs(n, x)?;
        let x2 = x * x;
        let phi = values.iter().map(|u| x2 * u).collect();
        let dphi = values
            .iter()
            .zip(&d1)
            .map(|(u, du)| 2.0 * x * u + x2 * du)
            .collect();
        let ddphi = values
            .iter()
            .zip(&d1)
            .zip(&d2)
            .map(|((u, du), ddu)| 2.0 * u + 4.0 * x * du + x2 * ddu)
            .collect();
        Ok(Self { phi, dphi, ddphi })
    }

    pub fn combine(&self, x: f64, a: f64, b: f64, coeffs: &[f64]) -> TrialEval {
        let dot = |v: &[f64]| v.iter().zip(coeffs).map(|(p, c)| p * c).sum::<f64>();
        TrialEval {
            u: a + b * x + dot(&self.phi),
            du: b + dot(&self.dphi),
            ddu: dot(&self.ddphi),
        }
    }
}

impl SpectralSolution {
    pub fn new(
        problem: impl Into<String>,
        q: f64,
        a: f64,
        b: f64,
        coeffs: Vec<f64>,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain("a solution needs at least one coefficient"));
        }
        Ok(Self {
            problem: problem.into(),
            n: coeffs.len() - 1,
            q,
            a,
            b,
            coeffs,
        })
    }

    pub fn eval(&self, x: f64) -> Result<TrialEval> {
        if self.coeffs.len() != self.n + 1 {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got: self.coeffs.len(),
            });
        }
        let shapes = ShapeFunctions::at(self.n, x)?;
        Ok(shapes.combine(x, self.a, self.b, &self.coeffs))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval(x)?.u)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sol: Self = serde_json::from_str(text)?;
        if sol.coeffs.len() != sol.n + 1 {
            return Err(Error::LengthMismatch {
                expected: sol.n + 1,
                got: sol.coeffs.len(),
            });
        }
        Ok(sol)
    }

    /// Reads a solution document. Extra report fields (iterations, ...) are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

pub fn eval_trial(sol: &SpectralSolution, x: f64) -> Result<TrialEval> {
    sol.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sol(coeffs: Vec<f64>, a: f64, b: f64) -> SpectralSolution {
        SpectralSolution::new("test", 2.0, a, b, coeffs).unwrap()
    }

    #[test]
    fn zero_coefficients_give_boundary_polynomial() {
        let s = sol(vec![0.0; 6], 1.0, 0.0);
        for x in [0.0, 0.3, 4.0, 100.0] {
            assert_eq!(
                s.eval(x).unwrap(),
                TrialEval {
                    u: 1.0,
                    du: 0.0,
                    ddu: 0.0
                }
            );
        }
    }

    #[test]
    fn leading_coefficient_is_a_pure_quadratic() {
        let c = -0.25;
        let mut coeffs = vec![0.0; 5];
        coeffs[0] = c;
        let s = sol(coeffs, 1.0, 0.0);
        assert_eq!(s.eval(0.0).unwrap().ddu, 2.0 * c);
        for x in [0.1, 1.0, 3.0] {
            assert!((s.value(x).unwrap() - (1.0 + c * x * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn negative_x_is_rejected() {
        assert!(matches!(
            sol(vec![1.0], 0.0, 0.0).eval(-1e-3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = sol(vec![0.5, -0.25], 1.0, 0.0);
        let v: serde_json::Value = serde_json::from_str(&s.to_json().unwrap()).unwrap();
        for key in ["problem", "N", "q", "A", "B", "coeffs"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["N"], 1);
        let bad = r#"{"problem":"p","N":3,"q":1.0,"A":0.0,"B":0.0,"coeffs":[1.0]}"#;
        assert!(matches!(
            SpectralSolution::from_json(bad),
            Err(Error::LengthMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn boundary_values_hold_exactly(
            coeffs in proptest::collection::vec(-10.0_f64..10.0, 1..30),
            a in -5.0_f64..5.0,
            b in -5.0_f64..5.0,
        ) {
            let s = sol(coeffs, a, b);
            let e = s.eval(0.0).unwrap();
            prop_assert_eq!(e.u, a);
            prop_assert_eq!(e.du, b);
        }

        #[test]
        fn derivatives_match_finite_differences(
            coeffs in proptest::collection::vec(-1.0_f64..1.0, 1..25),
            x in 0.1_f64..8.0,
        ) {
            let s = sol(coeffs, 1.0, 0.5);
            let h = 1e-5;
            let (e, ep, em) = (s.eval(x).unwrap(), s.eval(x + h).unwrap(), s.eval(x - h).unwrap());
            let fd1 = (ep.u - em.u) / (2.0 * h);
            let fd2 = (ep.du - em.du) / (2.0 * h);
            // scale by the size of the individual terms so cancellations don't demand 0/0 accuracy
            let n = s.n as f64 + 1.0;
            let terms: f64 = s.coeffs.iter().map(|c| c.abs()).sum::<f64>() * n * n * (1.0 + x);
            prop_assert!((fd1 - e.du).abs() <= 1e-6 * e.du.abs().max(terms), "du");
            prop_assert!((fd2 - e.ddu).abs() <= 1e-6 * e.ddu.abs().max(terms * n), "ddu");
        }
    }
}
