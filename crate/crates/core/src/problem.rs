//! Lane-Emden type problems `y'' + (α/x)y' + f(x)g(y) = h(x)`, `y(0)=A`, `y'(0)=B`.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Floor applied to the argument of `y ln y` so early Newton iterates stay in its domain.
pub const LOG_CLAMP: f64 = 1e-300;

pub const BUILTIN_NAMES: [&str; 6] = [
    "isothermal",
    "sinh",
    "sin",
    "exp_mix",
    "log6",
    "linear_poly",
];

const STANDARD_PREFIX: &str = "lane-emden-m";

#[derive(Clone)]
pub struct LaneEmdenProblem {
    pub name: String,
    pub alpha: f64,
    pub f: ScalarFn,
    pub g: ScalarFn,
    /// Derivative of `g` with respect to `y`; feeds the Newton Jacobian.
    pub dg: ScalarFn,
    pub h: ScalarFn,
    pub a: f64,
    pub b: f64,
    /// Polytropic index, set only for the standard family.
    pub m: Option<f64>,
    pub default_q: f64,
    pub default_n: usize,
}

impl fmt::Debug for LaneEmdenProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaneEmdenProblem")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("m", &self.m)
            .field("default_q", &self.default_q)
            .field("default_n", &self.default_n)
            .finish_non_exhaustive()
    }
}

fn constant(c: f64) -> ScalarFn {
    Arc::new(move |_| c)
}

impl LaneEmdenProblem {
    /// A problem with `f ≡ 1`, `h ≡ 0`, `N = 20`, `q = 1`; adjust with the `with_*` builders.
    pub fn new(
        name: impl Into<String>,
        alpha: f64,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dg: impl Fn(f64) -> f64 + Send + Sync + 'static,
        a: f64,
        b: f64,
    ) -> Self {
        Self {
            name: name.into(),
            alpha,
            f: constant(1.0),
            g: Arc::new(g),
            dg: Arc::new(dg),
            h: constant(0.0),
            a,
            b,
            m: None,
            default_q: 1.0,
            default_n: 20,
        }
    }

    pub fn with_f(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.f = Arc::new(f);
        self
    }

    pub fn with_h(mut self, h: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.h = Arc::new(h);
        self
    }

    pub fn with_defaults(mut self, q: f64, n: usize) -> Self {
        self.default_q = q;
        self.default_n = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) {
            return Err(domain(format!(
                "alpha = {} must be non-negative",
                self.alpha
            )));
        }
        if !(self.default_q > 0.0) || !self.default_q.is_finite() {
            return Err(domain(format!(
                "default q = {} must be positive",
                self.default_q
            )));
        }
        if self.default_n < 4 {
            return Err(domain(format!(
                "default N = {} must be at least 4",
                self.default_n
            )));
        }
        Ok(())
    }

    /// Left-hand side minus right-hand side for a given `(y, y', y'')` at `x > 0`.
    pub fn residual(&self, x: f64, y: f64, dy: f64, ddy: f64) -> f64 {
        ddy + self.alpha / x * dy + (self.f)(x) * (self.g)(y) - (self.h)(x)
    }
}

/// Default collocation endpoint for the standard family.
///
/// For fractional `m` the solution is not smooth at its first zero, so the
/// endpoints for `m = 1.5` and `m = 2.5` sit only just past it.
pub fn standard_default_q(m: f64) -> f64 {
    const TABLE: [(f64, f64); 7] = [
        (0.0, 2.5),
        (1.0, 3.2),
        (1.5, 3.67),
        (2.0, 5.0),
        (2.5, 5.38),
        (3.0, 7.5),
        (4.0, 16.0),
    ];
    if m == 5.0 {
        return 10.0;
    }
    if m >= 4.0 {
        return 16.0;
    }
    for w in TABLE.windows(2) {
        let ((m0, q0), (m1, q1)) = (w[0], w[1]);
        if m == m0 {
            return q0;
        }
        if m > m0 && m < m1 {
            return q0 + (q1 - q0) * (m - m0) / (m1 - m0);
        }
    }
    16.0
}

pub fn standard_name(m: f64) -> String {
    format!("{STANDARD_PREFIX}{m}")
}

/// `y'' + (2/x)y' + y^m = 0`, `y(0) = 1`, `y'(0) = 0`.
///
/// Integer `m` uses the plain power. Fractional `m` uses `sign(y)|y|^m` so
/// iterates that dip below zero near the first zero keep a real residual.
pub fn standard_lane_emden(m: f64) -> Result<LaneEmdenProblem> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(domain(format!(
            "polytropic index m = {m} must be a non-negative number"
        )));
    }
    let mut p = if m.fract() == 0.0 && m <= i32::MAX as f64 {
        let k = m as i32;
        LaneEmdenProblem::new(
            standard_name(m),
            2.0,
            move |y: f64| y.powi(k),
            move |y: f64| {
                if k == 0 {
                    0.0
                } else {
                    k as f64 * y.powi(k - 1)
                }
            },
            1.0,
            0.0,
        )
    } else {
        LaneEmdenProblem::new(
            standard_name(m),
            2.0,
            move |y: f64| y.signum() * y.abs().powf(m),
            move |y: f64| m * y.abs().powf(m - 1.0),
            1.0,
            0.0,
        )
    };
    p.m = Some(m);
    p.default_q = standard_default_q(m);
    p.default_n = 20;
    Ok(p)
}

fn log6_g(y: f64) -> f64 {
    let y = y.max(LOG_CLAMP);
    -6.0 * y - 4.0 * y * y.ln()
}

fn log6_dg(y: f64) -> f64 {
    let y = y.max(LOG_CLAMP);
    -10.0 - 4.0 * y.ln()
}

pub fn builtin(name: &str) -> Result<LaneEmdenProblem> {
    let p =
        match name {
            "isothermal" => LaneEmdenProblem::new(name, 2.0, f64::exp, f64::exp, 0.0, 0.0)
                .with_defaults(2.5, 40),
            "sinh" => LaneEmdenProblem::new(name, 2.0, f64::sinh, f64::cosh, 1.0, 0.0)
                .with_defaults(2.0, 20),
            "sin" => LaneEmdenProblem::new(name, 2.0, f64::sin, f64::cos, 1.0, 0.0)
                .with_defaults(2.0, 20),
            "exp_mix" => LaneEmdenProblem::new(
                name,
                2.0,
                |y: f64| 4.0 * (2.0 * y.exp() + (0.5 * y).exp()),
                |y: f64| 4.0 * (2.0 * y.exp() + 0.5 * (0.5 * y).exp()),
                0.0,
                0.0,
            )
            .with_defaults(10.0, 46),
            "log6" => {
                LaneEmdenProblem::new(name, 2.0, log6_g, log6_dg, 1.0, 0.0).with_defaults(1.0, 40)
            }
            "linear_poly" => LaneEmdenProblem::new(name, 2.0, |y| y, |_| 1.0, 1.0, 0.0)
                .with_f(|x| -2.0 * (2.0 * x * x + 3.0))
                .with_defaults(1.0, 40),
            _ => {
                return Err(Error::UnknownName {
                    kind: "problem",
                    name: name.to_string(),
                })
            }
        };
    Ok(p)
}

/// Resolves a builtin name or a standard-family name such as `lane-emden-m2.5`.
pub fn by_name(name: &str) -> Result<LaneEmdenProblem> {
    if let Some(m) = name.strip_prefix(STANDARD_PREFIX) {
        let m: f64 = m.parse().map_err(|_| Error::UnknownName {
            kind: "problem",
            name: name.to_string(),
        })?;
        return standard_lane_emden(m);
    }
    builtin(name)
}
