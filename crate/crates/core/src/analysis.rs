//! Post-processing of solved coefficients: zeros, error tables, coefficient decay.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::format::sci;
use crate::reference::{ReferenceKind, ReferenceSolution};
use crate::trial::SpectralSolution;

pub const SCAN_POINTS: usize = 2000;
const BISECTION_WIDTH: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    Bisection,
    NewtonPolish,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroResult {
    pub x_zero: f64,
    pub bracket: (f64, f64),
    pub refined_by: Refinement,
    /// u at `x_zero`.
    pub residual_value: f64,
}

pub fn first_zero(sol: &SpectralSolution, search_to: f64) -> Result<ZeroResult> {
    first_zero_with_resolution(sol, search_to, SCAN_POINTS)
}

/// Brackets the first sign change on a uniform scan, bisects, then tries one
/// Newton step that is kept only if it stays inside the bracket and lowers |u|.
pub fn first_zero_with_resolution(
    sol: &SpectralSolution,
    search_to: f64,
    points: usize,
) -> Result<ZeroResult> {
    if !(search_to > 0.0) || !search_to.is_finite() {
        return Err(domain(format!(
            "search interval end must be positive, got {search_to}"
        )));
    }
    if points < 2 {
        return Err(domain("the scan needs at least two points"));
    }
    let u = |x: f64| sol.value(x);
    let mut lo = 0.0;
    let mut u_lo = u(lo)?;
    if u_lo == 0.0 {
        return Err(domain("u(0) = 0; the first zero is not isolated"));
    }
    let mut hi = None;
    for k in 1..=points {
        let x = search_to * k as f64 / points as f64;
        let ux = u(x)?;
        if ux == 0.0 {
            return Ok(ZeroResult {
                x_zero: x,
                bracket: (lo, x),
                refined_by: Refinement::Bisection,
                residual_value: 0.0,
            });
        }
        if ux.signum() != u_lo.signum() {
            hi = Some(x);
            break;
        }
        lo = x;
        u_lo = ux;
    }
    let mut hi = hi.ok_or(Error::NoZeroFound { search_to })?;
    let bracket_lo = lo;
    let bracket_hi = hi;

    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let um = u(mid)?;
        if um == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if um.signum() == u_lo.signum() {
            lo = mid;
            u_lo = um;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let mut ux = u(x)?;
    let mut refined_by = Refinement::Bisection;
    let e = sol.eval(x)?;
    if e.du != 0.0 {
        let cand = x - e.u / e.du;
        if cand > bracket_lo && cand < bracket_hi {
            let uc = u(cand)?;
            if uc.abs() < ux.abs() {
                x = cand;
                ux = uc;
                refined_by = Refinement::NewtonPolish;
            }
        }
    }
    Ok(ZeroResult {
        x_zero: x,
        bracket: (bracket_lo, bracket_hi),
        refined_by,
        residual_value: ux,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub x: f64,
    pub y_method: f64,
    pub y_reference: f64,
    pub abs_error: f64,
    #[serde(skip)]
    pub anomalous: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    pub fn max_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y_method", "y_reference", "abs_error"])?;
        for r in &self.rows {
            w.write_record([
                sci(r.x),
                sci(r.y_method),
                sci(r.y_reference),
                sci(r.abs_error),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn error_table(
    sol: &SpectralSolution,
    reference: &ReferenceSolution,
    xs: &[f64],
) -> Result<ErrorTable> {
    let rows = xs
        .iter()
        .map(|&x| {
            let y_reference = reference.value(x)?;
            let y_method = sol.value(x)?;
            let anomalous = reference.kind == ReferenceKind::Tabulated
                && reference.row(x).is_some_and(|r| r.anomalous);
            Ok(ErrorRow {
                x,
                y_method,
                y_reference,
                abs_error: (y_method - y_reference).abs(),
                anomalous,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ErrorTable { rows })
}

/// Compares two solutions pointwise; the second plays the reference role.
pub fn compare_solutions(
    a: &SpectralSolution,
    b: &SpectralSolution,
    xs: &[f64],
) -> Result<ErrorTable> {
    let rows = xs
        .iter()
        .map(|&x| {
            let (ya, yb) = (a.value(x)?, b.value(x)?);
            Ok(ErrorRow {
                x,
                y_method: ya,
                y_reference: yb,
                abs_error: (ya - yb).abs(),
                anomalous: false,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ErrorTable { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub indices: Vec<usize>,
    pub magnitudes: Vec<f64>,
    /// max |aᵢ| over the last quarter divided by max |aᵢ| over the first quarter.
    pub ratio: f64,
}

impl DecayProfile {
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "abs_coeff"])?;
        for (i, a) in self.indices.iter().zip(&self.magnitudes) {
            w.write_record([i.to_string(), sci(*a)])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn decay_profile(sol: &SpectralSolution) -> Result<DecayProfile> {
    if sol.n < 8 {
        return Err(domain(format!("decay profile needs N >= 8, got {}", sol.n)));
    }
    decay_of(&sol.coeffs)
}

/// Decay profile of a bare coefficient list of length at least 9.
pub fn decay_of(coeffs: &[f64]) -> Result<DecayProfile> {
    let len = coeffs.len();
    if len < 9 {
        return Err(domain(format!(
            "decay profile needs at least 9 coefficients, got {len}"
        )));
    }
    let magnitudes: Vec<f64> = coeffs.iter().map(|a| a.abs()).collect();
    let quarter = len / 4;
    let max = |s: &[f64]| s.iter().copied().fold(0.0, f64::max);
    let head = max(&magnitudes[..quarter]);
    let tail = max(&magnitudes[len - quarter..]);
    let ratio = if tail == 0.0 { 0.0 } else { tail / head };
    Ok(DecayProfile {
        indices: (0..len).collect(),
        magnitudes,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collocation::NodeDistribution;
    use crate::newton::{solve, NewtonConfig};
    use crate::problem::standard_lane_emden;
    use crate::reference::{exact, polytrope_table};
    use proptest::prelude::*;

    fn solve_m(m: f64, n: usize, q: f64) -> SpectralSolution {
        let p = standard_lane_emden(m).unwrap();
        solve(
            &p,
            n,
            q,
            NodeDistribution::default(),
            &NewtonConfig::default(),
            false,
        )
        .unwrap()
        .solution
    }

    fn quadratic() -> SpectralSolution {
        let mut c = vec![0.0; 11];
        c[0] = -1.0 / 6.0;
        SpectralSolution::new("lane-emden-m0", 3.0, 1.0, 0.0, c).unwrap()
    }

    #[test]
    fn zero_of_exact_quadratic() {
        let z = first_zero(&quadratic(), 3.0).unwrap();
        assert!((z.x_zero - 6f64.sqrt()).abs() < 1e-9);
        assert!(z.bracket.0 < z.x_zero && z.x_zero < z.bracket.1);
        assert!(z.residual_value.abs() <= 1e-10);
    }

    #[test]
    fn zero_of_sinc() {
        let z = first_zero(&solve_m(1.0, 20, 3.2), 3.2).unwrap();
        assert!(
            (z.x_zero - std::f64::consts::PI).abs() < 1e-9,
            "{}",
            z.x_zero
        );
    }

    #[test]
    fn zero_for_m2() {
        let z = first_zero(&solve_m(2.0, 20, 5.0), 5.0).unwrap();
        assert!((z.x_zero - 4.35287460).abs() <= 5e-7, "{}", z.x_zero);
        let z2 = first_zero_with_resolution(&solve_m(2.0, 20, 5.0), 5.0, 4000).unwrap();
        assert!((z.x_zero - z2.x_zero).abs() <= 1e-9);
    }

    #[test]
    fn no_zero_for_m5() {
        let sol = solve_m(5.0, 20, 10.0);
        assert!(matches!(
            first_zero(&sol, 10.0),
            Err(Error::NoZeroFound { .. })
        ));
        assert!(first_zero(&sol, 0.0).is_err());
    }

    #[test]
    fn tables() {
        let sol = solve_m(2.0, 20, 5.0);
        let t = error_table(&sol, &polytrope_table("m2").unwrap(), &[1.0]).unwrap();
        assert!(t.rows[0].abs_error <= 1e-7);
        assert!(matches!(
            error_table(&sol, &polytrope_table("m2").unwrap(), &[1.1]),
            Err(Error::AbscissaMismatch { .. })
        ));
        let same = compare_solutions(&sol, &sol, &[0.0, 1.0, 4.0]).unwrap();
        assert_eq!(same.max_error(), 0.0);
        let q = quadratic();
        let t = error_table(&q, &exact("m0").unwrap(), &[0.0, 0.5, 2.0]).unwrap();
        assert!(t.max_error() < 1e-15);
    }

    #[test]
    fn anomalous_rows_carried_through() {
        let sol = solve_m(4.0, 20, 16.0);
        let t = error_table(&sol, &polytrope_table("m4").unwrap(), &[0.1, 0.5]).unwrap();
        assert!(t.rows[0].anomalous && !t.rows[1].anomalous);
    }

    #[test]
    fn error_csv_layout() {
        let t = error_table(&quadratic(), &exact("m0").unwrap(), &[1.0]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y_method,y_reference,abs_error"));
        assert!(lines
            .next()
            .unwrap()
            .starts_with("1.00000000E+00,8.33333333E-01,8.33333333E-01,"));
    }

    #[test]
    fn decay() {
        let mut c = vec![0.0; 21];
        c[0] = 0.3;
        let sol = SpectralSolution::new("c", 1.0, 1.0, 0.0, c).unwrap();
        let d = decay_profile(&sol).unwrap();
        assert_eq!(d.ratio, 0.0);
        assert_eq!(d.indices.len(), 21);
        let short = SpectralSolution::new("c", 1.0, 1.0, 0.0, vec![1.0; 8]).unwrap();
        assert!(decay_profile(&short).is_err());
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i,abs_coeff\n0,3.00000000E-01\n"));
    }

    #[test]
    fn geometric_decay_ratio() {
        let c: Vec<f64> = (0..21).map(|i| 0.5f64.powi(i)).collect();
        let d = decay_of(&c).unwrap();
        assert!((d.ratio - 0.5f64.powi(16)).abs() < 1e-18);
    }

    proptest! {
        #[test]
        fn abs_error_symmetric_and_nonnegative(
            ca in proptest::collection::vec(-0.2_f64..0.2, 6),
            cb in proptest::collection::vec(-0.2_f64..0.2, 6),
            x in 0.0_f64..4.0,
        ) {
            let a = SpectralSolution::new("a", 4.0, 1.0, 0.0, ca).unwrap();
            let b = SpectralSolution::new("b", 4.0, 1.0, 0.0, cb).unwrap();
            let ab = compare_solutions(&a, &b, &[x]).unwrap().rows[0].abs_error;
            let ba = compare_solutions(&b, &a, &[x]).unwrap().rows[0].abs_error;
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, ba);
        }
    }
}
