//! Ground truth for comparisons: closed forms, truncated series and tabulated values.

use std::io::Write;

use crate::error::{domain, Error, Result};
use crate::format::sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    ClosedForm,
    Series,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub x: f64,
    pub y: f64,
    /// Row is kept as printed but known to be wrong; skipped by tight checks.
    pub anomalous: bool,
}

/// `(y, y', y'')` at x.
pub type Jet = (f64, f64, f64);

#[derive(Debug, Clone)]
pub struct ReferenceSolution {
    pub name: String,
    pub kind: ReferenceKind,
    /// Largest x where `value` is trusted. Infinite for closed forms.
    pub valid_to: f64,
    jet: Option<fn(f64) -> Jet>,
    pub table: Vec<TableRow>,
}

impl ReferenceSolution {
    fn analytic(name: &str, kind: ReferenceKind, valid_to: f64, jet: fn(f64) -> Jet) -> Self {
        Self {
            name: name.into(),
            kind,
            valid_to,
            jet: Some(jet),
            table: Vec::new(),
        }
    }

    fn tabulated(name: &str, rows: &[(f64, f64)], anomalous: &[f64]) -> Self {
        let table = rows
            .iter()
            .map(|&(x, y)| TableRow {
                x,
                y,
                anomalous: anomalous.contains(&x),
            })
            .collect();
        Self {
            name: name.into(),
            kind: ReferenceKind::Tabulated,
            valid_to: rows.last().map_or(0.0, |r| r.0),
            jet: None,
            table,
        }
    }

    /// Value and derivatives; closed forms and series only.
    pub fn jet(&self, x: f64) -> Result<Jet> {
        let f = self
            .jet
            .ok_or_else(|| domain(format!("{} is tabulated and has no derivatives", self.name)))?;
        if !(x >= 0.0) || x > self.valid_to {
            return Err(domain(format!(
                "{} is valid on [0, {}], got x = {x}",
                self.name, self.valid_to
            )));
        }
        Ok(f(x))
    }

    /// Value at x. Tabulated references require x to be one of the printed abscissae.
    pub fn value(&self, x: f64) -> Result<f64> {
        match self.kind {
            ReferenceKind::Tabulated => self
                .table
                .iter()
                .find(|r| r.x == x)
                .map(|r| r.y)
                .ok_or_else(|| Error::AbscissaMismatch {
                    x,
                    reference: self.name.clone(),
                }),
            _ => Ok(self.jet(x)?.0),
        }
    }

    pub fn row(&self, x: f64) -> Option<&TableRow> {
        self.table.iter().find(|r| r.x == x)
    }

    /// Writes `x,y` rows. Analytic references are sampled at `xs`.
    pub fn write_csv(&self, out: impl Write, xs: &[f64]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y"])?;
        let rows: Vec<(f64, f64)> = if self.kind == ReferenceKind::Tabulated {
            self.table.iter().map(|r| (r.x, r.y)).collect()
        } else {
            xs.iter()
                .map(|&x| Ok((x, self.value(x)?)))
                .collect::<Result<_>>()?
        };
        for (x, y) in rows {
            w.write_record([sci(x), sci(y)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Accepts both `m2` and `lane-emden-m2`.
fn short_name(name: &str) -> &str {
    name.strip_prefix("lane-emden-").unwrap_or(name)
}

fn m0(x: f64) -> Jet {
    (1.0 - x * x / 6.0, -x / 3.0, -1.0 / 3.0)
}

fn m1(x: f64) -> Jet {
    if x < 0.5 {
        // sin(x)/x = Σ (-1)^k x^{2k}/(2k+1)!, summed directly to avoid cancellation
        let (mut y, mut dy, mut ddy) = (0.0, 0.0, 0.0);
        let mut c = 1.0;
        for k in 0..12 {
            let p = 2 * k;
            y += c * x.powi(p);
            if p >= 1 {
                dy += c * p as f64 * x.powi(p - 1);
            }
            if p >= 2 {
                ddy += c * (p * (p - 1)) as f64 * x.powi(p - 2);
            }
            c /= -(((p + 2) * (p + 3)) as f64);
        }
        return (y, dy, ddy);
    }
    let (s, c) = x.sin_cos();
    (
        s / x,
        (x * c - s) / (x * x),
        -s / x - 2.0 * c / (x * x) + 2.0 * s / (x * x * x),
    )
}

fn m5(x: f64) -> Jet {
    let b = 1.0 + x * x / 3.0;
    (
        b.powf(-0.5),
        -x / 3.0 * b.powf(-1.5),
        -b.powf(-1.5) / 3.0 + x * x / 3.0 * b.powf(-2.5),
    )
}

fn exp_mix(x: f64) -> Jet {
    let b = 1.0 + x * x;
    (-2.0 * b.ln(), -4.0 * x / b, -4.0 * (1.0 - x * x) / (b * b))
}

fn exp_square(x: f64) -> Jet {
    let e = (x * x).exp();
    (e, 2.0 * x * e, (2.0 + 4.0 * x * x) * e)
}

pub const EXACT_NAMES: [&str; 6] = ["m0", "m1", "m5", "exp_mix", "log6", "linear_poly"];

pub fn exact(name: &str) -> Result<ReferenceSolution> {
    let short = short_name(name);
    let jet: fn(f64) -> Jet = match short {
        "m0" => m0,
        "m1" => m1,
        "m5" => m5,
        "exp_mix" => exp_mix,
        "log6" | "linear_poly" => exp_square,
        _ => {
            return Err(Error::UnknownName {
                kind: "closed-form solution",
                name: name.into(),
            })
        }
    };
    Ok(ReferenceSolution::analytic(
        short,
        ReferenceKind::ClosedForm,
        f64::INFINITY,
        jet,
    ))
}

/// Even polynomial Σ c_k x^{2k} with derivatives.
fn even_poly(c: &[f64], x: f64) -> Jet {
    let (mut y, mut dy, mut ddy) = (0.0, 0.0, 0.0);
    for (k, &ck) in c.iter().enumerate() {
        let p = 2 * k as i32;
        y += ck * x.powi(p);
        if p >= 1 {
            dy += ck * p as f64 * x.powi(p - 1);
        }
        if p >= 2 {
            ddy += ck * (p * (p - 1)) as f64 * x.powi(p - 2);
        }
    }
    (y, dy, ddy)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn isothermal_series(x: f64) -> Jet {
    let c = [
        0.0,
        -1.0 / 6.0,
        1.0 / (5.0 * factorial(4)),
        -8.0 / (21.0 * factorial(6)),
        122.0 / (81.0 * factorial(8)),
        -(61.0 * 67.0) / (459.0 * factorial(10)),
    ];
    even_poly(&c, x)
}

fn sinh_series(x: f64) -> Jet {
    let e = std::f64::consts::E;
    let c = [
        1.0,
        -(e * e - 1.0) / (12.0 * e),
        (e.powi(4) - 1.0) / (480.0 * e * e),
        -(2.0 * e.powi(6) - 3.0 * e.powi(4) + 3.0 * e * e - 2.0) / (30240.0 * e.powi(3)),
        (61.0 * e.powi(8) - 104.0 * e.powi(6) + 104.0 * e * e - 61.0) / (26127360.0 * e.powi(4)),
    ];
    even_poly(&c, x)
}

fn sin_series(x: f64) -> Jet {
    let (k1, k2) = 1.0f64.sin_cos();
    let c = [
        1.0,
        -k1 / 6.0,
        k1 * k2 / 120.0,
        k1 * (k1 * k1 / 3024.0 - k2 * k2 / 5040.0),
        k1 * k2 * (-113.0 / 3265920.0 * k1 * k1 + k2 * k2 / 362880.0),
        k1 * (1781.0 / 898128000.0 * k1 * k1 * k2 * k2
            - k2.powi(4) / 39916800.0
            - 19.0 / 23950080.0 * k1.powi(4)),
    ];
    even_poly(&c, x)
}

pub const SERIES_NAMES: [&str; 3] = ["isothermal", "sinh", "sin"];

pub fn series(name: &str) -> Result<ReferenceSolution> {
    let (valid_to, jet): (f64, fn(f64) -> Jet) = match name {
        "isothermal" => (2.5, isothermal_series),
        "sinh" => (2.0, sinh_series),
        "sin" => (2.0, sin_series),
        _ => {
            return Err(Error::UnknownName {
                kind: "series solution",
                name: name.into(),
            })
        }
    };
    Ok(ReferenceSolution::analytic(
        name,
        ReferenceKind::Series,
        valid_to,
        jet,
    ))
}

pub fn series_value(name: &str, x: f64) -> Result<f64> {
    series(name)?.value(x)
}

/// `(m, first zero)` pairs.
pub const FIRST_ZEROS: [(f64, f64); 5] = [
    (1.5, 3.65375374),
    (2.0, 4.35287460),
    (2.5, 5.35527546),
    (3.0, 6.89684862),
    (4.0, 14.9715463),
];

pub fn first_zero_reference(m: f64) -> Option<f64> {
    FIRST_ZEROS.iter().find(|r| r.0 == m).map(|r| r.1)
}

const POLYTROPE_M1_5: [(f64, f64); 8] = [
    (0.0, 1.0),
    (0.1, 9.98334600E-01),
    (0.5, 9.59103900E-01),
    (1.0, 8.45169800E-01),
    (3.0, 1.58857600E-01),
    (3.6, 1.10909900E-02),
    (3.65, 7.63924200E-04),
    (3.6537537, 0.0),
];

const POLYTROPE_M2: [(f64, f64); 9] = [
    (0.0, 1.0),
    (0.1, 9.98335000E-01),
    (0.5, 9.59352700E-01),
    (1.0, 8.48654100E-01),
    (3.0, 2.41824100E-01),
    (4.0, 4.88401500E-02),
    (4.3, 6.81094300E-03),
    (4.35, 3.66030200E-04),
    (4.35287460, 0.0),
];

const POLYTROPE_M2_5: [(f64, f64); 9] = [
    (0.0, 1.0),
    (0.1, 9.98335400E-01),
    (0.5, 9.59597800E-01),
    (1.0, 8.51944200E-01),
    (4.0, 1.37680700E-01),
    (5.0, 2.90191900E-02),
    (5.3, 4.25954400E-03),
    (5.355, 2.10089000E-05),
    (5.35527546, 0.0),
];

const POLYTROPE_M3: [(f64, f64); 8] = [
    (0.0, 1.0),
    (0.1, 9.98335800E-01),
    (0.5, 9.59839100E-01),
    (1.0, 8.55057600E-01),
    (5.0, 1.10819800E-01),
    (6.0, 4.37380000E-02),
    (6.8, 4.16780000E-03),
    (6.9, 3.60000000E-05),
];

const POLYTROPE_M4: [(f64, f64); 9] = [
    (0.0, 1.0),
    (0.1, 9.98336700E-01),
    (0.2, 9.93386200E-01),
    (0.5, 9.60310900E-01),
    (1.0, 8.60813800E-01),
    (5.0, 2.35922700E-01),
    (10.0, 5.96727400E-02),
    (14.0, 8.33052700E-03),
    (14.9, 5.76418900E-04),
];

pub const POLYTROPE_TABLES: [&str; 6] = ["m1.5", "m2", "m2.5", "m3", "m4", "first_zeros"];

/// Printed values for polytropes; `first_zeros` holds `(m, zero)` rows.
pub fn polytrope_table(name: &str) -> Result<ReferenceSolution> {
    let short = short_name(name);
    Ok(match short {
        "m1.5" => ReferenceSolution::tabulated(short, &POLYTROPE_M1_5, &[]),
        "m2" => ReferenceSolution::tabulated(short, &POLYTROPE_M2, &[]),
        "m2.5" => ReferenceSolution::tabulated(short, &POLYTROPE_M2_5, &[]),
        // y(6.9) is about 1.9e-4 by direct integration, not 3.6e-5
        "m3" => ReferenceSolution::tabulated(short, &POLYTROPE_M3, &[6.9]),
        "m4" => ReferenceSolution::tabulated(short, &POLYTROPE_M4, &[0.1, 0.2]),
        "first_zeros" => ReferenceSolution::tabulated(short, &FIRST_ZEROS, &[]),
        _ => {
            return Err(Error::UnknownName {
                kind: "tabulated solution",
                name: name.into(),
            })
        }
    })
}

/// The series column printed alongside the isothermal, sinh and sin comparisons.
pub fn published_series_column(name: &str) -> Result<ReferenceSolution> {
    const ISO: [(f64, f64); 8] = [
        (0.0, 0.0),
        (0.1, -1.66583390E-03),
        (0.2, -6.65336710E-03),
        (0.5, -4.11539568E-02),
        (1.0, -1.58827354E-01),
        (1.5, -3.38013110E-01),
        (2.0, -5.59962660E-01),
        (2.5, -8.10019671E-01),
    ];
    const SINH: [(f64, f64); 7] = [
        (0.0, 0.0),
        (0.1, 9.98042841E-01),
        (0.2, 9.92189435E-01),
        (0.5, 9.51961102E-01),
        (1.0, 8.18251667E-01),
        (1.5, 6.25891608E-01),
        (2.0, 4.13669104E-01),
    ];
    const SIN: [(f64, f64); 7] = [
        (0.0, 1.0),
        (0.1, 9.98597936E-01),
        (0.2, 9.94396273E-01),
        (0.5, 9.65177789E-01),
        (1.0, 8.63681103E-01),
        (1.5, 7.05041925E-01),
        (2.0, 5.06372033E-01),
    ];
    match name {
        "isothermal" => Ok(ReferenceSolution::tabulated(name, &ISO, &[])),
        // y(0) = 1 by the initial condition; the printed 0 is a misprint
        "sinh" => Ok(ReferenceSolution::tabulated(name, &SINH, &[0.0])),
        "sin" => Ok(ReferenceSolution::tabulated(name, &SIN, &[])),
        _ => Err(Error::UnknownName {
            kind: "series column",
            name: name.into(),
        }),
    }
}

const EXP_MIX_XS: [f64; 14] = [
    0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0,
];
const EXP_SQUARE_XS: [f64; 11] = [0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 0.7, 0.8, 0.9, 1.0];
const SERIES_XS: [f64; 8] = [0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 2.5];

/// Published comparison abscissae for a problem, if there are any.
pub fn published_abscissae(name: &str) -> Option<Vec<f64>> {
    let short = short_name(name);
    if let Ok(h) = polytrope_table(short) {
        if short != "first_zeros" {
            return Some(h.table.iter().map(|r| r.x).collect());
        }
    }
    match short {
        "exp_mix" => Some(EXP_MIX_XS.to_vec()),
        "log6" | "linear_poly" => Some(EXP_SQUARE_XS.to_vec()),
        "isothermal" => Some(SERIES_XS.to_vec()),
        "sinh" | "sin" => Some(SERIES_XS[..7].to_vec()),
        _ => None,
    }
}

/// The natural reference for a problem: a closed form, a series or a table.
pub fn reference_for(name: &str) -> Result<ReferenceSolution> {
    let short = short_name(name);
    exact(short)
        .or_else(|_| series(short))
        .or_else(|_| polytrope_table(short))
        .map_err(|_| Error::UnknownName {
            kind: "reference",
            name: name.into(),
        })
}

/// Published collocation coefficients a₀..a₁₉ for m = 1.5, 2, 2.5, 3, 4.
/// Kept for magnitude comparisons; the m = 3 column is out of scale with the rest.
pub const PUBLISHED_COEFFICIENTS: [(f64, [f64; 20]); 5] = [
    (
        1.5,
        [
            -8.35020235E-02,
            4.14892772E-02,
            1.06527872E-02,
            -6.46059281E-03,
            -9.23628705E-03,
            -5.14378683E-03,
            -3.99197152E-04,
            2.35669147E-03,
            3.03971126E-03,
            2.53242065E-03,
            1.67607539E-03,
            9.36473928E-04,
            4.51996582E-04,
            1.89757483E-04,
            6.90455024E-05,
            2.15040362E-05,
            5.58921881E-06,
            1.16162729E-06,
            1.75835253E-07,
            1.59423494E-08,
        ],
    ),
    (
        2.0,
        [
            -7.37260675E-02,
            4.61551717E-02,
            -5.59588313E-04,
            -2.88264289E-04,
            -2.03783735E-02,
            2.77045133E-03,
            -1.30872723E-02,
            6.02895464E-03,
            -8.47557449E-03,
            4.00096435E-03,
            -4.94521907E-03,
            1.94713984E-03,
            -2.06474187E-03,
            7.66054296E-04,
            -5.75592272E-04,
            2.13683933E-04,
            -9.82199992E-05,
            3.53103253E-05,
            -7.82964769E-06,
            2.50723737E-06,
        ],
    ),
    (
        2.5,
        [
            -5.84134154E-02,
            4.24877591E-02,
            9.68579002E-03,
            -5.69688651E-03,
            -2.83354601E-03,
            -1.88446376E-03,
            2.47503817E-03,
            4.20009874E-04,
            1.86252286E-03,
            -1.11760997E-04,
            7.92650268E-04,
            -1.16018023E-04,
            3.37002942E-04,
            -1.36758208E-05,
            1.09800992E-04,
            4.50594242E-06,
            2.08231737E-05,
            1.59326696E-06,
            1.71120723E-06,
            1.81759246E-07,
        ],
    ),
    (
        3.0,
        [
            -6.00541969E-01,
            1.07145455E+00,
            -1.38004834E+00,
            1.57447823E+00,
            -1.61608168E+00,
            1.49866216E+00,
            -1.28488320E+00,
            1.01947325E+00,
            -7.46940934E-01,
            5.05881970E-01,
            -3.15031208E-01,
            1.79413013E-01,
            -9.27123693E-02,
            4.30569575E-02,
            -1.76863574E-02,
            6.32155250E-03,
            -1.90188385E-03,
            4.63035504E-04,
            -8.26242326E-05,
            9.25997591E-06,
        ],
    ),
    (
        4.0,
        [
            -1.80533469E-02,
            1.60801870E-03,
            4.91151095E-02,
            -6.29427069E-02,
            5.51425972E-02,
            -5.60724094E-02,
            5.00091630E-02,
            -4.03638627E-02,
            3.09682458E-02,
            -2.19137068E-02,
            1.42286699E-02,
            -8.51801989E-03,
            4.63985922E-03,
            -2.27214677E-03,
            9.90326051E-04,
            -3.76662896E-04,
            1.20837515E-04,
            -3.14970993E-05,
            6.09225231E-06,
            -7.06745003E-07,
        ],
    ),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::by_name;
    use std::f64::consts::PI;

    fn problem_for(name: &str) -> &'static str {
        match name {
            "m0" => "lane-emden-m0",
            "m1" => "lane-emden-m1",
            "m5" => "lane-emden-m5",
            other => Box::leak(other.to_string().into_boxed_str()),
        }
    }

    #[test]
    fn closed_forms_satisfy_their_equations() {
        for name in EXACT_NAMES {
            let r = exact(name).unwrap();
            let p = by_name(problem_for(name)).unwrap();
            for k in 1..=50 {
                let x = 3.0 * k as f64 / 50.0;
                let (y, dy, ddy) = r.jet(x).unwrap();
                let res = p.residual(x, y, dy, ddy);
                assert!(
                    res.abs() <= 1e-9 * (1.0 + ddy.abs()),
                    "{name} x={x} res={res:e}"
                );
            }
            assert_eq!(r.value(0.0).unwrap(), p.a);
            assert_eq!(r.jet(0.0).unwrap().1, p.b);
        }
    }

    #[test]
    fn closed_form_values() {
        assert!((exact("m1").unwrap().value(PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert!((exact("m5").unwrap().value(3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((exact("exp_mix").unwrap().value(1.0).unwrap() + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!((exact("lane-emden-m1").unwrap().value(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(exact("m2"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn m1_branches_agree() {
        let (a, b) = (m1(0.5 - 1e-12), m1(0.5));
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-11 && (a.2 - b.2).abs() < 1e-9);
    }

    #[test]
    fn isothermal_series_reading() {
        let x: f64 = 0.3;
        // the x⁸ term alone is 2.5e-9 here, so it belongs in the comparison
        let known =
            -x * x / 6.0 + x.powi(4) / 120.0 - x.powi(6) / 1890.0 + 61.0 * x.powi(8) / 1632960.0;
        assert!((series_value("isothermal", x).unwrap() - known).abs() < 1e-9);
        assert_eq!(series_value("isothermal", 0.0).unwrap(), 0.0);
        assert!((series_value("isothermal", 0.1).unwrap() + 1.66583390e-3).abs() < 5e-11);
    }

    #[test]
    fn series_match_printed_columns() {
        assert!((series_value("sin", 1.0).unwrap() - 8.63681103e-1).abs() < 5e-9);
        // The printed columns were produced with a longer or differently rounded
        // expansion; agreement is only as good as shown here.
        for (name, upto, tol) in [
            ("isothermal", 0.5, 1e-9),
            ("sinh", 2.0, 1e-9),
            ("sin", 1.0, 1e-8),
        ] {
            let col = published_series_column(name).unwrap();
            for row in col.table.iter().filter(|r| !r.anomalous && r.x <= upto) {
                let v = series_value(name, row.x).unwrap();
                assert!(
                    (v - row.y).abs() < tol,
                    "{name} x={} {v} vs {}",
                    row.x,
                    row.y
                );
            }
        }
    }

    #[test]
    fn series_trust_radius() {
        assert!(matches!(series_value("sinh", 2.01), Err(Error::Domain(_))));
        assert!(series_value("isothermal", 2.5).is_ok());
        assert!(matches!(series_value("sin", -0.1), Err(Error::Domain(_))));
        assert!(series_value("exp_mix", 1.0).is_err());
    }

    #[test]
    fn polytrope_table_lookups() {
        let z = polytrope_table("first_zeros").unwrap();
        assert_eq!(z.value(2.0).unwrap(), 4.35287460);
        assert_eq!(
            polytrope_table("m3").unwrap().value(1.0).unwrap(),
            0.8550576
        );
        assert_eq!(
            polytrope_table("lane-emden-m1.5")
                .unwrap()
                .value(0.5)
                .unwrap(),
            0.9591039
        );
        assert!(matches!(
            polytrope_table("m3").unwrap().value(1.5),
            Err(Error::AbscissaMismatch { .. })
        ));
        assert!(polytrope_table("m7").is_err());
        assert_eq!(first_zero_reference(4.0), Some(14.9715463));
        assert_eq!(first_zero_reference(5.0), None);
    }

    #[test]
    fn tables_are_increasing_and_flagged() {
        for name in POLYTROPE_TABLES {
            let t = polytrope_table(name).unwrap();
            assert!(t.table.windows(2).all(|w| w[0].x < w[1].x), "{name}");
        }
        let m4 = polytrope_table("m4").unwrap();
        assert!(m4.row(0.1).unwrap().anomalous && m4.row(0.2).unwrap().anomalous);
        assert!(!m4.row(0.5).unwrap().anomalous);
        assert!(
            published_series_column("sinh")
                .unwrap()
                .row(0.0)
                .unwrap()
                .anomalous
        );
        assert!(polytrope_table("m3").unwrap().row(6.9).unwrap().anomalous);
    }

    #[test]
    fn abscissae_and_lookup() {
        assert_eq!(published_abscissae("exp_mix").unwrap().len(), 14);
        assert_eq!(published_abscissae("lane-emden-m2").unwrap()[3], 1.0);
        assert!(published_abscissae("lane-emden-m0").is_none());
        assert_eq!(
            reference_for("lane-emden-m2").unwrap().kind,
            ReferenceKind::Tabulated
        );
        assert_eq!(reference_for("sin").unwrap().kind, ReferenceKind::Series);
        assert_eq!(
            reference_for("lane-emden-m5").unwrap().kind,
            ReferenceKind::ClosedForm
        );
        assert!(reference_for("nope").is_err());
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        polytrope_table("m2")
            .unwrap()
            .write_csv(&mut buf, &[])
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,y\n"));
        assert!(text.contains("1.00000000E+00,8.48654100E-01"));
        let mut buf = Vec::new();
        exact("m0")
            .unwrap()
            .write_csv(&mut buf, &[0.0, 1.0])
            .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 3);
    }

    #[test]
    fn published_coefficients_shape() {
        let (m, c) = PUBLISHED_COEFFICIENTS[0];
        assert_eq!(m, 1.5);
        assert!((c[0].abs() - 8.35e-2).abs() < 1e-4);
        assert!((c[19].abs() - 1.6e-8).abs() < 1e-9);
    }
}
