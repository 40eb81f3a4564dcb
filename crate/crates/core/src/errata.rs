//! Closed-form spectra and matrix elements for the two channels, and a report
//! comparing every closed form against the numerical pipeline on a grid.

use std::fmt;

use num_complex::Complex64;

use crate::bounds::{ad_closed_form_u, bpf_closed_forms};
use crate::channels::{noisy_bell_state, Noise};
use crate::linalg::{hermitian_eigenvalues, Subsystem};
use crate::measures::{discord_xstate_closed, mutual_information, quantum_discord};
use crate::states::{as_xstate, BellDiagonalCoeffs, XState};
use crate::{Error, Result};

/// Spectrum of the Bell-diagonal state after amplitude damping on A, in the
/// printed order (not sorted).
pub fn ad_eigenvalues(coeffs: &BellDiagonalCoeffs, d: f64) -> [f64; 4] {
    let [c1, c2, c3] = coeffs.as_array();
    let plus = (c1 * c1 + 2.0 * c1 * c2 + c2 * c2 - c1 * c1 * d - 2.0 * c1 * c2 * d - c2 * c2 * d + d * d)
        .max(0.0)
        .sqrt();
    let minus = (c1 * c1 - 2.0 * c1 * c2 + c2 * c2 - c1 * c1 * d + 2.0 * c1 * c2 * d - c2 * c2 * d + d * d)
        .max(0.0)
        .sqrt();
    [
        (1.0 - c3 + c3 * d - plus) / 4.0,
        (1.0 - c3 + c3 * d + plus) / 4.0,
        (1.0 + c3 - c3 * d - minus) / 4.0,
        (1.0 + c3 - c3 * d + minus) / 4.0,
    ]
}

/// Spectrum after bit-phase flip on A, in the printed order.
pub fn bpf_eigenvalues(coeffs: &BellDiagonalCoeffs, p: f64) -> [f64; 4] {
    let [c1, c2, c3] = coeffs.as_array();
    [
        (1.0 + c1 - c2 + c3 - 2.0 * c1 * p - 2.0 * c3 * p) / 4.0,
        (1.0 - c1 + c2 + c3 + 2.0 * c1 * p - 2.0 * c3 * p) / 4.0,
        (1.0 + c1 + c2 - c3 - 2.0 * c1 * p + 2.0 * c3 * p) / 4.0,
        (1.0 - c1 - c2 - c3 + 2.0 * c1 * p + 2.0 * c3 * p) / 4.0,
    ]
}

/// Matrix elements after amplitude damping on A.
pub fn ad_elements(coeffs: &BellDiagonalCoeffs, d: f64) -> XState {
    let [c1, c2, c3] = coeffs.as_array();
    let amp = (1.0 - d).max(0.0).sqrt();
    XState {
        d11: (1.0 + c3 + d - c3 * d) / 4.0,
        d22: (1.0 + c3 * (d - 1.0) + d) / 4.0,
        d33: (c3 - 1.0) * (d - 1.0) / 4.0,
        d44: -(1.0 + c3) * (d - 1.0) / 4.0,
        a14: Complex64::new((c1 - c2) * amp / 4.0, 0.0),
        a23: Complex64::new((c1 + c2) * amp / 4.0, 0.0),
    }
}

/// Spectrum of the reduced state of A: ((1+d)/2, (1-d)/2) under amplitude
/// damping, (½, ½) under bit-phase flip.
pub fn reduced_a_eigenvalues(noise: Noise, param: f64) -> [f64; 2] {
    match noise {
        Noise::AmplitudeDamping => [(1.0 + param) / 2.0, (1.0 - param) / 2.0],
        Noise::BitPhaseFlip => [0.5, 0.5],
    }
}

/// Σ λ log2 λ over the joint spectrum, minus the same over A's spectrum,
/// plus one under amplitude damping; Σ λ log2 λ + 2 under bit-phase flip.
pub fn capacity_closed_form(coeffs: &BellDiagonalCoeffs, noise: Noise, param: f64) -> f64 {
    let xlogx = |v: &[f64]| v.iter().map(|&l| if l > 0.0 { l * l.log2() } else { 0.0 }).sum::<f64>();
    match noise {
        Noise::AmplitudeDamping => {
            xlogx(&ad_eigenvalues(coeffs, param)) - xlogx(&reduced_a_eigenvalues(noise, param)) + 1.0
        }
        Noise::BitPhaseFlip => xlogx(&bpf_eigenvalues(coeffs, param)) + 2.0,
    }
}

/// Largest |closed form - pipeline| for one formula over the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrataRow {
    pub formula: &'static str,
    pub max_gap: f64,
    pub at_param: f64,
    /// Grid points where the closed form left its real domain.
    pub inapplicable: usize,
    pub evaluated: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrataReport {
    pub noise: Noise,
    pub coeffs: BellDiagonalCoeffs,
    pub grid: Vec<f64>,
    pub rows: Vec<ErrataRow>,
}

impl ErrataReport {
    pub fn row(&self, formula: &str) -> Option<&ErrataRow> {
        self.rows.iter().find(|r| r.formula == formula)
    }
}

struct Tracker {
    row: ErrataRow,
}

impl Tracker {
    fn new(formula: &'static str) -> Self {
        Self {
            row: ErrataRow {
                formula,
                max_gap: 0.0,
                at_param: f64::NAN,
                inapplicable: 0,
                evaluated: 0,
            },
        }
    }

    fn record(&mut self, param: f64, gap: Option<f64>) {
        match gap {
            Some(g) => {
                self.row.evaluated += 1;
                if self.row.at_param.is_nan() || g.abs() > self.row.max_gap {
                    self.row.max_gap = g.abs();
                    self.row.at_param = param;
                }
            }
            None => self.row.inapplicable += 1,
        }
    }
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Compares each closed form with the pipeline at every grid point. The
/// identity point of the channel is always added to the grid.
pub fn errata_report(coeffs: &BellDiagonalCoeffs, noise: Noise, grid: &[f64]) -> Result<ErrataReport> {
    if grid.is_empty() {
        return Err(Error::Config(vec!["errata grid is empty".into()]));
    }
    let mut points = grid.to_vec();
    let identity = noise.identity_param();
    if !points.contains(&identity) {
        points.insert(0, identity);
    }

    let mut spectrum = Tracker::new("joint spectrum");
    let mut elements = Tracker::new("evolved matrix elements");
    let mut uncertainty = Tracker::new("uncertainty closed form");
    let mut bound = Tracker::new("bound closed form");
    let mut discord = Tracker::new("X-state discord closed form");
    let mut capacity = Tracker::new("capacity closed form");

    for &x in &points {
        let rho = noisy_bell_state(coeffs, noise, x, None)?;
        let numeric = hermitian_eigenvalues(&rho)?.values().to_vec();
        let closed = match noise {
            Noise::AmplitudeDamping => ad_eigenvalues(coeffs, x),
            Noise::BitPhaseFlip => bpf_eigenvalues(coeffs, x),
        };
        spectrum.record(x, Some(max_diff(&sorted_desc(closed.to_vec()), &numeric)));

        let xs = as_xstate(&rho)?;
        match noise {
            Noise::AmplitudeDamping => {
                let printed = ad_elements(coeffs, x);
                let diff = printed.to_matrix().max_abs_diff(&xs.to_matrix());
                elements.record(x, Some(diff));
                uncertainty.record(x, ad_closed_form_u(coeffs, x)?.gap());
            }
            Noise::BitPhaseFlip => {
                let (u, b) = bpf_closed_forms(coeffs, x)?;
                uncertainty.record(x, u.gap());
                bound.record(x, b.gap());
            }
        }

        discord.record(x, Some(discord_xstate_closed(&xs) - quantum_discord(&rho, Subsystem::B)?));

        let mi = mutual_information(&rho)?;
        capacity.record(x, Some(capacity_closed_form(coeffs, noise, x) - mi));
    }

    let mut rows = vec![spectrum.row];
    if noise == Noise::AmplitudeDamping {
        rows.push(elements.row);
    }
    rows.push(uncertainty.row);
    if noise == Noise::BitPhaseFlip {
        rows.push(bound.row);
    }
    rows.push(discord.row);
    rows.push(capacity.row);
    Ok(ErrataReport {
        noise,
        coeffs: *coeffs,
        grid: points,
        rows,
    })
}

impl fmt::Display for ErrataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.noise.param_name();
        writeln!(
            f,
            "closed form vs pipeline, {} channel, coeffs {}, {} grid points ({} = {} included)",
            self.noise,
            self.coeffs,
            self.grid.len(),
            name,
            self.noise.identity_param()
        )?;
        writeln!(f, "{:<30} {:>14} {:>10} {:>12}", "formula", "max |gap|", format!("at {name}"), "inapplicable")?;
        for r in &self.rows {
            if r.evaluated == 0 {
                writeln!(f, "{:<30} {:>14} {:>10} {:>12}", r.formula, "-", "-", r.inapplicable)?;
            } else {
                writeln!(
                    f,
                    "{:<30} {:>14.3e} {:>10.4} {:>12}",
                    r.formula, r.max_gap, r.at_param, r.inapplicable
                )?;
            }
        }
        Ok(())
    }
}
