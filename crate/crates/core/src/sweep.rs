//! kappa_t sweeps over the correlation measures, CSV output, and detection of
//! the window where the cavity and reservoir LQU curves merge.
//!
//! A sweep evaluates, on a uniform `kappa_t` grid, the cavity-pair LQU, the
//! reservoir-pair LQU, the combined four-qubit LQU, and both pair
//! concurrences. The merge detector then looks for the contiguous region
//! where `|lqu_cc - lqu_rr|` stays below a tolerance and refines its
//! boundaries by bisection on freshly evaluated points — the boundaries are
//! kinks (eigenvalue branch crossings), so interpolating grid values would
//! smear them.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::channel::evolve;
use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::lqu::{lqu_bipartite, lqu_bruteforce, lqu_multiqubit, DEFAULT_DIRECTIONS};
use crate::states::{pure_state, werner_state, DensityMatrix, PureInitialState, WernerParam};

/// Default sweep range; covers the visually informative part of the curves.
pub const DEFAULT_KT_MAX: f64 = 3.0;
/// Default number of grid points.
pub const DEFAULT_STEPS: usize = 300;
/// Default equality tolerance for [`detect_merge`].
pub const DEFAULT_EQUAL_TOL: f64 = 1e-6;
/// Bisection tolerance (in `kappa_t`) for merge boundary refinement.
pub const MERGE_REFINE_TOL: f64 = 1e-4;
/// Tolerance for the optional brute-force cross-check of `lqu_cc`.
pub const ORACLE_TOL: f64 = 1e-4;

/// Initial cavity-pair state selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    /// `alpha|00> + beta|11>` with `beta = sqrt(1 - alpha²)`.
    Pure { alpha: f64 },
    /// Werner mixture with weight `p`.
    Werner { p: f64 },
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            StateSpec::Pure { alpha } => Ok(pure_state(&PureInitialState::from_alpha(alpha)?)),
            StateSpec::Werner { p } => Ok(werner_state(&WernerParam::new(p)?)),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// Parses `pure:ALPHA` or `werner:P`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!(
                "state spec must look like pure:ALPHA or werner:P, got {:?}",
                s
            ))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("state parameter {:?} is not a number", value))
        })?;
        match kind.trim() {
            "pure" => Ok(StateSpec::Pure { alpha: value }),
            "werner" => Ok(StateSpec::Werner { p: value }),
            other => Err(Error::InvalidArgument(format!(
                "unknown state family {:?} (expected pure or werner)",
                other
            ))),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Pure { alpha } => write!(f, "pure:{}", alpha),
            StateSpec::Werner { p } => write!(f, "werner:{}", p),
        }
    }
}

/// Configuration of one sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub state: StateSpec,
    pub kt_max: f64,
    pub steps: usize,
    /// Re-verify every 10th grid point's `lqu_cc` against the brute-force
    /// minimizer.
    pub oracle_check: bool,
}

impl SweepConfig {
    pub fn new(state: StateSpec) -> Self {
        Self {
            state,
            kt_max: DEFAULT_KT_MAX,
            steps: DEFAULT_STEPS,
            oracle_check: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.kt_max.is_finite() && self.kt_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "kt_max must be positive and finite, got {}",
                self.kt_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

/// All measures evaluated at one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub kappa_t: f64,
    pub lqu_cc: f64,
    pub lqu_rr: f64,
    pub lqu_4q: f64,
    pub conc_cc: f64,
    pub conc_rr: f64,
}

/// Outcome of [`detect_merge`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MergeEvents {
    /// First time the two LQU curves come within tolerance, `None` if they
    /// never do.
    pub meet_kt: Option<f64>,
    /// Time the curves separate again, `None` if they never meet or stay
    /// within tolerance through the end of the sweep.
    pub separate_kt: Option<f64>,
    /// True when the equality region is wider than one grid spacing.
    pub merged: bool,
    /// True when the curves are within tolerance over the entire sweep
    /// (e.g. an uncorrelated input where both curves are identically zero).
    pub degenerate: bool,
    /// Largest `|lqu_cc - lqu_rr|` over the grid points inside the window.
    pub max_gap_in_window: Option<f64>,
}

fn measures_at(initial: &DensityMatrix, kappa_t: f64) -> Result<SweepRecord> {
    let joint = evolve(initial, kappa_t)?;
    let cc = joint.cavity_pair()?;
    let rr = joint.reservoir_pair()?;
    Ok(SweepRecord {
        kappa_t,
        lqu_cc: lqu_bipartite(&cc, 0)?,
        lqu_rr: lqu_bipartite(&rr, 0)?,
        lqu_4q: lqu_multiqubit(joint.rho())?.combined,
        conc_cc: concurrence(&cc)?.value,
        conc_rr: concurrence(&rr)?.value,
    })
}

fn at_point(kappa_t: f64, e: Error) -> Error {
    Error::AtSweepPoint {
        kappa_t,
        source: Box::new(e),
    }
}

/// Evaluates all measures on a uniform grid of `steps` points covering
/// `[0, kt_max]`, in ascending `kappa_t` order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let initial = cfg.state.build()?;
    let mut records = Vec::with_capacity(cfg.steps);
    for i in 0..cfg.steps {
        let kappa_t = cfg.kt_max * i as f64 / (cfg.steps - 1) as f64;
        let record = measures_at(&initial, kappa_t).map_err(|e| at_point(kappa_t, e))?;
        if cfg.oracle_check && i % 10 == 0 {
            let cc = evolve(&initial, kappa_t)
                .and_then(|j| j.cavity_pair())
                .map_err(|e| at_point(kappa_t, e))?;
            let oracle = lqu_bruteforce(&cc, 0, DEFAULT_DIRECTIONS)
                .map_err(|e| at_point(kappa_t, e))?;
            if (oracle - record.lqu_cc).abs() > ORACLE_TOL {
                return Err(Error::OracleMismatch {
                    kappa_t,
                    formula: record.lqu_cc,
                    oracle,
                });
            }
        }
        records.push(record);
    }
    Ok(records)
}

/// Finds the window where the cavity and reservoir LQU curves coincide.
///
/// Grid records provide the bracketing; each boundary is then refined by
/// bisection on `|lqu_cc - lqu_rr| - equal_tol` with fresh channel
/// evaluations of the `initial` state, down to [`MERGE_REFINE_TOL`] in
/// `kappa_t`.
pub fn detect_merge(
    initial: &DensityMatrix,
    records: &[SweepRecord],
    equal_tol: f64,
) -> Result<MergeEvents> {
    if records.is_empty() {
        return Err(Error::InvalidArgument(
            "detect_merge needs a nonempty record list".into(),
        ));
    }
    let gap = |r: &SweepRecord| (r.lqu_cc - r.lqu_rr).abs();
    let within: Vec<bool> = records.iter().map(|r| gap(r) < equal_tol).collect();

    let first = within.iter().position(|&w| w);
    let Some(first) = first else {
        return Ok(MergeEvents {
            meet_kt: None,
            separate_kt: None,
            merged: false,
            degenerate: false,
            max_gap_in_window: None,
        });
    };
    let last = within.iter().rposition(|&w| w).expect("first exists");

    let max_gap_in_window = records[first..=last]
        .iter()
        .map(gap)
        .fold(0.0_f64, f64::max);

    if first == 0 && last == records.len() - 1 {
        // curves within tolerance over the whole sweep; no events to report
        return Ok(MergeEvents {
            meet_kt: None,
            separate_kt: None,
            merged: true,
            degenerate: true,
            max_gap_in_window: Some(max_gap_in_window),
        });
    }

    let fresh_gap = |kt: f64| -> Result<f64> {
        let r = measures_at(initial, kt).map_err(|e| at_point(kt, e))?;
        Ok((r.lqu_cc - r.lqu_rr).abs())
    };
    // bisection on the sign of (gap - equal_tol); `inside` marks which side
    // of the bracket is within tolerance
    let refine = |mut outside: f64, mut inside: f64| -> Result<f64> {
        while (outside - inside).abs() > MERGE_REFINE_TOL {
            let mid = 0.5 * (outside + inside);
            if fresh_gap(mid)? < equal_tol {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(0.5 * (outside + inside))
    };

    let meet_kt = if first == 0 {
        Some(records[0].kappa_t)
    } else {
        Some(refine(records[first - 1].kappa_t, records[first].kappa_t)?)
    };
    let separate_kt = if last == records.len() - 1 {
        None
    } else {
        Some(refine(records[last + 1].kappa_t, records[last].kappa_t)?)
    };

    let grid_spacing = records[1].kappa_t - records[0].kappa_t;
    let window_width = match (meet_kt, separate_kt) {
        (Some(m), Some(s)) => s - m,
        _ => records[last].kappa_t - records[first].kappa_t,
    };

    Ok(MergeEvents {
        meet_kt,
        separate_kt,
        merged: window_width > grid_spacing,
        degenerate: false,
        max_gap_in_window: Some(max_gap_in_window),
    })
}

pub const CSV_HEADER: &str = "kappa_t,lqu_cc,lqu_rr,lqu_4q,conc_cc,conc_rr";

/// Writes records as CSV: the exact [`CSV_HEADER`], one row per record,
/// values with 12 significant digits, `\n` line endings.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", CSV_HEADER)?;
    for r in records {
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            r.kappa_t, r.lqu_cc, r.lqu_rr, r.lqu_4q, r.conc_cc, r.conc_rr
        )?;
    }
    Ok(())
}

/// [`write_csv`] to a file path, reporting the path on failure.
pub fn write_csv_path(records: &[SweepRecord], path: &Path) -> Result<()> {
    let wrap = |source: io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut writer = BufWriter::new(file);
    write_csv(records, &mut writer).map_err(wrap)?;
    writer.flush().map_err(wrap)
}
