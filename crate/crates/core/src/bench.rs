//! Wall-clock scaling suites with a log-log least-squares fit.

use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::approx::half_pds;
use crate::error::{Error, Result};
use crate::generators::random_connected;
use crate::hamiltonian::{
    random_cubic_cycle, random_without_good_shift, solve_hamiltonian_cubic, LrType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Local-move approximation on random graphs with `m = 4n`.
    ApproxScaling,
    /// Hamiltonian cubic construction, on random instances and on instances
    /// without a good shift (the full case analysis).
    CubicScaling,
}

impl Suite {
    pub const NAMES: [&'static str; 2] = ["approx-scaling", "cubic-scaling"];

    pub fn name(self) -> &'static str {
        match self {
            Self::ApproxScaling => Self::NAMES[0],
            Self::CubicScaling => Self::NAMES[1],
        }
    }

    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Self::ApproxScaling => (8..=13).map(|e| 1usize << e).collect(),
            Self::CubicScaling => vec![1_000, 10_000, 100_000, 1_000_000],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "approx-scaling" => Ok(Self::ApproxScaling),
            "cubic-scaling" => Ok(Self::CubicScaling),
            _ => Err(Error::UnknownSuite(s.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    /// Overrides the suite's default sizes.
    pub sizes: Option<Vec<usize>>,
    pub seed: u64,
    /// Each size is re-run until this much time has accumulated.
    pub min_time: Duration,
    pub min_repetitions: usize,
    /// Re-verify cubic solutions inside the timed region.
    pub verify: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            sizes: None,
            seed: 0,
            min_time: Duration::from_millis(50),
            min_repetitions: 3,
            verify: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub suite: &'static str,
    pub family: &'static str,
    pub n: usize,
    pub m: usize,
    /// Fastest single run.
    pub seconds: f64,
    pub repetitions: usize,
    pub result_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyFit {
    pub family: &'static str,
    pub fit: Fit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub fits: Vec<FamilyFit>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Least-squares line through `(ln x, ln y)`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Fit {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Fit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    }
}

/// Fastest of repeated runs of `f`, with the repetition count.
fn time_min<T>(opts: &BenchOptions, mut f: impl FnMut() -> T) -> (f64, usize, T) {
    let mut best = f64::INFINITY;
    let mut total = Duration::ZERO;
    let mut reps = 0;
    loop {
        let start = Instant::now();
        let out = std::hint::black_box(f());
        let took = start.elapsed();
        best = best.min(took.as_secs_f64());
        total += took;
        reps += 1;
        if reps >= opts.min_repetitions && total >= opts.min_time {
            return (best, reps, out);
        }
    }
}

pub fn run_suite(suite: Suite, opts: &BenchOptions) -> Result<BenchReport> {
    let sizes = opts.sizes.clone().unwrap_or_else(|| suite.default_sizes());
    let mut rows = Vec::new();
    for &n in &sizes {
        match suite {
            Suite::ApproxScaling => {
                let g = random_connected(n, 4 * n, opts.seed ^ n as u64)?;
                let (seconds, repetitions, out) =
                    time_min(opts, || half_pds(&g, None, Some(opts.seed)));
                rows.push(BenchRow {
                    suite: suite.name(),
                    family: "random-4n",
                    n,
                    m: g.m(),
                    seconds,
                    repetitions,
                    result_size: out?.0.len(),
                });
            }
            Suite::CubicScaling => {
                if n < 4 || n % 2 == 1 {
                    return Err(Error::InfeasibleParameters(format!(
                        "cubic instances need an even n >= 4, got {n}"
                    )));
                }
                let mut families = vec![("random", random_cubic_cycle(n, opts.seed ^ n as u64))];
                if let Ok(g) = random_without_good_shift(n, LrType::Rlrl, opts.seed) {
                    families.push(("no-good-shift", g));
                }
                for (family, g) in families {
                    let (seconds, repetitions, out) =
                        time_min(opts, || solve_hamiltonian_cubic(&g, opts.verify));
                    rows.push(BenchRow {
                        suite: suite.name(),
                        family,
                        n,
                        m: 3 * n / 2,
                        seconds,
                        repetitions,
                        result_size: out?.set().map_or(0, |s| s.len()),
                    });
                }
            }
        }
    }
    let mut families: Vec<&'static str> = Vec::new();
    for r in &rows {
        if !families.contains(&r.family) {
            families.push(r.family);
        }
    }
    let fits = families
        .into_iter()
        .filter_map(|family| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.family == family)
                .map(|r| (r.n as f64, r.seconds))
                .collect();
            (pts.len() >= 2).then(|| FamilyFit {
                family,
                fit: loglog_fit(&pts),
            })
        })
        .collect();
    Ok(BenchReport { rows, fits })
}
