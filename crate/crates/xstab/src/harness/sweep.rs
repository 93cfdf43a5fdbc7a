//! Grid sweeps over the construction families: expand a parameter grid
//! into cells, measure every cell (optionally across worker threads),
//! serialize rows as CSV, and fit scaling exponents to the distances.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{measure_construction, DistanceMode, FamilySpec, HarnessLimits, SweepRow};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: &str =
    "family,n,k,f,edges,deficiency,distance,distance_mode,edit_distance,status,elapsed_ms,schema_version";

/// One grid cell: the instance to build plus the exponent that chose its
/// deficiency budget, when a rule (rather than a fixed value) did.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub spec: FamilySpec,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub cells: Vec<SweepCell>,
    pub mode: DistanceMode,
    pub seed: u64,
    pub workers: usize,
}

/// Deficiency budget f = ceil(n^alpha), with results within 1e-9 of an
/// integer snapped to it first so that exact powers do not round up.
pub fn deficiency_for(n: usize, alpha: f64) -> usize {
    let raw = (n as f64).powf(alpha);
    let snapped = if (raw - raw.round()).abs() < 1e-9 { raw.round() } else { raw.ceil() };
    snapped as usize
}

fn isqrt_ceil(x: usize) -> usize {
    let r = x.isqrt();
    if r * r < x {
        r + 1
    } else {
        r
    }
}

/// Expands family tokens over an n-grid and an exponent grid into concrete
/// cells. Exponents must sit in (0, 2): at alpha >= 2 the budget stops
/// being small relative to the total edge count and the band degenerates.
pub fn grid_cells(
    families: &[String],
    k: usize,
    ns: &[usize],
    alphas: &[f64],
) -> Result<Vec<SweepCell>> {
    for &alpha in alphas {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "deficiency exponent must sit strictly between 0 and 2 (got {alpha})"
            )));
        }
    }
    let mut cells = Vec::new();
    for family in families {
        match family.as_str() {
            "turan" => {
                for &n in ns {
                    cells.push(SweepCell { spec: FamilySpec::Turan { n, k }, alpha: None });
                }
            }
            "imbalanced" => {
                for &n in ns {
                    for &alpha in alphas {
                        let f = deficiency_for(n, alpha);
                        cells.push(SweepCell {
                            spec: FamilySpec::Imbalanced { n, k, m: isqrt_ceil(f) },
                            alpha: Some(alpha),
                        });
                    }
                }
            }
            "counter1" => {
                for &n in ns {
                    for &alpha in alphas {
                        cells.push(SweepCell {
                            spec: FamilySpec::Counter1 { n, k, f: deficiency_for(n, alpha) },
                            alpha: Some(alpha),
                        });
                    }
                }
            }
            "propcount1" => {
                for &n in ns {
                    for &alpha in alphas {
                        cells.push(SweepCell {
                            spec: FamilySpec::Propcount1 {
                                n,
                                k,
                                layers: 1,
                                f: deficiency_for(n, alpha),
                            },
                            alpha: Some(alpha),
                        });
                    }
                }
            }
            "qary" => {
                for &n in ns {
                    for &alpha in alphas {
                        cells.push(SweepCell {
                            spec: FamilySpec::Qary { n, k, f: deficiency_for(n, alpha) },
                            alpha: Some(alpha),
                        });
                    }
                }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family token {other:?} (expected turan, imbalanced, counter1, propcount1, or qary)"
                )));
            }
        }
    }
    Ok(cells)
}

/// The shipped measurement grid: the two budget-driven families at both
/// useful k values along the f = ceil(n^1.2) rule, plus fixed layered
/// cells small enough for the subset coloring check and exact solving.
pub fn baseline_grid() -> Vec<SweepCell> {
    let mut cells = Vec::new();
    for &k in &[2usize, 3] {
        for &n in &[32usize, 40, 48, 56, 64] {
            let f = deficiency_for(n, 1.2);
            cells.push(SweepCell { spec: FamilySpec::Counter1 { n, k, f }, alpha: Some(1.2) });
            cells.push(SweepCell { spec: FamilySpec::Qary { n, k, f }, alpha: Some(1.2) });
        }
    }
    for layers in 1..=3 {
        cells.push(SweepCell {
            spec: FamilySpec::Propcount1 { n: 14, k: 2, layers, f: 28 },
            alpha: None,
        });
    }
    for (layers, f) in [(1, 64), (2, 64), (3, 96)] {
        cells.push(SweepCell {
            spec: FamilySpec::Propcount1 { n: 32, k: 2, layers, f },
            alpha: None,
        });
    }
    cells
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn cell_seed(base: u64, index: usize) -> u64 {
    splitmix64(base ^ splitmix64(index as u64))
}

fn cell_sort_key(cell: &SweepCell) -> (String, usize, i64, usize, String) {
    (
        cell.spec.family().to_string(),
        cell.spec.order(),
        cell.spec.f_param().unwrap_or(0),
        cell.spec.k(),
        format!("{:?}-{:?}", cell.spec, cell.alpha.map(f64::to_bits)),
    )
}

/// Measures every cell and fits scaling exponents. Rows come back sorted
/// by (family, n, f); the row order, values, and CSV bytes are independent
/// of the worker count because cells are sorted first and each cell's seed
/// derives from its sorted position.
pub fn sweep(config: &SweepConfig, limits: &HarnessLimits) -> (Vec<SweepRow>, Vec<FitReport>) {
    let mut cells = config.cells.clone();
    cells.sort_by_key(cell_sort_key);

    let total = cells.len();
    let workers = config.workers.max(1).min(total.max(1));
    let rows: Vec<SweepRow> = if workers <= 1 {
        cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                measure_construction(&cell.spec, config.mode, cell_seed(config.seed, i), limits)
            })
            .collect()
    } else {
        let slots: Mutex<Vec<Option<SweepRow>>> = Mutex::new(vec![None; total]);
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= total {
                        break;
                    }
                    let row = measure_construction(
                        &cells[i].spec,
                        config.mode,
                        cell_seed(config.seed, i),
                        limits,
                    );
                    slots.lock().unwrap()[i] = Some(row);
                });
            }
        });
        slots
            .into_inner()
            .unwrap()
            .into_iter()
            .map(|slot| slot.expect("every cell index was claimed by some worker"))
            .collect()
    };

    let fits = fit_scaling(&cells, &rows);
    (rows, fits)
}

/// Serializes rows in the stable column order. The elapsed column is
/// pinned to zero: wall-clock times vary run to run and the file is
/// meant to be byte-reproducible (in-memory rows keep the real timings).
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        debug_assert!(!r.status.contains(','), "status must stay comma-free");
        let distance = r.distance.map(|d| d.to_string()).unwrap_or_default();
        let edit = r.edit_distance.map(|d| d.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},0,{}\n",
            r.family,
            r.n,
            r.k,
            r.f,
            r.edges,
            r.deficiency,
            distance,
            r.distance_mode,
            edit,
            r.status,
            SCHEMA_VERSION,
        ));
    }
    out
}

/// Ordinary least squares for y = a + b x. None with fewer than two
/// points or zero variance in x.
pub fn ols1(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    Some((my - b * mx, b))
}

/// Ordinary least squares for y = a + b1 x1 + b2 x2 via the centered
/// normal equations. None with fewer than three points or a (near-)
/// singular design, which is what a single-exponent grid produces.
pub fn ols2(x1: &[f64], x2: &[f64], ys: &[f64]) -> Option<(f64, f64, f64)> {
    let n = ys.len();
    if x1.len() != n || x2.len() != n || n < 3 {
        return None;
    }
    let nf = n as f64;
    let m1 = x1.iter().sum::<f64>() / nf;
    let m2 = x2.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut s11 = 0.0;
    let mut s12 = 0.0;
    let mut s22 = 0.0;
    let mut s1y = 0.0;
    let mut s2y = 0.0;
    for i in 0..n {
        let d1 = x1[i] - m1;
        let d2 = x2[i] - m2;
        let dy = ys[i] - my;
        s11 += d1 * d1;
        s12 += d1 * d2;
        s22 += d2 * d2;
        s1y += d1 * dy;
        s2y += d2 * dy;
    }
    let det = s11 * s22 - s12 * s12;
    // relative condition guard: collinear regressors have det ~ 0
    if det.abs() < 1e-6 * (s11 * s22).max(1e-12) {
        return None;
    }
    let b1 = (s1y * s22 - s2y * s12) / det;
    let b2 = (s2y * s11 - s1y * s12) / det;
    Some((my - b1 * m1 - b2 * m2, b1, b2))
}

/// Fitted scaling exponents next to their predicted values.
///
/// Along one budget rule f = ceil(n^alpha) the regressors log f and log n
/// are collinear, so per (family, k, alpha) the report carries the
/// identifiable combined slope of log(distance) against log(n), plus an
/// f-exponent fit with the n-exponent pinned at its predicted value. When
/// a grid spans several alpha values, a pooled unconstrained two-regressor
/// fit per (family, k) separates the exponents for real.
#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub family: String,
    pub k: usize,
    /// Budget exponent of the line this fit used; None for pooled fits.
    pub alpha: Option<f64>,
    /// "line" (single alpha) or "pooled" (across alphas).
    pub kind: String,
    /// Points used after dropping the two smallest n values.
    pub points: usize,
    pub fitted_f_exp: Option<f64>,
    pub fitted_n_exp: Option<f64>,
    pub fitted_slope: Option<f64>,
    pub predicted_f_exp: Option<f64>,
    pub predicted_n_exp: Option<f64>,
    pub predicted_slope: Option<f64>,
    /// Largest f/n^2 over the points: how far the grid strays from the
    /// small-budget regime the predictions assume.
    pub max_f_over_n2: f64,
    pub status: String,
}

impl std::fmt::Display for FitReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{} k={} ", self.family, self.k)?;
        match self.alpha {
            Some(a) => write!(out, "alpha={a} [{}]: ", self.kind)?,
            None => write!(out, "[{}]: ", self.kind)?,
        }
        if let (Some(fit), Some(pred)) = (self.fitted_slope, self.predicted_slope) {
            write!(out, "slope {fit:.4} (predicted {pred:.4}); ")?;
        }
        if let Some(fe) = self.fitted_f_exp {
            write!(out, "f-exp {fe:.4}")?;
            if let Some(pe) = self.predicted_f_exp {
                write!(out, " (predicted {pe:.4})")?;
            }
            write!(out, "; ")?;
        }
        if let Some(ne) = self.fitted_n_exp {
            write!(out, "n-exp {ne:.4}")?;
            if let Some(pe) = self.predicted_n_exp {
                write!(out, " (predicted {pe:.4})")?;
            }
            write!(out, "; ")?;
        }
        write!(
            out,
            "points {}; max f/n^2 {:.4}; {}",
            self.points, self.max_f_over_n2, self.status
        )
    }
}

fn predicted_pair(family: &str, k: usize) -> Option<(f64, f64)> {
    match family {
        "counter1" => Some((1.5, -1.0)),
        "propcount1" => Some((2.0, -2.0)),
        "qary" => Some((1.5 - 1.0 / k as f64, -1.0 + 1.0 / k as f64)),
        _ => None,
    }
}

struct FitPoint {
    n: usize,
    log_n: f64,
    log_f: f64,
    log_d: f64,
}

/// Keeps points with a positive fitted quantity and drops the two
/// smallest distinct n values (their budgets are dominated by rounding).
fn usable_points(rows: &[&SweepRow]) -> Vec<FitPoint> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let dropped: Vec<usize> = ns.iter().take(2).copied().collect();
    rows.iter()
        .filter(|r| !dropped.contains(&r.n))
        .filter_map(|r| {
            let d = r.distance?;
            if d == 0 || r.f <= 0 || r.n == 0 {
                return None;
            }
            Some(FitPoint {
                n: r.n,
                log_n: (r.n as f64).ln(),
                log_f: (r.f as f64).ln(),
                log_d: (d as f64).ln(),
            })
        })
        .collect()
}

fn max_f_over_n2(rows: &[&SweepRow]) -> f64 {
    rows.iter()
        .filter(|r| r.n > 0)
        .map(|r| r.f.max(0) as f64 / (r.n * r.n) as f64)
        .fold(0.0, f64::max)
}

/// Computes every fit the grid supports; `cells` and `rows` are paired by
/// index, as produced inside `sweep`.
pub fn fit_scaling(cells: &[SweepCell], rows: &[SweepRow]) -> Vec<FitReport> {
    assert_eq!(cells.len(), rows.len());
    let mut line_groups: BTreeMap<(String, usize, u64), Vec<usize>> = BTreeMap::new();
    for (i, cell) in cells.iter().enumerate() {
        if let Some(alpha) = cell.alpha {
            line_groups
                .entry((rows[i].family.clone(), rows[i].k, alpha.to_bits()))
                .or_default()
                .push(i);
        }
    }

    let mut reports = Vec::new();
    let mut pooled_members: BTreeMap<(String, usize), (BTreeSet<u64>, Vec<usize>)> =
        BTreeMap::new();

    for ((family, k, alpha_bits), indices) in &line_groups {
        let alpha = f64::from_bits(*alpha_bits);
        let group: Vec<&SweepRow> = indices.iter().map(|&i| &rows[i]).collect();
        let predicted = predicted_pair(family, *k);
        let predicted_slope = predicted.map(|(pf, pn)| pf * alpha + pn);
        let points = usable_points(&group);

        let entry = pooled_members.entry((family.clone(), *k)).or_default();
        entry.0.insert(*alpha_bits);
        entry.1.extend(indices.iter().copied());

        let mut report = FitReport {
            family: family.clone(),
            k: *k,
            alpha: Some(alpha),
            kind: "line".into(),
            points: points.len(),
            fitted_f_exp: None,
            fitted_n_exp: None,
            fitted_slope: None,
            predicted_f_exp: predicted.map(|p| p.0),
            predicted_n_exp: predicted.map(|p| p.1),
            predicted_slope,
            max_f_over_n2: max_f_over_n2(&group),
            status: String::new(),
        };

        let distinct_n: BTreeSet<usize> = points.iter().map(|p| p.n).collect();
        if points.len() < 2 || distinct_n.len() < 2 {
            report.status = "degenerate: fewer than two usable points after drops".into();
            reports.push(report);
            continue;
        }
        let log_n: Vec<f64> = points.iter().map(|p| p.log_n).collect();
        let log_d: Vec<f64> = points.iter().map(|p| p.log_d).collect();
        match ols1(&log_n, &log_d) {
            Some((_, slope)) => report.fitted_slope = Some(slope),
            None => {
                report.status = "degenerate: no variance in n".into();
                reports.push(report);
                continue;
            }
        }
        if let Some((_, pn)) = predicted {
            // pin the n-exponent at its predicted value; along one alpha
            // line the two exponents cannot be separated
            let adjusted: Vec<f64> =
                points.iter().map(|p| p.log_d - pn * p.log_n).collect();
            let log_f: Vec<f64> = points.iter().map(|p| p.log_f).collect();
            if let Some((_, fe)) = ols1(&log_f, &adjusted) {
                report.fitted_f_exp = Some(fe);
                report.fitted_n_exp = Some(pn);
                report.status = "ok: n-exponent pinned at predicted for the f-fit".into();
            } else {
                report.status = "degenerate: no variance in f".into();
            }
        } else {
            report.status = "ok: slope only; family has no predicted exponents".into();
        }
        reports.push(report);
    }

    for ((family, k), (alphas, indices)) in &pooled_members {
        if alphas.len() < 2 {
            continue;
        }
        let group: Vec<&SweepRow> = indices.iter().map(|&i| &rows[i]).collect();
        let predicted = predicted_pair(family, *k);
        let points = usable_points(&group);
        let mut report = FitReport {
            family: family.clone(),
            k: *k,
            alpha: None,
            kind: "pooled".into(),
            points: points.len(),
            fitted_f_exp: None,
            fitted_n_exp: None,
            fitted_slope: None,
            predicted_f_exp: predicted.map(|p| p.0),
            predicted_n_exp: predicted.map(|p| p.1),
            predicted_slope: None,
            max_f_over_n2: max_f_over_n2(&group),
            status: String::new(),
        };
        if points.len() < 3 {
            report.status = "degenerate: fewer than three usable points after drops".into();
            reports.push(report);
            continue;
        }
        let log_f: Vec<f64> = points.iter().map(|p| p.log_f).collect();
        let log_n: Vec<f64> = points.iter().map(|p| p.log_n).collect();
        let log_d: Vec<f64> = points.iter().map(|p| p.log_d).collect();
        match ols2(&log_f, &log_n, &log_d) {
            Some((_, bf, bn)) => {
                report.fitted_f_exp = Some(bf);
                report.fitted_n_exp = Some(bn);
                report.status = "ok".into();
            }
            None => {
                report.status = "degenerate: collinear design".into();
            }
        }
        reports.push(report);
    }

    // families with no alpha rule at all (fixed-budget cells): report the
    // degenerate status the all-zero distance case calls for
    let mut fixed_groups: BTreeMap<(String, usize), Vec<usize>> = BTreeMap::new();
    for (i, cell) in cells.iter().enumerate() {
        if cell.alpha.is_none() {
            fixed_groups
                .entry((rows[i].family.clone(), rows[i].k))
                .or_default()
                .push(i);
        }
    }
    for ((family, k), indices) in &fixed_groups {
        let group: Vec<&SweepRow> = indices.iter().map(|&i| &rows[i]).collect();
        let all_zero = group.iter().all(|r| r.distance == Some(0));
        let status = if all_zero {
            "degenerate: all distances zero".to_string()
        } else {
            "skipped: no budget rule attached to these cells".to_string()
        };
        reports.push(FitReport {
            family: family.clone(),
            k: *k,
            alpha: None,
            kind: "line".into(),
            points: 0,
            fitted_f_exp: None,
            fitted_n_exp: None,
            fitted_slope: None,
            predicted_f_exp: None,
            predicted_n_exp: None,
            predicted_slope: None,
            max_f_over_n2: max_f_over_n2(&group),
            status,
        });
    }

    reports
}
