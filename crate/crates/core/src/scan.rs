//! Empirical bridging function: for sphere points `x, y ∈ S(r)` with
//! `d(x,y) ≤ 2`, the shortest path joining them inside `B(r)`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{build_ball, BallIndex, BridgeScratch, GroupModel};
use crate::error::{Error, Result};

/// One radius of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub r: u32,
    /// `None` when no qualifying pair exists.
    pub fmax: Option<u32>,
    pub pairs: u64,
    pub witness: Option<(String, String)>,
}

impl ScanRow {
    /// `fmax(r) ≤ 2r − 1`.
    pub fn mac(&self) -> Option<bool> {
        self.fmax.map(|f| f < 2 * self.r)
    }

    /// `fmax(r) ≤ 2r − 2`.
    pub fn mprime(&self) -> Option<bool> {
        self.fmax.map(|f| f + 2 <= 2 * self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub group: String,
    pub r_lo: u32,
    pub r_hi: u32,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn fmax_table(&self) -> Vec<(u32, Option<u32>)> {
        self.rows.iter().map(|row| (row.r, row.fmax)).collect()
    }

    /// Largest `fmax` over the scanned radii.
    pub fn ac_candidate(&self) -> Option<u32> {
        self.rows.iter().filter_map(|row| row.fmax).max()
    }

    /// Least scanned radius from which `flag` holds on every later row.
    fn r0_by(&self, flag: impl Fn(&ScanRow) -> Option<bool>) -> Option<u32> {
        let mut r0 = None;
        for row in self.rows.iter().rev() {
            match flag(row) {
                Some(false) => break,
                _ => r0 = Some(row.r),
            }
        }
        r0
    }

    pub fn r0_mac(&self) -> Option<u32> {
        self.r0_by(ScanRow::mac)
    }

    pub fn r0_mprime(&self) -> Option<u32> {
        self.r0_by(ScanRow::mprime)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,fmax,pairs,mac,mprime,witness_x,witness_y\n");
        let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
        for row in &self.rows {
            let (wx, wy) = row.witness.clone().unwrap_or_default();
            let fmax = row.fmax.map(|f| f.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{},{},{},{}", row.r, fmax, row.pairs, opt(row.mac()), opt(row.mprime()), wx, wy)
                .expect("string write");
        }
        out
    }
}

/// Scans radii `r_lo..=r_hi` on a ball built here.
pub fn scan<M: GroupModel>(model: &M, r_lo: u32, r_hi: u32, cap: usize) -> Result<ScanReport> {
    if r_lo > r_hi {
        return Err(Error::InvalidParams(format!("empty radius range {r_lo}..={r_hi}")));
    }
    let ball = build_ball(model, r_hi, cap)?;
    Ok(scan_ball(model, &ball, r_lo, r_hi))
}

/// Scans a prebuilt ball; radii beyond its radius are ignored.
pub fn scan_ball<M: GroupModel>(model: &M, ball: &BallIndex<M::Elem>, r_lo: u32, r_hi: u32) -> ScanReport {
    let rows = (r_lo..=r_hi.min(ball.radius())).map(|r| scan_radius(model, ball, r)).collect();
    ScanReport { group: model.descriptor(), r_lo, r_hi, rows }
}

/// Sphere points `y > x` within distance 2 of `x`.
fn close_partners<M: GroupModel>(model: &M, ball: &BallIndex<M::Elem>, x: u32, r: u32) -> Vec<u32> {
    let letters = ball.letters();
    let mut out = Vec::new();
    let keep = |y: u32, out: &mut Vec<u32>| {
        if y > x && ball.dist_of(y) == r {
            out.push(y);
        }
    };
    for (j1, &l1) in letters.iter().enumerate() {
        match ball.neighbor(x, j1) {
            Some(n1) => {
                keep(n1, &mut out);
                for j2 in 0..letters.len() {
                    if let Some(n2) = ball.neighbor(n1, j2) {
                        keep(n2, &mut out);
                    }
                }
            }
            None => {
                // x·l1 left the ball; its neighbors still may not have.
                let e1 = model.mul_letter(ball.elem(x), l1);
                for &l2 in letters {
                    if let Some(n2) = ball.index_of(&model.mul_letter(&e1, l2)) {
                        keep(n2, &mut out);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn scan_radius<M: GroupModel>(model: &M, ball: &BallIndex<M::Elem>, r: u32) -> ScanRow {
    let sphere = ball.sphere(r);
    // (fmax, x, y, pairs) per source; the fold keeps the smallest pair among maxima.
    let best = sphere
        .clone()
        .into_par_iter()
        .map_init(
            || BridgeScratch::new(ball.len()),
            |scratch, x| {
                let ys = close_partners(model, ball, x, r);
                if ys.is_empty() {
                    return None;
                }
                let ds = ball.bridge_distances(scratch, x, &ys, r, None);
                let mut local: Option<(u32, u32, u32)> = None;
                for (&y, d) in ys.iter().zip(ds) {
                    let d = d.expect("two geodesics through the identity join sphere points");
                    assert!(d <= 2 * r, "bridge longer than 2r");
                    if local.is_none_or(|(f, _, _)| d > f) {
                        local = Some((d, x, y));
                    }
                }
                local.map(|(f, x, y)| (f, x, y, ys.len() as u64))
            },
        )
        .flatten()
        .reduce_with(|a, b| {
            let pairs = a.3 + b.3;
            let pick = if a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) < (b.1, b.2)) { a } else { b };
            (pick.0, pick.1, pick.2, pairs)
        });
    match best {
        None => ScanRow { r, fmax: None, pairs: 0, witness: None },
        Some((f, x, y, pairs)) => {
            ScanRow { r, fmax: Some(f), pairs, witness: Some((model.key(ball.elem(x)), model.key(ball.elem(y)))) }
        }
    }
}

/// Least-squares trend of a sequence against radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendSummary {
    pub points: usize,
    pub slope: f64,
    pub intercept: f64,
    pub interpretation: String,
}

/// Fits `value ≈ slope · r + intercept`. Needs at least three points.
pub fn sublinearity_probe(points: &[(u32, u32)]) -> Result<TrendSummary> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0 as f64).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1 as f64).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 as f64 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 as f64 - mx) * (p.1 as f64 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParams("all points share one radius".into()));
    }
    let slope = sxy / sxx;
    let interpretation =
        if slope > 0.5 { "slope bounded away from 0: P(2) violated empirically" } else { "no linear growth detected" };
    Ok(TrendSummary { points: points.len(), slope, intercept: my - slope * mx, interpretation: interpretation.into() })
}

/// The `(r, fmax)` points of a report, for [`sublinearity_probe`].
pub fn report_points(report: &ScanReport) -> Vec<(u32, u32)> {
    report.rows.iter().filter_map(|row| row.fmax.map(|f| (row.r, f))).collect()
}
