//! Class counts and representative sizes across boundary sizes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::representatives::table::{build_rep_table, Caps, TableBuild};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub t: usize,
    pub n_max: usize,
    pub m_max: usize,
    pub enumerated: usize,
    /// Classes including the dead class.
    pub classes: usize,
    pub live_classes: usize,
    /// Largest vertex count of a live representative.
    pub max_rep_n: usize,
    pub max_member_n: usize,
    pub seconds: f64,
}

/// `y <= slope * x + intercept` fitted on the first rows, checked on the rest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Envelope {
    pub slope: f64,
    pub intercept: f64,
    pub fitted_on: Vec<usize>,
    pub held_out_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub d: usize,
    pub family: String,
    pub rows: Vec<CensusRow>,
    /// Max live representative size against `t`.
    pub rep_size: Envelope,
    /// `log2(classes)` against `t * log2(t + 2)`.
    pub class_count: Envelope,
    pub classes_monotone: bool,
    pub flags: Vec<String>,
}

impl CensusReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,n_max,m_max,enumerated,classes,live_classes,max_rep_n,max_member_n,seconds\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{:.3}\n",
                r.t, r.n_max, r.m_max, r.enumerated, r.classes, r.live_classes, r.max_rep_n, r.max_member_n, r.seconds
            ));
        }
        s
    }
}

pub fn row_from_build(t: usize, caps: Caps, build: &TableBuild, seconds: f64) -> CensusRow {
    let table = &build.table;
    let live: Vec<_> = table.entries().filter(|(s, _)| !s.is_dead()).collect();
    CensusRow {
        t,
        n_max: caps.n_max,
        m_max: caps.m_max,
        enumerated: build.enumerated,
        classes: table.len(),
        live_classes: live.len(),
        max_rep_n: live.iter().map(|(_, e)| e.rep.n()).max().unwrap_or(0),
        max_member_n: table.entries().map(|(_, e)| e.max_member_n).max().unwrap_or(0),
        seconds,
    }
}

/// Fits an upper envelope through the first `fit` points: least squares for
/// the slope, then the smallest intercept that puts every fitted point on
/// or below the line.
fn envelope(points: &[(f64, f64)], fit: usize) -> Envelope {
    let fit = fit.min(points.len());
    let fp = &points[..fit];
    let nf = fp.len() as f64;
    let (mx, my) = (fp.iter().map(|p| p.0).sum::<f64>() / nf, fp.iter().map(|p| p.1).sum::<f64>() / nf);
    let sxx: f64 = fp.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = fp.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { (sxy / sxx).max(0.0) } else { 0.0 };
    let intercept = fp.iter().map(|p| p.1 - slope * p.0).fold(f64::NEG_INFINITY, f64::max);
    let held_out_ok = points[fit..].iter().all(|p| p.1 <= slope * p.0 + intercept + 1e-9);
    Envelope { slope, intercept, fitted_on: (0..fit).collect(), held_out_ok }
}

/// Builds one table per `t` and summarises them. Envelopes are fitted on
/// all but the last boundary size, which is then checked against them.
pub fn rep_census(ts: &[usize], d: usize, family: &Family, caps_for: impl Fn(usize) -> Caps) -> Result<CensusReport> {
    if ts.is_empty() {
        return Err(Error::Invalid("census needs at least one boundary size".into()));
    }
    let mut rows = Vec::new();
    for &t in ts {
        let caps = caps_for(t);
        let start = std::time::Instant::now();
        let build = build_rep_table(t, d, family, caps)?;
        rows.push(row_from_build(t, caps, &build, start.elapsed().as_secs_f64()));
    }
    Ok(summarise(d, family, rows))
}

pub fn summarise(d: usize, family: &Family, rows: Vec<CensusRow>) -> CensusReport {
    let fit = if rows.len() > 1 { rows.len() - 1 } else { rows.len() };
    let rep_pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.t as f64, r.max_rep_n as f64)).collect();
    let class_pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let t = r.t as f64;
            (t * (t + 2.0).log2(), (r.classes as f64).log2())
        })
        .collect();
    let rep_size = envelope(&rep_pts, fit);
    let class_count = envelope(&class_pts, fit);
    let classes_monotone = rows.windows(2).all(|w| w[0].classes <= w[1].classes);
    let mut flags = Vec::new();
    if !rep_size.held_out_ok {
        flags.push("representative size grows faster than the fitted linear envelope".to_string());
    }
    if !class_count.held_out_ok {
        flags.push("class count exceeds the fitted 2^(c t log(t+2)) envelope".to_string());
    }
    if !classes_monotone {
        flags.push("class count is not monotone in t".to_string());
    }
    CensusReport { d, family: family.descriptor(), rows, rep_size, class_count, classes_monotone, flags }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_fits_and_checks() {
        let e = envelope(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0)], 3);
        assert!((e.slope - 1.0).abs() < 1e-9);
        assert!((e.intercept - 1.0).abs() < 1e-9);
        assert!(e.held_out_ok);
        let e = envelope(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 9.0)], 3);
        assert!(!e.held_out_ok);
    }

    #[test]
    fn small_census() {
        let fam = Family::feedback_vertex_set();
        let r = rep_census(&[0, 1], 3, &fam, |t| Caps { n_max: t + 3, m_max: t + 3 }).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows[0].classes >= 2);
        assert!(r.classes_monotone);
        assert!(r.to_csv().lines().count() == 3);
    }
}
