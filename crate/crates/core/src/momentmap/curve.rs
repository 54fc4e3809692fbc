//! Sampled planar curves `j -> (x, y)` with per-sample error bars.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::NumericError;
use crate::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub j: f64,
    pub x: f64,
    pub y: f64,
    pub err: f64,
}

/// A curve sampled at strictly increasing `j` with nonnegative errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarCurve {
    samples: Vec<CurveSample>,
}

#[derive(Serialize, Deserialize)]
struct CurveDocument {
    schema: String,
    samples: Vec<CurveSample>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveInput {
    Document(CurveDocument),
    Bare(Vec<CurveSample>),
}

impl PlanarCurve {
    pub fn new(samples: Vec<CurveSample>) -> Result<Self, NumericError> {
        for s in &samples {
            if !(s.j.is_finite() && s.x.is_finite() && s.y.is_finite()) {
                return Err(NumericError::Geometry(format!("non-finite sample {s:?}")));
            }
            if !(s.err >= 0.0) {
                return Err(NumericError::Geometry(format!("negative error at j = {}", s.j)));
            }
        }
        if let Some(w) = samples.windows(2).find(|w| !(w[0].j < w[1].j)) {
            return Err(NumericError::Geometry(format!(
                "samples not strictly increasing in j ({} then {})",
                w[0].j, w[1].j
            )));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_err(&self) -> f64 {
        self.samples.iter().map(|s| s.err).fold(0.0, f64::max)
    }

    /// Writes `j,x,y,err` rows, values in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), NumericError> {
        let mut w = csv::Writer::from_writer(out);
        for s in &self.samples {
            w.serialize(s).map_err(|e| NumericError::Io(e.to_string()))?;
        }
        if self.samples.is_empty() {
            w.write_record(["j", "x", "y", "err"])
                .map_err(|e| NumericError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| NumericError::Io(e.to_string()))
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self, NumericError> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers().map_err(|e| NumericError::Io(e.to_string()))?;
        if headers != vec!["j", "x", "y", "err"] {
            return Err(NumericError::Io(format!("unexpected CSV header {headers:?}")));
        }
        let samples = r
            .deserialize()
            .collect::<Result<Vec<CurveSample>, _>>()
            .map_err(|e| NumericError::Io(e.to_string()))?;
        Self::new(samples)
    }

    pub fn to_json(&self) -> String {
        let doc = CurveDocument {
            schema: SCHEMA.to_string(),
            samples: self.samples.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("finite floats serialize")
    }

    /// Accepts the versioned document written by [`PlanarCurve::to_json`] or
    /// a bare array of sample records.
    pub fn from_json(text: &str) -> Result<Self, NumericError> {
        let input: CurveInput = serde_json::from_str(text).map_err(|e| NumericError::Io(e.to_string()))?;
        match input {
            CurveInput::Document(doc) => {
                if doc.schema != SCHEMA {
                    return Err(NumericError::Io(format!("unsupported schema {:?}", doc.schema)));
                }
                Self::new(doc.samples)
            }
            CurveInput::Bare(samples) => Self::new(samples),
        }
    }

    /// Adds samples at `j = -1`, `0` and `1` (where missing) by linear
    /// extrapolation from the two nearest samples on the same side of `0`.
    /// Action coordinates are nonnegative, so extrapolated values are clamped
    /// at zero.
    /// At `j = 0` the two one-sided extrapolations are averaged and their
    /// disagreement is added to the error bar.
    pub fn closed_by_continuity(&self) -> Result<Self, NumericError> {
        let neg: Vec<_> = self.samples.iter().copied().filter(|s| s.j < 0.0).collect();
        let pos: Vec<_> = self.samples.iter().copied().filter(|s| s.j > 0.0).collect();
        let mut out = self.samples.clone();
        let has = |j: f64| self.samples.iter().any(|s| s.j == j);

        if !has(-1.0) && neg.len() >= 2 {
            out.push(extrapolate(neg[0], neg[1], -1.0));
        }
        if !has(1.0) && pos.len() >= 2 {
            out.push(extrapolate(pos[pos.len() - 2], pos[pos.len() - 1], 1.0));
        }
        if !has(0.0) {
            let left = (neg.len() >= 2).then(|| extrapolate(neg[neg.len() - 2], neg[neg.len() - 1], 0.0));
            let right = (pos.len() >= 2).then(|| extrapolate(pos[0], pos[1], 0.0));
            match (left, right) {
                (Some(l), Some(r)) => {
                    let gap = (l.x - r.x).hypot(l.y - r.y);
                    out.push(CurveSample {
                        j: 0.0,
                        x: 0.5 * (l.x + r.x),
                        y: 0.5 * (l.y + r.y),
                        err: l.err.max(r.err) + 0.5 * gap,
                    });
                }
                (Some(s), None) | (None, Some(s)) => out.push(s),
                (None, None) => {}
            }
        }
        out.sort_by(|a, b| a.j.total_cmp(&b.j));
        Self::new(out)
    }

    /// Area of the region cut out of the first quadrant by the axes and the
    /// curve: the polygon `(0,0), (x_first,0), samples..., (0,y_last)`.
    ///
    /// Fails with a geometry error if that polygon intersects itself.
    pub fn toric_area(&self) -> Result<f64, NumericError> {
        let (first, last) = match (self.samples.first(), self.samples.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(NumericError::Geometry("empty curve".into())),
        };
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(self.samples.len() + 3);
        pts.push((0.0, 0.0));
        pts.push((first.x, 0.0));
        pts.extend(self.samples.iter().map(|s| (s.x, s.y)));
        pts.push((0.0, last.y));
        pts.dedup();
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() < 3 {
            return Err(NumericError::Geometry("degenerate polygon".into()));
        }
        check_simple(&pts)?;
        let n = pts.len();
        let twice: f64 = (0..n)
            .map(|i| {
                let (a, b) = (pts[i], pts[(i + 1) % n]);
                a.0 * b.1 - b.0 * a.1
            })
            .sum();
        Ok(0.5 * twice.abs())
    }
}

fn extrapolate(a: CurveSample, b: CurveSample, j: f64) -> CurveSample {
    let t = (j - a.j) / (b.j - a.j);
    CurveSample {
        j,
        x: (a.x + t * (b.x - a.x)).max(0.0),
        y: (a.y + t * (b.y - a.y)).max(0.0),
        err: a.err.max(b.err) * (1.0 + 2.0 * t.abs()),
    }
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn segments_meet(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

fn check_simple(pts: &[(f64, f64)]) -> Result<(), NumericError> {
    let n = pts.len();
    for i in 0..n {
        for k in i + 2..n {
            if i == 0 && k == n - 1 {
                continue;
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[k], pts[(k + 1) % n]);
            if segments_meet(a, b, c, d) {
                return Err(NumericError::Geometry(format!(
                    "polygon edges {a:?}-{b:?} and {c:?}-{d:?} intersect"
                )));
            }
        }
    }
    Ok(())
}
