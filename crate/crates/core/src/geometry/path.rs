//! Piecewise-parametric paths in ℂ*.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance below which two endpoints count as the same point.
pub const JOIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, theta0: f64, theta1: f64 },
    Polyline { points: Vec<Complex64> },
}

/// A smooth piece of a path, parameterised by `s ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, theta0: f64, theta1: f64 },
}

impl Piece {
    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Line { from, to } => from + (to - from) * s,
            Piece::Arc { center, radius, theta0, theta1 } => {
                center + Complex64::from_polar(radius, theta0 + s * (theta1 - theta0))
            }
        }
    }

    pub fn derivative(&self, s: f64) -> Complex64 {
        match *self {
            Piece::Line { from, to } => to - from,
            Piece::Arc { radius, theta0, theta1, .. } => {
                let theta = theta0 + s * (theta1 - theta0);
                Complex64::i() * Complex64::from_polar(radius, theta) * (theta1 - theta0)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Line { from, to } => Piece::Line { from: to, to: from },
            Piece::Arc { center, radius, theta0, theta1 } => Piece::Arc {
                center,
                radius,
                theta0: theta1,
                theta1: theta0,
            },
        }
    }

    /// Smallest distance from the piece to `about`.
    pub fn distance_to(&self, about: Complex64) -> f64 {
        match *self {
            Piece::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (from - about).norm();
                }
                let s = (((about - from) * d.conj()).re / len2).clamp(0.0, 1.0);
                (from + d * s - about).norm()
            }
            Piece::Arc { center, radius, theta0, theta1 } => {
                let offset = about - center;
                let ends = (self.start() - about).norm().min((self.end() - about).norm());
                if offset.norm() == 0.0 {
                    return radius;
                }
                // The nearest point of the full circle lies in direction arg(offset).
                let phi = offset.arg();
                let (lo, hi) = if theta0 <= theta1 { (theta0, theta1) } else { (theta1, theta0) };
                let k = ((lo - phi) / (2.0 * PI)).ceil();
                let candidate = phi + 2.0 * PI * k;
                if candidate <= hi {
                    (offset.norm() - radius).abs()
                } else {
                    ends
                }
            }
        }
    }

    /// Largest modulus of a point on the piece.
    pub fn max_modulus(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => from.norm().max(to.norm()),
            Piece::Arc { center, radius, theta0, theta1 } => {
                let ends = self.start().norm().max(self.end().norm());
                if center.norm() == 0.0 {
                    return radius;
                }
                let phi = center.arg();
                let (lo, hi) = if theta0 <= theta1 { (theta0, theta1) } else { (theta1, theta0) };
                let k = ((lo - phi) / (2.0 * PI)).ceil();
                if phi + 2.0 * PI * k <= hi {
                    center.norm() + radius
                } else {
                    ends
                }
            }
        }
    }
}

impl Segment {
    fn pieces(&self) -> Vec<Piece> {
        match self {
            Segment::Line { from, to } => vec![Piece::Line { from: *from, to: *to }],
            Segment::Arc { center, radius, theta0, theta1 } => vec![Piece::Arc {
                center: *center,
                radius: *radius,
                theta0: *theta0,
                theta1: *theta1,
            }],
            Segment::Polyline { points } => points
                .windows(2)
                .map(|w| Piece::Line { from: w[0], to: w[1] })
                .collect(),
        }
    }

    fn reversed(&self) -> Segment {
        match self {
            Segment::Line { from, to } => Segment::Line { from: *to, to: *from },
            Segment::Arc { center, radius, theta0, theta1 } => Segment::Arc {
                center: *center,
                radius: *radius,
                theta0: *theta1,
                theta1: *theta0,
            },
            Segment::Polyline { points } => Segment::Polyline {
                points: points.iter().rev().copied().collect(),
            },
        }
    }
}

/// An ordered chain of segments avoiding the origin. The global parameter runs
/// over `[0, piece_count]`, one unit per smooth piece.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPath {
    segments: Vec<Segment>,
    pieces: Vec<Piece>,
    closed: bool,
}

impl PlanarPath {
    pub fn new(segments: Vec<Segment>, closed: bool) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Structural("path has no segments".into()));
        }
        for seg in &segments {
            match seg {
                Segment::Arc { radius, theta0, theta1, center } => {
                    if !(radius.is_finite() && *radius > 0.0) {
                        return Err(Error::Structural(format!("arc radius {radius} is not positive")));
                    }
                    if !(theta0.is_finite() && theta1.is_finite() && center.is_finite()) {
                        return Err(Error::Structural("arc data must be finite".into()));
                    }
                }
                Segment::Polyline { points } if points.len() < 2 => {
                    return Err(Error::Structural("polyline needs at least two points".into()));
                }
                Segment::Polyline { points } if points.iter().any(|p| !p.is_finite()) => {
                    return Err(Error::Structural("polyline points must be finite".into()));
                }
                Segment::Line { from, to } if !(from.is_finite() && to.is_finite()) => {
                    return Err(Error::Structural("line endpoints must be finite".into()));
                }
                _ => {}
            }
        }
        let pieces: Vec<Piece> = segments.iter().flat_map(Segment::pieces).collect();
        for (i, w) in pieces.windows(2).enumerate() {
            let gap = (w[0].end() - w[1].start()).norm();
            if gap > JOIN_TOL {
                return Err(Error::Structural(format!(
                    "piece {i} ends {gap:e} away from the start of the next"
                )));
            }
        }
        if closed {
            let gap = (pieces[pieces.len() - 1].end() - pieces[0].start()).norm();
            if gap > JOIN_TOL {
                return Err(Error::Structural(format!("closed path fails to close by {gap:e}")));
            }
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.distance_to(Complex64::new(0.0, 0.0)) <= JOIN_TOL {
                return Err(Error::Singularity(format!("piece {i} passes through the origin")));
            }
        }
        Ok(PlanarPath {
            segments,
            pieces,
            closed,
        })
    }

    pub fn line(from: Complex64, to: Complex64) -> Result<Self> {
        Self::new(vec![Segment::Line { from, to }], false)
    }

    pub fn arc(center: Complex64, radius: f64, theta0: f64, theta1: f64) -> Result<Self> {
        let closed = ((theta1 - theta0).abs() - 2.0 * PI).abs() < 1e-15;
        Self::new(
            vec![Segment::Arc {
                center,
                radius,
                theta0,
                theta1,
            }],
            closed,
        )
    }

    /// Full circle, counterclockwise when `ccw`.
    pub fn circle(center: Complex64, radius: f64, ccw: bool) -> Result<Self> {
        let (a, b) = if ccw { (0.0, 2.0 * PI) } else { (2.0 * PI, 0.0) };
        Self::new(
            vec![Segment::Arc {
                center,
                radius,
                theta0: a,
                theta1: b,
            }],
            true,
        )
    }

    pub fn polyline(points: Vec<Complex64>) -> Result<Self> {
        Self::new(vec![Segment::Polyline { points }], false)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> Complex64 {
        self.pieces[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.pieces[self.pieces.len() - 1].end()
    }

    /// Splits a global parameter into piece index and local parameter.
    fn locate(&self, t: f64) -> (usize, f64) {
        let m = self.pieces.len();
        let t = t.clamp(0.0, m as f64);
        let i = (t.floor() as usize).min(m - 1);
        (i, t - i as f64)
    }

    pub fn point_at(&self, t: f64) -> Complex64 {
        let (i, s) = self.locate(t);
        self.pieces[i].point(s)
    }

    pub fn derivative_at(&self, t: f64) -> Complex64 {
        let (i, s) = self.locate(t);
        self.pieces[i].derivative(s)
    }

    /// Unit tangent at the start of the path.
    pub fn start_tangent(&self) -> Complex64 {
        let d = self.pieces[0].derivative(0.0);
        d / d.norm()
    }

    /// Unit tangent at the end of the path.
    pub fn end_tangent(&self) -> Complex64 {
        let d = self.pieces[self.pieces.len() - 1].derivative(1.0);
        d / d.norm()
    }

    /// Same trace, opposite orientation.
    pub fn reversed(&self) -> PlanarPath {
        PlanarPath {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
            closed: self.closed,
        }
    }

    /// `self` followed by `other`; the result is closed when the far ends meet.
    pub fn concat(&self, other: &PlanarPath) -> Result<PlanarPath> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        let closed = (other.end() - self.start()).norm() <= JOIN_TOL;
        PlanarPath::new(segments, closed)
    }

    /// Points at `per_piece` equal parameter steps on every piece, endpoints included once.
    pub fn sample(&self, per_piece: usize) -> Vec<(f64, Complex64)> {
        let per_piece = per_piece.max(1);
        let mut out = Vec::with_capacity(self.pieces.len() * per_piece + 1);
        for (i, p) in self.pieces.iter().enumerate() {
            for k in 0..per_piece {
                let s = k as f64 / per_piece as f64;
                out.push((i as f64 + s, p.point(s)));
            }
        }
        out.push((self.pieces.len() as f64, self.end()));
        out
    }

    pub fn from_json(json: &PathJson) -> Result<Self> {
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        let segments = json
            .segments
            .iter()
            .map(|s| match s {
                SegmentJson::Line { from, to } => Segment::Line {
                    from: c(*from),
                    to: c(*to),
                },
                SegmentJson::Arc {
                    center,
                    radius,
                    theta0,
                    theta1,
                } => Segment::Arc {
                    center: c(*center),
                    radius: *radius,
                    theta0: *theta0,
                    theta1: *theta1,
                },
                SegmentJson::Polyline { points } => Segment::Polyline {
                    points: points.iter().map(|p| c(*p)).collect(),
                },
            })
            .collect();
        Self::new(segments, json.closed)
    }

    pub fn to_json(&self) -> PathJson {
        let a = |z: Complex64| [z.re, z.im];
        PathJson {
            closed: self.closed,
            segments: self
                .segments
                .iter()
                .map(|s| match s {
                    Segment::Line { from, to } => SegmentJson::Line {
                        from: a(*from),
                        to: a(*to),
                    },
                    Segment::Arc {
                        center,
                        radius,
                        theta0,
                        theta1,
                    } => SegmentJson::Arc {
                        center: a(*center),
                        radius: *radius,
                        theta0: *theta0,
                        theta1: *theta1,
                    },
                    Segment::Polyline { points } => SegmentJson::Polyline {
                        points: points.iter().map(|z| a(*z)).collect(),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathJson {
    #[serde(default)]
    pub closed: bool,
    pub segments: Vec<SegmentJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SegmentJson {
    Line {
        from: [f64; 2],
        to: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    Polyline {
        points: Vec<[f64; 2]>,
    },
}
