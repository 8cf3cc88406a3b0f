use num_rational::Ratio;
use num_traits::Zero;

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A hull edge covering `length` roots, all of valuation `slope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: Ratio<i64>,
    pub length: usize,
}

/// Lower convex hull of the points `(i, v_p(coefficient of t^(d-i)))`.
///
/// With the leading coefficient at abscissa 0, the slope of each edge is the
/// valuation of the roots it counts (no sign flip). Roots at zero, coming
/// from a factor `t^k`, are reported separately and count as positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    p: Prime,
    degree: usize,
    vertices: Vec<(usize, i64)>,
    segments: Vec<Segment>,
    zero_roots: usize,
}

impl NewtonPolygon {
    pub fn new(f: &IntPolynomial, p: Prime) -> Result<Self> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        let coeffs = f.coeffs();
        let points: Vec<(usize, i64)> = (0..=d)
            .filter_map(|i| arith::valuation(&coeffs[d - i], p.get()).map(|v| (i, v as i64)))
            .collect();
        let last = points.last().map(|pt| pt.0).unwrap_or(0);
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (b.0 as i64 - a.0 as i64) * (pt.1 - a.1)
                    - (b.1 - a.1) * (pt.0 as i64 - a.0 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Segment { slope: Ratio::new(w[1].1 - w[0].1, len as i64), length: len }
            })
            .collect();
        Ok(NewtonPolygon { p, degree: d, vertices: hull, segments, zero_roots: d - last })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn vertices(&self) -> &[(usize, i64)] {
        &self.vertices
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Roots equal to zero.
    pub fn zero_roots(&self) -> usize {
        self.zero_roots
    }

    /// Roots with `|a|_p > 1`.
    pub fn count_neg(&self) -> usize {
        self.count_where(|s| s < Ratio::zero())
    }

    /// Roots with `|a|_p = 1`.
    pub fn count_unit(&self) -> usize {
        self.count_where(|s| s.is_zero())
    }

    /// Roots with `|a|_p < 1`, including roots at zero.
    pub fn count_pos(&self) -> usize {
        self.count_where(|s| s > Ratio::zero()) + self.zero_roots
    }

    fn count_where(&self, pred: impl Fn(Ratio<i64>) -> bool) -> usize {
        self.segments.iter().filter(|s| pred(s.slope)).map(|s| s.length).sum()
    }

    /// Valuations of the nonzero roots with multiplicities, ascending.
    pub fn root_valuations(&self) -> Vec<(Ratio<i64>, usize)> {
        self.segments.iter().map(|s| (s.slope, s.length)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}
