use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};

/// A continuous piecewise-linear function on the real line: linear
/// interpolation between `(breakpoints[i], values[i])`, extended by
/// `left_slope` and `right_slope` beyond the first and last breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PiecewiseLinearFile", try_from = "PiecewiseLinearFile")]
pub struct PiecewiseLinear {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    left_slope: Rational,
    right_slope: Rational,
}

impl PiecewiseLinear {
    pub fn new(
        breakpoints: Vec<Rational>,
        values: Vec<Rational>,
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::Precondition("need one value per breakpoint, at least one".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewiseLinear { breakpoints, values, left_slope, right_slope })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn left_slope(&self) -> &Rational {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rational {
        &self.right_slope
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let bp = &self.breakpoints;
        let last = bp.len() - 1;
        if *x <= bp[0] {
            return &self.values[0] + &self.left_slope * (x - &bp[0]);
        }
        if *x >= bp[last] {
            return &self.values[last] + &self.right_slope * (x - &bp[last]);
        }
        let i = bp.partition_point(|b| b <= x) - 1;
        let t = (x - &bp[i]) / (&bp[i + 1] - &bp[i]);
        &self.values[i] + t * (&self.values[i + 1] - &self.values[i])
    }

    pub fn scale(&self, s: &Rational) -> PiecewiseLinear {
        PiecewiseLinear {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
            left_slope: &self.left_slope * s,
            right_slope: &self.right_slope * s,
        }
    }

    fn segment_slopes(&self) -> Vec<Rational> {
        let mut slopes = Vec::with_capacity(self.breakpoints.len() + 1);
        slopes.push(self.left_slope.clone());
        for i in 0..self.breakpoints.len() - 1 {
            slopes.push((&self.values[i + 1] - &self.values[i]) / (&self.breakpoints[i + 1] - &self.breakpoints[i]));
        }
        slopes.push(self.right_slope.clone());
        slopes
    }

    /// Same function with every breakpoint where the slope does not change
    /// removed (one breakpoint is kept for a global line).
    pub fn simplified(&self) -> PiecewiseLinear {
        let slopes = self.segment_slopes();
        let keep: Vec<usize> = (0..self.breakpoints.len()).filter(|&i| slopes[i] != slopes[i + 1]).collect();
        let keep = if keep.is_empty() { vec![0] } else { keep };
        PiecewiseLinear {
            breakpoints: keep.iter().map(|&i| self.breakpoints[i].clone()).collect(),
            values: keep.iter().map(|&i| self.values[i].clone()).collect(),
            left_slope: self.left_slope.clone(),
            right_slope: self.right_slope.clone(),
        }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.segment_slopes().iter().all(|s| !s.is_negative())
    }
}

/// Serialized form: `[breakpoint, value]` pairs with rationals as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiecewiseLinearFile {
    pub points: Vec<[String; 2]>,
    pub left_slope: String,
    pub right_slope: String,
}

impl From<PiecewiseLinear> for PiecewiseLinearFile {
    fn from(f: PiecewiseLinear) -> Self {
        PiecewiseLinearFile {
            points: f
                .breakpoints
                .iter()
                .zip(&f.values)
                .map(|(b, v)| [format_rational(b), format_rational(v)])
                .collect(),
            left_slope: format_rational(&f.left_slope),
            right_slope: format_rational(&f.right_slope),
        }
    }
}

impl TryFrom<PiecewiseLinearFile> for PiecewiseLinear {
    type Error = Error;

    fn try_from(file: PiecewiseLinearFile) -> Result<Self> {
        let mut breakpoints = Vec::with_capacity(file.points.len());
        let mut values = Vec::with_capacity(file.points.len());
        for [b, v] in &file.points {
            breakpoints.push(parse_rational(b)?);
            values.push(parse_rational(v)?);
        }
        PiecewiseLinear::new(breakpoints, values, parse_rational(&file.left_slope)?, parse_rational(&file.right_slope)?)
    }
}

/// Where the linear function through `(u, du)` and `(v, dv)` vanishes,
/// if strictly between `u` and `v`.
fn crossing(u: &Rational, du: &Rational, v: &Rational, dv: &Rational) -> Option<Rational> {
    let opposite = (du.is_positive() && dv.is_negative()) || (du.is_negative() && dv.is_positive());
    opposite.then(|| u + (v - u) * du / (du - dv))
}

/// Exact pointwise maximum of finitely many piecewise-linear functions,
/// with breakpoints at every input breakpoint and every crossing.
///
/// The result agrees with the maximum everywhere, so in particular on the
/// window `[0, domain_hi]`, which must be nonempty.
pub fn pl_max(fs: &[PiecewiseLinear], domain_hi: &Rational) -> Result<PiecewiseLinear> {
    if fs.is_empty() {
        return Err(Error::Precondition("maximum of an empty family".into()));
    }
    if !domain_hi.is_positive() {
        return Err(Error::Precondition("window [0, domain_hi] must be nonempty".into()));
    }
    let mut cands: Vec<Rational> = fs.iter().flat_map(|f| f.breakpoints.iter().cloned()).collect();
    cands.sort();
    cands.dedup();

    let one = Rational::one();
    let first = cands[0].clone();
    let last = cands[cands.len() - 1].clone();
    // Each interval is probed at two points; beyond the ends, one unit out.
    let mut probes: Vec<(Rational, Rational)> = vec![(&first - &one, first.clone())];
    probes.extend(cands.windows(2).map(|w| (w[0].clone(), w[1].clone())));
    probes.push((last.clone(), &last + &one));

    let mut extra = Vec::new();
    for (k, (u, v)) in probes.iter().enumerate() {
        let unbounded_left = k == 0;
        let unbounded_right = k == probes.len() - 1;
        let fu: Vec<Rational> = fs.iter().map(|f| f.eval(u)).collect();
        let fv: Vec<Rational> = fs.iter().map(|f| f.eval(v)).collect();
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let du = &fu[i] - &fu[j];
                let dv = &fv[i] - &fv[j];
                if unbounded_left || unbounded_right {
                    let slope = &dv - &du;
                    if slope.is_zero() {
                        continue;
                    }
                    let root = u - &du / &slope;
                    if (unbounded_left && root < first) || (unbounded_right && root > last) {
                        extra.push(root);
                    }
                } else if let Some(x) = crossing(u, &du, v, &dv) {
                    extra.push(x);
                }
            }
        }
    }
    cands.extend(extra);
    cands.sort();
    cands.dedup();

    let max_at = |x: &Rational| fs.iter().map(|f| f.eval(x)).max().expect("nonempty family");
    let values: Vec<Rational> = cands.iter().map(max_at).collect();
    let lo = &cands[0];
    let hi = &cands[cands.len() - 1];
    let left_slope = &values[0] - max_at(&(lo - &one));
    let right_slope = max_at(&(hi + &one)) - &values[values.len() - 1];
    Ok(PiecewiseLinear::new(cands.clone(), values, left_slope, right_slope)?.simplified())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn identity_on_unit() -> PiecewiseLinear {
        PiecewiseLinear::new(vec![rat(0), rat(1)], vec![rat(0), rat(1)], rat(1), rat(1)).unwrap()
    }

    #[test]
    fn eval_interpolates_and_extrapolates() {
        let f = identity_on_unit();
        assert_eq!(f.eval(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(f.eval(&rat(-3)), rat(-3));
        assert_eq!(f.eval(&rat(7)), rat(7));
        let tent =
            PiecewiseLinear::new(vec![rat(0), rat(1), rat(2)], vec![rat(0), rat(2), rat(0)], rat(0), rat(0)).unwrap();
        assert_eq!(tent.eval(&ratio(3, 2)), rat(1));
        assert_eq!(tent.eval(&rat(1)), rat(2));
    }

    #[test]
    fn invalid_inputs() {
        assert!(PiecewiseLinear::new(vec![], vec![], rat(0), rat(0)).is_err());
        assert!(PiecewiseLinear::new(vec![rat(1), rat(1)], vec![rat(0), rat(0)], rat(0), rat(0)).is_err());
        assert!(pl_max(&[], &rat(1)).is_err());
        assert!(pl_max(&[identity_on_unit()], &rat(0)).is_err());
    }

    #[test]
    fn simplify_drops_collinear_points() {
        let f =
            PiecewiseLinear::new(vec![rat(0), rat(1), rat(2)], vec![rat(0), rat(1), rat(2)], rat(1), rat(1)).unwrap();
        let s = f.simplified();
        assert_eq!(s.breakpoints(), &[rat(0)]);
        assert_eq!(s.eval(&rat(5)), rat(5));
    }

    #[test]
    fn max_single_and_idempotent() {
        let f = PiecewiseLinear::new(vec![rat(0), rat(1)], vec![rat(0), rat(1)], rat(0), rat(0)).unwrap();
        assert_eq!(pl_max(std::slice::from_ref(&f), &rat(5)).unwrap(), f);
        assert_eq!(pl_max(&[f.clone(), f.clone()], &rat(5)).unwrap(), f);
    }

    #[test]
    fn crossing_lines_far_outside() {
        // x and -x cross at 0, well left of the only stored breakpoint
        let up = PiecewiseLinear::new(vec![rat(10)], vec![rat(10)], rat(1), rat(1)).unwrap();
        let down = PiecewiseLinear::new(vec![rat(10)], vec![rat(-10)], rat(-1), rat(-1)).unwrap();
        let m = pl_max(&[up, down], &rat(1)).unwrap();
        assert_eq!(m.breakpoints(), &[rat(0)]);
        assert_eq!(m.eval(&rat(-4)), rat(4));
        assert_eq!(m.eval(&rat(3)), rat(3));
    }

    #[test]
    fn json_roundtrip() {
        let f = PiecewiseLinear::new(vec![rat(0), ratio(3, 2)], vec![rat(0), rat(1)], rat(0), ratio(-1, 3)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("[\"3/2\",\"1\"]"));
        let back: PiecewiseLinear = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
