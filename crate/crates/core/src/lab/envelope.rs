use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::piecewise::{pl_max, PiecewiseLinear};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

/// The ramp `((x - n + 1) v 0) ^ 1`: zero up to `n - 1`, one from `n` on.
pub fn make_gn(n: usize) -> Result<PiecewiseLinear> {
    if n == 0 {
        return Err(Error::Precondition("ramps are indexed from 1".into()));
    }
    let n = rat(n as i64);
    PiecewiseLinear::new(
        vec![&n - Rational::one(), n],
        vec![Rational::zero(), Rational::one()],
        Rational::zero(),
        Rational::zero(),
    )
}

/// `max_k |h(s_k)|` over the sample values `s_k = f(k)`.
fn sample_seminorm(h: &PiecewiseLinear, samples: &[Rational]) -> Rational {
    samples.iter().map(|s| h.eval(s).abs()).max().unwrap_or_else(Rational::zero)
}

/// `alpha_n = n / rho(g_n o f)` for `n = 1..=n_max`, so that each scaled
/// ramp has seminorm exactly `n`. Fails if some ramp vanishes on every sample.
pub fn normalizing_alphas(samples: &[Rational], n_max: usize) -> Result<Vec<Rational>> {
    (1..=n_max)
        .map(|n| {
            let rho = sample_seminorm(&make_gn(n)?, samples);
            if rho.is_zero() {
                return Err(Error::Precondition(format!("g_{n} vanishes at every sample")));
            }
            Ok(rat(n as i64) / rho)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub n: usize,
    #[serde(with = "crate::linalg::rational_str")]
    pub alpha: Rational,
    #[serde(with = "crate::linalg::rational_str")]
    pub rho_gn: Rational,
    #[serde(with = "crate::linalg::rational_str")]
    pub alpha_rho_gn: Rational,
    #[serde(with = "crate::linalg::rational_str")]
    pub rho_ginf: Rational,
    /// `0 <= alpha g_n(s) <= g_inf(s)` at every sample and the seminorm
    /// inequality `rho(g_inf o f) >= alpha rho(g_n o f)`.
    pub dominated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    #[serde(with = "crate::linalg::rational_str")]
    pub window: Rational,
    pub envelope: PiecewiseLinear,
    pub rows: Vec<EnvelopeRow>,
    pub certified: bool,
}

/// Upper envelope `g_inf = max_n alpha_n g_n` on `[0, window]`, restricted
/// to the ramps not identically zero there, checked against the sample
/// seminorm over `samples`.
pub fn envelope_demo(alphas: &[Rational], samples: &[Rational], window: &Rational) -> Result<EnvelopeReport> {
    if alphas.is_empty() || alphas.iter().any(|a| !a.is_positive()) {
        return Err(Error::Precondition("alphas must be a nonempty list of positive values".into()));
    }
    if samples.is_empty() {
        return Err(Error::Precondition("no sample points".into()));
    }
    if !window.is_positive() {
        return Err(Error::Precondition("window must be positive".into()));
    }
    if samples.iter().any(|s| s.is_negative() || s > window) {
        return Err(Error::Precondition("window does not cover the samples".into()));
    }
    let covered: Vec<(usize, &Rational, PiecewiseLinear)> = alphas
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1, a))
        .filter(|&(n, _)| rat(n as i64 - 1) < *window)
        .map(|(n, a)| make_gn(n).map(|g| (n, a, g.scale(a))))
        .collect::<Result<_>>()?;
    let scaled: Vec<PiecewiseLinear> = covered.iter().map(|(_, _, g)| g.clone()).collect();
    let envelope = pl_max(&scaled, window)?;
    let rho_ginf = sample_seminorm(&envelope, samples);

    let rows: Vec<EnvelopeRow> = covered
        .iter()
        .map(|(n, a, g)| {
            let pointwise = samples.iter().all(|s| {
                let v = g.eval(s);
                !v.is_negative() && v <= envelope.eval(s)
            });
            let alpha_rho_gn = sample_seminorm(g, samples);
            EnvelopeRow {
                n: *n,
                alpha: (*a).clone(),
                rho_gn: &alpha_rho_gn / *a,
                dominated: pointwise && rho_ginf >= alpha_rho_gn,
                alpha_rho_gn,
                rho_ginf: rho_ginf.clone(),
            }
        })
        .collect();
    let certified = rows.iter().all(|r| r.dominated);
    Ok(EnvelopeReport { window: window.clone(), envelope, rows, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn ramp_values() {
        let g1 = make_gn(1).unwrap();
        assert_eq!(g1.eval(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(make_gn(3).unwrap().eval(&rat(2)), rat(0));
        assert_eq!(make_gn(2).unwrap().eval(&ratio(3, 2)), ratio(1, 2));
        for n in 1..6 {
            assert_eq!(make_gn(n).unwrap().eval(&rat(n as i64 + 5)), rat(1));
        }
        assert!(make_gn(0).is_err());
    }

    #[test]
    fn two_ramps_cross_at_three_halves() {
        let m = pl_max(&[make_gn(1).unwrap(), make_gn(2).unwrap().scale(&rat(2))], &rat(3)).unwrap();
        assert_eq!(m.breakpoints(), &[rat(0), rat(1), ratio(3, 2), rat(2)]);
        assert_eq!(m.values(), &[rat(0), rat(1), rat(1), rat(2)]);
    }

    #[test]
    fn unit_alphas_on_window_two() {
        let samples = vec![rat(0), rat(1), rat(2)];
        let report = envelope_demo(&[rat(1), rat(1), rat(1)], &samples, &rat(2)).unwrap();
        assert_eq!(report.rows.len(), 2);
        let expected = pl_max(&[make_gn(1).unwrap(), make_gn(2).unwrap()], &rat(2)).unwrap();
        assert_eq!(report.envelope, expected);
        assert!(report.certified);
    }

    #[test]
    fn normalized_alphas_force_growth() {
        let samples: Vec<Rational> = (0..=8).map(rat).collect();
        let alphas = normalizing_alphas(&samples, 8).unwrap();
        // integer samples reach every ramp's top, so alpha_n = n
        assert_eq!(alphas, (1..=8).map(rat).collect::<Vec<_>>());
        let report = envelope_demo(&alphas, &samples, &rat(8)).unwrap();
        assert!(report.certified);
        for row in &report.rows {
            assert_eq!(row.alpha_rho_gn, rat(row.n as i64));
            assert!(row.rho_ginf >= rat(row.n as i64));
        }
    }

    #[test]
    fn window_must_cover_samples() {
        assert!(envelope_demo(&[rat(1)], &[rat(3)], &rat(2)).is_err());
        assert!(envelope_demo(&[rat(0)], &[rat(1)], &rat(2)).is_err());
        assert!(normalizing_alphas(&[rat(0)], 2).is_err());
    }
}
