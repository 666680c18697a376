//! The elliptical π-electron orbit: Kepler time law, presence PDF/CDF and
//! inverse-CDF angle sampling.
//!
//! θ = 0 is the perigee (prolinol side), θ = π the apogee (nitro side). The
//! time law is evaluated through the eccentric anomaly E,
//!
//! ```text
//!     tan(E/2) = sqrt((1-ε)/(1+ε)) tan(θ/2),      M = E - ε sin E,
//!     t(θ) = T·M/(2π),
//! ```
//!
//! which is algebraically identical to the arctan/sine form of the time law
//! but stays continuous and strictly increasing across θ = π, where the
//! arctan form needs a branch correction.

use crate::error::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Elliptical orbit of the bound π-electron.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Orbit {
    /// Eccentricity ε, 0 ≤ ε < 1.
    pub eccentricity: f64,
    /// Semimajor axis u (m).
    pub semimajor: f64,
    /// Effective positive charge Z binding the electron, in units of e.
    pub effective_charge: f64,
    /// Orbital period T (s). Pure normalization; delay times do not depend
    /// on it.
    pub period: f64,
}

impl Orbit {
    pub fn new(eccentricity: f64, semimajor: f64, effective_charge: f64, period: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eccentricity) {
            return Err(Error::InvalidConfig(format!(
                "eccentricity must lie in [0, 1), got {eccentricity}"
            )));
        }
        if !(semimajor > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "semimajor axis must be positive, got {semimajor}"
            )));
        }
        if !(effective_charge > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "effective charge must be positive, got {effective_charge}"
            )));
        }
        if !(period > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "period must be positive, got {period}"
            )));
        }
        Ok(Orbit {
            eccentricity,
            semimajor,
            effective_charge,
            period,
        })
    }

    /// The calibrated NPP orbit: ε = 0.26, u = 1.4 Å, Z = 3.9, T = 1 s.
    pub fn npp_calibrated() -> Self {
        Orbit {
            eccentricity: 0.26,
            semimajor: 1.4e-10,
            effective_charge: 3.9,
            period: 1.0,
        }
    }
}

/// Eccentric anomaly E(θ), continuous on [0, 2π].
fn eccentric_anomaly(theta: f64, ecc: f64) -> f64 {
    let half = 0.5 * theta;
    let e = 2.0 * f64::atan2((1.0 - ecc).sqrt() * half.sin(), (1.0 + ecc).sqrt() * half.cos());
    if e < 0.0 {
        e + TAU
    } else {
        e
    }
}

/// True anomaly θ(E), mapped to [0, 2π).
fn true_anomaly(ecc_anomaly: f64, ecc: f64) -> f64 {
    let half = 0.5 * ecc_anomaly;
    let theta = 2.0 * f64::atan2((1.0 + ecc).sqrt() * half.sin(), (1.0 - ecc).sqrt() * half.cos());
    if theta < 0.0 {
        theta + TAU
    } else {
        theta
    }
}

/// Time for the electron to sweep from the perigee to angle θ.
///
/// Strictly increasing on [0, 2π] with t(0) = 0 and t(2π) = T. The exact
/// symmetry points {0, π, 2π} return their closed-form values {0, T/2, T}.
pub fn kepler_time(theta: f64, orbit: &Orbit) -> Result<f64> {
    if !(0.0..=TAU).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta must lie in [0, 2pi], got {theta}; callers wrap explicitly"
        )));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    if theta == PI {
        return Ok(0.5 * orbit.period);
    }
    if theta == TAU {
        return Ok(orbit.period);
    }
    let e = eccentric_anomaly(theta, orbit.eccentricity);
    let mean = e - orbit.eccentricity * e.sin();
    Ok(orbit.period * mean / TAU)
}

/// Presence probability density of the electron at angle θ, per radian:
///
/// ```text
///     f(θ) = (1-ε²)^{3/2} / (2π (1+ε cos θ)²)
/// ```
///
/// the exact derivative (1/T)·dt/dθ of the time law.
pub fn pdf(theta: f64, ecc: f64) -> f64 {
    let one_less = 1.0 - ecc * ecc;
    let denom = 1.0 + ecc * theta.cos();
    one_less.powf(1.5) / (TAU * denom * denom)
}

/// Cumulative presence probability, kepler_time(θ)/T.
pub fn cdf(theta: f64, orbit: &Orbit) -> Result<f64> {
    Ok(kepler_time(theta, orbit)? / orbit.period)
}

const KEPLER_TOL: f64 = 1e-12;
const KEPLER_MAX_ITER: u32 = 100;

/// Solves Kepler's equation M = E − ε sin E for E ∈ [0, 2π] by Newton
/// iteration with a bisection fallback whenever a step leaves the bracket.
fn solve_kepler(mean: f64, ecc: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0_f64, TAU);
    let mut e = mean + ecc * mean.sin();
    for _ in 0..KEPLER_MAX_ITER {
        let f = e - ecc * e.sin() - mean;
        if f.abs() < KEPLER_TOL {
            return Ok(e);
        }
        if f > 0.0 {
            hi = e;
        } else {
            lo = e;
        }
        let step = f / (1.0 - ecc * e.cos());
        let next = e - step;
        e = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::Numeric(format!(
        "Kepler solve did not converge for M={mean}, ecc={ecc}"
    )))
}

/// Inverse-CDF sampling: the angle θ with cdf(θ) = `draw`.
pub fn sample_theta(draw: f64, ecc: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&draw) {
        return Err(Error::Domain(format!(
            "uniform draw must lie in [0, 1), got {draw}"
        )));
    }
    let mean = TAU * draw;
    let e = solve_kepler(mean, ecc)?;
    Ok(true_anomaly(e, ecc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(ecc: f64) -> Orbit {
        Orbit::new(ecc, 1.4e-10, 3.9, 1.0).unwrap()
    }

    /// The time law exactly as printed, arctan form plus the branch
    /// continuation (+T/2 for θ > π) it needs to stay continuous.
    fn kepler_time_arctan_form(theta: f64, orbit: &Orbit) -> f64 {
        let ecc = orbit.eccentricity;
        let t = orbit.period / TAU
            * (2.0 * (((1.0 - ecc) / (1.0 + ecc)).sqrt() * (theta / 2.0).tan()).atan()
                - ecc * (1.0 - ecc * ecc).sqrt() * theta.sin() / (1.0 + ecc * theta.cos()));
        if theta > PI {
            t + orbit.period
        } else {
            t
        }
    }

    #[test]
    fn time_endpoints_are_exact() {
        let orb = orbit(0.26);
        assert_eq!(kepler_time(0.0, &orb).unwrap(), 0.0);
        assert_eq!(kepler_time(PI, &orb).unwrap(), 0.5);
        assert_eq!(kepler_time(TAU, &orb).unwrap(), 1.0);
    }

    #[test]
    fn time_matches_arctan_form_with_branch_fix() {
        let orb = orbit(0.26);
        for i in 1..200 {
            let theta = TAU * i as f64 / 200.0;
            if (theta - PI).abs() < 1e-9 {
                continue; // tan(θ/2) pole
            }
            let ours = kepler_time(theta, &orb).unwrap();
            let printed = kepler_time_arctan_form(theta, &orb);
            assert!(
                (ours - printed).abs() < 1e-12,
                "theta={theta}: {ours} vs {printed}"
            );
        }
    }

    #[test]
    fn time_strictly_increasing() {
        for &ecc in &[0.0, 0.26, 0.9] {
            let orb = orbit(ecc);
            let mut prev = -1.0;
            for i in 0..=2000 {
                let theta = TAU * i as f64 / 2000.0;
                let t = kepler_time(theta, &orb).unwrap();
                assert!(t > prev, "not increasing at theta={theta}, ecc={ecc}");
                prev = t;
            }
        }
    }

    #[test]
    fn time_quarter_orbit_matches_quadrature_of_pdf() {
        // Oracle: t(π/2)/T = ∫_0^{π/2} pdf dθ by adaptive quadrature.
        let orb = orbit(0.26);
        let t = kepler_time(PI / 2.0, &orb).unwrap();
        let q = crate::numerics::adaptive_simpson(&|x| pdf(x, 0.26), 0.0, PI / 2.0, 1e-12);
        assert!((t - q).abs() < 1e-10, "{t} vs {q}");
    }

    #[test]
    fn time_rejects_out_of_range_theta() {
        let orb = orbit(0.26);
        assert!(kepler_time(-0.1, &orb).is_err());
        assert!(kepler_time(TAU + 0.1, &orb).is_err());
    }

    #[test]
    fn pdf_circular_orbit_is_uniform() {
        for i in 0..10 {
            let theta = TAU * i as f64 / 10.0;
            assert!((pdf(theta, 0.0) - 1.0 / TAU).abs() < 1e-15);
        }
    }

    #[test]
    fn pdf_apogee_perigee_ratio() {
        // ((1+ε)/(1−ε))² ≈ 2.899 at ε = 0.26.
        let ratio = pdf(PI, 0.26) / pdf(0.0, 0.26);
        let expect = ((1.0 + 0.26) / (1.0 - 0.26)) * ((1.0 + 0.26) / (1.0 - 0.26));
        assert!((ratio - expect).abs() < 1e-12);
        assert!((ratio - 2.90).abs() < 0.01);
    }

    #[test]
    fn pdf_extremes_at_apsides() {
        let eps = 0.26;
        let at_apogee = pdf(PI, eps);
        let at_perigee = pdf(0.0, eps);
        for i in 0..=100 {
            let theta = TAU * i as f64 / 100.0;
            let f = pdf(theta, eps);
            assert!(f <= at_apogee + 1e-15);
            assert!(f >= at_perigee - 1e-15);
        }
    }

    #[test]
    fn pdf_matches_finite_difference_of_time() {
        let orb = orbit(0.26);
        let h = 1e-6;
        for i in 1..1000 {
            let theta = h + (TAU - 2.0 * h) * i as f64 / 1000.0;
            let dt = (kepler_time(theta + h, &orb).unwrap() - kepler_time(theta - h, &orb).unwrap())
                / (2.0 * h);
            assert!(
                (pdf(theta, 0.26) - dt).abs() < 1e-6,
                "mismatch at theta={theta}"
            );
        }
    }

    #[test]
    fn pdf_normalizes_to_one() {
        for &ecc in &[0.0, 0.1, 0.26, 0.5, 0.9] {
            let integral =
                crate::numerics::adaptive_simpson(&|x| pdf(x, ecc), 0.0, TAU, 1e-12);
            assert!((integral - 1.0).abs() < 1e-9, "ecc={ecc}: {integral}");
        }
    }

    #[test]
    fn cdf_endpoints_and_median() {
        let orb = orbit(0.26);
        assert_eq!(cdf(TAU, &orb).unwrap(), 1.0);
        assert_eq!(cdf(PI, &orb).unwrap(), 0.5);
        assert_eq!(cdf(0.0, &orb).unwrap(), 0.0);
    }

    #[test]
    fn cdf_circular_quarter() {
        let orb = orbit(0.0);
        assert!((cdf(PI / 2.0, &orb).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn sampler_hits_symmetry_points() {
        assert_eq!(sample_theta(0.0, 0.26).unwrap(), 0.0);
        assert!((sample_theta(0.5, 0.26).unwrap() - PI).abs() < 1e-9);
    }

    #[test]
    fn sampler_round_trips_through_cdf() {
        let orb = orbit(0.26);
        for i in 0..200 {
            let p = i as f64 / 200.0;
            let theta = sample_theta(p, 0.26).unwrap();
            let back = cdf(theta, &orb).unwrap();
            assert!((back - p).abs() < 1e-9, "p={p}: theta={theta}, back={back}");
        }
    }

    #[test]
    fn sampler_quarter_draw_matches_bisection_oracle() {
        // Independent oracle: bisection on the cdf itself.
        let orb = orbit(0.26);
        let (mut lo, mut hi) = (0.0, TAU);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid, &orb).unwrap() < 0.25 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let ours = sample_theta(0.25, 0.26).unwrap();
        assert!((ours - oracle).abs() < 1e-9, "{ours} vs {oracle}");
    }

    #[test]
    fn sampler_rejects_bad_draws() {
        assert!(sample_theta(-0.1, 0.26).is_err());
        assert!(sample_theta(1.0, 0.26).is_err());
    }

    #[test]
    fn high_eccentricity_round_trip() {
        let orb = orbit(0.99);
        for i in 0..100 {
            let p = i as f64 / 100.0;
            let theta = sample_theta(p, 0.99).unwrap();
            let back = cdf(theta, &orb).unwrap();
            assert!((back - p).abs() < 1e-9, "p={p}");
        }
    }

    #[test]
    fn orbit_validation() {
        assert!(Orbit::new(1.0, 1.4e-10, 3.9, 1.0).is_err());
        assert!(Orbit::new(-0.1, 1.4e-10, 3.9, 1.0).is_err());
        assert!(Orbit::new(0.26, 0.0, 3.9, 1.0).is_err());
        assert!(Orbit::new(0.26, 1.4e-10, 0.0, 1.0).is_err());
        assert!(Orbit::new(0.26, 1.4e-10, 3.9, 0.0).is_err());
    }

    #[test]
    fn radius_ordering_perigee_apogee() {
        let orb = orbit(0.26);
        let r0 = crate::interaction::radius(0.0, &orb);
        let rpi = crate::interaction::radius(PI, &orb);
        assert!(rpi > r0);
    }
}
