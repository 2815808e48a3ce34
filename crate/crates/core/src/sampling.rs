//! Seeded random streams and user-population sampling.
//!
//! Every timeslot draws from its own ChaCha8 stream keyed by
//! `(seed, timeslot, purpose)`, so a timeslot's users do not depend on which
//! worker evaluates it or in what order.

use alloc::vec::Vec;

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::dhop::UserSet;
use crate::error::{Error, Result};
use crate::geometry::Point2D;

pub type StreamRng = ChaCha8Rng;

/// What a stream is consumed for. Each purpose starts at a disjoint word
/// offset of the timeslot's stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    UserCount = 0,
    Positions = 1,
}

pub fn timeslot_rng(seed: u64, timeslot: u64, purpose: Purpose) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(timeslot);
    rng.set_word_pos((purpose as u128) << 64);
    rng
}

/// Poisson-distributed number of active users.
pub fn sample_user_count<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> Result<usize> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("lambda", lambda, "lambda > 0"));
    }
    let poisson = Poisson::new(lambda).map_err(|_| Error::domain("lambda", lambda, "lambda > 0"))?;
    Ok(poisson.sample(rng) as usize)
}

/// `n` users uniform over the disc of radius `d_max` about `center`.
pub fn sample_users_uniform_disc<R: Rng + ?Sized>(
    n: usize,
    center: Point2D,
    d_max: f64,
    rng: &mut R,
) -> Result<UserSet> {
    let users: Vec<Point2D> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let r = d_max * u.sqrt();
            let angle = 2.0 * core::f64::consts::PI * v;
            center + Point2D::new(r * angle.cos(), r * angle.sin())
        })
        .collect();
    UserSet::new(users, center, d_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |s, t, p| timeslot_rng(s, t, p).random::<u64>();
        assert_eq!(draw(7, 3, Purpose::Positions), draw(7, 3, Purpose::Positions));
        assert_ne!(draw(7, 3, Purpose::Positions), draw(7, 4, Purpose::Positions));
        assert_ne!(draw(7, 3, Purpose::Positions), draw(7, 3, Purpose::UserCount));
        assert_ne!(draw(7, 3, Purpose::Positions), draw(8, 3, Purpose::Positions));
    }

    #[test]
    fn poisson_moments() {
        let mut rng = timeslot_rng(1, 0, Purpose::UserCount);
        let n = 1_000_000;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..n {
            let k = sample_user_count(5.0, &mut rng).unwrap() as f64;
            sum += k;
            sum_sq += k * k;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!((mean - 5.0).abs() < 0.01, "mean {mean}");
        assert!((var - 5.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn poisson_zero_probability() {
        let mut rng = timeslot_rng(2, 0, Purpose::UserCount);
        let n = 1_000_000;
        let zeros = (0..n)
            .filter(|_| sample_user_count(1.0, &mut rng).unwrap() == 0)
            .count();
        let p0 = zeros as f64 / n as f64;
        assert!((p0 - (-1.0_f64).exp()).abs() < 0.002, "p0 {p0}");
        assert!(sample_user_count(0.0, &mut rng).is_err());
    }

    #[test]
    fn uniform_disc_moments() {
        let mut rng = timeslot_rng(3, 0, Purpose::Positions);
        let users = sample_users_uniform_disc(1_000_000, Point2D::ORIGIN, 2.0, &mut rng).unwrap();
        let radii: Vec<f64> = users.users().iter().map(|p| p.norm()).collect();
        let mean = radii.iter().sum::<f64>() / radii.len() as f64;
        assert!((mean / (2.0 * 2.0 / 3.0) - 1.0).abs() < 1e-3, "mean {mean}");
        let inner = radii.iter().filter(|&&r| r < 1.0).count() as f64 / radii.len() as f64;
        assert!((inner - 0.25).abs() < 0.005);
        let none = sample_users_uniform_disc(0, Point2D::ORIGIN, 2.0, &mut rng).unwrap();
        assert!(none.is_empty());
    }
}
