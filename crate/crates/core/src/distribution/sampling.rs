use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use super::PowerLindley;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// Deterministic random stream keyed by a 64-bit seed.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Standard exponential draw.
    pub fn exp1(&mut self) -> f64 {
        self.rng.sample(Exp1)
    }
}

impl<T: Real> PowerLindley<T> {
    /// `n` independent draws.
    ///
    /// A Lindley(β) variate is drawn as an exponential(β) with probability
    /// `β/(β+1)` and as a two-stage Erlang(β) otherwise, then raised to `1/α`.
    pub fn sample(&self, n: usize, rng: &mut RandomSource) -> Result<Vec<T>> {
        if n == 0 {
            return domain("sample size must be at least 1", 0.0);
        }
        let p = self.mixing_proportion().as_f64();
        let beta = self.beta().as_f64();
        let power = self.alpha().recip().as_f64();
        let draws = (0..n)
            .map(|_| {
                let stages = if rng.uniform() < p {
                    rng.exp1()
                } else {
                    rng.exp1() + rng.exp1()
                };
                let lindley = stages / beta;
                T::lit(lindley.powf(power))
            })
            .collect();
        Ok(draws)
    }
}
