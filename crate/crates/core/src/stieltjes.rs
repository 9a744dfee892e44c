//! Perturbations of the power Lindley density for `α < 1/2` and the Stieltjes
//! classes `f_ε = f (1 + ε H)` they generate.
//!
//! Every family here shares the moment sequence of `PL(α, β)`; the vanishing
//! moments are verified numerically after substituting `u = x^α` (or `u = x^γ`),
//! which turns each moment integrand into a damped sinusoid in `u` whose value
//! has the closed form of [`gr_sine_integral`].

use serde::{Deserialize, Serialize};

use crate::distribution::PowerLindley;
use crate::error::{domain, Error, Result};
use crate::numerics::quadrature::DAMPING_LOG_CUTOFF;
use crate::numerics::{
    damping_cutoff, integrate_semi_infinite, log_gamma, Integral, Oscillation, QuadratureSpec,
};
use crate::scalar::Real;

const GRID_POINTS: usize = 1_000_000;
const GRID_START: f64 = 1e-12;
const DEFLATION: f64 = 1e-9;
const GOLDEN_ITERATIONS: usize = 200;

/// Argument of the sine in `H2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum H2Frequency {
    /// `b x^γ tan(πγ)`, which annihilates every moment.
    TanPiGamma,
    /// `b x^γ tan(πα)`. Does not annihilate the moments when `γ ≠ α`; kept as a
    /// negative control.
    TanPiAlpha,
}

/// Which perturbation, with its free parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind<T> {
    /// `x^{1−α}(1+x^α)^{−1} e^{−βx^α} sin(2βx^α tan πα)`.
    H1,
    /// `x^{1−α}(1+x^α)^{−1} e^{βx^α − bx^γ} sin(bx^γ tan πγ)` with `α < γ < 1/2`.
    H2 {
        b: T,
        gamma: T,
        frequency: H2Frequency,
    },
    /// `(1+x^α)^{−1} [sin(βx^α tan πα − πα) + x^α sin(βx^α tan πα − 2πα)]`.
    H3,
}

impl<T: Real> PerturbationKind<T> {
    /// `H2` with `b = 1` and `γ` at the midpoint of `(α, 1/2)`.
    pub fn h2_default(alpha: T) -> Self {
        PerturbationKind::H2 {
            b: T::one(),
            gamma: (alpha + T::lit(0.5)) / T::lit(2.0),
            frequency: H2Frequency::TanPiGamma,
        }
    }

    /// Short label: `H1`, `H2` or `H3`.
    pub fn label(&self) -> &'static str {
        match self {
            PerturbationKind::H1 => "H1",
            PerturbationKind::H2 { .. } => "H2",
            PerturbationKind::H3 => "H3",
        }
    }
}

/// A perturbation normalized so that `sup |H| = 1 − 1e−9`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec<T> {
    kind: PerturbationKind<T>,
    params: PowerLindley<T>,
    scale: T,
    argmax: T,
}

/// Builds and normalizes a perturbation of `PL(α, β)`.
///
/// The supremum of the unnormalized function is estimated on a logarithmic grid
/// of 10⁶ points over `[1e−12, X_max]`, refined by golden-section search around
/// the grid maximum. `X_max` is where the envelope drops below 1e−300; for `H3`,
/// whose envelope never decays, it is where the density does, and the supremum
/// is the limit 1 approached as `x → ∞`.
pub fn normalize<T: Real>(kind: PerturbationKind<T>, params: PowerLindley<T>) -> Result<PerturbationSpec<T>> {
    let alpha = params.alpha();
    if !(alpha < T::lit(0.5)) {
        return domain(
            "perturbations exist only for alpha < 1/2 (moment-indeterminate range)",
            alpha.as_f64(),
        );
    }
    if let PerturbationKind::H2 { b, gamma, .. } = kind {
        if !(b > T::zero() && b.is_finite()) {
            return domain("H2 requires b > 0", b.as_f64());
        }
        if !(gamma > alpha && gamma < T::lit(0.5)) {
            return domain("H2 requires alpha < gamma < 1/2", gamma.as_f64());
        }
    }
    let shape = Shape { kind, params };
    let (sup, argmax) = shape.supremum()?;
    Ok(PerturbationSpec {
        kind,
        params,
        scale: (T::one() - T::lit(DEFLATION)) / sup,
        argmax,
    })
}

impl<T: Real> PerturbationSpec<T> {
    pub fn new(kind: PerturbationKind<T>, params: PowerLindley<T>) -> Result<Self> {
        normalize(kind, params)
    }

    /// Recomputes the normalization constant from scratch.
    pub fn renormalize(&self) -> Result<Self> {
        normalize(self.kind, self.params)
    }

    pub fn kind(&self) -> PerturbationKind<T> {
        self.kind
    }

    pub fn params(&self) -> PowerLindley<T> {
        self.params
    }

    /// The normalization constant `M`.
    pub fn scale(&self) -> T {
        self.scale
    }

    /// A point where `|H|` is within the normalization tolerance of its supremum.
    pub fn argmax(&self) -> T {
        self.argmax
    }

    fn shape(&self) -> Shape<T> {
        Shape {
            kind: self.kind,
            params: self.params,
        }
    }

    /// `H(x)`; zero for `x < 0`, the right limit at `x = 0`.
    pub fn value(&self, x: T) -> T {
        if x < T::zero() || x.is_nan() {
            return T::zero();
        }
        self.scale * self.shape().raw_at_zero_or(x)
    }

    /// `H(u^{1/α})`, evaluated from `u = x^α` without forming `x`.
    pub fn value_at_power(&self, u: T) -> T {
        if !(u > T::zero()) {
            return self.value(T::zero());
        }
        self.scale * self.shape().raw(u.ln() / self.params.alpha())
    }
}

/// `H(x)` for a normalized perturbation.
pub fn perturbation_value<T: Real>(spec: &PerturbationSpec<T>, x: T) -> T {
    spec.value(x)
}

#[derive(Debug, Clone, Copy)]
struct Shape<T> {
    kind: PerturbationKind<T>,
    params: PowerLindley<T>,
}

impl<T: Real> Shape<T> {
    fn tan_pi(v: T) -> T {
        (T::PI() * v).tan()
    }

    /// Unnormalized value at `x = e^{log_x}`.
    fn raw(&self, log_x: T) -> T {
        let alpha = self.params.alpha();
        let beta = self.params.beta();
        let y = (alpha * log_x).exp();
        match self.kind {
            PerturbationKind::H1 => {
                let omega = T::lit(2.0) * beta * Self::tan_pi(alpha);
                self.log_envelope(log_x).exp() * (omega * y).sin()
            }
            PerturbationKind::H2 { b, gamma, frequency } => {
                let angle = match frequency {
                    H2Frequency::TanPiGamma => gamma,
                    H2Frequency::TanPiAlpha => alpha,
                };
                let z = (gamma * log_x).exp();
                self.log_envelope(log_x).exp() * (b * Self::tan_pi(angle) * z).sin()
            }
            PerturbationKind::H3 => {
                let pa = T::PI() * alpha;
                let theta = beta * Self::tan_pi(alpha) * y;
                let w = (T::one() + y).recip();
                w * (theta - pa).sin() + (y * w) * (theta - pa - pa).sin()
            }
        }
    }

    fn raw_at_zero_or(&self, x: T) -> T {
        if x > T::zero() {
            self.raw(x.ln())
        } else {
            match self.kind {
                PerturbationKind::H3 => (-T::PI() * self.params.alpha()).sin(),
                _ => T::zero(),
            }
        }
    }

    /// `ln` of the non-oscillating factor of `H1`/`H2`; zero for `H3`.
    fn log_envelope(&self, log_x: T) -> T {
        let alpha = self.params.alpha();
        let beta = self.params.beta();
        let y = (alpha * log_x).exp();
        let common = (T::one() - alpha) * log_x - y.ln_1p();
        match self.kind {
            PerturbationKind::H1 => common - beta * y,
            PerturbationKind::H2 { b, gamma, .. } => common + beta * y - b * (gamma * log_x).exp(),
            PerturbationKind::H3 => T::zero(),
        }
    }

    fn scan_end(&self) -> T {
        let alpha = self.params.alpha();
        let beta = self.params.beta();
        match self.kind {
            PerturbationKind::H3 => damping_cutoff(beta, alpha),
            _ => {
                let floor = -T::lit(DAMPING_LOG_CUTOFF);
                let mut x = T::one();
                while self.log_envelope(x.ln()) >= floor && x < T::max_value() / T::lit(4.0) {
                    x = x * T::lit(2.0);
                }
                x
            }
        }
    }

    /// `(sup |raw|, a point where it is essentially attained)`.
    fn supremum(&self) -> Result<(T, T)> {
        let lo = T::lit(GRID_START).ln();
        let hi = self.scan_end().ln();
        let step = (hi - lo) / T::from_usize_lossy(GRID_POINTS - 1);
        let at = |i: usize| lo + step * T::from_usize_lossy(i);
        let mut best = (T::zero(), 0usize);
        for i in 0..GRID_POINTS {
            let v = self.raw(at(i)).abs();
            if v > best.0 {
                best = (v, i);
            }
        }
        let (grid_sup, i) = best;
        if !(grid_sup.is_finite()) || grid_sup <= T::min_positive_value() {
            return Err(Error::Normalization(format!(
                "{} has no usable supremum on the scan grid (max |H| = {})",
                self.kind.label(),
                grid_sup
            )));
        }
        let a = at(i.saturating_sub(1));
        let b = at((i + 1).min(GRID_POINTS - 1));
        let (refined_log_x, refined) = golden_max(|lx| self.raw(lx).abs(), a, b);
        let (mut sup, mut argmax) = if refined > grid_sup {
            (refined, refined_log_x.exp())
        } else {
            (grid_sup, at(i).exp())
        };
        if let PerturbationKind::H3 = self.kind {
            let (limit, far_point) = self.h3_asymptote();
            if limit >= sup {
                sup = limit;
                argmax = far_point;
            }
        }
        Ok((sup, argmax))
    }

    // |H3| → |sin(θ − 2πα)| as x → ∞, so its supremum is 1; return a far crest
    // of that sine, where the value is within ~1/y of 1.
    fn h3_asymptote(&self) -> (T, T) {
        let alpha = self.params.alpha();
        let omega = self.params.beta() * Self::tan_pi(alpha);
        let target = T::lit(1e8).min(T::lit(1e-3) / T::epsilon());
        let turns = (target * omega / T::TAU()).floor();
        let theta = T::FRAC_PI_2() + T::lit(2.0) * T::PI() * alpha + T::TAU() * turns;
        let y = theta / omega;
        (T::one(), y.powf(alpha.recip()))
    }
}

// Golden-section search for the maximum of `f` on `[a, b]`.
fn golden_max<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERATIONS {
        if (b - a).abs() <= T::epsilon() * (a.abs() + b.abs()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// A member `f_ε = f (1 + ε H)` of a Stieltjes class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StieltjesMember<T> {
    spec: PerturbationSpec<T>,
    epsilon: T,
}

impl<T: Real> StieltjesMember<T> {
    pub fn new(spec: PerturbationSpec<T>, epsilon: T) -> Result<Self> {
        if !(epsilon.abs() <= T::one()) {
            return domain("epsilon must lie in [-1, 1]", epsilon.as_f64());
        }
        Ok(Self { spec, epsilon })
    }

    pub fn spec(&self) -> &PerturbationSpec<T> {
        &self.spec
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn density(&self, x: T) -> T {
        stieltjes_density(self, x)
    }

    /// `∫ x^k f_ε(x) dx` by quadrature of the whole perturbed density in `u = x^α`.
    pub fn moment(&self, k: u32, quad: &QuadratureSpec<T>) -> Result<Integral<T>> {
        let p = self.spec.params();
        let alpha = p.alpha();
        let beta = p.beta();
        let power = T::from_u32(k).expect("u32 representable") / alpha;
        let log_c = T::lit(2.0) * beta.ln() - beta.ln_1p();
        let g = |u: T| {
            let base = (log_c + power * u.ln() - beta * u).exp() * (T::one() + u);
            base * (T::one() + self.epsilon * self.spec.value_at_power(u))
        };
        integrate_semi_infinite(g, quad, None)
    }
}

/// `f(x) [1 + ε H(x)]`; exactly the power Lindley density when `ε = 0`.
pub fn stieltjes_density<T: Real>(member: &StieltjesMember<T>, x: T) -> T {
    let f = member.spec.params().pdf(x);
    if member.epsilon == T::zero() {
        return f;
    }
    f * (T::one() + member.epsilon * member.spec.value(x))
}

/// Outcome of one vanishing-moment check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResidual<T> {
    pub k: u32,
    /// `|∫ x^k f H dx| / m_k`.
    pub residual: T,
    /// Quadrature error bound on the same scale.
    pub error_bound: T,
    /// False when the quadrature missed its tolerance; the residual is then the
    /// best available estimate.
    pub converged: bool,
}

// C u^a e^{−q u} sin(ω u − φ), with C carried as its logarithm.
#[derive(Debug, Clone, Copy)]
struct DampedSine<T> {
    log_coef: T,
    power: T,
    rate: T,
    omega: T,
    phase: T,
}

impl<T: Real> DampedSine<T> {
    fn integrate(&self, quad: &QuadratureSpec<T>) -> Result<Integral<T>> {
        let log_weight = |u: T| self.log_coef + self.power * u.ln() - self.rate * u;
        let g = |u: T| {
            if u > T::zero() {
                log_weight(u).exp() * (self.omega * u - self.phase).sin()
            } else {
                T::zero()
            }
        };
        let mut quad = *quad;
        if quad.tail_cutoff.is_none() {
            let floor = -T::lit(DAMPING_LOG_CUTOFF);
            let mut u = (self.power / self.rate).max(T::one());
            while log_weight(u) >= floor && u < T::max_value() / T::lit(4.0) {
                u = u * T::lit(2.0);
            }
            quad = quad.with_tail_cutoff(u);
        }
        integrate_semi_infinite(g, &quad, Some(Oscillation::from_angular(self.omega, self.phase)))
    }
}

fn moment_integrands<T: Real>(spec: &PerturbationSpec<T>, k: u32) -> Vec<DampedSine<T>> {
    let p = spec.params();
    let alpha = p.alpha();
    let beta = p.beta();
    let kf = T::from_u32(k).expect("u32 representable");
    let one = T::one();
    let log_front = spec.scale().ln() + T::lit(2.0) * beta.ln() - beta.ln_1p() - p.log_moment(k);
    let tan_pi = |v: T| (T::PI() * v).tan();
    match spec.kind() {
        PerturbationKind::H1 => vec![DampedSine {
            log_coef: log_front,
            power: (kf + one) / alpha - one,
            rate: T::lit(2.0) * beta,
            omega: T::lit(2.0) * beta * tan_pi(alpha),
            phase: T::zero(),
        }],
        PerturbationKind::H2 { b, gamma, frequency } => {
            let angle = match frequency {
                H2Frequency::TanPiGamma => gamma,
                H2Frequency::TanPiAlpha => alpha,
            };
            vec![DampedSine {
                log_coef: log_front + (alpha / gamma).ln(),
                power: (kf + one) / gamma - one,
                rate: b,
                omega: b * tan_pi(angle),
                phase: T::zero(),
            }]
        }
        PerturbationKind::H3 => {
            let omega = beta * tan_pi(alpha);
            let pa = T::PI() * alpha;
            vec![
                DampedSine {
                    log_coef: log_front,
                    power: kf / alpha,
                    rate: beta,
                    omega,
                    phase: pa,
                },
                DampedSine {
                    log_coef: log_front,
                    power: kf / alpha + one,
                    rate: beta,
                    omega,
                    phase: pa + pa,
                },
            ]
        }
    }
}

/// `r_k = |∫₀^∞ x^k f(x) H(x) dx| / m_k` for `k = 0..=k_max`, with default tolerances.
pub fn verify_vanishing_moments<T: Real>(spec: &PerturbationSpec<T>, k_max: u32) -> Vec<MomentResidual<T>> {
    verify_vanishing_moments_with(spec, k_max, &QuadratureSpec::default())
}

/// As [`verify_vanishing_moments`] with explicit quadrature settings.
pub fn verify_vanishing_moments_with<T: Real>(
    spec: &PerturbationSpec<T>,
    k_max: u32,
    quad: &QuadratureSpec<T>,
) -> Vec<MomentResidual<T>> {
    (0..=k_max)
        .map(|k| {
            let mut value = T::zero();
            let mut bound = T::zero();
            let mut converged = true;
            for piece in moment_integrands(spec, k) {
                match piece.integrate(quad) {
                    Ok(r) => {
                        value = value + r.value;
                        bound = bound + r.error;
                    }
                    Err(Error::Accuracy { estimate, error_bound }) => {
                        value = value + T::lit(estimate);
                        bound = bound + T::lit(error_bound);
                        converged = false;
                    }
                    Err(_) => {
                        value = T::nan();
                        bound = T::infinity();
                        converged = false;
                    }
                }
            }
            MomentResidual {
                k,
                residual: value.abs(),
                error_bound: bound,
                converged,
            }
        })
        .collect()
}

fn check_gr_args<T: Real>(p: T, q: T, t: T) -> Result<()> {
    if !(p > T::zero()) {
        return domain("p must be positive", p.as_f64());
    }
    if !(q > T::zero()) {
        return domain("q must be positive", q.as_f64());
    }
    if !(t.abs() < T::FRAC_PI_2()) {
        return domain("|t| must be below pi/2", t.as_f64());
    }
    Ok(())
}

// Γ(p) q^{−p} cos^p t
fn gr_magnitude<T: Real>(p: T, q: T, t: T) -> Result<T> {
    Ok((log_gamma(p)? - p * q.ln() + p * t.cos().ln()).exp())
}

/// `∫₀^∞ x^{p−1} e^{−qx} sin(qx tan t) dx = Γ(p) q^{−p} cos^p t sin(pt)`.
pub fn gr_sine_integral<T: Real>(p: T, q: T, t: T) -> Result<T> {
    check_gr_args(p, q, t)?;
    if t == T::zero() {
        return Ok(T::zero());
    }
    Ok(gr_magnitude(p, q, t)? * (p * t).sin())
}

/// `∫₀^∞ x^{p−1} e^{−qx} cos(qx tan t) dx = Γ(p) q^{−p} cos^p t cos(pt)`.
pub fn gr_cosine_integral<T: Real>(p: T, q: T, t: T) -> Result<T> {
    check_gr_args(p, q, t)?;
    Ok(gr_magnitude(p, q, t)? * (p * t).cos())
}
