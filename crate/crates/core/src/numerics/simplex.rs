//! Nelder–Mead simplex search over two positive parameters, carried out in
//! log space so every trial point stays positive.

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Settings for [`minimize_2d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions<T> {
    /// Convergence threshold on the simplex diameter, in log space.
    pub diameter_tol: T,
    pub max_iterations: usize,
    /// Edge length of the initial simplex, in log space.
    pub initial_step: T,
    /// Number of restarts from the incumbent after convergence.
    pub restarts: usize,
}

impl<T: Real> Default for SimplexOptions<T> {
    fn default() -> Self {
        Self {
            diameter_tol: T::attainable(1e-10, 16.0),
            max_iterations: 5000,
            initial_step: T::lit(0.25),
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The simplex diameter fell below the tolerance.
    Converged,
    /// The iteration limit was reached first.
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T> {
    pub point: (T, T),
    pub value: T,
    pub iterations: usize,
    pub termination: Termination,
}

impl<T> Minimum<T> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

/// Local minimizer of `objective` over the positive quadrant starting at `start`.
///
/// Points where the objective is not finite are treated as `+∞`.
pub fn minimize_2d<T: Real, F: Fn(T, T) -> T>(
    objective: F,
    start: (T, T),
    options: &SimplexOptions<T>,
) -> Result<Minimum<T>> {
    if !(start.0 > T::zero() && start.1 > T::zero()) {
        return domain("start must be a pair of positive reals", start.0.min(start.1).as_f64());
    }
    let eval = |p: [T; 2]| -> T {
        let v = objective(p[0].exp(), p[1].exp());
        if v.is_finite() {
            v
        } else {
            T::infinity()
        }
    };
    let origin = [start.0.ln(), start.1.ln()];
    if !eval(origin).is_finite() {
        return Err(Error::Optimization(format!(
            "objective is not finite at the start ({}, {})",
            start.0, start.1
        )));
    }

    let mut best = nelder_mead(&eval, origin, options, options.max_iterations)?;
    let mut iterations = best.iterations;
    for _ in 0..options.restarts {
        if best.termination != Termination::Converged || iterations >= options.max_iterations {
            break;
        }
        let again = nelder_mead(&eval, best.point, options, options.max_iterations - iterations)?;
        iterations += again.iterations;
        let improved = again.value < best.value;
        let termination = again.termination;
        if improved {
            best = again;
        }
        best.termination = termination;
        if !improved {
            break;
        }
    }
    Ok(Minimum {
        point: (best.point[0].exp(), best.point[1].exp()),
        value: best.value,
        iterations,
        termination: best.termination,
    })
}

struct Run<T> {
    point: [T; 2],
    value: T,
    iterations: usize,
    termination: Termination,
}

fn nelder_mead<T: Real, E: Fn([T; 2]) -> T>(
    eval: &E,
    origin: [T; 2],
    options: &SimplexOptions<T>,
    max_iterations: usize,
) -> Result<Run<T>> {
    let step = options.initial_step;
    let mut simplex = [origin, [origin[0] + step, origin[1]], [origin[0], origin[1] + step]];
    let mut values = simplex.map(eval);
    if values.iter().all(|v| !v.is_finite()) {
        return Err(Error::Optimization("objective is non-finite on the whole simplex".into()));
    }

    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let combine = |a: [T; 2], b: [T; 2], t: T| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    let mut iterations = 0;
    let mut termination = Termination::MaxIterations;
    while iterations < max_iterations {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        if diameter(&simplex) < options.diameter_tol {
            termination = Termination::Converged;
            break;
        }
        iterations += 1;

        let centroid = [half * (simplex[0][0] + simplex[1][0]), half * (simplex[0][1] + simplex[1][1])];
        let worst = simplex[2];
        let reflected = combine(centroid, worst, -T::one());
        let f_r = eval(reflected);
        if f_r < values[0] {
            let expanded = combine(centroid, worst, -two);
            let f_e = eval(expanded);
            if f_e < f_r {
                simplex[2] = expanded;
                values[2] = f_e;
            } else {
                simplex[2] = reflected;
                values[2] = f_r;
            }
            continue;
        }
        if f_r < values[1] {
            simplex[2] = reflected;
            values[2] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[2] {
            let c = combine(centroid, reflected, half);
            (c, eval(c))
        } else {
            let c = combine(centroid, worst, half);
            (c, eval(c))
        };
        if f_c < values[2].min(f_r) {
            simplex[2] = contracted;
            values[2] = f_c;
            continue;
        }
        for i in 1..3 {
            simplex[i] = combine(simplex[0], simplex[i], half);
            values[i] = eval(simplex[i]);
        }
    }
    let (i_best, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("three vertices");
    if !values[i_best].is_finite() {
        return Err(Error::Optimization("objective became non-finite everywhere".into()));
    }
    Ok(Run {
        point: simplex[i_best],
        value: values[i_best],
        iterations,
        termination,
    })
}

fn diameter<T: Real>(simplex: &[[T; 2]; 3]) -> T {
    let mut d = T::zero();
    for i in 0..3 {
        for j in i + 1..3 {
            let dx = simplex[i][0] - simplex[j][0];
            let dy = simplex[i][1] - simplex[j][1];
            d = d.max(dx.hypot(dy));
        }
    }
    d
}
