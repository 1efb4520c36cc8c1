//! Local ascent on the (scaled) probability simplex.
//!
//! [`replicator_ascent`] is the multiplicative update `x_i <- s * x_i g_i / Σ x_j g_j`.
//! For homogeneous polynomials with nonnegative coefficients each step never
//! decreases the objective, and its fixed points with full support are exactly
//! the points where every gradient entry equals the common value `Σ x_j g_j / s`.
//! [`projected_ascent`] is a backtracking projected-gradient method for
//! objectives without that structure.

/// A differentiable objective on `R^dim`.
pub trait Objective {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64], grad: &mut [f64]);
}

#[derive(Clone, Copy, Debug)]
pub struct AscentSettings {
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub value_tolerance: f64,
}

impl Default for AscentSettings {
    fn default() -> Self {
        AscentSettings {
            max_iterations: 100_000,
            step_tolerance: 1e-10,
            value_tolerance: 1e-12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Relative weights below which coordinates are zeroed before a polish run,
/// tried in turn. Coordinates whose gradient ties the optimum value decay
/// only sublinearly, so a single tiny threshold is not enough.
const PRUNE_FRACTIONS: [f64; 3] = [1e-7, 1e-4, 1e-2];
/// Above this support residual a converged run is continued with the
/// value test switched off, since on flat maxima the value stalls first.
const POLISH_RESIDUAL: f64 = 1e-9;

/// `max_{x_i > 0} |g_i − Σ_j x_j g_j / s|`.
fn support_residual<O: Objective + ?Sized>(obj: &O, x: &[f64], total: f64) -> f64 {
    let mut grad = vec![0.0; x.len()];
    obj.gradient(x, &mut grad);
    let mean = x.iter().zip(&grad).map(|(a, b)| a * b).sum::<f64>() / total;
    x.iter()
        .zip(&grad)
        .filter(|(w, _)| **w > 0.0)
        .fold(0.0, |m, (_, g)| m.max((g - mean).abs()))
}

pub fn replicator_ascent<O: Objective + ?Sized>(
    obj: &O,
    start: Vec<f64>,
    settings: &AscentSettings,
) -> LocalResult {
    let total: f64 = start.iter().sum();
    let mut best = replicator_run(obj, start, total, settings, 0);
    if !best.converged {
        return best;
    }
    // Drop coordinates that are decaying toward zero, then re-converge on
    // the reduced support. Kept only if it does not lose value.
    for frac in PRUNE_FRACTIONS {
        let mut pruned = best.x.clone();
        let mut changed = false;
        for w in pruned.iter_mut() {
            if *w > 0.0 && *w < frac * total {
                *w = 0.0;
                changed = true;
            }
        }
        if !changed {
            continue;
        }
        let s: f64 = pruned.iter().sum();
        pruned.iter_mut().for_each(|w| *w *= total / s);
        let polished = replicator_run(obj, pruned, total, settings, best.iterations);
        // zeroing negligible weights may cost a few ulps
        let floor = best.value - 8.0 * f64::EPSILON * best.value.abs();
        if polished.converged && polished.value >= floor {
            best = polished;
        } else {
            best.iterations = polished.iterations;
        }
    }
    if support_residual(obj, &best.x, total) > POLISH_RESIDUAL {
        let strict = AscentSettings {
            value_tolerance: 0.0,
            ..*settings
        };
        let polished = replicator_run(obj, best.x.clone(), total, &strict, best.iterations);
        if polished.value >= best.value {
            best = polished;
        } else {
            best.iterations = polished.iterations;
        }
    }
    best
}

fn replicator_run<O: Objective + ?Sized>(
    obj: &O,
    mut x: Vec<f64>,
    total: f64,
    settings: &AscentSettings,
    used: usize,
) -> LocalResult {
    let n = obj.dim();
    let mut grad = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut value = obj.value(&x);
    let mut iterations = used;
    let mut converged = false;
    while iterations < settings.max_iterations {
        iterations += 1;
        obj.gradient(&x, &mut grad);
        let denom: f64 = x.iter().zip(&grad).map(|(a, b)| a * b).sum();
        if denom <= 0.0 {
            // Objective vanishes on the current support: take a projected
            // gradient step to reach a region where it is positive.
            if grad.iter().all(|&g| g <= 0.0) {
                if x.iter().all(|&w| (w - total / n as f64).abs() < 1e-15) {
                    converged = true;
                    break;
                }
                x.iter_mut()
                    .for_each(|w| *w = 0.5 * *w + 0.5 * total / n as f64);
            } else {
                let gmax = grad.iter().cloned().fold(f64::MIN, f64::max);
                for i in 0..n {
                    next[i] = x[i] + total * grad[i] / gmax;
                }
                project_simplex(&mut next, total);
                x.copy_from_slice(&next);
            }
            value = obj.value(&x);
            continue;
        }
        let scale = total / denom;
        let mut step = 0.0f64;
        for i in 0..n {
            next[i] = x[i] * grad[i] * scale;
            step = step.max((next[i] - x[i]).abs());
        }
        let new_value = obj.value(&next);
        let improvement = new_value - value;
        std::mem::swap(&mut x, &mut next);
        value = new_value;
        if improvement.abs() < settings.value_tolerance || step < settings.step_tolerance {
            converged = true;
            break;
        }
    }
    LocalResult {
        x,
        value,
        iterations,
        converged,
    }
}

/// Projected gradient ascent with Armijo backtracking. `project` maps any
/// point to a feasible one.
pub fn projected_ascent<O, P>(
    obj: &O,
    start: Vec<f64>,
    project: P,
    settings: &AscentSettings,
) -> LocalResult
where
    O: Objective + ?Sized,
    P: Fn(&mut [f64]),
{
    let n = obj.dim();
    let mut x = start;
    project(&mut x);
    let mut value = obj.value(&x);
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut eta: f64 = 1.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < settings.max_iterations {
        iterations += 1;
        obj.gradient(&x, &mut grad);
        let gnorm = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        if gnorm == 0.0 {
            converged = true;
            break;
        }
        eta = (eta * 2.0).min(1.0 / gnorm);
        let mut accepted = None;
        for _ in 0..60 {
            for i in 0..n {
                trial[i] = x[i] + eta * grad[i];
            }
            project(&mut trial);
            let ascent: f64 = (0..n).map(|i| grad[i] * (trial[i] - x[i])).sum();
            let tv = obj.value(&trial);
            if tv >= value + 1e-4 * ascent && tv >= value {
                accepted = Some(tv);
                break;
            }
            eta *= 0.5;
        }
        let Some(tv) = accepted else {
            converged = true;
            break;
        };
        let step = (0..n).fold(0.0f64, |m, i| m.max((trial[i] - x[i]).abs()));
        let improvement = tv - value;
        x.copy_from_slice(&trial);
        value = tv;
        if improvement < settings.value_tolerance || step < settings.step_tolerance {
            converged = true;
            break;
        }
    }
    LocalResult {
        x,
        value,
        iterations,
        converged,
    }
}

/// Euclidean projection onto `{x >= 0, Σ x = total}`.
pub fn project_simplex(x: &mut [f64], total: f64) {
    let mut sorted: Vec<f64> = x.to_vec();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let t = (cumulative - total) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter_mut().for_each(|v| *v = (*v - theta).max(0.0));
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x0 * x1 on the simplex; max 1/4 at (1/2, 1/2).
    struct Product;

    impl Objective for Product {
        fn dim(&self) -> usize {
            2
        }
        fn value(&self, x: &[f64]) -> f64 {
            x[0] * x[1]
        }
        fn gradient(&self, x: &[f64], g: &mut [f64]) {
            g[0] = x[1];
            g[1] = x[0];
        }
    }

    #[test]
    fn projection_examples() {
        let mut x = [0.5, 0.5];
        project_simplex(&mut x, 1.0);
        assert_eq!(x, [0.5, 0.5]);
        let mut x = [2.0, 0.0, -1.0];
        project_simplex(&mut x, 1.0);
        assert_eq!(x, [1.0, 0.0, 0.0]);
        let mut x = [0.3, 0.3, 0.3];
        project_simplex(&mut x, 0.6);
        assert!(x.iter().all(|v| (v - 0.2).abs() < 1e-15));
    }

    #[test]
    fn replicator_finds_product_max() {
        let r = replicator_ascent(&Product, vec![0.9, 0.1], &AscentSettings::default());
        assert!(r.converged);
        assert!((r.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn replicator_escapes_zero_value() {
        let r = replicator_ascent(&Product, vec![1.0, 0.0], &AscentSettings::default());
        assert!((r.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn projected_ascent_finds_product_max() {
        let r = projected_ascent(
            &Product,
            vec![0.99, 0.01],
            |x| project_simplex(x, 1.0),
            &AscentSettings::default(),
        );
        assert!((r.value - 0.25).abs() < 1e-10, "{}", r.value);
    }
}
