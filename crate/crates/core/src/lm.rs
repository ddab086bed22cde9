//! Damped Gauss–Newton (Levenberg–Marquardt) for small dense real systems.

use nalgebra::{DMatrix, DVector};

#[derive(Clone, Copy, Debug)]
pub struct LmOptions {
    pub max_iters: usize,
    /// Stop once every residual is below this.
    pub ftol: f64,
    /// Give up when the cost has not halved over this many iterations while
    /// still above `stall_floor`.
    pub stall_window: usize,
    pub stall_floor: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions { max_iters: 300, ftol: 1e-14, stall_window: 30, stall_floor: 1e-8 }
    }
}

#[derive(Clone, Debug)]
pub struct LmOutcome {
    pub params: Vec<f64>,
    pub max_residual: f64,
    #[allow(dead_code)]
    pub iterations: usize,
}

/// `f(p, r, J)` fills the residual vector and, when asked, the Jacobian
/// (rows = residuals, columns = parameters).
pub fn minimize<F>(f: F, p0: Vec<f64>, opts: &LmOptions) -> LmOutcome
where
    F: Fn(&[f64], &mut Vec<f64>, Option<&mut DMatrix<f64>>),
{
    let np = p0.len();
    let mut p = p0;
    let mut r = Vec::new();
    f(&p, &mut r, None);
    let nr = r.len();
    let maxabs = |r: &[f64]| r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cost = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    if np == 0 {
        return LmOutcome { params: p, max_residual: maxabs(&r), iterations: 0 };
    }
    let mut jac = DMatrix::<f64>::zeros(nr, np);
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    let mut history = vec![c];
    let mut it = 0;
    let mut trial = Vec::with_capacity(nr);
    while it < opts.max_iters && maxabs(&r) > opts.ftol {
        it += 1;
        jac.fill(0.0);
        f(&p, &mut r, Some(&mut jac));
        let jt_j = jac.tr_mul(&jac);
        let rv = DVector::from_column_slice(&r);
        let grad = jac.tr_mul(&rv);
        let mut improved = false;
        while lambda < 1e16 {
            let mut m = jt_j.clone();
            for i in 0..np {
                m[(i, i)] += lambda * jt_j[(i, i)].max(1e-9);
            }
            let Some(ch) = m.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = ch.solve(&(-&grad));
            let pn: Vec<f64> = p.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            f(&pn, &mut trial, None);
            let cn = cost(&trial);
            if cn < c {
                let small = step.norm() <= 1e-15 * (1.0 + p.iter().map(|v| v * v).sum::<f64>().sqrt());
                p = pn;
                std::mem::swap(&mut r, &mut trial);
                c = cn;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                if small {
                    lambda = 1e16;
                }
                break;
            }
            lambda *= 4.0;
        }
        if !improved || lambda >= 1e16 {
            break;
        }
        history.push(c);
        if history.len() > opts.stall_window {
            let old = history[history.len() - 1 - opts.stall_window];
            if c > opts.stall_floor && c > 0.5 * old {
                break;
            }
        }
    }
    LmOutcome { max_residual: maxabs(&r), params: p, iterations: it }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_rosenbrock_as_least_squares() {
        let f = |p: &[f64], r: &mut Vec<f64>, j: Option<&mut DMatrix<f64>>| {
            r.clear();
            r.push(10.0 * (p[1] - p[0] * p[0]));
            r.push(1.0 - p[0]);
            if let Some(j) = j {
                j[(0, 0)] = -20.0 * p[0];
                j[(0, 1)] = 10.0;
                j[(1, 0)] = -1.0;
            }
        };
        let out = minimize(f, vec![-1.2, 1.0], &LmOptions::default());
        assert!(out.max_residual < 1e-12, "{out:?}");
        assert!((out.params[0] - 1.0).abs() < 1e-10);
    }
}
