//! Nelder–Mead simplex minimization.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Simplex coefficients and stopping rule.
///
/// A run stops when the spread of function values across the simplex is at
/// most `tol · (|f_best| + tol)`. After a run the simplex is rebuilt around
/// the incumbent up to `restarts` more times; restarting stops early once a
/// run no longer improves the best value by more than that same margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexConfig<T> {
    pub reflection: T,
    pub expansion: T,
    pub contraction: T,
    pub shrink: T,
    pub tol: T,
    pub max_iter: usize,
    pub restarts: usize,
}

impl<T: Scalar> Default for SimplexConfig<T> {
    fn default() -> Self {
        Self {
            reflection: T::one(),
            expansion: c(2.0),
            contraction: c(0.5),
            shrink: c(0.5),
            tol: c(1e-8),
            max_iter: 500,
            restarts: 3,
        }
    }
}

impl<T: Scalar> SimplexConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let one = T::one();
        let ok = self.reflection > T::zero()
            && self.expansion > one
            && self.expansion > self.reflection
            && self.contraction > T::zero()
            && self.contraction < one
            && self.shrink > T::zero()
            && self.shrink < one
            && self.tol > T::zero()
            && self.max_iter >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid simplex configuration {self:?}"
            )))
        }
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOutcome<T, const N: usize> {
    pub argmin: [T; N],
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
    pub runs: usize,
    pub converged: bool,
}

fn finite_or_inf<T: Scalar>(v: T) -> T {
    if v.is_finite() {
        v
    } else {
        T::infinity()
    }
}

struct Evaluator<F> {
    f: F,
    count: usize,
    finite_seen: bool,
}

impl<F> Evaluator<F> {
    fn eval<T: Scalar, const N: usize>(&mut self, x: &[T; N]) -> T
    where
        F: FnMut(&[T; N]) -> T,
    {
        self.count += 1;
        let v = finite_or_inf((self.f)(x));
        if v.is_finite() {
            self.finite_seen = true;
        }
        v
    }
}

fn initial_simplex<T: Scalar, const N: usize>(start: &[T; N]) -> Vec<[T; N]> {
    let mut simplex = vec![*start];
    for i in 0..N {
        let mut p = *start;
        p[i] = if p[i] == T::zero() {
            c(0.00025)
        } else {
            p[i] + c::<T>(0.05) * p[i]
        };
        simplex.push(p);
    }
    simplex
}

fn converged<T: Scalar>(best: T, worst: T, tol: T) -> bool {
    best.is_finite() && worst - best <= tol * (best.abs() + tol)
}

struct Run<T, const N: usize> {
    argmin: [T; N],
    value: T,
    iterations: usize,
    converged: bool,
}

fn run_once<T: Scalar, const N: usize, F: FnMut(&[T; N]) -> T>(
    eval: &mut Evaluator<F>,
    start: &[T; N],
    cfg: &SimplexConfig<T>,
) -> Result<Run<T, N>> {
    let mut pts = initial_simplex(start);
    let mut vals: Vec<T> = pts.iter().map(|p| eval.eval(p)).collect();
    let mut order: Vec<usize> = (0..=N).collect();
    let mut iterations = 0;

    loop {
        order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal));
        let (ib, iw, isw) = (order[0], order[N], order[N - 1]);
        if converged(vals[ib], vals[iw], cfg.tol) {
            return Ok(Run {
                argmin: pts[ib],
                value: vals[ib],
                iterations,
                converged: true,
            });
        }
        if iterations >= cfg.max_iter {
            return Ok(Run {
                argmin: pts[ib],
                value: vals[ib],
                iterations,
                converged: false,
            });
        }
        iterations += 1;
        eval.finite_seen = false;

        let mut centroid = [T::zero(); N];
        for &k in &order[..N] {
            for (ci, &pi) in centroid.iter_mut().zip(pts[k].iter()) {
                *ci = *ci + pi;
            }
        }
        let inv_n: T = c(1.0 / N as f64);
        for ci in centroid.iter_mut() {
            *ci = *ci * inv_n;
        }
        let along = |t: T, from: &[T; N]| -> [T; N] {
            let mut p = centroid;
            for (pi, (&ci, &fi)) in p.iter_mut().zip(centroid.iter().zip(from.iter())) {
                *pi = ci + t * (ci - fi);
            }
            p
        };

        let worst = pts[iw];
        let xr = along(cfg.reflection, &worst);
        let fr = eval.eval(&xr);
        let mut shrink = false;
        if fr < vals[ib] {
            let xe = along(cfg.reflection * cfg.expansion, &worst);
            let fe = eval.eval(&xe);
            if fe < fr {
                pts[iw] = xe;
                vals[iw] = fe;
            } else {
                pts[iw] = xr;
                vals[iw] = fr;
            }
        } else if fr < vals[isw] {
            pts[iw] = xr;
            vals[iw] = fr;
        } else if fr < vals[iw] {
            let xc = along(cfg.reflection * cfg.contraction, &worst);
            let fc = eval.eval(&xc);
            if fc <= fr {
                pts[iw] = xc;
                vals[iw] = fc;
            } else {
                shrink = true;
            }
        } else {
            let xcc = along(-cfg.contraction, &worst);
            let fcc = eval.eval(&xcc);
            if fcc < vals[iw] {
                pts[iw] = xcc;
                vals[iw] = fcc;
            } else {
                shrink = true;
            }
        }
        if shrink {
            let best = pts[ib];
            for &k in &order[1..] {
                for (pi, &bi) in pts[k].iter_mut().zip(best.iter()) {
                    *pi = bi + cfg.shrink * (*pi - bi);
                }
                vals[k] = eval.eval(&pts[k]);
            }
        }
        if !eval.finite_seen {
            return Err(Error::NonFinite);
        }
    }
}

/// Minimizes `objective` from `start`.
///
/// Non-finite objective values are treated as +∞. Fails with
/// [`Error::NonFinite`] if the objective is non-finite at the start or at
/// every probe of an iteration.
pub fn nelder_mead<T: Scalar, const N: usize, F: FnMut(&[T; N]) -> T>(
    objective: F,
    start: [T; N],
    cfg: &SimplexConfig<T>,
) -> Result<SimplexOutcome<T, N>> {
    cfg.validate()?;
    let mut eval = Evaluator {
        f: objective,
        count: 0,
        finite_seen: false,
    };
    if !eval.eval(&start).is_finite() {
        return Err(Error::NonFinite);
    }
    let mut best = run_once(&mut eval, &start, cfg)?;
    let mut iterations = best.iterations;
    let mut runs = 1;
    for _ in 0..cfg.restarts {
        let next = run_once(&mut eval, &best.argmin, cfg)?;
        iterations += next.iterations;
        runs += 1;
        let gain = best.value - next.value;
        let settled = next.converged && gain <= cfg.tol * (next.value.abs() + cfg.tol);
        if next.value <= best.value {
            best = next;
        }
        if settled {
            break;
        }
    }
    Ok(SimplexOutcome {
        argmin: best.argmin,
        value: best.value,
        iterations,
        evaluations: eval.count,
        runs,
        converged: best.converged,
    })
}
