//! Derivative-free minimizers used by the factorization and tensor searches.
//!
//! The objectives these serve are cheap (a few small eigenproblems per
//! evaluation), non-smooth at eigenvalue crossings, and riddled with local
//! minima, so the crate uses Nelder-Mead restarts followed by a coordinate
//! pattern polish rather than gradient methods. Golden-section search handles
//! the one-dimensional convex balancing subproblems exactly where they occur.

use alloc::vec::Vec;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a unimodal function on `[a, b]`.
///
/// Runs a fixed number of interval reductions and returns the best probed
/// point and value. 60 iterations shrink the interval by about `1e-12`.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    iters: usize,
) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (mut best_x, mut best_f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        if f1 < best_f {
            best_x = x1;
            best_f = f1;
        }
        if f2 < best_f {
            best_x = x2;
            best_f = f2;
        }
    }
    (best_x, best_f)
}

/// Nelder-Mead simplex minimization from `x0` with initial step `step`.
///
/// Standard reflection/expansion/contraction/shrink coefficients
/// (1, 2, 0.5, 0.5). Stops after `iters` iterations or when the simplex has
/// collapsed. Returns the best vertex and its value.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    iters: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    if n == 0 {
        let v = f(x0);
        return (Vec::new(), v);
    }
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = f(x0);
    simplex.push((x0.to_vec(), f0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are comparable"));
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(simplex[0].0.iter())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= 1e-15 * (1.0 + simplex[0].1.abs()) && diameter <= 1e-12 {
            break;
        }
        let mut centroid = alloc::vec![0.0; n];
        for (x, _) in simplex.iter().take(n) {
            for (c, xi) in centroid.iter_mut().zip(x.iter()) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflect: Vec<f64> = centroid
            .iter()
            .zip(worst.0.iter())
            .map(|(c, w)| c + (c - w))
            .collect();
        let fr = f(&reflect);
        if fr < simplex[0].1 {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(worst.0.iter())
                .map(|(c, w)| c + 2.0 * (c - w))
                .collect();
            let fe = f(&expand);
            simplex[n] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflect, fr);
        } else {
            let contract: Vec<f64> = centroid
                .iter()
                .zip(worst.0.iter())
                .map(|(c, w)| c + 0.5 * (w - c))
                .collect();
            let fc = f(&contract);
            if fc < worst.1.min(fr) {
                simplex[n] = (contract, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = best
                        .iter()
                        .zip(entry.0.iter())
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    let fs = f(&shrunk);
                    *entry = (shrunk, fs);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are comparable"));
    let (x, v) = simplex.swap_remove(0);
    (x, v)
}

/// Minimizes along one direction: geometric bracket expansion from `scale`
/// followed by a golden section inside the bracket. Moves `x`/`fx` only on
/// strict improvement.
fn line_minimize<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x: &mut Vec<f64>,
    fx: &mut f64,
    direction: &[f64],
    scale: f64,
) {
    let mut probe_buf = x.clone();
    let mut probe = |f: &mut F, base: &[f64], t: f64| -> f64 {
        for ((slot, xi), di) in probe_buf.iter_mut().zip(base.iter()).zip(direction.iter()) {
            *slot = xi + t * di;
        }
        f(&probe_buf)
    };
    let mut lo = -scale;
    let mut hi = scale;
    let mut f_lo = probe(f, x, lo);
    let mut f_hi = probe(f, x, hi);
    for _ in 0..12 {
        if f_lo < fx.min(f_hi) {
            lo *= 2.6;
            f_lo = probe(f, x, lo);
        } else if f_hi < fx.min(f_lo) {
            hi *= 2.6;
            f_hi = probe(f, x, hi);
        } else {
            break;
        }
    }
    let (t, ft) = golden_section_min(|t| probe(f, x, t), lo, hi, 26);
    if ft < *fx {
        for (xi, di) in x.iter_mut().zip(direction.iter()) {
            *xi += t * di;
        }
        *fx = ft;
    }
}

/// Powell's direction-set minimization with golden-section line searches.
///
/// Maintains a direction set that gradually aligns itself with the
/// objective's valley: after each sweep of line minimizations the sweep's
/// net displacement is minimized along too, and when that move dominates it
/// replaces the direction that contributed most (Powell's classic update).
/// This finishes the curved, nearly flat valleys these factorization
/// objectives produce far faster than a simplex does. The line-search scale
/// shrinks as rounds stall; the run ends at the scale floor.
pub(crate) fn powell_min<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    scale0: f64,
    max_rounds: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    if n == 0 {
        let v = f(x0);
        return (Vec::new(), v);
    }
    let fresh_axes = || -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                let mut d = alloc::vec![0.0; n];
                d[i] = 1.0;
                d
            })
            .collect()
    };
    let mut dirs = fresh_axes();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut scale = scale0;
    for _ in 0..max_rounds {
        let round_start_value = fx;
        let round_start_point = x.clone();
        let mut biggest_drop = 0.0f64;
        let mut drop_idx = 0usize;
        for i in 0..n {
            let before = fx;
            line_minimize(&mut f, &mut x, &mut fx, &dirs[i], scale);
            let drop = before - fx;
            if drop > biggest_drop {
                biggest_drop = drop;
                drop_idx = i;
            }
        }
        let disp: Vec<f64> = x
            .iter()
            .zip(round_start_point.iter())
            .map(|(a, b)| a - b)
            .collect();
        let disp_norm = disp.iter().map(|t| t * t).sum::<f64>().sqrt();
        if disp_norm > 1e-14 {
            let unit: Vec<f64> = disp.iter().map(|t| t / disp_norm).collect();
            let before = fx;
            line_minimize(&mut f, &mut x, &mut fx, &unit, scale);
            if before - fx > biggest_drop {
                dirs[drop_idx] = unit;
            }
        }
        // Once a whole sweep moves the point by less than the probe scale,
        // the bracket is too coarse for the error that remains: tighten it
        // and restore a fresh axis set so the directions stay well
        // conditioned. Line searches still reach far because the bracket
        // expands while an endpoint keeps winning, so a smaller scale does
        // not strand the point in a long valley.
        let gained = round_start_value - fx;
        if disp_norm <= 0.4 * scale || gained <= 1e-13 * (1.0 + fx.abs()) {
            if scale <= 1e-5 {
                break;
            }
            scale *= 0.2;
            dirs = fresh_axes();
        }
    }
    (x, fx)
}

/// Coordinate pattern polish: greedy axis-aligned probes with a halving step.
///
/// Cheap finisher that reliably gains a few digits after Nelder-Mead has
/// found the right basin. Stops when the step drops below `1e-9` or the
/// round budget runs out.
pub fn coordinate_polish<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    rounds: usize,
) -> (Vec<f64>, f64) {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut h = step;
    for _ in 0..rounds {
        if h < 1e-9 {
            break;
        }
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * h;
                let ft = f(&x);
                if ft < fx {
                    fx = ft;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (x, fx)
}

/// Multistart driver shared by the factorization and tensor searches.
///
/// Restart 0 always starts from the origin of the parameter space (the
/// identity of whatever exponential chart the caller uses), so the searched
/// minimum never exceeds the objective's identity value. Later restarts
/// perturb with seeded Gaussian noise, and callers may add deterministic
/// warm starts, which compete with the restarts on equal footing. The
/// restarts themselves stay coarse and only locate promising basins; Powell
/// runs on the leaders then extract the digits there, which costs far less
/// than refining every restart. Fallible objectives short-circuit: the
/// first error aborts the whole search.
pub(crate) fn restarted_minimum<F>(
    param_count: usize,
    restarts: usize,
    iters: usize,
    seed: u64,
    warm_starts: &[Vec<f64>],
    mut objective: F,
) -> crate::error::Result<(Vec<f64>, f64)>
where
    F: FnMut(&[f64]) -> crate::error::Result<f64>,
{
    let mut rng = crate::sample::seeded_rng(seed);
    let mut best_params = alloc::vec![0.0; param_count];
    let mut best_value = f64::INFINITY;
    let mut err: Option<crate::error::Error> = None;
    {
        let mut wrapped = |p: &[f64]| -> f64 {
            if err.is_some() {
                return f64::INFINITY;
            }
            match objective(p) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::INFINITY
                }
            }
        };
        let mut candidates: Vec<(Vec<f64>, f64)> =
            Vec::with_capacity(restarts + warm_starts.len());
        for start in warm_starts {
            let value = wrapped(start);
            candidates.push((start.clone(), value));
        }
        for restart in 0..restarts {
            let start: Vec<f64> = if restart == 0 {
                alloc::vec![0.0; param_count]
            } else {
                (0..param_count)
                    .map(|_| 0.3 * crate::sample::standard_normal(&mut rng))
                    .collect()
            };
            candidates.push(nelder_mead(&mut wrapped, &start, 0.3, iters));
        }
        candidates
            .sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are comparable"));
        // Coarse values from nearby basins can land within the coarse noise
        // of each other, so the top few leaders all get the deep treatment.
        for (params, value) in candidates.into_iter().take(2) {
            let (point, deep_value) = powell_min(&mut wrapped, &params, 0.15, 14);
            if deep_value.min(value) < best_value {
                best_value = deep_value.min(value);
                best_params = if deep_value <= value { point } else { params };
            }
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok((best_params, best_value))
}
