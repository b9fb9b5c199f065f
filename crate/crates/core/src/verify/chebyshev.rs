//! Largest inscribed disc of a planar convex body given by its support
//! function.
//!
//! The disc `B(o, t)` lies in the body iff `h(theta) - <o, u(theta)> >= t`
//! for every direction. The discretized problem over the direction grid is
//! an LP, solved through its dual `min sum l_j h_j` with
//! `sum l_j u_j = 0`, `sum l_j = 1`, `l >= 0` (bases have three columns).
//! The grid optimum is then polished in continuous `theta` by Newton's
//! method on the active contacts: two antipodal contacts or three contacts
//! whose normals positively span the plane.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};

use crate::error::{Error, Result};
use crate::optimize::golden_max;

use super::support::{grid_angle, SupportCurve, GRID};

const MAX_PIVOTS: usize = 20_000;
/// Relative band above the grid optimum in which contacts are candidates.
const CANDIDATE_BAND: f64 = 1e-3;
/// More candidates than this means a (near) circular plateau.
const MAX_CANDIDATES: usize = 8;

/// Optimal `(center, radius)` of the discrete LP over the direction grid.
fn solve_grid_lp(h: &[f64], start: [usize; 3]) -> Result<([f64; 2], f64)> {
    let col = |j: usize| {
        let t = grid_angle(j);
        Vector3::new(t.cos(), t.sin(), 1.0)
    };
    let mut basis = start;
    let scale = h
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = 1e-13 * scale;
    for pivot in 0..MAX_PIVOTS {
        let b = Matrix3::from_columns(&[col(basis[0]), col(basis[1]), col(basis[2])]);
        let inv = b
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("singular basis in inscribed-disc LP".to_owned()))?;
        // Primal (o, t) solves B^T y = h_B.
        let y = inv.transpose() * Vector3::new(h[basis[0]], h[basis[1]], h[basis[2]]);
        let weights = inv * Vector3::new(0.0, 0.0, 1.0);
        let reduced = |j: usize| {
            if basis.contains(&j) {
                0.0
            } else {
                h[j] - col(j).dot(&y)
            }
        };
        // Steepest choice first; Bland's smallest index once cycling is possible.
        let entering = if pivot < 500 {
            (0..GRID)
                .map(|j| (j, reduced(j)))
                .filter(|&(_, r)| r < -tol)
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(j, _)| j)
        } else {
            (0..GRID).find(|&j| reduced(j) < -tol)
        };
        let Some(j) = entering else {
            return Ok(([y.x, y.y], y.z));
        };
        let d = inv * col(j);
        let leave = (0..3)
            .filter(|&i| d[i] > 1e-14)
            .min_by(|&a, &b| {
                (weights[a] / d[a])
                    .total_cmp(&(weights[b] / d[b]))
                    .then(basis[a].cmp(&basis[b]))
            })
            .ok_or_else(|| Error::Degenerate("unbounded inscribed-disc LP".to_owned()))?;
        basis[leave] = j;
    }
    Err(Error::Degenerate(
        "inscribed-disc LP did not converge".to_owned(),
    ))
}

fn gap(curve: &SupportCurve, o: [f64; 2], t: f64) -> f64 {
    curve.support(t) - o[0] * t.cos() - o[1] * t.sin()
}

/// Local minimizer of the gap near `t0`, by Newton on its derivative.
/// Returns `(theta, gap, gap'')`; `None` where the gap is not locally convex.
fn nearest_contact(curve: &SupportCurve, o: [f64; 2], t0: f64) -> Option<(f64, f64, f64)> {
    let mut t = t0;
    for _ in 0..50 {
        let d1 = curve.support_derivative(t) + o[0] * t.sin() - o[1] * t.cos();
        let d2 = curve.radius_of_curvature(t) - gap(curve, o, t);
        if d2.is_nan() || d2 <= 0.0 {
            return None;
        }
        let step = (d1 / d2).clamp(-0.05, 0.05);
        t -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    let g = gap(curve, o, t);
    Some((t, g, curve.radius_of_curvature(t) - g))
}

/// Grid local minima of the gap about `o` lying below `ceiling`.
fn grid_local_minima(curve: &SupportCurve, o: [f64; 2], ceiling: f64) -> Vec<f64> {
    let values: Vec<f64> = (0..GRID).map(|i| gap(curve, o, grid_angle(i))).collect();
    (0..GRID)
        .filter(|&i| {
            let v = values[i];
            v < ceiling && v <= values[(i + GRID - 1) % GRID] && v <= values[(i + 1) % GRID]
        })
        .map(grid_angle)
        .collect()
}

/// Smallest gap about `o` over all directions.
fn min_gap(curve: &SupportCurve, o: [f64; 2], hint: f64) -> f64 {
    let ceiling = hint + CANDIDATE_BAND * hint.abs().max(1e-300);
    let step = TAU / GRID as f64;
    let mut best = (0..GRID)
        .map(|i| gap(curve, o, grid_angle(i)))
        .fold(f64::INFINITY, f64::min);
    for t in grid_local_minima(curve, o, ceiling) {
        let refined = match nearest_contact(curve, o, t) {
            Some((tc, g, _)) if (tc - t).abs() <= step => g,
            // Fall back to a bracketed search.
            _ => -golden_max(|x| -gap(curve, o, x), t - step, t + step, 1e-14).1,
        };
        best = best.min(refined);
    }
    best
}

/// Newton solve for a pair of antipodal contacts near `(ta, tb)`.
fn solve_pair(
    curve: &SupportCurve,
    o: [f64; 2],
    ta: f64,
    tb: f64,
    scale: f64,
) -> Option<([f64; 2], f64)> {
    let (mut ta, mut tb, mut o) = (ta, tb, o);
    for _ in 0..40 {
        let (a, ga, ca) = nearest_contact(curve, o, ta)?;
        let (b, gb, cb) = nearest_contact(curve, o, tb)?;
        ta = a;
        tb = b;
        // Equal gaps and antipodal normals.
        let f = Vector2::new(ga - gb, (b - a).rem_euclid(TAU) - PI);
        let j = Matrix2::new(
            b.cos() - a.cos(),
            b.sin() - a.sin(),
            -b.sin() / cb + a.sin() / ca,
            b.cos() / cb - a.cos() / ca,
        );
        let step = j.try_inverse()? * (-f);
        o = [o[0] + step.x, o[1] + step.y];
        if step.norm() < 1e-15 * scale {
            break;
        }
    }
    let (_, ga, _) = nearest_contact(curve, o, ta)?;
    let (_, gb, _) = nearest_contact(curve, o, tb)?;
    Some((o, ga.min(gb)))
}

/// Newton solve for three contacts near `ts`; requires positive weights.
fn solve_triple(
    curve: &SupportCurve,
    o: [f64; 2],
    ts: [f64; 3],
    scale: f64,
) -> Option<([f64; 2], f64)> {
    let (mut ts, mut o, mut t) = (ts, o, f64::NAN);
    for _ in 0..40 {
        let mut rows = [Vector3::zeros(); 3];
        let mut gaps = [0.0; 3];
        for i in 0..3 {
            let (th, g, _) = nearest_contact(curve, o, ts[i])?;
            ts[i] = th;
            gaps[i] = g;
            rows[i] = Vector3::new(-th.cos(), -th.sin(), -1.0);
        }
        if t.is_nan() {
            t = gaps.iter().sum::<f64>() / 3.0;
        }
        let f = Vector3::new(gaps[0] - t, gaps[1] - t, gaps[2] - t);
        let j = Matrix3::from_rows(&[
            rows[0].transpose(),
            rows[1].transpose(),
            rows[2].transpose(),
        ]);
        let step = j.try_inverse()? * (-f);
        o = [o[0] + step.x, o[1] + step.y];
        t += step.z;
        if step.norm() < 1e-15 * scale {
            break;
        }
    }
    let cols = Matrix3::from_columns(&ts.map(|th| Vector3::new(th.cos(), th.sin(), 1.0)));
    let weights = cols.try_inverse()? * Vector3::new(0.0, 0.0, 1.0);
    if weights.iter().any(|&w| w < -1e-12) {
        return None;
    }
    let r = ts
        .iter()
        .map(|&th| nearest_contact(curve, o, th).map(|c| c.1))
        .collect::<Option<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Some((o, r))
}

/// Continuous refinement of the grid optimum `(o, t)`.
fn polish(curve: &SupportCurve, o: [f64; 2], t: f64) -> Option<([f64; 2], f64)> {
    let scale = t.abs().max(1e-300);
    let mut cands: Vec<f64> = Vec::new();
    for th in grid_local_minima(curve, o, t + CANDIDATE_BAND * scale) {
        let (tc, _, _) = nearest_contact(curve, o, th)?;
        let tc = tc.rem_euclid(TAU);
        if cands.iter().all(|&c| {
            let d = (c - tc).rem_euclid(TAU);
            d.min(TAU - d) > 1e-9
        }) {
            cands.push(tc);
        }
        if cands.len() > MAX_CANDIDATES {
            return None;
        }
    }
    let n = cands.len();
    let mut found: Vec<([f64; 2], f64)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            found.extend(solve_pair(curve, o, cands[a], cands[b], scale));
            for c in b + 1..n {
                found.extend(solve_triple(
                    curve,
                    o,
                    [cands[a], cands[b], cands[c]],
                    scale,
                ));
            }
        }
    }
    // A KKT point that is globally feasible is the optimum.
    found
        .into_iter()
        .filter(|(po, pr)| pr.is_finite() && min_gap(curve, *po, *pr) >= pr - 1e-12 * scale)
        .max_by(|x, y| x.1.total_cmp(&y.1))
}

/// Chebyshev center and inscribed radius of `curve`.
///
/// `restart` rotates the initial LP basis; the result does not depend on it.
pub fn inscribed_disc(curve: &SupportCurve, restart: u64) -> Result<([f64; 2], f64)> {
    let h: Vec<f64> = (0..GRID).map(|i| curve.support(grid_angle(i))).collect();
    let off = (restart as usize) % GRID;
    let basis = [off, (off + GRID / 3) % GRID, (off + 2 * GRID / 3) % GRID];
    let (o, t) = solve_grid_lp(&h, basis)?;
    Ok(match polish(curve, o, t) {
        Some(sol) => sol,
        // Plateau contacts: the grid optimum, lowered to the continuous minimum.
        None => (o, min_gap(curve, o, t).min(t)),
    })
}

/// Largest distance from `center` to the curve. `center` must be interior.
pub fn circumradius_from(curve: &SupportCurve, center: [f64; 2]) -> Result<f64> {
    let inside = (0..GRID).all(|i| gap(curve, center, grid_angle(i)) > 0.0);
    if !inside {
        return Err(Error::Domain(format!(
            "center ({}, {}) is not interior to the body",
            center[0], center[1]
        )));
    }
    let dist = |t: f64| {
        let p = curve.boundary_point(t);
        (p[0] - center[0]).hypot(p[1] - center[1])
    };
    let values: Vec<f64> = (0..GRID).map(|i| dist(grid_angle(i))).collect();
    let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let step = TAU / GRID as f64;
    let mut best = top;
    for i in 0..GRID {
        let prev = values[(i + GRID - 1) % GRID];
        let next = values[(i + 1) % GRID];
        if values[i] >= prev && values[i] >= next && values[i] > top - 1e-3 * top {
            let th = grid_angle(i);
            best = best.max(golden_max(dist, th - step, th + step, 1e-14).1);
        }
    }
    Ok(best)
}
