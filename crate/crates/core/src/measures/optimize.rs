//! Two-stage maximization over measurement directions: an exhaustive
//! angle grid followed by a Nelder-Mead polish from the best grid node.

use std::f64::consts::PI;

use serde::Serialize;

/// Grid resolution and local-refinement stopping rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerSettings {
    /// Polar-angle nodes over `[0, π]`, endpoints included.
    pub grid_theta: usize,
    /// Azimuthal nodes over `[0, 2π)`.
    pub grid_phi: usize,
    /// Refinement stops once the simplex diameter drops below this.
    pub simplex_tol: f64,
    pub max_iterations: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            grid_theta: 64,
            grid_phi: 128,
            simplex_tol: 1e-8,
            max_iterations: 500,
        }
    }
}

impl OptimizerSettings {
    pub fn theta_step(&self) -> f64 {
        PI / (self.grid_theta.max(2) - 1) as f64
    }

    pub fn phi_step(&self) -> f64 {
        2.0 * PI / self.grid_phi.max(1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Maximum {
    pub point: [f64; 2],
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Maximizes `f(θ, φ)` on the grid, then refines locally.
pub(crate) fn maximize(f: impl Fn([f64; 2]) -> f64, settings: &OptimizerSettings) -> Maximum {
    let (dt, dp) = (settings.theta_step(), settings.phi_step());
    let mut best = ([0.0, 0.0], f64::NEG_INFINITY);
    for i in 0..settings.grid_theta.max(2) {
        let theta = i as f64 * dt;
        for j in 0..settings.grid_phi.max(1) {
            let x = [theta, j as f64 * dp];
            let v = f(x);
            if v > best.1 {
                best = (x, v);
            }
        }
    }

    let outcome = nelder_mead(
        |x| -f(x),
        best.0,
        [dt, dp],
        settings.simplex_tol,
        settings.max_iterations,
    );
    let value = -outcome.value;
    if value >= best.1 {
        Maximum {
            point: outcome.point,
            value,
            converged: outcome.converged,
            iterations: outcome.iterations,
        }
    } else {
        Maximum {
            point: best.0,
            value: best.1,
            converged: outcome.converged,
            iterations: outcome.iterations,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Vertex {
    x: [f64; 2],
    f: f64,
}

/// Minimizes `f` over the plane with the standard reflection (1),
/// expansion (2), contraction (½) and shrink (½) moves.
pub(crate) fn nelder_mead(
    f: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    step: [f64; 2],
    tol: f64,
    max_iterations: usize,
) -> Maximum {
    let eval = |x: [f64; 2]| Vertex { x, f: f(x) };
    let mut simplex = [
        eval(start),
        eval([start[0] + step[0], start[1]]),
        eval([start[0], start[1] + step[1]]),
    ];
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    let mut iterations = 0;
    let converged = loop {
        simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
        if diameter(&simplex) < tol {
            break true;
        }
        if iterations >= max_iterations {
            break false;
        }
        iterations += 1;

        let [best, second, worst] = simplex;
        let centroid = lerp(best.x, second.x, 0.5);
        let reflected = eval(lerp(centroid, worst.x, -1.0));

        if reflected.f < best.f {
            let expanded = eval(lerp(centroid, worst.x, -2.0));
            simplex[2] = if expanded.f < reflected.f { expanded } else { reflected };
            continue;
        }
        if reflected.f < second.f {
            simplex[2] = reflected;
            continue;
        }
        let contracted = if reflected.f < worst.f {
            let c = eval(lerp(centroid, reflected.x, 0.5));
            (c.f <= reflected.f).then_some(c)
        } else {
            let c = eval(lerp(centroid, worst.x, 0.5));
            (c.f < worst.f).then_some(c)
        };
        match contracted {
            Some(c) => simplex[2] = c,
            None => {
                for v in simplex.iter_mut().skip(1) {
                    *v = eval(lerp(best.x, v.x, 0.5));
                }
            }
        }
    };

    simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
    Maximum {
        point: simplex[0].x,
        value: simplex[0].f,
        converged,
        iterations,
    }
}

fn diameter(simplex: &[Vertex; 3]) -> f64 {
    let d = |a: &Vertex, b: &Vertex| (a.x[0] - b.x[0]).hypot(a.x[1] - b.x[1]);
    d(&simplex[0], &simplex[1])
        .max(d(&simplex[0], &simplex[2]))
        .max(d(&simplex[1], &simplex[2]))
}
