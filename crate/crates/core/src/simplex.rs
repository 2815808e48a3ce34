//! Nelder-Mead simplex minimization in the plane.


use crate::geometry::Point2D;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once both the spread of objective values and the simplex
    /// diameter fall below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            initial_step: 0.05,
            tolerance: 1e-10,
            max_iterations: 2_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult {
    pub point: Point2D,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` starting from `start`.
///
/// The start point is a vertex of the initial simplex and the best vertex never
/// gets worse, so the returned value is at most `f(start)`.
pub fn minimize(f: impl Fn(Point2D) -> f64, start: Point2D, opts: &SimplexOptions) -> SimplexResult {
    let h = opts.initial_step;
    let mut verts = [start, start + Point2D::new(h, 0.0), start + Point2D::new(0.0, h)];
    let mut vals = verts.map(&f);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        sort3(&mut verts, &mut vals);
        let diameter = verts[0]
            .distance(verts[1])
            .max(verts[0].distance(verts[2]))
            .max(verts[1].distance(verts[2]));
        if (vals[2] - vals[0]).abs() <= opts.tolerance && diameter <= opts.tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = verts[0].midpoint(verts[1]);
        let worst = verts[2];
        let reflected = centroid + (centroid - worst) * REFLECT;
        let f_r = f(reflected);

        if f_r < vals[0] {
            let expanded = centroid + (centroid - worst) * EXPAND;
            let f_e = f(expanded);
            if f_e < f_r {
                verts[2] = expanded;
                vals[2] = f_e;
            } else {
                verts[2] = reflected;
                vals[2] = f_r;
            }
            continue;
        }
        if f_r < vals[1] {
            verts[2] = reflected;
            vals[2] = f_r;
            continue;
        }

        let (contracted, f_c) = if f_r < vals[2] {
            let c = centroid + (reflected - centroid) * CONTRACT;
            (c, f(c))
        } else {
            let c = centroid + (worst - centroid) * CONTRACT;
            (c, f(c))
        };
        if f_c < vals[2].min(f_r) {
            verts[2] = contracted;
            vals[2] = f_c;
            continue;
        }

        for i in 1..3 {
            verts[i] = verts[0] + (verts[i] - verts[0]) * SHRINK;
            vals[i] = f(verts[i]);
        }
    }
    sort3(&mut verts, &mut vals);
    SimplexResult {
        point: verts[0],
        value: vals[0],
        iterations,
        converged,
    }
}

fn sort3(verts: &mut [Point2D; 3], vals: &mut [f64; 3]) {
    for i in 1..3 {
        let mut j = i;
        while j > 0 && vals[j].total_cmp(&vals[j - 1]).is_lt() {
            vals.swap(j, j - 1);
            verts.swap(j, j - 1);
            j -= 1;
        }
    }
}
