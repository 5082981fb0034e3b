//! Exact-formula areas and volumes of boxes cut by homogeneous half-spaces.

/// Area of the convex polygon `{y ∈ box : n_i · y ≥ 0 ∀i}` in the plane.
pub(crate) fn clipped_area(lo: [f64; 2], hi: [f64; 2], halfplanes: &[[f64; 2]]) -> f64 {
    let mut poly = vec![[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
    for n in halfplanes {
        poly = clip_polygon(&poly, |p| n[0] * p[0] + n[1] * p[1]);
        if poly.len() < 3 {
            return 0.0;
        }
    }
    polygon_area(&poly)
}

/// Sutherland–Hodgman against `{p : f(p) ≥ 0}` for affine `f`.
pub(crate) fn clip_polygon<F: Fn(&[f64; 2]) -> f64>(poly: &[[f64; 2]], f: F) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = (f(&a), f(&b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let t = fa / (fa - fb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

pub(crate) fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    twice.abs() / 2.0
}

/// Volume of `{y ∈ box : n_i · y ≥ 0 ∀i}` in ℝ³.
///
/// The slice area in `y₃` is piecewise quadratic with breaks only at vertex
/// heights, so Simpson's rule between consecutive breaks is exact.
pub(crate) fn clipped_volume(lo: [f64; 3], hi: [f64; 3], halfspaces: &[[f64; 3]]) -> f64 {
    // planes as (normal, offset): normal · y = offset
    let mut planes: Vec<([f64; 3], f64)> = Vec::new();
    for axis in 0..3 {
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        planes.push((e, lo[axis]));
        planes.push((e, hi[axis]));
    }
    for n in halfspaces {
        planes.push((*n, 0.0));
    }
    let inside = |y: &[f64; 3]| {
        let tol = 1e-12 * (1.0 + y.iter().map(|v| v.abs()).fold(0.0, f64::max));
        (0..3).all(|i| y[i] >= lo[i] - tol && y[i] <= hi[i] + tol) && halfspaces.iter().all(|n| dot3(n, y) >= -tol)
    };
    let mut heights = vec![lo[2], hi[2]];
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            for k in j + 1..planes.len() {
                if let Some(y) = solve3(&planes[i], &planes[j], &planes[k]) {
                    if inside(&y) {
                        heights.push(y[2].clamp(lo[2], hi[2]));
                    }
                }
            }
        }
    }
    heights.sort_by(f64::total_cmp);
    heights.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let slice = |z: f64| {
        let mut poly = vec![[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
        for n in halfspaces {
            poly = clip_polygon(&poly, |p| n[0] * p[0] + n[1] * p[1] + n[2] * z);
            if poly.len() < 3 {
                return 0.0;
            }
        }
        polygon_area(&poly)
    };
    heights
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            (b - a) / 6.0 * (slice(a) + 4.0 * slice(0.5 * (a + b)) + slice(b))
        })
        .sum()
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn solve3(p: &([f64; 3], f64), q: &([f64; 3], f64), r: &([f64; 3], f64)) -> Option<[f64; 3]> {
    let m = nalgebra::Matrix3::new(p.0[0], p.0[1], p.0[2], q.0[0], q.0[1], q.0[2], r.0[0], r.0[1], r.0[2]);
    if m.determinant().abs() < 1e-12 {
        return None;
    }
    let y = m.try_inverse()? * nalgebra::Vector3::new(p.1, q.1, r.1);
    Some([y[0], y[1], y[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn areas() {
        assert_eq!(clipped_area([0.0, 0.0], [1.0, 1.0], &[]), 1.0);
        // below the diagonal
        assert!((clipped_area([0.0, 0.0], [1.0, 1.0], &[[1.0, -1.0]]) - 0.5).abs() < 1e-15);
        assert_eq!(clipped_area([0.0, 0.0], [1.0, 1.0], &[[-1.0, 0.0], [0.0, -1.0]]), 0.0);
    }

    #[test]
    fn volumes() {
        let v = clipped_volume([0.0; 3], [1.0; 3], &[]);
        assert!((v - 1.0).abs() < 1e-14);
        // {x ≥ y ≥ z} is one sixth of the cube
        let v = clipped_volume([0.0; 3], [1.0; 3], &[[1.0, -1.0, 0.0], [0.0, 1.0, -1.0]]);
        assert!((v - 1.0 / 6.0).abs() < 1e-14, "{v}");
        // corner simplex x+y+z ≤ 1 is not homogeneous; use x ≥ y+z instead:
        // volume of {x ≥ y + z} in the unit cube is 1/6
        let v = clipped_volume([0.0; 3], [1.0; 3], &[[1.0, -1.0, -1.0]]);
        assert!((v - 1.0 / 6.0).abs() < 1e-14, "{v}");
    }
}
