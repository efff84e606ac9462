//! Planar hulls and lattice areas over exact rationals.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }
}

/// Twice the signed area of `(o, a, b)`; positive for a counterclockwise turn.
pub fn orientation(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hull {
    /// Strict corners in counterclockwise order, starting from the lowest-leftmost point.
    pub vertices: Vec<Point2>,
    /// Input points lying on a hull edge without being a corner.
    pub on_boundary: Vec<Point2>,
}

/// Andrew's monotone chain with exact orientation tests.
pub fn convex_hull(points: &[Point2]) -> Hull {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return Hull {
            vertices: pts,
            on_boundary: Vec::new(),
        };
    }
    let mut lower: Vec<Point2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let vertices = lower;

    let on_boundary = if vertices.len() < 2 {
        Vec::new()
    } else {
        pts.iter()
            .filter(|p| !vertices.contains(p))
            .filter(|p| {
                (0..vertices.len()).any(|i| {
                    let a = &vertices[i];
                    let b = &vertices[(i + 1) % vertices.len()];
                    orientation(a, b, p).is_zero() && within_box(a, b, p)
                })
            })
            .cloned()
            .collect()
    };
    Hull {
        vertices,
        on_boundary,
    }
}

fn within_box(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (xl, xh) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (yl, yh) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &p.x >= xl && &p.x <= xh && &p.y >= yl && &p.y <= yh
}

/// Doubled shoelace sum: the lattice area, where the unit lattice triangle has area 1.
pub fn lattice_area(cycle: &[Point2]) -> Rational {
    let n = cycle.len();
    if n < 3 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for i in 0..n {
        let a = &cycle[i];
        let b = &cycle[(i + 1) % n];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::new(int(x), int(y))
    }

    #[test]
    fn square_with_edge_and_interior_points() {
        let pts = [p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1), p(1, 0)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.vertices, vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]);
        assert_eq!(hull.on_boundary, vec![p(1, 0)]);
        assert_eq!(lattice_area(&hull.vertices), int(8));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(convex_hull(&[p(3, 4)]).vertices, vec![p(3, 4)]);
        let seg = convex_hull(&[p(0, 0), p(1, 1), p(2, 2)]);
        assert_eq!(seg.vertices, vec![p(0, 0), p(2, 2)]);
        assert_eq!(lattice_area(&seg.vertices), int(0));
    }

    #[test]
    fn unit_triangle_has_lattice_area_one() {
        assert_eq!(lattice_area(&[p(0, 0), p(1, 0), p(0, 1)]), int(1));
    }
}
