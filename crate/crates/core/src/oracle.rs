//! Brute-force counters used to check the closed forms.
//!
//! Nothing here uses discriminants, square roots or log tables beyond the
//! quadrance itself; every count is a direct scan over `F_q x F_q`.

use crate::field::{Elem, FieldCtx};
use crate::geometry::{points, quadrance, Point};

/// All `Z` with `Q(X, Z) = i` and `Q(Y, Z) = j`.
pub fn intersection(ctx: &FieldCtx, x: Point, i: Elem, y: Point, j: Elem) -> Vec<Point> {
    points(ctx)
        .filter(|&z| quadrance(ctx, x, z) == i && quadrance(ctx, y, z) == j)
        .collect()
}

/// Counts `|{Z : Q(X, Z) = i, Q(Y, Z) = j}|` for every `(i, j)` at once,
/// laid out as `counts[i * q + j]`.
pub fn intersection_histogram(ctx: &FieldCtx, x: Point, y: Point) -> Vec<u32> {
    let q = ctx.q() as usize;
    let mut counts = vec![0u32; q * q];
    for z in points(ctx) {
        counts[quadrance(ctx, x, z).index() * q + quadrance(ctx, y, z).index()] += 1;
    }
    counts
}

/// The circle `{Z : Q(center, Z) = k}` by scanning, including `k = 0`.
pub fn circle(ctx: &FieldCtx, center: Point, k: Elem) -> Vec<Point> {
    points(ctx)
        .filter(|&z| quadrance(ctx, center, z) == k)
        .collect()
}

/// The quadrances `k` for which circles of quadrance `i` and `j` around
/// centers at quadrance `k` can meet.
///
/// For `k != 0` one center pair is tried (the count does not depend on the
/// pair; that is checked separately). For `k = 0` every center at quadrance
/// 0 is tried, including the coincident one.
pub fn meeting_quadrances(ctx: &FieldCtx, i: Elem, j: Elem) -> Vec<Elem> {
    let mut out = Vec::new();
    for k in ctx.elements() {
        let centers = circle(ctx, Point::ORIGIN, k);
        let candidates = if k.is_zero() {
            &centers[..]
        } else {
            &centers[..1]
        };
        if candidates
            .iter()
            .any(|&y| !intersection(ctx, Point::ORIGIN, i, y, j).is_empty())
        {
            out.push(k);
        }
    }
    out
}

/// Points of the line through `base` with direction `dir`.
pub fn line(ctx: &FieldCtx, base: Point, dir: Point) -> Vec<Point> {
    ctx.elements()
        .map(|t| Point {
            x: ctx.add(base.x, ctx.mul(t, dir.x)),
            y: ctx.add(base.y, ctx.mul(t, dir.y)),
        })
        .collect()
}

/// Representatives of all `q + 1` directions: `(1, m)` and `(0, 1)`.
pub fn directions(ctx: &FieldCtx) -> Vec<Point> {
    let mut out: Vec<Point> = ctx
        .elements()
        .map(|m| Point { x: Elem::ONE, y: m })
        .collect();
    out.push(Point {
        x: Elem::ZERO,
        y: Elem::ONE,
    });
    out
}

/// All `q(q + 1)` affine lines, each sorted by canonical index.
pub fn all_lines(ctx: &FieldCtx) -> Vec<Vec<Point>> {
    let q = ctx.q();
    let mut lines = Vec::new();
    for dir in directions(ctx) {
        let mut seen = vec![false; (q * q) as usize];
        for base in points(ctx) {
            if seen[base.index(q)] {
                continue;
            }
            let mut l = line(ctx, base, dir);
            for p in &l {
                seen[p.index(q)] = true;
            }
            l.sort_by_key(|p| p.index(q));
            lines.push(l);
        }
    }
    lines
}
