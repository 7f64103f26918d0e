//! Polygons with prescribed side quadrances.
//!
//! A polygon here is a closed vertex sequence `A_1 .. A_n` with
//! `Q(A_i, A_{i+1}) = a_i` (indices cyclic). Non-adjacent vertices may
//! coincide; that is exactly what [`verify_polygon`] checks.
//!
//! Constructions are deterministic: the first vertex is the origin and every
//! free choice takes the smallest field element or point index.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use super::{
    discriminant, intersect_circles, point_add, points, quadrance, Discriminant, GeometryError,
    Point, SquareStatus,
};
use crate::field::{Elem, FieldCtx};

/// Largest field accepted by [`quadrangle_feasibility_table`] by default.
pub const DEFAULT_TABLE_MAX_ORDER: u32 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionMethod {
    Triangle,
    /// Quadrilateral through a diagonal with admissible discriminants.
    Diagonal,
    /// Quadrilateral through an isotropic diagonal.
    IsotropicDiagonal,
    /// Quadrilateral folded onto a repeated vertex.
    Folded,
    /// All-equal pentagon through a companion quadrance.
    CompanionPentagon,
    /// Pentagon hung on an isotropic pair.
    IsotropicPentagon,
    Exhaustive,
}

/// One diagonal quadrance tried while searching for a quadrangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalAttempt {
    pub k: Elem,
    pub first: SquareStatus,
    pub second: SquareStatus,
}

/// Why no polygon exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Infeasibility {
    /// `f(a_1, a_2, a_3)` is a nonsquare.
    Triangle { discriminant: Discriminant },
    /// Every diagonal `Q(A_1, A_3)` fails.
    Quadrangle {
        diagonals: Vec<DiagonalAttempt>,
        /// `a_1 = a_2` or `a_3 = a_4`, ruling out an isotropic diagonal.
        isotropic_blocked: bool,
        /// `a_1 != a_2` or `a_3 != a_4`, ruling out `A_1 = A_3`.
        folded_blocked: bool,
    },
    /// Exhaustive vertex search found nothing.
    Exhausted { searched: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonResult {
    pub q: u32,
    pub quadrances: Vec<Elem>,
    pub feasible: bool,
    pub vertices: Vec<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<ConstructionMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Infeasibility>,
}

/// True iff `Q(v_i, v_{i+1}) = a_i` cyclically.
pub fn verify_polygon(
    ctx: &FieldCtx,
    vertices: &[Point],
    quadrances: &[Elem],
) -> Result<bool, GeometryError> {
    if vertices.len() != quadrances.len() {
        return Err(GeometryError::LengthMismatch {
            vertices: vertices.len(),
            quadrances: quadrances.len(),
        });
    }
    let n = vertices.len();
    if n < 3 {
        return Err(GeometryError::TooFewSides(n));
    }
    Ok((0..n).all(|i| quadrance(ctx, vertices[i], vertices[(i + 1) % n]) == quadrances[i]))
}

/// Finds a polygon with the given side quadrances, or certifies that none
/// exists.
///
/// * `n = 3`: feasible iff `f(a_1, a_2, a_3)` is square or zero.
/// * `q = 3 mod 4`, `n >= 4`: always feasible. Trailing side pairs are
///   collapsed onto an admissible diagonal until four sides remain, the
///   quadrilateral is built through a diagonal admissible for both halves,
///   and the collapsed vertices are re-inserted by circle intersection.
/// * `q = 1 mod 4`, `n = 4`: every diagonal class is searched; may be
///   infeasible.
/// * `q = 1 mod 4`, `n >= 5`: always feasible, collapsing down to a
///   pentagon built either from a companion quadrance (all sides equal) or
///   from an isotropic pair.
pub fn build_polygon(ctx: &FieldCtx, quadrances: &[Elem]) -> Result<PolygonResult, GeometryError> {
    let n = quadrances.len();
    if n < 3 {
        return Err(GeometryError::TooFewSides(n));
    }
    if let Some(pos) = quadrances.iter().position(|a| a.is_zero()) {
        return Err(GeometryError::ZeroQuadrance(pos));
    }
    let outcome = if n == 3 {
        triangle(ctx, quadrances)
    } else if ctx.residue_class() == 3 {
        collapse(ctx, quadrances, 4, &|qs| quadrilateral(ctx, qs))
    } else if n == 4 {
        quadrangle_q1(ctx, quadrances)
    } else if ctx.q() == 5 {
        // Too small for the pentagon constructions; the search is tiny.
        collapse(ctx, quadrances, 5, &|qs| exhaustive(ctx, qs))
    } else {
        collapse(ctx, quadrances, 5, &|qs| pentagon_q1(ctx, qs))
    };
    let (feasible, vertices, method, certificate) = match outcome {
        Ok((v, m)) => (true, v, Some(m), None),
        Err(why) => (false, Vec::new(), None, Some(why)),
    };
    let result = PolygonResult {
        q: ctx.q(),
        quadrances: quadrances.to_vec(),
        feasible,
        vertices,
        method,
        certificate,
    };
    debug_assert!(!result.feasible || verify_polygon(ctx, &result.vertices, quadrances).unwrap());
    Ok(result)
}

type Built = Result<(Vec<Point>, ConstructionMethod), Infeasibility>;

fn first_meet(ctx: &FieldCtx, x: Point, i: Elem, y: Point, j: Elem) -> Option<Point> {
    intersect_circles(ctx, x, i, y, j)
        .ok()
        .and_then(|v| v.into_iter().next())
}

/// First point at quadrance `k` from the origin.
fn first_at(ctx: &FieldCtx, k: Elem) -> Option<Point> {
    points(ctx).find(|&z| z != Point::ORIGIN && quadrance(ctx, Point::ORIGIN, z) == k)
}

fn admissible(ctx: &FieldCtx, i: Elem, j: Elem, k: Elem) -> bool {
    discriminant(ctx, i, j, k).status.is_square()
}

fn triangle(ctx: &FieldCtx, a: &[Elem]) -> Built {
    let disc = discriminant(ctx, a[0], a[1], a[2]);
    if !disc.status.is_square() {
        return Err(Infeasibility::Triangle { discriminant: disc });
    }
    let x = Point::ORIGIN;
    let z = first_at(ctx, a[2]).expect("nonzero circles are nonempty");
    let y = first_meet(ctx, x, a[0], z, a[1]).expect("admissible discriminant");
    Ok((vec![x, y, z], ConstructionMethod::Triangle))
}

/// Reduces `a_1..a_n` to `a_1..a_{n-2}, k` until `base_len` sides remain,
/// then reinserts the removed vertices.
fn collapse(ctx: &FieldCtx, a: &[Elem], base_len: usize, base: &dyn Fn(&[Elem]) -> Built) -> Built {
    let n = a.len();
    if n <= base_len {
        return base(a);
    }
    let (s, t) = (a[n - 2], a[n - 1]);
    let Some(k) = ctx.nonzero().find(|&k| admissible(ctx, s, t, k)) else {
        return exhaustive(ctx, a);
    };
    let mut shorter = a[..n - 2].to_vec();
    shorter.push(k);
    let (mut vertices, method) = collapse(ctx, &shorter, base_len, base)?;
    let z = first_meet(ctx, vertices[n - 2], s, vertices[0], t).expect("admissible diagonal");
    vertices.push(z);
    Ok((vertices, method))
}

fn quadrilateral(ctx: &FieldCtx, a: &[Elem]) -> Built {
    for k in ctx.nonzero() {
        if admissible(ctx, a[0], a[1], k) && admissible(ctx, a[2], a[3], k) {
            return Ok((diagonal_quad(ctx, a, k), ConstructionMethod::Diagonal));
        }
    }
    exhaustive(ctx, a)
}

fn diagonal_quad(ctx: &FieldCtx, a: &[Elem], k: Elem) -> Vec<Point> {
    let x = Point::ORIGIN;
    let z = first_at(ctx, k).expect("nonzero circles are nonempty");
    let y = first_meet(ctx, x, a[0], z, a[1]).expect("admissible diagonal");
    let t = first_meet(ctx, z, a[2], x, a[3]).expect("admissible diagonal");
    vec![x, y, z, t]
}

fn quadrangle_q1(ctx: &FieldCtx, a: &[Elem]) -> Built {
    let mut diagonals = Vec::new();
    for k in ctx.nonzero() {
        let first = discriminant(ctx, a[0], a[1], k).status;
        let second = discriminant(ctx, a[2], a[3], k).status;
        if first.is_square() && second.is_square() {
            return Ok((diagonal_quad(ctx, a, k), ConstructionMethod::Diagonal));
        }
        diagonals.push(DiagonalAttempt { k, first, second });
    }
    let isotropic_blocked = a[0] == a[1] || a[2] == a[3];
    if !isotropic_blocked {
        let x = Point::ORIGIN;
        let z = first_at(ctx, Elem::ZERO).expect("q = 1 mod 4 has isotropic points");
        let y = first_meet(ctx, x, a[0], z, a[1]).expect("distinct quadrances meet once");
        let t = first_meet(ctx, z, a[2], x, a[3]).expect("distinct quadrances meet once");
        return Ok((vec![x, y, z, t], ConstructionMethod::IsotropicDiagonal));
    }
    let folded_blocked = a[0] != a[1] || a[2] != a[3];
    if !folded_blocked {
        let x = Point::ORIGIN;
        let y = first_at(ctx, a[0]).expect("nonzero circles are nonempty");
        let t = first_at(ctx, a[3]).expect("nonzero circles are nonempty");
        return Ok((vec![x, y, x, t], ConstructionMethod::Folded));
    }
    Err(Infeasibility::Quadrangle {
        diagonals,
        isotropic_blocked,
        folded_blocked,
    })
}

/// Pentagon for `q = 1 mod 4`, `q > 5`. Rotates the sides so that either all
/// are equal or `a_1 != a_2`.
fn pentagon_q1(ctx: &FieldCtx, a: &[Elem]) -> Built {
    if a.iter().all(|&x| x == a[0]) {
        return companion_pentagon(ctx, a[0]);
    }
    let r = (0..5).find(|&r| a[r] != a[(r + 1) % 5]).unwrap();
    let rotated: Vec<Elem> = (0..5).map(|i| a[(i + r) % 5]).collect();
    let (vs, method) = isotropic_pentagon(ctx, &rotated)?;
    // rotated side i joins vs[i], vs[i+1]; original side i is rotated side i - r.
    Ok(((0..5).map(|i| vs[(i + 5 - r) % 5]).collect(), method))
}

fn companion_pentagon(ctx: &FieldCtx, a: Elem) -> Built {
    let j = super::companion_pair(ctx, a).expect("q = 1 mod 4 and a != 0");
    let a1 = Point::ORIGIN;
    let a4 = first_at(ctx, j).expect("nonzero circles are nonempty");
    let a2 = first_meet(ctx, a1, a, a4, j).expect("f(j, j, a) is square");
    let a3 = first_meet(ctx, a2, a, a4, a).expect("f(a, a, j) is square");
    let a5 = first_meet(ctx, a4, a, a1, a).expect("f(a, a, j) is square");
    Ok((
        vec![a1, a2, a3, a4, a5],
        ConstructionMethod::CompanionPentagon,
    ))
}

/// Requires `a_1 != a_2`. `X, Z` isotropic; `Y` on both `C_{a1}(X)` and
/// `C_{a2}(Z)`; `V` on `C_k(Z)` and `C_{a5}(X)` with `k != 0, a5`; `T` on
/// `C_{a3}(Z)` and `C_{a4}(V)`.
fn isotropic_pentagon(ctx: &FieldCtx, a: &[Elem]) -> Built {
    let Some(k) = ctx
        .nonzero()
        .find(|&k| k != a[4] && admissible(ctx, a[2], a[3], k))
    else {
        return exhaustive(ctx, a);
    };
    let x = Point::ORIGIN;
    let z = first_at(ctx, Elem::ZERO).expect("q = 1 mod 4 has isotropic points");
    let y = first_meet(ctx, x, a[0], z, a[1]).expect("distinct quadrances meet once");
    let v = first_meet(ctx, z, k, x, a[4]).expect("distinct quadrances meet once");
    let t = first_meet(ctx, z, a[2], v, a[3]).expect("admissible diagonal");
    Ok((vec![x, y, z, t, v], ConstructionMethod::IsotropicPentagon))
}

/// Offsets at each quadrance from the origin, indexed by the quadrance.
fn circle_offsets(ctx: &FieldCtx) -> Vec<Vec<Point>> {
    let mut out = vec![Vec::new(); ctx.q() as usize];
    for z in points(ctx) {
        if z != Point::ORIGIN {
            out[quadrance(ctx, Point::ORIGIN, z).index()].push(z);
        }
    }
    out
}

/// Depth-first search over vertex sequences starting at the origin.
fn exhaustive(ctx: &FieldCtx, a: &[Elem]) -> Built {
    let offsets = circle_offsets(ctx);
    let mut path = vec![Point::ORIGIN];
    let mut searched = 0u64;
    if dfs(ctx, a, &offsets, &mut path, &mut searched) {
        Ok((path, ConstructionMethod::Exhaustive))
    } else {
        Err(Infeasibility::Exhausted { searched })
    }
}

fn dfs(
    ctx: &FieldCtx,
    a: &[Elem],
    offsets: &[Vec<Point>],
    path: &mut Vec<Point>,
    searched: &mut u64,
) -> bool {
    let n = a.len();
    let last = *path.last().unwrap();
    let side = path.len() - 1;
    for &off in &offsets[a[side].index()] {
        *searched += 1;
        let next = point_add(ctx, last, off);
        if path.len() == n - 1 {
            if quadrance(ctx, next, path[0]) == a[n - 1] {
                path.push(next);
                return true;
            }
            continue;
        }
        path.push(next);
        if dfs(ctx, a, offsets, path, searched) {
            return true;
        }
        path.pop();
    }
    false
}

/// Smallest image of a side 4-tuple under rotation and reversal.
pub fn canonical_quadruple(t: [Elem; 4]) -> [Elem; 4] {
    let mut best = t;
    for r in 0..4 {
        let rot = [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]];
        let rev = [rot[3], rot[2], rot[1], rot[0]];
        best = best.min(rot).min(rev);
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangleRow {
    pub quadrances: [Elem; 4],
    pub feasible: bool,
    /// Number of ordered tuples in this row's rotation/reversal class.
    pub orbit: u32,
}

/// Quadrangle feasibility over all of `(F_q^*)^4`, one row per
/// rotation/reversal class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrangleTable {
    pub q: u32,
    pub rows: Vec<QuadrangleRow>,
    pub feasible_rows: usize,
    pub infeasible_rows: usize,
    pub feasible_tuples: u64,
    pub infeasible_tuples: u64,
}

impl QuadrangleTable {
    pub fn lookup(&self, t: [Elem; 4]) -> Option<bool> {
        let key = canonical_quadruple(t);
        self.rows
            .binary_search_by(|row| row.quadrances.cmp(&key))
            .ok()
            .map(|i| self.rows[i].feasible)
    }

    /// Draws `count` tuples (seeded) for cross-checking.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R, count: usize) -> Vec<[Elem; 4]> {
        (0..count)
            .map(|_| self.rows.choose(rng).expect("nonempty table").quadrances)
            .collect()
    }
}

/// Exhaustive quadrangle table for `q = 1 mod 4`, by direct vertex search
/// (no discriminants involved).
pub fn quadrangle_feasibility_table(
    ctx: &FieldCtx,
    max_order: u32,
) -> Result<QuadrangleTable, GeometryError> {
    if ctx.residue_class() != 1 {
        return Err(GeometryError::WrongResidueClass {
            expected: 1,
            q: ctx.q(),
        });
    }
    if ctx.q() > max_order {
        return Err(GeometryError::TooLarge {
            q: ctx.q(),
            bound: max_order,
        });
    }
    let offsets = circle_offsets(ctx);
    let nz: Vec<Elem> = ctx.nonzero().collect();
    let mut orbits: BTreeMap<[Elem; 4], u32> = BTreeMap::new();
    for &i in &nz {
        for &j in &nz {
            for &k in &nz {
                for &l in &nz {
                    *orbits.entry(canonical_quadruple([i, j, k, l])).or_default() += 1;
                }
            }
        }
    }
    let mut table = QuadrangleTable {
        q: ctx.q(),
        rows: Vec::with_capacity(orbits.len()),
        feasible_rows: 0,
        infeasible_rows: 0,
        feasible_tuples: 0,
        infeasible_tuples: 0,
    };
    for (t, orbit) in orbits {
        let feasible = quadrangle_exists(ctx, &offsets, t);
        if feasible {
            table.feasible_rows += 1;
            table.feasible_tuples += orbit as u64;
        } else {
            table.infeasible_rows += 1;
            table.infeasible_tuples += orbit as u64;
        }
        table.rows.push(QuadrangleRow {
            quadrances: t,
            feasible,
            orbit,
        });
    }
    Ok(table)
}

fn quadrangle_exists(ctx: &FieldCtx, offsets: &[Vec<Point>], t: [Elem; 4]) -> bool {
    let closing = &offsets[t[3].index()];
    offsets[t[0].index()].iter().any(|&a2| {
        offsets[t[1].index()].iter().any(|&off| {
            let a3 = point_add(ctx, a2, off);
            closing.iter().any(|&a4| quadrance(ctx, a3, a4) == t[2])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field_of_order;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> FieldCtx {
        build_field_of_order(q).unwrap()
    }

    fn el(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    fn unit_square() -> Vec<Point> {
        vec![
            Point::new(0, 0),
            Point::new(1, 0),
            Point::new(1, 1),
            Point::new(0, 1),
        ]
    }

    #[test]
    fn verify_examples() {
        let f7 = f(7);
        assert!(verify_polygon(&f7, &unit_square(), &el(&[1, 1, 1, 1])).unwrap());
        assert!(!verify_polygon(&f7, &unit_square(), &el(&[1, 1, 1, 2])).unwrap());
        assert_eq!(
            verify_polygon(&f7, &unit_square(), &el(&[1, 1, 1])),
            Err(GeometryError::LengthMismatch {
                vertices: 4,
                quadrances: 3
            })
        );
    }

    #[test]
    fn build_examples() {
        let f7 = f(7);
        for sides in [[1, 1, 1, 1], [3, 5, 6, 1]] {
            let r = build_polygon(&f7, &el(&sides)).unwrap();
            assert!(r.feasible);
            assert!(verify_polygon(&f7, &r.vertices, &r.quadrances).unwrap());
        }
        let r = build_polygon(&f(5), &el(&[1, 1, 1, 3])).unwrap();
        assert!(!r.feasible);
        assert!(r.vertices.is_empty());
        match r.certificate {
            Some(Infeasibility::Quadrangle {
                diagonals,
                isotropic_blocked,
                folded_blocked,
            }) => {
                assert_eq!(diagonals.len(), 4);
                assert!(isotropic_blocked && folded_blocked);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn input_errors() {
        let f7 = f(7);
        assert_eq!(
            build_polygon(&f7, &el(&[1, 0, 2, 3])),
            Err(GeometryError::ZeroQuadrance(1))
        );
        assert_eq!(
            build_polygon(&f7, &el(&[1, 2])),
            Err(GeometryError::TooFewSides(2))
        );
    }

    #[test]
    fn triangles_follow_the_discriminant() {
        for q in [5u32, 7, 9] {
            let ctx = f(q);
            for i in ctx.nonzero() {
                for j in ctx.nonzero() {
                    for k in ctx.nonzero() {
                        let r = build_polygon(&ctx, &[i, j, k]).unwrap();
                        let expect = discriminant(&ctx, i, j, k).status.is_square();
                        assert_eq!(r.feasible, expect);
                        assert_eq!(
                            r.feasible,
                            exhaustive(&ctx, &[i, j, k]).is_ok(),
                            "q={q} {i},{j},{k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn q3_polygons_always_exist() {
        let ctx = f(3);
        for n in 4..=6 {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..50 {
                let sides: Vec<Elem> = (0..n).map(|_| Elem(rng.random_range(1..3))).collect();
                let r = build_polygon(&ctx, &sides).unwrap();
                assert!(r.feasible);
                assert!(verify_polygon(&ctx, &r.vertices, &sides).unwrap());
            }
        }
    }

    #[test]
    fn q7_longer_polygons() {
        let ctx = f(7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 5..=7 {
            for _ in 0..200 {
                let sides: Vec<Elem> = (0..n).map(|_| Elem(rng.random_range(1..7))).collect();
                let r = build_polygon(&ctx, &sides).unwrap();
                assert!(r.feasible);
                assert!(verify_polygon(&ctx, &r.vertices, &sides).unwrap());
            }
        }
    }

    #[test]
    fn q1_pentagons_and_beyond() {
        for q in [9u32, 13, 17, 25] {
            let ctx = f(q);
            let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
            for n in 5..=7 {
                for _ in 0..100 {
                    let sides: Vec<Elem> = (0..n).map(|_| Elem(rng.random_range(1..q))).collect();
                    let r = build_polygon(&ctx, &sides).unwrap();
                    assert!(r.feasible, "q={q} {sides:?}");
                    assert!(verify_polygon(&ctx, &r.vertices, &sides).unwrap());
                    assert_ne!(r.method, Some(ConstructionMethod::Exhaustive));
                }
            }
            for a in ctx.nonzero() {
                let r = build_polygon(&ctx, &[a; 5]).unwrap();
                assert_eq!(r.method, Some(ConstructionMethod::CompanionPentagon));
                assert!(verify_polygon(&ctx, &r.vertices, &[a; 5]).unwrap());
            }
        }
    }

    #[test]
    fn rotated_isotropic_pentagon() {
        let ctx = f(13);
        let sides = el(&[2, 2, 2, 5, 2]);
        let r = build_polygon(&ctx, &sides).unwrap();
        assert_eq!(r.method, Some(ConstructionMethod::IsotropicPentagon));
        assert!(verify_polygon(&ctx, &r.vertices, &sides).unwrap());
    }

    #[test]
    fn canonical_form() {
        let c = canonical_quadruple([Elem(3), Elem(1), Elem(1), Elem(1)]);
        assert_eq!(c, [Elem(1), Elem(1), Elem(1), Elem(3)]);
        let c = canonical_quadruple([Elem(2), Elem(1), Elem(4), Elem(3)]);
        assert_eq!(c, [Elem(1), Elem(2), Elem(3), Elem(4)]);
    }

    #[test]
    fn table_examples() {
        let ctx = f(5);
        let table = quadrangle_feasibility_table(&ctx, DEFAULT_TABLE_MAX_ORDER).unwrap();
        assert_eq!(
            table.lookup([Elem(1), Elem(1), Elem(1), Elem(3)]),
            Some(false)
        );
        assert_eq!(
            table.lookup([Elem(3), Elem(1), Elem(1), Elem(1)]),
            Some(false)
        );
        assert_eq!(table.lookup([Elem(1); 4]), Some(true));
        assert_eq!(table.feasible_tuples + table.infeasible_tuples, 256);
        assert_eq!(
            table.rows.len(),
            table.feasible_rows + table.infeasible_rows
        );
        assert!(matches!(
            quadrangle_feasibility_table(&f(7), 13),
            Err(GeometryError::WrongResidueClass { .. })
        ));
        assert!(matches!(
            quadrangle_feasibility_table(&f(17), 13),
            Err(GeometryError::TooLarge { q: 17, bound: 13 })
        ));
    }

    #[test]
    fn table_agrees_with_constructor() {
        for q in [5u32, 9, 13] {
            let ctx = f(q);
            let table = quadrangle_feasibility_table(&ctx, DEFAULT_TABLE_MAX_ORDER).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for t in table.sample(&mut rng, 100) {
                let r = build_polygon(&ctx, &t).unwrap();
                assert_eq!(Some(r.feasible), table.lookup(t), "q={q} {t:?}");
            }
            if q == 5 {
                for row in &table.rows {
                    let r = build_polygon(&ctx, &row.quadrances).unwrap();
                    assert_eq!(r.feasible, row.feasible, "{:?}", row.quadrances);
                }
            }
        }
    }
}
