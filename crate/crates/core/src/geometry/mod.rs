//! Quadrance geometry on `F_q x F_q`.
//!
//! The quadrance `Q(A, B) = (x_B - x_A)^2 + (y_B - y_A)^2` plays the role of
//! squared distance. Two circles `C_i(X)` and `C_j(Y)` with `k = Q(X, Y) != 0`
//! meet in 0, 1 or 2 points according to whether
//!
//! ```text
//! 4f = 2ij + 2jk + 2ki - i^2 - j^2 - k^2
//! ```
//!
//! is a nonsquare, zero, or a nonzero square. The symmetric form is the one
//! that matches the brute-force intersection counts.

mod polygon;

pub use polygon::{
    build_polygon, canonical_quadruple, quadrangle_feasibility_table, verify_polygon,
    ConstructionMethod, DiagonalAttempt, Infeasibility, PolygonResult, QuadrangleRow,
    QuadrangleTable, DEFAULT_TABLE_MAX_ORDER,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldCtx, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the null circle class only exists when q = 1 (mod 4)")]
    NullClassInWrongField,
    #[error("arguments must be nonzero field elements")]
    ZeroArgument,
    #[error("circle centers coincide")]
    CoincidentCenters,
    #[error("circle quadrance classes must be nonzero")]
    ZeroQuadranceClass,
    #[error("operation requires q = {expected} (mod 4), got q = {q}")]
    WrongResidueClass { expected: u8, q: u32 },
    #[error("{vertices} vertices but {quadrances} quadrances")]
    LengthMismatch { vertices: usize, quadrances: usize },
    #[error("polygon quadrances must be nonzero (position {0})")]
    ZeroQuadrance(usize),
    #[error("a polygon needs at least 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("q = {q} exceeds the brute-force bound {bound}")]
    TooLarge { q: u32, bound: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of `F_q x F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Elem, Elem)", into = "(Elem, Elem)")]
pub struct Point {
    pub x: Elem,
    pub y: Elem,
}

impl From<(Elem, Elem)> for Point {
    fn from((x, y): (Elem, Elem)) -> Self {
        Point { x, y }
    }
}

impl From<Point> for (Elem, Elem) {
    fn from(p: Point) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: Elem::ZERO,
        y: Elem::ZERO,
    };

    pub fn new(x: u32, y: u32) -> Self {
        Point {
            x: Elem(x),
            y: Elem(y),
        }
    }

    /// Canonical index `x * q + y`.
    #[inline]
    pub fn index(self, q: u32) -> usize {
        self.x.index() * q as usize + self.y.index()
    }

    #[inline]
    pub fn from_index(q: u32, index: usize) -> Self {
        let q = q as usize;
        Point::new((index / q) as u32, (index % q) as u32)
    }
}

/// All `q^2` points in canonical order.
pub fn points(ctx: &FieldCtx) -> impl Iterator<Item = Point> + '_ {
    let q = ctx.q();
    (0..(q as usize * q as usize)).map(move |i| Point::from_index(q, i))
}

pub fn point_add(ctx: &FieldCtx, a: Point, b: Point) -> Point {
    Point {
        x: ctx.add(a.x, b.x),
        y: ctx.add(a.y, b.y),
    }
}

pub fn point_sub(ctx: &FieldCtx, a: Point, b: Point) -> Point {
    Point {
        x: ctx.sub(a.x, b.x),
        y: ctx.sub(a.y, b.y),
    }
}

/// Quadrance of the vector `v` from the origin.
#[inline]
pub fn norm(ctx: &FieldCtx, v: Point) -> Elem {
    ctx.add(ctx.square(v.x), ctx.square(v.y))
}

#[inline]
pub fn quadrance(ctx: &FieldCtx, a: Point, b: Point) -> Elem {
    norm(ctx, point_sub(ctx, b, a))
}

/// Label of a circle: a quadrance value, or the punctured isotropic class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleClass {
    Value(Elem),
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub center: Point,
    pub class: CircleClass,
}

/// Points of a circle in canonical order.
///
/// Class 0 is the singleton `{center}`. The null class (only for
/// `q = 1 mod 4`) holds the points at quadrance 0 other than the center.
pub fn circle_points(ctx: &FieldCtx, circle: CircleSpec) -> Result<Vec<Point>, GeometryError> {
    let c = circle.center;
    match circle.class {
        CircleClass::Null if ctx.residue_class() == 3 => Err(GeometryError::NullClassInWrongField),
        CircleClass::Null => Ok(points(ctx)
            .filter(|&z| z != c && quadrance(ctx, c, z).is_zero())
            .collect()),
        CircleClass::Value(k) if k.is_zero() => Ok(vec![c]),
        CircleClass::Value(k) => Ok(points(ctx).filter(|&z| quadrance(ctx, c, z) == k).collect()),
    }
}

/// Quadratic status of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareStatus {
    Nonsquare,
    Zero,
    NonzeroSquare,
}

impl SquareStatus {
    pub fn of(ctx: &FieldCtx, x: Elem) -> Self {
        match ctx.chi(x) {
            0 => SquareStatus::Zero,
            1 => SquareStatus::NonzeroSquare,
            _ => SquareStatus::Nonsquare,
        }
    }

    /// Square or zero.
    pub fn is_square(self) -> bool {
        self != SquareStatus::Nonsquare
    }

    /// Number of intersection points this status predicts.
    pub fn intersections(self) -> u32 {
        match self {
            SquareStatus::Nonsquare => 0,
            SquareStatus::Zero => 1,
            SquareStatus::NonzeroSquare => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discriminant {
    pub value: Elem,
    pub status: SquareStatus,
}

/// `4f(i,j,k) = 2ij + 2jk + 2ki - i^2 - j^2 - k^2`, not yet divided by 4.
pub fn four_f(ctx: &FieldCtx, i: Elem, j: Elem, k: Elem) -> Elem {
    let cross = ctx.add(ctx.add(ctx.mul(i, j), ctx.mul(j, k)), ctx.mul(k, i));
    let squares = ctx.add(ctx.add(ctx.square(i), ctx.square(j)), ctx.square(k));
    ctx.sub(ctx.add(cross, cross), squares)
}

/// The intersection discriminant `f(i, j, k)`; symmetric in its arguments.
pub fn discriminant(ctx: &FieldCtx, i: Elem, j: Elem, k: Elem) -> Discriminant {
    let four = ctx.from_int(4);
    let value = ctx.mul(
        four_f(ctx, i, j, k),
        ctx.inv(four).expect("4 != 0 in odd characteristic"),
    );
    Discriminant {
        value,
        status: SquareStatus::of(ctx, value),
    }
}

/// Predicted `|C_i(X) & C_j(Y)|` for any `X, Y` with `Q(X, Y) = k`.
pub fn predicted_intersections(
    ctx: &FieldCtx,
    i: Elem,
    j: Elem,
    k: Elem,
) -> Result<u32, GeometryError> {
    if i.is_zero() || j.is_zero() || k.is_zero() {
        return Err(GeometryError::ZeroArgument);
    }
    Ok(discriminant(ctx, i, j, k).status.intersections())
}

/// Solves `Q(X, Z) = i`, `Q(Y, Z) = j` for `Z`, returning the solutions in
/// canonical order.
///
/// With `k = Q(X, Y) != 0` the solutions are `Z = Y + (u, v)` where
/// `(x, y) = Y - X`, `a = (i - j - k)/2`, `b^2 = f` and
/// `u = (a x -+ b y)/k`, `v = (a y +- b x)/k`. With `k = 0` (isotropic
/// centers) the system is linear along the isotropic directions.
pub fn intersect_circles(
    ctx: &FieldCtx,
    x_center: Point,
    i: Elem,
    y_center: Point,
    j: Elem,
) -> Result<Vec<Point>, GeometryError> {
    if x_center == y_center {
        return Err(GeometryError::CoincidentCenters);
    }
    if i.is_zero() || j.is_zero() {
        return Err(GeometryError::ZeroQuadranceClass);
    }
    let d = point_sub(ctx, y_center, x_center);
    let k = norm(ctx, d);
    let two_inv = ctx.inv(ctx.from_int(2))?;
    if k.is_zero() {
        return Ok(intersect_isotropic(ctx, x_center, i, d, j, two_inv)
            .into_iter()
            .collect());
    }
    let disc = discriminant(ctx, i, j, k);
    let Some((beta, _)) = ctx.sqrt(disc.value) else {
        return Ok(Vec::new());
    };
    let alpha = ctx.mul(ctx.sub(ctx.sub(i, j), k), two_inv);
    let k_inv = ctx.inv(k)?;
    let solve = |b: Elem| {
        let u = ctx.mul(ctx.sub(ctx.mul(alpha, d.x), ctx.mul(b, d.y)), k_inv);
        let v = ctx.mul(ctx.add(ctx.mul(alpha, d.y), ctx.mul(b, d.x)), k_inv);
        point_add(ctx, y_center, Point { x: u, y: v })
    };
    let mut out = vec![solve(beta)];
    if !beta.is_zero() {
        out.push(solve(ctx.neg(beta)));
    }
    out.sort_by_key(|p| p.index(ctx.q()));
    Ok(out)
}

/// Intersection for `X != Y` with `Q(X, Y) = 0`: one point when `i != j`,
/// none when `i = j`.
fn intersect_isotropic(
    ctx: &FieldCtx,
    x_center: Point,
    i: Elem,
    d: Point,
    j: Elem,
    two_inv: Elem,
) -> Option<Point> {
    // w = Z - X must satisfy w.d = (i - j)/2 and Q(w) = i. Since d is
    // isotropic, d^perp = span(d), so i = j forces Q(w) = 0, impossible.
    if i == j {
        return None;
    }
    // d = (a, b) with b^2 = -a^2, a != 0; its conjugate e = (a, -b) is the
    // other isotropic direction and d.e = 2a^2. Writing w = s d + t e gives
    // w.d = 2a^2 t and Q(w) = 4a^2 s t.
    let conj = Point {
        x: d.x,
        y: ctx.neg(d.y),
    };
    let a2 = ctx.square(d.x);
    let dot_de = ctx.add(a2, a2);
    let c = ctx.mul(ctx.sub(i, j), two_inv);
    let t = ctx.div(c, dot_de).ok()?;
    let s = ctx.div(i, ctx.mul(ctx.add(dot_de, dot_de), t)).ok()?;
    let w = Point {
        x: ctx.add(ctx.mul(s, d.x), ctx.mul(t, conj.x)),
        y: ctx.add(ctx.mul(s, d.y), ctx.mul(t, conj.y)),
    };
    Some(point_add(ctx, x_center, w))
}

/// Result of enumerating the `k` with `f(i, j, k)` square or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleK {
    pub i: Elem,
    pub j: Elem,
    pub count: usize,
    pub ks: Vec<Elem>,
    pub ij_square: bool,
    /// `(q+3)/2` or `(q+1)/2` for `q = 3 mod 4`; absent otherwise.
    pub predicted: Option<usize>,
    /// `count >= (q-1)/2`.
    pub lower_bound_holds: bool,
}

impl AdmissibleK {
    pub fn matches(&self) -> bool {
        self.predicted
            .map_or(self.lower_bound_holds, |p| p == self.count)
    }
}

pub fn count_admissible_k(ctx: &FieldCtx, i: Elem, j: Elem) -> Result<AdmissibleK, GeometryError> {
    if i.is_zero() || j.is_zero() {
        return Err(GeometryError::ZeroArgument);
    }
    let ks: Vec<Elem> = ctx
        .elements()
        .filter(|&k| discriminant(ctx, i, j, k).status.is_square())
        .collect();
    let q = ctx.q() as usize;
    let ij_square = ctx.chi(ctx.mul(i, j)) == 1;
    let predicted = (ctx.residue_class() == 3).then(|| {
        if ij_square {
            (q + 3) / 2
        } else {
            q.div_ceil(2)
        }
    });
    Ok(AdmissibleK {
        i,
        j,
        count: ks.len(),
        lower_bound_holds: ks.len() >= (q - 1) / 2,
        ks,
        ij_square,
        predicted,
    })
}

/// For `q = 1 mod 4`, a `j != 0` with both `f(i, i, j)` and `f(j, j, i)`
/// square or zero: `j = i` if 3 is a square, else `j = -i` if 5 is, else
/// `j = -6i` (15 is then a square).
pub fn companion_pair(ctx: &FieldCtx, i: Elem) -> Result<Elem, GeometryError> {
    if ctx.residue_class() != 1 {
        return Err(GeometryError::WrongResidueClass {
            expected: 1,
            q: ctx.q(),
        });
    }
    if i.is_zero() {
        return Err(GeometryError::ZeroArgument);
    }
    let j = if ctx.is_square(ctx.from_int(3)) {
        i
    } else if ctx.is_square(ctx.from_int(5)) {
        ctx.neg(i)
    } else {
        ctx.mul(ctx.from_int(-6), i)
    };
    assert!(
        discriminant(ctx, i, i, j).status.is_square()
            && discriminant(ctx, j, j, i).status.is_square(),
        "companion of {i} in F_{} fails the square conditions",
        ctx.q()
    );
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field_of_order;

    fn f(q: u32) -> FieldCtx {
        build_field_of_order(q).unwrap()
    }

    fn e(n: u32) -> Elem {
        Elem(n)
    }

    #[test]
    fn quadrance_examples() {
        let f7 = f(7);
        assert_eq!(quadrance(&f7, Point::new(0, 0), Point::new(1, 0)), e(1));
        assert_eq!(quadrance(&f7, Point::new(0, 0), Point::new(2, 2)), e(1));
        let f5 = f(5);
        assert_eq!(quadrance(&f5, Point::new(0, 0), Point::new(1, 2)), e(0));
    }

    #[test]
    fn point_index_roundtrip() {
        for q in [3u32, 9, 13] {
            for idx in 0..(q * q) as usize {
                assert_eq!(Point::from_index(q, idx).index(q), idx);
            }
        }
    }

    #[test]
    fn circle_examples() {
        let f7 = f(7);
        let unit = circle_points(
            &f7,
            CircleSpec {
                center: Point::ORIGIN,
                class: CircleClass::Value(e(1)),
            },
        )
        .unwrap();
        let want: Vec<Point> = [
            (0, 1),
            (0, 6),
            (1, 0),
            (2, 2),
            (2, 5),
            (5, 2),
            (5, 5),
            (6, 0),
        ]
        .iter()
        .map(|&(x, y)| Point::new(x, y))
        .collect();
        assert_eq!(unit, want);
        let zero = circle_points(
            &f7,
            CircleSpec {
                center: Point::new(3, 4),
                class: CircleClass::Value(e(0)),
            },
        )
        .unwrap();
        assert_eq!(zero, vec![Point::new(3, 4)]);
        assert_eq!(
            circle_points(
                &f7,
                CircleSpec {
                    center: Point::ORIGIN,
                    class: CircleClass::Null
                }
            ),
            Err(GeometryError::NullClassInWrongField)
        );
        let null5 = circle_points(
            &f(5),
            CircleSpec {
                center: Point::ORIGIN,
                class: CircleClass::Null,
            },
        )
        .unwrap();
        assert_eq!(null5.len(), 8);
    }

    #[test]
    fn discriminant_examples() {
        let f7 = f(7);
        let d = discriminant(&f7, e(1), e(1), e(1));
        assert_eq!((d.value, d.status), (e(6), SquareStatus::Nonsquare));
        let d = discriminant(&f7, e(1), e(1), e(4));
        assert_eq!((d.value, d.status), (e(0), SquareStatus::Zero));
        let d = discriminant(&f7, e(1), e(2), e(3));
        assert_eq!((d.value, d.status), (e(2), SquareStatus::NonzeroSquare));
        assert_eq!(predicted_intersections(&f7, e(1), e(1), e(1)), Ok(0));
        assert_eq!(predicted_intersections(&f7, e(1), e(1), e(4)), Ok(1));
        assert_eq!(predicted_intersections(&f7, e(1), e(2), e(3)), Ok(2));
        assert_eq!(
            predicted_intersections(&f7, e(0), e(2), e(3)),
            Err(GeometryError::ZeroArgument)
        );
    }

    #[test]
    fn discriminant_is_symmetric() {
        for q in [5u32, 7, 9, 11, 13] {
            let ctx = f(q);
            for i in ctx.elements() {
                for j in ctx.elements() {
                    for k in ctx.elements() {
                        let base = discriminant(&ctx, i, j, k);
                        for (a, b, c) in [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                            assert_eq!(discriminant(&ctx, a, b, c), base);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let f7 = f(7);
        assert_eq!(
            intersect_circles(&f7, Point::new(0, 0), e(1), Point::new(2, 0), e(1)).unwrap(),
            vec![Point::new(1, 0)]
        );
        assert!(
            intersect_circles(&f7, Point::new(0, 0), e(1), Point::new(1, 0), e(1))
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            intersect_circles(&f7, Point::ORIGIN, e(1), Point::ORIGIN, e(2)),
            Err(GeometryError::CoincidentCenters)
        );
        assert_eq!(
            intersect_circles(&f7, Point::ORIGIN, e(0), Point::new(1, 0), e(2)),
            Err(GeometryError::ZeroQuadranceClass)
        );
        let f5 = f(5);
        let z = intersect_circles(&f5, Point::new(0, 0), e(1), Point::new(1, 2), e(2)).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(quadrance(&f5, Point::ORIGIN, z[0]), e(1));
        assert_eq!(quadrance(&f5, Point::new(1, 2), z[0]), e(2));
        assert!(
            intersect_circles(&f5, Point::new(0, 0), e(3), Point::new(1, 2), e(3))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn admissible_k_examples() {
        let f7 = f(7);
        let r = count_admissible_k(&f7, e(1), e(1)).unwrap();
        assert_eq!(r.count, 5);
        assert_eq!(r.ks, vec![e(0), e(2), e(4), e(5), e(6)]);
        assert!(r.matches());
        let r = count_admissible_k(&f7, e(1), e(3)).unwrap();
        assert_eq!(r.count, 4);
        assert!(!r.ij_square);
        assert!(r.matches());
        let r = count_admissible_k(&f(11), e(1), e(1)).unwrap();
        assert_eq!(r.count, 7);
        assert_eq!(
            count_admissible_k(&f7, e(0), e(1)).unwrap_err(),
            GeometryError::ZeroArgument
        );
    }

    #[test]
    fn admissible_k_lower_bound_for_q1() {
        for q in [5u32, 9, 13, 17, 25, 29] {
            let ctx = f(q);
            for i in ctx.nonzero() {
                for j in ctx.nonzero() {
                    let r = count_admissible_k(&ctx, i, j).unwrap();
                    assert!(r.predicted.is_none());
                    assert!(r.lower_bound_holds, "q={q} i={i} j={j} count={}", r.count);
                }
            }
        }
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion_pair(&f(13), e(2)).unwrap(), e(2));
        assert_eq!(companion_pair(&f(5), e(1)).unwrap(), e(4));
        assert_eq!(companion_pair(&f(17), e(1)).unwrap(), e(11));
        assert!(matches!(
            companion_pair(&f(7), e(1)),
            Err(GeometryError::WrongResidueClass { .. })
        ));
        assert_eq!(
            companion_pair(&f(13), e(0)),
            Err(GeometryError::ZeroArgument)
        );
        for q in [5u32, 9, 13, 17, 29] {
            let ctx = f(q);
            for i in ctx.nonzero() {
                let j = companion_pair(&ctx, i).unwrap();
                assert!(!j.is_zero());
            }
        }
    }

    #[test]
    fn point_json_is_a_pair() {
        let json = serde_json::to_string(&Point::new(2, 5)).unwrap();
        assert_eq!(json, "[2,5]");
        let back: Point = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Point::new(2, 5));
    }
}
