//! The quadrance graph `V_q` for `q = 3 mod 4`: points of `F_q x F_q`,
//! adjacent when their quadrance is a nonzero square.
//!
//! `V_q` is strongly regular with the same parameters as the Paley graph of
//! order `q^2`.

mod bitset;
mod clique;

pub use bitset::Bitset;
pub use clique::{degeneracy_order, max_clique as max_clique_raw, CliqueSearch};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldCtx};
use crate::geometry::{norm, point_sub, points, quadrance, Point};
use crate::oracle::all_lines;

/// Largest order searched for cliques without an explicit override.
pub const DEFAULT_CLIQUE_MAX_ORDER: u32 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the quadrance graph needs q = 3 (mod 4), got q = {q}")]
    WrongResidueClass { q: u32 },
    #[error(
        "not strongly regular: pair ({x}, {y}) has {found} common neighbours, expected {expected}"
    )]
    NotStronglyRegular {
        x: Point,
        y: Point,
        found: usize,
        expected: usize,
    },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Irregular {
        vertex: Point,
        degree: usize,
        expected: usize,
    },
    #[error("subset is empty")]
    EmptySubset,
    #[error("vertex {0} appears twice in the subset")]
    DuplicateVertex(Point),
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("q = {q} exceeds the clique search bound {bound}; pass an override to run anyway")]
    TooLarge { q: u32, bound: u32 },
}

/// The graph on `F_q x F_q`, vertices numbered by [`Point::index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadGraph {
    q: u32,
    adjacency: Vec<Bitset>,
    complement: bool,
}

impl QuadGraph {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of vertices, `q^2`.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    pub fn adjacency(&self) -> &[Bitset] {
        &self.adjacency
    }

    pub fn neighbours(&self, v: usize) -> &Bitset {
        &self.adjacency[v]
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn point(&self, v: usize) -> Point {
        Point::from_index(self.q, v)
    }

    /// The complement without loops: adjacent when the quadrance is a
    /// nonsquare.
    pub fn complement(&self) -> QuadGraph {
        let n = self.n();
        let adjacency = (0..n)
            .map(|v| {
                let mut b = Bitset::full(n).difference(&self.adjacency[v]);
                b.remove(v);
                b
            })
            .collect();
        QuadGraph {
            q: self.q,
            adjacency,
            complement: !self.complement,
        }
    }
}

/// Builds `V_q`. Errors for `q = 1 mod 4`, where the quadrance relation does
/// not give a strongly regular graph.
pub fn build_graph(ctx: &FieldCtx) -> Result<QuadGraph, GraphError> {
    let q = ctx.q();
    if ctx.residue_class() != 3 {
        return Err(GraphError::WrongResidueClass { q });
    }
    let n = (q * q) as usize;
    // chi of the quadrance depends only on the difference vector
    let square_diff: Vec<bool> = (0..n)
        .map(|d| ctx.chi(norm(ctx, Point::from_index(q, d))) == 1)
        .collect();
    let adjacency: Vec<Bitset> = (0..n)
        .into_par_iter()
        .map(|a| {
            let pa = Point::from_index(q, a);
            Bitset::from_indices(
                n,
                (0..n)
                    .filter(|&b| square_diff[point_sub(ctx, Point::from_index(q, b), pa).index(q)]),
            )
        })
        .collect();
    let g = QuadGraph {
        q,
        adjacency,
        complement: false,
    };
    let expected = (n - 1) / 2;
    for v in 0..n {
        assert!(!g.adjacent(v, v), "loop at {v}");
        assert_eq!(g.degree(v), expected, "degree of vertex {v}");
    }
    Ok(g)
}

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[u64; 4]", from = "[u64; 4]")]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl From<SrgParams> for [u64; 4] {
    fn from(s: SrgParams) -> Self {
        [s.v, s.k, s.lambda, s.mu]
    }
}

impl From<[u64; 4]> for SrgParams {
    fn from([v, k, lambda, mu]: [u64; 4]) -> Self {
        SrgParams { v, k, lambda, mu }
    }
}

impl SrgParams {
    /// Closed-form parameters of `V_q`.
    pub fn predicted(q: u32) -> Self {
        let s = (q as u64).pow(2);
        SrgParams {
            v: s,
            k: (s - 1) / 2,
            lambda: (s - 5) / 4,
            mu: (s - 1) / 4,
        }
    }

    /// `k (k - lambda - 1) = (v - k - 1) mu`.
    pub fn identity_holds(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

/// Counts common neighbours over every pair and returns the parameters,
/// failing on the first pair that disagrees.
pub fn srg_params(g: &QuadGraph) -> Result<SrgParams, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::EmptySubset);
    }
    let k = g.degree(0);
    if let Some(v) = (0..n).find(|&v| g.degree(v) != k) {
        return Err(GraphError::Irregular {
            vertex: g.point(v),
            degree: g.degree(v),
            expected: k,
        });
    }
    // reference values from vertex 0
    let reference = |adjacent: bool| {
        (1..n)
            .find(|&y| g.adjacent(0, y) == adjacent)
            .map(|y| g.neighbours(0).intersection_count(g.neighbours(y)))
    };
    let lambda = reference(true).unwrap_or(0);
    let mu = reference(false).unwrap_or(0);
    let bad = (0..n).into_par_iter().find_map_first(|x| {
        (x + 1..n).find_map(|y| {
            let c = g.neighbours(x).intersection_count(g.neighbours(y));
            let expected = if g.adjacent(x, y) { lambda } else { mu };
            (c != expected).then(|| GraphError::NotStronglyRegular {
                x: g.point(x),
                y: g.point(y),
                found: c,
                expected,
            })
        })
    });
    match bad {
        Some(e) => Err(e),
        None => Ok(SrgParams {
            v: n as u64,
            k: k as u64,
            lambda: lambda as u64,
            mu: mu as u64,
        }),
    }
}

/// Edge and common-neighbour statistics of a vertex subset `U`, with the
/// edge-deviation bound `|e(U) - C(u,2)/2| <= u (q^2 - u) / (4q)` checked
/// in the cross-multiplied form `|4q e - q u (u-1)| <= u (q^2 - u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetStats {
    pub u: u64,
    pub e: u64,
    /// `n(U)`: pairs in `U` times common neighbours, counted one vertex at
    /// a time.
    pub triples: u64,
    /// `C(u,2) (q^2 - 1)/4 - e(U)`.
    pub triples_closed_form: u64,
    pub identity_holds: bool,
    pub bound_lhs: u64,
    pub bound_rhs: u64,
    pub holds: bool,
}

impl SubsetStats {
    pub fn equality(&self) -> bool {
        self.bound_lhs == self.bound_rhs
    }
}

pub fn subset_edge_stats(g: &QuadGraph, subset: &[usize]) -> Result<SubsetStats, GraphError> {
    let n = g.n();
    if subset.is_empty() {
        return Err(GraphError::EmptySubset);
    }
    let mut members = Bitset::new(n);
    for &v in subset {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { index: v, n });
        }
        if members.contains(v) {
            return Err(GraphError::DuplicateVertex(g.point(v)));
        }
        members.insert(v);
    }
    let q = g.q() as u64;
    let u = subset.len() as u64;
    let e = subset
        .iter()
        .map(|&v| g.neighbours(v).intersection_count(&members) as u64)
        .sum::<u64>()
        / 2;
    let mut triples = 0u64;
    for (ai, &a) in subset.iter().enumerate() {
        for &b in &subset[ai + 1..] {
            triples += (0..n)
                .filter(|&z| g.adjacent(a, z) && g.adjacent(b, z))
                .count() as u64;
        }
    }
    let pairs = u * (u - 1) / 2;
    let triples_closed_form = pairs * (q * q - 1) / 4 - e;
    let bound_lhs = (4 * q * e).abs_diff(q * u * (u - 1));
    let bound_rhs = u * (q * q - u);
    Ok(SubsetStats {
        u,
        e,
        triples,
        triples_closed_form,
        identity_holds: triples == triples_closed_form,
        bound_lhs,
        bound_rhs,
        holds: bound_lhs <= bound_rhs,
    })
}

/// Summary of seeded random subset trials. Sizes are uniform in `1..=q^2`,
/// members uniform without replacement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetTrials {
    pub trials: usize,
    pub seed: u64,
    pub bound_holds: usize,
    pub identity_holds: usize,
    pub equality_cases: usize,
    /// Largest `bound_lhs / bound_rhs` seen, as the pair `(lhs, rhs)`.
    pub tightest: (u64, u64),
    pub all_hold: bool,
}

/// Random subsets for the given seed, in generation order.
pub fn random_subsets(n: usize, trials: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let size = rng.random_range(1..=n);
            let mut s = sample(&mut rng, n, size).into_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

pub fn subset_trials(g: &QuadGraph, trials: usize, seed: u64) -> Result<SubsetTrials, GraphError> {
    let stats = random_subsets(g.n(), trials, seed)
        .par_iter()
        .map(|s| subset_edge_stats(g, s))
        .collect::<Result<Vec<_>, _>>()?;
    let tightest = stats
        .iter()
        .map(|s| (s.bound_lhs, s.bound_rhs))
        .max_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)))
        .unwrap_or((0, 1));
    let bound_holds = stats.iter().filter(|s| s.holds).count();
    let identity_holds = stats.iter().filter(|s| s.identity_holds).count();
    Ok(SubsetTrials {
        trials,
        seed,
        bound_holds,
        identity_holds,
        equality_cases: stats.iter().filter(|s| s.equality()).count(),
        tightest,
        all_hold: bound_holds == trials && identity_holds == trials,
    })
}

/// How the lines of the plane sit in `V_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSummary {
    pub lines: usize,
    /// Lines whose points are pairwise adjacent.
    pub clique_lines: usize,
    /// Lines whose points are pairwise non-adjacent.
    pub independent_lines: usize,
    /// Every line is a clique exactly when its direction has square
    /// quadrance.
    pub direction_rule_holds: bool,
    /// Every clique line attains the edge-deviation bound with equality.
    pub clique_lines_tight: bool,
    /// Every independent line attains the bound with equality.
    pub independent_lines_tight: bool,
}

pub fn line_summary(ctx: &FieldCtx, g: &QuadGraph) -> Result<LineSummary, GraphError> {
    let q = ctx.q();
    let lines = all_lines(ctx);
    let mut s = LineSummary {
        lines: lines.len(),
        clique_lines: 0,
        independent_lines: 0,
        direction_rule_holds: true,
        clique_lines_tight: true,
        independent_lines_tight: true,
    };
    for line in &lines {
        let idx: Vec<usize> = line.iter().map(|p| p.index(q)).collect();
        let pairs = || {
            idx.iter()
                .enumerate()
                .flat_map(|(i, &a)| idx[i + 1..].iter().map(move |&b| (a, b)))
        };
        let clique = pairs().all(|(a, b)| g.adjacent(a, b));
        let independent = pairs().all(|(a, b)| !g.adjacent(a, b));
        let square_direction = ctx.chi(quadrance(ctx, line[0], line[1])) == 1;
        let stats = subset_edge_stats(g, &idx)?;
        if clique {
            s.clique_lines += 1;
            s.clique_lines_tight &= stats.equality();
        }
        if independent {
            s.independent_lines += 1;
            s.independent_lines_tight &= stats.equality();
        }
        s.direction_rule_holds &= if square_direction {
            clique
        } else {
            independent
        };
    }
    Ok(s)
}

/// Whether the points are exactly the `q` points of one line.
pub fn is_full_line(ctx: &FieldCtx, pts: &[Point]) -> bool {
    if pts.len() != ctx.q() as usize {
        return false;
    }
    let (p0, p1) = (pts[0], pts[1]);
    let d = point_sub(ctx, p1, p0);
    pts.iter().all(|&p| {
        let e = point_sub(ctx, p, p0);
        ctx.mul(d.x, e.y) == ctx.mul(d.y, e.x)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSide {
    pub omega: usize,
    pub witness_count: usize,
    pub witnesses: Vec<Vec<Point>>,
    /// Every witness is a full line.
    pub all_lines: bool,
    pub line_witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub q: u32,
    pub enumerated: bool,
    #[serde(flatten)]
    pub cliques: CliqueSide,
    pub independent_counterpart: CliqueSide,
}

fn clique_side(ctx: &FieldCtx, g: &QuadGraph, enumerate: bool) -> CliqueSide {
    let r = clique::max_clique(g.adjacency(), enumerate);
    let witnesses: Vec<Vec<Point>> = r
        .cliques
        .iter()
        .map(|c| c.iter().map(|&v| g.point(v)).collect())
        .collect();
    for c in &r.cliques {
        debug_assert_eq!(c.len(), r.omega);
        debug_assert!(c
            .iter()
            .all(|&a| c.iter().all(|&b| a == b || g.adjacent(a, b))));
    }
    let line_witnesses = witnesses.iter().filter(|w| is_full_line(ctx, w)).count();
    CliqueSide {
        omega: r.omega,
        witness_count: witnesses.len(),
        all_lines: line_witnesses == witnesses.len(),
        line_witnesses,
        witnesses,
    }
}

/// Exact maximum cliques of `V_q` and of its complement. Refuses
/// `q > max_order`.
pub fn max_clique(
    ctx: &FieldCtx,
    g: &QuadGraph,
    enumerate: bool,
    max_order: u32,
) -> Result<CliqueReport, GraphError> {
    let q = ctx.q();
    if q > max_order {
        return Err(GraphError::TooLarge {
            q,
            bound: max_order,
        });
    }
    let comp = g.complement();
    let (cliques, independent_counterpart) = rayon::join(
        || clique_side(ctx, g, enumerate),
        || clique_side(ctx, &comp, enumerate),
    );
    Ok(CliqueReport {
        q,
        enumerated: enumerate,
        cliques,
        independent_counterpart,
    })
}

/// The similarity `(x, y) -> (a x - b y, a y + b x)` for the smallest
/// `(a, b)` with `a^2 + b^2` a nonsquare. It scales every quadrance by a
/// nonsquare, so it swaps `V_q` and its complement.
pub fn nonsquare_scaling(ctx: &FieldCtx) -> (Elem, Elem) {
    ctx.elements()
        .flat_map(|a| ctx.elements().map(move |b| (a, b)))
        .find(|&(a, b)| ctx.chi(norm(ctx, Point { x: a, y: b })) == -1)
        .expect("a nonsquare norm exists")
}

fn scale(ctx: &FieldCtx, (a, b): (Elem, Elem), p: Point) -> Point {
    Point {
        x: ctx.sub(ctx.mul(a, p.x), ctx.mul(b, p.y)),
        y: ctx.add(ctx.mul(a, p.y), ctx.mul(b, p.x)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub q: u32,
    pub omega: usize,
    pub alpha: usize,
    pub omega_equals_q: bool,
    pub alpha_equals_q: bool,
    pub clique_witnesses: usize,
    pub clique_lines: usize,
    pub independent_witnesses: usize,
    pub independent_lines: usize,
    /// Every maximum clique and independent set of order `q` is a line.
    pub conjecture_consistent: bool,
    /// The nonsquare similarity maps the clique witnesses exactly onto the
    /// independent witnesses.
    pub scaling_cross_check: bool,
    pub max_cliques: Vec<Vec<Point>>,
    pub max_independent_sets: Vec<Vec<Point>>,
    pub notes: Vec<String>,
}

/// Enumerates all maximum cliques and independent sets of `V_q` and checks
/// that the ones of order `q` are lines. This is evidence only.
pub fn conjecture_check(ctx: &FieldCtx, max_order: u32) -> Result<ConjectureReport, GraphError> {
    let g = build_graph(ctx)?;
    let r = max_clique(ctx, &g, true, max_order)?;
    let q = ctx.q();
    let (c, i) = (&r.cliques, &r.independent_counterpart);

    let s = nonsquare_scaling(ctx);
    let mut mapped: Vec<Vec<Point>> = c
        .witnesses
        .iter()
        .map(|w| {
            let mut m: Vec<Point> = w.iter().map(|&p| scale(ctx, s, p)).collect();
            m.sort_by_key(|p| p.index(q));
            m
        })
        .collect();
    mapped.sort_by_key(|w| w.iter().map(|p| p.index(q)).collect::<Vec<_>>());

    let order_q_lines = |side: &CliqueSide| side.omega != q as usize || side.all_lines;
    let mut notes = vec![
        "evidence only: exhaustive enumeration at a single q does not settle the general statement"
            .to_string(),
    ];
    if q > 7 {
        notes.push(format!(
            "q = {q} is beyond the orders previously inspected by hand"
        ));
    }
    Ok(ConjectureReport {
        q,
        omega: c.omega,
        alpha: i.omega,
        omega_equals_q: c.omega == q as usize,
        alpha_equals_q: i.omega == q as usize,
        clique_witnesses: c.witness_count,
        clique_lines: c.line_witnesses,
        independent_witnesses: i.witness_count,
        independent_lines: i.line_witnesses,
        conjecture_consistent: order_q_lines(c) && order_q_lines(i),
        scaling_cross_check: mapped == i.witnesses,
        max_cliques: c.witnesses.clone(),
        max_independent_sets: i.witnesses.clone(),
        notes,
    })
}

/// All vertices as points, in index order.
pub fn vertices(ctx: &FieldCtx) -> Vec<Point> {
    points(ctx).collect()
}
