//! Quadrance association schemes on `F_q x F_q` and their fusions.
//!
//! Pairs of points are classed by their quadrance. For `q = 3 mod 4` the
//! classes are the `q` quadrance values (class 0 is the diagonal). For
//! `q = 1 mod 4` there is one extra class, `null` (index `q`), holding the
//! distinct pairs at quadrance 0.
//!
//! A [`ClassMatrix`] never stores the `q^2 x q^2` relation: the class of a
//! pair is looked up from the quadrance of its difference vector.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldCtx};
use crate::geometry::{discriminant, norm, point_sub, Point};

/// Schemes up to this order are verified over every pair.
pub const DEFAULT_EXHAUSTIVE_MAX_ORDER: u32 = 13;
/// Schemes up to this order are verified on sampled pairs.
pub const DEFAULT_SAMPLED_MAX_ORDER: u32 = 25;
/// Sampled pairs per class above the exhaustive bound.
pub const DEFAULT_SAMPLES_PER_CLASS: usize = 100;
/// Cap on recorded violations.
pub const MAX_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("operation requires q = {expected} (mod 4), got q = {q}")]
    WrongResidueClass { expected: u8, q: u32 },
    #[error("{t} does not divide q - 1 = {}", q - 1)]
    NotADivisor { t: u32, q: u32 },
    #[error("fusion needs the plain quadrance scheme as input")]
    NotQuadranceScheme,
    #[error("q = {q} exceeds the verification bound {bound}")]
    TooLarge { q: u32, bound: u32 },
}

/// What an associate class stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassLabel {
    Diagonal,
    Value {
        value: Elem,
    },
    Null,
    Coset {
        representative: Elem,
        members: Vec<Elem>,
    },
    Merged {
        values: Vec<Elem>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Quadrance,
    Fused { t: u32 },
    Custom,
}

/// A partition of ordered point pairs into labeled classes, defined through
/// the quadrance of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMatrix {
    q: u32,
    kind: SchemeKind,
    labels: Vec<ClassLabel>,
    /// Class of a distinct pair by quadrance value.
    value_class: Vec<u16>,
    /// Class of distinct pairs at quadrance 0, when such pairs exist.
    isotropic_class: Option<u16>,
    notes: Vec<String>,
}

impl ClassMatrix {
    /// Builds a partition from a value-to-class map. Distinct pairs at
    /// quadrance 0 go to `isotropic_class` (required for `q = 1 mod 4`).
    pub fn from_value_map(
        ctx: &FieldCtx,
        labels: Vec<ClassLabel>,
        value_class: Vec<u16>,
        isotropic_class: Option<u16>,
    ) -> Result<Self, SchemeError> {
        let q = ctx.q();
        if value_class.len() != q as usize {
            return Err(SchemeError::MalformedPartition(format!(
                "value map has {} entries, expected {q}",
                value_class.len()
            )));
        }
        let classes = labels.len();
        let out_of_range = value_class
            .iter()
            .chain(isotropic_class.iter())
            .any(|&c| c as usize >= classes);
        if out_of_range {
            return Err(SchemeError::MalformedPartition(
                "class index out of range".into(),
            ));
        }
        if ctx.residue_class() == 1 && isotropic_class.is_none() {
            return Err(SchemeError::MalformedPartition(
                "q = 1 (mod 4) needs a class for isotropic pairs".into(),
            ));
        }
        let isotropic_class = isotropic_class.filter(|_| ctx.residue_class() == 1);
        Ok(ClassMatrix {
            q,
            kind: SchemeKind::Custom,
            labels,
            value_class,
            isotropic_class,
            notes: Vec::new(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Class of the pair `(a, b)`.
    #[inline]
    pub fn class_of(&self, ctx: &FieldCtx, a: Point, b: Point) -> usize {
        if a == b {
            return 0;
        }
        let v = norm(ctx, point_sub(ctx, b, a));
        match self.isotropic_class {
            Some(c) if v.is_zero() => c as usize,
            _ => self.value_class[v.index()] as usize,
        }
    }

    /// Class of every difference vector, indexed by its canonical index.
    fn difference_classes(&self, ctx: &FieldCtx) -> Vec<u16> {
        let q = self.q as usize;
        (0..q * q)
            .map(|idx| self.class_of(ctx, Point::ORIGIN, Point::from_index(self.q, idx)) as u16)
            .collect()
    }

    /// The same partition with class `b` merged into class `a`.
    pub fn merge_classes(&self, a: usize, b: usize) -> Result<Self, SchemeError> {
        let s = self.num_classes();
        if a == b || a >= s || b >= s || a == 0 || b == 0 {
            return Err(SchemeError::MalformedPartition(format!(
                "cannot merge classes {a} and {b}"
            )));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let remap = |c: u16| -> u16 {
            let c = c as usize;
            let c = if c == gone { keep } else { c };
            (if c > gone { c - 1 } else { c }) as u16
        };
        let values = |label: &ClassLabel| -> Vec<Elem> {
            match label {
                ClassLabel::Value { value } => vec![*value],
                ClassLabel::Coset { members, .. } => members.clone(),
                ClassLabel::Merged { values } => values.clone(),
                ClassLabel::Diagonal | ClassLabel::Null => Vec::new(),
            }
        };
        let mut merged = values(&self.labels[keep]);
        merged.extend(values(&self.labels[gone]));
        merged.sort();
        let mut labels = self.labels.clone();
        labels[keep] = ClassLabel::Merged { values: merged };
        labels.remove(gone);
        Ok(ClassMatrix {
            q: self.q,
            kind: SchemeKind::Custom,
            labels,
            value_class: self.value_class.iter().map(|&c| remap(c)).collect(),
            isotropic_class: self.isotropic_class.map(remap),
            notes: self.notes.clone(),
        })
    }
}

/// The quadrance scheme: `q` classes for `q = 3 mod 4`, `q + 1` for
/// `q = 1 mod 4` (the last one being the null class).
pub fn build_quadrance_scheme(ctx: &FieldCtx) -> ClassMatrix {
    let q = ctx.q();
    let mut labels = vec![ClassLabel::Diagonal];
    labels.extend(ctx.nonzero().map(|value| ClassLabel::Value { value }));
    let isotropic_class = (ctx.residue_class() == 1).then(|| {
        labels.push(ClassLabel::Null);
        q as u16
    });
    ClassMatrix {
        q,
        kind: SchemeKind::Quadrance,
        labels,
        value_class: (0..q as u16).collect(),
        isotropic_class,
        notes: Vec::new(),
    }
}

/// Intersection numbers `p[i][j][k]` and valencies `a_i = p[i][i][0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTensor {
    pub values: Vec<Vec<Vec<u32>>>,
    pub valencies: Vec<u32>,
}

impl IntersectionTensor {
    fn zeros(s: usize) -> Self {
        IntersectionTensor {
            values: vec![vec![vec![0; s]; s]; s],
            valencies: vec![0; s],
        }
    }

    fn finish(mut self) -> Self {
        let s = self.values.len();
        self.valencies = (0..s).map(|i| self.values[i][i][0]).collect();
        self
    }

    pub fn num_classes(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.values[i][j][k]
    }

    /// `p[i][j][k] = p[j][i][k]` everywhere.
    pub fn is_symmetric(&self) -> bool {
        let s = self.num_classes();
        (0..s).all(|i| (0..s).all(|j| (0..s).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    /// `sum_j p[i][j][k] = a_i` for every `i, k`.
    pub fn row_sums_hold(&self) -> bool {
        let s = self.num_classes();
        (0..s).all(|i| {
            (0..s).all(|k| (0..s).map(|j| self.get(i, j, k)).sum::<u32>() == self.valencies[i])
        })
    }

    /// Positions where two tensors disagree, as `(i, j, k, self, other)`.
    pub fn differences(&self, other: &Self) -> Vec<(usize, usize, usize, u32, u32)> {
        let s = self.num_classes();
        if other.num_classes() != s {
            return vec![(s, s, s, s as u32, other.num_classes() as u32)];
        }
        let mut out = Vec::new();
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    if self.get(i, j, k) != other.get(i, j, k) {
                        out.push((i, j, k, self.get(i, j, k), other.get(i, j, k)));
                    }
                }
            }
        }
        out
    }
}

/// A pair `(alpha, beta)` in class `k` whose count disagrees with the class
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub representative: (Point, Point),
    pub pair: (Point, Point),
    pub representative_count: u32,
    pub pair_count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    /// Every pair of every class was counted.
    Exhaustive,
    /// The representative plus this many seeded random pairs per class.
    Sampled { per_class: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub q: u32,
    pub kind: SchemeKind,
    pub classes: Vec<ClassLabel>,
    pub class_sizes: Vec<u64>,
    pub coverage: Coverage,
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub tensor: IntersectionTensor,
    pub row_sums_hold: bool,
    pub predicted_match: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub exhaustive_max_order: u32,
    pub sampled_max_order: u32,
    pub samples_per_class: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_max_order: DEFAULT_EXHAUSTIVE_MAX_ORDER,
            sampled_max_order: DEFAULT_SAMPLED_MAX_ORDER,
            samples_per_class: DEFAULT_SAMPLES_PER_CLASS,
            seed: 0,
        }
    }
}

/// Checks the association scheme axioms by counting.
///
/// Axioms (i) and (ii) are checked over all pairs; a failure there is a
/// [`SchemeError::MalformedPartition`]. For (iii), the first pair of each
/// class (in canonical order) fixes `p[.][.][k]`, and every other pair of
/// the class (or a seeded sample, above the exhaustive bound) must produce
/// the same counts.
pub fn verify_scheme(ctx: &FieldCtx, cm: &ClassMatrix) -> Result<VerificationReport, SchemeError> {
    verify_scheme_with(ctx, cm, VerifyOptions::default())
}

pub fn verify_scheme_with(
    ctx: &FieldCtx,
    cm: &ClassMatrix,
    opts: VerifyOptions,
) -> Result<VerificationReport, SchemeError> {
    let q = ctx.q();
    if q > opts.sampled_max_order {
        return Err(SchemeError::TooLarge {
            q,
            bound: opts.sampled_max_order,
        });
    }
    let n = (q * q) as usize;
    let s = cm.num_classes();
    let diff = cm.difference_classes(ctx);
    let pts: Vec<Point> = (0..n).map(|i| Point::from_index(q, i)).collect();
    // index of b - a, for all a, b
    let sub: Vec<u32> = (0..n * n)
        .into_par_iter()
        .map(|ab| point_sub(ctx, pts[ab % n], pts[ab / n]).index(q) as u32)
        .collect();
    let class = |a: usize, b: usize| diff[sub[a * n + b] as usize] as usize;

    // Axioms (i) and (ii), plus class sizes.
    let mut sizes = vec![0u64; s];
    for a in 0..n {
        for b in 0..n {
            let c = class(a, b);
            if (c == 0) != (a == b) {
                return Err(SchemeError::MalformedPartition(format!(
                    "pair ({}, {}) in class {c} breaks the diagonal axiom",
                    pts[a], pts[b]
                )));
            }
            if c != class(b, a) {
                return Err(SchemeError::MalformedPartition(format!(
                    "pair ({}, {}) is not symmetric",
                    pts[a], pts[b]
                )));
            }
            sizes[c] += 1;
        }
    }
    if let Some(empty) = sizes.iter().position(|&z| z == 0) {
        return Err(SchemeError::MalformedPartition(format!(
            "class {empty} is empty"
        )));
    }

    let coverage = if q <= opts.exhaustive_max_order {
        Coverage::Exhaustive
    } else {
        Coverage::Sampled {
            per_class: opts.samples_per_class,
            seed: opts.seed,
        }
    };

    let histogram = |a: usize, b: usize| -> Vec<u32> {
        let mut h = vec![0u32; s * s];
        for g in 0..n {
            h[class(a, g) * s + class(g, b)] += 1;
        }
        h
    };

    let mut tensor = IntersectionTensor::zeros(s);
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..s {
        let members: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| class(a, b) == k)
            .collect();
        let rep = members[0];
        let rep_h = histogram(rep.0, rep.1);
        for i in 0..s {
            for j in 0..s {
                tensor.values[i][j][k] = rep_h[i * s + j];
            }
        }
        let checked: Vec<(usize, usize)> = match coverage {
            Coverage::Exhaustive => members[1..].to_vec(),
            Coverage::Sampled { per_class, .. } => members[1..]
                .choose_multiple(&mut rng, per_class)
                .copied()
                .collect(),
        };
        let mut bad: Vec<Violation> = checked
            .par_iter()
            .filter_map(|&(a, b)| {
                let h = histogram(a, b);
                let at = (0..s * s).find(|&x| h[x] != rep_h[x])?;
                Some(Violation {
                    i: at / s,
                    j: at % s,
                    k,
                    representative: (pts[rep.0], pts[rep.1]),
                    pair: (pts[a], pts[b]),
                    representative_count: rep_h[at],
                    pair_count: h[at],
                })
            })
            .collect();
        bad.sort_by_key(|v| (v.pair.0.index(q), v.pair.1.index(q)));
        violations.extend(
            bad.into_iter()
                .take(MAX_VIOLATIONS - violations.len().min(MAX_VIOLATIONS)),
        );
    }
    let tensor = tensor.finish();

    let mut notes = cm.notes.clone();
    let predicted = match cm.kind {
        SchemeKind::Quadrance => {
            notes.extend(predicted_notes(ctx).iter().map(|s| s.to_string()));
            Some(predicted_tensor(ctx))
        }
        SchemeKind::Fused { t } => Some(fused_predicted_tensor(ctx, t)?),
        SchemeKind::Custom => None,
    };
    let predicted_match = predicted.map(|p| {
        let diffs = tensor.differences(&p);
        for (i, j, k, got, want) in diffs.iter().take(8) {
            notes.push(format!(
                "computed p[{i}][{j}][{k}] = {got} differs from closed form {want}"
            ));
        }
        diffs.is_empty()
    });

    Ok(VerificationReport {
        q,
        kind: cm.kind,
        classes: cm.labels.clone(),
        class_sizes: sizes,
        coverage,
        valid: violations.is_empty(),
        violations,
        row_sums_hold: tensor.row_sums_hold(),
        tensor,
        predicted_match,
        notes,
    })
}

/// Caveats on the closed-form tensor, for report notes.
pub fn predicted_notes(ctx: &FieldCtx) -> Vec<&'static str> {
    let mut notes = vec![
        "intersection discriminant uses the symmetric form 4f = 2ij + 2jk + 2ki - i^2 - j^2 - k^2; \
         the variant ij - (i-j-k)^2/4 disagrees with brute-force circle intersection counts",
    ];
    if ctx.residue_class() == 1 {
        notes.push(
            "null-class entries p[0][j][null] = p[j][0][null] = 0 for nonzero j \
             (the generic 'i != j gives 1' rule does not apply when one side is the diagonal)",
        );
        notes.push(
            "for k a nonzero value, entries with i or j in {0, null} are filled by direct counting: \
             p[0][j][k] = [j = k], p[null][j][k] = 2[j != k], p[null][null][k] = 2",
        );
    }
    notes
}

/// Closed-form intersection numbers of the quadrance scheme.
///
/// Class indices are quadrance values, plus `q` for the null class when
/// `q = 1 mod 4`.
pub fn predicted_tensor(ctx: &FieldCtx) -> IntersectionTensor {
    let q = ctx.q() as usize;
    let q1 = ctx.residue_class() == 1;
    let s = if q1 { q + 1 } else { q };
    let null = q;
    let mut t = IntersectionTensor::zeros(s);
    let value_rule = |i: usize, j: usize, k: usize| -> u32 {
        discriminant(ctx, Elem(i as u32), Elem(j as u32), Elem(k as u32))
            .status
            .intersections()
    };
    for i in 0..s {
        for j in 0..s {
            // k = 0
            t.values[i][j][0] = match (i, j) {
                _ if i != j => 0,
                (0, 0) => 1,
                _ if q1 && i == null => 2 * (q as u32 - 1),
                _ if q1 => q as u32 - 1,
                _ => q as u32 + 1,
            };
            for k in 1..q {
                t.values[i][j][k] = if !q1 {
                    value_rule(i, j, k)
                } else {
                    match (i, j) {
                        (0, _) => (j == k) as u32,
                        (_, 0) => (i == k) as u32,
                        _ if i == null && j == null => 2,
                        _ if i == null => 2 * (j != k) as u32,
                        _ if j == null => 2 * (i != k) as u32,
                        _ => value_rule(i, j, k),
                    }
                };
            }
            if q1 {
                t.values[i][j][null] = match (i, j) {
                    (0, 0) => 0,
                    (0, _) => (j == null) as u32,
                    (_, 0) => (i == null) as u32,
                    _ if i == null && j == null => q as u32 - 2,
                    _ if i != j => 1,
                    _ => 0,
                };
            }
        }
    }
    t.finish()
}

/// Fuses the quadrance scheme (`q = 3 mod 4`) along the cosets of the
/// subgroup `<g^t>` of index `t` in `F_q^*`, giving `t + 1` classes.
///
/// Classes `1..=t` are ordered by their representative: the unique nonzero
/// `n`-th power (`n = (q - 1)/t`) in the coset when `gcd(t, n) = 1`, and the
/// smallest coset element otherwise. For `t = 2` this is {diagonal, square
/// quadrance, nonsquare quadrance}.
pub fn fuse_scheme(ctx: &FieldCtx, cm: &ClassMatrix, t: u32) -> Result<ClassMatrix, SchemeError> {
    let q = ctx.q();
    if ctx.residue_class() != 3 {
        return Err(SchemeError::WrongResidueClass { expected: 3, q });
    }
    if t == 0 || !(q - 1).is_multiple_of(t) {
        return Err(SchemeError::NotADivisor { t, q });
    }
    if cm.kind != SchemeKind::Quadrance || cm.q != q {
        return Err(SchemeError::NotQuadranceScheme);
    }
    let cosets = fusion_cosets(ctx, t);
    let mut value_class = vec![0u16; q as usize];
    let mut labels = vec![ClassLabel::Diagonal];
    for (h, (rep, members)) in cosets.iter().enumerate() {
        for m in members {
            value_class[m.index()] = h as u16 + 1;
        }
        labels.push(ClassLabel::Coset {
            representative: *rep,
            members: members.clone(),
        });
    }
    let n = (q - 1) / t;
    let mut notes = Vec::new();
    if gcd(t, n) != 1 {
        notes.push(format!(
            "gcd(t, (q-1)/t) = {} > 1: the nonzero {n}-th powers do not represent the cosets of <g^{t}>; \
             classes are labeled by their smallest element",
            gcd(t, n)
        ));
    }
    Ok(ClassMatrix {
        q,
        kind: SchemeKind::Fused { t },
        labels,
        value_class,
        isotropic_class: None,
        notes,
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cosets of `<g^t>` in `F_q^*` as `(representative, sorted members)`,
/// ordered by representative.
pub fn fusion_cosets(ctx: &FieldCtx, t: u32) -> Vec<(Elem, Vec<Elem>)> {
    let q = ctx.q();
    let n = (q - 1) / t;
    let mut cosets: Vec<Vec<Elem>> = vec![Vec::new(); t as usize];
    for v in ctx.nonzero() {
        let l = ctx.log(v).expect("nonzero");
        cosets[(l % t) as usize].push(v);
    }
    let mut out: Vec<(Elem, Vec<Elem>)> = cosets
        .into_iter()
        .map(|members| {
            let rep = if gcd(t, n) == 1 {
                // x is an n-th power iff log(x) is a multiple of gcd(n, q-1) = n
                *members
                    .iter()
                    .find(|&&x| ctx.log(x).unwrap().is_multiple_of(n))
                    .expect("coprime case has an n-th power in every coset")
            } else {
                members[0]
            };
            (rep, members)
        })
        .collect();
    out.sort_by_key(|(rep, _)| *rep);
    out
}

/// `V(v) = sum_{c,d} p[a^c x_i][a^d x_j][a^v x_k]` for `v = 0..n`, with
/// `a = g^t`, `x_h` the class representatives and `p` the closed-form
/// quadrance tensor. The fusion is a scheme only if all entries agree.
/// Class 0 contributes the single value 0.
pub fn fusion_v_values(ctx: &FieldCtx, t: u32, i: usize, j: usize, k: usize) -> Vec<u32> {
    let base = predicted_tensor(ctx);
    fusion_v_values_with(ctx, &base, &fusion_cosets(ctx, t), t, i, j, k)
}

fn fusion_v_values_with(
    ctx: &FieldCtx,
    base: &IntersectionTensor,
    cosets: &[(Elem, Vec<Elem>)],
    t: u32,
    i: usize,
    j: usize,
    k: usize,
) -> Vec<u32> {
    let members = |h: usize| -> Vec<usize> {
        if h == 0 {
            vec![0]
        } else {
            cosets[h - 1].1.iter().map(|e| e.index()).collect()
        }
    };
    let (mi, mj) = (members(i), members(j));
    let alpha = ctx.exp(t as u64);
    let targets: Vec<usize> = if k == 0 {
        vec![0]
    } else {
        let n = (ctx.q() - 1) / t;
        let xk = cosets[k - 1].0;
        (0..n as u64)
            .map(|v| ctx.mul(ctx.pow(alpha, v), xk).index())
            .collect()
    };
    targets
        .into_iter()
        .map(|c| {
            mi.iter()
                .map(|&a| mj.iter().map(|&b| base.get(a, b, c)).sum::<u32>())
                .sum()
        })
        .collect()
}

/// Closed-form tensor of the `t`-fusion, summed from the quadrance tensor.
pub fn fused_predicted_tensor(ctx: &FieldCtx, t: u32) -> Result<IntersectionTensor, SchemeError> {
    let q = ctx.q();
    if ctx.residue_class() != 3 {
        return Err(SchemeError::WrongResidueClass { expected: 3, q });
    }
    if t == 0 || !(q - 1).is_multiple_of(t) {
        return Err(SchemeError::NotADivisor { t, q });
    }
    let base = predicted_tensor(ctx);
    let cosets = fusion_cosets(ctx, t);
    let s = t as usize + 1;
    let mut out = IntersectionTensor::zeros(s);
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                out.values[i][j][k] = fusion_v_values_with(ctx, &base, &cosets, t, i, j, k)[0];
            }
        }
    }
    Ok(out.finish())
}
