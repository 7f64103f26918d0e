use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use quadrance_core::field::{build_field, build_field_of_order, FieldCtx, FieldDescription};
use quadrance_core::geometry::{
    build_polygon, circle_points, count_admissible_k, discriminant, intersect_circles, quadrance,
    quadrangle_feasibility_table, CircleClass, CircleSpec, Point, DEFAULT_TABLE_MAX_ORDER,
};
use quadrance_core::graph::{
    build_graph, conjecture_check, line_summary, max_clique, srg_params, subset_trials, GraphError,
    SrgParams, DEFAULT_CLIQUE_MAX_ORDER,
};
use quadrance_core::scheme::{
    build_quadrance_scheme, fuse_scheme, predicted_notes, verify_scheme_with, IntersectionTensor,
    VerifyOptions,
};
use quadrance_core::{Elem, Error};

use crate::args::{Command, Format, GraphCommand, SchemeArgs, SchemeCommand};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Input(_) => 2,
            CliError::Usage(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| CliError::Domain(e.into()))
    };
}

/// What a command produced, before it is wrapped into a report.
pub struct Outcome {
    pub field: FieldDescription,
    pub result: Value,
    pub notes: Vec<String>,
    /// False for a verified-false result.
    pub passed: bool,
    pub tsv: Option<String>,
}

impl Outcome {
    fn new(ctx: &FieldCtx, result: impl Serialize, passed: bool) -> Self {
        Outcome {
            field: ctx.describe(),
            result: serde_json::to_value(result).expect("results serialize"),
            notes: Vec::new(),
            passed,
            tsv: None,
        }
    }

    fn notes<I: IntoIterator<Item = S>, S: Into<String>>(mut self, notes: I) -> Self {
        self.notes.extend(notes.into_iter().map(Into::into));
        self
    }
}

const DISCRIMINANT_NOTE: &str = "intersection discriminant uses the symmetric form \
     4f = 2ij + 2jk + 2ki - i^2 - j^2 - k^2";

fn field(q: u32) -> Result<FieldCtx, CliError> {
    domain!(build_field_of_order(q))
}

/// A prime-field element is any integer taken mod p; an extension-field
/// element is its index `0 <= n < q`.
fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<Elem, CliError> {
    let s = s.trim();
    if ctx.spec().is_prime_field() {
        let n: i64 = s
            .parse()
            .map_err(|_| CliError::Input(format!("not an integer: {s:?}")))?;
        Ok(ctx.from_int(n))
    } else {
        let n: u64 = s
            .parse()
            .map_err(|_| CliError::Input(format!("not an element index: {s:?}")))?;
        domain!(ctx.elem(n))
    }
}

fn parse_point(ctx: &FieldCtx, s: &str) -> Result<Point, CliError> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [x, y] => Ok(Point {
            x: parse_elem(ctx, x)?,
            y: parse_elem(ctx, y)?,
        }),
        _ => Err(CliError::Input(format!("expected X,Y, got {s:?}"))),
    }
}

fn parse_list(ctx: &FieldCtx, s: &str) -> Result<Vec<Elem>, CliError> {
    s.split(',').map(|a| parse_elem(ctx, a)).collect()
}

pub fn execute(cmd: &Command, format: Format, allow_large: bool) -> Result<Outcome, CliError> {
    let tsv_ok = matches!(
        cmd,
        Command::QuadrangleTable { .. } | Command::Scheme(SchemeCommand::Tensor(_))
    );
    if format == Format::Tsv && !tsv_ok {
        return Err(CliError::Usage(
            "tsv output is only available for `scheme tensor` and `quadrangle-table`".into(),
        ));
    }
    match cmd {
        Command::Field { p, e } => {
            let ctx = domain!(build_field(*p, *e))?;
            let pairs = ctx.char_pair_counts();
            let passed = pairs.matches;
            let mut out = Outcome::new(&ctx, json!({ "char_pairs": pairs }), passed);
            if ctx.residue_class() == 1 {
                out = out.notes(["for q = 1 (mod 4) the (1,1) count is (q-5)/4"]);
            }
            Ok(out)
        }
        Command::Circle { q, center, class } => {
            let ctx = field(*q)?;
            let center = parse_point(&ctx, center)?;
            let class = if class.trim().eq_ignore_ascii_case("null") {
                CircleClass::Null
            } else {
                CircleClass::Value(parse_elem(&ctx, class)?)
            };
            let pts = domain!(circle_points(&ctx, CircleSpec { center, class }))?;
            let result = json!({
                "center": center,
                "class": class,
                "size": pts.len(),
                "points": pts,
            });
            Ok(Outcome::new(&ctx, result, true))
        }
        Command::Intersect { q, x1, x2, i, j } => {
            let ctx = field(*q)?;
            let (x, y) = (parse_point(&ctx, x1)?, parse_point(&ctx, x2)?);
            let (i, j) = (parse_elem(&ctx, i)?, parse_elem(&ctx, j)?);
            let pts = domain!(intersect_circles(&ctx, x, i, y, j))?;
            let k = quadrance(&ctx, x, y);
            let disc = (!k.is_zero()).then(|| discriminant(&ctx, i, j, k));
            let passed = disc.is_none_or(|d| d.status.intersections() as usize == pts.len());
            let result = json!({
                "x1": x, "x2": y, "i": i, "j": j, "k": k,
                "discriminant": disc,
                "count": pts.len(),
                "points": pts,
            });
            Ok(Outcome::new(&ctx, result, passed).notes([DISCRIMINANT_NOTE]))
        }
        Command::Polygon { q, quadrances } => {
            let ctx = field(*q)?;
            let a = parse_list(&ctx, quadrances)?;
            let r = domain!(build_polygon(&ctx, &a))?;
            let passed = r.feasible;
            Ok(Outcome::new(&ctx, r, passed).notes([DISCRIMINANT_NOTE]))
        }
        Command::Admissible { q, i, j } => {
            let ctx = field(*q)?;
            let (i, j) = (parse_elem(&ctx, i)?, parse_elem(&ctx, j)?);
            let r = domain!(count_admissible_k(&ctx, i, j))?;
            let passed = r.matches();
            let mut out = Outcome::new(&ctx, r, passed).notes([DISCRIMINANT_NOTE]);
            if ctx.residue_class() == 1 {
                out = out.notes(["no exact count is known for q = 1 (mod 4); only the lower bound (q-1)/2 is checked"]);
            }
            Ok(out)
        }
        Command::Scheme(SchemeCommand::Verify(args)) => scheme(args, false, allow_large),
        Command::Scheme(SchemeCommand::Tensor(args)) => scheme(args, true, allow_large),
        Command::Graph(GraphCommand::Srg { q }) => {
            let ctx = field(*q)?;
            let g = domain!(build_graph(&ctx))?;
            let predicted = SrgParams::predicted(*q);
            match srg_params(&g) {
                Ok(p) => {
                    let passed = p == predicted && p.identity_holds();
                    let result = json!({
                        "srg": p,
                        "predicted": predicted,
                        "identity_holds": p.identity_holds(),
                    });
                    Ok(Outcome::new(&ctx, result, passed)
                        .notes(["same parameters as the Paley graph of order q^2"]))
                }
                Err(e @ (GraphError::NotStronglyRegular { .. } | GraphError::Irregular { .. })) => {
                    let result =
                        json!({ "srg": null, "predicted": predicted, "failure": e.to_string() });
                    Ok(Outcome::new(&ctx, result, false))
                }
                Err(e) => Err(CliError::Domain(e.into())),
            }
        }
        Command::Graph(GraphCommand::Subsets { q, trials, seed }) => {
            let ctx = field(*q)?;
            let g = domain!(build_graph(&ctx))?;
            let t = domain!(subset_trials(&g, *trials, *seed))?;
            let lines = domain!(line_summary(&ctx, &g))?;
            let passed = t.all_hold && lines.clique_lines_tight && lines.direction_rule_holds;
            let result = json!({ "subset_trials": t, "lines": lines });
            Ok(Outcome::new(&ctx, result, passed))
        }
        Command::Clique { q, enumerate } => {
            let ctx = field(*q)?;
            let g = domain!(build_graph(&ctx))?;
            let r = domain!(max_clique(&ctx, &g, *enumerate, clique_bound(allow_large)))?;
            let result = json!({
                "omega": r.cliques.omega,
                "max_cliques": r.cliques.witnesses,
                "witness_count": r.cliques.witness_count,
                "all_lines": r.cliques.all_lines,
                "enumerated": r.enumerated,
                "independent_counterpart": r.independent_counterpart,
            });
            Ok(Outcome::new(&ctx, result, true))
        }
        Command::Conjecture { q } => {
            let ctx = field(*q)?;
            let mut r = domain!(conjecture_check(&ctx, clique_bound(allow_large)))?;
            let notes = std::mem::take(&mut r.notes);
            let passed = r.conjecture_consistent;
            Ok(Outcome::new(&ctx, r, passed).notes(notes))
        }
        Command::QuadrangleTable { q } => {
            let ctx = field(*q)?;
            let bound = if allow_large {
                u32::MAX
            } else {
                DEFAULT_TABLE_MAX_ORDER
            };
            let t = domain!(quadrangle_feasibility_table(&ctx, bound))?;
            let mut tsv = String::from("a1\ta2\ta3\ta4\tfeasible\torbit\n");
            for row in &t.rows {
                let [a, b, c, d] = row.quadrances;
                tsv.push_str(&format!(
                    "{a}\t{b}\t{c}\t{d}\t{}\t{}\n",
                    row.feasible, row.orbit
                ));
            }
            let mut out = Outcome::new(&ctx, t, true).notes([
                "feasibility by direct vertex search; rows are classes under rotation and reversal",
            ]);
            out.tsv = Some(tsv);
            Ok(out)
        }
    }
}

fn clique_bound(allow_large: bool) -> u32 {
    if allow_large {
        u32::MAX
    } else {
        DEFAULT_CLIQUE_MAX_ORDER
    }
}

fn scheme(args: &SchemeArgs, tensor_only: bool, allow_large: bool) -> Result<Outcome, CliError> {
    let ctx = field(args.q)?;
    let base = build_quadrance_scheme(&ctx);
    let cm = match args.fuse {
        Some(t) => domain!(fuse_scheme(&ctx, &base, t))?,
        None => base,
    };
    let mut opts = VerifyOptions::default();
    if allow_large {
        opts.sampled_max_order = u32::MAX;
    }
    let mut r = domain!(verify_scheme_with(&ctx, &cm, opts))?;
    let passed = r.valid && r.row_sums_hold && r.predicted_match != Some(false);
    let mut notes = std::mem::take(&mut r.notes);
    if args.fuse.is_some() {
        notes.extend(predicted_notes(&ctx).iter().map(|s| s.to_string()));
    }
    let tsv = tensor_tsv(&r.tensor);
    let result = if tensor_only {
        json!({
            "classes": r.classes,
            "tensor": r.tensor,
            "valid": r.valid,
            "predicted_match": r.predicted_match,
        })
    } else {
        serde_json::to_value(&r).expect("report serializes")
    };
    let mut out = Outcome::new(&ctx, result, passed).notes(notes);
    out.tsv = Some(tsv);
    Ok(out)
}

fn tensor_tsv(t: &IntersectionTensor) -> String {
    let s = t.num_classes();
    let mut out = String::from("i\tj\tk\tp\n");
    for k in 0..s {
        for i in 0..s {
            for j in 0..s {
                out.push_str(&format!("{i}\t{j}\t{k}\t{}\n", t.get(i, j, k)));
            }
        }
    }
    out
}
