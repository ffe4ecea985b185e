//! One function per subcommand. Each returns the text and JSON renderings of its result.

use std::fmt::Write;
use std::sync::Arc;

use extconv::algebra::Algebra;
use extconv::bondal_thomsen::{
    emit_strata_svg, format_weight, is_bondal_ruan_type, stratify, theta_exact, transparency_check, Stratification,
    TransparencyReport,
};
use extconv::invariants::{
    balmer_primes, is_idempotent_diagonal, k0_multiplication_table, pic_group_order_fp, projective_points,
    rescale_monoid_hom, skyscraper_table, skyscraper_table_direct, unit_count_fp, verify_balmer_hypotheses,
    ENUMERATION_LIMIT,
};
use extconv::linalg::{Field, Scalar};
use extconv::quiver::WeightQuiver;
use extconv::sheaves::{ec_product, normalize_point, SheafExpr};
use extconv::toric::{cox_grading, line_bundle_cohomology, Fan};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::inputs::{load_algebra, load_fan, load_fan_or_algebra, load_matrix, load_space, FanOrAlgebra};
use crate::tuples::{parse_tuple, parse_tuple_list};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub svg: Option<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report { text, json, svg: None }
    }
}

fn set(weights: &[Vec<i64>]) -> String {
    format!("{{{}}}", weights.iter().map(|w| format_weight(w)).collect::<Vec<_>>().join(", "))
}

fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn point(v: &[Scalar]) -> String {
    format!("[{}]", scalars(v).join(":"))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn theta(fan: &str) -> Result<Report, Failure> {
    let g = cox_grading(&load_fan(fan)?)?;
    let weights = theta_exact(&g).sorted_desc();
    Ok(Report::new(set(&weights), json!({ "weights": weights, "count": weights.len() })))
}

fn transparency_lines(out: &mut String, r: &TransparencyReport, indent: &str) {
    let _ = writeln!(out, "{indent}strong exceptional: {}", flag(r.strong_exceptional));
    for w in &r.ext_witnesses {
        let _ = writeln!(
            out,
            "{indent}  H^{}(O({} - {})) = {}",
            w.degree,
            format_weight(&w.to),
            format_weight(&w.from),
            w.dim
        );
    }
    let _ = writeln!(out, "{indent}hom equality: {}", flag(r.hom_equality));
    for m in &r.hom_mismatches {
        let _ = writeln!(
            out,
            "{indent}  H^0(O({} - {})) = {}, monomials = {}",
            format_weight(&m.to),
            format_weight(&m.from),
            m.h0,
            m.monomials
        );
    }
    let _ = writeln!(out, "{indent}cardinality: {} (expected {})", r.cardinality, r.expected_cardinality);
    let _ = write!(out, "{indent}transparent up to fullness: {}", flag(r.transparent_up_to_fullness));
}

pub fn check_br(fan: &str) -> Result<Report, Failure> {
    let r = is_bondal_ruan_type(&load_fan(fan)?)?;
    let mut text = format!("{}\ntheta: {}\ntheta collection:\n", flag(r.bondal_ruan_type), set(&r.theta.sorted_desc()));
    transparency_lines(&mut text, &r.direct, "  ");
    text.push_str("\nnegated collection:\n");
    transparency_lines(&mut text, &r.negated, "  ");
    let json = serde_json::to_value(&r).map_err(|e| Failure::computation(e.to_string()))?;
    Ok(Report::new(text, json))
}

pub fn transparency(fan: &str, weights: &str) -> Result<Report, Failure> {
    let fan = load_fan(fan)?;
    let weights = parse_tuple_list(weights, "weights")?;
    let r = transparency_check(&fan, &weights)?;
    let mut text = String::new();
    transparency_lines(&mut text, &r, "");
    let json = serde_json::to_value(&r).map_err(|e| Failure::computation(e.to_string()))?;
    Ok(Report::new(text, json))
}

pub fn cohomology(fan: &str, divisor: &str) -> Result<Report, Failure> {
    let fan = load_fan(fan)?;
    let a = parse_tuple(divisor, "divisor")?;
    if a.len() != fan.n_rays() {
        return Err(Failure::validation(format!("divisor: expected {} entries, got {}", fan.n_rays(), a.len())));
    }
    let g = cox_grading(&fan)?;
    let class = g.degree(&a);
    let h = line_bundle_cohomology(&fan, &a)?;
    let mut text = format!("class: {}\n", format_weight(&class));
    let lines: Vec<String> = h.iter().enumerate().map(|(p, d)| format!("H^{p} = {d}")).collect();
    text.push_str(&lines.join("\n"));
    Ok(Report::new(text, json!({ "divisor": a, "class": class, "dims": h })))
}

fn stratification_json(s: &Stratification) -> Value {
    let strata: Vec<Value> = s
        .strata
        .iter()
        .map(|(label, chambers)| {
            let volume = chambers.iter().fold(num_zero(), |acc, c| acc + &c.volume);
            json!({
                "label": label,
                "volume": volume.to_string(),
                "pieces": chambers,
            })
        })
        .collect();
    let pairs = |r: &std::collections::BTreeSet<(Vec<i64>, Vec<i64>)>| -> Vec<Value> {
        r.iter().map(|(a, b)| json!([a, b])).collect()
    };
    json!({
        "lattice_rank": s.lattice_rank,
        "strata": strata,
        "total_volume": s.total_volume().to_string(),
        "order_h0": pairs(&s.order_h0),
        "order_closure": pairs(&s.order_closure),
        "orders_reverse_equivalent": s.orders_reverse_equivalent(),
    })
}

fn num_zero() -> extconv::bondal_thomsen::cells::Q {
    extconv::bondal_thomsen::cells::q(0)
}

pub fn stratify_cmd(fan: &str, svg_path: Option<&str>, want_svg: bool) -> Result<Report, Failure> {
    let g = cox_grading(&load_fan(fan)?)?;
    let s = stratify(&g)?;
    let mut text = String::new();
    for (label, chambers) in &s.strata {
        let volume = chambers.iter().fold(num_zero(), |acc, c| acc + &c.volume);
        let dims: Vec<String> = chambers.iter().map(|c| c.dim.to_string()).collect();
        let _ = writeln!(
            text,
            "{}: {} pieces (dims {}), volume {}",
            format_weight(label),
            chambers.len(),
            dims.join(","),
            volume
        );
    }
    let _ = writeln!(text, "total volume: {}", s.total_volume());
    let _ = write!(text, "orders reverse-equivalent: {}", flag(s.orders_reverse_equivalent()));
    let svg = if svg_path.is_some() || want_svg { Some(emit_strata_svg(&s)?) } else { None };
    if let (Some(path), Some(doc)) = (svg_path, &svg) {
        std::fs::write(path, doc).map_err(|e| Failure::validation(format!("{path}: {e}")))?;
    }
    Ok(Report { text, json: stratification_json(&s), svg })
}

fn hom_table(q: &WeightQuiver) -> Vec<Vec<usize>> {
    (0..q.n_vertices()).map(|i| (0..q.n_vertices()).map(|j| q.hom_dim(i, j)).collect()).collect()
}

pub fn quiver(input: &str, weights: &str, field: Field) -> Result<Report, Failure> {
    let weights = parse_tuple_list(weights, "weights")?;
    let q = match load_fan_or_algebra(input, field)? {
        FanOrAlgebra::Fan(fan) => WeightQuiver::toric(&cox_grading(&fan)?, &weights, field)?,
        FanOrAlgebra::Algebra(a) => {
            if weights[0].len() != 1 {
                return Err(Failure::validation("weights: algebra quivers take integer vertices"));
            }
            let mut keep = Vec::new();
            for w in &weights {
                keep.push(usize::try_from(w[0]).map_err(|_| Failure::validation("weights: vertices are nonnegative"))?);
            }
            let depth = keep.iter().max().map_or(1, |m| m + 1);
            WeightQuiver::algebra(&a, depth)?.restrict(&keep)?
        }
    };
    let table = hom_table(&q);
    let coalgebra = q.check_coalgebra().is_ok();
    let associative = q.check_associative().is_ok();
    let arrows = q.arrows().len();
    let mut text = format!(
        "vertices: {}\ngenerators: {}\narrows: {}\n",
        set(q.vertices()),
        q.n_generators(),
        arrows
    );
    text.push_str("hom dimensions:\n");
    for row in &table {
        let _ = writeln!(text, "  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    let _ = write!(
        text,
        "coalgebra: {}\nassociative: {}\ncocommutative: {}",
        flag(coalgebra),
        flag(associative),
        flag(q.is_cocommutative())
    );
    let json = json!({
        "vertices": q.vertices(),
        "generators": q.n_generators(),
        "arrows": arrows,
        "hom_dimensions": table,
        "coalgebra": coalgebra,
        "associative": associative,
        "cocommutative": q.is_cocommutative(),
    });
    Ok(Report::new(text, json))
}

pub fn convolve(space: &str, e1: &str, e2: &str, field: Field) -> Result<Report, Failure> {
    let space = load_space(space, field)?;
    let field = space.field();
    let a = SheafExpr::parse(e1, field).map_err(|e| Failure::from(e).context("expr1"))?;
    let b = SheafExpr::parse(e2, field).map_err(|e| Failure::from(e).context("expr2"))?;
    let p = ec_product(&space, &a, &b)?;
    let name = p.recognition.name(p.top);
    let cohomology: Vec<Value> = p
        .rep
        .cohomology_dims()
        .iter()
        .map(|h| Value::Object(h.iter().map(|(d, n)| (d.to_string(), json!(n))).collect()))
        .collect();
    let json = json!({
        "left": a.to_string(),
        "right": b.to_string(),
        "result": name,
        "recognized": name.is_some(),
        "cohomology": cohomology,
        "euler": p.rep.euler_vector(),
    });
    Ok(Report::new(p.to_string(), json))
}

fn prime_power_fits(a: &Algebra) -> bool {
    a.field().order().is_some_and(|p| {
        (p as f64).powi(a.dim() as i32) <= ENUMERATION_LIMIT as f64
    })
}

pub fn invariants(algebra: &str, field: Field) -> Result<Report, Failure> {
    let a = load_algebra(algebra, field)?;
    let d = a.dim();
    let quiver = Arc::new(WeightQuiver::algebra(&a, d)?);
    let table = k0_multiplication_table(&quiver)?;
    let diagonal = is_idempotent_diagonal(&table);
    let primes = balmer_primes(d);
    let h = verify_balmer_hypotheses(&quiver)?;
    let mut text = format!(
        "algebra: dim {d} over {}, {}\n",
        a.field(),
        if a.is_commutative() { "commutative" } else { "noncommutative" }
    );
    text.push_str("K0 multiplication table:\n");
    for row in &table {
        let _ = writeln!(text, "  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    let _ = writeln!(text, "idempotent diagonal: {}", flag(diagonal));
    let _ = writeln!(text, "Balmer primes:");
    for p in &primes {
        let _ = writeln!(text, "  {p}");
    }
    let _ = write!(
        text,
        "hypotheses: generation {}, exceptional {}, idempotent {}, orthogonal {}",
        flag(h.generation),
        flag(h.exceptional),
        flag(h.idempotent),
        flag(h.orthogonal)
    );
    let mut pic = Value::Null;
    if prime_power_fits(&a) {
        let units = unit_count_fp(&a)?;
        let order = pic_group_order_fp(&a)?;
        let _ = write!(text, "\nunits: {units}\nPic torsion order: {order}");
        pic = json!({ "units": units, "order": order.to_string() });
    }
    let json = json!({
        "dim": d,
        "field": a.field().to_string(),
        "commutative": a.is_commutative(),
        "k0_table": table.iter().map(|r| r.iter().map(|c| c.coordinates.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "idempotent_diagonal": diagonal,
        "balmer_primes": primes.iter().map(|p| json!({ "index": p.index, "generators": p.generator_complement })).collect::<Vec<_>>(),
        "hypotheses": {
            "generation": h.generation,
            "exceptional": h.exceptional,
            "idempotent": h.idempotent,
            "orthogonal": h.orthogonal,
        },
        "pic": pic,
    });
    Ok(Report::new(text, json))
}

/// Five nonzero points drawn from the seed.
pub fn seeded_points(a: &Algebra, seed: u64, count: usize) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(p) = normalize_point(&a.random_element(&mut rng)) {
            out.push(p);
        }
    }
    out
}

pub fn sky_table(algebra: &str, all_points: bool, field: Field, seed: u64) -> Result<Report, Failure> {
    let a = load_algebra(algebra, field)?;
    let points = if all_points {
        if a.field().order().is_none() {
            return Err(Failure::validation("--all-points-fp: needs a prime field (--field fp:<p>)"));
        }
        projective_points(a.field(), a.dim())?
    } else {
        seeded_points(&a, seed, 5)
    };
    let table = skyscraper_table(&a, &points)?;
    let direct = skyscraper_table_direct(&a, &points)?;
    let matches = table == direct;
    let labels: Vec<String> = points.iter().map(|p| point(p)).collect();
    let cells: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = labels.iter().chain(cells.iter().flatten()).map(|s| s.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let mut text = format!("{} | {}\n", pad(""), labels.iter().map(|l| pad(l)).collect::<Vec<_>>().join(" "));
    for (label, row) in labels.iter().zip(&cells) {
        let _ = writeln!(text, "{} | {}", pad(label), row.iter().map(|c| pad(c)).collect::<Vec<_>>().join(" "));
    }
    let _ = write!(text, "matches multiplication: {}", flag(matches));
    let json = json!({ "points": labels, "table": cells, "matches_multiplication": matches });
    Ok(Report::new(text, json))
}

pub fn pic_count(algebra: &str, prime: u64) -> Result<Report, Failure> {
    let field = Field::prime(prime).map_err(|e| Failure::from(e).context("--prime"))?;
    let a = load_algebra(algebra, field)?;
    if a.field() != field {
        return Err(Failure::validation(format!("field: algebra is over {} but --prime gives {field}", a.field())));
    }
    let units = unit_count_fp(&a)?;
    let order = pic_group_order_fp(&a)?;
    let text = format!("units: {units}\norder: {order}");
    Ok(Report::new(text, json!({ "prime": prime, "dim": a.dim(), "units": units, "order": order.to_string() })))
}

pub fn rescale(from: &str, to: &str, matrix: &str, field: Field) -> Result<Report, Failure> {
    let a = load_algebra(from, field).map_err(|e| e.context("--from"))?;
    let b = load_algebra(to, field).map_err(|e| e.context("--to"))?;
    let phi = load_matrix(matrix, a.field())?;
    let c = rescale_monoid_hom(&a, &b, &phi)?;
    Ok(Report::new(format!("c = {c}"), json!({ "c": c.to_string() })))
}

pub fn fan_presets() -> Vec<(&'static str, Fan)> {
    Fan::PRESETS.iter().map(|&n| (n, Fan::preset(n).expect("preset"))).collect()
}
