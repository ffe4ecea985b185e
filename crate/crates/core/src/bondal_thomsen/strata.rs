use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cells::{q, torus_pieces, Q};
use super::theta::floor_vector;
use crate::error::{Error, Result};
use crate::toric::{CoxGrading, WeightVector};

/// One piece of a stratum: an open face of the arrangement on the torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub floor: Vec<i64>,
    #[serde(serialize_with = "ser_rationals")]
    pub sample: Vec<Q>,
    pub dim: usize,
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<Vec<Q>>,
    #[serde(serialize_with = "ser_rational")]
    pub volume: Q,
}

fn ser_rational<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rationals<S: serde::Serializer>(x: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(ToString::to_string))
}

fn ser_points<S: serde::Serializer>(x: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

pub type Relation = BTreeSet<(WeightVector, WeightVector)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub lattice_rank: usize,
    pub strata: BTreeMap<WeightVector, Vec<Chamber>>,
    /// `(a, b)` whenever `H^0(O(b - a)) ≠ 0`.
    pub order_h0: Relation,
    /// `(a, b)` whenever a piece of stratum `a` lies in the closure of a piece of stratum `b`.
    pub order_closure: Relation,
}

pub fn transitive_closure(r: &Relation) -> Relation {
    let mut out = r.clone();
    loop {
        let mut added = Vec::new();
        for (a, b) in &out {
            for (c, d) in out.range((b.clone(), Vec::new())..) {
                if c != b {
                    break;
                }
                if !out.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        out.extend(added);
    }
}

pub fn reverse(r: &Relation) -> Relation {
    r.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

/// Reflexive, antisymmetric and transitive on `elements`.
pub fn is_partial_order(r: &Relation, elements: &BTreeSet<WeightVector>) -> bool {
    let reflexive = elements.iter().all(|x| r.contains(&(x.clone(), x.clone())));
    let antisymmetric = r.iter().all(|(a, b)| a == b || !r.contains(&(b.clone(), a.clone())));
    reflexive && antisymmetric && transitive_closure(r) == *r
}

impl Stratification {
    pub fn labels(&self) -> BTreeSet<WeightVector> {
        self.strata.keys().cloned().collect()
    }

    pub fn total_volume(&self) -> Q {
        self.strata
            .values()
            .flatten()
            .fold(Q::zero(), |acc, c| acc + &c.volume)
    }

    /// The two orders agree up to orientation after transitive closure.
    pub fn orders_reverse_equivalent(&self) -> bool {
        transitive_closure(&self.order_h0) == reverse(&transitive_closure(&self.order_closure))
    }
}

pub fn stratify(g: &CoxGrading) -> Result<Stratification> {
    let dim = g.lattice_rank();
    if dim > 3 {
        return Err(Error::Unsupported(format!("chamber geometry needs rank M ≤ 3, got {dim}")));
    }
    let pieces = torus_pieces(g.kernel_basis(), dim);
    let mut labels: BTreeMap<Vec<Vec<Q>>, WeightVector> = BTreeMap::new();
    let mut strata: BTreeMap<WeightVector, Vec<Chamber>> = BTreeMap::new();
    for (key, (piece, _)) in &pieces {
        let floor = floor_vector(g, &piece.barycenter);
        let label = g.degree(&floor);
        labels.insert(key.clone(), label.clone());
        strata.entry(label).or_default().push(Chamber {
            floor,
            sample: piece.barycenter.clone(),
            dim: piece.dim,
            vertices: piece.vertices.clone(),
            volume: piece.volume.clone(),
        });
    }

    // a ≤ b when some piece of stratum a is a face of some piece of stratum b.
    let mut order_closure = Relation::new();
    for (key, (_, faces)) in &pieces {
        let b = &labels[key];
        for face in faces {
            order_closure.insert((labels[face].clone(), b.clone()));
        }
    }

    let mut order_h0 = Relation::new();
    for a in strata.keys() {
        for b in strata.keys() {
            let diff: WeightVector = b.iter().zip(a).map(|(x, y)| x - y).collect();
            if g.h0(&diff)? > 0 {
                order_h0.insert((a.clone(), b.clone()));
            }
        }
    }
    Ok(Stratification { lattice_rank: dim, strata, order_h0, order_closure })
}

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];

const SIZE: i64 = 400;
const MARGIN: i64 = 20;

/// Exact pixel coordinate, printed with three decimals.
fn px(x: &Q, flip: bool) -> String {
    let v = if flip { Q::one() - x } else { x.clone() };
    let scaled = v * q(SIZE * 1000) + q(MARGIN * 1000);
    let n: BigInt = scaled.round().to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let a = n.abs();
    let thousand = BigInt::from(1000);
    format!("{sign}{}.{:03}", &a / &thousand, (&a % &thousand).to_string().parse::<u32>().expect("digits"))
}

fn point(p: &[Q]) -> String {
    format!("{},{}", px(&p[0], false), px(&p[1], true))
}

/// Sorts polygon vertices counterclockwise around their barycenter, exactly.
fn order_polygon(vertices: &[Vec<Q>], center: &[Q]) -> Vec<Vec<Q>> {
    let half = |v: &Vec<Q>| {
        let (dx, dy) = (&v[0] - &center[0], &v[1] - &center[1]);
        dy.is_negative() || (dy.is_zero() && dx.is_negative())
    };
    let mut out = vertices.to_vec();
    out.sort_by(|a, b| {
        let (ha, hb) = (half(a), half(b));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let (ax, ay) = (&a[0] - &center[0], &a[1] - &center[1]);
        let (bx, by) = (&b[0] - &center[0], &b[1] - &center[1]);
        let cross = ax * &by - ay * &bx;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    out
}

/// SVG drawing of the fundamental square, one color per stratum.
pub fn emit_strata_svg(s: &Stratification) -> Result<String> {
    if s.lattice_rank != 2 {
        return Err(Error::Unsupported(format!("SVG output needs rank M = 2, got {}", s.lattice_rank)));
    }
    let legend_h = 20 * s.strata.len() as i64;
    let width = SIZE + 2 * MARGIN + 160;
    let height = (SIZE + 2 * MARGIN).max(legend_h + 2 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#000" stroke-width="1"/>"##
    );
    for dim in [2usize, 1, 0] {
        for (i, (label, chambers)) in s.strata.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let name = format_weight(label);
            for c in chambers.iter().filter(|c| c.dim == dim) {
                match dim {
                    2 => {
                        let pts: Vec<String> = order_polygon(&c.vertices, &c.sample).iter().map(|p| point(p)).collect();
                        let _ = writeln!(
                            out,
                            r#"<polygon points="{}" fill="{color}" stroke="{color}" data-stratum="{name}"/>"#,
                            pts.join(" ")
                        );
                    }
                    1 => {
                        let (a, b) = (&c.vertices[0], &c.vertices[c.vertices.len() - 1]);
                        let _ = writeln!(
                            out,
                            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="4" data-stratum="{name}"/>"#,
                            px(&a[0], false),
                            px(&a[1], true),
                            px(&b[0], false),
                            px(&b[1], true)
                        );
                    }
                    _ => {
                        let p = &c.vertices[0];
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{}" cy="{}" r="6" fill="{color}" data-stratum="{name}"/>"#,
                            px(&p[0], false),
                            px(&p[1], true)
                        );
                    }
                }
            }
        }
    }
    for (i, label) in s.strata.keys().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN + 20 * i as i64;
        let x = SIZE + 2 * MARGIN;
        let _ = writeln!(out, r#"<rect class="legend" x="{x}" y="{y}" width="14" height="14" fill="{color}"/>"#);
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">{}</text>"#, x + 20, y + 12, format_weight(label));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn format_weight(w: &[i64]) -> String {
    if w.len() == 1 {
        return w[0].to_string();
    }
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{cox_grading, Fan};

    fn strat(f: Fan) -> Stratification {
        stratify(&cox_grading(&f).unwrap()).unwrap()
    }

    #[test]
    fn p1_has_point_and_interval() {
        let s = strat(Fan::projective_space(1));
        assert_eq!(s.strata.len(), 2);
        let dims: BTreeSet<usize> = s.strata.values().flatten().map(|c| c.dim).collect();
        assert_eq!(dims, BTreeSet::from([0, 1]));
        let strict: Vec<_> = s.order_h0.iter().filter(|(a, b)| a != b).collect();
        assert_eq!(strict, vec![&(vec![-1], vec![0])]);
        assert!(s.orders_reverse_equivalent());
    }

    #[test]
    fn p2_total_order_and_volume() {
        let s = strat(Fan::projective_space(2));
        assert_eq!(s.strata.len(), 3);
        for a in s.strata.keys() {
            for b in s.strata.keys() {
                assert!(s.order_h0.contains(&(a.clone(), b.clone())) || s.order_h0.contains(&(b.clone(), a.clone())));
            }
        }
        assert_eq!(s.total_volume(), Q::one());
        assert!(is_partial_order(&s.order_h0, &s.labels()));
    }

    #[test]
    fn floor_labels_match() {
        let g = cox_grading(&Fan::hirzebruch(2)).unwrap();
        let s = stratify(&g).unwrap();
        for (label, chambers) in &s.strata {
            for c in chambers {
                assert_eq!(&g.degree(&c.floor), label);
            }
        }
    }

    #[test]
    fn svg_colors_per_stratum() {
        let svg = emit_strata_svg(&strat(Fan::p1xp1())).unwrap();
        assert_eq!(svg.matches(r#"class="legend""#).count(), 4);
        assert!(emit_strata_svg(&strat(Fan::projective_space(1))).is_err());
    }

    #[test]
    fn single_stratum_svg() {
        let mut s = strat(Fan::projective_space(2));
        let keep = s.strata.keys().next().unwrap().clone();
        s.strata.retain(|k, _| *k == keep);
        let svg = emit_strata_svg(&s).unwrap();
        assert_eq!(svg.matches(r#"class="legend""#).count(), 1);
    }
}
