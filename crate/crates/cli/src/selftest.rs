//! A bounded run of the library's invariants.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use extconv::algebra::Algebra;
use extconv::bondal_thomsen::{is_bondal_ruan_type, stratify, theta_exact, theta_sampled, transparency_check};
use extconv::invariants::{
    class_is_multiplicative, is_idempotent_diagonal, k0_multiplication_table, pic_group_order_fp,
    rescale_monoid_hom, verify_balmer_hypotheses,
};
use extconv::linalg::{Field, Matrix, Scalar};
use extconv::quiver::{quiver_tensor, tensor_associator, tensor_braiding, unit_rep, QuiverRep, WeightQuiver};
use extconv::sheaves::{
    cech_cohomology, ec_product, fm_oracle_p1, projective_quiver, LineBundleComplex, SheafExpr, Space,
};
use extconv::toric::{cox_grading, line_bundle_cohomology, Fan};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::{fan_presets, seeded_points, Report};

type Check = fn(u64) -> extconv::Result<bool>;

fn theta_of_projective_spaces(_: u64) -> extconv::Result<bool> {
    for n in 1..=3 {
        let t = theta_exact(&cox_grading(&Fan::projective_space(n))?);
        let expected: Vec<Vec<i64>> = (-(n as i64)..=0).rev().map(|k| vec![k]).collect();
        if t.sorted_desc() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn theta_matches_sampling(_: u64) -> extconv::Result<bool> {
    for (_, fan) in fan_presets() {
        let g = cox_grading(&fan)?;
        if theta_exact(&g).weights != theta_sampled(&g, 60) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bondal_ruan_verdicts(_: u64) -> extconv::Result<bool> {
    for (name, fan) in fan_presets() {
        if is_bondal_ruan_type(&fan)?.bondal_ruan_type != (name != "f2") {
            return Ok(false);
        }
    }
    Ok(true)
}

fn p1_gap_has_witness(_: u64) -> extconv::Result<bool> {
    let r = transparency_check(&Fan::projective_space(1), &[vec![0], vec![2]])?;
    Ok(!r.strong_exceptional && r.ext_witnesses.iter().any(|w| w.degree == 1 && w.dim == 1))
}

fn tensor_laws(seed: u64) -> extconv::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f5 = Field::prime(5)?;
    for field in [Field::Rational, f5] {
        let quivers = [
            projective_quiver(2, &[0, 1, 2], field)?,
            Arc::new(WeightQuiver::algebra(&Algebra::product_algebra(field, 3), 3)?),
            Arc::new(WeightQuiver::algebra(&Algebra::truncated_poly(field, 3), 3)?),
        ];
        for quiver in quivers {
            let unit = unit_rep(quiver.clone());
            for _ in 0..2 {
                let u = QuiverRep::random(quiver.clone(), &mut rng, 3)?;
                let v = QuiverRep::random(quiver.clone(), &mut rng, 3)?;
                let w = QuiverRep::random(quiver.clone(), &mut rng, 3)?;
                if tensor_associator(&u, &v, &w).is_err() {
                    return Ok(false);
                }
                if quiver_tensor(&unit, &u)? != u || quiver_tensor(&u, &unit)? != u {
                    return Ok(false);
                }
                if tensor_braiding(&u, &v).is_err() {
                    return Ok(false);
                }
                if quiver_tensor(&u, &v)?.check_relations().is_err() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn simples_and_k0(seed: u64) -> extconv::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=5 {
        let quiver = Arc::new(WeightQuiver::algebra(&Algebra::product_algebra(Field::Rational, d), d)?);
        if !verify_balmer_hypotheses(&quiver)?.all() {
            return Ok(false);
        }
        if !is_idempotent_diagonal(&k0_multiplication_table(&quiver)?) {
            return Ok(false);
        }
        let v = QuiverRep::random(quiver.clone(), &mut rng, 2)?;
        let w = QuiverRep::random(quiver, &mut rng, 2)?;
        if !class_is_multiplicative(&v, &w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cech_matches_closed_form(_: u64) -> extconv::Result<bool> {
    for n in 1..=2 {
        let fan = Fan::projective_space(n);
        let c = LineBundleComplex::line_bundle(Field::Rational, vec![n], vec![0]);
        for a in -4..=4 {
            let mut divisor = vec![0; n + 1];
            divisor[n] = a;
            let closed = line_bundle_cohomology(&fan, &divisor)?;
            let cech = cech_cohomology(&c, &[a])?;
            let expected: BTreeMap<i64, usize> =
                closed.iter().enumerate().filter(|(_, &d)| d > 0).map(|(p, &d)| (p as i64, d)).collect();
            if cech != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn zero_times_infinity(_: u64) -> extconv::Result<bool> {
    let q = Field::Rational;
    let zero = SheafExpr::parse("sky[1,0]", q)?;
    let infinity = SheafExpr::parse("sky[0,1]", q)?;
    let on_p1 = ec_product(&Space::Projective { n: 1, field: q }, &zero, &infinity)?.to_string();
    let on_k2 = ec_product(&Space::Algebra(Algebra::product_algebra(q, 2)), &zero, &infinity)?.to_string();
    Ok(on_p1 == "O + O(-1)[1]" && on_k2 == "O + O(-1)[1]")
}

fn skyscraper_law(seed: u64) -> extconv::Result<bool> {
    let q = Field::Rational;
    for a in [Algebra::product_algebra(q, 3), Algebra::truncated_poly(q, 2), Algebra::matrix_algebra(q, 2)] {
        let space = Space::Algebra(a.clone());
        let points = seeded_points(&a, seed, 3);
        for x in &points {
            for y in &points {
                let p = ec_product(&space, &SheafExpr::skyscraper(x)?, &SheafExpr::skyscraper(y)?)?;
                let product = a.multiply(x, y)?;
                let expected = match extconv::sheaves::normalize_point(&product) {
                    Some(pt) => SheafExpr::Skyscraper(pt).to_string(),
                    None => {
                        let top = a.dim() - 1;
                        let mut names = vec!["O".to_string()];
                        names.extend((1..top).map(|i| format!("Omega^{i}({i})[{i}]")));
                        if top > 0 {
                            names.push(format!("O(-1)[{top}]"));
                        }
                        names.join(" + ")
                    }
                };
                if p.to_string() != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn oracle_agreement(_: u64) -> extconv::Result<bool> {
    let q = Field::Rational;
    let space = Space::Projective { n: 1, field: q };
    let exprs = ["O(-1)", "O(0)", "O(1)", "sky[1,0]", "sky[1,1]"];
    for a in exprs {
        for b in exprs {
            let (ea, eb) = (SheafExpr::parse(a, q)?, SheafExpr::parse(b, q)?);
            if ec_product(&space, &ea, &eb)?.rep.cohomology_dims() != fm_oracle_p1(q, &ea, &eb)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn picard_orders(_: u64) -> extconv::Result<bool> {
    let (f3, f5) = (Field::prime(3)?, Field::prime(5)?);
    let k2 = pic_group_order_fp(&Algebra::product_algebra(f3, 2))?;
    let dual2 = pic_group_order_fp(&Algebra::truncated_poly(f3, 2))?;
    let dual3 = pic_group_order_fp(&Algebra::truncated_poly(f5, 3))?;
    let msq = pic_group_order_fp(&Algebra::monomial_square(f5))?;
    Ok(k2 == 2u32.into() && dual2 == 3u32.into() && dual3 == msq)
}

fn rescaling(_: u64) -> extconv::Result<bool> {
    let q = Field::Rational;
    let a = Algebra::product_algebra(q, 2);
    let identity = rescale_monoid_hom(&a, &a, &Matrix::identity(q, 2))?;
    let two = Matrix::identity(q, 2).scale(&Scalar::from_i64(q, 2));
    let half = rescale_monoid_hom(&a, &a, &two)?;
    Ok(identity.is_one() && half == Scalar::from_ratio(q, 1, 2)?)
}

fn stratifications(_: u64) -> extconv::Result<bool> {
    for fan in [Fan::projective_space(1), Fan::projective_space(2), Fan::p1xp1()] {
        let s = stratify(&cox_grading(&fan)?)?;
        if !s.orders_reverse_equivalent() || s.total_volume() != extconv::bondal_thomsen::cells::q(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

const CHECKS: [(&str, Check); 14] = [
    ("theta of projective spaces", theta_of_projective_spaces),
    ("theta agrees with sampling", theta_matches_sampling),
    ("Bondal-Ruan verdicts on presets", bondal_ruan_verdicts),
    ("P1 gap collection has an Ext witness", p1_gap_has_witness),
    ("tensor associativity, unit and symmetry", tensor_laws),
    ("simples, K0 and Balmer hypotheses", simples_and_k0),
    ("Cech cohomology matches closed form", cech_matches_closed_form),
    ("zero times infinity on P1", zero_times_infinity),
    ("skyscraper products", skyscraper_law),
    ("geometric oracle agreement", oracle_agreement),
    ("Picard orders", picard_orders),
    ("rescaling", rescaling),
    ("stratification orders and volumes", stratifications),
    ("unit representation is idempotent", unit_idempotent),
];

fn unit_idempotent(_: u64) -> extconv::Result<bool> {
    let quiver = projective_quiver(1, &[0, 1], Field::Rational)?;
    let u = unit_rep(quiver);
    Ok(quiver_tensor(&u, &u)? == u)
}

/// Runs every check; the flag is false if any check does not hold.
pub fn run(seed: u64) -> (Report, bool) {
    let mut text = String::new();
    let mut results = Vec::new();
    let mut failed = 0;
    for (name, check) in CHECKS {
        let (ok, detail) = match check(seed) {
            Ok(b) => (b, None),
            Err(e) => (false, Some(e.to_string())),
        };
        if !ok {
            failed += 1;
        }
        let _ = match &detail {
            Some(d) => writeln!(text, "FAIL {name}: {d}"),
            None => writeln!(text, "{} {name}", if ok { "ok" } else { "FAIL" }),
        };
        results.push(json!({ "name": name, "passed": ok, "error": detail }));
    }
    let _ = write!(text, "{} of {} checks passed", CHECKS.len() - failed, CHECKS.len());
    let json = json!({ "checks": results, "passed": failed == 0 });
    (Report { text, json, svg: None }, failed == 0)
}
