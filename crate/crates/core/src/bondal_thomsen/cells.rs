//! Exact decomposition of the unit cube by the hyperplanes `⟨t, u⟩ ∈ Z`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{Field, Matrix, Scalar};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from(BigInt::from(n))
}

/// `a·t ≥ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Halfspace {
    a: Vec<Q>,
    b: Q,
}

impl Halfspace {
    fn slack(&self, t: &[Q]) -> Q {
        dot(&self.a, t) - &self.b
    }
}

pub fn dot(a: &[Q], t: &[Q]) -> Q {
    a.iter().zip(t).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(u: &[i64], t: &[Q]) -> Q {
    u.iter().zip(t).fold(Q::zero(), |acc, (&x, y)| acc + y * q(x))
}

/// Convex polytope kept in both representations.
#[derive(Clone, Debug)]
pub struct Cell {
    halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<Q>>,
}

fn solve(rows: &[&Halfspace], dim: usize) -> Option<Vec<Q>> {
    let field = Field::Rational;
    let m = Matrix::from_fn(field, rows.len(), dim, |i, j| {
        Scalar::from_bigrational(field, &rows[i].a[j]).expect("rational")
    });
    if m.rank() != dim {
        return None;
    }
    let rhs: Vec<Scalar> = rows.iter().map(|h| Scalar::from_bigrational(field, &h.b).expect("rational")).collect();
    let x = m.solve(&rhs)?;
    Some(x.iter().map(|s| s.as_rational().expect("rational").clone()).collect())
}

impl Cell {
    fn unit_cube(dim: usize) -> Cell {
        let mut halfspaces = Vec::new();
        for i in 0..dim {
            let e: Vec<Q> = (0..dim).map(|j| q(i64::from(i == j))).collect();
            halfspaces.push(Halfspace { a: e.clone(), b: q(0) });
            halfspaces.push(Halfspace { a: e.iter().map(|x| -x).collect(), b: q(-1) });
        }
        Cell::from_halfspaces(halfspaces, dim)
    }

    fn from_halfspaces(halfspaces: Vec<Halfspace>, dim: usize) -> Cell {
        let mut vertices: Vec<Vec<Q>> = Vec::new();
        for rows in halfspaces.iter().combinations(dim) {
            let Some(x) = solve(&rows, dim) else { continue };
            if halfspaces.iter().all(|h| !h.slack(&x).is_negative()) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
        vertices.sort();
        let halfspaces = halfspaces
            .into_iter()
            .filter(|h| vertices.iter().any(|v| h.slack(v).is_zero()))
            .collect();
        Cell { halfspaces, vertices }
    }

    /// Splits along `⟨t, u⟩ = k` if the hyperplane meets the interior.
    fn split(&self, u: &[Q], k: &Q, dim: usize) -> Vec<Cell> {
        let values: Vec<Q> = self.vertices.iter().map(|v| dot(u, v) - k).collect();
        if !(values.iter().any(Signed::is_positive) && values.iter().any(Signed::is_negative)) {
            return vec![self.clone()];
        }
        let up = Halfspace { a: u.to_vec(), b: k.clone() };
        let down = Halfspace { a: u.iter().map(|x| -x).collect(), b: -k };
        [up, down]
            .into_iter()
            .map(|h| {
                let mut hs = self.halfspaces.clone();
                hs.push(h);
                Cell::from_halfspaces(hs, dim)
            })
            .collect()
    }

    /// Vertex-index sets of all nonempty faces, including the cell itself.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
        family.insert(all.clone());
        let tight: Vec<Vec<usize>> = self
            .halfspaces
            .iter()
            .map(|h| all.iter().copied().filter(|&i| h.slack(&self.vertices[i]).is_zero()).collect())
            .collect();
        let mut frontier: Vec<Vec<usize>> = tight.iter().filter(|s| !s.is_empty()).cloned().collect();
        while let Some(s) = frontier.pop() {
            if !family.insert(s.clone()) {
                continue;
            }
            for t in &tight {
                let meet: Vec<usize> = s.iter().copied().filter(|i| t.contains(i)).collect();
                if !meet.is_empty() && !family.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        // Single vertices are faces of a polytope even if not cut out by listed constraints alone.
        for i in all {
            family.insert(vec![i]);
        }
        family.into_iter().collect()
    }
}

/// Cells of the cube `[0,1]^dim` cut by `⟨t, u_ρ⟩ = k` for every ray and integer `k`.
pub fn arrangement_cells(rays: &[Vec<i64>], dim: usize) -> Vec<Cell> {
    let mut cells = vec![Cell::unit_cube(dim)];
    for u in rays {
        let lo: i64 = u.iter().filter(|&&x| x < 0).sum();
        let hi: i64 = u.iter().filter(|&&x| x > 0).sum();
        let uq: Vec<Q> = u.iter().map(|&x| q(x)).collect();
        for k in lo + 1..hi {
            let kq = q(k);
            cells = cells.par_iter().flat_map_iter(|c| c.split(&uq, &kq, dim)).collect();
        }
    }
    cells
}

pub fn affine_dim(points: &[Vec<Q>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let dim = first.len();
    let field = Field::Rational;
    let rows: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_fn(field, rows.len(), dim, |i, j| Scalar::from_bigrational(field, &rows[i][j]).expect("rational")).rank()
}

pub fn barycenter(points: &[Vec<Q>]) -> Vec<Q> {
    let n = q(points.len() as i64);
    let dim = points[0].len();
    (0..dim)
        .map(|k| points.iter().fold(Q::zero(), |acc, p| acc + &p[k]) / &n)
        .collect()
}

fn det_q(rows: &[Vec<Q>]) -> Q {
    let field = Field::Rational;
    let n = rows.len();
    let m = Matrix::from_fn(field, n, n, |i, j| Scalar::from_bigrational(field, &rows[i][j]).expect("rational"));
    m.determinant().expect("square").as_rational().expect("rational").clone()
}

/// A face of the arrangement, translated so its barycenter lies in `[0,1)^dim`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Piece {
    pub vertices: Vec<Vec<Q>>,
    pub dim: usize,
    pub barycenter: Vec<Q>,
    /// Volume for full-dimensional pieces, zero otherwise.
    pub volume: Q,
}

/// All pieces of the torus decomposition, with the set of faces of each (including itself).
pub fn torus_pieces(rays: &[Vec<i64>], dim: usize) -> BTreeMap<Vec<Vec<Q>>, (Piece, BTreeSet<Vec<Vec<Q>>>)> {
    let cells = arrangement_cells(rays, dim);
    let per_cell: Vec<Vec<(Piece, BTreeSet<Vec<Vec<Q>>>)>> = cells.par_iter().map(|c| cell_pieces(c, dim)).collect();
    let mut out = BTreeMap::new();
    for list in per_cell {
        for (piece, faces) in list {
            out.entry(piece.vertices.clone()).or_insert((piece, faces));
        }
    }
    out
}

fn canonical(points: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<Q>) {
    let b = barycenter(points);
    let shift: Vec<Q> = b.iter().map(|x| x.floor()).collect();
    let mut pts: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.iter().zip(&shift).map(|(x, s)| x - s).collect())
        .collect();
    pts.sort();
    let b = b.iter().zip(&shift).map(|(x, s)| x - s).collect();
    (pts, b)
}

fn cell_pieces(cell: &Cell, dim: usize) -> Vec<(Piece, BTreeSet<Vec<Vec<Q>>>)> {
    let faces = cell.faces();
    let pts = |f: &Vec<usize>| -> Vec<Vec<Q>> { f.iter().map(|&i| cell.vertices[i].clone()).collect() };
    let dims: Vec<usize> = faces.iter().map(|f| affine_dim(&pts(f))).collect();
    let keys: Vec<Vec<Vec<Q>>> = faces.iter().map(|f| canonical(&pts(f)).0).collect();
    let mut out = Vec::with_capacity(faces.len());
    for (idx, f) in faces.iter().enumerate() {
        let (vertices, barycenter) = canonical(&pts(f));
        let sub: BTreeSet<Vec<Vec<Q>>> = faces
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().all(|i| f.contains(i)))
            .map(|(j, _)| keys[j].clone())
            .collect();
        let volume = if dims[idx] == dim && dim > 0 {
            let simplices = pulling_triangulation(&faces, &dims, idx);
            let fact: i64 = (1..=dim as i64).product();
            simplices
                .iter()
                .map(|s| {
                    let base = &cell.vertices[s[0]];
                    let rows: Vec<Vec<Q>> = s[1..]
                        .iter()
                        .map(|&i| cell.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                        .collect();
                    det_q(&rows).abs()
                })
                .fold(Q::zero(), |acc, x| acc + x)
                / q(fact)
        } else if dim == 0 {
            Q::one()
        } else {
            Q::zero()
        };
        out.push((Piece { vertices, dim: dims[idx], barycenter, volume }, sub));
    }
    out
}

/// Simplices (as vertex indices) of the pulling triangulation of face `idx`.
fn pulling_triangulation(faces: &[Vec<usize>], dims: &[usize], idx: usize) -> Vec<Vec<usize>> {
    let f = &faces[idx];
    if dims[idx] == 0 {
        return vec![vec![f[0]]];
    }
    let apex = f[0];
    let mut out = Vec::new();
    for (j, g) in faces.iter().enumerate() {
        if dims[j] + 1 == dims[idx] && !g.contains(&apex) && g.iter().all(|i| f.contains(i)) {
            for s in pulling_triangulation(faces, dims, j) {
                let mut simplex = vec![apex];
                simplex.extend(s);
                out.push(simplex);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_has_expected_faces() {
        let c = Cell::unit_cube(2);
        assert_eq!(c.vertices.len(), 4);
        // 4 vertices, 4 edges, 1 square.
        assert_eq!(c.faces().len(), 9);
    }

    #[test]
    fn diagonal_split_of_square() {
        let cells = arrangement_cells(&[vec![-1, -1]], 2);
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.vertices.len() == 3));
    }

    #[test]
    fn piece_volumes_sum_to_one() {
        for rays in [vec![vec![-1, -1]], vec![vec![-1, 2], vec![0, -1]], vec![vec![-1, -1, -1]]] {
            let dim = rays[0].len();
            let pieces = torus_pieces(&rays, dim);
            let total = pieces.values().fold(Q::zero(), |acc, (p, _)| acc + &p.volume);
            assert_eq!(total, Q::one());
        }
    }

    #[test]
    fn boundary_faces_identified_by_translation() {
        let pieces = torus_pieces(&[vec![1], vec![-1]], 1);
        // The point 0 (also 1) and the open interval.
        assert_eq!(pieces.len(), 2);
    }
}
