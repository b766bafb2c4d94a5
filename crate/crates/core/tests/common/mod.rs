//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the eliminator.

#![allow(dead_code)]

use gjla::field::{Field, FieldKind};
use gjla::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> F::Elem {
    let n = rows.len();
    match n {
        0 => field.one(),
        1 => rows[0][0].clone(),
        _ => {
            let mut total = field.zero();
            for j in 0..n {
                if field.is_zero(&rows[0][j]) {
                    continue;
                }
                let minor: Vec<Vec<F::Elem>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = field.mul(&rows[0][j], &cofactor_det(field, &minor));
                total = if j % 2 == 0 { field.add(&total, &term) } else { field.sub(&total, &term) };
            }
            total
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Rank as the size of the largest square submatrix with nonzero
/// determinant.
pub fn minor_rank<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    let (m, n) = a.shape();
    for k in (1..=m.min(n)).rev() {
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let sub: Vec<Vec<F::Elem>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                if !field.is_zero(&cofactor_det(field, &sub)) {
                    return k;
                }
            }
        }
    }
    0
}

/// A small element: a bit for GF(2), `p/q` with `|p| <= 4`, `q <= 3` otherwise.
/// Zero is drawn about a third of the time so that rank deficiency is common.
pub fn small_elem<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    if rng.gen_bool(0.3) {
        return field.zero();
    }
    let text = match field.kind() {
        FieldKind::Gf2 => "1".to_string(),
        FieldKind::Rat => format!("{}/{}", rng.gen_range(-4..=4), rng.gen_range(1..=3)),
        FieldKind::Real => format!("{:?}", rng.gen_range(-4..=4) as f64 / rng.gen_range(1..=3) as f64),
    };
    field.parse(&text).expect("generated literal parses")
}

/// Random `m x n` matrix drawn from a mix of regimes: small sparse entries,
/// products of thin factors (forced low rank), and the full sampling
/// distribution of the field.
pub fn random_instance<F: Field, R: Rng>(field: &F, rng: &mut R, m: usize, n: usize) -> Matrix<F::Elem> {
    match rng.gen_range(0..3) {
        0 => Matrix::from_fn(m, n, |_, _| small_elem(field, rng)).unwrap(),
        1 => {
            let r = rng.gen_range(1..=m.min(n));
            let left = Matrix::from_fn(m, r, |_, _| small_elem(field, rng)).unwrap();
            let right = Matrix::from_fn(r, n, |_, _| small_elem(field, rng)).unwrap();
            left.mat_mul(field, &right).unwrap()
        }
        _ => Matrix::from_fn(m, n, |_, _| field.sample(rng)).unwrap(),
    }
}

/// Random instance with shape drawn uniformly from `1..=max_m` by `1..=max_n`.
pub fn random_shaped<F: Field, R: Rng>(field: &F, rng: &mut R, max_m: usize, max_n: usize) -> Matrix<F::Elem> {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    random_instance(field, rng, m, n)
}

/// Rank of a list of vectors stacked as rows, by the minor oracle.
pub fn rows_rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    minor_rank(field, &Matrix::from_rows(rows).unwrap())
}
