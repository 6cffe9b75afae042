//! Magnitude of a graph as an exact rational function in `q` and as a
//! truncated power series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mag_homology::{self, HomologyOptions};
use crate::poly::{IntPoly, RatFunc};

/// Truncated power series `c_0 + c_1 q + ... + c_L q^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub coeffs: Vec<BigInt>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.try_into().ok()).collect()
    }
}

/// The matrix `(q^d(x,y))`.
pub fn zeta_matrix(g: &Graph) -> Vec<Vec<IntPoly>> {
    g.vertices()
        .map(|x| {
            g.vertices()
                .map(|y| IntPoly::monomial(g.dist(x, y)))
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination over `Z[q]`.
fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> Result<IntPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut sign_flip = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(IntPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).ok_or_else(|| {
                    Error::Inconsistent("Bareiss step produced an inexact division".into())
                })?;
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { -&det } else { det })
}

/// `#G`, the sum of all entries of the inverse of the zeta matrix.
///
/// With `J` the all-ones matrix, `det(Z + J) = det(Z) (1 + 1ᵀ Z⁻¹ 1)`, so
/// `#G = (det(Z + J) - det Z) / det Z`; both determinants are computed
/// fraction-free.
pub fn magnitude_rational(g: &Graph) -> Result<RatFunc> {
    let z = zeta_matrix(g);
    let one = IntPoly::one();
    let zj: Vec<Vec<IntPoly>> = z
        .iter()
        .map(|row| row.iter().map(|e| e + &one).collect())
        .collect();
    let det = bareiss_det(z)?;
    if det.is_zero() {
        return Err(Error::Inconsistent(
            "zeta matrix has zero determinant".into(),
        ));
    }
    let det_j = bareiss_det(zj)?;
    RatFunc::new(&det_j - &det, det).ok_or_else(|| Error::Inconsistent("zero denominator".into()))
}

/// Coefficients of `#G` through `q^order`.
///
/// `Z = I + N` where `N` only has entries of degree at least one, so
/// `w = Z⁻¹ 1` satisfies `w = 1 - N w` and can be solved one degree at a
/// time; `#G` is the sum of the entries of `w`.
pub fn magnitude_series(g: &Graph, order: usize) -> SeriesCoeffs {
    let n = g.vertex_count();
    // layers[d] lists the ordered pairs at distance d >= 1
    let mut layers: Vec<Vec<(usize, usize)>> = Vec::new();
    for x in g.vertices() {
        for y in g.vertices() {
            let d = g.dist(x, y);
            if d == 0 {
                continue;
            }
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            layers[d].push((x, y));
        }
    }
    let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(order + 1);
    for c in 0..=order {
        let mut cur = vec![
            if c == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            n
        ];
        for d in 1..layers.len().min(c + 1) {
            let prev = &w[c - d];
            for &(x, y) in &layers[d] {
                cur[x] -= &prev[y];
            }
        }
        w.push(cur);
    }
    SeriesCoeffs {
        coeffs: w.iter().map(|v| v.iter().sum()).collect(),
    }
}

/// Per-length comparison of the series coefficient with the alternating sum
/// of magnitude homology ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub ell: usize,
    pub series: BigInt,
    pub homology: BigInt,
}

impl EulerRow {
    pub fn holds(&self) -> bool {
        self.series == self.homology
    }
}

/// Checks `c_ℓ = Σ_k (-1)^k rank MH_k^ℓ` for every `ℓ <= lmax`.
pub fn euler_check(g: &Graph, lmax: usize, opts: &HomologyOptions) -> Result<Vec<EulerRow>> {
    let series = magnitude_series(g, lmax);
    let table = mag_homology::mh_table(g, lmax, opts)?;
    Ok((0..=lmax)
        .map(|ell| {
            let homology = (0..=ell)
                .map(|k| {
                    let r = BigInt::from(table.get(k, ell).rank);
                    if k % 2 == 0 {
                        r
                    } else {
                        -r
                    }
                })
                .sum();
            EulerRow {
                ell,
                series: series.coeffs[ell].clone(),
                homology,
            }
        })
        .collect())
}
