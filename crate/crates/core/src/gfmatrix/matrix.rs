use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gfmatrix::field::{Field, Fq};
use crate::groupcore::{PermGroup, Permutation};
use crate::util::gcd_u128;

/// Projective actions with more points than this are refused.
pub const MAX_PROJECTIVE_DEGREE: u64 = 2000;
/// Projective groups larger than this are refused.
pub const MAX_PROJECTIVE_ORDER: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Fq>,
}

impl SquareMatrix {
    pub fn identity(n: usize, field: &Field) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        SquareMatrix { n, entries }
    }

    /// Row-major entries.
    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Semantic("matrix must be square and non-empty".into()));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, x: Fq) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &SquareMatrix, field: &Field) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix {
            n,
            entries: vec![field.zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    acc = field.add(acc, field.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Fq], field: &Field) -> Vec<Fq> {
        (0..self.n)
            .map(|i| (0..self.n).fold(field.zero(), |acc, k| field.add(acc, field.mul(self.get(i, k), v[k]))))
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, field: &Field) -> Fq {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != field.zero()) else {
                return field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = field.neg(det);
            }
            let pv = m[col * n + col];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = field.mul(m[r * n + col], pinv);
                if factor == field.zero() {
                    continue;
                }
                for j in col..n {
                    let t = field.mul(factor, m[col * n + j]);
                    m[r * n + j] = field.sub(m[r * n + j], t);
                }
            }
        }
        det
    }
}

/// Elementary transvections `I + α·E_ij` (`i ≠ j`) with `α` running over the
/// polynomial basis `1, x, ..., x^{a-1}`; together they generate `SL(n, q)`.
pub fn sl_generators(n: usize, field: &Field) -> Vec<SquareMatrix> {
    let a = field.descriptor().a;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..a {
                let mut t = SquareMatrix::identity(n, field);
                t.set(i, j, field.basis(k));
                gens.push(t);
            }
        }
    }
    gens
}

/// `SL(n, q)` generators plus `diag(ω, 1, ..., 1)` for a primitive `ω`.
pub fn gl_generators(n: usize, field: &Field) -> Vec<SquareMatrix> {
    let mut gens = sl_generators(n, field);
    if field.order() > 2 {
        let mut d = SquareMatrix::identity(n, field);
        d.set(0, 0, field.primitive_element());
        gens.push(d);
    }
    gens
}

/// Scales `v` so its first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(v: &[Fq], field: &Field) -> Option<Vec<Fq>> {
    let lead = *v.iter().find(|&&x| x != field.zero())?;
    let inv = field.inv(lead).unwrap();
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

/// Normalized representatives of the points of `PG(n-1, q)` in lexicographic
/// order of their coordinate tuples.
pub fn projective_points(n: usize, field: &Field) -> Vec<Vec<Fq>> {
    let q = field.order();
    let mut points = Vec::new();
    // lead = position of the leading 1
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        for t in 0..(q as u64).pow(tail as u32) {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut rest = t;
            for i in (lead + 1..n).rev() {
                v[i] = Fq((rest % q as u64) as u32);
                rest /= q as u64;
            }
            points.push(v);
        }
    }
    points.sort();
    points
}

pub fn projective_degree(n: u32, q: u64) -> BigUint {
    (BigUint::from(q).pow(n) - 1u32) / (q - 1)
}

/// Permutation group induced by `matrices` on the projective points. Scalar
/// matrices act trivially, so `SL(n, q)` maps onto `PSL(n, q)`.
pub fn projective_action(matrices: &[SquareMatrix], field: &Field) -> Result<PermGroup> {
    let Some(first) = matrices.first() else {
        return Err(Error::Semantic("no matrices".into()));
    };
    let n = first.dim();
    let points = projective_points(n, field);
    let lookup: HashMap<&[Fq], u32> = points
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i as u32))
        .collect();
    let mut gens = Vec::with_capacity(matrices.len());
    for m in matrices {
        if m.dim() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: m.dim(),
            });
        }
        if m.det(field) == field.zero() {
            return Err(Error::SingularMatrix);
        }
        let images = points
            .iter()
            .map(|v| {
                let w = normalize(&m.apply(v, field), field).expect("invertible");
                lookup[w.as_slice()]
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(points.len(), gens)
}

/// `|SL(n, q)| = q^{n(n-1)/2} Π_{i=2..n} (q^i - 1)`, which also equals `|PGL(n, q)|`.
pub fn sl_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut order = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        order *= q.pow(i) - 1u32;
    }
    order
}

pub fn pgl_order(n: u32, q: u64) -> BigUint {
    sl_order(n, q)
}

pub fn psl_order(n: u32, q: u64) -> BigUint {
    sl_order(n, q) / BigUint::from(gcd_u128(n as u128, q as u128 - 1))
}

/// Refuses projective groups beyond the materialization bounds.
pub fn check_projective_bounds(n: u32, q: u64) -> Result<()> {
    let degree = projective_degree(n, q);
    if degree > BigUint::from(MAX_PROJECTIVE_DEGREE) {
        return Err(Error::CapExceeded {
            what: format!("projective degree of ({n},{q})"),
            cap: MAX_PROJECTIVE_DEGREE as u128,
        });
    }
    if pgl_order(n, q) > BigUint::from(MAX_PROJECTIVE_ORDER) {
        return Err(Error::CapExceeded {
            what: format!("order of projective group ({n},{q})"),
            cap: MAX_PROJECTIVE_ORDER as u128,
        });
    }
    Ok(())
}

/// Order of the permutation group generated by the images of SL generators.
pub fn sl_image_order(n: usize, field: &Field) -> Result<BigUint> {
    let mut g = projective_action(&sl_generators(n, field), field)?;
    Ok(g.order())
}
