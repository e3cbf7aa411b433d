use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{
    gcd_all, lex_positive, pair, smith, Integer, IntegerMatrix, LatticeError, Rational,
    RationalVector,
};

/// Basis of the saturated kernel `{v in Z^n : A v = 0}` in reverse Hermite
/// normal form: row `k` has its last nonzero entry (the pivot) at column
/// `p_k`, pivots are positive and strictly decreasing in `k`, and every other
/// row's entry in column `p_k` lies in `[0, pivot)`.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<Integer>> {
    let s = smith(a);
    let rank = s.rank();
    let rows: Vec<Vec<Integer>> = (rank..a.cols()).map(|j| s.v.column(j)).collect();
    reverse_hermite(rows, a.cols())
}

/// Reverse Hermite normal form of the lattice spanned by `rows`, with zero
/// rows dropped.
pub(crate) fn reverse_hermite(rows: Vec<Vec<Integer>>, dim: usize) -> Vec<Vec<Integer>> {
    let mut rows: Vec<Vec<Integer>> = rows
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    let mut top = 0;
    for col in 0..dim {
        if top == rows.len() {
            break;
        }
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                sub_multiple(&mut rows, i, top, &q);
                done &= rows[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if top == rows.len() || rows[top][col].is_zero() {
            continue;
        }
        if rows[top][col].is_negative() {
            for x in &mut rows[top] {
                *x = -core::mem::take(x);
            }
        }
        for i in 0..top {
            let q = rows[i][col].div_floor(&rows[top][col]);
            sub_multiple(&mut rows, i, top, &q);
        }
        top += 1;
    }
    rows.truncate(top);
    for r in &mut rows {
        r.reverse();
    }
    rows
}

fn sub_multiple(rows: &mut [Vec<Integer>], dst: usize, src: usize, q: &Integer) {
    if q.is_zero() {
        return;
    }
    for c in 0..rows[dst].len() {
        let t = &rows[src][c] * q;
        rows[dst][c] -= t;
    }
}

fn pivot_column(row: &[Integer]) -> usize {
    row.iter()
        .rposition(|x| !x.is_zero())
        .expect("basis rows are nonzero")
}

/// Primitive normal to a rank `r - 1` set of vectors in `Z^r`, returned in
/// its lexicographically positive form.
pub fn primitive_normal(vectors: &[Vec<Integer>], r: usize) -> Result<Vec<Integer>, LatticeError> {
    if let Some(v) = vectors.iter().find(|v| v.len() != r) {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: v.len(),
        });
    }
    let m = IntegerMatrix::from_rows(vectors, r);
    let kernel = kernel_basis(&m);
    if r == 0 || kernel.len() != 1 {
        return Err(LatticeError::Rank {
            expected: r.saturating_sub(1),
            found: r - kernel.len().min(r),
        });
    }
    let normal = kernel.into_iter().next().unwrap_or_default();
    Ok(lex_positive(normal))
}

/// The lattice `lambda^perp` with an explicit basis, and a character pairing
/// to one with `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneCoordinates {
    pub lambda: Vec<Integer>,
    /// Basis of `lambda^perp`, in reverse Hermite normal form.
    pub basis: Vec<Vec<Integer>>,
    /// `chi_tw` with `<chi_tw, lambda> = 1`, reduced against the basis.
    pub twist_lift: Vec<Integer>,
}

impl HyperplaneCoordinates {
    pub fn ambient_dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an integral `v` in `lambda^perp` with respect to the basis.
    pub fn coordinates(&self, v: &[Integer]) -> Result<Vec<Integer>, LatticeError> {
        let c = self.rational_coordinates(&RationalVector::from_integers(v))?;
        if !c.is_integral() {
            return Err(LatticeError::NotInHyperplane);
        }
        Ok(c.0.into_iter().map(|x| x.to_integer()).collect())
    }

    /// Coordinates of a rational `v` in `lambda^perp ⊗ Q`.
    pub fn rational_coordinates(&self, v: &RationalVector) -> Result<RationalVector, LatticeError> {
        if v.dim() != self.ambient_dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.dim(),
            });
        }
        let mut rest = v.0.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = pivot_column(b);
            let c = &rest[p] / Rational::from_integer(b[p].clone());
            for (x, bx) in rest.iter_mut().zip(b) {
                *x -= &c * Rational::from_integer(bx.clone());
            }
            coords.push(c);
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(LatticeError::NotInHyperplane);
        }
        Ok(RationalVector(coords))
    }

    /// Inverse of [`Self::coordinates`]: `sum_k c_k b_k`.
    pub fn lift(&self, c: &[Integer]) -> Vec<Integer> {
        let mut out = alloc::vec![Integer::zero(); self.ambient_dim()];
        for (ck, b) in c.iter().zip(&self.basis) {
            for (o, bx) in out.iter_mut().zip(b) {
                *o += ck * bx;
            }
        }
        out
    }

    pub fn lift_rational(&self, c: &RationalVector) -> RationalVector {
        let mut out = RationalVector::zero(self.ambient_dim());
        for (ck, b) in c.0.iter().zip(&self.basis) {
            for (o, bx) in out.0.iter_mut().zip(b) {
                *o += ck * Rational::from_integer(bx.clone());
            }
        }
        out
    }
}

pub fn hyperplane_coordinates(lambda: &[Integer]) -> Result<HyperplaneCoordinates, LatticeError> {
    if !gcd_all(lambda).is_one() {
        return Err(LatticeError::NotPrimitive);
    }
    let r = lambda.len();
    let basis = kernel_basis(&IntegerMatrix::from_rows(&[lambda.to_vec()], r));

    // Extended gcd across the entries.
    let mut g = Integer::zero();
    let mut x = alloc::vec![Integer::zero(); r];
    for (i, l) in lambda.iter().enumerate() {
        let e = g.extended_gcd(l);
        for xi in x.iter_mut() {
            *xi *= &e.x;
        }
        x[i] += &e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        for xi in x.iter_mut() {
            *xi = -core::mem::take(xi);
        }
    }
    debug_assert!(pair(&x, lambda).is_one());
    for b in &basis {
        let p = pivot_column(b);
        let q = x[p].div_floor(&b[p]);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= &q * bi;
        }
    }

    Ok(HyperplaneCoordinates {
        lambda: lambda.to_vec(),
        basis,
        twist_lift: x,
    })
}
