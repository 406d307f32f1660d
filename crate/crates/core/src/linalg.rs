//! Exact dense linear algebra over any [`Field`].
//!
//! Vectors are plain `Vec<T>`, matrices are row lists. Elimination pivots on
//! the first nonzero entry, so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, IntVec, QuadValue, Rational};
use crate::error::{Error, Result};

pub type Mat<T> = Vec<Vec<T>>;

pub fn dot<T: Field>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).fold(T::fzero(), |acc, (a, b)| acc.fadd(&a.fmul(b)))
}

pub fn add_vec<T: Field>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.fadd(b)).collect()
}

pub fn sub_vec<T: Field>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.fsub(b)).collect()
}

pub fn scale_vec<T: Field>(s: &T, v: &[T]) -> Vec<T> {
    v.iter().map(|a| s.fmul(a)).collect()
}

pub fn neg_vec<T: Field>(v: &[T]) -> Vec<T> {
    v.iter().map(Field::fneg).collect()
}

pub fn is_zero_vec<T: Field>(v: &[T]) -> bool {
    v.iter().all(Field::is_fzero)
}

pub fn unit_vec<T: Field>(n: usize, i: usize) -> Vec<T> {
    (0..n).map(|j| if i == j { T::fone() } else { T::fzero() }).collect()
}

pub fn mat_vec<T: Field>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn lift<T: Field>(v: &[Rational]) -> Vec<T> {
    v.iter().map(T::from_rational).collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<T: Field>(rows: &[Vec<T>], ncols: usize) -> (Mat<T>, Vec<usize>) {
    let mut m: Mat<T> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_fzero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::fone().fdiv(&m[r][col]);
        for x in m[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_fzero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.fsub(&f.fmul(p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<T: Field>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A basis of `{x : Mx = 0}`, one vector per free column.
pub fn kernel<T: Field>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![T::fzero(); ncols];
        x[free] = T::fone();
        for (row, &pc) in r.iter().zip(&pivots) {
            x[pc] = row[free].fneg();
        }
        basis.push(x);
    }
    basis
}

/// Some solution of `Ax = b`, or `None` when inconsistent.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T], ncols: usize) -> Option<Vec<T>> {
    let aug: Mat<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![T::fzero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Orthogonal projection of `v` onto the span of `basis`.
pub fn proj_subspace<T: Field>(v: &[T], basis: &[Vec<T>]) -> Result<Vec<T>> {
    if basis.is_empty() {
        return Ok(vec![T::fzero(); v.len()]);
    }
    let k = basis.len();
    let gram: Mat<T> = basis.iter().map(|bi| basis.iter().map(|bj| dot(bi, bj)).collect()).collect();
    if rank(&gram, k) < k {
        return Err(Error::DependentBasis);
    }
    let rhs: Vec<T> = basis.iter().map(|bi| dot(bi, v)).collect();
    let y = solve(&gram, &rhs, k).ok_or(Error::DependentBasis)?;
    let mut out = vec![T::fzero(); v.len()];
    for (yi, bi) in y.iter().zip(basis) {
        out = add_vec(&out, &scale_vec(yi, bi));
    }
    Ok(out)
}

pub fn orth_complement<T: Field>(basis: &[Vec<T>], ambient_dim: usize) -> Vec<Vec<T>> {
    kernel(basis, ambient_dim)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<T: Field>(v: &[T], basis: &[Vec<T>]) -> bool {
    let n = v.len();
    let mut rows = basis.to_vec();
    let r = rank(&rows, n);
    rows.push(v.to_vec());
    rank(&rows, n) == r
}

/// ℚ-linear dependencies among quadratic values.
///
/// `pivot` is the lowest index with an irrational entry (the set `I`), and
/// `coeffs[j] = (q_{j,0}, q_{j,1})` with `values[j] = q_{j,0} + q_{j,1}·values[pivot]`.
/// Without a pivot every value is rational and `q_{j,1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLinearBasis {
    pub pivot: Option<usize>,
    pub coeffs: Vec<(Rational, Rational)>,
}

impl QLinearBasis {
    pub fn reconstruct(&self, values: &[QuadValue]) -> Vec<QuadValue> {
        self.coeffs
            .iter()
            .map(|(q0, q1)| {
                let base = QuadValue::rational(q0.clone());
                match self.pivot {
                    Some(i) => &base + &values[i].scale(q1),
                    None => base,
                }
            })
            .collect()
    }
}

pub fn q_linear_basis(values: &[QuadValue]) -> Result<QLinearBasis> {
    crate::arith::common_field(values)?;
    let pivot = values.iter().position(|v| !v.b().is_zero());
    let coeffs = values
        .iter()
        .map(|v| match pivot {
            None => (v.a().clone(), Rational::zero()),
            Some(i) => {
                let q1 = v.b() / values[i].b();
                let q0 = v.a() - &q1 * values[i].a();
                (q0, q1)
            }
        })
        .collect();
    Ok(QLinearBasis { pivot, coeffs })
}

/// Scales a nonzero rational vector to the coprime integer vector with the
/// same direction.
pub fn primitive(v: &[Rational]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Integer vector scaled from a rational direction, as rationals.
pub fn primitive_rat(v: &[Rational]) -> Vec<Rational> {
    primitive(v).into_iter().map(Rational::from_integer).collect()
}

pub fn norm_inf(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rats};

    fn q2(a: i64, b: i64) -> QuadValue {
        QuadValue::new(int(a), int(b), 2).unwrap()
    }

    fn spans_same<T: Field>(a: &[Vec<T>], b: &[Vec<T>], n: usize) -> bool {
        a.len() == b.len() && a.iter().all(|v| in_span(v, b)) && b.iter().all(|v| in_span(v, a)) && rank(a, n) == a.len()
    }

    #[test]
    fn kernel_examples() {
        let id = vec![rats(&[1, 0]), rats(&[0, 1])];
        assert!(kernel(&id, 2).is_empty());
        let k = kernel(&[rats(&[1, 1])], 2);
        assert!(spans_same(&k, &[rats(&[1, -1])], 2));
        let m = vec![vec![QuadValue::one(), q2(0, 1)]];
        let k = kernel(&m, 2);
        assert_eq!(k, vec![vec![q2(0, -1), QuadValue::one()]]);
        assert!(dot(&m[0], &k[0]).is_zero());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(proj_subspace(&rats(&[1, 1]), &[rats(&[1, 0])]).unwrap(), rats(&[1, 0]));
        assert_eq!(proj_subspace(&rats(&[1, 0]), &[rats(&[1, 1])]).unwrap(), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(
            proj_subspace(&rats(&[3, 4, 0]), &[rats(&[1, 0, 0]), rats(&[0, 1, 0])]).unwrap(),
            rats(&[3, 4, 0])
        );
        assert!(matches!(
            proj_subspace(&rats(&[1, 0]), &[rats(&[1, 1]), rats(&[2, 2])]),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn complement_examples() {
        assert!(spans_same(&orth_complement(&[rats(&[1, 0])], 2), &[rats(&[0, 1])], 2));
        assert!(spans_same(&orth_complement::<Rational>(&[], 2), &[rats(&[1, 0]), rats(&[0, 1])], 2));
        let c = orth_complement(&[rats(&[1, 1, 0]), rats(&[0, 0, 1])], 3);
        assert!(spans_same(&c, &[rats(&[1, -1, 0])], 3));
    }

    #[test]
    fn q_basis_examples() {
        let vals = [q2(0, 1), QuadValue::one()];
        let b = q_linear_basis(&vals).unwrap();
        assert_eq!(b.pivot, Some(0));
        assert_eq!(b.coeffs[1], (int(1), int(0)));
        assert_eq!(b.reconstruct(&vals), vals);

        let vals = [q2(0, 1), q2(0, 1)];
        let b = q_linear_basis(&vals).unwrap();
        assert_eq!(b.coeffs[1], (int(0), int(1)));

        let vals = [QuadValue::rational(rat(1, 2)), QuadValue::from_int(3)];
        let b = q_linear_basis(&vals).unwrap();
        assert_eq!(b.pivot, None);
        assert_eq!(b.coeffs, vec![(rat(1, 2), int(0)), (int(3), int(0))]);
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[rat(1, 2), rat(-3, 4)]), crate::arith::ints(&[2, -3]));
        assert_eq!(primitive_int(&crate::arith::ints(&[4, 6, 0])), crate::arith::ints(&[2, 3, 0]));
    }
}
