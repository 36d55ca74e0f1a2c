//! Dense exact linear algebra over a [`Field`].

use crate::field::{Field, Polynomial};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, cols: &[Vec<E>], rows: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_vectors(&self) -> &[Vec<E>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| self.column(j)).collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().flatten().all(|x| field.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| field.mul(x, c)).collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let p = field.mul(a, &other.data[k][j]);
                    out.data[i][j] = field.add(&out.data[i][j], &p);
                }
            }
        }
        out
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(&m.data[i][c])) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = field.inv(&m.data[r][c]).expect("pivot is nonzero");
            for x in m.data[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
            for i in 0..m.rows {
                if i == r || field.is_zero(&m.data[i][c]) {
                    continue;
                }
                let f = m.data[i][c].clone();
                for j in 0..m.cols {
                    let d = field.mul(&f, &m.data[r][j]);
                    m.data[i][j] = field.sub(&m.data[i][j], &d);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// A basis of `{x : self·x = 0}`.
    pub fn nullspace<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(&r.data[row][f]);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_rows(
            self.data
                .iter()
                .zip(b)
                .map(|(r, x)| {
                    let mut r = r.clone();
                    r.push(x.clone());
                    r
                })
                .collect(),
            self.cols + 1,
        );
        let (r, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.data[row][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_rows(
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut r = r.clone();
                    r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
                    r
                })
                .collect(),
            2 * n,
        );
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            r.data.into_iter().map(|row| row[n..].to_vec()).collect(),
            n,
        ))
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}

/// Dimension of the span of `vectors` (all of the same length).
pub fn span_rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => Matrix::from_rows(vectors.to_vec(), v.len()).rank(field),
    }
}

/// A basis of the span of `vectors`, in reduced echelon form.
pub fn span_basis<F: Field>(field: &F, vectors: &[Vec<F::Elem>], dim: usize) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors.to_vec(), dim).rref(field);
    r.data.into_iter().take(pivots.len()).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(field: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(field, &all) == span_rank(field, basis)
}

/// A pair `(A, B)` standing for the constraint `A X = X B`.
pub type Intertwining<E> = (Matrix<E>, Matrix<E>);

/// Basis of the space of matrices `X` (`rows × cols`) satisfying all the
/// linear constraints `A_i X = X B_i`.
pub fn intertwiners<F: Field>(
    field: &F,
    pairs: &[Intertwining<F::Elem>],
    rows: usize,
    cols: usize,
) -> Vec<Matrix<F::Elem>> {
    intertwiners_supported(field, pairs, rows, cols, |_, _| true)
}

/// As [`intertwiners`], with `X[i][j]` forced to zero wherever `allowed(i, j)`
/// is false.
pub fn intertwiners_supported<F: Field>(
    field: &F,
    pairs: &[Intertwining<F::Elem>],
    rows: usize,
    cols: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<Matrix<F::Elem>> {
    // Unknown X[i][j] is variable i*cols + j.
    let nvars = rows * cols;
    let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
    for (a, b) in pairs {
        assert_eq!((a.rows, a.cols), (rows, rows));
        assert_eq!((b.rows, b.cols), (cols, cols));
        for i in 0..rows {
            for j in 0..cols {
                // (A X)[i][j] - (X B)[i][j] = 0
                let mut eq = vec![field.zero(); nvars];
                for k in 0..rows {
                    let idx = k * cols + j;
                    eq[idx] = field.add(&eq[idx], &a.data[i][k]);
                }
                for k in 0..cols {
                    let idx = i * cols + k;
                    eq[idx] = field.sub(&eq[idx], &b.data[k][j]);
                }
                if eq.iter().any(|x| !field.is_zero(x)) {
                    eqs.push(eq);
                }
            }
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            if !allowed(i, j) {
                let mut eq = vec![field.zero(); nvars];
                eq[i * cols + j] = field.one();
                eqs.push(eq);
            }
        }
    }
    let system = if eqs.is_empty() {
        Matrix::zeros(field, 0, nvars)
    } else {
        Matrix::from_rows(eqs, nvars)
    };
    system
        .nullspace(field)
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(cols.max(1)).take(rows).map(|c| c.to_vec()).collect(), cols))
        .collect()
}

impl<E: Clone + PartialEq> Matrix<E> {
    /// `self^k` for any integer `k`; `None` if `k < 0` and `self` is singular.
    pub fn pow<F: Field<Elem = E>>(&self, field: &F, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse(field)? } else { self.clone() };
        let mut acc = Matrix::identity(field, self.rows);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(field, &base);
        }
        Some(acc)
    }

    /// Entries read row by row.
    pub fn flatten(&self) -> Vec<E> {
        self.data.iter().flatten().cloned().collect()
    }

    /// The monic polynomial `p` of least degree with `p(self) = 0`.
    pub fn minimal_polynomial<F: Field<Elem = E>>(&self, field: &F) -> Polynomial<E> {
        let n = self.rows;
        let mut powers = vec![Matrix::identity(field, n).flatten()];
        let mut current = Matrix::identity(field, n);
        loop {
            current = current.mul(field, self);
            let target = current.flatten();
            // Solve Σ c_i A^i = A^d over the earlier powers.
            let d = powers.len();
            let system = Matrix::from_columns(field, &powers, n * n);
            if let Some(c) = system.solve(field, &target) {
                let mut coeffs: Vec<E> = c.iter().map(|x| field.neg(x)).collect();
                debug_assert_eq!(coeffs.len(), d);
                coeffs.push(field.one());
                return Polynomial::from_coeffs(field, coeffs);
            }
            powers.push(target);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        let f = Rationals;
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let f = Rationals;
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&f, &ns[0]).iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Rationals;
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse(&f).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Rationals;
        let m = q(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&f, &[f.from_i64(1), f.from_i64(2)]).is_none());
        let x = m.solve(&f, &[f.from_i64(3), f.from_i64(3)]).unwrap();
        assert_eq!(m.apply(&f, &x), vec![f.from_i64(3), f.from_i64(3)]);
    }

    #[test]
    fn commutant_of_scalar_and_jordan() {
        let f = PrimeField::new(5).unwrap();
        let j = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]], 2);
        // Matrices commuting with a Jordan block: a·I + b·N, dimension 2.
        assert_eq!(intertwiners(&f, &[(j.clone(), j.clone())], 2, 2).len(), 2);
        assert_eq!(intertwiners(&f, &[], 2, 3).len(), 6);
    }

    #[test]
    fn supported_intertwiners_respect_zeros() {
        let f = PrimeField::new(5).unwrap();
        // Diagonal X only: commutant of the identity restricted to the diagonal.
        let id = Matrix::identity(&f, 2);
        let xs = intertwiners_supported(&f, &[(id.clone(), id)], 2, 2, |i, j| i == j);
        assert_eq!(xs.len(), 2);
    }

    #[test]
    fn minimal_polynomials() {
        let f = Rationals;
        let m = q(&[&[0, -1], &[1, 0]]);
        assert_eq!(m.minimal_polynomial(&f).format(&f), "t^2+1");
        assert_eq!(Matrix::identity(&f, 3).minimal_polynomial(&f).format(&f), "t-1");
        assert_eq!(m.pow(&f, -1).unwrap(), m.pow(&f, 3).unwrap());
    }
}
