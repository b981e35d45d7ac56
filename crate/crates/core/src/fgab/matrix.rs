use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers; rows must have equal
    /// length. `cols` disambiguates the empty-row-list case.
    pub fn from_rows_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let r = rows.len();
        let mut m = Self::zero(r, cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row in matrix literal");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(e));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        self.map(|e| e * s)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`; dimensions must agree.
    pub fn block2x2(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> Self {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Self {
        Self::from_fn(row_range.len(), col_range.len(), |i, j| {
            self.get(row_range.start + i, col_range.start + j).clone()
        })
    }

    pub fn column(&self, j: usize) -> Self {
        self.submatrix(0..self.rows, j..j + 1)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += q * row b
    pub fn row_add(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(b, j) * q;
            let v = self.get(a, j) + t;
            self.set(a, j, v);
        }
    }

    /// col a += q * col b
    pub fn col_add(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, b) * q;
            let v = self.get(i, a) + t;
            self.set(i, a, v);
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a).clone();
            self.set(i, a, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.map(|e| -e)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "mul: inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.get(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + lik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
///
/// `D` is diagonal with non-negative entries forming an ascending
/// divisibility chain; the inverses of the transforms are tracked during
/// the reduction because quotient constructions need them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    u: IntMatrix,
    d: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    original_dims: (usize, usize),
}

impl SmithDecomposition {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn original_dims(&self) -> (usize, usize) {
        self.original_dims
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| !self.d.get(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Basis of the integer kernel lattice of `M`, one column per basis
    /// vector. The basis is saturated: it spans ker(M) over Z exactly.
    pub fn kernel_basis(&self) -> IntMatrix {
        let (_, cols) = self.original_dims;
        let n = self.d.rows().min(self.d.cols());
        let idx: Vec<usize> = (0..cols)
            .filter(|&j| j >= n || self.d.get(j, j).is_zero())
            .collect();
        self.v.select_columns(&idx)
    }

    /// Solves `M x = b` over the integers for a whole block of right-hand
    /// sides (one per column of `b`). Returns None when some column has no
    /// integral solution.
    pub fn solve(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let (rows, cols) = self.original_dims;
        assert_eq!(b.rows(), rows, "solve: rhs row mismatch");
        let y = &self.u * b;
        let n = rows.min(cols);
        let mut z = IntMatrix::zero(cols, b.cols());
        for k in 0..b.cols() {
            for i in 0..rows {
                let yi = y.get(i, k);
                if i < n && !self.d.get(i, i).is_zero() {
                    let d = self.d.get(i, i);
                    if (yi % d).is_zero() {
                        z.set(i, k, yi / d);
                    } else {
                        return None;
                    }
                } else if !yi.is_zero() {
                    return None;
                }
            }
        }
        Some(&self.v * &z)
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let abs = e.abs();
            if best_abs.as_ref().map_or(true, |b| abs < *b) {
                best_abs = Some(abs);
                best = Some((i, j));
            }
        }
    }
    best
}

/// Computes the Smith normal form of `m`.
///
/// Pivot selection takes the least nonzero absolute value in the working
/// submatrix, ties broken by lowest row then lowest column, which makes the
/// transforms deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // elementary operations are mirrored on (u, u_inv) resp. (v, v_inv)
    // so that u * m * v = a holds at every step
    macro_rules! row_sub {
        ($i:expr, $t:expr, $q:expr) => {{
            let q = $q;
            let nq = -&q;
            a.row_add($i, $t, &nq);
            u.row_add($i, $t, &nq);
            u_inv.col_add($t, $i, &q);
        }};
    }
    macro_rules! col_sub {
        ($j:expr, $t:expr, $q:expr) => {{
            let q = $q;
            let nq = -&q;
            a.col_add($j, $t, &nq);
            v.col_add($j, $t, &nq);
            v_inv.row_add($t, $j, &q);
        }};
    }
    macro_rules! swap_rows {
        ($x:expr, $y:expr) => {{
            a.swap_rows($x, $y);
            u.swap_rows($x, $y);
            u_inv.swap_cols($x, $y);
        }};
    }
    macro_rules! swap_cols {
        ($x:expr, $y:expr) => {{
            a.swap_cols($x, $y);
            v.swap_cols($x, $y);
            v_inv.swap_rows($x, $y);
        }};
    }

    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = find_pivot(&a, t) else {
            break;
        };
        swap_rows!(t, pi);
        swap_cols!(t, pj);
        'reduce: loop {
            // clear column t; a nonzero remainder becomes the new, smaller pivot
            for i in 0..rows {
                if i == t || a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t) / a.get(t, t);
                if !q.is_zero() {
                    row_sub!(i, t, q);
                }
                if !a.get(i, t).is_zero() {
                    swap_rows!(t, i);
                    continue 'reduce;
                }
            }
            // clear row t; column t stays clear because these ops only touch j != t
            for j in 0..cols {
                if j == t || a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j) / a.get(t, t);
                if !q.is_zero() {
                    col_sub!(j, t, q);
                }
                if !a.get(t, j).is_zero() {
                    swap_cols!(t, j);
                    continue 'reduce;
                }
            }
            // force the pivot to divide the rest of the submatrix, which makes
            // the final diagonal an ascending divisibility chain
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(a.get(i, j) % a.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.row_add(t, i, &one);
                    u.row_add(t, i, &one);
                    u_inv.col_add(i, t, &(-&one));
                }
                None => break,
            }
        }
    }
    for t in 0..n {
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    SmithDecomposition {
        u,
        d: a,
        v,
        u_inv,
        v_inv,
        original_dims: (rows, cols),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_decomposition(m: &IntMatrix, s: &SmithDecomposition) {
        assert_eq!(&(&(s.u() * m) * s.v()), s.d(), "U*M*V != D");
        assert_eq!(s.u().determinant().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(s.v().determinant().abs(), BigInt::one(), "V not unimodular");
        assert_eq!(&(s.u() * s.u_inv()), &IntMatrix::identity(m.rows()));
        assert_eq!(&(s.v() * s.v_inv()), &IntMatrix::identity(m.cols()));
        let diag = s.diagonal();
        for (i, d) in diag.iter().enumerate() {
            assert!(!d.is_negative(), "negative diagonal entry");
            if i + 1 < diag.len() && !d.is_zero() {
                if diag[i + 1].is_zero() {
                    continue;
                }
                assert!((&diag[i + 1] % d).is_zero(), "divisibility chain broken");
            }
            if d.is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero(), "zero before nonzero on diagonal");
            }
        }
        // off-diagonal zero
        for i in 0..s.d().rows() {
            for j in 0..s.d().cols() {
                if i != j {
                    assert!(s.d().get(i, j).is_zero(), "off-diagonal nonzero");
                }
            }
        }
    }

    #[test]
    fn snf_two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal must be (2, 4)
        let m = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]], 2);
        let s = smith_normal_form(&m);
        check_decomposition(&m, &s);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let s = smith_normal_form(&m);
        check_decomposition(&m, &s);
        assert_eq!(s.d(), &IntMatrix::identity(3));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zero(2, 3);
        let s = smith_normal_form(&m);
        check_decomposition(&m, &s);
        assert!(s.d().is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0, 0], vec![0, 0, 3]], 3);
        let s = smith_normal_form(&m);
        check_decomposition(&m, &s);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.kernel_basis().cols(), 1);
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]], 2);
        let s = smith_normal_form(&m);
        let b = IntMatrix::from_rows_i64(&[vec![4], vec![9]], 1);
        let x = s.solve(&b).expect("solvable system");
        assert_eq!(&(&m * &x), &b);
        let b2 = IntMatrix::from_rows_i64(&[vec![1], vec![0]], 1);
        assert!(s.solve(&b2).is_none());
    }

    #[test]
    fn determinant_matches_diagonal_product() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(m.determinant(), BigInt::from(-8));
        assert_eq!(IntMatrix::identity(4).determinant(), BigInt::one());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |entries| {
                let mut m = IntMatrix::zero(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, BigInt::from(entries[i * c + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn snf_properties(m in small_matrix()) {
            let s = smith_normal_form(&m);
            check_decomposition(&m, &s);
        }

        #[test]
        fn snf_idempotent_on_diagonal(m in small_matrix()) {
            let s = smith_normal_form(&m);
            let again = smith_normal_form(s.d());
            prop_assert_eq!(again.d(), s.d());
        }

        #[test]
        fn kernel_columns_annihilate(m in small_matrix()) {
            let s = smith_normal_form(&m);
            let k = s.kernel_basis();
            prop_assert!((&m * &k).is_zero());
            // saturation: rank(M) + kernel dimension = cols
            prop_assert_eq!(s.rank() + k.cols(), m.cols());
        }
    }
}
