use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_entries(
            rows,
            cols,
            entries.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self::from_entries(r, c, entries)
    }

    /// Matrix with the given columns (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
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

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_entries(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| -a).collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a * k).collect(),
        )
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// Submatrix keeping the given rows (in order).
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m[(i, c)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Submatrix keeping the given columns (in order).
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m[(r, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_multiple_of_row(&mut self, src: usize, dst: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    fn add_multiple_of_col(&mut self, src: usize, dst: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

/// Smith normal form `U * A * V = S` with `U`, `V` unimodular and `S`
/// diagonal, nonnegative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    rank: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries d_1 | d_2 | ... | d_r.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form with the minimal-absolute-value pivot rule and
/// deterministic (row, col) tie-break.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0usize;

    'outer: while t < m.min(n) {
        // Pivot: minimal nonzero absolute value in the trailing block,
        // tie-broken by (row, col).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some(p) => {
                        if s[(i, j)].abs() < s[p].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row and column t; restart if a remainder smaller than the
        // pivot shows up.
        let mut dirty = false;
        for i in (t + 1)..m {
            if !s[(i, t)].is_zero() {
                let q = div_nearest(&s[(i, t)], &s[(t, t)]);
                s.add_multiple_of_row(t, i, &-&q);
                u.add_multiple_of_row(t, i, &-&q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in (t + 1)..n {
            if !s[(t, j)].is_zero() {
                let q = div_nearest(&s[(t, j)], &s[(t, t)]);
                s.add_multiple_of_col(t, j, &-&q);
                v.add_multiple_of_col(t, j, &-&q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue 'outer;
        }
        // Pivot must divide the whole trailing block so the diagonal chain
        // comes out sorted by divisibility.
        for i in (t + 1)..m {
            for j in (t + 1)..n {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    s.add_multiple_of_row(i, t, &BigInt::one());
                    u.add_multiple_of_row(i, t, &BigInt::one());
                    continue 'outer;
                }
            }
        }
        t += 1;
    }

    for i in 0..m.min(n) {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    let rank = (0..m.min(n)).take_while(|&i| !s[(i, i)].is_zero()).count();
    debug_assert_eq!(u.mul(a).mul(&v), s, "SNF postcondition U*A*V = S");
    SmithForm { u, s, v, rank }
}

/// Quotient rounded to nearest (ties toward the euclidean choice), keeping
/// remainders at most half the divisor during elimination.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r * 2u8).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the integer kernel lattice of `a` (columns of the result). The
/// basis is saturated: every integer solution of `a x = 0` is an integer
/// combination of it.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let free: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_cols(&free)
}

/// One integer solution of `a x = b`, if any.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < snf.rank() {
            let d = &snf.s[(i, i)];
            let (q, rem) = ub[i].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    debug_assert!(snf.divisors().iter().all(One::is_one), "not unimodular");
    snf.v.mul(&snf.u)
}

/// Columns of `lat` spanning `span(lat) ∩ {x : proj x = 0}` where `proj`
/// selects coordinates required to vanish.
pub fn lattice_intersect_coordinate_kernel(lat: &IntMatrix, vanish_rows: &[usize]) -> IntMatrix {
    if vanish_rows.is_empty() {
        return lat.clone();
    }
    let proj = lat.select_rows(vanish_rows);
    let k = kernel(&proj);
    lat.mul(&k)
}

/// Determinant by fraction-free elimination (small matrices only).
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    // Bareiss algorithm.
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
            match swap {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}
