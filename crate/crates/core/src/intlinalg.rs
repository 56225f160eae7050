//! Exact integer linear algebra: determinants, Smith normal form, abelian
//! group invariants and factorization of unimodular matrices into
//! elementary row operations.
//!
//! Convention used across the crate: rows are relations, columns are
//! generators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Panics if the rows are ragged; intended for literals.
    pub fn from_rows_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows, cols, data }
    }

    /// Square or rectangular literal from nested arrays.
    pub fn from_i64<const C: usize>(entries: &[[i64; C]]) -> Self {
        let rows: Vec<Vec<i64>> = entries.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows_i64(entries.len(), C, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("entry fits in i64")
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn from_grid(rows: usize, cols: usize, grid: Vec<Vec<BigInt>>) -> IntMatrix {
        IntMatrix { rows, cols, data: grid.into_iter().flatten().collect() }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_grid();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Parse the matrix text format: a `rows cols` line followed by `rows`
    /// lines of integers. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(0, "empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| Error::parse(ln, format!("bad dimension `{s}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(ln, "expected `rows cols`"));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, line) = lines.next().ok_or_else(|| Error::parse(0, "too few matrix rows"))?;
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| Error::parse(ln, format!("bad integer `{s}`"))))
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::parse(ln, format!("expected {cols} entries, found {}", row.len())));
            }
            data.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data after matrix"));
        }
        IntMatrix::from_vec(rows, cols, data)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn det_int(m: &IntMatrix) -> Result<BigInt> {
    m.det()
}

/// Elementary row operation; indices are 0-based internally and printed
/// 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryOp {
    /// row `target` += `factor` · row `source`
    AddMultiple {
        target: usize,
        source: usize,
        factor: i64,
    },
    Swap(usize, usize),
    Negate(usize),
}

impl ElementaryOp {
    pub fn inverse(self) -> ElementaryOp {
        match self {
            ElementaryOp::AddMultiple { target, source, factor } => {
                ElementaryOp::AddMultiple { target, source, factor: -factor }
            }
            other => other,
        }
    }

    fn max_index(self) -> usize {
        match self {
            ElementaryOp::AddMultiple { target, source, .. } => target.max(source),
            ElementaryOp::Swap(i, j) => i.max(j),
            ElementaryOp::Negate(i) => i,
        }
    }

    /// Apply as a row operation (left multiplication by the elementary matrix).
    fn apply_rows(self, a: &mut [Vec<BigInt>]) {
        match self {
            ElementaryOp::AddMultiple { target, source, factor } => {
                let c = BigInt::from(factor);
                let src = a[source].clone();
                for (x, s) in a[target].iter_mut().zip(src) {
                    *x += &c * s;
                }
            }
            ElementaryOp::Swap(i, j) => a.swap(i, j),
            ElementaryOp::Negate(i) => a[i].iter_mut().for_each(|x| *x = -x.clone()),
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementaryOp::AddMultiple { target, source, factor } => {
                write!(f, "AddMultiple({},{},{})", target + 1, source + 1, factor)
            }
            ElementaryOp::Swap(i, j) => write!(f, "Swap({},{})", i + 1, j + 1),
            ElementaryOp::Negate(i) => write!(f, "Negate({})", i + 1),
        }
    }
}

/// Product of the elementary matrices, applied to the identity in order as
/// left multiplications: `ops = [E1, E2, ...]` gives `... E2 E1`.
pub fn replay_elementary(ops: &[ElementaryOp], n: usize) -> Result<IntMatrix> {
    let mut a = IntMatrix::identity(n).to_grid();
    for op in ops {
        if op.max_index() >= n {
            return Err(Error::Dimension(format!("{op} out of range for rank {n}")));
        }
        if let ElementaryOp::AddMultiple { target, source, .. } = *op {
            if target == source {
                return Err(Error::Precondition(format!("{op} has equal indices")));
            }
        }
        op.apply_rows(&mut a);
    }
    Ok(IntMatrix::from_grid(n, n, a))
}

/// Express a unimodular matrix as a product of elementary matrices by
/// Euclidean row reduction. Replaying the result reproduces `m`.
pub fn factor_glnz(m: &IntMatrix) -> Result<Vec<ElementaryOp>> {
    let det = m.det()?;
    if det.abs() != BigInt::one() {
        return Err(Error::Precondition(format!("matrix is not unimodular (det = {det})")));
    }
    let n = m.rows;
    let mut a = m.to_grid();
    let mut reduction: Vec<ElementaryOp> = Vec::new();
    let mut push = |op: ElementaryOp, a: &mut Vec<Vec<BigInt>>| {
        op.apply_rows(a);
        reduction.push(op);
    };
    let to_factor = |q: &BigInt| q.to_i64().ok_or_else(|| Error::Overflow(format!("row-reduction multiplier {q}")));

    for k in 0..n {
        // gcd cascade in column k below the diagonal
        loop {
            let nonzero: Vec<usize> = (k..n).filter(|&i| !a[i][k].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by(|&&i, &&j| a[i][k].abs().cmp(&a[j][k].abs()).then(i.cmp(&j))).unwrap();
            for &q in &nonzero {
                if q == p {
                    continue;
                }
                let quot = a[q][k].div_floor(&a[p][k]);
                if !quot.is_zero() {
                    let factor = -to_factor(&quot)?;
                    push(ElementaryOp::AddMultiple { target: q, source: p, factor }, &mut a);
                }
            }
        }
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("unimodular matrix has a pivot");
        if p != k {
            push(ElementaryOp::Swap(k, p), &mut a);
        }
        if a[k][k].is_negative() {
            push(ElementaryOp::Negate(k), &mut a);
        }
    }
    // upper unitriangular now; clear above the diagonal
    for k in (0..n).rev() {
        for i in 0..k {
            if !a[i][k].is_zero() {
                let factor = -to_factor(&a[i][k])?;
                push(ElementaryOp::AddMultiple { target: i, source: k, factor }, &mut a);
            }
        }
    }
    // E_k ... E_1 m = I  =>  m = E_1^-1 ... E_k^-1
    Ok(reduction.into_iter().rev().map(ElementaryOp::inverse).collect())
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        AbelianGroupInvariants { free_rank, torsion }
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Self {
        AbelianGroupInvariants { free_rank, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum with a free summand of the given rank.
    pub fn with_extra_free(mut self, rank: usize) -> Self {
        self.free_rank += rank;
        self
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct SnfWork {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl SnfWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for r in v {
                r.swap(i, j);
            }
        }
    }

    /// row dst += c · row src
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], dst: usize, src: usize, c: &BigInt) {
            let s = m[src].clone();
            for (x, y) in m[dst].iter_mut().zip(s) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        go(&mut self.a, dst, src, c);
        if let Some(u) = &mut self.u {
            go(u, dst, src, c);
        }
    }

    /// col dst += c · col src
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], dst: usize, src: usize, c: &BigInt) {
            for r in m {
                if !r[src].is_zero() {
                    let y = c * &r[src];
                    r[dst] += y;
                }
            }
        }
        go(&mut self.a, dst, src, c);
        if let Some(v) = &mut self.v {
            go(v, dst, src, c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a[i].iter_mut().for_each(|x| *x = -x.clone());
        if let Some(u) = &mut self.u {
            u[i].iter_mut().for_each(|x| *x = -x.clone());
        }
    }

    fn run(&mut self, rows: usize, cols: usize) {
        for t in 0..rows.min(cols) {
            loop {
                // smallest nonzero |entry| in the trailing block, ties by (row, col)
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = &self.a[i][j];
                        if x.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { return };
                if pi != t {
                    self.swap_rows(t, pi);
                }
                if pj != t {
                    self.swap_cols(t, pj);
                }
                let p = self.a[t][t].clone();
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&p);
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&p);
                        self.add_col(j, t, &-q);
                    }
                }
                let dirty =
                    (t + 1..rows).any(|i| !self.a[i][t].is_zero()) || (t + 1..cols).any(|j| !self.a[t][j].is_zero());
                if dirty {
                    continue;
                }
                // enforce divisibility of the trailing block by the pivot
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transforms: `u · m · v = s`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = SnfWork {
        a: m.to_grid(),
        u: Some(IntMatrix::identity(m.rows).to_grid()),
        v: Some(IntMatrix::identity(m.cols).to_grid()),
    };
    w.run(m.rows, m.cols);
    SmithForm {
        u: IntMatrix::from_grid(m.rows, m.rows, w.u.unwrap()),
        s: IntMatrix::from_grid(m.rows, m.cols, w.a),
        v: IntMatrix::from_grid(m.cols, m.cols, w.v.unwrap()),
    }
}

/// Diagonal of the Smith normal form, without tracking transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut w = SnfWork { a: m.to_grid(), u: None, v: None };
    w.run(m.rows, m.cols);
    (0..m.rows.min(m.cols)).map(|i| w.a[i][i].clone()).collect()
}

/// Invariants of `Z^cols / (row span of m)`.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianGroupInvariants {
    let diag = smith_diagonal(m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianGroupInvariants {
        free_rank: m.cols - nonzero,
        torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
    }
}
