//! Exact arithmetic in Λ = Z[t, t⁻¹] and matrices over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// `Σ coeffs[i] · t^(low + i)`. Normalized: the first and last coefficients
/// are nonzero; the zero polynomial has no coefficients and `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ordinary polynomial `c0 + c1 t + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        LaurentPoly::from_i64s(0, coeffs)
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent; equals `low` for the zero polynomial.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// `len(coeffs) - 1`; zero for the zero polynomial.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// ε(p) = p(1).
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `q` with `(t - 1) q = self`; requires ε(self) = 0.
    pub fn div_exact_t_minus_1(&self) -> Result<LaurentPoly> {
        if !self.augmentation().is_zero() {
            return Err(Error::Precondition(format!("{self} is not divisible by t - 1")));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // (t-1)q has coefficient d_{k-1} - d_k at low + k, so d_k = -(c_0 + ... + c_k)
        let mut acc = BigInt::zero();
        let mut q = Vec::with_capacity(self.coeffs.len() - 1);
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            q.push(-acc.clone());
        }
        Ok(LaurentPoly::new(self.low, q))
    }

    /// Exact value at a nonzero integer (a rational when `low < 0`).
    pub fn evaluate_at_int(&self, k: i64) -> Result<BigRational> {
        if k == 0 && self.low < 0 {
            return Err(Error::Precondition("evaluating a negative power of t at 0".into()));
        }
        let x = BigRational::from_integer(BigInt::from(k));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + BigRational::from_integer(c.clone());
        }
        let scale = if self.low >= 0 {
            num_traits::pow(x, self.low as usize)
        } else {
            num_traits::pow(x.recip(), (-self.low) as usize)
        };
        Ok(acc * scale)
    }

    /// Shift so `low = 0` and make the lowest coefficient positive.
    pub fn normalize_unit(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let sign = if self.coeffs[0].is_negative() { -BigInt::one() } else { BigInt::one() };
        LaurentPoly { low: 0, coeffs: self.coeffs.iter().map(|c| c * &sign).collect() }
    }

    /// Equality up to multiplication by ±t^k.
    pub fn eq_up_to_unit(&self, other: &LaurentPoly) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Exact quotient `self / d` in Λ, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (q, r) = poly_divrem_exact(&self.coeffs, &d.coeffs)?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::new(self.low - d.low, q))
    }

    /// Greatest common divisor in Λ (units ±t^k divided out), via content
    /// and a primitive remainder sequence in Z[t].
    pub fn gcd_zt(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::Precondition("gcd of two zero polynomials".into())),
            (false, true) => return Ok(self.normalize_unit()),
            (true, false) => return Ok(other.normalize_unit()),
            _ => {}
        }
        let content = content(&self.coeffs).gcd(&content(&other.coeffs));
        let mut a = primitive_part(&self.coeffs);
        let mut b = primitive_part(&other.coeffs);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive_part(&r) };
        }
        let g = LaurentPoly::new(0, a.into_iter().map(|c| c * &content).collect());
        Ok(g.normalize_unit())
    }

    /// Text format `poly <low> <c0> ... <cn>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("poly {}", self.low);
        for c in &self.coeffs {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<LaurentPoly> {
        let mut toks = text.split_whitespace();
        if toks.next() != Some("poly") {
            return Err(Error::parse(0, format!("expected `poly <low> <coeffs>`, got `{text}`")));
        }
        let low: i64 = toks
            .next()
            .ok_or_else(|| Error::parse(0, "missing lowest exponent"))?
            .parse()
            .map_err(|_| Error::parse(0, "bad lowest exponent"))?;
        let coeffs = toks
            .map(|s| s.parse::<BigInt>().map_err(|_| Error::parse(0, format!("bad coefficient `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly::new(low, coeffs))
    }

    /// Comma-separated coefficients `c0,c1,...`, lowest exponent 0.
    pub fn parse_coeffs(text: &str) -> Result<LaurentPoly> {
        let coeffs = text
            .split(',')
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::parse(0, format!("bad coefficient `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly::new(0, coeffs))
    }
}

fn content(c: &[BigInt]) -> BigInt {
    c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive_part(c: &[BigInt]) -> Vec<BigInt> {
    let g = content(c);
    let lead_sign = if c.last().is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let g = g * lead_sign;
    let mut v: Vec<BigInt> = c.iter().map(|x| x / &g).collect();
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

/// lc(b)^(deg a - deg b + 1) · a  mod  b, dense coefficient vectors.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bi;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Integer long division from the top; `None` if a leading coefficient
/// does not divide.
fn poly_divrem_exact(a: &[BigInt], d: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return Some((Vec::new(), r));
    }
    let dd = d.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let top = r[k + dd].clone();
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(&d[dd]);
        if !rem.is_zero() {
            return None;
        }
        for (i, di) in d.iter().enumerate() {
            r[k + i] -= &c * di;
        }
        q[k] = c;
    }
    Some((q, r))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let coeffs = (low..=high).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

pub fn augmentation(p: &LaurentPoly) -> BigInt {
    p.augmentation()
}

pub fn div_exact_t_minus_1(p: &LaurentPoly) -> Result<LaurentPoly> {
    p.div_exact_t_minus_1()
}

pub fn evaluate_at_int(p: &LaurentPoly, k: i64) -> Result<BigRational> {
    p.evaluate_at_int(k)
}

pub fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    p.normalize_unit()
}

pub fn eq_up_to_unit(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p.eq_up_to_unit(q)
}

pub fn gcd_zt(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.gcd_zt(q)
}

/// Rectangular matrix over Λ, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LambdaMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LambdaMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged Λ-matrix".into()));
        }
        Ok(LambdaMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// `t·a + b` for integer matrices of equal shape.
    pub fn linear(a: &IntMatrix, b: &IntMatrix) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        let mut m = LambdaMatrix::zeros(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, LaurentPoly::new(0, vec![b.get(i, j).clone(), a.get(i, j).clone()]));
            }
        }
        m
    }

    pub fn diagonal(entries: &[LaurentPoly]) -> Self {
        let n = entries.len();
        let mut m = LambdaMatrix::zeros(n, n);
        for (i, p) in entries.iter().enumerate() {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.cols + j] = p;
    }

    /// Drop column `j`.
    pub fn without_column(&self, j: usize) -> LambdaMatrix {
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for k in 0..self.cols {
                if k != j {
                    entries.push(self.get(i, k).clone());
                }
            }
        }
        LambdaMatrix { rows: self.rows, cols: self.cols - 1, entries }
    }

    /// Determinant by fraction-free elimination over Λ.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} Λ-matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Entrywise substitution `t ↦ C_N` where `C_N` is the cyclic shift on
    /// Z^N (`C e_a = e_(a+1 mod N)`). Block `(i, j)` of the result is the
    /// image of entry `(i, j)`; row index is `i·N + b`, column `j·N + a`.
    pub fn evaluate_cyclic(&self, n: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        let nn = n as i64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                for (idx, c) in p.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = (p.low() + idx as i64).rem_euclid(nn) as usize;
                    for a in 0..n {
                        let b = (a + k) % n;
                        let (r, s) = (i * n + b, j * n + a);
                        let v = out.get(r, s) + c;
                        out.set(r, s, v);
                    }
                }
            }
        }
        out
    }

    /// Entrywise value at an integer; requires every entry to be a genuine
    /// polynomial (`low ≥ 0`) or `k = ±1`.
    pub fn evaluate_int(&self, k: i64) -> Result<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j).evaluate_at_int(k)?;
                if !v.is_integer() {
                    return Err(Error::Precondition(format!("entry ({i},{j}) has a non-integer value at {k}")));
                }
                out.set(i, j, v.to_integer());
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push_str(&self.get(i, j).to_text());
                s.push('\n');
            }
        }
        s
    }
}

impl fmt::Debug for LambdaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub fn det_lambda(m: &LambdaMatrix) -> Result<LaurentPoly> {
    m.det()
}

/// Small integer helper used by callers that need an `i64` exponent.
pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    fn pl(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(low, c)
    }

    fn cofactor_det(m: &LambdaMatrix) -> LaurentPoly {
        let n = m.rows();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            let mut minor = Vec::new();
            for i in 1..n {
                minor.push((0..n).filter(|&k| k != j).map(|k| m.get(i, k).clone()).collect::<Vec<_>>());
            }
            let sub = if n == 1 { LaurentPoly::one() } else { cofactor_det(&LambdaMatrix::from_rows(minor).unwrap()) };
            let term = m.get(0, j) * &sub;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let q = p(&[3, 0, -2]);
        assert!((&q + &(-&q)).is_zero());
        assert_eq!(&p(&[1, -1, 1]) * &LaurentPoly::one(), p(&[1, -1, 1]));
        assert_eq!(pl(-1, &[0, 0, 5, 0]), pl(1, &[5]));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(p(&[1, -1, 1]).augmentation(), BigInt::from(1));
        assert_eq!(pl(-3, &[1]).augmentation(), BigInt::from(1));
        assert_eq!(LaurentPoly::zero().augmentation(), BigInt::from(0));
    }

    #[test]
    fn div_t_minus_1_examples() {
        let alpha = p(&[1, -1, 1]);
        let beta = (&alpha - &LaurentPoly::one()).div_exact_t_minus_1().unwrap();
        assert_eq!(beta, LaurentPoly::t());
        assert_eq!(&(&p(&[-1, 1]) * &beta) + &LaurentPoly::one(), alpha);
        assert_eq!(p(&[-1, 1]).div_exact_t_minus_1().unwrap(), LaurentPoly::one());
        assert_eq!(p(&[-1, 0, 1]).div_exact_t_minus_1().unwrap(), p(&[1, 1]));
        assert!(p(&[1, 1]).div_exact_t_minus_1().is_err());
    }

    #[test]
    fn evaluate_examples() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(p(&[1, -1, 1]).evaluate_at_int(2).unwrap(), r(3, 1));
        assert_eq!(pl(-1, &[1]).evaluate_at_int(2).unwrap(), r(1, 2));
        assert_eq!(pl(-2, &[4, 0, 1]).evaluate_at_int(1).unwrap(), r(5, 1));
        assert!(pl(-1, &[1]).evaluate_at_int(0).is_err());
        assert_eq!(p(&[7]).evaluate_at_int(0).unwrap(), r(7, 1));
    }

    #[test]
    fn det_examples() {
        let m = LambdaMatrix::linear(&IntMatrix::from_i64(&[[1]]), &IntMatrix::from_i64(&[[0]]));
        assert_eq!(m.det().unwrap(), LaurentPoly::t());
        let m = LambdaMatrix::from_rows(vec![vec![p(&[-1, 2])]]).unwrap();
        assert_eq!(m.det().unwrap(), p(&[-1, 2]));
        // tM + (I - M) with M = [[0,-1],[1,1]]
        let mm = IntMatrix::from_i64(&[[0, -1], [1, 1]]);
        let m = LambdaMatrix::linear(&mm, &IntMatrix::identity(2).sub(&mm));
        assert!(m.det().unwrap().eq_up_to_unit(&p(&[1, -1, 1])));
        assert!(LambdaMatrix::zeros(1, 2).det().is_err());
    }

    #[test]
    fn unit_normalization() {
        assert_eq!(pl(-1, &[-1, 1, -1]).normalize_unit(), p(&[1, -1, 1]));
        assert!(LaurentPoly::zero().normalize_unit().is_zero());
        assert!(p(&[-1, 2]).eq_up_to_unit(&p(&[1, -2])));
        assert!(!p(&[-1, 2]).eq_up_to_unit(&p(&[2, -1])));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd_zt(&p(&[-1, 1])).unwrap(), p(&[1, -1]));
        let q = pl(2, &[-3, 0, 6]);
        assert_eq!(q.gcd_zt(&LaurentPoly::zero()).unwrap(), q.normalize_unit());
        assert_eq!(p(&[-1, 2]).gcd_zt(&LaurentPoly::t()).unwrap(), LaurentPoly::one());
        assert_eq!(p(&[2, 4]).gcd_zt(&p(&[6, 12, 0, 0])).unwrap(), p(&[2, 4]));
        assert!(LaurentPoly::zero().gcd_zt(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn cyclic_evaluation() {
        // 1 - t + t^2 at N = 2: 1 - C + 1 = [[2,-1],[-1,2]]
        let m = LambdaMatrix::from_rows(vec![vec![p(&[1, -1, 1])]]).unwrap();
        assert_eq!(m.evaluate_cyclic(2), IntMatrix::from_i64(&[[2, -1], [-1, 2]]));
        // t^-1 is the inverse shift
        let m = LambdaMatrix::from_rows(vec![vec![pl(-1, &[1])]]).unwrap();
        assert_eq!(m.evaluate_cyclic(3), IntMatrix::from_i64(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]));
    }

    #[test]
    fn text_formats() {
        let q = pl(-2, &[1, 0, -3]);
        assert_eq!(q.to_text(), "poly -2 1 0 -3");
        assert_eq!(LaurentPoly::parse_text(&q.to_text()).unwrap(), q);
        assert_eq!(LaurentPoly::parse_coeffs("1,-1,1").unwrap(), p(&[1, -1, 1]));
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(pl(-1, &[-2]).to_string(), "-2t^-1");
        assert!(LaurentPoly::parse_text("poly x 1").is_err());
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..=3, prop::collection::vec(-4i64..=4, 0..5)).prop_map(|(l, c)| pl(l, &c))
    }

    fn zt_strategy() -> impl Strategy<Value = LaurentPoly> {
        (0i64..=2, prop::collection::vec(-3i64..=3, 0..4)).prop_map(|(l, c)| pl(l, &c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        }

        #[test]
        fn div_round_trip(a in poly_strategy()) {
            let q = &a - &LaurentPoly::constant(a.augmentation());
            let d = q.div_exact_t_minus_1().unwrap();
            prop_assert_eq!(&p(&[-1, 1]) * &d, q);
        }

        #[test]
        fn gcd_divides(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd_zt(&b).unwrap();
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
            // a common factor is found
            prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
            let g2 = (&a * &c).gcd_zt(&(&b * &c)).unwrap();
            prop_assert!(g2.div_exact(&c.normalize_unit()).is_some());
        }

        #[test]
        fn det_matches_cofactor_and_specializes(
            n in 1usize..=3,
            entries in prop::collection::vec(zt_strategy(), 9),
        ) {
            let rows: Vec<Vec<LaurentPoly>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
            let m = LambdaMatrix::from_rows(rows).unwrap();
            let d = m.det().unwrap();
            prop_assert_eq!(&d, &cofactor_det(&m));
            for k in [2i64, 3, -2] {
                let ev = m.evaluate_int(k).unwrap().det().unwrap();
                prop_assert_eq!(d.evaluate_at_int(k).unwrap(), BigRational::from_integer(ev));
            }
        }
    }
}
