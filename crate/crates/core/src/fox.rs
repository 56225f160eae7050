//! Fox free differential calculus and Alexander invariants.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::{LambdaMatrix, LaurentPoly};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

/// Element of the integral group ring of a free group.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(w.product(v), *c);
        }
        out
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.product(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if k > 0 {
                f.write_str(" ")?;
            }
            let mag = c.unsigned_abs();
            match (mag, w.is_identity()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "[{w}]")?,
                _ => write!(f, "{mag}[{w}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fox derivative `∂w/∂g`.
pub fn fox_derivative(w: &Word, g: &Generator) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::identity();
    for (h, e) in w.syllables() {
        if h == g {
            if *e > 0 {
                for k in 0..*e {
                    out.add_term(prefix.product(&Word::power_of(g.clone(), k)), 1);
                }
            } else {
                for k in 1..=-*e {
                    out.add_term(prefix.product(&Word::power_of(g.clone(), -k)), -1);
                }
            }
        }
        prefix = prefix.product(&Word::power_of(h.clone(), *e));
    }
    out
}

/// Push forward along `g ↦ t^{weight(g)}`.
pub fn abelianize_to_lambda(e: &GroupRingElem, weights: &BTreeMap<Generator, i64>) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (w, c) in e.terms() {
        let mut deg = 0i64;
        for (g, k) in w.syllables() {
            let wt = weights.get(g).ok_or_else(|| Error::UnknownGenerator(format!("no weight for {g}")))?;
            deg += wt * k;
        }
        out = &out + &LaurentPoly::monomial(BigInt::from(c), deg);
    }
    Ok(out)
}

/// Generator weights of a presentation with infinite cyclic abelianization.
pub fn weight_map(p: &Presentation) -> Result<BTreeMap<Generator, i64>> {
    if !p.abelianization().is_infinite_cyclic() {
        return Err(Error::NotInfiniteCyclic(p.abelianization().to_string()));
    }
    let w = p.weight_vector()?;
    Ok(p.generators().iter().cloned().zip(w).collect())
}

/// Jacobian of Fox derivatives pushed to Λ; rows are relators.
pub fn alexander_matrix(p: &Presentation) -> Result<LambdaMatrix> {
    let weights = weight_map(p)?;
    let rows = p
        .relators()
        .iter()
        .map(|r| {
            p.generators()
                .iter()
                .map(|g| abelianize_to_lambda(&fox_derivative(r, g), &weights))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(LambdaMatrix::zeros(0, p.generators().len()));
    }
    LambdaMatrix::from_rows(rows)
}

/// Alexander polynomial, deleting the column of the first generator of weight ±1.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPoly> {
    let weights = p.weight_vector()?;
    let col = weights
        .iter()
        .position(|w| w.abs() == 1)
        .ok_or_else(|| Error::Precondition("no generator of weight ±1".into()))?;
    alexander_polynomial_deleting(p, col)
}

/// Alexander polynomial computed with column `col` deleted; `col` must have weight ±1.
pub fn alexander_polynomial_deleting(p: &Presentation, col: usize) -> Result<LaurentPoly> {
    if p.deficiency() != 1 {
        return Err(Error::Precondition(format!("deficiency is {}, expected 1", p.deficiency())));
    }
    let m = alexander_matrix(p)?;
    let weights = p.weight_vector()?;
    match weights.get(col) {
        Some(w) if w.abs() == 1 => {}
        _ => return Err(Error::Precondition(format!("column {} does not have weight ±1", col + 1))),
    }
    let minor = m.without_column(col);
    if minor.rows() == 0 {
        return Ok(LaurentPoly::one());
    }
    Ok(minor.det()?.normalize_unit())
}
