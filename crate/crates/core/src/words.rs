//! Free-group words in named generators.
//!
//! Words are stored run-length encoded as `(generator, exponent)` syllables
//! and are always freely reduced, so structural equality is equality in the
//! free group.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// A named free generator. Names are ASCII letters, digits and `_`,
/// starting with a letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(Generator(name.into()))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    /// `prefix` followed by a decimal index, e.g. `s3`.
    pub fn indexed(prefix: &str, index: usize) -> Self {
        Generator::new(&format!("{prefix}{index}")).expect("generator prefix must be a valid name")
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand used throughout tests and constructions.
pub fn gen(name: &str) -> Generator {
    Generator::new(name).expect("invalid generator name")
}

/// A freely reduced word in the free group on named generators.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<(Generator, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: Generator) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn power_of(g: Generator, k: i64) -> Self {
        Word::normalize([(g, k)])
    }

    /// Freely reduce a raw syllable sequence. Zero exponents are dropped.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Generator, i64)>,
    {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for (g, e) in raw {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { syllables: out }
    }

    /// Build from single letters `(generator, ±1)`.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (Generator, i64)>,
    {
        Word::normalize(letters)
    }

    pub fn syllables(&self) -> &[(Generator, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Letter-by-letter expansion; each item has exponent ±1.
    pub fn letters(&self) -> impl Iterator<Item = (Generator, i64)> + '_ {
        self.syllables.iter().flat_map(|(g, e)| {
            let s = e.signum();
            std::iter::repeat_n((g.clone(), s), e.unsigned_abs() as usize)
        })
    }

    pub fn product(&self, other: &Word) -> Word {
        Word::normalize(self.syllables.iter().chain(other.syllables.iter()).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|(g, e)| (g.clone(), -e)).collect() }
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.product(self).product(&by.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            out.extend(base.syllables.iter().cloned());
        }
        Word::normalize(out)
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core: Vec<(Generator, i64)> = self.syllables.clone();
        let mut conj: Vec<(Generator, i64)> = Vec::new();
        while core.len() >= 2 && core[0].0 == core[core.len() - 1].0 {
            let (g, a) = core.remove(0);
            let (_, b) = core.pop().unwrap();
            // self = g^a X g^b = g^a (X g^(a+b)) g^-a
            conj.push((g.clone(), a));
            if a + b != 0 {
                core.push((g, a + b));
            }
        }
        (Word { syllables: core }, Word::normalize(conj))
    }

    /// True when the two words are conjugate in the free group.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        let a: Vec<_> = self.cyclic_reduce().0.letters().collect();
        let b: Vec<_> = other.cyclic_reduce().0.letters().collect();
        is_rotation(&a, &b)
    }

    /// True when `other` is conjugate to `self` or to `self⁻¹`.
    pub fn is_cyclically_equal_up_to_inverse(&self, other: &Word) -> bool {
        self.is_conjugate_to(other) || self.inverse().is_conjugate_to(other)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.syllables.iter().any(|(h, _)| h == g)
    }

    /// Number of letters of `g` (with either sign) in the word.
    pub fn occurrences(&self, g: &Generator) -> usize {
        self.syllables.iter().filter(|(h, _)| h == g).map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Replace generators according to `image`; generators mapped to `None`
    /// are kept.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(&Generator) -> Option<Word>,
    {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for (g, e) in &self.syllables {
            match image(g) {
                Some(w) => out.extend(w.pow(*e).syllables),
                None => out.push((g.clone(), *e)),
            }
        }
        Word::normalize(out)
    }

    /// Exponent sum of each listed generator.
    pub fn exponent_sums(&self, over: &[Generator]) -> Result<Vec<i64>> {
        let mut sums = vec![0i64; over.len()];
        for (g, e) in &self.syllables {
            let i = over.iter().position(|h| h == g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            sums[i] += e;
        }
        Ok(sums)
    }

    /// Parse whitespace-separated tokens `name` or `name^k`.
    pub fn parse(text: &str) -> Result<Word> {
        Word::parse_tokens(text.split_whitespace(), 0)
    }

    pub(crate) fn parse_tokens<'a, I>(tokens: I, line: usize) -> Result<Word>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut raw = Vec::new();
        for tok in tokens {
            let (name, exp) = match tok.split_once('^') {
                Some((n, k)) => {
                    let k: i64 = k.parse().map_err(|_| Error::parse(line, format!("bad exponent in `{tok}`")))?;
                    if k == 0 {
                        return Err(Error::parse(line, format!("zero exponent in `{tok}`")));
                    }
                    (n, k)
                }
                None => (tok, 1),
            };
            let g = Generator::new(name).map_err(|_| Error::parse(line, format!("bad generator `{name}`")))?;
            raw.push((g, exp));
        }
        Ok(Word::normalize(raw))
    }
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|shift| (0..a.len()).all(|i| a[(i + shift) % a.len()] == b[i]))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Shortlex: shorter words first, then syllable-wise by generator name and
/// exponent.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter_len().cmp(&other.letter_len()).then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.product(rhs)
    }
}

/// An endomorphism of the free group on an ordered list of generators,
/// given by the image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEndo {
    domain: Vec<Generator>,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(domain: Vec<Generator>, images: Vec<Word>) -> Result<Self> {
        if domain.len() != images.len() {
            return Err(Error::Dimension(format!("{} generators but {} images", domain.len(), images.len())));
        }
        for (i, g) in domain.iter().enumerate() {
            if domain[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        for w in &images {
            for (g, _) in w.syllables() {
                if !domain.contains(g) {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(FreeEndo { domain, images })
    }

    pub fn identity(domain: Vec<Generator>) -> Self {
        let images = domain.iter().cloned().map(Word::generator).collect();
        FreeEndo { domain, images }
    }

    pub fn rank(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[Generator] {
        &self.domain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut raw = Vec::new();
        for (g, e) in w.syllables() {
            let i = self.domain.iter().position(|h| h == g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            raw.extend(self.images[i].pow(*e).syllables().iter().cloned());
        }
        Ok(Word::normalize(raw))
    }

    /// `self ∘ other`: generator `x_i` maps to `self(other(x_i))`.
    ///
    /// With the row convention of [`FreeEndo::abelianization`], the matrix of
    /// the composite is `other.abelianization() * self.abelianization()`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo> {
        if self.domain != other.domain {
            return Err(Error::Dimension(format!(
                "composing endomorphisms of rank {} and {}",
                self.rank(),
                other.rank()
            )));
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(FreeEndo { domain: self.domain.clone(), images })
    }

    /// Row `i` holds the exponent sums of the image of generator `i`, so a
    /// word with exponent row vector `v` maps to one with `v * A`.
    pub fn abelianization(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> =
            self.images.iter().map(|w| w.exponent_sums(&self.domain).expect("images lie in the domain")).collect();
        IntMatrix::from_rows_i64(self.rank(), self.rank(), &rows)
    }
}

pub fn apply_endo(f: &FreeEndo, w: &Word) -> Result<Word> {
    f.apply(w)
}

pub fn compose_endo(f: &FreeEndo, g: &FreeEndo) -> Result<FreeEndo> {
    f.compose(g)
}
