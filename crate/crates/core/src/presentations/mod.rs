//! Finite group presentations and the operations on them.

mod lot;
mod tietze;

pub use lot::{dot_export, wirtinger_relator, Log, LogEdge, NotWirtinger};
pub use tietze::{TietzeScript, TietzeStep};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlinalg::{cokernel_invariants, smith_normal_form, AbelianGroupInvariants, IntMatrix};
use crate::laurent::to_i64;
use crate::words::{Generator, Word};

/// Generators and relators; a relator `w` stands for `w = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        for r in &relators {
            for (g, _) in r.syllables() {
                if !generators.contains(g) {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parse `gens a b ...` and `rel` lines from text and build.
    pub fn from_strs(gens: &[&str], rels: &[&str]) -> Result<Self> {
        let generators = gens.iter().map(|g| Generator::new(g)).collect::<Result<Vec<_>>>()?;
        let relators = rels.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>>>()?;
        Presentation::new(generators, relators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// Presentation with one more relator.
    pub fn with_relator(&self, r: Word) -> Result<Presentation> {
        let mut rels = self.relators.clone();
        rels.push(r);
        Presentation::new(self.generators.clone(), rels)
    }

    /// Exponent sums of the relators; rows are relators, columns generators.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(&self.generators).expect("relators use listed generators"))
            .collect();
        IntMatrix::from_rows_i64(self.relators.len(), self.generators.len(), &rows)
    }

    pub fn abelianization(&self) -> AbelianGroupInvariants {
        cokernel_invariants(&self.exponent_matrix())
    }

    /// Image of each generator under the projection onto the infinite
    /// cyclic abelianization, signed so the first nonzero weight is positive.
    pub fn weight_vector(&self) -> Result<Vec<i64>> {
        let ab = self.abelianization();
        if !ab.is_infinite_cyclic() {
            return Err(Error::NotInfiniteCyclic(ab.to_string()));
        }
        let e = self.exponent_matrix();
        let snf = smith_normal_form(&e);
        let n = self.generators.len();
        // U E V = S; the only zero diagonal position is the last column, and
        // x ↦ (x V)_last kills every relator row.
        let col =
            (0..n).find(|&j| j >= e.rows() || snf.s.get(j, j).is_zero()).expect("rank-one cokernel has a free column");
        let mut w: Vec<i64> = (0..n).map(|i| to_i64(snf.v.get(i, col))).collect::<Result<_>>()?;
        if w.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(w)
    }

    /// Weight of each generator as a lookup.
    pub fn weight_of(&self, weights: &[i64], g: &Generator) -> Option<i64> {
        self.generator_index(g).map(|i| weights[i])
    }

    /// Recognize a Wirtinger presentation and extract its labeled oriented graph.
    pub fn is_wirtinger(&self) -> std::result::Result<Log, NotWirtinger> {
        lot::recognize(self)
    }

    /// Rewrite so that every edge label is a single generator with exponent +1.
    pub fn expand_length1(&self) -> Result<Presentation> {
        lot::expand_length1(self)
    }

    /// Add generator `name` with defining relation `name = defining`, stored
    /// as the relator `name⁻¹ · defining`.
    pub fn introduce_generator(&self, name: &Generator, defining: &Word) -> Result<Presentation> {
        if self.generators.contains(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let mut gens = self.generators.clone();
        gens.push(name.clone());
        let mut rels = self.relators.clone();
        rels.push(Word::generator(name.clone()).inverse().product(defining));
        Presentation::new(gens, rels)
    }

    /// Remove `gen` using the relation `gen = replacement`, which must be
    /// carried by relator `relator_index` (0-based) up to cyclic rotation and
    /// inversion. That relator is dropped and `replacement` is substituted
    /// everywhere else.
    pub fn eliminate_generator(
        &self,
        gen: &Generator,
        replacement: &Word,
        relator_index: usize,
    ) -> Result<Presentation> {
        let gi = self.generator_index(gen).ok_or_else(|| Error::UnknownGenerator(gen.to_string()))?;
        if replacement.contains(gen) {
            return Err(Error::Precondition(format!("replacement for {gen} mentions {gen}")));
        }
        let rel = self
            .relators
            .get(relator_index)
            .ok_or_else(|| Error::Precondition(format!("relator index {} out of range", relator_index + 1)))?;
        let defining = Word::generator(gen.clone()).product(&replacement.inverse());
        if !rel.is_cyclically_equal_up_to_inverse(&defining) {
            return Err(Error::Precondition(format!(
                "relator {} ({rel}) does not express {gen} = {replacement}",
                relator_index + 1
            )));
        }
        let mut gens = self.generators.clone();
        gens.remove(gi);
        let rels = self
            .relators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != relator_index)
            .map(|(_, r)| r.substitute(|g| (g == gen).then(|| replacement.clone())))
            .collect();
        Presentation::new(gens, rels)
    }

    /// Replace relator `index` by `new`.
    pub(crate) fn replace_relator(&self, index: usize, new: Word) -> Result<Presentation> {
        let mut rels = self.relators.clone();
        rels[index] = new;
        Presentation::new(self.generators.clone(), rels)
    }

    /// Rename generators; `rename` must be injective on the generator list.
    pub fn rename(&self, mut rename: impl FnMut(&Generator) -> Generator) -> Result<Presentation> {
        let gens: Vec<Generator> = self.generators.iter().map(&mut rename).collect();
        let pairs: Vec<(Generator, Generator)> = self.generators.iter().cloned().zip(gens.iter().cloned()).collect();
        let rels = self
            .relators
            .iter()
            .map(|r| r.substitute(|g| pairs.iter().find(|(a, _)| a == g).map(|(_, b)| Word::generator(b.clone()))))
            .collect();
        Presentation::new(gens, rels)
    }

    /// Parse the presentation file format: `#` comment lines, one
    /// `gens <name> ...` line, then `rel <word>` or `rel <word> = <word>` lines.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut gens: Option<Vec<Generator>> = None;
        let mut rels = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("gens") => {
                    if gens.is_some() {
                        return Err(Error::parse(ln, "duplicate `gens` line"));
                    }
                    let g = toks
                        .map(|n| Generator::new(n).map_err(|_| Error::parse(ln, format!("bad generator `{n}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    gens = Some(g);
                }
                Some("rel") => {
                    if gens.is_none() {
                        return Err(Error::parse(ln, "`rel` before `gens`"));
                    }
                    let rest: Vec<&str> = toks.collect();
                    let w = match rest.iter().position(|t| *t == "=") {
                        Some(eq) => {
                            let lhs = Word::parse_tokens(rest[..eq].iter().copied(), ln)?;
                            let rhs = Word::parse_tokens(rest[eq + 1..].iter().copied(), ln)?;
                            lhs.product(&rhs.inverse())
                        }
                        None => Word::parse_tokens(rest.iter().copied(), ln)?,
                    };
                    rels.push(w);
                }
                Some(other) => return Err(Error::parse(ln, format!("unknown directive `{other}`"))),
                None => {}
            }
        }
        let gens = gens.ok_or_else(|| Error::parse(0, "missing `gens` line"))?;
        Presentation::new(gens, rels).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("gens");
        for g in &self.generators {
            s.push(' ');
            s.push_str(g.name());
        }
        s.push('\n');
        for r in &self.relators {
            if r.is_identity() {
                s.push_str("rel\n");
            } else {
                s.push_str(&format!("rel {r}\n"));
            }
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| format!("{r:?}")).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::gen;

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        Presentation::from_strs(gens, rels).unwrap()
    }

    fn spun_trefoil() -> Presentation {
        pres(&["t", "u"], &["u^-1 t u t u^-1 t^-1"])
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(spun_trefoil().deficiency(), 1);
        assert_eq!(pres(&["x"], &[]).deficiency(), 1);
        assert_eq!(pres(&["x", "y"], &["x", "y"]).deficiency(), 0);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(pres(&["x"], &["x^3"]).abelianization(), AbelianGroupInvariants::from_i64(0, &[3]));
        assert!(spun_trefoil().abelianization().is_infinite_cyclic());
        assert_eq!(pres(&["x", "y"], &[]).abelianization(), AbelianGroupInvariants::from_i64(2, &[]));
    }

    #[test]
    fn weight_vector_examples() {
        assert_eq!(spun_trefoil().weight_vector().unwrap(), vec![1, 1]);
        assert_eq!(pres(&["t"], &[]).weight_vector().unwrap(), vec![1]);
        let rewrite = pres(&["b", "t"], &["b^-3 t^-1 b^4 t b^-3 t^-1 b^4 t b^-3"]);
        assert_eq!(rewrite.weight_vector().unwrap(), vec![0, 1]);
        assert!(pres(&["x"], &["x^3"]).weight_vector().is_err());
        // generators of weight -1 get the orientation of the first nonzero one
        let p = pres(&["a", "b"], &["a b"]);
        assert_eq!(p.weight_vector().unwrap(), vec![1, -1]);
    }

    #[test]
    fn tietze_round_trip() {
        let p = spun_trefoil();
        let q = p.introduce_generator(&gen("v"), &Word::parse("t u").unwrap()).unwrap();
        assert_eq!(q.generators().len(), 3);
        assert_eq!(q.relators().len(), 2);
        let back = q.eliminate_generator(&gen("v"), &Word::parse("t u").unwrap(), 1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn eliminate_examples() {
        let p = pres(&["x", "t"], &["x t^-1"]);
        let q = p.eliminate_generator(&gen("x"), &Word::parse("t").unwrap(), 0).unwrap();
        assert_eq!(q, pres(&["t"], &[]));
        // rotated and inverted forms are accepted
        let p = pres(&["x", "t", "a"], &["a t x^-1 a^-1", "x a"]);
        let q = p.eliminate_generator(&gen("x"), &Word::parse("t").unwrap(), 0).unwrap();
        assert_eq!(q, pres(&["t", "a"], &["t a"]));
        let p2 = pres(&["x", "t", "a"], &["a t^-1 x^-1"]);
        let q = p2.eliminate_generator(&gen("x"), &Word::parse("a t^-1").unwrap(), 0).unwrap();
        assert_eq!(q.relators().len(), 0);
        // errors
        assert!(p.eliminate_generator(&gen("x"), &Word::parse("x a").unwrap(), 0).is_err());
        assert!(p.eliminate_generator(&gen("x"), &Word::parse("a t").unwrap(), 0).is_err());
        assert!(p.eliminate_generator(&gen("x"), &Word::parse("a t").unwrap(), 7).is_err());
        assert!(p.introduce_generator(&gen("a"), &Word::identity()).is_err());
    }

    #[test]
    fn file_format() {
        let text = "# spun trefoil\ngens t u\nrel u = t u t^-1\nrel t u^2\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.relators()[0], Word::parse("u t u^-1 t^-1").unwrap());
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        assert!(Presentation::parse("rel x\n").is_err());
        assert!(Presentation::parse("gens x\nrel y\n").is_err());
        assert!(Presentation::parse("gens x x\n").is_err());
        assert!(Presentation::parse("gens x\nfoo\n").is_err());
        let id = pres(&["x"], &[""]);
        assert_eq!(Presentation::parse(&id.to_text()).unwrap(), id);
    }
}
