//! Scripted Tietze transformations.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Generator, Word};

use super::Presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeStep {
    /// New generator `name` defined as `word`.
    Intro { name: Generator, word: Word },
    /// Drop `name`, replacing it by `replacement`; `relator` is 0-based.
    Elim { name: Generator, replacement: Word, relator: usize },
}

impl fmt::Display for TietzeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeStep::Intro { name, word } => write!(f, "intro {name} {word}"),
            TietzeStep::Elim { name, replacement, relator } => {
                write!(f, "elim {name} {replacement} {}", relator + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TietzeScript {
    pub steps: Vec<TietzeStep>,
}

impl TietzeScript {
    /// One step per line: `intro <name> <word>` or
    /// `elim <name> <word> <relator-index>` with a 1-based index.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens: Vec<&str> = line.split_whitespace().collect();
            let keyword = tokens.remove(0);
            let name = tokens
                .first()
                .ok_or_else(|| Error::parse(line_no, "missing generator name"))
                .and_then(|t| Generator::new(t).map_err(|e| Error::parse(line_no, e.to_string())))?;
            tokens.remove(0);
            match keyword {
                "intro" => {
                    let word = Word::parse_tokens(tokens, line_no)?;
                    steps.push(TietzeStep::Intro { name, word });
                }
                "elim" => {
                    let idx_tok = tokens.pop().ok_or_else(|| Error::parse(line_no, "missing relator index"))?;
                    let idx: usize = idx_tok
                        .parse()
                        .ok()
                        .filter(|i| *i >= 1)
                        .ok_or_else(|| Error::parse(line_no, format!("bad relator index {idx_tok}")))?;
                    let replacement = Word::parse_tokens(tokens, line_no)?;
                    steps.push(TietzeStep::Elim { name, replacement, relator: idx - 1 });
                }
                other => return Err(Error::parse(line_no, format!("unknown step {other}"))),
            }
        }
        Ok(TietzeScript { steps })
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    /// Apply every step in order.
    ///
    /// An `elim` whose relator is not literally `name · replacement⁻¹` (up to
    /// rotation and inversion) is still accepted when the two agree after
    /// expanding generators introduced earlier in the script, provided the
    /// defining relators of those generators are still present.
    pub fn run(&self, start: &Presentation) -> Result<Presentation> {
        let mut p = start.clone();
        let mut defs: Vec<(Generator, Word)> = Vec::new();
        for (k, step) in self.steps.iter().enumerate() {
            let wrap = |e: Error| Error::InvalidMove(format!("step {} ({step}): {e}", k + 1));
            match step {
                TietzeStep::Intro { name, word } => {
                    p = p.introduce_generator(name, word).map_err(wrap)?;
                    defs.push((name.clone(), word.clone()));
                }
                TietzeStep::Elim { name, replacement, relator } => {
                    let next = match p.eliminate_generator(name, replacement, *relator) {
                        Ok(q) => q,
                        Err(Error::Precondition(msg)) => {
                            let q = rewrite_with_definitions(&p, &defs, name, replacement, *relator)
                                .ok_or_else(|| wrap(Error::Precondition(msg)))?;
                            q.eliminate_generator(name, replacement, *relator).map_err(wrap)?
                        }
                        Err(e) => return Err(wrap(e)),
                    };
                    p = next;
                    defs.retain(|(g, _)| g != name);
                    for (_, w) in defs.iter_mut() {
                        *w = w.substitute(|g| (g == name).then(|| replacement.clone()));
                    }
                }
            }
        }
        Ok(p)
    }
}

fn expand(w: &Word, defs: &[(Generator, Word)]) -> Word {
    defs.iter().rev().fold(w.clone(), |acc, (g, d)| acc.substitute(|h| (h == g).then(|| d.clone())))
}

/// Replace relator `index` by `name · replacement⁻¹` when the two agree modulo
/// the still-present definitions.
fn rewrite_with_definitions(
    p: &Presentation,
    defs: &[(Generator, Word)],
    name: &Generator,
    replacement: &Word,
    index: usize,
) -> Option<Presentation> {
    let rel = p.relators().get(index)?;
    let target = Word::generator(name.clone()).product(&replacement.inverse());
    if !expand(rel, defs).is_cyclically_equal_up_to_inverse(&expand(&target, defs)) {
        return None;
    }
    // every definition reachable from either side must still be a relator
    let mut needed: Vec<&Generator> = Vec::new();
    let mut queue: Vec<&Word> = vec![rel, &target];
    while let Some(w) = queue.pop() {
        for (g, d) in defs {
            if w.contains(g) && !needed.contains(&g) {
                needed.push(g);
                queue.push(d);
            }
        }
    }
    let others: Vec<&Word> = p.relators().iter().enumerate().filter(|(i, _)| *i != index).map(|(_, r)| r).collect();
    for g in needed {
        let d = &defs.iter().find(|(h, _)| h == g)?.1;
        let def_rel = Word::generator(g.clone()).inverse().product(d);
        if !others.iter().any(|r| r.is_cyclically_equal_up_to_inverse(&def_rel)) {
            return None;
        }
    }
    p.replace_relator(index, target).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::gen;

    const NON_WIRTINGER: &str = "b^-3 t^-1 b^4 t b^-3 t^-1 b^4 t b^-3";
    const SCRIPT: &str = "\
# rewrite into Wirtinger form
intro s1 b^-1 t b
intro s4 b^-4 t b^4
intro s5 b^-5 t b^5
elim b s5^-1 s1 s4^-1 t 1
";

    #[test]
    fn script_round_trip() {
        let s = TietzeScript::parse(SCRIPT).unwrap();
        assert_eq!(s.steps.len(), 4);
        assert_eq!(TietzeScript::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(&s.steps[3], TietzeStep::Elim { relator: 0, .. }));
    }

    #[test]
    fn parse_errors() {
        assert!(TietzeScript::parse("elim b t 0").is_err());
        assert!(TietzeScript::parse("frob x").is_err());
        assert!(TietzeScript::parse("intro").is_err());
        assert!(TietzeScript::parse("elim b").is_err());
    }

    #[test]
    fn script_reaches_wirtinger_form() {
        let p = Presentation::from_strs(&["t", "b"], &[NON_WIRTINGER]).unwrap();
        assert!(p.is_wirtinger().is_err());
        let q = TietzeScript::parse(SCRIPT).unwrap().run(&p).unwrap();
        assert_eq!(q.generators(), &[gen("t"), gen("s1"), gen("s4"), gen("s5")]);
        assert_eq!(q.relators().len(), 3);
        let log = q.is_wirtinger().unwrap();
        assert!(log.is_tree);
        assert!(q.abelianization().is_infinite_cyclic());
    }

    #[test]
    fn literal_elimination_needs_no_definitions() {
        let p = Presentation::from_strs(&["a", "b"], &["a b^-1 a^-1", "b a b"]).unwrap();
        let s = TietzeScript::parse("elim b a^-1 a a 1").unwrap();
        // b = a: relator 1 is a b^-1 a^-1 ~ b^-1
        assert!(s.run(&p).is_err());
        let s = TietzeScript::parse("intro c a b\nelim c a b 3").unwrap();
        let q = s.run(&p).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn elimination_rejected_without_justification() {
        let p = Presentation::from_strs(&["t", "b"], &[NON_WIRTINGER]).unwrap();
        let bogus = TietzeScript::parse("intro s1 b^-1 t b\nelim b s1 t 1").unwrap();
        assert!(bogus.run(&p).is_err());
        // definition relator removed before use
        let dropped = TietzeScript::parse(
            "intro s1 b^-1 t b\nintro s4 b^-4 t b^4\nintro s5 b^-5 t b^5\nelim s1 b^-1 t b 2\nelim b s5^-1 s1 s4^-1 t 1",
        )
        .unwrap();
        assert!(dropped.run(&p).is_err());
    }
}
