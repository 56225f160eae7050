//! Wirtinger recognition and labeled oriented graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Generator, Word};

use super::Presentation;

/// Edge `origin → terminus` with label `w`, meaning `terminus = w · origin · w⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEdge {
    pub origin: Generator,
    pub terminus: Generator,
    pub label: Word,
}

/// Labeled oriented graph of a Wirtinger presentation; one edge per relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Log {
    pub vertices: Vec<Generator>,
    pub edges: Vec<LogEdge>,
    pub is_tree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotWirtinger {
    pub relator_index: Option<usize>,
    pub reason: String,
}

impl fmt::Display for NotWirtinger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relator_index {
            Some(i) => write!(f, "relator {}: {}", i + 1, self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

impl Log {
    /// Largest label length in letters.
    pub fn max_label_len(&self) -> usize {
        self.edges.iter().map(|e| e.label.letter_len()).max().unwrap_or(0)
    }

    pub fn dot_export(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.vertices {
            if !self.edges.iter().any(|e| &e.origin == v || &e.terminus == v) {
                s.push_str(&format!("  {v}\n"));
            }
        }
        for e in &self.edges {
            s.push_str(&format!("  {} -> {} [label=\"{}\"]\n", e.origin, e.terminus, e.label));
        }
        s.push_str("}\n");
        s
    }
}

pub fn dot_export(g: &Log) -> String {
    g.dot_export()
}

/// Find `(label, origin, terminus)` with the relator conjugate to
/// `terminus⁻¹ · label · origin · label⁻¹` (or its inverse); least by
/// (label shortlex, origin, terminus).
fn match_relator(r: &Word) -> Option<(Word, Generator, Generator)> {
    let core = r.cyclic_reduce().0;
    let n = core.letter_len();
    if n < 2 || !n.is_multiple_of(2) {
        return None;
    }
    let k = (n - 2) / 2;
    let mut best: Option<(Word, Generator, Generator)> = None;
    for oriented in [core.clone(), core.inverse()] {
        let letters: Vec<(Generator, i64)> = oriented.letters().collect();
        for rot in 0..n {
            let at = |i: usize| &letters[(rot + i) % n];
            let (target, ts) = at(0);
            let (source, ss) = at(k + 1);
            if *ts != -1 || *ss != 1 {
                continue;
            }
            let ok = (0..k).all(|m| {
                let (g, e) = at(k + 2 + m);
                let (h, f) = at(k - m);
                g == h && *e == -*f
            });
            if !ok {
                continue;
            }
            let label = Word::from_letters((1..=k).map(|i| at(i).clone()));
            let cand = (label, source.clone(), target.clone());
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best
}

pub(super) fn recognize(p: &Presentation) -> std::result::Result<Log, NotWirtinger> {
    let mut edges = Vec::with_capacity(p.relators().len());
    for (i, r) in p.relators().iter().enumerate() {
        let reason = if r.cyclic_reduce().0.is_identity() { Some("trivial relator") } else { None };
        match (reason, match_relator(r)) {
            (None, Some((label, origin, terminus))) => edges.push(LogEdge { origin, terminus, label }),
            (reason, _) => {
                return Err(NotWirtinger {
                    relator_index: Some(i),
                    reason: format!(
                        "{} is not of the form g^-1 w h w^-1",
                        reason.map(str::to_string).unwrap_or_else(|| format!("{r}"))
                    ),
                })
            }
        }
    }
    let vertices = p.generators().to_vec();
    let is_tree = p.deficiency() == 1 && is_spanning_tree(&vertices, &edges);
    Ok(Log { vertices, edges, is_tree })
}

fn is_spanning_tree(vertices: &[Generator], edges: &[LogEdge]) -> bool {
    if edges.len() + 1 != vertices.len() {
        return false;
    }
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let a = vertices.iter().position(|v| *v == e.origin).unwrap();
        let b = vertices.iter().position(|v| *v == e.terminus).unwrap();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Relator `terminus⁻¹ · label · origin · label⁻¹`.
pub fn wirtinger_relator(origin: &Generator, terminus: &Generator, label: &Word) -> Word {
    Word::generator(terminus.clone()).inverse().product(&Word::generator(origin.clone()).conjugate(label))
}

pub(super) fn expand_length1(p: &Presentation) -> Result<Presentation> {
    let log = recognize(p).map_err(|e| Error::Precondition(format!("not a Wirtinger presentation: {e}")))?;
    let mut gens = p.generators().to_vec();
    let mut rels = Vec::new();
    let mut next_fresh = 1usize;
    let mut fresh = |gens: &mut Vec<Generator>| loop {
        let g = Generator::indexed("v", next_fresh);
        next_fresh += 1;
        if !gens.contains(&g) {
            gens.push(g.clone());
            return g;
        }
    };
    for (edge, original) in log.edges.iter().zip(p.relators()) {
        let letters: Vec<(Generator, i64)> = edge.label.letters().collect();
        match letters.as_slice() {
            [] | [(_, 1)] => rels.push(original.clone()),
            _ => {
                // terminus = a_1 ... a_k · origin · (a_1 ... a_k)^-1, peeled from the inside out
                let mut prev = edge.origin.clone();
                for (idx, (a, sign)) in letters.iter().enumerate().rev() {
                    let next = if idx == 0 { edge.terminus.clone() } else { fresh(&mut gens) };
                    let a = Word::generator(a.clone());
                    if *sign > 0 {
                        rels.push(wirtinger_relator(&prev, &next, &a));
                    } else {
                        // next = a^-1 prev a  <=>  prev = a next a^-1
                        rels.push(wirtinger_relator(&next, &prev, &a));
                    }
                    prev = next;
                }
            }
        }
    }
    Presentation::new(gens, rels)
}
