//! Andrews–Curtis moves on balanced presentations and a bounded
//! breadth-first trivialization search.
//!
//! The search works over canonical keys. One search step ("macro") replaces
//! a relator by `rot(R_i) · c · rot(R_j^±1) · c⁻¹` with `c` empty or a single
//! letter; pair removals are applied greedily after every step and do not
//! count towards the depth. Found paths are expanded into primitive moves
//! and replayed before being returned.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

/// A presentation with as many relators as generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACPresentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl ACPresentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        if generators.len() != relators.len() {
            return Err(Error::Precondition(format!(
                "not balanced: {} generators, {} relators",
                generators.len(),
                relators.len()
            )));
        }
        // reuse the validation of generator names and relator alphabets
        Presentation::new(generators.clone(), relators.clone())?;
        Ok(ACPresentation { generators, relators })
    }

    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        ACPresentation::new(p.generators().to_vec(), p.relators().to_vec())
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation::new(self.generators.clone(), self.relators.clone()).expect("validated on construction")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Sum of cyclically reduced relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.cyclic_reduce().0.letter_len()).sum()
    }

    fn occurrences(&self, g: &Generator) -> usize {
        self.relators.iter().map(|r| r.occurrences(g)).sum()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.relators.len() {
            Ok(())
        } else {
            Err(Error::InvalidMove(format!("relator index {} out of range", i + 1)))
        }
    }

    pub fn apply(&self, m: &ACMove) -> Result<ACPresentation> {
        let mut out = self.clone();
        match m {
            ACMove::Invert(i) => {
                self.check_index(*i)?;
                out.relators[*i] = self.relators[*i].inverse();
            }
            ACMove::Conjugate { relator, generator, sign } => {
                self.check_index(*relator)?;
                if !self.generators.contains(generator) {
                    return Err(Error::InvalidMove(format!("unknown generator {generator}")));
                }
                if sign.abs() != 1 {
                    return Err(Error::InvalidMove(format!("conjugation exponent must be ±1, got {sign}")));
                }
                let by = Word::power_of(generator.clone(), *sign);
                out.relators[*relator] = self.relators[*relator].conjugate(&by);
            }
            ACMove::Multiply(i, j) => {
                self.check_index(*i)?;
                self.check_index(*j)?;
                if i == j {
                    return Err(Error::InvalidMove("multiplying a relator by itself".into()));
                }
                out.relators[*i] = self.relators[*i].product(&self.relators[*j]);
            }
            ACMove::AddPair { name, word } => {
                if self.generators.contains(name) {
                    return Err(Error::InvalidMove(format!("generator {name} already exists")));
                }
                if let Some((g, _)) = word.syllables().iter().find(|(g, _)| !self.generators.contains(g)) {
                    return Err(Error::InvalidMove(format!("{g} is not an existing generator")));
                }
                out.generators.push(name.clone());
                out.relators.push(Word::generator(name.clone()).product(word));
            }
            ACMove::RemovePair(name) => {
                let k = self.removable_relator(name).ok_or_else(|| {
                    Error::InvalidMove(format!("no relator of the form {name}·z with {name} occurring once"))
                })?;
                let gi = self.generators.iter().position(|g| g == name).expect("checked");
                out.generators.remove(gi);
                out.relators.remove(k);
            }
        }
        Ok(out)
    }

    /// Index of a relator `name · z` when `name` occurs nowhere else.
    fn removable_relator(&self, name: &Generator) -> Option<usize> {
        if !self.generators.contains(name) || self.occurrences(name) != 1 {
            return None;
        }
        self.relators.iter().position(|r| r.syllables().first() == Some(&(name.clone(), 1)))
    }
}

impl fmt::Display for ACPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_presentation())
    }
}

/// Relator indices are 0-based; the text form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ACMove {
    Invert(usize),
    /// `R := g^sign · R · g^-sign`
    Conjugate {
        relator: usize,
        generator: Generator,
        sign: i64,
    },
    /// `R_i := R_i · R_j`
    Multiply(usize, usize),
    /// New generator `name` with relator `name · word`.
    AddPair {
        name: Generator,
        word: Word,
    },
    RemovePair(Generator),
}

impl fmt::Display for ACMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ACMove::Invert(i) => write!(f, "inv {}", i + 1),
            ACMove::Conjugate { relator, generator, sign } => write!(f, "conj {} {generator} {sign}", relator + 1),
            ACMove::Multiply(i, j) => write!(f, "mul {} {}", i + 1, j + 1),
            ACMove::AddPair { name, word } => write!(f, "add {name} {word}"),
            ACMove::RemovePair(name) => write!(f, "rm {name}"),
        }
    }
}

impl ACMove {
    pub fn parse(line: &str) -> Result<ACMove> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let index = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|i| *i >= 1)
                .map(|i| i - 1)
                .ok_or_else(|| Error::parse(0, format!("bad relator index `{s}`")))
        };
        let bad = || Error::parse(0, format!("malformed move `{line}`"));
        match toks.as_slice() {
            ["inv", i] => Ok(ACMove::Invert(index(i)?)),
            ["conj", i, g, s] => Ok(ACMove::Conjugate {
                relator: index(i)?,
                generator: Generator::new(g)?,
                sign: s.parse().map_err(|_| bad())?,
            }),
            ["mul", i, j] => Ok(ACMove::Multiply(index(i)?, index(j)?)),
            ["add", name, rest @ ..] => {
                Ok(ACMove::AddPair { name: Generator::new(name)?, word: Word::parse_tokens(rest.iter().copied(), 0)? })
            }
            ["rm", name] => Ok(ACMove::RemovePair(Generator::new(name)?)),
            _ => Err(bad()),
        }
    }
}

pub fn parse_moves(text: &str) -> Result<Vec<ACMove>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty())
        .map(|(n, l)| ACMove::parse(l.split('#').next().unwrap_or("")).map_err(|e| Error::parse(n + 1, e.to_string())))
        .collect()
}

pub fn moves_to_text(moves: &[ACMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

pub fn apply_move(p: &ACPresentation, m: &ACMove) -> Result<ACPresentation> {
    p.apply(m)
}

/// `p` with the extra relator `g`, which balances a deficiency-1 presentation.
pub fn kill_meridian(p: &Presentation, g: &Generator) -> Result<ACPresentation> {
    if p.deficiency() != 1 {
        return Err(Error::Precondition(format!("deficiency is {}, expected 1", p.deficiency())));
    }
    if p.generator_index(g).is_none() {
        return Err(Error::UnknownGenerator(g.to_string()));
    }
    let mut rels = p.relators().to_vec();
    rels.push(Word::generator(g.clone()));
    ACPresentation::new(p.generators().to_vec(), rels)
}

/// Search deduplication key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    generators: usize,
    relators: Vec<Vec<u32>>,
}

fn least_rotation(letters: &[u32]) -> Vec<u32> {
    let inv: Vec<u32> = letters.iter().rev().map(|c| c ^ 1).collect();
    let n = letters.len();
    let mut best = letters.to_vec();
    for seq in [letters, &inv[..]] {
        for a in 0..n.max(1) {
            let rot: Vec<u32> = seq[a..].iter().chain(&seq[..a]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Cyclically reduce, take the least rotation of each relator or its
/// inverse, sort, and rename generators by first appearance.
pub fn canonical_form(p: &ACPresentation) -> CanonicalKey {
    let code = |g: &Generator, e: i64| {
        let gi = p.generators.iter().position(|h| h == g).expect("relators use known generators") as u32;
        2 * gi + u32::from(e < 0)
    };
    let mut rels: Vec<Vec<u32>> = p
        .relators
        .iter()
        .map(|r| least_rotation(&r.cyclic_reduce().0.letters().map(|(g, e)| code(&g, e)).collect::<Vec<_>>()))
        .collect();
    rels.sort();
    let mut rename: Vec<Option<u32>> = vec![None; p.generators.len()];
    let mut next = 0u32;
    for r in &rels {
        for c in r {
            let slot = &mut rename[(c / 2) as usize];
            if slot.is_none() {
                *slot = Some(next);
                next += 1;
            }
        }
    }
    for r in rels.iter_mut() {
        for c in r.iter_mut() {
            *c = 2 * rename[(*c / 2) as usize].expect("assigned") + (*c & 1);
        }
    }
    CanonicalKey { generators: p.generators.len(), relators: rels }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_total_length: usize,
    pub max_depth: usize,
    /// Stop with `Budget` after this many distinct states.
    pub max_states: usize,
    /// Thread count; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl SearchBounds {
    pub fn new(max_total_length: usize, max_depth: usize) -> Self {
        SearchBounds { max_total_length, max_depth, max_states: 2_000_000, workers: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Replay-verified primitive moves; `depth` counts search steps.
    Found { moves: Vec<ACMove>, depth: usize },
    /// Every state within the bounds was explored.
    Exhausted,
    /// The state budget ran out.
    Budget,
}

#[derive(Clone, Debug)]
enum Macro {
    Mul { i: usize, a: usize, j: usize, inverse_j: bool, b: usize, conj: Option<(Generator, i64)> },
    Remove(Generator),
}

/// Word `h` with `h · w · h⁻¹` equal to the `a`-th rotation of the cyclic core of `w`.
fn rotation_conjugator(w: &Word, a: usize) -> Word {
    let (core, conj) = w.cyclic_reduce();
    let prefix = Word::from_letters(core.letters().take(a));
    prefix.inverse().product(&conj.inverse())
}

fn rotated_core(w: &Word, a: usize) -> Word {
    let letters: Vec<(Generator, i64)> = w.cyclic_reduce().0.letters().collect();
    Word::from_letters(letters[a..].iter().chain(&letters[..a]).cloned())
}

fn conjugation_moves(relator: usize, h: &Word) -> Vec<ACMove> {
    let letters: Vec<(Generator, i64)> = h.letters().collect();
    letters.into_iter().rev().map(|(g, s)| ACMove::Conjugate { relator, generator: g, sign: s }).collect()
}

fn expand_macro(p: &ACPresentation, m: &Macro) -> Vec<ACMove> {
    let mut moves = Vec::new();
    match m {
        Macro::Mul { i, a, j, inverse_j, b, conj } => {
            moves.extend(conjugation_moves(*i, &rotation_conjugator(&p.relators[*i], *a)));
            let rj = if *inverse_j { p.relators[*j].inverse() } else { p.relators[*j].clone() };
            if *inverse_j {
                moves.push(ACMove::Invert(*j));
            }
            let h = rotation_conjugator(&rj, *b);
            let rotate_j = conjugation_moves(*j, &h);
            moves.extend(rotate_j.iter().cloned());
            if let Some((g, s)) = conj {
                moves.push(ACMove::Conjugate { relator: *j, generator: g.clone(), sign: *s });
            }
            moves.push(ACMove::Multiply(*i, *j));
            if let Some((g, s)) = conj {
                moves.push(ACMove::Conjugate { relator: *j, generator: g.clone(), sign: -s });
            }
            for mv in rotate_j.into_iter().rev() {
                if let ACMove::Conjugate { relator, generator, sign } = mv {
                    moves.push(ACMove::Conjugate { relator, generator, sign: -sign });
                }
            }
            if *inverse_j {
                moves.push(ACMove::Invert(*j));
            }
        }
        Macro::Remove(g) => {
            let k = p.relators.iter().position(|r| r.contains(g)).expect("removable generator occurs");
            let mut w = p.relators[k].clone();
            if w.syllables().iter().any(|(h, e)| h == g && *e < 0) {
                moves.push(ACMove::Invert(k));
                w = w.inverse();
            }
            let pos = w.cyclic_reduce().0.letters().position(|(h, _)| h == *g).expect("in the core");
            moves.extend(conjugation_moves(k, &rotation_conjugator(&w, pos)));
            moves.push(ACMove::RemovePair(g.clone()));
        }
    }
    moves
}

/// Remove every generator that occurs exactly once, repeatedly.
fn greedy_removals(mut p: ACPresentation) -> (ACPresentation, Vec<Macro>) {
    let mut done = Vec::new();
    while let Some(gi) = (0..p.generators.len()).find(|&gi| p.occurrences(&p.generators[gi]) == 1) {
        let g = p.generators[gi].clone();
        let k = p.relators.iter().position(|r| r.contains(&g)).expect("occurs once");
        p.generators.remove(gi);
        p.relators.remove(k);
        done.push(Macro::Remove(g));
    }
    (p, done)
}

struct Child {
    macros: Vec<Macro>,
    pres: ACPresentation,
    key: CanonicalKey,
}

fn children(p: &ACPresentation, max_len: usize) -> Vec<Child> {
    let cores: Vec<Word> = p.relators.iter().map(|r| r.cyclic_reduce().0).collect();
    let lens: Vec<usize> = cores.iter().map(Word::letter_len).collect();
    let total: usize = lens.iter().sum();
    let mut conjs: Vec<Option<(Generator, i64)>> = vec![None];
    for g in &p.generators {
        conjs.push(Some((g.clone(), 1)));
        conjs.push(Some((g.clone(), -1)));
    }
    let mut out = Vec::new();
    let mut seen: HashMap<CanonicalKey, ()> = HashMap::new();
    for i in 0..p.relators.len() {
        for a in 0..lens[i].max(1) {
            let ri = rotated_core(&p.relators[i], a);
            for j in 0..p.relators.len() {
                if i == j {
                    continue;
                }
                for inverse_j in [false, true] {
                    let rj_base = if inverse_j { p.relators[j].inverse() } else { p.relators[j].clone() };
                    for b in 0..lens[j].max(1) {
                        let rj = rotated_core(&rj_base, b);
                        for conj in &conjs {
                            let by = conj.as_ref().map_or_else(Word::identity, |(g, s)| Word::power_of(g.clone(), *s));
                            let new = ri.product(&rj.conjugate(&by));
                            let new_len = new.cyclic_reduce().0.letter_len();
                            if total - lens[i] + new_len > max_len {
                                continue;
                            }
                            let mut q = p.clone();
                            q.relators[i] = new;
                            let (q, removed) = greedy_removals(q);
                            let key = canonical_form(&q);
                            if seen.insert(key.clone(), ()).is_some() {
                                continue;
                            }
                            let mut macros = vec![Macro::Mul { i, a, j, inverse_j, b, conj: conj.clone() }];
                            macros.extend(removed);
                            out.push(Child { macros, pres: q, key });
                        }
                    }
                }
            }
        }
    }
    out
}

struct Node {
    pres: ACPresentation,
    parent: Option<usize>,
    macros: Vec<Macro>,
}

const CHUNK: usize = 64;

/// Breadth-first search for a trivialization of `p`.
pub fn ac_trivialize_search(p: &ACPresentation, bounds: &SearchBounds) -> SearchOutcome {
    match bounds.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            Ok(pool) => pool.install(|| search(p, bounds)),
            Err(_) => search(p, bounds),
        },
        None => search(p, bounds),
    }
}

fn search(p: &ACPresentation, bounds: &SearchBounds) -> SearchOutcome {
    let (root, removed) = greedy_removals(p.clone());
    let mut nodes = vec![Node { pres: root, parent: None, macros: removed }];
    if nodes[0].pres.is_empty() {
        return finish(p, &nodes, 0, 0);
    }
    if p.total_length() > bounds.max_total_length {
        return SearchOutcome::Exhausted;
    }
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::new();
    seen.insert(canonical_form(&nodes[0].pres), 0);
    let mut frontier = vec![0usize];
    for depth in 1..=bounds.max_depth {
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let expanded: Vec<Vec<Child>> =
                chunk.par_iter().map(|&id| children(&nodes[id].pres, bounds.max_total_length)).collect();
            for (&parent, kids) in chunk.iter().zip(expanded) {
                for kid in kids {
                    if seen.contains_key(&kid.key) {
                        continue;
                    }
                    let id = nodes.len();
                    seen.insert(kid.key, id);
                    let goal = kid.pres.is_empty();
                    nodes.push(Node { pres: kid.pres, parent: Some(parent), macros: kid.macros });
                    if goal {
                        return finish(p, &nodes, id, depth);
                    }
                    next.push(id);
                    if nodes.len() >= bounds.max_states {
                        return SearchOutcome::Budget;
                    }
                }
            }
        }
        if next.is_empty() {
            return SearchOutcome::Exhausted;
        }
        frontier = next;
    }
    SearchOutcome::Exhausted
}

fn finish(start: &ACPresentation, nodes: &[Node], goal: usize, depth: usize) -> SearchOutcome {
    let mut path = Vec::new();
    let mut cur = Some(goal);
    while let Some(id) = cur {
        path.push(id);
        cur = nodes[id].parent;
    }
    path.reverse();
    let mut state = start.clone();
    let mut moves = Vec::new();
    for id in path {
        for m in &nodes[id].macros {
            for mv in expand_macro(&state, m) {
                state = state.apply(&mv).expect("expanded moves are valid");
                moves.push(mv);
            }
        }
    }
    assert!(verify_move_sequence(start, &moves), "search produced an invalid move sequence");
    SearchOutcome::Found { moves, depth }
}

/// True when every move applies and strict pair removals then empty the presentation.
pub fn verify_move_sequence(p: &ACPresentation, moves: &[ACMove]) -> bool {
    let mut state = p.clone();
    for m in moves {
        match state.apply(m) {
            Ok(s) => state = s,
            Err(_) => return false,
        }
    }
    while let Some(g) = state.generators.iter().find(|g| state.removable_relator(g).is_some()).cloned() {
        state = state.apply(&ACMove::RemovePair(g)).expect("removable");
    }
    state.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::gen;
    use proptest::prelude::*;

    fn ac(gens: &[&str], rels: &[&str]) -> ACPresentation {
        ACPresentation::from_presentation(&Presentation::from_strs(gens, rels).unwrap()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn spun_killed() -> ACPresentation {
        let p = Presentation::from_strs(&["t", "u"], &["u^-1 t u t u^-1 t^-1"]).unwrap();
        kill_meridian(&p, &gen("t")).unwrap()
    }

    #[test]
    fn move_examples() {
        let p = ac(&["x", "y"], &["x y", "y"]);
        assert_eq!(p.apply(&ACMove::Invert(0)).unwrap().relators()[0], w("y^-1 x^-1"));
        let k = spun_killed();
        let m = k.apply(&ACMove::Multiply(0, 1)).unwrap();
        assert_eq!(m.relators()[0], w("u^-1 t u t u^-1"));
        let q = ac(&["x"], &["x"]);
        let r = q.apply(&ACMove::AddPair { name: gen("y"), word: w("x^2") }).unwrap();
        assert_eq!(r.relators(), &[w("x"), w("y x^2")]);
        assert_eq!(r.apply(&ACMove::RemovePair(gen("y"))).unwrap(), q);
    }

    #[test]
    fn invalid_moves() {
        let p = ac(&["x", "y"], &["x y", "y"]);
        assert!(p.apply(&ACMove::Invert(5)).is_err());
        assert!(p.apply(&ACMove::Multiply(0, 0)).is_err());
        assert!(p.apply(&ACMove::AddPair { name: gen("x"), word: w("y") }).is_err());
        assert!(p.apply(&ACMove::AddPair { name: gen("z"), word: w("q") }).is_err());
        // y occurs twice
        assert!(p.apply(&ACMove::RemovePair(gen("y"))).is_err());
        assert!(p.apply(&ACMove::RemovePair(gen("x"))).is_ok());
        let c = ACMove::Conjugate { relator: 0, generator: gen("x"), sign: 2 };
        assert!(p.apply(&c).is_err());
        assert!(ACPresentation::new(vec![gen("x")], vec![]).is_err());
    }

    #[test]
    fn meridian_killing() {
        assert_eq!(spun_killed().relators()[1], w("t"));
        let unknot = Presentation::from_strs(&["x"], &[]).unwrap();
        assert_eq!(kill_meridian(&unknot, &gen("x")).unwrap(), ac(&["x"], &["x"]));
        let balanced = Presentation::from_strs(&["x"], &["x"]).unwrap();
        assert!(kill_meridian(&balanced, &gen("x")).is_err());
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(canonical_form(&ac(&["x", "y"], &["x y", "x"])), canonical_form(&ac(&["x", "y"], &["y x", "x"])));
        assert_eq!(canonical_form(&ac(&["x"], &["x"])), canonical_form(&ac(&["x"], &["x^-1"])));
        assert_eq!(canonical_form(&ac(&["a"], &["a"])), canonical_form(&ac(&["b"], &["b"])));
        assert_ne!(canonical_form(&ac(&["x"], &["x"])), canonical_form(&ac(&["x"], &["x^2"])));
    }

    #[test]
    fn move_text_round_trip() {
        let text = "inv 1\nconj 1 t -1\nmul 1 2\nadd y x^2 t\nrm y\n";
        let moves = parse_moves(text).unwrap();
        assert_eq!(moves.len(), 5);
        assert_eq!(moves_to_text(&moves), text);
        assert!(parse_moves("inv 0").is_err());
        assert!(parse_moves("mul 1").is_err());
    }

    #[test]
    fn search_small_cases() {
        let bounds = SearchBounds::new(16, 4);
        match ac_trivialize_search(&ac(&["x"], &["x"]), &bounds) {
            SearchOutcome::Found { moves, .. } => assert_eq!(moves, vec![ACMove::RemovePair(gen("x"))]),
            other => panic!("{other:?}"),
        }
        match ac_trivialize_search(&ac(&["x", "y"], &["x y", "y"]), &bounds) {
            SearchOutcome::Found { moves, depth } => {
                assert!(depth <= 4);
                assert!(verify_move_sequence(&ac(&["x", "y"], &["x y", "y"]), &moves));
            }
            other => panic!("{other:?}"),
        }
        // Z/2 never trivializes
        assert_eq!(ac_trivialize_search(&ac(&["x"], &["x^2"]), &SearchBounds::new(6, 3)), SearchOutcome::Exhausted);
    }

    #[test]
    fn search_spun_trefoil() {
        let k = spun_killed();
        match ac_trivialize_search(&k, &SearchBounds::new(32, 12)) {
            SearchOutcome::Found { moves, depth } => {
                assert!(depth <= 12);
                assert!(verify_move_sequence(&k, &moves));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn replay_checks() {
        let k = spun_killed();
        let moves = parse_moves("mul 1 2\n").unwrap();
        let mut s = k.clone();
        for m in &moves {
            s = s.apply(m).unwrap();
        }
        assert!(s.total_length() < k.total_length());
        assert!(!verify_move_sequence(&k, &[]));
        assert!(!verify_move_sequence(&k, &[ACMove::Invert(9)]));
    }

    #[test]
    fn search_budget() {
        let mut b = SearchBounds::new(32, 12);
        b.max_states = 3;
        assert_eq!(ac_trivialize_search(&spun_killed(), &b), SearchOutcome::Budget);
    }

    fn arb_pres() -> impl Strategy<Value = ACPresentation> {
        (1usize..=3).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec((0..n, prop::bool::ANY), 0..6), n).prop_map(move |rels| {
                let gens: Vec<Generator> = (0..n).map(|i| Generator::indexed("x", i)).collect();
                let rels = rels
                    .into_iter()
                    .map(|r| Word::from_letters(r.into_iter().map(|(g, s)| (gens[g].clone(), if s { 1 } else { -1 }))))
                    .collect();
                ACPresentation::new(gens, rels).unwrap()
            })
        })
    }

    fn arb_move(n: usize) -> impl Strategy<Value = ACMove> {
        prop_oneof![
            (0..n).prop_map(ACMove::Invert),
            (0..n, 0..n, prop::bool::ANY).prop_map(|(i, g, s)| ACMove::Conjugate {
                relator: i,
                generator: Generator::indexed("x", g),
                sign: if s { 1 } else { -1 }
            }),
            (0..n, 0..n).prop_map(|(i, j)| ACMove::Multiply(i, j)),
            (0..n, -2i64..=2).prop_map(|(g, e)| ACMove::AddPair {
                name: gen("y"),
                word: Word::power_of(Generator::indexed("x", g), e)
            }),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn moves_preserve_abelianization((p, m) in arb_pres().prop_flat_map(|p| {
            let n = p.generators().len();
            (Just(p), arb_move(n))
        })) {
            if let Ok(q) = p.apply(&m) {
                prop_assert_eq!(q.generators().len(), q.relators().len());
                prop_assert_eq!(p.to_presentation().abelianization(), q.to_presentation().abelianization());
                if let ACMove::AddPair { name, .. } = &m {
                    let back = q.apply(&ACMove::RemovePair(name.clone())).unwrap();
                    prop_assert_eq!(back, p);
                }
            }
        }

        #[test]
        fn canonical_form_ignores_invert_and_conjugate(p in arb_pres(), i in 0usize..3, g in 0usize..3, s in prop::bool::ANY) {
            let n = p.generators().len();
            let (i, g) = (i % n, g % n);
            let inv = p.apply(&ACMove::Invert(i)).unwrap();
            prop_assert_eq!(canonical_form(&inv), canonical_form(&p));
            let c = ACMove::Conjugate { relator: i, generator: Generator::indexed("x", g), sign: if s { 1 } else { -1 } };
            prop_assert_eq!(canonical_form(&p.apply(&c).unwrap()), canonical_form(&p));
        }
    }
}
