//! Bounded Todd–Coxeter coset enumeration (HLT strategy).

use std::fmt;

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// Index of the subgroup.
    Closed(usize),
    /// The coset limit was hit.
    Overflow(usize),
}

impl fmt::Display for EnumerationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationStatus::Closed(n) => write!(f, "CLOSED {n}"),
            EnumerationStatus::Overflow(k) => write!(f, "OVERFLOW {k}"),
        }
    }
}

/// Coset table; cosets are 0-based with coset 0 the subgroup itself.
/// Column `2g` is generator `g`, column `2g + 1` its inverse.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub generators: Vec<Generator>,
    pub status: EnumerationStatus,
    table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        match self.status {
            EnumerationStatus::Closed(n) => Some(n),
            EnumerationStatus::Overflow(_) => None,
        }
    }

    /// Image of `coset` under `g^sign` in a closed table.
    pub fn act(&self, coset: usize, g: &Generator, sign: i64) -> Option<usize> {
        let gi = self.generators.iter().position(|h| h == g)?;
        let col = 2 * gi + usize::from(sign < 0);
        self.table.get(coset).map(|row| row[col])
    }

    /// Image of `coset` under a word in a closed table.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters().try_fold(coset, |c, (g, e)| self.act(c, &g, e))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.status);
        if self.index().is_some() {
            for (c, row) in self.table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|d| (d + 1).to_string()).collect();
                s.push_str(&format!("{}: {}\n", c + 1, cells.join(" ")));
            }
        }
        s
    }
}

const UNDEF: usize = usize::MAX;

struct Overflowed;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    active: usize,
    max_active: usize,
    max_total: usize,
}

impl Enumerator {
    fn new(cols: usize, max_cosets: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            active: 1,
            max_active: max_cosets,
            max_total: max_cosets.saturating_mul(64),
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<usize, Overflowed> {
        if self.active >= self.max_active || self.table.len() >= self.max_total {
            return Err(Overflowed);
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d);
        self.active += 1;
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.parent[drop] = keep;
            self.active -= 1;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == UNDEF {
                    continue;
                }
                self.table[d][x ^ 1] = UNDEF;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let e = self.table[mu][x];
                    self.merge(nu, e, &mut queue);
                } else if self.table[nu][x ^ 1] != UNDEF {
                    let e = self.table[nu][x ^ 1];
                    self.merge(mu, e, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, w: &[usize]) -> std::result::Result<(), Overflowed> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][w[j] ^ 1] != UNDEF {
                b = self.table[b][w[j] ^ 1];
                if j == 0 {
                    // whole word traced backwards
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

fn columns(p: &Presentation, w: &Word) -> Result<Vec<usize>> {
    w.letters()
        .map(|(g, e)| {
            let gi = p.generator_index(&g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            Ok(2 * gi + usize::from(e < 0))
        })
        .collect()
}

/// Enumerate the cosets of the subgroup generated by `subgroup`.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Precondition("max_cosets must be at least 1".into()));
    }
    let rels = p.relators().iter().map(|r| columns(p, &r.cyclic_reduce().0)).collect::<Result<Vec<_>>>()?;
    let subs = subgroup.iter().map(|w| columns(p, w)).collect::<Result<Vec<_>>>()?;
    let cols = 2 * p.generators().len();
    let mut en = Enumerator::new(cols, max_cosets);
    let overflow = CosetTable {
        generators: p.generators().to_vec(),
        status: EnumerationStatus::Overflow(max_cosets),
        table: Vec::new(),
    };

    for w in &subs {
        if en.scan_and_fill(0, w).is_err() {
            return Ok(overflow);
        }
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in &rels {
            if !en.alive(c) {
                break;
            }
            if en.scan_and_fill(c, r).is_err() {
                return Ok(overflow);
            }
        }
        for x in 0..cols {
            if en.alive(c) && en.table[c][x] == UNDEF && en.define(c, x).is_err() {
                return Ok(overflow);
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.alive(c)).collect();
    let mut renumber = vec![UNDEF; en.table.len()];
    for (k, &c) in live.iter().enumerate() {
        renumber[c] = k;
    }
    let table = live.iter().map(|&c| en.table[c].iter().map(|&d| renumber[d]).collect()).collect();
    Ok(CosetTable { generators: p.generators().to_vec(), status: EnumerationStatus::Closed(live.len()), table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Certified,
    Inconclusive,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Certified => "CERTIFIED",
            Certificate::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Certified when killing `g` provably gives the trivial group.
pub fn weight_one_certificate(p: &Presentation, g: &Generator, max_cosets: usize) -> Result<Certificate> {
    if p.generator_index(g).is_none() {
        return Err(Error::UnknownGenerator(g.to_string()));
    }
    let killed = p.with_relator(Word::generator(g.clone()))?;
    Ok(match todd_coxeter(&killed, &[], max_cosets)?.status {
        EnumerationStatus::Closed(1) => Certificate::Certified,
        _ => Certificate::Inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::realize_trotter;
    use crate::intlinalg::IntMatrix;
    use crate::words::gen;
    use proptest::prelude::*;

    fn pres(g: &[&str], r: &[&str]) -> Presentation {
        Presentation::from_strs(g, r).unwrap()
    }

    fn check_closed(p: &Presentation, sub: &[Word], t: &CosetTable) {
        let n = t.index().unwrap();
        for c in 0..n {
            for r in p.relators() {
                assert_eq!(t.trace(c, r), Some(c));
            }
        }
        for w in sub {
            assert_eq!(t.trace(0, w), Some(0));
        }
    }

    #[test]
    fn small_groups() {
        let p = pres(&["x"], &["x^3"]);
        let t = todd_coxeter(&p, &[], 10).unwrap();
        assert_eq!(t.status, EnumerationStatus::Closed(3));
        check_closed(&p, &[], &t);

        let s3 = pres(&["a", "b"], &["a^2", "b^2", "a b a b a b"]);
        let t = todd_coxeter(&s3, &[], 100).unwrap();
        assert_eq!(t.status, EnumerationStatus::Closed(6));
        check_closed(&s3, &[], &t);

        let sub = [Word::parse("a").unwrap()];
        let t = todd_coxeter(&s3, &sub, 100).unwrap();
        assert_eq!(t.status, EnumerationStatus::Closed(3));
        check_closed(&s3, &sub, &t);

        let killed = pres(&["t", "u"], &["u^-1 t u t u^-1 t^-1", "t"]);
        assert_eq!(todd_coxeter(&killed, &[], 100).unwrap().status, EnumerationStatus::Closed(1));
    }

    #[test]
    fn overflow_is_a_value() {
        let z = pres(&["t"], &[]);
        assert_eq!(todd_coxeter(&z, &[], 50).unwrap().status, EnumerationStatus::Overflow(50));
        let s3 = pres(&["a", "b"], &["a^2", "b^2", "a b a b a b"]);
        assert_eq!(todd_coxeter(&s3, &[], 2).unwrap().status, EnumerationStatus::Overflow(2));
        assert!(todd_coxeter(&s3, &[Word::parse("z").unwrap()], 10).is_err());
        assert!(todd_coxeter(&s3, &[], 0).is_err());
    }

    #[test]
    fn larger_group() {
        // A5 as <a,b | a^2, b^3, (ab)^5>
        let a5 = pres(&["a", "b"], &["a^2", "b^3", "a b a b a b a b a b"]);
        let t = todd_coxeter(&a5, &[], 1000).unwrap();
        assert_eq!(t.status, EnumerationStatus::Closed(60));
        check_closed(&a5, &[], &t);
    }

    #[test]
    fn certificates() {
        let spun = pres(&["t", "u"], &["u^-1 t u t u^-1 t^-1"]);
        assert_eq!(weight_one_certificate(&spun, &gen("t"), 100).unwrap(), Certificate::Certified);
        let res = realize_trotter(&IntMatrix::from_i64(&[[2]])).unwrap();
        assert_eq!(weight_one_certificate(res.best_presentation(), &gen("t"), 100).unwrap(), Certificate::Certified);
        let c3 = pres(&["x"], &["x^3"]);
        assert_eq!(weight_one_certificate(&c3, &gen("x"), 10).unwrap(), Certificate::Certified);
        // Z/2 * Z/2 killed at a is Z/2
        let d = pres(&["a", "b"], &["a^2", "b^2"]);
        assert_eq!(weight_one_certificate(&d, &gen("a"), 10).unwrap(), Certificate::Inconclusive);
        assert!(weight_one_certificate(&d, &gen("q"), 10).is_err());
    }

    proptest! {
        #[test]
        fn index_stable_under_limit(k in 2i64..9, extra in 0usize..50) {
            let p = Presentation::from_strs(&["x", "y"], &[&format!("x^{k}"), "y x^-1"]).unwrap();
            let a = todd_coxeter(&p, &[], 20).unwrap();
            let b = todd_coxeter(&p, &[], 20 + extra).unwrap();
            prop_assert_eq!(a.status, EnumerationStatus::Closed(k as usize));
            prop_assert_eq!(a.status, b.status);
        }
    }
}
