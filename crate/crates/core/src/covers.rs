//! Homology of finite cyclic covers, from the presentation and from the module.

use rayon::prelude::*;

use crate::constructions::{KnotModuleSpec, RealizationResult};
use crate::error::{Error, Result};
use crate::intlinalg::{cokernel_invariants, AbelianGroupInvariants};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub n: usize,
    pub from_presentation: AbelianGroupInvariants,
    pub from_module: AbelianGroupInvariants,
    pub matches: bool,
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("cover degree must be at least 2, got {n}")));
    }
    Ok(())
}

/// Reidemeister–Schreier presentation of the kernel of `p → ℤ → ℤ/n`.
///
/// Schreier generators are named `<gen>_<coset>`; the spanning tree is grown
/// breadth-first from coset 0, trying generators in order, forward then backward.
pub fn cyclic_cover_presentation(p: &Presentation, n: usize) -> Result<Presentation> {
    check_degree(n)?;
    if !p.abelianization().is_infinite_cyclic() {
        return Err(Error::NotInfiniteCyclic(p.abelianization().to_string()));
    }
    let weights = p.weight_vector()?;
    let gens = p.generators();
    let ni = n as i64;
    let step = |c: usize, g: usize, sign: i64| ((c as i64 + sign * weights[g]).rem_euclid(ni)) as usize;

    // tree[c][g]: edge from coset c along generator g lies in the spanning tree
    let mut tree = vec![vec![false; gens.len()]; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..gens.len() {
            let fwd = step(c, g, 1);
            if !seen[fwd] {
                seen[fwd] = true;
                tree[c][g] = true;
                queue.push_back(fwd);
            }
            let back = step(c, g, -1);
            if !seen[back] {
                seen[back] = true;
                tree[back][g] = true;
                queue.push_back(back);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Precondition("weights do not reach every coset".into()));
    }

    let name = |g: usize, c: usize| Generator::new(&format!("{}_{c}", gens[g])).expect("valid name");
    let mut new_gens = Vec::new();
    for c in 0..n {
        for g in 0..gens.len() {
            if !tree[c][g] {
                new_gens.push(name(g, c));
            }
        }
    }
    let mut rels = Vec::with_capacity(n * p.relators().len());
    for c0 in 0..n {
        for r in p.relators() {
            let mut c = c0;
            let mut letters = Vec::new();
            for (h, e) in r.letters() {
                let g = p.generator_index(&h).expect("relator over the generators");
                if e > 0 {
                    if !tree[c][g] {
                        letters.push((name(g, c), 1));
                    }
                    c = step(c, g, 1);
                } else {
                    let from = step(c, g, -1);
                    if !tree[from][g] {
                        letters.push((name(g, from), -1));
                    }
                    c = from;
                }
            }
            debug_assert_eq!(c, c0);
            rels.push(Word::from_letters(letters));
        }
    }
    Presentation::new(new_gens, rels)
}

/// First homology of the index-`n` cyclic cover.
pub fn cover_homology(p: &Presentation, n: usize) -> Result<AbelianGroupInvariants> {
    Ok(cyclic_cover_presentation(p, n)?.abelianization())
}

/// `ℤ ⊕ A/(t^n − 1)A` computed from the module's square presentation matrix.
pub fn module_cover_homology(spec: &KnotModuleSpec, n: usize) -> Result<AbelianGroupInvariants> {
    check_degree(n)?;
    let m = spec.square_matrix().evaluate_cyclic(n);
    Ok(cokernel_invariants(&m).with_extra_free(1))
}

/// Compare a presentation against a module for every degree in `ns`.
pub fn compare_presentation(p: &Presentation, spec: &KnotModuleSpec, ns: &[usize]) -> Result<Vec<CoverReport>> {
    if ns.is_empty() {
        return Err(Error::Precondition("no cover degrees given".into()));
    }
    ns.par_iter()
        .map(|&n| {
            let from_presentation = cover_homology(p, n)?;
            let from_module = module_cover_homology(spec, n)?;
            let matches = from_presentation == from_module;
            Ok(CoverReport { n, from_presentation, from_module, matches })
        })
        .collect()
}

/// Reports for the Wirtinger presentation when present, else the primary one.
pub fn compare_realization(result: &RealizationResult, ns: &[usize]) -> Result<Vec<CoverReport>> {
    compare_presentation(result.best_presentation(), &result.module_spec, ns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{realize_cyclic, realize_t_action, realize_trotter};
    use crate::intlinalg::IntMatrix;
    use crate::laurent::LaurentPoly;

    fn z_plus(torsion: &[i64]) -> AbelianGroupInvariants {
        AbelianGroupInvariants::from_i64(1, torsion)
    }

    fn spun() -> Presentation {
        Presentation::from_strs(&["t", "u"], &["u^-1 t u t u^-1 t^-1"]).unwrap()
    }

    #[test]
    fn cover_sizes() {
        let unknot = Presentation::from_strs(&["t"], &[]).unwrap();
        let c = cyclic_cover_presentation(&unknot, 3).unwrap();
        assert_eq!((c.generators().len(), c.relators().len()), (1, 0));
        let c = cyclic_cover_presentation(&spun(), 2).unwrap();
        assert_eq!((c.generators().len(), c.relators().len()), (3, 2));
        assert!(cyclic_cover_presentation(&spun(), 1).is_err());
        let bad = Presentation::from_strs(&["a"], &["a^2"]).unwrap();
        assert!(cyclic_cover_presentation(&bad, 2).is_err());
    }

    #[test]
    fn spun_trefoil_covers() {
        assert_eq!(cover_homology(&spun(), 2).unwrap(), z_plus(&[3]));
        assert_eq!(cover_homology(&spun(), 3).unwrap(), z_plus(&[2, 2]));
        assert_eq!(cover_homology(&spun(), 6).unwrap(), AbelianGroupInvariants::from_i64(3, &[]));
    }

    #[test]
    fn module_side() {
        let spec = KnotModuleSpec::cyclic(LaurentPoly::from_coeffs(&[1, -1, 1])).unwrap();
        assert_eq!(module_cover_homology(&spec, 2).unwrap(), z_plus(&[3]));
        assert_eq!(module_cover_homology(&spec, 6).unwrap(), AbelianGroupInvariants::from_i64(3, &[]));
        let spec = KnotModuleSpec::trotter(IntMatrix::from_i64(&[[2]])).unwrap();
        assert_eq!(module_cover_homology(&spec, 2).unwrap(), z_plus(&[3]));
    }

    #[test]
    fn trotter_three_fold() {
        let res = realize_trotter(&IntMatrix::from_i64(&[[2]])).unwrap();
        assert_eq!(cover_homology(res.best_presentation(), 3).unwrap(), z_plus(&[7]));
        assert!(compare_realization(&res, &[2, 3, 4]).unwrap().iter().all(|r| r.matches));
    }

    #[test]
    fn realizations_match() {
        let res = realize_cyclic(&LaurentPoly::from_coeffs(&[1, -1, 1])).unwrap();
        let reports = compare_realization(&res, &[2, 3, 6]).unwrap();
        assert_eq!(reports.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 3, 6]);
        assert!(reports.iter().all(|r| r.matches));
        let res = realize_t_action(&IntMatrix::from_i64(&[[0, -1], [1, 1]])).unwrap();
        assert!(compare_realization(&res, &[2, 3, 6]).unwrap().iter().all(|r| r.matches));
        assert!(compare_realization(&res, &[]).is_err());
    }

    #[test]
    fn mutation_detected() {
        let res = realize_cyclic(&LaurentPoly::from_coeffs(&[1, -1, 1])).unwrap();
        let bad = Presentation::from_strs(&["t", "u"], &["u^-1 t u t^2 u^-1 t^-2"]).unwrap();
        let reports = compare_presentation(&bad, &res.module_spec, &[2, 3, 4]);
        assert!(reports.map_or(true, |rs| rs.iter().any(|r| !r.matches)));
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = spun();
        let b = Presentation::from_strs(&["u", "t"], &["u^-1 t u t u^-1 t^-1"]).unwrap();
        for n in 2..=5 {
            assert_eq!(cover_homology(&a, n).unwrap(), cover_homology(&b, n).unwrap());
        }
    }
}
