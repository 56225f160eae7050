#![allow(dead_code)]

use std::path::PathBuf;

use knotmod::intlinalg::{replay_elementary, ElementaryOp, IntMatrix};
use knotmod::words::{Generator, Word};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Freely reduced word of at most `max_len` letters.
pub fn random_word(rng: &mut impl Rng, gens: &[Generator], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        (g, if rng.gen_bool(0.5) { 1 } else { -1 })
    }))
}

pub fn random_op(rng: &mut impl Rng, n: usize) -> ElementaryOp {
    let i = rng.gen_range(0..n);
    if n == 1 {
        return ElementaryOp::Negate(0);
    }
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    match rng.gen_range(0..6) {
        0 => ElementaryOp::Swap(i, j),
        1 => ElementaryOp::Negate(i),
        _ => {
            let factor = [-2, -1, 1, 2][rng.gen_range(0..4)];
            ElementaryOp::AddMultiple { target: i, source: j, factor }
        }
    }
}

/// Product of at most `max_ops` random elementary matrices of size `n`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, max_ops: usize) -> IntMatrix {
    let k = rng.gen_range(0..=max_ops);
    let ops: Vec<ElementaryOp> = (0..k).map(|_| random_op(rng, n)).collect();
    replay_elementary(&ops, n).expect("indices in range")
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows_i64(n, n, &rows)
}

fn det_is_unit(m: &IntMatrix) -> bool {
    let d = m.det().unwrap();
    d.is_one() || (-d).is_one()
}

/// det M ≠ 0 and det(M − I) ≠ 0, rank ≤ 3, entries in [-2, 2].
pub fn random_trotter(rng: &mut impl Rng) -> IntMatrix {
    loop {
        let n = rng.gen_range(1..=3);
        let m = random_matrix(rng, n, 2);
        let id = IntMatrix::identity(n);
        if !m.det().unwrap().is_zero() && !m.sub(&id).det().unwrap().is_zero() {
            return m;
        }
    }
}

/// Unimodular M with det(I + M) = ±1.
pub fn random_t_minus_one(rng: &mut impl Rng) -> IntMatrix {
    loop {
        let n = rng.gen_range(2..=3);
        let m = random_unimodular(rng, n, 8);
        if det_is_unit(&m.add(&IntMatrix::identity(n))) {
            return m;
        }
    }
}

/// Unimodular T with det(T − I) = ±1.
pub fn random_t_action(rng: &mut impl Rng) -> IntMatrix {
    loop {
        let n = rng.gen_range(2..=3);
        let m = random_unimodular(rng, n, 8);
        if det_is_unit(&m.sub(&IntMatrix::identity(n))) {
            return m;
        }
    }
}
