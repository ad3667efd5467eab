#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_class::foundation::all_subsets;
use toric_class::{GroundSubset, Polymatroid};

/// Random rank table `rho(A) = sum_k min(sum_{i in A ∩ S_k} w_{k,i}, c_k)`,
/// a sum of truncated modular functions, so always a polymatroid. Every
/// element gets positive weight in some term.
pub fn random_table(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = rng.gen_range(1..=3);
    let mut weights: Vec<Vec<u64>> = (0..terms)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=2)).collect())
        .collect();
    for i in 0..n {
        if weights.iter().all(|w| w[i] == 0) {
            let k = rng.gen_range(0..terms);
            weights[k][i] = 1;
        }
    }
    let caps: Vec<u64> = (0..terms).map(|_| rng.gen_range(1..=4)).collect();
    all_subsets(n)
        .map(|a| {
            weights
                .iter()
                .zip(&caps)
                .map(|(w, &c)| a.elements().map(|i| w[i]).sum::<u64>().min(c))
                .sum()
        })
        .collect()
}

pub fn random_polymatroid(n: usize, seed: u64) -> Polymatroid {
    Polymatroid::rank_table(n, random_table(n, seed)).unwrap()
}

pub fn permute(a: GroundSubset, perm: &[usize]) -> GroundSubset {
    GroundSubset::from_elements(a.elements().map(|i| perm[i]))
}

/// Rank table of the relabelled polymatroid `rho'(perm(A)) = rho(A)`.
pub fn relabel(p: &Polymatroid, perm: &[usize]) -> Polymatroid {
    let n = p.n();
    let mut table = vec![0; 1 << n];
    for a in all_subsets(n) {
        table[permute(a, perm).bits() as usize] = p.rank(a).unwrap();
    }
    Polymatroid::rank_table(n, table).unwrap()
}

/// Random permutation of `0..n`.
pub fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}
