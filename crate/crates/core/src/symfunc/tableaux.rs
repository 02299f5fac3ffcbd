//! Symmetric-group characters (Murnaghan–Nakayama), Kostka numbers and
//! principal specializations of Schur functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::partition::Partition;

/// `χ^λ(μ)` for all `λ, μ ⊢ n`.
#[derive(Debug)]
pub struct CharacterTable {
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    fn build(n: usize) -> Self {
        let partitions = Partition::all(n);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lam| partitions.iter().map(|mu| mn_character(lam.parts(), mu.parts(), &mut memo)).collect())
            .collect();
        CharacterTable { partitions, index, values }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[mu]]
    }
}

/// Shared table for degree `n`, built once.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().expect("character cache poisoned").get(&n) {
        return t.clone();
    }
    let built = Arc::new(CharacterTable::build(n));
    tables.lock().expect("character cache poisoned").entry(n).or_insert(built).clone()
}

/// Murnaghan–Nakayama on beta-sets: removing a rim hook of length `r` moves one
/// bead from `b` to `b - r`, with sign given by the beads jumped over.
fn mn_character(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = b - r;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_character(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `z_μ = Π_i i^(m_i) m_i!`, the centralizer order of cycle type `μ`.
pub fn z_mu(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (i, &m) in mu.multiplicities().iter().enumerate().skip(1) {
        for k in 1..=m {
            z *= BigInt::from(i) * BigInt::from(k);
        }
    }
    z
}

/// `K_{λ,μ}`: semistandard tableaux of shape `λ` and content `μ` (any order).
pub fn kostka(lambda: &Partition, content: &[usize]) -> u64 {
    let mut mu: Vec<usize> = content.iter().copied().filter(|&c| c > 0).collect();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    if lambda.weight() != mu.iter().sum::<usize>() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.parts(), &mu, &mut memo)
}

/// Strips the largest entry: `λ/ν` must be a horizontal strip of size `μ_last`.
fn kostka_rec(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
    let Some((&last, rest)) = mu.split_last() else {
        return lambda.is_empty() as u64;
    };
    if lambda.len() > mu.len() {
        return 0;
    }
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    let mut nu = vec![0usize; lambda.len()];
    fn strips(
        lambda: &[usize],
        i: usize,
        remaining: usize,
        nu: &mut Vec<usize>,
        rest: &[usize],
        memo: &mut HashMap<(Vec<usize>, usize), u64>,
        total: &mut u64,
    ) {
        if i == lambda.len() {
            if remaining == 0 {
                let shape: Vec<usize> = nu.iter().copied().filter(|&p| p > 0).collect();
                *total += kostka_rec(&shape, rest, memo);
            }
            return;
        }
        let lower = lambda.get(i + 1).copied().unwrap_or(0);
        for v in lower..=lambda[i] {
            let taken = lambda[i] - v;
            if taken > remaining {
                continue;
            }
            nu[i] = v;
            strips(lambda, i + 1, remaining - taken, nu, rest, memo, total);
        }
    }
    strips(lambda, 0, last, &mut nu, rest, memo, &mut total);
    memo.insert(key, total);
    total
}

/// `s_λ(1^p)` by the hook-content formula.
pub fn schur_dimension(lambda: &Partition, p: usize) -> BigInt {
    let conj = lambda.conjugate();
    let mut acc = BigRational::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let content = p as i64 + j as i64 - i as i64;
            let hook = (row - j) + (conj.parts()[j] - i) - 1;
            acc *= BigRational::new(BigInt::from(content), BigInt::from(hook));
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}
