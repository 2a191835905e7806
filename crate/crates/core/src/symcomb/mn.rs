//! Murnaghan–Nakayama rule for irreducible S_n character values, implemented
//! on beta-numbers (first-column hook lengths): removing a border strip of
//! length L is subtracting L from one beta-number, with sign given by the
//! number of beta-numbers jumped over.

use std::collections::HashMap;

use super::{CycleType, Partition, SymcombError};

/// chi_lambda(c_mu), exact. Errors with `SizeMismatch` when |lambda| != |mu|.
pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<i64, SymcombError> {
    if lambda.size() != mu.n() {
        return Err(SymcombError::SizeMismatch(lambda.size(), mu.n()));
    }
    let mut memo = HashMap::new();
    // recurse over the largest remaining part of mu first
    let mut parts: Vec<u32> = mu.partition().parts().to_vec();
    parts.sort_unstable();
    let betas = to_betas(lambda.parts());
    Ok(mn_rec(&betas, &mut parts, &mut memo))
}

fn to_betas(parts: &[u32]) -> Vec<u32> {
    // strictly decreasing: beta_i = lambda_i + (k - i), 1-indexed rows
    let k = parts.len();
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i) as u32)
        .collect()
}

fn from_betas(betas: &[u32]) -> Vec<u32> {
    // betas sorted descending; strip the staircase and drop zero parts
    let k = betas.len();
    let mut parts: Vec<u32> = betas
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn mn_rec(betas: &[u32], remaining: &mut Vec<u32>, memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    let part = match remaining.pop() {
        None => return 1,
        Some(p) => p,
    };
    let key = (betas.to_vec(), remaining.clone());
    let key = (key.0, {
        let mut k1 = key.1.clone();
        k1.push(part);
        k1
    });
    if let Some(&v) = memo.get(&key) {
        remaining.push(part);
        return v;
    }

    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        if b < part {
            continue;
        }
        let target = b - part;
        if betas.contains(&target) {
            continue;
        }
        // count beta-numbers strictly between target and b: each is a row
        // the strip passes through, contributing a factor of -1
        let jumped = betas
            .iter()
            .filter(|&&x| x > target && x < b)
            .count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next: Vec<u32> = betas.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let next = to_betas(&from_betas(&next));
        total += sign * mn_rec(&next, remaining, memo);
    }

    memo.insert(key, total);
    remaining.push(part);
    total
}

/// The full character table of S_n: values chi_lambda(c_mu) for all
/// lambda, mu of size n, computed with a shared memo.
pub struct CharacterTable {
    n: u32,
    lambdas: Vec<Partition>,
    mus: Vec<CycleType>,
    /// values[l][m] = chi_{lambdas[l]}(mus[m])
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambdas(&self) -> &[Partition] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[CycleType] {
        &self.mus
    }

    pub fn value(&self, lambda: &Partition, mu: &CycleType) -> Option<i64> {
        let l = self.lambdas.iter().position(|x| x == lambda)?;
        let m = self.mus.iter().position(|x| x == mu)?;
        Some(self.values[l][m])
    }

    pub fn row(&self, l: usize) -> &[i64] {
        &self.values[l]
    }
}

pub fn character_table(n: u32) -> CharacterTable {
    let lambdas = super::enumerate_partitions(n);
    let mus: Vec<CycleType> = lambdas.iter().map(|p| p.cycle_type()).collect();
    let values = lambdas
        .iter()
        .map(|lambda| {
            mus.iter()
                .map(|mu| mn_character(lambda, mu).expect("sizes match"))
                .collect()
        })
        .collect();
    CharacterTable {
        n,
        lambdas,
        mus,
        values,
    }
}
