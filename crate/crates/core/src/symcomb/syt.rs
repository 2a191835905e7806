//! Standard Young tableaux with descent sets and major index. Enumeration is
//! by backtracking, placing 1..n in turn and trying rows top to bottom, so
//! the output order is fixed.

use super::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SytData {
    pub tableau: Tableau,
    /// Entries s with s+1 in a strictly lower row, ascending.
    pub descents: Vec<u32>,
    /// Sum of the descent set.
    pub major_index: u32,
}

/// All standard Young tableaux of shape lambda, each with its descent set
/// and major index.
pub fn syt_enumerate(lambda: &Partition) -> Vec<SytData> {
    let n = lambda.size();
    let shape = lambda.parts();
    let mut fills: Vec<usize> = vec![0; shape.len()];
    let mut row_of: Vec<usize> = vec![0; n as usize + 1];
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|_| Vec::new()).collect();
    let mut out = Vec::new();

    fn place(
        next: u32,
        n: u32,
        shape: &[u32],
        fills: &mut Vec<usize>,
        row_of: &mut Vec<usize>,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<SytData>,
    ) {
        if next > n {
            let descents: Vec<u32> = (1..n)
                .filter(|&s| row_of[(s + 1) as usize] > row_of[s as usize])
                .collect();
            let major_index = descents.iter().sum();
            out.push(SytData {
                tableau: Tableau { rows: rows.clone() },
                descents,
                major_index,
            });
            return;
        }
        for r in 0..shape.len() {
            let col = fills[r];
            if col >= shape[r] as usize {
                continue;
            }
            if r > 0 && fills[r - 1] <= col {
                continue;
            }
            fills[r] += 1;
            rows[r].push(next);
            row_of[next as usize] = r;
            place(next + 1, n, shape, fills, row_of, rows, out);
            fills[r] -= 1;
            rows[r].pop();
        }
    }

    place(1, n, shape, &mut fills, &mut row_of, &mut rows, &mut out);
    out
}

/// Counts of standard tableaux of shape lambda by major index; index i of
/// the result holds the count with major index i, up to binom(n, 2).
pub fn syt_maj_distribution(lambda: &Partition) -> Vec<u64> {
    let n = lambda.size() as u64;
    let top = (n * n.saturating_sub(1) / 2) as usize;
    let mut dist = vec![0u64; top + 1];
    for t in syt_enumerate(lambda) {
        dist[t.major_index as usize] += 1;
    }
    dist
}
