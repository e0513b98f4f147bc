//! Profile (skyline) LDL^T factorization under reverse Cuthill-McKee
//! ordering, used as the direct solver behind shift-invert iterations.

use super::sparse::Csr;
use std::collections::VecDeque;

/// Reverse Cuthill-McKee permutation: perm[new] = old.
pub fn rcm_order(m: &Csr) -> Vec<usize> {
    let n = m.n;
    let degree = |v: usize| m.row_ptr[v + 1] - m.row_ptr[v];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    loop {
        let Some(seed) = (0..n).filter(|&v| !visited[v]).min_by_key(|&v| degree(v)) else {
            break;
        };
        // pseudo-peripheral: run one BFS and restart from the farthest vertex
        let start = bfs_farthest(m, seed, &visited);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        visited[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nbrs: Vec<usize> = (m.row_ptr[v]..m.row_ptr[v + 1])
                .map(|k| m.col_idx[k])
                .filter(|&w| !visited[w] && w != v)
                .collect();
            nbrs.sort_unstable_by_key(|&w| degree(w));
            for w in nbrs {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order.reverse();
    order
}

fn bfs_farthest(m: &Csr, seed: usize, visited_mask: &[bool]) -> usize {
    let mut dist = vec![usize::MAX; m.n];
    let mut queue = VecDeque::new();
    dist[seed] = 0;
    queue.push_back(seed);
    let mut last = seed;
    while let Some(v) = queue.pop_front() {
        last = v;
        for k in m.row_ptr[v]..m.row_ptr[v + 1] {
            let w = m.col_idx[k];
            if !visited_mask[w] && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    last
}

/// Symmetric profile factorization A = L D L^T with unit lower-triangular L.
pub struct SkylineFactor {
    perm: Vec<usize>, // perm[new] = old
    first: Vec<usize>,    // first stored column per row
    rows: Vec<Vec<f64>>,  // L entries, row i holds columns first[i]..i
    diag: Vec<f64>,
    pub negative_pivots: usize,
}

impl SkylineFactor {
    pub fn factor(a: &Csr) -> Result<SkylineFactor, String> {
        let n = a.n;
        let perm = rcm_order(a);
        let mut inv_perm = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv_perm[old] = new;
        }
        // profile: first nonzero column per permuted row
        let mut first = (0..n).collect::<Vec<usize>>();
        for i_old in 0..n {
            let i = inv_perm[i_old];
            for k in a.row_ptr[i_old]..a.row_ptr[i_old + 1] {
                let j = inv_perm[a.col_idx[k]];
                if j < i {
                    first[i] = first[i].min(j);
                }
            }
        }
        // load the matrix into the profile
        let mut rows: Vec<Vec<f64>> = (0..n).map(|i| vec![0.0; i - first[i]]).collect();
        let mut diag = vec![0.0; n];
        for i_old in 0..n {
            let i = inv_perm[i_old];
            for k in a.row_ptr[i_old]..a.row_ptr[i_old + 1] {
                let j = inv_perm[a.col_idx[k]];
                if j < i {
                    rows[i][j - first[i]] = a.values[k];
                } else if j == i {
                    diag[i] = a.values[k];
                }
            }
        }
        // factor in place
        let mut negative_pivots = 0;
        let scale: f64 = diag.iter().map(|d| d.abs()).sum::<f64>() / n as f64;
        for i in 0..n {
            let fi = first[i];
            for j in fi..i {
                // L[i][j] = (A[i][j] - sum_k L[i][k] D[k] L[j][k]) / D[j]
                let fj = first[j];
                let lo = fi.max(fj);
                let mut acc = rows[i][j - fi];
                for k in lo..j {
                    acc -= rows[i][k - fi] * diag[k] * rows[j][k - fj];
                }
                rows[i][j - fi] = acc / diag[j];
            }
            let mut d = diag[i];
            for k in fi..i {
                let l = rows[i][k - fi];
                d -= l * l * diag[k];
            }
            if d == 0.0 || !d.is_finite() {
                return Err(format!("zero pivot at permuted row {i}"));
            }
            if d.abs() < 1e-300 * scale.max(1.0) {
                return Err(format!("vanishing pivot at permuted row {i}"));
            }
            if d < 0.0 {
                negative_pivots += 1;
            }
            diag[i] = d;
        }
        Ok(SkylineFactor { perm, first, rows, diag, negative_pivots })
    }

    /// Solves A x = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = b[self.perm[i]];
        }
        // forward: L z = y
        for i in 0..n {
            let fi = self.first[i];
            let mut acc = y[i];
            for k in fi..i {
                acc -= self.rows[i][k - fi] * y[k];
            }
            y[i] = acc;
        }
        // diagonal
        for i in 0..n {
            y[i] /= self.diag[i];
        }
        // backward: L^T x = z
        for i in (0..n).rev() {
            let fi = self.first[i];
            let xi = y[i];
            for k in fi..i {
                y[k] -= self.rows[i][k - fi] * xi;
            }
        }
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[self.perm[i]] = y[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_solve_small_spd() {
        // 1D Laplacian + I on 6 points
        let n = 6;
        let mut t = vec![];
        for i in 0..n {
            t.push((i, i, 3.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        let a = Csr::from_triplets(n, &t);
        let f = SkylineFactor::factor(&a).unwrap();
        assert_eq!(f.negative_pivots, 0);
        let b = vec![1.0, 2.0, 3.0, -1.0, 0.5, 0.0];
        let x = f.solve(&b);
        let back = a.apply(&x);
        for i in 0..n {
            assert!((back[i] - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn inertia_counts_negative_pivots() {
        // diag(1, -2, 3) has one negative eigenvalue
        let a = Csr::from_triplets(3, &[(0, 0, 1.0), (1, 1, -2.0), (2, 2, 3.0)]);
        let f = SkylineFactor::factor(&a).unwrap();
        assert_eq!(f.negative_pivots, 1);
    }
}
