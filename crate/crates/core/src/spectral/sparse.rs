//! Symmetric sparse matrices in CSR form, assembled from triplets.

#[derive(Clone, Debug)]
pub struct Csr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl Csr {
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Csr {
        let mut counts = vec![0usize; n + 1];
        for &(i, _, _) in triplets {
            counts[i + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut col_idx = vec![0usize; triplets.len()];
        let mut values = vec![0.0; triplets.len()];
        let mut cursor = counts.clone();
        for &(i, j, v) in triplets {
            let k = cursor[i];
            col_idx[k] = j;
            values[k] = v;
            cursor[i] += 1;
        }
        // sort each row and merge duplicates
        let mut out_col = Vec::with_capacity(triplets.len());
        let mut out_val = Vec::with_capacity(triplets.len());
        let mut row_ptr = vec![0usize; n + 1];
        for i in 0..n {
            let lo = counts[i];
            let hi = counts[i + 1];
            let mut row: Vec<(usize, f64)> = (lo..hi).map(|k| (col_idx[k], values[k])).collect();
            row.sort_unstable_by_key(|e| e.0);
            for (c, v) in row {
                if out_col.len() > row_ptr[i] && *out_col.last().unwrap() == c {
                    *out_val.last_mut().unwrap() += v;
                } else {
                    out_col.push(c);
                    out_val.push(v);
                }
            }
            row_ptr[i + 1] = out_col.len();
        }
        Csr { n, row_ptr, col_idx: out_col, values: out_val }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[i] = acc;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.matvec(x, &mut y);
        y
    }

    pub fn trace(&self) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.col_idx[k] == i {
                    t += self.values[k];
                }
            }
        }
        t
    }

    pub fn total_sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// C = a * self + b * other (same dimension, possibly different patterns).
    pub fn linear_combination(&self, a: f64, other: &Csr, b: f64) -> Csr {
        assert_eq!(self.n, other.n);
        let mut triplets = Vec::with_capacity(self.values.len() + other.values.len());
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                triplets.push((i, self.col_idx[k], a * self.values[k]));
            }
            for k in other.row_ptr[i]..other.row_ptr[i + 1] {
                triplets.push((i, other.col_idx[k], b * other.values[k]));
            }
        }
        Csr::from_triplets(self.n, &triplets)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assembles_and_merges_duplicates() {
        let m = Csr::from_triplets(2, &[(0, 0, 1.0), (0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 4.0)]);
        assert_eq!(m.apply(&[1.0, 1.0]), vec![4.0, 5.0]);
        assert_eq!(m.trace(), 7.0);
    }

    #[test]
    fn linear_combination_matches() {
        let a = Csr::from_triplets(2, &[(0, 0, 1.0), (1, 1, 1.0)]);
        let b = Csr::from_triplets(2, &[(0, 1, 1.0), (1, 0, 1.0)]);
        let c = a.linear_combination(2.0, &b, -3.0);
        assert_eq!(c.apply(&[1.0, 1.0]), vec![2.0 - 3.0, -3.0 + 2.0]);
    }
}
