//! Linear sum assignment by shortest augmenting paths (Hungarian method with
//! row/column potentials), `O(n^3)`.

use crate::error::GeometryError;

/// Dense row-major cost matrix with finite, nonnegative entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, GeometryError> {
        assert_eq!(
            data.len(),
            rows * cols,
            "data length must equal rows * cols"
        );
        if let Some(pos) = data.iter().position(|c| !c.is_finite() || *c < 0.0) {
            return Err(GeometryError::InvalidCost(
                pos / cols.max(1),
                pos % cols.max(1),
            ));
        }
        Ok(CostMatrix { rows, cols, data })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, GeometryError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GeometryError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GeometryError::NotSquare {
                rows: rows.len(),
                cols,
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }
}

/// A row-to-column bijection and its summed cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub mapping: Vec<usize>,
    pub total_cost: f64,
}

/// Minimum-cost perfect assignment of a square matrix.
pub fn solve_lsap(c: &CostMatrix) -> Result<Assignment, GeometryError> {
    if c.rows != c.cols {
        return Err(GeometryError::NotSquare {
            rows: c.rows,
            cols: c.cols,
        });
    }
    let mapping = hungarian(c.rows, |i, j| c.get(i, j));
    let total_cost = mapping.iter().enumerate().map(|(i, &j)| c.get(i, j)).sum();
    Ok(Assignment {
        mapping,
        total_cost,
    })
}

/// Core solver. `cost` may return `f64::INFINITY` for forbidden pairs as
/// long as a finite perfect assignment exists.
pub(crate) fn hungarian(n: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    // Each entry is read up to n times below; evaluate it once.
    let table: Vec<f64> = (0..n * n).map(|k| cost(k / n, k % n)).collect();
    // 1-based potentials; column 0 is a virtual source.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = table[(i0 - 1) * n + j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if j1 == 0 || minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            debug_assert!(delta.is_finite(), "no finite augmenting path");
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut mapping = vec![0; n];
    for j in 1..=n {
        mapping[owner[j] - 1] = j - 1;
    }
    mapping
}
