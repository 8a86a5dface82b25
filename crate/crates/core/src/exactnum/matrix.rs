use super::{ExactError, GaussianRational};

/// Dense row-major matrix over Q(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape { rows, cols, len: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        Self::new(n, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![GaussianRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = GaussianRational::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::Shape { rows: rhs.rows, cols: rhs.cols, len: self.cols });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
                entries.push(acc);
            }
        }
        Ok(Self { rows: self.rows, cols: rhs.cols, entries })
    }

    fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rank over Q(i) by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = a[rank][col].inv().expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &inv;
                for c in col..self.cols {
                    let delta = &factor * &a[rank][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &p;
                inv[col][c] = &inv[col][c] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &da;
                    let di = &factor * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &di;
                }
            }
        }
        Ok(Some(Self::from_rows(inv)?))
    }
}

pub fn matrix_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// Outcome of intersecting two affine line equations in C².
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Point(GaussianRational, GaussianRational),
    /// Parallel, distinct lines.
    Inconsistent,
    /// Proportional equations: the same line.
    Underdetermined,
}

/// Solves `a1 z1 + b1 z2 + c1 = 0`, `a2 z1 + b2 z2 + c2 = 0` by Cramer's rule.
pub fn solve_linear_2(
    (a1, b1, c1): (&GaussianRational, &GaussianRational, &GaussianRational),
    (a2, b2, c2): (&GaussianRational, &GaussianRational, &GaussianRational),
) -> Result<LinearSolution, ExactError> {
    if (a1.is_zero() && b1.is_zero()) || (a2.is_zero() && b2.is_zero()) {
        return Err(ExactError::ZeroCoefficients);
    }
    let det = &(a1 * b2) - &(a2 * b1);
    if det.is_zero() {
        // Rows (a, b) are proportional; the system is consistent iff (a, b, c) are too.
        let cross_ac = &(a1 * c2) - &(a2 * c1);
        let cross_bc = &(b1 * c2) - &(b2 * c1);
        return Ok(if cross_ac.is_zero() && cross_bc.is_zero() {
            LinearSolution::Underdetermined
        } else {
            LinearSolution::Inconsistent
        });
    }
    // a1 z1 + b1 z2 = -c1, a2 z1 + b2 z2 = -c2
    let z1 = (&(b1 * c2) - &(b2 * c1)).checked_div(&det)?;
    let z2 = (&(a2 * c1) - &(a1 * c2)).checked_div(&det)?;
    Ok(LinearSolution::Point(z1, z2))
}
