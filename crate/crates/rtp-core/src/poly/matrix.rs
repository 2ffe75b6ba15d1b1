use super::{PolyError, SparsePolynomial};

/// Largest matrix dimension `poly_det_bareiss` accepts unless told otherwise.
pub const DEFAULT_DET_GUARD: usize = 12;

/// Fraction-free Gaussian elimination; every intermediate division is exact.
pub fn poly_det_bareiss(
    m: &[Vec<SparsePolynomial>],
    guard: usize,
) -> Result<SparsePolynomial, PolyError> {
    let n = m.len();
    let nvars = m
        .iter()
        .flatten()
        .map(SparsePolynomial::nvars)
        .max()
        .unwrap_or(0);
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(PolyError::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n > guard {
        return Err(PolyError::TooLarge { dim: n, max: guard });
    }
    if n == 0 {
        return Ok(SparsePolynomial::one(nvars));
    }
    let mut a: Vec<Vec<SparsePolynomial>> = m
        .iter()
        .map(|r| r.iter().map(|e| e.widen(nvars)).collect())
        .collect();
    let mut negate = false;
    let mut prev = SparsePolynomial::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Sparsest available pivot keeps the intermediate products small.
            let Some(r) = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].num_terms())
            else {
                return Ok(SparsePolynomial::zero(nvars));
            };
            a.swap(k, r);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = &row[j] * pivot;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&lead * &pivot_row[j]);
                }
                row[j] = if k == 0 { v } else { v.div_exact_unchecked(&prev) };
            }
            row[k] = SparsePolynomial::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Matrix whose entries are homogeneous linear forms (or zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Vec<SparsePolynomial>>,
}

impl LinearFormMatrix {
    pub fn new(entries: Vec<Vec<SparsePolynomial>>) -> Result<Self, PolyError> {
        let nrows = entries.len();
        let ncols = entries.first().map_or(0, Vec::len);
        for (r, row) in entries.iter().enumerate() {
            if row.len() != ncols {
                return Err(PolyError::NotSquare {
                    rows: nrows,
                    cols: row.len(),
                });
            }
            for (c, e) in row.iter().enumerate() {
                let linear = e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(1));
                if !linear {
                    return Err(PolyError::NotLinear { row: r, col: c });
                }
            }
        }
        Ok(LinearFormMatrix {
            nrows,
            ncols,
            entries,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entries(&self) -> &[Vec<SparsePolynomial>] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &SparsePolynomial {
        &self.entries[r][c]
    }

    pub fn determinant(&self, guard: usize) -> Result<SparsePolynomial, PolyError> {
        if self.nrows != self.ncols {
            return Err(PolyError::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        poly_det_bareiss(&self.entries, guard)
    }

    /// Same matrix without column `c`.
    pub fn drop_column(&self, c: usize) -> LinearFormMatrix {
        let entries: Vec<Vec<SparsePolynomial>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        LinearFormMatrix {
            nrows: self.nrows,
            ncols: self.ncols.saturating_sub(1),
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> SparsePolynomial {
        SparsePolynomial::parse_with_nvars(s, n).unwrap()
    }

    #[test]
    fn small_determinants() {
        let d = poly_det_bareiss(&[vec![p("x0", 2), p("0", 2)], vec![p("0", 2), p("x1", 2)]], 12)
            .unwrap();
        assert_eq!(d.to_string(), "x0*x1");
        let d = poly_det_bareiss(&[vec![p("x0", 2), p("x1", 2)], vec![p("x1", 2), p("x0", 2)]], 12)
            .unwrap();
        assert_eq!(d.to_string(), "x0^2 - x1^2");
    }

    #[test]
    fn pivoting_and_singular() {
        let m = vec![
            vec![p("0", 2), p("x0", 2)],
            vec![p("x1", 2), p("0", 2)],
        ];
        assert_eq!(poly_det_bareiss(&m, 12).unwrap().to_string(), "-x0*x1");
        let z = vec![vec![p("0", 1), p("x0", 1)], vec![p("0", 1), p("x0", 1)]];
        assert!(poly_det_bareiss(&z, 12).unwrap().is_zero());
    }

    #[test]
    fn guard_refuses_large() {
        let m = vec![vec![SparsePolynomial::one(1); 3]; 3];
        assert_eq!(
            poly_det_bareiss(&m, 2),
            Err(PolyError::TooLarge { dim: 3, max: 2 })
        );
    }

    #[test]
    fn linear_form_validation() {
        assert!(LinearFormMatrix::new(vec![vec![p("x0 + x1", 2)]]).is_ok());
        assert_eq!(
            LinearFormMatrix::new(vec![vec![p("x0 + 1", 2)]]),
            Err(PolyError::NotLinear { row: 0, col: 0 })
        );
    }
}
