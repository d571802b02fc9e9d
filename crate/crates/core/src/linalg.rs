//! Exact Gauss–Jordan elimination over a [`Field`].

use crate::field::Field;

/// Row space kept in reduced row echelon form; rows are inserted one at a
/// time, so tall systems never have to be materialized.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a row; returns whether it raised the rank.
    pub fn insert(&mut self, mut row: Vec<F>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length must match column count");
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_negligible()) else {
            return false;
        };
        let inv = F::one() / row[p].clone();
        for x in row.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        row[p] = F::one();
        for r in self.rows.iter_mut() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    /// Basis of `{v : row . v = 0 for all rows}`, one vector per free column,
    /// with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (r, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -r[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn nullspace<F: Field>(rows: impl IntoIterator<Item = Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.nullspace()
}
