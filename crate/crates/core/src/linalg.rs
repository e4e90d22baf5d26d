//! Dense linear algebra over `F_q`.

use crate::field::{FieldElement, Fq};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<FieldElement>>, k: &Fq) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = k.inv(rows[r][c]).unwrap();
        for v in rows[r].iter_mut() {
            *v = k.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c];
            for j in c..ncols {
                let sub = k.mul(f, rows[r][j]);
                rows[i][j] = k.sub(rows[i][j], sub);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<FieldElement>], k: &Fq) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, k).len()
}

/// Basis of `{v : M v = 0}` for an `nrows x ncols` matrix given by rows.
pub fn kernel(rows: &[Vec<FieldElement>], ncols: usize, k: &Fq) -> Vec<Vec<FieldElement>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, k);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = k.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}
