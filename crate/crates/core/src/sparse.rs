//! Sparse exact rational matrices with Markowitz-pivoted row echelon
//! reduction. Sized for cochain complexes of mid-sized triangulations: the
//! incidence-like inputs keep pivots at +-1 most of the time, so exact
//! arithmetic stays cheap.

use crate::scalar::Rat;
use num::{BigInt, Integer, One, Zero};

/// Divides a sparse integer row by the gcd of its entries.
fn divide_by_content(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

/// Row-major sparse matrix; each row is sorted by column index and never
/// stores zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut m = SparseMat::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rat)] {
        &self.data[r]
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |&(cc, _)| cc) {
            Ok(i) => {
                row[i].1 += v;
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => row.insert(i, (c, v)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.data[r].binary_search_by_key(&c, |&(cc, _)| cc) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        // pushed in increasing r per column => already sorted
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMat::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: Vec<(usize, Rat)> = Vec::new();
            for (k, v) in row {
                for (c, w) in &other.data[*k] {
                    let prod = v * w;
                    match acc.binary_search_by_key(c, |&(cc, _)| cc) {
                        Ok(i) => acc[i].1 += prod,
                        Err(i) => acc.insert(i, (*c, prod)),
                    }
                }
            }
            acc.retain(|(_, v)| !v.is_zero());
            out.data[r] = acc;
        }
        out
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut s = Rat::zero();
                for (c, v) in row {
                    if !x[*c].is_zero() {
                        s += v * &x[*c];
                    }
                }
                s
            })
            .collect()
    }

    pub fn apply_sparse(&self, x: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
        let mut dense = vec![Rat::zero(); self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                if let Ok(i) = x.binary_search_by_key(c, |&(cc, _)| cc) {
                    dense[r] += v * &x[i].1;
                }
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, v)| (r, v))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Row echelon reduction with Markowitz-style pivoting (smallest
    /// fill-in estimate, preferring unit pivots).
    pub fn echelon(&self) -> Echelon {
        let trace = std::env::var_os("L2SIG_TRACE").is_some();
        let cols = self.cols;
        // clear denominators and divide by the content: elimination runs on
        // primitive integer rows, so no per-operation rational gcd work
        let mut rows: Vec<Option<Vec<(usize, BigInt)>>> = self
            .data
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for (_, v) in row {
                    lcm = lcm.lcm(v.denom());
                }
                let mut int_row: Vec<(usize, BigInt)> = row
                    .iter()
                    .map(|(c, v)| (*c, v.numer() * &lcm / v.denom()))
                    .collect();
                divide_by_content(&mut int_row);
                Some(int_row)
            })
            .collect();
        // exact per-column counts over active rows
        let mut col_nnz = vec![0usize; cols];
        for row in rows.iter().flatten() {
            for (c, _) in row {
                col_nnz[*c] += 1;
            }
        }
        // column -> active rows touching it (lazily pruned)
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
        for (r, row) in rows.iter().enumerate() {
            if let Some(row) = row {
                for (c, _) in row {
                    col_rows[*c].push(r);
                }
            }
        }
        let mut pivot_col_taken = vec![false; cols];
        let mut u_rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();

        loop {
            // candidate columns: the sparsest unpivoted ones
            let mut cands: Vec<(usize, usize)> = Vec::new(); // (nnz, col), kept sorted
            const WIDTH: usize = 8;
            for c in 0..cols {
                if pivot_col_taken[c] || col_nnz[c] == 0 {
                    continue;
                }
                let key = (col_nnz[c], c);
                let pos = cands.partition_point(|&k| k < key);
                if pos < WIDTH {
                    cands.insert(pos, key);
                    cands.truncate(WIDTH);
                }
            }
            if cands.is_empty() {
                break;
            }

            // Markowitz: minimize fill bound (row - 1) * (col - 1), unit
            // pivots strictly preferred over everything else
            let mut best_row: Option<(bool, usize, usize, usize, usize)> = None;
            for &(cn, c) in &cands {
                col_rows[c].retain(|&r| {
                    let Some(row) = &rows[r] else { return false };
                    row.binary_search_by_key(&c, |&(cc, _)| cc).is_ok()
                });
                for &r in &col_rows[c] {
                    let row = rows[r].as_ref().unwrap();
                    let i = row.binary_search_by_key(&c, |&(cc, _)| cc).unwrap();
                    let non_unit = !row[i].1.magnitude().is_one();
                    let key = (non_unit, (row.len() - 1) * (cn - 1), row.len(), r, c);
                    if best_row.map_or(true, |b| key < b) {
                        best_row = Some(key);
                    }
                }
            }
            let (_, _, _, pr, pc) = best_row.expect("column counts said nonzero");

            let prow = rows[pr].take().unwrap();
            for (c, _) in &prow {
                col_nnz[*c] -= 1;
            }
            let pi = prow.binary_search_by_key(&pc, |&(cc, _)| cc).unwrap();
            let pval = prow[pi].1.clone();

            let mut victims: Vec<usize> = col_rows[pc]
                .iter()
                .copied()
                .filter(|&r| r != pr && rows[r].is_some())
                .collect();
            victims.sort_unstable();
            victims.dedup();
            // with a unit pivot p the update is row - (e * p) * prow; otherwise
            // fraction-free: p * row - e * prow, then divide out the content
            let unit = pval.magnitude().is_one();
            for r in victims {
                let row = rows[r].take().unwrap();
                let Ok(i) = row.binary_search_by_key(&pc, |&(cc, _)| cc) else {
                    rows[r] = Some(row);
                    continue;
                };
                let f = if unit { &row[i].1 * &pval } else { row[i].1.clone() };
                let mut merged = Vec::with_capacity(row.len() + prow.len());
                let (mut a, mut b) = (0usize, 0usize);
                while a < row.len() || b < prow.len() {
                    match (row.get(a), prow.get(b)) {
                        (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                            let v = if unit { va - &(&f * vb) } else { &(&pval * va) - &(&f * vb) };
                            if v.is_zero() {
                                col_nnz[*ca] -= 1;
                            } else {
                                merged.push((*ca, v));
                            }
                            a += 1;
                            b += 1;
                        }
                        (Some((ca, va)), Some((cb, _))) if ca < cb => {
                            let v = if unit { va.clone() } else { &pval * va };
                            merged.push((*ca, v));
                            a += 1;
                        }
                        (Some(_), Some((cb, vb))) => {
                            col_nnz[*cb] += 1;
                            col_rows[*cb].push(r);
                            merged.push((*cb, -(&f * vb)));
                            b += 1;
                        }
                        (Some((ca, va)), None) => {
                            let v = if unit { va.clone() } else { &pval * va };
                            merged.push((*ca, v));
                            a += 1;
                        }
                        (None, Some((cb, vb))) => {
                            col_nnz[*cb] += 1;
                            col_rows[*cb].push(r);
                            merged.push((*cb, -(&f * vb)));
                            b += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
                divide_by_content(&mut merged);
                rows[r] = Some(merged);
            }

            pivot_col_taken[pc] = true;
            pivot_cols.push(pc);
            u_rows.push(prow);
            if trace && pivot_cols.len() % 250 == 0 {
                let nnz: usize = rows.iter().flatten().map(|r| r.len()).sum();
                let bits = rows
                    .iter()
                    .flatten()
                    .flat_map(|r| r.iter())
                    .map(|(_, v)| v.bits())
                    .max()
                    .unwrap_or(0);
                eprintln!(
                    "echelon: {} pivots, active nnz {}, max entry bits {}",
                    pivot_cols.len(),
                    nnz,
                    bits
                );
            }
        }

        Echelon {
            cols,
            u_rows,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

/// Result of echelon reduction: primitive integer pivot rows in elimination
/// order, each with its pivot column.
pub struct Echelon {
    cols: usize,
    u_rows: Vec<Vec<(usize, BigInt)>>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut taken = vec![false; self.cols];
        for &c in &self.pivot_cols {
            taken[c] = true;
        }
        (0..self.cols).filter(|&c| !taken[c]).collect()
    }

    /// Kernel basis by back-substitution, one vector per free column.
    /// Vectors come out sparse, sorted by index.
    pub fn kernel_basis(&self) -> Vec<Vec<(usize, Rat)>> {
        let mut basis = Vec::new();
        for f in self.free_cols() {
            let mut x = vec![Rat::zero(); self.cols];
            x[f] = Rat::one();
            // pivot rows were produced top-down; solve bottom-up
            for (row, &pc) in self.u_rows.iter().zip(&self.pivot_cols).rev() {
                let mut s = Rat::zero();
                let mut pval = BigInt::zero();
                for (c, v) in row {
                    if *c == pc {
                        pval = v.clone();
                    } else if !x[*c].is_zero() {
                        s += Rat::from(v.clone()) * &x[*c];
                    }
                }
                if !s.is_zero() {
                    x[pc] = -s / Rat::from(pval);
                }
            }
            basis.push(
                x.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        basis
    }
}

/// Dense column from a sparse vector.
pub fn to_dense(v: &[(usize, Rat)], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dot(a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Rat {
    let mut s = Rat::zero();
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn from_dense(m: &[&[i64]]) -> SparseMat {
        SparseMat::from_triplets(
            m.len(),
            m[0].len(),
            m.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(c, &v)| (r, c, rat_int(v)))
            }),
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(from_dense(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(from_dense(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(
            from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(),
            2
        );
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let ech = m.echelon();
        let basis = ech.kernel_basis();
        assert_eq!(basis.len(), 1);
        for k in &basis {
            let img = m.apply(&to_dense(k, 3));
            assert!(img.iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn rank_nullity_on_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..30 {
            let rows = 3 + (trial % 5);
            let cols = 2 + (trial % 7);
            let m = SparseMat::from_triplets(
                rows,
                cols,
                (0..rows * cols).filter_map(|i| {
                    if rng.random::<f64>() < 0.4 {
                        let num = rng.random_range(-4i64..=4);
                        let den = rng.random_range(1i64..=3);
                        Some((i / cols, i % cols, rat(num, den)))
                    } else {
                        None
                    }
                }),
            );
            let ech = m.echelon();
            let basis = ech.kernel_basis();
            assert_eq!(ech.rank() + basis.len(), cols);
            for k in &basis {
                let img = m.apply(&to_dense(k, cols));
                assert!(img.iter().all(|v| v.is_zero()), "kernel vector escaped");
            }
            // kernel vectors are linearly independent: each free column
            // appears in exactly one of them with coefficient 1
            let free = ech.free_cols();
            for (k, &f) in basis.iter().zip(&free) {
                assert_eq!(dot(k, &[(f, rat_int(1))]), rat_int(1));
            }
        }
    }

    #[test]
    fn multiply_matches_dense() {
        let a = from_dense(&[&[1, 2], &[0, -1], &[3, 0]]);
        let b = from_dense(&[&[2, 0, 1], &[1, 1, 0]]);
        let p = a.mul(&b);
        let expect = from_dense(&[&[4, 2, 1], &[-1, -1, 0], &[6, 0, 3]]);
        assert_eq!(p, expect);
    }
}
