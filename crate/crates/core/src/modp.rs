//! Exact sparse kernels without entry swell: eliminate once modulo a big
//! prime to learn the pivot structure, lift each kernel vector p-adically
//! (Dixon) with rational reconstruction, and certify the result by an exact
//! multiply. Any hiccup (unlucky prime, reconstruction stall) falls back to
//! the all-rational echelon, so callers always get the true kernel.
//!
//! The certificate needs no probabilistic caveat: lifted vectors are
//! independent by their free-column pattern, and the mod-p nullity bounds the
//! rational nullity from above, so "all candidates verified" pins the
//! dimension.

use crate::scalar::Rat;
use crate::sparse::SparseMat;
use num::{BigInt, Integer, One, Signed, Zero};

/// 2^61 - 1, Mersenne.
const P: u64 = 2_305_843_009_213_693_951;

fn mm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mm(acc, b);
        }
        b = mm(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    debug_assert!(a % P != 0);
    powmod(a % P, P - 2)
}

fn bigint_mod(v: &BigInt) -> u64 {
    let m = v.mod_floor(&BigInt::from(P));
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// None when the denominator vanishes mod P.
fn rat_mod(v: &Rat) -> Option<u64> {
    let d = bigint_mod(v.denom());
    if d == 0 {
        return None;
    }
    Some(mm(bigint_mod(v.numer()), inv(d)))
}

/// Row operations in elimination order, replayable on any right-hand side.
enum Ev {
    /// row *= f
    Scale { row: u32, f: u64 },
    /// victim -= f * pivot_row
    Sub { victim: u32, pivot_row: u32, f: u64 },
}

struct ModEchelon {
    rows: usize,
    cols: usize,
    events: Vec<Ev>,
    /// (row, col) per pivot in elimination order; the scaled U rows have
    /// coefficient one at their own pivot column
    pivots: Vec<(usize, usize)>,
    /// pivot-column entries of each U row (later pivots only), for the
    /// back-substitution pass
    u_rows: Vec<Vec<(usize, u64)>>,
    zero_rows: Vec<usize>,
}

/// Markowitz-pivoted elimination mod P. Returns None when some entry's
/// denominator is divisible by P.
fn mod_echelon(m: &SparseMat) -> Option<ModEchelon> {
    let cols = m.cols();
    let mut rows: Vec<Option<Vec<(usize, u64)>>> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row: Vec<(usize, u64)> = Vec::with_capacity(m.row(r).len());
        for (c, v) in m.row(r) {
            let v = rat_mod(v)?;
            if v != 0 {
                row.push((*c, v));
            }
        }
        rows.push(Some(row));
    }

    let mut col_nnz = vec![0usize; cols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row.as_ref().unwrap() {
            col_nnz[*c] += 1;
            col_rows[*c].push(r);
        }
    }
    let mut pivot_col_taken = vec![false; cols];
    let mut events = Vec::new();
    let mut pivots = Vec::new();
    let mut u_rows: Vec<Vec<(usize, u64)>> = Vec::new();

    loop {
        let mut cands: Vec<(usize, usize)> = Vec::new();
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
        let mut best: Option<(usize, usize, usize, usize)> = None; // (score, len, row, col)
        for &(cn, c) in &cands {
            col_rows[c].retain(|&r| {
                let Some(row) = &rows[r] else { return false };
                row.binary_search_by_key(&c, |&(cc, _)| cc).is_ok()
            });
            for &r in &col_rows[c] {
                let len = rows[r].as_ref().unwrap().len();
                let key = ((len - 1) * (cn - 1), len, r, c);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, _, pr, pc) = best.expect("column counts said nonzero");

        let mut prow = rows[pr].take().unwrap();
        for (c, _) in &prow {
            col_nnz[*c] -= 1;
        }
        let pi = prow.binary_search_by_key(&pc, |&(cc, _)| cc).unwrap();
        if prow[pi].1 != 1 {
            let s = inv(prow[pi].1);
            for (_, v) in prow.iter_mut() {
                *v = mm(*v, s);
            }
            events.push(Ev::Scale { row: pr as u32, f: s });
        }

        let mut victims: Vec<usize> = col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r != pr && rows[r].is_some())
            .collect();
        victims.sort_unstable();
        victims.dedup();
        for r in victims {
            let row = rows[r].take().unwrap();
            let Ok(i) = row.binary_search_by_key(&pc, |&(cc, _)| cc) else {
                rows[r] = Some(row);
                continue;
            };
            let f = row[i].1;
            events.push(Ev::Sub { victim: r as u32, pivot_row: pr as u32, f });
            let mut merged = Vec::with_capacity(row.len() + prow.len());
            let (mut a, mut b) = (0usize, 0usize);
            while a < row.len() || b < prow.len() {
                match (row.get(a), prow.get(b)) {
                    (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                        let v = sub(*va, mm(f, *vb));
                        if v == 0 {
                            col_nnz[*ca] -= 1;
                        } else {
                            merged.push((*ca, v));
                        }
                        a += 1;
                        b += 1;
                    }
                    (Some((ca, va)), Some((cb, _))) if ca < cb => {
                        merged.push((*ca, *va));
                        a += 1;
                    }
                    (Some(_), Some((cb, vb))) => {
                        col_nnz[*cb] += 1;
                        col_rows[*cb].push(r);
                        merged.push((*cb, sub(0, mm(f, *vb))));
                        b += 1;
                    }
                    (Some((ca, va)), None) => {
                        merged.push((*ca, *va));
                        a += 1;
                    }
                    (None, Some((cb, vb))) => {
                        col_nnz[*cb] += 1;
                        col_rows[*cb].push(r);
                        merged.push((*cb, sub(0, mm(f, *vb))));
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            rows[r] = Some(merged);
        }

        pivot_col_taken[pc] = true;
        pivots.push((pr, pc));
        // only later pivot columns matter for back-substitution
        u_rows.push(
            prow.iter()
                .filter(|(c, _)| *c != pc && !pivot_col_taken[*c])
                .map(|&(c, v)| (c, v))
                .collect(),
        );
    }

    // u_rows kept entries whose columns were unpivoted at the time each row
    // was frozen; free columns must go
    let free: Vec<bool> = pivot_col_taken.iter().map(|t| !t).collect();
    for row in &mut u_rows {
        row.retain(|(c, _)| !free[*c]);
    }
    let zero_rows = rows
        .iter()
        .enumerate()
        .filter_map(|(r, row)| row.as_ref().map(|_| r))
        .collect();
    Some(ModEchelon {
        rows: m.rows(),
        cols,
        events,
        pivots,
        u_rows,
        zero_rows,
    })
}

impl ModEchelon {
    fn free_cols(&self) -> Vec<usize> {
        let mut taken = vec![false; self.cols];
        for &(_, c) in &self.pivots {
            taken[c] = true;
        }
        (0..self.cols).filter(|&c| !taken[c]).collect()
    }

    /// Solves A restricted to the pivot columns against `rhs` mod P.
    /// None when the transformed rhs is inconsistent on a dependent row.
    fn solve(&self, rhs: &mut [u64]) -> Option<Vec<(usize, u64)>> {
        debug_assert_eq!(rhs.len(), self.rows);
        for ev in &self.events {
            match ev {
                Ev::Scale { row, f } => {
                    let r = *row as usize;
                    rhs[r] = mm(rhs[r], *f);
                }
                Ev::Sub { victim, pivot_row, f } => {
                    let v = *victim as usize;
                    let p = *pivot_row as usize;
                    rhs[v] = sub(rhs[v], mm(*f, rhs[p]));
                }
            }
        }
        for &r in &self.zero_rows {
            if rhs[r] != 0 {
                return None;
            }
        }
        // y indexed by column; pivots processed in reverse elimination order
        let mut y: Vec<u64> = vec![0; self.cols];
        for (i, &(pr, pc)) in self.pivots.iter().enumerate().rev() {
            let mut acc = rhs[pr];
            for &(c, v) in &self.u_rows[i] {
                if y[c] != 0 {
                    acc = sub(acc, mm(v, y[c]));
                }
            }
            y[pc] = acc;
        }
        Some(
            self.pivots
                .iter()
                .map(|&(_, pc)| (pc, y[pc]))
                .collect(),
        )
    }
}

/// a/b from a residue u mod m with |a|, b <= sqrt(m/2), by the truncated
/// extended Euclid. None when no such fraction exists yet.
fn rat_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// One exact kernel vector with value one at the free column `f`, zeros at
/// the other free columns, lifted digit by digit until reconstruction
/// stabilizes. None when the lifting stalls or a consistency check fails.
fn lift_kernel_vector(
    m: &SparseMat,
    ech: &ModEchelon,
    col_of: &[Vec<(usize, Rat)>],
    f: usize,
    free: &[usize],
) -> Option<Vec<(usize, Rat)>> {
    let p_big = BigInt::from(P);
    // residual starts at minus the f column
    let mut residual: Vec<BigInt> = vec![BigInt::zero(); ech.rows];
    for (r, v) in &col_of[f] {
        if !v.denom().is_one() {
            return None;
        }
        residual[*r] = -v.numer().clone();
    }
    // accumulated p-adic digits per pivot column
    let mut acc: Vec<(usize, BigInt)> = ech.pivots.iter().map(|&(_, c)| (c, BigInt::zero())).collect();
    let mut modulus = BigInt::one();
    let max_iters = 200usize;
    let mut next_try = 4usize;
    for it in 0..max_iters {
        let mut rhs: Vec<u64> = residual.iter().map(bigint_mod).collect();
        let y = ech.solve(&mut rhs)?;
        // residual = (residual - A_P * y) / P
        let mut ybig: Vec<Option<BigInt>> = vec![None; ech.cols];
        for &(c, v) in &y {
            if v != 0 {
                ybig[c] = Some(BigInt::from(v));
            }
        }
        for r in 0..ech.rows {
            let mut s = std::mem::take(&mut residual[r]);
            for (c, v) in m.row(r) {
                if let Some(yv) = &ybig[*c] {
                    debug_assert!(v.denom().is_one());
                    s -= v.numer() * yv;
                }
            }
            let (q, rem) = s.div_rem(&p_big);
            if !rem.is_zero() {
                return None;
            }
            residual[r] = q;
        }
        for ((_, a), (_, d)) in acc.iter_mut().zip(&y) {
            *a += &modulus * BigInt::from(*d);
        }
        modulus *= &p_big;

        if it + 1 == next_try || residual.iter().all(|v| v.is_zero()) {
            next_try *= 2;
            let mut out: Vec<(usize, Rat)> = Vec::new();
            let mut ok = true;
            for (c, a) in &acc {
                match rat_reconstruct(a, &modulus) {
                    Some(v) => {
                        if !v.is_zero() {
                            out.push((*c, v));
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.push((f, Rat::one()));
                out.sort_by_key(|&(c, _)| c);
                if verify_kernel_vector(m, &out) && free.iter().all(|&g| g == f || !out.iter().any(|&(c, _)| c == g)) {
                    return Some(out);
                }
            }
        }
    }
    None
}

fn verify_kernel_vector(m: &SparseMat, x: &[(usize, Rat)]) -> bool {
    let mut dense: Vec<Option<&Rat>> = vec![None; m.cols()];
    for (c, v) in x {
        dense[*c] = Some(v);
    }
    for r in 0..m.rows() {
        let mut s = Rat::zero();
        for (c, v) in m.row(r) {
            if let Some(xv) = dense[*c] {
                s += v * xv;
            }
        }
        if !s.is_zero() {
            return false;
        }
    }
    true
}

/// Kernel basis of a sparse rational matrix, exact. Large instances go
/// through the mod-P structure plus lifting route; small ones and any failed
/// lift use the rational echelon directly. Output vectors are in echelon
/// form over the free columns, one per kernel dimension.
pub fn kernel_basis(m: &SparseMat) -> Vec<Vec<(usize, Rat)>> {
    let trace = std::env::var_os("L2SIG_TRACE").is_some();
    if m.cols() <= 192 {
        return m.echelon().kernel_basis();
    }
    // lifting wants integer columns; rescaling columns changes the kernel, so
    // just fall back when a denominator shows up (deltas are integral)
    let integral = (0..m.rows()).all(|r| m.row(r).iter().all(|(_, v)| v.denom().is_one()));
    let hybrid = if integral { mod_echelon(m) } else { None };
    if let Some(ech) = hybrid {
        let free = ech.free_cols();
        if free.is_empty() {
            return Vec::new();
        }
        let mut col_of: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); m.cols()];
        for r in 0..m.rows() {
            for (c, v) in m.row(r) {
                col_of[*c].push((r, v.clone()));
            }
        }
        let mut basis = Vec::with_capacity(free.len());
        let mut ok = true;
        for &f in &free {
            match lift_kernel_vector(m, &ech, &col_of, f, &free) {
                Some(v) => basis.push(v),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            // every candidate certified: mod-P nullity >= rational nullity,
            // and we exhibited that many independent exact kernel vectors
            return basis;
        }
        if trace {
            eprintln!("modp: lifting failed, falling back to the rational echelon");
        }
    }
    m.echelon().kernel_basis()
}
