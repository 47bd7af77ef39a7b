//! Whitney forms on the standard simplex and their exact integrals.
//!
//! Everything happens on one d-simplex with barycentric coordinates
//! x_0..x_d. The coordinate x_0 and its differential are eliminated via
//! x_0 = 1 - sum x_k, dx_0 = -sum dx_k, leaving polynomials in x_1..x_d.
//! Integration over the simplex is the Dirichlet formula, so all values
//! stay rational.

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rat};
use crate::simplicial::sort_sign;
use num::bigint::BigInt;
use num::Zero;
use std::collections::BTreeMap;

/// Polynomial in x_1..x_d with rational coefficients, keyed by exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    d: usize,
    terms: BTreeMap<Vec<u8>, Rat>,
}

impl Poly {
    pub fn zero(d: usize) -> Self {
        Poly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: Rat) -> Self {
        let mut p = Poly::zero(d);
        p.add_term(vec![0; d], c);
        p
    }

    /// The barycentric coordinate x_j, with x_0 written as 1 - sum x_k.
    pub fn bary(d: usize, j: usize) -> Self {
        assert!(j <= d);
        let mut p = Poly::zero(d);
        if j == 0 {
            p.add_term(vec![0; d], rat_int(1));
            for k in 0..d {
                let mut e = vec![0; d];
                e[k] = 1;
                p.add_term(e, rat_int(-1));
            }
        } else {
            let mut e = vec![0; d];
            e[j - 1] = 1;
            p.add_term(e, rat_int(1));
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u8>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = Poly::zero(self.d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Poly::zero(self.d);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Integral over the solid simplex sum x_k <= 1, x_k >= 0.
    pub fn integrate(&self) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let total: u64 = e.iter().map(|&a| a as u64).sum();
            let mut num = BigInt::from(1);
            for &a in e {
                num *= factorial(a as u64);
            }
            let den = factorial(self.d as u64 + total);
            acc += c * Rat::new(num, den);
        }
        acc
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Differential form on the simplex: polynomial coefficients keyed by
/// strictly increasing dx index sets (indices in 1..=d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    d: usize,
    degree: usize,
    terms: BTreeMap<Vec<u8>, Poly>,
}

impl Form {
    pub fn zero(d: usize, degree: usize) -> Self {
        Form {
            d,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        let mut f = Form::zero(d, 0);
        f.add_term(vec![], Poly::constant(d, rat_int(1)));
        f
    }

    pub fn from_poly(p: Poly) -> Self {
        let d = p.d;
        let mut f = Form::zero(d, 0);
        f.add_term(vec![], p);
        f
    }

    /// dx_j, with dx_0 written as -sum dx_k.
    pub fn dx(d: usize, j: usize) -> Self {
        assert!(j <= d);
        let mut f = Form::zero(d, 1);
        if j == 0 {
            for k in 1..=d {
                f.add_term(vec![k as u8], Poly::constant(d, rat_int(-1)));
            }
        } else {
            f.add_term(vec![j as u8], Poly::constant(d, rat_int(1)));
        }
        f
    }

    fn add_term(&mut self, idx: Vec<u8>, p: Poly) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(idx.len(), self.degree);
        match self.terms.get_mut(&idx) {
            Some(q) => {
                *q = q.add(&p);
                if q.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, p);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.d, self.degree), (other.d, other.degree));
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.add_term(i.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Form::zero(self.d, self.degree);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = Form::zero(self.d, self.degree);
        for (i, q) in &self.terms {
            out.add_term(i.clone(), q.mul(p));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = Form::zero(self.d, self.degree + other.degree);
        for (ia, pa) in &self.terms {
            'b: for (ib, pb) in &other.terms {
                for x in ia {
                    if ib.contains(x) {
                        continue 'b;
                    }
                }
                let mut merged: Vec<usize> =
                    ia.iter().chain(ib).map(|&x| x as usize).collect();
                let sign = sort_sign(&mut merged).expect("disjoint index sets");
                let idx = merged.into_iter().map(|x| x as u8).collect();
                out.add_term(idx, pa.mul(pb).scale(&rat_int(sign)));
            }
        }
        out
    }

    /// Integral of a top-degree form over the positively oriented simplex.
    pub fn integrate_top(&self) -> Result<Rat> {
        if self.degree != self.d {
            return Err(Error::Dimension(format!(
                "integrating a {}-form over a {}-simplex",
                self.degree, self.d
            )));
        }
        let full: Vec<u8> = (1..=self.d as u8).collect();
        Ok(self
            .terms
            .get(&full)
            .map(|p| p.integrate())
            .unwrap_or_else(Rat::zero))
    }
}

/// Whitney form of the elementary cochain on a sorted face of the standard
/// d-simplex:  p! sum_i (-1)^i x_{e_i} dx_{e_0} ^ ... (skip i) ... ^ dx_{e_p}.
pub fn whitney_form(d: usize, face: &[usize]) -> Result<Form> {
    if face.is_empty() || face.windows(2).any(|w| w[0] >= w[1]) || *face.last().unwrap() > d {
        return Err(Error::BadComplex(format!(
            "{face:?} is not a sorted face of the {d}-simplex"
        )));
    }
    let p = face.len() - 1;
    let mut acc = Form::zero(d, p);
    for i in 0..=p {
        let mut w = Form::one(d);
        for (l, &v) in face.iter().enumerate() {
            if l != i {
                w = w.wedge(&Form::dx(d, v));
            }
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&w.mul_poly(&Poly::bary(d, face[i]).scale(&rat_int(sign))));
    }
    Ok(acc.scale(&Rat::new(factorial(p as u64), BigInt::from(1))))
}

/// Orientation-comparison sign for two sorted faces that share exactly one
/// vertex and span the simplex: the parity of (front, back minus the shared
/// vertex) against 0..=d, corrected for pulling the shared vertex to the
/// start of the back face.
pub fn star_sign(front: &[usize], back: &[usize]) -> Result<i64> {
    let shared: Vec<usize> = front.iter().filter(|v| back.contains(v)).copied().collect();
    if shared.len() != 1 {
        return Err(Error::BadComplex(format!(
            "faces share {} vertices, need exactly 1",
            shared.len()
        )));
    }
    let v = shared[0];
    let pos = back.iter().position(|&x| x == v).unwrap();
    let eps2 = if pos % 2 == 0 { 1 } else { -1 };
    let mut seq: Vec<usize> = front
        .iter()
        .copied()
        .chain(back.iter().copied().filter(|&x| x != v))
        .collect();
    let sgn = sort_sign(&mut seq)
        .ok_or_else(|| Error::BadComplex("faces overlap in more than the shared vertex".into()))?;
    Ok(eps2 * sgn)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub spanning_pairs: usize,
    pub vanishing_pairs: usize,
}

/// Check, over the standard (p+q)-simplex, that the wedge of two Whitney
/// forms integrates to star * p! q! / (p+q+1)! whenever the faces share one
/// vertex, and vanishes identically whenever they share two or more.
pub fn whitney_pairing_check(p: usize, q: usize) -> Result<PairingCheck> {
    let d = p + q;
    let fronts = subsets(d + 1, p + 1);
    let backs = subsets(d + 1, q + 1);
    let expect_scale = Rat::new(
        factorial(p as u64) * factorial(q as u64),
        factorial(d as u64 + 1),
    );
    let mut check = PairingCheck {
        spanning_pairs: 0,
        vanishing_pairs: 0,
    };
    for f in &fronts {
        let wf = whitney_form(d, f)?;
        for b in &backs {
            let shared = f.iter().filter(|v| b.contains(v)).count();
            let wedge = wf.wedge(&whitney_form(d, b)?);
            if shared == 1 {
                let got = wedge.integrate_top()?;
                let want = rat_int(star_sign(f, b)?) * &expect_scale;
                if got != want {
                    return Err(Error::BadData(format!(
                        "integral over {f:?} x {b:?} is {got}, expected {want}"
                    )));
                }
                check.spanning_pairs += 1;
            } else {
                if !wedge.is_zero() {
                    return Err(Error::BadData(format!(
                        "wedge over {f:?} x {b:?} should vanish"
                    )));
                }
                check.vanishing_pairs += 1;
            }
        }
    }
    Ok(check)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn barycentric_coordinates_sum_to_one() {
        let sum = (0..=3).fold(Poly::zero(3), |acc, j| acc.add(&Poly::bary(3, j)));
        assert_eq!(sum, Poly::constant(3, rat_int(1)));
    }

    #[test]
    fn volume_of_the_simplex() {
        assert_eq!(Poly::constant(3, rat_int(1)).integrate(), rat(1, 6));
        assert_eq!(Poly::bary(3, 1).integrate(), rat(1, 24));
        assert_eq!(Poly::bary(3, 0).integrate(), rat(1, 24));
    }

    #[test]
    fn integral_inverts_whitney_on_top_cochains() {
        for d in 1..=4 {
            let top: Vec<usize> = (0..=d).collect();
            let w = whitney_form(d, &top).unwrap();
            assert_eq!(w.integrate_top().unwrap(), rat_int(1), "d={d}");
        }
    }

    #[test]
    fn wedge_anticommutes() {
        let a = Form::dx(4, 1).mul_poly(&Poly::bary(4, 2));
        let b = Form::dx(4, 3);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a).scale(&rat_int(-1));
        assert_eq!(ab, ba);
        assert!(Form::dx(4, 2).wedge(&Form::dx(4, 2)).is_zero());
    }

    #[test]
    fn known_edge_pairings_on_the_triangle() {
        let w01 = whitney_form(2, &[0, 1]).unwrap();
        let w12 = whitney_form(2, &[1, 2]).unwrap();
        assert_eq!(w01.wedge(&w12).integrate_top().unwrap(), rat(1, 6));
        assert_eq!(w12.wedge(&w01).integrate_top().unwrap(), rat(-1, 6));
        assert_eq!(star_sign(&[0, 1], &[1, 2]).unwrap(), 1);
        assert_eq!(star_sign(&[1, 2], &[0, 1]).unwrap(), -1);
    }

    #[test]
    fn pairing_check_small_degrees() {
        for (p, q) in [(0usize, 1usize), (1, 1), (1, 2), (2, 2)] {
            let c = whitney_pairing_check(p, q).unwrap();
            assert!(c.spanning_pairs > 0);
        }
    }
}
