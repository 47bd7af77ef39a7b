//! Simplicial cup products for a chosen local vertex ordering, plus the
//! ordering-averaged product on barycentric subdivisions.
//!
//! Cochains live on sorted simplices. A local ordering re-ranks the vertices
//! of each simplex; the front/back split happens in that ranking, and each
//! value is converted back to the sorted reference by a sort sign.

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rat};
use crate::simplicial::{sort_sign, OrientedSimplicialComplex};
use num::Zero;

/// Vertex ranking that is total on every simplex. Keys may repeat globally
/// as long as they stay distinct within each simplex that gets split.
#[derive(Clone, Debug)]
pub struct LocalOrdering {
    keys: Vec<i64>,
}

impl LocalOrdering {
    /// The sorted reference ordering: rank by vertex id.
    pub fn sorted(vertex_count: usize) -> Self {
        LocalOrdering {
            keys: (0..vertex_count as i64).collect(),
        }
    }

    pub fn from_keys(keys: Vec<i64>) -> Self {
        LocalOrdering { keys }
    }

    /// Rank a vertex of a subdivision by `perm[dimension tag]`.
    pub fn subdivision_levels(
        complex: &OrientedSimplicialComplex,
        perm: &[usize],
    ) -> Result<Self> {
        let tags = complex.subdivision_tags().ok_or_else(|| {
            Error::NotSubdivision("no dimension tags on this complex".into())
        })?;
        let keys = tags
            .vertex_dim
            .iter()
            .map(|&t| {
                perm.get(t)
                    .map(|&k| k as i64)
                    .ok_or_else(|| Error::BadOrdering(format!("no rank for tag {t}")))
            })
            .collect::<Result<_>>()?;
        Ok(LocalOrdering { keys })
    }

    pub fn key(&self, v: usize) -> Result<i64> {
        self.keys
            .get(v)
            .copied()
            .ok_or_else(|| Error::BadOrdering(format!("vertex {v} has no rank")))
    }
}

/// Front/back split of one simplex under a local ordering, with the sign
/// that converts a front-times-back evaluation to the sorted reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSplit {
    pub front: usize,
    pub back: usize,
    pub sign: i64,
    /// least vertex (by id) of the front face
    pub front_anchor: usize,
    /// least vertex (by id) of the back face
    pub back_anchor: usize,
}

/// Split the `idx`-th k-simplex into its ordering-first p-face and
/// ordering-last (k-p)-face, which share the middle vertex.
pub fn split_simplex(
    complex: &OrientedSimplicialComplex,
    ordering: &LocalOrdering,
    k: usize,
    p: usize,
    idx: usize,
) -> Result<FaceSplit> {
    if p > k {
        return Err(Error::Dimension(format!("front degree {p} exceeds {k}")));
    }
    let s = &complex.simplices(k)[idx];
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| ordering.key(s[i]).unwrap_or(i64::MAX));
    for w in order.windows(2) {
        if ordering.key(s[w[0]])? == ordering.key(s[w[1]])? {
            return Err(Error::BadOrdering(format!(
                "vertices {} and {} share rank inside a simplex",
                s[w[0]], s[w[1]]
            )));
        }
    }
    let eps_sigma = sort_sign(&mut order.clone()).expect("ranks are distinct");
    let mut front: Vec<usize> = order[..=p].iter().map(|&i| s[i]).collect();
    let mut back: Vec<usize> = order[p..].iter().map(|&i| s[i]).collect();
    let eps_front = sort_sign(&mut front).expect("simplex vertices are distinct");
    let eps_back = sort_sign(&mut back).expect("simplex vertices are distinct");
    let fi = complex
        .simplex_index(p, &front)
        .expect("faces are in the skeleton");
    let bi = complex
        .simplex_index(k - p, &back)
        .expect("faces are in the skeleton");
    Ok(FaceSplit {
        front: fi,
        back: bi,
        sign: eps_sigma * eps_front * eps_back,
        front_anchor: front[0],
        back_anchor: back[0],
    })
}

/// Alexander-Whitney cup of a p-cochain and a q-cochain under the ordering.
pub fn aw_cup(
    complex: &OrientedSimplicialComplex,
    ordering: &LocalOrdering,
    p: usize,
    q: usize,
    a: &[Rat],
    b: &[Rat],
) -> Result<Vec<Rat>> {
    let k = p + q;
    if k > complex.dim() {
        return Err(Error::Dimension(format!(
            "degree {k} exceeds complex dimension {}",
            complex.dim()
        )));
    }
    if a.len() != complex.simplex_count(p) || b.len() != complex.simplex_count(q) {
        return Err(Error::Dimension("cochain length is off".into()));
    }
    let mut out = vec![Rat::zero(); complex.simplex_count(k)];
    for (idx, slot) in out.iter_mut().enumerate() {
        let split = split_simplex(complex, ordering, k, p, idx)?;
        let term = &a[split.front] * &b[split.back];
        if !term.is_zero() {
            *slot = rat_int(split.sign) * term;
        }
    }
    Ok(out)
}

/// All rankings of the dimension tags of a subdivision, one ordering per
/// permutation of 0..=dim.
pub fn subdivision_orderings(
    complex: &OrientedSimplicialComplex,
) -> Result<Vec<LocalOrdering>> {
    let d = complex.dim();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..=d).collect();
    loop {
        out.push(LocalOrdering::subdivision_levels(complex, &perm)?);
        if !next_permutation(&mut perm) {
            return Ok(out);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Mean of `aw_cup` over every tag ranking of the subdivision.
pub fn averaged_cup(
    complex: &OrientedSimplicialComplex,
    p: usize,
    q: usize,
    a: &[Rat],
    b: &[Rat],
) -> Result<Vec<Rat>> {
    let orderings = subdivision_orderings(complex)?;
    let mut acc = vec![Rat::zero(); complex.simplex_count(p + q)];
    for ord in &orderings {
        for (slot, v) in acc.iter_mut().zip(aw_cup(complex, ord, p, q, a, b)?) {
            *slot += v;
        }
    }
    let n = rat_int(orderings.len() as i64);
    Ok(acc.into_iter().map(|v| v / &n).collect())
}

/// One entry of the averaged cup, without materializing the whole cochain.
pub fn averaged_cup_value(
    complex: &OrientedSimplicialComplex,
    p: usize,
    q: usize,
    a: &[Rat],
    b: &[Rat],
    idx: usize,
) -> Result<Rat> {
    if a.len() != complex.simplex_count(p) || b.len() != complex.simplex_count(q) {
        return Err(Error::Dimension("cochain length is off".into()));
    }
    let orderings = subdivision_orderings(complex)?;
    let mut acc = Rat::zero();
    for ord in &orderings {
        let split = split_simplex(complex, ord, p + q, p, idx)?;
        let term = &a[split.front] * &b[split.back];
        if !term.is_zero() {
            acc += rat_int(split.sign) * term;
        }
    }
    Ok(acc / rat_int(orderings.len() as i64))
}

/// The basis cochain supported on one sorted simplex.
pub fn elementary(
    complex: &OrientedSimplicialComplex,
    k: usize,
    simplex: &[usize],
) -> Result<Vec<Rat>> {
    let idx = complex
        .simplex_index(k, simplex)
        .ok_or_else(|| Error::BadComplex(format!("{simplex:?} is not a {k}-simplex here")))?;
    let mut c = vec![Rat::zero(); complex.simplex_count(k)];
    c[idx] = rat_int(1);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{full_simplex, sphere_complex};
    use crate::sparse::SparseMat;

    fn coboundary(c: &OrientedSimplicialComplex, k: usize) -> SparseMat {
        c.boundary_matrix(k + 1).transpose()
    }

    fn apply(m: &SparseMat, v: &[Rat]) -> Vec<Rat> {
        m.apply(v)
    }

    #[test]
    fn front_times_back_is_the_top_simplex() {
        let s2 = sphere_complex(2);
        let ord = LocalOrdering::sorted(s2.vertex_count());
        let a = elementary(&s2, 1, &[0, 1]).unwrap();
        let b = elementary(&s2, 1, &[1, 2]).unwrap();
        let cup = aw_cup(&s2, &ord, 1, 1, &a, &b).unwrap();
        let expect = elementary(&s2, 2, &[0, 1, 2]).unwrap();
        assert_eq!(cup, expect);
        // swapped supports never compose in the sorted order
        let cup2 = aw_cup(&s2, &ord, 1, 1, &b, &a).unwrap();
        assert!(cup2.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn unit_cochain_is_neutral() {
        let s2 = sphere_complex(2);
        let unit = vec![rat_int(1); s2.simplex_count(0)];
        for ord in [
            LocalOrdering::sorted(4),
            LocalOrdering::from_keys(vec![3, 0, 2, 1]),
        ] {
            for k in 0..=2 {
                for idx in 0..s2.simplex_count(k) {
                    let b = {
                        let mut c = vec![Rat::zero(); s2.simplex_count(k)];
                        c[idx] = rat_int(1);
                        c
                    };
                    assert_eq!(aw_cup(&s2, &ord, 0, k, &unit, &b).unwrap(), b);
                    assert_eq!(aw_cup(&s2, &ord, k, 0, &b, &unit).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn leibniz_on_the_sphere_for_a_scrambled_ordering() {
        let s3 = sphere_complex(3);
        let ord = LocalOrdering::from_keys(vec![4, 1, 3, 0, 2]);
        for (p, q) in [(0usize, 1usize), (1, 1), (0, 2)] {
            for ai in 0..s3.simplex_count(p) {
                for bi in 0..s3.simplex_count(q) {
                    let mut a = vec![Rat::zero(); s3.simplex_count(p)];
                    a[ai] = rat_int(1);
                    let mut b = vec![Rat::zero(); s3.simplex_count(q)];
                    b[bi] = rat_int(1);
                    let lhs = apply(
                        &coboundary(&s3, p + q),
                        &aw_cup(&s3, &ord, p, q, &a, &b).unwrap(),
                    );
                    let da = apply(&coboundary(&s3, p), &a);
                    let db = apply(&coboundary(&s3, q), &b);
                    let mut rhs = aw_cup(&s3, &ord, p + 1, q, &da, &b).unwrap();
                    let sgn = if p % 2 == 0 { 1 } else { -1 };
                    for (r, v) in rhs
                        .iter_mut()
                        .zip(aw_cup(&s3, &ord, p, q + 1, &a, &db).unwrap())
                    {
                        *r += rat_int(sgn) * v;
                    }
                    assert_eq!(lhs, rhs, "p={p} q={q} a={ai} b={bi}");
                }
            }
        }
    }

    #[test]
    fn averaged_cup_needs_tags() {
        let s2 = sphere_complex(2);
        let a = elementary(&s2, 1, &[0, 1]).unwrap();
        assert!(matches!(
            averaged_cup(&s2, 1, 1, &a, &a),
            Err(Error::NotSubdivision(_))
        ));
    }

    #[test]
    fn averaged_cup_flag_constants_on_a_subdivided_square() {
        // Sd of the 2-simplex: every top flag front/back pair hits 2/3!... no,
        // p!q!/(d+1)! with d = 2: (1,1) gives 1/6, (0,2) and (2,0) give 2/6.
        let sd = full_simplex(2).barycentric_subdivision().unwrap();
        for p in 0..=2usize {
            let q = 2 - p;
            let expect = crate::scalar::rat(
                (1..=p).product::<usize>() as i64 * (1..=q).product::<usize>() as i64,
                (1..=3).product::<usize>() as i64,
            );
            for (t, top) in sd.simplices(2).iter().enumerate() {
                let a = elementary(&sd, p, &top[..=p]).unwrap();
                let b = elementary(&sd, q, &top[p..]).unwrap();
                let full = averaged_cup(&sd, p, q, &a, &b).unwrap();
                for (i, v) in full.iter().enumerate() {
                    if i == t {
                        assert_eq!(v, &expect, "p={p} top={t}");
                    } else {
                        assert!(v.is_zero());
                    }
                }
                assert_eq!(averaged_cup_value(&sd, p, q, &a, &b, t).unwrap(), expect);
            }
        }
    }

    #[test]
    fn mismatched_flag_faces_average_to_zero() {
        let sd = full_simplex(2).barycentric_subdivision().unwrap();
        let tops = sd.simplices(2);
        // front of one flag against the back of a flag not containing it
        let (t0, t1) = (tops[0].clone(), tops[1].clone());
        let a = elementary(&sd, 1, &t0[..2]).unwrap();
        let b = elementary(&sd, 1, &t1[1..]).unwrap();
        let cup = averaged_cup(&sd, 1, 1, &a, &b).unwrap();
        let shared: Vec<usize> = t0[..2].iter().filter(|v| t1[1..].contains(v)).copied().collect();
        if shared.len() != 1 {
            assert!(cup.iter().all(|v| v.is_zero()));
        }
    }
}
