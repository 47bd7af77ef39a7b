//! Realized twisted cochain complexes. A cocycle-labeled complex yields, for
//! each realization of the deck group, coboundary matrices on block vectors
//! with one block of size rep-dim per simplex:
//!
//!   (delta c)(tau) = rho(g(v0, v1)) c(face_0 tau) + sum_a (-1)^a c(face_a tau)
//!
//! The transport appears only on face 0 because lifts are anchored at the
//! least vertex, which face 0 removes.

use crate::covering::CoveringCocycle;
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::scalar::{rat_int, Rat};
use crate::simplicial::OrientedSimplicialComplex;
use crate::sparse::SparseMat;
use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum Realization {
    /// one-sheeted cover, rho = 1
    Trivial,
    /// blocks of size |G|, deck translations as permutation matrices
    RegularRep,
    /// rank-one character twist of a free abelian group at a torus point
    TorusPoint(Vec<f64>),
}

impl Realization {
    pub fn block_size(&self, group: &GroupModel) -> Result<usize> {
        match self {
            Realization::Trivial => Ok(1),
            Realization::RegularRep => group
                .order()
                .ok_or_else(|| Error::UnsupportedModel("regular blocks need a finite group".into())),
            Realization::TorusPoint(theta) => {
                let rank = group.rank().ok_or_else(|| {
                    Error::UnsupportedModel("torus points need a free abelian group".into())
                })?;
                if theta.len() != rank {
                    return Err(Error::Dimension(format!(
                        "torus point has {} coordinates for a rank-{rank} group",
                        theta.len()
                    )));
                }
                Ok(1)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Realization::TorusPoint(_))
    }
}

/// Permutation entries of the right-translation operator R_h, as (row, col)
/// pairs: R_h e_k = e_{k h^-1}.
fn right_translation(group: &GroupModel, h: &crate::group::GroupElem) -> Result<Vec<(usize, usize)>> {
    let elements = group.elements()?;
    let hinv = group.inv(h)?;
    elements
        .iter()
        .enumerate()
        .map(|(col, k)| Ok((group.elem_index(&group.mul(k, &hinv)?)?, col)))
        .collect()
}

/// Exact coboundaries for the trivial or regular realization:
/// `deltas[k]` maps k-cochains to (k+1)-cochains.
pub fn twisted_deltas_exact(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    realization: &Realization,
) -> Result<Vec<SparseMat>> {
    cocycle.validate(complex)?;
    let group = cocycle.group();
    let r = realization.block_size(group)?;
    if matches!(realization, Realization::TorusPoint(_)) {
        return Err(Error::UnsupportedModel(
            "torus points are float-valued, use twisted_deltas_point".into(),
        ));
    }
    let mut deltas = Vec::with_capacity(complex.dim());
    for k in 0..complex.dim() {
        let rows = complex.simplex_count(k + 1) * r;
        let cols = complex.simplex_count(k) * r;
        let mut m = SparseMat::zeros(rows, cols);
        for (t, s) in complex.simplices(k + 1).iter().enumerate() {
            for omit in 0..s.len() {
                let mut f = s.clone();
                f.remove(omit);
                let fi = complex
                    .simplex_index(k, &f)
                    .expect("skeleton is closed under faces");
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                if omit == 0 && !matches!(realization, Realization::Trivial) {
                    let h = cocycle.label(s[0], s[1]);
                    for (br, bc) in right_translation(group, &h)? {
                        m.add_to(t * r + br, fi * r + bc, rat_int(sign));
                    }
                } else {
                    for b in 0..r {
                        m.add_to(t * r + b, fi * r + b, rat_int(sign));
                    }
                }
            }
        }
        deltas.push(m);
    }
    Ok(deltas)
}

/// Pointwise coboundaries of the character twist at theta.
pub fn twisted_deltas_point(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    theta: &[f64],
) -> Result<Vec<DMatrix<Complex64>>> {
    cocycle.validate(complex)?;
    let group = cocycle.group();
    Realization::TorusPoint(theta.to_vec()).block_size(group)?;
    let mut deltas = Vec::with_capacity(complex.dim());
    for k in 0..complex.dim() {
        let mut m = DMatrix::zeros(complex.simplex_count(k + 1), complex.simplex_count(k));
        for (t, s) in complex.simplices(k + 1).iter().enumerate() {
            for omit in 0..s.len() {
                let mut f = s.clone();
                f.remove(omit);
                let fi = complex.simplex_index(k, &f).expect("closed under faces");
                let sign = if omit % 2 == 0 { 1.0 } else { -1.0 };
                let factor = if omit == 0 {
                    character(&cocycle.label(s[0], s[1]), theta)?
                } else {
                    Complex64::new(1.0, 0.0)
                };
                m[(t, fi)] += factor * sign;
            }
        }
        deltas.push(m);
    }
    Ok(deltas)
}

pub fn character(g: &crate::group::GroupElem, theta: &[f64]) -> Result<Complex64> {
    let exps = g
        .exponents()
        .ok_or_else(|| Error::BadElement("characters need free abelian elements".into()))?;
    let phase: f64 = exps
        .iter()
        .zip(theta)
        .map(|(&e, &t)| e as f64 * t)
        .sum();
    Ok(Complex64::from_polar(1.0, phase))
}

/// Kernel of the stacked operator [delta_k ; delta_{k-1}^T]: the harmonic
/// k-cochains of the exact realization. Entries are real, so the adjoint is
/// the transpose.
pub fn harmonic_basis(deltas: &[SparseMat], k: usize) -> Vec<Vec<(usize, Rat)>> {
    assert!(!deltas.is_empty(), "need at least one coboundary");
    let up = (k < deltas.len()).then(|| &deltas[k]);
    let down = (k > 0).then(|| deltas[k - 1].transpose());
    match (up, down) {
        (Some(u), Some(d)) => crate::modp::kernel_basis(&u.stack(&d)),
        (Some(u), None) => crate::modp::kernel_basis(u),
        (None, Some(d)) => crate::modp::kernel_basis(&d),
        (None, None) => unreachable!(),
    }
}

/// Betti-style dimension of the harmonic space at degree k.
pub fn harmonic_dim(deltas: &[SparseMat], k: usize) -> usize {
    harmonic_basis(deltas, k).len()
}
