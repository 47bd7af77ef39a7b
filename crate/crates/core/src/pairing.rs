//! Middle-dimensional intersection pairing of an oriented complex with a
//! covering cocycle, and the von Neumann signature built from it.
//!
//! The pairing of two middle cochains is the cup-product value summed against
//! the fundamental cycle. Each top simplex contributes its front/back split
//! under the chosen local ordering; the lift bookkeeping shows up as one deck
//! translation from the front anchor to the back anchor. On harmonic (closed)
//! cochains the matrix is exactly (anti)symmetric, a fact this module checks
//! rather than enforces.

use crate::cochain::{
    character, harmonic_basis, twisted_deltas_exact, twisted_deltas_point, Realization,
};
use crate::covering::{explicit_cover, CoveringCocycle};
use crate::cup::{split_simplex, FaceSplit, LocalOrdering};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::matrix::{float_inertia, symmetric_inertia, Inertia};
use crate::scalar::{rat_int, Rat};
use crate::signature::{report_from_inertia, Method, QuadratureSpec, Real, SignatureReport};
use crate::simplicial::OrientedSimplicialComplex;
use crate::sparse::to_dense;
use nalgebra::DMatrix;
use num::{Signed, Zero};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Harmonic middle cochains and their pairing matrix, all exact.
#[derive(Clone, Debug)]
pub struct MiddlePairing {
    /// dense harmonic basis vectors, one per row
    pub harmonic: Vec<Vec<Rat>>,
    /// pairing matrix on that basis; symmetric for even middle degree,
    /// antisymmetric for odd
    pub matrix: Vec<Vec<Rat>>,
}

impl MiddlePairing {
    pub fn dim(&self) -> usize {
        self.harmonic.len()
    }

    pub fn inertia(&self) -> Result<Inertia> {
        symmetric_inertia(self.matrix.clone())
    }
}

fn fundamental_signs(complex: &OrientedSimplicialComplex) -> Result<&[i64]> {
    complex.orientation().ok_or_else(|| {
        Error::BadComplex("complex carries no orientation, orient it first".into())
    })
}

fn middle_splits(
    complex: &OrientedSimplicialComplex,
    ordering: &LocalOrdering,
) -> Result<Vec<FaceSplit>> {
    let d = complex.dim();
    (0..complex.simplex_count(d))
        .map(|t| split_simplex(complex, ordering, d, d / 2, t))
        .collect()
}

/// Exact harmonic intersection pairing for the trivial or regular
/// realization of the cocycle's group.
pub fn exact_middle_pairing(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    realization: &Realization,
    ordering: &LocalOrdering,
) -> Result<MiddlePairing> {
    let d = complex.dim();
    if d % 2 != 0 || d == 0 {
        return Err(Error::Dimension(format!(
            "middle pairing needs positive even dimension, got {d}"
        )));
    }
    if !realization.is_exact() {
        return Err(Error::UnsupportedModel(
            "torus points are float-valued, use point_middle_pairing".into(),
        ));
    }
    let fund = fundamental_signs(complex)?;
    let m = d / 2;
    let group = cocycle.group();
    let r = realization.block_size(group)?;
    let deltas = twisted_deltas_exact(complex, cocycle, realization)?;
    let block_len = complex.simplex_count(m) * r;
    let harmonic: Vec<Vec<Rat>> = harmonic_basis(&deltas, m)
        .into_iter()
        .map(|v| to_dense(&v, block_len))
        .collect();
    let h = harmonic.len();
    let splits = middle_splits(complex, ordering)?;

    // right-translation tables per covering label, built on demand
    let mut tables: Vec<Option<Vec<usize>>> = vec![None; group.order().unwrap_or(1)];
    let elements = if matches!(realization, Realization::RegularRep) {
        group.elements()?
    } else {
        Vec::new()
    };

    let mut matrix = vec![vec![Rat::zero(); h]; h];
    for (t, split) in splits.iter().enumerate() {
        let c = fund[t] * split.sign;
        if c == 0 {
            continue;
        }
        let table: &[usize] = match realization {
            Realization::Trivial => &[0],
            Realization::RegularRep => {
                let lab = cocycle.label(split.front_anchor, split.back_anchor);
                let key = group.elem_index(&lab)?;
                if tables[key].is_none() {
                    let tab = elements
                        .iter()
                        .map(|k| group.elem_index(&group.mul(k, &lab)?))
                        .collect::<Result<Vec<usize>>>()?;
                    tables[key] = Some(tab);
                }
                tables[key].as_ref().unwrap()
            }
            Realization::TorusPoint(_) => unreachable!(),
        };
        let c = rat_int(c);
        for (i, a) in harmonic.iter().enumerate() {
            for (j, b) in harmonic.iter().enumerate() {
                let mut acc = Rat::zero();
                for (off, bt) in table.iter().enumerate() {
                    let av = &a[split.front * r + off];
                    if av.is_zero() {
                        continue;
                    }
                    acc += av * &b[split.back * r + bt];
                }
                if !acc.is_zero() {
                    matrix[i][j] += &c * acc;
                }
            }
        }
    }

    let parity = if m % 2 == 0 { 1 } else { -1 };
    for i in 0..h {
        for j in 0..h {
            if matrix[i][j] != rat_int(parity) * &matrix[j][i] {
                return Err(Error::NotHermitian {
                    row: i,
                    col: j,
                    detail: "harmonic pairing lost its symmetry, conventions are broken".into(),
                });
            }
        }
    }
    Ok(MiddlePairing { harmonic, matrix })
}

/// Harmonic dimension and projected pairing matrix of the character twist
/// at one torus point.
pub fn point_middle_pairing(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    theta: &[f64],
    eps: f64,
) -> Result<(usize, DMatrix<Complex64>)> {
    let d = complex.dim();
    if d % 2 != 0 || d == 0 {
        return Err(Error::Dimension(format!(
            "middle pairing needs positive even dimension, got {d}"
        )));
    }
    let fund = fundamental_signs(complex)?;
    let m = d / 2;
    let deltas = twisted_deltas_point(complex, cocycle, theta)?;
    let n_m = complex.simplex_count(m);

    let mut laplacian = deltas[m].adjoint() * &deltas[m];
    if m > 0 {
        laplacian += &deltas[m - 1] * deltas[m - 1].adjoint();
    }
    let eig = nalgebra::SymmetricEigen::new(laplacian);
    let kept: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, ev)| ev.abs() <= eps)
        .map(|(i, _)| i)
        .collect();
    let hdim = kept.len();
    let mut v = DMatrix::zeros(n_m, hdim);
    for (col, &src) in kept.iter().enumerate() {
        v.set_column(col, &eig.eigenvectors.column(src));
    }

    let ordering = LocalOrdering::sorted(complex.vertex_count());
    let mut s = DMatrix::<Complex64>::zeros(n_m, n_m);
    for (t, split) in middle_splits(complex, &ordering)?.iter().enumerate() {
        let c = (fund[t] * split.sign) as f64;
        if c == 0.0 {
            continue;
        }
        let chi = character(
            &cocycle.label(split.front_anchor, split.back_anchor),
            theta,
        )?;
        s[(split.front, split.back)] += chi * c;
    }
    let p = v.adjoint() * s * v;
    let scale = p.norm().max(1.0);
    // hermitian for even middle degree, skew-hermitian for odd
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    let asym = (&p - p.adjoint().scale(parity)).norm();
    if asym > 1e-7 * scale {
        return Err(Error::NotHermitian {
            row: 0,
            col: 0,
            detail: format!("pointwise pairing asymmetry {asym:.3e} exceeds tolerance"),
        });
    }
    Ok((hdim, p))
}

/// (sign2, kernel, band fraction, largest middle dimension) averaged over
/// the jittered torus grid.
fn space_quadrature(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    rank: usize,
    spec: &QuadratureSpec,
) -> Result<(f64, f64, f64, usize)> {
    let n = spec.nodes_per_axis;
    let total = n
        .checked_pow(rank as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::BadData(format!("quadrature grid {n}^{rank} is too large")))?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.jitter_seed);
    let jitter: Vec<f64> = (0..rank).map(|_| rng.random::<f64>()).collect();
    let eps = spec.zero_threshold;
    let tau = 2.0 * std::f64::consts::PI;

    let (pos, neg, band, band_nodes, max_dim) = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut idx = flat;
            let theta: Vec<f64> = (0..rank)
                .map(|k| {
                    let i = idx % n;
                    idx /= n;
                    tau * (i as f64 + jitter[k]) / n as f64
                })
                .collect();
            let (hdim, p) = point_middle_pairing(complex, cocycle, &theta, eps)
                .expect("pointwise pairing failed on a quadrature node");
            let (pp, qq, zz) = float_inertia(&p, eps);
            (pp as u64, qq as u64, zz as u64, (zz > 0) as u64, hdim as u64)
        })
        .reduce(
            || (0, 0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3, a.4.max(b.4)),
        );

    let t = total as f64;
    Ok((
        (pos as f64 - neg as f64) / t,
        band as f64 / t,
        band_nodes as f64 / t,
        max_dim as usize,
    ))
}

/// Ordinary signature of the oriented complex itself: the untwisted middle
/// pairing, any covering labels ignored.
pub fn ordinary_space_signature(complex: &OrientedSimplicialComplex) -> Result<(i64, Inertia)> {
    let trivial = CoveringCocycle::trivial(GroupModel::trivial());
    let ordering = LocalOrdering::sorted(complex.vertex_count());
    let pairing = exact_middle_pairing(complex, &trivial, &Realization::Trivial, &ordering)?;
    let inertia = pairing.inertia()?;
    Ok((inertia.0 as i64 - inertia.1 as i64, inertia))
}

/// Von Neumann signature of the covering described by the cocycle. Finite
/// deck groups run exactly through the regular realization; free abelian
/// ones through torus quadrature.
pub fn l2_signature_of_space(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
    quad: Option<&QuadratureSpec>,
) -> Result<SignatureReport> {
    let d = complex.dim();
    if d == 0 || d % 4 != 0 {
        return Err(Error::Dimension(format!(
            "signature needs dimension divisible by 4, got {d}"
        )));
    }
    cocycle.validate(complex)?;
    let ordering = LocalOrdering::sorted(complex.vertex_count());
    let (ordinary, trivial_inertia) = ordinary_space_signature(complex)?;

    let group = cocycle.group();
    if let Some(order) = group.order() {
        if order == 1 {
            let h = trivial_inertia.0 + trivial_inertia.1 + trivial_inertia.2;
            return Ok(report_from_inertia(
                trivial_inertia,
                1,
                ordinary,
                Method::ExactFinite,
                h,
            ));
        }
        let pairing =
            exact_middle_pairing(complex, cocycle, &Realization::RegularRep, &ordering)?;
        return Ok(report_from_inertia(
            pairing.inertia()?,
            order,
            ordinary,
            Method::ExactFinite,
            pairing.dim(),
        ));
    }
    if let Some(rank) = group.rank() {
        let spec = quad.ok_or(Error::MissingQuadrature)?;
        let (s_fine, kernel, band, hdim) = space_quadrature(complex, cocycle, rank, spec)?;
        let coarse = QuadratureSpec {
            nodes_per_axis: (spec.nodes_per_axis / 2).max(2),
            ..*spec
        };
        let (s_coarse, _, _, _) = space_quadrature(complex, cocycle, rank, &coarse)?;
        return Ok(SignatureReport {
            sign2: Real::Approx(s_fine),
            ordinary_sign: ordinary,
            kernel_dim: Real::Approx(kernel),
            method: Method::TorusQuadrature,
            error_bound: band + (s_fine - s_coarse).abs(),
            dim: hdim,
        });
    }
    Err(Error::UnsupportedModel(
        "space signatures need a finite or free abelian deck group".into(),
    ))
}

/// The same signature through the explicit cover: build the covering
/// complex, pair it untwisted, divide by the number of sheets.
pub fn cover_route_signature(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
) -> Result<SignatureReport> {
    let d = complex.dim();
    if d == 0 || d % 4 != 0 {
        return Err(Error::Dimension(format!(
            "signature needs dimension divisible by 4, got {d}"
        )));
    }
    let order = cocycle
        .group()
        .order()
        .ok_or_else(|| Error::UnsupportedModel("explicit covers need a finite deck group".into()))?;
    let (ordinary, _) = ordinary_space_signature(complex)?;
    let cover = explicit_cover(complex, cocycle)?;
    let (_, inertia) = ordinary_space_signature(&cover)?;
    let h = inertia.0 + inertia.1 + inertia.2;
    Ok(report_from_inertia(
        inertia,
        order,
        ordinary,
        Method::ExplicitCover,
        h,
    ))
}
