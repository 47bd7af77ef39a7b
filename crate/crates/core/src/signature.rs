//! Normalized signatures of validated forms. Finite groups get exact
//! congruence inertia on the regular representation; free abelian groups get
//! jittered quadrature over the dual torus; tower models get per-quotient
//! exact values.

use crate::error::{Error, Result};
use crate::form::{HermitianForm, Parity};
use crate::group::GroupModel;
use crate::matrix::{float_inertia, hermitian_inertia};
use crate::scalar::{rat_to_f64, Rat};
use num::{BigInt, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactFinite,
    TorusQuadrature,
    TowerLimit,
    ExplicitCover,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ExactFinite => "exact-finite",
            Method::TorusQuadrature => "torus-quadrature",
            Method::TowerLimit => "tower-limit",
            Method::ExplicitCover => "explicit-cover",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Exactly known rational or quadrature estimate.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(Rat),
    Approx(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => rat_to_f64(r),
            Real::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "{}", r),
            Real::Approx(x) => write!(f, "{}", x),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureReport {
    pub sign2: Real,
    pub ordinary_sign: i64,
    pub kernel_dim: Real,
    pub method: Method,
    pub error_bound: f64,
    /// rank of the underlying free module; |sign2| + kernel_dim <= dim
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_per_axis: usize,
    pub jitter_seed: u64,
    pub zero_threshold: f64,
}

impl QuadratureSpec {
    pub fn new(nodes_per_axis: usize, jitter_seed: u64, zero_threshold: f64) -> Result<Self> {
        if nodes_per_axis < 2 {
            return Err(Error::BadData("quadrature needs at least 2 nodes per axis".into()));
        }
        if !(zero_threshold > 0.0) {
            return Err(Error::BadData("zero threshold must be positive".into()));
        }
        Ok(QuadratureSpec {
            nodes_per_axis,
            jitter_seed,
            zero_threshold,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_axis: 2048,
            jitter_seed: 7,
            zero_threshold: 1e-9,
        }
    }
}

pub fn ordinary_signature(form: &HermitianForm) -> Result<i64> {
    if form.parity() != Parity::Hermitian {
        return Err(Error::SkewForm);
    }
    let (p, q, _) = hermitian_inertia(&form.augmented())?;
    Ok(p as i64 - q as i64)
}

pub fn l2_signature_of_form(
    form: &HermitianForm,
    spec: Option<&QuadratureSpec>,
) -> Result<SignatureReport> {
    if form.parity() != Parity::Hermitian {
        return Err(Error::SkewForm);
    }
    let ordinary = ordinary_signature(form)?;
    match form.group() {
        GroupModel::FiniteCyclic(_) | GroupModel::FiniteTable(_) => {
            let order = form.group().order().unwrap();
            let (p, q, z) = hermitian_inertia(&form.realized()?)?;
            let denom = Rat::from_integer(BigInt::from(order));
            let sign2 = Rat::from_integer(BigInt::from(p as i64 - q as i64)) / &denom;
            let kernel = Rat::from_integer(BigInt::from(z as i64)) / &denom;
            Ok(report_checked(
                Real::Exact(sign2),
                ordinary,
                Real::Exact(kernel),
                Method::ExactFinite,
                0.0,
                form.size(),
            ))
        }
        GroupModel::FreeAbelian(rank) => {
            let spec = spec.ok_or(Error::MissingQuadrature)?;
            let rank = *rank;
            let (sign2, kernel, band_frac) = quadrature_counts(form, rank, spec)?;
            let coarse = QuadratureSpec {
                nodes_per_axis: (spec.nodes_per_axis / 2).max(2),
                ..*spec
            };
            let (sign2_coarse, _, _) = quadrature_counts(form, rank, &coarse)?;
            let error_bound = band_frac + (sign2 - sign2_coarse).abs();
            Ok(report_checked(
                Real::Approx(sign2),
                ordinary,
                Real::Approx(kernel),
                Method::TorusQuadrature,
                error_bound,
                form.size(),
            ))
        }
        GroupModel::Tower(_) => Err(Error::BadGroup(
            "tower models report per-quotient values, use signature_tower".into(),
        )),
    }
}

/// (sign2, kernel, fraction of nodes with a near-zero eigenvalue), averaged
/// over the jittered grid. Counts are integers summed in parallel, so the
/// result does not depend on evaluation order.
fn quadrature_counts(
    form: &HermitianForm,
    rank: usize,
    spec: &QuadratureSpec,
) -> Result<(f64, f64, f64)> {
    let n = spec.nodes_per_axis;
    let total = n
        .checked_pow(rank as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::BadData(format!("quadrature grid {n}^{rank} is too large")))?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.jitter_seed);
    let jitter: Vec<f64> = (0..rank).map(|_| rng.random::<f64>()).collect();
    let eps = spec.zero_threshold;
    let tau = 2.0 * std::f64::consts::PI;

    let (pos, neg, band, band_nodes) = (0..total)
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
            let m = form.fourier_at(&theta).expect("free abelian entries");
            let (p, q, z) = float_inertia(&m, eps);
            (p as u64, q as u64, z as u64, (z > 0) as u64)
        })
        .reduce(
            || (0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        );

    let t = total as f64;
    Ok((
        (pos as f64 - neg as f64) / t,
        band as f64 / t,
        band_nodes as f64 / t,
    ))
}

/// Per-quotient normalized signatures of a form over a tower model.
pub fn signature_tower(form: &HermitianForm, depth: usize) -> Result<Vec<TowerRow>> {
    if form.parity() != Parity::Hermitian {
        return Err(Error::SkewForm);
    }
    let Some(tower) = form.group().tower_data() else {
        return Err(Error::BadGroup("signature_tower needs a tower model".into()));
    };
    if depth > tower.quotients.len() {
        return Err(Error::BadData(format!(
            "tower depth {depth} exceeds the {} stored quotients",
            tower.quotients.len()
        )));
    }
    let base_form = form.with_group(tower.base.clone())?;
    let mut rows = Vec::with_capacity(depth);
    for map in &tower.quotients[..depth] {
        let pushed = base_form.push(map)?;
        let report = l2_signature_of_form(&pushed, None)?;
        let index = map.index()?;
        rows.push(TowerRow {
            index,
            sign2: report.sign2.exact().unwrap().clone(),
            kernel_dim: report.kernel_dim.exact().unwrap().clone(),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerRow {
    /// index [G : G_k] of the quotient
    pub index: usize,
    pub sign2: Rat,
    pub kernel_dim: Rat,
}

fn report_checked(
    sign2: Real,
    ordinary_sign: i64,
    kernel_dim: Real,
    method: Method,
    error_bound: f64,
    dim: usize,
) -> SignatureReport {
    debug_assert!(
        sign2.to_f64().abs() + kernel_dim.to_f64() <= dim as f64 + 1e-9,
        "normalized dimensions exceed the module rank"
    );
    if let (Real::Exact(s), Real::Exact(k)) = (&sign2, &kernel_dim) {
        debug_assert!(
            (s.abs() + k.clone()) <= Rat::from_integer(BigInt::from(dim as i64)),
            "normalized dimensions exceed the module rank"
        );
        debug_assert!(!k.is_negative());
    }
    SignatureReport {
        sign2,
        ordinary_sign,
        kernel_dim,
        method,
        error_bound,
        dim,
    }
}

/// Assembles a report from an already computed inertia of a realized matrix,
/// normalized by the covering order. Shared by the cochain pipeline.
pub fn report_from_inertia(
    inertia: (usize, usize, usize),
    order: usize,
    ordinary_sign: i64,
    method: Method,
    dim: usize,
) -> SignatureReport {
    let (p, q, z) = inertia;
    let denom = Rat::from_integer(BigInt::from(order));
    report_checked(
        Real::Exact(Rat::from_integer(BigInt::from(p as i64 - q as i64)) / &denom),
        ordinary_sign,
        Real::Exact(Rat::from_integer(BigInt::from(z as i64)) / &denom),
        method,
        0.0,
        dim,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElem, GroupMap};
    use crate::ring::GroupRingElement;
    use crate::scalar::{rat, Gaussian};

    fn symbol(group: &GroupModel) -> HermitianForm {
        let one = GroupRingElement::one(group.clone());
        let z = GroupRingElement::monomial(
            group.clone(),
            Gaussian::from_int(1),
            &group.elem_from_int(1).unwrap(),
        )
        .unwrap();
        let a = one.sub(&z).unwrap();
        HermitianForm::from_element(a.add(&a.star()).unwrap()).unwrap()
    }

    #[test]
    fn finite_cyclic_counterexample_values() {
        for p in [2usize, 3, 5, 7, 11] {
            let f = symbol(&GroupModel::cyclic(p).unwrap());
            let r = l2_signature_of_form(&f, None).unwrap();
            assert_eq!(r.sign2, Real::Exact(rat(p as i64 - 1, p as i64)));
            assert_eq!(r.kernel_dim, Real::Exact(rat(1, p as i64)));
            assert_eq!(r.ordinary_sign, 0);
            assert_eq!(r.error_bound, 0.0);
            assert_eq!(r.method, Method::ExactFinite);
        }
    }

    #[test]
    fn identity_form_signature_is_rank() {
        let f = HermitianForm::identity_form(GroupModel::cyclic(6).unwrap(), 3);
        let r = l2_signature_of_form(&f, None).unwrap();
        assert_eq!(r.sign2, Real::Exact(rat(3, 1)));
        assert_eq!(r.kernel_dim, Real::Exact(rat(0, 1)));
        assert_eq!(r.ordinary_sign, 3);
    }

    #[test]
    fn quadrature_over_z_hits_one() {
        let f = symbol(&GroupModel::free_abelian(1).unwrap());
        let spec = QuadratureSpec::new(512, 7, 1e-9).unwrap();
        let r = l2_signature_of_form(&f, Some(&spec)).unwrap();
        assert_eq!(r.method, Method::TorusQuadrature);
        let s = r.sign2.to_f64();
        assert!((s - 1.0).abs() <= r.error_bound + 1e-12, "sign2 = {s}");
        assert!(r.kernel_dim.to_f64() < 0.01);
        assert_eq!(r.ordinary_sign, 0);
    }

    #[test]
    fn quadrature_requires_a_spec() {
        let f = symbol(&GroupModel::free_abelian(1).unwrap());
        assert!(matches!(
            l2_signature_of_form(&f, None),
            Err(Error::MissingQuadrature)
        ));
    }

    #[test]
    fn skew_forms_are_rejected() {
        let g = GroupModel::free_abelian(1).unwrap();
        let one = GroupRingElement::one(g.clone());
        let z = GroupRingElement::monomial(g.clone(), Gaussian::from_int(1), &GroupElem::Free(vec![1]))
            .unwrap();
        let f = HermitianForm::plumbing(vec![vec![one.sub(&z).unwrap()]], 1).unwrap();
        assert!(matches!(
            l2_signature_of_form(&f, None),
            Err(Error::SkewForm)
        ));
        assert!(matches!(ordinary_signature(&f), Err(Error::SkewForm)));
    }

    #[test]
    fn tower_of_cyclic_quotients_matches_closed_form() {
        let z = GroupModel::free_abelian(1).unwrap();
        let quotients: Vec<GroupMap> = (2..=8)
            .map(|k| {
                GroupMap::from_generator_images(
                    z.clone(),
                    GroupModel::cyclic(k).unwrap(),
                    vec![GroupElem::Finite(1)],
                )
                .unwrap()
            })
            .collect();
        let tower = GroupModel::tower(z.clone(), quotients).unwrap();
        let f = symbol(&z).with_group(tower).unwrap();
        let rows = signature_tower(&f, 7).unwrap();
        for row in &rows {
            let k = row.index as i64;
            assert_eq!(row.sign2, rat(k - 1, k));
            assert_eq!(row.kernel_dim, rat(1, k));
        }
    }

    #[test]
    fn tower_depth_is_bounded() {
        let z = GroupModel::free_abelian(1).unwrap();
        let q = GroupMap::from_generator_images(
            z.clone(),
            GroupModel::cyclic(2).unwrap(),
            vec![GroupElem::Finite(1)],
        )
        .unwrap();
        let tower = GroupModel::tower(z.clone(), vec![q]).unwrap();
        let f = symbol(&z).with_group(tower).unwrap();
        assert!(signature_tower(&f, 2).is_err());
        assert_eq!(signature_tower(&f, 1).unwrap().len(), 1);
    }

    #[test]
    fn induction_into_bigger_cyclic_preserves_report() {
        let g2 = GroupModel::cyclic(2).unwrap();
        let g4 = GroupModel::cyclic(4).unwrap();
        let f = symbol(&g2);
        let embed = GroupMap::from_generator_images(g2, g4, vec![GroupElem::Finite(2)]).unwrap();
        let induced = f.induce(&embed).unwrap();
        let before = l2_signature_of_form(&f, None).unwrap();
        let after = l2_signature_of_form(&induced, None).unwrap();
        assert_eq!(before.sign2, after.sign2);
        assert_eq!(before.kernel_dim, after.kernel_dim);
        assert_eq!(before.ordinary_sign, after.ordinary_sign);
        assert_eq!(before.sign2, Real::Exact(rat(1, 2)));
    }

    #[test]
    fn kunneth_worked_case_over_z6() {
        let f = symbol(&GroupModel::cyclic(2).unwrap());
        let g = symbol(&GroupModel::cyclic(3).unwrap());
        let t = f.kunneth_product(&g).unwrap();
        let r = l2_signature_of_form(&t, None).unwrap();
        assert_eq!(r.sign2, Real::Exact(rat(1, 3)));
        let rf = l2_signature_of_form(&f, None).unwrap();
        let rg = l2_signature_of_form(&g, None).unwrap();
        assert_eq!(
            rf.sign2.exact().unwrap() * rg.sign2.exact().unwrap(),
            rat(1, 3)
        );
    }
}
