//! Seeded random inputs for the verification suites: ring elements,
//! Hermitian forms, congruence matrices, and small deck groups.

use crate::error::Result;
use crate::form::{HermitianForm, Parity};
use crate::group::GroupModel;
use crate::ring::GroupRingElement;
use crate::scalar::{rat_int, Gaussian, Rat};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multiplication table of the symmetric group on three letters, elements
/// enumerated as (id, (12), (13), (23), (123), (132)).
fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|a| perms.iter().map(|b| find(compose(a, b))).collect())
        .collect()
}

/// A small finite deck group: cyclic of order 2..=6 or the nonabelian S3.
pub fn random_finite_group(rng: &mut impl Rng) -> Result<GroupModel> {
    if rng.random_range(0..4) == 0 {
        GroupModel::from_table(s3_table())
    } else {
        GroupModel::cyclic(rng.random_range(2..=6))
    }
}

fn random_coeff(rng: &mut impl Rng, gaussian: bool) -> Gaussian {
    let re = rat_int(rng.random_range(-2..=2));
    let im = if gaussian && rng.random_range(0..3) == 0 {
        rat_int(rng.random_range(-2..=2))
    } else {
        Rat::from_integer(0.into())
    };
    Gaussian::new(re, im)
}

/// Sparse element with a few random terms; coefficients are small integers,
/// occasionally with an imaginary part.
pub fn random_ring_element(rng: &mut impl Rng, group: &GroupModel) -> Result<GroupRingElement> {
    let elements = group.elements()?;
    let terms = rng.random_range(0..=2usize);
    let mut acc = GroupRingElement::zero(group.clone());
    for _ in 0..terms {
        let g = &elements[rng.random_range(0..elements.len())];
        let m = GroupRingElement::monomial(group.clone(), random_coeff(rng, true), g)?;
        acc = acc.add(&m)?;
    }
    Ok(acc)
}

/// n x n Hermitian form A + A* from a uniformly random A. The symmetrization
/// makes the parity contract hold by construction.
pub fn random_hermitian_form(
    rng: &mut impl Rng,
    group: &GroupModel,
    n: usize,
) -> Result<HermitianForm> {
    let mut a: Vec<Vec<GroupRingElement>> = Vec::with_capacity(n);
    for _ in 0..n {
        let row = (0..n)
            .map(|_| random_ring_element(rng, group))
            .collect::<Result<Vec<_>>>()?;
        a.push(row);
    }
    let mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a[i][j].add(&a[j][i].star()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    HermitianForm::new(mat, Parity::Hermitian)
}

/// Unit upper-triangular congruence matrix: ones on the diagonal, random
/// entries above. Always invertible over the group ring.
pub fn random_unit_triangular(
    rng: &mut impl Rng,
    group: &GroupModel,
    n: usize,
) -> Result<Vec<Vec<GroupRingElement>>> {
    let mut u = vec![vec![GroupRingElement::zero(group.clone()); n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if i == j {
                *slot = GroupRingElement::one(group.clone());
            } else if i < j {
                *slot = random_ring_element(rng, group)?;
            }
        }
    }
    Ok(u)
}

/// Permuted vertex ranking for ordering-independence checks: affine keys
/// modulo a prime well above any vertex count in the corpus.
pub fn scrambled_ordering(vertex_count: usize) -> crate::cup::LocalOrdering {
    let keys = (0..vertex_count as i64)
        .map(|v| (v * 7919 + 13) % 104729)
        .collect();
    crate::cup::LocalOrdering::from_keys(keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{l2_signature_of_form, ordinary_signature};

    #[test]
    fn s3_is_a_group_table() {
        let g = GroupModel::from_table(s3_table()).unwrap();
        assert_eq!(g.order(), Some(6));
    }

    #[test]
    fn random_forms_are_well_formed_and_reproducible() {
        let mut rng = seeded_rng(11);
        for _ in 0..10 {
            let group = random_finite_group(&mut rng).unwrap();
            let f = random_hermitian_form(&mut rng, &group, 2).unwrap();
            assert_eq!(f.size(), 2);
            let report = l2_signature_of_form(&f, None).unwrap();
            assert_eq!(report.ordinary_sign, ordinary_signature(&f).unwrap());
        }
        let mut a = seeded_rng(3);
        let mut b = seeded_rng(3);
        let g = GroupModel::cyclic(4).unwrap();
        let fa = random_hermitian_form(&mut a, &g, 3).unwrap();
        let fb = random_hermitian_form(&mut b, &g, 3).unwrap();
        assert!(fa.entries().zip(fb.entries()).all(|(x, y)| x == y));
    }

    #[test]
    fn unit_triangular_preserves_signature_numbers() {
        let mut rng = seeded_rng(5);
        let group = GroupModel::cyclic(3).unwrap();
        let f = random_hermitian_form(&mut rng, &group, 3).unwrap();
        let u = random_unit_triangular(&mut rng, &group, 3).unwrap();
        let g = f.transform(&u).unwrap();
        let rf = l2_signature_of_form(&f, None).unwrap();
        let rg = l2_signature_of_form(&g, None).unwrap();
        assert_eq!(rf.sign2.exact(), rg.sign2.exact());
        assert_eq!(rf.kernel_dim.exact(), rg.kernel_dim.exact());
    }

    #[test]
    fn scrambled_keys_are_injective_on_small_ranges() {
        let ord = scrambled_ordering(128);
        let mut seen = std::collections::HashSet::new();
        for v in 0..128 {
            assert!(seen.insert(ord.key(v).unwrap()));
        }
    }
}
