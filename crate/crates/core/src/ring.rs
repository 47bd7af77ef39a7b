//! Group rings Q(i)[G] with the conjugate-inverse star involution, the
//! coefficient-of-identity trace, and the left regular representation.

use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupMap, GroupModel, ProductModel};
use crate::matrix::Mat;
use crate::scalar::{rat_to_f64, Gaussian};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported element of Q(i)[G]. Zero coefficients are never
/// stored, so structural equality is semantic equality.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement {
    group: GroupModel,
    terms: BTreeMap<GroupElem, Gaussian>,
}

impl GroupRingElement {
    pub fn zero(group: GroupModel) -> Self {
        GroupRingElement {
            group,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: GroupModel) -> Self {
        let id = group.identity();
        let mut terms = BTreeMap::new();
        terms.insert(id, Gaussian::one());
        GroupRingElement { group, terms }
    }

    pub fn monomial(group: GroupModel, coeff: Gaussian, g: &GroupElem) -> Result<Self> {
        Self::from_terms(group, vec![(g.clone(), coeff)])
    }

    pub fn from_terms(
        group: GroupModel,
        terms: impl IntoIterator<Item = (GroupElem, Gaussian)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<GroupElem, Gaussian> = BTreeMap::new();
        for (g, c) in terms {
            let g = group.canon(&g)?;
            match map.entry(g) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement { group, terms: map })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &Gaussian)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElem) -> Gaussian {
        let Ok(g) = self.group.canon(g) else {
            return Gaussian::zero();
        };
        self.terms.get(&g).cloned().unwrap_or_else(Gaussian::zero)
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            match terms.entry(g.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            group: self.group.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Gaussian) -> Self {
        if s.is_zero() {
            return Self::zero(self.group.clone());
        }
        GroupRingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * s)).collect(),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut terms: BTreeMap<GroupElem, Gaussian> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh = self.group.mul(g, h)?;
                let c = a * b;
                match terms.entry(gh) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            group: self.group.clone(),
            terms,
        })
    }

    /// The star involution: conjugate coefficients, invert group elements.
    pub fn star(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| (self.group.inv(g).expect("stored elements are valid"), c.conj()))
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            terms,
        }
    }

    /// The von Neumann trace: the coefficient of the identity.
    pub fn vn_trace(&self) -> Gaussian {
        self.coeff(&self.group.identity())
    }

    /// Sum of all coefficients; the image under the map to the trivial group.
    pub fn augmentation(&self) -> Gaussian {
        let mut s = Gaussian::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// Left regular representation of a finite model: the |G| x |G| matrix
    /// with rho(a)[h,g] = a_{h g^-1}.
    pub fn regular_rep(&self) -> Result<Mat<Gaussian>> {
        if !matches!(
            self.group,
            GroupModel::FiniteCyclic(_) | GroupModel::FiniteTable(_)
        ) {
            return Err(Error::UnsupportedModel(format!(
                "regular representation needs a finite model, got {}",
                self.group
            )));
        }
        let n = self.group.order().unwrap();
        let mut m = Mat::zeros(n, n);
        for (g, c) in &self.terms {
            // a_g lands at every (h, g^-1 ... ) pair with h k^-1 = g, i.e.
            // columns k with h = g k.
            for k in 0..n {
                let kk = GroupElem::Finite(k);
                let h = self.group.mul(g, &kk)?;
                let hi = self.group.elem_index(&h)?;
                m.add_to(hi, k, c);
            }
        }
        Ok(m)
    }

    /// Evaluation of the Fourier series at a torus point, for free abelian
    /// models: sum of a_v * exp(i <v, theta>).
    pub fn fourier_eval(&self, theta: &[f64]) -> Result<Complex64> {
        let d = self.group.rank().ok_or_else(|| {
            Error::UnsupportedModel(format!(
                "Fourier evaluation needs a free abelian model, got {}",
                self.group
            ))
        })?;
        if theta.len() != d {
            return Err(Error::Dimension(format!(
                "torus point has {} coordinates, group has rank {d}",
                theta.len()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, c) in &self.terms {
            let v = g.exponents().expect("free abelian support");
            let phase: f64 = v.iter().zip(theta).map(|(&k, &t)| k as f64 * t).sum();
            let cc = Complex64::new(rat_to_f64(&c.re), rat_to_f64(&c.im));
            acc += cc * Complex64::new(0.0, phase).exp();
        }
        Ok(acc)
    }

    /// Pushforward along a group homomorphism: fibers of the map collect
    /// their coefficient sums.
    pub fn push(&self, map: &GroupMap) -> Result<Self> {
        if map.source().carrier() != self.group.carrier() {
            return Err(Error::GroupMismatch(format!(
                "map source {} does not match element group {}",
                map.source(),
                self.group
            )));
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (g, c) in &self.terms {
            out.push((map.apply(g)?, c.clone()));
        }
        Self::from_terms(map.target().clone(), out)
    }

    /// Entrywise relabeling into a product group, tensor-style:
    /// sum a_g b_h (g,h).
    pub fn tensor(&self, other: &Self, product: &ProductModel) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.push((product.pair(g, h)?, a * b));
            }
        }
        Self::from_terms(product.model.clone(), out)
    }

    /// Reinterprets the element over another model with identical carrier
    /// arithmetic (e.g. wrapping into or out of a tower).
    pub fn with_group(&self, group: GroupModel) -> Result<Self> {
        if group.carrier() != self.group.carrier() {
            return Err(Error::GroupMismatch(format!(
                "{} and {} have different carriers",
                group, self.group
            )));
        }
        Ok(GroupRingElement {
            group,
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};
    use num::Zero;

    fn zmod(n: usize) -> GroupModel {
        GroupModel::cyclic(n).unwrap()
    }

    fn zz() -> GroupModel {
        GroupModel::free_abelian(1).unwrap()
    }

    fn gen_z() -> GroupElem {
        GroupElem::Free(vec![1])
    }

    /// (1 - z) over the given model's generator convention.
    fn one_minus_gen(group: &GroupModel) -> GroupRingElement {
        let g = match group {
            GroupModel::FreeAbelian(_) => gen_z(),
            _ => GroupElem::Finite(1),
        };
        GroupRingElement::from_terms(
            group.clone(),
            vec![
                (group.identity(), Gaussian::one()),
                (g, -Gaussian::one()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn convolution_over_z() {
        // (1 - z)(1 - z^-1) = 2 - z - z^-1
        let a = one_minus_gen(&zz());
        let b = a.star();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(&GroupElem::Free(vec![0])), Gaussian::from_int(2));
        assert_eq!(p.coeff(&GroupElem::Free(vec![1])), Gaussian::from_int(-1));
        assert_eq!(p.coeff(&GroupElem::Free(vec![-1])), Gaussian::from_int(-1));
        assert_eq!(p.support_size(), 3);
    }

    #[test]
    fn convolution_wraps_in_finite_cyclic() {
        // (1 + z)^2 = 2 + 2z over Z/2
        let g = zmod(2);
        let a = GroupRingElement::from_terms(
            g.clone(),
            vec![
                (GroupElem::Finite(0), Gaussian::one()),
                (GroupElem::Finite(1), Gaussian::one()),
            ],
        )
        .unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&GroupElem::Finite(0)), Gaussian::from_int(2));
        assert_eq!(sq.coeff(&GroupElem::Finite(1)), Gaussian::from_int(2));
    }

    #[test]
    fn identity_is_neutral() {
        let a = one_minus_gen(&zz());
        let e = GroupRingElement::one(zz());
        assert_eq!(a.mul(&e).unwrap(), a);
        assert_eq!(e.mul(&a).unwrap(), a);
    }

    #[test]
    fn star_conjugates_and_inverts() {
        let a = one_minus_gen(&zz());
        let s = a.star();
        assert_eq!(s.coeff(&GroupElem::Free(vec![0])), Gaussian::one());
        assert_eq!(s.coeff(&GroupElem::Free(vec![-1])), -Gaussian::one());
        // i*z over Z/4 -> -i*z^3
        let g = zmod(4);
        let iz = GroupRingElement::monomial(g.clone(), Gaussian::i(), &GroupElem::Finite(1)).unwrap();
        let s = iz.star();
        assert_eq!(s.coeff(&GroupElem::Finite(3)), -Gaussian::i());
        assert_eq!(s.support_size(), 1);
    }

    #[test]
    fn star_is_an_involution_and_antihomomorphism() {
        let g = zmod(6);
        let a = GroupRingElement::from_terms(
            g.clone(),
            vec![
                (GroupElem::Finite(1), Gaussian::new(rat_int(2), rat_int(1))),
                (GroupElem::Finite(4), Gaussian::i()),
            ],
        )
        .unwrap();
        let b = GroupRingElement::from_terms(
            g.clone(),
            vec![
                (GroupElem::Finite(0), Gaussian::from_int(3)),
                (GroupElem::Finite(5), -Gaussian::one()),
            ],
        )
        .unwrap();
        assert_eq!(a.star().star(), a);
        assert_eq!(a.mul(&b).unwrap().star(), b.star().mul(&a.star()).unwrap());
    }

    #[test]
    fn trace_of_identity_is_one() {
        assert_eq!(GroupRingElement::one(zmod(5)).vn_trace(), Gaussian::one());
        assert_eq!(GroupRingElement::one(zz()).vn_trace(), Gaussian::one());
    }

    #[test]
    fn trace_positivity_on_a_a_star() {
        let a = one_minus_gen(&zz());
        let p = a.mul(&a.star()).unwrap();
        assert_eq!(p.vn_trace(), Gaussian::from_int(2));
        assert!(p.vn_trace().im.is_zero());
    }

    #[test]
    fn regular_rep_of_one_plus_z_over_z2() {
        let g = zmod(2);
        let a = GroupRingElement::from_terms(
            g,
            vec![
                (GroupElem::Finite(0), Gaussian::one()),
                (GroupElem::Finite(1), Gaussian::one()),
            ],
        )
        .unwrap();
        let m = a.regular_rep().unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(*m.get(r, c), Gaussian::one());
            }
        }
    }

    #[test]
    fn regular_rep_respects_trace_product_and_star() {
        let g = zmod(3);
        let a = GroupRingElement::from_terms(
            g.clone(),
            vec![
                (GroupElem::Finite(1), Gaussian::new(rat_int(1), rat_int(2))),
                (GroupElem::Finite(2), Gaussian::from_int(-3)),
            ],
        )
        .unwrap();
        let b = GroupRingElement::from_terms(
            g.clone(),
            vec![
                (GroupElem::Finite(0), Gaussian::i()),
                (GroupElem::Finite(1), Gaussian::one()),
            ],
        )
        .unwrap();
        // trace via the matrix equals |G| * vn_trace
        let m = a.regular_rep().unwrap();
        let mut diag = Gaussian::zero();
        for k in 0..3 {
            diag += m.get(k, k);
        }
        let t = a.vn_trace();
        assert_eq!(diag, Gaussian::from_int(3) * t);
        // rho(ab) = rho(a) rho(b)
        let mab = a.mul(&b).unwrap().regular_rep().unwrap();
        assert_eq!(mab, a.regular_rep().unwrap().mul(&b.regular_rep().unwrap()));
        // rho(a*) = rho(a)^H
        assert_eq!(a.star().regular_rep().unwrap(), m.conj_transpose());
    }

    #[test]
    fn regular_rep_rejects_infinite_models() {
        let a = one_minus_gen(&zz());
        assert!(matches!(
            a.regular_rep(),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn fourier_eval_of_laplacian_symbol() {
        // (1-z) + (1-z^-1) evaluates to 2 - 2 cos(theta)
        let a = one_minus_gen(&zz());
        let f = a.add(&a.star()).unwrap();
        for &theta in &[0.0f64, 0.3, 1.7, std::f64::consts::PI] {
            let v = f.fourier_eval(&[theta]).unwrap();
            assert!((v.re - (2.0 - 2.0 * theta.cos())).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn push_to_quotient_wraps_powers() {
        let q = GroupMap::from_generator_images(zz(), zmod(2), vec![GroupElem::Finite(1)]).unwrap();
        let a = one_minus_gen(&zz());
        let pushed = a.push(&q).unwrap();
        assert_eq!(pushed.coeff(&GroupElem::Finite(0)), Gaussian::one());
        assert_eq!(pushed.coeff(&GroupElem::Finite(1)), -Gaussian::one());
        // z^2 collapses onto the identity
        let z2 = GroupRingElement::monomial(zz(), Gaussian::one(), &GroupElem::Free(vec![2])).unwrap();
        let pushed = z2.push(&q).unwrap();
        assert_eq!(pushed, GroupRingElement::one(zmod(2)));
    }

    #[test]
    fn augmentation_kills_the_laplacian_symbol() {
        let a = one_minus_gen(&zz());
        let f = a.add(&a.star()).unwrap();
        assert!(f.augmentation().is_zero());
        assert_eq!(
            GroupRingElement::one(zz()).augmentation(),
            Gaussian::one()
        );
        let _ = Rat::zero();
    }

    #[test]
    fn mismatched_groups_error() {
        let a = one_minus_gen(&zz());
        let b = one_minus_gen(&zmod(3));
        assert!(matches!(a.add(&b), Err(Error::GroupMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch(_))));
    }
}
