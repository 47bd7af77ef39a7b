//! Hermitian and skew-Hermitian forms over group rings: square matrices F
//! with F* = ±F entrywise, where * conjugates coefficients, inverts group
//! elements, and transposes.

use crate::error::{Error, Result};
use crate::group::{GroupMap, GroupModel};
use crate::matrix::Mat;
use crate::ring::GroupRingElement;
use crate::scalar::Gaussian;
use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Hermitian,
    Skew,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Hermitian => 1,
            Parity::Skew => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Hermitian => Parity::Skew,
            Parity::Skew => Parity::Hermitian,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm {
    group: GroupModel,
    parity: Parity,
    n: usize,
    // row-major, entry (i, j) at i*n + j
    mat: Vec<GroupRingElement>,
}

impl HermitianForm {
    /// Validates the star-transpose symmetry M[j][i]* = parity * M[i][j]
    /// entrywise and returns the form.
    pub fn new(matrix: Vec<Vec<GroupRingElement>>, parity: Parity) -> Result<Self> {
        let n = matrix.len();
        let group = match matrix.first().and_then(|r| r.first()) {
            Some(e) => e.group().clone(),
            None => {
                return Err(Error::BadData(
                    "empty form needs an explicit group, use zero_form".into(),
                ))
            }
        };
        let mut mat = Vec::with_capacity(n * n);
        for row in &matrix {
            if row.len() != n {
                return Err(Error::BadData(format!(
                    "form matrix is not square: {} rows, a row of width {}",
                    n,
                    row.len()
                )));
            }
            for e in row {
                if e.group() != &group {
                    return Err(Error::GroupMismatch(
                        "form entries over different group models".into(),
                    ));
                }
                mat.push(e.clone());
            }
        }
        let form = HermitianForm {
            group,
            parity,
            n,
            mat,
        };
        form.check_symmetry()?;
        Ok(form)
    }

    pub fn zero_form(group: GroupModel, n: usize) -> Self {
        let mat = vec![GroupRingElement::zero(group.clone()); n * n];
        HermitianForm {
            group,
            parity: Parity::Hermitian,
            n,
            mat,
        }
    }

    pub fn identity_form(group: GroupModel, n: usize) -> Self {
        let mut f = Self::zero_form(group.clone(), n);
        for i in 0..n {
            f.mat[i * n + i] = GroupRingElement::one(group.clone());
        }
        f
    }

    pub fn from_element(a: GroupRingElement) -> Result<Self> {
        Self::new(vec![vec![a]], Parity::Hermitian)
    }

    pub fn diagonal(entries: Vec<GroupRingElement>) -> Result<Self> {
        let group = match entries.first() {
            Some(e) => e.group().clone(),
            None => return Err(Error::BadData("empty diagonal".into())),
        };
        let n = entries.len();
        let mut f = Self::zero_form(group, n);
        for (i, e) in entries.into_iter().enumerate() {
            f.mat[i * n + i] = e;
        }
        f.check_symmetry()?;
        Ok(f)
    }

    fn check_symmetry(&self) -> Result<()> {
        let sign = Gaussian::from_int(self.parity.sign());
        for i in 0..self.n {
            for j in 0..=i {
                let expect = self.entry(i, j).star().scale(&sign);
                if &expect != self.entry(j, i) {
                    return Err(Error::NotHermitian {
                        row: j,
                        col: i,
                        detail: format!(
                            "entry ({j},{i}) = {}, but star of ({i},{j}) gives {}",
                            self.entry(j, i),
                            expect
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.mat[i * self.n + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElement)> {
        self.mat
            .iter()
            .enumerate()
            .map(|(k, e)| (k / self.n, k % self.n, e))
    }

    /// psi + (-1)^k psi*; even k is Hermitian, odd k skew.
    pub fn plumbing(psi: Vec<Vec<GroupRingElement>>, k: i64) -> Result<Self> {
        let n = psi.len();
        let group = match psi.first().and_then(|r| r.first()) {
            Some(e) => e.group().clone(),
            None => return Err(Error::BadData("empty plumbing seed".into())),
        };
        for row in &psi {
            if row.len() != n {
                return Err(Error::BadData("plumbing seed is not square".into()));
            }
        }
        let parity = if k % 2 == 0 {
            Parity::Hermitian
        } else {
            Parity::Skew
        };
        let sign = Gaussian::from_int(parity.sign());
        let mut mat = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mat.push(psi[i][j].add(&psi[j][i].star().scale(&sign))?);
            }
        }
        let form = HermitianForm {
            group,
            parity,
            n,
            mat,
        };
        debug_assert!(form.check_symmetry().is_ok());
        Ok(form)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                "direct sum needs a common group model".into(),
            ));
        }
        if self.parity != other.parity {
            return Err(Error::BadData("direct sum of mixed parities".into()));
        }
        let n = self.n + other.n;
        let mut f = Self::zero_form(self.group.clone(), n);
        f.parity = self.parity;
        for (i, j, e) in self.entries() {
            f.mat[i * n + j] = e.clone();
        }
        for (i, j, e) in other.entries() {
            f.mat[(self.n + i) * n + (self.n + j)] = e.clone();
        }
        Ok(f)
    }

    /// Congruent form U F U*; the report of the result must match F's.
    pub fn transform(&self, u: &[Vec<GroupRingElement>]) -> Result<Self> {
        if u.len() != self.n || u.iter().any(|r| r.len() != self.n) {
            return Err(Error::BadData("transform matrix shape mismatch".into()));
        }
        let n = self.n;
        let zero = GroupRingElement::zero(self.group.clone());
        // tmp = U F
        let mut tmp = vec![zero.clone(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = zero.clone();
                for k in 0..n {
                    s = s.add(&u[i][k].mul(self.entry(k, j))?)?;
                }
                tmp[i * n + j] = s;
            }
        }
        let mut mat = vec![zero.clone(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = zero.clone();
                for k in 0..n {
                    s = s.add(&tmp[i * n + k].mul(&u[j][k].star())?)?;
                }
                mat[i * n + j] = s;
            }
        }
        let form = HermitianForm {
            group: self.group.clone(),
            parity: self.parity,
            n,
            mat,
        };
        form.check_symmetry()?;
        Ok(form)
    }

    /// Kronecker tensor over the product group ring.
    pub fn kunneth_product(&self, other: &Self) -> Result<Self> {
        if self.parity != Parity::Hermitian || other.parity != Parity::Hermitian {
            return Err(Error::SkewForm);
        }
        let product = self.group.product(&other.group)?;
        let n = self.n * other.n;
        let m = other.n;
        let mut mat = Vec::with_capacity(n * n);
        for i in 0..self.n {
            for k in 0..m {
                for j in 0..self.n {
                    for l in 0..m {
                        mat.push(self.entry(i, j).tensor(other.entry(k, l), &product)?);
                    }
                }
            }
        }
        let form = HermitianForm {
            group: product.model.clone(),
            parity: Parity::Hermitian,
            n,
            mat,
        };
        debug_assert!(form.check_symmetry().is_ok());
        Ok(form)
    }

    /// Reinterprets the form along an injective homomorphism. The signature
    /// reports before and after must agree; that is a tested contract of the
    /// callers, not an assumption here.
    pub fn induce(&self, embedding: &GroupMap) -> Result<Self> {
        if embedding.source() != &self.group {
            return Err(Error::GroupMismatch(
                "embedding source differs from the form's group".into(),
            ));
        }
        if !embedding.is_injective()? {
            return Err(Error::BadMap("induction needs an injective map".into()));
        }
        self.push(embedding)
    }

    /// Entrywise pushforward along any homomorphism.
    pub fn push(&self, map: &GroupMap) -> Result<Self> {
        let mat = self
            .mat
            .iter()
            .map(|e| e.push(map))
            .collect::<Result<Vec<_>>>()?;
        Ok(HermitianForm {
            group: map.target().clone(),
            parity: self.parity,
            n: self.n,
            mat,
        })
    }

    pub fn with_group(&self, group: GroupModel) -> Result<Self> {
        let mat = self
            .mat
            .iter()
            .map(|e| e.with_group(group.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(HermitianForm {
            group,
            parity: self.parity,
            n: self.n,
            mat,
        })
    }

    /// Scalar matrix of augmentations; the ordinary-signature side of the
    /// form.
    pub fn augmented(&self) -> Mat<Gaussian> {
        Mat::from_fn(self.n, self.n, |i, j| self.entry(i, j).augmentation())
    }

    /// Block matrix of left regular representations, size n|G|. Finite
    /// models only.
    pub fn realized(&self) -> Result<Mat<Gaussian>> {
        let order = self
            .group
            .order()
            .ok_or_else(|| Error::BadGroup("regular realization needs a finite group".into()))?;
        let mut out = Mat::zeros(self.n * order, self.n * order);
        for (i, j, e) in self.entries() {
            if e.is_zero() {
                continue;
            }
            let block = e.regular_rep()?;
            for r in 0..order {
                for c in 0..order {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        out.add_to(i * order + r, j * order + c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pointwise Fourier matrix at a dual-torus point. Free abelian models
    /// only.
    pub fn fourier_at(&self, theta: &[f64]) -> Result<DMatrix<Complex64>> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (i, j, e) in self.entries() {
            out[(i, j)] = e.fourier_eval(theta)?;
        }
        Ok(out)
    }
}
