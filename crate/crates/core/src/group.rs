//! Group models: finite cyclic groups, finite groups given by a
//! multiplication table, finitely generated free abelian groups, and towers
//! of finite quotients over any of these.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// Multiplication table of a finite group. `table[i*n + j]` is the index of
/// the product of elements `i` and `j`; validated for group axioms on
/// construction.
#[derive(Debug, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl MulTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadGroup("empty multiplication table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadGroup(format!(
                    "table row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::BadGroup(format!(
                        "table entry {v} out of range in row {i}"
                    )));
                }
                table.push(v);
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b];

        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|x| mul(e, x) == x && mul(x, e) == x) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::BadGroup("table has no identity element".into()))?;

        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == identity && mul(b, a) == identity) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(Error::BadGroup(format!("element {a} has no inverse")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::BadGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(MulTable {
            order: n,
            table,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }
}

/// A group element. `Finite` carries the element index in its model's
/// enumeration; `Free` carries an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElem {
    Finite(usize),
    Free(Vec<i64>),
}

impl GroupElem {
    pub fn finite_index(&self) -> Option<usize> {
        match self {
            GroupElem::Finite(i) => Some(*i),
            GroupElem::Free(_) => None,
        }
    }

    pub fn exponents(&self) -> Option<&[i64]> {
        match self {
            GroupElem::Free(v) => Some(v),
            GroupElem::Finite(_) => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Finite(i) => write!(f, "g{i}"),
            GroupElem::Free(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "z^({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupModel {
    /// Z/n, elements 0..n-1 are the powers of the generator.
    FiniteCyclic(usize),
    /// Finite group presented by its multiplication table.
    FiniteTable(Arc<MulTable>),
    /// Z^rank with exponent-vector elements.
    FreeAbelian(usize),
    /// A base model together with an explicit chain of finite quotients.
    Tower(Arc<TowerData>),
}

impl GroupModel {
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadGroup("cyclic group of order 0".into()));
        }
        Ok(GroupModel::FiniteCyclic(order))
    }

    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        Ok(GroupModel::FiniteTable(Arc::new(MulTable::new(rows)?)))
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::BadGroup(
                "free abelian rank must be at least 1; use FiniteCyclic(1) for the trivial group"
                    .into(),
            ));
        }
        Ok(GroupModel::FreeAbelian(rank))
    }

    pub fn trivial() -> Self {
        GroupModel::FiniteCyclic(1)
    }

    pub fn tower(base: GroupModel, quotients: Vec<GroupMap>) -> Result<Self> {
        if matches!(base, GroupModel::Tower(_)) {
            return Err(Error::BadGroup("tower base cannot itself be a tower".into()));
        }
        for (k, q) in quotients.iter().enumerate() {
            if q.source() != &base {
                return Err(Error::BadMap(format!(
                    "tower quotient {k} does not start at the base model"
                )));
            }
            if !q.target().is_finite() {
                return Err(Error::BadMap(format!("tower quotient {k} has infinite target")));
            }
            q.check_homomorphism()?;
            if !q.is_surjective()? {
                return Err(Error::BadMap(format!("tower quotient {k} is not surjective")));
            }
        }
        Ok(GroupModel::Tower(Arc::new(TowerData { base, quotients })))
    }

    /// The model element arithmetic happens in: a tower delegates to its base.
    pub fn carrier(&self) -> &GroupModel {
        match self {
            GroupModel::Tower(t) => &t.base,
            other => other,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(
            self.carrier(),
            GroupModel::FiniteCyclic(_) | GroupModel::FiniteTable(_)
        )
    }

    pub fn order(&self) -> Option<usize> {
        match self.carrier() {
            GroupModel::FiniteCyclic(n) => Some(*n),
            GroupModel::FiniteTable(t) => Some(t.order()),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self.carrier() {
            GroupModel::FreeAbelian(d) => Some(*d),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElem {
        match self.carrier() {
            GroupModel::FiniteCyclic(_) => GroupElem::Finite(0),
            GroupModel::FiniteTable(t) => GroupElem::Finite(t.identity()),
            GroupModel::FreeAbelian(d) => GroupElem::Free(vec![0; *d]),
            GroupModel::Tower(_) => unreachable!("carrier strips towers"),
        }
    }

    /// Canonicalizes and validates an element for this model. Cyclic indices
    /// are reduced mod n (negative inputs allowed).
    pub fn canon(&self, e: &GroupElem) -> Result<GroupElem> {
        match (self.carrier(), e) {
            (GroupModel::FiniteCyclic(n), GroupElem::Finite(i)) => {
                Ok(GroupElem::Finite(*i % *n))
            }
            (GroupModel::FiniteTable(t), GroupElem::Finite(i)) => {
                if *i < t.order() {
                    Ok(GroupElem::Finite(*i))
                } else {
                    Err(Error::BadElement(format!(
                        "index {i} out of range for group of order {}",
                        t.order()
                    )))
                }
            }
            (GroupModel::FreeAbelian(d), GroupElem::Free(v)) => {
                if v.len() == *d {
                    Ok(GroupElem::Free(v.clone()))
                } else {
                    Err(Error::BadElement(format!(
                        "exponent vector of length {} in rank-{d} group",
                        v.len()
                    )))
                }
            }
            _ => Err(Error::BadElement(format!(
                "element {e} does not belong to this model"
            ))),
        }
    }

    /// Canonicalizes a raw integer as an element: residue for finite cyclic,
    /// table index for finite tables, exponent for rank-1 free abelian.
    pub fn elem_from_int(&self, i: i64) -> Result<GroupElem> {
        match self.carrier() {
            GroupModel::FiniteCyclic(n) => {
                Ok(GroupElem::Finite(i.rem_euclid(*n as i64) as usize))
            }
            GroupModel::FiniteTable(t) => {
                if i >= 0 && (i as usize) < t.order() {
                    Ok(GroupElem::Finite(i as usize))
                } else {
                    Err(Error::BadElement(format!(
                        "index {i} out of range for group of order {}",
                        t.order()
                    )))
                }
            }
            GroupModel::FreeAbelian(1) => Ok(GroupElem::Free(vec![i])),
            _ => Err(Error::BadElement(
                "integer elements need a finite or rank-1 model".into(),
            )),
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        match (self.carrier(), a, b) {
            (GroupModel::FiniteCyclic(n), GroupElem::Finite(i), GroupElem::Finite(j)) => {
                Ok(GroupElem::Finite((i + j) % n))
            }
            (GroupModel::FiniteTable(t), GroupElem::Finite(i), GroupElem::Finite(j)) => {
                Ok(GroupElem::Finite(t.mul(*i, *j)))
            }
            (GroupModel::FreeAbelian(d), GroupElem::Free(u), GroupElem::Free(v))
                if u.len() == *d && v.len() == *d =>
            {
                Ok(GroupElem::Free(
                    u.iter().zip(v).map(|(x, y)| x + y).collect(),
                ))
            }
            _ => Err(Error::BadElement(format!("cannot multiply {a} and {b} here"))),
        }
    }

    pub fn inv(&self, a: &GroupElem) -> Result<GroupElem> {
        match (self.carrier(), a) {
            (GroupModel::FiniteCyclic(n), GroupElem::Finite(i)) => {
                Ok(GroupElem::Finite((n - i % n) % n))
            }
            (GroupModel::FiniteTable(t), GroupElem::Finite(i)) => {
                Ok(GroupElem::Finite(t.inv(*i)))
            }
            (GroupModel::FreeAbelian(_), GroupElem::Free(v)) => {
                Ok(GroupElem::Free(v.iter().map(|x| -x).collect()))
            }
            _ => Err(Error::BadElement(format!("cannot invert {a} here"))),
        }
    }

    pub fn pow(&self, a: &GroupElem, mut k: i64) -> Result<GroupElem> {
        let mut base = if k < 0 {
            k = -k;
            self.inv(a)?
        } else {
            a.clone()
        };
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// All elements of a finite model, in enumeration order.
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        let n = self
            .order()
            .ok_or_else(|| Error::UnsupportedModel("element enumeration needs a finite model".into()))?;
        Ok((0..n).map(GroupElem::Finite).collect())
    }

    /// Index of a finite element in the enumeration of `elements()`.
    pub fn elem_index(&self, e: &GroupElem) -> Result<usize> {
        match e {
            GroupElem::Finite(i) => Ok(*i),
            GroupElem::Free(_) => Err(Error::BadElement(
                "free abelian elements have no finite index".into(),
            )),
        }
    }

    pub fn tower_data(&self) -> Option<&TowerData> {
        match self {
            GroupModel::Tower(t) => Some(t),
            _ => None,
        }
    }

    /// Direct product of two models. Supported: finite x finite (index
    /// (i,j) -> i * |H| + j) and free abelian x free abelian (concatenated
    /// exponents).
    pub fn product(&self, other: &GroupModel) -> Result<ProductModel> {
        match (self.carrier(), other.carrier()) {
            (a, b) if a.is_finite() && b.is_finite() => {
                let (na, nb) = (a.order().unwrap(), b.order().unwrap());
                let mut rows = vec![vec![0usize; na * nb]; na * nb];
                for ia in 0..na {
                    for ja in 0..nb {
                        for ib in 0..na {
                            for jb in 0..nb {
                                let pa = a
                                    .mul(&GroupElem::Finite(ia), &GroupElem::Finite(ib))?
                                    .finite_index()
                                    .unwrap();
                                let pb = b
                                    .mul(&GroupElem::Finite(ja), &GroupElem::Finite(jb))?
                                    .finite_index()
                                    .unwrap();
                                rows[ia * nb + ja][ib * nb + jb] = pa * nb + pb;
                            }
                        }
                    }
                }
                Ok(ProductModel {
                    model: GroupModel::from_table(rows)?,
                    left: self.carrier().clone(),
                    right: other.carrier().clone(),
                })
            }
            (GroupModel::FreeAbelian(da), GroupModel::FreeAbelian(db)) => Ok(ProductModel {
                model: GroupModel::free_abelian(da + db)?,
                left: self.carrier().clone(),
                right: other.carrier().clone(),
            }),
            _ => Err(Error::UnsupportedModel(
                "products exist for finite x finite and free abelian x free abelian".into(),
            )),
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::FiniteCyclic(n) => write!(f, "Z/{n}"),
            GroupModel::FiniteTable(t) => write!(f, "finite group of order {}", t.order()),
            GroupModel::FreeAbelian(d) => write!(f, "Z^{d}"),
            GroupModel::Tower(t) => {
                write!(f, "tower over {} with {} quotients", t.base, t.quotients.len())
            }
        }
    }
}

/// Direct product bookkeeping: how to pair elements of the factors into the
/// product model.
pub struct ProductModel {
    pub model: GroupModel,
    left: GroupModel,
    right: GroupModel,
}

impl ProductModel {
    pub fn pair(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        match (&self.model, a, b) {
            (GroupModel::FiniteTable(_), GroupElem::Finite(i), GroupElem::Finite(j)) => {
                let nb = self.right.order().unwrap();
                let _ = self.left.canon(a)?;
                let _ = self.right.canon(b)?;
                Ok(GroupElem::Finite(i * nb + j))
            }
            (GroupModel::FreeAbelian(_), GroupElem::Free(u), GroupElem::Free(v)) => {
                let mut w = u.clone();
                w.extend_from_slice(v);
                self.model.canon(&GroupElem::Free(w))
            }
            _ => Err(Error::BadElement("elements do not match the product factors".into())),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct TowerData {
    pub base: GroupModel,
    pub quotients: Vec<GroupMap>,
}

impl TowerData {
    /// Checks that each quotient factors through the next finer one, i.e.
    /// kernels shrink along the tower. Not enforced at construction: plenty
    /// of useful batteries (Z -> Z/k for all k up to a bound) are not nested.
    pub fn check_nested(&self) -> Result<()> {
        for w in self.quotients.windows(2) {
            let (coarse, fine) = (&w[0], &w[1]);
            for k in fine.kernel_generators()? {
                if coarse.apply(&k)? != coarse.target().identity() {
                    return Err(Error::BadMap("tower quotients are not nested".into()));
                }
            }
        }
        Ok(())
    }
}

/// A homomorphism between group models, given on generators (free abelian
/// source) or on every element (finite source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: GroupModel,
    target: GroupModel,
    data: MapData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MapData {
    /// Image of every element of a finite source, by index.
    FiniteImages(Vec<GroupElem>),
    /// Images of the standard generators of a free abelian source.
    FreeImages(Vec<GroupElem>),
}

impl GroupMap {
    pub fn from_finite_images(
        source: GroupModel,
        target: GroupModel,
        images: Vec<GroupElem>,
    ) -> Result<Self> {
        let n = source
            .order()
            .ok_or_else(|| Error::BadMap("element-wise map needs a finite source".into()))?;
        if images.len() != n {
            return Err(Error::BadMap(format!(
                "expected {n} images, got {}",
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|e| target.canon(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupMap {
            source,
            target,
            data: MapData::FiniteImages(images),
        })
    }

    pub fn from_generator_images(
        source: GroupModel,
        target: GroupModel,
        images: Vec<GroupElem>,
    ) -> Result<Self> {
        match source.carrier() {
            GroupModel::FreeAbelian(d) => {
                if images.len() != *d {
                    return Err(Error::BadMap(format!(
                        "expected {d} generator images, got {}",
                        images.len()
                    )));
                }
                let images = images
                    .iter()
                    .map(|e| target.canon(e))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupMap {
                    source,
                    target,
                    data: MapData::FreeImages(images),
                })
            }
            GroupModel::FiniteCyclic(n) => {
                // single generator; expand to the full element map
                if images.len() != 1 {
                    return Err(Error::BadMap(format!(
                        "cyclic source has one generator, got {} images",
                        images.len()
                    )));
                }
                let g = target.canon(&images[0])?;
                let mut all = Vec::with_capacity(*n);
                for k in 0..*n {
                    all.push(target.pow(&g, k as i64)?);
                }
                let src = source.clone();
                let map = GroupMap {
                    source: src,
                    target,
                    data: MapData::FiniteImages(all),
                };
                map.check_homomorphism()?;
                Ok(map)
            }
            _ => Err(Error::BadMap(
                "generator images need a free abelian or cyclic source".into(),
            )),
        }
    }

    /// The map onto the trivial group; pushing a ring element through it is
    /// the augmentation.
    pub fn augmentation(source: GroupModel) -> Result<Self> {
        let target = GroupModel::trivial();
        match source.carrier() {
            GroupModel::FreeAbelian(d) => {
                let images = vec![GroupElem::Finite(0); *d];
                GroupMap::from_generator_images(source, target, images)
            }
            m if m.is_finite() => {
                let images = vec![GroupElem::Finite(0); m.order().unwrap()];
                GroupMap::from_finite_images(source, target, images)
            }
            _ => Err(Error::UnsupportedModel("augmentation needs a concrete model".into())),
        }
    }

    pub fn source(&self) -> &GroupModel {
        &self.source
    }

    pub fn target(&self) -> &GroupModel {
        &self.target
    }

    pub fn apply(&self, e: &GroupElem) -> Result<GroupElem> {
        let e = self.source.canon(e)?;
        match (&self.data, &e) {
            (MapData::FiniteImages(images), GroupElem::Finite(i)) => Ok(images[*i].clone()),
            (MapData::FreeImages(images), GroupElem::Free(v)) => {
                let mut acc = self.target.identity();
                for (img, &k) in images.iter().zip(v.iter()) {
                    acc = self.target.mul(&acc, &self.target.pow(img, k)?)?;
                }
                Ok(acc)
            }
            _ => Err(Error::BadElement(format!("{e} does not match the map's source"))),
        }
    }

    pub fn check_homomorphism(&self) -> Result<()> {
        match &self.data {
            MapData::FiniteImages(_) => {
                let n = self.source.order().unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let a = GroupElem::Finite(i);
                        let b = GroupElem::Finite(j);
                        let lhs = self.apply(&self.source.mul(&a, &b)?)?;
                        let rhs = self.target.mul(&self.apply(&a)?, &self.apply(&b)?)?;
                        if lhs != rhs {
                            return Err(Error::BadMap(format!(
                                "not a homomorphism: images of {i} and {j} do not compose"
                            )));
                        }
                    }
                }
                Ok(())
            }
            MapData::FreeImages(images) => {
                // a map out of Z^d is a homomorphism iff the images commute
                for (i, a) in images.iter().enumerate() {
                    for b in images.iter().skip(i + 1) {
                        if self.target.mul(a, b)? != self.target.mul(b, a)? {
                            return Err(Error::BadMap(
                                "generator images do not commute in the target".into(),
                            ));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let Some(n) = self.target.order() else {
            return Ok(false); // infinite targets are never hit by our sources' closures here
        };
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = self.target.identity();
        seen.insert(self.target.elem_index(&id)?);
        queue.push_back(id);
        let gens: Vec<GroupElem> = match &self.data {
            MapData::FiniteImages(images) => images.clone(),
            MapData::FreeImages(images) => {
                let mut g = images.clone();
                for e in images {
                    g.push(self.target.inv(e)?);
                }
                g
            }
        };
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.target.mul(&x, g)?;
                if seen.insert(self.target.elem_index(&y)?) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len() == n)
    }

    pub fn is_injective(&self) -> Result<bool> {
        match &self.data {
            MapData::FiniteImages(images) => {
                let mut seen = BTreeSet::new();
                for img in images {
                    if !seen.insert(self.target.elem_index(img)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            MapData::FreeImages(images) => match self.target.carrier() {
                GroupModel::FreeAbelian(_) => {
                    // injective iff the exponent matrix has full column rank
                    let cols: Vec<&[i64]> = images
                        .iter()
                        .map(|e| e.exponents().expect("canon"))
                        .collect();
                    Ok(exponent_rank(&cols) == images.len())
                }
                // Z^d never embeds into a finite group for d >= 1
                _ => Ok(false),
            },
        }
    }

    /// Index of the image subgroup in a finite target (the covering index of
    /// a surjection's kernel).
    pub fn index(&self) -> Result<usize> {
        self.target
            .order()
            .ok_or_else(|| Error::BadMap("index is defined for finite targets".into()))
    }

    /// Generators of the kernel, for maps into finite targets. Finite
    /// sources enumerate the kernel outright; free abelian sources get
    /// Schreier generators of the kernel sublattice from a coset traversal
    /// of the image.
    pub fn kernel_generators(&self) -> Result<Vec<GroupElem>> {
        if self.target.order().is_none() {
            return Err(Error::BadMap("kernel generators need a finite target".into()));
        }
        match &self.data {
            MapData::FiniteImages(_) => {
                let mut gens = Vec::new();
                for e in self.source.elements()? {
                    if self.apply(&e)? == self.target.identity() {
                        gens.push(e);
                    }
                }
                Ok(gens)
            }
            MapData::FreeImages(images) => {
                let d = images.len();
                // representatives: image element index -> one preimage vector
                let mut rep: std::collections::BTreeMap<usize, Vec<i64>> =
                    std::collections::BTreeMap::new();
                let id_idx = self.target.elem_index(&self.target.identity())?;
                rep.insert(id_idx, vec![0; d]);
                let mut queue = VecDeque::from([self.target.identity()]);
                while let Some(x) = queue.pop_front() {
                    let xv = rep[&self.target.elem_index(&x)?].clone();
                    for (i, img) in images.iter().enumerate() {
                        let y = self.target.mul(&x, img)?;
                        let yi = self.target.elem_index(&y)?;
                        if !rep.contains_key(&yi) {
                            let mut yv = xv.clone();
                            yv[i] += 1;
                            rep.insert(yi, yv);
                            queue.push_back(y);
                        }
                    }
                }
                let mut gens = Vec::new();
                for (xi, xv) in &rep {
                    let x = GroupElem::Finite(*xi);
                    for (i, img) in images.iter().enumerate() {
                        let y = self.target.mul(&x, img)?;
                        let yv = &rep[&self.target.elem_index(&y)?];
                        // rep(x) + e_i - rep(x * g_i) lies in the kernel
                        let mut k = xv.clone();
                        k[i] += 1;
                        for (kj, yj) in k.iter_mut().zip(yv) {
                            *kj -= yj;
                        }
                        if k.iter().any(|&c| c != 0) {
                            gens.push(GroupElem::Free(k));
                        }
                    }
                }
                gens.sort();
                gens.dedup();
                Ok(gens)
            }
        }
    }
}

/// Rank over Q of a set of integer vectors (fraction-free elimination).
fn exponent_rank(cols: &[&[i64]]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let mut m: Vec<Vec<i128>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r] as i128).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for j in 0..cols.len() {
                    m[r][j] = m[r][j] * a - m[rank][j] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}
