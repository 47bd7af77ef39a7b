//! Oriented simplicial complexes stored as sorted vertex tuples per
//! dimension. A complex is built from its top simplices; lower skeleta are
//! generated. Simplices are referenced by (dimension, index); the reference
//! orientation of every simplex is its increasing vertex order, and the
//! orientation field holds a sign per top simplex relative to that.

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rat};
use crate::sparse::SparseMat;
use num::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalCycle {
    signs: Vec<i64>,
}

impl FundamentalCycle {
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }
}

/// Dimension tags of a barycentric subdivision: each vertex remembers the
/// dimension of the original face it subdivides.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdivisionTags {
    pub vertex_dim: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSimplicialComplex {
    vertex_count: usize,
    dim: usize,
    // skeleton[k]: sorted (k+1)-tuples; top dimension keeps input order,
    // lower dimensions are lexicographic
    skeleton: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    orientation: Option<Vec<i64>>,
    subdivision: Option<SubdivisionTags>,
}

/// Sign of the permutation sorting `v`, or None on repeated entries.
pub fn sort_sign(v: &mut Vec<usize>) -> Option<i64> {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some(sign)
}

impl OrientedSimplicialComplex {
    pub fn new(vertex_count: usize, top_simplices: Vec<Vec<usize>>) -> Result<Self> {
        let first = top_simplices
            .first()
            .ok_or_else(|| Error::BadComplex("no top simplices".into()))?;
        if first.len() < 2 {
            return Err(Error::BadComplex("dimension must be at least 1".into()));
        }
        let dim = first.len() - 1;
        let mut tops = Vec::with_capacity(top_simplices.len());
        let mut top_index = BTreeMap::new();
        for (i, t) in top_simplices.into_iter().enumerate() {
            if t.len() != dim + 1 {
                return Err(Error::BadComplex(format!(
                    "top simplex {i} has {} vertices, expected {}",
                    t.len(),
                    dim + 1
                )));
            }
            if t.iter().any(|&v| v >= vertex_count) {
                return Err(Error::BadComplex(format!(
                    "top simplex {i} uses a vertex id beyond {vertex_count}"
                )));
            }
            let mut s = t;
            if sort_sign(&mut s).is_none() {
                return Err(Error::BadComplex(format!(
                    "top simplex {i} repeats a vertex"
                )));
            }
            if top_index.insert(s.clone(), i).is_some() {
                return Err(Error::BadComplex(format!("top simplex {i} is a duplicate")));
            }
            tops.push(s);
        }

        // generate the lower skeleta by repeated face removal
        let mut skeleton = vec![Vec::new(); dim + 1];
        let mut index: Vec<BTreeMap<Vec<usize>, usize>> = vec![BTreeMap::new(); dim + 1];
        skeleton[dim] = tops;
        index[dim] = top_index;
        for k in (0..dim).rev() {
            let mut faces = BTreeMap::new();
            for s in &skeleton[k + 1] {
                for omit in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(omit);
                    faces.entry(f).or_insert(0usize);
                }
            }
            let list: Vec<Vec<usize>> = faces.keys().cloned().collect();
            for (i, f) in list.iter().enumerate() {
                faces.insert(f.clone(), i);
            }
            skeleton[k] = list;
            index[k] = faces;
        }

        Ok(OrientedSimplicialComplex {
            vertex_count,
            dim,
            skeleton,
            index,
            orientation: None,
            subdivision: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        &self.skeleton[k]
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.skeleton[k].len()
    }

    pub fn simplex_index(&self, k: usize, simplex: &[usize]) -> Option<usize> {
        self.index[k].get(simplex).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.skeleton.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn orientation(&self) -> Option<&[i64]> {
        self.orientation.as_deref()
    }

    pub fn subdivision_tags(&self) -> Option<&SubdivisionTags> {
        self.subdivision.as_ref()
    }

    /// Boundary matrix from k-chains to (k-1)-chains, entries in {+1, -1}.
    pub fn boundary_matrix(&self, k: usize) -> SparseMat {
        assert!(k >= 1 && k <= self.dim);
        let mut m = SparseMat::zeros(self.skeleton[k - 1].len(), self.skeleton[k].len());
        for (c, s) in self.skeleton[k].iter().enumerate() {
            for omit in 0..s.len() {
                let mut f = s.clone();
                f.remove(omit);
                let r = self.index[k - 1][&f];
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                m.add_to(r, c, rat_int(sign));
            }
        }
        m
    }

    /// Cofaces of each (d-1)-simplex as (top index, omitted position).
    fn ridge_cofaces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut cofaces = vec![Vec::new(); self.skeleton[self.dim - 1].len()];
        for (t, s) in self.skeleton[self.dim].iter().enumerate() {
            for omit in 0..s.len() {
                let mut f = s.clone();
                f.remove(omit);
                cofaces[self.index[self.dim - 1][&f]].push((t, omit));
            }
        }
        cofaces
    }

    /// Checks the pseudomanifold condition and finds a compatible top
    /// orientation by sign propagation across shared ridges, first top
    /// simplex of each component positive. With an orientation already
    /// stored or supplied, only verifies it. Returns the cycle of top
    /// signs, whose simplicial boundary is zero.
    pub fn validate_and_orient(&mut self) -> Result<FundamentalCycle> {
        let cofaces = self.ridge_cofaces();
        for (r, cf) in cofaces.iter().enumerate() {
            if cf.len() != 2 {
                return Err(Error::NotPseudomanifold(format!(
                    "face {:?} lies in {} top simplices, expected 2",
                    self.skeleton[self.dim - 1][r],
                    cf.len()
                )));
            }
        }

        let signs = match &self.orientation {
            Some(signs) => signs.clone(),
            None => {
                let n_top = self.skeleton[self.dim].len();
                let mut signs = vec![0i64; n_top];
                let mut top_ridges: Vec<Vec<usize>> = vec![Vec::new(); n_top];
                for (r, cf) in cofaces.iter().enumerate() {
                    for (t, _) in cf {
                        top_ridges[*t].push(r);
                    }
                }
                for start in 0..n_top {
                    if signs[start] != 0 {
                        continue;
                    }
                    signs[start] = 1;
                    let mut queue = vec![start];
                    while let Some(t) = queue.pop() {
                        for &r in &top_ridges[t] {
                            let [(t1, o1), (t2, o2)] = cofaces[r][..] else {
                                unreachable!()
                            };
                            let (other, o_this, o_other) =
                                if t1 == t { (t2, o1, o2) } else { (t1, o2, o1) };
                            // zero boundary on this ridge forces
                            // (-1)^{o_this} s_t + (-1)^{o_other} s_other = 0
                            let forced = if (o_this + o_other) % 2 == 0 {
                                -signs[t]
                            } else {
                                signs[t]
                            };
                            if signs[other] == 0 {
                                signs[other] = forced;
                                queue.push(other);
                            } else if signs[other] != forced {
                                return Err(Error::NonOrientable(format!(
                                    "sign propagation conflicts across face {:?}",
                                    self.skeleton[self.dim - 1][r]
                                )));
                            }
                        }
                    }
                }
                signs
            }
        };

        if signs.len() != self.skeleton[self.dim].len()
            || signs.iter().any(|s| *s != 1 && *s != -1)
        {
            return Err(Error::BadComplex(
                "orientation must assign +1 or -1 to every top simplex".into(),
            ));
        }
        let chain: Vec<Rat> = signs.iter().map(|&s| rat_int(s)).collect();
        let boundary = self.boundary_matrix(self.dim).apply(&chain);
        if let Some(bad) = boundary.iter().position(|v| !v.is_zero()) {
            return Err(Error::NonOrientable(format!(
                "orientation has nonzero boundary at face {:?}",
                self.skeleton[self.dim - 1][bad]
            )));
        }
        self.orientation = Some(signs.clone());
        Ok(FundamentalCycle { signs })
    }

    pub fn set_orientation(&mut self, signs: Vec<i64>) -> Result<FundamentalCycle> {
        if signs.len() != self.skeleton[self.dim].len() {
            return Err(Error::BadComplex(format!(
                "{} orientation signs for {} top simplices",
                signs.len(),
                self.skeleton[self.dim].len()
            )));
        }
        self.orientation = Some(signs);
        self.validate_and_orient()
    }

    /// The same complex with vertices renamed by `perm` (old id -> new id).
    /// Orientation signs absorb the per-simplex resorting parity.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(Error::BadData("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            if p >= self.vertex_count || seen[p] {
                return Err(Error::BadData("not a permutation of the vertex ids".into()));
            }
            seen[p] = true;
        }
        let mut tops = Vec::with_capacity(self.skeleton[self.dim].len());
        let mut parities = Vec::with_capacity(tops.capacity());
        for s in &self.skeleton[self.dim] {
            let mut t: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
            let sign = sort_sign(&mut t).expect("permutation keeps vertices distinct");
            tops.push(t);
            parities.push(sign);
        }
        let mut out = Self::new(self.vertex_count, tops)?;
        if let Some(orient) = &self.orientation {
            let signs = orient
                .iter()
                .zip(&parities)
                .map(|(s, p)| s * p)
                .collect::<Vec<_>>();
            out.orientation = Some(signs);
            out.validate_and_orient()?;
        }
        if let Some(tags) = &self.subdivision {
            let mut vertex_dim = vec![usize::MAX; self.vertex_count];
            for (v, &t) in tags.vertex_dim.iter().enumerate() {
                vertex_dim[perm[v]] = t;
            }
            out.subdivision = Some(SubdivisionTags { vertex_dim });
        }
        Ok(out)
    }

    /// Barycentric subdivision: one vertex per face, one top simplex per
    /// flag of faces inside each top simplex, signed by the flag's vertex
    /// permutation. Vertex ids group by face dimension, so tuples sorted by
    /// id are sorted by dimension tag.
    pub fn barycentric_subdivision(&self) -> Result<Self> {
        let mut offset = vec![0usize; self.dim + 2];
        for k in 0..=self.dim {
            offset[k + 1] = offset[k] + self.skeleton[k].len();
        }
        let n_vertices = offset[self.dim + 1];
        let mut vertex_dim = Vec::with_capacity(n_vertices);
        for k in 0..=self.dim {
            vertex_dim.extend(std::iter::repeat(k).take(self.skeleton[k].len()));
        }

        let base_signs = match &self.orientation {
            Some(s) => s.clone(),
            None => vec![1; self.skeleton[self.dim].len()],
        };

        let mut tops = Vec::new();
        let mut signs = Vec::new();
        let d = self.dim;
        for (t, s) in self.skeleton[d].iter().enumerate() {
            let mut order: Vec<usize> = (0..=d).collect();
            permute_all(&mut order, 0, &mut |perm, parity| {
                let mut face: Vec<usize> = Vec::with_capacity(d + 1);
                let mut flag = Vec::with_capacity(d + 1);
                for &w in perm {
                    face.push(s[w]);
                    face.sort_unstable();
                    let k = face.len() - 1;
                    flag.push(offset[k] + self.index[k][&face]);
                }
                tops.push(flag);
                signs.push(parity * base_signs[t]);
            });
        }

        let mut out = Self::new(n_vertices, tops)?;
        out.orientation = Some(signs);
        out.subdivision = Some(SubdivisionTags { vertex_dim });
        Ok(out)
    }
}

/// Visits all permutations of `v[at..]` in place, calling `f(v, parity)`.
fn permute_all(v: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize], i64)) {
    permute_signed(v, at, 1, f);
}

fn permute_signed(v: &mut Vec<usize>, at: usize, parity: i64, f: &mut impl FnMut(&[usize], i64)) {
    if at + 1 >= v.len() {
        f(v, parity);
        return;
    }
    for i in at..v.len() {
        let p = if i == at { parity } else { -parity };
        v.swap(at, i);
        permute_signed(v, at + 1, p, f);
        v.swap(at, i);
    }
}

/// Boundary of the (d+1)-simplex: the minimal triangulated d-sphere.
pub fn sphere_complex(d: usize) -> OrientedSimplicialComplex {
    let tops: Vec<Vec<usize>> = (0..d + 2)
        .map(|omit| (0..d + 2).filter(|&v| v != omit).collect())
        .collect();
    let mut c = OrientedSimplicialComplex::new(d + 2, tops).expect("valid sphere");
    c.validate_and_orient().expect("spheres are orientable");
    c
}

/// The full d-simplex as a complex with a single top simplex.
pub fn full_simplex(d: usize) -> OrientedSimplicialComplex {
    OrientedSimplicialComplex::new(d + 1, vec![(0..=d).collect()]).expect("valid simplex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_f_vector_and_euler() {
        let s2 = sphere_complex(2);
        assert_eq!(s2.f_vector(), vec![4, 6, 4]);
        assert_eq!(s2.euler_characteristic(), 2);
        let s4 = sphere_complex(4);
        assert_eq!(s4.f_vector(), vec![6, 15, 20, 15, 6]);
        assert_eq!(s4.euler_characteristic(), 2);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let s3 = sphere_complex(3);
        for k in 2..=3 {
            let bb = s3.boundary_matrix(k - 1).mul(&s3.boundary_matrix(k));
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn orientation_of_sphere_has_zero_boundary() {
        let mut s4 = sphere_complex(4);
        let cycle = s4.validate_and_orient().unwrap();
        assert_eq!(cycle.signs().len(), 6);
        // alternating signs on the boundary of a simplex
        let expect: Vec<i64> = (0..6).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        let got = cycle.signs().to_vec();
        assert!(got == expect || got.iter().zip(&expect).all(|(a, b)| *a == -b));
    }

    #[test]
    fn non_pseudomanifold_is_reported() {
        // three triangles glued along one edge
        let mut c = OrientedSimplicialComplex::new(
            5,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]],
        )
        .unwrap();
        match c.validate_and_orient() {
            Err(Error::NotPseudomanifold(msg)) => assert!(msg.contains("3 top simplices")),
            other => panic!("expected pseudomanifold failure, got {other:?}"),
        }
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let tops = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ];
        let mut c = OrientedSimplicialComplex::new(6, tops).unwrap();
        assert_eq!(c.euler_characteristic(), 1);
        assert!(matches!(
            c.validate_and_orient(),
            Err(Error::NonOrientable(_))
        ));
    }

    #[test]
    fn relabel_keeps_the_cycle_property() {
        let mut s2 = sphere_complex(2);
        s2.validate_and_orient().unwrap();
        let perm = vec![2, 0, 3, 1];
        let mut r = s2.relabel(&perm).unwrap();
        assert_eq!(r.f_vector(), s2.f_vector());
        let cycle = r.validate_and_orient().unwrap();
        assert_eq!(cycle.signs().len(), 4);
    }

    #[test]
    fn subdivision_counts_and_orientation() {
        let mut s2 = sphere_complex(2);
        s2.validate_and_orient().unwrap();
        let mut sd = s2.barycentric_subdivision().unwrap();
        assert_eq!(sd.f_vector(), vec![14, 36, 24]);
        assert_eq!(sd.euler_characteristic(), 2);
        // the constructed flag orientation is already a cycle
        let stored = sd.orientation().unwrap().to_vec();
        let cycle = sd.validate_and_orient().unwrap();
        assert_eq!(cycle.signs(), &stored[..]);
        let tags = &sd.subdivision_tags().unwrap().vertex_dim;
        assert_eq!(tags.iter().filter(|&&t| t == 0).count(), 4);
        assert_eq!(tags.iter().filter(|&&t| t == 2).count(), 4);
    }

    #[test]
    fn subdivision_of_a_single_simplex() {
        let d4 = full_simplex(4);
        let sd = d4.barycentric_subdivision().unwrap();
        assert_eq!(sd.simplex_count(4), 120);
        assert_eq!(sd.vertex_count(), 31);
        // tags strictly increase along any sorted tuple
        for s in sd.simplices(4) {
            let tags = &sd.subdivision_tags().unwrap().vertex_dim;
            for w in s.windows(2) {
                assert!(tags[w[0]] < tags[w[1]]);
            }
        }
    }
}
