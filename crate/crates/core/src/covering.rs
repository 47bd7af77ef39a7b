//! Covering data as a group-valued edge labeling: g on the edge (i, j) with
//! i < j, reversed edges carrying the inverse, and g(i,j)g(j,k) = g(i,k) on
//! every triangle. The cover above a simplex with least vertex v0 places its
//! gamma-indexed lift so that vertex v carries gamma * g(v0, v).

use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupMap, GroupModel};
use crate::simplicial::OrientedSimplicialComplex;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct CoveringCocycle {
    group: GroupModel,
    labels: BTreeMap<(usize, usize), GroupElem>,
}

impl CoveringCocycle {
    pub fn trivial(group: GroupModel) -> Self {
        CoveringCocycle {
            group,
            labels: BTreeMap::new(),
        }
    }

    /// Builds from edge labels given in either vertex order; omitted edges
    /// mean identity.
    pub fn new(
        group: GroupModel,
        labels: impl IntoIterator<Item = ((usize, usize), GroupElem)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((a, b), g) in labels {
            if a == b {
                return Err(Error::BadCocycle(format!("label on the loop ({a},{a})")));
            }
            let g = group.canon(&g)?;
            let (key, val) = if a < b { ((a, b), g) } else { ((b, a), group.inv(&g)?) };
            if map.insert(key, val).is_some() {
                return Err(Error::BadCocycle(format!(
                    "edge ({},{}) labeled twice",
                    key.0, key.1
                )));
            }
        }
        let mut c = CoveringCocycle { group, labels: map };
        c.prune_identities();
        Ok(c)
    }

    fn prune_identities(&mut self) {
        let e = self.group.identity();
        self.labels.retain(|_, g| *g != e);
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn label(&self, i: usize, j: usize) -> GroupElem {
        if i <= j {
            self.labels
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| self.group.identity())
        } else {
            let g = self.label(j, i);
            self.group.inv(&g).expect("stored labels are canonical")
        }
    }

    pub fn labeled_edges(&self) -> impl Iterator<Item = (&(usize, usize), &GroupElem)> {
        self.labels.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.is_empty()
    }

    /// Checks the triangle condition on every 2-simplex, and that labels sit
    /// on actual edges of the complex.
    pub fn validate(&self, complex: &OrientedSimplicialComplex) -> Result<()> {
        for (i, j) in self.labels.keys() {
            if complex.simplex_index(1, &[*i, *j]).is_none() {
                return Err(Error::BadCocycle(format!(
                    "label on ({i},{j}), which is not an edge of the complex"
                )));
            }
        }
        if complex.dim() >= 2 {
            for t in complex.simplices(2) {
                let (i, j, k) = (t[0], t[1], t[2]);
                let lhs = self.group.mul(&self.label(i, j), &self.label(j, k))?;
                if lhs != self.label(i, k) {
                    return Err(Error::BadCocycle(format!(
                        "triangle {:?}: g({i},{j})*g({j},{k}) = {lhs}, but g({i},{k}) = {}",
                        t,
                        self.label(i, k)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Applies a homomorphism to every label.
    pub fn push(&self, map: &GroupMap) -> Result<Self> {
        if map.source() != &self.group {
            return Err(Error::GroupMismatch(
                "map source differs from the cocycle's group".into(),
            ));
        }
        let labels = self
            .labels
            .iter()
            .map(|(e, g)| Ok((*e, map.apply(g)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut c = CoveringCocycle {
            group: map.target().clone(),
            labels,
        };
        c.prune_identities();
        Ok(c)
    }

    /// Gauges labels by a vertex potential m, turning a spanning forest of
    /// the 1-skeleton into identity labels: g'(i,j) = m(i)^-1 g(i,j) m(j).
    /// Returns the gauged cocycle and the potential. The covers defined by
    /// the two cocycles are isomorphic.
    pub fn gauge_normalize(
        &self,
        complex: &OrientedSimplicialComplex,
    ) -> Result<(Self, Vec<GroupElem>)> {
        self.validate(complex)?;
        let n = complex.vertex_count();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in complex.simplices(1) {
            adjacency[e[0]].push(e[1]);
            adjacency[e[1]].push(e[0]);
        }
        let e = self.group.identity();
        let mut potential: Vec<Option<GroupElem>> = vec![None; n];
        for root in 0..n {
            if potential[root].is_some() || adjacency[root].is_empty() {
                continue;
            }
            potential[root] = Some(e.clone());
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let mv = potential[v].clone().unwrap();
                for &w in &adjacency[v] {
                    if potential[w].is_none() {
                        potential[w] = Some(self.group.mul(&mv, &self.label(v, w))?);
                        queue.push_back(w);
                    }
                }
            }
        }
        let potential: Vec<GroupElem> = potential
            .into_iter()
            .map(|p| p.unwrap_or_else(|| e.clone()))
            .collect();
        let mut labels = BTreeMap::new();
        for edge in complex.simplices(1) {
            let (i, j) = (edge[0], edge[1]);
            let g = self.group.mul(
                &self.group.inv(&potential[i])?,
                &self.group.mul(&self.label(i, j), &potential[j])?,
            )?;
            labels.insert((i, j), g);
        }
        let mut gauged = CoveringCocycle {
            group: self.group.clone(),
            labels,
        };
        gauged.prune_identities();
        Ok((gauged, potential))
    }
}

/// Materializes the cover of a finite-group cocycle: vertex (v, gamma) gets
/// id v*|G| + index(gamma), each top simplex lifts once per gamma with its
/// base orientation sign.
pub fn explicit_cover(
    complex: &OrientedSimplicialComplex,
    cocycle: &CoveringCocycle,
) -> Result<OrientedSimplicialComplex> {
    cocycle.validate(complex)?;
    let group = cocycle.group();
    let order = group
        .order()
        .ok_or_else(|| Error::BadGroup("explicit covers need a finite group".into()))?;
    let elements = group.elements()?;
    let base_signs: Vec<i64> = match complex.orientation() {
        Some(s) => s.to_vec(),
        None => vec![1; complex.simplex_count(complex.dim())],
    };

    let mut tops = Vec::with_capacity(complex.simplex_count(complex.dim()) * order);
    let mut signs = Vec::with_capacity(tops.capacity());
    for (t, s) in complex.simplices(complex.dim()).iter().enumerate() {
        let transports: Vec<GroupElem> = s
            .iter()
            .map(|&v| cocycle.label(s[0], v))
            .collect::<Vec<_>>();
        for gamma in &elements {
            let lift: Vec<usize> = s
                .iter()
                .zip(&transports)
                .map(|(&v, tr)| {
                    let deck = group.mul(gamma, tr)?;
                    Ok(v * order + group.elem_index(&deck)?)
                })
                .collect::<Result<Vec<usize>>>()?;
            // vertex-major ids keep lifted tuples sorted
            debug_assert!(lift.windows(2).all(|w| w[0] < w[1]));
            tops.push(lift);
            signs.push(base_signs[t]);
        }
    }
    let mut cover = OrientedSimplicialComplex::new(complex.vertex_count() * order, tops)?;
    if complex.orientation().is_some() {
        cover.set_orientation(signs)?;
    }
    Ok(cover)
}
