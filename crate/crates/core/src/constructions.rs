//! Ready-made covered complexes: circles with monodromy, staircase products,
//! tori, and the standard closed 4-manifolds used by the verification suites.
//!
//! The staircase product triangulates |X| x |Y| without subdividing: the tops
//! over a pair of simplices are the monotone lattice paths through their
//! vertex grid, signed by the shuffle parity. Vertex (u, v) gets the id
//! u * nY + v, which keeps every path strictly increasing, so the product of
//! sorted complexes is again sorted.

use crate::covering::CoveringCocycle;
use crate::error::{Error, Result};
use crate::form::{HermitianForm, Parity};
use crate::group::{GroupElem, GroupModel};
use crate::ring::GroupRingElement;
use crate::scalar::{rat, rat_int, Gaussian, Rat};
use crate::simplicial::{sphere_complex, OrientedSimplicialComplex};

/// An oriented complex together with a validated covering cocycle.
#[derive(Clone, Debug)]
pub struct CoveredComplex {
    pub complex: OrientedSimplicialComplex,
    pub covering: CoveringCocycle,
}

impl CoveredComplex {
    pub fn new(complex: OrientedSimplicialComplex, covering: CoveringCocycle) -> Result<Self> {
        covering.validate(&complex)?;
        Ok(CoveredComplex { complex, covering })
    }

    /// Wraps a complex with the order-one cover.
    pub fn plain(complex: OrientedSimplicialComplex) -> Result<Self> {
        let covering = CoveringCocycle::trivial(GroupModel::cyclic(1)?);
        CoveredComplex::new(complex, covering)
    }
}

/// Cycle graph on n >= 3 vertices, oriented as a 1-cycle: edges [i, i+1]
/// carry +1 and the closing edge [0, n-1] carries -1.
pub fn circle(n: usize) -> Result<OrientedSimplicialComplex> {
    if n < 3 {
        return Err(Error::BadComplex(format!(
            "a simplicial circle needs at least 3 vertices, got {n}"
        )));
    }
    let mut tops: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    tops.push(vec![0, n - 1]);
    let mut c = OrientedSimplicialComplex::new(n, tops)?;
    let mut signs = vec![1i64; n];
    // the closing edge is traversed against its sorted order
    let closing = c
        .simplex_index(1, &[0, n - 1])
        .expect("closing edge is a top");
    signs[closing] = -1;
    c.set_orientation(signs)?;
    Ok(c)
}

/// Circle whose deck transformation along the walk 0 -> 1 -> ... -> 0 is
/// `monodromy`. Only the closing edge carries a nontrivial label.
pub fn circle_with_monodromy(
    n: usize,
    group: GroupModel,
    monodromy: GroupElem,
) -> Result<CoveredComplex> {
    let complex = circle(n)?;
    // the label is stated on the reversed edge (n-1, 0) so that the walk
    // direction picks up exactly `monodromy`
    let covering = CoveringCocycle::new(group, [((n - 1, 0), monodromy)])?;
    CoveredComplex::new(complex, covering)
}

/// All p-in-(p+q) step sequences (false = step in x, true = step in y) with
/// the permutation sign of the shuffle.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<bool>, i64)> {
    let mut out = Vec::new();
    let total = p + q;
    // choose which of the `total` steps move in y
    let mut choose = (0..q).collect::<Vec<usize>>();
    loop {
        let mut steps = vec![false; total];
        for &pos in &choose {
            steps[pos] = true;
        }
        // inversions: y-steps that come before an x-step
        let mut sign = 1i64;
        let mut ys_seen = 0i64;
        for &s in &steps {
            if s {
                ys_seen += 1;
            } else if ys_seen % 2 == 1 {
                sign = -sign;
            }
        }
        out.push((steps, sign));
        // next q-combination of {0..total}
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if choose[i] != total - q + i {
                choose[i] += 1;
                for j in i + 1..q {
                    choose[j] = choose[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn is_order_one(g: &GroupModel) -> bool {
    g.order() == Some(1)
}

/// Staircase triangulation of the product of two covered complexes. The
/// covering labels split componentwise: every product edge lies over an edge
/// or vertex in each factor, so (g_x, g_y) is always defined. When one factor
/// has the trivial cover the product keeps the other factor's group; otherwise
/// the factors are combined through their direct product model.
pub fn staircase_product(x: &CoveredComplex, y: &CoveredComplex) -> Result<CoveredComplex> {
    let cx = &x.complex;
    let cy = &y.complex;
    let p = cx.dim();
    let q = cy.dim();
    if p == 0 || q == 0 {
        return Err(Error::BadComplex(
            "staircase products need both factors of dimension >= 1".into(),
        ));
    }
    let n_y = cy.vertex_count();
    let signs_x = cx
        .orientation()
        .ok_or_else(|| Error::BadComplex("left product factor is not oriented".into()))?;
    let signs_y = cy
        .orientation()
        .ok_or_else(|| Error::BadComplex("right product factor is not oriented".into()))?;

    let paths = shuffles(p, q);
    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut signed: Vec<(Vec<usize>, i64)> = Vec::new();
    for (ix, tx) in cx.simplices(p).iter().enumerate() {
        for (iy, ty) in cy.simplices(q).iter().enumerate() {
            let base = signs_x[ix] * signs_y[iy];
            for (steps, shuffle_sign) in &paths {
                let mut a = 0usize;
                let mut b = 0usize;
                let mut top = Vec::with_capacity(p + q + 1);
                top.push(tx[a] * n_y + ty[b]);
                for &s in steps {
                    if s {
                        b += 1;
                    } else {
                        a += 1;
                    }
                    top.push(tx[a] * n_y + ty[b]);
                }
                tops.push(top.clone());
                signed.push((top, base * shuffle_sign));
            }
        }
    }

    let mut complex = OrientedSimplicialComplex::new(cx.vertex_count() * n_y, tops)?;
    let d = p + q;
    let mut signs = vec![0i64; complex.simplex_count(d)];
    for (top, s) in signed {
        let idx = complex
            .simplex_index(d, &top)
            .expect("every constructed path is a top");
        signs[idx] = s;
    }
    complex.set_orientation(signs)?;

    // componentwise edge labels; a coordinate that does not move contributes
    // the identity, which label() already returns for the degenerate pair
    let gx = x.covering.group();
    let gy = y.covering.group();
    let mut labels: Vec<((usize, usize), GroupElem)> = Vec::new();
    let mut push_labels = |f: &mut dyn FnMut(usize, usize, usize, usize) -> Result<GroupElem>|
     -> Result<()> {
        for e in complex.simplices(1) {
            let (u0, v0) = (e[0] / n_y, e[0] % n_y);
            let (u1, v1) = (e[1] / n_y, e[1] % n_y);
            debug_assert!(u0 <= u1 && v0 <= v1, "path edges move forward in both factors");
            labels.push(((e[0], e[1]), f(u0, u1, v0, v1)?));
        }
        Ok(())
    };
    let group = if is_order_one(gy) {
        push_labels(&mut |u0, u1, _, _| Ok(x.covering.label(u0, u1)))?;
        gx.clone()
    } else if is_order_one(gx) {
        push_labels(&mut |_, _, v0, v1| Ok(y.covering.label(v0, v1)))?;
        gy.clone()
    } else {
        let pm = gx.product(gy)?;
        push_labels(&mut |u0, u1, v0, v1| {
            pm.pair(&x.covering.label(u0, u1), &y.covering.label(v0, v1))
        })?;
        pm.model
    };
    let covering = CoveringCocycle::new(group, labels)?;
    CoveredComplex::new(complex, covering)
}

/// 9-vertex torus covered by R^2: each circle factor winds once around a
/// generator of Z^2.
pub fn torus2() -> Result<CoveredComplex> {
    let z = GroupModel::free_abelian(1)?;
    let a = circle_with_monodromy(3, z.clone(), GroupElem::Free(vec![1]))?;
    let b = circle_with_monodromy(3, z, GroupElem::Free(vec![1]))?;
    staircase_product(&a, &b)
}

/// 9-vertex torus with the order-one cover.
pub fn torus2_plain() -> Result<CoveredComplex> {
    let a = CoveredComplex::plain(circle(3)?)?;
    let b = CoveredComplex::plain(circle(3)?)?;
    staircase_product(&a, &b)
}

/// 81-vertex 4-torus whose first circle factor carries the nontrivial Z/2
/// monodromy, all other factors plain.
pub fn torus4_with_z2() -> Result<CoveredComplex> {
    let twisted = circle_with_monodromy(3, GroupModel::cyclic(2)?, GroupElem::Finite(1))?;
    let plain = CoveredComplex::plain(circle(3)?)?;
    let left = staircase_product(&twisted, &plain)?;
    let right = torus2_plain()?;
    staircase_product(&left, &right)
}

/// 81-vertex 4-torus with the order-one cover.
pub fn torus4_plain() -> Result<CoveredComplex> {
    let left = torus2_plain()?;
    let right = torus2_plain()?;
    staircase_product(&left, &right)
}

/// S^1 x S^3 whose circle factor winds around Z.
pub fn s1_x_s3() -> Result<CoveredComplex> {
    let circle = circle_with_monodromy(3, GroupModel::free_abelian(1)?, GroupElem::Free(vec![1]))?;
    let sphere = CoveredComplex::plain(sphere_complex(3))?;
    staircase_product(&circle, &sphere)
}

/// Facets of the 6-vertex real projective plane. Unorientable on purpose:
/// feeding it to the orientation pass must fail.
pub fn rp2_facets() -> Vec<Vec<usize>> {
    vec![
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
    ]
}

/// The rank-one counterexample form (1 - z) + (1 - z*) over Z (order 0) or
/// Z/order: ordinary signature 0, but the normalized signature is 1 - 1/order
/// in the finite case and 1 over Z.
pub fn counterexample_form(order: usize) -> Result<HermitianForm> {
    let (group, z) = if order == 0 {
        (GroupModel::free_abelian(1)?, GroupElem::Free(vec![1]))
    } else {
        (GroupModel::cyclic(order)?, GroupElem::Finite(1))
    };
    let zinv = group.inv(&z)?;
    let entry = GroupRingElement::from_terms(
        group.clone(),
        [
            (group.identity(), Gaussian::from_int(2)),
            (z, Gaussian::from_int(-1)),
            (zinv, Gaussian::from_int(-1)),
        ],
    )?;
    HermitianForm::new(vec![vec![entry]], Parity::Hermitian)
}

/// One entry of the counterexample battery: the form, the deck group
/// parameter, and the values it must produce.
#[derive(Clone, Debug)]
pub struct BatteryCase {
    /// p > 1 for the Z/p quotient, p = 1 for the infinite cyclic cover
    pub p: usize,
    pub form: HermitianForm,
    pub expected_sign2: Rat,
    pub expected_sign: i64,
}

impl BatteryCase {
    pub fn name(&self) -> String {
        if self.p == 1 {
            "counterexample_z".into()
        } else {
            format!("counterexample_p{}", self.p)
        }
    }
}

/// The counterexample form over each requested deck group, with its known
/// signature defect: sign2 = 1 - 1/p for Z/p, = 1 for Z, ordinary always 0.
pub fn counterexample_battery(p_list: &[usize]) -> Result<Vec<BatteryCase>> {
    p_list
        .iter()
        .map(|&p| {
            if p == 0 {
                return Err(Error::BadData(
                    "battery entries must be >= 1 (1 encodes the infinite cyclic case)".into(),
                ));
            }
            let form = counterexample_form(if p == 1 { 0 } else { p })?;
            let expected_sign2 = if p == 1 {
                rat_int(1)
            } else {
                rat((p - 1) as i64, p as i64)
            };
            Ok(BatteryCase {
                p,
                form,
                expected_sign2,
                expected_sign: 0,
            })
        })
        .collect()
}

/// Looks up the complexes the command line and the test batteries call by
/// name.
pub fn standard_complex(name: &str) -> Result<CoveredComplex> {
    match name {
        "circle3" => CoveredComplex::plain(circle(3)?),
        "sphere4" => CoveredComplex::plain(sphere_complex(4)),
        "torus2" => torus2(),
        "torus4_z2" => torus4_with_z2(),
        "s1s3" => s1_x_s3(),
        "cp2_9" => cp2_9(),
        // shipped unoriented: the standard non-orientability error path
        "rp2_6" => CoveredComplex::plain(OrientedSimplicialComplex::new(6, rp2_facets())?),
        other => Err(Error::BadData(format!("unknown complex name {other:?}"))),
    }
}

/// 9-vertex complex projective plane, found by searching translation-invariant
/// facet families over Z_3 x Z_3 and calibrated so the fundamental class has
/// signature +1. See examples/cp2_search.rs for the generating search.
pub fn cp2_9() -> Result<CoveredComplex> {
    let dto: crate::json::ComplexDto = serde_json::from_str(include_str!("../data/cp2_9.json"))
        .map_err(|e| Error::BadData(format!("embedded cp2_9 data: {e}")))?;
    let (complex, _) = crate::json::complex_from_dto(&dto)?;
    let f = complex.f_vector();
    if f != [9, 36, 84, 90, 36] || complex.euler_characteristic() != 3 {
        return Err(Error::BadData("embedded cp2_9 data has the wrong face counts".into()));
    }
    CoveredComplex::plain(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::ordinary_space_signature;

    #[test]
    fn circle_is_a_cycle() {
        let c = circle(5).unwrap();
        assert_eq!(c.f_vector(), vec![5, 5]);
        assert!(circle(2).is_err());
    }

    #[test]
    fn shuffle_counts_and_signs() {
        let s = shuffles(2, 2);
        assert_eq!(s.len(), 6);
        for (steps, sign) in &s {
            let mut inversions = 0;
            for i in 0..steps.len() {
                for j in i + 1..steps.len() {
                    if steps[i] && !steps[j] {
                        inversions += 1;
                    }
                }
            }
            assert_eq!(*sign, if inversions % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(s[0], (vec![true, true, false, false], 1));
    }

    #[test]
    fn torus_face_counts() {
        let t2 = torus2().unwrap();
        assert_eq!(t2.complex.f_vector(), vec![9, 27, 18]);
        let s13 = s1_x_s3().unwrap();
        assert_eq!(s13.complex.f_vector(), vec![15, 75, 150, 150, 60]);
    }

    #[test]
    fn torus4_face_counts() {
        let t4 = torus4_with_z2().unwrap();
        assert_eq!(t4.complex.f_vector(), vec![81, 1215, 4050, 4860, 1944]);
        assert_eq!(t4.complex.euler_characteristic(), 0);
        assert_eq!(t4.covering.group().order(), Some(2));
    }

    #[test]
    fn product_of_plain_tori_is_plain() {
        let t4 = torus4_plain().unwrap();
        assert!(t4.covering.is_trivial());
        let (sig, _) = ordinary_space_signature(&t4.complex).unwrap();
        assert_eq!(sig, 0);
    }

    #[test]
    fn torus2_matches_the_winding_cover() {
        let t2 = torus2().unwrap();
        assert_eq!(t2.covering.group(), &GroupModel::free_abelian(2).unwrap());
        // one full x-loop lifts to translation by the first generator
        let path = [0usize, 3, 6];
        let mut g = t2.covering.group().identity();
        for w in path.windows(2) {
            g = t2.covering.group().mul(&g, &t2.covering.label(w[0], w[1])).unwrap();
        }
        g = t2.covering.group().mul(&g, &t2.covering.label(6, 0)).unwrap();
        assert_eq!(g, GroupElem::Free(vec![1, 0]));
    }

    #[test]
    fn embedded_projective_plane_has_signature_one() {
        let cp2 = cp2_9().unwrap();
        assert_eq!(cp2.complex.f_vector(), vec![9, 36, 84, 90, 36]);
        let (sig, inertia) = ordinary_space_signature(&cp2.complex).unwrap();
        assert_eq!(sig, 1);
        assert_eq!(inertia, (1, 0, 0));
        assert!(standard_complex("cp2_9").is_ok());
        assert!(standard_complex("nope").is_err());
    }

    #[test]
    fn rp2_is_not_orientable() {
        let mut c = OrientedSimplicialComplex::new(6, rp2_facets()).unwrap();
        assert!(c.validate_and_orient().is_err());
    }

    #[test]
    fn counterexample_form_is_hermitian() {
        let f = counterexample_form(5).unwrap();
        assert_eq!(f.size(), 1);
        let g = counterexample_form(0).unwrap();
        assert_eq!(g.group(), &GroupModel::free_abelian(1).unwrap());
    }

    #[test]
    fn staircase_is_associative_up_to_face_counts() {
        let a = CoveredComplex::plain(circle(3).unwrap()).unwrap();
        let b = CoveredComplex::plain(circle(4).unwrap()).unwrap();
        let c = CoveredComplex::plain(circle(5).unwrap()).unwrap();
        let left = staircase_product(&staircase_product(&a, &b).unwrap(), &c).unwrap();
        let right = staircase_product(&a, &staircase_product(&b, &c).unwrap()).unwrap();
        assert_eq!(left.complex.f_vector(), right.complex.f_vector());
        assert_eq!(
            left.complex.euler_characteristic(),
            right.complex.euler_characteristic()
        );
        assert_eq!(left.complex.euler_characteristic(), 0);
    }

    #[test]
    fn battery_carries_the_defect_values() {
        let cases = counterexample_battery(&[2, 5, 1]).unwrap();
        assert_eq!(cases.len(), 3);
        assert_eq!(cases[0].name(), "counterexample_p2");
        assert_eq!(cases[0].expected_sign2, rat(1, 2));
        assert_eq!(cases[1].expected_sign2, rat(4, 5));
        assert_eq!(cases[2].name(), "counterexample_z");
        assert_eq!(cases[2].expected_sign2, rat_int(1));
        assert!(cases.iter().all(|c| c.expected_sign == 0));
        assert!(counterexample_battery(&[0]).is_err());
    }
}
