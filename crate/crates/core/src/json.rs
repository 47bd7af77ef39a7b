//! JSON descriptions of groups, forms, complexes, coverings and reports.
//!
//! Wire rules: rationals appear as [num, den] pairs on the way in and as
//! "num/den" strings inside reports; Gaussian coefficients as a pair of
//! pairs; group elements as an integer (finite models, rank-one exponent)
//! or an exponent vector.

use crate::covering::CoveringCocycle;
use crate::error::{Error, Result};
use crate::form::{HermitianForm, Parity};
use crate::group::{GroupElem, GroupMap, GroupModel};
use crate::ring::GroupRingElement;
use crate::scalar::{Gaussian, Rat};
use num::Zero;
use crate::signature::{Real, SignatureReport};
use crate::simplicial::OrientedSimplicialComplex;
use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum GroupDto {
    #[serde(rename = "finite_cyclic")]
    FiniteCyclic { order: usize },
    #[serde(rename = "finite_table")]
    FiniteTable { table: Vec<Vec<usize>> },
    #[serde(rename = "free_abelian")]
    FreeAbelian { rank: usize },
    #[serde(rename = "tower")]
    Tower {
        base: Box<GroupDto>,
        quotients: Vec<QuotientDto>,
    },
}

/// One finite quotient of the tower base. `images` lists generator images
/// for cyclic or free abelian bases, and every element's image for table
/// bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDto {
    pub target: GroupDto,
    pub images: Vec<ElementDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDto {
    Int(i64),
    Exponents(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDto {
    Rational([i64; 2]),
    Gaussian([[i64; 2]; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDto {
    pub coeff: CoeffDto,
    pub g: ElementDto,
}

pub type RingElementDto = Vec<TermDto>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDto {
    pub group: GroupDto,
    /// 1 for symmetric coefficients under star-transpose, -1 for skew
    pub parity: i64,
    pub matrix: Vec<Vec<RingElementDto>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeLabelDto {
    pub edge: [usize; 2],
    pub g: ElementDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringDto {
    pub group: GroupDto,
    pub edge_labels: Vec<EdgeLabelDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDto {
    pub dim: usize,
    pub vertices: usize,
    pub top_simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringDto>,
}

/// Exact values as "num/den" strings, quadrature values as plain floats.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealDto {
    Exact(String),
    Approx(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDto {
    pub sign2: RealDto,
    pub ordinary_sign: i64,
    pub kernel_dim: RealDto,
    pub method: String,
    pub error_bound: f64,
    pub dim: usize,
    pub seed: u64,
    pub nodes: usize,
    pub eps: f64,
}

pub fn group_to_dto(model: &GroupModel) -> Result<GroupDto> {
    Ok(match model {
        GroupModel::FiniteCyclic(n) => GroupDto::FiniteCyclic { order: *n },
        GroupModel::FiniteTable(t) => GroupDto::FiniteTable { table: t.rows() },
        GroupModel::FreeAbelian(d) => GroupDto::FreeAbelian { rank: *d },
        GroupModel::Tower(t) => GroupDto::Tower {
            base: Box::new(group_to_dto(&t.base)?),
            quotients: t
                .quotients
                .iter()
                .map(quotient_to_dto)
                .collect::<Result<_>>()?,
        },
    })
}

fn quotient_to_dto(map: &GroupMap) -> Result<QuotientDto> {
    let images = match map.source() {
        GroupModel::FreeAbelian(d) => (0..*d)
            .map(|k| {
                let mut e = vec![0i64; *d];
                e[k] = 1;
                map.apply(&GroupElem::Free(e))
            })
            .collect::<Result<Vec<_>>>()?,
        GroupModel::FiniteCyclic(_) => vec![map.apply(&GroupElem::Finite(1))?],
        GroupModel::FiniteTable(t) => (0..t.order())
            .map(|i| map.apply(&GroupElem::Finite(i)))
            .collect::<Result<Vec<_>>>()?,
        GroupModel::Tower(_) => {
            return Err(Error::BadMap("tower quotients cannot nest towers".into()))
        }
    };
    Ok(QuotientDto {
        target: group_to_dto(map.target())?,
        images: images.iter().map(elem_to_dto).collect(),
    })
}

pub fn group_from_dto(dto: &GroupDto) -> Result<GroupModel> {
    match dto {
        GroupDto::FiniteCyclic { order } => GroupModel::cyclic(*order),
        GroupDto::FiniteTable { table } => GroupModel::from_table(table.clone()),
        GroupDto::FreeAbelian { rank } => GroupModel::free_abelian(*rank),
        GroupDto::Tower { base, quotients } => {
            let base = group_from_dto(base)?;
            let maps = quotients
                .iter()
                .map(|q| {
                    let target = group_from_dto(&q.target)?;
                    let images = q
                        .images
                        .iter()
                        .map(|e| elem_from_dto(&target, e))
                        .collect::<Result<Vec<_>>>()?;
                    match &base {
                        GroupModel::FiniteTable(_) => {
                            GroupMap::from_finite_images(base.clone(), target, images)
                        }
                        _ => GroupMap::from_generator_images(base.clone(), target, images),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            GroupModel::tower(base, maps)
        }
    }
}

pub fn elem_to_dto(e: &GroupElem) -> ElementDto {
    match e {
        GroupElem::Finite(i) => ElementDto::Int(*i as i64),
        GroupElem::Free(v) => ElementDto::Exponents(v.clone()),
    }
}

pub fn elem_from_dto(model: &GroupModel, dto: &ElementDto) -> Result<GroupElem> {
    match dto {
        ElementDto::Int(i) => model.elem_from_int(*i),
        ElementDto::Exponents(v) => model.canon(&GroupElem::Free(v.clone())),
    }
}

fn rat_from_pair(p: &[i64; 2]) -> Result<Rat> {
    if p[1] == 0 {
        return Err(Error::BadData("rational with zero denominator".into()));
    }
    Ok(Rat::new(BigInt::from(p[0]), BigInt::from(p[1])))
}

fn rat_to_pair(r: &Rat) -> Result<[i64; 2]> {
    let n = r.numer().to_i64();
    let d = r.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(Error::BadData(format!(
            "rational {r} does not fit the 64-bit wire format"
        ))),
    }
}

pub fn coeff_from_dto(dto: &CoeffDto) -> Result<Gaussian> {
    Ok(match dto {
        CoeffDto::Rational(p) => Gaussian::from_rat(rat_from_pair(p)?),
        CoeffDto::Gaussian([re, im]) => Gaussian::new(rat_from_pair(re)?, rat_from_pair(im)?),
    })
}

pub fn coeff_to_dto(g: &Gaussian) -> Result<CoeffDto> {
    Ok(if g.im.is_zero() {
        CoeffDto::Rational(rat_to_pair(&g.re)?)
    } else {
        CoeffDto::Gaussian([rat_to_pair(&g.re)?, rat_to_pair(&g.im)?])
    })
}

pub fn ring_element_from_dto(
    group: &GroupModel,
    dto: &RingElementDto,
) -> Result<GroupRingElement> {
    let terms = dto
        .iter()
        .map(|t| Ok((elem_from_dto(group, &t.g)?, coeff_from_dto(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    GroupRingElement::from_terms(group.clone(), terms)
}

pub fn ring_element_to_dto(e: &GroupRingElement) -> Result<RingElementDto> {
    e.terms()
        .map(|(g, c)| {
            Ok(TermDto {
                coeff: coeff_to_dto(c)?,
                g: elem_to_dto(g),
            })
        })
        .collect()
}

pub fn form_from_dto(dto: &FormDto) -> Result<HermitianForm> {
    let group = group_from_dto(&dto.group)?;
    let parity = match dto.parity {
        1 => Parity::Hermitian,
        -1 => Parity::Skew,
        other => {
            return Err(Error::BadData(format!(
                "parity must be 1 or -1, got {other}"
            )))
        }
    };
    let matrix = dto
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| ring_element_from_dto(&group, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    HermitianForm::new(matrix, parity)
}

pub fn form_to_dto(form: &HermitianForm) -> Result<FormDto> {
    let n = form.size();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ring_element_to_dto(form.entry(i, j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FormDto {
        group: group_to_dto(form.group())?,
        parity: match form.parity() {
            Parity::Hermitian => 1,
            Parity::Skew => -1,
        },
        matrix,
    })
}

/// Builds the complex (and covering, when present). The orientation is
/// verified if supplied and computed if not; unoriented non-orientable
/// complexes only fail later, when something needs the fundamental cycle.
pub fn complex_from_dto(
    dto: &ComplexDto,
) -> Result<(OrientedSimplicialComplex, Option<CoveringCocycle>)> {
    let mut complex = OrientedSimplicialComplex::new(dto.vertices, dto.top_simplices.clone())?;
    if complex.dim() != dto.dim {
        return Err(Error::BadComplex(format!(
            "declared dimension {} but top simplices have dimension {}",
            dto.dim,
            complex.dim()
        )));
    }
    match &dto.orientation {
        Some(signs) => {
            complex.set_orientation(signs.clone())?;
        }
        None => {
            complex.validate_and_orient()?;
        }
    }
    let covering = match &dto.covering {
        Some(c) => {
            let group = group_from_dto(&c.group)?;
            let labels = c
                .edge_labels
                .iter()
                .map(|l| {
                    Ok((
                        (l.edge[0], l.edge[1]),
                        elem_from_dto(&group, &l.g)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let cocycle = CoveringCocycle::new(group, labels)?;
            cocycle.validate(&complex)?;
            Some(cocycle)
        }
        None => None,
    };
    Ok((complex, covering))
}

pub fn complex_to_dto(
    complex: &OrientedSimplicialComplex,
    covering: Option<&CoveringCocycle>,
) -> Result<ComplexDto> {
    let covering = covering
        .map(|c| -> Result<CoveringDto> {
            Ok(CoveringDto {
                group: group_to_dto(c.group())?,
                edge_labels: c
                    .labeled_edges()
                    .map(|(&(i, j), g)| EdgeLabelDto {
                        edge: [i, j],
                        g: elem_to_dto(g),
                    })
                    .collect(),
            })
        })
        .transpose()?;
    Ok(ComplexDto {
        dim: complex.dim(),
        vertices: complex.vertex_count(),
        top_simplices: complex.simplices(complex.dim()).to_vec(),
        orientation: complex.orientation().map(|s| s.to_vec()),
        covering,
    })
}

pub fn real_to_dto(r: &Real) -> RealDto {
    match r {
        Real::Exact(x) => RealDto::Exact(format!("{}/{}", x.numer(), x.denom())),
        Real::Approx(x) => RealDto::Approx(*x),
    }
}

pub fn report_to_dto(
    report: &SignatureReport,
    seed: u64,
    nodes: usize,
    eps: f64,
) -> ReportDto {
    ReportDto {
        sign2: real_to_dto(&report.sign2),
        ordinary_sign: report.ordinary_sign,
        kernel_dim: real_to_dto(&report.kernel_dim),
        method: report.method.tag().to_string(),
        error_bound: report.error_bound,
        dim: report.dim,
        seed,
        nodes,
        eps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::l2_signature_of_form;

    #[test]
    fn form_round_trip() {
        let text = r#"{
            "group": {"type": "finite_cyclic", "order": 5},
            "parity": 1,
            "matrix": [[[
                {"coeff": [2, 1], "g": 0},
                {"coeff": [-1, 1], "g": 1},
                {"coeff": [-1, 1], "g": 4}
            ]]]
        }"#;
        let dto: FormDto = serde_json::from_str(text).unwrap();
        let form = form_from_dto(&dto).unwrap();
        let report = l2_signature_of_form(&form, None).unwrap();
        assert_eq!(report.sign2, Real::Exact(crate::scalar::rat(4, 5)));

        let back = form_to_dto(&form).unwrap();
        let again = form_from_dto(&back).unwrap();
        assert_eq!(
            l2_signature_of_form(&again, None).unwrap().sign2,
            report.sign2
        );
    }

    #[test]
    fn gaussian_coefficients_round_trip() {
        let text = r#"[{"coeff": [[0, 1], [1, 2]], "g": [3]}]"#;
        let dto: RingElementDto = serde_json::from_str(text).unwrap();
        let group = GroupModel::free_abelian(1).unwrap();
        let e = ring_element_from_dto(&group, &dto).unwrap();
        let back = ring_element_to_dto(&e).unwrap();
        assert!(matches!(back[0].coeff, CoeffDto::Gaussian(_)));
        let again = ring_element_from_dto(&group, &back).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn complex_round_trip_with_covering() {
        let text = r#"{
            "dim": 1,
            "vertices": 3,
            "top_simplices": [[0, 1], [1, 2], [0, 2]],
            "orientation": [1, 1, -1],
            "covering": {
                "group": {"type": "finite_cyclic", "order": 2},
                "edge_labels": [{"edge": [0, 2], "g": 1}]
            }
        }"#;
        let dto: ComplexDto = serde_json::from_str(text).unwrap();
        let (complex, covering) = complex_from_dto(&dto).unwrap();
        assert_eq!(complex.dim(), 1);
        let cov = covering.unwrap();
        assert!(!cov.is_trivial());
        let back = complex_to_dto(&complex, Some(&cov)).unwrap();
        let (again, cov2) = complex_from_dto(&back).unwrap();
        assert_eq!(again.f_vector(), complex.f_vector());
        assert!(!cov2.unwrap().is_trivial());
    }

    #[test]
    fn bad_orientation_is_rejected() {
        let text = r#"{
            "dim": 1,
            "vertices": 3,
            "top_simplices": [[0, 1], [1, 2], [0, 2]],
            "orientation": [1, 1, 1]
        }"#;
        let dto: ComplexDto = serde_json::from_str(text).unwrap();
        assert!(complex_from_dto(&dto).is_err());
    }

    #[test]
    fn tower_group_round_trip() {
        let text = r#"{
            "type": "tower",
            "base": {"type": "free_abelian", "rank": 1},
            "quotients": [
                {"target": {"type": "finite_cyclic", "order": 2}, "images": [1]},
                {"target": {"type": "finite_cyclic", "order": 3}, "images": [1]}
            ]
        }"#;
        let dto: GroupDto = serde_json::from_str(text).unwrap();
        let model = group_from_dto(&dto).unwrap();
        let data = model.tower_data().unwrap();
        assert_eq!(data.quotients.len(), 2);
        let back = group_to_dto(&model).unwrap();
        let again = group_from_dto(&back).unwrap();
        assert_eq!(model, again);
    }

    #[test]
    fn report_serialization_shapes() {
        let report = SignatureReport {
            sign2: Real::Exact(crate::scalar::rat(4, 5)),
            ordinary_sign: 0,
            kernel_dim: Real::Exact(crate::scalar::rat(1, 5)),
            method: crate::signature::Method::ExactFinite,
            error_bound: 0.0,
            dim: 1,
        };
        let dto = report_to_dto(&report, 7, 0, 1e-9);
        let json = serde_json::to_string_pretty(&dto).unwrap();
        assert!(json.contains("\"4/5\""));
        assert!(json.contains("\"seed\": 7"));
        let approx = SignatureReport {
            sign2: Real::Approx(0.99),
            ..report
        };
        let dto = report_to_dto(&approx, 7, 2048, 1e-9);
        let json = serde_json::to_string_pretty(&dto).unwrap();
        assert!(json.contains("0.99"));
    }
}
