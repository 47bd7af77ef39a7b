//! The named invariant batteries behind `l2sig verify`. Each case prints one
//! line; the command exits 0 only when every case passes.

use crate::Failure;
use l2sig::constructions::{counterexample_form, standard_complex, CoveredComplex};
use l2sig::covering::CoveringCocycle;
use l2sig::cochain::Realization;
use l2sig::cup::{averaged_cup_value, elementary, LocalOrdering};
use l2sig::group::{GroupElem, GroupMap, GroupModel};
use l2sig::pairing::{cover_route_signature, exact_middle_pairing, l2_signature_of_space};
use l2sig::random::{
    random_finite_group, random_hermitian_form, random_unit_triangular, scrambled_ordering,
    seeded_rng,
};
use l2sig::scalar::{rat, Rat};
use l2sig::signature::l2_signature_of_form;
use l2sig::simplicial::full_simplex;
use l2sig::whitney::whitney_pairing_check;

type Case = (String, Result<String, String>);

pub fn run(name: &str) -> Result<(), Failure> {
    let cases = match name {
        "whitney" => whitney(),
        "kunneth" => kunneth(),
        "sylvester" => sylvester(),
        "two-route" => two_route(),
        "ordering" => ordering(),
        other => {
            return Err(Failure::Parse(format!(
                "unknown verify suite {other:?} (expected whitney, kunneth, sylvester, two-route, ordering)"
            )))
        }
    };
    let mut failed = 0usize;
    for (case, outcome) in &cases {
        match outcome {
            Ok(detail) => println!("ok   {case}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {case}: {detail}");
            }
        }
    }
    println!("suite {name}: {} passed, {failed} failed", cases.len() - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Suite(failed))
    }
}

fn case(
    cases: &mut Vec<Case>,
    name: impl Into<String>,
    body: impl FnOnce() -> Result<String, String>,
) {
    cases.push((name.into(), body()));
}

fn lib<T>(r: l2sig::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Wedge integrals of Whitney forms against the cup-product constant, then
/// the ordering-averaged cup product reproducing the same constants on
/// barycentric flags.
fn whitney() -> Vec<Case> {
    let mut cases = Vec::new();
    for d in 0..=6usize {
        for p in 0..=d {
            let q = d - p;
            case(&mut cases, format!("wedge integrals p={p} q={q}"), || {
                let check = lib(whitney_pairing_check(p, q))?;
                Ok(format!(
                    "{} spanning and {} vanishing pairs match {}!{}!/{}!",
                    check.spanning_pairs,
                    check.vanishing_pairs,
                    p,
                    q,
                    d + 1
                ))
            });
        }
    }
    for d in 2..=4usize {
        let sd = match lib(full_simplex(d).barycentric_subdivision()) {
            Ok(sd) => sd,
            Err(e) => {
                cases.push((format!("subdivision of the {d}-simplex"), Err(e)));
                continue;
            }
        };
        for p in 0..=d {
            let q = d - p;
            case(&mut cases, format!("averaged cup flags d={d} p={p}"), || {
                let expect = rat(factorial(p) * factorial(q), factorial(d + 1));
                for (t, top) in sd.simplices(d).iter().enumerate() {
                    let a = lib(elementary(&sd, p, &top[..=p]))?;
                    let b = lib(elementary(&sd, q, &top[p..]))?;
                    let got = lib(averaged_cup_value(&sd, p, q, &a, &b, t))?;
                    if got != expect {
                        return Err(format!("flag {t}: got {got}, expected {expect}"));
                    }
                }
                Ok(format!(
                    "{} flags evaluate to {expect}",
                    sd.simplex_count(d)
                ))
            });
        }
    }
    cases
}

fn exact_sign2(form: &l2sig::form::HermitianForm) -> Result<(Rat, Rat, i64), String> {
    let report = lib(l2_signature_of_form(form, None))?;
    let sign2 = report.sign2.exact().ok_or("expected an exact value")?.clone();
    let kernel = report.kernel_dim.exact().ok_or("expected an exact value")?.clone();
    Ok((sign2, kernel, report.ordinary_sign))
}

/// Multiplicativity of sign2 under the Kunneth product: the worked 1/2 * 2/3
/// case and a battery of random finite-group pairs.
fn kunneth() -> Vec<Case> {
    let mut cases = Vec::new();
    case(&mut cases, "counterexample Z/2 x Z/3", || {
        let f = lib(counterexample_form(2))?;
        let g = lib(counterexample_form(3))?;
        let (sf, _, _) = exact_sign2(&f)?;
        let (sg, _, _) = exact_sign2(&g)?;
        let (sp, _, _) = exact_sign2(&lib(f.kunneth_product(&g))?)?;
        if (sf.clone(), sg.clone()) != (rat(1, 2), rat(2, 3)) {
            return Err(format!("factors gave {sf} and {sg}"));
        }
        if sp != rat(1, 3) {
            return Err(format!("product gave {sp}, expected 1/3"));
        }
        Ok("1/2 * 2/3 = 1/3 over Z/6".into())
    });
    for seed in 0..20u64 {
        case(&mut cases, format!("random pair seed={seed}"), || {
            let mut rng = seeded_rng(seed);
            let ga = lib(random_finite_group(&mut rng))?;
            let gb = lib(random_finite_group(&mut rng))?;
            let f = lib(random_hermitian_form(&mut rng, &ga, 1 + (seed as usize) % 2))?;
            let g = lib(random_hermitian_form(&mut rng, &gb, 1 + (seed as usize / 2) % 2))?;
            let (sf, _, of) = exact_sign2(&f)?;
            let (sg, _, og) = exact_sign2(&g)?;
            let (sp, _, op) = exact_sign2(&lib(f.kunneth_product(&g))?)?;
            if sp != sf.clone() * sg.clone() {
                return Err(format!("sign2 {sp} differs from {sf} * {sg}"));
            }
            if op != of * og {
                return Err(format!("ordinary {op} differs from {of} * {og}"));
            }
            Ok(format!("{sf} * {sg} = {sp} over {} x {}", ga, gb))
        });
    }
    cases
}

/// sign2 and kernel dimension are congruence invariants: transform by unit
/// triangular matrices (always invertible over the group ring).
fn sylvester() -> Vec<Case> {
    let mut cases = Vec::new();
    for seed in 0..50u64 {
        case(&mut cases, format!("congruence seed={seed}"), || {
            let mut rng = seeded_rng(1000 + seed);
            let group = lib(random_finite_group(&mut rng))?;
            let n = 2 + (seed as usize) % 2;
            let form = lib(random_hermitian_form(&mut rng, &group, n))?;
            let upper = lib(random_unit_triangular(&mut rng, &group, n))?;
            let lower = transpose(&upper);
            let moved = lib(lib(form.transform(&upper))?.transform(&lower))?;
            let before = exact_sign2(&form)?;
            let after = exact_sign2(&moved)?;
            if before != after {
                return Err(format!("{before:?} became {after:?}"));
            }
            Ok(format!(
                "sign2 = {}, kernel = {} preserved over {}",
                before.0, before.1, group
            ))
        });
    }
    cases
}

fn transpose(u: &[Vec<l2sig::ring::GroupRingElement>]) -> Vec<Vec<l2sig::ring::GroupRingElement>> {
    let n = u.len();
    (0..n).map(|i| (0..n).map(|j| u[j][i].clone()).collect()).collect()
}

fn covered(name: &str) -> Result<CoveredComplex, String> {
    lib(standard_complex(name))
}

/// Push the infinite cyclic winding of S1 x S3 onto Z/2.
fn s1s3_mod2() -> Result<CoveredComplex, String> {
    let covered = covered("s1s3")?;
    let z = lib(GroupModel::free_abelian(1))?;
    let z2 = lib(GroupModel::cyclic(2))?;
    let push = lib(GroupMap::from_generator_images(
        z,
        z2,
        vec![GroupElem::Finite(1)],
    ))?;
    let covering = lib(covered.covering.push(&push))?;
    lib(CoveredComplex::new(covered.complex, covering))
}

fn routes_agree(complex_name: &str, covered: &CoveredComplex) -> Result<String, String> {
    let rep = lib(l2_signature_of_space(&covered.complex, &covered.covering, None))?;
    let cov = lib(cover_route_signature(&covered.complex, &covered.covering))?;
    if rep.sign2.exact() != cov.sign2.exact() || rep.kernel_dim.exact() != cov.kernel_dim.exact()
    {
        return Err(format!(
            "{complex_name}: regular rep gave ({}, {}), explicit cover gave ({}, {})",
            rep.sign2, rep.kernel_dim, cov.sign2, cov.kernel_dim
        ));
    }
    if rep.ordinary_sign != cov.ordinary_sign {
        return Err("routes disagree on the ordinary signature".into());
    }
    let ordinary = rat(rep.ordinary_sign, 1);
    if rep.sign2.exact() != Some(&ordinary) {
        return Err(format!(
            "sign2 {} differs from the ordinary signature {}",
            rep.sign2, rep.ordinary_sign
        ));
    }
    Ok(format!(
        "sign2 = ordinary = {} on both routes, kernel = {}",
        rep.ordinary_sign, rep.kernel_dim
    ))
}

/// The regular representation route and the explicit covering complex route
/// compute the same numbers.
fn two_route() -> Vec<Case> {
    let mut cases = Vec::new();
    case(&mut cases, "sphere4 with a two-sheet trivial cover", || {
        let base = covered("sphere4")?;
        let c = lib(CoveredComplex::new(
            base.complex,
            CoveringCocycle::trivial(lib(GroupModel::cyclic(2))?),
        ))?;
        routes_agree("sphere4", &c)
    });
    case(&mut cases, "cp2_9 with a three-sheet trivial cover", || {
        let base = covered("cp2_9")?;
        let c = lib(CoveredComplex::new(
            base.complex,
            CoveringCocycle::trivial(lib(GroupModel::cyclic(3))?),
        ))?;
        routes_agree("cp2_9", &c)
    });
    case(&mut cases, "s1s3 winding pushed onto Z/2", || {
        let c = s1s3_mod2()?;
        routes_agree("s1s3", &c)
    });
    cases
}

fn inertia_under(
    covered: &CoveredComplex,
    realization: &Realization,
    ordering: &LocalOrdering,
) -> Result<(usize, usize, usize), String> {
    let pairing = lib(exact_middle_pairing(
        &covered.complex,
        &covered.covering,
        realization,
        ordering,
    ))?;
    lib(pairing.inertia())
}

/// The middle intersection pairing's inertia does not depend on the global
/// vertex ordering feeding the cup product.
fn ordering() -> Vec<Case> {
    let mut cases = Vec::new();
    let add = |name: &'static str,
                   cases: &mut Vec<Case>,
                   build: fn() -> Result<(CoveredComplex, Realization), String>| {
        case(cases, name, || {
            let (covered, realization) = build()?;
            let n = covered.complex.vertex_count();
            let sorted = inertia_under(&covered, &realization, &LocalOrdering::sorted(n))?;
            let scrambled = inertia_under(&covered, &realization, &scrambled_ordering(n))?;
            if sorted != scrambled {
                return Err(format!("inertia {sorted:?} became {scrambled:?}"));
            }
            Ok(format!("inertia {sorted:?} under both orderings"))
        });
    };
    add("sphere4 untwisted", &mut cases, || {
        Ok((covered("sphere4")?, Realization::Trivial))
    });
    add("cp2_9 untwisted", &mut cases, || {
        Ok((covered("cp2_9")?, Realization::Trivial))
    });
    add("cp2_9 with a two-sheet trivial cover", &mut cases, || {
        let base = covered("cp2_9")?;
        let c = lib(CoveredComplex::new(
            base.complex,
            CoveringCocycle::trivial(lib(GroupModel::cyclic(2))?),
        ))?;
        Ok((c, Realization::RegularRep))
    });
    add("s1s3 winding pushed onto Z/2", &mut cases, || {
        Ok((s1s3_mod2()?, Realization::RegularRep))
    });
    cases
}
