//! The six headline checks, one test each, with their time budgets pinned.
//! Each passing test prints one PASS line (visible under --nocapture).

use l2sig::cochain::{twisted_deltas_exact, Realization};
use l2sig::constructions::{
    counterexample_form, standard_complex, CoveredComplex,
};
use l2sig::covering::CoveringCocycle;
use l2sig::cup::{aw_cup, averaged_cup_value, elementary, LocalOrdering};
use l2sig::form::HermitianForm;
use l2sig::group::{GroupElem, GroupMap, GroupModel};
use l2sig::pairing::{cover_route_signature, exact_middle_pairing, l2_signature_of_space};
use l2sig::random::{
    random_finite_group, random_hermitian_form, random_unit_triangular, scrambled_ordering,
    seeded_rng,
};
use l2sig::scalar::{rat, rat_int, Rat};
use l2sig::signature::{l2_signature_of_form, signature_tower, QuadratureSpec, Real};
use l2sig::simplicial::{full_simplex, OrientedSimplicialComplex};
use l2sig::whitney::whitney_pairing_check;
use num::Zero;
use std::time::Instant;

fn quad() -> QuadratureSpec {
    QuadratureSpec::new(2048, 7, 1e-9).unwrap()
}

fn exact(r: &Real) -> Rat {
    r.exact().expect("finite routes report exact values").clone()
}

#[test]
fn criterion_1_finite_cyclic_counterexamples() {
    let start = Instant::now();
    for p in [2usize, 3, 5, 7, 11] {
        let form = counterexample_form(p).unwrap();
        let report = l2_signature_of_form(&form, None).unwrap();
        assert_eq!(exact(&report.sign2), rat(p as i64 - 1, p as i64), "p = {p}");
        assert_eq!(report.ordinary_sign, 0, "p = {p}");
        assert_eq!(exact(&report.kernel_dim), rat(1, p as i64), "p = {p}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("PASS criterion 1: sign2 = 1 - 1/p for p in {{2,3,5,7,11}}, ordinary 0, in {elapsed:?}");
}

#[test]
fn criterion_2_infinite_cyclic_counterexample() {
    let start = Instant::now();
    let form = counterexample_form(0).unwrap();
    let report = l2_signature_of_form(&form, Some(&quad())).unwrap();
    let sign2 = report.sign2.to_f64();
    let residual = (sign2 - 1.0).abs();
    assert!(residual < 0.01, "sign2 = {sign2}");
    assert!(
        report.error_bound >= residual,
        "error bound {} misses residual {residual}",
        report.error_bound
    );

    let base = GroupModel::free_abelian(1).unwrap();
    let quotients = (2..=64usize)
        .map(|k| {
            GroupMap::from_generator_images(
                base.clone(),
                GroupModel::cyclic(k).unwrap(),
                vec![GroupElem::Finite(1)],
            )
            .unwrap()
        })
        .collect();
    let tower = GroupModel::tower(base, quotients).unwrap();
    let towered = form.with_group(tower).unwrap();
    let rows = signature_tower(&towered, 63).unwrap();
    assert_eq!(rows.len(), 63);
    for (i, row) in rows.iter().enumerate() {
        let k = (i + 2) as i64;
        assert_eq!(row.index, k as usize);
        assert_eq!(row.sign2, rat(k - 1, k), "k = {k}");
        assert_eq!(row.kernel_dim, rat(1, k), "k = {k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("PASS criterion 2: quadrature sign2 = {sign2} (residual covered), tower rows (k-1)/k up to k = 64, in {elapsed:?}");
}

#[test]
fn criterion_3_whitney_cup_compatibility() {
    let start = Instant::now();
    let mut wedge_pairs = 0usize;
    for d in 0..=6usize {
        for p in 0..=d {
            let check = whitney_pairing_check(p, d - p).unwrap();
            wedge_pairs += check.spanning_pairs + check.vanishing_pairs;
        }
    }
    let mut flags = 0usize;
    for d in 2..=4usize {
        let sd = full_simplex(d).barycentric_subdivision().unwrap();
        for p in 0..=d {
            let q = d - p;
            let expect = rat(
                (1..=p as i64).product::<i64>() * (1..=q as i64).product::<i64>(),
                (1..=d as i64 + 1).product::<i64>(),
            );
            for (t, top) in sd.simplices(d).iter().enumerate() {
                let a = elementary(&sd, p, &top[..=p]).unwrap();
                let b = elementary(&sd, q, &top[p..]).unwrap();
                assert_eq!(
                    averaged_cup_value(&sd, p, q, &a, &b, t).unwrap(),
                    expect,
                    "d={d} p={p} flag {t}"
                );
                flags += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("PASS criterion 3: {wedge_pairs} wedge integrals and {flags} averaged-cup flags match p!q!/(p+q+1)!, in {elapsed:?}");
}

#[test]
fn criterion_4_signature_theorem_at_desk_scale() {
    let cp2 = standard_complex("cp2_9").unwrap();
    let report = l2_signature_of_space(&cp2.complex, &cp2.covering, None).unwrap();
    assert_eq!(exact(&report.sign2), rat_int(1));
    assert_eq!(report.ordinary_sign, 1);

    let sphere = standard_complex("sphere4").unwrap();
    let report = l2_signature_of_space(&sphere.complex, &sphere.covering, None).unwrap();
    assert_eq!(exact(&report.sign2), rat_int(0));
    assert_eq!(report.ordinary_sign, 0);

    let start = Instant::now();
    let t4 = standard_complex("torus4_z2").unwrap();
    let rep = l2_signature_of_space(&t4.complex, &t4.covering, None).unwrap();
    let cover = cover_route_signature(&t4.complex, &t4.covering).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(exact(&rep.sign2), rat_int(0));
    assert_eq!(rep.ordinary_sign, 0);
    assert_eq!(exact(&rep.sign2), exact(&cover.sign2));
    assert_eq!(exact(&rep.kernel_dim), exact(&cover.kernel_dim));
    assert_eq!(rep.ordinary_sign, cover.ordinary_sign);
    assert!(elapsed.as_secs_f64() < 600.0, "took {elapsed:?}, budget 10 min");
    println!(
        "PASS criterion 4: sign2 = ordinary on cp2_9 (1), sphere4 (0), T4 x Z/2 (0; both routes, kernel {}), T4 in {elapsed:?}",
        rep.kernel_dim
    );
}

#[test]
fn criterion_5_kunneth_multiplicativity() {
    let start = Instant::now();
    let f = counterexample_form(2).unwrap();
    let g = counterexample_form(3).unwrap();
    let product = f.kunneth_product(&g).unwrap();
    let rf = l2_signature_of_form(&f, None).unwrap();
    let rg = l2_signature_of_form(&g, None).unwrap();
    let rp = l2_signature_of_form(&product, None).unwrap();
    assert_eq!(exact(&rf.sign2), rat(1, 2));
    assert_eq!(exact(&rg.sign2), rat(2, 3));
    assert_eq!(exact(&rp.sign2), rat(1, 3));

    let mut nonzero = 0usize;
    for seed in 0..20u64 {
        let mut rng = seeded_rng(seed);
        let ga = random_finite_group(&mut rng).unwrap();
        let gb = random_finite_group(&mut rng).unwrap();
        let f = random_hermitian_form(&mut rng, &ga, 1 + (seed as usize) % 2).unwrap();
        let g = random_hermitian_form(&mut rng, &gb, 1 + (seed as usize / 2) % 2).unwrap();
        let sf = exact(&l2_signature_of_form(&f, None).unwrap().sign2);
        let sg = exact(&l2_signature_of_form(&g, None).unwrap().sign2);
        let sp = exact(
            &l2_signature_of_form(&f.kunneth_product(&g).unwrap(), None)
                .unwrap()
                .sign2,
        );
        assert_eq!(sp, sf.clone() * sg.clone(), "seed {seed}");
        if sp != rat_int(0) {
            nonzero += 1;
        }
    }
    assert!(nonzero >= 2, "battery too degenerate: {nonzero} nonzero products");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 1 min");
    println!("PASS criterion 5: 21 Kunneth products multiplicative ({nonzero} nonzero), worked case 1/2 * 2/3 = 1/3, in {elapsed:?}");
}

fn signature_numbers(form: &HermitianForm) -> (Rat, Rat, i64) {
    let report = l2_signature_of_form(form, None).unwrap();
    (
        exact(&report.sign2),
        exact(&report.kernel_dim),
        report.ordinary_sign,
    )
}

fn sylvester_block() -> usize {
    let mut checked = 0;
    for seed in 0..50u64 {
        let mut rng = seeded_rng(1000 + seed);
        let group = random_finite_group(&mut rng).unwrap();
        let n = 2 + (seed as usize) % 2;
        let form = random_hermitian_form(&mut rng, &group, n).unwrap();
        let upper = random_unit_triangular(&mut rng, &group, n).unwrap();
        let lower: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|j| upper[j][i].clone()).collect())
            .collect();
        let moved = form.transform(&upper).unwrap().transform(&lower).unwrap();
        assert_eq!(
            signature_numbers(&form),
            signature_numbers(&moved),
            "seed {seed}"
        );
        checked += 1;
    }
    checked
}

fn induction_block() -> usize {
    let embeddings = [
        (2usize, 4usize, 2usize),
        (3, 6, 2),
        (2, 6, 3),
        (4, 8, 2),
    ];
    let mut checked = 0;
    for (small, big, image) in embeddings {
        let source = GroupModel::cyclic(small).unwrap();
        let target = GroupModel::cyclic(big).unwrap();
        let embed = GroupMap::from_generator_images(
            source.clone(),
            target,
            vec![GroupElem::Finite(image)],
        )
        .unwrap();
        let mut battery = vec![
            counterexample_form(small).unwrap(),
            HermitianForm::identity_form(source.clone(), 2),
        ];
        let mut rng = seeded_rng(double_seed(small, big));
        battery.push(random_hermitian_form(&mut rng, &source, 2).unwrap());
        for form in battery {
            let induced = form.induce(&embed).unwrap();
            let before = l2_signature_of_form(&form, None).unwrap();
            let after = l2_signature_of_form(&induced, None).unwrap();
            assert_eq!(exact(&before.sign2), exact(&after.sign2));
            assert_eq!(before.ordinary_sign, after.ordinary_sign);
            checked += 1;
        }
    }
    checked
}

fn double_seed(a: usize, b: usize) -> u64 {
    (a * 100 + b) as u64
}

fn direct_sum_block() -> usize {
    let mut checked = 0;
    for seed in 0..10u64 {
        let mut rng = seeded_rng(2000 + seed);
        let group = random_finite_group(&mut rng).unwrap();
        let f = random_hermitian_form(&mut rng, &group, 2).unwrap();
        let g = random_hermitian_form(&mut rng, &group, 1).unwrap();
        let (sf, kf, of) = signature_numbers(&f);
        let (sg, kg, og) = signature_numbers(&g);
        let (ss, ks, os) = signature_numbers(&f.direct_sum(&g).unwrap());
        assert_eq!(ss, sf + sg, "seed {seed}");
        assert_eq!(ks, kf + kg, "seed {seed}");
        assert_eq!(os, of + og, "seed {seed}");
        checked += 1;
    }
    checked
}

fn coboundary_squares_to_zero(covered: &CoveredComplex, realization: &Realization) {
    let deltas = twisted_deltas_exact(&covered.complex, &covered.covering, realization).unwrap();
    for pair in deltas.windows(2) {
        assert!(pair[1].mul(&pair[0]).is_zero());
    }
}

fn leibniz_block() -> usize {
    let s3 = l2sig::simplicial::sphere_complex(3);
    let orderings = [
        LocalOrdering::sorted(s3.vertex_count()),
        scrambled_ordering(s3.vertex_count()),
    ];
    let coboundary = |k: usize| s3.boundary_matrix(k + 1).transpose();
    let mut checked = 0;
    for ord in &orderings {
        for (p, q) in [(0usize, 1usize), (1, 1), (0, 2)] {
            for ai in 0..s3.simplex_count(p) {
                for bi in 0..s3.simplex_count(q) {
                    let mut a = vec![Rat::zero(); s3.simplex_count(p)];
                    a[ai] = rat_int(1);
                    let mut b = vec![Rat::zero(); s3.simplex_count(q)];
                    b[bi] = rat_int(1);
                    let lhs = coboundary(p + q).apply(&aw_cup(&s3, ord, p, q, &a, &b).unwrap());
                    let da = coboundary(p).apply(&a);
                    let db = coboundary(q).apply(&b);
                    let mut rhs = aw_cup(&s3, ord, p + 1, q, &da, &b).unwrap();
                    let sgn = if p % 2 == 0 { 1 } else { -1 };
                    for (r, v) in rhs
                        .iter_mut()
                        .zip(aw_cup(&s3, ord, p, q + 1, &a, &db).unwrap())
                    {
                        *r += rat_int(sgn) * v;
                    }
                    assert_eq!(lhs, rhs, "p={p} q={q} a={ai} b={bi}");
                    checked += 1;
                }
            }
        }
    }
    checked
}

fn ordering_block() -> usize {
    let inertia = |complex: &OrientedSimplicialComplex,
                   covering: &CoveringCocycle,
                   realization: &Realization,
                   ordering: &LocalOrdering| {
        exact_middle_pairing(complex, covering, realization, ordering)
            .unwrap()
            .inertia()
            .unwrap()
    };
    let mut cases: Vec<(CoveredComplex, Realization)> = vec![
        (standard_complex("sphere4").unwrap(), Realization::Trivial),
        (standard_complex("cp2_9").unwrap(), Realization::Trivial),
    ];
    let twisted = CoveredComplex::new(
        standard_complex("cp2_9").unwrap().complex,
        CoveringCocycle::trivial(GroupModel::cyclic(2).unwrap()),
    )
    .unwrap();
    cases.push((twisted, Realization::RegularRep));
    let mut checked = 0;
    for (covered, realization) in &cases {
        let n = covered.complex.vertex_count();
        let sorted = inertia(
            &covered.complex,
            &covered.covering,
            realization,
            &LocalOrdering::sorted(n),
        );
        let scrambled = inertia(
            &covered.complex,
            &covered.covering,
            realization,
            &scrambled_ordering(n),
        );
        assert_eq!(sorted, scrambled);
        checked += 1;
    }
    checked
}

#[test]
fn criterion_6_invariant_suites() {
    let congruences = sylvester_block();
    let inductions = induction_block();
    let sums = direct_sum_block();

    coboundary_squares_to_zero(
        &standard_complex("torus4_z2").unwrap(),
        &Realization::RegularRep,
    );
    coboundary_squares_to_zero(&standard_complex("cp2_9").unwrap(), &Realization::Trivial);
    coboundary_squares_to_zero(&standard_complex("s1s3").unwrap(), &Realization::Trivial);
    let leibniz = leibniz_block();
    let orderings = ordering_block();

    println!(
        "PASS criterion 6: {congruences} Sylvester congruences, {inductions} inductions, {sums} direct sums, delta^2 = 0 on 3 complexes, {leibniz} Leibniz identities, {orderings} ordering-independent pairings"
    );
}
