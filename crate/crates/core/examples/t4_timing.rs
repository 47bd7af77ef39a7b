//! Stage timings for the 4-torus pipeline. Scratch tool, not part of the
//! test suite.

use l2sig::cochain::{harmonic_basis, twisted_deltas_exact, Realization};
use l2sig::constructions::{torus2_plain, torus4_plain, torus4_with_z2};
use l2sig::covering::CoveringCocycle;
use l2sig::group::GroupModel;
use l2sig::pairing::{cover_route_signature, l2_signature_of_space, ordinary_space_signature};
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let t2 = torus2_plain().unwrap();
    println!("torus2 build: {:?}", t.elapsed());

    let t = Instant::now();
    let t4 = torus4_plain().unwrap();
    println!("torus4 build: {:?} f={:?}", t.elapsed(), t4.complex.f_vector());

    let t = Instant::now();
    let trivial = CoveringCocycle::trivial(GroupModel::cyclic(1).unwrap());
    let deltas = twisted_deltas_exact(&t4.complex, &trivial, &Realization::Trivial).unwrap();
    println!(
        "deltas: {:?} sizes={:?}",
        t.elapsed(),
        deltas.iter().map(|d| (d.rows(), d.cols(), d.nnz())).collect::<Vec<_>>()
    );

    let t = Instant::now();
    let h = harmonic_basis(&deltas, 2);
    println!("harmonic basis: {:?} dim={}", t.elapsed(), h.len());

    let t = Instant::now();
    let (sig, inertia) = ordinary_space_signature(&t4.complex).unwrap();
    println!("signature: {:?} sig={sig} inertia={inertia:?}", t.elapsed());

    let t = Instant::now();
    let twisted = torus4_with_z2().unwrap();
    let report = l2_signature_of_space(&twisted.complex, &twisted.covering, None).unwrap();
    println!(
        "z2 regular rep: {:?} sign2={} kernel={} dim={}",
        t.elapsed(),
        report.sign2,
        report.kernel_dim,
        report.dim
    );

    let t = Instant::now();
    let cover = cover_route_signature(&twisted.complex, &twisted.covering).unwrap();
    println!(
        "z2 explicit cover: {:?} sign2={} kernel={}",
        t.elapsed(),
        cover.sign2,
        cover.kernel_dim
    );

    let _ = t2;
}
