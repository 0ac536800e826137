//! Polyhedrality of a tuple with a few common eigenvectors and a small
//! remaining block, at several weights.
//!
//! `cargo run --example polyhedral_certificate`

use jointrange::crange::WeightSpec;
use jointrange::decide::{decide_polyhedral, Certificate, DecideOptions};
use jointrange::linalg::{random_hermitian, random_unitary, seeded_rng, ComplexMatrix};
use jointrange::MatrixTuple;

fn main() -> jointrange::Result<()> {
    let mut rng = seeded_rng(11);
    let u = random_unitary(6, 12);
    let member = |d: &[f64], q: ComplexMatrix| {
        ComplexMatrix::direct_sum(&[&ComplexMatrix::from_real_diag(d), &q.scale_real(0.05)]).conjugate_by(&u.adjoint())
    };
    let a = MatrixTuple::new(vec![
        member(&[1.0, -1.0, 0.5, -0.5], random_hermitian(2, &mut rng)),
        member(&[0.5, 1.0, -1.0, 0.0], random_hermitian(2, &mut rng)),
    ])?;

    let opts = DecideOptions::default();
    for c in [vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0], vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]] {
        let w = WeightSpec::from_vector(c)?;
        let r = decide_polyhedral(&a, &w, &opts)?;
        print!("gamma = {}: {:?} via {:?}", w.gamma(), r.verdict, r.route);
        match &r.certificate {
            Certificate::Blocks { ell, reduced_discrepancy, .. } => {
                println!(", ell = {ell}, reduced-weight discrepancy {reduced_discrepancy:.2e}")
            }
            Certificate::TooFewCommonEigenvectors { ell, k } => println!(", ell = {ell} < 2k = {}", 2 * k),
            Certificate::SupportGap { gap, .. } => println!(", support gap {gap:.3e}"),
            _ => println!(),
        }
    }
    Ok(())
}
