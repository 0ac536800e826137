use super::problem::{NamedMatrix, ProblemFile};
use super::CliError;
use crate::crange::WeightInput;
use crate::fixtures;

/// Names accepted by `jointrange demo`.
pub const DEMO_NAMES: [&str; 3] = ["ex3.1", "ex3.2", "ex5.2"];

/// The built-in fixtures as problem files.
///
/// * `ex3.1`: the non-normal 5×5 matrix `diag(1, w, w²) ⊕ [[0, 0.1], [0, 0]]`.
/// * `ex3.2`: the two Hermitian unitaries with the square range.
/// * `ex5.2`: the Hermitian triple with two conical points.
pub fn demo(name: &str) -> Result<ProblemFile, CliError> {
    let (matrices, n, hermitian) = match name {
        "ex3.1" => (
            vec![NamedMatrix::from_matrix("A", &fixtures::nonnormal_triangle_matrix())],
            5,
            false,
        ),
        "ex3.2" => {
            let t = fixtures::unitary_square_pair();
            (named(&["A1", "A2"], t.matrices()), 6, true)
        }
        "ex5.2" => {
            let t = fixtures::two_conical_triple();
            (named(&["A1", "A2", "A3"], t.matrices()), 6, true)
        }
        _ => {
            return Err(CliError::UnknownDemo {
                name: name.to_string(),
                valid: DEMO_NAMES.join(", "),
            })
        }
    };
    Ok(ProblemFile {
        n,
        matrices,
        weight: Some(WeightInput::K { k: 1 }),
        blocks: None,
        hermitian,
    })
}

fn named(names: &[&str], mats: &[crate::linalg::ComplexMatrix]) -> Vec<NamedMatrix> {
    names
        .iter()
        .zip(mats)
        .map(|(n, m)| NamedMatrix::from_matrix(n, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_demo_round_trips_bit_exact() {
        let p = demo("ex3.1").unwrap();
        let back = ProblemFile::parse(&p.to_json()).unwrap();
        let a = back.validate().unwrap().tuple;
        assert_eq!(a.get(0), &fixtures::nonnormal_triangle_matrix());
        let w = fixtures::cube_root_of_unity();
        assert_eq!(back.matrices[0].re[1][1], w.re);
        assert_eq!(back.matrices[0].im.as_ref().unwrap()[1][1], w.im);
        assert_eq!(back.matrices[0].im.as_ref().unwrap()[2][2], -w.im);
    }

    #[test]
    fn triple_demo_is_hermitian() {
        let p = demo("ex5.2").unwrap().validate().unwrap();
        assert_eq!(p.tuple.len(), 3);
        assert_eq!(p.view.len(), 3);
        assert_eq!(p.tuple.dim(), 6);
    }

    #[test]
    fn unknown_demo_lists_names() {
        let err = demo("ex9").unwrap_err();
        assert!(err.to_string().contains("ex3.1, ex3.2, ex5.2"));
    }
}
