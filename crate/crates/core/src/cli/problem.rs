use serde::{Deserialize, Serialize};

use super::CliError;
use crate::crange::{make_weight, WeightInput, WeightSpec};
use crate::family::MatrixTuple;
use crate::linalg::{ComplexMatrix, TAU_HERM};

/// A named matrix as separate real and imaginary grids. A missing `im`
/// grid means a real matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

/// One problem per JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub matrices: Vec<NamedMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    /// When set, every matrix must be Hermitian.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hermitian: bool,
}

impl NamedMatrix {
    pub fn from_matrix(name: &str, m: &ComplexMatrix) -> Self {
        Self {
            name: name.to_string(),
            re: m.real_grid(),
            im: Some(m.imag_grid()),
        }
    }

    fn check_grid(&self, grid: &[Vec<f64>], part: &str, n: usize) -> Result<(), CliError> {
        if grid.len() != n {
            return Err(CliError::Parse(format!(
                "matrix '{}': {part} grid has {} rows, expected {n}",
                self.name,
                grid.len()
            )));
        }
        for (i, row) in grid.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::Parse(format!(
                    "matrix '{}': {part} row {} has {} entries, expected {n}",
                    self.name,
                    i + 1,
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                return Err(CliError::Parse(format!(
                    "matrix '{}': {part} row {} entry {} is not finite",
                    self.name,
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// The matrix, after checking that both grids are `n×n`.
    pub fn to_matrix(&self, n: usize) -> Result<ComplexMatrix, CliError> {
        self.check_grid(&self.re, "re", n)?;
        if let Some(im) = &self.im {
            self.check_grid(im, "im", n)?;
        }
        Ok(ComplexMatrix::from_fn(n, n, |i, j| {
            let im = self.im.as_ref().map_or(0.0, |g| g[i][j]);
            num_complex::Complex64::new(self.re[i][j], im)
        }))
    }
}

/// A validated problem: the tuple, the coordinate names of its real
/// geometric view and the optional weight.
#[derive(Debug, Clone)]
pub struct Problem {
    pub tuple: MatrixTuple,
    /// The Hermitian tuple all geometry runs on.
    pub view: MatrixTuple,
    pub coordinates: Vec<String>,
    pub weight: Option<WeightSpec>,
    pub blocks: Option<Vec<usize>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files serialize");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<Problem, CliError> {
        if self.n == 0 {
            return Err(CliError::Parse("n must be positive".into()));
        }
        if self.matrices.is_empty() {
            return Err(CliError::Parse("no matrices given".into()));
        }
        let mut mats = Vec::with_capacity(self.matrices.len());
        for m in &self.matrices {
            let a = m.to_matrix(self.n)?;
            if self.hermitian && !a.is_hermitian(TAU_HERM) {
                let residual = a.skew_residual() / a.frobenius_norm();
                return Err(CliError::NotHermitian {
                    name: m.name.clone(),
                    residual,
                });
            }
            mats.push(a);
        }
        let tuple = MatrixTuple::new(mats)?;
        let view = tuple.geometric_view();
        let coordinates = if view.len() == tuple.len() {
            self.matrices.iter().map(|m| m.name.clone()).collect()
        } else {
            self.matrices
                .iter()
                .flat_map(|m| [format!("re({})", m.name), format!("im({})", m.name)])
                .collect()
        };
        let weight = match &self.weight {
            Some(w) => Some(make_weight(w, self.n)?),
            None => None,
        };
        Ok(Problem {
            tuple,
            view,
            coordinates,
            weight,
            blocks: self.blocks.clone(),
        })
    }
}

impl Problem {
    pub fn require_weight(&self) -> Result<&WeightSpec, CliError> {
        self.weight
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs a \"weight\" entry".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ragged_row_is_named() {
        let text = r#"{"n": 2, "matrices": [{"name": "X", "re": [[1, 0], [0]]}], "weight": {"k": 1}}"#;
        let err = ProblemFile::parse(text).unwrap().validate().unwrap_err();
        assert_eq!(
            err.to_string(),
            "parse error: matrix 'X': re row 2 has 1 entries, expected 2"
        );
    }

    #[test]
    fn hermitian_flag_names_the_offender() {
        let text = r#"{"n": 2, "hermitian": true, "matrices": [
            {"name": "H", "re": [[1, 0], [0, 1]]},
            {"name": "N", "re": [[0, 1], [0, 0]]}], "weight": {"k": 1}}"#;
        let err = ProblemFile::parse(text).unwrap().validate().unwrap_err();
        assert!(matches!(err, CliError::NotHermitian { ref name, .. } if name == "N"));
    }

    #[test]
    fn complex_member_gets_two_coordinates() {
        let text = r#"{"n": 2, "matrices": [{"name": "A", "re": [[0, 1], [0, 0]]}], "weight": {"c": [1, 0]}}"#;
        let p = ProblemFile::parse(text).unwrap().validate().unwrap();
        assert_eq!(p.coordinates, vec!["re(A)", "im(A)"]);
        assert_eq!(p.view.len(), 2);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"n": 1, "matrices": [], "wieght": {"k": 1}}"#;
        assert!(matches!(ProblemFile::parse(text), Err(CliError::Parse(_))));
    }
}
