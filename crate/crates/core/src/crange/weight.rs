use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, ComplexMatrix};

/// User-facing weight description: `{"k": 2}` or `{"c": [1.0, 0.5, 0.0]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightInput {
    K { k: usize },
    C { c: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    KRange(usize),
    General,
}

/// A non-scalar real weight `c_1 ≥ … ≥ c_n` (equivalently the diagonal
/// matrix `C`), with its distinct values and breakpoint index `γ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSpec {
    c: Vec<f64>,
    distinct: Vec<(f64, usize)>,
    gamma: usize,
    kind: WeightKind,
}

/// Builds a [`WeightSpec`] of dimension `n` from either form of input.
pub fn make_weight(input: &WeightInput, n: usize) -> Result<WeightSpec> {
    match input {
        WeightInput::K { k } => WeightSpec::k_range(*k, n),
        WeightInput::C { c } => {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
            WeightSpec::from_vector(c.clone())
        }
    }
}

impl WeightSpec {
    /// `c = (1,…,1,0,…,0)` with `k` ones; requires `1 ≤ k ≤ n−1`.
    pub fn k_range(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            if k == n && n > 0 {
                return Err(Error::ScalarWeight);
            }
            return Err(Error::InvalidWeight(format!(
                "k-range requires 1 <= k <= n-1, got k = {k}, n = {n}"
            )));
        }
        let c = (0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
        let mut w = Self::from_sorted(c)?;
        w.kind = WeightKind::KRange(k);
        Ok(w)
    }

    /// Any real vector; entries are sorted into non-increasing order.
    pub fn from_vector(mut c: Vec<f64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidWeight("empty weight vector".into()));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidWeight("non-finite weight entry".into()));
        }
        c.sort_by(|a, b| b.total_cmp(a));
        Self::from_sorted(c)
    }

    /// Weight given by the eigenvalues of a Hermitian matrix `C`. Eigenvalues
    /// closer than `1e-12·‖C‖_F` are merged, so that multiplicities survive
    /// rounding.
    pub fn from_hermitian(c: &ComplexMatrix) -> Result<Self> {
        let eig = herm_eig(c)?;
        let tol = 1e-12 * c.frobenius_norm();
        let mut values = eig.values;
        for i in 1..values.len() {
            if values[i - 1] - values[i] <= tol {
                values[i] = values[i - 1];
            }
        }
        Self::from_sorted(values)
    }

    fn from_sorted(c: Vec<f64>) -> Result<Self> {
        let n = c.len();
        if c[0] == c[n - 1] {
            return Err(Error::ScalarWeight);
        }
        let mut distinct: Vec<(f64, usize)> = Vec::new();
        for &x in &c {
            match distinct.last_mut() {
                Some((v, count)) if *v == x => *count += 1,
                _ => distinct.push((x, 1)),
            }
        }
        let gamma = gamma_of(&c);
        let kind = match k_range_shape(&c) {
            Some(k) => WeightKind::KRange(k),
            None => WeightKind::General,
        };
        Ok(Self {
            c,
            distinct,
            gamma,
            kind,
        })
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    /// Distinct values `ξ_1 > … > ξ_r` with multiplicities `n_i`.
    pub fn distinct(&self) -> &[(f64, usize)] {
        &self.distinct
    }

    /// Block sizes `(n_1, …, n_r)` of `C = ξ_1 I_{n_1} ⊕ … ⊕ ξ_r I_{n_r}`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.distinct.iter().map(|&(_, n)| n).collect()
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn is_scalar(&self) -> bool {
        self.distinct.len() < 2
    }

    pub fn has_distinct_values(&self) -> bool {
        self.distinct.len() == self.c.len()
    }

    /// 0-based indices `j` with `c_j > c_{j+1}`.
    pub fn breakpoints(&self) -> Vec<usize> {
        (0..self.c.len() - 1).filter(|&j| self.c[j] > self.c[j + 1]).collect()
    }

    pub fn l1_norm(&self) -> f64 {
        self.c.iter().map(|x| x.abs()).sum()
    }

    pub fn trace(&self) -> f64 {
        self.c.iter().sum()
    }

    /// `Σ c_j λ_j` for eigenvalues sorted non-increasingly.
    pub fn weighted_sum(&self, eigenvalues: &[f64]) -> f64 {
        self.c.iter().zip(eigenvalues).map(|(c, l)| c * l).sum()
    }

    /// The reduced weight on an `ℓ`-dimensional diagonal block:
    /// `(c_1 − c_{k+1}, …, c_k − c_{k+1}, c_{k+n−ℓ+1} − c_{k+1}, …, c_n − c_{k+1})`
    /// with `k = γ`. Requires `2k ≤ ℓ ≤ n`. The result may be scalar (all
    /// zero), so it is returned as a plain vector.
    pub fn reduced_on_block(&self, ell: usize) -> Result<Vec<f64>> {
        let n = self.c.len();
        let k = self.gamma;
        if ell < 2 * k || ell > n {
            return Err(Error::InvalidWeight(format!(
                "reduced weight needs 2k <= ell <= n (k = {k}, ell = {ell}, n = {n})"
            )));
        }
        let shift = self.c[k];
        let head = self.c[..k].iter().map(|x| x - shift);
        let tail = self.c[k + n - ell..].iter().map(|x| x - shift);
        Ok(head.chain(tail).collect())
    }
}

/// `γ(c) = max({j ≤ n/2 : c_j > c_{j+1}} ∪ {n−j ≤ n/2 : c_j > c_{j+1}})`,
/// 1-based `j`, comparisons `j ≤ n/2` taken over the reals.
pub fn gamma_of(c: &[f64]) -> usize {
    let n = c.len();
    let mut best = 0;
    for j in 1..n {
        if c[j - 1] > c[j] {
            if 2 * j <= n {
                best = best.max(j);
            }
            if 2 * (n - j) <= n {
                best = best.max(n - j);
            }
        }
    }
    best
}

fn k_range_shape(c: &[f64]) -> Option<usize> {
    let k = c.iter().take_while(|&&x| x == 1.0).count();
    (k > 0 && k < c.len() && c[k..].iter().all(|&x| x == 0.0)).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let g = |c: &[f64]| WeightSpec::from_vector(c.to_vec()).unwrap().gamma();
        assert_eq!(g(&[1.0, 0.0, 0.0, 0.0]), 1);
        assert_eq!(g(&[1.0, 1.0, 1.0, 0.0]), 1);
        assert_eq!(g(&[2.0, 1.0, 0.0, 0.0]), 2);
        // odd n: j <= 2.5 accepts j = 2 only
        assert_eq!(g(&[1.0, 1.0, 1.0, 0.0, 0.0]), 2);
        assert_eq!(g(&[5.0, 4.0, 3.0, 2.0, 1.0]), 2);
    }

    #[test]
    fn input_is_sorted_and_blocks_recorded() {
        let w = WeightSpec::from_vector(vec![0.0, 2.0, 1.0, 2.0]).unwrap();
        assert_eq!(w.values(), &[2.0, 2.0, 1.0, 0.0]);
        assert_eq!(w.distinct(), &[(2.0, 2), (1.0, 1), (0.0, 1)]);
        assert_eq!(w.breakpoints(), vec![1, 2]);
        assert_eq!(w.kind(), WeightKind::General);
    }

    #[test]
    fn scalar_and_out_of_range_weights_are_rejected() {
        assert_eq!(
            WeightSpec::from_vector(vec![3.0; 4]).unwrap_err(),
            Error::ScalarWeight
        );
        assert_eq!(WeightSpec::k_range(4, 4).unwrap_err(), Error::ScalarWeight);
        assert!(matches!(
            WeightSpec::k_range(0, 4),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            make_weight(&WeightInput::C { c: vec![1.0, 0.0] }, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn k_range_shape_is_detected() {
        let w = make_weight(&WeightInput::K { k: 2 }, 5).unwrap();
        assert_eq!(w.kind(), WeightKind::KRange(2));
        assert_eq!(w.gamma(), 2);
        let w = WeightSpec::from_vector(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(w.kind(), WeightKind::KRange(1));
        // k > n/2 gives gamma = n - k
        assert_eq!(WeightSpec::k_range(4, 5).unwrap().gamma(), 1);
    }

    #[test]
    fn weight_input_parses_both_forms() {
        let k: WeightInput = serde_json::from_str(r#"{"k": 3}"#).unwrap();
        assert_eq!(k, WeightInput::K { k: 3 });
        let c: WeightInput = serde_json::from_str(r#"{"c": [1, 0.5]}"#).unwrap();
        assert_eq!(c, WeightInput::C { c: vec![1.0, 0.5] });
    }

    #[test]
    fn reduced_weight_drops_the_middle() {
        let w = WeightSpec::from_vector(vec![3.0, 1.0, 1.0, 1.0, 0.0, -2.0]).unwrap();
        assert_eq!(w.gamma(), 2);
        // k = 2, shift c_3 = 1; ell = 4 keeps c_1, c_2 and c_5, c_6
        assert_eq!(w.reduced_on_block(4).unwrap(), vec![2.0, 0.0, -1.0, -3.0]);
        assert!(w.reduced_on_block(3).is_err());
    }

    #[test]
    fn hermitian_weight_keeps_multiplicities() {
        let u = crate::linalg::random_unitary(3, 4);
        let c = ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0]).conjugate_by(&u);
        let w = WeightSpec::from_hermitian(&c).unwrap();
        assert_eq!(w.block_sizes(), vec![2, 1]);
    }
}
