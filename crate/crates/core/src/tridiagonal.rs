//! Tridiagonal matrices with constant interior diagonal.
//!
//! [`TridiagSpec`] describes the family
//!
//! ```text
//!     | b−α  c₁                |
//!     | a₁   b    c₂           |
//!     |      a₂   ⋱    ⋱       |
//!     |           ⋱    b  cₙ₋₁ |
//!     |              aₙ₋₁ b−β  |
//! ```
//!
//! with `a_i c_i = d² ≠ 0`. When `α = d` and `β = 0` the eigenvalues are
//! `b + 2d cos(2iπ/(2n+1))`, `i = 1..n` ([`willms_eigenvalues`]).
//! [`SymTridiagonal`] is the numeric side: Sturm counts, bisection and
//! inverse iteration on a symmetric tridiagonal matrix. It never looks at the
//! closed form and serves as its oracle.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Symmetric tridiagonal matrix: `diag` (length n) and `off` (length n−1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return domain(format!(
                "tridiagonal needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diag.len(),
                off.len()
            ));
        }
        Ok(SymTridiagonal { diag, off })
    }

    /// Symmetrizes a general tridiagonal matrix with the diagonal similarity
    /// that replaces each pair `(a_i, c_i)` by `±√(a_i c_i)`. Fails when some
    /// `a_i c_i < 0`.
    pub fn from_nonsymmetric(diag: Vec<f64>, sub: &[f64], sup: &[f64]) -> Result<Self> {
        if sub.len() != sup.len() {
            return domain("sub- and super-diagonal lengths differ");
        }
        let mut off = Vec::with_capacity(sub.len());
        for (i, (&a, &c)) in sub.iter().zip(sup).enumerate() {
            let product = a * c;
            if product < 0.0 {
                return domain(format!(
                    "entry {} has a·c = {product} < 0; matrix is not symmetrizable",
                    i + 1
                ));
            }
            off.push(product.sqrt());
        }
        SymTridiagonal::new(diag, off)
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the
    /// LDLᵀ pivots of `T − xI`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE * self.off.iter().fold(1.0f64, |m, &e| m.max(e * e));
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.order() {
            if i > 0 {
                q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q.abs() <= pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) * 4.0;
        (lo - pad, hi + pad)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection until the
    /// bracket is at most `tol` wide or cannot shrink further.
    pub fn eigenvalue(&self, k: usize, tol: f64) -> Result<f64> {
        if tol.is_nan() || tol <= 0.0 {
            return domain(format!("tolerance must be positive, got {tol}"));
        }
        if k >= self.order() {
            return domain(format!("eigenvalue index {k} out of range"));
        }
        let (mut lo, mut hi) = self.gershgorin();
        loop {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.sturm_count(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        (0..self.order()).map(|k| self.eigenvalue(k, tol)).collect()
    }

    /// Unit eigenvector for an (accurate) eigenvalue `lambda`, by inverse
    /// iteration with a pivoted tridiagonal solve.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.order();
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        // Break symmetry of the start vector so that it is not orthogonal to
        // the wanted eigenvector by accident.
        for (i, x) in v.iter_mut().enumerate() {
            *x *= 1.0 + 1e-3 * ((i * 7919) % 101) as f64 / 101.0;
        }
        for _ in 0..3 {
            v = self.solve_shifted(lambda, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// Solves `(T − σI) y = rhs` by LU with partial pivoting.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.order();
        let scale = self.gershgorin().1.abs().max(1.0);
        let tiny = f64::EPSILON * scale;
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let mut b = rhs.to_vec();
        if n == 1 {
            if d[0].abs() < tiny {
                d[0] = tiny;
            }
            b[0] /= d[0];
            return b;
        }
        let mut dl = self.off.clone();
        let mut du = self.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = tiny;
        }
        for i in 0..n - 1 {
            if swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
        b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagSpec {
    n: usize,
    b: f64,
    d: f64,
    alpha: f64,
    beta: f64,
    sub: Vec<f64>,
    sup: Vec<f64>,
}

const PRODUCT_RTOL: f64 = 1e-12;

impl TridiagSpec {
    /// Validates `n ≥ 1`, `d ≠ 0`, lengths `n − 1`, and `a_i c_i = d²`.
    pub fn new(
        b: f64,
        d: f64,
        alpha: f64,
        beta: f64,
        sub: Vec<f64>,
        sup: Vec<f64>,
    ) -> Result<Self> {
        let n = sub.len() + 1;
        if sub.len() != sup.len() {
            return domain(format!(
                "sub-diagonal has {} entries, super-diagonal {}",
                sub.len(),
                sup.len()
            ));
        }
        if !(d != 0.0 && d.is_finite()) {
            return domain(format!("d must be finite and nonzero, got {d}"));
        }
        if ![b, alpha, beta].iter().all(|x| x.is_finite()) {
            return domain("b, alpha and beta must be finite");
        }
        let d2 = d * d;
        for (i, (&a, &c)) in sub.iter().zip(&sup).enumerate() {
            if (a * c - d2).abs() > PRODUCT_RTOL * d2 {
                return domain(format!(
                    "a_{0} c_{0} = {1} differs from d^2 = {d2}",
                    i + 1,
                    a * c
                ));
            }
        }
        Ok(TridiagSpec {
            n,
            b,
            d,
            alpha,
            beta,
            sub,
            sup,
        })
    }

    /// Spec with every `a_i = c_i = d`.
    pub fn uniform(n: usize, b: f64, d: f64, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return domain("order must be at least 1");
        }
        TridiagSpec::new(b, d, alpha, beta, vec![d; n - 1], vec![d; n - 1])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    /// `(b − α, b, …, b, b − β)`; for `n = 1` the single entry is `b − α − β`.
    pub fn diagonal(&self) -> Vec<f64> {
        let mut diag = vec![self.b; self.n];
        diag[0] -= self.alpha;
        diag[self.n - 1] -= self.beta;
        diag
    }

    /// Row-major dense matrix.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let diag = self.diagonal();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.sup[i];
                m[i + 1][i] = self.sub[i];
            }
        }
        m
    }
}

/// Closed-form spectrum for `α = d`, `β = 0`, ascending.
pub fn willms_eigenvalues(spec: &TridiagSpec) -> Result<Vec<f64>> {
    let d = spec.d;
    if (spec.alpha - d).abs() > PRODUCT_RTOL * d.abs() || spec.beta != 0.0 {
        return domain(format!(
            "closed form needs alpha = d and beta = 0, got alpha = {}, beta = {}, d = {d}",
            spec.alpha, spec.beta
        ));
    }
    let n = spec.n as f64;
    let mut values: Vec<f64> = (1..=spec.n)
        .map(|i| spec.b + 2.0 * d * (2.0 * i as f64 * PI / (2.0 * n + 1.0)).cos())
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `M_n`: diagonal `(1, 2, …, 2)`, off-diagonals `−1`; as a spec `α = 1`,
/// `β = 0`, `b = 2`, `a_i = c_i = −1` and `d = +1`.
pub fn m_matrix(n: usize) -> Result<TridiagSpec> {
    if n == 0 {
        return domain("M_n needs n >= 1");
    }
    TridiagSpec::new(2.0, 1.0, 1.0, 0.0, vec![-1.0; n - 1], vec![-1.0; n - 1])
}

/// Least eigenvalue of `M_n`: `4 sin²(π/(4n+2))`.
pub fn m_least_eigenvalue_closed(n: usize) -> Result<f64> {
    if n == 0 {
        return domain("M_n needs n >= 1");
    }
    let s = (PI / (4.0 * n as f64 + 2.0)).sin();
    Ok(4.0 * s * s)
}

/// All eigenvalues of `spec` by Sturm bisection on its symmetrization.
pub fn tridiag_eigenvalues_numeric(spec: &TridiagSpec, tol: f64) -> Result<Vec<f64>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    SymTridiagonal::from_nonsymmetric(spec.diagonal(), &spec.sub, &spec.sup)?.eigenvalues(tol)
}

/// `Σ_{i=1}^{k−1} sin²(iπ/(2k))`, which equals `(k − 1)/2`.
pub fn trig_identity_sum_sin(k: usize) -> Result<f64> {
    if k < 3 {
        return domain(format!("identity stated for k >= 3, got {k}"));
    }
    let k = k as f64;
    Ok((1..k as usize)
        .map(|i| (i as f64 * PI / (2.0 * k)).sin().powi(2))
        .sum())
}

/// `Σ_{i=0}^{k−1} cos²((2i+1)π/(4k))`, which equals `k/2`.
pub fn trig_identity_sum_cos(k: usize) -> Result<f64> {
    if k < 3 {
        return domain(format!("identity stated for k >= 3, got {k}"));
    }
    let kf = k as f64;
    Ok((0..k)
        .map(|i| ((2 * i + 1) as f64 * PI / (4.0 * kf)).cos().powi(2))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn order_one() {
        let spec = TridiagSpec::uniform(1, 2.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(spec.to_dense(), vec![vec![1.0]]);
        let closed = willms_eigenvalues(&spec).unwrap();
        assert!(close(closed[0], 1.0, 1e-15));
        assert_eq!(
            m_least_eigenvalue_closed(1).unwrap(),
            4.0 * (PI / 6.0).sin().powi(2)
        );
        let numeric = tridiag_eigenvalues_numeric(&m_matrix(1).unwrap(), 1e-12).unwrap();
        assert!(close(numeric[0], 1.0, 1e-12));
    }

    #[test]
    fn order_two_against_quadratic_formula() {
        // [[−1, 1], [1, 0]]: λ² + λ − 1 = 0.
        let spec = TridiagSpec::uniform(2, 0.0, 1.0, 1.0, 0.0).unwrap();
        let got = willms_eigenvalues(&spec).unwrap();
        let r5 = 5f64.sqrt();
        assert!(close(got[0], (-1.0 - r5) / 2.0, 1e-14));
        assert!(close(got[1], (-1.0 + r5) / 2.0, 1e-14));
        // M_2 = [[1, −1], [−1, 2]]: λ² − 3λ + 1 = 0.
        let m2 = tridiag_eigenvalues_numeric(&m_matrix(2).unwrap(), 1e-13).unwrap();
        assert!(close(m2[0], (3.0 - r5) / 2.0, 1e-10));
        assert!(close(m2[1], (3.0 + r5) / 2.0, 1e-10));
        assert!(close(
            m_least_eigenvalue_closed(2).unwrap(),
            (3.0 - r5) / 2.0,
            1e-15
        ));
    }

    #[test]
    fn m_matrix_shapes() {
        assert_eq!(
            m_matrix(2).unwrap().to_dense(),
            vec![vec![1.0, -1.0], vec![-1.0, 2.0]]
        );
        assert_eq!(
            m_matrix(3).unwrap().to_dense(),
            vec![
                vec![1.0, -1.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.0, 2.0]
            ]
        );
        assert!(m_matrix(0).is_err());
    }

    #[test]
    fn m5_and_m10_least_eigenvalue() {
        for (n, expected) in [(5, 0.081_014_052_771_005_2), (10, 0.022_338_347_549_742_9)] {
            let m = m_matrix(n).unwrap();
            let closed = willms_eigenvalues(&m).unwrap()[0];
            let numeric = tridiag_eigenvalues_numeric(&m, 1e-13).unwrap()[0];
            assert!(close(closed, expected, 1e-12), "n = {n}: {closed}");
            assert!(close(numeric, expected, 1e-10));
            assert!(close(
                m_least_eigenvalue_closed(n).unwrap(),
                expected,
                1e-12
            ));
        }
    }

    #[test]
    fn closed_form_rejects_other_boundary_cases() {
        let spec = TridiagSpec::uniform(4, 0.0, 1.0, 0.5, 0.0).unwrap();
        assert!(willms_eigenvalues(&spec).is_err());
        let spec = TridiagSpec::uniform(4, 0.0, 1.0, 1.0, 0.3).unwrap();
        assert!(willms_eigenvalues(&spec).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(TridiagSpec::new(0.0, 0.0, 0.0, 0.0, vec![], vec![]).is_err());
        assert!(TridiagSpec::new(0.0, 1.0, 1.0, 0.0, vec![2.0], vec![0.4]).is_err());
        assert!(TridiagSpec::new(0.0, 1.0, 1.0, 0.0, vec![2.0], vec![0.5]).is_ok());
        assert!(TridiagSpec::new(0.0, 1.0, 1.0, 0.0, vec![2.0, 1.0], vec![0.5]).is_err());
    }

    #[test]
    fn numeric_errors() {
        let spec = m_matrix(3).unwrap();
        assert!(tridiag_eigenvalues_numeric(&spec, 0.0).is_err());
        assert!(tridiag_eigenvalues_numeric(&spec, -1.0).is_err());
        assert!(SymTridiagonal::from_nonsymmetric(vec![0.0, 0.0], &[1.0], &[-1.0]).is_err());
    }

    #[test]
    fn inverse_iteration_recovers_eigenvector() {
        let t = SymTridiagonal::new(vec![2.0; 6], vec![-1.0; 5]).unwrap();
        let lambda = t.eigenvalue(5, 1e-15).unwrap();
        let v = t.eigenvector(lambda);
        for i in 0..6 {
            let mut tv = t.diag[i] * v[i];
            if i > 0 {
                tv += t.off[i - 1] * v[i - 1];
            }
            if i < 5 {
                tv += t.off[i] * v[i + 1];
            }
            assert!(close(tv, lambda * v[i], 1e-12));
        }
    }

    #[test]
    fn trig_sums() {
        assert!(close(trig_identity_sum_sin(3).unwrap(), 1.0, 1e-15));
        assert!(close(trig_identity_sum_cos(3).unwrap(), 1.5, 1e-15));
        assert!(close(trig_identity_sum_sin(100).unwrap(), 49.5, 1e-12));
        assert!(close(trig_identity_sum_cos(100).unwrap(), 50.0, 1e-12));
        assert!(trig_identity_sum_sin(2).is_err());
        assert!(trig_identity_sum_cos(2).is_err());
    }
}
