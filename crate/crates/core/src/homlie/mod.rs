//! Finite-dimensional Hom-Lie algebras over Q and their representations.
//!
//! A structure (g, [·,·], α) is stored by structure constants c[i][j][k]
//! ([e_i,e_j] = Σ_k c[i][j][k] e_k) and a matrix α acting on coordinate
//! columns. Validity means: antisymmetry, α[x,y] = [α(x),α(y)], and the
//! α-twisted Jacobi identity
//!     [α(x),[y,z]] + [α(y),[z,x]] + [α(z),[x,y]] = 0.
//! All three are checkable, not construction-enforced, so deliberately broken
//! instances can be built and diagnosed.

pub mod cochain;

pub use cochain::{check_d_squared_vec, coboundary_vec, VectorCochain};

use crate::error::{Error, Result};
use crate::kernel::linalg::QMatrix;
use crate::kernel::rational::{rat_int, Rational};
use crate::report::Report;
use itertools::Itertools;
use num_traits::Zero;
use serde_json::json;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct HomLieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
    alpha: QMatrix,
}

impl HomLieAlgebra {
    pub fn new(c: Vec<Vec<Vec<Rational>>>, alpha: QMatrix) -> Result<HomLieAlgebra> {
        let dim = c.len();
        if c.iter()
            .any(|ci| ci.len() != dim || ci.iter().any(|cij| cij.len() != dim))
        {
            return Err(Error::shape(
                "structure constants are not dim^3".to_string(),
            ));
        }
        if alpha.n_rows() != dim || alpha.n_cols() != dim {
            return Err(Error::shape(format!(
                "alpha is {}x{}, expected {dim}x{dim}",
                alpha.n_rows(),
                alpha.n_cols()
            )));
        }
        Ok(HomLieAlgebra { dim, c, alpha })
    }

    /// The abelian algebra of the given dimension with the given twist.
    pub fn abelian(dim: usize, alpha: QMatrix) -> Result<HomLieAlgebra> {
        let zero = vec![vec![vec![rat_int(0); dim]; dim]; dim];
        HomLieAlgebra::new(zero, alpha)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.c
    }

    pub fn alpha(&self) -> &QMatrix {
        &self.alpha
    }

    /// [e_i, e_j] as a coordinate column.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[i][j].clone()
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat_int(0); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..self.dim {
                    out[k] += &f * &self.c[i][j][k];
                }
            }
        }
        out
    }

    pub fn alpha_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.alpha.mul_vec(x)
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![rat_int(0); self.dim];
        v[i] = rat_int(1);
        v
    }

    /// Antisymmetry, the α-morphism identity, and the twisted Jacobi identity.
    /// Antisymmetry is listed first because the triple sweep below is only
    /// decisive once the Jacobi expression is known to alternate.
    pub fn check_hom_jacobi(&self) -> Report {
        let mut report = Report::new("hom-lie structure");

        let mut violations = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        violations.push(json!({
                            "pair": [i + 1, j + 1],
                            "component": k + 1,
                        }));
                    }
                }
            }
        }
        report.push_violations("antisymmetry", violations);

        let mut violations = Vec::new();
        for (i, j) in (0..self.dim).tuple_combinations() {
            let lhs = self.alpha_vec(&self.bracket_basis(i, j));
            let rhs = self.bracket_vec(&self.alpha.col(i), &self.alpha.col(j));
            if lhs != rhs {
                violations.push(json!({
                    "pair": [i + 1, j + 1],
                    "alpha_of_bracket": fmt_vec(&lhs),
                    "bracket_of_alphas": fmt_vec(&rhs),
                }));
            }
        }
        report.push_violations("alpha_morphism", violations);

        let mut violations = Vec::new();
        for (i, j, k) in (0..self.dim).tuple_combinations() {
            let x = self.basis_vec(i);
            let y = self.basis_vec(j);
            let z = self.basis_vec(k);
            let mut total = vec![rat_int(0); self.dim];
            for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
                let inner = self.bracket_vec(b, c);
                let term = self.bracket_vec(&self.alpha_vec(a), &inner);
                for (t, v) in total.iter_mut().zip(term) {
                    *t += v;
                }
            }
            if total.iter().any(|v| !v.is_zero()) {
                violations.push(json!({
                    "triple": [i + 1, j + 1, k + 1],
                    "residual": fmt_vec(&total),
                }));
            }
        }
        report.push_violations("hom_jacobi", violations);

        report
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

/// A representation (ρ, β) of a Hom-Lie algebra on Q^dim_v. β must be
/// invertible: the coboundary family conjugates by powers of β, including
/// negative ones, so a singular β is rejected outright rather than partially
/// supported.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<HomLieAlgebra>,
    dim_v: usize,
    rho: Vec<QMatrix>,
    beta: QMatrix,
}

impl Representation {
    pub fn new(
        algebra: Arc<HomLieAlgebra>,
        rho: Vec<QMatrix>,
        beta: QMatrix,
    ) -> Result<Representation> {
        let dim_v = beta.n_rows();
        if beta.n_cols() != dim_v {
            return Err(Error::shape("beta is not square".to_string()));
        }
        if rho.len() != algebra.dim() {
            return Err(Error::shape(format!(
                "{} action matrices for a {}-dimensional algebra",
                rho.len(),
                algebra.dim()
            )));
        }
        if rho
            .iter()
            .any(|m| m.n_rows() != dim_v || m.n_cols() != dim_v)
        {
            return Err(Error::shape(
                "action matrix size differs from beta".to_string(),
            ));
        }
        if beta.inverse().is_none() {
            return Err(Error::Singular("beta must be invertible".to_string()));
        }
        Ok(Representation {
            algebra,
            dim_v,
            rho,
            beta,
        })
    }

    pub fn algebra(&self) -> &Arc<HomLieAlgebra> {
        &self.algebra
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn rho(&self) -> &[QMatrix] {
        &self.rho
    }

    pub fn beta(&self) -> &QMatrix {
        &self.beta
    }

    /// ρ extended linearly to a coordinate vector of g.
    pub fn rho_vec(&self, x: &[Rational]) -> QMatrix {
        let mut out = QMatrix::zero(self.dim_v, self.dim_v);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out = out.add(&self.rho[i].scale(xi));
            }
        }
        out
    }

    /// The trivial action (ρ = 0, β = id) on Q^dim_v.
    pub fn trivial(algebra: Arc<HomLieAlgebra>, dim_v: usize) -> Representation {
        let rho = vec![QMatrix::zero(dim_v, dim_v); algebra.dim()];
        Representation {
            algebra,
            dim_v,
            rho,
            beta: QMatrix::identity(dim_v),
        }
    }

    /// Both representation axioms on the basis:
    ///   ρ(α(x))∘β = β∘ρ(x)  and  ρ([x,y])∘β = ρ(α(x))ρ(y) − ρ(α(y))ρ(x).
    /// Basis vectors x and increasing pairs (x, y) are decisive: every
    /// expression is linear in each slot and the second axiom alternates.
    pub fn check_representation(&self) -> Report {
        let g = &self.algebra;
        let mut report = Report::new("representation");

        let mut violations = Vec::new();
        for i in 0..g.dim() {
            let lhs = self.rho_vec(&g.alpha().col(i)).mul(&self.beta);
            let rhs = self.beta.mul(&self.rho[i]);
            if lhs != rhs {
                violations.push(json!({ "basis": i + 1 }));
            }
        }
        report.push_violations("twist_compatibility", violations);

        let mut violations = Vec::new();
        for (i, j) in (0..g.dim()).tuple_combinations() {
            let lhs = self.rho_vec(&g.bracket_basis(i, j)).mul(&self.beta);
            let rho_ai = self.rho_vec(&g.alpha().col(i));
            let rho_aj = self.rho_vec(&g.alpha().col(j));
            let rhs = rho_ai.mul(&self.rho[j]).sub(&rho_aj.mul(&self.rho[i]));
            if lhs != rhs {
                violations.push(json!({ "pair": [i + 1, j + 1] }));
            }
        }
        report.push_violations("bracket_compatibility", violations);

        report
    }
}

/// Twists an ordinary Lie algebra along a bracket automorphism:
/// the new bracket is α∘[·,·] and the twist map is α itself. The input's
/// `alpha` field is read as the chosen automorphism; its bracket must satisfy
/// the untwisted Jacobi identity.
pub fn yau_twist(lie: &HomLieAlgebra) -> Result<HomLieAlgebra> {
    let dim = lie.dim();
    let pre = lie.alpha().inverse().is_some();
    if !pre {
        return Err(Error::Singular("twist map must be invertible".to_string()));
    }

    let mut report = Report::new("yau twist preconditions");
    let mut violations = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            for k in 0..dim {
                if lie.c[i][j][k] != -lie.c[j][i][k].clone() {
                    violations.push(json!({ "pair": [i + 1, j + 1] }));
                }
            }
        }
    }
    report.push_violations("antisymmetry", violations);

    let mut violations = Vec::new();
    for (i, j, k) in (0..dim).tuple_combinations() {
        let x = lie.basis_vec(i);
        let y = lie.basis_vec(j);
        let z = lie.basis_vec(k);
        let mut total = vec![rat_int(0); dim];
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            let term = lie.bracket_vec(a, &lie.bracket_vec(b, c));
            for (t, v) in total.iter_mut().zip(term) {
                *t += v;
            }
        }
        if total.iter().any(|v| !v.is_zero()) {
            violations.push(json!({ "triple": [i + 1, j + 1, k + 1] }));
        }
    }
    report.push_violations("jacobi", violations);

    let mut violations = Vec::new();
    for (i, j) in (0..dim).tuple_combinations() {
        let lhs = lie.alpha_vec(&lie.bracket_basis(i, j));
        let rhs = lie.bracket_vec(&lie.alpha().col(i), &lie.alpha().col(j));
        if lhs != rhs {
            violations.push(json!({ "pair": [i + 1, j + 1] }));
        }
    }
    report.push_violations("automorphism", violations);

    if !report.passed() {
        return Err(Error::Refused {
            context: "input is not a Lie algebra with a bracket automorphism".to_string(),
            report,
        });
    }

    let mut c = vec![vec![vec![rat_int(0); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let twisted = lie.alpha_vec(&lie.c[i][j]);
            c[i][j] = twisted;
        }
    }
    HomLieAlgebra::new(c, lie.alpha().clone())
}

/// The adjoint action ad(x)y = [x,y] with β = α. Valid exactly when the
/// algebra itself is valid, which stays checkable through
/// [`Representation::check_representation`].
pub fn adjoint_rep(algebra: Arc<HomLieAlgebra>) -> Result<Representation> {
    if algebra.alpha().inverse().is_none() {
        return Err(Error::Singular(
            "adjoint representation needs an invertible twist map".to_string(),
        ));
    }
    let dim = algebra.dim();
    let mut rho = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut m = QMatrix::zero(dim, dim);
        for j in 0..dim {
            for k in 0..dim {
                *m.at_mut(k, j) = algebra.c[i][j][k].clone();
            }
        }
        rho.push(m);
    }
    let beta = algebra.alpha().clone();
    Representation::new(algebra, rho, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    pub(crate) use crate::fixtures::{aff2, heisenberg};

    pub(crate) fn qm(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn aff2_is_hom_lie() {
        let report = aff2().check_hom_jacobi();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn heisenberg_is_hom_lie() {
        assert!(heisenberg().check_hom_jacobi().passed());
    }

    #[test]
    fn perturbed_heisenberg_fails_jacobi_or_morphism() {
        // Flip [e1,e3] to e1 with α = diag(1,1,2): morphism breaks.
        let mut c = vec![vec![vec![rat_int(0); 3]; 3]; 3];
        c[0][1][2] = rat_int(1);
        c[1][0][2] = rat_int(-1);
        c[0][2][0] = rat_int(1);
        c[2][0][0] = rat_int(-1);
        let g = HomLieAlgebra::new(c, qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]])).unwrap();
        let report = g.check_hom_jacobi();
        assert!(!report.passed());
    }

    #[test]
    fn broken_antisymmetry_reported_first() {
        let mut c = vec![vec![vec![rat_int(0); 2]; 2]; 2];
        c[0][1][1] = rat_int(1);
        c[1][0][1] = rat_int(1); // not -1
        let g = HomLieAlgebra::new(c, QMatrix::identity(2)).unwrap();
        let report = g.check_hom_jacobi();
        assert_eq!(report.checks[0].check, "antisymmetry");
        assert!(!report.passed());
    }

    #[test]
    fn adjoint_of_aff2() {
        let rep = adjoint_rep(Arc::new(aff2())).unwrap();
        // ad(e1): e1 ↦ 0, e2 ↦ e2;  ad(e2): e1 ↦ -e2, e2 ↦ 0.
        assert_eq!(rep.rho()[0], qm(&[&[0, 0], &[0, 1]]));
        assert_eq!(rep.rho()[1], qm(&[&[0, 0], &[-1, 0]]));
        assert!(rep.check_representation().passed());
    }

    #[test]
    fn adjoint_with_wrong_beta_fails_twist_axiom() {
        let g = Arc::new(aff2());
        let adj = adjoint_rep(g.clone()).unwrap();
        let wrong = Representation::new(g, adj.rho().to_vec(), QMatrix::identity(2)).unwrap();
        let report = wrong.check_representation();
        assert!(!report.passed());
        // ρ(α(e2))β = 2ρ(e2) but βρ(e2) = ρ(e2).
        assert_eq!(report.first_failure().unwrap().check, "twist_compatibility");
    }

    #[test]
    fn singular_beta_rejected() {
        let g = Arc::new(aff2());
        let res = Representation::new(
            g,
            vec![QMatrix::zero(2, 2), QMatrix::zero(2, 2)],
            QMatrix::zero(2, 2),
        );
        assert!(matches!(res, Err(Error::Singular(_))));
    }

    #[test]
    fn yau_twist_of_aff2() {
        let twisted = yau_twist(&aff2()).unwrap();
        // [e1,e2]' = α(e2) = 2e2.
        assert_eq!(twisted.constants()[0][1][1], rat_int(2));
        assert_eq!(twisted.constants()[1][0][1], rat_int(-2));
        assert!(twisted.check_hom_jacobi().passed());
    }

    #[test]
    fn yau_twist_rejects_non_automorphism() {
        // aff2 data with α = diag(2,2): α[e1,e2] = 2e2 but [αe1,αe2] = 4e2.
        let mut c = vec![vec![vec![rat_int(0); 2]; 2]; 2];
        c[0][1][1] = rat_int(1);
        c[1][0][1] = rat_int(-1);
        let g = HomLieAlgebra::new(c, qm(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(matches!(yau_twist(&g), Err(Error::Refused { .. })));
    }

    #[test]
    fn yau_twist_abelian_accepts_any_invertible_alpha() {
        let alpha = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(3)],
            vec![rat_int(0), rat_int(-1)],
        ])
        .unwrap();
        let g = HomLieAlgebra::abelian(2, alpha).unwrap();
        let twisted = yau_twist(&g).unwrap();
        assert!(twisted.check_hom_jacobi().passed());
    }
}
