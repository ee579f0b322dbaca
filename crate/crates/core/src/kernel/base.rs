//! The function algebra Q[x_1..x_n] together with a substitution endomorphism
//! φ* given by its variable images. Everything downstream assumes φ is an
//! involution (φ∘φ = id); [`BaseGeometry::check_involution`] verifies that and
//! [`BaseGeometry::apply_phi`] exploits it by reducing power exponents mod 2,
//! which is also the only sound meaning for negative exponents.

use crate::error::{Error, Result};
use crate::kernel::poly::{Poly, Vars};
use crate::report::{Report, Status};
use serde_json::json;

#[derive(Clone, Debug, PartialEq)]
pub struct BaseGeometry {
    vars: Vars,
    phi_images: Vec<Poly>,
}

impl BaseGeometry {
    pub fn new(vars: Vars, phi_images: Vec<Poly>) -> Result<BaseGeometry> {
        if phi_images.len() != vars.len() {
            return Err(Error::shape(format!(
                "{} variables but {} substitution images",
                vars.len(),
                phi_images.len()
            )));
        }
        for (j, im) in phi_images.iter().enumerate() {
            if im.vars() != &vars {
                return Err(Error::shape(format!(
                    "image of `{}` uses a different variable list",
                    vars.names()[j]
                )));
            }
        }
        Ok(BaseGeometry { vars, phi_images })
    }

    /// Base with φ = id on the given variables.
    pub fn identity(vars: Vars) -> BaseGeometry {
        let phi_images = (0..vars.len()).map(|j| Poly::variable(&vars, j)).collect();
        BaseGeometry { vars, phi_images }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn phi_images(&self) -> &[Poly] {
        &self.phi_images
    }

    pub fn is_identity(&self) -> bool {
        self.phi_images
            .iter()
            .enumerate()
            .all(|(j, im)| *im == Poly::variable(&self.vars, j))
    }

    /// (φ*)^e applied to `f`, with e taken mod 2. Negative exponents are
    /// meaningful precisely because φ is required to be an involution; callers
    /// must have validated [`check_involution`](Self::check_involution) before
    /// relying on them.
    pub fn apply_phi(&self, e: i64, f: &Poly) -> Poly {
        if e.rem_euclid(2) == 0 {
            f.clone()
        } else {
            f.substitute(&self.phi_images)
                .expect("phi images validated at construction")
        }
    }

    /// φ*(f), the single-application case.
    pub fn phi(&self, f: &Poly) -> Poly {
        self.apply_phi(1, f)
    }

    /// Verifies φ*∘φ* = id by substituting the variable images into
    /// themselves; each variable gets its own report line on failure.
    pub fn check_involution(&self) -> Report {
        let mut report = Report::new("base involution");
        let mut violations = Vec::new();
        for (j, im) in self.phi_images.iter().enumerate() {
            let twice = im
                .substitute(&self.phi_images)
                .expect("phi images validated at construction");
            let expect = Poly::variable(&self.vars, j);
            if twice != expect {
                violations.push(json!({
                    "variable": self.vars.names()[j],
                    "double_image": twice.to_string(),
                }));
            }
        }
        if violations.is_empty() {
            report.push_pass("involution");
        } else {
            report.push(
                "involution",
                Status::Fail,
                Some(json!({ "violations": violations })),
            );
        }
        report
    }
}
