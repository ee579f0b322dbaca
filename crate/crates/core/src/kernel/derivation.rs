//! First-order derivations twisted by a power of φ*:
//! f ↦ (φ*)^e (Σ_j c_j ∂f/∂x_j).
//!
//! With e odd these satisfy the twisted product rule
//! D(fg) = φ*(f)·D(g) + φ*(g)·D(f); with e even the classical one.

use crate::error::{Error, Result};
use crate::kernel::base::BaseGeometry;
use crate::kernel::poly::Poly;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedDerivation {
    base: Arc<BaseGeometry>,
    coefficients: Vec<Poly>,
    twist: u32,
}

impl TwistedDerivation {
    pub fn new(
        base: Arc<BaseGeometry>,
        coefficients: Vec<Poly>,
        twist: u32,
    ) -> Result<TwistedDerivation> {
        if coefficients.len() != base.n_vars() {
            return Err(Error::shape(format!(
                "{} coefficients for {} variables",
                coefficients.len(),
                base.n_vars()
            )));
        }
        for c in &coefficients {
            if c.vars() != base.vars() {
                return Err(Error::shape(
                    "derivation coefficient uses a different variable list".to_string(),
                ));
            }
        }
        Ok(TwistedDerivation {
            base,
            coefficients,
            twist,
        })
    }

    pub fn base(&self) -> &Arc<BaseGeometry> {
        &self.base
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut sum = Poly::zero(self.base.vars());
        for (j, c) in self.coefficients.iter().enumerate() {
            sum = &sum + &(c * &f.partial_derivative(j));
        }
        self.base.apply_phi(self.twist as i64, &sum)
    }
}
