//! Elements of the free module of sections: rank-many polynomial coordinates
//! over a shared base.

use crate::error::{Error, Result};
use crate::kernel::base::BaseGeometry;
use crate::kernel::poly::Poly;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    base: Arc<BaseGeometry>,
    coeffs: Vec<Poly>,
}

impl Section {
    pub fn new(base: Arc<BaseGeometry>, coeffs: Vec<Poly>) -> Result<Section> {
        for c in &coeffs {
            if c.vars() != base.vars() {
                return Err(Error::shape(
                    "section coefficient uses a different variable list".to_string(),
                ));
            }
        }
        Ok(Section { base, coeffs })
    }

    pub fn zero(base: Arc<BaseGeometry>, rank: usize) -> Section {
        let coeffs = vec![Poly::zero(base.vars()); rank];
        Section { base, coeffs }
    }

    pub fn basis(base: Arc<BaseGeometry>, rank: usize, i: usize) -> Section {
        assert!(i < rank, "basis index out of range");
        let mut s = Section::zero(base, rank);
        s.coeffs[i] = Poly::one(s.base.vars());
        s
    }

    pub fn base(&self) -> &Arc<BaseGeometry> {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_same(&self, other: &Section) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::shape("sections have different ranks".to_string()));
        }
        if self.base.as_ref() != other.base.as_ref() {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Section) -> Result<Section> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Section {
            base: self.base.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Section) -> Result<Section> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Section {
            base: self.base.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(Poly::neg).collect(),
        }
    }

    /// Module scaling f·X (no twist; twisted scalings are spelled out by
    /// callers so the variant conventions stay visible at use sites).
    pub fn scale(&self, f: &Poly) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(format!("e{}", i + 1));
            } else if c.terms().len() == 1 {
                parts.push(format!("{c}*e{}", i + 1));
            } else {
                parts.push(format!("({c})*e{}", i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
