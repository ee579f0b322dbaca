//! Hom-Lie algebroids over a polynomial base, in both competing shapes.
//!
//! The stored data is identical for the two variants: structure sections
//! [e_i,e_j], an anchor coefficient matrix (ρ(e_i) acts as the φ*-twisted
//! derivation f ↦ φ*(Σ_j c_ij ∂f/∂x_j)), and a twist matrix whose row i is
//! α(e_i). The `variant` field decides how both anchor and bracket extend
//! beyond basis sections:
//!
//! * variant A: ρ(Σ g_i e_i) = Σ φ*(g_i) ρ(e_i), and the twisted Leibniz rule
//!   reads [X, fY] = φ*(f)[X,Y] + ρ(X)(f)·α(Y);
//! * variant B: ρ(Σ g_i e_i) = Σ g_i ρ(e_i), and the rule reads
//!   [X, fY] = φ*(f)[X,Y] + ρ(α(X))(f)·α(Y).
//!
//! α itself is always φ*-twisted linear: α(fX) = φ*(f)·α(X).

pub mod sampler;
pub mod section;

pub use section::Section;

use crate::error::{Error, Result};
use crate::kernel::base::BaseGeometry;
use crate::kernel::derivation::TwistedDerivation;
use crate::kernel::poly::Poly;
use crate::report::{CheckConfig, Report};
use sampler::Sampler;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::A => write!(f, "A"),
            Variant::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            other => Err(Error::shape(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomAlgebroid {
    base: Arc<BaseGeometry>,
    rank: usize,
    bracket_sf: Vec<Vec<Section>>,
    anchor: Vec<TwistedDerivation>,
    alpha_sf: Vec<Vec<Poly>>,
    variant: Variant,
}

impl HomAlgebroid {
    /// `anchor_coeffs[i][j]` is the ∂/∂x_j coefficient of ρ(e_i);
    /// `alpha_sf[i]` is the coordinate row of α(e_i).
    pub fn new(
        base: Arc<BaseGeometry>,
        rank: usize,
        bracket_sf: Vec<Vec<Section>>,
        anchor_coeffs: Vec<Vec<Poly>>,
        alpha_sf: Vec<Vec<Poly>>,
        variant: Variant,
    ) -> Result<HomAlgebroid> {
        if bracket_sf.len() != rank || bracket_sf.iter().any(|row| row.len() != rank) {
            return Err(Error::shape("bracket table is not rank x rank".to_string()));
        }
        for row in &bracket_sf {
            for s in row {
                if s.rank() != rank {
                    return Err(Error::shape("bracket entry has wrong rank".to_string()));
                }
                if s.base().as_ref() != base.as_ref() {
                    return Err(Error::BaseMismatch);
                }
            }
        }
        if anchor_coeffs.len() != rank {
            return Err(Error::shape("anchor table is not rank-sized".to_string()));
        }
        let anchor = anchor_coeffs
            .into_iter()
            .map(|coeffs| TwistedDerivation::new(base.clone(), coeffs, 1))
            .collect::<Result<Vec<_>>>()?;
        if alpha_sf.len() != rank || alpha_sf.iter().any(|row| row.len() != rank) {
            return Err(Error::shape("twist matrix is not rank x rank".to_string()));
        }
        for row in &alpha_sf {
            for p in row {
                if p.vars() != base.vars() {
                    return Err(Error::shape(
                        "twist entry uses a different variable list".to_string(),
                    ));
                }
            }
        }
        Ok(HomAlgebroid {
            base,
            rank,
            bracket_sf,
            anchor,
            alpha_sf,
            variant,
        })
    }

    pub fn base(&self) -> &Arc<BaseGeometry> {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn bracket_sf(&self) -> &Vec<Vec<Section>> {
        &self.bracket_sf
    }

    pub fn alpha_sf(&self) -> &Vec<Vec<Poly>> {
        &self.alpha_sf
    }

    pub fn anchor_coeffs(&self) -> Vec<Vec<Poly>> {
        self.anchor
            .iter()
            .map(|d| d.coefficients().to_vec())
            .collect()
    }

    pub fn anchor_derivations(&self) -> &[TwistedDerivation] {
        &self.anchor
    }

    /// Same data, other variant tag. The extensions (and hence the structure)
    /// change with the tag; the stored tables do not.
    pub fn with_variant(&self, variant: Variant) -> HomAlgebroid {
        HomAlgebroid {
            variant,
            ..self.clone()
        }
    }

    pub fn basis_section(&self, i: usize) -> Section {
        Section::basis(self.base.clone(), self.rank, i)
    }

    /// α(e_i) as a section.
    pub fn alpha_basis(&self, i: usize) -> Section {
        Section::new(self.base.clone(), self.alpha_sf[i].clone()).expect("validated rows")
    }

    fn check_section(&self, x: &Section) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::shape(
                "section rank differs from the algebroid".to_string(),
            ));
        }
        if x.base().as_ref() != self.base.as_ref() {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// α(Σ g_i e_i) = Σ φ*(g_i)·α(e_i).
    pub fn apply_alpha(&self, x: &Section) -> Result<Section> {
        self.check_section(x)?;
        let mut out = Section::zero(self.base.clone(), self.rank);
        for (i, g) in x.coeffs().iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            out = out.add(&self.alpha_basis(i).scale(&self.base.phi(g)))?;
        }
        Ok(out)
    }

    /// ρ(Σ g_i e_i)(f) = Σ s(g_i)·ρ(e_i)(f), with s = φ* under variant A and
    /// s = id under variant B.
    pub fn apply_anchor(&self, x: &Section, f: &Poly) -> Result<Poly> {
        self.check_section(x)?;
        if f.vars() != self.base.vars() {
            return Err(Error::shape(
                "function uses a different variable list".to_string(),
            ));
        }
        let mut out = Poly::zero(self.base.vars());
        for (i, g) in x.coeffs().iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let scale = match self.variant {
                Variant::A => self.base.phi(g),
                Variant::B => g.clone(),
            };
            out = &out + &(&scale * &self.anchor[i].apply(f));
        }
        Ok(out)
    }

    /// The derivation appearing in the Leibniz correction term for basis
    /// section e_i: ρ(e_i) under variant A, ρ(α(e_i)) under variant B.
    fn correction(&self, i: usize, f: &Poly) -> Poly {
        match self.variant {
            Variant::A => self.anchor[i].apply(f),
            Variant::B => {
                let mut out = Poly::zero(self.base.vars());
                for (m, c) in self.alpha_sf[i].iter().enumerate() {
                    if !c.is_zero() {
                        out = &out + &(c * &self.anchor[m].apply(f));
                    }
                }
                out
            }
        }
    }

    /// Full bracket of sections, extending the structure table over
    /// antisymmetry and the variant's Leibniz rule:
    ///   [f e_i, g e_j] = φ*(f)φ*(g)[e_i,e_j] + φ*(f)·D_i(g)·α(e_j)
    ///                                        − φ*(g)·D_j(f)·α(e_i)
    /// with D the correction derivation above.
    pub fn bracket(&self, x: &Section, y: &Section) -> Result<Section> {
        self.check_section(x)?;
        self.check_section(y)?;
        let mut out = Section::zero(self.base.clone(), self.rank);
        for (i, f) in x.coeffs().iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let pf = self.base.phi(f);
            for (j, g) in y.coeffs().iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let pg = self.base.phi(g);
                let mut term = self.bracket_sf[i][j].scale(&(&pf * &pg));
                let di_g = self.correction(i, g);
                if !di_g.is_zero() {
                    term = term.add(&self.alpha_basis(j).scale(&(&pf * &di_g)))?;
                }
                let dj_f = self.correction(j, f);
                if !dj_f.is_zero() {
                    term = term.sub(&self.alpha_basis(i).scale(&(&pg * &dj_f)))?;
                }
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    /// Adds `delta` to one stored polynomial entry; used to probe checker
    /// sensitivity. `path` addresses (table, indices): bracket (i, j,
    /// component), anchor (i, variable), alpha (i, j).
    pub fn perturbed(&self, path: &PerturbPath, delta: &Poly) -> Result<HomAlgebroid> {
        let mut bracket_rows: Vec<Vec<Section>> = self.bracket_sf.clone();
        let mut anchor = self.anchor_coeffs();
        let mut alpha = self.alpha_sf.clone();
        match *path {
            PerturbPath::Bracket { i, j, component } => {
                if i >= self.rank || j >= self.rank || component >= self.rank {
                    return Err(Error::shape("perturbation index out of range".to_string()));
                }
                let mut coeffs = bracket_rows[i][j].coeffs().to_vec();
                coeffs[component] = &coeffs[component] + delta;
                bracket_rows[i][j] = Section::new(self.base.clone(), coeffs)?;
            }
            PerturbPath::Anchor { i, var } => {
                if i >= self.rank || var >= self.base.n_vars() {
                    return Err(Error::shape("perturbation index out of range".to_string()));
                }
                anchor[i][var] = &anchor[i][var] + delta;
            }
            PerturbPath::Alpha { i, j } => {
                if i >= self.rank || j >= self.rank {
                    return Err(Error::shape("perturbation index out of range".to_string()));
                }
                alpha[i][j] = &alpha[i][j] + delta;
            }
        }
        HomAlgebroid::new(
            self.base.clone(),
            self.rank,
            bracket_rows,
            anchor,
            alpha,
            self.variant,
        )
    }

    /// Every defining axiom and derived law for this algebroid's variant,
    /// evaluated exactly on basis data plus seeded random sections/functions.
    pub fn check_axioms(&self, config: &CheckConfig) -> Report {
        let mut report = Report::new(format!("algebroid axioms (variant {})", self.variant));
        report.absorb("", self.base.check_involution());

        let mut sampler =
            Sampler::new(self.base.clone(), self.rank, config.seed, config.max_degree);
        let sections = sampler.section_pool(config.trials);
        let functions = sampler.function_probes(config.trials);
        let pairs = sampler.section_tuples(2, config.trials);
        let triples = sampler.section_tuples(3, config.trials);

        let ok = |r: Result<Section>| r.expect("pool sections share the base");
        let okp = |r: Result<Poly>| r.expect("pool data shares the base");

        // α(fX) = φ*(f)·α(X)
        let mut violations = Vec::new();
        for f in &functions {
            for x in &sections {
                let lhs = ok(self.apply_alpha(&x.scale(f)));
                let rhs = ok(self.apply_alpha(x)).scale(&self.base.phi(f));
                if lhs != rhs {
                    violations.push(json!({ "f": f.to_string(), "X": x.to_string() }));
                }
            }
        }
        report.push_violations("alpha_twisted_linearity", violations);

        // Structure table antisymmetry, including the zero diagonal, plus a
        // sweep of the extension (equivalent given the table, but it guards
        // the extension code itself).
        let mut violations = Vec::new();
        for i in 0..self.rank {
            for j in i..self.rank {
                let sum = self.bracket_sf[i][j]
                    .add(&self.bracket_sf[j][i])
                    .expect("table entries share the base");
                if !sum.is_zero() {
                    violations.push(json!({
                        "pair": [i + 1, j + 1],
                        "sum": sum.to_string(),
                    }));
                }
            }
        }
        for pair in &pairs {
            let sum = ok(self.bracket(&pair[0], &pair[1]))
                .add(&ok(self.bracket(&pair[1], &pair[0])))
                .expect("brackets share the base");
            if !sum.is_zero() {
                violations.push(json!({
                    "X": pair[0].to_string(),
                    "Y": pair[1].to_string(),
                    "sum": sum.to_string(),
                }));
            }
        }
        report.push_violations("bracket_antisymmetry", violations);

        // [α(X), [Y,Z]] + [α(Y), [Z,X]] + [α(Z), [X,Y]] = 0
        let mut violations = Vec::new();
        for t in &triples {
            let mut total = Section::zero(self.base.clone(), self.rank);
            for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let inner = ok(self.bracket(&t[b], &t[c]));
                let term = ok(self.bracket(&ok(self.apply_alpha(&t[a])), &inner));
                total = total.add(&term).expect("terms share the base");
            }
            if !total.is_zero() {
                violations.push(json!({
                    "X": t[0].to_string(),
                    "Y": t[1].to_string(),
                    "Z": t[2].to_string(),
                    "residual": total.to_string(),
                }));
            }
        }
        report.push_violations("hom_jacobi", violations);

        // [X, fY] = φ*(f)[X,Y] + D(X)(f)·α(Y), D per variant.
        let mut violations = Vec::new();
        for pair in &pairs {
            for f in &functions {
                let (x, y) = (&pair[0], &pair[1]);
                let lhs = ok(self.bracket(x, &y.scale(f)));
                let d_x_f = match self.variant {
                    Variant::A => okp(self.apply_anchor(x, f)),
                    Variant::B => okp(self.apply_anchor(&ok(self.apply_alpha(x)), f)),
                };
                let rhs = ok(self.bracket(x, y))
                    .scale(&self.base.phi(f))
                    .add(&ok(self.apply_alpha(y)).scale(&d_x_f))
                    .expect("terms share the base");
                if lhs != rhs {
                    violations.push(json!({
                        "X": x.to_string(),
                        "f": f.to_string(),
                        "Y": y.to_string(),
                        "lhs": lhs.to_string(),
                        "rhs": rhs.to_string(),
                    }));
                }
            }
        }
        report.push_violations("hom_leibniz", violations);

        // ρ(α(X))∘φ* = φ*∘ρ(X)
        let mut violations = Vec::new();
        for x in &sections {
            for f in &functions {
                let lhs = okp(self.apply_anchor(&ok(self.apply_alpha(x)), &self.base.phi(f)));
                let rhs = self.base.phi(&okp(self.apply_anchor(x, f)));
                if lhs != rhs {
                    violations.push(json!({
                        "X": x.to_string(),
                        "f": f.to_string(),
                        "lhs": lhs.to_string(),
                        "rhs": rhs.to_string(),
                    }));
                }
            }
        }
        report.push_violations("anchor_twist_compatibility", violations);

        // ρ([X,Y])∘φ* = ρ(α(X))ρ(Y) − ρ(α(Y))ρ(X)
        let mut violations = Vec::new();
        for pair in &pairs {
            for f in &functions {
                let (x, y) = (&pair[0], &pair[1]);
                let lhs = okp(self.apply_anchor(&ok(self.bracket(x, y)), &self.base.phi(f)));
                let ax = ok(self.apply_alpha(x));
                let ay = ok(self.apply_alpha(y));
                let rhs = &okp(self.apply_anchor(&ax, &okp(self.apply_anchor(y, f))))
                    - &okp(self.apply_anchor(&ay, &okp(self.apply_anchor(x, f))));
                if lhs != rhs {
                    violations.push(json!({
                        "X": x.to_string(),
                        "Y": y.to_string(),
                        "f": f.to_string(),
                        "lhs": lhs.to_string(),
                        "rhs": rhs.to_string(),
                    }));
                }
            }
        }
        report.push_violations("anchor_bracket_compatibility", violations);

        // α([X,Y]) = [α(X), α(Y)]
        let mut violations = Vec::new();
        for pair in &pairs {
            let (x, y) = (&pair[0], &pair[1]);
            let lhs = ok(self.apply_alpha(&ok(self.bracket(x, y))));
            let rhs = ok(self.bracket(&ok(self.apply_alpha(x)), &ok(self.apply_alpha(y))));
            if lhs != rhs {
                violations.push(json!({
                    "X": x.to_string(),
                    "Y": y.to_string(),
                    "lhs": lhs.to_string(),
                    "rhs": rhs.to_string(),
                }));
            }
        }
        report.push_violations("alpha_morphism", violations);

        // φ* is a unital algebra morphism.
        let mut violations = Vec::new();
        if !self.base.phi(&Poly::one(self.base.vars())).is_one() {
            violations.push(json!({ "f": "1" }));
        }
        for f in &functions {
            for g in &functions {
                if self.base.phi(&(f * g)) != &self.base.phi(f) * &self.base.phi(g)
                    || self.base.phi(&(f + g)) != &self.base.phi(f) + &self.base.phi(g)
                {
                    violations.push(json!({ "f": f.to_string(), "g": g.to_string() }));
                }
            }
        }
        report.push_violations("phi_morphism", violations);

        // ρ(X)(fg) = φ*(f)·ρ(X)(g) + φ*(g)·ρ(X)(f)
        let mut violations = Vec::new();
        for x in &sections {
            for f in &functions {
                for g in &functions {
                    let lhs = okp(self.apply_anchor(x, &(f * g)));
                    let rhs = &(&self.base.phi(f) * &okp(self.apply_anchor(x, g)))
                        + &(&self.base.phi(g) * &okp(self.apply_anchor(x, f)));
                    if lhs != rhs {
                        violations.push(json!({
                            "X": x.to_string(),
                            "f": f.to_string(),
                            "g": g.to_string(),
                        }));
                    }
                }
            }
        }
        report.push_violations("anchor_product_rule", violations);

        // When α is the identity on sections, the twisted scaling law forces
        // φ* = id (rank ≥ 1), and the structure degenerates to a classical
        // Lie algebroid. Vacuous for non-identity α.
        let identity_alpha = (0..self.rank).all(|i| {
            (0..self.rank).all(|j| {
                let expect = if i == j {
                    Poly::one(self.base.vars())
                } else {
                    Poly::zero(self.base.vars())
                };
                self.alpha_sf[i][j] == expect
            })
        });
        if identity_alpha && self.rank > 0 && !self.base.is_identity() {
            report.push_fail(
                "classical_degeneration",
                json!({
                    "reason": "alpha is the identity but the base substitution is not",
                    "phi": self
                        .base
                        .phi_images()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>(),
                }),
            );
        } else {
            report.push_pass("classical_degeneration");
        }

        // ρ(fX) = s(f)·ρ(X) with s = φ* (variant A) or id (variant B).
        let mut violations = Vec::new();
        for x in &sections {
            for f in &functions {
                for g in &functions {
                    let lhs = okp(self.apply_anchor(&x.scale(f), g));
                    let s_f = match self.variant {
                        Variant::A => self.base.phi(f),
                        Variant::B => f.clone(),
                    };
                    let rhs = &s_f * &okp(self.apply_anchor(x, g));
                    if lhs != rhs {
                        violations.push(json!({
                            "f": f.to_string(),
                            "X": x.to_string(),
                            "g": g.to_string(),
                        }));
                    }
                }
            }
        }
        report.push_violations("anchor_scaling", violations);

        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbPath {
    Bracket {
        i: usize,
        j: usize,
        component: usize,
    },
    Anchor {
        i: usize,
        var: usize,
    },
    Alpha {
        i: usize,
        j: usize,
    },
}
