//! The differential calculus living on an algebroid's sections: cochain
//! expression trees, the wedge product, the twist-indexed degree-raising
//! operators d^s, and the two pullbacks they interact with.
//!
//! A k-cochain is represented intensionally, as a tree whose leaves are
//! explicit twisted-multilinear forms and whose nodes are operator
//! applications; evaluation is always by formula, never by rewriting. Two
//! cochain expressions are compared by evaluating both on a decisive tuple
//! set: every basis tuple, then seeded random polynomial tuples on top.

use crate::algebroid::sampler::Sampler;
use crate::algebroid::{HomAlgebroid, Section, Variant};
use crate::error::{Error, Result};
use crate::homlie::cochain::sort_with_sign;
use crate::kernel::poly::Poly;
use crate::kernel::rational::Rational;
use crate::report::{CheckConfig, Report};
use itertools::Itertools;
use serde_json::json;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
enum Node {
    /// Degree 0: a function on the base.
    Function(Poly),
    /// A k-form given by its values on increasing basis tuples (0-based
    /// keys). `twist` fixes the scaling law in each argument:
    /// η(f·X, ...) = (φ*)^twist(f)·η(X, ...).
    Basis {
        twist: u8,
        components: BTreeMap<Vec<usize>, Poly>,
    },
    Wedge(AlgebroidCochain, AlgebroidCochain),
    D {
        s: i64,
        inner: AlgebroidCochain,
    },
    AlphaStar(AlgebroidCochain),
    PhiBar(AlgebroidCochain),
    Sum(Vec<(Rational, AlgebroidCochain)>),
}

/// A cochain expression over a fixed algebroid. Cheap to clone; the tree is
/// immutable and shared.
#[derive(Clone, Debug)]
pub struct AlgebroidCochain {
    ab: Arc<HomAlgebroid>,
    degree: usize,
    node: Arc<Node>,
}

impl AlgebroidCochain {
    pub fn function(ab: Arc<HomAlgebroid>, f: Poly) -> Result<AlgebroidCochain> {
        if f.vars() != ab.base().vars() {
            return Err(Error::shape(
                "function uses a different variable list".to_string(),
            ));
        }
        Ok(AlgebroidCochain {
            ab,
            degree: 0,
            node: Arc::new(Node::Function(f)),
        })
    }

    /// A twisted-multilinear k-form from its components on increasing basis
    /// tuples; keys are 0-based and strictly increasing, twist is 0 or 1.
    pub fn basis_form(
        ab: Arc<HomAlgebroid>,
        degree: usize,
        twist: u8,
        components: BTreeMap<Vec<usize>, Poly>,
    ) -> Result<AlgebroidCochain> {
        if degree == 0 {
            return Err(Error::shape(
                "degree-0 cochains are plain functions".to_string(),
            ));
        }
        if twist > 1 {
            return Err(Error::shape("twist flag must be 0 or 1".to_string()));
        }
        for (key, value) in &components {
            if key.len() != degree {
                return Err(Error::shape(format!(
                    "component key {key:?} does not have {degree} indices"
                )));
            }
            if key.windows(2).any(|w| w[0] >= w[1]) || key.iter().any(|&i| i >= ab.rank()) {
                return Err(Error::shape(format!(
                    "component key {key:?} is not strictly increasing within rank {}",
                    ab.rank()
                )));
            }
            if value.vars() != ab.base().vars() {
                return Err(Error::shape(
                    "component uses a different variable list".to_string(),
                ));
            }
        }
        Ok(AlgebroidCochain {
            ab,
            degree,
            node: Arc::new(Node::Basis { twist, components }),
        })
    }

    /// The dual basis 1-form e_i^*, plain-linear (twist 0).
    pub fn basis_dual(ab: Arc<HomAlgebroid>, i: usize) -> Result<AlgebroidCochain> {
        if i >= ab.rank() {
            return Err(Error::shape("dual index out of range".to_string()));
        }
        let one = Poly::one(ab.base().vars());
        let mut components = BTreeMap::new();
        components.insert(vec![i], one);
        AlgebroidCochain::basis_form(ab, 1, 0, components)
    }

    /// The zero cochain of a given degree.
    pub fn zero(ab: Arc<HomAlgebroid>, degree: usize) -> AlgebroidCochain {
        if degree == 0 {
            let f = Poly::zero(ab.base().vars());
            AlgebroidCochain {
                ab,
                degree: 0,
                node: Arc::new(Node::Function(f)),
            }
        } else {
            AlgebroidCochain {
                ab,
                degree,
                node: Arc::new(Node::Basis {
                    twist: 0,
                    components: BTreeMap::new(),
                }),
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebroid(&self) -> &Arc<HomAlgebroid> {
        &self.ab
    }

    fn check_same(&self, other: &AlgebroidCochain) -> Result<()> {
        if !Arc::ptr_eq(&self.ab, &other.ab) && *self.ab != *other.ab {
            return Err(Error::shape(
                "cochains live over different algebroids".to_string(),
            ));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &AlgebroidCochain) -> Result<AlgebroidCochain> {
        self.check_same(other)?;
        Ok(AlgebroidCochain {
            ab: self.ab.clone(),
            degree: self.degree + other.degree,
            node: Arc::new(Node::Wedge(self.clone(), other.clone())),
        })
    }

    /// The degree-raising operator with twist index s. Negative powers of the
    /// base substitution only make sense when it is an involution, so a base
    /// failing that check is refused.
    pub fn d(&self, s: i64) -> Result<AlgebroidCochain> {
        let involution = self.ab.base().check_involution();
        if !involution.passed() {
            return Err(Error::Refused {
                context: "the base substitution must be an involution".to_string(),
                report: involution,
            });
        }
        Ok(AlgebroidCochain {
            ab: self.ab.clone(),
            degree: self.degree + 1,
            node: Arc::new(Node::D {
                s,
                inner: self.clone(),
            }),
        })
    }

    /// Pullback along the section twist: η ↦ φ*∘η(α(X_1), ..., α(X_k)).
    pub fn alpha_star(&self) -> AlgebroidCochain {
        AlgebroidCochain {
            ab: self.ab.clone(),
            degree: self.degree,
            node: Arc::new(Node::AlphaStar(self.clone())),
        }
    }

    /// Post-composition with the base substitution: η ↦ φ*∘η.
    pub fn phi_bar(&self) -> AlgebroidCochain {
        AlgebroidCochain {
            ab: self.ab.clone(),
            degree: self.degree,
            node: Arc::new(Node::PhiBar(self.clone())),
        }
    }

    /// Weighted sum of same-degree cochains. Empty sums are ill-posed; use
    /// [`AlgebroidCochain::zero`].
    pub fn sum(terms: Vec<(Rational, AlgebroidCochain)>) -> Result<AlgebroidCochain> {
        let first = terms
            .first()
            .ok_or_else(|| Error::shape("empty sum has no degree".to_string()))?;
        let (ab, degree) = (first.1.ab.clone(), first.1.degree);
        for (_, t) in &terms {
            first.1.check_same(t)?;
            if t.degree != degree {
                return Err(Error::shape("sum terms must share a degree".to_string()));
            }
        }
        Ok(AlgebroidCochain {
            ab,
            degree,
            node: Arc::new(Node::Sum(terms)),
        })
    }

    pub fn scale(&self, c: &Rational) -> AlgebroidCochain {
        AlgebroidCochain::sum(vec![(c.clone(), self.clone())]).expect("single term")
    }

    pub fn evaluate(&self, args: &[Section]) -> Result<Poly> {
        if args.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                got: args.len(),
            });
        }
        for x in args {
            if x.rank() != self.ab.rank() {
                return Err(Error::shape(
                    "argument rank differs from the algebroid".to_string(),
                ));
            }
            if x.base().as_ref() != self.ab.base().as_ref() {
                return Err(Error::BaseMismatch);
            }
        }
        Ok(self.eval_unchecked(args))
    }

    fn eval_unchecked(&self, args: &[Section]) -> Poly {
        let base = self.ab.base();
        let vars = base.vars();
        match self.node.as_ref() {
            Node::Function(f) => f.clone(),

            Node::Basis { twist, components } => {
                let rank = self.ab.rank();
                let k = self.degree;
                let mut out = Poly::zero(vars);
                if components.is_empty() {
                    return out;
                }
                let mut idx = vec![0usize; k];
                loop {
                    let mut coeff = Poly::one(vars);
                    let mut nonzero = true;
                    for (m, &i) in idx.iter().enumerate() {
                        let c = &args[m].coeffs()[i];
                        if c.is_zero() {
                            nonzero = false;
                            break;
                        }
                        coeff = &coeff * c;
                    }
                    if nonzero {
                        if let Some((sorted, sign)) = sort_with_sign(&idx) {
                            if let Some(p) = components.get(&sorted) {
                                let twisted = base.apply_phi(*twist as i64, &coeff);
                                let term = &twisted * p;
                                out = if sign < 0 { &out - &term } else { &out + &term };
                            }
                        }
                    }
                    let mut pos = k;
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < rank {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }

            Node::Wedge(a, b) => {
                let (k, l) = (a.degree, b.degree);
                let mut out = Poly::zero(vars);
                for left in (0..k + l).combinations(k) {
                    let mut in_left = vec![false; k + l];
                    for &i in &left {
                        in_left[i] = true;
                    }
                    let left_args: Vec<Section> = left.iter().map(|&i| args[i].clone()).collect();
                    let right_args: Vec<Section> = (0..k + l)
                        .filter(|&i| !in_left[i])
                        .map(|i| args[i].clone())
                        .collect();
                    // Sign of the shuffle moving the chosen positions to the
                    // front while keeping both blocks in order.
                    let inversions: usize = left.iter().enumerate().map(|(m, &i)| i - m).sum();
                    let term = &a.eval_unchecked(&left_args) * &b.eval_unchecked(&right_args);
                    out = if inversions % 2 == 1 {
                        &out - &term
                    } else {
                        &out + &term
                    };
                }
                out
            }

            Node::D { s, inner } => {
                let k = inner.degree as i64;
                let t_out = (k + 1 + s).rem_euclid(2);
                let t_in = (k + s).rem_euclid(2);
                let alpha_imgs: Vec<Section> = args
                    .iter()
                    .map(|x| self.ab.apply_alpha(x).expect("arguments checked"))
                    .collect();
                let mut out = Poly::zero(vars);

                for m in 0..args.len() {
                    let rest: Vec<Section> = alpha_imgs
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != m)
                        .map(|(_, x)| x.clone())
                        .collect();
                    let val = inner.eval_unchecked(&rest);
                    let acted = base.apply_phi(
                        t_out,
                        &self
                            .ab
                            .apply_anchor(&args[m], &base.apply_phi(t_in, &val))
                            .expect("arguments checked"),
                    );
                    // (−1)^{i+1} with 1-based position i = m+1.
                    out = if m % 2 == 1 {
                        &out - &acted
                    } else {
                        &out + &acted
                    };
                }

                for m in 0..args.len() {
                    for l in m + 1..args.len() {
                        let mut inner_args =
                            vec![self.ab.bracket(&args[m], &args[l]).expect("checked")];
                        for (q, x) in alpha_imgs.iter().enumerate() {
                            if q != m && q != l {
                                inner_args.push(x.clone());
                            }
                        }
                        let val = inner.eval_unchecked(&inner_args);
                        // (−1)^{i+j} with 1-based positions.
                        out = if (m + l) % 2 == 1 {
                            &out - &val
                        } else {
                            &out + &val
                        };
                    }
                }
                out
            }

            Node::AlphaStar(inner) => {
                let alpha_imgs: Vec<Section> = args
                    .iter()
                    .map(|x| self.ab.apply_alpha(x).expect("arguments checked"))
                    .collect();
                base.phi(&inner.eval_unchecked(&alpha_imgs))
            }

            Node::PhiBar(inner) => base.phi(&inner.eval_unchecked(args)),

            Node::Sum(terms) => {
                let mut out = Poly::zero(vars);
                for (w, t) in terms {
                    out = &out + &t.eval_unchecked(args).scale(w);
                }
                out
            }
        }
    }
}

/// Collects tuples on which `lhs` and `rhs` disagree: all basis tuples first,
/// then seeded random polynomial tuples.
fn disagreements(
    lhs: &AlgebroidCochain,
    rhs: &AlgebroidCochain,
    config: &CheckConfig,
) -> Vec<serde_json::Value> {
    debug_assert_eq!(lhs.degree, rhs.degree);
    let ab = lhs.algebroid();
    let mut sampler = Sampler::new(ab.base().clone(), ab.rank(), config.seed, config.max_degree);
    let mut violations = Vec::new();
    for tuple in sampler.section_tuples(lhs.degree, config.trials) {
        let l = lhs.evaluate(&tuple).expect("tuple arity matches");
        let r = rhs.evaluate(&tuple).expect("tuple arity matches");
        if l != r {
            violations.push(json!({
                "args": tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "lhs": l.to_string(),
                "rhs": r.to_string(),
            }));
        }
    }
    violations
}

/// Graded Leibniz rule for the wedge product:
/// d^s(η1∧η2) = d^{s+l}η1 ∧ φ̄*α*(η2) + (−1)^k α*φ̄*-pulled η1 ∧ d^{s+k}η2.
pub fn check_leibniz(
    a: &AlgebroidCochain,
    b: &AlgebroidCochain,
    s: i64,
    config: &CheckConfig,
) -> Result<Report> {
    a.check_same(b)?;
    let (k, l) = (a.degree(), b.degree());
    let mut report = Report::new(format!("wedge differentiation rule, s = {s}"));

    let lhs = a.wedge(b)?.d(s)?;
    let term1 = a.d(s + l as i64)?.wedge(&b.alpha_star().phi_bar())?;
    let term2 = a.alpha_star().phi_bar().wedge(&b.d(s + k as i64)?)?;
    let sign = if k % 2 == 1 {
        Rational::from_integer((-1).into())
    } else {
        Rational::from_integer(1.into())
    };
    let rhs = AlgebroidCochain::sum(vec![
        (Rational::from_integer(1.into()), term1),
        (sign, term2),
    ])?;

    report.push_violations(
        format!("leibniz_k{k}_l{l}_s{s}"),
        disagreements(&lhs, &rhs, config),
    );
    Ok(report)
}

/// The two commutation identities tying d^s to the pullbacks:
/// α*∘d^s = d^s∘α* and φ̄*∘d^s = d^{s+1}∘φ̄*.
pub fn check_commutation(c: &AlgebroidCochain, s: i64, config: &CheckConfig) -> Result<Report> {
    let mut report = Report::new(format!("pullback commutation, s = {s}"));

    let lhs = c.d(s)?.alpha_star();
    let rhs = c.alpha_star().d(s)?;
    report.push_violations(
        format!("alpha_pullback_commutes_s{s}"),
        disagreements(&lhs, &rhs, config),
    );

    let lhs = c.d(s)?.phi_bar();
    let rhs = c.phi_bar().d(s + 1)?;
    report.push_violations(
        format!("substitution_shifts_twist_s{s}"),
        disagreements(&lhs, &rhs, config),
    );
    Ok(report)
}

/// Which linearity law to check. Each variant has a function law (its
/// distinguished differential of a function is plain-linear over functions)
/// and a dual law (the differential of a plain-linear 1-form is twisted-linear
/// in its arguments); the distinguished twist index is 0 for variant A and 1
/// for variant B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearityLaw {
    Function(Variant),
    Dual(Variant),
}

impl LinearityLaw {
    pub fn variant(&self) -> Variant {
        match self {
            LinearityLaw::Function(v) | LinearityLaw::Dual(v) => *v,
        }
    }

    fn s_index(&self) -> i64 {
        match self.variant() {
            Variant::A => 0,
            Variant::B => 1,
        }
    }

    /// Report label: conditions (iv)/(v) for variant A, 4)/5) for variant B.
    pub fn label(&self) -> &'static str {
        match self {
            LinearityLaw::Function(Variant::A) => "condition_iv",
            LinearityLaw::Dual(Variant::A) => "condition_v",
            LinearityLaw::Function(Variant::B) => "condition_4",
            LinearityLaw::Dual(Variant::B) => "condition_5",
        }
    }
}

impl std::str::FromStr for LinearityLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<LinearityLaw> {
        match s {
            "iv" => Ok(LinearityLaw::Function(Variant::A)),
            "v" => Ok(LinearityLaw::Dual(Variant::A)),
            "4" => Ok(LinearityLaw::Function(Variant::B)),
            "5" => Ok(LinearityLaw::Dual(Variant::B)),
            other => Err(Error::shape(format!("unknown linearity law `{other}`"))),
        }
    }
}

/// Checks one linearity law against the algebroid's own differential family.
/// The law must belong to the algebroid's variant; use
/// [`check_linearity_unchecked`] to probe a foreign law.
pub fn check_linearity(
    ab: &Arc<HomAlgebroid>,
    law: LinearityLaw,
    config: &CheckConfig,
) -> Result<Report> {
    if ab.variant() != law.variant() {
        return Err(Error::VariantMismatch(format!(
            "law {} belongs to variant {}, algebroid is variant {}",
            law.label(),
            law.variant(),
            ab.variant()
        )));
    }
    check_linearity_unchecked(ab, law, config)
}

/// The same check without the variant guard: evaluates the law's identities
/// directly, whatever the algebroid's native shape. The theorem-condition
/// driver uses this to show a law failing on foreign data.
pub fn check_linearity_unchecked(
    ab: &Arc<HomAlgebroid>,
    law: LinearityLaw,
    config: &CheckConfig,
) -> Result<Report> {
    let base = ab.base();
    let s = law.s_index();
    let mut report = Report::new(format!("linearity law {}", law.label()));
    let mut sampler = Sampler::new(base.clone(), ab.rank(), config.seed, config.max_degree);
    let functions = sampler.function_probes(config.trials);
    let sections = sampler.section_pool(config.trials);

    match law {
        LinearityLaw::Function(_) => {
            // d^s f (g·X) = g · d^s f (X): the distinguished differential of
            // a function is a plain-linear 1-form.
            let mut violations = Vec::new();
            for f in &functions {
                let df = AlgebroidCochain::function(ab.clone(), f.clone())?.d(s)?;
                for g in &functions {
                    for x in &sections {
                        let lhs = df.evaluate(std::slice::from_ref(&x.scale(g)))?;
                        let rhs = g * &df.evaluate(std::slice::from_ref(x))?;
                        if lhs != rhs {
                            violations.push(json!({
                                "f": f.to_string(),
                                "g": g.to_string(),
                                "X": x.to_string(),
                                "lhs": lhs.to_string(),
                                "rhs": rhs.to_string(),
                            }));
                        }
                    }
                }
            }
            report.push_violations(law.label(), violations);
        }
        LinearityLaw::Dual(_) => {
            // d^s ξ (f·X1, X2) = φ*(f) · d^s ξ (X1, X2) for plain-linear ξ.
            let mut violations = Vec::new();
            let mut duals = Vec::new();
            for i in 0..ab.rank() {
                duals.push(AlgebroidCochain::basis_dual(ab.clone(), i)?);
            }
            let mut components = BTreeMap::new();
            for i in 0..ab.rank() {
                components.insert(vec![i], sampler.random_poly());
            }
            duals.push(AlgebroidCochain::basis_form(ab.clone(), 1, 0, components)?);
            let pairs = sampler.section_tuples(2, config.trials);
            for xi in &duals {
                let dxi = xi.d(s)?;
                for f in &functions {
                    for pair in &pairs {
                        let lhs = dxi.evaluate(&[pair[0].scale(f), pair[1].clone()])?;
                        let rhs = &base.phi(f) * &dxi.evaluate(pair)?;
                        if lhs != rhs {
                            violations.push(json!({
                                "f": f.to_string(),
                                "X1": pair[0].to_string(),
                                "X2": pair[1].to_string(),
                                "lhs": lhs.to_string(),
                                "rhs": rhs.to_string(),
                            }));
                        }
                    }
                }
            }
            report.push_violations(law.label(), violations);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{tangent_plane, twisted_line};
    use crate::kernel::rational::rat_int;

    fn fx3() -> Arc<HomAlgebroid> {
        Arc::new(twisted_line())
    }

    fn p(ab: &Arc<HomAlgebroid>, s: &str) -> Poly {
        Poly::parse(s, ab.base().vars()).unwrap()
    }

    fn sec(ab: &Arc<HomAlgebroid>, coeffs: &[&str]) -> Section {
        let coeffs = coeffs.iter().map(|s| p(ab, s)).collect();
        Section::new(ab.base().clone(), coeffs).unwrap()
    }

    #[test]
    fn twisted_line_differential_values() {
        let ab = fx3();
        let e = ab.basis_section(0);
        let x = p(&ab, "x");
        let x2 = p(&ab, "x^2");

        let d0x = AlgebroidCochain::function(ab.clone(), x.clone())
            .unwrap()
            .d(0)
            .unwrap();
        assert_eq!(d0x.evaluate(&[e.clone()]).unwrap(), p(&ab, "1"));

        let d0x2 = AlgebroidCochain::function(ab.clone(), x2)
            .unwrap()
            .d(0)
            .unwrap();
        assert_eq!(d0x2.evaluate(&[e.clone()]).unwrap(), p(&ab, "2*x"));

        let d1x = AlgebroidCochain::function(ab.clone(), x)
            .unwrap()
            .d(1)
            .unwrap();
        assert_eq!(d1x.evaluate(&[e.clone()]).unwrap(), p(&ab, "-1"));

        let dual = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        assert_eq!(
            dual.alpha_star().evaluate(&[e.clone()]).unwrap(),
            p(&ab, "-1")
        );
    }

    #[test]
    fn wedge_of_plane_duals_is_determinant() {
        let ab = Arc::new(tangent_plane());
        let d1 = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        let d2 = AlgebroidCochain::basis_dual(ab.clone(), 1).unwrap();
        let w = d1.wedge(&d2).unwrap();
        let e1 = ab.basis_section(0);
        let e2 = ab.basis_section(1);
        assert_eq!(w.evaluate(&[e1.clone(), e2.clone()]).unwrap(), p(&ab, "1"));
        assert_eq!(w.evaluate(&[e2.clone(), e1.clone()]).unwrap(), p(&ab, "-1"));
        assert_eq!(w.evaluate(&[e1.clone(), e1.clone()]).unwrap(), p(&ab, "0"));
        // against general sections: a determinant of coefficients
        let a = sec(&ab, &["x", "y"]);
        let b = sec(&ab, &["1", "x"]);
        assert_eq!(w.evaluate(&[a, b]).unwrap(), p(&ab, "x^2 - y"));
    }

    #[test]
    fn wedge_with_self_vanishes_for_one_forms() {
        let ab = fx3();
        let xi = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        let w = xi.wedge(&xi).unwrap();
        let pairs = [
            [ab.basis_section(0), sec(&ab, &["x"])],
            [sec(&ab, &["x^2"]), sec(&ab, &["x + 1"])],
        ];
        for pair in pairs {
            assert!(w.evaluate(&pair).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_zero_wedge_is_product() {
        let ab = fx3();
        let f = AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap();
        let g = AlgebroidCochain::function(ab.clone(), p(&ab, "x + 1")).unwrap();
        let w = f.wedge(&g).unwrap();
        assert_eq!(w.degree(), 0);
        assert_eq!(w.evaluate(&[]).unwrap(), p(&ab, "x^2 + x"));
    }

    #[test]
    fn evaluation_alternates_and_is_additive() {
        let ab = Arc::new(tangent_plane());
        let mut components = BTreeMap::new();
        components.insert(vec![0, 1], p(&ab, "x*y + 1"));
        let eta = AlgebroidCochain::basis_form(ab.clone(), 2, 1, components).unwrap();
        let d_eta = eta.d(0).unwrap();

        let x = sec(&ab, &["x", "1"]);
        let y = sec(&ab, &["y", "x^2"]);
        let z = sec(&ab, &["1", "-1*x"]);
        let w = sec(&ab, &["x + y", "0"]);

        // swap arguments 1 and 3
        let v1 = d_eta.evaluate(&[x.clone(), y.clone(), z.clone()]).unwrap();
        let v2 = d_eta.evaluate(&[z.clone(), y.clone(), x.clone()]).unwrap();
        assert_eq!(v1, v2.neg());

        // additivity in the middle slot over constant combinations
        let sum = y.add(&w).unwrap();
        let v3 = d_eta.evaluate(&[x.clone(), sum, z.clone()]).unwrap();
        let v4 = d_eta.evaluate(&[x.clone(), w.clone(), z.clone()]).unwrap();
        assert_eq!(v3, &v1 + &v4);
    }

    #[test]
    fn d_squared_vanishes_on_fixture_cochains() {
        for ab in [fx3(), Arc::new(tangent_plane())] {
            let mut gens = vec![
                AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap(),
                AlgebroidCochain::function(ab.clone(), p(&ab, "x^2 + 1")).unwrap(),
            ];
            for i in 0..ab.rank() {
                gens.push(AlgebroidCochain::basis_dual(ab.clone(), i).unwrap());
                let mut components = BTreeMap::new();
                components.insert(vec![i], p(&ab, "x^2"));
                gens.push(AlgebroidCochain::basis_form(ab.clone(), 1, 1, components).unwrap());
            }
            let config = CheckConfig::default();
            for s in 0..=2 {
                for g in &gens {
                    let dd = g.d(s).unwrap().d(s).unwrap();
                    let zero = AlgebroidCochain::zero(ab.clone(), dd.degree());
                    let bad = disagreements(&dd, &zero, &config);
                    assert!(bad.is_empty(), "s = {s}: {bad:?}");
                }
            }
        }
    }

    #[test]
    fn leibniz_rule_on_functions_and_duals() {
        let ab = fx3();
        let f = AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap();
        let config = CheckConfig::default();
        // d^0(x·x) = 2x on e: the rule's degree-0 face
        let report = check_leibniz(&f, &f, 0, &config).unwrap();
        assert!(report.passed(), "{report}");

        let xi = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        for s in 0..=1 {
            let report = check_leibniz(&xi, &f, s, &config).unwrap();
            assert!(report.passed(), "{report}");
            let report = check_leibniz(&xi, &xi, s, &config).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn leibniz_with_zero_factor_is_trivially_exact() {
        let ab = fx3();
        let z = AlgebroidCochain::zero(ab.clone(), 1);
        let f = AlgebroidCochain::function(ab.clone(), p(&ab, "x^2")).unwrap();
        let report = check_leibniz(&z, &f, 0, &CheckConfig::default()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn commutation_identities_hold() {
        let ab = fx3();
        let config = CheckConfig::default();
        let x = AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap();
        let xi = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        for s in 0..=1 {
            for c in [&x, &xi] {
                let report = check_commutation(c, s, &config).unwrap();
                assert!(report.passed(), "{report}");
            }
        }
        // hand value behind the second identity: φ̄*(d^0 x)(e) = 1 and
        // d^1(φ̄* x)(e) = d^1(-x)(e) = 1
        let lhs = x.d(0).unwrap().phi_bar();
        let rhs = x.phi_bar().d(1).unwrap();
        let e = ab.basis_section(0);
        assert_eq!(lhs.evaluate(std::slice::from_ref(&e)).unwrap(), p(&ab, "1"));
        assert_eq!(rhs.evaluate(std::slice::from_ref(&e)).unwrap(), p(&ab, "1"));
    }

    #[test]
    fn pullbacks_distribute_over_wedge() {
        let ab = Arc::new(tangent_plane());
        let d1 = AlgebroidCochain::basis_dual(ab.clone(), 0).unwrap();
        let mut components = BTreeMap::new();
        components.insert(vec![1], p(&ab, "x + y"));
        let d2 = AlgebroidCochain::basis_form(ab.clone(), 1, 0, components).unwrap();
        let config = CheckConfig::default();

        let lhs = d1.wedge(&d2).unwrap().alpha_star();
        let rhs = d1.alpha_star().wedge(&d2.alpha_star()).unwrap();
        assert!(disagreements(&lhs, &rhs, &config).is_empty());

        let lhs = d1.wedge(&d2).unwrap().phi_bar();
        let rhs = d1.phi_bar().wedge(&d2.phi_bar()).unwrap();
        assert!(disagreements(&lhs, &rhs, &config).is_empty());
    }

    #[test]
    fn alpha_pullback_preserves_plain_linearity() {
        // α* of a twist-0 form stays plain-linear: probe the scaling law.
        let ab = fx3();
        let xi = AlgebroidCochain::basis_dual(ab.clone(), 0)
            .unwrap()
            .alpha_star();
        for f in ["x", "x^2 + 1"] {
            let f = p(&ab, f);
            for x in [ab.basis_section(0), sec(&ab, &["x - 1"])] {
                let lhs = xi.evaluate(std::slice::from_ref(&x.scale(&f))).unwrap();
                let rhs = &f * &xi.evaluate(std::slice::from_ref(&x)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn linearity_laws_native_and_foreign() {
        let ab = fx3();
        let config = CheckConfig::default();
        for law in [
            LinearityLaw::Function(Variant::A),
            LinearityLaw::Dual(Variant::A),
        ] {
            let report = check_linearity(&ab, law, &config).unwrap();
            assert!(report.passed(), "{report}");
        }
        // foreign law against native data must go through the unchecked door
        let err = check_linearity(&ab, LinearityLaw::Function(Variant::B), &config);
        assert!(matches!(err, Err(Error::VariantMismatch(_))));
        // and the twisted structure genuinely fails it
        let report =
            check_linearity_unchecked(&ab, LinearityLaw::Function(Variant::B), &config).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn function_law_witness_on_twisted_line() {
        // d^1 f (x·e) = φ*(x)·d^1 f (e) = -x·d^1 f (e) for the twisted line,
        // so the plain-linearity law of the other shape fails with g = x.
        let ab = fx3();
        let f = AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap();
        let d1f = f.d(1).unwrap();
        let e = ab.basis_section(0);
        let xe = sec(&ab, &["x"]);
        let at_e = d1f.evaluate(std::slice::from_ref(&e)).unwrap();
        let at_xe = d1f.evaluate(std::slice::from_ref(&xe)).unwrap();
        assert_eq!(at_e, p(&ab, "-1"));
        assert_eq!(at_xe, p(&ab, "x"));
        assert_eq!(at_xe, &ab.base().phi(&p(&ab, "x")) * &at_e);
        assert_ne!(at_xe, &p(&ab, "x") * &at_e);
    }

    #[test]
    fn arity_and_algebroid_mismatches_error() {
        let ab = fx3();
        let other = Arc::new(tangent_plane());
        let f = AlgebroidCochain::function(ab.clone(), p(&ab, "x")).unwrap();
        let d0f = f.d(0).unwrap();
        assert!(matches!(
            d0f.evaluate(&[]),
            Err(Error::ArityMismatch {
                expected: 1,
                got: 0
            })
        ));
        let foreign = AlgebroidCochain::basis_dual(other.clone(), 0).unwrap();
        assert!(f.wedge(&foreign).is_err());
        assert!(
            AlgebroidCochain::sum(vec![(rat_int(1), d0f.clone()), (rat_int(1), foreign),]).is_err()
        );
    }

    #[test]
    fn d_refuses_non_involutive_base() {
        use crate::kernel::base::BaseGeometry;
        use crate::kernel::poly::Vars;
        let vars = Vars::new(["x"]);
        let shift = Poly::parse("x + 1", &vars).unwrap();
        let base = Arc::new(BaseGeometry::new(vars.clone(), vec![shift]).unwrap());
        let ab = Arc::new(
            HomAlgebroid::new(
                base.clone(),
                1,
                vec![vec![Section::zero(base.clone(), 1)]],
                vec![vec![Poly::one(&vars)]],
                vec![vec![Poly::one(&vars)]],
                Variant::A,
            )
            .unwrap(),
        );
        let f = AlgebroidCochain::function(ab.clone(), Poly::variable(&vars, 0)).unwrap();
        assert!(matches!(f.d(0), Err(Error::Refused { .. })));
    }
}
