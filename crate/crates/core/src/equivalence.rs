//! The bridge between an algebroid's structure data and its differential
//! calculus: build the d^s family, verify the family-level laws that
//! characterize each of the two shapes, reconstruct anchor and bracket back
//! from the family, round-trip, and convert one shape into the other.

use crate::algebroid::sampler::Sampler;
use crate::algebroid::{HomAlgebroid, Section, Variant};
use crate::calculus::{
    check_commutation, check_leibniz, check_linearity_unchecked, AlgebroidCochain, LinearityLaw,
};
use crate::error::{Error, Result};
use crate::kernel::derivation::TwistedDerivation;
use crate::kernel::poly::Poly;
use crate::report::{CheckConfig, Report, Status};
use serde_json::json;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The operator family d^s attached to one validated algebroid. Construction
/// goes through [`build_family`], which refuses structures failing their
/// axioms, so a held family certifies its algebroid.
pub struct DifferentialFamily {
    ab: Arc<HomAlgebroid>,
}

impl DifferentialFamily {
    pub fn algebroid(&self) -> &Arc<HomAlgebroid> {
        &self.ab
    }

    pub fn function(&self, f: Poly) -> Result<AlgebroidCochain> {
        AlgebroidCochain::function(self.ab.clone(), f)
    }

    pub fn basis_dual(&self, i: usize) -> Result<AlgebroidCochain> {
        AlgebroidCochain::basis_dual(self.ab.clone(), i)
    }

    /// d^s applied to a cochain over this family's algebroid.
    pub fn d(&self, s: i64, c: &AlgebroidCochain) -> Result<AlgebroidCochain> {
        if c.algebroid().as_ref() != self.ab.as_ref() {
            return Err(Error::shape(
                "cochain lives over a different algebroid".to_string(),
            ));
        }
        c.d(s)
    }
}

/// Validates the algebroid (base involution plus the full axiom battery) and
/// wraps it as a differential family; failures are returned as refusals
/// carrying the failing report.
pub fn build_family(ab: Arc<HomAlgebroid>, config: &CheckConfig) -> Result<DifferentialFamily> {
    let involution = ab.base().check_involution();
    if !involution.passed() {
        return Err(Error::Refused {
            context: "the base substitution must be an involution".to_string(),
            report: involution,
        });
    }
    let axioms = ab.check_axioms(config);
    if !axioms.passed() {
        return Err(Error::Refused {
            context: "the structure fails its defining axioms".to_string(),
            report: axioms,
        });
    }
    Ok(DifferentialFamily { ab })
}

/// Labeled generator cochains for the family-level sweeps: functions in
/// degree 0, dual-basis and random one-forms in degree 1, indicator and
/// random forms in higher degrees, with both twist flags represented.
fn condition_generators(
    ab: &Arc<HomAlgebroid>,
    config: &CheckConfig,
    sampler: &mut Sampler,
) -> Vec<(String, AlgebroidCochain)> {
    let vars = ab.base().vars();
    let mut gens = Vec::new();
    for j in 0..vars.len() {
        let name = vars.names()[j].clone();
        let f = AlgebroidCochain::function(ab.clone(), Poly::variable(vars, j))
            .expect("variable lives on the base");
        gens.push((format!("f={name}"), f));
    }
    let random = sampler.random_poly();
    gens.push((
        format!("f={random}"),
        AlgebroidCochain::function(ab.clone(), random).expect("random poly lives on the base"),
    ));

    if config.max_cochain_degree >= 1 {
        for i in 0..ab.rank() {
            gens.push((
                format!("dual_{}", i + 1),
                AlgebroidCochain::basis_dual(ab.clone(), i).expect("index in range"),
            ));
        }
        for twist in [0u8, 1u8] {
            let mut components = BTreeMap::new();
            for i in 0..ab.rank() {
                components.insert(vec![i], sampler.random_poly());
            }
            if !components.is_empty() {
                gens.push((
                    format!("random_1form_t{twist}"),
                    AlgebroidCochain::basis_form(ab.clone(), 1, twist, components)
                        .expect("validated keys"),
                ));
            }
        }
    }

    for degree in 2..=config.max_cochain_degree {
        let keys = increasing_keys(ab.rank(), degree);
        if keys.is_empty() {
            continue;
        }
        let ones: BTreeMap<Vec<usize>, Poly> =
            keys.iter().map(|k| (k.clone(), Poly::one(vars))).collect();
        gens.push((
            format!("indicator_{degree}form_t0"),
            AlgebroidCochain::basis_form(ab.clone(), degree, 0, ones).expect("validated keys"),
        ));
        let randoms: BTreeMap<Vec<usize>, Poly> = keys
            .iter()
            .map(|k| (k.clone(), sampler.random_poly()))
            .collect();
        gens.push((
            format!("random_{degree}form_t1"),
            AlgebroidCochain::basis_form(ab.clone(), degree, 1, randoms).expect("validated keys"),
        ));
    }
    gens
}

fn increasing_keys(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut key: Vec<usize> = (0..len).collect();
    if len > rank {
        return out;
    }
    loop {
        out.push(key.clone());
        // next combination in lexicographic order
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if key[pos] < rank - (len - pos) {
                key[pos] += 1;
                for q in pos + 1..len {
                    key[q] = key[q - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The condition labels differ between the two shapes: roman numerals for
/// variant A, arabic for variant B.
fn condition_label(variant: Variant, n: usize) -> String {
    match variant {
        Variant::A => {
            let roman = ["i", "ii", "iii", "iv", "v"][n - 1];
            format!("condition_{roman}")
        }
        Variant::B => format!("condition_{n}"),
    }
}

/// Verifies the five family-level laws of the given shape against the
/// family, whatever variant the underlying algebroid was built as. The first
/// three laws are shared between the shapes; the last two are the
/// shape-specific linearity laws of d^0 (variant A) resp. d^1 (variant B).
pub fn check_theorem_conditions(
    fam: &DifferentialFamily,
    variant: Variant,
    config: &CheckConfig,
) -> Report {
    let ab = fam.algebroid();
    let mut report = Report::new(format!(
        "family-level laws for shape {variant} (structure is variant {})",
        ab.variant()
    ));
    let mut sampler = Sampler::new(ab.base().clone(), ab.rank(), config.seed, config.max_degree);
    let gens = condition_generators(ab, config, &mut sampler);

    // 1st law: d^s ∘ d^s = 0.
    let mut violations = Vec::new();
    for s in config.s_range() {
        for (label, g) in &gens {
            let dd = g
                .d(s)
                .and_then(|dg| dg.d(s))
                .expect("family base is involutive");
            let mut tuples_sampler =
                Sampler::new(ab.base().clone(), ab.rank(), config.seed, config.max_degree);
            for tuple in tuples_sampler.section_tuples(dd.degree(), config.trials) {
                let v = dd.evaluate(&tuple).expect("arity matches");
                if !v.is_zero() {
                    violations.push(json!({
                        "s": s,
                        "generator": label,
                        "args": tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "residual": v.to_string(),
                    }));
                }
            }
        }
    }
    report.push_violations(condition_label(variant, 1), violations);

    // 2nd law: the graded Leibniz rule for the wedge product.
    let mut violations = Vec::new();
    for s in config.s_range() {
        for (la, a) in &gens {
            for (lb, b) in &gens {
                if a.degree() + b.degree() > config.max_cochain_degree {
                    continue;
                }
                let inner = check_leibniz(a, b, s, config).expect("same algebroid");
                if !inner.passed() {
                    let witness = inner.first_failure().and_then(|c| c.witness.clone());
                    violations.push(json!({
                        "s": s,
                        "left": la,
                        "right": lb,
                        "witness": witness,
                    }));
                }
            }
        }
    }
    report.push_violations(condition_label(variant, 2), violations);

    // 3rd law: the two pullback commutations.
    let mut violations = Vec::new();
    for s in config.s_range() {
        for (label, g) in &gens {
            let inner = check_commutation(g, s, config).expect("family base is involutive");
            for item in &inner.checks {
                if item.status == Status::Fail {
                    violations.push(json!({
                        "s": s,
                        "generator": label,
                        "identity": item.check,
                        "witness": item.witness,
                    }));
                }
            }
        }
    }
    report.push_violations(condition_label(variant, 3), violations);

    // 4th and 5th laws: the shape-specific linearity of the distinguished
    // differentials. Evaluated directly, with no variant guard: a family can
    // be probed against either shape's laws.
    let fun = check_linearity_unchecked(ab, LinearityLaw::Function(variant), config)
        .expect("family base is involutive");
    report.absorb("", fun);
    let dual = check_linearity_unchecked(ab, LinearityLaw::Dual(variant), config)
        .expect("family base is involutive");
    report.absorb("", dual);

    report
}

/// Reads the anchor back from the family. The defining relations are
/// ρ(X)(f) = φ*(d^0 f (X)) for shape A and ρ(X)(f) = d^1(φ*f)(X) for shape
/// B; evaluating on basis sections and coordinate functions yields the
/// stored coefficient rows. Requires the shape's function-linearity law,
/// since without it the relation does not pin down a derivation.
pub fn reconstruct_anchor(
    fam: &DifferentialFamily,
    variant: Variant,
    config: &CheckConfig,
) -> Result<Vec<TwistedDerivation>> {
    let ab = fam.algebroid();
    let gate = check_linearity_unchecked(ab, LinearityLaw::Function(variant), config)?;
    if !gate.passed() {
        return Err(Error::Refused {
            context: format!(
                "the family does not satisfy the shape-{variant} function-linearity law"
            ),
            report: gate,
        });
    }
    let rows = anchor_rows(fam, variant)?;
    rows.into_iter()
        .map(|row| TwistedDerivation::new(ab.base().clone(), row, 1))
        .collect()
}

/// The raw coefficient extraction behind [`reconstruct_anchor`], without the
/// linearity gate. Row i, column j holds the stored coefficient of ∂/∂x_j in
/// ρ(e_i), i.e. φ* of the anchor's value on the j-th coordinate.
fn anchor_rows(fam: &DifferentialFamily, variant: Variant) -> Result<Vec<Vec<Poly>>> {
    let ab = fam.algebroid();
    let base = ab.base();
    let vars = base.vars();
    let mut rows = Vec::with_capacity(ab.rank());
    for i in 0..ab.rank() {
        let e_i = ab.basis_section(i);
        let mut row = Vec::with_capacity(vars.len());
        for j in 0..vars.len() {
            let x_j = Poly::variable(vars, j);
            let value = match variant {
                // ρ(e_i)(x_j) = φ*(d^0 x_j (e_i)); the stored coefficient is
                // φ* of that, so the two applications cancel.
                Variant::A => fam
                    .d(0, &fam.function(x_j)?)?
                    .evaluate(std::slice::from_ref(&e_i))?,
                // ρ(e_i)(x_j) = d^1(φ* x_j)(e_i); stored coefficient is its φ*.
                Variant::B => base.phi(
                    &fam.d(1, &fam.function(base.phi(&x_j))?)?
                        .evaluate(std::slice::from_ref(&e_i))?,
                ),
            };
            row.push(value);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Reads the bracket back from the family by probing against every dual
/// basis form: the degree-1 face of the d^s display, solved for the bracket
/// term. Uses the anchor reconstructed first, so the same gate applies.
pub fn reconstruct_bracket(
    fam: &DifferentialFamily,
    variant: Variant,
    config: &CheckConfig,
) -> Result<Vec<Vec<Section>>> {
    let anchors = reconstruct_anchor(fam, variant, config)?;
    let ab = fam.algebroid();
    let base = ab.base();
    let s = match variant {
        Variant::A => 0,
        Variant::B => 1,
    };

    let mut duals = Vec::with_capacity(ab.rank());
    for k in 0..ab.rank() {
        duals.push(fam.d(s, &fam.basis_dual(k)?)?);
    }

    let mut table = Vec::with_capacity(ab.rank());
    for i in 0..ab.rank() {
        let e_i = ab.basis_section(i);
        let mut row = Vec::with_capacity(ab.rank());
        for j in 0..ab.rank() {
            let e_j = ab.basis_section(j);
            let mut coeffs = Vec::with_capacity(ab.rank());
            for k in 0..ab.rank() {
                // Dual values on the twisted basis images are table reads.
                let xi_alpha_j = &ab.alpha_sf()[j][k];
                let xi_alpha_i = &ab.alpha_sf()[i][k];
                let d_term = duals[k].evaluate(&[e_i.clone(), e_j.clone()])?;
                let value = match variant {
                    Variant::A => {
                        &(&anchors[i].apply(&base.phi(xi_alpha_j))
                            - &anchors[j].apply(&base.phi(xi_alpha_i)))
                            - &d_term
                    }
                    Variant::B => {
                        &(&base.phi(&anchors[i].apply(xi_alpha_j))
                            - &base.phi(&anchors[j].apply(xi_alpha_i)))
                            - &d_term
                    }
                };
                coeffs.push(value);
            }
            row.push(Section::new(base.clone(), coeffs)?);
        }
        table.push(row);
    }
    Ok(table)
}

/// Family → structure data → family: reconstructs under the algebroid's own
/// shape, demands exact equality with the stored tables, reruns the axiom
/// battery on the rebuilt algebroid, and verifies the intermediate exchange
/// identities the reconstruction is supposed to certify.
pub fn round_trip(ab: &Arc<HomAlgebroid>, config: &CheckConfig) -> Result<Report> {
    let fam = build_family(ab.clone(), config)?;
    let variant = ab.variant();
    let mut report = Report::new(format!("reconstruction round trip (variant {variant})"));

    let anchors = reconstruct_anchor(&fam, variant, config)?;
    let anchor_rows: Vec<Vec<Poly>> = anchors.iter().map(|d| d.coefficients().to_vec()).collect();
    let mut violations = Vec::new();
    for (i, (got, want)) in anchor_rows.iter().zip(ab.anchor_coeffs()).enumerate() {
        if *got != want {
            violations.push(json!({
                "row": i + 1,
                "reconstructed": got.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "stored": want.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }));
        }
    }
    report.push_violations("anchor_match", violations);

    let bracket = reconstruct_bracket(&fam, variant, config)?;
    let mut violations = Vec::new();
    for i in 0..ab.rank() {
        for j in 0..ab.rank() {
            if bracket[i][j] != ab.bracket_sf()[i][j] {
                violations.push(json!({
                    "pair": [i + 1, j + 1],
                    "reconstructed": bracket[i][j].to_string(),
                    "stored": ab.bracket_sf()[i][j].to_string(),
                }));
            }
        }
    }
    report.push_violations("bracket_match", violations);

    let rebuilt = Arc::new(HomAlgebroid::new(
        ab.base().clone(),
        ab.rank(),
        bracket,
        anchor_rows,
        ab.alpha_sf().clone(),
        variant,
    )?);
    let axioms = rebuilt.check_axioms(config);
    if axioms.passed() {
        report.push_pass("rebuilt_axioms");
    } else {
        let first = axioms.first_failure().expect("failed report has a failure");
        report.push_fail(
            "rebuilt_axioms",
            json!({ "check": first.check, "witness": first.witness }),
        );
    }

    exchange_identities(&rebuilt, config, &mut report);
    Ok(report)
}

/// The intermediate identities extracted during reconstruction, in their
/// displayed forms, checked directly on an algebroid:
/// anchor/twist exchange, the twist map being a bracket morphism, the
/// anchor/bracket exchange, the scaled-second-argument rule, and the twisted
/// Jacobi identity with the twist on the outer argument.
fn exchange_identities(ab: &Arc<HomAlgebroid>, config: &CheckConfig, report: &mut Report) {
    let base = ab.base();
    let mut sampler = Sampler::new(base.clone(), ab.rank(), config.seed, config.max_degree);
    let sections = sampler.section_pool(config.trials);
    let pairs = sampler.section_tuples(2, config.trials);
    let triples = sampler.section_tuples(3, config.trials);
    let functions = sampler.function_probes(config.trials);

    let anchor = |x: &Section, f: &Poly| ab.apply_anchor(x, f).expect("pool shares the base");
    let alpha = |x: &Section| ab.apply_alpha(x).expect("pool shares the base");
    let bracket = |x: &Section, y: &Section| ab.bracket(x, y).expect("pool shares the base");

    // ρ(α(X)) ∘ φ* = φ* ∘ ρ(X)
    let mut violations = Vec::new();
    for x in &sections {
        for f in &functions {
            let lhs = anchor(&alpha(x), &base.phi(f));
            let rhs = base.phi(&anchor(x, f));
            if lhs != rhs {
                violations.push(json!({ "X": x.to_string(), "f": f.to_string() }));
            }
        }
    }
    report.push_violations("anchor_twist_exchange", violations);

    // α[X,Y] = [α(X), α(Y)]
    let mut violations = Vec::new();
    for pair in &pairs {
        let lhs = alpha(&bracket(&pair[0], &pair[1]));
        let rhs = bracket(&alpha(&pair[0]), &alpha(&pair[1]));
        if lhs != rhs {
            violations.push(json!({
                "X": pair[0].to_string(),
                "Y": pair[1].to_string(),
            }));
        }
    }
    report.push_violations("twist_bracket_morphism", violations);

    // ρ(α(X))ρ(Y) − ρ(α(Y))ρ(X) = ρ([X,Y]) ∘ φ*
    let mut violations = Vec::new();
    for pair in &pairs {
        for f in &functions {
            let (x, y) = (&pair[0], &pair[1]);
            let lhs = &anchor(&alpha(x), &anchor(y, f)) - &anchor(&alpha(y), &anchor(x, f));
            let rhs = anchor(&bracket(x, y), &base.phi(f));
            if lhs != rhs {
                violations.push(json!({
                    "X": x.to_string(),
                    "Y": y.to_string(),
                    "f": f.to_string(),
                }));
            }
        }
    }
    report.push_violations("anchor_bracket_exchange", violations);

    // [X, fY] = φ*(f)[X,Y] + D(X)(f)·α(Y), with D the shape's correction
    // (ρ itself for variant A, ρ∘α for variant B).
    let mut violations = Vec::new();
    for pair in &pairs {
        for f in &functions {
            let (x, y) = (&pair[0], &pair[1]);
            let lhs = bracket(x, &y.scale(f));
            let d_x_f = match ab.variant() {
                Variant::A => anchor(x, f),
                Variant::B => anchor(&alpha(x), f),
            };
            let rhs = bracket(x, y)
                .scale(&base.phi(f))
                .add(&alpha(y).scale(&d_x_f))
                .expect("pool shares the base");
            if lhs != rhs {
                violations.push(json!({
                    "X": x.to_string(),
                    "f": f.to_string(),
                    "Y": y.to_string(),
                }));
            }
        }
    }
    report.push_violations("scaled_second_argument", violations);

    // [[X,Y], α(Z)] + [[Y,Z], α(X)] + [[Z,X], α(Y)] = 0
    let mut violations = Vec::new();
    for t in &triples {
        let mut total = Section::zero(base.clone(), ab.rank());
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let term = bracket(&bracket(&t[a], &t[b]), &alpha(&t[c]));
            total = total.add(&term).expect("pool shares the base");
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
    report.push_violations("twisted_jacobi", violations);
}

/// Determinant by Laplace expansion; fine at the ranks involved.
fn poly_det(m: &[Vec<Poly>], vars: &crate::kernel::poly::Vars) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &poly_det(&minor, vars);
        det = if j % 2 == 1 {
            &det - &term
        } else {
            &det + &term
        };
    }
    det
}

/// Inverse of a square polynomial matrix whose determinant is a nonzero
/// constant (the only case in which the inverse stays polynomial). Returns
/// None otherwise.
fn unit_inverse(m: &[Vec<Poly>], vars: &crate::kernel::poly::Vars) -> Option<Vec<Vec<Poly>>> {
    let n = m.len();
    let det = poly_det(m, vars);
    let c = det.as_constant()?;
    if num_traits::Zero::is_zero(&c) {
        return None;
    }
    let inv_c = c.recip();
    let mut inv = vec![vec![Poly::zero(vars); n]; n];
    for i in 0..n {
        for j in 0..n {
            // adjugate: cofactor of (j, i)
            let minor: Vec<Vec<Poly>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let mut cof = poly_det(&minor, vars);
            if (i + j) % 2 == 1 {
                cof = cof.neg();
            }
            inv[i][j] = cof.scale(&inv_c);
        }
    }
    Some(inv)
}

/// Rewrites the structure as the other shape over the same base, rank, twist
/// matrix, and bracket table. Only the anchor changes: the target's basis
/// anchors are the source anchor of the twist-inverted (resp. twisted) basis
/// images, which at the coefficient level is multiplication by the
/// substituted inverse (resp. forward) twist matrix. Demands an invertible
/// twist matrix (unit determinant over the polynomial base) and validates
/// the result against the target shape's axioms and family laws.
pub fn convert(
    ab: &Arc<HomAlgebroid>,
    target: Variant,
    config: &CheckConfig,
) -> Result<(Arc<HomAlgebroid>, Report)> {
    // Gate on the source being valid at all.
    let _ = build_family(ab.clone(), config)?;
    let base = ab.base();
    let vars = base.vars();
    let mut report = Report::new(format!("conversion {} -> {target}", ab.variant()));

    let transform: Option<Vec<Vec<Poly>>> = if target == ab.variant() {
        None
    } else {
        let m = ab.alpha_sf();
        let matrix = match target {
            // ρ_B(e_i) := ρ_A(α^{-1}(e_i))
            Variant::B => {
                let Some(inv) = unit_inverse(m, vars) else {
                    let mut gate = Report::new("conversion preconditions");
                    gate.push_fail(
                        "twist_matrix_unit_determinant",
                        json!({ "determinant": poly_det(m, vars).to_string() }),
                    );
                    return Err(Error::Refused {
                        context: "the twist matrix is not invertible over the base".to_string(),
                        report: gate,
                    });
                };
                inv
            }
            // ρ_A(e_i) := ρ_B(α(e_i))
            Variant::A => m.clone(),
        };
        Some(matrix)
    };
    report.push_pass("twist_matrix_unit_determinant");

    let anchor = match &transform {
        None => ab.anchor_coeffs(),
        Some(matrix) => {
            // Pulling a plain coefficient inside a twist-1 derivation picks
            // up one substitution: the effective factor is φ* of the matrix.
            let source = ab.anchor_coeffs();
            let mut rows = vec![vec![Poly::zero(vars); vars.len()]; ab.rank()];
            for i in 0..ab.rank() {
                for l in 0..vars.len() {
                    let mut entry = Poly::zero(vars);
                    for (j, src_row) in source.iter().enumerate() {
                        let factor = base.phi(&matrix[i][j]);
                        if !factor.is_zero() && !src_row[l].is_zero() {
                            entry = &entry + &(&factor * &src_row[l]);
                        }
                    }
                    rows[i][l] = entry;
                }
            }
            rows
        }
    };

    let converted = Arc::new(HomAlgebroid::new(
        base.clone(),
        ab.rank(),
        ab.bracket_sf().clone(),
        anchor,
        ab.alpha_sf().clone(),
        target,
    )?);

    let axioms = converted.check_axioms(config);
    if !axioms.passed() {
        return Err(Error::Refused {
            context: format!("the converted structure fails the shape-{target} axioms"),
            report: axioms,
        });
    }
    report.push_pass("target_axioms");

    let fam = DifferentialFamily {
        ab: converted.clone(),
    };
    let conditions = check_theorem_conditions(&fam, target, config);
    if !conditions.passed() {
        return Err(Error::Refused {
            context: format!("the converted structure fails the shape-{target} family laws"),
            report: conditions,
        });
    }
    report.push_pass("target_family_laws");

    Ok((converted, report))
}
