//! JSON instance files, cochain literals, and section expressions.
//!
//! Two instance kinds share one loader. A finite-dimensional instance is
//! `{"dim": n, "c": [[[q]]], "alpha": [[q]]}` with rational strings, plus
//! optional `"dimV"`, `"rho"`, `"beta"` fields for an action. An algebroid
//! instance is `{"base": {"vars": [...], "phi": [...]}, "rank": r,
//! "alpha": [[p]], "anchor": [[p]], "bracket": [[[p]]], "variant": "A"|"B"}`
//! with polynomial strings. Emission uses canonical polynomial text, so a
//! loaded file re-emits byte-identically once its strings are canonical.

use std::collections::BTreeMap;
use std::sync::Arc;

use homlie_core::algebroid::{HomAlgebroid, Section, Variant};
use homlie_core::calculus::AlgebroidCochain;
use homlie_core::fixtures;
use homlie_core::homlie::{HomLieAlgebra, Representation};
use homlie_core::kernel::base::BaseGeometry;
use homlie_core::kernel::linalg::QMatrix;
use homlie_core::kernel::poly::{Poly, Vars};
use homlie_core::kernel::rational::{parse_rational, Rational};
use homlie_core::{Error, Result};
use serde_json::{json, Map, Value};

pub enum LoadedInstance {
    HomLie {
        algebra: Arc<HomLieAlgebra>,
        rep: Option<Representation>,
    },
    Algebroid(Arc<HomAlgebroid>),
}

impl LoadedInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedInstance::HomLie { rep: None, .. } => "hom-lie algebra",
            LoadedInstance::HomLie { rep: Some(_), .. } => "hom-lie algebra with action",
            LoadedInstance::Algebroid(_) => "algebroid",
        }
    }
}

/// Resolves `--input` / `--builtin` to an instance. `builtin:NAME` works as
/// an input path too.
pub fn load(input: Option<&str>, builtin: Option<&str>) -> Result<LoadedInstance> {
    match (input, builtin) {
        (Some(_), Some(_)) => Err(Error::parse(
            0,
            "give either --input or --builtin, not both".to_string(),
        )),
        (None, None) => Err(Error::parse(
            0,
            "an instance is required: --input FILE or --builtin NAME".to_string(),
        )),
        (Some(path), None) => {
            if let Some(name) = path.strip_prefix("builtin:") {
                load_builtin(name)
            } else {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::parse(0, format!("cannot read {path}: {e}")))?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| Error::parse(0, format!("{path}: {e}")))?;
                load_value(&value)
            }
        }
        (None, Some(name)) => load_builtin(name),
    }
}

fn load_builtin(name: &str) -> Result<LoadedInstance> {
    if let Some(ab) = fixtures::builtin_algebroid(name) {
        return Ok(LoadedInstance::Algebroid(Arc::new(ab)));
    }
    if let Some((algebra, rep)) = fixtures::builtin_homlie(name) {
        return Ok(LoadedInstance::HomLie {
            algebra: Arc::new(algebra),
            rep: Some(rep),
        });
    }
    let mut names: Vec<&str> = fixtures::ALGEBROID_BUILTINS.to_vec();
    names.extend(fixtures::HOMLIE_BUILTINS);
    Err(Error::parse(
        0,
        format!("unknown builtin {name:?}; available: {}", names.join(", ")),
    ))
}

fn load_value(value: &Value) -> Result<LoadedInstance> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(0, "instance file must be a JSON object".to_string()))?;
    if obj.contains_key("rank") || obj.contains_key("base") {
        Ok(LoadedInstance::Algebroid(Arc::new(parse_algebroid(obj)?)))
    } else if obj.contains_key("dim") {
        let (algebra, rep) = parse_homlie(obj)?;
        Ok(LoadedInstance::HomLie { algebra, rep })
    } else {
        Err(Error::parse(
            0,
            "unrecognized instance: expected \"dim\" (algebra) or \"base\"/\"rank\" (algebroid)"
                .to_string(),
        ))
    }
}

fn field<'v>(obj: &'v Map<String, Value>, name: &str) -> Result<&'v Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(0, format!("missing field {name:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(0, format!("{what} must be a non-negative integer")))
}

fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::parse(0, format!("{path}: expected a rational string")))?;
    parse_rational(s, 0).map_err(|e| Error::parse(0, format!("{path}: {e}")))
}

fn poly_at(v: &Value, vars: &Vars, path: &str) -> Result<Poly> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::parse(0, format!("{path}: expected a polynomial string")))?;
    Poly::parse(s, vars).map_err(|e| Error::parse(0, format!("{path}: {e}")))
}

fn rational_matrix(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse(0, format!("{what} must be a matrix of rational strings")))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::parse(0, format!("{what}[{}] must be an array", i + 1)))?;
        let mut r = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            r.push(rational_at(cell, &format!("{what}[{}][{}]", i + 1, j + 1))?);
        }
        out.push(r);
    }
    Ok(out)
}

fn parse_homlie(obj: &Map<String, Value>) -> Result<(Arc<HomLieAlgebra>, Option<Representation>)> {
    let dim = as_usize(field(obj, "dim")?, "dim")?;
    let c_rows = field(obj, "c")?
        .as_array()
        .ok_or_else(|| Error::parse(0, "c must be a dim x dim x dim array".to_string()))?;
    let mut c = Vec::with_capacity(c_rows.len());
    for (i, row) in c_rows.iter().enumerate() {
        c.push(rational_matrix(row, &format!("c[{}]", i + 1))?);
    }
    if c.len() != dim {
        return Err(Error::parse(
            0,
            format!("c has {} rows for dim {dim}", c.len()),
        ));
    }
    let alpha = QMatrix::from_rows(rational_matrix(field(obj, "alpha")?, "alpha")?)?;
    let algebra = Arc::new(HomLieAlgebra::new(c, alpha)?);

    let rep = if obj.contains_key("dimV") || obj.contains_key("rho") || obj.contains_key("beta") {
        let dim_v = as_usize(field(obj, "dimV")?, "dimV")?;
        let rho_list = field(obj, "rho")?
            .as_array()
            .ok_or_else(|| Error::parse(0, "rho must be a list of matrices".to_string()))?;
        let mut rho = Vec::with_capacity(rho_list.len());
        for (i, m) in rho_list.iter().enumerate() {
            rho.push(QMatrix::from_rows(rational_matrix(
                m,
                &format!("rho[{}]", i + 1),
            )?)?);
        }
        let beta = QMatrix::from_rows(rational_matrix(field(obj, "beta")?, "beta")?)?;
        if beta.n_rows() != dim_v {
            return Err(Error::parse(
                0,
                format!(
                    "beta is {}x{} but dimV is {dim_v}",
                    beta.n_rows(),
                    beta.n_cols()
                ),
            ));
        }
        Some(Representation::new(algebra.clone(), rho, beta)?)
    } else {
        None
    };
    Ok((algebra, rep))
}

fn parse_algebroid(obj: &Map<String, Value>) -> Result<HomAlgebroid> {
    let base_obj = field(obj, "base")?
        .as_object()
        .ok_or_else(|| Error::parse(0, "base must be an object".to_string()))?;
    let var_names: Vec<String> = field(base_obj, "vars")?
        .as_array()
        .ok_or_else(|| Error::parse(0, "base.vars must be an array of names".to_string()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::parse(0, "base.vars entries must be strings".to_string()))
        })
        .collect::<Result<_>>()?;
    let vars = Vars::new(var_names);
    let phi_entries = field(base_obj, "phi")?
        .as_array()
        .ok_or_else(|| Error::parse(0, "base.phi must be an array of polynomials".to_string()))?;
    let mut phi = Vec::with_capacity(phi_entries.len());
    for (j, entry) in phi_entries.iter().enumerate() {
        phi.push(poly_at(entry, &vars, &format!("base.phi[{}]", j + 1))?);
    }
    let base = Arc::new(BaseGeometry::new(vars.clone(), phi)?);

    let rank = as_usize(field(obj, "rank")?, "rank")?;
    let variant: Variant = field(obj, "variant")?
        .as_str()
        .ok_or_else(|| Error::parse(0, "variant must be \"A\" or \"B\"".to_string()))?
        .parse()?;

    let poly_matrix = |v: &Value, what: &str| -> Result<Vec<Vec<Poly>>> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::parse(0, format!("{what} must be a matrix")))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::parse(0, format!("{what}[{}] must be an array", i + 1)))?;
            let mut r = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                r.push(poly_at(
                    cell,
                    &vars,
                    &format!("{what}[{}][{}]", i + 1, j + 1),
                )?);
            }
            out.push(r);
        }
        Ok(out)
    };

    let alpha_sf = poly_matrix(field(obj, "alpha")?, "alpha")?;
    let anchor = poly_matrix(field(obj, "anchor")?, "anchor")?;

    let bracket_rows = field(obj, "bracket")?
        .as_array()
        .ok_or_else(|| Error::parse(0, "bracket must be a rank x rank table".to_string()))?;
    let mut bracket = Vec::with_capacity(bracket_rows.len());
    for (i, row) in bracket_rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::parse(0, format!("bracket[{}] must be an array", i + 1)))?;
        let mut r = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            let comps = cell.as_array().ok_or_else(|| {
                Error::parse(
                    0,
                    format!(
                        "bracket[{}][{}] must be an array of {rank} polynomials",
                        i + 1,
                        j + 1
                    ),
                )
            })?;
            let mut coeffs = Vec::with_capacity(comps.len());
            for (k, comp) in comps.iter().enumerate() {
                coeffs.push(poly_at(
                    comp,
                    &vars,
                    &format!("bracket[{}][{}][{}]", i + 1, j + 1, k + 1),
                )?);
            }
            r.push(Section::new(base.clone(), coeffs)?);
        }
        bracket.push(r);
    }

    HomAlgebroid::new(base, rank, bracket, anchor, alpha_sf, variant)
}

/// Canonical emission: polynomial and rational strings in display form, keys
/// in a fixed order (alphabetical, as serialized).
pub fn emit_algebroid(ab: &HomAlgebroid) -> Value {
    let base = ab.base();
    let poly_rows = |rows: &[Vec<Poly>]| -> Value {
        Value::Array(
            rows.iter()
                .map(|row| Value::Array(row.iter().map(|p| Value::String(p.to_string())).collect()))
                .collect(),
        )
    };
    let bracket = Value::Array(
        ab.bracket_sf()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|section| {
                            Value::Array(
                                section
                                    .coeffs()
                                    .iter()
                                    .map(|p| Value::String(p.to_string()))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    json!({
        "base": {
            "vars": base.vars().names(),
            "phi": base.phi_images().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        },
        "rank": ab.rank(),
        "alpha": poly_rows(ab.alpha_sf()),
        "anchor": poly_rows(&ab.anchor_coeffs()),
        "bracket": bracket,
        "variant": ab.variant().to_string(),
    })
}

/// Cochain literal: `{"kind": "function", "poly": "x^2"}` or
/// `{"kind": "basis", "k": 2, "twist": 0, "components": {"1,2": "x"}}` with
/// 1-based comma-separated index keys.
pub fn parse_cochain(ab: &Arc<HomAlgebroid>, text: &str) -> Result<AlgebroidCochain> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(0, format!("cochain literal: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(0, "cochain literal must be a JSON object".to_string()))?;
    let kind = field(obj, "kind")?
        .as_str()
        .ok_or_else(|| Error::parse(0, "kind must be a string".to_string()))?;
    match kind {
        "function" => {
            let poly = poly_at(field(obj, "poly")?, ab.base().vars(), "poly")?;
            AlgebroidCochain::function(ab.clone(), poly)
        }
        "basis" => {
            let k = as_usize(field(obj, "k")?, "k")?;
            let twist = as_usize(field(obj, "twist")?, "twist")? as u8;
            let comp_obj = field(obj, "components")?
                .as_object()
                .ok_or_else(|| Error::parse(0, "components must be an object".to_string()))?;
            let mut components = BTreeMap::new();
            for (key, value) in comp_obj {
                let mut indices = Vec::new();
                for part in key.split(',') {
                    let n: usize = part.trim().parse().map_err(|_| {
                        Error::parse(0, format!("component key {key:?}: bad index {part:?}"))
                    })?;
                    if n == 0 {
                        return Err(Error::parse(
                            0,
                            format!("component key {key:?}: indices are 1-based"),
                        ));
                    }
                    indices.push(n - 1);
                }
                let poly = poly_at(value, ab.base().vars(), &format!("components[{key:?}]"))?;
                components.insert(indices, poly);
            }
            AlgebroidCochain::basis_form(ab.clone(), k, twist, components)
        }
        other => Err(Error::parse(
            0,
            format!("unknown cochain kind {other:?}; expected \"function\" or \"basis\""),
        )),
    }
}

/// Section list `[e1, x*e1 + 2*e2, -e1]`: comma-separated sums of
/// monomial-scaled basis symbols `eN` (1-based).
pub fn parse_sections(ab: &Arc<HomAlgebroid>, text: &str) -> Result<Vec<Section>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, format!("section list must be bracketed: {text:?}")))?;
    let mut sections = Vec::new();
    let parts: Vec<&str> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').collect()
    };
    for part in parts {
        sections.push(parse_section(ab, part)?);
    }
    Ok(sections)
}

fn parse_section(ab: &Arc<HomAlgebroid>, text: &str) -> Result<Section> {
    let vars = ab.base().vars();
    let mut coeffs = vec![Poly::zero(vars); ab.rank()];
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut seen_any = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((negative, current.trim().to_string()));
                current = String::new();
                negative = ch == '-';
            }
            '-' if current.trim().is_empty() => {
                negative = !negative;
                seen_any = true;
            }
            '+' if current.trim().is_empty() => {
                seen_any = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                current.push(ch);
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(Error::parse(
            0,
            format!("empty section expression: {text:?}"),
        ));
    }

    for (negative, term) in terms {
        // each term ends in a basis symbol eN, optionally prefixed by `poly*`
        let star = term.rfind('*');
        let (prefix, atom) = match star {
            Some(pos) if term[pos + 1..].trim().starts_with('e') => {
                (term[..pos].trim(), term[pos + 1..].trim())
            }
            _ => ("", term.trim()),
        };
        let index_text = atom.strip_prefix('e').ok_or_else(|| {
            Error::parse(
                0,
                format!("section term {term:?} must end in a basis symbol like e1"),
            )
        })?;
        let index: usize = index_text
            .parse()
            .map_err(|_| Error::parse(0, format!("bad basis symbol {atom:?}")))?;
        if index == 0 || index > ab.rank() {
            return Err(Error::parse(
                0,
                format!("basis symbol {atom:?} out of range for rank {}", ab.rank()),
            ));
        }
        let mut coefficient = if prefix.is_empty() {
            Poly::one(vars)
        } else {
            Poly::parse(prefix, vars)?
        };
        if negative {
            coefficient = coefficient.neg();
        }
        coeffs[index - 1] = &coeffs[index - 1] + &coefficient;
    }
    Section::new(ab.base().clone(), coeffs)
}
