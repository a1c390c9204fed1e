//! Human-readable rendering of field polynomials and witnesses, and the
//! JSON encoding used to print and re-parse them.
//!
//! Coefficients print balanced (residues above p/2 as negatives), so a
//! witness like `-X^6 - 2XY^5` reads the way it is usually written.

use fermat_syzygy::{CurveElem, FieldCtx, SyzygyWitness};
use serde_json::{json, Value};

use crate::report::json_u64;

fn push_monomial(out: &mut String, mag: u64, x: u64, y: u64, z: u64) {
    let vars: String = [("X", x), ("Y", y), ("Z", z)]
        .iter()
        .filter(|&&(_, e)| e > 0)
        .map(|&(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{}^{}", v, e)
            }
        })
        .collect();
    if vars.is_empty() {
        out.push_str(&mag.to_string());
    } else {
        if mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(&vars);
    }
}

/// Renders `(x_exp, y_exp, z_exp, coeff)` terms with balanced signs.
pub fn terms_string(terms: &[(u64, u64, u64, u64)], ctx: &FieldCtx) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let p = ctx.p();
    let mut out = String::new();
    for (i, &(x, y, z, c)) in terms.iter().enumerate() {
        let negative = c > p / 2 && p > 2;
        let mag = if negative { p - c } else { c };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        push_monomial(&mut out, mag, x, y, z);
    }
    out
}

/// Renders a curve element with parts in increasing Z-exponent and terms
/// in decreasing X-exponent within each part.
pub fn curve_elem_string(elem: &CurveElem, ctx: &FieldCtx) -> String {
    let mut terms = elem.monomials();
    terms.sort_by(|a, b| a.2.cmp(&b.2).then(b.0.cmp(&a.0)));
    terms_string(&terms, ctx)
}

pub fn witness_string(w: &SyzygyWitness, ctx: &FieldCtx) -> String {
    format!(
        "    F = {}\n    G = {}\n    H = {}",
        curve_elem_string(&w.coeff_x, ctx),
        curve_elem_string(&w.coeff_y, ctx),
        curve_elem_string(&w.coeff_z, ctx)
    )
}

fn elem_terms_json(elem: &CurveElem) -> Value {
    Value::Array(
        elem.monomials()
            .into_iter()
            .map(|(x, y, z, c)| {
                Value::Array(vec![json_u64(x), json_u64(y), json_u64(z), json_u64(c)])
            })
            .collect(),
    )
}

pub fn witness_to_json(w: &SyzygyWitness) -> Value {
    json!({
        "m": json_u64(w.m),
        "powers": w.powers.iter().map(|&a| json_u64(a)).collect::<Vec<_>>(),
        "d": json_u64(w.coeff_x.curve_degree()),
        "coeff_x": elem_terms_json(&w.coeff_x),
        "coeff_y": elem_terms_json(&w.coeff_y),
        "coeff_z": elem_terms_json(&w.coeff_z),
    })
}

fn value_u64(v: &Value) -> Option<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn parse_terms(v: &Value) -> Option<Vec<(u64, u64, u64, u64)>> {
    v.as_array()?
        .iter()
        .map(|t| {
            let quad = t.as_array()?;
            if quad.len() != 4 {
                return None;
            }
            Some((
                value_u64(&quad[0])?,
                value_u64(&quad[1])?,
                value_u64(&quad[2])?,
                value_u64(&quad[3])?,
            ))
        })
        .collect()
}

/// Parses a witness back from its JSON encoding; used to re-verify what
/// was printed.
pub fn witness_from_json(v: &Value, ctx: &FieldCtx) -> Result<SyzygyWitness, String> {
    let m = value_u64(v.get("m").ok_or("missing m")?).ok_or("bad m")?;
    let d = value_u64(v.get("d").ok_or("missing d")?).ok_or("bad d")?;
    let powers_json = v
        .get("powers")
        .and_then(Value::as_array)
        .ok_or("missing powers")?;
    if powers_json.len() != 3 {
        return Err("powers must have three entries".into());
    }
    let mut powers = [0u64; 3];
    for (i, pv) in powers_json.iter().enumerate() {
        powers[i] = value_u64(pv).ok_or("bad power")?;
    }
    let parse_elem = |key: &str, power: u64| -> Result<CurveElem, String> {
        let terms = parse_terms(v.get(key).ok_or_else(|| format!("missing {}", key))?)
            .ok_or_else(|| format!("bad terms in {}", key))?;
        let degree = m.saturating_sub(power);
        if terms.is_empty() {
            return Ok(CurveElem::zero(d, degree));
        }
        CurveElem::from_monomials(d, degree, &terms, ctx).map_err(|e| e.to_string())
    };
    Ok(SyzygyWitness {
        m,
        powers,
        coeff_x: parse_elem("coeff_x", powers[0])?,
        coeff_y: parse_elem("coeff_y", powers[1])?,
        coeff_z: parse_elem("coeff_z", powers[2])?,
    })
}
