//! wasm-bindgen bindings for the browser demo. Each export builds the field,
//! runs the requested check and returns a JSON string; the page in `www/`
//! renders it. Errors surface as JS exceptions with the library's error
//! messages.

use wasm_bindgen::prelude::*;

use gfcaps::caps;
use gfcaps::cards;
use gfcaps::cosetsearch;
use gfcaps::ffield::{default_field, FieldCtx};
use gfcaps::groups;
use serde_json::json;

fn err<E: std::fmt::Display>(e: E) -> JsError {
    JsError::new(&e.to_string())
}

fn field_json(ctx: &FieldCtx) -> serde_json::Value {
    json!({
        "p": ctx.p(),
        "n": ctx.n(),
        "q": ctx.q(),
        "modulus": ctx.modulus().to_string(),
        "generator": ctx.poly_string(ctx.generator().encoding()),
    })
}

/// Divisor-by-divisor cap scan of GF(p^n) with the default modulus.
#[wasm_bindgen]
pub fn scan(p: u32, n: u32) -> Result<String, JsError> {
    let ctx = default_field(p, n).map_err(err)?;
    let rows = cosetsearch::subgroup_cap_scan(&ctx).map_err(err)?;
    Ok(json!({ "field": field_json(&ctx), "rows": rows }).to_string())
}

/// Cap / strong-structure / (optional) completeness verdict for the order-d
/// subgroup of GF(p^n).
#[wasm_bindgen]
pub fn verify(p: u32, n: u32, d: u32, check_complete: bool) -> Result<String, JsError> {
    let ctx = default_field(p, n).map_err(err)?;
    let g = groups::subgroup_of_order(&ctx, d).map_err(err)?;
    let cap = caps::is_cap(&ctx, g.elements()).map_err(err)?;
    let strong = match ctx.p() {
        3 => caps::strong_structure_char3(&ctx, &g).map_err(err)?,
        _ => caps::strong_structure_char2(&ctx, &g).map_err(err)?,
    };
    let arity = if ctx.p() == 3 { 3 } else { 4 };
    let completeness = if check_complete && cap.verdict {
        let naive = caps::is_complete_naive(&ctx, g.elements(), arity).map_err(err)?;
        let reduced = caps::is_complete_subgroup_reduced(&ctx, &g, arity).map_err(err)?;
        Some(json!({
            "naive": naive.complete,
            "generator_reduced": reduced.complete,
            "agree": naive.complete == reduced.complete,
        }))
    } else {
        None
    };
    let pass = cap.verdict
        && strong
        && completeness
            .as_ref()
            .is_none_or(|c| c["naive"] == true && c["agree"] == true);
    Ok(json!({
        "field": field_json(&ctx),
        "d": g.d(),
        "e": g.e(),
        "cap": {
            "verdict": cap.verdict,
            "set_size": cap.set_size,
            "distinct_zero_sum_count": cap.distinct_zero_sum_count,
            "witness": cap.witness.as_ref().map(|w| caps::witness_elems(&ctx, w)),
        },
        "strong": strong,
        "completeness": completeness,
        "pass": pass,
    })
    .to_string())
}

/// The coset card table for "set" or "quads".
#[wasm_bindgen]
pub fn card_table(deck: &str) -> Result<String, JsError> {
    let table = match deck {
        "set" => cards::emit_set_table(&cards::set_ctx()).map_err(err)?,
        "quads" => cards::emit_quads_table(&cards::quads_ctx()).map_err(err)?,
        other => return Err(JsError::new(&format!("unknown deck {other:?}"))),
    };
    serde_json::to_string(&table).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_return_valid_json() {
        let v: serde_json::Value = serde_json::from_str(&scan(3, 4).unwrap()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 10);

        let v: serde_json::Value =
            serde_json::from_str(&verify(3, 4, 20, true).unwrap()).unwrap();
        assert_eq!(v["pass"], true);

        let v: serde_json::Value = serde_json::from_str(&card_table("quads").unwrap()).unwrap();
        assert_eq!(v["leftover"], "000");
    }
}
