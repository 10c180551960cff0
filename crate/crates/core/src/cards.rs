//! Card codes for the SET and EvenQuads decks.
//!
//! SET cards live in GF(81) built on x^4+2x+2 with generator x: writing
//! g^k = c1*g^3 + c2*g^2 + c3*g + c4 gives the card coordinates (c1,c2,c3,c4)
//! as a high-degree-first trit string. EvenQuads cards live in GF(64) built
//! on x^6+x+1: the six binary coefficients, high degree first, are read two
//! at a time as base-4 digits (00,01,10,11 -> 0,1,2,3).
//!
//! The published tables arrange the codes by coset of the cap subgroup
//! (order 20 resp. 9); [`emit_set_table`] and [`emit_quads_table`] reproduce
//! that layout and re-verify every coset as a cap before rendering.

use std::fmt;

use serde::Serialize;

use crate::caps;
use crate::ffield::{default_field, FieldCtx, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CardsError {
    #[error("context mismatch: the {deck} deck requires {expected}, got {found}")]
    CtxMismatch {
        deck: &'static str,
        expected: String,
        found: String,
    },
    #[error("exponent {k} out of range; the {deck} deck has {max} nonzero cards")]
    ExponentOutOfRange { deck: &'static str, k: u32, max: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A card code: the generator exponent plus its digit rendering,
/// high-degree-first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardCode {
    pub exponent: u32,
    pub digits: Vec<u8>,
}

impl fmt::Display for CardCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A full deck table: one code list per coset, plus the one card no coset
/// reaches (the zero element).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CardTable {
    pub deck: String,
    pub cosets: Vec<Vec<String>>,
    pub leftover: String,
}

fn check_set_ctx(ctx: &FieldCtx) -> Result<(), CardsError> {
    let expected = "GF(81) mod x^4+2x+2, generator x";
    if ctx.p() != 3
        || ctx.n() != 4
        || ctx.modulus().coeffs() != [2, 2, 0, 0, 1]
        || ctx.generator().encoding() != 3
    {
        return Err(CardsError::CtxMismatch {
            deck: "set",
            expected: expected.to_string(),
            found: format!(
                "GF({}) mod {}, generator {}",
                ctx.q(),
                ctx.modulus(),
                ctx.poly_string(ctx.generator().encoding())
            ),
        });
    }
    Ok(())
}

fn check_quads_ctx(ctx: &FieldCtx) -> Result<(), CardsError> {
    let expected = "GF(64) mod x^6+x+1, generator x";
    if ctx.p() != 2
        || ctx.n() != 6
        || ctx.modulus().coeffs() != [1, 1, 0, 0, 0, 0, 1]
        || ctx.generator().encoding() != 2
    {
        return Err(CardsError::CtxMismatch {
            deck: "quads",
            expected: expected.to_string(),
            found: format!(
                "GF({}) mod {}, generator {}",
                ctx.q(),
                ctx.modulus(),
                ctx.poly_string(ctx.generator().encoding())
            ),
        });
    }
    Ok(())
}

/// The SET deck field, GF(81) on the published modulus.
pub fn set_ctx() -> FieldCtx {
    let ctx = default_field(3, 4).expect("GF(81) is constructible");
    check_set_ctx(&ctx).expect("default GF(81) matches the deck");
    ctx
}

/// The EvenQuads deck field, GF(64) on the published modulus.
pub fn quads_ctx() -> FieldCtx {
    let ctx = default_field(2, 6).expect("GF(64) is constructible");
    check_quads_ctx(&ctx).expect("default GF(64) matches the deck");
    ctx
}

/// Trit digits of an encoding, high degree first, as a 4-digit SET code.
fn set_digits(enc: u32) -> Vec<u8> {
    (0..4).rev().map(|i| (enc / 3u32.pow(i) % 3) as u8).collect()
}

/// Base-4 digits of an encoding, pairing the six bits high degree first.
fn quads_digits(enc: u32) -> Vec<u8> {
    (0..3)
        .rev()
        .map(|i| (enc >> (2 * i) & 0b11) as u8)
        .collect()
}

/// The 4-trit code of g^k in the SET deck, 0 <= k <= 79.
pub fn set_code(ctx: &FieldCtx, k: u32) -> Result<CardCode, CardsError> {
    check_set_ctx(ctx)?;
    if k > 79 {
        return Err(CardsError::ExponentOutOfRange {
            deck: "set",
            k,
            max: 80,
        });
    }
    Ok(CardCode {
        exponent: k,
        digits: set_digits(ctx.antilog_enc(k as u64)),
    })
}

/// The 3-digit base-4 code of g^k in the EvenQuads deck, 0 <= k <= 62.
pub fn quads_code(ctx: &FieldCtx, k: u32) -> Result<CardCode, CardsError> {
    check_quads_ctx(ctx)?;
    if k > 62 {
        return Err(CardsError::ExponentOutOfRange {
            deck: "quads",
            k,
            max: 63,
        });
    }
    Ok(CardCode {
        exponent: k,
        digits: quads_digits(ctx.antilog_enc(k as u64)),
    })
}

/// Inverse of [`set_code`]: digits back to the element encoding.
pub fn decode_set(digits: &[u8]) -> u32 {
    digits.iter().fold(0u32, |acc, &d| acc * 3 + d as u32)
}

/// Inverse of [`quads_code`]: digits back to the element encoding.
pub fn decode_quads(digits: &[u8]) -> u32 {
    digits.iter().fold(0u32, |acc, &d| acc * 4 + d as u32)
}

/// The four 20-card SET cosets: block r lists g^(4k+r) for k = 0..19, the
/// exponent increasing across each row of five and then down. Every block is
/// re-verified as a cap before the table is returned.
pub fn emit_set_table(ctx: &FieldCtx) -> Result<CardTable, CardsError> {
    check_set_ctx(ctx)?;
    let mut cosets = Vec::with_capacity(4);
    for r in 0..4u32 {
        let encs: Vec<u32> = (0..20).map(|k| ctx.antilog_enc((4 * k + r) as u64)).collect();
        let verdict = caps::is_cap_char3(ctx, &encs).expect("characteristic checked");
        assert!(verdict.verdict, "coset {r} of the order-20 subgroup must be a cap");
        cosets.push(encs.iter().map(|&e| code_string(&set_digits(e))).collect());
    }
    let table = CardTable {
        deck: "set".to_string(),
        cosets,
        leftover: "0000".to_string(),
    };
    assert_all_codes_distinct(&table, 81);
    Ok(table)
}

/// The seven 9-card EvenQuads cosets: row j lists g^(7m+j) for m = 0..8.
/// Every row is re-verified as a cap before the table is returned.
pub fn emit_quads_table(ctx: &FieldCtx) -> Result<CardTable, CardsError> {
    check_quads_ctx(ctx)?;
    let mut cosets = Vec::with_capacity(7);
    for j in 0..7u32 {
        let encs: Vec<u32> = (0..9).map(|m| ctx.antilog_enc((7 * m + j) as u64)).collect();
        let verdict = caps::is_cap_char2(ctx, &encs).expect("characteristic checked");
        assert!(verdict.verdict, "coset {j} of the order-9 subgroup must be a cap");
        cosets.push(encs.iter().map(|&e| code_string(&quads_digits(e))).collect());
    }
    let table = CardTable {
        deck: "quads".to_string(),
        cosets,
        leftover: "000".to_string(),
    };
    assert_all_codes_distinct(&table, 64);
    Ok(table)
}

fn code_string(digits: &[u8]) -> String {
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

fn assert_all_codes_distinct(table: &CardTable, deck_size: usize) {
    let mut all: Vec<&String> = table.cosets.iter().flatten().collect();
    all.push(&table.leftover);
    all.sort_unstable();
    all.dedup();
    assert_eq!(all.len(), deck_size, "codes must enumerate the deck exactly once");
}

impl CardTable {
    /// Plain-text rendering in the published layout: SET as four labeled
    /// 4x5 blocks, EvenQuads as seven labeled rows of nine.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.deck == "set" {
            for (r, coset) in self.cosets.iter().enumerate() {
                let label = if r == 0 {
                    "g^{4k}".to_string()
                } else {
                    format!("g^{{4k+{r}}}")
                };
                out.push_str(&label);
                out.push('\n');
                for row in coset.chunks(5) {
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
                out.push('\n');
            }
        } else {
            for (j, coset) in self.cosets.iter().enumerate() {
                out.push_str(&format!("j={j}  {}\n", coset.join(" ")));
            }
            out.push('\n');
        }
        out.push_str(&format!("leftover {}\n", self.leftover));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_code_examples() {
        let ctx = set_ctx();
        assert_eq!(set_code(&ctx, 0).unwrap().to_string(), "0001");
        assert_eq!(set_code(&ctx, 4).unwrap().to_string(), "0011");
        assert_eq!(set_code(&ctx, 3).unwrap().to_string(), "1000");
        assert!(matches!(
            set_code(&ctx, 80),
            Err(CardsError::ExponentOutOfRange { k: 80, .. })
        ));
    }

    #[test]
    fn quads_code_examples() {
        let ctx = quads_ctx();
        assert_eq!(quads_code(&ctx, 0).unwrap().to_string(), "001");
        assert_eq!(quads_code(&ctx, 7).unwrap().to_string(), "012");
        assert_eq!(quads_code(&ctx, 6).unwrap().to_string(), "003");
        assert!(quads_code(&ctx, 63).is_err());
    }

    #[test]
    fn wrong_context_is_rejected() {
        use crate::ffield::{FieldCtx, FieldSpec, Poly};
        // an irreducible but different modulus for GF(81)
        let other = FieldCtx::build(
            FieldSpec::new(3, 4, Poly::parse(3, "x^4+x+2").unwrap()).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            set_code(&other, 0),
            Err(CardsError::CtxMismatch { deck: "set", .. })
        ));
        let quads = quads_ctx();
        assert!(matches!(
            set_code(&quads, 0),
            Err(CardsError::CtxMismatch { .. })
        ));
    }

    #[test]
    fn set_table_first_rows() {
        let ctx = set_ctx();
        let table = emit_set_table(&ctx).unwrap();
        assert_eq!(
            table.cosets[0][..5],
            ["0001", "0011", "0121", "1001", "1022"].map(String::from)
        );
        assert_eq!(
            table.cosets[1][..5],
            ["0010", "0110", "1210", "0021", "0201"].map(String::from)
        );
        assert_eq!(table.leftover, "0000");
        assert_eq!(table.cosets.iter().flatten().count(), 80);
    }

    #[test]
    fn quads_table_rows() {
        let ctx = quads_ctx();
        let table = emit_quads_table(&ctx).unwrap();
        assert_eq!(
            table.cosets[0],
            ["001", "012", "110", "323", "130", "023", "322", "122", "133"].map(String::from)
        );
        assert_eq!(
            table.cosets[5],
            ["200", "011", "132", "013", "102", "233", "213", "113", "301"].map(String::from)
        );
        assert_eq!(table.leftover, "000");
    }

    #[test]
    fn codes_round_trip() {
        let ctx = set_ctx();
        for k in 0..80 {
            let code = set_code(&ctx, k).unwrap();
            assert_eq!(decode_set(&code.digits), ctx.antilog_enc(k as u64));
        }
        let ctx = quads_ctx();
        for k in 0..63 {
            let code = quads_code(&ctx, k).unwrap();
            assert_eq!(decode_quads(&code.digits), ctx.antilog_enc(k as u64));
        }
    }

    #[test]
    fn json_form() {
        let table = emit_quads_table(&quads_ctx()).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["deck"], "quads");
        assert_eq!(json["leftover"], "000");
        assert_eq!(json["cosets"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn text_layout() {
        let table = emit_set_table(&set_ctx()).unwrap();
        let text = table.to_text();
        assert!(text.starts_with("g^{4k}\n0001 0011 0121 1001 1022\n"));
        assert!(text.contains("g^{4k+3}\n"));
        assert!(text.ends_with("leftover 0000\n"));

        let qt = emit_quads_table(&quads_ctx()).unwrap().to_text();
        assert!(qt.starts_with("j=0  001 012 110 323 130 023 322 122 133\n"));
        assert!(qt.ends_with("leftover 000\n"));
    }
}
