use gcover_group::{Elem, GroupTable};

use super::{Move, SlotRange, Step};
use crate::block::split_top_level;
use crate::error::CalcError;

fn bad(text: &str, why: &str) -> CalcError {
    CalcError::Parse(format!("{why} in move {text:?}"))
}

fn id_with_prefix(text: &str, token: &str, prefix: char) -> Result<u32, CalcError> {
    token
        .trim()
        .strip_prefix(prefix)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(text, &format!("expected {prefix}<id>, found {token:?}")))
}

fn keyed<'a>(text: &str, token: &'a str, key: &str) -> Result<&'a str, CalcError> {
    token
        .trim()
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| bad(text, &format!("expected {key}=..., found {token:?}")))
}

fn elem(group: &GroupTable, text: &str, token: &str) -> Result<Elem, CalcError> {
    group.parse_elem(token.trim()).map_err(|e| bad(text, &e.to_string()))
}

fn range(text: &str, token: &str) -> Result<SlotRange, CalcError> {
    let (lo, hi) = token.split_once("..").ok_or_else(|| bad(text, "expected a..b range"))?;
    let lo = lo.trim().parse().map_err(|_| bad(text, "bad range start"))?;
    let hi = hi.trim().parse().map_err(|_| bad(text, "bad range end"))?;
    Ok(SlotRange::new(lo, hi))
}

/// Parse one step such as `B@b3#2`, `P@b0,x=[2,1,3]` or `Z@b1!`.
pub fn parse_step(group: &GroupTable, text: &str) -> Result<Step, CalcError> {
    let t = text.trim();
    let (body, inverse) = match t.strip_suffix('!') {
        Some(b) => (b, true),
        None => (t, false),
    };
    let (kind, args) = body.split_once('@').ok_or_else(|| bad(text, "missing '@'"))?;
    let parts = split_top_level(args);
    let arity = |want: usize| -> Result<(), CalcError> {
        if parts.len() == want {
            Ok(())
        } else {
            Err(bad(text, &format!("expected {want} comma-separated fields")))
        }
    };
    let mv = match kind.trim() {
        "Z" => {
            arity(1)?;
            Move::Z { block: id_with_prefix(text, parts[0], 'b')? }
        }
        "B" => {
            arity(1)?;
            let (b, i) = parts[0].split_once('#').ok_or_else(|| bad(text, "expected b<id>#<i>"))?;
            Move::B { block: id_with_prefix(text, b, 'b')?, i: i.trim().parse().map_err(|_| bad(text, "bad index"))? }
        }
        "F" => {
            arity(1)?;
            Move::F { cut: id_with_prefix(text, parts[0], 'c')? }
        }
        "GF" => {
            arity(1)?;
            Move::GF { cut: id_with_prefix(text, parts[0], 'c')? }
        }
        "Finv" => {
            arity(2)?;
            let (b, k) = parts[0].split_once('#').ok_or_else(|| bad(text, "expected b<id>#k=<k>"))?;
            Move::Finv {
                block: id_with_prefix(text, b, 'b')?,
                k: keyed(text, k, "k")?.parse().map_err(|_| bad(text, "bad k"))?,
                y: elem(group, text, keyed(text, parts[1], "y")?)?,
            }
        }
        "P" => {
            arity(2)?;
            Move::P { block: id_with_prefix(text, parts[0], 'b')?, x: elem(group, text, keyed(text, parts[1], "x")?)? }
        }
        "T" => {
            arity(2)?;
            Move::T { cut: id_with_prefix(text, parts[0], 'c')?, z: elem(group, text, keyed(text, parts[1], "z")?)? }
        }
        "GB" => {
            arity(3)?;
            Move::GB {
                block: id_with_prefix(text, parts[0], 'b')?,
                i2: range(text, keyed(text, parts[1], "I2")?)?,
                i3: range(text, keyed(text, parts[2], "I3")?)?,
            }
        }
        other => return Err(bad(text, &format!("unknown move kind {other:?}"))),
    };
    if inverse && matches!(mv, Move::F { .. } | Move::Finv { .. } | Move::GF { .. } | Move::GB { .. }) {
        return Err(CalcError::NoInverse(format!(
            "{} has no inverse form; write the opposite move explicitly",
            mv.kind()
        )));
    }
    Ok(Step { mv, inverse })
}

/// Parse a `;`-separated path. Empty segments are ignored.
pub fn parse_path(group: &GroupTable, text: &str) -> Result<Vec<Step>, CalcError> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_step(group, s)).collect()
}
