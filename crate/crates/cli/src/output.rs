//! Report rendering: exact rationals print as `p/q`, floats with a
//! configurable number of significant digits. Machine-readable output is
//! one JSON object on stdout; scalars are JSON strings under the exact
//! backend and JSON numbers under the float backend.

use fairshare_core::solutions::{Party, Payment};
use fairshare_core::{Coalition, Scalar, StandAloneGame};
use serde_json::{json, Value};

pub const DEFAULT_PRECISION: usize = 6;

/// Formats with `sig` significant digits, trimming trailing zeros.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp >= sig as i32 {
        let step = 10f64.powi(exp + 1 - sig as i32);
        return format!("{:.0}", (x / step).round() * step);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn format_scalar<T: Scalar>(v: &T, precision: usize) -> String {
    if T::EXACT {
        v.to_string()
    } else {
        format_sig(v.to_f64(), precision)
    }
}

pub fn format_vector<T: Scalar>(values: &[T], precision: usize) -> String {
    let inner: Vec<String> = values.iter().map(|v| format_scalar(v, precision)).collect();
    format!("({})", inner.join(", "))
}

pub fn scalar_json<T: Scalar>(v: &T) -> Value {
    if T::EXACT {
        Value::String(v.to_string())
    } else {
        json!(v.to_f64())
    }
}

pub fn vector_json<T: Scalar>(values: &[T]) -> Value {
    Value::Array(values.iter().map(scalar_json).collect())
}

pub fn party_json(p: Party) -> Value {
    match p {
        Party::Player(i) => json!(i + 1),
        Party::Pool => Value::String("pool".to_string()),
    }
}

pub fn payments_json<T: Scalar>(payments: &[Payment<T>]) -> Value {
    Value::Array(
        payments
            .iter()
            .map(|p| {
                json!({
                    "from": party_json(p.from),
                    "to": party_json(p.to),
                    "amount": scalar_json(&p.amount),
                })
            })
            .collect(),
    )
}

pub fn coalition_json(c: Coalition) -> Value {
    Value::Array(c.players().map(|p| json!(p + 1)).collect())
}

pub fn claims_json<T: Scalar>(game: &StandAloneGame<T>) -> Value {
    Value::Array(
        Coalition::all(game.players())
            .map(|s| {
                json!({
                    "coalition": coalition_json(s),
                    "value": scalar_json(game.value(s)),
                })
            })
            .collect(),
    )
}

pub fn print_claims_table<T: Scalar>(game: &StandAloneGame<T>, precision: usize) {
    println!("claims:");
    for s in Coalition::all(game.players()) {
        println!("  {s}: {}", format_scalar(game.value(s), precision));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(37.41657386773941, 6), "37.4166");
        assert_eq!(format_sig(0.976848, 3), "0.977");
        assert_eq!(format_sig(-1.5, 6), "-1.5");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(7.0, 6), "7");
        assert_eq!(format_sig(123456789.0, 3), "123000000");
    }

    #[test]
    fn exact_scalars_keep_ratio_form() {
        let third = fairshare_core::Rational::from_ratio(1, 3);
        assert_eq!(format_scalar(&third, 6), "1/3");
        assert_eq!(scalar_json(&third), Value::String("1/3".into()));
    }
}
