//! SI quantities with prefixes, e.g. `2pA`, `100 Hz`, `50uV`, `131.8k`.

fn prefix(c: char) -> Option<f64> {
    Some(match c {
        'f' => 1e-15,
        'p' => 1e-12,
        'n' => 1e-9,
        'u' | 'µ' | 'μ' => 1e-6,
        'm' => 1e-3,
        'c' => 1e-2,
        'k' => 1e3,
        'M' => 1e6,
        'G' => 1e9,
        _ => return None,
    })
}

/// Parses `text` as a quantity whose unit symbol is `symbol`. The symbol is
/// optional; the prefix multiplier is raised to `power` (so `mm2` is 1e-6 for
/// an area in `m2`).
pub fn parse_scaled(text: &str, symbol: &str, power: i32) -> Result<f64, String> {
    let t = text.trim();
    let body = t.strip_suffix(symbol).unwrap_or(t).trim_end();
    let plain = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite());
    let value = plain(body).or_else(|| {
        let mut chars = body.chars();
        let last = chars.next_back()?;
        Some(plain(chars.as_str().trim_end())? * prefix(last)?.powi(power))
    });
    match value {
        Some(v) => Ok(v),
        None if symbol.is_empty() => Err(format!("`{text}` is not a number")),
        None => Err(format!("`{text}` is not a quantity in {symbol}")),
    }
}

pub fn parse_quantity(text: &str, symbol: &str) -> Result<f64, String> {
    parse_scaled(text, symbol, 1)
}

/// Resistance; accepts `Ω`, `ohm` or no symbol.
pub fn parse_ohms(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let t = t.strip_suffix("ohm").or_else(|| t.strip_suffix('Ω')).unwrap_or(t);
    parse_quantity(t, "").map_err(|_| format!("`{text}` is not a resistance"))
}

/// Comma-separated quantities.
pub fn parse_list(text: &str, symbol: &str) -> Result<Vec<f64>, String> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_quantity(s, symbol)).collect()
}
