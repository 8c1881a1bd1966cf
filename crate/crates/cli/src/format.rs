/// `%g`-style rendering with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can carry into the next decade, e.g. 999999.7
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) {
        exp + 1
    } else {
        exp
    };
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        format!("{}e{e}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rows of `(label, cells)` rendered as aligned text or CSV.
pub fn render(header: &[&str], rows: &[(String, Vec<Option<f64>>)], csv: bool) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(label, vals)| {
            std::iter::once(label.clone())
                .chain(vals.iter().map(|v| match v {
                    Some(x) => sig6(*x),
                    None if csv => String::new(),
                    None => "-".into(),
                }))
                .collect()
        })
        .collect();
    let mut out = String::new();
    if csv {
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &cells {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut line = |row: Vec<&str>| {
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &cells {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
