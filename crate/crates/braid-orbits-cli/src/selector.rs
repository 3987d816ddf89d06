//! Row selectors for catalog commands.
//!
//! A selector is a comma-separated list of items; each item is a single row
//! id (`101`, `A`) or an inclusive numeric range (`3-8`).

/// Expand a selector into the row ids it names, in selector order.
pub fn expand_selector(selector: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for item in selector.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(format!("empty item in selector '{selector}'"));
        }
        // a range has a dash strictly inside a numeric item
        match item.split_once('-') {
            Some((lo, hi)) if !lo.is_empty() && !hi.is_empty() => {
                let lo: u64 = lo
                    .parse()
                    .map_err(|e| format!("bad range start '{lo}': {e}"))?;
                let hi: u64 = hi
                    .parse()
                    .map_err(|e| format!("bad range end '{hi}': {e}"))?;
                if lo > hi {
                    return Err(format!("empty range {lo}-{hi}"));
                }
                out.extend((lo..=hi).map(|x| x.to_string()));
            }
            _ => out.push(item.to_string()),
        }
    }
    Ok(out)
}
