//! Numeric grid spellings for batch flags.

/// Parses a sample-count grid: either a single positive integer, or
/// `a..bxq` meaning the geometric grid a, a*q, a*q^2, ... capped at b.
pub fn parse_grid(s: &str) -> Result<Vec<usize>, String> {
    if let Some((range, factor)) = s.split_once('x') {
        let (a, b) = range
            .split_once("..")
            .ok_or_else(|| format!("bad grid `{s}`: expected `a..bxq`"))?;
        let a: usize = a
            .parse()
            .map_err(|_| format!("bad grid `{s}`: start is not an integer"))?;
        let b: usize = b
            .parse()
            .map_err(|_| format!("bad grid `{s}`: end is not an integer"))?;
        let q: usize = factor
            .parse()
            .map_err(|_| format!("bad grid `{s}`: ratio is not an integer"))?;
        if a == 0 || b < a || q < 2 {
            return Err(format!(
                "bad grid `{s}`: need 1 <= a <= b and an integer ratio >= 2"
            ));
        }
        let mut out = Vec::new();
        let mut v = a;
        loop {
            out.push(v);
            match v.checked_mul(q) {
                Some(next) if next <= b => v = next,
                _ => break,
            }
        }
        Ok(out)
    } else {
        let n: usize = s
            .parse()
            .map_err(|_| format!("bad count `{s}`: expected an integer or `a..bxq`"))?;
        if n == 0 {
            return Err("count must be at least 1".into());
        }
        Ok(vec![n])
    }
}

/// Parses a comma-separated list of positive integers, e.g. `2,3,4`.
pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad list entry `{part}`"))?;
        if v == 0 {
            return Err("list entries must be positive".into());
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}
