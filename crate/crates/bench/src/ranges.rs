//! Parsing of list arguments such as `2,4,8`, `2:16` or `0:5:20`.

use crate::error::{BenchError, Result};

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| BenchError::Config(format!("not a number: {s:?}")))
}

/// Comma-separated items, each a value, `start:end` (step 1) or
/// `start:step:end` (end inclusive).
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        let (start, step, end) = match parts.as_slice() {
            [v] => {
                out.push(parse_num(v)?);
                continue;
            }
            [a, b] => (parse_num(a)?, 1.0, parse_num(b)?),
            [a, s, b] => (parse_num(a)?, parse_num(s)?, parse_num(b)?),
            _ => return Err(BenchError::Config(format!("bad range {item:?}"))),
        };
        if step.is_nan() || step <= 0.0 || end < start {
            return Err(BenchError::Config(format!("bad range {item:?}")));
        }
        let n = ((end - start) / step + 1e-9).floor() as usize;
        out.extend((0..=n).map(|i| start + i as f64 * step));
    }
    if out.is_empty() {
        return Err(BenchError::Config(format!("empty list {text:?}")));
    }
    Ok(out)
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    parse_f64_list(text)?
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(BenchError::Config(format!("not a nonnegative integer: {v}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_usize_list("2,4,8").unwrap(), vec![2, 4, 8]);
        assert_eq!(parse_usize_list("2:5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_f64_list("0:5:20").unwrap(), vec![0.0, 5.0, 10.0, 15.0, 20.0]);
        assert_eq!(parse_f64_list("-5:5:5,12.5").unwrap(), vec![-5.0, 0.0, 5.0, 12.5]);
        assert_eq!(parse_f64_list("0:0.1:0.3").unwrap().len(), 4);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_f64_list("").is_err());
        assert!(parse_f64_list("a").is_err());
        assert!(parse_f64_list("5:1").is_err());
        assert!(parse_f64_list("0:0:5").is_err());
        assert!(parse_f64_list("1:2:3:4").is_err());
        assert!(parse_usize_list("1.5").is_err());
    }
}
