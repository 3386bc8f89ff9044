use num_complex::Complex64;

/// Parses `"re,im;re,im;…"` into a complex vector.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty point".into());
    }
    text.split(';')
        .enumerate()
        .map(|(i, coord)| {
            let mut parts = coord.split(',');
            let (re, im) = match (parts.next(), parts.next(), parts.next()) {
                (Some(re), Some(im), None) => (re, im),
                _ => return Err(format!("coordinate {} must be \"re,im\", got {coord:?}", i + 1)),
            };
            let parse = |s: &str| -> Result<f64, String> {
                let v: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| format!("coordinate {}: {s:?} is not a number", i + 1))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("coordinate {}: {s:?} is not finite", i + 1))
                }
            };
            Ok(Complex64::new(parse(re)?, parse(im)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs() {
        let p = parse_point("1,0; -2.5 ,3e-1").unwrap();
        assert_eq!(p, vec![Complex64::new(1.0, 0.0), Complex64::new(-2.5, 0.3)]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1", "1,2,3", "a,b", "1,2;", "inf,0", "NaN,1"] {
            assert!(parse_point(bad).is_err(), "{bad:?}");
        }
    }
}
