//! Angle and range arguments.
//!
//! Plain decimals are radians unless `--degrees` is given. Multiples of π
//! (`pi`, `-pi/2`, `2pi/3`, `0.5*pi`, `3π/4`) are always radians.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    value: f64,
    symbolic: bool,
}

impl Angle {
    pub fn radians(self, degrees: bool) -> f64 {
        if degrees && !self.symbolic {
            self.value.to_radians()
        } else {
            self.value
        }
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.trim().to_ascii_lowercase().replace('π', "pi");
        let bad = || format!("cannot parse angle '{s}': expected a decimal or a multiple of pi such as 2pi/3");
        let Some((coef, rest)) = t.split_once("pi") else {
            let value: f64 = t.parse().map_err(|_| bad())?;
            if !value.is_finite() {
                return Err(bad());
            }
            return Ok(Angle { value, symbolic: false });
        };
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => coef.parse::<f64>().map_err(|_| bad())?,
        };
        let den = match rest {
            "" => 1.0,
            _ => rest
                .strip_prefix('/')
                .and_then(|d| d.parse::<f64>().ok())
                .ok_or_else(bad)?,
        };
        let value = c * std::f64::consts::PI / den;
        if !value.is_finite() || den == 0.0 {
            return Err(bad());
        }
        Ok(Angle { value, symbolic: true })
    }
}

/// `a:b:n` (inclusive, `n` points) or a single fixed angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleRange {
    start: Angle,
    end: Angle,
    n: usize,
}

impl AngleRange {
    pub fn values(&self, degrees: bool) -> Vec<f64> {
        let (a, b) = (self.start.radians(degrees), self.end.radians(degrees));
        if self.n == 1 {
            return vec![a];
        }
        let step = (b - a) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i + 1 == self.n { b } else { a + i as f64 * step })
            .collect()
    }
}

impl FromStr for AngleRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [x] => {
                let a: Angle = x.parse()?;
                Ok(AngleRange { start: a, end: a, n: 1 })
            }
            [a, b, n] => {
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("range '{s}': point count '{n}' is not a positive integer"))?;
                if n == 0 {
                    return Err(format!("range '{s}' needs at least one point"));
                }
                let (start, end) = (a.parse::<Angle>()?, b.parse::<Angle>()?);
                if n == 1 && start != end {
                    return Err(format!("range '{s}' has one point but distinct endpoints"));
                }
                Ok(AngleRange { start, end, n })
            }
            _ => Err(format!("cannot parse range '{s}': expected a:b:n or a single angle")),
        }
    }
}
