//! Value syntax shared by the subcommands.

use std::str::FromStr;

use clap::ValueEnum;
use hooke_core::hooke::log_grid;
use hooke_core::observables::linear_grid;
use num_rational::Rational64;

use crate::error::{config, CliResult};

/// `m` values: a rational (`3/4`), an inclusive integer range (`0:4`), or a
/// comma list of either.
pub fn parse_ms(s: &str) -> CliResult<Vec<Rational64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once(':') {
            let a: i64 = a.trim().parse().map_err(|_| config(format!("bad m range `{part}`")))?;
            let b: i64 = b.trim().parse().map_err(|_| config(format!("bad m range `{part}`")))?;
            if b < a {
                return Err(config(format!("empty m range `{part}`")));
            }
            out.extend((a..=b).map(Rational64::from));
        } else {
            out.push(parse_rational(part)?);
        }
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> CliResult<Rational64> {
    Rational64::from_str(s.trim()).map_err(|_| config(format!("`{s}` is not an integer or fraction")))
}

pub fn parse_zs(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().ok().filter(|z| z.is_finite()).ok_or_else(|| config(format!("bad Z value `{p}`"))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

/// `min:max:points`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn parse(s: &str, spacing: Spacing) -> CliResult<Self> {
        let bad = || config(format!("grid must be min:max:points, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else { return Err(bad()) };
        let spec = Self {
            min: a.trim().parse().map_err(|_| bad())?,
            max: b.trim().parse().map_err(|_| bad())?,
            points: n.trim().parse().map_err(|_| bad())?,
            spacing,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.max <= self.min || self.min < 0.0 {
            return Err(config(format!("grid needs 0 <= min < max, got [{}, {}]", self.min, self.max)));
        }
        if self.points < 2 {
            return Err(config("grid needs at least 2 points"));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(config("log spacing needs min > 0"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => linear_grid(self.min, self.max, self.points),
            Spacing::Log => log_grid(self.min, self.max, self.points),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_syntax() {
        assert_eq!(parse_ms("0:2").unwrap(), vec![0.into(), 1.into(), 2.into()]);
        assert_eq!(parse_ms("1/4, -1").unwrap(), vec![Rational64::new(1, 4), Rational64::from(-1)]);
        assert!(parse_ms("3:1").is_err());
        assert!(parse_ms("x").is_err());
    }

    #[test]
    fn z_syntax() {
        assert_eq!(parse_zs("1,-1").unwrap(), vec![1.0, -1.0]);
        assert!(parse_zs("1,,2").is_err());
        assert!(parse_zs("nan").is_err());
    }

    #[test]
    fn grid_syntax() {
        let g = GridSpec::parse("0:8:512", Spacing::Linear).unwrap();
        assert_eq!(g.points().len(), 512);
        assert_eq!(g.points()[511], 8.0);
        assert!(GridSpec::parse("0:8", Spacing::Linear).is_err());
        assert!(GridSpec::parse("2:1:10", Spacing::Linear).is_err());
        assert!(GridSpec::parse("0:1:10", Spacing::Log).is_err());
    }
}
