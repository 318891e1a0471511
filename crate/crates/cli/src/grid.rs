//! Sweep-axis parsing: `start:stop:points[:log]`.

use capacity_core::Error;

/// One sweep axis. Log spacing interpolates in the exponent and requires
/// positive endpoints; points must be at least 2 and start must lie below
/// stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

/// Syntactically malformed grid strings (usage errors, exit code 1), as
/// opposed to well-formed grids violating an invariant (domain errors, exit
/// code 2).
#[derive(Debug)]
pub struct GridSyntaxError(pub String);

impl SweepGrid {
    pub fn parse(text: &str) -> Result<Result<Self, Error>, GridSyntaxError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(GridSyntaxError(format!(
                "grid '{text}' must be start:stop:points[:log]"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| GridSyntaxError(format!("grid start '{}' is not a number", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| GridSyntaxError(format!("grid stop '{}' is not a number", parts[1])))?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| GridSyntaxError(format!("grid points '{}' is not an integer", parts[2])))?;
        let log = match parts.get(3) {
            None => false,
            Some(&"log") => true,
            Some(other) => {
                return Err(GridSyntaxError(format!(
                    "grid spacing '{other}' is not recognized (only 'log')"
                )))
            }
        };
        Ok(Self::new(start, stop, points, log))
    }

    pub fn new(start: f64, stop: f64, points: usize, log: bool) -> Result<Self, Error> {
        if !start.is_finite() || !stop.is_finite() || start >= stop {
            return Err(Error::domain(format!(
                "grid start {start} must be finite and below stop {stop}"
            )));
        }
        if points < 2 {
            return Err(Error::domain(format!("grid needs at least 2 points, got {points}")));
        }
        if log && start <= 0.0 {
            return Err(Error::domain(format!(
                "log spacing requires positive endpoints, got start {start}"
            )));
        }
        Ok(SweepGrid { start, stop, points, log })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_linear_and_log() {
        let g = SweepGrid::parse("0:1:5").unwrap().unwrap();
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = SweepGrid::parse("0.01:100:5:log").unwrap().unwrap();
        let v = g.values();
        assert!((v[0] - 0.01).abs() < 1e-12);
        assert!((v[2] - 1.0).abs() < 1e-12);
        assert!((v[4] - 100.0).abs() < 1e-10);
    }

    #[test]
    fn syntax_errors_are_distinguished_from_domain_errors() {
        assert!(SweepGrid::parse("1:2").is_err());
        assert!(SweepGrid::parse("a:2:5").is_err());
        assert!(SweepGrid::parse("1:2:5:cubic").is_err());
        // Well-formed but invalid.
        assert!(SweepGrid::parse("2:1:5").unwrap().is_err());
        assert!(SweepGrid::parse("1:2:1").unwrap().is_err());
        assert!(SweepGrid::parse("0:2:5:log").unwrap().is_err());
    }
}
