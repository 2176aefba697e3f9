use std::fmt::{self, Display};

use linecomplex::Rational;
use num_traits::ToPrimitive;

/// Ordered `key: value` lines.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.put("schema", crate::SCHEMA);
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        let value = value.to_string();
        debug_assert!(!value.contains('\n'), "multi-line value");
        self.lines.push((key.into(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Parses text written by [`Display`].
    pub fn parse(text: &str) -> Self {
        let lines = text
            .lines()
            .filter_map(|l| l.split_once(": "))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        Report { lines }
    }

    /// The lines whose key starts with `prefix`.
    pub fn section(&self, prefix: &str) -> Vec<(String, String)> {
        self.lines.iter().filter(|(k, _)| k.starts_with(prefix)).cloned().collect()
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// Exact when the denominator is small, otherwise a decimal marked `≈`.
pub fn rational(x: &Rational) -> String {
    if x.denom().bits() <= 40 {
        x.to_string()
    } else {
        format!("≈{:.12}", x.to_f64().unwrap_or(f64::NAN))
    }
}
