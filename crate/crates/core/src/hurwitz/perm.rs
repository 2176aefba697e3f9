use std::fmt;

use crate::{Error, Result};

/// Permutation of `{0, ..., n-1}`, printed and parsed 1-based in cycle
/// notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// `images[i]` is the image of `i`; `None` unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Builds from 0-based cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                if i >= n || std::mem::replace(&mut touched[i], true) {
                    return None;
                }
                images[i] = c[(k + 1) % c.len()];
            }
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut r = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            r[j] = i;
        }
        Permutation { images: r }
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All cycles including fixed points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.images[i];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// `Σ (length - 1)` over the cycles: the branching this permutation
    /// contributes to a covering.
    pub fn branching(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Parses 1-based cycle notation: `(1 2 3)(4 5)`, `(1,2,3)` or, when
    /// `n ≤ 9`, `(123)`. `id`, `()` and the empty string are the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse_cycles(text, n)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

fn syntax(message: impl Into<String>, column: usize) -> Error {
    Error::CycleSyntax {
        message: message.into(),
        column,
    }
}

fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "id" || trimmed == "()" {
        return Ok(Permutation::identity(n));
    }
    let chars: Vec<char> = text.chars().collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; n];
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(syntax(format!("expected '(' but found '{c}'"), i + 1));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            let Some(&c) = chars.get(i) else {
                return Err(syntax("unclosed cycle", open + 1));
            };
            if c == ')' {
                i += 1;
                break;
            }
            if c.is_whitespace() || c == ',' {
                i += 1;
                continue;
            }
            if !c.is_ascii_digit() {
                return Err(syntax(format!("unexpected '{c}' in cycle"), i + 1));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let run: String = chars[start..i].iter().collect();
            let points: Vec<(usize, usize)> = if n <= 9 {
                run.chars()
                    .enumerate()
                    .map(|(k, d)| (d.to_digit(10).unwrap() as usize, start + k))
                    .collect()
            } else {
                let value = run
                    .parse::<usize>()
                    .map_err(|_| syntax("sheet label too large", start + 1))?;
                vec![(value, start)]
            };
            for (p, col) in points {
                if p == 0 || p > n {
                    return Err(syntax(format!("sheet {p} outside 1..{n}"), col + 1));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(syntax(format!("sheet {p} repeated"), col + 1));
                }
                cycle.push(p - 1);
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(Permutation::from_cycles(n, &cycles).expect("points checked while parsing"))
}
