//! Words in named generators: sequences of `(name, exponent)` factors.

use crate::error::EnumError;
use crate::group::GroupTable;
use std::collections::HashMap;

/// A word in named generators. Commutator brackets are expanded during
/// parsing, so a `Word` is always a flat product of powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    factors: Vec<(String, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(name: &str, exp: i64) -> Self {
        let mut w = Word::default();
        w.push(name, exp);
        w
    }

    /// Append a power, merging with the trailing factor and dropping
    /// zero exponents.
    pub fn push(&mut self, name: &str, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.factors.last_mut() {
            if last.0 == name {
                last.1 += exp;
                if last.1 == 0 {
                    self.factors.pop();
                }
                return;
            }
        }
        self.factors.push((name.to_string(), exp));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (n, e) in &other.factors {
            w.push(n, *e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::default();
        for (n, e) in self.factors.iter().rev() {
            w.push(n, -e);
        }
        w
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        if k < 0 {
            return self.inverse().pow(-k);
        }
        let mut w = Word::default();
        for _ in 0..k {
            w = w.concat(self);
        }
        w
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(String, i64)] {
        &self.factors
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|(n, _)| n.as_str())
    }

    /// Flatten into signed generator indices (one entry per letter),
    /// as consumed by coset enumeration.
    pub fn letters(&self, gen_index: &HashMap<String, usize>) -> Result<Vec<i32>, EnumError> {
        let mut out = Vec::new();
        for (n, e) in &self.factors {
            let idx = *gen_index
                .get(n)
                .ok_or_else(|| EnumError::UnboundGenerator(n.clone()))?
                as i32;
            let letter = if *e > 0 { idx + 1 } else { -(idx + 1) };
            for _ in 0..e.unsigned_abs() {
                out.push(letter);
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (n, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Evaluate `w` in `group` under the given name-to-element assignment.
pub fn evaluate_word(
    group: &GroupTable,
    assignment: &HashMap<String, u32>,
    w: &Word,
) -> Result<u32, EnumError> {
    let mut acc = group.identity();
    for (n, e) in w.factors() {
        let base = *assignment
            .get(n)
            .ok_or_else(|| EnumError::UnboundGenerator(n.clone()))?;
        let base = if *e < 0 { group.inv(base) } else { base };
        for _ in 0..e.unsigned_abs() {
            acc = group.mul(acc, base);
        }
    }
    Ok(acc)
}
