//! Group words over two letters and their images.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subset::Subset;

/// Default bound on `|G|^k` evaluations for a word image.
pub const DEFAULT_WORD_CAP: usize = 40_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Letter {
    var: u8,
    inverse: bool,
}

/// Freely reduced word in `x`, `y` (capitals denote inverses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            let letter = match ch {
                'x' => Letter { var: 0, inverse: false },
                'X' => Letter { var: 0, inverse: true },
                'y' => Letter { var: 1, inverse: false },
                'Y' => Letter { var: 1, inverse: true },
                other => return Err(Error::Parse(format!("bad letter {other:?} in word {s:?}"))),
            };
            match letters.last() {
                Some(prev) if prev.var == letter.var && prev.inverse != letter.inverse => {
                    letters.pop();
                }
                _ => letters.push(letter),
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let c = match (l.var, l.inverse) {
                (0, false) => 'x',
                (0, true) => 'X',
                (_, false) => 'y',
                (_, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Word {
    /// Number of variables the word is evaluated over (1 or 2).
    pub fn arity(&self) -> usize {
        if self.letters.iter().any(|l| l.var == 1) {
            2
        } else {
            1
        }
    }

    pub fn evaluate(&self, g: &FiniteGroup, x: u32, y: u32) -> u32 {
        let vals = [x, y];
        let invs = [g.inv(x), g.inv(y)];
        self.letters.iter().fold(g.identity(), |acc, l| {
            let v = if l.inverse { invs[l.var as usize] } else { vals[l.var as usize] };
            g.mul(acc, v)
        })
    }
}

/// `{w(g₁, g₂)}` over all substitutions.
pub fn word_image(g: &FiniteGroup, word: &Word, cap: usize) -> Result<Subset> {
    use rayon::prelude::*;
    let n = g.order();
    let evaluations = n.checked_pow(word.arity() as u32).unwrap_or(usize::MAX);
    if evaluations > cap {
        return Err(Error::CapExceeded {
            cap,
            what: format!("{evaluations} word evaluations"),
        });
    }
    let mut image = Subset::empty(n);
    if word.arity() == 1 {
        for x in 0..n as u32 {
            image.insert(word.evaluate(g, x, 0));
        }
    } else {
        let parts: Vec<Vec<u32>> = (0..n as u32)
            .into_par_iter()
            .map(|x| {
                let mut seen = Subset::empty(n);
                for y in 0..n as u32 {
                    seen.insert(word.evaluate(g, x, y));
                }
                seen.to_vec()
            })
            .collect();
        for e in parts.into_iter().flatten() {
            image.insert(e);
        }
    }
    Ok(image)
}
