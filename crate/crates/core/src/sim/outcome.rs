use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Supplies the outcome of every non-deterministic measurement.
#[derive(Clone, Debug)]
pub enum OutcomeSource {
    /// Fair coin flips from a seeded stream.
    Seeded(ChaCha8Rng),
    /// Every random outcome takes this value.
    Constant(bool),
    /// Scripted bits. Sequential draws consume the next bit; keyed draws read
    /// the bit at the measurement's index. With `strict` set, every
    /// measurement (deterministic ones included) needs a bit and a
    /// disagreeing bit for a forced outcome is an error.
    Script {
        bits: Vec<bool>,
        next: usize,
        strict: bool,
    },
}

impl OutcomeSource {
    pub fn seeded(seed: u64) -> Self {
        OutcomeSource::Seeded(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn script(bits: Vec<bool>) -> Self {
        OutcomeSource::Script {
            bits,
            next: 0,
            strict: true,
        }
    }

    /// A script whose bits are only used for random outcomes.
    pub fn lenient_script(bits: Vec<bool>) -> Self {
        OutcomeSource::Script {
            bits,
            next: 0,
            strict: false,
        }
    }

    /// Parses a script of `0`/`1` characters; whitespace and commas are ignored.
    pub fn parse_script(text: &str) -> Result<Vec<bool>> {
        let mut bits = Vec::new();
        for (lno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for (col, ch) in body.char_indices() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    c if c.is_whitespace() || c == ',' => {}
                    c => {
                        return Err(Error::parse(
                            lno + 1,
                            col + 1,
                            format!("unexpected {c:?} in script"),
                        ))
                    }
                }
            }
        }
        Ok(bits)
    }

    /// Outcome for the next measurement. `forced` carries the value of a
    /// deterministic measurement; `key` selects the script bit for keyed
    /// draws.
    pub fn resolve(&mut self, key: Option<usize>, forced: Option<bool>) -> Result<bool> {
        match self {
            OutcomeSource::Seeded(rng) => Ok(match forced {
                Some(b) => b,
                None => rng.gen(),
            }),
            OutcomeSource::Constant(b) => Ok(forced.unwrap_or(*b)),
            OutcomeSource::Script { bits, next, strict } => {
                if forced.is_some() && !*strict {
                    return Ok(forced.unwrap());
                }
                let idx = match key {
                    Some(k) => k,
                    None => {
                        *next += 1;
                        *next - 1
                    }
                };
                let bit = *bits.get(idx).ok_or(Error::ScriptExhausted(bits.len()))?;
                match forced {
                    Some(f) if f != bit => Err(Error::ScriptContradiction {
                        scripted: bit,
                        forced: f,
                    }),
                    _ => Ok(bit),
                }
            }
        }
    }
}
