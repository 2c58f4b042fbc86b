//! Parser for singularity-type expressions such as `2A1+A3`.
//!
//! Grammar: `TYPE := TERM ("+" TERM)*`, `TERM := [multiplicity] FAMILY rank`,
//! family one of `A`, `D`, `E`, whitespace tolerated around `+`.  `D2` and
//! `D3` are accepted and normalised to `2A1` and `A3`.

use std::fmt;

use delpezzo::{DynkinType, Family};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_type(input: &str) -> Result<DynkinType, ParseError> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let mut labels: Vec<(Family, usize)> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(ParseError {
            pos,
            msg: "empty type expression".into(),
        });
    }
    loop {
        skip_ws(&mut pos);
        let term_start = pos;

        let multiplicity = match take_digits(bytes, &mut pos) {
            Some(0) => {
                return Err(ParseError {
                    pos: term_start,
                    msg: "multiplicity must be at least 1".into(),
                })
            }
            Some(m) => m,
            None => 1,
        };

        let family = match bytes.get(pos) {
            Some(b'A') => Family::A,
            Some(b'D') => Family::D,
            Some(b'E') => Family::E,
            Some(&c) if c.is_ascii_alphabetic() => {
                return Err(ParseError {
                    pos,
                    msg: format!("unknown family letter '{}'", c as char),
                })
            }
            _ => {
                return Err(ParseError {
                    pos,
                    msg: "expected a family letter A, D or E".into(),
                })
            }
        };
        pos += 1;

        let rank_start = pos;
        let rank = match take_digits(bytes, &mut pos) {
            Some(0) => {
                return Err(ParseError {
                    pos: rank_start,
                    msg: "rank must be positive".into(),
                })
            }
            Some(r) => r,
            None => {
                return Err(ParseError {
                    pos: rank_start,
                    msg: "expected rank digits".into(),
                })
            }
        };
        match family {
            Family::A => {}
            Family::D if rank >= 2 => {}
            Family::D => {
                return Err(ParseError {
                    pos: term_start,
                    msg: format!("D{rank} is not a Dynkin diagram"),
                })
            }
            Family::E if (6..=8).contains(&rank) => {}
            Family::E => {
                return Err(ParseError {
                    pos: term_start,
                    msg: format!("E{rank} is not a Dynkin diagram (rank must be 6, 7 or 8)"),
                })
            }
        }
        for _ in 0..multiplicity {
            labels.push((family, rank));
        }

        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'+') => pos += 1,
            Some(&c) => {
                return Err(ParseError {
                    pos,
                    msg: format!("expected '+' or end of input, found '{}'", c as char),
                })
            }
        }
    }

    DynkinType::new(&labels).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

/// Reads a digit run; `None` when there are no digits at the position.
/// Overflow of usize is reported as a zero-equivalent huge-rank error by the
/// caller's validity checks, so saturate rather than wrap.
fn take_digits(bytes: &[u8], pos: &mut usize) -> Option<usize> {
    let start = *pos;
    let mut value: usize = 0;
    while let Some(c) = bytes.get(*pos) {
        if !c.is_ascii_digit() {
            break;
        }
        value = value.saturating_mul(10).saturating_add((c - b'0') as usize);
        *pos += 1;
    }
    if *pos == start {
        None
    } else {
        Some(value)
    }
}
