//! Identifiers with natural ordering.
//!
//! Basis elements, edges and vertices are all named by strings. Ordering is
//! "natural": maximal digit runs compare numerically, everything else
//! character-wise, so `a9 < a9.5 < a17` and `b5 < b5.5 < b17`. All canonical
//! orderings in this crate (chain terms, document layout, DOT output) derive
//! from this comparator.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An identifier string with natural ordering.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ident(String);

impl Ident {
    pub fn new(s: impl Into<String>) -> Self {
        Ident(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Basis identifiers must be non-empty and match `[A-Za-z0-9_.]+`.
    /// Edge and vertex identifiers are unconstrained.
    pub fn is_valid_basis_id(&self) -> bool {
        !self.0.is_empty()
            && self
                .0
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'.')
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident(s.to_owned())
    }
}

impl From<String> for Ident {
    fn from(s: String) -> Self {
        Ident(s)
    }
}

impl Borrow<str> for Ident {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

/// A maximal run of digits or of non-digits.
#[derive(PartialEq, Eq)]
enum Segment<'a> {
    Digits(&'a str),
    Text(&'a str),
}

fn segments(s: &str) -> impl Iterator<Item = Segment<'_>> {
    let bytes = s.as_bytes();
    let mut pos = 0;
    std::iter::from_fn(move || {
        if pos >= bytes.len() {
            return None;
        }
        let start = pos;
        let digit = bytes[pos].is_ascii_digit();
        while pos < bytes.len() && bytes[pos].is_ascii_digit() == digit {
            pos += 1;
        }
        let run = &s[start..pos];
        Some(if digit {
            Segment::Digits(run)
        } else {
            Segment::Text(run)
        })
    })
}

/// Compare two digit runs by value, then by raw text (`09 < 9`).
fn digit_cmp(a: &str, b: &str) -> Ordering {
    let a_trim = a.trim_start_matches('0');
    let b_trim = b.trim_start_matches('0');
    a_trim
        .len()
        .cmp(&b_trim.len())
        .then_with(|| a_trim.cmp(b_trim))
        .then_with(|| a.cmp(b))
}

pub(crate) fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut sa = segments(a);
    let mut sb = segments(b);
    loop {
        match (sa.next(), sb.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = match (&x, &y) {
                    (Segment::Digits(dx), Segment::Digits(dy)) => digit_cmp(dx, dy),
                    (Segment::Digits(dx), Segment::Text(ty)) => dx.cmp(ty),
                    (Segment::Text(tx), Segment::Digits(dy)) => tx.cmp(dy),
                    (Segment::Text(tx), Segment::Text(ty)) => tx.cmp(ty),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}
