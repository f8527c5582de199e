//! Integer chains over a graded basis.
//!
//! A [`Chain`] is a finite integer combination of named basis elements, all of
//! one dimension. A zero chain still carries its dimension so that dimension
//! errors stay catchable. Terms are stored in a `BTreeMap`, so iteration is
//! always in natural identifier order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits_shim::{is_one, is_zero};

use crate::ident::Ident;

/// The sign selecting the negative or positive part of a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// Small helpers around `BigInt` so we do not pull the whole num-traits
/// surface into scope at every call site.
mod num_traits_shim {
    use num_bigint::BigInt;
    use num_bigint::Sign as BSign;

    pub fn is_zero(n: &BigInt) -> bool {
        n.sign() == BSign::NoSign
    }

    pub fn is_one(n: &BigInt) -> bool {
        *n == BigInt::from(1)
    }
}

/// A finite integer combination of basis elements of a single dimension.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Ident, BigInt>,
}

impl Chain {
    /// The zero chain of the given dimension.
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The chain consisting of a single basis element with coefficient 1.
    pub fn unit(dim: usize, id: Ident) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, BigInt::from(1));
        Chain { dim, terms }
    }

    /// Build a chain from (id, coefficient) pairs, summing duplicates and
    /// dropping zero totals.
    pub fn from_terms<I, C>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Ident, C)>,
        C: Into<BigInt>,
    {
        let mut chain = Chain::zero(dim);
        for (id, coeff) in terms {
            chain.add_term(id, coeff.into());
        }
        chain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct basis elements in the support.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, id: &Ident) -> BigInt {
        self.terms.get(id).cloned().unwrap_or_default()
    }

    pub fn contains(&self, id: &Ident) -> bool {
        self.terms.contains_key(id)
    }

    /// Terms in natural identifier order.
    pub fn terms(&self) -> impl Iterator<Item = (&Ident, &BigInt)> {
        self.terms.iter()
    }

    /// Support in natural identifier order.
    pub fn support(&self) -> impl Iterator<Item = &Ident> {
        self.terms.keys()
    }

    /// Add `coeff * id` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, id: Ident, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        if is_zero(&coeff) {
            return;
        }
        match self.terms.entry(id) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if is_zero(e.get()) {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Pointwise sum. Panics if the dimensions differ.
    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.dim, other.dim, "chain dimension mismatch in add");
        let mut out = self.clone();
        for (id, c) in other.terms() {
            out.add_term(id.clone(), c.clone());
        }
        out
    }

    /// Pointwise difference. Panics if the dimensions differ.
    pub fn sub(&self, other: &Chain) -> Chain {
        assert_eq!(self.dim, other.dim, "chain dimension mismatch in sub");
        let mut out = self.clone();
        for (id, c) in other.terms() {
            out.add_term(id.clone(), -c.clone());
        }
        out
    }

    /// The chain scaled by an integer.
    pub fn scaled(&self, k: &BigInt) -> Chain {
        let mut out = Chain::zero(self.dim);
        for (id, c) in self.terms() {
            out.add_term(id.clone(), c.clone() * k);
        }
        out
    }

    /// Split into `(neg, pos)` with `pos - neg == self`, both with positive
    /// coefficients and disjoint supports. This decomposition is unique.
    pub fn split(&self) -> (Chain, Chain) {
        let mut neg = Chain::zero(self.dim);
        let mut pos = Chain::zero(self.dim);
        for (id, c) in self.terms() {
            if c.sign() == num_bigint::Sign::Minus {
                neg.add_term(id.clone(), -c.clone());
            } else {
                pos.add_term(id.clone(), c.clone());
            }
        }
        (neg, pos)
    }

    /// True when every coefficient is >= 1 (vacuously true for zero chains).
    pub fn is_nonnegative(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    /// True when every coefficient is exactly 1.
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.values().all(is_one)
    }

    /// If the chain is a single basis element with coefficient 1, return it.
    pub fn single_unit(&self) -> Option<&Ident> {
        if self.terms.len() == 1 {
            let (id, c) = self.terms.iter().next().unwrap();
            if is_one(c) {
                return Some(id);
            }
        }
        None
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (id, c) in self.terms() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_one(&mag) {
                write!(f, "{id}")?;
            } else {
                write!(f, "{mag}*{id}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[dim {}]({})", self.dim, self)
    }
}
