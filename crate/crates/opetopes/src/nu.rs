//! Double sequences of chains compatible with the boundary and augmentation.
//!
//! A [`NuElement`] is a finite list of chain pairs `(x_q^-, x_q^+)`, one per
//! dimension, implicitly zero beyond the stored levels. Membership requires
//! nonnegative coefficients, unit augmentation at level zero, and
//! `d(x_q^-) = d(x_q^+) = x_{q-1}^+ - x_{q-1}^-` at every level, including the
//! first level past the stored ones (which forces the top pair to be equal).

use num_bigint::BigInt;

use crate::chain::{Chain, Sign};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::predicates::{atomic_top, is_unital, Mode};

/// A member candidate for the set of double sequences over a complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NuElement {
    levels: Vec<(Chain, Chain)>,
}

impl NuElement {
    /// Build from explicit levels. Level `q` must hold chains of dimension
    /// `q`; trailing all-zero levels are trimmed so equality is canonical.
    pub fn new(levels: Vec<(Chain, Chain)>) -> Result<NuElement> {
        for (q, (minus, plus)) in levels.iter().enumerate() {
            for chain in [minus, plus] {
                if chain.dim() != q {
                    return Err(Error::WrongDimension {
                        expected: q,
                        found: chain.dim(),
                    });
                }
            }
        }
        let mut levels = levels;
        while levels
            .last()
            .is_some_and(|(m, p)| m.is_zero() && p.is_zero())
        {
            levels.pop();
        }
        Ok(NuElement { levels })
    }

    /// Number of stored levels; all levels at or above this index are zero.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[(Chain, Chain)] {
        &self.levels
    }

    /// `x_q^-`, zero beyond the stored levels.
    pub fn minus(&self, q: usize) -> Chain {
        self.levels
            .get(q)
            .map(|(m, _)| m.clone())
            .unwrap_or_else(|| Chain::zero(q))
    }

    /// `x_q^+`, zero beyond the stored levels.
    pub fn plus(&self, q: usize) -> Chain {
        self.levels
            .get(q)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Chain::zero(q))
    }

    pub fn side(&self, q: usize, sign: Sign) -> Chain {
        match sign {
            Sign::Minus => self.minus(q),
            Sign::Plus => self.plus(q),
        }
    }
}

/// Membership test: all invariants of the double-sequence set over `k`.
pub fn is_member(k: &Complex, x: &NuElement) -> Result<bool> {
    for (minus, plus) in x.levels() {
        k.check_chain(minus)?;
        k.check_chain(plus)?;
        if !minus.is_nonnegative() || !plus.is_nonnegative() {
            return Ok(false);
        }
    }
    let one = BigInt::from(1);
    if k.augment(&x.minus(0))? != one || k.augment(&x.plus(0))? != one {
        return Ok(false);
    }
    for q in 1..=x.depth() {
        let expected = x.plus(q - 1).sub(&x.minus(q - 1));
        for sign in [Sign::Minus, Sign::Plus] {
            let side = x.side(q, sign);
            let actual = if side.is_zero() {
                Chain::zero(q - 1)
            } else {
                k.boundary(&side)?
            };
            if actual != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The canonical atom of an atomic unital complex: level `q` holds the
/// `(n-q)`-fold negative and positive faces of the top element.
pub fn canonical_atom(k: &Complex) -> Result<NuElement> {
    let (g, n) = atomic_top(k).map_err(|e| match e {
        Error::NotAtomic | Error::EmptyBasis => Error::NotAtomic,
        other => other,
    })?;
    if !is_unital(k, Mode::General)? {
        return Err(Error::NotUnital);
    }
    let top = Chain::unit(n, g);
    let mut levels = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let minus = k.face_iter(&top, n - q, Sign::Minus)?;
        let plus = k.face_iter(&top, n - q, Sign::Plus)?;
        levels.push((minus, plus));
    }
    NuElement::new(levels)
}

/// The level-`q` g-chain of a member: `x_q^- + sum d_plus(a_i)` over the terms
/// `a_i` of `x_{q+1}^sign`, counted with multiplicity. The equal second route
/// `sum d_minus(a_i) + x_q^+` is recomputed and compared; a mismatch means the
/// input was not a member and is reported as [`Error::FormulaMismatch`].
pub fn g_chain(k: &Complex, x: &NuElement, q: usize, sign: Sign) -> Result<Chain> {
    let above = x.side(q + 1, sign);
    k.check_chain(&above)?;
    let mut via_plus = x.minus(q);
    let mut via_minus = x.plus(q);
    for (id, coeff) in above.terms() {
        via_plus = via_plus.add(&k.d_plus(id)?.scaled(coeff));
        via_minus = via_minus.add(&k.d_minus(id)?.scaled(coeff));
    }
    if via_plus != via_minus {
        return Err(Error::FormulaMismatch { q, sign });
    }
    Ok(via_plus)
}

/// Violation listing from [`distinctness_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DistinctnessReport {
    violations: Vec<String>,
}

impl DistinctnessReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    fn push(&mut self, v: String) {
        self.violations.push(v);
    }
}

impl std::fmt::Display for DistinctnessReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "distinct")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Verify that `x_0^-` and `x_0^+` are single basis elements and that every
/// level chain and g-chain is a sum of distinct basis elements (all
/// coefficients 1). Expected empty for members over loop-free unital
/// complexes; this is the theorem run as a check, and downstream network
/// construction refuses inputs that fail it.
pub fn distinctness_check(k: &Complex, x: &NuElement) -> Result<DistinctnessReport> {
    let mut report = DistinctnessReport::default();
    if !is_member(k, x)? {
        report.push("not a member of the double-sequence set".to_owned());
        return Ok(report);
    }
    for (sign, chain) in [(Sign::Minus, x.minus(0)), (Sign::Plus, x.plus(0))] {
        if chain.single_unit().is_none() {
            report.push(format!("x_0^{sign} = {chain} is not a single basis element"));
        }
    }
    for q in 0..=x.depth() {
        for sign in [Sign::Minus, Sign::Plus] {
            let side = x.side(q, sign);
            if !side.has_unit_coefficients() {
                report.push(format!("x_{q}^{sign} = {side} has a repeated term"));
            }
            let g = g_chain(k, x, q, sign)?;
            if !g.has_unit_coefficients() {
                report.push(format!("g_{q}^{sign} = {g} has a repeated term"));
            }
        }
    }
    Ok(report)
}

/// Convenience: the identifier of the top element of an atomic complex.
pub fn top_id(k: &Complex) -> Result<Ident> {
    Ok(atomic_top(k)?.0)
}
