//! Free augmented directed complexes with a distinguished basis.
//!
//! A [`Complex`] holds a graded basis. Every positive-dimensional element
//! carries a pair of face chains `d_minus`/`d_plus` with (intended) positive
//! coefficients and disjoint supports; every zero-dimensional element carries
//! an augmentation value. Construction only enforces referential integrity, so
//! broken complexes remain representable; [`Complex::validate_fadc`] reports
//! the actual axioms.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::chain::{Chain, Sign};
use crate::error::{Error, Result};
use crate::ident::Ident;

/// One basis element of a [`Complex`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    pub dim: usize,
    pub thin: bool,
    /// `Some((d_minus, d_plus))` exactly when `dim > 0`.
    pub faces: Option<(Chain, Chain)>,
    /// Augmentation value, present exactly when `dim == 0`.
    pub epsilon: Option<BigInt>,
}

/// Input record for [`Complex::build`].
#[derive(Clone, Debug, Default)]
pub struct ElementSpec {
    pub id: Ident,
    pub dim: usize,
    pub thin: bool,
    pub d_minus: Vec<(Ident, BigInt)>,
    pub d_plus: Vec<(Ident, BigInt)>,
    /// Defaults to 1 for dimension-zero elements when absent.
    pub epsilon: Option<BigInt>,
}

/// A free augmented directed complex with named basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    elements: BTreeMap<Ident, Element>,
}

impl Complex {
    /// Build a complex from element records.
    ///
    /// Enforced here: identifier syntax and uniqueness, referential integrity
    /// of face chains, faces present exactly in positive dimensions, epsilon
    /// only in dimension zero (defaulting to 1). Everything mathematical
    /// (dimensions of face chains, positivity, disjointness, `dd = 0`,
    /// `ed = 0`) is left to [`Complex::validate_fadc`].
    pub fn build(specs: Vec<ElementSpec>) -> Result<Complex> {
        let mut elements: BTreeMap<Ident, Element> = BTreeMap::new();
        for spec in &specs {
            if !spec.id.is_valid_basis_id() {
                return Err(Error::InvalidId(spec.id.as_str().to_owned()));
            }
            if elements.contains_key(&spec.id) {
                return Err(Error::DuplicateId(spec.id.clone()));
            }
            let element = if spec.dim == 0 {
                if !spec.d_minus.is_empty() || !spec.d_plus.is_empty() {
                    return Err(Error::Structure(format!(
                        "dimension-zero element `{}` must not carry faces",
                        spec.id
                    )));
                }
                Element {
                    dim: 0,
                    thin: spec.thin,
                    faces: None,
                    epsilon: Some(spec.epsilon.clone().unwrap_or_else(|| BigInt::from(1))),
                }
            } else {
                if spec.epsilon.is_some() {
                    return Err(Error::Structure(format!(
                        "positive-dimensional element `{}` must not carry an augmentation",
                        spec.id
                    )));
                }
                let face_dim = spec.dim - 1;
                Element {
                    dim: spec.dim,
                    thin: spec.thin,
                    faces: Some((
                        Chain::from_terms(face_dim, spec.d_minus.iter().cloned()),
                        Chain::from_terms(face_dim, spec.d_plus.iter().cloned()),
                    )),
                    epsilon: None,
                }
            };
            elements.insert(spec.id.clone(), element);
        }
        // referential integrity of the face chains
        for (id, element) in &elements {
            if let Some((dm, dp)) = &element.faces {
                for term in dm.support().chain(dp.support()) {
                    if !elements.contains_key(term) {
                        return Err(Error::Reference {
                            id: term.clone(),
                            context: format!("faces of `{id}`"),
                        });
                    }
                }
            }
        }
        Ok(Complex { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, id: &Ident) -> bool {
        self.elements.contains_key(id)
    }

    pub fn element(&self, id: &Ident) -> Result<&Element> {
        self.elements
            .get(id)
            .ok_or_else(|| Error::UnknownBasisId(id.clone()))
    }

    /// All elements in natural identifier order.
    pub fn elements(&self) -> impl Iterator<Item = (&Ident, &Element)> {
        self.elements.iter()
    }

    /// Identifiers of the given dimension, in natural order.
    pub fn ids_of_dim(&self, dim: usize) -> impl Iterator<Item = &Ident> {
        self.elements
            .iter()
            .filter(move |(_, e)| e.dim == dim)
            .map(|(id, _)| id)
    }

    /// Largest dimension present, if any.
    pub fn max_dim(&self) -> Option<usize> {
        self.elements.values().map(|e| e.dim).max()
    }

    pub fn dim_of(&self, id: &Ident) -> Result<usize> {
        Ok(self.element(id)?.dim)
    }

    pub fn is_thin(&self, id: &Ident) -> Result<bool> {
        Ok(self.element(id)?.thin)
    }

    pub fn d_minus(&self, id: &Ident) -> Result<&Chain> {
        match &self.element(id)?.faces {
            Some((dm, _)) => Ok(dm),
            None => Err(Error::DimensionZero("d_minus")),
        }
    }

    pub fn d_plus(&self, id: &Ident) -> Result<&Chain> {
        match &self.element(id)?.faces {
            Some((_, dp)) => Ok(dp),
            None => Err(Error::DimensionZero("d_plus")),
        }
    }

    pub fn face_of(&self, id: &Ident, sign: Sign) -> Result<&Chain> {
        match sign {
            Sign::Minus => self.d_minus(id),
            Sign::Plus => self.d_plus(id),
        }
    }

    pub fn epsilon_of(&self, id: &Ident) -> Result<&BigInt> {
        match &self.element(id)?.epsilon {
            Some(e) => Ok(e),
            None => Err(Error::WrongDimension {
                expected: 0,
                found: self.element(id)?.dim,
            }),
        }
    }

    /// Check that every term of `c` names a basis element of dimension
    /// `c.dim()`.
    pub fn check_chain(&self, c: &Chain) -> Result<()> {
        for id in c.support() {
            let element = self.element(id)?;
            if element.dim != c.dim() {
                return Err(Error::WrongDimension {
                    expected: c.dim(),
                    found: element.dim,
                });
            }
        }
        Ok(())
    }

    /// The boundary `d(c) = d_plus(c) - d_minus(c)`, extended linearly, with
    /// cancellation applied. Undefined on dimension-zero chains.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        if c.dim() == 0 {
            return Err(Error::DimensionZero("boundary"));
        }
        self.check_chain(c)?;
        let mut out = Chain::zero(c.dim() - 1);
        for (id, coeff) in c.terms() {
            let (dm, dp) = self.element(id)?.faces.as_ref().expect("dim > 0 has faces");
            for (t, k) in dp.terms() {
                out.add_term(t.clone(), k * coeff);
            }
            for (t, k) in dm.terms() {
                out.add_term(t.clone(), -(k * coeff));
            }
        }
        Ok(out)
    }

    /// The negative or positive part of the boundary of `c`.
    ///
    /// This is the sign component of `split(boundary(c))`. Because of
    /// cancellation, the face of a sum is in general not the sum of faces.
    pub fn face(&self, c: &Chain, sign: Sign) -> Result<Chain> {
        let (neg, pos) = self.boundary(c)?.split();
        Ok(match sign {
            Sign::Minus => neg,
            Sign::Plus => pos,
        })
    }

    /// `r`-fold iterated face with the given sign; `r = 0` returns the chain.
    pub fn face_iter(&self, c: &Chain, r: usize, sign: Sign) -> Result<Chain> {
        if r > c.dim() {
            return Err(Error::RankTooLarge { rank: r, dim: c.dim() });
        }
        let mut out = c.clone();
        for _ in 0..r {
            out = self.face(&out, sign)?;
        }
        Ok(out)
    }

    /// The augmentation of a dimension-zero chain.
    pub fn augment(&self, c: &Chain) -> Result<BigInt> {
        if c.dim() != 0 {
            return Err(Error::WrongDimension {
                expected: 0,
                found: c.dim(),
            });
        }
        self.check_chain(c)?;
        let mut total = BigInt::from(0);
        for (id, coeff) in c.terms() {
            total += coeff * self.epsilon_of(id)?;
        }
        Ok(total)
    }

    /// Report every violation of the free augmented directed complex axioms:
    /// face-chain dimensions, disjoint supports, positivity of face
    /// coefficients, `dd a = 0` in dimensions >= 2, and `ed a = 0` in
    /// dimension 1. An empty report means the complex is valid.
    pub fn validate_fadc(&self) -> FadcReport {
        let mut violations = Vec::new();
        for (id, element) in &self.elements {
            let Some((dm, dp)) = &element.faces else {
                continue;
            };
            let mut structurally_ok = true;
            for (chain, label) in [(dm, "d_minus"), (dp, "d_plus")] {
                for (term, coeff) in chain.terms() {
                    let term_dim = self.elements[term].dim;
                    if term_dim + 1 != element.dim {
                        violations.push(format!(
                            "{label}({id}) contains `{term}` of dimension {term_dim}, expected {}",
                            element.dim - 1
                        ));
                        structurally_ok = false;
                    }
                    if coeff.sign() == num_bigint::Sign::Minus {
                        violations.push(format!(
                            "{label}({id}) has non-positive coefficient {coeff} at `{term}`"
                        ));
                        structurally_ok = false;
                    }
                }
            }
            if let Some(shared) = dm.support().find(|t| dp.contains(t)) {
                violations.push(format!(
                    "faces of `{id}` share the term `{shared}` (supports must be disjoint)"
                ));
            }
            if !structurally_ok {
                // boundary arithmetic below would read garbage dimensions
                continue;
            }
            let boundary = dp.sub(dm);
            if element.dim >= 2 {
                match self.boundary(&boundary) {
                    Ok(dd) if dd.is_zero() => {}
                    Ok(dd) => violations.push(format!("dd({id}) = {dd}, expected 0")),
                    Err(e) => violations.push(format!("dd({id}) not computable: {e}")),
                }
            } else {
                match self.augment(&boundary) {
                    Ok(ed) if ed == BigInt::from(0) => {}
                    Ok(ed) => violations.push(format!("ed({id}) = {ed}, expected 0")),
                    Err(e) => violations.push(format!("ed({id}) not computable: {e}")),
                }
            }
        }
        FadcReport { violations }
    }
}

/// Violation listing from [`Complex::validate_fadc`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FadcReport {
    violations: Vec<String>,
}

impl FadcReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }
}

impl std::fmt::Display for FadcReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn id(s: &str) -> Ident {
        Ident::new(s)
    }

    fn chain(dim: usize, terms: &[(&str, i64)]) -> Chain {
        Chain::from_terms(dim, terms.iter().map(|(s, c)| (id(s), *c)))
    }

    #[test]
    fn boundary_of_top_cell() {
        let k = samples::opetope5_complex();
        let b = k.boundary(&Chain::unit(5, id("a17"))).unwrap();
        assert_eq!(
            b,
            chain(
                4,
                &[("b17", 1), ("a16", -1), ("a15", -1), ("a14", -1), ("a13", -1)]
            )
        );
    }

    #[test]
    fn boundary_of_zero_chain() {
        let k = samples::opetope5_complex();
        let b = k.boundary(&Chain::zero(3)).unwrap();
        assert!(b.is_zero());
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn boundary_cancels_across_terms() {
        // the b16, b15, b14 contributions cancel in the boundary of the sum
        let k = samples::opetope5_complex();
        let sum = chain(4, &[("a16", 1), ("a15", 1), ("a14", 1), ("a13", 1)]);
        let b = k.boundary(&sum).unwrap();
        assert_eq!(
            b,
            chain(
                3,
                &[
                    ("b13", 1),
                    ("a12", -1),
                    ("a11", -1),
                    ("a10", -1),
                    ("a9.5", -1),
                    ("a9", -1),
                    ("a8", -1)
                ]
            )
        );
    }

    #[test]
    fn boundary_rejects_dimension_zero() {
        let k = samples::opetope5_complex();
        assert_eq!(
            k.boundary(&Chain::unit(0, id("a1"))),
            Err(Error::DimensionZero("boundary"))
        );
    }

    #[test]
    fn boundary_rejects_unknown_ids() {
        let k = samples::opetope5_complex();
        assert_eq!(
            k.boundary(&Chain::unit(1, id("nope"))),
            Err(Error::UnknownBasisId(id("nope")))
        );
    }

    #[test]
    fn face_of_top_cell() {
        let k = samples::opetope5_complex();
        let a17 = Chain::unit(5, id("a17"));
        assert_eq!(
            k.face(&a17, Sign::Minus).unwrap(),
            chain(4, &[("a16", 1), ("a15", 1), ("a14", 1), ("a13", 1)])
        );
        // single term: the face is just the stored face chain
        assert_eq!(
            k.face(&a17, Sign::Plus).unwrap(),
            *k.d_plus(&id("a17")).unwrap()
        );
    }

    #[test]
    fn face_of_sum_sees_cancellation() {
        let k = samples::opetope5_complex();
        let sum = chain(4, &[("a16", 1), ("a15", 1), ("a14", 1), ("a13", 1)]);
        assert_eq!(k.face(&sum, Sign::Plus).unwrap(), chain(3, &[("b13", 1)]));
    }

    #[test]
    fn face_iter_examples() {
        let k = samples::opetope5_complex();
        let a17 = Chain::unit(5, id("a17"));
        assert_eq!(
            k.face_iter(&a17, 3, Sign::Minus).unwrap(),
            chain(2, &[("a7", 1), ("a6", 1), ("a5.5", 1), ("a5", 1)])
        );
        assert_eq!(
            k.face_iter(&a17, 5, Sign::Plus).unwrap(),
            chain(0, &[("b2", 1)])
        );
        let c = chain(2, &[("a7", 1), ("b9", 2)]);
        assert_eq!(k.face_iter(&c, 0, Sign::Minus).unwrap(), c);
        assert_eq!(
            k.face_iter(&a17, 6, Sign::Minus),
            Err(Error::RankTooLarge { rank: 6, dim: 5 })
        );
    }

    #[test]
    fn augment_examples() {
        let k = samples::opetope5_complex();
        assert_eq!(
            k.augment(&Chain::unit(0, id("a1"))).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(k.augment(&Chain::zero(0)).unwrap(), BigInt::from(0));
        let a17 = Chain::unit(5, id("a17"));
        let bottom = k.face_iter(&a17, 5, Sign::Minus).unwrap();
        assert_eq!(bottom, chain(0, &[("a1", 1)]));
        assert_eq!(k.augment(&bottom).unwrap(), BigInt::from(1));
        assert_eq!(
            k.augment(&a17),
            Err(Error::WrongDimension { expected: 0, found: 5 })
        );
    }

    #[test]
    fn sample_complex_is_a_valid_fadc() {
        let k = samples::opetope5_complex();
        let report = k.validate_fadc();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn point_complex_is_valid() {
        let k = Complex::build(vec![ElementSpec {
            id: id("p"),
            dim: 0,
            ..Default::default()
        }])
        .unwrap();
        assert!(k.validate_fadc().is_valid());
        assert_eq!(*k.epsilon_of(&id("p")).unwrap(), BigInt::from(1));
    }

    #[test]
    fn corrupted_face_breaks_dd() {
        // redirect d_plus(b5) from b2 to b3: dd(b8) becomes b3 - b2
        let k = samples::opetope5_complex_with(|spec| {
            if spec.id.as_str() == "b5" {
                spec.d_plus = vec![(id("b3"), BigInt::from(1))];
            }
        });
        let report = k.validate_fadc();
        assert!(!report.is_valid());
        assert!(
            report
                .violations()
                .iter()
                .any(|v| v.starts_with("dd(b8)")),
            "{report}"
        );
    }

    #[test]
    fn dd_is_zero_for_every_high_dimensional_element() {
        let k = samples::opetope5_complex();
        for (eid, element) in k.elements() {
            if element.dim >= 2 {
                let u = Chain::unit(element.dim, eid.clone());
                let dd = k.boundary(&k.boundary(&u).unwrap()).unwrap();
                assert!(dd.is_zero(), "dd({eid}) = {dd}");
            }
        }
    }

    #[test]
    fn faces_of_faces_agree() {
        // face(d_minus(a), s) == face(d_plus(a), s) for both signs, dim >= 2
        let k = samples::opetope5_complex();
        for (eid, element) in k.elements() {
            if element.dim >= 2 {
                let dm = k.d_minus(eid).unwrap();
                let dp = k.d_plus(eid).unwrap();
                for sign in [Sign::Minus, Sign::Plus] {
                    assert_eq!(
                        k.face(dm, sign).unwrap(),
                        k.face(dp, sign).unwrap(),
                        "faces of faces differ at {eid}"
                    );
                }
            }
        }
    }

    #[test]
    fn build_rejects_bad_input() {
        let dup = vec![
            ElementSpec { id: id("p"), dim: 0, ..Default::default() },
            ElementSpec { id: id("p"), dim: 0, ..Default::default() },
        ];
        assert_eq!(Complex::build(dup), Err(Error::DuplicateId(id("p"))));

        let bad_id = vec![ElementSpec { id: id("a b"), dim: 0, ..Default::default() }];
        assert!(matches!(Complex::build(bad_id), Err(Error::InvalidId(_))));

        let dangling = vec![ElementSpec {
            id: id("e"),
            dim: 1,
            d_minus: vec![(id("x"), BigInt::from(1))],
            d_plus: vec![(id("y"), BigInt::from(1))],
            ..Default::default()
        }];
        assert!(matches!(Complex::build(dangling), Err(Error::Reference { .. })));
    }
}
