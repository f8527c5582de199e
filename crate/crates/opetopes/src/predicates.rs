//! Graded predicates on complexes: atomic, unital, loop-free, opetopic,
//! reduced.
//!
//! `is_unital` and `is_loop_free` each come in a `General` mode that follows
//! the definitions via iterated faces, and a `Fast` mode that is valid
//! whenever every positive-dimensional element has a single-element positive
//! face. The two modes agree on every complex satisfying that hypothesis,
//! which the property suite checks over the generated corpus.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::chain::{Chain, Sign};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::ident::Ident;

/// Checking mode for the unital and loop-free predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    General,
    Fast,
}

/// Returns `Some(n)` when the complex is atomic of dimension `n`: a unique
/// basis element of maximal dimension, and every lower-dimensional element a
/// term of some face one dimension up.
pub fn is_atomic(k: &Complex) -> Result<Option<usize>> {
    let Some(n) = k.max_dim() else {
        return Err(Error::EmptyBasis);
    };
    if k.ids_of_dim(n).count() != 1 {
        return Ok(None);
    }
    for (id, element) in k.elements() {
        if element.dim == n {
            continue;
        }
        let mut covered = false;
        for (_, above) in k.elements() {
            if above.dim != element.dim + 1 {
                continue;
            }
            if let Some((dm, dp)) = &above.faces {
                if dm.contains(id) || dp.contains(id) {
                    covered = true;
                    break;
                }
            }
        }
        if !covered {
            return Ok(None);
        }
    }
    Ok(Some(n))
}

/// The unique top element of an atomic complex, with its dimension.
pub fn atomic_top(k: &Complex) -> Result<(Ident, usize)> {
    match is_atomic(k)? {
        Some(n) => Ok((k.ids_of_dim(n).next().expect("atomic").clone(), n)),
        None => Err(Error::NotAtomic),
    }
}

/// Check the fast-path hypothesis: `d_plus(a)` is a single basis element for
/// every positive-dimensional `a`.
fn check_fast_hypothesis(k: &Complex) -> Result<()> {
    for (id, element) in k.elements() {
        if element.dim > 0 {
            let dp = k.d_plus(id)?;
            if dp.single_unit().is_none() {
                return Err(Error::FastPathInapplicable(id.clone()));
            }
        }
    }
    Ok(())
}

/// Unitality: every basis element's iterated faces of both signs augment
/// to 1. In fast mode this reduces to `epsilon = 1` on dimension zero.
pub fn is_unital(k: &Complex, mode: Mode) -> Result<bool> {
    match mode {
        Mode::Fast => {
            check_fast_hypothesis(k)?;
            for (id, element) in k.elements() {
                if element.dim == 0 && *k.epsilon_of(id)? != BigInt::from(1) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Mode::General => {
            let one = BigInt::from(1);
            for (id, element) in k.elements() {
                let unit = Chain::unit(element.dim, id.clone());
                for sign in [Sign::Minus, Sign::Plus] {
                    let bottom = k.face_iter(&unit, element.dim, sign)?;
                    if k.augment(&bottom)? != one {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Loop-freeness: the precedence digraph is acyclic.
///
/// General mode adds, for every basis element `a` and every `1 <= r <= dim a`,
/// an arc from each term of the r-fold negative face to each term of the
/// r-fold positive face. Fast mode uses `r = 1` only.
pub fn is_loop_free(k: &Complex, mode: Mode) -> Result<bool> {
    Ok(loop_free_order(k, mode)?.is_some())
}

/// The witnessing topological order when the complex is loop-free, `None`
/// otherwise. The order is whatever the search finds, not canonical.
pub fn loop_free_order(k: &Complex, mode: Mode) -> Result<Option<Vec<Ident>>> {
    if mode == Mode::Fast {
        check_fast_hypothesis(k)?;
    }
    let ids: Vec<&Ident> = k.elements().map(|(id, _)| id).collect();
    let index: BTreeMap<&Ident, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    let mut has_self_arc = false;
    for (id, element) in k.elements() {
        let max_r = match mode {
            Mode::Fast => 1.min(element.dim),
            Mode::General => element.dim,
        };
        let unit = Chain::unit(element.dim, id.clone());
        let mut minus = unit.clone();
        let mut plus = unit;
        for _ in 0..max_r {
            minus = k.face(&minus, Sign::Minus)?;
            plus = k.face(&plus, Sign::Plus)?;
            for u in minus.support() {
                for v in plus.support() {
                    if u == v {
                        has_self_arc = true;
                    }
                    arcs[index[u]].push(index[v]);
                }
            }
        }
    }
    if has_self_arc {
        return Ok(None);
    }
    // iterative depth-first search, collecting a reverse postorder
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let mut color = vec![Color::White; ids.len()];
    let mut order = Vec::with_capacity(ids.len());
    for start in 0..ids.len() {
        if color[start] != Color::White {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        color[start] = Color::Grey;
        while let Some(frame) = stack.last_mut() {
            let node = frame.0;
            if frame.1 < arcs[node].len() {
                let succ = arcs[node][frame.1];
                frame.1 += 1;
                match color[succ] {
                    Color::White => {
                        color[succ] = Color::Grey;
                        stack.push((succ, 0));
                    }
                    Color::Grey => return Ok(None),
                    Color::Black => {}
                }
            } else {
                color[node] = Color::Black;
                order.push(node);
                stack.pop();
            }
        }
    }
    order.reverse();
    Ok(Some(order.into_iter().map(|i| ids[i].clone()).collect()))
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComplexFlags {
    pub fadc: bool,
    pub atomic: bool,
    pub atomic_dim: Option<usize>,
    pub unital: bool,
    pub loop_free: bool,
    pub opetopic: bool,
    pub reduced: bool,
}

/// Compute every flag, continuing past failures so reports stay informative.
pub fn classify(k: &Complex) -> ComplexFlags {
    let fadc = k.validate_fadc().is_valid();
    let atomic_dim = is_atomic(k).ok().flatten();
    let unital = is_unital(k, Mode::General).unwrap_or(false);
    let loop_free = is_loop_free(k, Mode::General).unwrap_or(false);

    let mut thin_positive = true;
    let mut plus_single_non_thin = true;
    let mut thin_minus_single_non_thin = true;
    for (id, element) in k.elements() {
        if element.thin && element.dim == 0 {
            thin_positive = false;
        }
        if let Some((dm, dp)) = &element.faces {
            match dp.single_unit() {
                Some(t) if !k.is_thin(t).unwrap_or(true) => {}
                _ => plus_single_non_thin = false,
            }
            if element.thin {
                match dm.single_unit() {
                    Some(t) if !k.is_thin(t).unwrap_or(true) => {}
                    _ => thin_minus_single_non_thin = false,
                }
            }
        }
        let _ = id;
    }

    let opetopic = fadc
        && atomic_dim.is_some()
        && unital
        && loop_free
        && thin_positive
        && plus_single_non_thin
        && thin_minus_single_non_thin;

    let mut reduced = opetopic;
    if opetopic {
        for (id, element) in k.elements() {
            if !element.thin {
                continue;
            }
            let witnessed = k.elements().any(|(other, oe)| {
                other != id
                    && oe
                        .faces
                        .as_ref()
                        .is_some_and(|(dm, _)| dm.single_unit() == Some(id))
            });
            if !witnessed {
                reduced = false;
                break;
            }
        }
    }

    ComplexFlags {
        fadc,
        atomic: atomic_dim.is_some(),
        atomic_dim,
        unital,
        loop_free,
        opetopic,
        reduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ElementSpec;
    use crate::samples;

    fn id(s: &str) -> Ident {
        Ident::new(s)
    }

    fn point() -> Complex {
        Complex::build(vec![ElementSpec { id: id("p"), dim: 0, ..Default::default() }]).unwrap()
    }

    #[test]
    fn sample_is_atomic_of_dimension_five() {
        let k = samples::opetope5_complex();
        assert_eq!(is_atomic(&k).unwrap(), Some(5));
        assert_eq!(atomic_top(&k).unwrap(), (id("a17"), 5));
    }

    #[test]
    fn point_is_atomic_of_dimension_zero() {
        assert_eq!(is_atomic(&point()).unwrap(), Some(0));
    }

    #[test]
    fn deleting_the_top_breaks_atomicity() {
        let k = samples::opetope5_complex_without(&["a17"]);
        // four maximal 4-dimensional elements remain
        assert_eq!(is_atomic(&k).unwrap(), None);
    }

    #[test]
    fn empty_basis_is_an_error() {
        let k = Complex::build(vec![]).unwrap();
        assert_eq!(is_atomic(&k), Err(Error::EmptyBasis));
    }

    #[test]
    fn unital_in_both_modes() {
        let k = samples::opetope5_complex();
        assert!(is_unital(&k, Mode::Fast).unwrap());
        assert!(is_unital(&k, Mode::General).unwrap());
        assert!(is_unital(&point(), Mode::General).unwrap());
    }

    #[test]
    fn non_unit_augmentation_fails_both_modes() {
        let k = samples::opetope5_complex_with(|spec| {
            if spec.id.as_str() == "a1" {
                spec.epsilon = Some(BigInt::from(2));
            }
        });
        assert!(!is_unital(&k, Mode::Fast).unwrap());
        assert!(!is_unital(&k, Mode::General).unwrap());
    }

    #[test]
    fn fast_path_rejects_wide_positive_faces() {
        // give the top a two-element positive face
        let k = samples::opetope5_complex_with(|spec| {
            if spec.id.as_str() == "a17" {
                spec.d_plus = vec![(id("b17"), BigInt::from(1)), (id("a16"), BigInt::from(1))];
            }
        });
        assert_eq!(
            is_unital(&k, Mode::Fast),
            Err(Error::FastPathInapplicable(id("a17")))
        );
    }

    #[test]
    fn sample_is_loop_free_in_both_modes() {
        let k = samples::opetope5_complex();
        assert!(is_loop_free(&k, Mode::Fast).unwrap());
        assert!(is_loop_free(&k, Mode::General).unwrap());
        let order = loop_free_order(&k, Mode::Fast).unwrap().unwrap();
        assert_eq!(order.len(), k.len());
    }

    #[test]
    fn point_is_loop_free() {
        assert!(is_loop_free(&point(), Mode::General).unwrap());
    }

    #[test]
    fn two_cycle_is_not_loop_free() {
        // e: x -> y, f: y -> x, and a 2-cell u with d_minus = e, d_plus = f.
        // The r = 1 arcs force x < y (from e) and y < x (from f).
        let one = BigInt::from(1);
        let k = Complex::build(vec![
            ElementSpec { id: id("x"), dim: 0, ..Default::default() },
            ElementSpec { id: id("y"), dim: 0, ..Default::default() },
            ElementSpec {
                id: id("e"),
                dim: 1,
                d_minus: vec![(id("x"), one.clone())],
                d_plus: vec![(id("y"), one.clone())],
                ..Default::default()
            },
            ElementSpec {
                id: id("f"),
                dim: 1,
                d_minus: vec![(id("y"), one.clone())],
                d_plus: vec![(id("x"), one.clone())],
                ..Default::default()
            },
            ElementSpec {
                id: id("u"),
                dim: 2,
                d_minus: vec![(id("e"), one.clone())],
                d_plus: vec![(id("f"), one.clone())],
                ..Default::default()
            },
        ])
        .unwrap();
        assert!(!is_loop_free(&k, Mode::Fast).unwrap());
        assert!(!is_loop_free(&k, Mode::General).unwrap());
        assert_eq!(loop_free_order(&k, Mode::Fast).unwrap(), None);
    }

    #[test]
    fn classify_sample() {
        let flags = classify(&samples::opetope5_complex());
        assert_eq!(
            flags,
            ComplexFlags {
                fadc: true,
                atomic: true,
                atomic_dim: Some(5),
                unital: true,
                loop_free: true,
                opetopic: true,
                reduced: true,
            }
        );
    }

    #[test]
    fn classify_point() {
        let flags = classify(&point());
        assert!(flags.fadc && flags.atomic && flags.unital && flags.loop_free);
        assert!(flags.opetopic && flags.reduced);
        assert_eq!(flags.atomic_dim, Some(0));
    }

    #[test]
    fn implication_chain() {
        for k in [samples::opetope5_complex(), point()] {
            let f = classify(&k);
            assert!(!f.reduced || f.opetopic);
            assert!(!f.opetopic || (f.fadc && f.atomic && f.unital && f.loop_free));
        }
    }

    #[test]
    fn iterated_positive_faces_of_the_top_are_singletons() {
        let k = samples::opetope5_complex();
        let (g, n) = atomic_top(&k).unwrap();
        let mut c = Chain::unit(n, g);
        for _ in 0..n {
            c = k.face(&c, Sign::Plus).unwrap();
            assert!(c.single_unit().is_some(), "not a singleton: {c}");
        }
    }
}
