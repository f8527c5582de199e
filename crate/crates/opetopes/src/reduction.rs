//! Atomic subcomplexes, reduction to a reduced complex, and source/target
//! opetopes.
//!
//! The subcomplex generated by a basis element is computed level by level
//! from the iterated-face formula. Reduction runs in two stages, each to a
//! fixpoint: stage 1 merges a face chain made of several thin elements into
//! one fresh thin element; stage 2 deletes thin elements that are nobody's
//! negative face, substituting their positive face by their negative face.
//! Deleting a thin top drops the dimension by one.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::chain::{Chain, Sign};
use crate::complex::{Complex, Element, ElementSpec};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::predicates::{atomic_top, classify};

/// The atomic subcomplex generated by `h`: basis per level `q` given by the
/// terms of the `(m-q)`-fold negative face of `h` together with the positive
/// faces of the terms one level up; faces, thin marks and augmentations
/// restricted from `k`.
pub fn atomic_subcomplex(k: &Complex, h: &Ident) -> Result<Complex> {
    if !classify(k).opetopic {
        return Err(Error::NotOpetopic);
    }
    let m = k.element(h)?.dim;
    let top = Chain::unit(m, h.clone());
    let mut keep: Vec<Ident> = vec![h.clone()];
    for q in (0..m).rev() {
        let lower = k.face_iter(&top, m - q, Sign::Minus)?;
        keep.extend(lower.support().cloned());
        let upper = k.face_iter(&top, m - q - 1, Sign::Minus)?;
        for a in upper.support() {
            keep.extend(k.d_plus(a)?.support().cloned());
        }
    }
    keep.sort();
    keep.dedup();
    let specs = keep
        .iter()
        .map(|id| element_to_spec(id, k.element(id).expect("kept ids exist")))
        .collect();
    Complex::build(specs)
}

fn element_to_spec(id: &Ident, e: &Element) -> ElementSpec {
    let (d_minus, d_plus) = match &e.faces {
        Some((dm, dp)) => (
            dm.terms().map(|(i, c)| (i.clone(), c.clone())).collect(),
            dp.terms().map(|(i, c)| (i.clone(), c.clone())).collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    ElementSpec {
        id: id.clone(),
        dim: e.dim,
        thin: e.thin,
        d_minus,
        d_plus,
        epsilon: e.epsilon.clone(),
    }
}

/// Reduce an opetopic complex to a reduced one by the two-stage procedure,
/// iterated to a joint fixpoint.
pub fn reduce(k: &Complex) -> Result<Complex> {
    if !classify(k).opetopic {
        return Err(Error::NotOpetopic);
    }
    let mut elements: BTreeMap<Ident, Element> = k
        .elements()
        .map(|(id, e)| (id.clone(), e.clone()))
        .collect();
    loop {
        let mut fired = false;
        while stage1_step(&mut elements)? {
            fired = true;
        }
        while stage2_step(&mut elements)? {
            fired = true;
        }
        if !fired {
            break;
        }
    }
    let specs = elements
        .iter()
        .map(|(id, e)| element_to_spec(id, e))
        .collect();
    Complex::build(specs)
}

fn invariant(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Structure(format!("reduction invariant violated: {}", msg())))
    }
}

/// Stage 1, one firing: find an element `b` whose negative face is a sum of
/// two or more thin elements, order that sum as a path, and replace the path
/// (thin elements and the inner connecting elements) by one fresh thin
/// element spanning it.
///
/// Only elements that appear as vertices of the minus-side networks qualify:
/// in an atomic opetopic complex those are exactly the elements that are not
/// the positive face of anything. A positive-face element can share its
/// all-thin negative face with the nullary cells witnessing those thin
/// elements, and merging it would tear their paths apart.
fn stage1_step(elements: &mut BTreeMap<Ident, Element>) -> Result<bool> {
    let plus_images: std::collections::BTreeSet<&Ident> = elements
        .values()
        .filter_map(|e| e.faces.as_ref().and_then(|(_, dp)| dp.single_unit()))
        .collect();
    let candidate = elements.iter().find_map(|(id, e)| {
        if plus_images.contains(id) {
            return None;
        }
        let (dm, _) = e.faces.as_ref()?;
        let all_thin = dm
            .support()
            .all(|t| elements.get(t).is_some_and(|te| te.thin));
        (dm.support_len() >= 2 && all_thin).then(|| id.clone())
    });
    let Some(b) = candidate else {
        return Ok(false);
    };
    let dm = elements[&b].faces.as_ref().unwrap().0.clone();
    invariant(dm.has_unit_coefficients(), || {
        format!("d_minus({b}) = {dm} has a repeated thin term")
    })?;

    // the thin terms chain up into a path: d_plus of one is d_minus of the next
    let mut by_minus: BTreeMap<Ident, Ident> = BTreeMap::new();
    let mut plus_points: Vec<Ident> = Vec::new();
    for a in dm.support() {
        let (adm, adp) = elements[a].faces.as_ref().expect("thin elements have faces");
        let p = adm.single_unit().cloned();
        let s = adp.single_unit().cloned();
        let (Some(p), Some(s)) = (p, s) else {
            return invariant(false, || format!("thin `{a}` lacks singleton faces")).map(|_| false);
        };
        invariant(by_minus.insert(p.clone(), a.clone()).is_none(), || {
            format!("two thin terms of d_minus({b}) share the negative face `{p}`")
        })?;
        plus_points.push(s);
    }
    let start = dm
        .support()
        .filter(|a| {
            let p = elements[*a].faces.as_ref().unwrap().0.single_unit().unwrap();
            !plus_points.contains(p)
        })
        .cloned()
        .collect::<Vec<_>>();
    invariant(start.len() == 1, || {
        format!("d_minus({b}) does not order into a unique path")
    })?;
    let mut path = vec![start[0].clone()];
    while path.len() < dm.support_len() {
        let last = path.last().unwrap();
        let s = elements[last].faces.as_ref().unwrap().1.single_unit().unwrap().clone();
        let Some(next) = by_minus.get(&s) else {
            return invariant(false, || format!("path through d_minus({b}) breaks at `{s}`"))
                .map(|_| false);
        };
        invariant(!path.contains(next), || {
            format!("path through d_minus({b}) revisits `{next}`")
        })?;
        path.push(next.clone());
    }

    let first = path.first().unwrap().clone();
    let last = path.last().unwrap().clone();
    let t_minus = elements[&first].faces.as_ref().unwrap().0.clone();
    let t_plus = elements[&last].faces.as_ref().unwrap().1.clone();
    let face_dim = elements[&first].dim;

    // deleted: all path elements, plus the inner connection points
    let mut deleted: Vec<Ident> = path.clone();
    for a in &path[..path.len() - 1] {
        deleted.push(
            elements[a]
                .faces
                .as_ref()
                .unwrap()
                .1
                .single_unit()
                .unwrap()
                .clone(),
        );
    }

    let fresh = fresh_id(elements, &format!("thin_{b}"));
    for id in &deleted {
        elements.remove(id);
    }
    elements.insert(
        fresh.clone(),
        Element {
            dim: face_dim,
            thin: true,
            faces: Some((t_minus, t_plus)),
            epsilon: None,
        },
    );

    // substitute the fresh element for the whole path sum wherever the sum
    // occurred; any partial occurrence of a deleted element is an invariant
    // violation
    let ids: Vec<Ident> = elements.keys().cloned().collect();
    for id in ids {
        let Some((dm_c, dp_c)) = elements[&id].faces.clone() else {
            continue;
        };
        let mut changed = false;
        let mut new_faces = (dm_c, dp_c);
        for chain in [&mut new_faces.0, &mut new_faces.1] {
            if !deleted.iter().any(|d| chain.contains(d)) {
                continue;
            }
            let covers_path = path
                .iter()
                .all(|a| chain.coeff(a) == BigInt::from(1));
            let touches_inner = deleted
                .iter()
                .filter(|d| !path.contains(d))
                .any(|d| chain.contains(d));
            invariant(covers_path && !touches_inner, || {
                format!("faces of `{id}` overlap the merged path only partially")
            })?;
            for a in &path {
                chain.add_term(a.clone(), BigInt::from(-1));
            }
            chain.add_term(fresh.clone(), BigInt::from(1));
            changed = true;
        }
        if changed {
            elements.get_mut(&id).unwrap().faces = Some(new_faces);
        }
    }
    Ok(true)
}

/// Stage 2, one firing: find a thin element that is not the negative face of
/// any other element, delete it, and substitute its positive face by its
/// negative face everywhere.
fn stage2_step(elements: &mut BTreeMap<Ident, Element>) -> Result<bool> {
    let orphan = elements.iter().find_map(|(id, e)| {
        if !e.thin {
            return None;
        }
        let witnessed = elements.iter().any(|(other, oe)| {
            other != id
                && oe
                    .faces
                    .as_ref()
                    .is_some_and(|(dm, _)| dm.single_unit() == Some(id))
        });
        (!witnessed).then(|| id.clone())
    });
    let Some(a) = orphan else {
        return Ok(false);
    };
    let (dm, dp) = elements[&a].faces.clone().expect("thin elements have faces");
    let (Some(p), Some(s)) = (dm.single_unit().cloned(), dp.single_unit().cloned()) else {
        return invariant(false, || format!("orphan thin `{a}` lacks singleton faces"))
            .map(|_| false);
    };
    invariant(p != s, || format!("orphan thin `{a}` has equal faces"))?;
    elements.remove(&a);
    elements.remove(&s);
    let ids: Vec<Ident> = elements.keys().cloned().collect();
    for id in ids {
        let Some((dm_c, dp_c)) = elements[&id].faces.clone() else {
            continue;
        };
        let mut new_faces = (dm_c, dp_c);
        let mut changed = false;
        for chain in [&mut new_faces.0, &mut new_faces.1] {
            let a_coeff = chain.coeff(&a);
            if a_coeff != BigInt::from(0) {
                chain.add_term(a.clone(), -a_coeff);
                changed = true;
            }
            let s_coeff = chain.coeff(&s);
            if s_coeff != BigInt::from(0) {
                chain.add_term(s.clone(), -s_coeff.clone());
                chain.add_term(p.clone(), s_coeff);
                changed = true;
            }
        }
        if changed {
            elements.get_mut(&id).unwrap().faces = Some(new_faces);
        }
    }
    Ok(true)
}

fn fresh_id(elements: &BTreeMap<Ident, Element>, base: &str) -> Ident {
    let mut candidate = Ident::new(base);
    let mut counter = 1;
    while elements.contains_key(&candidate) {
        counter += 1;
        candidate = Ident::new(format!("{base}_{counter}"));
    }
    candidate
}

/// The source opetopes of a reduced complex of positive dimension: one
/// reduced complex per term of the top's negative face, or none at all when
/// that face is a single thin element (the nullary case).
pub fn sources(k: &Complex) -> Result<Vec<Complex>> {
    let flags = classify(k);
    if !flags.reduced {
        return Err(Error::NotReduced);
    }
    let n = flags.atomic_dim.expect("reduced implies atomic");
    if n == 0 {
        return Err(Error::DimensionZero("sources"));
    }
    let (g, _) = atomic_top(k)?;
    let dm = k.d_minus(&g)?.clone();
    if let Some(t) = dm.single_unit() {
        if k.is_thin(t)? {
            return Ok(Vec::new());
        }
    }
    dm.support()
        .map(|t| reduce(&atomic_subcomplex(k, t)?))
        .collect()
}

/// The target opetope of a reduced complex of positive dimension.
pub fn target(k: &Complex) -> Result<Complex> {
    let flags = classify(k);
    if !flags.reduced {
        return Err(Error::NotReduced);
    }
    let n = flags.atomic_dim.expect("reduced implies atomic");
    if n == 0 {
        return Err(Error::DimensionZero("target"));
    }
    let (g, _) = atomic_top(k)?;
    let dp = k.d_plus(&g)?;
    let t = dp
        .single_unit()
        .ok_or_else(|| Error::Structure(format!("d_plus({g}) is not a single element")))?
        .clone();
    reduce(&atomic_subcomplex(k, &t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::iso_complexes;
    use crate::samples;
    use std::collections::BTreeSet;

    fn id(s: &str) -> Ident {
        Ident::new(s)
    }

    fn ids_of_dim(k: &Complex, q: usize) -> BTreeSet<&str> {
        k.ids_of_dim(q).map(|i| i.as_str()).collect()
    }

    /// Independent oracle: the subcomplex basis by naive downward closure.
    fn downward_closure(k: &Complex, h: &Ident) -> BTreeSet<Ident> {
        let mut keep: BTreeSet<Ident> = BTreeSet::new();
        let mut stack = vec![h.clone()];
        while let Some(cur) = stack.pop() {
            if !keep.insert(cur.clone()) {
                continue;
            }
            if let Some((dm, dp)) = &k.element(&cur).unwrap().faces {
                stack.extend(dm.support().cloned());
                stack.extend(dp.support().cloned());
            }
        }
        keep
    }

    #[test]
    fn subcomplex_of_the_positive_face_of_the_top() {
        let k = samples::opetope5_complex();
        let sub = atomic_subcomplex(&k, &id("b17")).unwrap();
        assert_eq!(ids_of_dim(&sub, 4), ["b17"].into());
        assert_eq!(
            ids_of_dim(&sub, 3),
            ["a12", "a11", "a10", "a9.5", "a9", "a8", "b13"].into()
        );
        assert_eq!(
            ids_of_dim(&sub, 2),
            ["a7", "a6", "a5.5", "a5", "b12", "b11", "b10", "b9.5", "b9", "b8"].into()
        );
        assert_eq!(
            ids_of_dim(&sub, 1),
            ["a4", "a3", "a2", "b7", "b6", "b5.5", "b5"].into()
        );
        assert_eq!(ids_of_dim(&sub, 0), ["a1", "b4", "b3", "b2"].into());
        // the thin a9.5 has no witness here (a16 is outside), so this
        // subcomplex is opetopic but not yet reduced
        let flags = classify(&sub);
        assert!(flags.opetopic && !flags.reduced);
    }

    #[test]
    fn subcomplex_of_the_top_is_the_whole_complex() {
        let k = samples::opetope5_complex();
        assert_eq!(atomic_subcomplex(&k, &id("a17")).unwrap(), k);
    }

    #[test]
    fn subcomplexes_of_the_negative_face_terms() {
        let k = samples::opetope5_complex();

        let s16 = atomic_subcomplex(&k, &id("a16")).unwrap();
        let all16: BTreeSet<&str> = s16.elements().map(|(i, _)| i.as_str()).collect();
        assert_eq!(
            all16,
            ["a16", "a9.5", "b12", "a3", "a2", "b4", "b16", "b9.5", "b6", "b3", "b2"].into()
        );

        let s15 = atomic_subcomplex(&k, &id("a15")).unwrap();
        let all15: BTreeSet<&str> = s15.elements().map(|(i, _)| i.as_str()).collect();
        assert_eq!(
            all15,
            [
                "a15", "a11", "a9", "b9.5", "a5", "b5.5", "a3", "a2", "a1", "b15", "b11", "b9",
                "b6", "b5", "b4", "b3", "b2"
            ]
            .into()
        );

        let s14 = atomic_subcomplex(&k, &id("a14")).unwrap();
        let all14: BTreeSet<&str> = s14.elements().map(|(i, _)| i.as_str()).collect();
        assert_eq!(
            all14,
            [
                "a14", "a10", "a8", "a5.5", "b9", "a4", "a3", "a2", "a1", "b14", "b10", "b8",
                "b5.5", "b5", "b4", "b3", "b2"
            ]
            .into()
        );

        let s13 = atomic_subcomplex(&k, &id("a13")).unwrap();
        let all13: BTreeSet<&str> = s13.elements().map(|(i, _)| i.as_str()).collect();
        assert_eq!(
            all13,
            [
                "a13", "a12", "b16", "b15", "b14", "a7", "a6", "a5.5", "a5", "a4", "a3", "a2",
                "a1", "b13", "b12", "b9.5", "b9", "b8", "b7", "b6", "b5.5", "b5", "b4", "b3", "b2"
            ]
            .into()
        );
        // contains the thin a5.5 but not a10
        assert!(s13.contains(&id("a5.5")) && !s13.contains(&id("a10")));
    }

    #[test]
    fn subcomplex_basis_matches_the_downward_closure_oracle() {
        let k = samples::opetope5_complex();
        for h in ["a17", "b17", "a16", "a15", "a14", "a13", "a9.5", "b13", "a5"] {
            let sub = atomic_subcomplex(&k, &id(h)).unwrap();
            let by_formula: BTreeSet<Ident> =
                sub.elements().map(|(i, _)| i.clone()).collect();
            assert_eq!(by_formula, downward_closure(&k, &id(h)), "at {h}");
        }
    }

    #[test]
    fn reduce_of_the_a13_subcomplex_is_exact() {
        let k = samples::opetope5_complex();
        let reduced = reduce(&atomic_subcomplex(&k, &id("a13")).unwrap()).unwrap();
        // a5.5 deleted, b5.5 substituted by a4 everywhere
        let expected = Complex::build(
            [
                ("a13", 4, false, vec!["a12", "b16", "b15", "b14"], vec!["b13"]),
                ("a12", 3, false, vec!["a7", "a6"], vec!["b12"]),
                ("b16", 3, false, vec!["b12"], vec!["b9.5"]),
                ("b15", 3, false, vec!["a5", "b9.5"], vec!["b9"]),
                ("b14", 3, false, vec!["b9"], vec!["b8"]),
                ("b13", 3, false, vec!["a7", "a6", "a5"], vec!["b8"]),
                ("a7", 2, false, vec!["a3"], vec!["b7"]),
                ("a6", 2, false, vec!["a2", "b7"], vec!["b6"]),
                ("a5", 2, false, vec!["a4", "b6"], vec!["b5"]),
                ("b12", 2, false, vec!["a3", "a2"], vec!["b6"]),
                ("b9.5", 2, false, vec!["a3", "a2"], vec!["b6"]),
                ("b9", 2, false, vec!["a4", "a3", "a2"], vec!["b5"]),
                ("b8", 2, false, vec!["a4", "a3", "a2"], vec!["b5"]),
                ("a4", 1, false, vec!["a1"], vec!["b4"]),
                ("a3", 1, false, vec!["b4"], vec!["b3"]),
                ("a2", 1, false, vec!["b3"], vec!["b2"]),
                ("b7", 1, false, vec!["b4"], vec!["b3"]),
                ("b6", 1, false, vec!["b4"], vec!["b2"]),
                ("b5", 1, false, vec!["a1"], vec!["b2"]),
            ]
            .into_iter()
            .map(|(name, dim, thin, dm, dp)| ElementSpec {
                id: id(name),
                dim,
                thin,
                d_minus: dm.iter().map(|s| (id(s), BigInt::from(1))).collect(),
                d_plus: dp.iter().map(|s| (id(s), BigInt::from(1))).collect(),
                epsilon: None,
            })
            .chain(["a1", "b4", "b3", "b2"].iter().map(|name| ElementSpec {
                id: id(name),
                dim: 0,
                ..Default::default()
            }))
            .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(reduced, expected);
        assert!(classify(&reduced).reduced);
    }

    #[test]
    fn reduced_complexes_are_fixed_points() {
        let k = samples::opetope5_complex();
        assert_eq!(reduce(&k).unwrap(), k);
        for h in ["a16", "a15", "a14"] {
            let sub = atomic_subcomplex(&k, &id(h)).unwrap();
            assert!(classify(&sub).reduced, "{h} subcomplex should be reduced");
            assert_eq!(reduce(&sub).unwrap(), sub, "{h}");
        }
    }

    #[test]
    fn reducing_a_thin_top_drops_the_dimension() {
        let k = samples::opetope5_complex();
        let sub = atomic_subcomplex(&k, &id("a9.5")).unwrap();
        let reduced = reduce(&sub).unwrap();
        let flags = classify(&reduced);
        assert_eq!(flags.atomic_dim, Some(2));
        assert!(flags.reduced);
        assert_eq!(atomic_top(&reduced).unwrap().0, id("b12"));
        // it is exactly the subcomplex generated by b12
        assert_eq!(reduced, atomic_subcomplex(&k, &id("b12")).unwrap());
    }

    #[test]
    fn reduce_is_idempotent_up_to_isomorphism() {
        let k = samples::opetope5_complex();
        for h in ["a13", "a9.5", "b17"] {
            let once = reduce(&atomic_subcomplex(&k, &id(h)).unwrap()).unwrap();
            let twice = reduce(&once).unwrap();
            assert!(iso_complexes(&once, &twice).is_some(), "{h}");
        }
    }

    /// A complex where stage 1 actually fires: a 2-cell whose negative face
    /// is a path of two thin 1-cells.
    fn thin_path_complex() -> Complex {
        let one = BigInt::from(1);
        let mk = |name: &str, dim: usize, thin: bool, dm: &[&str], dp: &[&str]| ElementSpec {
            id: id(name),
            dim,
            thin,
            d_minus: dm.iter().map(|s| (id(s), one.clone())).collect(),
            d_plus: dp.iter().map(|s| (id(s), one.clone())).collect(),
            epsilon: None,
        };
        Complex::build(vec![
            ElementSpec { id: id("x0"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x1"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x2"), dim: 0, ..Default::default() },
            mk("t1", 1, true, &["x0"], &["x1"]),
            mk("t2", 1, true, &["x1"], &["x2"]),
            mk("s", 1, false, &["x0"], &["x2"]),
            mk("b", 2, false, &["t1", "t2"], &["s"]),
        ])
        .unwrap()
    }

    #[test]
    fn stage_one_merges_a_thin_path() {
        let k = thin_path_complex();
        assert!(classify(&k).opetopic);
        assert!(!classify(&k).reduced);
        let reduced = reduce(&k).unwrap();
        let flags = classify(&reduced);
        assert!(flags.reduced, "{:?}", flags);
        // x1, t1, t2 replaced by one fresh thin element spanning x0 -> x2
        let names: BTreeSet<&str> = reduced.elements().map(|(i, _)| i.as_str()).collect();
        assert_eq!(names, ["x0", "x2", "thin_b", "s", "b"].into());
        let t = id("thin_b");
        assert!(reduced.is_thin(&t).unwrap());
        assert_eq!(reduced.d_minus(&t).unwrap().single_unit(), Some(&id("x0")));
        assert_eq!(reduced.d_plus(&t).unwrap().single_unit(), Some(&id("x2")));
        assert_eq!(reduced.d_minus(&id("b")).unwrap().single_unit(), Some(&t));
    }

    fn mk(name: &str, dim: usize, thin: bool, dm: &[&str], dp: &[&str]) -> ElementSpec {
        let one = BigInt::from(1);
        ElementSpec {
            id: id(name),
            dim,
            thin,
            d_minus: dm.iter().map(|s| (id(s), one.clone())).collect(),
            d_plus: dp.iter().map(|s| (id(s), one.clone())).collect(),
            epsilon: None,
        }
    }

    /// Two nullary 2-cells side by side, composed by a 3-cell. The composite
    /// 2-cell `w` has an all-thin negative face even though the complex is
    /// reduced: both thin elements are witnessed by their nullary cells.
    fn composed_nullaries_complex() -> Complex {
        Complex::build(vec![
            ElementSpec { id: id("x0"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x1"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x2"), dim: 0, ..Default::default() },
            mk("t1", 1, true, &["x0"], &["x1"]),
            mk("t2", 1, true, &["x1"], &["x2"]),
            mk("p1", 1, false, &["x0"], &["x1"]),
            mk("p2", 1, false, &["x1"], &["x2"]),
            mk("v", 1, false, &["x0"], &["x2"]),
            mk("n1", 2, false, &["t1"], &["p1"]),
            mk("n2", 2, false, &["t2"], &["p2"]),
            mk("z", 2, false, &["p1", "p2"], &["v"]),
            mk("w", 2, false, &["t1", "t2"], &["v"]),
            mk("T", 3, false, &["n1", "n2", "z"], &["w"]),
        ])
        .unwrap()
    }

    #[test]
    fn stage_one_skips_positive_face_elements() {
        // w carries an all-thin negative face but is the positive face of T;
        // the complex is already reduced and must be a fixpoint
        let k = composed_nullaries_complex();
        let flags = classify(&k);
        assert!(flags.reduced, "{flags:?}");
        assert_eq!(reduce(&k).unwrap(), k);
    }

    /// Two disjoint thin paths under one 3-cell; both merge sites fire and
    /// the composite `w` then sees both fresh thin elements in its face.
    fn two_thin_paths_complex() -> Complex {
        Complex::build(vec![
            ElementSpec { id: id("x0"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x1"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x2"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x3"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x4"), dim: 0, ..Default::default() },
            mk("t1", 1, true, &["x0"], &["x1"]),
            mk("t2", 1, true, &["x1"], &["x2"]),
            mk("u1", 1, true, &["x2"], &["x3"]),
            mk("u2", 1, true, &["x3"], &["x4"]),
            mk("s", 1, false, &["x0"], &["x2"]),
            mk("r", 1, false, &["x2"], &["x4"]),
            mk("v", 1, false, &["x0"], &["x4"]),
            mk("b", 2, false, &["t1", "t2"], &["s"]),
            mk("c", 2, false, &["u1", "u2"], &["r"]),
            mk("z", 2, false, &["s", "r"], &["v"]),
            mk("w", 2, false, &["t1", "t2", "u1", "u2"], &["v"]),
            mk("T", 3, false, &["b", "c", "z"], &["w"]),
        ])
        .unwrap()
    }

    #[test]
    fn stage_one_fires_on_disjoint_sites_and_rewrites_partial_sums() {
        let k = two_thin_paths_complex();
        assert!(classify(&k).opetopic);
        assert!(!classify(&k).reduced);
        let reduced = reduce(&k).unwrap();
        let expected = Complex::build(vec![
            ElementSpec { id: id("x0"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x2"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x4"), dim: 0, ..Default::default() },
            mk("thin_b", 1, true, &["x0"], &["x2"]),
            mk("thin_c", 1, true, &["x2"], &["x4"]),
            mk("s", 1, false, &["x0"], &["x2"]),
            mk("r", 1, false, &["x2"], &["x4"]),
            mk("v", 1, false, &["x0"], &["x4"]),
            mk("b", 2, false, &["thin_b"], &["s"]),
            mk("c", 2, false, &["thin_c"], &["r"]),
            mk("z", 2, false, &["s", "r"], &["v"]),
            mk("w", 2, false, &["thin_b", "thin_c"], &["v"]),
            mk("T", 3, false, &["b", "c", "z"], &["w"]),
        ])
        .unwrap();
        assert_eq!(reduced, expected);
        assert!(classify(&reduced).reduced);
        // firing order cannot matter: the two sites are disjoint
        assert!(iso_complexes(&reduced, &reduce(&reduced).unwrap()).is_some());
    }

    #[test]
    fn reducing_the_target_of_the_composed_nullaries() {
        // the subcomplex generated by w loses both witnesses; stage 1 now
        // legitimately fires on w (the top is always a minus-side vertex)
        let k = composed_nullaries_complex();
        let sub = atomic_subcomplex(&k, &id("w")).unwrap();
        assert!(!classify(&sub).reduced);
        let reduced = reduce(&sub).unwrap();
        let flags = classify(&reduced);
        assert!(flags.reduced);
        assert_eq!(flags.atomic_dim, Some(2));
        // a single nullary 2-cell remains
        let expected = Complex::build(vec![
            ElementSpec { id: id("x0"), dim: 0, ..Default::default() },
            ElementSpec { id: id("x2"), dim: 0, ..Default::default() },
            mk("thin_w", 1, true, &["x0"], &["x2"]),
            mk("v", 1, false, &["x0"], &["x2"]),
            mk("w", 2, false, &["thin_w"], &["v"]),
        ])
        .unwrap();
        assert_eq!(reduced, expected);
    }

    #[test]
    fn sources_of_the_sample() {
        let k = samples::opetope5_complex();
        let srcs = sources(&k).unwrap();
        assert_eq!(srcs.len(), 4);
        // terms of d_minus(a17) in natural order: a13, a14, a15, a16
        let tops: Vec<Ident> = srcs.iter().map(|s| atomic_top(s).unwrap().0).collect();
        assert_eq!(tops, vec![id("a13"), id("a14"), id("a15"), id("a16")]);
        for s in &srcs {
            let flags = classify(s);
            assert!(flags.reduced);
            assert_eq!(flags.atomic_dim, Some(4));
        }
        // the first three (by generator name a16/a15/a14) are subcomplexes
        // unchanged by reduction; the a13 source is the merged one
        assert_eq!(srcs[1], atomic_subcomplex(&k, &id("a14")).unwrap());
        assert_eq!(srcs[2], atomic_subcomplex(&k, &id("a15")).unwrap());
        assert_eq!(srcs[3], atomic_subcomplex(&k, &id("a16")).unwrap());
        assert!(srcs[0].contains(&id("b16")) && !srcs[0].contains(&id("a5.5")));
    }

    #[test]
    fn nullary_tops_have_no_sources() {
        let k = samples::opetope5_complex();
        let s16 = reduce(&atomic_subcomplex(&k, &id("a16")).unwrap()).unwrap();
        assert_eq!(sources(&s16).unwrap(), Vec::new());
        // its target is still a genuine 3-dimensional opetope
        let t = target(&s16).unwrap();
        let flags = classify(&t);
        assert!(flags.reduced);
        assert_eq!(flags.atomic_dim, Some(3));
    }

    #[test]
    fn target_of_the_sample() {
        // one stage-2 firing: the thin a9.5 is unwitnessed in the b17
        // subcomplex, so it is deleted and b9.5 is substituted by b12
        let k = samples::opetope5_complex();
        let t = target(&k).unwrap();
        let sub = atomic_subcomplex(&k, &id("b17")).unwrap();
        assert_eq!(t, reduce(&sub).unwrap());
        assert!(!t.contains(&id("a9.5")) && !t.contains(&id("b9.5")));
        assert_eq!(t.len(), sub.len() - 2);
        assert_eq!(
            t.d_minus(&id("b17")).unwrap().to_string(),
            "a8 + a9 + a10 + a11 + a12"
        );
        assert_eq!(t.d_minus(&id("a9")).unwrap().to_string(), "b11 + b12");
        let flags = classify(&t);
        assert!(flags.reduced);
        assert_eq!(flags.atomic_dim, Some(4));
    }

    #[test]
    fn arrow_sources_and_target() {
        let one = BigInt::from(1);
        let k = Complex::build(vec![
            ElementSpec { id: id("x"), dim: 0, ..Default::default() },
            ElementSpec { id: id("y"), dim: 0, ..Default::default() },
            ElementSpec {
                id: id("g"),
                dim: 1,
                d_minus: vec![(id("x"), one.clone())],
                d_plus: vec![(id("y"), one)],
                ..Default::default()
            },
        ])
        .unwrap();
        let srcs = sources(&k).unwrap();
        assert_eq!(srcs.len(), 1);
        assert_eq!(atomic_top(&srcs[0]).unwrap(), (id("x"), 0));
        assert_eq!(atomic_top(&target(&k).unwrap()).unwrap(), (id("y"), 0));
    }

    #[test]
    fn dimension_zero_has_no_sources_or_target() {
        let k = Complex::build(vec![ElementSpec { id: id("p"), dim: 0, ..Default::default() }])
            .unwrap();
        assert_eq!(sources(&k), Err(Error::DimensionZero("sources")));
        assert_eq!(target(&k), Err(Error::DimensionZero("target")));
    }

    #[test]
    fn non_reduced_inputs_are_rejected() {
        let k = samples::opetope5_complex();
        let sub = atomic_subcomplex(&k, &id("a13")).unwrap();
        assert_eq!(sources(&sub), Err(Error::NotReduced));
        assert_eq!(target(&sub), Err(Error::NotReduced));
        let not_opetopic = samples::opetope5_complex_without(&["a17"]);
        assert_eq!(reduce(&not_opetopic), Err(Error::NotOpetopic));
    }
}
