//! Structure-preserving isomorphism search.
//!
//! Both searches are plain backtracking pruned by local signatures
//! (dimension, thinness, augmentation, face shapes, degrees). The objects are
//! desk-scale and the levels of valid sequences are tree-shaped, so the
//! search space stays small; no canonical-form algorithm is attempted.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::complex::Complex;
use crate::ident::Ident;
use crate::network::{Network, OpetopicSequence};

/// A basis bijection preserving dimension, thinness, augmentation and both
/// face maps, if one exists.
pub fn iso_complexes(a: &Complex, b: &Complex) -> Option<BTreeMap<Ident, Ident>> {
    if a.len() != b.len() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    {
        let mut count_a: BTreeMap<&ElementSig, usize> = BTreeMap::new();
        let mut count_b: BTreeMap<&ElementSig, usize> = BTreeMap::new();
        for s in sig_a.values() {
            *count_a.entry(s).or_default() += 1;
        }
        for s in sig_b.values() {
            *count_b.entry(s).or_default() += 1;
        }
        if count_a != count_b {
            return None;
        }
    }
    // assign top-down so that when an element is placed, everything one
    // dimension up is already placed and the face constraints are checkable
    let mut order: Vec<&Ident> = a.elements().map(|(id, _)| id).collect();
    order.sort_by(|x, y| {
        let dx = a.element(x).unwrap().dim;
        let dy = a.element(y).unwrap().dim;
        dy.cmp(&dx).then_with(|| x.cmp(y))
    });
    let mut fwd: BTreeMap<Ident, Ident> = BTreeMap::new();
    let mut used: BTreeSet<Ident> = BTreeSet::new();
    if assign_elements(a, b, &sig_a, &sig_b, &order, 0, &mut fwd, &mut used) {
        Some(fwd)
    } else {
        None
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Debug)]
struct ElementSig {
    dim: usize,
    thin: bool,
    epsilon: Option<BigInt>,
    minus_coeffs: Vec<BigInt>,
    plus_coeffs: Vec<BigInt>,
}

fn signatures(k: &Complex) -> BTreeMap<Ident, ElementSig> {
    k.elements()
        .map(|(id, e)| {
            let (minus_coeffs, plus_coeffs) = match &e.faces {
                Some((dm, dp)) => {
                    let mut m: Vec<BigInt> = dm.terms().map(|(_, c)| c.clone()).collect();
                    let mut p: Vec<BigInt> = dp.terms().map(|(_, c)| c.clone()).collect();
                    m.sort();
                    p.sort();
                    (m, p)
                }
                None => (Vec::new(), Vec::new()),
            };
            (
                id.clone(),
                ElementSig {
                    dim: e.dim,
                    thin: e.thin,
                    epsilon: e.epsilon.clone(),
                    minus_coeffs,
                    plus_coeffs,
                },
            )
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn assign_elements(
    a: &Complex,
    b: &Complex,
    sig_a: &BTreeMap<Ident, ElementSig>,
    sig_b: &BTreeMap<Ident, ElementSig>,
    order: &[&Ident],
    index: usize,
    fwd: &mut BTreeMap<Ident, Ident>,
    used: &mut BTreeSet<Ident>,
) -> bool {
    let Some(x) = order.get(index) else {
        return true;
    };
    let x = (*x).clone();
    let candidates: Vec<Ident> = b
        .elements()
        .filter(|(id, _)| !used.contains(*id) && sig_b[*id] == sig_a[&x])
        .map(|(id, _)| id.clone())
        .collect();
    for y in candidates {
        if !faces_compatible(a, b, &x, &y, fwd) {
            continue;
        }
        fwd.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if assign_elements(a, b, sig_a, sig_b, order, index + 1, fwd, used) {
            return true;
        }
        fwd.remove(&x);
        used.remove(&y);
    }
    false
}

/// For every already-placed element one dimension above `x`, the coefficient
/// of `x` in its faces must match the coefficient of `y` in the image's
/// faces.
fn faces_compatible(
    a: &Complex,
    b: &Complex,
    x: &Ident,
    y: &Ident,
    fwd: &BTreeMap<Ident, Ident>,
) -> bool {
    let dim = a.element(x).unwrap().dim;
    for (u, image) in fwd {
        let ue = a.element(u).unwrap();
        if ue.dim != dim + 1 {
            continue;
        }
        let (a_dm, a_dp) = ue.faces.as_ref().unwrap();
        let ve = b.element(image).unwrap();
        let (b_dm, b_dp) = ve.faces.as_ref().unwrap();
        if a_dm.coeff(x) != b_dm.coeff(y) || a_dp.coeff(x) != b_dp.coeff(y) {
            return false;
        }
    }
    true
}

/// One level of a sequence isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelIso {
    pub edges: BTreeMap<Ident, Ident>,
    pub vertices: BTreeMap<Ident, Ident>,
}

/// Per-level edge and vertex bijections preserving inputs, outputs, source,
/// target and thin marks, and commuting with both constellation families.
pub fn iso_sequences(a: &OpetopicSequence, b: &OpetopicSequence) -> Option<Vec<LevelIso>> {
    if a.dim() != b.dim() {
        return None;
    }
    for q in 0..=a.dim() {
        let (na, nb) = (a.level(q), b.level(q));
        if na.edge_count() != nb.edge_count()
            || na.vertex_count() != nb.vertex_count()
            || na.inputs().len() != nb.inputs().len()
            || na.outputs().len() != nb.outputs().len()
            || na.thin_edges().len() != nb.thin_edges().len()
            || na.thin_vertices().len() != nb.thin_vertices().len()
        {
            return None;
        }
    }
    let mut levels: Vec<Option<LevelIso>> = vec![None; a.dim() + 1];
    if solve_level(a, b, a.dim(), &mut levels) {
        Some(levels.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Solve levels from the top down: the constellation into the already-solved
/// level above constrains the vertex map here.
fn solve_level(
    a: &OpetopicSequence,
    b: &OpetopicSequence,
    q: usize,
    levels: &mut Vec<Option<LevelIso>>,
) -> bool {
    let na = a.level(q);
    let nb = b.level(q);
    let above = if q < a.dim() {
        Some((
            &a.constellations()[q],
            &b.constellations()[q],
            levels[q + 1].as_ref().unwrap().edges.clone(),
        ))
    } else {
        None
    };
    let verts_a: Vec<Ident> = na.vertices().cloned().collect();
    let mut vmap = BTreeMap::new();
    let mut vused = BTreeSet::new();
    assign_vertices(
        a, b, q, na, nb, &above, &verts_a, 0, &mut vmap, &mut vused, levels,
    )
}

type AboveContext<'a> = Option<(
    &'a crate::network::Constellation,
    &'a crate::network::Constellation,
    BTreeMap<Ident, Ident>,
)>;

#[allow(clippy::too_many_arguments)]
fn assign_vertices(
    a: &OpetopicSequence,
    b: &OpetopicSequence,
    q: usize,
    na: &Network,
    nb: &Network,
    above: &AboveContext,
    verts: &[Ident],
    index: usize,
    vmap: &mut BTreeMap<Ident, Ident>,
    vused: &mut BTreeSet<Ident>,
    levels: &mut Vec<Option<LevelIso>>,
) -> bool {
    if index == verts.len() {
        // vertices fixed; now match the edges
        let edges_a: Vec<Ident> = na.edges().cloned().collect();
        let mut emap = BTreeMap::new();
        let mut eused = BTreeSet::new();
        return assign_edges(
            a, b, q, na, nb, vmap, &edges_a, 0, &mut emap, &mut eused, levels,
        );
    }
    let v = verts[index].clone();
    for w in nb.vertices() {
        if vused.contains(w) || na.is_thin_vertex(&v) != nb.is_thin_vertex(w) {
            continue;
        }
        if let Some((ca, cb, emap_above)) = above {
            let compatible = match (ca.image_of(&v), cb.image_of(w)) {
                (Some(ea), Some(eb)) => emap_above.get(ea) == Some(eb),
                (None, None) => true,
                _ => false,
            };
            if !compatible {
                continue;
            }
        }
        if na.edges_targeting(&v).len() != nb.edges_targeting(w).len()
            || na.edges_sourced_by(&v).len() != nb.edges_sourced_by(w).len()
        {
            continue;
        }
        vmap.insert(v.clone(), w.clone());
        vused.insert(w.clone());
        if assign_vertices(a, b, q, na, nb, above, verts, index + 1, vmap, vused, levels) {
            return true;
        }
        vmap.remove(&v);
        vused.remove(w);
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn assign_edges(
    a: &OpetopicSequence,
    b: &OpetopicSequence,
    q: usize,
    na: &Network,
    nb: &Network,
    vmap: &BTreeMap<Ident, Ident>,
    edges: &[Ident],
    index: usize,
    emap: &mut BTreeMap<Ident, Ident>,
    eused: &mut BTreeSet<Ident>,
    levels: &mut Vec<Option<LevelIso>>,
) -> bool {
    if index == edges.len() {
        levels[q] = Some(LevelIso {
            edges: emap.clone(),
            vertices: vmap.clone(),
        });
        if q == 0 {
            return true;
        }
        if solve_level(a, b, q - 1, levels) {
            return true;
        }
        levels[q] = None;
        return false;
    }
    let e = edges[index].clone();
    for f in nb.edges() {
        if eused.contains(f)
            || na.inputs().contains(&e) != nb.inputs().contains(f)
            || na.outputs().contains(&e) != nb.outputs().contains(f)
            || na.is_thin_edge(&e) != nb.is_thin_edge(f)
        {
            continue;
        }
        let source_ok = match (na.source_of(&e), nb.source_of(f)) {
            (Some(v), Some(w)) => vmap.get(v) == Some(w),
            (None, None) => true,
            _ => false,
        };
        let target_ok = match (na.target_of(&e), nb.target_of(f)) {
            (Some(v), Some(w)) => vmap.get(v) == Some(w),
            (None, None) => true,
            _ => false,
        };
        if !source_ok || !target_ok {
            continue;
        }
        emap.insert(e.clone(), f.clone());
        eused.insert(f.clone());
        if assign_edges(a, b, q, na, nb, vmap, edges, index + 1, emap, eused, levels) {
            return true;
        }
        emap.remove(&e);
        eused.remove(f);
    }
    false
}
