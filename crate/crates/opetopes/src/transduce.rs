//! Conversions between complexes and network sequences.
//!
//! [`build_network`] extracts one level of the graphlike structure generated
//! by a double-sequence member: edges are the terms of the level's g-chain,
//! vertices the terms of the chain one level up, incidence read off the
//! faces. [`networks_of`] stacks the negative-sign levels of the canonical
//! atom into an opetopic sequence, and [`complex_of`] inverts the process up
//! to isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::chain::Sign;
use crate::complex::{Complex, ElementSpec};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::network::{
    boundary_edges, validate_sequence, Constellation, Network, NetworkSpec, OpetopicSequence,
};
use crate::nu::{canonical_atom, distinctness_check, g_chain, NuElement};
use crate::predicates::classify;

/// The level-`q` network of a member `x`, for either sign.
///
/// Requires the distinctness check to pass; a member with repeated terms in
/// its level chains or g-chains has no well-defined network and is rejected
/// with [`Error::MultiplicityViolation`].
pub fn build_network(k: &Complex, x: &NuElement, q: usize, sign: Sign) -> Result<Network> {
    let report = distinctness_check(k, x)?;
    if !report.is_valid() {
        return Err(Error::MultiplicityViolation(report.violations().join("; ")));
    }
    let edge_chain = g_chain(k, x, q, sign)?;
    let vertex_chain = x.side(q + 1, sign);
    let mut spec = NetworkSpec {
        edges: edge_chain.support().cloned().collect(),
        vertices: vertex_chain.support().cloned().collect(),
        inputs: x.minus(q).support().cloned().collect(),
        outputs: x.plus(q).support().cloned().collect(),
        ..Default::default()
    };
    for v in vertex_chain.support() {
        for e in k.d_plus(v)?.support() {
            spec.source.push((e.clone(), v.clone()));
        }
        for e in k.d_minus(v)?.support() {
            spec.target.push((e.clone(), v.clone()));
        }
    }
    spec.thin_edges = spec
        .edges
        .iter()
        .filter(|e| k.is_thin(e).unwrap_or(false))
        .cloned()
        .collect();
    spec.thin_vertices = spec
        .vertices
        .iter()
        .filter(|v| k.is_thin(v).unwrap_or(false))
        .cloned()
        .collect();
    Network::build(spec)
        .map_err(|e| Error::MultiplicityViolation(format!("incidence is not a network: {e}")))
}

/// The opetopic sequence of an opetopic complex: the negative-sign networks
/// of its canonical atom, joined by the identity correspondence on basis
/// elements (the vertices of one level and the inputs of the next are both
/// the terms of the same chain).
pub fn networks_of(k: &Complex) -> Result<OpetopicSequence> {
    let flags = classify(k);
    if !flags.opetopic {
        return Err(Error::NotOpetopic);
    }
    let n = flags.atomic_dim.expect("opetopic implies atomic");
    let atom = canonical_atom(k)?;
    let mut networks = Vec::with_capacity(n + 1);
    for q in 0..=n {
        networks.push(build_network(k, &atom, q, Sign::Minus)?);
    }
    let mut constellations = Vec::with_capacity(n);
    for q in 0..n {
        constellations.push(Constellation::from_pairs(
            atom.minus(q + 1).support().map(|a| (a.clone(), a.clone())),
        ));
    }
    OpetopicSequence::new(networks, constellations)
}

/// Basis identifiers for one level: `{q}.{edge}` with characters outside the
/// identifier charset mapped to `_`, deduplicated deterministically.
fn level_basis_ids(
    q: usize,
    net: &Network,
    used: &mut BTreeSet<Ident>,
) -> BTreeMap<Ident, Ident> {
    let mut out = BTreeMap::new();
    for e in net.edges() {
        let sanitized: String = e
            .as_str()
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        let base = format!("{q}.{sanitized}");
        let mut candidate = Ident::new(base.clone());
        let mut counter = 1;
        while !used.insert(candidate.clone()) {
            counter += 1;
            candidate = Ident::new(format!("{base}_{counter}"));
        }
        out.insert(e.clone(), candidate);
    }
    out
}

/// The opetopic directed complex of a valid sequence.
///
/// Basis elements of dimension `q` are the edges of level `q`; for an edge
/// `e` one level up, the face chains come from the region of level-`q`
/// vertices mapped under the constellation to the inputs reaching `e`:
/// `d_plus` is the one edge leaving the region, `d_minus` the sum of edges
/// entering it. The augmentation is 1 everywhere.
pub fn complex_of(seq: &OpetopicSequence) -> Result<Complex> {
    let report = validate_sequence(seq, false);
    if !report.is_valid() {
        return Err(Error::InvalidSequence(report.violations().join("; ")));
    }
    let mut used = BTreeSet::new();
    let maps: Vec<BTreeMap<Ident, Ident>> = (0..=seq.dim())
        .map(|q| level_basis_ids(q, seq.level(q), &mut used))
        .collect();
    let one = BigInt::from(1);
    let mut specs = Vec::new();
    for q in 0..=seq.dim() {
        let net = seq.level(q);
        for e in net.edges() {
            let mut spec = ElementSpec {
                id: maps[q][e].clone(),
                dim: q,
                thin: net.is_thin_edge(e),
                ..Default::default()
            };
            if q > 0 {
                let below = seq.level(q - 1);
                let cons = &seq.constellations()[q - 1];
                let inputs_reaching: BTreeSet<Ident> = net
                    .edges_reaching(e)
                    .into_iter()
                    .filter(|x| net.inputs().contains(x))
                    .collect();
                let region = cons.preimage(&inputs_reaching);
                let leaving = boundary_edges(below, &region);
                if leaving.len() != 1 {
                    return Err(Error::InvalidSequence(format!(
                        "edge `{e}` of level {q}: {} edges leave its region, expected 1",
                        leaving.len()
                    )));
                }
                spec.d_plus = vec![(maps[q - 1][&leaving[0]].clone(), one.clone())];
                for f in below.edges() {
                    let target_in = below.target_of(f).is_some_and(|t| region.contains(t));
                    let source_in = below.source_of(f).is_some_and(|s| region.contains(s));
                    if target_in && !source_in {
                        spec.d_minus.push((maps[q - 1][f].clone(), one.clone()));
                    }
                }
            }
            specs.push(spec);
        }
    }
    Complex::build(specs)
}
