//! Document formats for complexes and sequences.
//!
//! Both kinds of file are JSON. Serialization is canonical: basis entries in
//! ascending dimension then natural identifier order, every list naturally
//! sorted, optional fields omitted at their defaults, 2-space pretty printing
//! and a trailing newline. Parsing is lenient about ordering and defaults, so
//! `serialize(parse(text))` canonicalizes while `parse(serialize(value))` is
//! the identity. Integer coefficients round-trip exactly at any size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::complex::{Complex, ElementSpec};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::network::{Constellation, Network, NetworkSpec, OpetopicSequence};

#[derive(Serialize, Deserialize)]
struct ComplexDocument {
    name: String,
    basis: Vec<BasisEntry>,
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    id: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    thin: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    d_minus: Vec<(String, Number)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    d_plus: Vec<(String, Number)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<Number>,
}

fn number_to_bigint(n: &Number, context: &str) -> Result<BigInt> {
    let s = n.to_string();
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("{context}: `{s}` is not an integer")))
}

fn bigint_to_number(b: &BigInt) -> Number {
    Number::from_str(&b.to_string()).expect("integer literal is a valid JSON number")
}

fn face_terms(pairs: &[(String, Number)], context: &str) -> Result<Vec<(Ident, BigInt)>> {
    let one = BigInt::from(1);
    pairs
        .iter()
        .map(|(id, n)| {
            let coeff = number_to_bigint(n, context)?;
            if coeff < one {
                return Err(Error::Parse(format!(
                    "{context}: face coefficients must be positive, found {coeff} at `{id}`"
                )));
            }
            Ok((Ident::new(id.clone()), coeff))
        })
        .collect()
}

/// Parse a complex document, returning its name and the complex.
pub fn parse_complex(text: &str) -> Result<(String, Complex)> {
    let doc: ComplexDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut specs = Vec::with_capacity(doc.basis.len());
    for entry in &doc.basis {
        let context = format!("basis entry `{}`", entry.id);
        specs.push(ElementSpec {
            id: Ident::new(entry.id.clone()),
            dim: entry.dim,
            thin: entry.thin,
            d_minus: face_terms(&entry.d_minus, &context)?,
            d_plus: face_terms(&entry.d_plus, &context)?,
            epsilon: entry
                .epsilon
                .as_ref()
                .map(|n| number_to_bigint(n, &context))
                .transpose()?,
        });
    }
    Ok((doc.name, Complex::build(specs)?))
}

/// Serialize a complex to its canonical document text.
pub fn serialize_complex(name: &str, k: &Complex) -> String {
    let one = BigInt::from(1);
    let mut basis = Vec::with_capacity(k.len());
    let max_dim = k.max_dim().map_or(0, |d| d + 1);
    for dim in 0..max_dim {
        for id in k.ids_of_dim(dim) {
            let element = k.element(id).expect("iterating own ids");
            let chain_pairs = |c: &crate::chain::Chain| {
                c.terms()
                    .map(|(i, coeff)| (i.as_str().to_owned(), bigint_to_number(coeff)))
                    .collect::<Vec<_>>()
            };
            let (d_minus, d_plus) = match &element.faces {
                Some((dm, dp)) => (chain_pairs(dm), chain_pairs(dp)),
                None => (Vec::new(), Vec::new()),
            };
            basis.push(BasisEntry {
                id: id.as_str().to_owned(),
                dim,
                thin: element.thin,
                d_minus,
                d_plus,
                epsilon: element
                    .epsilon
                    .as_ref()
                    .filter(|e| **e != one)
                    .map(bigint_to_number),
            });
        }
    }
    let doc = ComplexDocument { name: name.to_owned(), basis };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

#[derive(Serialize, Deserialize)]
struct SequenceDocument {
    name: String,
    networks: Vec<NetworkEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    constellations: Vec<Vec<(String, String)>>,
}

#[derive(Serialize, Deserialize)]
struct NetworkEntry {
    edges: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    vertices: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    source: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    target: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    thin_edges: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    thin_vertices: Vec<String>,
}

fn idents(items: &[String]) -> Vec<Ident> {
    items.iter().map(Ident::new).collect()
}

fn ident_pairs(items: &[(String, String)]) -> Vec<(Ident, Ident)> {
    items
        .iter()
        .map(|(a, b)| (Ident::new(a.clone()), Ident::new(b.clone())))
        .collect()
}

/// Parse a sequence document, returning its name and the sequence.
pub fn parse_sequence(text: &str) -> Result<(String, OpetopicSequence)> {
    let doc: SequenceDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut networks = Vec::with_capacity(doc.networks.len());
    for entry in &doc.networks {
        networks.push(Network::build(NetworkSpec {
            edges: idents(&entry.edges),
            vertices: idents(&entry.vertices),
            inputs: idents(&entry.inputs),
            outputs: idents(&entry.outputs),
            source: ident_pairs(&entry.source),
            target: ident_pairs(&entry.target),
            thin_edges: idents(&entry.thin_edges),
            thin_vertices: idents(&entry.thin_vertices),
        })?);
    }
    if doc.constellations.len() + 1 != networks.len() {
        return Err(Error::Parse(format!(
            "{} networks need {} constellations, found {}",
            networks.len(),
            networks.len() - 1,
            doc.constellations.len()
        )));
    }
    let mut constellations = Vec::with_capacity(doc.constellations.len());
    for (q, pairs) in doc.constellations.iter().enumerate() {
        let mut map = std::collections::BTreeMap::new();
        for (v, e) in pairs {
            let v = Ident::new(v.clone());
            let e = Ident::new(e.clone());
            if !networks[q].has_vertex(&v) {
                return Err(Error::Reference {
                    id: v,
                    context: format!("constellation {q}: not a vertex of level {q}"),
                });
            }
            if !networks[q + 1].inputs().contains(&e) {
                return Err(Error::Reference {
                    id: e,
                    context: format!(
                        "constellation {q}: not an input edge of level {}",
                        q + 1
                    ),
                });
            }
            if map.insert(v.clone(), e).is_some() {
                return Err(Error::Parse(format!(
                    "constellation {q}: vertex `{v}` listed twice"
                )));
            }
        }
        constellations.push(Constellation::new(map));
    }
    Ok((doc.name, OpetopicSequence::new(networks, constellations)?))
}

/// Serialize a sequence to its canonical document text.
pub fn serialize_sequence(name: &str, seq: &OpetopicSequence) -> String {
    let strings = |it: &mut dyn Iterator<Item = &Ident>| -> Vec<String> {
        it.map(|i| i.as_str().to_owned()).collect()
    };
    let networks = seq
        .networks()
        .iter()
        .map(|n| NetworkEntry {
            edges: strings(&mut n.edges()),
            vertices: strings(&mut n.vertices()),
            inputs: strings(&mut n.inputs().iter()),
            outputs: strings(&mut n.outputs().iter()),
            source: n
                .edges()
                .filter_map(|e| {
                    n.source_of(e)
                        .map(|v| (e.as_str().to_owned(), v.as_str().to_owned()))
                })
                .collect(),
            target: n
                .edges()
                .filter_map(|e| {
                    n.target_of(e)
                        .map(|v| (e.as_str().to_owned(), v.as_str().to_owned()))
                })
                .collect(),
            thin_edges: strings(&mut n.thin_edges().iter()),
            thin_vertices: strings(&mut n.thin_vertices().iter()),
        })
        .collect();
    let constellations = seq
        .constellations()
        .iter()
        .map(|c| {
            c.pairs()
                .map(|(v, e)| (v.as_str().to_owned(), e.as_str().to_owned()))
                .collect()
        })
        .collect();
    let doc = SequenceDocument { name: name.to_owned(), networks, constellations };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}
