//! A worked five-dimensional example used throughout the tests and fixtures.
//!
//! The complex has 37 basis elements, two of them thin (`a5.5`, `a9.5`,
//! encoding nullary cells), and classifies as a reduced opetopic directed
//! complex. The sequence is the same opetope in combinatorial form: six
//! networks whose vertex and input labels spell out the constellations. The
//! shipped fixtures `table1.odc` and `figure1.ops` are the canonical
//! serializations of these two values.

use num_bigint::BigInt;

use crate::complex::{Complex, ElementSpec};
use crate::ident::Ident;
use crate::network::{Constellation, Network, NetworkSpec, OpetopicSequence};

fn id(s: &str) -> Ident {
    Ident::new(s)
}

fn terms(pairs: &[&str]) -> Vec<(Ident, BigInt)> {
    pairs.iter().map(|s| (id(s), BigInt::from(1))).collect()
}

fn element(name: &str, dim: usize, thin: bool, d_minus: &[&str], d_plus: &[&str]) -> ElementSpec {
    ElementSpec {
        id: id(name),
        dim,
        thin,
        d_minus: terms(d_minus),
        d_plus: terms(d_plus),
        epsilon: None,
    }
}

fn point(name: &str) -> ElementSpec {
    ElementSpec { id: id(name), dim: 0, ..Default::default() }
}

/// Element records of the worked example, in one flat list.
pub fn opetope5_specs() -> Vec<ElementSpec> {
    vec![
        element("a17", 5, false, &["a16", "a15", "a14", "a13"], &["b17"]),
        element("a16", 4, false, &["a9.5"], &["b16"]),
        element("a15", 4, false, &["a11", "a9"], &["b15"]),
        element("a14", 4, false, &["a10", "a8"], &["b14"]),
        element("a13", 4, false, &["a12", "b16", "b15", "b14"], &["b13"]),
        element("b17", 4, false, &["a12", "a11", "a10", "a9.5", "a9", "a8"], &["b13"]),
        element("a12", 3, false, &["a7", "a6"], &["b12"]),
        element("a11", 3, false, &["a5"], &["b11"]),
        element("a10", 3, false, &["a5.5"], &["b10"]),
        element("a9.5", 3, true, &["b12"], &["b9.5"]),
        element("a9", 3, false, &["b11", "b9.5"], &["b9"]),
        element("a8", 3, false, &["b10", "b9"], &["b8"]),
        element("b16", 3, false, &["b12"], &["b9.5"]),
        element("b15", 3, false, &["a5", "b9.5"], &["b9"]),
        element("b14", 3, false, &["a5.5", "b9"], &["b8"]),
        element("b13", 3, false, &["a7", "a6", "a5.5", "a5"], &["b8"]),
        element("a7", 2, false, &["a3"], &["b7"]),
        element("a6", 2, false, &["a2", "b7"], &["b6"]),
        element("a5.5", 2, true, &["a4"], &["b5.5"]),
        element("a5", 2, false, &["b6", "b5.5"], &["b5"]),
        element("b12", 2, false, &["a3", "a2"], &["b6"]),
        element("b11", 2, false, &["b6", "b5.5"], &["b5"]),
        element("b10", 2, false, &["a4"], &["b5.5"]),
        element("b9.5", 2, false, &["a3", "a2"], &["b6"]),
        element("b9", 2, false, &["a3", "a2", "b5.5"], &["b5"]),
        element("b8", 2, false, &["a4", "a3", "a2"], &["b5"]),
        element("a4", 1, false, &["a1"], &["b4"]),
        element("a3", 1, false, &["b4"], &["b3"]),
        element("a2", 1, false, &["b3"], &["b2"]),
        element("b7", 1, false, &["b4"], &["b3"]),
        element("b6", 1, false, &["b4"], &["b2"]),
        element("b5.5", 1, false, &["a1"], &["b4"]),
        element("b5", 1, false, &["a1"], &["b2"]),
        point("a1"),
        point("b4"),
        point("b3"),
        point("b2"),
    ]
}

/// The worked example as a complex.
pub fn opetope5_complex() -> Complex {
    Complex::build(opetope5_specs()).expect("sample complex is well formed")
}

/// The worked example with each element record passed through `tweak` first.
/// Used by tests to corrupt single entries.
pub fn opetope5_complex_with(tweak: impl Fn(&mut ElementSpec)) -> Complex {
    let mut specs = opetope5_specs();
    for spec in &mut specs {
        tweak(spec);
    }
    Complex::build(specs).expect("tweaked sample still builds")
}

/// The worked example with the named elements removed (faces referencing them
/// must no longer exist, so only leaf-ish deletions are meaningful).
pub fn opetope5_complex_without(names: &[&str]) -> Complex {
    let specs = opetope5_specs()
        .into_iter()
        .filter(|s| !names.contains(&s.id.as_str()))
        .collect();
    Complex::build(specs).expect("pruned sample still builds")
}

struct LevelData {
    edges: &'static [&'static str],
    vertices: &'static [&'static str],
    inputs: &'static [&'static str],
    outputs: &'static [&'static str],
    source: &'static [(&'static str, &'static str)],
    target: &'static [(&'static str, &'static str)],
    thin_edges: &'static [&'static str],
    thin_vertices: &'static [&'static str],
}

const LEVELS: [LevelData; 6] = [
    LevelData {
        edges: &["1", "o4", "o3", "o2"],
        vertices: &["4", "3", "2"],
        inputs: &["1"],
        outputs: &["o2"],
        source: &[("o4", "4"), ("o3", "3"), ("o2", "2")],
        target: &[("1", "4"), ("o4", "3"), ("o3", "2")],
        thin_edges: &[],
        thin_vertices: &[],
    },
    LevelData {
        edges: &["3", "2", "4", "o7", "o6", "o5.5", "o5"],
        vertices: &["7", "6", "5.5", "5"],
        inputs: &["3", "2", "4"],
        outputs: &["o5"],
        source: &[("o7", "7"), ("o6", "6"), ("o5.5", "5.5"), ("o5", "5")],
        target: &[("3", "7"), ("2", "6"), ("4", "5.5"), ("o7", "6"), ("o6", "5"), ("o5.5", "5")],
        thin_edges: &[],
        thin_vertices: &["5.5"],
    },
    LevelData {
        edges: &["5", "7", "6", "5.5", "o11", "o12", "o9.5", "o10", "o9", "o8"],
        vertices: &["11", "12", "9.5", "10", "9", "8"],
        inputs: &["5", "7", "6", "5.5"],
        outputs: &["o8"],
        source: &[
            ("o11", "11"),
            ("o12", "12"),
            ("o9.5", "9.5"),
            ("o10", "10"),
            ("o9", "9"),
            ("o8", "8"),
        ],
        target: &[
            ("5", "11"),
            ("7", "12"),
            ("6", "12"),
            ("5.5", "10"),
            ("o11", "9"),
            ("o12", "9.5"),
            ("o9.5", "9"),
            ("o10", "8"),
            ("o9", "8"),
        ],
        thin_edges: &["5.5"],
        thin_vertices: &["9.5"],
    },
    LevelData {
        edges: &["9.5", "9", "11", "8", "10", "12", "o16", "o15", "o14", "o13"],
        vertices: &["16", "15", "14", "13"],
        inputs: &["9.5", "9", "11", "8", "10", "12"],
        outputs: &["o13"],
        source: &[("o16", "16"), ("o15", "15"), ("o14", "14"), ("o13", "13")],
        target: &[
            ("9.5", "16"),
            ("9", "15"),
            ("11", "15"),
            ("8", "14"),
            ("10", "14"),
            ("12", "13"),
            ("o16", "13"),
            ("o15", "13"),
            ("o14", "13"),
        ],
        thin_edges: &["9.5"],
        thin_vertices: &[],
    },
    LevelData {
        edges: &["13", "14", "15", "16", "o17"],
        vertices: &["17"],
        inputs: &["13", "14", "15", "16"],
        outputs: &["o17"],
        source: &[("o17", "17")],
        target: &[("13", "17"), ("14", "17"), ("15", "17"), ("16", "17")],
        thin_edges: &[],
        thin_vertices: &[],
    },
    LevelData {
        edges: &["17"],
        vertices: &[],
        inputs: &["17"],
        outputs: &["17"],
        source: &[],
        target: &[],
        thin_edges: &[],
        thin_vertices: &[],
    },
];

fn level_spec(data: &LevelData) -> NetworkSpec {
    NetworkSpec {
        edges: data.edges.iter().map(|s| id(s)).collect(),
        vertices: data.vertices.iter().map(|s| id(s)).collect(),
        inputs: data.inputs.iter().map(|s| id(s)).collect(),
        outputs: data.outputs.iter().map(|s| id(s)).collect(),
        source: data.source.iter().map(|(e, v)| (id(e), id(v))).collect(),
        target: data.target.iter().map(|(e, v)| (id(e), id(v))).collect(),
        thin_edges: data.thin_edges.iter().map(|s| id(s)).collect(),
        thin_vertices: data.thin_vertices.iter().map(|s| id(s)).collect(),
    }
}

/// The worked example as a sequence of networks. Vertices of each level map
/// to the equally-labelled input edges of the next.
pub fn opetope5_sequence() -> OpetopicSequence {
    build_sequence(|_, spec| {
        let _ = spec;
    })
}

/// Same sequence with one level's spec passed through `tweak`.
pub fn opetope5_sequence_with_level(
    level: usize,
    tweak: impl Fn(&mut NetworkSpec),
) -> OpetopicSequence {
    build_sequence(|q, spec| {
        if q == level {
            tweak(spec);
        }
    })
}

fn build_sequence(tweak: impl Fn(usize, &mut NetworkSpec)) -> OpetopicSequence {
    let mut networks = Vec::new();
    for (q, data) in LEVELS.iter().enumerate() {
        let mut spec = level_spec(data);
        tweak(q, &mut spec);
        networks.push(Network::build(spec).expect("sample level is well formed"));
    }
    let mut constellations = Vec::new();
    for data in LEVELS.iter().take(LEVELS.len() - 1) {
        constellations.push(Constellation::from_pairs(
            data.vertices.iter().map(|v| (id(v), id(v))),
        ));
    }
    OpetopicSequence::new(networks, constellations).expect("sample sequence is well formed")
}
