//! Networks, constellations, and opetopic sequences.
//!
//! A network is a finite edge/vertex incidence structure where input edges
//! have no source and output edges have no target; an edge may have neither
//! endpoint. Sequences stack networks through constellations, bijections from
//! the vertices of one level to the input edges of the next.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ident::Ident;

/// A finite directed incidence structure with dangling edges allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    edges: BTreeSet<Ident>,
    vertices: BTreeSet<Ident>,
    inputs: BTreeSet<Ident>,
    outputs: BTreeSet<Ident>,
    source: BTreeMap<Ident, Ident>,
    target: BTreeMap<Ident, Ident>,
    thin_edges: BTreeSet<Ident>,
    thin_vertices: BTreeSet<Ident>,
}

/// Input record for [`Network::build`].
#[derive(Clone, Debug, Default)]
pub struct NetworkSpec {
    pub edges: Vec<Ident>,
    pub vertices: Vec<Ident>,
    pub inputs: Vec<Ident>,
    pub outputs: Vec<Ident>,
    pub source: Vec<(Ident, Ident)>,
    pub target: Vec<(Ident, Ident)>,
    pub thin_edges: Vec<Ident>,
    pub thin_vertices: Vec<Ident>,
}

impl Network {
    /// Build a network, enforcing the structural invariants: `source` defined
    /// exactly on non-input edges, `target` exactly on non-output edges, all
    /// endpoints existing, and thin marks contained in the carrier sets.
    pub fn build(spec: NetworkSpec) -> Result<Network> {
        fn to_set(items: &[Ident], what: &str) -> Result<BTreeSet<Ident>> {
            let mut set = BTreeSet::new();
            for item in items {
                if !set.insert(item.clone()) {
                    return Err(Error::Structure(format!(
                        "duplicate {what} identifier `{item}`"
                    )));
                }
            }
            Ok(set)
        }
        let edges = to_set(&spec.edges, "edge")?;
        let vertices = to_set(&spec.vertices, "vertex")?;
        let inputs = to_set(&spec.inputs, "input")?;
        let outputs = to_set(&spec.outputs, "output")?;
        let thin_edges = to_set(&spec.thin_edges, "thin edge")?;
        let thin_vertices = to_set(&spec.thin_vertices, "thin vertex")?;
        for (set, what) in [(&inputs, "input"), (&outputs, "output"), (&thin_edges, "thin edge")]
        {
            for id in set {
                if !edges.contains(id) {
                    return Err(Error::Reference {
                        id: id.clone(),
                        context: format!("{what} set"),
                    });
                }
            }
        }
        for id in &thin_vertices {
            if !vertices.contains(id) {
                return Err(Error::Reference {
                    id: id.clone(),
                    context: "thin vertex set".to_owned(),
                });
            }
        }
        let mut source = BTreeMap::new();
        for (e, v) in &spec.source {
            if !edges.contains(e) {
                return Err(Error::Reference { id: e.clone(), context: "source map".to_owned() });
            }
            if !vertices.contains(v) {
                return Err(Error::Reference { id: v.clone(), context: "source map".to_owned() });
            }
            if source.insert(e.clone(), v.clone()).is_some() {
                return Err(Error::Structure(format!("edge `{e}` has two sources")));
            }
        }
        let mut target = BTreeMap::new();
        for (e, v) in &spec.target {
            if !edges.contains(e) {
                return Err(Error::Reference { id: e.clone(), context: "target map".to_owned() });
            }
            if !vertices.contains(v) {
                return Err(Error::Reference { id: v.clone(), context: "target map".to_owned() });
            }
            if target.insert(e.clone(), v.clone()).is_some() {
                return Err(Error::Structure(format!("edge `{e}` has two targets")));
            }
        }
        for e in &edges {
            match (inputs.contains(e), source.contains_key(e)) {
                (true, true) => {
                    return Err(Error::Structure(format!("input edge `{e}` has a source")))
                }
                (false, false) => {
                    return Err(Error::Structure(format!(
                        "non-input edge `{e}` is missing a source"
                    )))
                }
                _ => {}
            }
            match (outputs.contains(e), target.contains_key(e)) {
                (true, true) => {
                    return Err(Error::Structure(format!("output edge `{e}` has a target")))
                }
                (false, false) => {
                    return Err(Error::Structure(format!(
                        "non-output edge `{e}` is missing a target"
                    )))
                }
                _ => {}
            }
        }
        Ok(Network {
            edges,
            vertices,
            inputs,
            outputs,
            source,
            target,
            thin_edges,
            thin_vertices,
        })
    }

    /// The network consisting of one edge with no endpoints.
    pub fn single_edge(id: Ident, thin: bool) -> Network {
        let spec = NetworkSpec {
            edges: vec![id.clone()],
            inputs: vec![id.clone()],
            outputs: vec![id.clone()],
            thin_edges: if thin { vec![id] } else { vec![] },
            ..Default::default()
        };
        Network::build(spec).expect("single edge is structurally valid")
    }

    pub fn edges(&self) -> impl Iterator<Item = &Ident> {
        self.edges.iter()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Ident> {
        self.vertices.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, e: &Ident) -> bool {
        self.edges.contains(e)
    }

    pub fn has_vertex(&self, v: &Ident) -> bool {
        self.vertices.contains(v)
    }

    pub fn inputs(&self) -> &BTreeSet<Ident> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<Ident> {
        &self.outputs
    }

    pub fn thin_edges(&self) -> &BTreeSet<Ident> {
        &self.thin_edges
    }

    pub fn thin_vertices(&self) -> &BTreeSet<Ident> {
        &self.thin_vertices
    }

    pub fn source_of(&self, e: &Ident) -> Option<&Ident> {
        self.source.get(e)
    }

    pub fn target_of(&self, e: &Ident) -> Option<&Ident> {
        self.target.get(e)
    }

    pub fn is_thin_edge(&self, e: &Ident) -> bool {
        self.thin_edges.contains(e)
    }

    pub fn is_thin_vertex(&self, v: &Ident) -> bool {
        self.thin_vertices.contains(v)
    }

    /// Edges whose source is `v`, in natural order.
    pub fn edges_sourced_by(&self, v: &Ident) -> Vec<&Ident> {
        self.source
            .iter()
            .filter(move |(_, sv)| *sv == v)
            .map(|(e, _)| e)
            .collect()
    }

    /// Edges whose target is `v`, in natural order.
    pub fn edges_targeting(&self, v: &Ident) -> Vec<&Ident> {
        self.target
            .iter()
            .filter(move |(_, tv)| *tv == v)
            .map(|(e, _)| e)
            .collect()
    }

    /// True when a path `e_0, v_1, e_1, ..., v_k, e_k` exists from `e_from`
    /// to `e_to`; the single-term path makes every edge reach itself.
    pub fn has_path(&self, e_from: &Ident, e_to: &Ident) -> Result<bool> {
        for e in [e_from, e_to] {
            if !self.edges.contains(e) {
                return Err(Error::UnknownEdge(e.clone()));
            }
        }
        if e_from == e_to {
            return Ok(true);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![e_from.clone()];
        while let Some(e) = stack.pop() {
            if let Some(v) = self.target.get(&e) {
                for succ in self.edges_sourced_by(v) {
                    if succ == e_to {
                        return Ok(true);
                    }
                    if seen.insert(succ.clone()) {
                        stack.push(succ.clone());
                    }
                }
            }
        }
        Ok(false)
    }

    /// All edges with a path to `e`, including `e` itself.
    pub fn edges_reaching(&self, e: &Ident) -> BTreeSet<Ident> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![e.clone()];
        seen.insert(e.clone());
        while let Some(cur) = stack.pop() {
            if let Some(v) = self.source.get(&cur) {
                for pred in self.edges_targeting(v) {
                    if seen.insert(pred.clone()) {
                        stack.push(pred.clone());
                    }
                }
            }
        }
        seen
    }

    fn has_cycle(&self) -> bool {
        // an edge lies on a cycle iff it reaches itself through >= 1 vertex
        for e in &self.edges {
            if let Some(v) = self.target.get(e) {
                let mut seen = BTreeSet::new();
                let mut stack: Vec<Ident> =
                    self.edges_sourced_by(v).into_iter().cloned().collect();
                while let Some(cur) = stack.pop() {
                    if &cur == e {
                        return true;
                    }
                    if !seen.insert(cur.clone()) {
                        continue;
                    }
                    if let Some(w) = self.target.get(&cur) {
                        stack.extend(self.edges_sourced_by(w).into_iter().cloned());
                    }
                }
            }
        }
        false
    }

    /// True when the whole network is one path covering every edge and
    /// vertex. A single edge with no vertices counts as a path of length
    /// zero.
    fn is_linear(&self) -> bool {
        if self.inputs.len() != 1 {
            return false;
        }
        let mut edges_seen = BTreeSet::new();
        let mut vertices_seen = BTreeSet::new();
        let mut current = self.inputs.iter().next().unwrap().clone();
        loop {
            if !edges_seen.insert(current.clone()) {
                return false;
            }
            match self.target.get(&current) {
                None => break,
                Some(v) => {
                    if !vertices_seen.insert(v.clone()) {
                        return false;
                    }
                    let out = self.edges_sourced_by(v);
                    if out.len() != 1 {
                        return false;
                    }
                    current = out[0].clone();
                }
            }
        }
        edges_seen.len() == self.edges.len() && vertices_seen.len() == self.vertices.len()
    }
}

/// Outcome of [`classify_network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NetworkFlags {
    pub acyclic: bool,
    pub linear: bool,
    pub confluent: bool,
    pub opetopic: bool,
    pub reduced: bool,
}

/// Decide the network predicates.
pub fn classify_network(n: &Network) -> NetworkFlags {
    let acyclic = !n.has_cycle();
    let linear = acyclic && n.is_linear();
    let unique_output = n.outputs.len() == 1;
    let confluent = acyclic
        && unique_output
        && n.vertices.iter().all(|v| {
            n.edges_sourced_by(v).len() == 1 && !n.edges_targeting(v).is_empty()
        });
    let thin_edges_are_inputs = n.thin_edges.iter().all(|e| n.inputs.contains(e));
    let thin_vertices_ok = n.thin_vertices.iter().all(|v| {
        let incoming = n.edges_targeting(v);
        incoming.len() == 1 && !n.is_thin_edge(incoming[0])
    });
    let opetopic = acyclic && unique_output && thin_edges_are_inputs && thin_vertices_ok;
    let reduced = opetopic
        && n.thin_edges.iter().all(|e| match n.target_of(e) {
            Some(v) => n.edges_targeting(v).len() == 1,
            None => false,
        });
    NetworkFlags {
        acyclic,
        linear,
        confluent,
        opetopic,
        reduced,
    }
}

/// A candidate constellation: a map from vertices of one network to input
/// edges of the next.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Constellation {
    map: BTreeMap<Ident, Ident>,
}

impl Constellation {
    pub fn new(map: BTreeMap<Ident, Ident>) -> Constellation {
        Constellation { map }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Ident, Ident)>) -> Constellation {
        Constellation { map: pairs.into_iter().collect() }
    }

    pub fn image_of(&self, v: &Ident) -> Option<&Ident> {
        self.map.get(v)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Ident, &Ident)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Vertices of `n` mapped into the preimage of an edge set of `p`.
    pub(crate) fn preimage(&self, edge_set: &BTreeSet<Ident>) -> BTreeSet<Ident> {
        self.map
            .iter()
            .filter(|(_, e)| edge_set.contains(*e))
            .map(|(v, _)| v.clone())
            .collect()
    }
}

/// Decide whether `c` is a constellation from `n` to `p`: a thin-respecting
/// bijection from the vertices of `n` onto the input edges of `p` such that
/// for every edge `e` of `p` exactly one edge of `n` leaves the region of
/// vertices mapped to the inputs reaching `e`.
pub fn is_constellation(n: &Network, p: &Network, c: &Constellation) -> Result<bool> {
    for v in n.vertices() {
        if c.image_of(v).is_none() {
            return Err(Error::NotTotal(v.clone()));
        }
    }
    if c.len() != n.vertex_count() {
        // extra keys outside the vertex set
        return Ok(false);
    }
    let image: BTreeSet<Ident> = c.pairs().map(|(_, e)| e.clone()).collect();
    if image.len() != c.len() || image != *p.inputs() {
        return Ok(false);
    }
    let thin_image: BTreeSet<Ident> = c
        .pairs()
        .filter(|(v, _)| n.is_thin_vertex(v))
        .map(|(_, e)| e.clone())
        .collect();
    if thin_image != *p.thin_edges() {
        return Ok(false);
    }
    for e in p.edges() {
        let inputs_reaching: BTreeSet<Ident> = p
            .edges_reaching(e)
            .into_iter()
            .filter(|x| p.inputs().contains(x))
            .collect();
        let region = c.preimage(&inputs_reaching);
        if boundary_edges(n, &region).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edges of `n` with a source inside `region` and no target inside it.
pub(crate) fn boundary_edges(n: &Network, region: &BTreeSet<Ident>) -> Vec<Ident> {
    let mut out = Vec::new();
    for v in region {
        for e in n.edges_sourced_by(v) {
            match n.target_of(e) {
                Some(t) if region.contains(t) => {}
                _ => out.push(e.clone()),
            }
        }
    }
    out.sort();
    out
}

/// A tower of networks joined by constellations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpetopicSequence {
    networks: Vec<Network>,
    constellations: Vec<Constellation>,
}

impl OpetopicSequence {
    pub fn new(networks: Vec<Network>, constellations: Vec<Constellation>) -> Result<Self> {
        if networks.is_empty() {
            return Err(Error::Structure("a sequence needs at least one network".into()));
        }
        if constellations.len() + 1 != networks.len() {
            return Err(Error::Structure(format!(
                "{} networks need {} constellations, found {}",
                networks.len(),
                networks.len() - 1,
                constellations.len()
            )));
        }
        Ok(OpetopicSequence { networks, constellations })
    }

    /// The dimension: index of the last level.
    pub fn dim(&self) -> usize {
        self.networks.len() - 1
    }

    pub fn networks(&self) -> &[Network] {
        &self.networks
    }

    pub fn level(&self, q: usize) -> &Network {
        &self.networks[q]
    }

    pub fn constellations(&self) -> &[Constellation] {
        &self.constellations
    }

    /// Total number of edges across all levels.
    pub fn total_edges(&self) -> usize {
        self.networks.iter().map(Network::edge_count).sum()
    }
}

/// Violation listing from [`validate_sequence`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceReport {
    violations: Vec<String>,
}

impl SequenceReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }
}

impl std::fmt::Display for SequenceReport {
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

/// Check every sequence condition: the bottom level linear with no thin
/// edges, the top level a single edge, every level opetopic (and reduced when
/// `require_reduced`), and every joining map a constellation. Confluence of
/// every level follows from these conditions, so its failure is reported as
/// an internal-consistency error.
pub fn validate_sequence(seq: &OpetopicSequence, require_reduced: bool) -> SequenceReport {
    let mut violations = Vec::new();
    let n = seq.dim();
    for (q, net) in seq.networks().iter().enumerate() {
        let flags = classify_network(net);
        if !flags.opetopic {
            violations.push(format!("N{q}: not an opetopic network"));
        }
        if require_reduced && !flags.reduced {
            violations.push(format!("N{q}: not reduced"));
        }
        if flags.opetopic && !flags.confluent {
            violations.push(format!(
                "N{q}: internal consistency: opetopic level is not confluent"
            ));
        }
        if q == 0 {
            if !flags.linear {
                violations.push("N0: not linear".to_owned());
            }
            if !net.thin_edges().is_empty() {
                violations.push("N0: has thin edges".to_owned());
            }
        }
        if q == n && (net.edge_count() != 1 || net.vertex_count() != 0) {
            violations.push(format!(
                "N{n}: must be a single edge, found {} edges and {} vertices",
                net.edge_count(),
                net.vertex_count()
            ));
        }
    }
    for q in 0..n {
        match is_constellation(seq.level(q), seq.level(q + 1), &seq.constellations()[q]) {
            Ok(true) => {}
            Ok(false) => violations.push(format!("c{q}: not a constellation")),
            Err(e) => violations.push(format!("c{q}: {e}")),
        }
    }
    SequenceReport { violations }
}
