//! Deterministic pseudo-random generation of opetopes as sequences.
//!
//! The seed feeds a ChaCha8 stream, so equal calls give byte-identical
//! output on every platform. Construction grows level by level: the current
//! network may first be subdivided with fresh thin vertices (each sitting on
//! a non-thin edge, so every constellation condition from below is
//! preserved), then the next network is built as a rooted tree over the
//! current vertices by repeatedly merging single-top groups of regions. Thin
//! vertices are capped with a thin input edge into a dedicated nullary
//! vertex, which keeps every level reduced. The final two levels are always a
//! corolla followed by a single edge.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ident::Ident;
use crate::network::{Constellation, Network, NetworkSpec, OpetopicSequence};

/// Generate a random opetope with dimension at most `max_dim` and total edge
/// count at most `size_budget`. Equal arguments always produce equal output;
/// degenerate budgets fall back to low dimensions.
pub fn random_opetope(seed: u64, max_dim: usize, size_budget: usize) -> OpetopicSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = size_budget.max(1);
    // an n-dimensional opetope needs at least 2n + 1 edges
    let dim_cap = if budget >= 3 {
        ((budget - 1) / 2).min(max_dim)
    } else {
        0
    };
    if dim_cap == 0 {
        return zero_dimensional();
    }
    let target_n = rng.random_range(1..=dim_cap);
    Builder::new(rng, target_n, budget).run()
}

fn zero_dimensional() -> OpetopicSequence {
    OpetopicSequence::new(vec![Network::single_edge(Ident::new("e1"), false)], vec![])
        .expect("single level")
}

/// Levels still needed above a network with `nv` vertices, `t` of them thin.
fn levels_needed(nv: usize, t: usize) -> usize {
    if t > 0 {
        3
    } else if nv > 1 {
        2
    } else {
        1
    }
}

/// Cheapest edge cost of finishing in exactly `slack` more levels from a
/// network with `nv` vertices, `t` of them thin. Thin vertices force a
/// capped level first; extra slack is burned with 2-edge unary levels.
fn min_completion(nv: usize, t: usize, slack: usize) -> usize {
    debug_assert!(slack >= levels_needed(nv, t));
    if t > 0 {
        (nv + t + 1) + min_completion(t + 1, 0, slack - 1)
    } else if nv > 1 {
        (nv + 1) + min_completion(1, 0, slack - 1)
    } else if slack == 1 {
        1
    } else {
        2 + min_completion(1, 0, slack - 1)
    }
}

struct Builder {
    rng: ChaCha8Rng,
    target_n: usize,
    budget: usize,
    used: usize,
    networks: Vec<Network>,
    constellations: Vec<Constellation>,
    current: Network,
    next_id: usize,
}

/// A group of current-level vertices already represented by one edge of the
/// level under construction. Exactly one current-level edge leaves the group,
/// out of `top`.
struct Region {
    verts: BTreeSet<Ident>,
    top: Ident,
    edge: Ident,
}

impl Builder {
    fn new(mut rng: ChaCha8Rng, target_n: usize, budget: usize) -> Builder {
        // bottom path: exactly 2 edges when dimension 1 is the target (the
        // next level must already be the single edge), longer as budget and
        // inclination allow
        let len = if target_n == 1 {
            2
        } else {
            let upper = (2..=5)
                .filter(|l| l + min_completion(l - 1, 0, target_n) <= budget)
                .max()
                .unwrap_or(2);
            rng.random_range(2..=upper.max(2))
        };
        let mut spec = NetworkSpec::default();
        let mut next_id = 0;
        let mut fresh = |prefix: &str| {
            next_id += 1;
            Ident::new(format!("{prefix}{next_id}"))
        };
        let mut prev_vertex: Option<Ident> = None;
        for i in 0..len {
            let e = fresh("e");
            spec.edges.push(e.clone());
            if let Some(v) = &prev_vertex {
                spec.source.push((e.clone(), v.clone()));
            } else {
                spec.inputs.push(e.clone());
            }
            if i + 1 < len {
                let v = fresh("v");
                spec.vertices.push(v.clone());
                spec.target.push((e.clone(), v.clone()));
                prev_vertex = Some(v);
            } else {
                spec.outputs.push(e.clone());
            }
        }
        let current = Network::build(spec).expect("path is well formed");
        Builder {
            rng,
            target_n,
            budget,
            used: len,
            networks: Vec::new(),
            constellations: Vec::new(),
            current,
            next_id,
        }
    }

    fn fresh(&mut self, prefix: &str) -> Ident {
        self.next_id += 1;
        Ident::new(format!("{prefix}{}", self.next_id))
    }

    fn run(mut self) -> OpetopicSequence {
        for q in 0..self.target_n {
            let slack = self.target_n - q;
            let nv = self.current.vertex_count();
            let t = self.current.thin_vertices().len();
            debug_assert!(levels_needed(nv, t) <= slack, "planning invariant");
            let must_wind = levels_needed(nv, t) == slack;
            if !must_wind {
                self.maybe_subdivide(slack);
            }
            let nv = self.current.vertex_count();
            let t = self.current.thin_vertices().len();
            if slack == 1 {
                // final level: the single edge
                debug_assert!(nv == 1 && t == 0);
                let top_vertex = self.current.vertices().next().unwrap().clone();
                let e = self.fresh("e");
                let next = Network::single_edge(e.clone(), false);
                self.used += 1;
                self.push_level(next, Constellation::from_pairs([(top_vertex, e)]));
                continue;
            }
            let merges = self.pick_merge_count(slack, nv, t);
            self.build_next(merges);
        }
        debug_assert!(self.used <= self.budget, "budget invariant");
        self.networks.push(self.current.clone());
        OpetopicSequence::new(self.networks, self.constellations).expect("level counts match")
    }

    fn push_level(&mut self, next: Network, cons: Constellation) {
        self.networks.push(self.current.clone());
        self.constellations.push(cons);
        self.current = next;
    }

    /// Insert up to two fresh thin vertices on random non-thin edges, when
    /// both the level plan and the budget leave room for the longer
    /// wind-down they force.
    fn maybe_subdivide(&mut self, slack: usize) {
        let want: usize = match self.rng.random_range(0..100) {
            0..=54 => 0,
            55..=84 => 1,
            _ => 2,
        };
        for _ in 0..want {
            let nv = self.current.vertex_count();
            let t = self.current.thin_vertices().len();
            if levels_needed(nv + 1, t + 1) > slack {
                break;
            }
            if self.used + 1 + min_completion(nv + 1, t + 1, slack) > self.budget {
                break;
            }
            let candidates: Vec<Ident> = self
                .current
                .edges()
                .filter(|e| !self.current.is_thin_edge(e))
                .cloned()
                .collect();
            if candidates.is_empty() {
                break;
            }
            let pick = self.rng.random_range(0..candidates.len());
            let edge = candidates[pick].clone();
            let v = self.fresh("v");
            let e2 = self.fresh("e");
            self.current = subdivide(&self.current, &edge, v, e2);
            self.used += 1;
        }
    }

    /// Number of merge vertices for the next level, respecting the remaining
    /// level plan and the budget. One merge is always feasible.
    fn pick_merge_count(&mut self, slack: usize, nv: usize, t: usize) -> usize {
        let (used, budget) = (self.used, self.budget);
        let feasible = move |m: usize| {
            let next_v = t + m;
            levels_needed(next_v, 0) <= slack - 1
                && used + (nv + t + m) + min_completion(next_v, 0, slack - 1) <= budget
        };
        let cap = nv + t + 2;
        let mut m = self.rng.random_range(1..=cap);
        while m > 1 && !feasible(m) {
            m -= 1;
        }
        debug_assert!(feasible(1), "one merge must stay within plan and budget");
        m
    }

    /// Build the next network as a tree over the current vertices with
    /// exactly `merges` merge vertices (the last one absorbing everything
    /// still active), record the constellation, and advance.
    fn build_next(&mut self, merges: usize) {
        let verts: Vec<Ident> = self.current.vertices().cloned().collect();
        let mut spec = NetworkSpec::default();
        let mut cons = Vec::new();
        let mut active: Vec<Region> = Vec::new();
        for v in &verts {
            let e_in = self.fresh("e");
            spec.edges.push(e_in.clone());
            spec.inputs.push(e_in.clone());
            cons.push((v.clone(), e_in.clone()));
            if self.current.is_thin_vertex(v) {
                spec.thin_edges.push(e_in.clone());
                let cap = self.fresh("v");
                spec.vertices.push(cap.clone());
                spec.target.push((e_in, cap.clone()));
                let out = self.fresh("e");
                spec.edges.push(out.clone());
                spec.source.push((out.clone(), cap));
                active.push(Region {
                    verts: [v.clone()].into(),
                    top: v.clone(),
                    edge: out,
                });
            } else {
                active.push(Region {
                    verts: [v.clone()].into(),
                    top: v.clone(),
                    edge: e_in,
                });
            }
        }
        for step in 0..merges {
            let last = step + 1 == merges;
            let chosen = if last {
                (0..active.len()).collect::<Vec<_>>()
            } else {
                self.pick_merge_subset(&active)
            };
            let w = self.fresh("v");
            spec.vertices.push(w.clone());
            for idx in &chosen {
                spec.target.push((active[*idx].edge.clone(), w.clone()));
            }
            let out = self.fresh("e");
            spec.edges.push(out.clone());
            spec.source.push((out.clone(), w));
            // merge chosen regions; the new top is the one whose parent lies
            // outside the union
            let union: BTreeSet<Ident> = chosen
                .iter()
                .flat_map(|i| active[*i].verts.iter().cloned())
                .collect();
            let mut new_top = None;
            for idx in &chosen {
                match self.parent_vertex(&active[*idx].top) {
                    Some(p) if union.contains(&p) => {}
                    _ => new_top = Some(active[*idx].top.clone()),
                }
            }
            let region = Region {
                verts: union,
                top: new_top.expect("single-top merge"),
                edge: out,
            };
            let chosen_set: BTreeSet<usize> = chosen.into_iter().collect();
            active = active
                .into_iter()
                .enumerate()
                .filter(|(i, _)| !chosen_set.contains(i))
                .map(|(_, r)| r)
                .collect();
            active.push(region);
        }
        debug_assert_eq!(active.len(), 1);
        spec.outputs.push(active[0].edge.clone());
        let next = Network::build(spec).expect("merge tree is well formed");
        self.used += next.edge_count();
        self.push_level(next, Constellation::from_pairs(cons));
    }

    /// Target of the unique out-edge of `v` in the current network.
    fn parent_vertex(&self, v: &Ident) -> Option<Ident> {
        let out = self.current.edges_sourced_by(v);
        debug_assert_eq!(out.len(), 1, "confluent level");
        self.current.target_of(out[0]).cloned()
    }

    /// A random single-top group of active regions: a root region plus a
    /// connected downward-closed selection of its region-tree descendants.
    fn pick_merge_subset(&mut self, active: &[Region]) -> Vec<usize> {
        // region-tree children: region j is a child of i when the parent of
        // its top vertex lies in region i
        let parents: Vec<Option<usize>> = active
            .iter()
            .map(|r| {
                let pv = self.parent_vertex(&r.top)?;
                active.iter().position(|other| other.verts.contains(&pv))
            })
            .collect();
        let root = self.rng.random_range(0..active.len());
        let mut chosen = vec![root];
        let mut frontier = vec![root];
        while let Some(node) = frontier.pop() {
            for (j, p) in parents.iter().enumerate() {
                if *p == Some(node) && !chosen.contains(&j) && self.rng.random_bool(0.5) {
                    chosen.push(j);
                    frontier.push(j);
                }
            }
        }
        chosen.sort_unstable();
        chosen
    }
}

/// Split `edge` by a fresh thin vertex: the original identifier keeps the
/// source half (so input status and constellations from below survive), the
/// fresh edge takes over the target or output status.
fn subdivide(net: &Network, edge: &Ident, fresh_v: Ident, fresh_e: Ident) -> Network {
    let mut spec = NetworkSpec {
        edges: net.edges().cloned().collect(),
        vertices: net.vertices().cloned().collect(),
        inputs: net.inputs().iter().cloned().collect(),
        outputs: net.outputs().iter().cloned().collect(),
        thin_edges: net.thin_edges().iter().cloned().collect(),
        thin_vertices: net.thin_vertices().iter().cloned().collect(),
        source: Vec::new(),
        target: Vec::new(),
    };
    for e in net.edges() {
        if let Some(v) = net.source_of(e) {
            spec.source.push((e.clone(), v.clone()));
        }
        match net.target_of(e) {
            Some(v) if e != edge => spec.target.push((e.clone(), v.clone())),
            Some(v) => spec.target.push((fresh_e.clone(), v.clone())),
            None => {}
        }
    }
    spec.edges.push(fresh_e.clone());
    spec.vertices.push(fresh_v.clone());
    spec.thin_vertices.push(fresh_v.clone());
    spec.target.push((edge.clone(), fresh_v.clone()));
    spec.source.push((fresh_e.clone(), fresh_v));
    if spec.outputs.contains(edge) {
        spec.outputs.retain(|e| e != edge);
        spec.outputs.push(fresh_e);
    }
    Network::build(spec).expect("subdivision is well formed")
}
