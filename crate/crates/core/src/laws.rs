//! Independent oracles for effective resistance: series/parallel network
//! reduction and a random-walk commute-time estimator.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Signed;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Rational;

/// Two-terminal multigraph network. Parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalNetwork {
    n: usize,
    /// `None` marks an edge removed by a reduction.
    edges: Vec<Option<(usize, usize, Rational)>>,
    s: usize,
    t: usize,
}

/// One elementary rewrite of a [`TerminalNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Merge the two edges at a non-terminal degree-2 vertex.
    Series { vertex: usize },
    /// Merge two edges joining the same pair of vertices.
    Parallel { first: usize, second: usize },
    /// Drop a non-terminal vertex that carries no current (degree ≤ 1, or
    /// both of its edges go to one neighbour).
    DeadEnd { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    Resistance(Rational),
    /// Not series-parallel between the terminals.
    Irreducible,
}

impl TerminalNetwork {
    pub fn new(n: usize, edges: Vec<(usize, usize, Rational)>, s: usize, t: usize) -> Result<Self> {
        for x in [s, t] {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        if s == t {
            return Err(Error::InvalidArgument("terminals must differ".into()));
        }
        for (u, v, r) in &edges {
            for &x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(*u));
            }
            if !r.is_positive() {
                return Err(Error::NonpositiveResistance { u: *u, v: *v });
            }
        }
        Ok(TerminalNetwork { n, edges: edges.into_iter().map(Some).collect(), s, t })
    }

    pub fn from_graph(g: &WeightedGraph, s: usize, t: usize) -> Result<Self> {
        Self::new(g.n(), g.edges().iter().map(|e| (e.u, e.v, e.r.clone())).collect(), s, t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terminals(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    /// Remaining edges.
    pub fn edges(&self) -> Vec<(usize, usize, Rational)> {
        self.edges.iter().flatten().cloned().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    fn incident(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if let Some((u, v, _)) = e {
                inc[*u].push(i);
                inc[*v].push(i);
            }
        }
        inc
    }

    fn terminals_connected(&self) -> bool {
        let inc = self.incident();
        let mut seen = vec![false; self.n];
        seen[self.s] = true;
        let mut queue = VecDeque::from([self.s]);
        while let Some(x) = queue.pop_front() {
            for &e in &inc[x] {
                let (u, v, _) = self.edges[e].as_ref().expect("live edge");
                let y = if *u == x { *v } else { *u };
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen[self.t]
    }

    /// Every reduction currently applicable, in a fixed order.
    pub fn available_reductions(&self) -> Vec<Reduction> {
        let inc = self.incident();
        let mut out = Vec::new();
        let mut bundles: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some((u, v, _)) = e {
                let key = ((*u).min(*v), (*u).max(*v));
                match bundles.get(&key) {
                    Some(&first) => out.push(Reduction::Parallel { first, second: i }),
                    None => {
                        bundles.insert(key, i);
                    }
                }
            }
        }
        for (x, edges) in inc.iter().enumerate() {
            if x == self.s || x == self.t {
                continue;
            }
            match edges.len() {
                0 => {}
                1 => out.push(Reduction::DeadEnd { vertex: x }),
                2 => {
                    let a = self.other_end(edges[0], x);
                    let b = self.other_end(edges[1], x);
                    if a == b {
                        out.push(Reduction::DeadEnd { vertex: x });
                    } else {
                        out.push(Reduction::Series { vertex: x });
                    }
                }
                _ => {}
            }
        }
        out
    }

    fn other_end(&self, e: usize, x: usize) -> usize {
        let (u, v, _) = self.edges[e].as_ref().expect("live edge");
        if *u == x {
            *v
        } else {
            *u
        }
    }

    /// Applies one reduction; the terminal resistance is unchanged.
    pub fn apply(&mut self, reduction: Reduction) {
        match reduction {
            Reduction::Parallel { first, second } => {
                let (_, _, r2) = self.edges[second].take().expect("live edge");
                let (_, _, r1) = self.edges[first].as_mut().expect("live edge");
                *r1 = (&*r1 * &r2) / (&*r1 + &r2);
            }
            Reduction::Series { vertex } => {
                let inc = self.incident();
                let (e1, e2) = (inc[vertex][0], inc[vertex][1]);
                let a = self.other_end(e1, vertex);
                let b = self.other_end(e2, vertex);
                let (_, _, r2) = self.edges[e2].take().expect("live edge");
                let (_, _, r1) = self.edges[e1].take().expect("live edge");
                self.edges[e1] = Some((a, b, r1 + r2));
            }
            Reduction::DeadEnd { vertex } => {
                for e in self.edges.iter_mut() {
                    if e.as_ref().is_some_and(|(u, v, _)| *u == vertex || *v == vertex) {
                        *e = None;
                    }
                }
            }
        }
    }

    /// Merges every series pair until none is left.
    pub fn series_reduce(&self) -> TerminalNetwork {
        self.reduce_only(|r| matches!(r, Reduction::Series { .. }))
    }

    /// Merges every parallel bundle into one edge.
    pub fn parallel_reduce(&self) -> TerminalNetwork {
        self.reduce_only(|r| matches!(r, Reduction::Parallel { .. }))
    }

    fn reduce_only(&self, pick: impl Fn(&Reduction) -> bool) -> TerminalNetwork {
        let mut net = self.clone();
        while let Some(r) = net.available_reductions().into_iter().find(|r| pick(r)) {
            net.apply(r);
        }
        net
    }

    fn outcome(&self) -> ReductionOutcome {
        let live = self.edges();
        match live.as_slice() {
            [(u, v, r)] if (*u, *v) == (self.s, self.t) || (*v, *u) == (self.s, self.t) => {
                ReductionOutcome::Resistance(r.clone())
            }
            _ => ReductionOutcome::Irreducible,
        }
    }
}

/// Applies series, parallel and dead-end reductions to a fixpoint.
pub fn reduce_to_resistance(net: &TerminalNetwork) -> Result<ReductionOutcome> {
    reduce_in_order(net, |options| options[0])
}

/// Same as [`reduce_to_resistance`] but picks a random applicable reduction at
/// every step.
pub fn reduce_to_resistance_shuffled(net: &TerminalNetwork, rng: &mut impl Rng) -> Result<ReductionOutcome> {
    reduce_in_order(net, |options| *options.choose(rng).expect("nonempty"))
}

fn reduce_in_order(
    net: &TerminalNetwork,
    mut choose: impl FnMut(&[Reduction]) -> Reduction,
) -> Result<ReductionOutcome> {
    if !net.terminals_connected() {
        return Err(Error::DisconnectedTerminals);
    }
    let mut net = net.clone();
    loop {
        let options = net.available_reductions();
        if options.is_empty() {
            return Ok(net.outcome());
        }
        net.apply(choose(&options));
    }
}

/// Random two-terminal series-parallel network with exactly `edges` edges and
/// resistances `a/b`, `1 ≤ a, b ≤ 9`. Built top-down: a budget splits into
/// two sub-budgets combined in series or in parallel.
pub fn random_series_parallel(rng: &mut impl Rng, edges: usize) -> TerminalNetwork {
    assert!(edges >= 1, "need at least one edge");
    let mut list = Vec::new();
    let mut n = 2;
    build_sp(rng, edges, 0, 1, &mut n, &mut list);
    TerminalNetwork::new(n, list, 0, 1).expect("generator emits valid networks")
}

fn build_sp(
    rng: &mut impl Rng,
    budget: usize,
    a: usize,
    b: usize,
    n: &mut usize,
    out: &mut Vec<(usize, usize, Rational)>,
) {
    if budget == 1 {
        let r = Rational::new(rng.random_range(1..=9i64).into(), rng.random_range(1..=9i64).into());
        out.push((a, b, r));
        return;
    }
    let left = rng.random_range(1..budget);
    if rng.random_bool(0.5) {
        let mid = *n;
        *n += 1;
        build_sp(rng, left, a, mid, n, out);
        build_sp(rng, budget - left, mid, b, n, out);
    } else {
        build_sp(rng, left, a, b, n, out);
        build_sp(rng, budget - left, a, b, n, out);
    }
}

/// Commute-time estimate of an effective resistance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub walks: u64,
}

impl McEstimate {
    /// `(estimate − exact) / stderr`; zero when both the error and the
    /// standard error vanish.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.estimate - exact;
        if self.stderr == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(diff)
            }
        } else {
            diff / self.stderr
        }
    }
}

/// Walks are grouped in chunks of this size, each chunk seeded from the
/// master seed and its chunk index, so the result does not depend on how the
/// chunks are scheduled.
const WALK_CHUNK: u64 = 1 << 14;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Estimates `ω(u, v)` as the mean commute time over `2|E|`, for unit
/// resistances. The standard error comes from the sample variance.
pub fn mc_effective_resistance(
    g: &WeightedGraph,
    u: usize,
    v: usize,
    walks: u64,
    seed: u64,
) -> Result<McEstimate> {
    for x in [u, v] {
        g.degree(x)?;
    }
    if walks == 0 {
        return Err(Error::InvalidArgument("walks must be at least 1".into()));
    }
    if !g.is_unit() {
        return Err(Error::NonUnitResistance);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if u == v {
        return Ok(McEstimate { estimate: 0.0, stderr: 0.0, walks });
    }
    // flat adjacency
    let mut offsets = Vec::with_capacity(g.n() + 1);
    let mut targets = Vec::with_capacity(2 * g.edge_count());
    offsets.push(0u32);
    for x in 0..g.n() {
        targets.extend(g.neighbors(x).map(|(y, _)| y as u32));
        offsets.push(targets.len() as u32);
    }
    let hit = |rng: &mut Xoshiro256PlusPlus, from: usize, to: usize| -> u64 {
        let mut x = from;
        let mut steps = 0u64;
        while x != to {
            let (lo, hi) = (offsets[x] as usize, offsets[x + 1] as usize);
            x = targets[lo + rng.random_range(0..hi - lo)] as usize;
            steps += 1;
        }
        steps
    };
    let (mut sum, mut sum_sq) = (0f64, 0f64);
    let chunks = walks.div_ceil(WALK_CHUNK);
    for chunk in 0..chunks {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(splitmix64(seed ^ splitmix64(chunk)));
        let count = WALK_CHUNK.min(walks - chunk * WALK_CHUNK);
        let (mut s, mut s2) = (0u128, 0u128);
        for _ in 0..count {
            let t = (hit(&mut rng, u, v) + hit(&mut rng, v, u)) as u128;
            s += t;
            s2 += t * t;
        }
        sum += s as f64;
        sum_sq += s2 as f64;
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let k = walks as f64;
    let mean = sum / k;
    let variance = if walks > 1 { ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0) } else { 0.0 };
    Ok(McEstimate { estimate: mean / two_m, stderr: (variance / k).sqrt() / two_m, walks })
}

/// Exact commute time `2 (Σ_e 1/r_e) ω(u, v)`.
pub fn commute_time(g: &WeightedGraph, omega_uv: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    two * crate::graph::total_conductance(g) * omega_uv
}
