//! Pebble configurations, the uniform random configuration model, exact
//! event probabilities, and move application.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::BigRational;
 
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};
use crate::numeric::multiset_count;
use crate::rng::Rng;

/// A multiset of pebbles on the grid: one count per vertex in row-major
/// order, with the total cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    counts: Vec<u64>,
    total: u64,
}

impl Configuration {
    pub fn new(g: &GridSpec, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != g.len() {
            return Err(Error::CountsLength {
                expected: g.len(),
                got: counts.len(),
            });
        }
        let mut total: u64 = 0;
        for &c in &counts {
            total = total.checked_add(c).ok_or(Error::TotalOverflow)?;
        }
        Ok(Configuration { counts, total })
    }

    pub fn empty(g: &GridSpec) -> Self {
        Configuration {
            counts: vec![0; g.len()],
            total: 0,
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Count at a linear index.
    pub fn get(&self, index: usize) -> u64 {
        self.counts[index]
    }

    /// Count on a vertex.
    pub fn count_at(&self, g: &GridSpec, v: &Vertex) -> Result<u64> {
        g.check_vertex(v)?;
        Ok(self.counts[g.linear_index(v)])
    }

    /// Largest single pile.
    pub fn max_pile(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn to_file(&self, g: &GridSpec) -> ConfigFile {
        ConfigFile {
            shape: g.sides().to_vec(),
            q: g.costs().to_vec(),
            counts: self.counts.clone(),
        }
    }
}

/// On-disk JSON form of a configuration together with its grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub shape: Vec<usize>,
    pub q: Vec<u64>,
    pub counts: Vec<u64>,
}

impl ConfigFile {
    pub fn into_parts(self) -> Result<(GridSpec, Configuration)> {
        let g = GridSpec::new(self.shape, self.q)?;
        let c = Configuration::new(&g, self.counts)?;
        Ok((g, c))
    }
}

/// One pebbling move: take `q_axis` pebbles off `from` and put one on the
/// neighbor one step along `axis` (1-based) in direction `dir` (+1 or -1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub from: Vertex,
    pub axis: usize,
    pub dir: i8,
}

impl Move {
    /// Destination vertex, if it lies inside the grid.
    pub fn target(&self, g: &GridSpec) -> Option<Vertex> {
        if self.axis == 0 || self.axis > g.dim() || (self.dir != 1 && self.dir != -1) {
            return None;
        }
        let mut coords = self.from.coords().to_vec();
        let i = self.axis - 1;
        let c = coords[i] as i64 + self.dir as i64;
        if c < 1 || c > g.sides()[i] as i64 {
            return None;
        }
        coords[i] = c as usize;
        Some(Vertex::new(coords))
    }
}

/// Number of configurations of `k` pebbles on the grid: C(N+k-1, k).
pub fn config_count(g: &GridSpec, k: u64) -> BigUint {
    multiset_count(g.len() as u64, k)
}

/// Draw a configuration of `k` pebbles exactly uniformly over all
/// `config_count(g, k)` multisets. Deterministic in `seed`.
///
/// Sampling goes through the stars-and-bars bijection: a configuration of k
/// pebbles on N vertices corresponds to a k-subset (the stars) of N+k-1
/// positions. A uniform subset is drawn with Floyd's algorithm over
/// whichever of stars or bars is smaller, then decoded into counts.
pub fn sample_uniform(g: &GridSpec, k: u64, seed: u64) -> Configuration {
    let n = g.len() as u64;
    let mut counts = vec![0u64; g.len()];
    if k == 0 {
        return Configuration { counts, total: 0 };
    }
    if n == 1 {
        counts[0] = k;
        return Configuration { counts, total: k };
    }
    let positions = n + k - 1;
    let mut rng = Rng::new(seed);
    if k < n {
        let stars = floyd_subset(&mut rng, positions, k);
        // star j (0-based rank) has j stars before it, so its vertex is the
        // number of bars before it: position - rank.
        for (rank, &pos) in stars.iter().enumerate() {
            counts[(pos - rank as u64) as usize] += 1;
        }
    } else {
        let bars = floyd_subset(&mut rng, positions, n - 1);
        let mut prev = -1i128;
        for (i, &pos) in bars.iter().enumerate() {
            counts[i] = (pos as i128 - prev - 1) as u64;
            prev = pos as i128;
        }
        counts[(n - 1) as usize] = (positions as i128 - 1 - prev) as u64;
    }
    Configuration { counts, total: k }
}

/// Uniform `m`-subset of `0..range`, sorted ascending.
fn floyd_subset(rng: &mut Rng, range: u64, m: u64) -> Vec<u64> {
    debug_assert!(m <= range);
    let mut chosen = std::collections::HashSet::with_capacity(m as usize);
    for j in (range - m)..range {
        let t = rng.below(j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut out: Vec<u64> = chosen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Exact probability that, in a uniform configuration of `k` pebbles, each
/// pinned vertex carries exactly its pinned count.
///
/// With t pins totalling m pebbles this is the binomial ratio
/// C(N-1-t+k-m, N-1-t) / C(N-1+k, N-1), evaluated here as the number of
/// free completions over the number of configurations.
pub fn exact_event_probability(
    g: &GridSpec,
    k: u64,
    pins: &[(Vertex, u64)],
) -> Result<BigRational> {
    let n = g.len() as u64;
    let mut seen = std::collections::HashSet::new();
    let mut pinned_total: u64 = 0;
    for (v, f) in pins {
        g.check_vertex(v)?;
        if !seen.insert(g.linear_index(v)) {
            return Err(Error::DuplicatePin);
        }
        pinned_total = pinned_total
            .checked_add(*f)
            .ok_or(Error::TotalOverflow)?;
    }
    if pinned_total > k {
        return Err(Error::PinOverflow {
            pinned: pinned_total,
            total: k,
        });
    }
    let t = pins.len() as u64;
    let free = multiset_count(n - t, k - pinned_total);
    let all = multiset_count(n, k);
    Ok(BigRational::new(free.into(), all.into()))
}

/// Asymptotic form `lambda^-t e^(-m/lambda)` of the pin probability.
pub fn prob_bound_approx(lambda: f64, t: u64, m: f64) -> f64 {
    (-(t as f64) * lambda.ln() - m / lambda).exp()
}

/// All legal moves from `c`, ordered by source linear index, then axis, then
/// +1 before -1.
pub fn legal_moves(g: &GridSpec, c: &Configuration) -> Vec<Move> {
    let mut moves = Vec::new();
    for idx in 0..g.len() {
        let have = c.counts[idx];
        if have == 0 {
            continue;
        }
        let from = g.vertex_at(idx);
        for axis in 1..=g.dim() {
            if have < g.costs()[axis - 1] {
                continue;
            }
            for dir in [1i8, -1] {
                let m = Move {
                    from: from.clone(),
                    axis,
                    dir,
                };
                if m.target(g).is_some() {
                    moves.push(m);
                }
            }
        }
    }
    moves
}

/// Apply one move, checking legality. The total drops by `q_axis - 1`.
pub fn apply_move(g: &GridSpec, c: &Configuration, m: &Move) -> Result<Configuration> {
    g.check_vertex(&m.from)?;
    let target = m
        .target(g)
        .ok_or_else(|| Error::IllegalMove(format!("no neighbor of {} along axis {} dir {}", m.from, m.axis, m.dir)))?;
    let q = g.costs()[m.axis - 1];
    let from_idx = g.linear_index(&m.from);
    if c.counts[from_idx] < q {
        return Err(Error::IllegalMove(format!(
            "{} holds {} pebbles but the move needs {}",
            m.from, c.counts[from_idx], q
        )));
    }
    let mut counts = c.counts.clone();
    counts[from_idx] -= q;
    counts[g.linear_index(&target)] += 1;
    Ok(Configuration {
        counts,
        total: c.total - (q - 1),
    })
}

/// Visit every configuration of `k` pebbles on the grid in lexicographically
/// decreasing order of counts (all pebbles on the first vertex comes first).
/// Returns false when the visitor broke early.
pub fn for_each_configuration<F>(g: &GridSpec, k: u64, mut visit: F) -> bool
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let n = g.len();
    let mut counts = vec![0u64; n];
    fn place<F>(counts: &mut Vec<u64>, slot: usize, remaining: u64, visit: &mut F) -> bool
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        if slot + 1 == counts.len() {
            counts[slot] = remaining;
            let flow = visit(counts);
            counts[slot] = 0;
            return flow.is_continue();
        }
        for c in (0..=remaining).rev() {
            counts[slot] = c;
            if !place(counts, slot + 1, remaining - c, visit) {
                counts[slot] = 0;
                return false;
            }
        }
        counts[slot] = 0;
        true
    }
    place(&mut counts, 0, k, &mut visit)
}
