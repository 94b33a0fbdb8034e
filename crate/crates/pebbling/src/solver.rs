//! Solvability deciders: a complete memoized search over the move graph, a
//! greedy strategy that moves pebbles straight toward the target, weight
//! criteria that bound solvability from both sides, the one-dimensional
//! characterization, and brute-force pebbling numbers.
//!
//! The weight of a configuration relative to a target v is
//! `sum_w D(w) / qd(w, v)`. Moves toward v preserve it, all other moves
//! strictly decrease it, and a solvable configuration must start with weight
//! at least 1; weight above `(max_i q_i - 1) prod_i (q_i+1)/(q_i-1)`
//! guarantees solvability. The exact search uses both facts for pruning.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::config::{apply_move, for_each_configuration, Configuration, Move};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};

/// Default cap on distinct states explored by one exact query.
pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Solvable,
    Unsolvable,
    BudgetExceeded,
}

/// Outcome of a single-target query. A `Solvable` verdict from the exact and
/// greedy solvers carries a certificate: a move sequence that is legal step
/// by step and ends with a pebble on the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub certificate: Option<Vec<Move>>,
    pub states_explored: u64,
}

/// Both weight criteria for one (configuration, target) pair.
///
/// `necessary_met` is implied by solvability (its failure certifies
/// unsolvable); `sufficient_met` implies solvability outright.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    pub weight_sum: BigRational,
    pub necessary_met: bool,
    pub sufficient_threshold: BigRational,
    pub sufficient_met: bool,
}

/// Whole-grid solvability with the first failing target, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolveReport {
    pub verdict: Verdict,
    pub failing_vertex: Option<Vertex>,
    pub per_vertex: Vec<(Vertex, Verdict)>,
    pub states_explored: u64,
}

/// Brute-force pebbling number with an unsolvable witness one pebble below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PebblingNumber {
    pub value: u64,
    pub witness: Configuration,
    pub configs_checked: u64,
}

/// Precomputed per-target data: integer weights scaled so that comparisons
/// against 1 and against the sufficiency threshold are exact.
///
/// `scale` is `prod_i q_i^{n_i - 1}`, the largest pebbling distance, which
/// every `qd(w, v)` divides; `weights[w] = scale / qd(w, v)`.
struct TargetContext {
    target: usize,
    dims: Vec<usize>,
    costs: Vec<u64>,
    coords: Vec<Vec<usize>>,
    weights: Vec<BigUint>,
    scale: BigUint,
    /// Smallest scaled weight that certifies solvability.
    sufficient_min: BigUint,
}

impl TargetContext {
    fn new(g: &GridSpec, v: &Vertex) -> Self {
        let target = g.linear_index(v);
        let coords: Vec<Vec<usize>> = g.vertices().map(|w| w.coords().to_vec()).collect();
        let tables = g.cost_power_tables();
        let scale: BigUint = g
            .sides()
            .iter()
            .zip(g.costs())
            .map(|(&n, &q)| BigUint::from(q).pow((n - 1) as u32))
            .product();
        let weights: Vec<BigUint> = coords
            .iter()
            .map(|w| {
                let qd: BigUint = w
                    .iter()
                    .zip(v.coords())
                    .enumerate()
                    .map(|(axis, (&wi, &vi))| tables[axis][wi.abs_diff(vi)].clone())
                    .product();
                &scale / qd
            })
            .collect();
        let max_q = g.max_cost();
        let threshold_num: BigUint = g
            .costs()
            .iter()
            .fold(BigUint::from(max_q - 1), |acc, &q| acc * (BigUint::from(q) + 1u32));
        let threshold_den: BigUint = g.costs().iter().map(|&q| BigUint::from(q - 1)).product();
        // weight/scale > num/den  <=>  weight >= floor(num*scale/den) + 1
        let sufficient_min = (threshold_num * &scale) / threshold_den + BigUint::one();
        TargetContext {
            target,
            dims: g.sides().to_vec(),
            costs: g.costs().to_vec(),
            coords,
            weights,
            scale,
            sufficient_min,
        }
    }

    fn scaled_weight(&self, counts: &[u64]) -> BigUint {
        counts
            .iter()
            .zip(&self.weights)
            .map(|(&c, w)| w * c)
            .sum()
    }

    fn threshold(&self) -> BigRational {
        // reduced rational form of the sufficiency threshold
        let max_q = self.costs.iter().max().copied().expect("d >= 1");
        let num: BigUint = self
            .costs
            .iter()
            .fold(BigUint::from(max_q - 1), |acc, &q| acc * (BigUint::from(q) + 1u32));
        let den: BigUint = self.costs.iter().map(|&q| BigUint::from(q - 1)).product();
        BigRational::new(num.into(), den.into())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct CompactMove {
    from: usize,
    axis: usize,
    dir: i8,
}

impl CompactMove {
    fn to_move(self, g: &GridSpec) -> Move {
        Move {
            from: g.vertex_at(self.from),
            axis: self.axis,
            dir: self.dir,
        }
    }
}

/// Stride of one step along `axis` (1-based) in linear-index space.
fn axis_stride(dims: &[usize], axis: usize) -> usize {
    dims[axis..].iter().product()
}

fn compute_weight_report(g: &GridSpec, c: &Configuration, v: &Vertex) -> Result<WeightReport> {
    g.check_vertex(v)?;
    if c.counts().len() != g.len() {
        return Err(Error::CountsLength {
            expected: g.len(),
            got: c.counts().len(),
        });
    }
    let ctx = TargetContext::new(g, v);
    let scaled = ctx.scaled_weight(c.counts());
    let weight_sum = BigRational::new(scaled.clone().into(), ctx.scale.clone().into());
    let necessary_met = scaled >= ctx.scale;
    let sufficient_met = scaled >= ctx.sufficient_min;
    Ok(WeightReport {
        weight_sum,
        necessary_met,
        sufficient_threshold: ctx.threshold(),
        sufficient_met,
    })
}

/// Necessary criterion: if `weight_sum < 1` the configuration is certainly
/// not v-solvable. The sum includes the target vertex itself.
pub fn fractional_necessary_check(g: &GridSpec, c: &Configuration, v: &Vertex) -> Result<WeightReport> {
    compute_weight_report(g, c, v)
}

/// Sufficient criterion: weight above
/// `(max_i q_i - 1) prod_i (q_i+1)/(q_i-1)` guarantees v-solvability.
pub fn weight_sufficient_check(g: &GridSpec, c: &Configuration, v: &Vertex) -> Result<WeightReport> {
    compute_weight_report(g, c, v)
}

/// Right-hand side of the greedy criterion:
/// `sum_{w != v} (max_i q_i - 1) / qd(w, v)`, exactly. Weight above this
/// value guarantees that the greedy strategy reaches the target.
pub fn greedy_threshold_sum(g: &GridSpec, v: &Vertex) -> Result<BigRational> {
    g.check_vertex(v)?;
    let ctx = TargetContext::new(g, v);
    let max_q = g.max_cost();
    let mut scaled = BigUint::zero();
    for (idx, w) in ctx.weights.iter().enumerate() {
        if idx != ctx.target {
            scaled += w * (max_q - 1);
        }
    }
    Ok(BigRational::new(scaled.into(), ctx.scale.clone().into()))
}

/// Move pebbles straight toward `v` until a pebble lands on it or no vertex
/// can afford a move that shrinks its distance to `v`.
///
/// Source selection is deterministic: the eligible vertex with the most
/// pebbles (ties: smallest linear index), then the axis with the widest
/// remaining gap (ties: smallest axis). A `Solvable` verdict is always
/// correct; `Unsolvable` only means the greedy strategy failed.
pub fn greedy_solve(g: &GridSpec, c: &Configuration, v: &Vertex) -> Result<SolveResult> {
    g.check_vertex(v)?;
    if c.counts().len() != g.len() {
        return Err(Error::CountsLength {
            expected: g.len(),
            got: c.counts().len(),
        });
    }
    let ctx = TargetContext::new(g, v);
    let mut counts = c.counts().to_vec();
    let mut certificate = Vec::new();
    let mut steps = 0u64;
    loop {
        if counts[ctx.target] >= 1 {
            return Ok(SolveResult {
                verdict: Verdict::Solvable,
                certificate: Some(certificate),
                states_explored: steps,
            });
        }
        let mut best: Option<usize> = None;
        for idx in 0..counts.len() {
            if idx == ctx.target || counts[idx] == 0 {
                continue;
            }
            let eligible = (0..ctx.dims.len()).any(|a| {
                ctx.coords[idx][a] != v.coords()[a] && counts[idx] >= ctx.costs[a]
            });
            if eligible && best.is_none_or(|b| counts[idx] > counts[b]) {
                best = Some(idx);
            }
        }
        let Some(src) = best else {
            return Ok(SolveResult {
                verdict: Verdict::Unsolvable,
                certificate: None,
                states_explored: steps,
            });
        };
        let mut axis_pick: Option<(usize, usize)> = None; // (gap, axis)
        for a in 0..ctx.dims.len() {
            let gap = ctx.coords[src][a].abs_diff(v.coords()[a]);
            if gap > 0 && counts[src] >= ctx.costs[a] && axis_pick.is_none_or(|(g0, _)| gap > g0) {
                axis_pick = Some((gap, a));
            }
        }
        let (_, axis0) = axis_pick.expect("eligible source has an eligible axis");
        let dir: i8 = if v.coords()[axis0] > ctx.coords[src][axis0] { 1 } else { -1 };
        let stride = axis_stride(&ctx.dims, axis0 + 1);
        let dst = if dir == 1 { src + stride } else { src - stride };
        counts[src] -= ctx.costs[axis0];
        counts[dst] += 1;
        steps += 1;
        certificate.push(Move {
            from: g.vertex_at(src),
            axis: axis0 + 1,
            dir,
        });
    }
}

enum MemoEntry {
    Via(CompactMove),
    Greedy,
    Dead,
}

enum Out {
    Yes,
    No,
    Over,
}

struct Search<'a> {
    ctx: &'a TargetContext,
    memo: HashMap<Box<[u64]>, MemoEntry>,
    explored: u64,
    budget: u64,
}

impl Search<'_> {
    /// Legal moves ordered distance-reducing first, then by the canonical
    /// (source index, axis, +1 before -1) order within each group.
    fn ordered_moves(&self, counts: &[u64]) -> Vec<CompactMove> {
        let ctx = self.ctx;
        let d = ctx.dims.len();
        let mut toward = Vec::new();
        let mut other = Vec::new();
        for (from, &have) in counts.iter().enumerate() {
            if have == 0 {
                continue;
            }
            for axis in 0..d {
                if have < ctx.costs[axis] {
                    continue;
                }
                let pos = ctx.coords[from][axis];
                let goal = ctx.coords[ctx.target][axis];
                let side = ctx.dims[axis];
                for dir in [1i8, -1] {
                    let next = pos as i64 + dir as i64;
                    if next < 1 || next > side as i64 {
                        continue;
                    }
                    let m = CompactMove { from, axis: axis + 1, dir };
                    let reduces = (dir == 1 && pos < goal) || (dir == -1 && pos > goal);
                    if reduces {
                        toward.push(m);
                    } else {
                        other.push(m);
                    }
                }
            }
        }
        toward.extend(other);
        toward
    }

    fn apply(&self, counts: &mut [u64], m: CompactMove) -> usize {
        let stride = axis_stride(&self.ctx.dims, m.axis);
        let dst = if m.dir == 1 { m.from + stride } else { m.from - stride };
        counts[m.from] -= self.ctx.costs[m.axis - 1];
        counts[dst] += 1;
        dst
    }

    fn undo(&self, counts: &mut [u64], m: CompactMove, dst: usize) {
        counts[dst] -= 1;
        counts[m.from] += self.ctx.costs[m.axis - 1];
    }

    fn dfs(&mut self, counts: &mut Vec<u64>, weight: &BigUint) -> Out {
        let ctx = self.ctx;
        if counts[ctx.target] >= 1 {
            return Out::Yes;
        }
        if *weight >= ctx.sufficient_min {
            self.memo.insert(counts.clone().into_boxed_slice(), MemoEntry::Greedy);
            return Out::Yes;
        }
        if *weight < ctx.scale {
            return Out::No;
        }
        if let Some(entry) = self.memo.get(counts.as_slice()) {
            return match entry {
                MemoEntry::Dead => Out::No,
                _ => Out::Yes,
            };
        }
        self.explored += 1;
        if self.explored > self.budget {
            return Out::Over;
        }
        for m in self.ordered_moves(counts) {
            let dst = self.apply(counts, m);
            // a move toward the target preserves the weight; any other
            // legal move lowers it by q * w(from) - w(dst)
            let lost = &ctx.weights[m.from] * ctx.costs[m.axis - 1] - &ctx.weights[dst];
            let next_weight = if lost.is_zero() { weight.clone() } else { weight - lost };
            let out = self.dfs(counts, &next_weight);
            self.undo(counts, m, dst);
            match out {
                Out::Yes => {
                    self.memo
                        .insert(counts.clone().into_boxed_slice(), MemoEntry::Via(m));
                    return Out::Yes;
                }
                Out::Over => return Out::Over,
                Out::No => {}
            }
        }
        self.memo
            .insert(counts.clone().into_boxed_slice(), MemoEntry::Dead);
        Out::No
    }
}

/// Complete decision of v-solvability by memoized depth-first search over
/// every reachable configuration, pruned by the weight criteria.
///
/// `budget` caps the number of distinct states; exceeding it yields the
/// `BudgetExceeded` verdict, never a solvability claim.
pub fn is_v_solvable_exact(
    g: &GridSpec,
    c: &Configuration,
    v: &Vertex,
    budget: u64,
) -> Result<SolveResult> {
    g.check_vertex(v)?;
    if c.counts().len() != g.len() {
        return Err(Error::CountsLength {
            expected: g.len(),
            got: c.counts().len(),
        });
    }
    if budget == 0 {
        return Err(Error::domain("state budget must be positive"));
    }
    let ctx = TargetContext::new(g, v);
    let mut search = Search {
        ctx: &ctx,
        memo: HashMap::new(),
        explored: 0,
        budget,
    };
    let mut counts = c.counts().to_vec();
    let weight = ctx.scaled_weight(&counts);
    let out = search.dfs(&mut counts, &weight);
    let states_explored = search.explored;
    match out {
        Out::Over => Ok(SolveResult {
            verdict: Verdict::BudgetExceeded,
            certificate: None,
            states_explored,
        }),
        Out::No => Ok(SolveResult {
            verdict: Verdict::Unsolvable,
            certificate: None,
            states_explored,
        }),
        Out::Yes => {
            let mut certificate = Vec::new();
            let mut state = c.clone();
            while state.get(ctx.target) == 0 {
                match search.memo.get(state.counts()) {
                    Some(MemoEntry::Via(m)) => {
                        let mv = m.to_move(g);
                        state = apply_move(g, &state, &mv).expect("memoized move is legal");
                        certificate.push(mv);
                    }
                    Some(MemoEntry::Greedy) => {
                        let tail = greedy_solve(g, &state, v)?;
                        debug_assert_eq!(tail.verdict, Verdict::Solvable);
                        certificate.extend(tail.certificate.unwrap_or_default());
                        break;
                    }
                    _ => unreachable!("solvable state must be memoized"),
                }
            }
            Ok(SolveResult {
                verdict: Verdict::Solvable,
                certificate: Some(certificate),
                states_explored,
            })
        }
    }
}

/// Whole-grid solvability: the conjunction of [`is_v_solvable_exact`] over
/// every vertex, stopping at the first failure.
pub fn is_solvable_exact(g: &GridSpec, c: &Configuration, budget: u64) -> Result<GridSolveReport> {
    let mut per_vertex = Vec::new();
    let mut states = 0u64;
    for v in g.vertices() {
        let r = is_v_solvable_exact(g, c, &v, budget)?;
        states += r.states_explored;
        per_vertex.push((v.clone(), r.verdict));
        match r.verdict {
            Verdict::Solvable => {}
            verdict => {
                return Ok(GridSolveReport {
                    verdict,
                    failing_vertex: Some(v),
                    per_vertex,
                    states_explored: states,
                });
            }
        }
    }
    Ok(GridSolveReport {
        verdict: Verdict::Solvable,
        failing_vertex: None,
        per_vertex,
        states_explored: states,
    })
}

/// One-dimensional solvability criterion: target `i` (1-based) is solvable
/// exactly when it holds a pebble or the pebbles on one side weigh at least
/// 1, i.e. `sum_{j>i} D(j)/q^{j-i} >= 1` or `sum_{j<i} D(j)/q^{i-j} >= 1`.
pub fn path_solvable(g: &GridSpec, c: &Configuration, target: usize) -> Result<bool> {
    if g.dim() != 1 {
        return Err(Error::NotAPath);
    }
    let n = g.sides()[0];
    if target < 1 || target > n {
        return Err(Error::OutOfBounds {
            axis: 1,
            coord: target,
            side: n,
        });
    }
    if c.counts().len() != n {
        return Err(Error::CountsLength {
            expected: n,
            got: c.counts().len(),
        });
    }
    if c.get(target - 1) >= 1 {
        return Ok(true);
    }
    let q = BigRational::from_integer(g.costs()[0].into());
    let one = BigRational::one();
    let mut right = BigRational::zero();
    for j in (target + 1..=n).rev() {
        right = (right + BigRational::from_integer(c.get(j - 1).into())) / &q;
    }
    if right >= one {
        return Ok(true);
    }
    let mut left = BigRational::zero();
    for j in 1..target {
        left = (left + BigRational::from_integer(c.get(j - 1).into())) / &q;
    }
    Ok(left >= one)
}

/// Per-vertex solvability of a path configuration in O(n), via carry sweeps:
/// the pebbles deliverable to `i` from the right equal
/// `floor(f(i+1) / q)` where `f(j) = D(j) + floor(f(j+1) / q)`.
pub fn path_solvable_all(g: &GridSpec, c: &Configuration) -> Result<Vec<bool>> {
    if g.dim() != 1 {
        return Err(Error::NotAPath);
    }
    let n = g.sides()[0];
    if c.counts().len() != n {
        return Err(Error::CountsLength {
            expected: n,
            got: c.counts().len(),
        });
    }
    let q = g.costs()[0];
    let mut from_right = vec![0u64; n + 1];
    for j in (0..n).rev() {
        from_right[j] = c.get(j) + from_right[j + 1] / q;
    }
    let mut from_left = vec![0u64; n + 1];
    for j in 0..n {
        from_left[j + 1] = c.get(j) + from_left[j] / q;
    }
    Ok((0..n)
        .map(|i| c.get(i) >= 1 || from_right[i + 1] >= q || from_left[i] >= q)
        .collect())
}

/// Smallest k such that every configuration of k pebbles is solvable,
/// found by doubling then binary search (solvability is monotone in k),
/// checking each k by exhaustive enumeration with an early unsolvable exit.
/// The returned witness is an unsolvable configuration of k-1 pebbles.
pub fn pebbling_number(g: &GridSpec, budget: u64) -> Result<PebblingNumber> {
    if budget == 0 {
        return Err(Error::domain("state budget must be positive"));
    }
    let mut checked = 0u64;
    // k = 0 is unsolvable on any grid: no pebble can reach a target
    let mut lo = 0u64;
    let mut lo_witness = Configuration::empty(g);
    let mut hi = 1u64;
    while let Some(w) = find_unsolvable(g, hi, budget, &mut checked)? {
        lo = hi;
        lo_witness = w;
        hi = hi.checked_mul(2).ok_or(Error::TotalOverflow)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match find_unsolvable(g, mid, budget, &mut checked)? {
            Some(w) => {
                lo = mid;
                lo_witness = w;
            }
            None => hi = mid,
        }
    }
    Ok(PebblingNumber {
        value: hi,
        witness: lo_witness,
        configs_checked: checked,
    })
}

fn find_unsolvable(
    g: &GridSpec,
    k: u64,
    budget: u64,
    checked: &mut u64,
) -> Result<Option<Configuration>> {
    let mut witness = None;
    let mut failure = None;
    for_each_configuration(g, k, |counts| {
        *checked += 1;
        let c = Configuration::new(g, counts.to_vec()).expect("enumerated counts fit the grid");
        match is_solvable_exact(g, &c, budget) {
            Ok(report) => match report.verdict {
                Verdict::Solvable => ControlFlow::Continue(()),
                Verdict::Unsolvable => {
                    witness = Some(c);
                    ControlFlow::Break(())
                }
                Verdict::BudgetExceeded => {
                    failure = Some(Error::BudgetExceeded { limit: budget });
                    ControlFlow::Break(())
                }
            },
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(witness),
    }
}
