//! Rectangular standard Young tableaux with entries from `{1..g}`, their
//! slope tables, and the vertex-avoiding divisors they index.
//!
//! A tableau for `(g, r, d)` has `g − d + r` rows and `r + 1` columns. The
//! distinguished function `φ_i` reads column `r + 1 − i` (1-based): its slope
//! on bridge `β_k` is `i − (g−d+r) + #{entries < k in that column}`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ChainOfLoops;
use crate::plfunc::{Divisor, EdgeFn, PLFunction};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct Tableau {
    g: u32,
    r: u32,
    d: u32,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    g: u32,
    r: u32,
    d: u32,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<TableauJson> for Tableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        Tableau::new(j.g, j.r, j.d, j.rows)
    }
}

impl From<Tableau> for TableauJson {
    fn from(t: Tableau) -> Self {
        TableauJson { g: t.g, r: t.r, d: t.d, rows: t.rows }
    }
}

impl Tableau {
    pub fn new(g: u32, r: u32, d: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let height = g as i64 - d as i64 + r as i64;
        if height <= 0 {
            return Err(Error::Parameter(format!("g − d + r = {height} must be positive")));
        }
        if rows.len() as i64 != height || rows.iter().any(|row| row.len() != r as usize + 1) {
            return Err(Error::Structural(format!("expected a {height} × {} rectangle", r + 1)));
        }
        let mut seen = BTreeSet::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x > g {
                    return Err(Error::Structural(format!("entry {x} outside 1..={g}")));
                }
                if !seen.insert(x) {
                    return Err(Error::Structural(format!("entry {x} repeated")));
                }
                if j > 0 && row[j - 1] >= x {
                    return Err(Error::Structural(format!("row {} not increasing", i + 1)));
                }
                if i > 0 && rows[i - 1][j] >= x {
                    return Err(Error::Structural(format!("column {} not increasing", j + 1)));
                }
            }
        }
        Ok(Tableau { g, r, d, rows })
    }

    /// The paper-shaped tableau (3 rows, 7 columns, `d = g + 3`).
    pub fn rank_six(g: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        Tableau::new(g, 6, g + 3, rows)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `g − d + r`, the number of rows.
    pub fn height(&self) -> u32 {
        self.rows.len() as u32
    }

    /// Brill–Noether number `g − (r+1)(g−d+r)`.
    pub fn rho(&self) -> i64 {
        brill_noether_number(self.g, self.r, self.d)
    }

    /// 1-based column of each entry, indexed by value (`0` if absent).
    pub fn column_of(&self) -> Vec<u32> {
        let mut col = vec![0; self.g as usize + 2];
        for row in &self.rows {
            for (j, &x) in row.iter().enumerate() {
                col[x as usize] = j as u32 + 1;
            }
        }
        col
    }

    pub fn entries(&self) -> BTreeSet<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Stable 64-bit digest of the entries, used to derive per-tableau seeds.
    pub fn digest(&self) -> u64 {
        // FNV-1a over (g, r, d, entries).
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u32| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        eat(self.g);
        eat(self.r);
        eat(self.d);
        for &x in self.rows.iter().flatten() {
            eat(x);
        }
        h
    }
}

pub fn brill_noether_number(g: u32, r: u32, d: u32) -> i64 {
    g as i64 - (r as i64 + 1) * (g as i64 - d as i64 + r as i64)
}

/// Seed for one tableau within a seeded run; independent of how the run is
/// partitioned.
pub fn tableau_seed(run_seed: u64, t: &Tableau) -> u64 {
    run_seed ^ t.digest().rotate_left(17)
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Standard fillings of a `rows × cols` rectangle by distinct entries from
/// `{1..n}`: `C(n, rows·cols)` times the hook-length count.
pub fn count_tableaux(rows: u64, cols: u64, n: u64) -> Result<BigUint> {
    let cells = rows * cols;
    if cells > n {
        return Err(Error::Parameter(format!("{rows}×{cols} rectangle does not fit {n} entries")));
    }
    let shape = vec![cols as usize; rows as usize];
    Ok(binomial_big(n, cells) * hook_length_count(&shape))
}

/// Standard Young tableaux of a shape (weakly decreasing row lengths) by the
/// hook-length formula.
pub fn hook_length_count(shape: &[usize]) -> BigUint {
    let cells: usize = shape.iter().sum();
    let mut num = BigUint::one();
    for x in 2..=cells {
        num *= x;
    }
    let mut hooks = BigUint::one();
    for (i, &len) in shape.iter().enumerate() {
        for j in 0..len {
            let below = shape[i + 1..].iter().filter(|&&l| l > j).count();
            hooks *= len - j + below;
        }
    }
    num / hooks
}

/// Standard fillings of a Young diagram (given by row lengths) counted by
/// dynamic programming over sub-shapes, with no closed formula involved.
pub fn count_standard_fillings_dp(shape: &[u8]) -> u128 {
    let mut memo = HashMap::new();
    let start = vec![0u8; shape.len()];
    skew_count(shape, &start, &mut memo)
}

fn skew_count(target: &[u8], lambda: &[u8], memo: &mut HashMap<Vec<u8>, u128>) -> u128 {
    if lambda == target {
        return 1;
    }
    if let Some(&c) = memo.get(lambda) {
        return c;
    }
    let mut total = 0;
    let mut next = lambda.to_vec();
    for i in 0..lambda.len() {
        if lambda[i] < target[i] && (i == 0 || lambda[i - 1] > lambda[i]) {
            next[i] += 1;
            total += skew_count(target, &next, memo);
            next[i] -= 1;
        }
    }
    memo.insert(lambda.to_vec(), total);
    total
}

/// Deterministic traversal of all rectangular tableaux with entries from
/// `{1..n}`.
///
/// Order: values are placed in increasing order, and at each value the
/// choices are tried as "append to row 1, row 2, …, skip the value". Ranks
/// are positions in this order, so any rank range can be walked (or a single
/// rank unranked) without touching the rest.
pub struct Enumerator {
    rows: usize,
    cols: u8,
    n: u32,
    g: u32,
    r: u32,
    d: u32,
    skew: HashMap<Vec<u8>, u128>,
    total: u128,
}

impl Enumerator {
    pub fn new(rows: usize, cols: usize, n: u32) -> Result<Self> {
        if rows == 0 || cols == 0 || (rows * cols) as u32 > n || cols > u8::MAX as usize {
            return Err(Error::Parameter(format!("{rows}×{cols} rectangle does not fit {n} entries")));
        }
        let target = vec![cols as u8; rows];
        let mut skew = HashMap::new();
        skew_count(&target, &vec![0; rows], &mut skew);
        skew.insert(target, 1);
        let r = cols as u32 - 1;
        let d = n + r - rows as u32;
        let mut e = Enumerator { rows, cols: cols as u8, n, g: n, r, d, skew, total: 0 };
        e.total = e.completions(1, &vec![0; rows]);
        Ok(e)
    }

    /// All tableaux for `(g, 6, g + 3)`.
    pub fn rank_six(g: u32) -> Result<Self> {
        Enumerator::new(3, 7, g)
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    fn remaining_cells(&self, shape: &[u8]) -> u32 {
        (self.rows as u32) * self.cols as u32 - shape.iter().map(|&x| x as u32).sum::<u32>()
    }

    /// Completions once values `< v` have been decided and `shape` is filled.
    fn completions(&self, v: u32, shape: &[u8]) -> u128 {
        let left = self.n + 1 - v;
        let need = self.remaining_cells(shape);
        binomial(left as u64, need as u64) * self.skew.get(shape).copied().unwrap_or(0)
    }

    fn can_add(&self, shape: &[u8], i: usize) -> bool {
        shape[i] < self.cols && (i == 0 || shape[i - 1] > shape[i])
    }

    fn build(&self, rows: &[Vec<u32>]) -> Tableau {
        Tableau { g: self.g, r: self.r, d: self.d, rows: rows.to_vec() }
    }

    /// Visits ranks `lo..hi` in order.
    pub fn for_each_in_range(&self, lo: u128, hi: u128, mut visit: impl FnMut(u128, &Tableau)) {
        let hi = hi.min(self.total);
        if lo >= hi {
            return;
        }
        let mut rows = vec![Vec::with_capacity(self.cols as usize); self.rows];
        let mut shape = vec![0u8; self.rows];
        self.walk(1, &mut shape, &mut rows, 0, lo, hi, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        v: u32,
        shape: &mut Vec<u8>,
        rows: &mut Vec<Vec<u32>>,
        base: u128,
        lo: u128,
        hi: u128,
        visit: &mut impl FnMut(u128, &Tableau),
    ) -> u128 {
        if self.remaining_cells(shape) == 0 {
            if base >= lo && base < hi {
                visit(base, &self.build(rows));
            }
            return 1;
        }
        let mut offset = base;
        for i in 0..=self.rows {
            if offset >= hi {
                break;
            }
            let skip = i == self.rows;
            if skip {
                if self.n + 1 - v <= self.remaining_cells(shape) {
                    continue;
                }
            } else if !self.can_add(shape, i) {
                continue;
            }
            if !skip {
                shape[i] += 1;
                rows[i].push(v);
            }
            let size = self.completions(v + 1, shape);
            if offset + size > lo {
                self.walk(v + 1, shape, rows, offset, lo, hi, visit);
            }
            offset += size;
            if !skip {
                shape[i] -= 1;
                rows[i].pop();
            }
        }
        offset - base
    }

    pub fn unrank(&self, rank: u128) -> Option<Tableau> {
        let mut out = None;
        self.for_each_in_range(rank, rank + 1, |_, t| out = Some(t.clone()));
        out
    }

    /// Seeded uniform sample (with replacement) of `count` ranks.
    pub fn sample_ranks(&self, count: usize, seed: u64) -> Vec<u128> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| rng.gen_range(0..self.total)).collect()
    }
}

/// Bridge slopes `s_k[i]` (incoming at `v_k`, `k = 1..g+1`) and `s′_k[i]`
/// (outgoing at `w_k`, `k = 0..g`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeVectorPair {
    /// `s[k-1][i] = s_k[i]`.
    pub s: Vec<Vec<i64>>,
    /// `s_prime[k][i] = s′_k[i]`.
    pub s_prime: Vec<Vec<i64>>,
}

impl SlopeVectorPair {
    pub fn incoming(&self, k: usize) -> &[i64] {
        &self.s[k - 1]
    }

    pub fn outgoing(&self, k: usize) -> &[i64] {
        &self.s_prime[k]
    }

    pub fn rows_increasing(&self) -> bool {
        self.s.iter().chain(&self.s_prime).all(|row| row.windows(2).all(|w| w[0] < w[1]))
    }

    /// Across each loop k, s_{k+1} − s_k is 0 or a single unit vector, and
    /// exactly 0 when k is lingering.
    pub fn lattice_steps_hold(&self, lingering: &BTreeSet<usize>) -> bool {
        (1..self.s.len()).all(|k| {
            let diff: Vec<i64> = self.incoming(k + 1).iter().zip(self.incoming(k)).map(|(a, b)| a - b).collect();
            let ones = diff.iter().filter(|&&x| x == 1).count();
            diff.iter().all(|&x| x == 0 || x == 1) && ones <= 1 && (ones == 0 || !lingering.contains(&k))
        })
    }
}

pub fn slope_table(t: &Tableau) -> SlopeVectorPair {
    let g = t.g as usize;
    let r = t.r as usize;
    let h = t.height() as i64;
    let mut below = vec![0i64; r + 2];
    let col = t.column_of();
    let mut s = Vec::with_capacity(g + 1);
    for k in 1..=g + 1 {
        if k >= 2 && col[k - 1] != 0 {
            below[col[k - 1] as usize] += 1;
        }
        s.push((0..=r).map(|i| i as i64 - h + below[r + 1 - i]).collect::<Vec<_>>());
    }
    let mut s_prime = Vec::with_capacity(g + 1);
    s_prime.push(s[0].clone());
    s_prime.extend(s[1..].iter().cloned());
    SlopeVectorPair { s, s_prime }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockBoundaries {
    pub z: usize,
    pub zp: usize,
    pub b: usize,
    pub bp: usize,
}

fn nth_smallest(rows: &[&Vec<u32>], n: usize) -> u32 {
    let mut all: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    all.sort_unstable();
    all[n - 1]
}

/// Last loops of the first two blocks (`z`, `z′`) and the loops `b`, `b′`
/// of the middle block without new permissible functions.
pub fn block_boundaries(t: &Tableau) -> Result<BlockBoundaries> {
    if t.r != 6 || t.height() != 3 {
        return Err(Error::Shape(format!("need 3 rows and 7 columns, got {} × {}", t.height(), t.r + 1)));
    }
    let [r1, r2, r3] = [&t.rows[0], &t.rows[1], &t.rows[2]];
    // The second block ends just before the 9th smallest entry of rows 2–3.
    // Reading it as two before the 10th agrees whenever those two entries
    // are adjacent, but otherwise leaves the block one function short.
    Ok(BlockBoundaries {
        z: nth_smallest(&[r1, r2], 6) as usize,
        zp: nth_smallest(&[r2, r3], 9) as usize - 1,
        b: nth_smallest(&[r1, r2], 7) as usize,
        bp: nth_smallest(&[r1, r3], 8) as usize,
    })
}

pub fn lingering_loops(t: &Tableau) -> BTreeSet<usize> {
    let used = t.entries();
    (1..=t.g).filter(|k| !used.contains(k)).map(|k| k as usize).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities {
    /// `μ(γ_k)` for `k = 1..g`.
    pub loops: Vec<i64>,
    /// `μ(β_k)` for `k = 1..g+1`.
    pub bridges: Vec<i64>,
    pub weight_w0: i64,
    pub weight_v_last: i64,
}

impl Multiplicities {
    pub fn total(&self) -> i64 {
        self.loops.iter().sum::<i64>() + self.bridges.iter().sum::<i64>() + self.weight_w0 + self.weight_v_last
    }
}

pub fn multiplicities_and_weights(sv: &SlopeVectorPair, g: u32, r: u32, d: u32) -> Multiplicities {
    let g = g as usize;
    let ri = r as i64;
    let loops = (1..=g)
        .map(|k| 1 - sv.outgoing(k).iter().zip(sv.incoming(k)).map(|(a, b)| a - b).sum::<i64>())
        .collect();
    let bridges = (1..=g + 1)
        .map(|k| -sv.incoming(k).iter().zip(sv.outgoing(k - 1)).map(|(a, b)| a - b).sum::<i64>())
        .collect();
    let base = d as i64 - g as i64 - ri;
    let weight_w0 = sv.outgoing(0).iter().enumerate().map(|(i, s)| base + i as i64 - s).sum();
    let weight_v_last = sv.incoming(g + 1).iter().enumerate().map(|(i, s)| s - i as i64).sum();
    Multiplicities { loops, bridges, weight_w0, weight_v_last }
}

/// A vertex-avoiding divisor with its distinguished functions.
#[derive(Debug, Clone)]
pub struct VertexAvoidingData {
    pub tableau: Tableau,
    pub chain: Arc<ChainOfLoops>,
    pub divisor: Divisor,
    /// `φ_0..φ_r`, each zero at `w_0`.
    pub distinguished: Vec<PLFunction>,
    pub slope_table: SlopeVectorPair,
    pub seed: u64,
}

impl VertexAvoidingData {
    /// Checks effectivity of every `D + div φ_i`, the multiplicities at the
    /// two ends (`r − i` at `w_0`, `i` at `v_{g+1}`), and bridge slopes.
    pub fn check(&self) -> Result<()> {
        let c = &self.chain;
        let g = c.genus();
        let r = self.tableau.r as i64;
        for (i, phi) in self.distinguished.iter().enumerate() {
            let di = phi.principal_divisor().plus(&self.divisor)?;
            if !di.is_effective() {
                return Err(Error::Structural(format!("D + div φ_{i} is not effective")));
            }
            if di.degree() != self.tableau.d as i64 {
                return Err(Error::Structural(format!("D + div φ_{i} has the wrong degree")));
            }
            if di.mult_at(&c.w(0)) < r - i as i64 || di.mult_at(&c.v(g + 1)) < i as i64 {
                return Err(Error::Structural(format!("φ_{i} misses its end multiplicities")));
            }
            for k in 1..=g + 1 {
                if phi.bridge_slope(k) != Some(self.slope_table.incoming(k)[i]) {
                    return Err(Error::Structural(format!("φ_{i} has the wrong slope on bridge {k}")));
                }
            }
        }
        Ok(())
    }
}

/// Derivative jumps of `φ` along the counterclockwise coordinate of a loop.
struct LoopJumps {
    /// `(x, jump)` with `0 < x < L`, sorted, merged, nonzero.
    jumps: Vec<(Rational, i64)>,
}

impl LoopJumps {
    fn new(big_l: &Rational, raw: Vec<(Rational, i64)>) -> Self {
        let mut jumps: Vec<(Rational, i64)> = Vec::new();
        let mut raw: Vec<(Rational, i64)> =
            raw.into_iter().map(|(x, j)| (x.rem_euclid(big_l), j)).filter(|(x, _)| !x.is_zero()).collect();
        raw.sort();
        for (x, j) in raw {
            match jumps.last_mut() {
                Some((y, k)) if *y == x => *k += j,
                _ => jumps.push((x, j)),
            }
        }
        jumps.retain(|(_, j)| *j != 0);
        LoopJumps { jumps }
    }

    /// `φ′(0+)`, forced by `∮ φ′ = 0`.
    fn initial_slope(&self, big_l: &Rational) -> Option<i64> {
        let total: Rational = self.jumps.iter().map(|(x, j)| (big_l - x).mul_int(*j)).sum();
        (-(total / big_l.clone())).to_i64()
    }
}

/// Extends `φ` across loop `k`: bottom and top edge functions given the
/// value at `v_k`, slopes `s` in and `s′` out, and the loop's chip at `p`.
fn loop_extension(
    c: &ChainOfLoops,
    k: usize,
    start: &Rational,
    s: i64,
    s_out: i64,
    p: &Rational,
) -> Result<(EdgeFn, EdgeFn)> {
    let big_l = c.circumference(k);
    let m = c.bottom(k);
    let infeasible = |reason: String| Error::Infeasible { loop_index: k, reason };
    let mut raw = vec![(m.clone(), -s_out), (p.clone(), 1)];
    match s_out - s {
        0 => raw.push((p - &m.mul_int(s), -1)),
        1 => {
            let expected = m.mul_int(s + 1).rem_euclid(&big_l);
            if p.rem_euclid(&big_l) != expected {
                return Err(infeasible(format!("chip at {p}, slope increase needs {expected}")));
            }
        }
        other => return Err(infeasible(format!("slope jumps by {other} across the loop"))),
    }
    let lj = LoopJumps::new(&big_l, raw);
    let c0 = lj.initial_slope(&big_l).ok_or_else(|| infeasible("non-integral slope".into()))?;

    // Breakpoints in the ccw coordinate, with φ′ on each piece.
    let mut xs = vec![Rational::zero()];
    let mut slopes = vec![c0];
    let mut cur = c0;
    for (x, j) in &lj.jumps {
        xs.push(x.clone());
        cur += j;
        slopes.push(cur);
    }
    xs.push(big_l.clone());
    let mut vals = vec![start.clone()];
    for i in 0..slopes.len() {
        let dx = &xs[i + 1] - &xs[i];
        let next = vals.last().unwrap() + &dx.mul_int(slopes[i]);
        vals.push(next);
    }
    if vals.last().unwrap() != start {
        return Err(infeasible("loop does not close".into()));
    }
    let split = xs.partition_point(|x| x < m);
    // Bottom edge: x ∈ [0, m].
    let mut bo = xs[..split].to_vec();
    let mut bv = vals[..split].to_vec();
    let mut bs = slopes[..split].to_vec();
    let at_m_val = if split < xs.len() && &xs[split] == m {
        vals[split].clone()
    } else {
        &vals[split - 1] + &(m - &xs[split - 1]).mul_int(slopes[split - 1])
    };
    bo.push(m.clone());
    bv.push(at_m_val.clone());
    bs.truncate(bo.len() - 1);
    let bottom = EdgeFn::from_parts(bo, bv, bs);

    // Top edge, offset o = L − x running from v (x = L) down to w (x = m).
    let mut to = vec![Rational::zero()];
    let mut tv = vec![start.clone()];
    let mut ts = Vec::new();
    let mut i = slopes.len();
    while i > 0 {
        i -= 1;
        let lo = if xs[i] < *m { m.clone() } else { xs[i].clone() };
        ts.push(-slopes[i]);
        let o = &big_l - &lo;
        let v = if lo == *m { at_m_val.clone() } else { vals[i].clone() };
        to.push(o);
        tv.push(v);
        if lo == *m {
            break;
        }
    }
    let top = EdgeFn::from_parts(to, tv, ts);
    Ok((top, bottom))
}

/// Grid point for a lingering loop, avoiding positions that would make the
/// construction degenerate (`j·m_k` for `|j| ≤ d`).
fn lingering_coordinate(c: &ChainOfLoops, k: usize, d: i64, rng: &mut ChaCha8Rng) -> Rational {
    let big_l = c.circumference(k);
    let m = c.bottom(k);
    let steps = 2 * d + 3;
    let forbidden: BTreeSet<Rational> = (-d..=d).map(|j| m.mul_int(j).rem_euclid(&big_l)).collect();
    loop {
        let t = rng.gen_range(1..steps);
        let x = big_l.mul_int(t).div_int(steps);
        if !forbidden.contains(&x) {
            return x;
        }
    }
}

pub fn vertex_avoiding_divisor(t: &Tableau, chain: Arc<ChainOfLoops>, seed: u64) -> Result<VertexAvoidingData> {
    let g = t.g as usize;
    if chain.genus() != g {
        return Err(Error::Parameter(format!("tableau has g = {g}, chain has genus {}", chain.genus())));
    }
    if !chain.is_admissible() {
        return Err(Error::Parameter("chain is not admissible".into()));
    }
    let sv = slope_table(t);
    let r = t.r as usize;
    let col = t.column_of();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut divisor = Divisor::zero(chain.clone());
    divisor.add_point(chain.w(0), t.d as i64 - g as i64);
    let mut coords = Vec::with_capacity(g);
    for (k, &c) in col.iter().enumerate().take(g + 1).skip(1) {
        let x = if c != 0 {
            let i = r + 1 - c as usize;
            chain.bottom(k).mul_int(sv.incoming(k)[i] + 1).rem_euclid(&chain.circumference(k))
        } else {
            lingering_coordinate(&chain, k, t.d as i64, &mut rng)
        };
        divisor.add_point(chain.point_at_coordinate(k, &x), 1);
        coords.push(x);
    }

    let mut distinguished = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let mut edges = Vec::with_capacity(chain.edge_count());
        let mut value = Rational::zero();
        for k in 1..=g + 1 {
            let s = sv.incoming(k)[i];
            let bridge = EdgeFn::linear(chain.bridge(k), value.clone(), s);
            value = bridge.end().clone();
            edges.push(bridge);
            if k <= g {
                let s_out = sv.incoming(k + 1)[i];
                let (top, bottom) = loop_extension(&chain, k, &value, s, s_out, &coords[k - 1])?;
                value = top.end().clone();
                edges.push(top);
                edges.push(bottom);
            }
        }
        distinguished.push(PLFunction::from_edges(chain.clone(), edges)?);
    }
    Ok(VertexAvoidingData { tableau: t.clone(), chain, divisor, distinguished, slope_table: sv, seed })
}
