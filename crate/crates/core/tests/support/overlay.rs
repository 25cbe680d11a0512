//! Random small tropical combinations and a brute-force overlay oracle.
//!
//! The oracle cuts every edge at all breakpoints of all functions and at
//! every pairwise crossing, so each function is affine on each cell, and
//! then reads off the minimizers at cell midpoints. It shares nothing with
//! the envelope sweep used by the library verifier.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropbn::graph::{ChainOfLoops, EdgeId};
use tropbn::independence::TropicalCombination;
use tropbn::plfunc::{EdgeFn, PLFunction};
use tropbn::Rational;

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi), rng.gen_range(1..=3))
}

pub fn random_chain(rng: &mut ChaCha8Rng, max_genus: usize) -> Arc<ChainOfLoops> {
    let g = rng.gen_range(1..=max_genus);
    let len = |rng: &mut ChaCha8Rng| small_rational(rng, 1, 6);
    let l = (0..g).map(|_| len(rng)).collect();
    let m = (0..g).map(|_| len(rng)).collect();
    let n = (0..=g).map(|_| len(rng)).collect();
    Arc::new(ChainOfLoops::new(l, m, n, Rational::from_integer(2)).unwrap())
}

/// One or two affine pieces from `start`, ending wherever they end.
fn free_edge(rng: &mut ChaCha8Rng, len: &Rational, start: Rational) -> EdgeFn {
    let s1 = rng.gen_range(-3..=3);
    if rng.gen_bool(0.3) {
        return EdgeFn::linear(len, start, s1);
    }
    let x = len * &Rational::new(rng.gen_range(1..=5), 6);
    let s2 = rng.gen_range(-3..=3);
    let mid = &start + &x.mul_int(s1);
    let end = &mid + &(len - &x).mul_int(s2);
    EdgeFn::from_points(vec![(Rational::zero(), start), (x, mid), (len.clone(), end)]).unwrap()
}

/// Two affine pieces from `start` to `end`, or None if the random slopes
/// cannot bend inside the edge.
fn pinned_edge(rng: &mut ChaCha8Rng, len: &Rational, start: &Rational, end: &Rational) -> Option<EdgeFn> {
    for _ in 0..40 {
        let (s1, s2) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if s1 == s2 {
            continue;
        }
        // start + s1·x + s2·(len − x) = end
        let x = (&(end - start) - &len.mul_int(s2)) / Rational::from_integer(s1 - s2);
        if x.is_positive() && &x < len {
            let mid = start + &x.mul_int(s1);
            return Some(EdgeFn::from_points(vec![(Rational::zero(), start.clone()), (x, mid), (len.clone(), end.clone())]).unwrap());
        }
    }
    None
}

/// None when a loop's two sides cannot be matched with integer slopes.
pub fn random_function(rng: &mut ChaCha8Rng, chain: &Arc<ChainOfLoops>) -> Option<PLFunction> {
    let g = chain.genus();
    let mut edges: Vec<Option<EdgeFn>> = vec![None; chain.edge_count()];
    let mut value = small_rational(rng, -4, 4);
    for k in 1..=g + 1 {
        let bridge = free_edge(rng, chain.edge_length(EdgeId::Bridge(k)), value);
        value = bridge.end().clone();
        edges[EdgeId::Bridge(k).index()] = Some(bridge);
        if k > g {
            break;
        }
        let top = free_edge(rng, chain.edge_length(EdgeId::LoopTop(k)), value.clone());
        let bottom_len = chain.edge_length(EdgeId::LoopBottom(k));
        let bottom = match pinned_edge(rng, bottom_len, &value, top.end()) {
            Some(f) => f,
            None => EdgeFn::from_points(vec![(Rational::zero(), value.clone()), (bottom_len.clone(), top.end().clone())]).ok()?,
        };
        value = top.end().clone();
        edges[EdgeId::LoopTop(k).index()] = Some(top);
        edges[EdgeId::LoopBottom(k).index()] = Some(bottom);
    }
    PLFunction::from_edges(chain.clone(), edges.into_iter().map(Option::unwrap).collect()).ok()
}

/// Up to `max_functions` functions, with occasional exact duplicates so that
/// ties and dependent combinations show up. None for an unusable draw.
pub fn random_combination(rng: &mut ChaCha8Rng, max_genus: usize, max_functions: usize) -> Option<TropicalCombination> {
    let chain = random_chain(rng, max_genus);
    let n = rng.gen_range(1..=max_functions);
    let mut fs: Vec<PLFunction> = Vec::with_capacity(n);
    let mut cs: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.gen_bool(0.25) {
            let j = rng.gen_range(0..i);
            fs.push(fs[j].clone());
            cs.push(cs[j].clone());
        } else {
            fs.push(random_function(rng, &chain)?);
            cs.push(small_rational(rng, -3, 3));
        }
    }
    TropicalCombination::new(fs, cs).ok()
}

/// Cells of one edge on which every function is affine.
fn cells(tc: &TropicalCombination, e: EdgeId) -> Vec<(Rational, Rational)> {
    let len = tc.chain().edge_length(e).clone();
    let mut cuts: Vec<Rational> = tc.functions().iter().flat_map(|f| f.edge(e).offsets().to_vec()).collect();
    cuts.sort();
    cuts.dedup();
    let mut refined = cuts.clone();
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let lines: Vec<(Rational, i64)> = tc
            .functions()
            .iter()
            .zip(tc.coefficients())
            .map(|(f, c)| (&f.edge(e).eval(a) + c, f.edge(e).slope_right(a)))
            .collect();
        for (i, p) in lines.iter().enumerate() {
            for q in &lines[i + 1..] {
                if p.1 != q.1 {
                    let x = a + &((&q.0 - &p.0) / Rational::from_integer(p.1 - q.1));
                    if &x > a && &x < b {
                        refined.push(x);
                    }
                }
            }
        }
    }
    refined.push(Rational::zero());
    refined.push(len);
    refined.sort();
    refined.dedup();
    refined.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

/// For every cell midpoint, the set of indices attaining the minimum.
fn minimizers(tc: &TropicalCombination) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for e in tc.chain().edges() {
        for (a, b) in cells(tc, e) {
            let mid = (&a + &b).div_int(2);
            let values: Vec<Rational> =
                tc.functions().iter().zip(tc.coefficients()).map(|(f, c)| &f.edge(e).eval(&mid) + c).collect();
            let min = values.iter().min().unwrap().clone();
            out.push((0..values.len()).filter(|&i| values[i] == min).collect());
        }
    }
    out
}

/// Indices that are the strict unique minimizer somewhere.
pub fn oracle_witnessed(tc: &TropicalCombination) -> Vec<bool> {
    let mut seen = vec![false; tc.len()];
    for m in minimizers(tc) {
        if m.len() == 1 {
            seen[m[0]] = true;
        }
    }
    seen
}

/// The minimum is attained at least twice everywhere.
pub fn oracle_dependent(tc: &TropicalCombination) -> bool {
    minimizers(tc).iter().all(|m| m.len() >= 2)
}
