//! Divisors and piecewise-linear functions with integer slopes.
//!
//! A [`PLFunction`] stores, for every edge, its breakpoints as
//! `(offset, value)` pairs including both endpoints plus the integer slope
//! of each segment. Orders follow the incoming-slope convention: a tent peak
//! has positive order.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ChainOfLoops, EdgeId, GraphPoint, TangentVector};
use crate::rational::Rational;

pub(crate) fn same_chain(a: &Arc<ChainOfLoops>, b: &Arc<ChainOfLoops>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Restriction of a PL function to one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFn {
    offsets: Vec<Rational>,
    values: Vec<Rational>,
    slopes: Vec<i64>,
}

impl EdgeFn {
    pub fn linear(len: &Rational, start: Rational, slope: i64) -> Self {
        let end = &start + &len.mul_int(slope);
        EdgeFn { offsets: vec![Rational::zero(), len.clone()], values: vec![start, end], slopes: vec![slope] }
    }

    /// Validates integer slopes and strictly increasing offsets, then drops
    /// breakpoints where nothing bends.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Structural("an edge needs at least its two endpoints".into()));
        }
        let mut slopes = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let dx = &w[1].0 - &w[0].0;
            if !dx.is_positive() {
                return Err(Error::Structural("breakpoint offsets must increase".into()));
            }
            let s = (&w[1].1 - &w[0].1) / dx;
            let s = s.to_i64().ok_or_else(|| Error::Structural(format!("non-integer slope {s}")))?;
            slopes.push(s);
        }
        let (offsets, values) = points.into_iter().unzip();
        let mut f = EdgeFn { offsets, values, slopes };
        f.canonicalize();
        Ok(f)
    }

    /// Trusted constructor; `slopes[i]` is the slope on `[offsets[i], offsets[i+1]]`.
    pub(crate) fn from_parts(offsets: Vec<Rational>, values: Vec<Rational>, slopes: Vec<i64>) -> Self {
        debug_assert_eq!(offsets.len(), values.len());
        debug_assert_eq!(offsets.len(), slopes.len() + 1);
        let mut f = EdgeFn { offsets, values, slopes };
        f.canonicalize();
        f
    }

    fn canonicalize(&mut self) {
        if self.slopes.windows(2).all(|w| w[0] != w[1]) {
            return;
        }
        let n = self.offsets.len();
        let mut keep = vec![true; n];
        for (i, k) in keep.iter_mut().enumerate().take(n - 1).skip(1) {
            *k = self.slopes[i - 1] != self.slopes[i];
        }
        let mut it = keep.iter();
        self.offsets.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        self.values.retain(|_| *it.next().unwrap());
        let mut slopes = Vec::with_capacity(self.offsets.len() - 1);
        for (i, s) in self.slopes.iter().enumerate() {
            if keep[i] {
                slopes.push(*s);
            }
        }
        self.slopes = slopes;
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn len(&self) -> &Rational {
        self.offsets.last().unwrap()
    }

    pub fn start(&self) -> &Rational {
        &self.values[0]
    }

    pub fn end(&self) -> &Rational {
        self.values.last().unwrap()
    }

    /// Index of the segment containing `o`, preferring the one starting at `o`.
    fn segment_at(&self, o: &Rational) -> usize {
        let i = self.offsets.partition_point(|x| x <= o);
        i.saturating_sub(1).min(self.slopes.len() - 1)
    }

    pub fn eval(&self, o: &Rational) -> Rational {
        let i = self.segment_at(o);
        if &self.offsets[i] == o {
            return self.values[i].clone();
        }
        &self.values[i] + &(o - &self.offsets[i]).mul_int(self.slopes[i])
    }

    /// Slope leaving `o` toward larger offsets.
    pub fn slope_right(&self, o: &Rational) -> i64 {
        self.slopes[self.segment_at(o)]
    }

    /// Slope of the function along the edge just left of `o` (in the
    /// direction of increasing offset).
    pub fn slope_left(&self, o: &Rational) -> i64 {
        let i = self.offsets.partition_point(|x| x < o);
        self.slopes[i.saturating_sub(1).min(self.slopes.len() - 1)]
    }

    pub fn add_const(&self, c: &Rational) -> Self {
        EdgeFn {
            offsets: self.offsets.clone(),
            values: self.values.iter().map(|v| v + c).collect(),
            slopes: self.slopes.clone(),
        }
    }

    pub fn add(&self, other: &EdgeFn) -> Self {
        let offsets = merge_offsets(&[self, other]);
        let values = offsets.iter().map(|o| &self.eval(o) + &other.eval(o)).collect();
        let slopes = offsets[..offsets.len() - 1]
            .iter()
            .map(|o| self.slope_right(o) + other.slope_right(o))
            .collect();
        EdgeFn::from_parts(offsets, values, slopes)
    }

    pub fn neg(&self) -> Self {
        EdgeFn {
            offsets: self.offsets.clone(),
            values: self.values.iter().map(|v| -v).collect(),
            slopes: self.slopes.iter().map(|s| -s).collect(),
        }
    }

    pub fn min_value(&self) -> Rational {
        self.values.iter().min().unwrap().clone()
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().max().unwrap().clone()
    }

    /// Pointwise minimum of shifted edge functions.
    pub fn lower_envelope(fs: &[(&EdgeFn, &Rational)]) -> EdgeFn {
        let keep = contenders(fs.iter().copied());
        let fs: Vec<(&EdgeFn, &Rational)> = keep.into_iter().map(|i| fs[i]).collect();
        let refs: Vec<&EdgeFn> = fs.iter().map(|(f, _)| *f).collect();
        let grid = merge_offsets(&refs);
        let mut offsets = Vec::new();
        let mut values = Vec::new();
        let mut slopes = Vec::new();
        let mut lines: Vec<(Rational, i64)> = Vec::with_capacity(fs.len());
        for w in grid.windows(2) {
            lines.clear();
            lines.extend(fs.iter().map(|(f, c)| (&f.eval(&w[0]) + *c, f.slope_right(&w[0]))));
            for (x, v, s, _) in envelope_of_lines(&lines, &w[0], &w[1]) {
                offsets.push(x);
                values.push(v);
                slopes.push(s);
            }
        }
        let end = grid.last().unwrap();
        values.push(fs.iter().map(|(f, c)| f.end() + *c).min().unwrap());
        offsets.push(end.clone());
        EdgeFn::from_parts(offsets, values, slopes)
    }
}

/// Pieces `(start, value at start, slope, line index)` of the lower envelope
/// of lines `v + s·(x − a)` over `[a, b]`. Among identical lines the first
/// index wins.
pub(crate) fn envelope_of_lines(
    lines: &[(Rational, i64)],
    a: &Rational,
    b: &Rational,
) -> Vec<(Rational, Rational, i64, usize)> {
    let mut out = Vec::new();
    // Minimal value at a, then minimal slope among those.
    let mut cur = 0;
    for (i, l) in lines.iter().enumerate() {
        let c = &lines[cur];
        if l.0 < c.0 || (l.0 == c.0 && l.1 < c.1) {
            cur = i;
        }
    }
    let mut x = a.clone();
    loop {
        let (cv, cs) = (&lines[cur].0, lines[cur].1);
        let cur_at_x = cv + &(&x - a).mul_int(cs);
        out.push((x.clone(), cur_at_x, cs, cur));
        // Next crossing by a line with smaller slope.
        let mut best: Option<(Rational, usize)> = None;
        for (j, (v, s)) in lines.iter().enumerate() {
            if *s >= cs {
                continue;
            }
            let t = &(v - cv) / &Rational::from_integer(cs - s) + a;
            if t <= x || &t >= b {
                continue;
            }
            best = match best {
                Some((bt, bj)) if bt < t || (bt == t && (lines[bj].1, bj) <= (*s, j)) => Some((bt, bj)),
                _ => Some((t, j)),
            };
        }
        match best {
            Some((t, j)) => {
                x = t;
                cur = j;
            }
            None => return out,
        }
    }
}

/// Indices of the shifted functions that can touch the lower envelope: a
/// function whose minimum exceeds some other function's maximum never does.
pub(crate) fn contenders<'a>(fs: impl Iterator<Item = (&'a EdgeFn, &'a Rational)> + Clone) -> Vec<usize> {
    let cap = fs.clone().map(|(f, c)| f.values.iter().max().unwrap() + c).min().expect("nonempty input");
    fs.enumerate()
        .filter(|(_, (f, c))| f.values.iter().min().unwrap() + *c <= cap)
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn merge_offsets(fs: &[&EdgeFn]) -> Vec<Rational> {
    let mut all: Vec<Rational> = fs.iter().flat_map(|f| f.offsets.iter().cloned()).collect();
    all.sort();
    all.dedup();
    all
}

/// A continuous PL function with integer slopes on a chain of loops.
#[derive(Debug, Clone)]
pub struct PLFunction {
    chain: Arc<ChainOfLoops>,
    edges: Vec<EdgeFn>,
}

impl PartialEq for PLFunction {
    fn eq(&self, other: &Self) -> bool {
        same_chain(&self.chain, &other.chain) && self.edges == other.edges
    }
}

impl PLFunction {
    pub fn constant(chain: Arc<ChainOfLoops>, c: Rational) -> Self {
        let edges = chain.edges().map(|e| EdgeFn::linear(chain.edge_length(e), c.clone(), 0)).collect();
        PLFunction { chain, edges }
    }

    /// Builds and validates a function from per-edge data indexed by [`EdgeId::index`].
    pub fn from_edges(chain: Arc<ChainOfLoops>, edges: Vec<EdgeFn>) -> Result<Self> {
        if edges.len() != chain.edge_count() {
            return Err(Error::Structural(format!(
                "expected {} edges, got {}",
                chain.edge_count(),
                edges.len()
            )));
        }
        for (i, f) in edges.iter().enumerate() {
            let e = EdgeId::from_index(i);
            if !f.offsets[0].is_zero() || f.len() != chain.edge_length(e) {
                return Err(Error::Structural(format!("breakpoints on {e} must span the edge")));
            }
        }
        let f = PLFunction { chain, edges };
        f.check_continuity()?;
        Ok(f)
    }

    pub(crate) fn from_edges_unchecked(chain: Arc<ChainOfLoops>, edges: Vec<EdgeFn>) -> Self {
        PLFunction { chain, edges }
    }

    fn check_continuity(&self) -> Result<()> {
        let c = &self.chain;
        for k in 1..=c.genus() {
            let at_v = self.edge(EdgeId::Bridge(k)).end();
            let at_w = self.edge(EdgeId::Bridge(k + 1)).start();
            for e in [EdgeId::LoopTop(k), EdgeId::LoopBottom(k)] {
                if self.edge(e).start() != at_v || self.edge(e).end() != at_w {
                    return Err(Error::Structural(format!("discontinuous at an endpoint of {e}")));
                }
            }
        }
        Ok(())
    }

    pub fn chain(&self) -> &Arc<ChainOfLoops> {
        &self.chain
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeFn {
        &self.edges[e.index()]
    }

    pub fn edge_fns(&self) -> &[EdgeFn] {
        &self.edges
    }

    pub fn value_at(&self, p: &GraphPoint) -> Rational {
        self.edge(p.edge).eval(&p.offset)
    }

    /// Outgoing slope along a germ.
    pub fn slope_along(&self, t: &TangentVector) -> i64 {
        let f = self.edge(t.edge);
        if t.forward {
            f.slope_right(&t.offset)
        } else {
            -f.slope_left(&t.offset)
        }
    }

    /// Sum of incoming slopes over all germs at `p`.
    pub fn ord_at(&self, p: &GraphPoint) -> i64 {
        self.chain.germs(p).iter().map(|t| -self.slope_along(t)).sum()
    }

    /// Constant slope on a bridge, if it has one.
    pub fn bridge_slope(&self, k: usize) -> Option<i64> {
        let f = self.edge(EdgeId::Bridge(k));
        (f.slopes.len() == 1).then(|| f.slopes[0])
    }

    pub fn add_const(&self, c: &Rational) -> Self {
        PLFunction { chain: self.chain.clone(), edges: self.edges.iter().map(|f| f.add_const(c)).collect() }
    }

    pub fn add(&self, other: &PLFunction) -> Result<Self> {
        if !same_chain(&self.chain, &other.chain) {
            return Err(Error::ChainMismatch);
        }
        let edges = self.edges.iter().zip(&other.edges).map(|(a, b)| a.add(b)).collect();
        Ok(PLFunction { chain: self.chain.clone(), edges })
    }

    pub fn sub(&self, other: &PLFunction) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PLFunction { chain: self.chain.clone(), edges: self.edges.iter().map(EdgeFn::neg).collect() }
    }

    /// Minimum over the whole graph (attained at a breakpoint).
    pub fn min_value(&self) -> Rational {
        self.edges.iter().map(EdgeFn::min_value).min().unwrap()
    }

    /// Points where the order may be nonzero: every vertex and every interior
    /// breakpoint.
    pub fn candidate_points(&self) -> Vec<GraphPoint> {
        let c = &self.chain;
        let mut pts = Vec::new();
        for k in 0..=c.genus() {
            pts.push(c.w(k));
        }
        for k in 1..=c.genus() + 1 {
            pts.push(c.v(k));
        }
        for (i, f) in self.edges.iter().enumerate() {
            let e = EdgeId::from_index(i);
            for o in &f.offsets[1..f.offsets.len() - 1] {
                pts.push(GraphPoint { edge: e, offset: o.clone() });
            }
        }
        pts
    }

    pub fn principal_divisor(&self) -> Divisor {
        let mut d = Divisor::zero(self.chain.clone());
        for p in self.candidate_points() {
            let ord = self.ord_at(&p);
            d.add_point(p, ord);
        }
        d
    }

    pub fn is_section(&self, d: &Divisor) -> Result<bool> {
        if !same_chain(&self.chain, &d.chain) {
            return Err(Error::ChainMismatch);
        }
        Ok(self.principal_divisor().plus(d)?.is_effective())
    }

    pub fn to_json(&self) -> PLFunctionJson {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let pts = f
                    .offsets
                    .iter()
                    .zip(&f.values)
                    .map(|(o, v)| BreakpointJson { o: o.clone(), v: v.clone() })
                    .collect();
                (EdgeId::from_index(i).to_string(), pts)
            })
            .collect();
        PLFunctionJson { edges }
    }

    pub fn from_json(chain: Arc<ChainOfLoops>, json: &PLFunctionJson) -> Result<Self> {
        let mut edges: Vec<Option<EdgeFn>> = vec![None; chain.edge_count()];
        for (name, pts) in &json.edges {
            let e: EdgeId = name.parse()?;
            if !chain.contains_edge(e) {
                return Err(Error::Structural(format!("{e} is not an edge of this chain")));
            }
            let pts = pts.iter().map(|b| (b.o.clone(), b.v.clone())).collect();
            edges[e.index()] = Some(EdgeFn::from_points(pts)?);
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::Structural(format!("missing {}", EdgeId::from_index(i)))))
            .collect::<Result<Vec<_>>>()?;
        PLFunction::from_edges(chain, edges)
    }
}

/// Exact pointwise minimum of `fs[i] + cs[i]`.
pub fn tropical_combination(fs: &[&PLFunction], cs: &[Rational]) -> Result<PLFunction> {
    let first = fs.first().ok_or(Error::EmptyInput)?;
    if fs.len() != cs.len() {
        return Err(Error::Parameter("functions and coefficients differ in number".into()));
    }
    if fs.iter().any(|f| !same_chain(&f.chain, &first.chain)) {
        return Err(Error::ChainMismatch);
    }
    let edges = (0..first.edges.len())
        .map(|i| {
            let parts: Vec<(&EdgeFn, &Rational)> = fs.iter().map(|f| &f.edges[i]).zip(cs).collect();
            EdgeFn::lower_envelope(&parts)
        })
        .collect();
    Ok(PLFunction::from_edges_unchecked(first.chain.clone(), edges))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakpointJson {
    pub o: Rational,
    pub v: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFunctionJson {
    pub edges: BTreeMap<String, Vec<BreakpointJson>>,
}

/// A formal integer combination of points; multiplicities may be negative.
#[derive(Debug, Clone)]
pub struct Divisor {
    chain: Arc<ChainOfLoops>,
    points: BTreeMap<GraphPoint, i64>,
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        same_chain(&self.chain, &other.chain) && self.points == other.points
    }
}

impl Divisor {
    pub fn zero(chain: Arc<ChainOfLoops>) -> Self {
        Divisor { chain, points: BTreeMap::new() }
    }

    pub fn chain(&self) -> &Arc<ChainOfLoops> {
        &self.chain
    }

    /// Adds `mult · p`, canonicalizing `p`.
    pub fn add_point(&mut self, p: GraphPoint, mult: i64) {
        if mult == 0 {
            return;
        }
        let p = self.chain.canonical(p);
        let e = self.points.entry(p.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.points.remove(&p);
        }
    }

    pub fn points(&self) -> &BTreeMap<GraphPoint, i64> {
        &self.points
    }

    pub fn mult_at(&self, p: &GraphPoint) -> i64 {
        let p = self.chain.canonical(p.clone());
        self.points.get(&p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.points.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.points.values().all(|&m| m >= 0)
    }

    pub fn plus(&self, other: &Divisor) -> Result<Divisor> {
        if !same_chain(&self.chain, &other.chain) {
            return Err(Error::ChainMismatch);
        }
        let mut out = self.clone();
        for (p, m) in &other.points {
            out.add_point(p.clone(), *m);
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        let mut out = Divisor::zero(self.chain.clone());
        for (p, m) in &self.points {
            out.add_point(p.clone(), m * k);
        }
        out
    }

    pub fn to_json(&self) -> DivisorJson {
        DivisorJson {
            points: self
                .points
                .iter()
                .map(|(p, m)| DivisorPointJson { edge: p.edge, offset: p.offset.clone(), mult: *m })
                .collect(),
        }
    }

    pub fn from_json(chain: Arc<ChainOfLoops>, json: &DivisorJson) -> Result<Self> {
        let mut d = Divisor::zero(chain);
        for q in &json.points {
            let p = d.chain.point(q.edge, q.offset.clone())?;
            d.add_point(p, q.mult);
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorPointJson {
    pub edge: EdgeId,
    pub offset: Rational,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub points: Vec<DivisorPointJson>,
}

/// Counterclockwise coordinates `x_1..x_g` of a break divisor of degree `d`.
pub fn break_divisor_coordinates(div: &Divisor, d: i64) -> Result<Vec<Rational>> {
    let c = div.chain.clone();
    let g = c.genus();
    let not_break = |why: &str| Error::Structural(format!("not a break divisor: {why}"));
    if div.mult_at(&c.w(0)) != d - g as i64 {
        return Err(not_break("wrong multiplicity at w_0"));
    }
    let mut coords: HashMap<usize, Rational> = HashMap::new();
    for (p, &m) in div.points() {
        if *p == c.w(0) {
            continue;
        }
        let k = owning_loop(&c, p).ok_or_else(|| not_break("chip off the loops"))?;
        if m != 1 || coords.contains_key(&k) {
            return Err(not_break("more than one chip on a loop"));
        }
        coords.insert(k, c.loop_coordinate(k, p).unwrap());
    }
    (1..=g).map(|k| coords.remove(&k).ok_or_else(|| not_break("empty loop"))).collect()
}

/// The loop a canonical point belongs to (`v_k`, `w_k` count for loop `k`).
fn owning_loop(c: &ChainOfLoops, p: &GraphPoint) -> Option<usize> {
    match p.edge {
        EdgeId::LoopTop(k) | EdgeId::LoopBottom(k) => Some(k),
        EdgeId::Bridge(k) => {
            if p.offset.is_zero() && k >= 2 {
                Some(k - 1)
            } else if &p.offset == c.bridge(k) && k <= c.genus() {
                Some(k)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_chain;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn chain() -> Arc<ChainOfLoops> {
        Arc::new(make_chain(2, &r(2, 1), &r(1, 1)).unwrap())
    }

    /// Constant everywhere except a tent on bridge 1 (length 4).
    fn tent(c: &Arc<ChainOfLoops>) -> PLFunction {
        let mut edges: Vec<EdgeFn> = c.edges().map(|e| EdgeFn::linear(c.edge_length(e), r(0, 1), 0)).collect();
        edges[0] = EdgeFn::from_points(vec![(r(0, 1), r(0, 1)), (r(1, 1), r(1, 1)), (r(2, 1), r(0, 1)), (r(4, 1), r(0, 1))])
            .unwrap();
        PLFunction::from_edges(c.clone(), edges).unwrap()
    }

    #[test]
    fn tent_orders() {
        let c = chain();
        let f = tent(&c);
        let peak = GraphPoint { edge: EdgeId::Bridge(1), offset: r(1, 1) };
        assert_eq!(f.ord_at(&peak), 2);
        let d = f.principal_divisor();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.mult_at(&c.w(0)), -1);
        assert_eq!(d.mult_at(&GraphPoint { edge: EdgeId::Bridge(1), offset: r(2, 1) }), -1);
        assert!(!f.is_section(&Divisor::zero(c.clone())).unwrap());
    }

    #[test]
    fn slope_change_order() {
        let c = chain();
        let mut edges: Vec<EdgeFn> = c.edges().map(|e| EdgeFn::linear(c.edge_length(e), r(0, 1), 0)).collect();
        edges[0] = EdgeFn::from_points(vec![(r(0, 1), r(0, 1)), (r(1, 1), r(3, 1)), (r(4, 1), r(18, 1))]).unwrap();
        for e in &mut edges[1..] {
            *e = e.add_const(&r(18, 1));
        }
        let f = PLFunction::from_edges(c.clone(), edges).unwrap();
        assert_eq!(f.ord_at(&GraphPoint { edge: EdgeId::Bridge(1), offset: r(1, 1) }), -2);
        let t = TangentVector { edge: EdgeId::Bridge(1), offset: r(1, 2), forward: true };
        assert_eq!(f.slope_along(&t), 3);
        let t = TangentVector { forward: false, ..t };
        assert_eq!(f.slope_along(&t), -3);
    }

    #[test]
    fn rejects_fractional_slope() {
        assert!(EdgeFn::from_points(vec![(r(0, 1), r(0, 1)), (r(2, 1), r(1, 1))]).is_err());
    }

    #[test]
    fn min_bends_at_crossing() {
        let len = r(10, 1);
        let a = EdgeFn::linear(&len, r(0, 1), 1);
        let b = EdgeFn::linear(&len, r(0, 1), 0);
        let m = EdgeFn::lower_envelope(&[(&a, &r(0, 1)), (&b, &r(7, 2))]);
        assert_eq!(m.offsets(), &[r(0, 1), r(7, 2), r(10, 1)]);
        assert_eq!(m.slopes(), &[1, 0]);
    }

    #[test]
    fn min_with_shift_is_identity() {
        let c = chain();
        let f = tent(&c);
        let m = tropical_combination(&[&f, &f], &[r(0, 1), r(1, 1)]).unwrap();
        assert_eq!(m, f);
    }

    #[test]
    fn json_round_trip() {
        let c = chain();
        let f = tent(&c);
        let back = PLFunction::from_json(c.clone(), &f.to_json()).unwrap();
        assert_eq!(back, f);
        let d = f.principal_divisor();
        assert_eq!(Divisor::from_json(c, &d.to_json()).unwrap(), d);
    }

    #[test]
    fn break_coordinates() {
        let c = chain();
        let mut d = Divisor::zero(c.clone());
        d.add_point(c.w(0), 1);
        d.add_point(c.v(1), 1);
        d.add_point(c.w(2), 1);
        let x = break_divisor_coordinates(&d, 3).unwrap();
        assert_eq!(x, vec![r(0, 1), c.bottom(2).clone()]);
        d.add_point(c.w(2), 1);
        assert!(break_divisor_coordinates(&d, 4).is_err());
    }
}
