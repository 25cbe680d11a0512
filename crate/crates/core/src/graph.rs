//! The chain-of-loops metric graph.
//!
//! Loops `γ_1..γ_g` are joined by bridges `β_1..β_{g+1}`. Bridge `β_k` runs
//! from `w_{k-1}` to `v_k`; both edges of `γ_k` run from `v_k` to `w_k`, the
//! top edge having length `ℓ_k` and the bottom edge `m_k`.
//!
//! Vertices are not stored separately. Each vertex is canonically an
//! endpoint of a bridge: `v_k = (β_k, n_k)` and `w_k = (β_{k+1}, 0)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeId {
    Bridge(usize),
    LoopTop(usize),
    LoopBottom(usize),
}

impl EdgeId {
    /// Position in the left-to-right edge order `β_1, γ_1^top, γ_1^bot, β_2, ...`.
    pub fn index(self) -> usize {
        match self {
            EdgeId::Bridge(k) => 3 * (k - 1),
            EdgeId::LoopTop(k) => 3 * (k - 1) + 1,
            EdgeId::LoopBottom(k) => 3 * (k - 1) + 2,
        }
    }

    pub fn from_index(i: usize) -> EdgeId {
        let k = i / 3 + 1;
        match i % 3 {
            0 => EdgeId::Bridge(k),
            1 => EdgeId::LoopTop(k),
            _ => EdgeId::LoopBottom(k),
        }
    }

    pub fn is_bridge(self) -> bool {
        matches!(self, EdgeId::Bridge(_))
    }

    /// Loop or bridge number `k`.
    pub fn number(self) -> usize {
        match self {
            EdgeId::Bridge(k) | EdgeId::LoopTop(k) | EdgeId::LoopBottom(k) => k,
        }
    }
}

impl Ord for EdgeId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for EdgeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Bridge(k) => write!(f, "bridge-{k}"),
            EdgeId::LoopTop(k) => write!(f, "loop-{k}-top"),
            EdgeId::LoopBottom(k) => write!(f, "loop-{k}-bottom"),
        }
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Structural(format!("unknown edge id {s:?}"));
        let parse_k = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(bad);
        if let Some(rest) = s.strip_prefix("bridge-") {
            return Ok(EdgeId::Bridge(parse_k(rest)?));
        }
        let rest = s.strip_prefix("loop-").ok_or_else(bad)?;
        let (k, side) = rest.split_once('-').ok_or_else(bad)?;
        match side {
            "top" => Ok(EdgeId::LoopTop(parse_k(k)?)),
            "bottom" => Ok(EdgeId::LoopBottom(parse_k(k)?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainOfLoops {
    genus: usize,
    l: Vec<Rational>,
    m: Vec<Rational>,
    n: Vec<Rational>,
    factor: Rational,
}

impl ChainOfLoops {
    /// Builds a chain from explicit lengths. Only positivity is enforced;
    /// use [`ChainOfLoops::is_admissible`] for the separation condition.
    pub fn new(
        l: Vec<Rational>,
        m: Vec<Rational>,
        n: Vec<Rational>,
        factor: Rational,
    ) -> Result<Self> {
        let g = l.len();
        if g == 0 {
            return Err(Error::Parameter("genus must be positive".into()));
        }
        if m.len() != g || n.len() != g + 1 {
            return Err(Error::Structural(format!(
                "expected {g} top, {g} bottom and {} bridge lengths",
                g + 1
            )));
        }
        if l.iter().chain(&m).chain(&n).any(|x| !x.is_positive()) {
            return Err(Error::Parameter("edge lengths must be positive".into()));
        }
        if factor <= Rational::one() {
            return Err(Error::Parameter("separation factor must exceed 1".into()));
        }
        Ok(ChainOfLoops { genus: g, l, m, n, factor })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn factor(&self) -> &Rational {
        &self.factor
    }

    /// Top-edge length `ℓ_k`, 1-based.
    pub fn top(&self, k: usize) -> &Rational {
        &self.l[k - 1]
    }

    /// Bottom-edge length `m_k`, 1-based.
    pub fn bottom(&self, k: usize) -> &Rational {
        &self.m[k - 1]
    }

    /// Bridge length `n_k`, 1-based, `k ≤ g+1`.
    pub fn bridge(&self, k: usize) -> &Rational {
        &self.n[k - 1]
    }

    /// Circumference `ℓ_k + m_k` of loop `k`.
    pub fn circumference(&self, k: usize) -> Rational {
        self.top(k) + self.bottom(k)
    }

    pub fn top_lengths(&self) -> &[Rational] {
        &self.l
    }

    pub fn bottom_lengths(&self) -> &[Rational] {
        &self.m
    }

    pub fn bridge_lengths(&self) -> &[Rational] {
        &self.n
    }

    pub fn edge_count(&self) -> usize {
        3 * self.genus + 1
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId::from_index)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        match e {
            EdgeId::Bridge(k) => (1..=self.genus + 1).contains(&k),
            EdgeId::LoopTop(k) | EdgeId::LoopBottom(k) => (1..=self.genus).contains(&k),
        }
    }

    pub fn edge_length(&self, e: EdgeId) -> &Rational {
        match e {
            EdgeId::Bridge(k) => self.bridge(k),
            EdgeId::LoopTop(k) => self.top(k),
            EdgeId::LoopBottom(k) => self.bottom(k),
        }
    }

    pub fn total_length(&self) -> Rational {
        self.l.iter().chain(&self.m).chain(&self.n).sum()
    }

    /// `v_k` for `1 ≤ k ≤ g+1`.
    pub fn v(&self, k: usize) -> GraphPoint {
        GraphPoint { edge: EdgeId::Bridge(k), offset: self.bridge(k).clone() }
    }

    /// `w_k` for `0 ≤ k ≤ g`.
    pub fn w(&self, k: usize) -> GraphPoint {
        GraphPoint { edge: EdgeId::Bridge(k + 1), offset: Rational::zero() }
    }

    /// Every inequality `ℓ_{k+1}F ≤ m_k`, `m_kF ≤ ℓ_k`, `ℓ_kF ≤ n_{k+1}`,
    /// `n_{k+1}F ≤ n_k` holds.
    pub fn is_admissible(&self) -> bool {
        let f = &self.factor;
        let le = |small: &Rational, big: &Rational| &(small * f) <= big;
        let positive = self.l.iter().chain(&self.m).chain(&self.n).all(Rational::is_positive);
        positive
            && (1..=self.genus).all(|k| {
                le(self.bottom(k), self.top(k))
                    && le(self.top(k), self.bridge(k + 1))
                    && le(self.bridge(k + 1), self.bridge(k))
                    && (k == self.genus || le(self.top(k + 1), self.bottom(k)))
            })
    }

    /// Resolves a point to its canonical representative, validating bounds.
    pub fn point(&self, edge: EdgeId, offset: Rational) -> Result<GraphPoint> {
        if !self.contains_edge(edge) {
            return Err(Error::Structural(format!("{edge} is not an edge of this chain")));
        }
        let len = self.edge_length(edge);
        if offset.is_negative() || &offset > len {
            return Err(Error::Structural(format!("offset {offset} outside {edge}")));
        }
        Ok(self.canonical(GraphPoint { edge, offset }))
    }

    /// Maps vertex aliases on loop edges to their bridge representative.
    /// Idempotent; interior points are returned unchanged.
    pub fn canonical(&self, p: GraphPoint) -> GraphPoint {
        match p.edge {
            EdgeId::Bridge(_) => p,
            EdgeId::LoopTop(k) | EdgeId::LoopBottom(k) => {
                if p.offset.is_zero() {
                    self.v(k)
                } else if &p.offset == self.edge_length(p.edge) {
                    self.w(k)
                } else {
                    p
                }
            }
        }
    }

    /// Every `(edge, offset)` representation of a point.
    pub fn aliases(&self, p: &GraphPoint) -> Vec<GraphPoint> {
        let p = self.canonical(p.clone());
        let mut out = vec![p.clone()];
        if let EdgeId::Bridge(k) = p.edge {
            if p.offset.is_zero() && k >= 2 {
                let j = k - 1;
                out.push(GraphPoint { edge: EdgeId::LoopTop(j), offset: self.top(j).clone() });
                out.push(GraphPoint { edge: EdgeId::LoopBottom(j), offset: self.bottom(j).clone() });
            } else if &p.offset == self.bridge(k) && k <= self.genus {
                out.push(GraphPoint { edge: EdgeId::LoopTop(k), offset: Rational::zero() });
                out.push(GraphPoint { edge: EdgeId::LoopBottom(k), offset: Rational::zero() });
            }
        }
        out
    }

    /// Germs of edges at `p`, as tangent vectors pointing away from `p`.
    pub fn germs(&self, p: &GraphPoint) -> Vec<TangentVector> {
        self.aliases(p)
            .into_iter()
            .flat_map(|a| {
                let len = self.edge_length(a.edge).clone();
                let mut v = Vec::with_capacity(2);
                if a.offset < len {
                    v.push(TangentVector { edge: a.edge, offset: a.offset.clone(), forward: true });
                }
                if a.offset.is_positive() {
                    v.push(TangentVector { edge: a.edge, offset: a.offset, forward: false });
                }
                v
            })
            .collect()
    }

    /// Counterclockwise coordinate of a point on loop `k`, in `[0, ℓ_k + m_k)`.
    /// Counterclockwise leaves `v_k` along the bottom edge.
    pub fn loop_coordinate(&self, k: usize, p: &GraphPoint) -> Option<Rational> {
        let p = self.canonical(p.clone());
        if p == self.v(k) {
            return Some(Rational::zero());
        }
        if p == self.w(k) {
            return Some(self.bottom(k).clone());
        }
        match p.edge {
            EdgeId::LoopBottom(j) if j == k => Some(p.offset),
            EdgeId::LoopTop(j) if j == k => Some(&self.circumference(k) - &p.offset),
            _ => None,
        }
    }

    /// Inverse of [`ChainOfLoops::loop_coordinate`]; `x` is reduced first.
    pub fn point_at_coordinate(&self, k: usize, x: &Rational) -> GraphPoint {
        let big_l = self.circumference(k);
        let x = x.rem_euclid(&big_l);
        let m = self.bottom(k);
        let p = if &x <= m {
            GraphPoint { edge: EdgeId::LoopBottom(k), offset: x }
        } else {
            GraphPoint { edge: EdgeId::LoopTop(k), offset: &big_l - &x }
        };
        self.canonical(p)
    }
}

/// The canonical admissible chain: `n_{g+1} = base` and every step along
/// `n_1 > … > n_{g+1} > ℓ_1 > m_1 > ℓ_2 > … > m_g` divides by `F`.
/// Separation factor used by the command-line tools and the acceptance
/// suite. Factors below 8 fail on some tableaux (distinct pairwise sums can
/// coincide on a loop); see the sweep results.
pub const DEFAULT_FACTOR: i64 = 8;

/// `make_chain` scaled so that every edge length is an integer (the
/// shortest edge has length 1). Exact arithmetic is much cheaper when no
/// denominators build up.
pub fn integral_chain(g: usize, factor: i64) -> Result<ChainOfLoops> {
    let f = Rational::from_integer(factor);
    let exp = u32::try_from(2 * g).map_err(|_| Error::Parameter("genus too large".into()))?;
    make_chain(g, &f, &f.pow(exp))
}

pub fn make_chain(g: usize, factor: &Rational, base: &Rational) -> Result<ChainOfLoops> {
    if g == 0 {
        return Err(Error::Parameter("genus must be positive".into()));
    }
    if factor <= &Rational::one() {
        return Err(Error::Parameter("separation factor must exceed 1".into()));
    }
    if !base.is_positive() {
        return Err(Error::Parameter("base length must be positive".into()));
    }
    let mut n = vec![Rational::zero(); g + 1];
    n[g] = base.clone();
    for k in (0..g).rev() {
        n[k] = &n[k + 1] * factor;
    }
    let mut l = Vec::with_capacity(g);
    let mut m = Vec::with_capacity(g);
    let mut cur = base.clone();
    for _ in 0..g {
        cur = &cur / factor;
        l.push(cur.clone());
        cur = &cur / factor;
        m.push(cur.clone());
    }
    ChainOfLoops::new(l, m, n, factor.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphPoint {
    pub edge: EdgeId,
    pub offset: Rational,
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.edge, self.offset)
    }
}

/// A germ of a directed edge: the edge, the base offset on it, and whether it
/// points toward increasing offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentVector {
    pub edge: EdgeId,
    pub offset: Rational,
    pub forward: bool,
}

impl TangentVector {
    pub fn base(&self, chain: &ChainOfLoops) -> GraphPoint {
        chain.canonical(GraphPoint { edge: self.edge, offset: self.offset.clone() })
    }

    /// Checks that the germ actually leaves its base along the edge.
    pub fn validate(&self, chain: &ChainOfLoops) -> Result<()> {
        if !chain.contains_edge(self.edge) {
            return Err(Error::Structural(format!("{} is not an edge", self.edge)));
        }
        let len = chain.edge_length(self.edge);
        let ok = if self.forward {
            !self.offset.is_negative() && &self.offset < len
        } else {
            self.offset.is_positive() && &self.offset <= len
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Structural("tangent vector points off its edge".into()))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    genus: usize,
    #[serde(rename = "F")]
    factor: Rational,
    lengths: LengthsJson,
}

#[derive(Serialize, Deserialize)]
struct LengthsJson {
    l: Vec<Rational>,
    m: Vec<Rational>,
    n: Vec<Rational>,
}

impl Serialize for ChainOfLoops {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainJson {
            genus: self.genus,
            factor: self.factor.clone(),
            lengths: LengthsJson { l: self.l.clone(), m: self.m.clone(), n: self.n.clone() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainOfLoops {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ChainJson::deserialize(d)?;
        let c = ChainOfLoops::new(j.lengths.l, j.lengths.m, j.lengths.n, j.factor)
            .map_err(serde::de::Error::custom)?;
        if c.genus != j.genus {
            return Err(serde::de::Error::custom("genus disagrees with length lists"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn genus_two_unrolls() {
        let c = make_chain(2, &r(2, 1), &r(1, 1)).unwrap();
        assert_eq!(c.bridge_lengths(), &[r(4, 1), r(2, 1), r(1, 1)]);
        assert_eq!(c.top_lengths(), &[r(1, 2), r(1, 8)]);
        assert_eq!(c.bottom_lengths(), &[r(1, 4), r(1, 16)]);
        assert!(c.is_admissible());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_chain(0, &r(2, 1), &r(1, 1)).is_err());
        assert!(make_chain(3, &r(1, 1), &r(1, 1)).is_err());
        assert!(make_chain(3, &r(2, 1), &r(0, 1)).is_err());
    }

    #[test]
    fn inadmissible_variants() {
        let c = make_chain(2, &r(2, 1), &r(1, 1)).unwrap();
        let mut m = c.bottom_lengths().to_vec();
        m[0] = c.top(1).clone();
        let bad = ChainOfLoops::new(c.top_lengths().to_vec(), m, c.bridge_lengths().to_vec(), r(2, 1));
        assert!(!bad.unwrap().is_admissible());
        let mut n = c.bridge_lengths().to_vec();
        n.swap(0, 1);
        let bad = ChainOfLoops::new(c.top_lengths().to_vec(), c.bottom_lengths().to_vec(), n, r(2, 1));
        assert!(!bad.unwrap().is_admissible());
    }

    #[test]
    fn vertex_aliases_collapse() {
        let c = make_chain(3, &r(2, 1), &r(1, 1)).unwrap();
        let v2 = c.point(EdgeId::LoopTop(2), r(0, 1)).unwrap();
        assert_eq!(v2, c.v(2));
        let w2 = c.point(EdgeId::LoopBottom(2), c.bottom(2).clone()).unwrap();
        assert_eq!(w2, c.w(2));
        assert_eq!(c.aliases(&c.w(2)).len(), 3);
        assert_eq!(c.aliases(&c.w(0)).len(), 1);
        assert_eq!(c.germs(&c.v(2)).len(), 3);
        assert_eq!(c.germs(&c.v(4)).len(), 1);
    }

    #[test]
    fn ccw_coordinates() {
        let c = make_chain(2, &r(2, 1), &r(1, 1)).unwrap();
        assert_eq!(c.loop_coordinate(1, &c.v(1)), Some(r(0, 1)));
        assert_eq!(c.loop_coordinate(1, &c.w(1)), Some(c.bottom(1).clone()));
        let top_mid = GraphPoint { edge: EdgeId::LoopTop(1), offset: r(1, 8) };
        let x = c.loop_coordinate(1, &top_mid).unwrap();
        assert_eq!(x, r(5, 8));
        assert_eq!(c.point_at_coordinate(1, &x), top_mid);
    }

    #[test]
    fn edge_id_round_trip() {
        for e in [EdgeId::Bridge(3), EdgeId::LoopTop(1), EdgeId::LoopBottom(12)] {
            assert_eq!(e.to_string().parse::<EdgeId>().unwrap(), e);
            assert_eq!(EdgeId::from_index(e.index()), e);
        }
        assert!("loop-0-top".parse::<EdgeId>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = make_chain(2, &r(2, 1), &r(1, 1)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"F\":\"2\""));
        let back: ChainOfLoops = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
