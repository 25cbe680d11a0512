//! Tropical independence: the exact verifier, permissibility of functions
//! relative to a slope template, the left-to-right builder for
//! vertex-avoiding data, and best approximation from above.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ChainOfLoops, EdgeId, GraphPoint};
use crate::plfunc::{contenders, envelope_of_lines, merge_offsets, same_chain, tropical_combination, EdgeFn, PLFunction};
use crate::rational::Rational;
use crate::tableaux::{block_boundaries, lingering_loops, Tableau, VertexAvoidingData};

/// `min_i (ψ_i + c_i)` with its inputs.
#[derive(Debug, Clone)]
pub struct TropicalCombination {
    functions: Vec<PLFunction>,
    coefficients: Vec<Rational>,
    value: OnceLock<PLFunction>,
}

impl TropicalCombination {
    pub fn new(functions: Vec<PLFunction>, coefficients: Vec<Rational>) -> Result<Self> {
        let first = functions.first().ok_or(Error::EmptyInput)?;
        if functions.len() != coefficients.len() {
            return Err(Error::Parameter("functions and coefficients differ in number".into()));
        }
        if functions.iter().any(|f| !same_chain(f.chain(), first.chain())) {
            return Err(Error::ChainMismatch);
        }
        Ok(TropicalCombination { functions, coefficients, value: OnceLock::new() })
    }

    pub fn functions(&self) -> &[PLFunction] {
        &self.functions
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn chain(&self) -> &Arc<ChainOfLoops> {
        self.functions[0].chain()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// The pointwise minimum, computed once.
    pub fn value(&self) -> &PLFunction {
        self.value.get_or_init(|| {
            let refs: Vec<&PLFunction> = self.functions.iter().collect();
            tropical_combination(&refs, &self.coefficients).expect("inputs validated in new")
        })
    }

    pub fn with_coefficient(&self, i: usize, c: Rational) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients[i] = c;
        TropicalCombination { functions: self.functions.clone(), coefficients, value: OnceLock::new() }
    }

    fn shifted_edges(&self, e: EdgeId) -> (Vec<&EdgeFn>, &[Rational]) {
        (self.functions.iter().map(|f| f.edge(e)).collect(), &self.coefficients)
    }
}

/// One piece of the lower envelope on an edge: the open interval
/// `(start, end)`, the minimizing index, and whether another index ties it
/// identically there.
struct Piece {
    start: Rational,
    end: Rational,
    winner: usize,
    tied: bool,
}

/// Lower envelope of `fs[i] + cs[i]` restricted to `members`, piece by piece.
fn envelope_pieces(fs: &[&EdgeFn], cs: &[Rational], members: &[usize], mut visit: impl FnMut(Piece) -> bool) {
    let keep = contenders(members.iter().map(|&i| (fs[i], &cs[i])));
    let members: Vec<usize> = keep.into_iter().map(|k| members[k]).collect();
    let sub: Vec<&EdgeFn> = members.iter().map(|&i| fs[i]).collect();
    let grid = merge_offsets(&sub);
    let mut lines = Vec::with_capacity(members.len());
    for w in grid.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        lines.clear();
        lines.extend(members.iter().map(|&i| (&fs[i].eval(a) + &cs[i], fs[i].slope_right(a))));
        let env = envelope_of_lines(&lines, a, b);
        for (n, (x, _, _, li)) in env.iter().enumerate() {
            let end = env.get(n + 1).map_or(b, |p| &p.0);
            let tied = lines.iter().enumerate().any(|(j, l)| j != *li && *l == lines[*li]);
            let piece = Piece { start: x.clone(), end: end.clone(), winner: members[*li], tied };
            if !visit(piece) {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "lowercase")]
pub enum Assignment {
    Bridge(usize),
    Loop(usize),
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assignment::Bridge(k) => write!(f, "β_{k}"),
            Assignment::Loop(k) => write!(f, "γ_{k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndependenceCertificate {
    pub combination: TropicalCombination,
    /// A point where index `i` is the strict unique minimizer.
    pub witnesses: Vec<GraphPoint>,
    /// Present for certificates produced by the builder.
    pub assignment: Option<Vec<Assignment>>,
    /// Display names of the functions, e.g. `"46"` for `φ_4 + φ_6`.
    pub labels: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Verification {
    Independent(IndependenceCertificate),
    /// Indices that are nowhere the unique minimizer.
    Failed(Vec<usize>),
}

impl Verification {
    pub fn is_independent(&self) -> bool {
        matches!(self, Verification::Independent(_))
    }
}

/// Finds, for every index, an interior point of some edge where it is the
/// strict unique minimum. Unique minimality is an open condition, so
/// interior witnesses exist whenever any witness does.
pub fn find_witnesses(tc: &TropicalCombination) -> Vec<Option<GraphPoint>> {
    let n = tc.len();
    let mut found: Vec<Option<GraphPoint>> = vec![None; n];
    let mut missing = n;
    let all: Vec<usize> = (0..n).collect();
    for e in tc.chain().edges() {
        let (fs, cs) = tc.shifted_edges(e);
        envelope_pieces(&fs, cs, &all, |p| {
            if !p.tied && found[p.winner].is_none() {
                let mid = (&p.start + &p.end).div_int(2);
                found[p.winner] = Some(GraphPoint { edge: e, offset: mid });
                missing -= 1;
            }
            missing > 0
        });
        if missing == 0 {
            break;
        }
    }
    found
}

pub fn verify_independence(tc: &TropicalCombination) -> Verification {
    let found = find_witnesses(tc);
    if found.iter().all(Option::is_some) {
        let labels = (0..tc.len()).map(|i| i.to_string()).collect();
        Verification::Independent(IndependenceCertificate {
            combination: tc.clone(),
            witnesses: found.into_iter().map(Option::unwrap).collect(),
            assignment: None,
            labels,
        })
    } else {
        Verification::Failed(found.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(i, _)| i).collect())
    }
}

/// True iff the minimum is attained at least twice at every point.
pub fn verify_dependence(tc: &TropicalCombination) -> bool {
    let all: Vec<usize> = (0..tc.len()).collect();
    let mut ok = true;
    for e in tc.chain().edges() {
        let (fs, cs) = tc.shifted_edges(e);
        envelope_pieces(&fs, cs, &all, |p| {
            ok &= p.tied;
            ok
        });
        if !ok {
            return false;
        }
    }
    true
}

/// `s_k(θ)` for `k = 1..g`: 4 up to `z`, 3 up to `z′`, then 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSlopeProfile {
    slopes: Vec<i64>,
}

impl ThetaSlopeProfile {
    pub fn from_blocks(g: usize, z: usize, zp: usize) -> Result<Self> {
        if !(1 <= z && z < zp && zp < g) {
            return Err(Error::Parameter(format!("need 1 ≤ z < z′ < g, got z = {z}, z′ = {zp}, g = {g}")));
        }
        let slopes = (1..=g).map(|k| if k <= z { 4 } else if k <= zp { 3 } else { 2 }).collect();
        Ok(ThetaSlopeProfile { slopes })
    }

    pub fn for_tableau(t: &Tableau) -> Result<Self> {
        let bb = block_boundaries(t)?;
        Self::from_blocks(t.g() as usize, bb.z, bb.zp)
    }

    pub fn genus(&self) -> usize {
        self.slopes.len()
    }

    /// `s_k(θ)`, `1 ≤ k ≤ g`.
    pub fn at(&self, k: usize) -> i64 {
        self.slopes[k - 1]
    }

    /// First loops of the three blocks.
    pub fn block_starts(&self) -> Vec<usize> {
        let mut starts = vec![1];
        for k in 2..=self.genus() {
            if self.at(k) != self.at(k - 1) {
                starts.push(k);
            }
        }
        starts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Permissibility {
    NotPermissible,
    Permissible,
    New,
    Departing,
}

/// Bridge slopes `s_1..s_{g+1}` of a function, `s[k-1] = s_k`.
fn bridge_slopes(psi: &PLFunction) -> Result<Vec<i64>> {
    let g = psi.chain().genus();
    (1..=g + 1)
        .map(|k| {
            psi.bridge_slope(k)
                .ok_or_else(|| Error::Parameter(format!("slope is not constant on bridge {k}")))
        })
        .collect()
}

fn permissible_by_slopes(s: &[i64], profile: &ThetaSlopeProfile, k: usize) -> bool {
    let g = profile.genus();
    let sk = |j: usize| s[j - 1];
    let cond_i = (1..=k).all(|j| sk(j) <= profile.at(j));
    let cond_ii = sk(k + 1) >= profile.at(k);
    let cond_iii = (k + 1..=g)
        .all(|l| sk(l) >= profile.at(l) || (k + 1..l).any(|kp| sk(kp) > profile.at(kp)));
    cond_i && cond_ii && cond_iii
}

fn classify_by_slopes(s: &[i64], profile: &ThetaSlopeProfile, k: usize) -> Permissibility {
    if !permissible_by_slopes(s, profile, k) {
        Permissibility::NotPermissible
    } else if s[k] > profile.at(k) {
        Permissibility::Departing
    } else if k == 1 || !permissible_by_slopes(s, profile, k - 1) {
        Permissibility::New
    } else {
        Permissibility::Permissible
    }
}

/// Classifies `ψ` on loop `k`. A function that is both new and departing
/// reports `Departing`.
pub fn classify_permissible(psi: &PLFunction, profile: &ThetaSlopeProfile, k: usize) -> Result<Permissibility> {
    if k == 0 || k > profile.genus() || psi.chain().genus() != profile.genus() {
        return Err(Error::Parameter(format!("loop {k} out of range")));
    }
    Ok(classify_by_slopes(&bridge_slopes(psi)?, profile, k))
}

/// Pairs `(i, j)`, `i ≤ j ≤ r`, in lexicographic order.
pub fn pair_indices(r: usize) -> Vec<(usize, usize)> {
    (0..=r).flat_map(|i| (i..=r).map(move |j| (i, j))).collect()
}

pub fn pair_label((i, j): (usize, usize)) -> String {
    format!("{i}{j}")
}

/// Tunables for [`build_independence_with`].
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Check at every loop that the unassigned permissible functions lie
    /// strictly below all others after re-initialization.
    pub check_margins: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { check_margins: true }
    }
}

struct Builder<'a> {
    chain: &'a ChainOfLoops,
    pairs: Vec<(usize, usize)>,
    funcs: Vec<PLFunction>,
    slopes: Vec<Vec<i64>>,
    coeff: Vec<Option<Rational>>,
    assigned: Vec<Option<Assignment>>,
    profile: ThetaSlopeProfile,
    opts: BuildOptions,
}

impl Builder<'_> {
    fn idx(&self, i: usize, j: usize) -> usize {
        self.pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap()
    }

    fn shifted(&self, f: usize, p: &GraphPoint) -> Option<Rational> {
        self.coeff[f].as_ref().map(|c| &self.funcs[f].value_at(p) + c)
    }

    fn theta_at(&self, p: &GraphPoint) -> Rational {
        (0..self.funcs.len()).filter_map(|f| self.shifted(f, p)).min().expect("some coefficient is finite")
    }

    /// Sets `c_f` so that `φ_f + c_f` takes value `target` at `p`.
    fn match_at(&mut self, f: usize, p: &GraphPoint, target: &Rational) {
        self.coeff[f] = Some(target - &self.funcs[f].value_at(p));
    }

    fn raise_to(&mut self, f: usize, p: &GraphPoint, target: &Rational, k: usize) -> Result<()> {
        let c = target - &self.funcs[f].value_at(p);
        if let Some(old) = &self.coeff[f] {
            if &c < old {
                return Err(Error::Infeasible {
                    loop_index: k,
                    reason: format!("coefficient of φ_{} would decrease", pair_label(self.pairs[f])),
                });
            }
        }
        self.coeff[f] = Some(c);
        Ok(())
    }

    fn unassigned(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.funcs.len()).filter(|&f| self.assigned[f].is_none())
    }

    fn permissible(&self, k: usize) -> Vec<usize> {
        self.unassigned().filter(|&f| permissible_by_slopes(&self.slopes[f], &self.profile, k)).collect()
    }

    fn loop_edges(k: usize) -> [EdgeId; 2] {
        [EdgeId::LoopTop(k), EdgeId::LoopBottom(k)]
    }

    /// Members of `set` that are somewhere on loop `k` strictly below the
    /// rest of `set`, in index order.
    fn unique_on_loop(&self, set: &[usize], k: usize) -> Vec<usize> {
        let cs: Vec<Rational> =
            self.coeff.iter().map(|c| c.clone().unwrap_or_else(Rational::zero)).collect();
        let mut hits = vec![false; self.funcs.len()];
        for e in Self::loop_edges(k) {
            let fs: Vec<&EdgeFn> = self.funcs.iter().map(|f| f.edge(e)).collect();
            envelope_pieces(&fs, &cs, set, |p| {
                if !p.tied {
                    hits[p.winner] = true;
                }
                true
            });
        }
        set.iter().copied().filter(|&f| hits[f]).collect()
    }

    /// The unassigned permissible functions lie strictly below every other
    /// finite function on loop `k`.
    fn check_margin(&self, set: &[usize], k: usize) -> Result<()> {
        let others: Vec<usize> =
            (0..self.funcs.len()).filter(|f| !set.contains(f) && self.coeff[*f].is_some()).collect();
        if others.is_empty() || set.is_empty() {
            return Ok(());
        }
        for e in Self::loop_edges(k) {
            let low: Vec<(&EdgeFn, &Rational)> =
                set.iter().map(|&f| (self.funcs[f].edge(e), self.coeff[f].as_ref().unwrap())).collect();
            let low = EdgeFn::lower_envelope(&low);
            let high: Vec<(&EdgeFn, &Rational)> =
                others.iter().map(|&f| (self.funcs[f].edge(e), self.coeff[f].as_ref().unwrap())).collect();
            let high = EdgeFn::lower_envelope(&high);
            if !high.add(&low.neg()).min_value().is_positive() {
                return Err(Error::Infeasible {
                    loop_index: k,
                    reason: "permissible functions are not strictly below the others".into(),
                });
            }
        }
        Ok(())
    }

    fn loop_step(&mut self, k: usize) -> Result<()> {
        let c = self.chain;
        let theta_k = self.profile.at(k);
        let set = self.permissible(k);
        let w = c.w(k);
        let top = set
            .iter()
            .filter_map(|&f| self.shifted(f, &w))
            .max()
            .ok_or_else(|| Error::Infeasible { loop_index: k, reason: "no permissible function is initialized".into() })?;
        for &f in &set {
            self.raise_to(f, &w, &top, k)?;
        }
        if self.opts.check_margins {
            self.check_margin(&set, k)?;
        }

        let departing: Vec<usize> = set.iter().copied().filter(|&f| self.slopes[f][k] > theta_k).collect();
        match departing.as_slice() {
            [] => {}
            [dep] => {
                let dep = *dep;
                self.assigned[dep] = Some(Assignment::Loop(k));
                let x = GraphPoint { edge: EdgeId::Bridge(k + 1), offset: c.bottom(k).div_int(2) };
                let target = self.shifted(dep, &x).unwrap();
                for &f in set.iter().filter(|&&f| f != dep) {
                    self.raise_to(f, &x, &target, k)?;
                }
                return Ok(());
            }
            _ => {
                return Err(Error::Infeasible { loop_index: k, reason: "more than one departing function".into() })
            }
        }
        if set.len() > 3 {
            return Err(Error::Infeasible {
                loop_index: k,
                reason: format!("{} non-departing permissible functions", set.len()),
            });
        }
        let chosen = *self
            .unique_on_loop(&set, k)
            .first()
            .ok_or_else(|| Error::Infeasible { loop_index: k, reason: "no function is uniquely minimal".into() })?;
        let bump = c.bottom(k).div_int(3);
        let cur = self.coeff[chosen].take().unwrap();
        self.coeff[chosen] = Some(&cur + &bump);
        self.assigned[chosen] = Some(Assignment::Loop(k));
        Ok(())
    }

    fn run(&mut self, lingering: &std::collections::BTreeSet<usize>) -> Result<()> {
        let c = self.chain;
        let g = c.genus();
        let n1 = c.bridge(1);
        let b1 = |num: i64| GraphPoint { edge: EdgeId::Bridge(1), offset: n1.mul_int(num).div_int(3) };
        let (f66, f56, f55, f46) = (self.idx(6, 6), self.idx(5, 6), self.idx(5, 5), self.idx(4, 6));
        self.coeff[f66] = Some(Rational::zero());
        let t = self.shifted(f66, &b1(1)).unwrap();
        self.match_at(f56, &b1(1), &t);
        let t = self.shifted(f56, &b1(2)).unwrap();
        self.match_at(f55, &b1(2), &t);
        self.match_at(f46, &b1(2), &t);
        self.assigned[f66] = Some(Assignment::Bridge(1));
        self.assigned[f56] = Some(Assignment::Bridge(1));

        let starts = self.profile.block_starts();
        for (bi, &start) in starts.iter().enumerate() {
            let end = starts.get(bi + 1).map_or(g, |s| s - 1);
            if bi > 0 {
                let mid = GraphPoint { edge: EdgeId::Bridge(start), offset: c.bridge(start).div_int(2) };
                let theta = self.theta_at(&mid);
                for f in self.permissible(start) {
                    if self.coeff[f].is_none() {
                        self.match_at(f, &mid, &theta);
                    }
                }
            }
            for k in start..=end {
                if !lingering.contains(&k) {
                    self.loop_step(k)?;
                }
            }
            let left: Vec<usize> = self.unassigned().filter(|&f| self.coeff[f].is_some()).collect();
            match left.as_slice() {
                [f] => self.assigned[*f] = Some(Assignment::Bridge(end + 1)),
                _ => {
                    return Err(Error::Infeasible {
                        loop_index: end,
                        reason: format!("{} functions left unassigned at the end of a block", left.len()),
                    })
                }
            }
        }

        let last = g + 1;
        let (f01, f00) = (self.idx(0, 1), self.idx(0, 0));
        let mid = GraphPoint { edge: EdgeId::Bridge(last), offset: c.bridge(last).div_int(2) };
        let theta = self.theta_at(&mid);
        self.match_at(f01, &mid, &theta);
        let q = GraphPoint { edge: EdgeId::Bridge(last), offset: c.bridge(last).mul_int(3).div_int(4) };
        let theta = self.theta_at(&q);
        self.match_at(f00, &q, &theta);
        self.assigned[f01] = Some(Assignment::Bridge(last));
        self.assigned[f00] = Some(Assignment::Bridge(last));

        if let Some(f) = (0..self.funcs.len()).find(|&f| self.assigned[f].is_none() || self.coeff[f].is_none()) {
            return Err(Error::Infeasible {
                loop_index: g,
                reason: format!("φ_{} was never placed", pair_label(self.pairs[f])),
            });
        }
        Ok(())
    }
}

/// The pairwise sums `φ_i + φ_j`, `i ≤ j`, in lexicographic order.
pub fn pairwise_sums(data: &VertexAvoidingData) -> Result<Vec<PLFunction>> {
    let r = data.distinguished.len() - 1;
    pair_indices(r).into_iter().map(|(i, j)| data.distinguished[i].add(&data.distinguished[j])).collect()
}

pub fn build_independence(data: &VertexAvoidingData) -> Result<IndependenceCertificate> {
    build_independence_with(data, BuildOptions::default())
}

pub fn build_independence_with(data: &VertexAvoidingData, opts: BuildOptions) -> Result<IndependenceCertificate> {
    let t = &data.tableau;
    if t.r() != 6 || t.d() != t.g() + 3 || t.rho() > 2 {
        return Err(Error::Shape("the builder needs r = 6, d = g + 3 and ρ ≤ 2".into()));
    }
    let profile = ThetaSlopeProfile::for_tableau(t)?;
    let pairs = pair_indices(6);
    let funcs = pairwise_sums(data)?;
    let sv = &data.slope_table;
    let g = data.chain.genus();
    let slopes = pairs
        .iter()
        .map(|&(i, j)| (1..=g + 1).map(|k| sv.incoming(k)[i] + sv.incoming(k)[j]).collect())
        .collect();
    let n = pairs.len();
    let mut b = Builder {
        chain: &data.chain,
        pairs,
        funcs,
        slopes,
        coeff: vec![None; n],
        assigned: vec![None; n],
        profile,
        opts,
    };
    b.run(&lingering_loops(t))?;

    let labels = b.pairs.iter().map(|&p| pair_label(p)).collect();
    let assignment: Vec<Assignment> = b.assigned.into_iter().map(Option::unwrap).collect();
    let coefficients: Vec<Rational> = b.coeff.into_iter().map(Option::unwrap).collect();
    let tc = TropicalCombination::new(b.funcs, coefficients)?;
    match verify_independence(&tc) {
        Verification::Independent(mut cert) => {
            cert.assignment = Some(assignment);
            cert.labels = labels;
            Ok(cert)
        }
        Verification::Failed(indices) => Err(Error::Verification { indices }),
    }
}

/// Best approximation of `θ` from above: coefficients `−min_Γ(φ − θ)`.
pub fn best_approximation(theta: &PLFunction, fs: &[PLFunction]) -> Result<TropicalCombination> {
    let coefficients = fs
        .iter()
        .map(|f| Ok(-f.sub(theta)?.min_value()))
        .collect::<Result<Vec<_>>>()?;
    TropicalCombination::new(fs.to_vec(), coefficients)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub edge: EdgeId,
    pub offset: Rational,
}

/// Certificate interchange format. The optional provenance fields let a
/// verifier rebuild the functions from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub coefficients: BTreeMap<String, Rational>,
    pub witnesses: BTreeMap<String, WitnessJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assignment: BTreeMap<String, Assignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tableau: Option<Tableau>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainOfLoops>,
}

impl IndependenceCertificate {
    pub fn to_json(&self) -> CertificateJson {
        let label = |i: usize| self.labels[i].clone();
        let coefficients =
            self.combination.coefficients.iter().enumerate().map(|(i, c)| (label(i), c.clone())).collect();
        let witnesses = self
            .witnesses
            .iter()
            .enumerate()
            .map(|(i, p)| (label(i), WitnessJson { edge: p.edge, offset: p.offset.clone() }))
            .collect();
        let assignment = self
            .assignment
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, a)| (label(i), *a))
            .collect();
        CertificateJson { coefficients, witnesses, assignment, tableau: None, seed: None, chain: None }
    }

    /// Assignment of the function labelled `label`, if built.
    pub fn assignment_of(&self, label: &str) -> Option<Assignment> {
        let i = self.labels.iter().position(|l| l == label)?;
        self.assignment.as_ref().map(|a| a[i])
    }

    /// Checks every recorded witness exactly against all other indices.
    pub fn witnesses_hold(&self) -> bool {
        let tc = &self.combination;
        self.witnesses.iter().enumerate().all(|(i, p)| {
            let vi = &tc.functions[i].value_at(p) + &tc.coefficients[i];
            (0..tc.len()).all(|j| j == i || vi < &tc.functions[j].value_at(p) + &tc.coefficients[j])
        })
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

    fn ramp(c: &Arc<ChainOfLoops>, slope: i64) -> PLFunction {
        let mut value = Rational::zero();
        let mut edges = Vec::new();
        for e in c.edges() {
            match e {
                EdgeId::Bridge(_) => {
                    let f = EdgeFn::linear(c.edge_length(e), value.clone(), slope);
                    value = f.end().clone();
                    edges.push(f);
                }
                _ => edges.push(EdgeFn::linear(c.edge_length(e), value.clone(), 0)),
            }
        }
        // Loop edges are flat, so each loop carries the value reached so far.
        PLFunction::from_edges(c.clone(), edges).unwrap()
    }

    #[test]
    fn single_function_is_independent() {
        let c = chain();
        let tc = TropicalCombination::new(vec![ramp(&c, 1)], vec![r(5, 1)]).unwrap();
        assert!(verify_independence(&tc).is_independent());
        assert!(!verify_dependence(&tc));
    }

    #[test]
    fn duplicates_are_dependent() {
        let c = chain();
        let f = ramp(&c, 1);
        let tc = TropicalCombination::new(vec![f.clone(), f], vec![r(0, 1), r(0, 1)]).unwrap();
        match verify_independence(&tc) {
            Verification::Failed(ix) => assert_eq!(ix, vec![0, 1]),
            _ => panic!("expected failure"),
        }
        assert!(verify_dependence(&tc));
    }

    #[test]
    fn shifted_copy_is_neither_tied_nor_independent() {
        let c = chain();
        let f = ramp(&c, 1);
        let g = f.add_const(&r(1, 1));
        let tc = TropicalCombination::new(vec![f, g], vec![r(0, 1), r(0, 1)]).unwrap();
        assert!(!verify_independence(&tc).is_independent());
        assert!(!verify_dependence(&tc));
    }

    #[test]
    fn crossing_ramps_are_independent() {
        let c = chain();
        let span: Rational = c.bridge_lengths().iter().sum();
        let tc = TropicalCombination::new(vec![ramp(&c, 1), ramp(&c, -1)], vec![r(0, 1), span]).unwrap();
        let Verification::Independent(cert) = verify_independence(&tc) else { panic!() };
        assert!(cert.witnesses_hold());
    }

    #[test]
    fn best_approximation_recovers_min() {
        let c = chain();
        let (a, b) = (ramp(&c, 1), ramp(&c, -1).add_const(&r(3, 1)));
        let theta = tropical_combination(&[&a, &b], &[r(0, 1), r(0, 1)]).unwrap();
        let tc = best_approximation(&theta, &[a, b]).unwrap();
        assert_eq!(tc.coefficients(), &[r(0, 1), r(0, 1)]);
        assert_eq!(tc.value(), &theta);
        let tc = best_approximation(&theta, &[theta.add_const(&r(5, 1))]).unwrap();
        assert_eq!(tc.coefficients(), &[r(-5, 1)]);
    }

    #[test]
    fn profile_steps() {
        let p = ThetaSlopeProfile::from_blocks(22, 7, 15).unwrap();
        assert_eq!(p.at(7), 4);
        assert_eq!(p.at(8), 3);
        assert_eq!(p.at(16), 2);
        assert_eq!(p.block_starts(), vec![1, 8, 16]);
    }
}
