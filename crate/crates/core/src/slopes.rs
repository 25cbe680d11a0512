//! Virtual divisor classes a·λ − b₀·δ₀ − b₁·δ₁ from degeneracy loci over
//! the test curves F₀ and F₁, and slope bookkeeping.
//!
//! Two pipelines share one engine:
//!
//! * genus 23, (r, d) = (6, 26), codimension 3, Chern numbers on W^6_26 of
//!   a genus-22 curve;
//! * genus 2s²+s+1, (r, d) = (2s, 2s²+2s+1), codimension 2, Chern numbers
//!   on W^{2s}_{2s²+2s+1} of a genus 2s²+s curve.
//!
//! Each stage is compared term by term with the recorded polynomials. A
//! mismatch does not abort the run; it is reported in
//! [`PipelineReport::checks`] so the caller sees exactly which term differs.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chowring::{
    castelnuovo_number, chern_number_g22, chern_number_general, sym2_chern, total_chern_inverse, ChowExpr,
};
use crate::{Error, Rational, Result};

/// Coefficients of a·λ − b₀·δ₀ − b₁·δ₁.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: Rational,
    pub b0: Rational,
    pub b1: Rational,
}

impl DivisorClass {
    pub fn new(a: Rational, b0: Rational, b1: Rational) -> Self {
        DivisorClass { a, b0, b1 }
    }

    /// a/b₀.
    pub fn slope(&self) -> Result<Rational> {
        if self.b0.is_zero() {
            return Err(Error::Parameter("b0 = 0, slope undefined".into()));
        }
        Ok(&self.a / &self.b0)
    }

    /// a − 12b₀ + b₁, the intersection with the elliptic pencil.
    pub fn elliptic_pencil_degree(&self) -> Rational {
        &(&self.a - &self.b0.mul_int(12)) + &self.b1
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        DivisorClass { a: &self.a * k, b0: &self.b0 * k, b1: &self.b1 * k }
    }
}

/// Intersections of the test curves F₀, F_ell, F₁ with λ, δ₀, δ₁ in genus g.
///
/// F₁ moves the attaching point of a fixed elliptic tail along a fixed
/// curve of genus g−1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestCurveNumbers {
    pub genus: u32,
    pub f0: [i64; 3],
    pub f_ell: [i64; 3],
    pub f1: [i64; 3],
}

impl TestCurveNumbers {
    pub fn new(genus: u32) -> Self {
        let g = genus as i64;
        TestCurveNumbers { genus, f0: [0, 2 - 2 * g, 1], f_ell: [1, 12, -1], f1: [0, 0, 4 - 2 * g] }
    }

    /// Degree of a·λ − b₀·δ₀ − b₁·δ₁ on a curve with the given row.
    pub fn pair(row: &[i64; 3], dc: &DivisorClass) -> Rational {
        &(&dc.a.mul_int(row[0]) - &dc.b0.mul_int(row[1])) - &dc.b1.mul_int(row[2])
    }

    /// Recovers (a, b₀, b₁) from the degrees on F₀, F_ell and F₁ by
    /// Cramer's rule on the unknowns (a, −b₀, −b₁).
    pub fn solve(&self, on_f0: &Rational, on_f_ell: &Rational, on_f1: &Rational) -> Result<DivisorClass> {
        let rows = [self.f0, self.f_ell, self.f1];
        let rhs = [on_f0.clone(), on_f_ell.clone(), on_f1.clone()];
        let m = |i: usize, j: usize| Rational::from_integer(rows[i][j]);
        let det3 = |col: Option<usize>| -> Rational {
            let entry = |i: usize, j: usize| if Some(j) == col { rhs[i].clone() } else { m(i, j) };
            let mut total = Rational::zero();
            for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1), ([1, 0, 2], -1), ([0, 2, 1], -1)] {
                let prod = &(&entry(0, p[0]) * &entry(1, p[1])) * &entry(2, p[2]);
                total = if sign > 0 { &total + &prod } else { &total - &prod };
            }
            total
        };
        let det = det3(None);
        if det.is_zero() {
            return Err(Error::Parameter("test curve matrix is singular".into()));
        }
        let x: Vec<Rational> = (0..3).map(|j| &det3(Some(j)) / &det).collect();
        Ok(DivisorClass { a: x[0].clone(), b0: -&x[1], b1: -&x[2] })
    }
}

/// Chern data fed into a pipeline. The classes of A₂ and B₂ come from
/// Grothendieck–Riemann–Roch and are taken as given.
#[derive(Clone, Debug)]
pub struct GeometricInputs {
    /// Genus of the moving curve X; the divisor lives in genus one more.
    pub curve_genus: u32,
    pub rank: u32,
    pub degree: u32,
    /// Codimension of the degeneracy class: 3 in genus 23, 2 otherwise.
    pub codim: u32,
    /// c_1.. of A₂, fibre H⁰(L²(−2y)).
    pub a2: Vec<ChowExpr>,
    /// c_1.. of B₂, fibre H⁰(L²(−y−q)).
    pub b2: Vec<ChowExpr>,
}

fn parse(s: &str) -> ChowExpr {
    s.parse().expect("built-in expression parses")
}

impl GeometricInputs {
    pub fn g23() -> Self {
        GeometricInputs {
            curve_genus: 22,
            rank: 6,
            degree: 26,
            codim: 3,
            a2: vec![
                parse("-4*theta - 4*gamma - 146*eta"),
                parse("8*theta^2 + 560*eta*theta + 16*gamma*theta"),
                parse("-32/3*theta^3 - 1072*eta*theta^2 - 32*theta^2*gamma"),
            ],
            b2: vec![
                parse("-4*theta - 2*gamma - 51*eta"),
                parse("8*theta^2 + 196*eta*theta + 8*theta*gamma"),
                parse("-32/3*theta^3 - 376*eta*theta^2 - 16*theta^2*gamma"),
            ],
        }
    }

    pub fn rho1(s: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::Parameter(format!("s = {s}; the ρ = 1 family starts at s = 2")));
        }
        let s_ = s as i64;
        let (th, ga, et) = (ChowExpr::theta(), ChowExpr::gamma(), ChowExpr::eta());
        let eth = &et * &th;
        Ok(GeometricInputs {
            curve_genus: 2 * s * s + s,
            rank: 2 * s,
            degree: 2 * s * s + 2 * s + 1,
            codim: 2,
            a2: vec![
                &(&th.scale_int(-4) - &ga.scale_int(4)) - &et.scale_int(2 * (3 * s_ + 1) * (2 * s_ + 1)),
                &(&(&th * &th).scale_int(8) + &eth.scale_int(8 * (6 * s_ * s_ + 5 * s_ - 2))) + &(&ga * &th).scale_int(16),
            ],
            b2: vec![
                &(&th.scale_int(-4) - &ga.scale_int(2)) - &et.scale_int((2 * s_ + 1) * (2 * s_ + 1)),
                &(&(&th * &th).scale_int(8) + &eth.scale_int(4 * (4 * s_ * s_ + 4 * s_ - 1))) + &(&th * &ga).scale_int(8),
            ],
        })
    }

    /// c_1(P) = dη + γ for the Poincaré bundle.
    fn poincare_c1(&self) -> ChowExpr {
        &ChowExpr::eta().scale_int(self.degree as i64) + &ChowExpr::gamma()
    }

    /// Total Chern class of J₁(P)^∨. The jet bundle is an extension of P
    /// by ω ⊗ P.
    pub fn jet_dual(&self) -> ChowExpr {
        let p = self.poincare_c1();
        let omega_p = &p + &ChowExpr::eta().scale_int(2 * self.curve_genus as i64 - 2);
        &(&ChowExpr::one() - &p) * &(&ChowExpr::one() - &omega_p)
    }

    /// Total Chern class of B^∨, B having fibre H⁰(L ⊗ O_{y+q}).
    pub fn b_dual(&self) -> ChowExpr {
        &(&ChowExpr::one() - &self.poincare_c1()) * &(&ChowExpr::one() + &ChowExpr::eta())
    }

    /// c_1(J₁(P)).
    pub fn jet_c1(&self) -> ChowExpr {
        -&self.jet_dual().homogeneous(1)
    }

    /// c_1(B).
    pub fn b_c1(&self) -> ChowExpr {
        -&self.b_dual().homogeneous(1)
    }

    /// 1 + c_1 + … + c_{r+1} of M^∨.
    pub fn tautological_dual(&self) -> ChowExpr {
        let mut t = ChowExpr::one();
        for i in 1..=self.rank as usize + 1 {
            t = &t + &ChowExpr::chern(i);
        }
        t
    }
}

/// Which test curve a stage computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Over F₁, on Z = {(y, L) : h⁰(L(−2y)) ≥ r}.
    Z,
    /// Over F₀, on Y = {(y, L) : h⁰(L(−y−q)) ≥ r}.
    Y,
}

/// Intermediate polynomials of one stage, with the Ker line bundle kept
/// symbolic: the degeneracy class is `without_ker + c_1(Ker)·ker_coefficient`.
#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub side: Side,
    pub without_ker: ChowExpr,
    pub ker_coefficient: ChowExpr,
    /// Class of Z or Y in X × W (Porteous).
    pub locus: ChowExpr,
    /// c_{r+1} of the same virtual bundle; −(this)·ξ stands for c_1(Ker)·ξ.
    pub kernel_class: ChowExpr,
    /// η-coefficient of without_ker·locus.
    pub pushed_without_ker: ChowExpr,
    /// η-coefficient of −ker_coefficient·kernel_class.
    pub pushed_ker: ChowExpr,
    pub pushforward: ChowExpr,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermMismatch {
    pub term: String,
    pub computed: Rational,
    pub recorded: Rational,
}

/// Term-by-term comparison of one computed quantity with its recorded form.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenCheck {
    pub stage: String,
    pub mismatches: Vec<TermMismatch>,
}

impl GoldenCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn compare(stage: impl Into<String>, computed: &ChowExpr, recorded: &ChowExpr) -> Self {
        let diff = computed - recorded;
        let mismatches = diff
            .terms()
            .map(|(m, _)| TermMismatch {
                term: m.to_string(),
                computed: computed.coefficient(m),
                recorded: recorded.coefficient(m),
            })
            .collect();
        GoldenCheck { stage: stage.into(), mismatches }
    }

    pub fn compare_value(stage: impl Into<String>, computed: &Rational, recorded: &Rational) -> Self {
        let mismatches = if computed == recorded {
            Vec::new()
        } else {
            vec![TermMismatch { term: "value".into(), computed: computed.clone(), recorded: recorded.clone() }]
        };
        GoldenCheck { stage: stage.into(), mismatches }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub genus: u32,
    pub class: DivisorClass,
    /// σ*(F₁)·c and σ*(F₀)·c.
    pub on_f1: Rational,
    pub on_f0: Rational,
    pub stages: Vec<StageReport>,
    pub checks: Vec<GoldenCheck>,
}

impl PipelineReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &GoldenCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn check(&self, stage: &str) -> Option<&GoldenCheck> {
        self.checks.iter().find(|c| c.stage == stage)
    }

    pub fn stage(&self, side: Side) -> &StageReport {
        self.stages.iter().find(|s| s.side == side).expect("both sides are computed")
    }
}

/// One side of the computation: c_codim(F − Sym²E) restricted to Z or Y,
/// pushed to W and evaluated.
pub fn degeneracy_stage(
    inputs: &GeometricInputs,
    side: Side,
    evaluate: &dyn Fn(&ChowExpr) -> Result<Rational>,
) -> Result<StageReport> {
    let codim = inputs.codim;
    let r = inputs.rank;
    // E restricted to the locus is the pullback of M; the symbols c_i are
    // the classes of M^∨.
    let e = |i: usize| ChowExpr::chern(i).dualized();
    let (s1, s2, s3) = sym2_chern(&e(1), &e(2), &e(3), r);
    let sym_total = &(&(&ChowExpr::one() + &s1) + &s2) + &s3;
    let sym_inverse = total_chern_inverse(&sym_total, codim)?;

    let (quotient, line_c1, bundle_dual) = match side {
        Side::Z => (&inputs.a2, inputs.jet_c1(), inputs.jet_dual()),
        Side::Y => (&inputs.b2, inputs.b_c1(), inputs.b_dual()),
    };
    let mut q_total = ChowExpr::one();
    for c in quotient.iter().take(codim as usize) {
        q_total = &q_total + c;
    }
    // 0 → A₂ → F → U² → 0 with c_1(U) = c_1(J₁P) + c_1(Ker), and the same
    // shape over Y with B₂, V and B.
    let f_base = &q_total * &(&ChowExpr::one() + &line_c1.scale_int(2));
    let f_ker = q_total.scale_int(2);
    let without_ker = f_base.mul_truncated(&sym_inverse, codim).homogeneous(codim);
    let ker_coefficient = f_ker.mul_truncated(&sym_inverse, codim - 1).homogeneous(codim - 1);

    let porteous = inputs.tautological_dual().mul_truncated(&total_chern_inverse(&bundle_dual, r + 1)?, r + 1);
    let locus = porteous.homogeneous(r);
    let kernel_class = porteous.homogeneous(r + 1);

    let pushed_without_ker = (&without_ker * &locus).eta_coefficient();
    let pushed_ker = (-&(&ker_coefficient * &kernel_class)).eta_coefficient();
    let pushforward = &pushed_without_ker + &pushed_ker;
    let value = evaluate(&pushforward)?;
    Ok(StageReport {
        side,
        without_ker,
        ker_coefficient,
        locus,
        kernel_class,
        pushed_without_ker,
        pushed_ker,
        pushforward,
        value,
    })
}

/// Classes as recorded for the genus-23 computation.
pub mod recorded_g23 {
    use super::parse;
    use crate::chowring::ChowExpr;

    pub fn z_without_ker() -> ChowExpr {
        parse(
            "36*c2*theta - 148*c1^2*theta + 1554*eta*c1^2 - 85*c1*c2 - 32/3*theta^3 + 304*eta*theta^2 \
             - 1280*eta*theta*c1 + 130*c1^3 - 378*eta*c2 + 64*theta^2*c1 + 11*c3",
        )
    }

    pub fn z_locus() -> ChowExpr {
        parse("c6 - 6*eta*theta*c4 + 94*eta*c5 + 2*gamma*c5")
    }

    pub fn z_kernel() -> ChowExpr {
        parse("c7 - 6*eta*theta*c5 + 94*eta*c6 + 2*gamma*c6")
    }

    pub fn z_pushforward() -> ChowExpr {
        parse(
            "-780*c1^3*c4*theta + 12220*c1^3*c5 + 888*c1^2*c4*theta^2 - 13468*c1^2*c5*theta - 5402*c1^2*c6 \
             - 384*theta^3*c1*c4 + 5632*theta^2*c1*c5 + 510*theta*c1*c2*c4 + 4480*c1*c6*theta - 7990*c1*c2*c5 \
             + 2336*c1*c7 - 216*c2*c4*theta^2 + 3276*c2*c5*theta - 66*c3*c4*theta + 1034*c3*c5 + 1314*c2*c6 \
             + 64*c4*theta^4 - 2720/3*c5*theta^3 - 1072*c6*theta^2 - 1120*c7*theta",
        )
    }

    pub fn y_without_ker() -> ChowExpr {
        parse(
            "36*c2*theta - 148*c1^2*theta - 37*eta*c1^2 - 85*c1*c2 - 32/3*theta^3 - 8*eta*theta^2 \
             + 32*eta*theta*c1 + 130*c1^3 + 9*eta*c2 + 64*theta^2*c1 + 11*c3",
        )
    }

    /// As recorded; the degree of the last term does not match the others.
    pub fn y_locus() -> ChowExpr {
        parse("c6 - 2*eta*theta*c4 + 25*eta*c3 + gamma*c3")
    }

    /// As recorded.
    pub fn y_kernel() -> ChowExpr {
        parse("c7 + 13*c6*eta + c6*gamma - 2*c4*eta*theta")
    }

    /// −2c₂(B₂) − 2(r+2)²c₁² − 2(r+2)c₁(B₂)c₁ + r(r+3)c₁² + 2(r+3)c₂ at r = 6.
    pub fn y_ker_coefficient() -> ChowExpr {
        let b1 = parse("-4*theta - 2*gamma - 51*eta");
        let b2 = parse("8*theta^2 + 196*eta*theta + 8*theta*gamma");
        let c1 = ChowExpr::chern(1);
        let c1sq = &c1 * &c1;
        let r = 6i64;
        &(&(&(&b2.scale_int(-2) - &c1sq.scale_int(2 * (r + 2) * (r + 2))) - &(&b1 * &c1).scale_int(2 * (r + 2)))
            + &c1sq.scale_int(r * (r + 3)))
            + &ChowExpr::chern(2).scale_int(2 * (r + 3))
    }

    pub fn y_pushforward() -> ChowExpr {
        parse(
            "-260*c1^3*c4*theta + 3250*c1^3*c5 + 296*c1^2*c4*theta^2 - 3552*c1^2*c5*theta - 1887*c1^2*c6 \
             - 128*theta^3*c1*c4 + 1472*theta^2*c1*c5 + 170*theta*c1*c2*c4 + 1568*c1*c6*theta - 2125*c1*c2*c5 \
             + 816*c1*c7 - 72*c2*c4*theta^2 + 864*c2*c5*theta - 22*c3*c4*theta + 275*c3*c5 + 459*c2*c6 \
             + 64/3*c4*theta^4 - 704/3*c5*theta^3 - 376*c6*theta^2 - 392*c7*theta",
        )
    }

    pub const B1: i64 = 13_502_337_992;
    pub const ON_F0: i64 = 93_988_702_808;
}

/// 4/9·C(19,8)·(470749, 72725, 401951).
pub fn published_class_g23() -> DivisorClass {
    let k = &Rational::new(4, 9) * &binomial(19, 8);
    DivisorClass::new(&k * &Rational::from_integer(470749), &k * &Rational::from_integer(72725), &k * &Rational::from_integer(401951))
}

/// 2/3·C(19,8)·(17121, 2636, 14511).
pub fn published_class_g22() -> DivisorClass {
    let k = &Rational::new(2, 3) * &binomial(19, 8);
    DivisorClass::new(&k * &Rational::from_integer(17121), &k * &Rational::from_integer(2636), &k * &Rational::from_integer(14511))
}

pub fn binomial(n: u64, k: u64) -> Rational {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_bigint(acc)
}

fn poly(s: i64, coeffs: &[i64]) -> i64 {
    coeffs.iter().fold(0, |acc, &c| acc * s + c)
}

/// Closed forms recorded for the ρ = 1 family, all as functions of s.
pub mod recorded_rho1 {
    use super::*;

    const B0_POLY: [i64; 9] = [24, -28, 22, -5, 43, 112, 100, 50, 12];
    const A_POLY: [i64; 9] = [48, -56, 92, -90, 86, 324, 317, 182, 48];
    const B1_POLY: [i64; 7] = [24, -40, 18, 26, 30, 47, 18];
    const TAIL_POLY: [i64; 7] = [120, -140, -162, 67, 153, 94, 24];

    pub fn b1(s: i64) -> Rational {
        let c = castelnuovo_number(s as u32);
        &(&c * &Rational::new(2 * s * (s - 1) * (2 * s + 1), (2 * s - 1) * (3 * s + 1) * (3 * s + 2)))
            * &Rational::from_integer(poly(s, &B1_POLY))
    }

    pub fn b0(s: i64) -> Rational {
        let c = castelnuovo_number(s as u32);
        &(&c * &Rational::new(2 * (s - 1), 9 * (2 * s - 1) * (3 * s + 1) * (3 * s + 2)))
            * &Rational::from_integer(poly(s, &B0_POLY))
    }

    /// The λ-coefficient, times C_{2s+1}.
    pub fn a(s: i64) -> Rational {
        let c = castelnuovo_number(s as u32);
        &(&c * &Rational::new(2 * (s - 1), 3 * (3 * s + 2) * (2 * s - 1) * (3 * s + 1)))
            * &Rational::from_integer(poly(s, &A_POLY))
    }

    /// First displayed form of a/b₀.
    pub fn ratio(s: i64) -> Rational {
        Rational::new(3 * poly(s, &A_POLY), poly(s, &B0_POLY))
    }

    /// Second displayed form: 6 + 12/(g+1) minus a correction.
    pub fn ratio_second_form(s: i64) -> Rational {
        let g = 2 * s * s + s + 1;
        let tail = Rational::new(3 * poly(s, &TAIL_POLY), (2 * s * s + s + 1) * poly(s, &B0_POLY));
        &harris_morrison_bound(g as u32) - &tail
    }

    /// 6 + 12/(g+1) − a/b₀ written as a single fraction in s.
    pub fn ratio_gap(s: i64) -> Rational {
        let g = 2 * s * s + s + 1;
        Rational::new(
            9 * s * (s - 2) * (2 * s - 1) * (2 * s + 1) * (2 * s + 1) * (3 * s + 2),
            (g + 1) * poly(s, &B0_POLY),
        )
    }

    /// Intermediate polynomials of the F₁ and F₀ stages, in the variable
    /// names of [`ChowExpr`] with c_{2s−2}, c_{2s−1}, c_{2s}, c_{2s+1}.
    pub fn z_pushed_without_ker(s: i64) -> ChowExpr {
        let (th, c1, c2) = (ChowExpr::theta(), ChowExpr::chern(1), ChowExpr::chern(2));
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let th2 = &th * &th;
        let th3 = &th2 * &th;
        let c1sq = &c1 * &c1;
        let terms = [
            (&c(-2) * &th3).scale_int(-24),
            (&(&c(-1) * &c1) * &th).scale_int(-8 * s * (s + 1) * (4 * s + 3)),
            (&(&c(-2) * &c1sq) * &th).scale_int(-(6 * s * s + 15 * s + 12)),
            (&c(-1) * &th2).scale_int(8 * s * (4 * s + 3)),
            (&(&c(-2) * &c2) * &th).scale_int(3 * (2 * s + 3)),
            (&c(-1) * &c1sq).scale_int(s * (4 * s + 3) * (2 * s * s + 5 * s + 4)),
            (&c(-1) * &c2).scale_int(-s * (2 * s + 3) * (4 * s + 3)),
            (&(&c(-2) * &c1) * &th2).scale_int(24 * (s + 1)),
            (&c(0) * &c1).scale_int(-2 * (2 * s - 1) * (s + 1) * (s + 1)),
            (&c(0) * &th).scale_int(-(8 * s * s + 4 * s - 8)),
        ];
        terms.iter().fold(ChowExpr::zero(), |acc, t| &acc + t).scale_int(2)
    }

    pub fn z_pushed_ker(s: i64) -> ChowExpr {
        let (th, c1) = (ChowExpr::theta(), ChowExpr::chern(1));
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let terms = [
            c(1).scale_int((3 * s + 1) * (2 * s + 1)),
            (&c(-1) * &(&th * &th)).scale_int(-12),
            (&(&c(-1) * &c1) * &th).scale_int(6 * (s + 1)),
            (&c(0) * &th).scale_int(16 * s * s + 12 * s - 8),
            (&c(0) * &c1).scale_int(-2 * s * (s + 1) * (4 * s + 3)),
        ];
        terms.iter().fold(ChowExpr::zero(), |acc, t| &acc + t).scale_int(4)
    }

    pub fn y_pushed_without_ker(s: i64) -> ChowExpr {
        let (th, c1, c2) = (ChowExpr::theta(), ChowExpr::chern(1), ChowExpr::chern(2));
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let th2 = &th * &th;
        let c1sq = &c1 * &c1;
        let terms = [
            (&c(-2) * &(&th2 * &th)).scale_int(-16),
            (&(&c(-1) * &c1) * &th).scale_int(-16 * s * (s + 1) * (s + 1)),
            (&(&c(-2) * &c1sq) * &th).scale_int(-(4 * s * s + 10 * s + 8)),
            (&c(-1) * &th2).scale_int(16 * s * (s + 1)),
            (&(&c(-2) * &c2) * &th).scale_int(4 * s + 6),
            (&c(-1) * &c1sq).scale_int(2 * s * (s + 1) * (2 * s * s + 5 * s + 4)),
            (&c(-1) * &c2).scale_int(-2 * s * (s + 1) * (2 * s + 3)),
            (&(&c(-2) * &c1) * &th2).scale_int(16 * (s + 1)),
            (&c(0) * &c1).scale_int(-2 * (s + 1)),
            (&c(0) * &th).scale_int(4),
        ];
        terms.iter().fold(ChowExpr::zero(), |acc, t| &acc + t)
    }

    pub fn y_pushed_ker(s: i64) -> ChowExpr {
        let (th, c1) = (ChowExpr::theta(), ChowExpr::chern(1));
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let terms = [
            (&c(-1) * &(&th * &th)).scale_int(-16),
            (&(&c(-1) * &c1) * &th).scale_int(8 * (s + 1)),
            c(1).scale_int(2 * (2 * s + 1) * (2 * s + 1)),
            (&c(0) * &th).scale_int(16 * s * s + 16 * s - 8),
            (&c(0) * &c1).scale_int(-8 * s * (s + 1) * (s + 1)),
        ];
        terms.iter().fold(ChowExpr::zero(), |acc, t| &acc + t)
    }

    /// [Z] and [Y] in X × W.
    pub fn z_locus(s: i64) -> ChowExpr {
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let eth = &ChowExpr::eta() * &ChowExpr::theta();
        let lin = &ChowExpr::eta().scale_int(2 * s * (4 * s + 3)) + &ChowExpr::gamma().scale_int(2);
        &(&c(0) - &(&c(-2) * &eth).scale_int(6)) + &(&lin * &c(-1))
    }

    pub fn y_locus(s: i64) -> ChowExpr {
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let eth = &ChowExpr::eta() * &ChowExpr::theta();
        let lin = &ChowExpr::eta().scale_int(2 * s * (s + 1)) + &ChowExpr::gamma();
        &(&c(0) - &(&c(-2) * &eth).scale_int(2)) + &(&lin * &c(-1))
    }

    pub fn z_kernel(s: i64) -> ChowExpr {
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let eth = &ChowExpr::eta() * &ChowExpr::theta();
        let lin = &ChowExpr::eta().scale_int(2 * s * (4 * s + 3)) + &ChowExpr::gamma().scale_int(2);
        &(&c(1) - &(&c(-1) * &eth).scale_int(6)) + &(&lin * &c(0))
    }

    pub fn y_kernel(s: i64) -> ChowExpr {
        let c = |k: i64| ChowExpr::chern((2 * s + k) as usize);
        let eth = &ChowExpr::eta() * &ChowExpr::theta();
        let lin = &ChowExpr::eta().scale_int(2 * s * (s + 1)) + &ChowExpr::gamma();
        &(&c(1) - &(&c(-1) * &eth).scale_int(2)) + &(&lin * &c(0))
    }
}

/// The genus-23 class with every recorded intermediate checked.
pub fn run_g23() -> Result<PipelineReport> {
    use recorded_g23 as rec;
    let inputs = GeometricInputs::g23();
    let z = degeneracy_stage(&inputs, Side::Z, &chern_number_g22)?;
    let y = degeneracy_stage(&inputs, Side::Y, &chern_number_g22)?;
    let curves = TestCurveNumbers::new(23);
    // E and F are trivial along the elliptic pencil.
    let class = curves.solve(&y.value, &Rational::zero(), &z.value)?;
    let checks = vec![
        GoldenCheck::compare("Z/without-ker", &z.without_ker, &rec::z_without_ker()),
        GoldenCheck::compare("Z/locus", &z.locus, &rec::z_locus()),
        GoldenCheck::compare("Z/kernel", &z.kernel_class, &rec::z_kernel()),
        GoldenCheck::compare("Z/pushforward", &z.pushforward, &rec::z_pushforward()),
        GoldenCheck::compare("Y/without-ker", &y.without_ker, &rec::y_without_ker()),
        GoldenCheck::compare("Y/locus", &y.locus, &rec::y_locus()),
        GoldenCheck::compare("Y/kernel", &y.kernel_class, &rec::y_kernel()),
        GoldenCheck::compare("Y/ker-coefficient", &y.ker_coefficient, &rec::y_ker_coefficient()),
        GoldenCheck::compare("Y/pushforward", &y.pushforward, &rec::y_pushforward()),
        GoldenCheck::compare_value("b1", &class.b1, &Rational::from_integer(rec::B1)),
        GoldenCheck::compare_value("44b0-b1", &y.value, &Rational::from_integer(rec::ON_F0)),
    ];
    Ok(PipelineReport { genus: 23, class, on_f1: z.value.clone(), on_f0: y.value.clone(), stages: vec![z, y], checks })
}

/// The genus 2s²+s+1 class with every recorded intermediate checked.
pub fn run_rho1(s: u32) -> Result<PipelineReport> {
    use recorded_rho1 as rec;
    let inputs = GeometricInputs::rho1(s)?;
    let eval = |e: &ChowExpr| chern_number_general(s, e);
    let z = degeneracy_stage(&inputs, Side::Z, &eval)?;
    let y = degeneracy_stage(&inputs, Side::Y, &eval)?;
    let genus = 2 * s * s + s + 1;
    let class = TestCurveNumbers::new(genus).solve(&y.value, &Rational::zero(), &z.value)?;
    let si = s as i64;
    let checks = vec![
        GoldenCheck::compare("Z/locus", &z.locus, &rec::z_locus(si)),
        GoldenCheck::compare("Z/kernel", &z.kernel_class, &rec::z_kernel(si)),
        GoldenCheck::compare("Z/pushed-without-ker", &z.pushed_without_ker, &rec::z_pushed_without_ker(si)),
        GoldenCheck::compare("Z/pushed-ker", &z.pushed_ker, &rec::z_pushed_ker(si)),
        GoldenCheck::compare("Y/locus", &y.locus, &rec::y_locus(si)),
        GoldenCheck::compare("Y/kernel", &y.kernel_class, &rec::y_kernel(si)),
        GoldenCheck::compare("Y/pushed-without-ker", &y.pushed_without_ker, &rec::y_pushed_without_ker(si)),
        GoldenCheck::compare("Y/pushed-ker", &y.pushed_ker, &rec::y_pushed_ker(si)),
        GoldenCheck::compare_value("b1", &class.b1, &rec::b1(si)),
        GoldenCheck::compare_value("b0", &class.b0, &rec::b0(si)),
        GoldenCheck::compare_value("a", &class.a, &rec::a(si)),
        GoldenCheck::compare_value("a/b0", &class.slope()?, &rec::ratio(si)),
    ];
    Ok(PipelineReport { genus, class, on_f1: z.value.clone(), on_f0: y.value.clone(), stages: vec![z, y], checks })
}

pub fn virtual_class_g23() -> Result<DivisorClass> {
    Ok(run_g23()?.class)
}

pub fn virtual_class_rho1(s: u32) -> Result<DivisorClass> {
    Ok(run_rho1(s)?.class)
}

/// 6 + 12/(g+1).
pub fn harris_morrison_bound(g: u32) -> Rational {
    &Rational::from_integer(6) + &Rational::new(12, g as i64 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub g: u32,
    pub a: Rational,
    pub b0: Rational,
    pub b1: Rational,
    pub slope: Rational,
    /// Presentation only.
    pub approx: String,
    /// a/b₀ < 13/2.
    pub general_type: bool,
    pub bound: Rational,
    /// Sign of a/b₀ − (6 + 12/(g+1)).
    pub versus_bound: i32,
}

pub fn slope_report(dc: &DivisorClass, g: u32) -> Result<SlopeReport> {
    let slope = dc.slope()?;
    let bound = harris_morrison_bound(g);
    Ok(SlopeReport {
        g,
        a: dc.a.clone(),
        b0: dc.b0.clone(),
        b1: dc.b1.clone(),
        approx: slope.to_decimal(6),
        general_type: slope < Rational::new(13, 2),
        versus_bound: (&slope - &bound).signum(),
        bound,
        slope,
    })
}

/// (13, −2, −3, −2, …, −2): coefficients of λ, δ₀, …, δ_{⌊g/2⌋} in K.
pub fn canonical_class_coefficients(g: u32) -> Result<Vec<i64>> {
    if g < 3 {
        return Err(Error::Parameter(format!("g = {g}; need g ≥ 3")));
    }
    let mut v = vec![13, -2, -3];
    v.resize(g as usize / 2 + 2, -2);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_class() {
        assert_eq!(canonical_class_coefficients(3).unwrap(), vec![13, -2, -3]);
        assert_eq!(canonical_class_coefficients(4).unwrap(), vec![13, -2, -3, -2]);
        let k23 = canonical_class_coefficients(23).unwrap();
        assert_eq!(k23.len(), 13);
        assert!(k23[3..].iter().all(|&c| c == -2));
        assert!(canonical_class_coefficients(2).is_err());
    }

    #[test]
    fn test_curves_invert() {
        let dc = DivisorClass::new(Rational::from_integer(17), Rational::from_integer(3), Rational::from_integer(5));
        let t = TestCurveNumbers::new(11);
        let back = t
            .solve(&TestCurveNumbers::pair(&t.f0, &dc), &TestCurveNumbers::pair(&t.f_ell, &dc), &TestCurveNumbers::pair(&t.f1, &dc))
            .unwrap();
        assert_eq!(back, dc);
    }

    #[test]
    fn jet_and_b_inverses() {
        let g = GeometricInputs::g23();
        assert_eq!(total_chern_inverse(&g.jet_dual(), 3).unwrap(), parse("1 + 94*eta + 2*gamma - 6*eta*theta"));
        assert_eq!(total_chern_inverse(&g.b_dual(), 3).unwrap(), parse("1 + 25*eta + gamma - 2*eta*theta"));
    }

    #[test]
    fn gap_formula_matches_ratio() {
        for s in 2..=8 {
            let g = (2 * s * s + s + 1) as u32;
            assert_eq!(&harris_morrison_bound(g) - &recorded_rho1::ratio_gap(s), recorded_rho1::ratio(s));
        }
    }

    #[test]
    fn slope_needs_b0() {
        let dc = DivisorClass::new(Rational::one(), Rational::zero(), Rational::one());
        assert!(slope_report(&dc, 5).is_err());
    }
}
