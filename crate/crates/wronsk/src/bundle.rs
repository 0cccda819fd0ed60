//! Projectively flat bundles on the projective line via two-chart data.
//!
//! The sphere is covered by the chart at zero (coordinate `z`) and the chart
//! at infinity (coordinate `w = 1/z`). A rank-n projectively flat bundle is
//! presented by its transition on the overlap,
//!
//! ```text
//! s_0(z) = c * z^k * T * s_inf(1/z),
//! ```
//!
//! with `c` a nonzero rational scalar, `k` an integer and `T` a constant
//! invertible matrix: the invertible holomorphic scalars on the punctured
//! plane that are rational are exactly `c*z^k`. With this convention the
//! line bundle with transition `z^k` has degree `k`, and the canonical
//! bundle of the sphere has degree `-2`.
//!
//! A meromorphic section is stored by its chart-zero component tuple; the
//! chart-infinity tuple is always derived by [`section_transfer`]. Wronskians
//! in the infinity chart are computed natively in `w` (differentiating with
//! respect to `w`), never by pushing chain-rule factors around by hand.
//!
//! Everything downstream — the global Wronskian divisor, the Wronskian line
//! bundle degree, the determinant-twist degree relation, the first-Chern
//! cocycle and the coboundary certificate — is verified as an identity of
//! rational functions or rational matrices, which sidesteps managing open
//! sets: a meromorphic identity on the overlap holds exactly or not at all.

use std::fmt;

use serde_json::{json, Value};

use crate::divisor::{divisor_of, Divisor};
use crate::error::{Error, Result};
use crate::ode::ode_coefficients;
use crate::ratfunc::{rat_int, rat_to_string, Mobius, Poly, Rat, RatFunc};
use crate::wronskian::{is_generic, quotient, wronskian_det, wronskian_matrix, RatMatrix, VecSection};

/// A projectively flat bundle on the sphere: transition `c * z^k * T` from
/// the infinity chart to the zero chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFBundle {
    rank: usize,
    exponent: i64,
    scalar: Rat,
    frame: RatMatrix,
}

impl PFBundle {
    /// Validates `rank >= 1`, `c != 0`, `T` constant square invertible.
    pub fn new(rank: usize, exponent: i64, scalar: Rat, frame: Vec<Vec<Rat>>) -> Result<PFBundle> {
        use num::Zero;
        if rank == 0 {
            return Err(Error::InvalidBundle("rank must be at least 1".into()));
        }
        if scalar.is_zero() {
            return Err(Error::InvalidBundle("scalar c must be nonzero".into()));
        }
        if frame.len() != rank || frame.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidBundle(format!(
                "T must be {rank}x{rank}"
            )));
        }
        let frame = RatMatrix::from_const(frame)?;
        if frame.det().expect("square").is_zero() {
            return Err(Error::InvalidBundle("T must be invertible".into()));
        }
        Ok(PFBundle {
            rank,
            exponent,
            scalar,
            frame,
        })
    }

    /// The trivial bundle of a given rank: `k = 0`, `c = 1`, `T = Id`.
    pub fn trivial(rank: usize) -> PFBundle {
        PFBundle::new(rank, 0, rat_int(1), identity_rows(rank)).expect("valid data")
    }

    /// `O(k)` summed with itself `rank` times: `c = 1`, `T = Id`.
    pub fn sum_of_line_bundles(rank: usize, k: i64) -> PFBundle {
        PFBundle::new(rank, k, rat_int(1), identity_rows(rank)).expect("valid data")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The exponent `k` in the transition scalar `c * z^k`.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn frame(&self) -> &RatMatrix {
        &self.frame
    }

    /// Tensoring with the degree-d line bundle replaces `k` by `k + d`.
    pub fn twist(&self, d: i64) -> PFBundle {
        PFBundle {
            rank: self.rank,
            exponent: self.exponent + d,
            scalar: self.scalar.clone(),
            frame: self.frame.clone(),
        }
    }

    /// Degree of the determinant line bundle: the determinant transition is
    /// `c^n * z^(n k) * det T`, a scalar transition of degree `n k`.
    pub fn det_degree(&self) -> i64 {
        self.rank as i64 * self.exponent
    }

    /// Attaches a chart-zero component tuple of matching length.
    pub fn section(&self, chart_zero: VecSection) -> Result<Section> {
        if chart_zero.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "rank-{} bundle, {}-component section",
                self.rank,
                chart_zero.len()
            )));
        }
        Ok(Section {
            bundle: self.clone(),
            chart_zero,
        })
    }

    /// Parses the textual format `rank=2 k=1 c=3 T=[[1,1],[0,1]]`.
    pub fn parse_spec(text: &str) -> Result<PFBundle> {
        let mut rank: Option<usize> = None;
        let mut exponent: Option<i64> = None;
        let mut scalar: Option<Rat> = None;
        let mut frame: Option<Vec<Vec<Rat>>> = None;
        let bad = |msg: &str| Error::InvalidBundle(msg.to_string());

        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let key_start = i;
            while i < chars.len() && chars[i] != '=' {
                i += 1;
            }
            if i >= chars.len() {
                return Err(bad("expected key=value"));
            }
            let key: String = chars[key_start..i].iter().collect::<String>().trim().to_string();
            i += 1; // '='
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            let value: String = if i < chars.len() && chars[i] == '[' {
                let start = i;
                let mut depth = 0;
                while i < chars.len() {
                    match chars[i] {
                        '[' => depth += 1,
                        ']' => {
                            depth -= 1;
                            if depth == 0 {
                                i += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    i += 1;
                }
                if depth != 0 {
                    return Err(bad("unbalanced brackets in T"));
                }
                chars[start..i].iter().collect()
            } else {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() {
                    i += 1;
                }
                chars[start..i].iter().collect()
            };

            match key.as_str() {
                "rank" => {
                    rank = Some(value.parse().map_err(|_| bad("rank must be a positive integer"))?)
                }
                "k" => {
                    exponent = Some(value.parse().map_err(|_| bad("k must be an integer"))?)
                }
                "c" => scalar = Some(parse_rat_text(&value).ok_or_else(|| bad("c must be rational"))?),
                "T" => frame = Some(parse_matrix_text(&value).ok_or_else(|| bad("bad matrix T"))?),
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }

        let rank = rank.ok_or_else(|| bad("missing rank"))?;
        let exponent = exponent.ok_or_else(|| bad("missing k"))?;
        let scalar = scalar.ok_or_else(|| bad("missing c"))?;
        let frame = frame.ok_or_else(|| bad("missing T"))?;
        PFBundle::new(rank, exponent, scalar, frame)
    }

    /// The textual spec format, parseable by [`PFBundle::parse_spec`].
    pub fn to_spec_string(&self) -> String {
        let rows: Vec<String> = (0..self.rank)
            .map(|i| {
                let entries: Vec<String> = (0..self.rank)
                    .map(|j| {
                        let value = self.frame.at(i, j).as_poly().expect("constant").coeff(0);
                        rat_to_string(&value)
                    })
                    .collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!(
            "rank={} k={} c={} T=[{}]",
            self.rank,
            self.exponent,
            rat_to_string(&self.scalar),
            rows.join(",")
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "k": self.exponent,
            "c": rat_to_string(&self.scalar),
            "T": self.frame.to_json(),
        })
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| rat_int((i == j) as i64)).collect())
        .collect()
}

fn parse_rat_text(s: &str) -> Option<Rat> {
    use num::BigInt;
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            use num::Zero;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

fn parse_matrix_text(s: &str) -> Option<Vec<Vec<Rat>>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s.strip_prefix("[[")?.strip_suffix("]]")?;
    inner
        .split("],[")
        .map(|row| row.split(',').map(parse_rat_text).collect::<Option<Vec<_>>>())
        .collect()
}

/// A meromorphic section of a bundle, stored by its chart-zero components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    bundle: PFBundle,
    chart_zero: VecSection,
}

impl Section {
    pub fn bundle(&self) -> &PFBundle {
        &self.bundle
    }

    pub fn chart_zero(&self) -> &VecSection {
        &self.chart_zero
    }
}

/// The chart-infinity component tuple, as rational functions of `w`:
/// `A_inf(w) = (1/c) * w^k * T^{-1} * A_0(1/w)`.
pub fn section_transfer(s: &Section) -> VecSection {
    let b = &s.bundle;
    let inv = Mobius::inversion().as_ratfunc();
    let substituted = s
        .chart_zero
        .compose(&inv)
        .expect("substituting 1/w never produces a zero denominator");
    let mixed = substituted
        .apply_matrix_left(&b.frame.inverse().expect("frame is invertible"))
        .expect("rank checked at construction");
    let c_inv = RatFunc::constant(rat_int(1) / b.scalar.clone());
    let wk = var_power(b.exponent);
    mixed.scale(&(&c_inv * &wk))
}

/// `z^k` as a rational function, for any sign of `k`.
fn var_power(k: i64) -> RatFunc {
    if k >= 0 {
        RatFunc::from_poly(Poly::monomial(rat_int(1), k as usize))
    } else {
        RatFunc::new(Poly::one(), Poly::monomial(rat_int(1), (-k) as usize)).expect("nonzero")
    }
}

/// Genericity of a section is computed in chart zero; the infinity chart
/// agrees because the transfer is a scalar times a constant mixing after a
/// coordinate change, none of which can kill a Wronskian.
pub fn is_generic_section(s: &Section) -> bool {
    is_generic(&s.chart_zero)
}

/// The globally defined divisor of the Wronskian of a generic section:
/// finite part from the chart-zero Wronskian determinant, multiplicity at
/// infinity read off as the order at `w = 0` of the chart-infinity
/// Wronskian determinant.
pub fn global_wronskian_divisor(s: &Section) -> Result<Divisor> {
    let w0 = wronskian_det(&s.chart_zero);
    if w0.is_zero() {
        return Err(Error::NotGeneric);
    }
    let w_inf = wronskian_det(&section_transfer(s));
    if w_inf.is_zero() {
        return Err(Error::NotGeneric);
    }
    let finite = divisor_of(&w0)?.finite_part().to_vec();
    Ok(Divisor::from_parts(
        finite,
        w_inf.ord_at_zero().expect("nonzero"),
    ))
}

/// The transition scalar of the Wronskian line bundle carried by a generic
/// section: `w(A_0)(z) / w(A_inf)(1/z)`.
pub fn wronskian_transition(s: &Section) -> Result<RatFunc> {
    let w0 = wronskian_det(&s.chart_zero);
    if w0.is_zero() {
        return Err(Error::NotGeneric);
    }
    let w_inf = wronskian_det(&section_transfer(s));
    let inv = Mobius::inversion().as_ratfunc();
    w0.div(&w_inf.compose(&inv)?)
}

/// Degree of the Wronskian line bundle, with the section-independence
/// cross-checks that make it well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleDegree {
    pub degree: i64,
    pub probes_used: usize,
}

/// Computes `deg w(V)` from probe sections.
///
/// Uses the first generic probe and then asserts, for every pair of generic
/// probes, that the degrees agree and that the difference of global divisors
/// is the divisor of `det(A/B)` — the principality witness. A disagreement
/// is an implementation bug and surfaces as a hard error.
pub fn wronskian_line_bundle_degree(
    v: &PFBundle,
    probes: &[VecSection],
) -> Result<LineBundleDegree> {
    let sections: Vec<Section> = probes
        .iter()
        .filter(|p| is_generic(p))
        .map(|p| v.section(p.clone()))
        .collect::<Result<Vec<_>>>()?;
    if sections.is_empty() {
        return Err(Error::NoGenericProbe);
    }
    let divisors: Vec<Divisor> = sections
        .iter()
        .map(global_wronskian_divisor)
        .collect::<Result<Vec<_>>>()?;
    let degree = divisors[0].degree();
    for i in 0..sections.len() {
        for j in i + 1..sections.len() {
            if divisors[i].degree() != divisors[j].degree() {
                return Err(Error::ProbeDisagreement(format!(
                    "probe {i} gives degree {} but probe {j} gives {}",
                    divisors[i].degree(),
                    divisors[j].degree()
                )));
            }
            let q = quotient(&sections[i].chart_zero, &sections[j].chart_zero)?;
            let det_q = q.det()?;
            let difference = divisors[i].combine(&divisors[j], -1);
            if difference != divisor_of(&det_q)? {
                return Err(Error::ProbeDisagreement(format!(
                    "difference of global divisors of probes {i}, {j} is not div(det(A/B))"
                )));
            }
        }
    }
    Ok(LineBundleDegree {
        degree,
        probes_used: sections.len(),
    })
}

/// Degree-level comparison of the Wronskian line bundle against the
/// determinant bundle plus the canonical contribution.
#[derive(Clone, Debug)]
pub struct DegreeRelationReport {
    pub rank: usize,
    pub exponent: i64,
    pub deg_wronskian: i64,
    pub deg_determinant: i64,
    /// `(n(n-1)/2) * deg K` with `deg K = -2` on the sphere.
    pub canonical_term: i64,
    pub equal: bool,
    pub probes_used: usize,
}

/// Degree of the canonical bundle of the sphere.
pub const CANONICAL_DEGREE: i64 = -2;

impl DegreeRelationReport {
    /// Scope statement carried by every report.
    pub fn scope_note() -> &'static str {
        "Verdict computed at degree level for bundles on the projective line \
         presented by two-chart transition data c*z^k*T. On the projective \
         line the degree determines a line bundle up to isomorphism, so the \
         degree-level verdict settles the comparison there; nothing is \
         asserted for other Riemann surfaces or for finer trivializing covers."
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "k": self.exponent,
            "deg_w": self.deg_wronskian,
            "deg_det": self.deg_determinant,
            "canonical_term": self.canonical_term,
            "verdict": if self.equal { "equal" } else { "unequal" },
            "probes_used": self.probes_used,
            "scope": Self::scope_note(),
        })
    }
}

impl fmt::Display for DegreeRelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank            : {}", self.rank)?;
        writeln!(f, "k               : {}", self.exponent)?;
        writeln!(f, "deg w(V)        : {}", self.deg_wronskian)?;
        writeln!(f, "deg det(V)      : {}", self.deg_determinant)?;
        writeln!(
            f,
            "canonical term  : {} (= n(n-1)/2 * deg K, deg K = {})",
            self.canonical_term, CANONICAL_DEGREE
        )?;
        writeln!(
            f,
            "verdict         : deg w(V) {} deg det(V) + canonical term",
            if self.equal { "=" } else { "!=" }
        )?;
        writeln!(f, "probes used     : {}", self.probes_used)?;
        write!(f, "note: {}", Self::scope_note())
    }
}

/// Compares `deg w(V)` with `deg det(V) + (n(n-1)/2) * deg K` on probe
/// sections of `V`.
pub fn degree_relation_report(v: &PFBundle, probes: &[VecSection]) -> Result<DegreeRelationReport> {
    let lb = wronskian_line_bundle_degree(v, probes)?;
    let n = v.rank() as i64;
    let canonical_term = n * (n - 1) / 2 * CANONICAL_DEGREE;
    let deg_det = v.det_degree();
    Ok(DegreeRelationReport {
        rank: v.rank(),
        exponent: v.exponent(),
        deg_wronskian: lb.degree,
        deg_determinant: deg_det,
        canonical_term,
        equal: lb.degree == deg_det + canonical_term,
        probes_used: lb.probes_used,
    })
}

/// Certificate for the twist law `deg w(V (x) O(d)) = deg w(V) + n*d`.
#[derive(Clone, Debug)]
pub struct TwistCertificate {
    pub rank: usize,
    pub twist: i64,
    pub base_degree: i64,
    pub twisted_degree: i64,
    pub expected_twisted_degree: i64,
}

impl TwistCertificate {
    pub fn passes(&self) -> bool {
        self.twisted_degree == self.expected_twisted_degree
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "twist": self.twist,
            "deg_w_base": self.base_degree,
            "deg_w_twisted": self.twisted_degree,
            "deg_w_expected": self.expected_twisted_degree,
            "passes": self.passes(),
        })
    }
}

/// Twists `V` by `O(d)` and recomputes the Wronskian line bundle degree
/// directly; the same chart-zero probes serve on the twisted bundle.
pub fn tensor_twist_degree_check(
    v: &PFBundle,
    d: i64,
    probes: &[VecSection],
) -> Result<TwistCertificate> {
    let base = wronskian_line_bundle_degree(v, probes)?;
    let twisted = wronskian_line_bundle_degree(&v.twist(d), probes)?;
    Ok(TwistCertificate {
        rank: v.rank(),
        twist: d,
        base_degree: base.degree,
        twisted_degree: twisted.degree,
        expected_twisted_degree: base.degree + v.rank() as i64 * d,
    })
}

/// The two-chart cocycle of the Wronskian vector bundle carried by a
/// generic section: `phi = W(A_inf)(1/z)^{-1} * W(A_0)(z)`, where the
/// chart-infinity Wronskian is computed natively in `w` and then evaluated
/// at `w = 1/z`. Its determinant is the Wronskian line bundle transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WvbCocycle {
    pub phi: RatMatrix,
}

pub fn wvb_cocycle(s: &Section) -> Result<WvbCocycle> {
    if !is_generic_section(s) {
        return Err(Error::NotGeneric);
    }
    let inv = Mobius::inversion().as_ratfunc();
    let w_inf_at_z = wronskian_matrix(&section_transfer(s)).compose(&inv)?;
    let phi = w_inf_at_z.inverse()?.mul(&wronskian_matrix(&s.chart_zero))?;
    Ok(WvbCocycle { phi })
}

/// A meromorphic 1-form presented in a named chart of the sphere: the
/// coefficient of `dz` on the chart at zero, of `dw` on the chart at
/// infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Zero,
    Infinity,
}

impl Chart {
    pub fn coordinate(self) -> &'static str {
        match self {
            Chart::Zero => "z",
            Chart::Infinity => "w",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeroForm {
    pub chart: Chart,
    pub coeff: RatFunc,
}

impl MeroForm {
    pub fn new(chart: Chart, coeff: RatFunc) -> MeroForm {
        MeroForm { chart, coeff }
    }

    /// `d log r = (r'/r) d(coordinate)` in the given chart.
    pub fn d_log(r: &RatFunc, chart: Chart) -> Result<MeroForm> {
        if r.is_zero() {
            return Err(Error::ZeroRatFunc);
        }
        Ok(MeroForm {
            chart,
            coeff: r.derivative().div(r)?,
        })
    }

    /// Pullback along a coordinate change `map` into `target`: the
    /// coefficient transforms by `coeff -> (coeff . map) * map'`.
    pub fn pullback_via(&self, map: &RatFunc, target: Chart) -> Result<MeroForm> {
        Ok(MeroForm {
            chart: target,
            coeff: &self.coeff.compose(map)? * &map.derivative(),
        })
    }

    /// Express a chart-infinity form on the chart at zero via `w = 1/z`.
    pub fn to_chart_zero(&self) -> Result<MeroForm> {
        match self.chart {
            Chart::Zero => Ok(self.clone()),
            Chart::Infinity => self.pullback_via(&Mobius::inversion().as_ratfunc(), Chart::Zero),
        }
    }
}

impl fmt::Display for MeroForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.chart.coordinate();
        write!(f, "({}) d{}", self.coeff.to_string_var(var), var)
    }
}

/// Certificate for the first-Chern cocycle of the Wronskian line bundle:
/// on the overlap, `d log lambda = p1_zero dz - (pullback of p1_inf dw)`,
/// where the `p1`s are the leading ODE coefficients in the two charts and
/// `lambda` is the Wronskian transition.
#[derive(Clone, Debug)]
pub struct ChernCertificate {
    pub p1_zero: MeroForm,
    pub p1_inf: MeroForm,
    pub p1_inf_on_chart_zero: MeroForm,
    pub lambda: RatFunc,
    pub dlog_lambda: MeroForm,
    /// `p1_zero - pullback(p1_inf) - d log lambda`, as a chart-zero form
    /// coefficient; identically zero on a passing certificate.
    pub residual: RatFunc,
}

impl ChernCertificate {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p1_zero": self.p1_zero.to_string(),
            "p1_inf": self.p1_inf.to_string(),
            "p1_inf_on_chart_zero": self.p1_inf_on_chart_zero.to_string(),
            "lambda": self.lambda.to_string(),
            "dlog_lambda": self.dlog_lambda.to_string(),
            "residual": self.residual.to_string(),
            "passes": self.passes(),
        })
    }
}

pub fn chern_cocycle_check(s: &Section) -> Result<ChernCertificate> {
    if !is_generic_section(s) {
        return Err(Error::NotGeneric);
    }
    let p1_zero = MeroForm::new(
        Chart::Zero,
        ode_coefficients(&s.chart_zero)?.p(1).clone(),
    );
    let a_inf = section_transfer(s);
    let p1_inf = MeroForm::new(Chart::Infinity, ode_coefficients(&a_inf)?.p(1).clone());
    let pulled = p1_inf.to_chart_zero()?;
    let lambda = wronskian_transition(s)?;
    let dlog_lambda = MeroForm::d_log(&lambda, Chart::Zero)?;
    let residual = &(&p1_zero.coeff - &pulled.coeff) - &dlog_lambda.coeff;
    Ok(ChernCertificate {
        p1_zero,
        p1_inf,
        p1_inf_on_chart_zero: pulled,
        lambda,
        dlog_lambda,
        residual,
    })
}

/// Certificate for the coboundary relating the Wronskian vector bundle
/// cocycles of two sections whose global divisors differ by `div(f^n)`.
///
/// The conjugation identity
///
/// ```text
/// Phi^A = (fB/A)_inf * Phi^B * (A/fB)_0
/// ```
///
/// is an identity of matrices on the overlap, so all four factors must be
/// expressed in one coordinate. The two quotient conjugators are
/// coordinate-independent and are computed chart-natively (the infinity one
/// in `w`, then evaluated at `w = 1/z`); the overlap cocycles `Phi^A`,
/// `Phi^B` are the Wronskian quotients of the chart-zero tuple by the
/// chart-infinity tuple re-expressed as functions of `z`.
#[derive(Clone, Debug)]
pub struct CoboundaryCertificate {
    /// Overlap cocycle of the first section (left-hand side).
    pub lhs: RatMatrix,
    /// Conjugated overlap cocycle of the second section (right-hand side).
    pub rhs: RatMatrix,
    pub conjugator_left: RatMatrix,
    pub conjugator_right: RatMatrix,
    pub witness: RatFunc,
    pub residual: RatMatrix,
    /// Determinant of the native cocycle of each section equals its
    /// Wronskian line bundle transition.
    pub det_match_a: bool,
    pub det_match_b: bool,
}

impl CoboundaryCertificate {
    pub fn passes(&self) -> bool {
        self.residual.is_zero() && self.det_match_a && self.det_match_b
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "conjugator_left": self.conjugator_left.to_json(),
            "conjugator_right": self.conjugator_right.to_json(),
            "witness": self.witness.to_string(),
            "residual_zero": self.residual.is_zero(),
            "det_match": self.det_match_a && self.det_match_b,
            "passes": self.passes(),
        })
    }
}

/// Validates `div(A) - div(B) = div(f^n)` globally and checks the
/// coboundary identity. The caller supplies `f`; use
/// [`crate::divisor::Divisor::nth_power_witness`] on the divisor difference
/// to search for one.
pub fn coboundary_check(
    sa: &Section,
    sb: &Section,
    f: &RatFunc,
) -> Result<CoboundaryCertificate> {
    if sa.bundle != sb.bundle {
        return Err(Error::InvalidBundle(
            "coboundary check needs two sections of the same bundle".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroRatFunc);
    }
    let n = sa.bundle.rank();
    let div_a = global_wronskian_divisor(sa)?;
    let div_b = global_wronskian_divisor(sb)?;
    let difference = div_a.combine(&div_b, -1);
    let expected = divisor_of(f)?.scale(n as i64);
    if difference != expected {
        return Err(Error::DivisorMismatch(format!(
            "div(A) - div(B) = {difference}, but div(f^{n}) = {expected}"
        )));
    }

    let inv = Mobius::inversion().as_ratfunc();
    let a0 = &sa.chart_zero;
    let b0 = &sb.chart_zero;
    let a_inf = section_transfer(sa);
    let b_inf = section_transfer(sb);

    // Chart-native conjugators. In the infinity chart the scalar is f(1/w).
    let f_inf = f.compose(&inv)?;
    let conjugator_left = quotient(&b_inf.scale(&f_inf), &a_inf)?.compose(&inv)?;
    let conjugator_right = quotient(a0, &b0.scale(f))?;

    // Overlap cocycles in the common coordinate z.
    let a_tilde = a_inf.compose(&inv)?;
    let b_tilde = b_inf.compose(&inv)?;
    let lhs = quotient(a0, &a_tilde)?;
    let phi_b = quotient(b0, &b_tilde)?;

    let rhs = conjugator_left.mul(&phi_b)?.mul(&conjugator_right)?;
    let residual = lhs.sub(&rhs)?;

    let det_match = |s: &Section| -> Result<bool> {
        let native = wvb_cocycle(s)?;
        Ok(native.phi.det()? == wronskian_transition(s)?)
    };

    Ok(CoboundaryCertificate {
        lhs,
        rhs,
        conjugator_left,
        conjugator_right,
        witness: f.clone(),
        residual,
        det_match_a: det_match(sa)?,
        det_match_b: det_match(sb)?,
    })
}

/// Restricts a divisor over one chart to the overlap (dropping the chart
/// origin and infinity) and rewrites it in the other chart's coordinate by
/// reversing each basis polynomial. Used to check that the two chart-local
/// divisors of a global Wronskian agree where the charts overlap.
pub fn overlap_divisor_inverted(d: &Divisor) -> Divisor {
    let mut finite = Vec::new();
    for (g, e) in d.finite_part() {
        let (_, h) = crate::ratfunc::split_power_of_z(g);
        if h.is_constant() {
            continue; // the basis element was exactly the chart origin
        }
        finite.push((reverse_poly(&h), *e));
    }
    Divisor::from_parts(finite, 0)
}

/// Coefficient reversal `h(z) -> z^deg(h) h(1/z)`, normalized monic;
/// requires `h(0) != 0` so the degree is preserved.
fn reverse_poly(h: &Poly) -> Poly {
    let mut coeffs: Vec<Rat> = h.coeffs().to_vec();
    coeffs.reverse();
    Poly::from_coeffs(coeffs).monic().0
}
