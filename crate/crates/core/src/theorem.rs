//! Executable checks of the structure theory of fixed hypersurfaces: smoothness,
//! `Fix(f) = V(h)`, irreducibility, order versus specialness, and ruled
//! witnesses for uniruledness. [`full_report`] aggregates all of them.
//!
//! A failed verdict on a certified automorphism is counterexample-class: the
//! statements are theorems, so a failure means a kernel bug.

use num_traits::{One, Zero};

use crate::automorphism::{
    detect_order, fixed_hypersurface_part, invariance_constant, jacobian_and_classify, Automorphism, FixedPart,
    Order, Specialness, DEFAULT_ITER_BOUND, DEFAULT_ORDER_DEGREE_CAP, DEFAULT_ROOT_OF_UNITY_BOUND,
};
use crate::error::{Error, Result};
use crate::factor::{irreducible_multivariate, Irreducibility, DEFAULT_DEGREE_CAP};
use crate::groebner::{is_trivial_ideal, varieties_equal};
use crate::poly::{is_squarefree, PolyMatrix, Polynomial, Rational, TermOrder};
use crate::random::Sampler;

pub const DEFAULT_SEED: u64 = 1;
pub const WITNESS_ATTEMPTS: u32 = 5;
pub const FIBER_SHIFT_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothMode {
    /// No point of `{h = 0}` where the gradient vanishes.
    Smooth,
    /// The gradient vanishes nowhere on affine space.
    SuperSmooth,
}

/// Decides smoothness of `{h = 0}` over the algebraic closure by testing
/// whether `(h, ∇h)` (or `(∇h)` alone) generates the unit ideal.
pub fn check_smooth(h: &Polynomial, mode: SmoothMode) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::Domain("smoothness of the zero polynomial".into()));
    }
    if !is_squarefree(h) {
        return Err(Error::Contract(format!("smoothness needs a squarefree equation, got {h}")));
    }
    let mut gens = h.gradient();
    if mode == SmoothMode::Smooth {
        gens.push(h.clone());
    }
    Ok(is_trivial_ideal(&gens, &TermOrder::grevlex()))
}

/// Whether `Fix(f)` is exactly the hypersurface part; `None` when there is
/// no hypersurface part.
pub fn check_fix_equals_hypersurface(f: &Automorphism) -> Option<bool> {
    match fixed_hypersurface_part(f.forward()) {
        FixedPart::Hypersurface(h) => {
            let gens = f.forward().fixed_ideal_generators();
            Some(varieties_equal(&gens, &[h], &TermOrder::grevlex()))
        }
        _ => None,
    }
}

/// A family of rational curves `t ↦ psi(t, s)` on `{target = 0}`. The first
/// parameter is the curve parameter `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuledWitness {
    pub target: Polynomial,
    pub psi: Vec<Polynomial>,
}

impl RuledWitness {
    pub fn new(target: Polynomial, psi: Vec<Polynomial>) -> Result<Self> {
        let n = target.nvars();
        if psi.len() != n {
            return Err(Error::Shape(format!("witness has {} components for {n} variables", psi.len())));
        }
        let k = psi.first().map_or(0, Polynomial::nvars);
        if k == 0 {
            return Err(Error::Shape("witness needs at least one parameter".into()));
        }
        if psi.iter().any(|c| c.nvars() != k) {
            return Err(Error::Shape("witness components use different parameter counts".into()));
        }
        Ok(RuledWitness { target, psi })
    }

    pub fn nparams(&self) -> usize {
        self.psi[0].nvars()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    /// `target ∘ psi = 0` symbolically.
    pub image_in_target: bool,
    pub nonconstant_in_t: bool,
    /// The parameter Jacobian reached rank `n - 1` at a random point. This
    /// clause is probabilistic.
    pub dominant: bool,
    /// Random parameter points tried for the rank test.
    pub attempts: u32,
}

impl WitnessCheck {
    pub fn verified(&self) -> bool {
        self.image_in_target && self.nonconstant_in_t && self.dominant
    }
}

pub fn verify_ruled_witness(w: &RuledWitness, seed: u64) -> Result<WitnessCheck> {
    let n = w.target.nvars();
    if w.psi.len() != n {
        return Err(Error::Shape(format!("witness has {} components for {n} variables", w.psi.len())));
    }
    let image_in_target = w.target.compose(&w.psi)?.is_zero();
    let nonconstant_in_t = w.psi.iter().any(|c| c.contains_var(0));
    let jac = PolyMatrix::jacobian(&w.psi)?;
    let mut dominant = false;
    let mut attempts = 0;
    while attempts < WITNESS_ATTEMPTS && !dominant {
        let mut sampler = Sampler::new(seed.wrapping_add(u64::from(attempts)));
        let point = sampler.point(w.nparams());
        attempts += 1;
        dominant = jac.evaluate(&point).rank() + 1 == n;
    }
    Ok(WitnessCheck { image_in_target, nonconstant_in_t, dominant, attempts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    /// Non-special: a fixed hypersurface is smooth, irreducible, equal to
    /// `Fix(f)`, and `h ∘ f = λ h`.
    NonspecialFixedHypersurface,
    /// Non-special of infinite order with `λ` of infinite order: the fixed
    /// hypersurface is super-smooth.
    NonspecialSupersmooth,
    /// Special non-identity, or infinite order with `λ` a root of unity:
    /// every fixed hypersurface is uniruled.
    FixedHypersurfaceUniruled,
    /// Finite order `m > 1` with a fixed hypersurface forces non-special.
    FiniteOrderNonspecial,
    /// A singular fixed hypersurface forces special.
    SingularImpliesSpecial,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::NonspecialFixedHypersurface,
        TheoremId::NonspecialSupersmooth,
        TheoremId::FixedHypersurfaceUniruled,
        TheoremId::FiniteOrderNonspecial,
        TheoremId::SingularImpliesSpecial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::NonspecialFixedHypersurface => "nonspecial-fixed-hypersurface",
            TheoremId::NonspecialSupersmooth => "nonspecial-supersmooth",
            TheoremId::FixedHypersurfaceUniruled => "fixed-hypersurface-uniruled",
            TheoremId::FiniteOrderNonspecial => "finite-order-nonspecial",
            TheoremId::SingularImpliesSpecial => "singular-implies-special",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Pass,
    /// Counterexample-class.
    Fail,
    NotApplicable,
    /// Applicable, but a needed certificate is missing or undecided.
    Inconclusive,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::NotApplicable => "not-applicable",
            VerdictStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub status: VerdictStatus,
    pub reason: String,
    /// Certificate operations backing a pass.
    pub certificates: Vec<String>,
}

impl TheoremVerdict {
    fn not_applicable(theorem: TheoremId, reason: impl Into<String>) -> Self {
        TheoremVerdict { theorem, status: VerdictStatus::NotApplicable, reason: reason.into(), certificates: Vec::new() }
    }
}

/// Tunables for [`full_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub seed: u64,
    pub iter_bound: u32,
    pub order_degree_cap: u32,
    pub factor_degree_cap: u32,
    pub root_bound: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            seed: DEFAULT_SEED,
            iter_bound: DEFAULT_ITER_BOUND,
            order_degree_cap: DEFAULT_ORDER_DEGREE_CAP,
            factor_degree_cap: DEFAULT_DEGREE_CAP,
            root_bound: DEFAULT_ROOT_OF_UNITY_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub target: Polynomial,
    pub check: WitnessCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixReport {
    pub name: String,
    pub n: usize,
    pub specialness: Specialness,
    pub order: Order,
    pub hpart: FixedPart,
    pub smooth: Option<bool>,
    pub supersmooth: Option<bool>,
    pub irreducibility: Option<Irreducibility>,
    pub fix_equals_h: Option<bool>,
    pub eigen_constant: Option<Rational>,
    /// `h(f(p)) = c·h(p)` at the seeded sample points.
    pub fiber_shift: Option<bool>,
    pub witnesses: Vec<WitnessReport>,
    pub seed: u64,
    pub verdicts: Vec<TheoremVerdict>,
}

impl FixReport {
    pub fn has_failure(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == VerdictStatus::Fail)
    }

    pub fn verdict(&self, theorem: TheoremId) -> &TheoremVerdict {
        self.verdicts.iter().find(|v| v.theorem == theorem).expect("every theorem has a verdict")
    }
}

/// The facts about a fixed hypersurface that the verdicts draw on.
struct HypersurfaceFacts {
    h: Polynomial,
    smooth: bool,
    supersmooth: bool,
    irreducibility: Irreducibility,
    fix_equals_h: bool,
    eigen_constant: Rational,
    fiber_shift: bool,
}

fn hypersurface_facts(f: &Automorphism, h: &Polynomial, opts: &ReportOptions) -> Result<HypersurfaceFacts> {
    let smooth = check_smooth(h, SmoothMode::Smooth).map_err(|e| e.in_stage("smoothness"))?;
    let supersmooth = check_smooth(h, SmoothMode::SuperSmooth).map_err(|e| e.in_stage("super-smoothness"))?;
    let irreducibility =
        irreducible_multivariate(h, opts.factor_degree_cap).map_err(|e| e.in_stage("irreducibility"))?;
    let fix_equals_h = check_fix_equals_hypersurface(f).expect("hypersurface part present");
    let eigen_constant = invariance_constant(f, h).map_err(|e| e.in_stage("eigen factor"))?;
    let fiber_shift = fiber_shift_holds(f, h, &eigen_constant, opts.seed);
    Ok(HypersurfaceFacts { h: h.clone(), smooth, supersmooth, irreducibility, fix_equals_h, eigen_constant, fiber_shift })
}

/// Checks `h(f(p)) = c·h(p)` at [`FIBER_SHIFT_POINTS`] seeded rational points.
pub fn fiber_shift_holds(f: &Automorphism, h: &Polynomial, c: &Rational, seed: u64) -> bool {
    let mut sampler = Sampler::new(seed);
    (0..FIBER_SHIFT_POINTS).all(|_| {
        let p = sampler.point(f.nvars());
        h.evaluate_at(&f.forward().apply(&p)) == c * h.evaluate_at(&p)
    })
}

fn lambda_infinite(spec: &Specialness) -> bool {
    matches!(spec, Specialness::NonSpecial { lambda_order: None, .. })
}

fn verdict_nonspecial_clauses(spec: &Specialness, facts: Option<&HypersurfaceFacts>) -> TheoremVerdict {
    let id = TheoremId::NonspecialFixedHypersurface;
    let (lambda, facts) = match (spec, facts) {
        (Specialness::Special, _) => return TheoremVerdict::not_applicable(id, "automorphism is special"),
        (_, None) => return TheoremVerdict::not_applicable(id, "no hypersurface in the fixed locus"),
        (Specialness::NonSpecial { lambda, .. }, Some(facts)) => (lambda, facts),
    };
    let mut failures = Vec::new();
    let mut certificates = Vec::new();
    if facts.smooth {
        certificates.push("check_smooth(Smooth): (h, grad h) is the unit ideal".to_string());
    } else {
        failures.push("h is singular".to_string());
    }
    let mut undecided = None;
    match &facts.irreducibility {
        Irreducibility::Irreducible { absolute: true } => {
            certificates.push("irreducible_multivariate: absolutely irreducible".into())
        }
        Irreducibility::Irreducible { absolute: false } => {
            undecided = Some("irreducible over Q, absolute irreducibility not certified".to_string())
        }
        Irreducibility::Reducible(_) => failures.push("h is reducible".into()),
        Irreducibility::Unknown(why) => undecided = Some(format!("irreducibility unknown: {why}")),
    }
    if facts.fix_equals_h {
        certificates.push("varieties_equal: Fix(f) = V(h)".into());
    } else {
        failures.push("Fix(f) is larger than V(h)".into());
    }
    if facts.eigen_constant == *lambda {
        certificates.push(format!("eigen_factor: h ∘ f = {lambda}·h"));
    } else {
        failures.push(format!("h ∘ f = {}·h but the Jacobian is {lambda}", facts.eigen_constant));
    }
    let (status, reason) = if !failures.is_empty() {
        (VerdictStatus::Fail, failures.join("; "))
    } else if let Some(why) = undecided {
        (VerdictStatus::Inconclusive, why)
    } else {
        (VerdictStatus::Pass, format!("V({}) is smooth, irreducible, equal to Fix(f), with h ∘ f = λ·h", facts.h))
    };
    TheoremVerdict { theorem: id, status, reason, certificates }
}

fn verdict_supersmooth(spec: &Specialness, order: Order, facts: Option<&HypersurfaceFacts>) -> TheoremVerdict {
    let id = TheoremId::NonspecialSupersmooth;
    let Some(facts) = facts else {
        return TheoremVerdict::not_applicable(id, "no hypersurface in the fixed locus");
    };
    if spec.is_special() {
        return TheoremVerdict::not_applicable(id, "automorphism is special");
    }
    if !lambda_infinite(spec) {
        return TheoremVerdict::not_applicable(id, "Jacobian is a root of unity");
    }
    if let Order::Finite(m) = order {
        return TheoremVerdict::not_applicable(id, format!("automorphism has finite order {m}"));
    }
    let mut failures = Vec::new();
    if !facts.supersmooth {
        failures.push("gradient of h vanishes somewhere");
    }
    if !facts.fiber_shift {
        failures.push("fiber shift identity fails at a sample point");
    }
    if failures.is_empty() {
        TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Pass,
            reason: "V(h) is super-smooth; the Euler characteristic is not computed (order presumed infinite)".into(),
            certificates: vec![
                "check_smooth(SuperSmooth): (grad h) is the unit ideal".into(),
                format!("fiber shift: h(f(p)) = c·h(p) at {FIBER_SHIFT_POINTS} seeded points"),
            ],
        }
    } else {
        TheoremVerdict { theorem: id, status: VerdictStatus::Fail, reason: failures.join("; "), certificates: Vec::new() }
    }
}

fn verdict_uniruled(
    spec: &Specialness,
    order: Order,
    facts: Option<&HypersurfaceFacts>,
    witnesses: &[WitnessReport],
) -> TheoremVerdict {
    let id = TheoremId::FixedHypersurfaceUniruled;
    let Some(facts) = facts else {
        return TheoremVerdict::not_applicable(id, "no hypersurface in the fixed locus");
    };
    let mut certificates = Vec::new();
    match spec {
        Specialness::Special => {
            if !facts.eigen_constant.is_one() {
                return TheoremVerdict {
                    theorem: id,
                    status: VerdictStatus::Fail,
                    reason: format!("special automorphism with h ∘ f = {}·h", facts.eigen_constant),
                    certificates,
                };
            }
            certificates.push("eigen_factor: h ∘ f = h".into());
        }
        Specialness::NonSpecial { lambda_order: Some(_), .. } if order == Order::ExceedsBound => {}
        Specialness::NonSpecial { lambda_order: Some(_), .. } => {
            return TheoremVerdict::not_applicable(id, "non-special automorphism of finite order")
        }
        Specialness::NonSpecial { .. } => {
            return TheoremVerdict::not_applicable(id, "Jacobian has infinite multiplicative order")
        }
    }
    let components: Vec<Polynomial> = match &facts.irreducibility {
        Irreducibility::Irreducible { .. } => vec![facts.h.normalized()],
        Irreducibility::Reducible(list) => list.factors.iter().map(|(g, _)| g.normalized()).collect(),
        Irreducibility::Unknown(why) => {
            return TheoremVerdict {
                theorem: id,
                status: VerdictStatus::Inconclusive,
                reason: format!("components of h unknown: {why}"),
                certificates,
            }
        }
    };
    let mut missing = Vec::new();
    for g in &components {
        let found = witnesses.iter().any(|w| w.check.verified() && w.target.normalized() == *g);
        if found {
            certificates.push(format!("verify_ruled_witness: V({g}) is covered by a verified curve family"));
        } else {
            missing.push(g.to_string());
        }
    }
    if missing.is_empty() {
        TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Pass,
            reason: format!("each of {} component(s) carries a verified ruled witness", components.len()),
            certificates,
        }
    } else {
        TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Inconclusive,
            reason: format!("no verified witness for V({})", missing.join("), V(")),
            certificates,
        }
    }
}

fn verdict_finite_order_clause(spec: &Specialness, order: Order, hpart: &FixedPart) -> TheoremVerdict {
    let id = TheoremId::FiniteOrderNonspecial;
    let m = match order {
        Order::Finite(m) if m > 1 => m,
        Order::Finite(_) => return TheoremVerdict::not_applicable(id, "identity map"),
        Order::ExceedsBound => return TheoremVerdict::not_applicable(id, "order exceeds the bound (presumed infinite)"),
    };
    if !matches!(hpart, FixedPart::Hypersurface(_)) {
        return TheoremVerdict::not_applicable(id, "no hypersurface in the fixed locus");
    }
    match spec {
        Specialness::NonSpecial { lambda, .. } => TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Pass,
            reason: format!("order {m} with Jacobian {lambda} ≠ 1"),
            certificates: vec![
                format!("detect_order: f^{m} = id"),
                format!("jacobian_and_classify: Jacobian {lambda}"),
            ],
        },
        Specialness::Special => TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Fail,
            reason: format!("special automorphism of finite order {m} fixing a hypersurface"),
            certificates: Vec::new(),
        },
    }
}

fn verdict_singular_clause(spec: &Specialness, facts: Option<&HypersurfaceFacts>) -> TheoremVerdict {
    let id = TheoremId::SingularImpliesSpecial;
    let Some(facts) = facts else {
        return TheoremVerdict::not_applicable(id, "no hypersurface in the fixed locus");
    };
    if facts.smooth {
        return TheoremVerdict::not_applicable(id, "fixed hypersurface is smooth");
    }
    if spec.is_special() {
        TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Pass,
            reason: "singular fixed hypersurface and Jacobian 1".into(),
            certificates: vec![
                "check_smooth(Smooth): (h, grad h) is a proper ideal".into(),
                "jacobian_and_classify: Jacobian 1".into(),
            ],
        }
    } else {
        TheoremVerdict {
            theorem: id,
            status: VerdictStatus::Fail,
            reason: format!("singular fixed hypersurface with Jacobian {}", spec.lambda()),
            certificates: Vec::new(),
        }
    }
}

fn facts_for(f: &Automorphism, opts: &ReportOptions) -> Result<Option<HypersurfaceFacts>> {
    match fixed_hypersurface_part(f.forward()) {
        FixedPart::Hypersurface(h) => hypersurface_facts(f, &h, opts).map(Some),
        _ => Ok(None),
    }
}

/// Verdict on the non-special clauses: smooth, irreducible, `Fix(f) = V(h)`,
/// and `h ∘ f = λ h`.
pub fn verdict_nonspecial(f: &Automorphism, opts: &ReportOptions) -> Result<TheoremVerdict> {
    let spec = jacobian_and_classify(f, opts.root_bound);
    Ok(verdict_nonspecial_clauses(&spec, facts_for(f, opts)?.as_ref()))
}

/// Verdict on "finite order `m > 1` with a fixed hypersurface is non-special".
pub fn verdict_finite_order(f: &Automorphism, opts: &ReportOptions) -> TheoremVerdict {
    let spec = jacobian_and_classify(f, opts.root_bound);
    let order = detect_order(f.forward(), opts.iter_bound, opts.order_degree_cap);
    verdict_finite_order_clause(&spec, order, &fixed_hypersurface_part(f.forward()))
}

/// Runs every applicable check. Deterministic for a fixed `opts.seed`.
pub fn full_report(
    name: &str,
    f: &Automorphism,
    witnesses: &[RuledWitness],
    opts: &ReportOptions,
) -> Result<FixReport> {
    let specialness = jacobian_and_classify(f, opts.root_bound);
    let order = detect_order(f.forward(), opts.iter_bound, opts.order_degree_cap);
    let hpart = fixed_hypersurface_part(f.forward());
    let facts = match &hpart {
        FixedPart::Hypersurface(h) => Some(hypersurface_facts(f, h, opts)?),
        _ => None,
    };
    let witness_reports = witnesses
        .iter()
        .map(|w| {
            if w.target.nvars() != f.nvars() {
                return Err(Error::Arity { expected: f.nvars(), found: w.target.nvars() }.in_stage("witness"));
            }
            let check = verify_ruled_witness(w, opts.seed).map_err(|e| e.in_stage("witness"))?;
            Ok(WitnessReport { target: w.target.clone(), check })
        })
        .collect::<Result<Vec<_>>>()?;

    let verdicts = vec![
        verdict_nonspecial_clauses(&specialness, facts.as_ref()),
        verdict_supersmooth(&specialness, order, facts.as_ref()),
        verdict_uniruled(&specialness, order, facts.as_ref(), &witness_reports),
        verdict_finite_order_clause(&specialness, order, &hpart),
        verdict_singular_clause(&specialness, facts.as_ref()),
    ];
    debug_assert!(verdicts.iter().map(|v| v.theorem).eq(TheoremId::ALL));

    Ok(FixReport {
        name: name.to_string(),
        n: f.nvars(),
        specialness,
        order,
        hpart,
        smooth: facts.as_ref().map(|x| x.smooth),
        supersmooth: facts.as_ref().map(|x| x.supersmooth),
        irreducibility: facts.as_ref().map(|x| x.irreducibility.clone()),
        fix_equals_h: facts.as_ref().map(|x| x.fix_equals_h),
        eigen_constant: facts.as_ref().map(|x| x.eigen_constant.clone()),
        fiber_shift: facts.as_ref().map(|x| x.fiber_shift),
        witnesses: witness_reports,
        seed: opts.seed,
        verdicts,
    })
}

/// Convenience for callers that only need the hypersurface equation `h`.
pub fn hypersurface_of(report: &FixReport) -> Option<&Polynomial> {
    match &report.hpart {
        FixedPart::Hypersurface(h) => Some(h),
        _ => None,
    }
}

impl FixReport {
    /// Hypersurface-only fields are present exactly when there is a
    /// hypersurface part, and the eigen constant is nonzero.
    pub fn is_consistent(&self) -> bool {
        let has_h = matches!(self.hpart, FixedPart::Hypersurface(_));
        has_h == self.smooth.is_some()
            && has_h == self.eigen_constant.is_some()
            && self.eigen_constant.as_ref().is_none_or(|c| !c.is_zero())
    }
}
