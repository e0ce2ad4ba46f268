//! The JSON report and its plain-text rendering. Field names are frozen; see
//! `docs/schema.md`.

use std::fmt::Write as _;

use fixlocus::automorphism::{detect_order, fixed_hypersurface_part, FixedPart, Order, Specialness};
use fixlocus::factor::Irreducibility;
use fixlocus::theorem::{full_report, ReportOptions, RuledWitness, TheoremId, VerdictStatus};
use serde::Serialize;

use crate::subject::{CliError, Subject, SubjectMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderJson {
    Finite { m: u32 },
    ExceedsBound { iter_bound: u32, degree_cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleJson {
    /// `irreducible`, `reducible` or `unknown`.
    pub verdict: &'static str,
    /// `absolute` or `rational` for irreducible polynomials.
    pub field: Option<&'static str>,
    pub factors: Vec<FactorJson>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub name: String,
    pub target: String,
    pub image_in_target: bool,
    pub nonconstant_in_t: bool,
    pub dominant: bool,
    pub dominance: &'static str,
    pub attempts: u32,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub theorem: &'static str,
    pub status: &'static str,
    pub reason: String,
    pub certificates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub n: usize,
    pub variables: Vec<String>,
    /// `tame_word`, `explicit_pair` or `raw`.
    pub provenance: &'static str,
    pub special: bool,
    pub jacobian: String,
    pub lambda_order: Option<u32>,
    pub order: OrderJson,
    /// `whole_space`, `unit` or `hypersurface`.
    pub hpart: &'static str,
    pub h: Option<String>,
    pub smooth: Option<bool>,
    pub supersmooth: Option<bool>,
    pub irreducible: Option<IrreducibleJson>,
    pub fix_equals_h: Option<bool>,
    pub eigen_constant: Option<String>,
    pub fiber_shift: Option<bool>,
    pub witnesses: Vec<WitnessJson>,
    pub seed: u64,
    pub theorem_verdicts: Vec<VerdictJson>,
}

impl Report {
    pub fn has_failure(&self) -> bool {
        self.theorem_verdicts.iter().any(|v| v.status == VerdictStatus::Fail.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn order_json(order: Order, opts: &ReportOptions) -> OrderJson {
    match order {
        Order::Finite(m) => OrderJson::Finite { m },
        Order::ExceedsBound => OrderJson::ExceedsBound { iter_bound: opts.iter_bound, degree_cap: opts.order_degree_cap },
    }
}

fn hpart_parts(subject: &Subject, hpart: &FixedPart) -> (&'static str, Option<String>) {
    match hpart {
        FixedPart::WholeSpace => ("whole_space", None),
        FixedPart::Unit => ("unit", None),
        FixedPart::Hypersurface(h) => ("hypersurface", Some(subject.poly_string(h))),
    }
}

fn specialness_parts(s: &Specialness) -> (bool, String, Option<u32>) {
    match s {
        Specialness::Special => (true, "1".into(), Some(1)),
        Specialness::NonSpecial { lambda, lambda_order } => (false, lambda.to_string(), *lambda_order),
    }
}

fn irreducible_json(subject: &Subject, irr: &Irreducibility) -> IrreducibleJson {
    match irr {
        Irreducibility::Irreducible { absolute } => IrreducibleJson {
            verdict: "irreducible",
            field: Some(if *absolute { "absolute" } else { "rational" }),
            factors: Vec::new(),
            reason: None,
        },
        Irreducibility::Reducible(list) => IrreducibleJson {
            verdict: "reducible",
            field: None,
            factors: list
                .factors
                .iter()
                .map(|(g, e)| FactorJson { factor: subject.poly_string(g), multiplicity: *e })
                .collect(),
            reason: None,
        },
        Irreducibility::Unknown(why) => {
            IrreducibleJson { verdict: "unknown", field: None, factors: Vec::new(), reason: Some(why.clone()) }
        }
    }
}

/// Runs every applicable check on a subject.
pub fn analyze(subject: &Subject, opts: &ReportOptions) -> Result<Report, CliError> {
    match &subject.map {
        SubjectMap::Certified(f) => {
            let witnesses: Vec<RuledWitness> = subject.witnesses.iter().map(|w| w.witness.clone()).collect();
            let r = full_report(&subject.name, f, &witnesses, opts)?;
            let (special, jacobian, lambda_order) = specialness_parts(&r.specialness);
            let (hpart, h) = hpart_parts(subject, &r.hpart);
            Ok(Report {
                name: r.name.clone(),
                n: r.n,
                variables: subject.variables.clone(),
                provenance: match f.provenance() {
                    fixlocus::automorphism::Provenance::TameWord(_) => "tame_word",
                    fixlocus::automorphism::Provenance::ExplicitPair => "explicit_pair",
                },
                special,
                jacobian,
                lambda_order,
                order: order_json(r.order, opts),
                hpart,
                h,
                smooth: r.smooth,
                supersmooth: r.supersmooth,
                irreducible: r.irreducibility.as_ref().map(|i| irreducible_json(subject, i)),
                fix_equals_h: r.fix_equals_h,
                eigen_constant: r.eigen_constant.as_ref().map(ToString::to_string),
                fiber_shift: r.fiber_shift,
                witnesses: subject
                    .witnesses
                    .iter()
                    .zip(&r.witnesses)
                    .map(|(named, w)| WitnessJson {
                        name: named.name.clone(),
                        target: subject.poly_string(&w.target),
                        image_in_target: w.check.image_in_target,
                        nonconstant_in_t: w.check.nonconstant_in_t,
                        dominant: w.check.dominant,
                        dominance: "probabilistic",
                        attempts: w.check.attempts,
                        verified: w.check.verified(),
                    })
                    .collect(),
                seed: r.seed,
                theorem_verdicts: r
                    .verdicts
                    .iter()
                    .map(|v| VerdictJson {
                        theorem: v.theorem.as_str(),
                        status: v.status.as_str(),
                        reason: v.reason.clone(),
                        certificates: v.certificates.clone(),
                    })
                    .collect(),
            })
        }
        SubjectMap::Raw(f) => {
            let specialness = f.classify(opts.root_bound)?;
            let (special, jacobian, lambda_order) = specialness_parts(&specialness);
            let hpart = fixed_hypersurface_part(f);
            let (hpart, h) = hpart_parts(subject, &hpart);
            Ok(Report {
                name: subject.name.clone(),
                n: f.nvars(),
                variables: subject.variables.clone(),
                provenance: "raw",
                special,
                jacobian,
                lambda_order,
                order: order_json(detect_order(f, opts.iter_bound, opts.order_degree_cap), opts),
                hpart,
                h,
                smooth: None,
                supersmooth: None,
                irreducible: None,
                fix_equals_h: None,
                eigen_constant: None,
                fiber_shift: None,
                witnesses: Vec::new(),
                seed: opts.seed,
                theorem_verdicts: TheoremId::ALL
                    .iter()
                    .map(|t| VerdictJson {
                        theorem: t.as_str(),
                        status: VerdictStatus::NotApplicable.as_str(),
                        reason: "map has no certified inverse".into(),
                        certificates: Vec::new(),
                    })
                    .collect(),
            })
        }
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

pub fn order_text(order: &OrderJson) -> String {
    match order {
        OrderJson::Finite { m } => format!("finite, m = {m}"),
        OrderJson::ExceedsBound { iter_bound, degree_cap } => {
            format!("exceeds bound (no f^m = id for m <= {iter_bound}, degree cap {degree_cap}); presumed infinite")
        }
    }
}

pub fn jacobian_text(special: bool, jacobian: &str, lambda_order: Option<u32>) -> String {
    if special {
        "1 (special)".to_string()
    } else {
        let order = match lambda_order {
            Some(m) => format!("multiplicative order {m}"),
            None => "not a root of unity".to_string(),
        };
        format!("{jacobian} (non-special, {order})")
    }
}

pub fn specialness_text(s: &Specialness) -> String {
    let (special, jacobian, lambda_order) = specialness_parts(s);
    jacobian_text(special, &jacobian, lambda_order)
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({} variables: {})", r.name, r.n, r.variables.join(", "));
    let _ = writeln!(out, "  provenance:    {}", r.provenance.replace('_', " "));
    let _ = writeln!(out, "  jacobian:      {}", jacobian_text(r.special, &r.jacobian, r.lambda_order));
    let _ = writeln!(out, "  order:         {}", order_text(&r.order));
    let fixed = match (&r.h, r.hpart) {
        (Some(h), _) => format!("hypersurface {h}"),
        (None, "whole_space") => "whole space".to_string(),
        (None, _) => "no hypersurface".to_string(),
    };
    let _ = writeln!(out, "  fixed part:    {fixed}");
    if r.h.is_some() {
        let _ = writeln!(out, "  smooth:        {}", yes_no(r.smooth));
        let _ = writeln!(out, "  super-smooth:  {}", yes_no(r.supersmooth));
        if let Some(irr) = &r.irreducible {
            let detail = match (irr.verdict, irr.field, &irr.reason) {
                ("irreducible", Some(field), _) => format!("irreducible ({field})"),
                ("reducible", _, _) => {
                    let fs: Vec<String> = irr
                        .factors
                        .iter()
                        .map(|f| if f.multiplicity == 1 { f.factor.clone() } else { format!("({})^{}", f.factor, f.multiplicity) })
                        .collect();
                    format!("reducible: {}", fs.join(" | "))
                }
                (_, _, Some(why)) => format!("unknown ({why})"),
                (v, _, _) => v.to_string(),
            };
            let _ = writeln!(out, "  irreducible:   {detail}");
        }
        let _ = writeln!(out, "  Fix = V(h):    {}", yes_no(r.fix_equals_h));
        if let Some(c) = &r.eigen_constant {
            let _ = writeln!(out, "  h o f = c h:   c = {c}");
        }
        let _ = writeln!(out, "  fiber shift:   {}", yes_no(r.fiber_shift));
    }
    for w in &r.witnesses {
        let status = if w.verified { "verified" } else { "NOT verified" };
        let _ = writeln!(out, "  witness {}: {status} on {} ({} attempt(s), dominance probabilistic)", w.name, w.target, w.attempts);
    }
    let _ = writeln!(out, "  seed:          {}", r.seed);
    let _ = writeln!(out, "  theorems:");
    for v in &r.theorem_verdicts {
        let _ = writeln!(out, "    {:<15} {}: {}", v.status, v.theorem, v.reason);
    }
    out
}
