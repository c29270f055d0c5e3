//! Command dispatch: each command maps to exactly one library
//! operation, and every outcome is folded into a serializable report.

use serde::Serialize;
use serde_json::{json, Map, Value};

use seminorm_core::closure::{
    weak_closure_char0_detailed, weak_closure_charp_detailed, CharSpec,
};
use seminorm_core::curve::{PlaneCurveGerm, TestVerdict};
use seminorm_core::element::{
    build_characteristic_poly, derivative_criterion, swan_root_test, verify_sosi,
    verify_wsi_ideal, verify_wsi_ring, wsi_certificate_from_high_powers, schanuel_matrix,
    SosiCertificate, SwanOutcome, WsiCertificate,
};
use seminorm_core::ideal::MonomialIdeal;
use seminorm_core::lattice::ExponentVector;
use seminorm_core::monoid::{AffineMonoid, MonomialAlgebraContext};
use seminorm_core::parse::parse_polynomial;
use seminorm_core::poly::SparsePolynomial;
use seminorm_core::semigroup::{
    ns_seminormalize, relative_seminormalization, relative_weak_normalization,
    NumericalSemigroup, SaturationResult,
};
use seminorm_core::valuation::{i_greater_detailed, rees_valuations, samuel_value};

use crate::request::{validate, Request};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Inconclusive,
    Error,
}

/// The serialized outcome of one command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub status: Status,
    pub command: String,
    /// Provenance: the validated request this report answers.
    pub input: Request,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub flags: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn error(request: Request, errors: Vec<String>) -> Report {
        Report {
            status: Status::Error,
            command: request.command.clone(),
            input: request,
            result: None,
            flags: Map::new(),
            errors,
        }
    }
}

struct Outcome {
    result: Value,
    flags: Map<String, Value>,
    inconclusive: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            result,
            flags: Map::new(),
            inconclusive: false,
        }
    }

    fn flag(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.flags.insert(name.to_string(), value.into());
        self
    }

    fn inconclusive_if(mut self, cond: bool) -> Self {
        self.inconclusive |= cond;
        self
    }
}

fn vectors_json(list: &[ExponentVector]) -> Value {
    Value::Array(
        list.iter()
            .map(|e| Value::Array(e.coords().iter().map(|&c| c.into()).collect()))
            .collect(),
    )
}

fn ideal_json(ideal: &MonomialIdeal) -> Value {
    vectors_json(ideal.generators())
}

fn ev(coords: &[i64]) -> Result<ExponentVector, String> {
    ExponentVector::new(coords.to_vec()).map_err(|e| e.to_string())
}

fn char_spec(req: &Request) -> CharSpec {
    CharSpec::new(req.characteristic).expect("validated characteristic")
}

fn build_ideal(req: &Request) -> Result<MonomialIdeal, String> {
    let gens: Vec<Vec<i64>> =
        serde_json::from_value(req.generators.clone().expect("validated generators"))
            .expect("validated generator shape");
    let dim = gens[0].len();
    let gens = gens
        .into_iter()
        .map(|g| ev(&g))
        .collect::<Result<Vec<_>, _>>()?;
    MonomialIdeal::new(dim, gens).map_err(|e| e.to_string())
}

fn build_semigroup(gens: &[u64]) -> Result<NumericalSemigroup, String> {
    NumericalSemigroup::new(gens).map_err(|e| e.to_string())
}

fn saturation_json(result: &SaturationResult) -> Value {
    json!({
        "minimal_generators": result.semigroup.minimal_generators(),
        "adjoined": result.adjoined,
    })
}

fn build_algebra(req: &Request) -> Result<MonomialAlgebraContext, String> {
    let spec = req.algebra.as_ref().expect("validated algebra");
    let field = char_spec(req);
    if let Some(gens) = &spec.semigroup {
        let s = build_semigroup(gens)?;
        Ok(MonomialAlgebraContext::numerical(
            field,
            s,
            spec.var.as_ref().expect("validated var"),
        ))
    } else {
        let gens = spec.monoid.as_ref().expect("validated monoid");
        let dim = gens[0].len();
        let gens = gens
            .iter()
            .map(|g| ev(g))
            .collect::<Result<Vec<_>, _>>()?;
        let m = AffineMonoid::new(dim, gens).map_err(|e| e.to_string())?;
        Ok(MonomialAlgebraContext::affine(
            field,
            m,
            spec.vars.as_ref().expect("validated vars"),
        ))
    }
}

fn parse_in(req: &Request, vars: &[String], text: &str) -> Result<SparsePolynomial, String> {
    parse_polynomial(text, char_spec(req), vars).map_err(|e| e.to_string())
}

fn verdict_str(v: TestVerdict) -> &'static str {
    match v {
        TestVerdict::Holds => "true",
        TestVerdict::Fails => "false",
        TestVerdict::Indeterminate => "indeterminate",
    }
}

fn run(req: &Request) -> Result<Outcome, String> {
    match req.command.as_str() {
        "ideal/integral-closure" => {
            let ideal = build_ideal(req)?;
            let detail = ideal.integral_closure_detailed().map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({
                "minimal_generators": vectors_json(detail.ideal.generators()),
                "added_exponents": vectors_json(&detail.added_exponents),
                "search_box": detail.search_box,
            }))
            .flag("box_certified", detail.certified)
            .inconclusive_if(!detail.certified))
        }
        "ideal/weak-closure" => {
            let ideal = build_ideal(req)?;
            match char_spec(req) {
                CharSpec::Zero => {
                    let detail =
                        weak_closure_char0_detailed(&ideal).map_err(|e| e.to_string())?;
                    Ok(Outcome::ok(json!({
                        "minimal_generators": vectors_json(detail.ideal.generators()),
                        "added_exponents": vectors_json(&detail.added_exponents),
                        "search_box": detail.search_box,
                    }))
                    .flag("box_certified", detail.certified)
                    .inconclusive_if(!detail.certified))
                }
                CharSpec::Prime(p) => {
                    let m_max = req.options.m_max.unwrap_or(6);
                    let detail = weak_closure_charp_detailed(&ideal, p, m_max)
                        .map_err(|e| e.to_string())?;
                    Ok(Outcome::ok(json!({
                        "minimal_generators": vectors_json(detail.closure.ideal.generators()),
                        "added_exponents": vectors_json(&detail.closure.added_exponents),
                        "undecided_exponents": vectors_json(&detail.undecided),
                        "search_box": detail.closure.search_box,
                    }))
                    .flag("box_certified", detail.closure.certified)
                    .flag("m_max_exhausted", !detail.certified)
                    .inconclusive_if(!detail.certified || !detail.closure.certified))
                }
            }
        }
        "ideal/rees" => {
            let ideal = build_ideal(req)?;
            let valuations = rees_valuations(&ideal).map_err(|e| e.to_string())?;
            let list: Vec<Value> = valuations
                .iter()
                .map(|v| json!({"normal": v.normal, "value": v.ideal_value}))
                .collect();
            Ok(Outcome::ok(json!({ "valuations": list })))
        }
        "ideal/samuel" => {
            let ideal = build_ideal(req)?;
            let gamma = ev(req.exponent.as_ref().expect("validated exponent"))?;
            let value = samuel_value(&ideal, &gamma).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({ "value": value.to_string() })))
        }
        "ideal/i-greater" => {
            let ideal = build_ideal(req)?;
            let detail = i_greater_detailed(&ideal).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({
                "minimal_generators": vectors_json(detail.ideal.generators()),
                "search_box": detail.search_box,
            }))
            .flag("box_certified", detail.certified)
            .inconclusive_if(!detail.certified))
        }
        "ideal/ratliff-rush" => {
            let ideal = build_ideal(req)?;
            let horizon = req.options.horizon.unwrap_or(5);
            let (rr, stabilized) = ideal.ratliff_rush(horizon).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({
                "minimal_generators": ideal_json(&rr),
                "stabilized": stabilized,
                "horizon": horizon,
            }))
            .flag("horizon_exhausted", !stabilized)
            .inconclusive_if(!stabilized))
        }
        "semigroup/seminormalize" => {
            let gens: Vec<u64> =
                serde_json::from_value(req.generators.clone().expect("validated")).unwrap();
            let s = build_semigroup(&gens)?;
            let result = ns_seminormalize(&s).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(saturation_json(&result)))
        }
        "semigroup/weak-normalize" | "semigroup/relative" => {
            let gens: Vec<u64> =
                serde_json::from_value(req.generators.clone().expect("validated")).unwrap();
            let s = build_semigroup(&gens)?;
            let t = build_semigroup(req.ambient.as_ref().expect("validated ambient"))?;
            let result = if req.command == "semigroup/relative" {
                relative_seminormalization(&s, &t)
            } else {
                relative_weak_normalization(&s, &t, char_spec(req))
            }
            .map_err(|e| e.to_string())?;
            Ok(Outcome::ok(saturation_json(&result)))
        }
        "monoid/member" => {
            let gens: Vec<Vec<i64>> =
                serde_json::from_value(req.generators.clone().expect("validated")).unwrap();
            let dim = gens[0].len();
            let gens = gens
                .into_iter()
                .map(|g| ev(&g))
                .collect::<Result<Vec<_>, _>>()?;
            let m = AffineMonoid::new(dim, gens).map_err(|e| e.to_string())?;
            let x = ev(req.element.as_ref().expect("validated element"))?;
            let member = m.membership(&x).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({ "member": member })))
        }
        "monoid/seminormal" => {
            let gens: Vec<Vec<i64>> =
                serde_json::from_value(req.generators.clone().expect("validated")).unwrap();
            let dim = gens[0].len();
            let gens = gens
                .into_iter()
                .map(|g| ev(&g))
                .collect::<Result<Vec<_>, _>>()?;
            let m = AffineMonoid::new(dim, gens).map_err(|e| e.to_string())?;
            let bbox = match &req.options.search_box {
                Some(b) if b.len() == dim => b.clone(),
                Some(_) => return Err("'box' must match the monoid dimension".into()),
                None => vec![8; dim],
            };
            let (seminormal, witnesses) = m
                .is_seminormal_in_box(&ev(&bbox)?)
                .map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({
                "seminormal": seminormal,
                "witnesses": vectors_json(&witnesses),
                "search_box": bbox,
            })))
        }
        "curve/check" => {
            let vars = req
                .vars
                .clone()
                .unwrap_or_else(|| vec!["x".to_string(), "y".to_string()]);
            let f = parse_in(req, &vars, req.poly.as_ref().expect("validated poly"))?;
            let germ = match &req.options.point {
                Some(p) => PlaneCurveGerm::at_point(&f, p[0], p[1]),
                None => PlaneCurveGerm::new(f),
            }
            .map_err(|e| e.to_string())?;
            let (multiplicity, form) = germ.initial_form();
            let ordinary = germ.is_ordinary_point();
            let seminormal = germ.is_seminormal_at_origin();
            Ok(Outcome::ok(json!({
                "multiplicity": multiplicity,
                "initial_form": form.to_string(),
                "ordinary_point": verdict_str(ordinary),
                "seminormal_at_origin": verdict_str(seminormal),
            }))
            .inconclusive_if(seminormal == TestVerdict::Indeterminate))
        }
        "element/verify-sosi" => {
            let ctx = build_algebra(req)?;
            let b = parse_in(req, &ctx.vars.clone(), req.b.as_ref().expect("validated b"))?;
            let spec = req.certificate.as_ref().expect("validated certificate");
            let c = spec
                .c
                .as_ref()
                .expect("validated c")
                .iter()
                .map(|t| parse_in(req, &ctx.vars.clone(), t))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = SosiCertificate::new(spec.q, spec.n.expect("validated n"), c)
                .map_err(|e| e.to_string())?;
            let verified = verify_sosi(&ctx, &b, &cert).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({ "verified": verified })))
        }
        "element/verify-wsi" => {
            let spec = req.certificate.as_ref().expect("validated certificate");
            if let Some(ideal_gens) = &req.ideal {
                let vars = req
                    .vars
                    .clone()
                    .ok_or("'vars' is required for the ideal variant")?;
                let dim = ideal_gens[0].len();
                let gens = ideal_gens
                    .iter()
                    .map(|g| ev(g))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = MonomialIdeal::new(dim, gens).map_err(|e| e.to_string())?;
                let b = parse_in(req, &vars, req.b.as_ref().expect("validated b"))?;
                let a = spec
                    .a
                    .as_ref()
                    .expect("validated a")
                    .iter()
                    .map(|t| parse_in(req, &vars, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let cert = WsiCertificate::new(spec.q, a).map_err(|e| e.to_string())?;
                let verified = verify_wsi_ideal(&ideal, &b, &cert).map_err(|e| e.to_string())?;
                Ok(Outcome::ok(json!({ "verified": verified })))
            } else {
                let ctx = build_algebra(req)?;
                let b =
                    parse_in(req, &ctx.vars.clone(), req.b.as_ref().expect("validated b"))?;
                let a = spec
                    .a
                    .as_ref()
                    .expect("validated a")
                    .iter()
                    .map(|t| parse_in(req, &ctx.vars.clone(), t))
                    .collect::<Result<Vec<_>, _>>()?;
                let cert = WsiCertificate::new(spec.q, a).map_err(|e| e.to_string())?;
                let verified = verify_wsi_ring(&ctx, &b, &cert).map_err(|e| e.to_string())?;
                Ok(Outcome::ok(json!({ "verified": verified })))
            }
        }
        "element/derive-F" => {
            let vars = req.vars.clone().expect("validated vars");
            if let Some(spec) = &req.certificate {
                let a = spec
                    .a
                    .as_ref()
                    .expect("validated a")
                    .iter()
                    .map(|t| parse_in(req, &vars, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let cert = WsiCertificate::new(spec.q, a).map_err(|e| e.to_string())?;
                let f = build_characteristic_poly(&cert, "T");
                Ok(Outcome::ok(json!({ "polynomial": f.to_string() })))
            } else {
                let ideal_gens = req.ideal.as_ref().expect("validated ideal");
                let dim = ideal_gens[0].len();
                let gens = ideal_gens
                    .iter()
                    .map(|g| ev(g))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = MonomialIdeal::new(dim, gens).map_err(|e| e.to_string())?;
                let b = parse_in(req, &vars, req.b.as_ref().expect("validated b"))?;
                let q_max = req.options.q_max.unwrap_or(8);
                match wsi_certificate_from_high_powers(&ideal, &b, q_max)
                    .map_err(|e| e.to_string())?
                {
                    Some(cert) => {
                        let coeffs: Vec<String> =
                            cert.coefficients().iter().map(|p| p.to_string()).collect();
                        let f = build_characteristic_poly(&cert, "T");
                        Ok(Outcome::ok(json!({
                            "polynomial": f.to_string(),
                            "certificate": {"q": cert.q(), "a": coeffs},
                        })))
                    }
                    None => Ok(Outcome::ok(json!({ "found": false }))
                        .flag("q_max_exhausted", true)
                        .inconclusive_if(true)),
                }
            }
        }
        "element/derivative-check" => {
            let mut vars = req.vars.clone().expect("validated vars");
            let b = parse_in(req, &vars, req.b.as_ref().expect("validated b"))?;
            vars.push("T".to_string());
            let f = parse_in(req, &vars, req.f.as_ref().expect("validated f"))?;
            let passes = derivative_criterion(&f, "T", &b).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json!({ "passes": passes })))
        }
        "element/swan" => {
            let ctx = build_algebra(req)?;
            let b = parse_in(req, &ctx.vars.clone(), req.b.as_ref().expect("validated b"))?;
            let c = parse_in(req, &ctx.vars.clone(), req.c.as_ref().expect("validated c"))?;
            let outcome = swan_root_test(&ctx, &b, &c).map_err(|e| e.to_string())?;
            Ok(match outcome {
                SwanOutcome::Root(a) => Outcome::ok(json!({
                    "outcome": "root",
                    "element": a.to_string(),
                })),
                SwanOutcome::Witness(a) => Outcome::ok(json!({
                    "outcome": "witness",
                    "element": a.to_string(),
                })),
            })
        }
        "element/schanuel" => {
            let vars = req.vars.clone().expect("validated vars");
            let a = parse_in(req, &vars, req.a.as_ref().expect("validated a"))?;
            let m = schanuel_matrix(&a);
            let rows: Vec<Vec<String>> = m
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect();
            Ok(Outcome::ok(json!({
                "matrix": rows,
                "unimodular_identity": m.unimodular_identity,
                "projection_at_zero": m.projection_at_zero,
            })))
        }
        other => Err(format!("unknown command '{other}'")),
    }
}

/// Execute a validated request; failures land in the report, never in a
/// crash.
pub fn execute(req: &Request) -> Report {
    if let Err(errors) = validate(req) {
        return Report::error(req.clone(), errors);
    }
    match run(req) {
        Ok(outcome) => Report {
            status: if outcome.inconclusive {
                Status::Inconclusive
            } else {
                Status::Ok
            },
            command: req.command.clone(),
            input: req.clone(),
            result: Some(outcome.result),
            flags: outcome.flags,
            errors: vec![],
        },
        Err(message) => Report::error(req.clone(), vec![message]),
    }
}
