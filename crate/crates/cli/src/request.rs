//! Request documents: a single JSON object describing the input payload
//! and options of one command. Validation reports every schema
//! violation at once.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use seminorm_core::closure::is_prime;

/// Option map shared by all commands; unknown options are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub search_box: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<i64>>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

/// Description of a monomial algebra: a numerical semigroup in one
/// named variable, or an affine monoid with one variable per dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
}

/// Certificate data: `q` with either SOSI coefficients `c` (plus the
/// window start `n`) or equation coefficients `a`, as polynomial text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
}

/// A validated request: one command applied to one input document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: String,
    pub kind: String,
    #[serde(rename = "char", default)]
    pub characteristic: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    /// Generators: vectors of integers for ideals and monoids, plain
    /// integers for semigroups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Value>,
    /// Ambient semigroup generators for the relative operations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    /// Monomial ideal generators for the ideal-coefficient variant of
    /// the element commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

pub const COMMANDS: &[&str] = &[
    "ideal/integral-closure",
    "ideal/weak-closure",
    "ideal/rees",
    "ideal/samuel",
    "ideal/i-greater",
    "ideal/ratliff-rush",
    "semigroup/seminormalize",
    "semigroup/weak-normalize",
    "semigroup/relative",
    "monoid/member",
    "monoid/seminormal",
    "curve/check",
    "element/verify-sosi",
    "element/verify-wsi",
    "element/derive-F",
    "element/derivative-check",
    "element/swan",
    "element/schanuel",
];

fn kind_of_command(command: &str) -> &'static str {
    match command.split('/').next().unwrap_or("") {
        "ideal" => "ideal",
        "semigroup" => "semigroup",
        "monoid" => "monoid",
        "curve" => "curve",
        "element" => "element",
        _ => "",
    }
}

struct Validator<'a> {
    req: &'a Request,
    errors: Vec<String>,
}

impl<'a> Validator<'a> {
    fn require<T>(&mut self, value: &Option<T>, field: &str) -> bool {
        if value.is_none() {
            self.errors.push(format!(
                "field '{field}' is required for {}",
                self.req.command
            ));
            false
        } else {
            true
        }
    }

    fn vector_generators(&mut self) -> Option<Vec<Vec<i64>>> {
        let Some(value) = &self.req.generators else {
            self.errors.push(format!(
                "field 'generators' is required for {}",
                self.req.command
            ));
            return None;
        };
        match serde_json::from_value::<Vec<Vec<i64>>>(value.clone()) {
            Ok(gens) if !gens.is_empty() => {
                if gens.iter().flatten().any(|&x| x < 0) {
                    self.errors
                        .push("'generators' entries must be nonnegative".into());
                    None
                } else if gens.iter().any(|g| g.len() != gens[0].len()) {
                    self.errors
                        .push("'generators' entries must share one dimension".into());
                    None
                } else {
                    Some(gens)
                }
            }
            Ok(_) => {
                self.errors.push("'generators' must be nonempty".into());
                None
            }
            Err(_) => {
                self.errors
                    .push("'generators' must be an array of integer vectors".into());
                None
            }
        }
    }

    fn scalar_generators(&mut self) -> Option<Vec<u64>> {
        let Some(value) = &self.req.generators else {
            self.errors.push(format!(
                "field 'generators' is required for {}",
                self.req.command
            ));
            return None;
        };
        match serde_json::from_value::<Vec<u64>>(value.clone()) {
            Ok(gens) if !gens.is_empty() && !gens.contains(&0) => Some(gens),
            Ok(_) => {
                self.errors
                    .push("'generators' must be a nonempty array of positive integers".into());
                None
            }
            Err(_) => {
                self.errors
                    .push("'generators' must be an array of positive integers".into());
                None
            }
        }
    }
}

/// Validate a request document against its command's schema, reporting
/// every violation.
pub fn validate(req: &Request) -> Result<(), Vec<String>> {
    let mut v = Validator {
        req,
        errors: Vec::new(),
    };
    if !COMMANDS.contains(&req.command.as_str()) {
        v.errors.push(format!("unknown command '{}'", req.command));
    }
    let expected_kind = kind_of_command(&req.command);
    if !expected_kind.is_empty() && req.kind != expected_kind {
        v.errors.push(format!(
            "kind '{}' does not match command '{}' (expected '{expected_kind}')",
            req.kind, req.command
        ));
    }
    if req.characteristic != 0 && !is_prime(req.characteristic) {
        v.errors.push(format!(
            "characteristic must be 0 or a prime, got {}",
            req.characteristic
        ));
    }

    match req.command.as_str() {
        "ideal/integral-closure" | "ideal/weak-closure" | "ideal/rees" | "ideal/i-greater"
        | "ideal/ratliff-rush" => {
            v.require(&req.vars, "vars");
            if let (Some(gens), Some(vars)) = (v.vector_generators(), &req.vars) {
                if gens[0].len() != vars.len() {
                    v.errors
                        .push("'vars' must list one name per generator coordinate".into());
                }
            }
        }
        "ideal/samuel" => {
            v.require(&req.vars, "vars");
            let gens = v.vector_generators();
            if v.require(&req.exponent, "exponent") {
                if let (Some(gens), Some(exp)) = (&gens, &req.exponent) {
                    if exp.len() != gens[0].len() {
                        v.errors
                            .push("'exponent' must match the generator dimension".into());
                    }
                    if exp.iter().any(|&x| x < 0) {
                        v.errors.push("'exponent' must be nonnegative".into());
                    }
                }
            }
        }
        "semigroup/seminormalize" => {
            v.scalar_generators();
        }
        "semigroup/weak-normalize" | "semigroup/relative" => {
            v.scalar_generators();
            v.require(&req.ambient, "ambient");
            if let Some(ambient) = &req.ambient {
                if ambient.is_empty() || ambient.contains(&0) {
                    v.errors
                        .push("'ambient' must be a nonempty array of positive integers".into());
                }
            }
        }
        "monoid/member" => {
            let gens = v.vector_generators();
            if v.require(&req.element, "element") {
                if let (Some(gens), Some(el)) = (&gens, &req.element) {
                    if el.len() != gens[0].len() {
                        v.errors
                            .push("'element' must match the generator dimension".into());
                    }
                    if el.iter().any(|&x| x < 0) {
                        v.errors.push("'element' must be nonnegative".into());
                    }
                }
            }
        }
        "monoid/seminormal" => {
            v.vector_generators();
        }
        "curve/check" => {
            v.require(&req.poly, "poly");
        }
        "element/verify-sosi" => {
            v.require(&req.algebra, "algebra");
            v.require(&req.b, "b");
            if v.require(&req.certificate, "certificate") {
                let cert = req.certificate.as_ref().unwrap();
                if cert.c.is_none() || cert.n.is_none() {
                    v.errors
                        .push("'certificate' needs fields 'n' and 'c' for verify-sosi".into());
                }
            }
        }
        "element/verify-wsi" => {
            if req.algebra.is_none() && req.ideal.is_none() {
                v.errors
                    .push("verify-wsi needs either 'algebra' or 'ideal'".into());
            }
            if req.ideal.is_some() {
                v.require(&req.vars, "vars");
            }
            v.require(&req.b, "b");
            if v.require(&req.certificate, "certificate") {
                let cert = req.certificate.as_ref().unwrap();
                if cert.a.is_none() {
                    v.errors
                        .push("'certificate' needs field 'a' for verify-wsi".into());
                }
            }
        }
        "element/derive-F" => {
            let has_cert = req
                .certificate
                .as_ref()
                .is_some_and(|cert| cert.a.is_some());
            let has_search = req.ideal.is_some() && req.b.is_some();
            if !has_cert && !has_search {
                v.errors.push(
                    "derive-F needs a certificate with 'a', or 'ideal' and 'b' to search one"
                        .into(),
                );
            }
            if req.certificate.is_some() || req.b.is_some() {
                v.require(&req.vars, "vars");
            }
        }
        "element/derivative-check" => {
            v.require(&req.vars, "vars");
            v.require(&req.f, "f");
            v.require(&req.b, "b");
        }
        "element/swan" => {
            v.require(&req.algebra, "algebra");
            v.require(&req.b, "b");
            v.require(&req.c, "c");
        }
        "element/schanuel" => {
            v.require(&req.vars, "vars");
            v.require(&req.a, "a");
        }
        _ => {}
    }

    if let Some(algebra) = &req.algebra {
        match (&algebra.semigroup, &algebra.monoid) {
            (Some(_), Some(_)) | (None, None) => {
                v.errors
                    .push("'algebra' needs exactly one of 'semigroup' or 'monoid'".into());
            }
            (Some(gens), None) => {
                if gens.is_empty() || gens.contains(&0) {
                    v.errors
                        .push("'algebra.semigroup' must list positive integers".into());
                }
                if algebra.var.is_none() {
                    v.errors.push("'algebra.var' names the variable".into());
                }
            }
            (None, Some(gens)) => {
                if gens.is_empty() {
                    v.errors.push("'algebra.monoid' must be nonempty".into());
                }
                match &algebra.vars {
                    Some(vars) if vars.len() == gens.first().map_or(0, Vec::len) => {}
                    _ => v
                        .errors
                        .push("'algebra.vars' must name one variable per coordinate".into()),
                }
            }
        }
    }
    if let Some(point) = &req.options.point {
        if point.len() != 2 {
            v.errors.push("'point' must have exactly 2 coordinates".into());
        }
    }
    if let Some(bounds) = &req.options.search_box {
        if bounds.iter().any(|&x| x < 0) {
            v.errors.push("'box' bounds must be nonnegative".into());
        }
    }

    if v.errors.is_empty() {
        Ok(())
    } else {
        Err(v.errors)
    }
}

/// Parse a document into a validated request. The command may come from
/// the document itself or be supplied by the caller (the caller wins).
pub fn parse_input(text: &str, command: Option<&str>) -> Result<Request, Vec<String>> {
    let mut partial: serde_json::Map<String, Value> = match serde_json::from_str(text) {
        Ok(Value::Object(map)) => map,
        Ok(_) => return Err(vec!["document must be a JSON object".into()]),
        Err(e) => return Err(vec![format!("invalid JSON: {e}")]),
    };
    if let Some(cmd) = command {
        partial.insert("command".into(), Value::String(cmd.to_string()));
    }
    if !partial.contains_key("kind") {
        if let Some(Value::String(cmd)) = partial.get("command") {
            let kind = kind_of_command(cmd);
            if !kind.is_empty() {
                partial.insert("kind".into(), Value::String(kind.to_string()));
            }
        }
    }
    let req: Request = serde_json::from_value(Value::Object(partial))
        .map_err(|e| vec![format!("malformed document: {e}")])?;
    validate(&req)?;
    Ok(req)
}
