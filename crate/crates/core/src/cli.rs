//! Run configuration and the command implementations behind the `gtg` binary.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autgroup::{
    aut_bruteforce, exponent_classes, generate_known_automorphisms, is_group,
    middle_scalar_subgroup, monomial_verdict, theta_from_coefficients, theta_set, AutTriple,
    ThetaSet, GL_LIMIT, NORMALIZER_LIMIT,
};
use crate::error::{Error, Result};
use crate::gf::{Basis, Fe, Field, FieldDescription, FieldRef};
use crate::linalg::Matrix;
use crate::linpoly::{LinearizedPoly, SubspaceSpec};
use crate::nuclei::{
    analyze_middle, analyze_right, hypothesis_check, middle_nucleus_bruteforce,
    normalize_by_first, predict_right_nucleus, smallest_containing_subfield, HypothesisFlags,
    NucleusReport,
};
use crate::rankcode::{CodeParams, MrdCertificate, RankCode, RankCodeJson, CODEWORD_LIMIT};

/// Default cap on q^n for element-by-element field scans.
pub const FIELD_LIMIT: u64 = 1 << 24;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_SELFCHECK: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_guard() {
        EXIT_GUARD
    } else {
        EXIT_INVARIANT
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

/// η as "0", "nonsquare-min" or a digit vector (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EtaChoice {
    Named(String),
    Digits(Vec<u32>),
}

impl Default for EtaChoice {
    fn default() -> Self {
        EtaChoice::Named("0".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsConfig {
    pub m: usize,
    pub k: usize,
    #[serde(default = "one_i64")]
    pub s: i64,
    #[serde(default)]
    pub h: u32,
    #[serde(default)]
    pub eta: EtaChoice,
}

fn one_i64() -> i64 {
    1
}

/// S as a preset ("generic:SEED", "subfield:L") or explicit digit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceChoice {
    Preset(String),
    Explicit(Vec<Vec<u32>>),
}

impl Default for SubspaceChoice {
    fn default() -> Self {
        SubspaceChoice::Preset("generic:0".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    #[serde(default = "default_codewords")]
    pub codewords: u64,
    #[serde(default = "default_gl")]
    pub gl: u64,
    #[serde(default = "default_field")]
    pub field: u64,
    #[serde(default = "default_normalizer")]
    pub normalizer: u64,
    #[serde(default)]
    pub unsafe_limits: bool,
}

fn default_codewords() -> u64 {
    CODEWORD_LIMIT
}
fn default_gl() -> u64 {
    GL_LIMIT
}
fn default_field() -> u64 {
    FIELD_LIMIT
}
fn default_normalizer() -> u64 {
    NORMALIZER_LIMIT
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            codewords: CODEWORD_LIMIT,
            gl: GL_LIMIT,
            field: FIELD_LIMIT,
            normalizer: NORMALIZER_LIMIT,
            unsafe_limits: false,
        }
    }
}

impl Guards {
    /// Limits raised above the defaults need `unsafe_limits`.
    pub fn validate(&self) -> Result<()> {
        let d = Guards::default();
        let raised = self.codewords > d.codewords
            || self.gl > d.gl
            || self.field > d.field
            || self.normalizer > d.normalizer;
        if raised && !self.unsafe_limits {
            return Err(Error::Config(
                "raising a guard above its default requires --unsafe-limits".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Mrd,
    Nuclei,
    Aut,
    Sweep,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

/// A single run: field, code parameters, S, requested analyses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: FieldConfig,
    pub params: ParamsConfig,
    #[serde(default)]
    pub subspace: SubspaceChoice,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub guards: Guards,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<Instance> {
        self.guards.validate()?;
        let fc = &self.field;
        let field = Field::new(fc.p, fc.e, fc.n, fc.modulus.clone())?;
        let eta = select_eta(&field, &self.params)?;
        let p = &self.params;
        let params = CodeParams::new(&field, p.m, p.k, p.s, p.h, eta)?;
        let alphas = select_subspace(&field, p.m, &self.subspace)?;
        let spec = SubspaceSpec::new(&field, alphas, p.s)?;
        let code = RankCode::twisted_gabidulin(&params, &spec)?;
        Ok(Instance {
            field,
            params,
            spec,
            code,
            guards: self.guards.clone(),
        })
    }
}

/// The smallest non-square by generator exponent, ξ^j with j odd.
pub fn nonsquare_min(field: &FieldRef) -> Result<Fe> {
    if field.p() == 2 {
        return Err(Error::NoNonSquare);
    }
    let xi = field.generator();
    (1..field.order())
        .step_by(2)
        .map(|j| field.pow(xi, j))
        .find(|&x| !field.is_square(x))
        .ok_or(Error::NoNonSquare)
}

pub fn select_eta(field: &FieldRef, p: &ParamsConfig) -> Result<Fe> {
    match &p.eta {
        EtaChoice::Named(name) => match name.as_str() {
            "0" => Ok(Fe::ZERO),
            "nonsquare-min" => nonsquare_min(field),
            other => Err(Error::Config(format!("unknown eta selector {other:?}"))),
        },
        EtaChoice::Digits(d) => field.from_digits(d),
    }
}

/// Resolves a subspace choice to m elements of F_{q^n}.
pub fn select_subspace(field: &FieldRef, m: usize, choice: &SubspaceChoice) -> Result<Vec<Fe>> {
    match choice {
        SubspaceChoice::Explicit(rows) => {
            if rows.len() != m {
                return Err(Error::Config(format!("S has {} elements, m = {m}", rows.len())));
            }
            rows.iter().map(|d| field.from_digits(d)).collect()
        }
        SubspaceChoice::Preset(name) => {
            let (kind, arg) = name
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("bad subspace preset {name:?}")))?;
            let arg: u64 = arg
                .parse()
                .map_err(|_| Error::Config(format!("bad subspace preset {name:?}")))?;
            match kind {
                "generic" => generic_subspace(field, m, arg),
                "subfield" => subfield_subspace(field, m, arg as u32),
                _ => Err(Error::Config(format!("unknown subspace preset {name:?}"))),
            }
        }
    }
}

/// α_1 = 1, then ξ^{seed+1}, ξ^{seed+2}, … whenever independent.
pub fn generic_subspace(field: &FieldRef, m: usize, seed: u64) -> Result<Vec<Fe>> {
    if m > field.n() as usize {
        return Err(Error::TooLarge { m, n: field.n() });
    }
    let pb = field.power_basis();
    let sf = field.scalars();
    let mut span = crate::linalg::Subspace::new(field.n() as usize);
    let mut out = Vec::with_capacity(m);
    let xi = field.generator();
    let period = field.order() - 1;
    let mut j = 0u64;
    while out.len() < m {
        let x = if out.is_empty() {
            Fe::ONE
        } else {
            j += 1;
            field.pow(xi, (seed + j) % period)
        };
        if span.insert(&pb.coords(x), sf) {
            out.push(x);
        }
    }
    Ok(out)
}

/// (1, ζ, …, ζ^{m−1}) with ζ generating F_{q^ℓ}; needs m ≤ ℓ.
pub fn subfield_subspace(field: &FieldRef, m: usize, l: u32) -> Result<Vec<Fe>> {
    let z = field.subfield_generator(l)?;
    if m > l as usize {
        return Err(Error::ParamViolation(format!(
            "subfield:{l} supplies at most {l} independent elements, m = {m}"
        )));
    }
    Ok((0..m as u64).map(|i| field.pow(z, i)).collect())
}

/// A built run: the code with everything it was made from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: FieldRef,
    pub params: CodeParams,
    pub spec: SubspaceSpec,
    pub code: RankCode,
    pub guards: Guards,
}

impl Instance {
    pub fn codeword_limit(&self) -> u64 {
        if self.guards.unsafe_limits {
            u64::MAX
        } else {
            self.guards.codewords
        }
    }

    pub fn gl_limit(&self) -> u64 {
        if self.guards.unsafe_limits {
            u64::MAX
        } else {
            self.guards.gl
        }
    }

    pub fn basis(&self) -> Basis {
        self.field.power_basis()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructReport {
    pub field: FieldDescription,
    pub code: RankCodeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mrd: Option<MrdCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_distribution: Option<Vec<u64>>,
}

pub fn cmd_construct(cfg: &RunConfig) -> Result<ConstructReport> {
    let inst = cfg.build()?;
    let (mrd, weights) = if cfg.tasks.contains(&Task::Mrd) {
        let limit = inst.codeword_limit();
        (
            Some(inst.code.is_mrd(limit)?),
            Some(inst.code.weight_distribution(limit)?),
        )
    } else {
        (None, None)
    };
    Ok(ConstructReport {
        field: inst.field.description(),
        code: inst.code.to_json(),
        mrd,
        weight_distribution: weights,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NucleiReport {
    pub middle: NucleusReport,
    pub right: NucleusReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaSet>,
}

impl NucleiReport {
    /// Internal consistency: both nuclei contain the scalars.
    pub fn consistent(&self) -> bool {
        self.middle.contains_scalars && self.right.contains_scalars
    }

    pub fn summary(&self) -> String {
        let line = |r: &NucleusReport, name: &str| {
            let pred = r
                .predicted_order
                .map_or("unavailable".to_string(), |p| p.to_string());
            let agree = match r.agree {
                Some(true) => "agree",
                Some(false) => "DISAGREE",
                None => "no prediction",
            };
            format!(
                "{name} nucleus: brute force {} | predicted {pred} | {agree} | field: {}",
                r.order, r.field_structure.is_field
            )
        };
        format!("{}\n{}", line(&self.middle, "middle"), line(&self.right, "right"))
    }
}

pub fn nuclei_for(inst: &Instance) -> Result<NucleiReport> {
    let limit = inst.codeword_limit();
    let middle = analyze_middle(&inst.code, limit)?;
    let right = analyze_right(&inst.code, limit, true)?;
    let theta = theta_for(inst).ok();
    Ok(NucleiReport {
        middle,
        right,
        theta,
    })
}

pub fn cmd_nuclei(cfg: &RunConfig) -> Result<NucleiReport> {
    nuclei_for(&cfg.build()?)
}

/// Θ from the predicted right nucleus, when the prediction applies.
pub fn theta_for(inst: &Instance) -> Result<ThetaSet> {
    let pred = predict_right_nucleus(&inst.params, &inst.spec, &inst.basis(), true)?;
    Ok(theta_from_coefficients(
        &inst.field,
        &pred.coefficient_bases,
        pred.ell_right,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct AutReport {
    pub order: usize,
    pub is_group: bool,
    pub contains_identity: bool,
    pub scalar_subgroup_order: usize,
    pub contains_scalar_subgroup: bool,
    pub known_automorphisms: usize,
    pub known_contained: bool,
    pub ell: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_predicates: Option<ThetaPredicates>,
    /// The monomial necessity statement applies to this code.
    pub theorem_applies: bool,
    pub monomial_fraction: f64,
    /// Fraction of n-side maps with all exponents in one class mod ℓ.
    pub single_class_fraction: f64,
    pub triples: Vec<AutTriple>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaPredicates {
    pub dim: usize,
    pub meets_proper_subfield: bool,
    pub is_whole_field: bool,
    pub from_bruteforce: bool,
}

impl AutReport {
    pub fn summary(&self) -> String {
        format!(
            "|Aut| = {} (group: {}), scalar subgroup {} contained: {}, monomial fraction {:.3}, theorem applies: {}",
            self.order,
            self.is_group,
            self.scalar_subgroup_order,
            self.contains_scalar_subgroup,
            self.monomial_fraction,
            self.theorem_applies
        )
    }
}

pub fn aut_for(inst: &Instance) -> Result<AutReport> {
    let code = &inst.code;
    let sf = code.scalars();
    let basis = inst.basis();
    let auts = aut_bruteforce(code, inst.gl_limit(), inst.codeword_limit())?;
    let set: std::collections::HashSet<&AutTriple> = auts.iter().collect();
    let scalars = middle_scalar_subgroup(&middle_nucleus_bruteforce(code), code.n(), sf);
    let known = generate_known_automorphisms(code, &inst.spec, &basis);

    // the monomial statements are phrased for 1 ∈ S
    let (params, spec) = if inst.spec.alphas().contains(&Fe::ONE) {
        (inst.params.clone(), inst.spec.clone())
    } else {
        normalize_by_first(&inst.params, &inst.spec)?
    };
    let ell = smallest_containing_subfield(&spec);
    let flags = hypothesis_check(&params);
    let theta = match theta_for(inst) {
        Ok(t) => Some((t, false)),
        Err(_) => {
            let right = crate::nuclei::right_nucleus_bruteforce(code);
            theta_set(&right, &basis, ell).ok().map(|t| (t, true))
        }
    };
    let (m, n, k) = (params.m(), params.n(), params.k());
    let theorem_applies = k < m
        && m < n
        && flags.right_prediction
        && theta.as_ref().is_some_and(|(t, bf)| !bf && t.meets_proper_subfield);
    let passes = auts
        .iter()
        .filter(|t| monomial_verdict(t, &spec, &basis, ell).passes())
        .count();
    let single_class = auts
        .iter()
        .filter(|t| exponent_classes(&LinearizedPoly::from_matrix(&basis, &t.b), ell).len() == 1)
        .count();
    let frac = |x: usize| {
        if auts.is_empty() {
            0.0
        } else {
            x as f64 / auts.len() as f64
        }
    };
    Ok(AutReport {
        order: auts.len(),
        is_group: is_group(&auts, sf),
        contains_identity: set.contains(&AutTriple::identity(code.m(), code.n())),
        scalar_subgroup_order: scalars.len(),
        contains_scalar_subgroup: scalars.iter().all(|t| set.contains(t)),
        known_automorphisms: known.len(),
        known_contained: known.iter().all(|t| set.contains(t)),
        ell,
        theta_predicates: theta.map(|(t, bf)| ThetaPredicates {
            dim: t.dim,
            meets_proper_subfield: t.meets_proper_subfield,
            is_whole_field: t.is_whole_field,
            from_bruteforce: bf,
        }),
        theorem_applies,
        monomial_fraction: frac(passes),
        single_class_fraction: frac(single_class),
        triples: auts,
    })
}

pub fn cmd_aut(cfg: &RunConfig) -> Result<AutReport> {
    aut_for(&cfg.build()?)
}

/// A block of the sweep grid; every combination of the listed values is run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBlock {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    pub n: Vec<u32>,
    pub m: Vec<usize>,
    pub k: Vec<usize>,
    #[serde(default = "default_s")]
    pub s: Vec<i64>,
    #[serde(default = "default_h")]
    pub h: Vec<u32>,
    #[serde(default = "default_eta")]
    pub eta: Vec<EtaChoice>,
    #[serde(default = "default_subspace")]
    pub subspace: Vec<SubspaceChoice>,
}

fn default_s() -> Vec<i64> {
    vec![1]
}
fn default_h() -> Vec<u32> {
    vec![0]
}
fn default_eta() -> Vec<EtaChoice> {
    vec![EtaChoice::default()]
}
fn default_subspace() -> Vec<SubspaceChoice> {
    vec![SubspaceChoice::default()]
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(default)]
    pub grid: Vec<GridBlock>,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub guards: Guards,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<SweepConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// The run configurations of the grid, skipping shapes that are not
    /// codes at all (k ≥ m, m > n, h ≥ n).
    pub fn runs(&self) -> Vec<RunConfig> {
        let mut out = Vec::new();
        for b in &self.grid {
            for &n in &b.n {
                for &m in &b.m {
                    for &k in &b.k {
                        if k == 0 || k >= m || m > n as usize {
                            continue;
                        }
                        for &s in &b.s {
                            for &h in &b.h {
                                if h >= n {
                                    continue;
                                }
                                for eta in &b.eta {
                                    for sub in &b.subspace {
                                        out.push(RunConfig {
                                            field: FieldConfig {
                                                p: b.p,
                                                e: b.e,
                                                n,
                                                modulus: None,
                                            },
                                            params: ParamsConfig {
                                                m,
                                                k,
                                                s,
                                                h,
                                                eta: eta.clone(),
                                            },
                                            subspace: sub.clone(),
                                            tasks: self.tasks.clone(),
                                            guards: self.guards.clone(),
                                            output: OutputConfig::default(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

pub const SWEEP_HEADER: &str = "q,n,m,k,s,h,eta,subspace,mrd,d,mid_bf,mid_pred,mid_agree,right_bf,right_pred,right_agree,flags,error";

fn eta_label(e: &EtaChoice) -> String {
    match e {
        EtaChoice::Named(s) => s.clone(),
        EtaChoice::Digits(d) => d.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
    }
}

fn subspace_label(s: &SubspaceChoice) -> String {
    match s {
        SubspaceChoice::Preset(p) => p.clone(),
        SubspaceChoice::Explicit(rows) => rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

/// One computed sweep row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SweepRow {
    pub key: (u64, u32, usize, usize, i64, u32, String, String),
    pub mrd: Option<bool>,
    pub d: Option<usize>,
    pub mid_bf: Option<u128>,
    pub mid_pred: Option<u128>,
    pub mid_agree: Option<bool>,
    pub right_bf: Option<u128>,
    pub right_pred: Option<u128>,
    pub right_agree: Option<bool>,
    pub flags: Option<String>,
    pub error: Option<String>,
}

fn set_flag_names(f: &HypothesisFlags) -> String {
    let v = serde_json::to_value(f).expect("flags serialize");
    v.as_object()
        .expect("flags are an object")
        .iter()
        .filter(|(_, b)| b.as_bool() == Some(true))
        .map(|(k, _)| k.clone())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn sweep_row(cfg: &RunConfig) -> SweepRow {
    let q = cfg.field.p.pow(cfg.field.e);
    let p = &cfg.params;
    let mut row = SweepRow {
        key: (
            q,
            cfg.field.n,
            p.m,
            p.k,
            p.s,
            p.h,
            eta_label(&p.eta),
            subspace_label(&cfg.subspace),
        ),
        mrd: None,
        d: None,
        mid_bf: None,
        mid_pred: None,
        mid_agree: None,
        right_bf: None,
        right_pred: None,
        right_agree: None,
        flags: None,
        error: None,
    };
    let result = (|| -> Result<()> {
        let inst = cfg.build()?;
        row.flags = Some(set_flag_names(&hypothesis_check(&inst.params)));
        let all = cfg.tasks.is_empty();
        if all || cfg.tasks.contains(&Task::Mrd) {
            let cert = inst.code.is_mrd(inst.codeword_limit())?;
            row.mrd = Some(cert.is_mrd);
            row.d = cert.min_distance;
        }
        if all || cfg.tasks.contains(&Task::Nuclei) {
            let rep = nuclei_for(&inst)?;
            row.mid_bf = Some(rep.middle.order);
            row.mid_pred = rep.middle.predicted_order;
            row.mid_agree = rep.middle.agree;
            row.right_bf = Some(rep.right.order);
            row.right_pred = rep.right.predicted_order;
            row.right_agree = rep.right.agree;
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row
}

fn cell<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.guards.validate()?;
    let mut rows: Vec<SweepRow> = cfg.runs().par_iter().map(sweep_row).collect();
    rows.sort();
    Ok(rows)
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let (q, n, m, k, s, h, eta, sub) = &r.key;
        let fields = [
            q.to_string(),
            n.to_string(),
            m.to_string(),
            k.to_string(),
            s.to_string(),
            h.to_string(),
            csv_escape(eta),
            csv_escape(sub),
            cell(&r.mrd),
            cell(&r.d),
            cell(&r.mid_bf),
            cell(&r.mid_pred),
            cell(&r.mid_agree),
            cell(&r.right_bf),
            cell(&r.right_pred),
            cell(&r.right_agree),
            csv_escape(r.flags.as_deref().unwrap_or("")),
            csv_escape(r.error.as_deref().unwrap_or("")),
        ];
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

pub fn cmd_sweep(cfg: &SweepConfig) -> Result<String> {
    Ok(render_csv(&sweep_rows(cfg)?))
}

/// One property of the self-check suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn selfcheck_configs() -> Vec<RunConfig> {
    let mk = |p: u64, n: u32, m: usize, k: usize, h: u32, eta: &str, sub: &str| RunConfig {
        field: FieldConfig {
            p,
            e: 1,
            n,
            modulus: None,
        },
        params: ParamsConfig {
            m,
            k,
            s: 1,
            h,
            eta: EtaChoice::Named(eta.into()),
        },
        subspace: SubspaceChoice::Preset(sub.into()),
        tasks: vec![],
        guards: Guards::default(),
        output: OutputConfig::default(),
    };
    vec![
        mk(2, 4, 3, 1, 0, "0", "generic:0"),
        mk(2, 5, 4, 2, 0, "0", "generic:0"),
        mk(2, 6, 3, 1, 0, "0", "subfield:3"),
        mk(3, 4, 3, 1, 0, "0", "generic:0"),
        mk(3, 4, 3, 1, 2, "nonsquare-min", "generic:0"),
        mk(3, 4, 3, 2, 2, "nonsquare-min", "generic:1"),
    ]
}

/// Runs the invariant suite on a small fixed grid.
pub fn cmd_selfcheck() -> Vec<CheckResult> {
    use rand::SeedableRng;
    let mut results = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for cfg in selfcheck_configs() {
        let tag = format!(
            "q={} n={} m={} k={} h={} eta={} S={}",
            cfg.field.p,
            cfg.field.n,
            cfg.params.m,
            cfg.params.k,
            cfg.params.h,
            eta_label(&cfg.params.eta),
            subspace_label(&cfg.subspace)
        );
        let inst = match cfg.build() {
            Ok(i) => i,
            Err(e) => {
                results.push(check("build", false, format!("{tag}: {e}")));
                continue;
            }
        };
        let f = &inst.field;
        let spec = &inst.spec;
        let theta_ok = spec.elements().iter().all(|&u| spec.theta_eval(u).is_zero());
        results.push(check("theta vanishes on U_S", theta_ok, tag.clone()));

        let mut reduce_ok = true;
        for _ in 0..20 {
            let g = LinearizedPoly::new(f, (0..f.n()).map(|_| f.random(&mut rng)).collect());
            let red = LinearizedPoly::from_transversal(f, &spec.reduce(&g), spec.step());
            reduce_ok &= spec.alphas().iter().all(|&a| red.eval(a) == g.eval(a))
                && spec.reduce(&red) == spec.reduce(&g);
        }
        results.push(check("reduction agrees on U_S and is idempotent", reduce_ok, tag.clone()));

        match inst.code.is_mrd(inst.codeword_limit()) {
            Ok(cert) => {
                let d_ok = cert.min_distance == Some(inst.params.m() - inst.params.k() + 1);
                results.push(check(
                    "code is MRD with d = m-k+1",
                    cert.is_mrd && d_ok,
                    format!("{tag}: d = {:?}", cert.min_distance),
                ));
            }
            Err(e) => results.push(check("code is MRD with d = m-k+1", false, format!("{tag}: {e}"))),
        }

        match nuclei_for(&inst) {
            Ok(rep) => {
                results.push(check("nuclei contain scalars", rep.consistent(), tag.clone()));
                results.push(check(
                    "middle nucleus is a field",
                    rep.middle.field_structure.is_field,
                    tag.clone(),
                ));
                let agree = [&rep.middle, &rep.right]
                    .iter()
                    .all(|r| r.agree != Some(false));
                results.push(check(
                    "brute-force nuclei match predictions",
                    agree,
                    format!(
                        "{tag}: middle {}/{:?}, right {}/{:?}",
                        rep.middle.order,
                        rep.middle.predicted_order,
                        rep.right.order,
                        rep.right.predicted_order
                    ),
                ));
            }
            Err(e) => results.push(check("nuclei contain scalars", false, format!("{tag}: {e}"))),
        }

        let sf = inst.code.scalars();
        let a = random_invertible(inst.code.m(), sf, &mut rng);
        let b = random_invertible(inst.code.n(), sf, &mut rng);
        let same = inst
            .code
            .apply_equivalence(&a, &b, None, 0)
            .and_then(|eq| {
                Ok(eq.weight_distribution(inst.codeword_limit())?
                    == inst.code.weight_distribution(inst.codeword_limit())?)
            })
            .unwrap_or(false);
        results.push(check("equivalence preserves weight distribution", same, tag));
    }
    results
}

/// Uniformly random element of GL(n,q) by rejection.
pub fn random_invertible<R: rand::Rng>(n: usize, sf: &crate::gf::ScalarField, rng: &mut R) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..sf.q())).collect();
        let m = Matrix::from_vec(n, n, data);
        if m.is_invertible(sf) {
            return m;
        }
    }
}

/// Command-line overrides applied on top of a config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u64>,
    pub e: Option<u32>,
    pub n: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<i64>,
    pub h: Option<u32>,
    pub eta: Option<String>,
    pub subspace: Option<String>,
    pub tasks: Option<Vec<Task>>,
    pub unsafe_limits: bool,
    pub codeword_limit: Option<u64>,
    pub gl_limit: Option<u64>,
    pub output: Option<String>,
}

/// "0", "nonsquare-min", or comma-separated digits.
pub fn parse_eta(text: &str) -> Result<EtaChoice> {
    if text == "0" || text == "nonsquare-min" {
        return Ok(EtaChoice::Named(text.into()));
    }
    text.split(',')
        .map(|d| d.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(EtaChoice::Digits)
        .map_err(|_| Error::Config(format!("bad eta {text:?}")))
}

/// A preset name, or explicit elements as "d,d,d;d,d,d".
pub fn parse_subspace(text: &str) -> Result<SubspaceChoice> {
    if text.contains(':') {
        return Ok(SubspaceChoice::Preset(text.into()));
    }
    text.split(';')
        .map(|el| {
            el.split(',')
                .map(|d| d.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(SubspaceChoice::Explicit)
        .map_err(|_| Error::Config(format!("bad subspace {text:?}")))
}

impl Overrides {
    /// Merges into `base` (or builds a config from scratch when none is given).
    pub fn apply(&self, base: Option<RunConfig>) -> Result<RunConfig> {
        let missing = |what: &str| Error::Config(format!("missing {what} (no config file given)"));
        let mut cfg = match base {
            Some(c) => c,
            None => RunConfig {
                field: FieldConfig {
                    p: self.p.ok_or_else(|| missing("--p"))?,
                    e: 1,
                    n: self.n.ok_or_else(|| missing("--n"))?,
                    modulus: None,
                },
                params: ParamsConfig {
                    m: self.m.ok_or_else(|| missing("--m"))?,
                    k: self.k.ok_or_else(|| missing("--k"))?,
                    s: 1,
                    h: 0,
                    eta: EtaChoice::default(),
                },
                subspace: SubspaceChoice::default(),
                tasks: vec![],
                guards: Guards::default(),
                output: OutputConfig::default(),
            },
        };
        if let Some(p) = self.p {
            cfg.field.p = p;
        }
        if let Some(e) = self.e {
            cfg.field.e = e;
        }
        if let Some(n) = self.n {
            cfg.field.n = n;
        }
        if let Some(m) = &self.modulus {
            cfg.field.modulus = Some(m.clone());
        }
        if let Some(m) = self.m {
            cfg.params.m = m;
        }
        if let Some(k) = self.k {
            cfg.params.k = k;
        }
        if let Some(s) = self.s {
            cfg.params.s = s;
        }
        if let Some(h) = self.h {
            cfg.params.h = h;
        }
        if let Some(eta) = &self.eta {
            cfg.params.eta = parse_eta(eta)?;
        }
        if let Some(sub) = &self.subspace {
            cfg.subspace = parse_subspace(sub)?;
        }
        if let Some(t) = &self.tasks {
            cfg.tasks = t.clone();
        }
        if self.unsafe_limits {
            cfg.guards.unsafe_limits = true;
        }
        if let Some(c) = self.codeword_limit {
            cfg.guards.codewords = c;
        }
        if let Some(g) = self.gl_limit {
            cfg.guards.gl = g;
        }
        if let Some(o) = &self.output {
            cfg.output.path = Some(o.clone());
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, n: u32, m: usize, k: usize, h: u32, eta: &str, sub: &str) -> RunConfig {
        RunConfig::from_json(&format!(
            r#"{{"field":{{"p":{p},"n":{n}}},"params":{{"m":{m},"k":{k},"h":{h},"eta":"{eta}"}},"subspace":"{sub}"}}"#
        ))
        .unwrap()
    }

    #[test]
    fn construct_and_errors() {
        let rep = cmd_construct(&cfg(3, 4, 3, 1, 0, "0", "generic:0")).unwrap();
        assert_eq!(rep.code.basis.len(), 4);
        let err = cmd_construct(&cfg(3, 4, 3, 3, 0, "0", "generic:0")).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_INVARIANT);
        let err = cmd_construct(&cfg(2, 4, 3, 1, 0, "nonsquare-min", "generic:0")).unwrap_err();
        assert_eq!(err, Error::NoNonSquare);
        let mut c = cfg(2, 4, 3, 1, 0, "0", "generic:0");
        c.params.eta = EtaChoice::Digits(vec![0, 1, 0, 0]);
        assert!(matches!(
            cmd_construct(&c).unwrap_err(),
            Error::NormConditionViolated { .. }
        ));
    }

    #[test]
    fn presets() {
        let f = Field::new(2, 1, 6, None).unwrap();
        let g = generic_subspace(&f, 4, 0).unwrap();
        assert_eq!(g[0], Fe::ONE);
        assert_eq!(g.len(), 4);
        assert_eq!(generic_subspace(&f, 4, 0).unwrap(), g);
        let s = subfield_subspace(&f, 3, 3).unwrap();
        assert!(s.iter().all(|&x| f.is_in_subfield(x, 3)));
        assert!(subfield_subspace(&f, 4, 3).is_err());
        assert!(subfield_subspace(&f, 2, 4).is_err());
        let f3 = Field::new(3, 1, 4, None).unwrap();
        let ns = nonsquare_min(&f3).unwrap();
        assert_eq!(ns, f3.generator());
    }

    #[test]
    fn guards_need_acknowledgment() {
        let mut c = cfg(3, 4, 3, 1, 0, "0", "generic:0");
        c.guards.codewords = 1 << 30;
        assert!(matches!(c.build().unwrap_err(), Error::Config(_)));
        c.guards.unsafe_limits = true;
        assert!(c.build().is_ok());
        let mut small = cfg(3, 4, 3, 1, 0, "0", "generic:0");
        small.guards.codewords = 10;
        small.tasks = vec![Task::Mrd];
        let err = cmd_construct(&small).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_GUARD);
    }

    #[test]
    fn nuclei_command() {
        let rep = cmd_nuclei(&cfg(2, 6, 3, 1, 0, "0", "subfield:3")).unwrap();
        assert_eq!(rep.middle.order, 8);
        assert_eq!(rep.right.order, 4096);
        assert_eq!((rep.middle.agree, rep.right.agree), (Some(true), Some(true)));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["middle"]["kind"], "middle");
        assert_eq!(json["right"]["r"], 2);
    }

    #[test]
    fn sweep_is_sorted_and_deterministic() {
        assert_eq!(cmd_sweep(&SweepConfig::default()).unwrap(), format!("{SWEEP_HEADER}\n"));
        let grid = SweepConfig::from_json(
            r#"{"grid":[{"p":2,"n":[5,4],"m":[4,3],"k":[2,1]}],"tasks":["mrd","nuclei"]}"#,
        )
        .unwrap();
        let a = cmd_sweep(&grid).unwrap();
        assert_eq!(a, cmd_sweep(&grid).unwrap());
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines.len(), 1 + 8);
        assert!(lines[1].starts_with("2,4,3,1,"));
        let bad = SweepConfig::from_json(
            r#"{"grid":[{"p":2,"n":[4],"m":[3],"k":[1],"eta":["nonsquare-min"]}]}"#,
        )
        .unwrap();
        let out = cmd_sweep(&bad).unwrap();
        assert!(out.lines().nth(1).unwrap().ends_with("no non-square exists in a field of characteristic 2"));
    }

    #[test]
    fn overrides_build_config() {
        let o = Overrides {
            p: Some(3),
            n: Some(4),
            m: Some(3),
            k: Some(1),
            h: Some(2),
            eta: Some("nonsquare-min".into()),
            subspace: Some("generic:1".into()),
            ..Default::default()
        };
        let c = o.apply(None).unwrap();
        assert_eq!(c.params.h, 2);
        assert!(c.build().is_ok());
        assert!(parse_subspace("1,0,0,0;0,1,0,0").is_ok());
        assert_eq!(parse_eta("1,2").unwrap(), EtaChoice::Digits(vec![1, 2]));
    }
}
