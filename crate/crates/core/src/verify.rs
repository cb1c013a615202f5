//! The claim-verification suite behind `indfourier verify`.
//!
//! Claims are either asserted (they decide the exit status) or report-only
//! (known to fail in edge cases; printed with their witness but never fatal).
//! Every randomized check draws from an RNG derived from the configured seed,
//! the claim id and the target label, so reports are reproducible bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, HaarWeights, Subgroup};
use crate::induce::{self, CTensor, InducedRep};
use crate::io;
use crate::linalg::{self, CVec};
use crate::repr::UnitaryRep;
use crate::spaces::{self, BlockNorm, Exponent};
use crate::transform::{self, CoefficientSpace, SpectralField, VectorFunction, VectorMeasure};

/// What a claim is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// The pair `(G, K)` alone.
    Group,
    /// Each representation in the list.
    Sigma,
    /// Each unordered pair of distinct representations.
    Pair,
    /// The set of pairwise inequivalent inductions.
    Set,
}

#[derive(Debug, Clone, Copy)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub asserted: bool,
    pub tolerance: f64,
    pub scope: Scope,
    pub summary: &'static str,
}

const fn claim(
    id: &'static str,
    asserted: bool,
    tolerance: f64,
    scope: Scope,
    summary: &'static str,
) -> ClaimSpec {
    ClaimSpec {
        id,
        asserted,
        tolerance,
        scope,
        summary,
    }
}

/// Every claim the suite knows, in report order.
pub const CLAIMS: &[ClaimSpec] = &[
    claim(
        "ctensor",
        true,
        1e-10,
        Scope::Sigma,
        "integral of u_ij conj(u_lm) equals c_ijlm / d_sigma",
    ),
    claim(
        "ctensor-irreducible",
        true,
        1e-10,
        Scope::Sigma,
        "c_ijlm = delta_il delta_jm for an irreducible induction",
    ),
    claim(
        "ctensor-literal-indices",
        false,
        1e-10,
        Scope::Sigma,
        "c-tensor with the alpha indices taken literally agrees with the computed one",
    ),
    claim(
        "cross-sigma-orthogonality",
        false,
        1e-10,
        Scope::Pair,
        "coefficients of inductions from different sigma are orthogonal",
    ),
    claim(
        "induced-contract",
        true,
        1e-10,
        Scope::Sigma,
        "U_e = I, U is unitary and multiplicative",
    ),
    claim(
        "inversion",
        true,
        1e-9,
        Scope::Set,
        "synthesis of the transform recovers span elements",
    ),
    claim(
        "lemma-single-entry",
        true,
        1e-10,
        Scope::Sigma,
        "transform of u_ij a is a/d_sigma at (theta_j, theta_i) and zero elsewhere",
    ),
    claim(
        "norm-bound",
        true,
        1e-10,
        Scope::Set,
        "m -> m_hat is linear and ||m_hat||_inf <= ||m||, with equality at a point mass at e",
    ),
    claim(
        "parseval",
        true,
        1e-9,
        Scope::Set,
        "<f, g> = <f_hat, g_hat> on span elements",
    ),
    claim(
        "plancherel",
        true,
        1e-9,
        Scope::Set,
        "||f||_2 = ||f_hat||_2 on span elements",
    ),
    claim(
        "plancherel-offspan",
        false,
        1e-9,
        Scope::Set,
        "||f||_2 = ||f_hat||_2 for arbitrary f",
    ),
    claim(
        "project-idempotent",
        true,
        1e-12,
        Scope::Sigma,
        "the equivariant projection is idempotent and lands in the induced space",
    ),
    claim(
        "s2-inner-axioms",
        true,
        1e-10,
        Scope::Set,
        "the weighted inner product is Hermitian, linear, positive and satisfies Cauchy-Schwarz",
    ),
    claim(
        "schur-orthogonality",
        true,
        1e-10,
        Scope::Sigma,
        "integral over K of L_ij conj(L'_lm) is delta delta / d or 0",
    ),
    claim(
        "sinf-opnorm-chain",
        false,
        1e-12,
        Scope::Set,
        "with block operator norms, ||Phi||_inf <= ||Phi||_3",
    ),
    claim(
        "snorm-monotone",
        true,
        1e-12,
        Scope::Set,
        "||Phi||_q <= ||Phi||_p for p <= q in {1, 1.5, 2, 3, inf}",
    ),
    claim(
        "snorm-norm-axioms",
        true,
        1e-10,
        Scope::Set,
        "each ||.||_p is absolutely homogeneous and subadditive",
    ),
    claim(
        "truncation",
        true,
        1.0,
        Scope::Set,
        "dropping blocks of norm below 1/n costs less than 1/n in the sup norm",
    ),
    claim(
        "weil",
        true,
        1e-12,
        Scope::Group,
        "sum over G with lambda equals the iterated sum over G/K and K",
    ),
];

pub fn claim_spec(id: &str) -> Option<&'static ClaimSpec> {
    CLAIMS.iter().find(|c| c.id == id)
}

fn default_space_dim() -> usize {
    1
}

fn default_samples() -> usize {
    100
}

/// Configuration of a verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Path to a group file, or `builtin:<catalog name>`.
    pub group: String,
    #[serde(default)]
    pub subgroup_generators: Vec<usize>,
    /// Catalog names or representation files.
    pub sigmas: Vec<String>,
    #[serde(default = "default_space_dim")]
    pub space_dim: usize,
    /// Tolerance for validating input representations.
    #[serde(default)]
    pub tolerance: Option<f64>,
    /// Per-claim tolerance overrides.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
    /// Claims to run; all when absent.
    #[serde(default)]
    pub claims: Option<Vec<String>>,
    /// Random samples per randomized claim.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Directory that relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn parse(context: &str, text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            context: context.to_string(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&path.display().to_string(), &text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |message: String| Error::Parse {
            context: "verify config".into(),
            message,
        };
        if self.sigmas.is_empty() {
            return Err(bad(
                "field `sigmas` must list at least one representation".into()
            ));
        }
        if self.space_dim == 0 {
            return Err(bad("field `space_dim` must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(bad("field `samples` must be at least 1".into()));
        }
        if let Some(t) = self.tolerance {
            if t.is_nan() || t <= 0.0 {
                return Err(bad(format!("field `tolerance` must be positive, got {t}")));
            }
        }
        for (id, t) in &self.tolerances {
            if claim_spec(id).is_none() {
                return Err(bad(format!("unknown claim `{id}` in `tolerances`")));
            }
            if t.is_nan() || *t <= 0.0 {
                return Err(bad(format!(
                    "tolerance for `{id}` must be positive, got {t}"
                )));
            }
        }
        for id in self.claims.iter().flatten() {
            if claim_spec(id).is_none() {
                return Err(bad(format!("unknown claim `{id}` in `claims`")));
            }
        }
        Ok(())
    }

    fn resolve(&self, source: &str) -> String {
        if source.starts_with(io::BUILTIN_PREFIX) || Path::new(source).is_absolute() {
            return source.to_string();
        }
        match &self.base_dir {
            Some(dir) if dir.join(source).exists() => dir.join(source).display().to_string(),
            _ => source.to_string(),
        }
    }

    fn tolerance_for(&self, spec: &ClaimSpec) -> f64 {
        self.tolerances
            .get(spec.id)
            .copied()
            .unwrap_or(spec.tolerance)
    }

    fn selected(&self) -> Vec<&'static ClaimSpec> {
        match &self.claims {
            None => CLAIMS.iter().collect(),
            Some(ids) => CLAIMS
                .iter()
                .filter(|c| ids.iter().any(|i| i == c.id))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT-APPLICABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub sigma: String,
    pub status: Status,
    pub asserted: bool,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub group: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub seed: u64,
    pub space_dim: usize,
    /// Labels of the inductions used by set-level claims.
    pub induction_set: Vec<String>,
    pub claims: Vec<ClaimReport>,
}

impl VerifyReport {
    /// True iff every asserted claim passed or does not apply.
    pub fn success(&self) -> bool {
        self.claims
            .iter()
            .all(|c| !c.asserted || c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let w_id = self
            .claims
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let w_s = self
            .claims
            .iter()
            .map(|c| c.sigma.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            out,
            "{:<w_id$}  {:<w_s$}  {:<14}  {:<11}  {:>11}",
            "claim", "sigma", "status", "kind", "residual"
        );
        for c in &self.claims {
            let residual = c
                .max_residual
                .map_or("-".to_string(), |r| format!("{r:.3e}"));
            let kind = if c.asserted {
                "asserted"
            } else {
                "report-only"
            };
            let _ = writeln!(
                out,
                "{:<w_id$}  {:<w_s$}  {:<14}  {:<11}  {:>11}",
                c.id,
                c.sigma,
                c.status.to_string(),
                kind,
                residual
            );
            if c.status == Status::Fail {
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
        }
        let failed = self
            .claims
            .iter()
            .filter(|c| c.asserted && c.status == Status::Fail)
            .count();
        let _ = writeln!(
            out,
            "{} claims, {} asserted failures",
            self.claims.len(),
            failed
        );
        out
    }
}

struct Context {
    group: Arc<FiniteGroup>,
    subgroup: Arc<Subgroup>,
    sigmas: Vec<Arc<UnitaryRep>>,
    induced: Vec<Arc<InducedRep>>,
    set: Vec<Arc<InducedRep>>,
    dropped: Vec<String>,
    space: CoefficientSpace,
    seed: u64,
    samples: usize,
    rep_tol: f64,
}

#[derive(Debug, Clone, Copy)]
enum Target {
    Group,
    Sigma(usize),
    Pair(usize, usize),
    Set,
}

struct Outcome {
    residual: Option<f64>,
    pass: Option<bool>,
    witness: Option<Value>,
    note: Option<String>,
}

impl Outcome {
    fn measured(residual: f64, tol: f64) -> Self {
        Self {
            residual: Some(residual),
            pass: Some(residual <= tol),
            witness: None,
            note: None,
        }
    }

    fn not_applicable(note: impl Into<String>) -> Self {
        Self {
            residual: None,
            pass: None,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of the RNG used for `(claim, label)` in a run with `seed`.
pub fn job_seed(seed: u64, claim: &str, label: &str) -> u64 {
    seed ^ fnv1a(claim) ^ fnv1a(label).rotate_left(17)
}

fn c_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Runs the configured claims. `default_tol` validates input representations
/// unless the config overrides it.
pub fn run_verify(config: &VerifyConfig, default_tol: f64) -> Result<VerifyReport> {
    config.validate()?;
    let ctx = build_context(config, default_tol)?;
    let mut jobs = Vec::new();
    for spec in config.selected() {
        match spec.scope {
            Scope::Group => jobs.push((spec, Target::Group)),
            Scope::Set => jobs.push((spec, Target::Set)),
            Scope::Sigma => jobs.extend((0..ctx.sigmas.len()).map(|i| (spec, Target::Sigma(i)))),
            Scope::Pair => {
                let n = ctx.sigmas.len();
                if n < 2 {
                    jobs.push((spec, Target::Group));
                }
                for i in 0..n {
                    for j in i + 1..n {
                        jobs.push((spec, Target::Pair(i, j)));
                    }
                }
            }
        }
    }
    let mut claims: Vec<ClaimReport> = jobs
        .par_iter()
        .map(|&(spec, target)| run_job(&ctx, spec, target, config.tolerance_for(spec)))
        .collect::<Result<_>>()?;
    claims.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.sigma.cmp(&b.sigma)));
    Ok(VerifyReport {
        schema_version: io::SCHEMA_VERSION,
        group: ctx.group.name().to_string(),
        group_order: ctx.group.order(),
        subgroup_order: ctx.subgroup.order(),
        seed: config.seed,
        space_dim: config.space_dim,
        induction_set: ctx.set.iter().map(|u| u.label().to_string()).collect(),
        claims,
    })
}

fn build_context(config: &VerifyConfig, default_tol: f64) -> Result<Context> {
    let group = Arc::new(io::load_group(&config.resolve(&config.group))?);
    let subgroup = Arc::new(Subgroup::closure(
        group.clone(),
        &config.subgroup_generators,
    )?);
    let rep_tol = config.tolerance.unwrap_or(default_tol);
    let mut sigmas: Vec<Arc<UnitaryRep>> = Vec::new();
    for source in &config.sigmas {
        let rep = io::load_rep(&config.resolve(source), subgroup.clone(), rep_tol)?;
        if sigmas.iter().any(|s| s.label() == rep.label()) {
            return Err(Error::Parse {
                context: "verify config".into(),
                message: format!("representation `{}` is listed twice", rep.label()),
            });
        }
        sigmas.push(Arc::new(rep));
    }
    let induced: Vec<Arc<InducedRep>> = sigmas
        .iter()
        .map(|s| Arc::new(InducedRep::new(s.clone())))
        .collect();
    let mut set: Vec<Arc<InducedRep>> = Vec::new();
    let mut dropped = Vec::new();
    for u in &induced {
        let mut duplicate = false;
        for v in &set {
            if u.is_equivalent_to(v, rep_tol)? {
                duplicate = true;
                break;
            }
        }
        if duplicate {
            dropped.push(u.label().to_string());
        } else {
            set.push(u.clone());
        }
    }
    Ok(Context {
        group,
        subgroup,
        sigmas,
        induced,
        set,
        dropped,
        space: CoefficientSpace::new(config.space_dim)?,
        seed: config.seed,
        samples: config.samples,
        rep_tol,
    })
}

fn set_label(ctx: &Context) -> String {
    ctx.set
        .iter()
        .map(|u| u.label())
        .collect::<Vec<_>>()
        .join("+")
}

fn run_job(ctx: &Context, spec: &ClaimSpec, target: Target, tol: f64) -> Result<ClaimReport> {
    let label = match target {
        Target::Group => "-".to_string(),
        Target::Sigma(i) => ctx.sigmas[i].label().to_string(),
        Target::Pair(i, j) => format!("{}|{}", ctx.sigmas[i].label(), ctx.sigmas[j].label()),
        Target::Set => set_label(ctx),
    };
    let seed = job_seed(ctx.seed, spec.id, &label);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let outcome = match (spec.id, target) {
        ("weil", _) => check_weil(ctx, rng, tol),
        ("schur-orthogonality", Target::Sigma(i)) => check_schur(ctx, i, tol)?,
        ("induced-contract", Target::Sigma(i)) => check_contract(ctx, i, tol),
        ("project-idempotent", Target::Sigma(i)) => check_projection(ctx, i, rng, tol)?,
        ("ctensor", Target::Sigma(i)) => check_ctensor(ctx, i, tol),
        ("ctensor-irreducible", Target::Sigma(i)) => check_ctensor_irreducible(ctx, i, tol),
        ("ctensor-literal-indices", Target::Sigma(i)) => check_ctensor_literal(ctx, i, tol),
        ("cross-sigma-orthogonality", Target::Pair(i, j)) => check_cross(ctx, i, j, tol)?,
        ("cross-sigma-orthogonality", _) => {
            Outcome::not_applicable("needs at least two representations")
        }
        ("lemma-single-entry", Target::Sigma(i)) => check_lemma(ctx, i, rng, tol)?,
        ("inversion", _) => check_inversion(ctx, rng, tol)?,
        ("plancherel", _) => check_plancherel(ctx, rng, tol)?,
        ("parseval", _) => check_parseval(ctx, rng, tol)?,
        ("plancherel-offspan", _) => check_offspan(ctx, rng, tol)?,
        ("s2-inner-axioms", _) => check_s2_axioms(ctx, rng, tol)?,
        ("norm-bound", _) => check_norm_bound(ctx, rng, tol)?,
        ("snorm-monotone", _) => check_monotone(ctx, rng, tol)?,
        ("snorm-norm-axioms", _) => check_norm_axioms(ctx, rng, tol)?,
        ("truncation", _) => check_truncation(ctx, rng)?,
        ("sinf-opnorm-chain", _) => check_opnorm_chain(ctx, rng, tol)?,
        (id, _) => unreachable!("claim {id} scheduled on the wrong target"),
    };
    let status = match outcome.pass {
        None => Status::NotApplicable,
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
    };
    let witness = outcome.witness.map(|mut w| {
        if status == Status::Fail {
            if let Value::Object(map) = &mut w {
                map.insert("job_seed".into(), json!(seed));
            }
        }
        w
    });
    Ok(ClaimReport {
        id: spec.id.to_string(),
        sigma: label,
        status,
        asserted: spec.asserted,
        max_residual: outcome.residual,
        tolerance: tol,
        witness: if status == Status::Fail {
            witness
        } else {
            None
        },
        note: outcome.note,
    })
}

/// Index of the largest value, with the value.
fn arg_max(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
    )
}

fn check_weil(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Outcome {
    let cosets = group::CosetStructure::new(ctx.subgroup.clone());
    let weights = HaarWeights::new(&ctx.subgroup);
    let residuals: Vec<f64> = (0..ctx.samples)
        .map(|_| {
            let values: Vec<Complex64> = ctx
                .group
                .elements()
                .map(|_| linalg::random_complex(rng))
                .collect();
            group::weil_check(&cosets, &weights, |g| values[g])
        })
        .collect();
    let (k, worst) = arg_max(residuals.into_iter());
    Outcome::measured(worst, tol).with_witness(json!({ "sample": k }))
}

fn check_schur(ctx: &Context, i: usize, tol: f64) -> Result<Outcome> {
    let sigma = &ctx.sigmas[i];
    if !sigma.is_irreducible(ctx.rep_tol) {
        return Ok(Outcome::not_applicable("representation is reducible"));
    }
    let mut worst = 0.0f64;
    let mut partner = sigma.label().to_string();
    let mut skipped = Vec::new();
    for other in &ctx.sigmas {
        if !other.is_irreducible(ctx.rep_tol) {
            continue;
        }
        match sigma.schur_check(other, tol) {
            Ok(r) => {
                if r > worst {
                    worst = r;
                    partner = other.label().to_string();
                }
            }
            Err(Error::EquivalentRepresentations) => skipped.push(other.label().to_string()),
            Err(e) => return Err(e),
        }
    }
    let mut out = Outcome::measured(worst, tol).with_witness(json!({ "partner": partner }));
    if !skipped.is_empty() {
        out = out.with_note(format!(
            "skipped equivalent but distinct partners: {}",
            skipped.join(", ")
        ));
    }
    Ok(out)
}

fn check_contract(ctx: &Context, i: usize, tol: f64) -> Outcome {
    let r = ctx.induced[i].contract_residuals();
    let residual = r.unitarity.max(r.homomorphism);
    let mut out = Outcome::measured(residual, tol).with_witness(json!({
        "identity_exact": r.identity_exact,
        "unitarity": r.unitarity,
        "homomorphism": r.homomorphism,
    }));
    if !r.identity_exact {
        out.pass = Some(false);
    }
    out
}

fn check_projection(ctx: &Context, i: usize, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let sigma = &ctx.sigmas[i];
    let mut worst = 0.0f64;
    let mut at = 0;
    for k in 0..ctx.samples {
        let eta: Vec<CVec> = ctx
            .group
            .elements()
            .map(|_| linalg::random_vec(rng, sigma.dim()))
            .collect();
        let once = induce::project_equivariant(sigma, &eta)?;
        let twice = induce::project_equivariant(sigma, once.values())?;
        let idem = once
            .values()
            .iter()
            .zip(twice.values())
            .map(|(a, b)| linalg::norm(&(a - b)))
            .fold(0.0, f64::max);
        let r = idem.max(once.equivariance_residual());
        if r > worst {
            worst = r;
            at = k;
        }
    }
    Ok(Outcome::measured(worst, tol).with_witness(json!({ "sample": at })))
}

fn check_ctensor(ctx: &Context, i: usize, tol: f64) -> Outcome {
    let u = &ctx.induced[i];
    let c = CTensor::compute(u);
    let n = u.dim();
    let d = u.d_sigma() as f64;
    let lambda = u.weights().lambda_f64();
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for a in 0..n {
        for b in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let integral: Complex64 = ctx
                        .group
                        .elements()
                        .map(|t| u.operator(t)[(a, b)] * u.operator(t)[(l, m)].conj() * lambda)
                        .sum();
                    let r = (integral - c.get(a, b, l, m) / d).norm();
                    if r > worst {
                        worst = r;
                        witness = json!({
                            "index": [a, b, l, m],
                            "integral": c_json(integral),
                            "c": c_json(c.get(a, b, l, m)),
                        });
                    }
                }
            }
        }
    }
    Outcome::measured(worst, tol).with_witness(witness)
}

fn check_ctensor_irreducible(ctx: &Context, i: usize, tol: f64) -> Outcome {
    let u = &ctx.induced[i];
    if !u.is_irreducible(ctx.rep_tol) {
        return Outcome::not_applicable(format!(
            "induction is reducible (character norm {:.6})",
            u.irreducibility_index()
        ));
    }
    Outcome::measured(CTensor::compute(u).deviation_from_identity(), tol)
        .with_witness(json!({ "dim": u.dim() }))
}

fn check_ctensor_literal(ctx: &Context, i: usize, tol: f64) -> Outcome {
    let u = &ctx.induced[i];
    let c = CTensor::compute(u);
    let lit = CTensor::compute_literal(u);
    let n = u.dim();
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for a in 0..n {
        for b in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let r = (c.get(a, b, l, m) - lit.get(a, b, l, m)).norm();
                    if r > worst {
                        worst = r;
                        witness = json!({
                            "index": [a, b, l, m],
                            "literal": c_json(lit.get(a, b, l, m)),
                            "computed": c_json(c.get(a, b, l, m)),
                        });
                    }
                }
            }
        }
    }
    Outcome::measured(worst, tol).with_witness(witness)
}

fn check_cross(ctx: &Context, i: usize, j: usize, tol: f64) -> Result<Outcome> {
    let r = induce::induced_orthogonality_check(&ctx.induced[i], &ctx.induced[j], tol)?;
    let witness = r.witness.map(|(a, b, l, m, v)| {
        json!({
            "index": [a, b, l, m],
            "integral": c_json(v),
            "max_abs_integral": r.max_abs_integral,
            "equivalent_inductions": r.equivalent_inductions,
        })
    });
    let mut out = Outcome::measured(r.max_residual, tol);
    out.witness = witness;
    if r.equivalent_inductions {
        out = out.with_note("the two inductions are equivalent");
    }
    Ok(out)
}

fn check_lemma(ctx: &Context, i: usize, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let u = &ctx.induced[i];
    if !u.is_irreducible(ctx.rep_tol) {
        return Ok(Outcome::not_applicable("induction is reducible"));
    }
    let n = u.dim();
    let d = Complex64::new(u.d_sigma() as f64, 0.0);
    let a = linalg::random_vec(rng, ctx.space.dim());
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for p in 0..n {
        for q in 0..n {
            let f = VectorFunction::coefficient_multiple(u, p, q, &a)?;
            let block = transform::fourier_function(&f, u)?;
            for m in 0..n {
                for l in 0..n {
                    let expected = if l == p && m == q {
                        &a / d
                    } else {
                        ctx.space.zero()
                    };
                    let r = linalg::norm(&(block.get(m, l) - expected));
                    if r > worst {
                        worst = r;
                        witness = json!({ "coefficient": [p, q], "entry": [m, l] });
                    }
                }
            }
        }
    }
    Ok(Outcome::measured(worst, tol).with_witness(witness))
}

/// Set-level claims that rely on Schur orthogonality over `G` need every
/// induction in the set to be irreducible.
fn reducible_in_set(ctx: &Context) -> Option<Outcome> {
    let bad: Vec<&str> = ctx
        .set
        .iter()
        .filter(|u| !u.is_irreducible(ctx.rep_tol))
        .map(|u| u.label())
        .collect();
    (!bad.is_empty()).then(|| {
        Outcome::not_applicable(format!(
            "reducible inductions in the set: {}",
            bad.join(", ")
        ))
    })
}

fn set_note(ctx: &Context) -> Option<String> {
    (!ctx.dropped.is_empty())
        .then(|| format!("dropped equivalent inductions: {}", ctx.dropped.join(", ")))
}

fn finish(mut out: Outcome, ctx: &Context) -> Outcome {
    if out.note.is_none() {
        out.note = set_note(ctx);
    }
    out
}

fn check_inversion(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    if let Some(na) = reducible_in_set(ctx) {
        return Ok(na);
    }
    let weights = transform::span_weights(&ctx.set)?;
    let mut residuals = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        let f = transform::random_span_element(ctx.space, &ctx.set, rng)?;
        let back = transform::synthesize(&transform::transform_function(&f, &ctx.set)?)?;
        residuals.push(back.minus(&f)?.norm2_sqr(&weights).sqrt());
    }
    let (k, worst) = arg_max(residuals.into_iter());
    Ok(finish(
        Outcome::measured(worst, tol).with_witness(json!({ "sample": k })),
        ctx,
    ))
}

fn check_plancherel(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    if let Some(na) = reducible_in_set(ctx) {
        return Ok(na);
    }
    let mut residuals = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        let f = transform::random_span_element(ctx.space, &ctx.set, rng)?;
        residuals.push(transform::plancherel_gap(&f, &ctx.set)?);
    }
    let (k, worst) = arg_max(residuals.into_iter());
    Ok(finish(
        Outcome::measured(worst, tol).with_witness(json!({ "sample": k })),
        ctx,
    ))
}

fn check_parseval(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    if let Some(na) = reducible_in_set(ctx) {
        return Ok(na);
    }
    let mut residuals = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        let f = transform::random_span_element(ctx.space, &ctx.set, rng)?;
        let g = transform::random_span_element(ctx.space, &ctx.set, rng)?;
        let (lhs, rhs) = transform::parseval_inner(&f, &g, &ctx.set)?;
        residuals.push((lhs - rhs).norm());
    }
    let (k, worst) = arg_max(residuals.into_iter());
    Ok(finish(
        Outcome::measured(worst, tol).with_witness(json!({ "sample": k })),
        ctx,
    ))
}

fn check_offspan(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mut residuals = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        let f = VectorFunction::random(ctx.space, ctx.group.order(), rng);
        residuals.push(transform::plancherel_gap(&f, &ctx.set)?);
    }
    let count: usize = ctx.set.iter().map(|u| u.dim() * u.dim()).sum();
    let (k, worst) = arg_max(residuals.into_iter());
    Ok(Outcome::measured(worst, tol)
        .with_witness(json!({
            "sample": k,
            "coefficient_count": count,
            "group_order": ctx.group.order(),
        }))
        .with_note("holds only when the inductions span all functions on G"))
}

fn random_fields(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    use rand::Rng;
    let scale = Complex64::new(10f64.powf(rng.gen_range(-1.0..1.0)), 0.0);
    Ok(SpectralField::random(ctx.space, &ctx.set, rng)?.scaled(scale))
}

fn check_s2_axioms(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for k in 0..ctx.samples {
        let a = random_fields(ctx, rng)?;
        let b = random_fields(ctx, rng)?;
        let c = random_fields(ctx, rng)?;
        let alpha = linalg::random_complex(rng);
        let ab = spaces::s2_inner(&a, &b)?;
        let ba = spaces::s2_inner(&b, &a)?;
        let aa = spaces::s2_inner(&a, &a)?;
        let bb = spaces::s2_inner(&b, &b)?;
        let lin = spaces::s2_inner(&a.scaled(alpha).plus(&b)?, &c)?
            - alpha * spaces::s2_inner(&a, &c)?
            - spaces::s2_inner(&b, &c)?;
        let scale = aa.re.max(bb.re).max(1.0);
        let checks = [
            ("hermitian", (ab - ba.conj()).norm() / scale),
            ("linear", lin.norm() / scale),
            ("real", aa.im.abs() / scale),
            ("positive", if aa.re > 0.0 { 0.0 } else { f64::INFINITY }),
            (
                "cauchy-schwarz",
                (ab.norm() - (aa.re * bb.re).sqrt()).max(0.0) / scale,
            ),
        ];
        for (name, r) in checks {
            if r > worst {
                worst = r;
                witness = json!({ "sample": k, "axiom": name });
            }
        }
    }
    Ok(Outcome::measured(worst, tol).with_witness(witness))
}

fn check_norm_bound(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let order = ctx.group.order();
    let mut worst = 0.0f64;
    let mut witness = json!({});
    let mut record = |r: f64, w: Value| {
        if r > worst {
            worst = r;
            witness = w;
        }
    };
    for k in 0..ctx.samples {
        let m = VectorMeasure::random(ctx.space, order, rng);
        let r = transform::norm_bound_check(&m, &ctx.set, rng, tol)?;
        let excess = (r.transform_norm - r.measure_norm)
            .max(r.transform_operator_norm - r.measure_norm)
            .max(0.0);
        record(excess, json!({ "sample": k, "kind": "bound" }));
        record(
            r.linearity_residual,
            json!({ "sample": k, "kind": "linearity" }),
        );
    }
    let a = linalg::random_vec(rng, ctx.space.dim());
    let dirac = VectorMeasure::dirac(ctx.space, order, ctx.group.identity(), a)?;
    let field = transform::transform_measure(&dirac, &ctx.set)?;
    let gap = (spaces::sup_norm(&field, BlockNorm::EntryMax) - dirac.total_variation()).abs();
    record(gap, json!({ "kind": "equality at the identity" }));
    Ok(finish(
        Outcome::measured(worst, tol).with_witness(witness),
        ctx,
    ))
}

const CHAIN: [Exponent; 5] = [
    Exponent::Finite(1.0),
    Exponent::Finite(1.5),
    Exponent::Finite(2.0),
    Exponent::Finite(3.0),
    Exponent::Infinity,
];

fn check_monotone(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for k in 0..ctx.samples {
        let f = random_fields(ctx, rng)?;
        let norms: Vec<f64> = CHAIN
            .iter()
            .map(|&p| spaces::snorm(&f, p).map(|n| n.value))
            .collect::<Result<_>>()?;
        for a in 0..CHAIN.len() {
            for b in a + 1..CHAIN.len() {
                let r = (norms[b] - norms[a]).max(0.0) / norms[a].max(1.0);
                if r > worst {
                    worst = r;
                    witness = json!({
                        "sample": k,
                        "p": CHAIN[a].to_string(),
                        "q": CHAIN[b].to_string(),
                    });
                }
            }
        }
    }
    Ok(Outcome::measured(worst, tol).with_witness(witness))
}

fn check_norm_axioms(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for k in 0..ctx.samples {
        let a = random_fields(ctx, rng)?;
        let b = random_fields(ctx, rng)?;
        let c = linalg::random_complex(rng);
        for p in CHAIN {
            let na = spaces::snorm(&a, p)?.value;
            let nb = spaces::snorm(&b, p)?.value;
            let nab = spaces::snorm(&a.plus(&b)?, p)?.value;
            let nca = spaces::snorm(&a.scaled(c), p)?.value;
            let scale = (na + nb).max(1.0);
            for (name, r) in [
                ("triangle", (nab - na - nb).max(0.0) / scale),
                ("homogeneity", (nca - c.norm() * na).abs() / scale),
            ] {
                if r > worst {
                    worst = r;
                    witness = json!({ "sample": k, "p": p.to_string(), "axiom": name });
                }
            }
        }
    }
    Ok(Outcome::measured(worst, tol).with_witness(witness))
}

fn check_truncation(ctx: &Context, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    // Residual is max_n n * ||phi_n - phi||_inf, which must stay below 1.
    let mut worst = 0.0f64;
    let mut witness = json!({});
    for k in 0..ctx.samples.min(100) {
        let f = random_fields(ctx, rng)?;
        for n in 1..=100usize {
            let t = spaces::truncate(&f, n)?;
            let err = spaces::sup_norm(&f.minus(&t)?, BlockNorm::EntryMax);
            let r = err * n as f64;
            if r > worst {
                worst = r;
                witness = json!({ "sample": k, "n": n, "error": err });
            }
        }
    }
    let mut out = Outcome::measured(worst, 1.0).with_witness(witness);
    out.pass = Some(worst < 1.0);
    Ok(out.with_note("finite-fragment only"))
}

fn check_opnorm_chain(ctx: &Context, rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut violations = 0usize;
    let mut witness = json!({});
    for k in 0..ctx.samples {
        let f = random_fields(ctx, rng)?;
        let op = spaces::sup_norm(&f, BlockNorm::Operator);
        let p3 = spaces::snorm(&f, Exponent::Finite(3.0))?.value;
        let r = op - p3;
        if r > tol {
            violations += 1;
        }
        if r > worst {
            worst = r;
            witness = json!({ "sample": k, "operator_sup": op, "norm_3": p3 });
        }
    }
    if let Value::Object(map) = &mut witness {
        map.insert("violations".into(), json!(violations));
        map.insert("samples".into(), json!(ctx.samples));
    }
    Ok(Outcome::measured(worst, tol)
        .with_witness(witness)
        .with_note("the default sup norm uses entry norms and satisfies the chain"))
}
