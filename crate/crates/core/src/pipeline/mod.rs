//! End-to-end construction: reservoir, absorber, path collection,
//! connections, absorption and verification, with a JSON trace.
//!
//! Sizes (all floors): `s = βn` absorbed vertices, a reservoir `Z` of
//! `(β+γ)n + 2` vertices with slack `e = |Z| - 2 - s`, absorber order
//! `m = a + s + 2`, free set `V' = V ∖ (A ∪ Z)` of size `n'`,
//! `⌊(1-ε)⌊n'/r⌋⌋` built paths and `c` leftover vertices. Every connector
//! takes `k` reservoir vertices and every single-vertex extension one, and
//! extensions continue until exactly `s` reservoir vertices remain for the
//! absorber. Both `s` and `e` can be overridden to reach integer
//! feasibility at small `n`.

mod layout;
mod reservoir;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use layout::{Layout, Unit, UnitKind};
pub use reservoir::{reservoir_threshold, sample_reservoir, worst_deficit, DegreeDeficit, ReservoirError};

use crate::absorber::{
    absorb, absorber_size, build_absorbing_structure, build_template_with_slack, AbsorbingStructure,
    Template, TemplateCheck,
};
use crate::connectors::{embed_connector, extend_by_one, ConnectorRequest};
use crate::embedding::{verify_coloured_embedding, PowerCycle};
use crate::graph::{GraphCollection, VertexSet};
use crate::host::{ColourPattern, HostTemplate};
use crate::matching::SamplerMode;
use crate::par::Parallelism;
use crate::pathbuilder::{build_path_collection, SamplerUsage};
use crate::rng::{stream, Stage};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    /// One attempt per stage.
    Strict,
    /// Up to `1 + max_retries` attempts per stage, each with a fresh stream.
    #[default]
    BestEffort,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateChoice {
    /// Compact template when `s + e <= 40`, random otherwise.
    #[default]
    Auto,
    Compact,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
    /// Path order; `None` means `3k + 1`.
    pub r: Option<usize>,
    pub seed: u64,
    pub sampler: SamplerMode,
    pub max_retries: usize,
    pub mode: RunMode,
    /// Overrides `s = ⌊βn⌋`.
    pub absorber_s: Option<usize>,
    /// Overrides the reservoir slack `e`.
    pub slack: Option<usize>,
    pub template: TemplateChoice,
    pub parallelism: Parallelism,
    /// Record stage timings in the trace. Off makes traces reproducible
    /// byte for byte.
    pub record_timings: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            alpha: 0.2,
            beta: 0.05,
            gamma: 0.01,
            epsilon: 0.1,
            r: None,
            seed: 0,
            sampler: SamplerMode::Fast,
            max_retries: 20,
            mode: RunMode::BestEffort,
            absorber_s: None,
            slack: None,
            template: TemplateChoice::Auto,
            parallelism: Parallelism::default(),
            record_timings: true,
        }
    }
}

impl PipelineConfig {
    pub fn r_for(&self, k: usize) -> usize {
        self.r.unwrap_or(3 * k + 1)
    }

    pub fn validate(&self, k: usize) -> Result<(), SolveError> {
        let (a, b, g, e) = (self.alpha, self.beta, self.gamma, self.epsilon);
        if !(0.0 < g && g < b && b < a && a <= 1.0) {
            return Err(SolveError::Config(format!(
                "need 0 < gamma < beta < alpha <= 1, got gamma={g}, beta={b}, alpha={a}"
            )));
        }
        if !(0.0 < e && e < 1.0) {
            return Err(SolveError::Config(format!("epsilon must lie in (0, 1), got {e}")));
        }
        let r = self.r_for(k);
        if r < k + 1 {
            return Err(SolveError::Config(format!("r = {r} must be at least k + 1 = {}", k + 1)));
        }
        Ok(())
    }

    fn attempts(&self) -> usize {
        match self.mode {
            RunMode::Strict => 1,
            RunMode::BestEffort => self.max_retries + 1,
        }
    }
}

/// Integer sizes of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Absorbed vertices `s`.
    pub s: usize,
    /// Reservoir slack `e`.
    pub slack: usize,
    pub compact_template: bool,
    /// Template edges `b`.
    pub template_edges: usize,
    /// `|A|`.
    pub absorber_set: usize,
    /// Absorbing path order `m = a + s + 2`.
    pub m: usize,
    /// `|Z|`.
    pub reservoir: usize,
    /// `|V'|`.
    pub free: usize,
    pub part_size: usize,
    pub paths: usize,
    pub leftovers: usize,
    pub extensions: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("infeasible configuration at n = {n}: {reason} ({})", match .floor {
        Some(f) => format!("feasibility floor for these settings: n >= {f}"),
        None => format!("no feasible n up to {FLOOR_SEARCH_LIMIT} for these settings"),
    })]
    Infeasible {
        n: usize,
        reason: String,
        floor: Option<usize>,
    },
    #[error("stage {stage} failed after {attempts} attempt(s): {message}")]
    Stage {
        stage: StageName,
        attempts: usize,
        message: String,
    },
    #[error("assembled cycle fails host edge {0:?}")]
    Unverified((usize, usize)),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageName {
    Plan,
    Reservoir,
    Absorber,
    Paths,
    Connect,
    Absorb,
    Verify,
}

impl std::fmt::Display for StageName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StageName::Plan => "plan",
            StageName::Reservoir => "reservoir",
            StageName::Absorber => "absorber",
            StageName::Paths => "paths",
            StageName::Connect => "connect",
            StageName::Absorb => "absorb",
            StageName::Verify => "verify",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: StageName,
    pub attempts: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub sizes: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: RunMode,
    pub sampler: SamplerMode,
    pub plan: Option<Plan>,
    pub stages: Vec<StageRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_sampler: Option<SamplerUsage>,
    pub success: bool,
}

impl Trace {
    /// Last stage that was started.
    pub fn stage_reached(&self) -> StageName {
        self.stages.last().map_or(StageName::Plan, |s| s.stage)
    }

    /// Attempts summed over all stages.
    pub fn total_attempts(&self) -> usize {
        self.stages.iter().map(|s| s.attempts).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialises")
    }
}

/// A failed run keeps the trace up to the failure.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("{error}")]
pub struct SolveFailure {
    pub error: SolveError,
    pub trace: Trace,
}

/// Largest `n` tried when reporting the feasibility floor.
pub const FLOOR_SEARCH_LIMIT: usize = 1 << 14;

/// Template edge count `b` of the compact template.
pub fn compact_edges(s: usize, e: usize) -> usize {
    4 * s + s * (s + e)
}

fn sizes_for(n: usize, config: &PipelineConfig) -> (usize, usize) {
    let s = config.absorber_s.unwrap_or((config.beta * n as f64).floor() as usize);
    let z = ((config.beta + config.gamma) * n as f64).floor() as usize + 2;
    let e = config
        .slack
        .unwrap_or_else(|| z.saturating_sub(2).saturating_sub(s));
    (s, e)
}

fn uses_compact(config: &PipelineConfig, s: usize, e: usize) -> bool {
    match config.template {
        TemplateChoice::Compact => true,
        TemplateChoice::Random => false,
        TemplateChoice::Auto => s + e <= crate::absorber::MAX_DEGREE,
    }
}

/// Integer plan for `n` given the template's edge count.
pub fn plan_with_edges(
    n: usize,
    k: usize,
    config: &PipelineConfig,
    template_edges: usize,
) -> Result<Plan, String> {
    let (s, e) = sizes_for(n, config);
    if k < 2 {
        return Err(format!("the absorber needs k >= 2, got k = {k}"));
    }
    if s == 0 {
        return Err("s = ⌊βn⌋ is zero".into());
    }
    if e == 0 {
        return Err(format!("reservoir slack e is zero (s = {s})"));
    }
    let r = config.r_for(k);
    let a = (2 * k + 1) * template_edges + (3 * s + 1) * k - s;
    let m = a + s + 2;
    let z = s + e + 2;
    if a + z > n {
        return Err(format!(
            "absorber ({a} vertices) and reservoir ({z}) exceed n"
        ));
    }
    let free = n - a - z;
    let part_size = free / r;
    let paths = ((1.0 - config.epsilon) * part_size as f64).floor() as usize;
    let leftovers = free - paths * r;
    let need = k * (paths + leftovers + 1);
    if need > e {
        return Err(format!(
            "connectors need {need} reservoir vertices but the slack is {e}"
        ));
    }
    Ok(Plan {
        n,
        k,
        r,
        s,
        slack: e,
        compact_template: false,
        template_edges,
        absorber_set: a,
        m,
        reservoir: z,
        free,
        part_size,
        paths,
        leftovers,
        extensions: e - need,
    })
}

/// Smallest `n` (up to `limit`) with a feasible plan, taking the compact
/// template size when it applies and `12s` (degree four per `X`-vertex)
/// as a lower bound otherwise.
pub fn feasibility_floor(k: usize, config: &PipelineConfig, limit: usize) -> Option<usize> {
    (2 * k + 2..=limit).find(|&n| {
        let (s, e) = sizes_for(n, config);
        let b = if uses_compact(config, s, e) {
            compact_edges(s, e)
        } else {
            12 * s
        };
        plan_with_edges(n, k, config, b).is_ok()
    })
}

struct Run<'a> {
    collection: &'a GraphCollection,
    pattern: &'a ColourPattern,
    config: &'a PipelineConfig,
    trace: Trace,
}

impl Run<'_> {
    fn fail(mut self, error: SolveError) -> SolveFailure {
        self.trace.success = false;
        SolveFailure {
            error,
            trace: self.trace,
        }
    }

    /// Runs `body` up to the configured number of attempts.
    fn stage<T>(
        &mut self,
        stage: StageName,
        attempts: usize,
        mut body: impl FnMut(u32, &mut BTreeMap<String, usize>) -> Result<T, String>,
    ) -> Result<T, SolveError> {
        let start = Instant::now();
        let mut sizes = BTreeMap::new();
        let mut last = String::new();
        let mut used = 0;
        let mut result = None;
        for attempt in 0..attempts {
            used += 1;
            sizes.clear();
            match body(attempt as u32, &mut sizes) {
                Ok(v) => {
                    result = Some(v);
                    break;
                }
                Err(e) => last = e,
            }
        }
        let ok = result.is_some();
        self.trace.stages.push(StageRecord {
            stage,
            attempts: used,
            ok,
            elapsed_ms: self
                .config
                .record_timings
                .then(|| start.elapsed().as_secs_f64() * 1e3),
            sizes,
            error: (!ok).then(|| last.clone()),
        });
        result.ok_or(SolveError::Stage {
            stage,
            attempts: used,
            message: last,
        })
    }
}

/// Builds a pattern-coloured Hamilton k-th power cycle, verified before it
/// is returned.
pub fn solve(
    collection: &GraphCollection,
    pattern: &ColourPattern,
    config: &PipelineConfig,
) -> Result<(PowerCycle, Trace), SolveFailure> {
    let n = collection.n();
    let k = pattern.host().k();
    let mut run = Run {
        collection,
        pattern,
        config,
        trace: Trace {
            n,
            k,
            seed: config.seed,
            mode: config.mode,
            sampler: config.sampler,
            plan: None,
            stages: Vec::new(),
            path_sampler: None,
            success: false,
        },
    };
    match solve_inner(&mut run) {
        Ok(cycle) => {
            run.trace.success = true;
            Ok((cycle, run.trace))
        }
        Err(e) => Err(run.fail(e)),
    }
}

fn solve_inner(run: &mut Run<'_>) -> Result<PowerCycle, SolveError> {
    let (collection, pattern, config) = (run.collection, run.pattern, run.config);
    let n = collection.n();
    let k = pattern.host().k();
    config.validate(k)?;
    match HostTemplate::power_cycle(n, k) {
        Ok(h) if h == pattern.host() => {}
        _ => {
            return Err(SolveError::BadInput(format!(
                "pattern host {:?} is not power_cycle({n}, {k})",
                pattern.host()
            )))
        }
    }
    if pattern.max_colour() > collection.m() {
        return Err(SolveError::BadInput(format!(
            "pattern colour {} exceeds the {} graphs",
            pattern.max_colour(),
            collection.m()
        )));
    }

    // Plan and template: no graph is touched yet.
    let (s, e) = sizes_for(n, config);
    let infeasible = |reason: String| SolveError::Infeasible {
        n,
        reason,
        floor: feasibility_floor(k, config, FLOOR_SEARCH_LIMIT),
    };
    if k < 2 || s == 0 || e == 0 {
        return Err(infeasible(
            match plan_with_edges(n, k, config, 0) {
                Err(r) => r,
                Ok(_) => "degenerate sizes".into(),
            },
        ));
    }
    let compact = uses_compact(config, s, e);
    let template = run.stage(StageName::Plan, 1, |_, sizes| {
        let t = if compact {
            Template::compact(s, e).map_err(|e| e.to_string())?
        } else {
            let mut rng = stream(config.seed, Stage::Template, 0);
            build_template_with_slack(s, e, &mut rng, TemplateCheck::for_size(s), config.parallelism)
                .map_err(|e| e.to_string())?
        };
        sizes.insert("template_edges".into(), t.edge_count());
        Ok(t)
    })?;
    let mut plan = plan_with_edges(n, k, config, template.edge_count()).map_err(infeasible)?;
    plan.compact_template = compact;
    debug_assert_eq!(plan.absorber_set, absorber_size(k, &template));
    let layout = Layout::new(n, k, plan.m, plan.r, plan.paths, plan.leftovers, plan.extensions)
        .ok_or_else(|| SolveError::Config("layout does not add up to n".into()))?;
    if !layout.is_exact_partition() {
        return Err(SolveError::Config("layout windows do not partition the host edges".into()));
    }
    run.trace.plan = Some(plan.clone());
    let attempts = config.attempts();

    // Reservoir: the sampler retries internally, so record its samples.
    let mut samples = attempts;
    let z = run.stage(StageName::Reservoir, 1, |_, sizes| {
        let mut rng = stream(config.seed, Stage::Reservoir, 0);
        let (z, tries) = sample_reservoir(collection, plan.reservoir, k, config.alpha, &mut rng, attempts - 1)
            .map_err(|e| e.to_string())?;
        samples = tries;
        sizes.insert("reservoir".into(), z.len());
        Ok(z)
    });
    if let Some(rec) = run.trace.stages.last_mut() {
        rec.attempts = samples;
    }
    let z = z.map_err(|e| match e {
        SolveError::Stage { stage, message, .. } => SolveError::Stage {
            stage,
            attempts: samples,
            message,
        },
        other => other,
    })?;
    let z_set = VertexSet::from_slice(n, &z);

    // Endpoints, Y and the absorbing structure.
    let chi0 = layout
        .unit_pattern(pattern, &layout.units[0])
        .expect("absorber window")
        .map_err(|e| SolveError::BadInput(e.to_string()))?;
    let structure: AbsorbingStructure = run.stage(StageName::Absorber, attempts, |attempt, sizes| {
        let mut rng = stream(config.seed, Stage::Endpoints, attempt);
        let ends: Vec<usize> = z.choose_multiple(&mut rng, 2).copied().collect();
        let outside: Vec<usize> = (0..n).filter(|&v| !z_set.contains(v)).collect();
        let mut y: Vec<usize> = outside.choose_multiple(&mut rng, 2 * s).copied().collect();
        y.sort_unstable();
        let mut rng = stream(config.seed, Stage::Absorber, attempt);
        let st = build_absorbing_structure(collection, &chi0, &z, ends[0], ends[1], &y, &template, &mut rng)
            .map_err(|e| e.to_string())?;
        sizes.insert("absorbing_set".into(), st.absorbing_set().len());
        sizes.insert("y".into(), y.len());
        Ok(st)
    })?;

    // Partition V' and build the paths.
    let mut covered = VertexSet::from_slice(n, structure.absorbing_set());
    covered.union_with(&z_set);
    let free: Vec<usize> = (0..n).filter(|&v| !covered.contains(v)).collect();
    if structure.absorbing_set().len() + z.len() + free.len() != n || free.len() != plan.free {
        return Err(SolveError::Config(format!(
            "vertex accounting broken: |A| = {}, |Z| = {}, |V'| = {}, n = {n}",
            structure.absorbing_set().len(),
            z.len(),
            free.len()
        )));
    }
    let path_units: Vec<Unit> = layout
        .units
        .iter()
        .copied()
        .filter(|u| matches!(u.kind, UnitKind::Path { .. }))
        .collect();
    let path_patterns: Vec<ColourPattern> = path_units
        .iter()
        .map(|u| layout.unit_pattern(pattern, u).expect("path window"))
        .collect::<Result<_, _>>()
        .map_err(|e| SolveError::BadInput(e.to_string()))?;
    let mut usage = None;
    let (paths, leftovers) = run.stage(StageName::Paths, attempts, |attempt, sizes| {
        sizes.insert("free".into(), free.len());
        if plan.paths == 0 {
            sizes.insert("paths".into(), 0);
            sizes.insert("leftovers".into(), free.len());
            return Ok((Vec::new(), free.clone()));
        }
        let mut shuffled = free.clone();
        shuffled.shuffle(&mut stream(config.seed, Stage::Partition, attempt));
        let q = plan.part_size;
        let parts: Vec<Vec<usize>> = (0..plan.r).map(|i| shuffled[i * q..(i + 1) * q].to_vec()).collect();
        let mut rng = stream(config.seed, Stage::Paths, attempt);
        let built = build_path_collection(collection, &parts, &path_patterns, &mut rng, config.sampler)
            .map_err(|e| e.to_string())?;
        let on_paths = VertexSet::from_slice(n, &built.paths.iter().flat_map(|p| p.vertices.clone()).collect::<Vec<_>>());
        let rest: Vec<usize> = free.iter().copied().filter(|&v| !on_paths.contains(v)).collect();
        sizes.insert("parts".into(), plan.r);
        sizes.insert("part_size".into(), q);
        sizes.insert("paths".into(), built.paths.len());
        sizes.insert("leftovers".into(), rest.len());
        usage = Some(built.sampler);
        Ok((built.paths, rest))
    })?;
    run.trace.path_sampler = usage;
    if leftovers.len() != plan.leftovers {
        return Err(SolveError::Config(format!(
            "{} leftover vertices, planned {}",
            leftovers.len(),
            plan.leftovers
        )));
    }

    // Connections, sweep, extensions and closure through the reservoir.
    let reservoir_w: Vec<usize> = structure.reservoir().to_vec();
    let first_k = structure.first_k();
    let last_k = structure.last_k();
    let nobody = VertexSet::new(n);
    let (cycle_tail, z_prime) = run.stage(StageName::Connect, attempts, |attempt, sizes| {
        let mut cyc = vec![usize::MAX; n];
        cyc[..k].copy_from_slice(&first_k);
        cyc[plan.m - k..plan.m].copy_from_slice(&last_k);
        let mut pool = VertexSet::from_slice(n, &reservoir_w);
        let mut rng_c = stream(config.seed, Stage::Connections, attempt);
        let mut rng_s = stream(config.seed, Stage::Sweep, attempt);
        let mut rng_z = stream(config.seed, Stage::Closure, attempt);
        for unit in &layout.units[1..] {
            let st = unit.start;
            match unit.kind {
                UnitKind::Absorber => unreachable!(),
                UnitKind::PathConnector { index } => {
                    let p = layout.unit_pattern(pattern, unit).expect("window").map_err(|e| e.to_string())?;
                    let req = ConnectorRequest {
                        w: &cyc[st - k..st],
                        y: paths[index].first(k),
                        pattern: &p,
                        reservoir: &pool,
                        avoid: &nobody,
                    };
                    let inner = embed_connector(collection, &req, &mut rng_c)
                        .map_err(|e| format!("connector into path {}: {e}", index + 1))?;
                    for (t, &v) in inner.iter().enumerate() {
                        cyc[st + t] = v;
                        pool.remove(v);
                    }
                }
                UnitKind::Path { index } => {
                    cyc[st..st + unit.len].copy_from_slice(&paths[index].vertices);
                }
                UnitKind::Sweep { index } => {
                    let p = layout.unit_pattern(pattern, unit).expect("window").map_err(|e| e.to_string())?;
                    let v = leftovers[index];
                    let req = ConnectorRequest {
                        w: &cyc[st - k..st],
                        y: &[v],
                        pattern: &p,
                        reservoir: &pool,
                        avoid: &nobody,
                    };
                    let inner = embed_connector(collection, &req, &mut rng_s)
                        .map_err(|e| format!("sweep of leftover {}: {e}", index + 1))?;
                    for (t, &u) in inner.iter().enumerate() {
                        cyc[st + t] = u;
                        pool.remove(u);
                    }
                    cyc[st + k] = v;
                }
                UnitKind::Extension { index } => {
                    let colours = layout.extension_colours(pattern, st);
                    let v = extend_by_one(collection, &cyc[st - k..st], &colours, &pool, &nobody, &mut rng_s)
                        .map_err(|e| format!("extension {}: {e}", index + 1))?;
                    cyc[st] = v;
                    pool.remove(v);
                }
                UnitKind::Closure => {
                    let p = layout.unit_pattern(pattern, unit).expect("window").map_err(|e| e.to_string())?;
                    let head = cyc[st - k..st].to_vec();
                    let req = ConnectorRequest {
                        w: &head,
                        y: &first_k,
                        pattern: &p,
                        reservoir: &pool,
                        avoid: &nobody,
                    };
                    let inner = embed_connector(collection, &req, &mut rng_z)
                        .map_err(|e| format!("closing connector: {e}"))?;
                    for (t, &u) in inner.iter().enumerate() {
                        cyc[st + t] = u;
                        pool.remove(u);
                    }
                }
            }
        }
        if pool.len() != s {
            return Err(format!("{} reservoir vertices left, the absorber takes {s}", pool.len()));
        }
        sizes.insert("connectors".into(), plan.paths + plan.leftovers + 1);
        sizes.insert("extensions".into(), plan.extensions);
        sizes.insert("residue".into(), pool.len());
        Ok((cyc[plan.m..].to_vec(), pool.to_vec()))
    })?;

    // Absorb the residue and close the cycle.
    let absorbed = run.stage(StageName::Absorb, 1, |_, sizes| {
        let p = absorb(collection, &structure, &z_prime).map_err(|e| e.to_string())?;
        sizes.insert("path_order".into(), p.vertices.len());
        Ok(p)
    })?;
    let mut vertices = absorbed.vertices;
    vertices.extend_from_slice(&cycle_tail);
    let cycle = run.stage(StageName::Verify, 1, |_, sizes| {
        let report = verify_coloured_embedding(collection, pattern, &vertices).map_err(|e| e.to_string())?;
        if let Some(v) = report.violation {
            return Err(format!("host edge {:?} missing from its colour", v.host_edge));
        }
        sizes.insert("cycle".into(), vertices.len());
        PowerCycle::new(k, vertices.clone()).map_err(|e| e.to_string())
    });
    cycle.map_err(|e| match e {
        SolveError::Stage { message, .. } => SolveError::Stage {
            stage: StageName::Verify,
            attempts: 1,
            message,
        },
        other => other,
    })
}
