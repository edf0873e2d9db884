//! Configuration, suite dispatch and report rendering for the `permorb`
//! command-line tool.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use permorb_core::chars::{self, DimSeries};
use permorb_core::fock::{cache, Engine, FockVector, Heisenberg, Virasoro, Voa};
use permorb_core::orbifold::{d_probe, C2Oracle, FactorizedC2, GenericC2, ProbeResult};
use permorb_core::suites::{self, IdentityGrid};
use permorb_core::{verify, CheckReport, Rational, Status};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Associativity expansion, commutator formula, skew symmetry (rank-2 Heisenberg).
    Identities,
    /// Weight-one β/γ determinant and product coefficients.
    Weight1,
    /// Virasoro identities and coefficient assembly.
    Virasoro,
    /// Determinant of the gamma matrix against the reference polynomials.
    #[value(alias = "gamma-determinant")]
    #[serde(alias = "gamma-determinant")]
    Appendix,
    /// Free-boson orbifold membership checks.
    Orbifold,
    /// `D(ω, ω)` stabilization probe.
    Probe,
    /// Lattice square decomposition by graded dimensions.
    Characters,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Weight1,
        Suite::Virasoro,
        Suite::Appendix,
        Suite::Orbifold,
        Suite::Probe,
        Suite::Characters,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Run configuration. Read from a TOML file and overridden by flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    /// Suites for `verify`; empty means all.
    pub suites: Vec<Suite>,
    pub probe_cutoff: u32,
    pub char_cutoff: u32,
    /// Heisenberg rank for the probe.
    pub rank: u32,
    /// Lattice parameters for the character suite; empty means `1, 2, 3`.
    pub k: Vec<u32>,
    pub window: u32,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            suites: Vec::new(),
            probe_cutoff: 14,
            char_cutoff: 12,
            rank: 1,
            k: Vec::new(),
            window: 4,
            format: Format::Text,
            cache_dir: None,
            jobs: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("invalid config {0}: {1}")]
    Parse(PathBuf, toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl Config {
    pub fn from_toml(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_owned(), e))?;
        toml::from_str(&text).map_err(|e| ConfigError::Parse(path.to_owned(), e))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.window < 1 {
            return Err(ConfigError::Invalid("window must be at least 1".into()));
        }
        if !(1..=16).contains(&self.rank) {
            return Err(ConfigError::Invalid("rank must be in 1..=16".into()));
        }
        if self.k.contains(&0) {
            return Err(ConfigError::Invalid("k must be positive".into()));
        }
        Ok(())
    }

    pub fn selected_suites(&self) -> Vec<Suite> {
        let mut s = if self.suites.is_empty() { Suite::ALL.to_vec() } else { self.suites.clone() };
        s.sort();
        s.dedup();
        s
    }

    pub fn ks(&self) -> Vec<u32> {
        if self.k.is_empty() {
            vec![1, 2, 3]
        } else {
            self.k.clone()
        }
    }
}

/// Everything one invocation produced.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub characters: Vec<CharacterSeries>,
    pub checks: Vec<CheckReport>,
    pub aggregate: Status,
}

/// Both sides of the decomposition for one `k`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterSeries {
    pub k: u32,
    pub symmetric_square: DimSeries,
    pub decomposition: DimSeries,
}

impl RunReport {
    fn new(config: Config, checks: Vec<CheckReport>) -> RunReport {
        let aggregate = if checks.iter().all(CheckReport::passed) { Status::Pass } else { Status::Fail };
        RunReport { tool: "permorb", version: VERSION, config, probe: None, characters: Vec::new(), checks, aggregate }
    }

    pub fn passed(&self) -> bool {
        self.aggregate == Status::Pass
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("permorb {}\n", self.version);
        if let Some(p) = &self.probe {
            out += &format!("probe D({}, {}) on {}\n", p.x, p.y, p.voa);
            for (n, d) in &p.dims {
                out += &format!("  n={n:<3} dim={d}\n");
            }
            match p.stabilized_at {
                Some(n0) => out += &format!("  stabilized at n={n0} (window {})\n", p.window),
                None => out += &format!("  not stabilized by cutoff {} (window {})\n", p.cutoff, p.window),
            }
        }
        for c in &self.characters {
            out += &format!("k={}: {:?}\n", c.k, c.symmetric_square.integral());
        }
        for r in &self.checks {
            out += &format!("{r}\n");
        }
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        out += &format!("aggregate: {tag} ({}/{} checks passed)\n", self.checks.iter().filter(|c| c.passed()).count(), self.checks.len());
        out
    }
}

/// Loads the product cache for `e`, logging a warning and starting empty if
/// the file is unreadable.
fn load_cache<V: Voa>(dir: Option<&Path>, e: &Engine<V>) {
    let Some(dir) = dir else { return };
    match cache::load(dir, e) {
        cache::CacheLoad::Missing => log::info!("no product cache for {}", e.voa().label()),
        cache::CacheLoad::Loaded(n) => log::info!("loaded {n} cached products for {}", e.voa().label()),
        cache::CacheLoad::Corrupt(why) => {
            log::warn!("product cache {} is corrupt ({why}); rebuilding", cache::cache_path(dir, e).display())
        }
    }
}

fn save_cache<V: Voa>(dir: Option<&Path>, e: &Engine<V>) {
    let Some(dir) = dir else { return };
    if let Err(err) = std::fs::create_dir_all(dir).and_then(|_| cache::save(dir, e)) {
        log::warn!("cannot write product cache to {}: {err}", dir.display());
    }
}

fn run_probe_suite(config: &Config) -> (ProbeResult, CheckReport) {
    let v = Heisenberg::new(config.rank as usize);
    let e = Engine::new(v.clone());
    let c2 = FactorizedC2::new(&v);
    let dir = config.cache_dir.as_deref();
    load_cache(dir, &e);
    load_cache(dir, c2.minus_engine());
    let out = suites::omega_probe_on(&e, &c2, config.probe_cutoff, config.window);
    save_cache(dir, &e);
    save_cache(dir, c2.minus_engine());
    out
}

fn run_suite(suite: Suite, config: &Config) -> (Vec<CheckReport>, Option<ProbeResult>, Vec<CharacterSeries>) {
    let checks = match suite {
        Suite::Identities => suites::heisenberg_identities(IdentityGrid::default()),
        Suite::Weight1 => vec![
            verify::verify_det_weight1(),
            verify::verify_det_weight1_opposite_sign(),
            verify::verify_weight1_product_coefficients(),
            verify::verify_triple_product_coefficients(),
        ],
        Suite::Virasoro => {
            let mut v = suites::virasoro_identities(5, 4);
            v.push(verify::verify_f_g_h_assembly());
            v.push(verify::verify_mixed_bracket_nonvanishing());
            v
        }
        Suite::Appendix => vec![
            verify::verify_gamma_determinant(),
            verify::verify_gamma_determinant_regrouped(),
            verify::verify_leading_terms(),
        ],
        Suite::Orbifold => {
            let mut v = suites::vanishing_suite(12, 10);
            v.push(suites::quartic_product_suite(4, 3));
            v.push(suites::orbifold_rules(24, 1));
            v
        }
        Suite::Probe => {
            let (p, r) = run_probe_suite(config);
            return (vec![r], Some(p), Vec::new());
        }
        Suite::Characters => return characters(config),
    };
    (checks, None, Vec::new())
}

fn characters(config: &Config) -> (Vec<CheckReport>, Option<ProbeResult>, Vec<CharacterSeries>) {
    let mut checks = Vec::new();
    let mut series = Vec::new();
    for k in config.ks() {
        checks.push(chars::decomposition_check(k, config.char_cutoff));
        let (symmetric_square, decomposition) = chars::decomposition_sides(k, config.char_cutoff);
        series.push(CharacterSeries { k, symmetric_square, decomposition });
    }
    (checks, None, series)
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// Runs the selected suites concurrently; the report keeps suite order.
pub fn run(config: &Config) -> RunReport {
    let suites = config.selected_suites();
    let results: Vec<_> = pool(config.jobs).install(|| suites.par_iter().map(|&s| run_suite(s, config)).collect());
    let mut checks = Vec::new();
    let mut probe = None;
    let mut characters = Vec::new();
    for (c, p, ch) in results {
        checks.extend(c);
        probe = probe.or(p);
        characters.extend(ch);
    }
    let mut report = RunReport::new(config.clone(), checks);
    report.probe = probe;
    report.characters = characters;
    report
}

/// Which algebra a probe runs in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "voa", rename_all = "kebab-case")]
pub enum VoaSpec {
    Heisenberg { rank: u32 },
    /// Orbifold computations need a numeric central charge such as `1/2`.
    Virasoro { central_charge: String },
}

#[derive(Clone, Debug)]
pub struct ProbeRequest {
    pub voa: VoaSpec,
    pub x: String,
    pub y: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ProbeError {
    #[error("{0}")]
    Vector(String),
    #[error("bad central charge {0:?}")]
    CentralCharge(String),
    #[error("{0}")]
    Orbifold(#[from] permorb_core::orbifold::OrbifoldError),
}

fn probe_in<V: Voa<S = Rational>>(
    c2: &impl C2Oracle,
    e: &Engine<V>,
    omega: FockVector<Rational>,
    req: &ProbeRequest,
    config: &Config,
) -> Result<ProbeResult, ProbeError> {
    let x = suites::named_vector(e, &req.x, Some(omega.clone())).map_err(ProbeError::Vector)?;
    let y = suites::named_vector(e, &req.y, Some(omega)).map_err(ProbeError::Vector)?;
    Ok(d_probe(c2, e, &x, &y, config.probe_cutoff, config.window)?)
}

/// `D(x, y)` probe for arbitrary named vectors. Pass/fail is whether the
/// dimensions stabilized within the cutoff.
pub fn run_probe(req: &ProbeRequest, config: &Config) -> Result<RunReport, ProbeError> {
    let mut ck = permorb_core::Checker::new(format!("probe D({}, {})", req.x, req.y));
    let dir = config.cache_dir.as_deref();
    let result = pool(config.jobs).install(|| match &req.voa {
        VoaSpec::Heisenberg { rank } => {
            let v = Heisenberg::new(*rank as usize);
            let e = Engine::new(v.clone());
            let c2 = FactorizedC2::new(&v);
            load_cache(dir, &e);
            load_cache(dir, c2.minus_engine());
            let r = probe_in(&c2, &e, v.conformal_vector(), req, config);
            save_cache(dir, &e);
            save_cache(dir, c2.minus_engine());
            r
        }
        VoaSpec::Virasoro { central_charge } => {
            let c = permorb_core::kernel::parse_rational(central_charge)
                .map_err(|_| ProbeError::CentralCharge(central_charge.clone()))?;
            let c2 = GenericC2::new(Virasoro::numeric(c));
            let e = c2.engine();
            load_cache(dir, e);
            let omega = e.generator(0);
            let r = probe_in(&c2, e, omega, req, config);
            save_cache(dir, e);
            r
        }
    })?;
    ck.expect(
        &format!("dims stabilize by cutoff {} with window {}", config.probe_cutoff, config.window),
        result.stabilized_at.is_some(),
        || format!("still growing: {:?}", result.dims),
    );
    let mut report = RunReport::new(config.clone(), vec![ck.finish()]);
    report.probe = Some(result);
    Ok(report)
}

/// Character suite alone, for the `characters` subcommand.
pub fn run_characters(config: &Config) -> RunReport {
    let (checks, _, series) = characters(config);
    let mut report = RunReport::new(config.clone(), checks);
    report.characters = series;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let c = Config::default();
        assert_eq!((c.probe_cutoff, c.char_cutoff, c.window), (14, 12, 4));
        assert_eq!(c.selected_suites(), Suite::ALL.to_vec());
        assert!(Config { window: 0, ..Config::default() }.validate().is_err());
        assert!(Config { k: vec![0], ..Config::default() }.validate().is_err());
    }

    #[test]
    fn toml_round_trip_and_unknown_keys() {
        let c: Config = toml::from_str("suites = [\"appendix\", \"probe\"]\nwindow = 3\n").unwrap();
        assert_eq!(c.suites, vec![Suite::Appendix, Suite::Probe]);
        assert_eq!(c.window, 3);
        assert_eq!(c.probe_cutoff, 14);
        let alias: Config = toml::from_str("suites = [\"gamma-determinant\"]").unwrap();
        assert_eq!(alias.suites, vec![Suite::Appendix]);
        assert!(toml::from_str::<Config>("cutof = 3").is_err());
        let back: Config = toml::from_str(&toml::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn characters_report() {
        let c = Config { k: vec![1], char_cutoff: 6, ..Config::default() };
        let r = run_characters(&c);
        assert!(r.passed());
        assert_eq!(r.characters[0].symmetric_square.integral(), vec![1, 1, 5, 9, 24, 42, 85]);
    }

    #[test]
    fn generator_probe() {
        let req = ProbeRequest { voa: VoaSpec::Heisenberg { rank: 1 }, x: "gen".into(), y: "gen".into() };
        let c = Config { probe_cutoff: 12, ..Config::default() };
        let r = run_probe(&req, &c).unwrap();
        let p = r.probe.unwrap();
        assert_eq!(p.stabilized_at, Some(7));
        assert!(r.aggregate == Status::Pass);
    }

    #[test]
    fn virasoro_probe_needs_numeric_charge() {
        let req = ProbeRequest {
            voa: VoaSpec::Virasoro { central_charge: "c".into() },
            x: "omega".into(),
            y: "omega".into(),
        };
        assert!(matches!(run_probe(&req, &Config::default()), Err(ProbeError::CentralCharge(_))));
    }
}
