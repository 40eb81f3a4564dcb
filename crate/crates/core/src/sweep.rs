//! Parameter sweeps over a channel parameter, CSV output, flat key-value
//! configuration files and the figure presets.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::applications::{channel_capacity, witness_verdict};
use crate::bounds::{adabi_bound, berta_bound, complementarity_c, pati_bound, uncertainty_lhs};
use crate::channels::{d_of_t, noisy_bell_state, Noise, SteeringKind, SteeringOp};
use crate::measures::{min_conditional_entropy_over_measurements, quantum_discord, ProjectiveBasis};
use crate::linalg::Subsystem;
use crate::states::BellDiagonalCoeffs;
use crate::{Error, Result};

/// Quantity that a sweep reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputTag {
    U,
    Berta,
    Pati,
    Adabi,
    /// Expands to the three columns U - bound.
    Tightness,
    Discord,
    SMin,
    Capacity,
    /// 1 when the state is witnessed as entangled, else 0.
    Witness,
}

impl OutputTag {
    pub const ALL: [OutputTag; 9] = [
        OutputTag::U,
        OutputTag::Berta,
        OutputTag::Pati,
        OutputTag::Adabi,
        OutputTag::Tightness,
        OutputTag::Discord,
        OutputTag::SMin,
        OutputTag::Capacity,
        OutputTag::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputTag::U => "u",
            OutputTag::Berta => "berta",
            OutputTag::Pati => "pati",
            OutputTag::Adabi => "adabi",
            OutputTag::Tightness => "tightness",
            OutputTag::Discord => "discord",
            OutputTag::SMin => "s_min",
            OutputTag::Capacity => "capacity",
            OutputTag::Witness => "witness",
        }
    }

    /// CSV column names this tag produces.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            OutputTag::U => &["u"],
            OutputTag::Berta => &["berta"],
            OutputTag::Pati => &["pati"],
            OutputTag::Adabi => &["adabi"],
            OutputTag::Tightness => &["tightness_berta", "tightness_pati", "tightness_adabi"],
            OutputTag::Discord => &["discord"],
            OutputTag::SMin => &["s_min"],
            OutputTag::Capacity => &["capacity"],
            OutputTag::Witness => &["witness"],
        }
    }
}

impl fmt::Display for OutputTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OutputTag::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| Error::Config(vec![format!("unknown output tag '{s}'")]))
    }
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn unit(points: usize) -> Self {
        Self {
            start: 0.0,
            stop: 1.0,
            points,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteeringSpec {
    pub kind: SteeringKind,
    pub strengths: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub channel: Noise,
    pub coeffs: BellDiagonalCoeffs,
    /// Grid over the channel parameter, or over time when `rate_lambda` is
    /// set.
    pub grid: Grid,
    pub steering: Option<SteeringSpec>,
    pub rate_lambda: Option<f64>,
    pub outputs: Vec<OutputTag>,
}

impl SweepConfig {
    /// Collects every violation into one [`Error::Config`].
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let g = self.grid;
        for (name, v) in [("start", g.start), ("stop", g.stop)] {
            if !(0.0..=1.0).contains(&v) {
                errs.push(format!("{name} = {v} outside [0, 1]"));
            }
        }
        if g.start > g.stop {
            errs.push(format!("start = {} exceeds stop = {}", g.start, g.stop));
        }
        if g.points < 2 {
            errs.push(format!("points = {} must be at least 2", g.points));
        }
        if let Some(st) = &self.steering {
            if st.strengths.is_empty() {
                errs.push("steering needs at least one strength".into());
            }
            for &x in &st.strengths {
                if let Err(e) = SteeringOp::new(st.kind, x) {
                    errs.push(format!("{} strength: {e}", st.kind));
                }
            }
        }
        if let Some(l) = self.rate_lambda {
            if !(l >= 0.0 && l.is_finite()) {
                errs.push(format!("lambda = {l} must be a finite non-negative rate"));
            }
            if self.channel != Noise::AmplitudeDamping {
                errs.push("lambda applies only to the AD channel".into());
            }
        }
        if self.outputs.is_empty() {
            errs.push("no outputs requested".into());
        }
        for (i, t) in self.outputs.iter().enumerate() {
            if self.outputs[..i].contains(t) {
                errs.push(format!("output '{t}' listed twice"));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errs))
        }
    }

    /// Header of the CSV this configuration produces on its own.
    pub fn header(&self) -> String {
        header_for(self.steering.is_some(), self.rate_lambda.is_some(), &self.outputs)
    }
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub channel: Noise,
    /// Channel parameter (d or p).
    pub param: f64,
    pub coeffs: BellDiagonalCoeffs,
    pub steering: Option<(SteeringKind, f64)>,
    /// (λ, t) when the grid runs over time.
    pub time: Option<(f64, f64)>,
    pub outputs: Vec<OutputTag>,
    /// One value per output column, in column order.
    pub values: Vec<f64>,
}

impl SweepRow {
    pub fn get(&self, column: &str) -> Option<f64> {
        self.outputs
            .iter()
            .flat_map(|t| t.columns().iter())
            .position(|c| *c == column)
            .map(|i| self.values[i])
    }
}

fn worker_count() -> Option<usize> {
    std::env::var("EUR_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Evaluates the sweep. Rows come out in grid order (steering strengths
/// outer, grid inner) regardless of how many threads run it; `EUR_THREADS`
/// sets the thread count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let strengths: Vec<Option<f64>> = match &cfg.steering {
        Some(st) => st.strengths.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let jobs: Vec<(Option<f64>, f64)> = strengths
        .iter()
        .flat_map(|&s| cfg.grid.values().into_iter().map(move |x| (s, x)))
        .collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;
    let rows: Vec<Result<SweepRow>> = pool.install(|| jobs.par_iter().map(|&(s, x)| evaluate(cfg, s, x)).collect());
    rows.into_iter().collect()
}

fn evaluate(cfg: &SweepConfig, strength: Option<f64>, x: f64) -> Result<SweepRow> {
    let (param, time) = match cfg.rate_lambda {
        Some(l) => (d_of_t(l, x)?, Some((l, x))),
        None => (x, None),
    };
    let op = match (&cfg.steering, strength) {
        (Some(st), Some(s)) => Some(SteeringOp::new(st.kind, s)?),
        _ => None,
    };
    let rho = noisy_bell_state(&cfg.coeffs, cfg.channel, param, op.as_ref())?;
    let bx = ProjectiveBasis::pauli_x();
    let bz = ProjectiveBasis::pauli_z();
    let (a, b) = (Subsystem::A, Subsystem::B);
    let c = complementarity_c(&bx, &bz);

    let needs = |tags: &[OutputTag]| cfg.outputs.iter().any(|t| tags.contains(t));
    use OutputTag::*;
    let u = if needs(&[U, Tightness]) { uncertainty_lhs(&rho, &bx, &bz, a, b)? } else { f64::NAN };
    let berta = if needs(&[Berta, Tightness]) { berta_bound(&rho, c)? } else { f64::NAN };
    let pati = if needs(&[Pati, Tightness]) { pati_bound(&rho, c, a)? } else { f64::NAN };
    let adabi = if needs(&[Adabi, Tightness]) { adabi_bound(&rho, c, &bx, &bz, a, b)? } else { f64::NAN };

    let mut values = Vec::new();
    for tag in &cfg.outputs {
        match tag {
            U => values.push(u),
            Berta => values.push(berta),
            Pati => values.push(pati),
            Adabi => values.push(adabi),
            Tightness => values.extend([u - berta, u - pati, u - adabi]),
            Discord => values.push(quantum_discord(&rho, b)?),
            SMin => values.push(min_conditional_entropy_over_measurements(&rho, b)?),
            Capacity => values.push(channel_capacity(&rho)?),
            Witness => {
                let w = witness_verdict(&rho, &bx, &bz, a, b)?;
                values.push(if w.entangled_witnessed { 1.0 } else { 0.0 });
            }
        }
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "non-finite value {v} at {} = {param}",
            cfg.channel.param_name()
        )));
    }
    Ok(SweepRow {
        channel: cfg.channel,
        param,
        coeffs: cfg.coeffs,
        steering: op.map(|o| (o.kind(), o.strength())),
        time,
        outputs: cfg.outputs.clone(),
        values,
    })
}

/// Runs several configurations and concatenates their rows.
pub fn run_all(cfgs: &[SweepConfig]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for cfg in cfgs {
        rows.extend(run_sweep(cfg)?);
    }
    Ok(rows)
}

fn header_for(steering: bool, time: bool, outputs: &[OutputTag]) -> String {
    let mut cols = vec!["channel", "param", "C1", "C2", "C3"];
    if steering {
        cols.extend(["op", "strength"]);
    }
    if time {
        cols.extend(["lambda", "t"]);
    }
    cols.extend(outputs.iter().flat_map(|t| t.columns().iter().copied()));
    cols.join(",")
}

/// Decimal rendering rounded to 12 significant digits, without exponent
/// and with -0 written as 0.
pub fn format_value(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

/// Writes the rows as CSV. Steering or time columns appear when any row has
/// them; rows without them leave those fields empty. All rows must share
/// their output columns.
pub fn emit_csv(rows: &[SweepRow], out: &mut dyn Write, destination: &Path) -> Result<()> {
    let first = rows
        .first()
        .ok_or_else(|| Error::Config(vec!["no rows to emit".into()]))?;
    if let Some(r) = rows.iter().find(|r| r.outputs != first.outputs) {
        return Err(Error::Config(vec![format!(
            "rows disagree on output columns: {:?} vs {:?}",
            first.outputs, r.outputs
        )]));
    }
    let steering = rows.iter().any(|r| r.steering.is_some());
    let time = rows.iter().any(|r| r.time.is_some());
    let mut text = header_for(steering, time, &first.outputs);
    text.push('\n');
    for r in rows {
        let mut fields = vec![r.channel.to_string(), format_value(r.param)];
        fields.extend(r.coeffs.as_array().iter().map(|&c| format_value(c)));
        if steering {
            match r.steering {
                Some((kind, s)) => fields.extend([kind.to_string(), format_value(s)]),
                None => fields.extend([String::new(), String::new()]),
            }
        }
        if time {
            match r.time {
                Some((l, t)) => fields.extend([format_value(l), format_value(t)]),
                None => fields.extend([String::new(), String::new()]),
            }
        }
        fields.extend(r.values.iter().map(|&v| format_value(v)));
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| Error::Io {
            path: destination.to_path_buf(),
            source,
        })
}

/// CSV as a string.
pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    emit_csv(rows, &mut buf, Path::new("<memory>"))?;
    Ok(String::from_utf8(buf).expect("CSV is ASCII"))
}

/// Parses a flat `key = value` configuration; `#` starts a comment.
///
/// Keys: `channel` (AD | BPF), `c1`, `c2`, `c3`, `start`, `stop`, `points`,
/// `outputs` (comma list), optional `steering` (filter | weak) with
/// `strengths` (comma list), optional `lambda`.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut kv = BTreeMap::new();
    let mut errs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                let k = k.trim().to_ascii_lowercase();
                if kv.insert(k.clone(), v.trim().to_string()).is_some() {
                    errs.push(format!("line {}: duplicate key '{k}'", n + 1));
                }
            }
            None => errs.push(format!("line {}: expected key = value, got '{line}'", n + 1)),
        }
    }
    const KNOWN: [&str; 11] = [
        "channel", "c1", "c2", "c3", "start", "stop", "points", "outputs", "steering", "strengths", "lambda",
    ];
    for k in kv.keys() {
        if !KNOWN.contains(&k.as_str()) {
            errs.push(format!("unknown key '{k}'"));
        }
    }

    fn num(kv: &BTreeMap<String, String>, key: &str, default: Option<f64>, errs: &mut Vec<String>) -> f64 {
        match kv.get(key) {
            Some(v) => v.parse().unwrap_or_else(|_| {
                errs.push(format!("{key}: '{v}' is not a number"));
                f64::NAN
            }),
            None => default.unwrap_or_else(|| {
                errs.push(format!("missing key '{key}'"));
                f64::NAN
            }),
        }
    }

    let channel = match kv.get("channel") {
        Some(v) => v.parse::<Noise>().map_err(|e| errs.extend(messages(e))).ok(),
        None => {
            errs.push("missing key 'channel'".into());
            None
        }
    };
    let c1 = num(&kv, "c1", None, &mut errs);
    let c2 = num(&kv, "c2", None, &mut errs);
    let c3 = num(&kv, "c3", None, &mut errs);
    let coeffs = if c1.is_nan() || c2.is_nan() || c3.is_nan() {
        None
    } else {
        BellDiagonalCoeffs::new(c1, c2, c3).map_err(|e| errs.push(e.to_string())).ok()
    };
    let start = num(&kv, "start", Some(0.0), &mut errs);
    let stop = num(&kv, "stop", Some(1.0), &mut errs);
    let points = match kv.get("points") {
        Some(v) => v.parse::<usize>().unwrap_or_else(|_| {
            errs.push(format!("points: '{v}' is not a count"));
            0
        }),
        None => 101,
    };
    let outputs: Vec<OutputTag> = match kv.get("outputs") {
        Some(v) => v
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .filter_map(|s| s.parse().map_err(|_| errs.push(format!("unknown output tag '{}'", s.trim()))).ok())
            .collect(),
        None => {
            errs.push("missing key 'outputs'".into());
            Vec::new()
        }
    };
    let steering = match (kv.get("steering"), kv.get("strengths")) {
        (Some(kind), Some(list)) => {
            let kind = kind.parse::<SteeringKind>().map_err(|e| errs.extend(messages(e))).ok();
            let strengths: Vec<f64> = list
                .split(',')
                .filter_map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| errs.push(format!("strengths: '{}' is not a number", s.trim())))
                        .ok()
                })
                .collect();
            kind.map(|kind| SteeringSpec { kind, strengths })
        }
        (Some(_), None) => {
            errs.push("steering given without strengths".into());
            None
        }
        (None, Some(_)) => {
            errs.push("strengths given without steering".into());
            None
        }
        (None, None) => None,
    };
    let rate_lambda = kv.contains_key("lambda").then(|| num(&kv, "lambda", None, &mut errs));

    // stand-ins keep the remaining checks running when channel or coefficients failed
    let complete = channel.is_some() && coeffs.is_some();
    let cfg = SweepConfig {
        channel: channel.unwrap_or(Noise::AmplitudeDamping),
        coeffs: coeffs.unwrap_or_else(|| BellDiagonalCoeffs::new(0.0, 0.0, 0.0).expect("origin is physical")),
        grid: Grid { start, stop, points },
        steering,
        rate_lambda,
        outputs,
    };
    if let Err(e) = cfg.validate() {
        errs.extend(messages(e));
    }
    if complete && errs.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Config(errs))
    }
}

fn messages(e: Error) -> Vec<String> {
    match e {
        Error::Config(v) => v,
        other => vec![other.to_string()],
    }
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 18] = [
    "fig1", "fig1c", "fig1d", "fig2", "fig2c", "fig2d", "fig3", "fig3a", "fig3b", "fig4", "fig4a", "fig4b", "fig5",
    "fig5a", "fig5b", "fig6", "fig6a", "fig6b",
];

fn coeffs(c1: f64, c2: f64, c3: f64) -> BellDiagonalCoeffs {
    BellDiagonalCoeffs::new(c1, c2, c3).expect("preset coefficients are physical")
}

fn base(channel: Noise, c: BellDiagonalCoeffs, outputs: &[OutputTag]) -> SweepConfig {
    SweepConfig {
        channel,
        coeffs: c,
        grid: Grid::unit(101),
        steering: None,
        rate_lambda: None,
        outputs: outputs.to_vec(),
    }
}

fn steered(mut cfg: SweepConfig, kind: SteeringKind, strengths: &[f64]) -> SweepConfig {
    cfg.steering = Some(SteeringSpec {
        kind,
        strengths: strengths.to_vec(),
    });
    cfg
}

fn timed(mut cfg: SweepConfig, lambda: f64) -> SweepConfig {
    cfg.rate_lambda = Some(lambda);
    cfg
}

/// Sweep configurations reproducing one figure panel (or all panels of a
/// figure for the bare `figN` names).
///
/// Figures 1-4 use coefficients (-0.5, 0.4, 0.8), figure 5 (-1, 1, 1) and
/// figure 6 (1, 1, -1). Panels: 1/2 a-b bounds, c discord and minimal
/// entropy, d tightness; 3/4 a filtering, b weak measurement; 5 a AD, b BPF
/// with weak measurement; 6 a AD capacity over t ∈ [0, 1] for λ = 0.1,
/// 0.3, 0.7, b BPF capacity.
pub fn preset(name: &str) -> Result<Vec<SweepConfig>> {
    use OutputTag::*;
    use SteeringKind::{Filter, Weak};
    let fig1_c = coeffs(-0.5, 0.4, 0.8);
    let pure = coeffs(-1.0, 1.0, 1.0);
    let cap = coeffs(1.0, 1.0, -1.0);
    let ad = Noise::AmplitudeDamping;
    let bpf = Noise::BitPhaseFlip;
    let cfgs = match name {
        "fig1" => vec![base(ad, fig1_c, &[U, Berta, Pati, Adabi])],
        "fig1c" => vec![base(ad, fig1_c, &[Discord, SMin])],
        "fig1d" => vec![base(ad, fig1_c, &[Tightness])],
        "fig2" => vec![base(bpf, fig1_c, &[U, Berta, Pati, Adabi])],
        "fig2c" => vec![base(bpf, fig1_c, &[Discord, SMin])],
        "fig2d" => vec![base(bpf, fig1_c, &[Tightness])],
        "fig3a" => vec![steered(base(ad, fig1_c, &[U]), Filter, &[0.2, 0.3, 0.4, 0.5])],
        "fig3b" => vec![steered(base(ad, fig1_c, &[U]), Weak, &[0.0, 0.4, 0.6, 0.8])],
        "fig4a" => vec![steered(base(bpf, fig1_c, &[U]), Filter, &[0.1, 0.25, 0.5])],
        "fig4b" => vec![steered(base(bpf, fig1_c, &[U]), Weak, &[0.7, 0.4, 0.0])],
        "fig5a" => vec![steered(base(ad, pure, &[U, Witness]), Weak, &[0.0, 0.4, 0.8])],
        "fig5b" => vec![steered(base(bpf, pure, &[U, Witness]), Weak, &[0.0, 0.4, 0.8])],
        "fig6a" => [0.1, 0.3, 0.7].iter().map(|&l| timed(base(ad, cap, &[Capacity]), l)).collect(),
        "fig6b" => vec![base(bpf, cap, &[Capacity])],
        "fig3" | "fig4" | "fig5" | "fig6" => {
            let mut all = preset(&format!("{name}a"))?;
            all.extend(preset(&format!("{name}b"))?);
            all
        }
        other => {
            return Err(Error::Config(vec![format!(
                "unknown preset '{other}'; expected one of {}",
                PRESET_NAMES.join(", ")
            )]))
        }
    };
    Ok(cfgs)
}
