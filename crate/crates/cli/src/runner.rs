//! Spec validation, execution and output writing.
//!
//! `Plan::build` performs every check that can fail on user input, so a
//! config error never leaves partial output behind. Results are rendered to
//! memory and written only after the whole run succeeded.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use lrbsim::channel::{
    exact_survival_with, group_superoperators, twirl_exact, CMatrix, Superoperator,
};
use lrbsim::curve::{SurvivalCurve, SurvivalPoint};
use lrbsim::fit::{fit_curve, fit_exponential, DecayFit};
use lrbsim::lrb::{estimate_lrb_survival, LrbConfig, LrbSetup};
use lrbsim::pauli::PauliOperator;
use lrbsim::qec::{
    build_pi, check_surjective, min_weight_decoder, steane_code, Decoder, ParityChecks,
    StabilizerCode,
};
use lrbsim::rb::{estimate_survival, NoiseModel, RbConfig};
use lrbsim::rng::aux_rng;
use lrbsim::shield::{amplitude_lower_bound, copies_needed};
use lrbsim::witness::{multiplicity_witness, RepresentationReport};
use nalgebra::Complex;
use serde::Deserialize;
use toml::{Table, Value};

use crate::error::CliError;
use crate::output::{
    emit_csv, emit_fit_csv, emit_plot, emit_sweep_csv, fmt_num, render_plot, Series,
};
use crate::spec::{
    CodeSection, ExperimentKind, FitSection, LoadedSpec, LrbSection, RbSection, SweepParameter,
    SweepSection, TwirlSection,
};

/// Commutation residual above which the twirl is reported as broken.
pub const TWIRL_TOL: f64 = 1e-10;
const RANDOM_CHANNEL_LABEL: u64 = 0x7A1;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub out: Option<PathBuf>,
    pub plot: bool,
    pub seed: Option<u64>,
    /// Set by the alias subcommands.
    pub expect: Option<ExperimentKind>,
}

#[derive(Debug)]
pub struct Plan {
    pub kind: ExperimentKind,
    pub name: String,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub plot: bool,
    job: Job,
}

#[derive(Debug)]
enum Job {
    Rb {
        config: RbConfig,
        exact: Option<Superoperator>,
        fit: Option<usize>,
    },
    Lrb {
        runs: Vec<(f64, LrbConfig)>,
        sweep: Option<SweepParameter>,
        fit: Option<usize>,
        shield: Option<ShieldInfo>,
    },
    Surjectivity {
        decoder: Decoder,
        cutoff: usize,
        unfilled: usize,
        blocks: usize,
        block_logical: usize,
    },
    Twirl {
        channel: Superoperator,
        label: String,
        m_values: Vec<usize>,
        witness: bool,
    },
    Fit {
        ms: Vec<f64>,
        ps: Vec<f64>,
        components: usize,
    },
}

#[derive(Debug)]
struct ShieldInfo {
    horizon: usize,
    bound: f64,
}

/// Rendered output files plus a TOML summary.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
    pub summary: Table,
}

fn reject<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(msg.into()))
}

fn check_name(name: &str) -> Result<(), CliError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        && !name.starts_with('.');
    if ok {
        Ok(())
    } else {
        reject(format!("name {name:?} must be alphanumeric with - _ ."))
    }
}

fn probability(label: &str, p: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        reject(format!("{label} = {p} is not in [0, 1]"))
    }
}

fn load_code(name: &str, base_dir: &Path) -> Result<StabilizerCode, CliError> {
    if name == "steane" {
        return Ok(steane_code());
    }
    let path = base_dir.join(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.parse::<ParityChecks>()?.to_code()?)
}

impl Plan {
    pub fn build(loaded: &LoadedSpec, opts: &Options) -> Result<Self, CliError> {
        let spec = &loaded.spec;
        let kind = match (spec.experiment, opts.expect) {
            (Some(a), Some(b)) if a != b => {
                return reject(format!("spec describes a {a} experiment, not {b}"))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return reject("spec does not name an experiment"),
        };
        let name = match &spec.name {
            Some(n) => n.clone(),
            None => Path::new(&loaded.source)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("experiment")
                .trim_start_matches("bundled:")
                .to_string(),
        };
        check_name(&name)?;
        let seed = opts.seed.unwrap_or(spec.seed);
        let out_dir = match (&opts.out, &spec.output) {
            (Some(o), _) => o.clone(),
            (None, Some(o)) => loaded.base_dir.join(o),
            (None, None) => PathBuf::from("."),
        };

        let allowed: &[&str] = match kind {
            ExperimentKind::Rb => &["rb", "fit"],
            ExperimentKind::Lrb | ExperimentKind::LrbShield => &["lrb", "sweep", "fit"],
            ExperimentKind::Surjectivity => &["surjectivity"],
            ExperimentKind::Twirl => &["twirl"],
            ExperimentKind::Fit => &["fit"],
        };
        let present = [
            ("rb", spec.rb.is_some()),
            ("lrb", spec.lrb.is_some()),
            ("sweep", spec.sweep.is_some()),
            ("surjectivity", spec.surjectivity.is_some()),
            ("twirl", spec.twirl.is_some()),
            ("fit", spec.fit.is_some()),
        ];
        for (section, is_present) in present {
            if is_present && !allowed.contains(&section) {
                return reject(format!("section [{section}] does not apply to {kind}"));
            }
        }

        let job = match kind {
            ExperimentKind::Rb => {
                let Some(rb) = &spec.rb else {
                    return reject("rb experiment needs an [rb] section");
                };
                plan_rb(rb, spec.fit.as_ref(), seed)?
            }
            ExperimentKind::Lrb | ExperimentKind::LrbShield => {
                let Some(lrb) = &spec.lrb else {
                    return reject(format!("{kind} experiment needs an [lrb] section"));
                };
                plan_lrb(
                    lrb,
                    spec.sweep.as_ref(),
                    spec.fit.as_ref(),
                    kind == ExperimentKind::LrbShield,
                    seed,
                    &loaded.base_dir,
                )?
            }
            ExperimentKind::Surjectivity => {
                let default = CodeSection {
                    code: "steane".into(),
                    blocks: 1,
                };
                plan_surjectivity(spec.surjectivity.as_ref().unwrap_or(&default), &loaded.base_dir)?
            }
            ExperimentKind::Twirl => {
                let Some(tw) = &spec.twirl else {
                    return reject("twirl experiment needs a [twirl] section");
                };
                plan_twirl(tw, seed)?
            }
            ExperimentKind::Fit => {
                let Some(fit) = &spec.fit else {
                    return reject("fit experiment needs a [fit] section");
                };
                plan_fit(fit, &loaded.base_dir)?
            }
        };
        Ok(Self {
            kind,
            name,
            seed,
            out_dir,
            plot: opts.plot || spec.plot,
            job,
        })
    }

    pub fn run(&self) -> Result<Artifacts, CliError> {
        let mut art = Artifacts::default();
        art.summary.insert("experiment".into(), Value::String(self.kind.to_string()));
        art.summary.insert("name".into(), Value::String(self.name.clone()));
        art.summary.insert(
            "seed".into(),
            i64::try_from(self.seed).map_or_else(|_| Value::String(self.seed.to_string()), Value::Integer),
        );
        match &self.job {
            Job::Rb { config, exact, fit } => self.run_rb(config, exact.as_ref(), *fit, &mut art)?,
            Job::Lrb {
                runs,
                sweep,
                fit,
                shield,
            } => self.run_lrb(runs, *sweep, *fit, shield.as_ref(), &mut art)?,
            Job::Surjectivity {
                decoder,
                cutoff,
                unfilled,
                blocks,
                block_logical,
            } => self.run_surjectivity(decoder, *cutoff, *unfilled, *blocks, *block_logical, &mut art)?,
            Job::Twirl {
                channel,
                label,
                m_values,
                witness,
            } => self.run_twirl(channel, label, m_values, *witness, &mut art)?,
            Job::Fit { ms, ps, components } => self.run_fit(ms, ps, *components, &mut art)?,
        }
        Ok(art)
    }

    fn file(&self, suffix: &str, ext: &str) -> String {
        format!("{}{suffix}.{ext}", self.name)
    }

    fn add_fit(&self, fit: &DecayFit, art: &mut Artifacts) -> Result<(), CliError> {
        art.files.push((self.file("_fit", "csv"), emit_fit_csv(fit)?));
        let mut t = Table::new();
        t.insert("components".into(), Value::Integer(fit.r as i64));
        t.insert("rms_residual".into(), Value::Float(fit.residual));
        t.insert("degenerate".into(), Value::Boolean(fit.degenerate));
        t.insert(
            "amplitudes".into(),
            Value::Array(fit.components.iter().map(|c| Value::Float(c.0)).collect()),
        );
        t.insert(
            "lambdas".into(),
            Value::Array(fit.components.iter().map(|c| Value::Float(c.1)).collect()),
        );
        art.summary.insert("fit".into(), Value::Table(t));
        Ok(())
    }

    fn run_rb(
        &self,
        config: &RbConfig,
        exact: Option<&Superoperator>,
        fit: Option<usize>,
        art: &mut Artifacts,
    ) -> Result<(), CliError> {
        let curve = estimate_survival(config)?;
        art.files.push((self.file("", "csv"), emit_csv(&curve)?));
        let mut series = vec![Series::from_curve(&curve)];
        if let Some(channel) = exact {
            let twirl = twirl_exact(channel, config.k)?;
            let points = config
                .m_values
                .iter()
                .map(|&m| SurvivalPoint::from_mean(m, exact_survival_with(m - 1, channel, &twirl), 0))
                .collect();
            let exact_curve = SurvivalCurve::new("exact", config.seed, points);
            art.files.push((self.file("_exact", "csv"), emit_csv(&exact_curve)?));
            let mut s = Series::from_curve(&exact_curve);
            s.markers = false;
            series.push(s);
        }
        if let Some(r) = fit {
            let f = fit_curve(&curve, r)?;
            series.push(fit_series(&f, &curve.ms()));
            self.add_fit(&f, art)?;
        }
        let oscillates = matches!(
            config.model,
            NoiseModel::HiddenRegister | NoiseModel::HiddenRegisterTau { .. }
        );
        add_curve_summary(&curve, oscillates, art);
        if self.plot {
            art.files.push((self.file("", "svg"), render_plot(&series, "sequence length m")?));
        }
        Ok(())
    }

    fn run_lrb(
        &self,
        runs: &[(f64, LrbConfig)],
        sweep: Option<SweepParameter>,
        fit: Option<usize>,
        shield: Option<&ShieldInfo>,
        art: &mut Artifacts,
    ) -> Result<(), CliError> {
        let mut curves = Vec::with_capacity(runs.len());
        for (value, cfg) in runs {
            curves.push((*value, estimate_lrb_survival(cfg)?));
        }
        if let Some(info) = shield {
            let setup = &runs[0].1.setup;
            art.summary.insert("copies".into(), Value::Integer(setup.copies() as i64));
            art.summary.insert("horizon".into(), Value::Integer(info.horizon as i64));
            art.summary.insert("amplitude_lower_bound".into(), Value::Float(info.bound));
            art.summary.insert(
                "physical_qubits".into(),
                Value::Integer(setup.num_physical() as i64),
            );
        }
        match sweep {
            None => {
                let curve = &curves[0].1;
                art.files.push((self.file("", "csv"), emit_csv(curve)?));
                let mut series = vec![Series::from_curve(curve)];
                if let Some(r) = fit {
                    let f = fit_curve(curve, r)?;
                    series.push(fit_series(&f, &curve.ms()));
                    self.add_fit(&f, art)?;
                }
                add_curve_summary(curve, true, art);
                if self.plot {
                    art.files.push((self.file("", "svg"), render_plot(&series, "sequence length m")?));
                }
            }
            Some(param) => {
                let pname = match param {
                    SweepParameter::Reset => "reset",
                    SweepParameter::K => "k",
                };
                art.files.push((self.file("_sweep", "csv"), emit_sweep_csv(pname, &curves)?));
                if self.plot {
                    let x_label = match param {
                        SweepParameter::Reset => "reset probability r",
                        SweepParameter::K => "logical qubits k",
                    };
                    let ms = runs[0].1.m_values.clone();
                    let series: Vec<Series> = ms
                        .iter()
                        .map(|&m| Series {
                            label: format!("m = {m}"),
                            points: curves
                                .iter()
                                .filter_map(|(v, c)| c.point(m).map(|p| (*v, p.p_hat, p.stderr)))
                                .collect(),
                            markers: true,
                        })
                        .collect();
                    art.files.push((self.file("_sweep", "svg"), render_plot(&series, x_label)?));
                }
            }
        }
        Ok(())
    }

    fn run_surjectivity(
        &self,
        decoder: &Decoder,
        cutoff: usize,
        unfilled: usize,
        blocks: usize,
        block_logical: usize,
        art: &mut Artifacts,
    ) -> Result<(), CliError> {
        let report = check_surjective(decoder);
        art.summary.insert("surjective".into(), Value::Boolean(report.surjective));
        art.summary.insert("decoder_cutoff".into(), Value::Integer(cutoff as i64));
        art.summary.insert("unfilled_syndromes".into(), Value::Integer(unfilled as i64));
        art.summary.insert(
            "missing".into(),
            Value::Array(report.missing.iter().map(|p| Value::String(p.to_string())).collect()),
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["block", "logical", "syndrome"]).map_err(io)?;
        if let Some(choice) = &report.choice {
            let pi = build_pi(decoder)?;
            art.summary.insert(
                "window".into(),
                Value::Array(pi.window().iter().map(|&b| Value::Integer(b as i64)).collect()),
            );
            let k = decoder.num_logical();
            for b in 0..blocks {
                for p in PauliOperator::all(block_logical) {
                    let letters: Vec<_> = (0..k)
                        .map(|q| {
                            if (b * block_logical..(b + 1) * block_logical).contains(&q) {
                                p.letter(q - b * block_logical)
                            } else {
                                lrbsim::pauli::Pauli::I
                            }
                        })
                        .collect();
                    let s = choice.preimage(&PauliOperator::from_letters(&letters));
                    w.write_record([b.to_string(), p.to_string(), s.to_string()])
                        .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        art.files.push((
            self.file("_surjectivity", "csv"),
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))?,
        ));
        Ok(())
    }

    fn run_twirl(
        &self,
        channel: &Superoperator,
        label: &str,
        m_values: &[usize],
        witness: bool,
        art: &mut Artifacts,
    ) -> Result<(), CliError> {
        let k = channel.num_qubits();
        let twirl = twirl_exact(channel, k)?;
        let residual = twirl.commutation_residual(&group_superoperators(k)?);
        if residual > TWIRL_TOL {
            return Err(CliError::Invariant(format!(
                "twirl commutation residual {residual:e} exceeds {TWIRL_TOL:e}"
            )));
        }
        art.summary.insert("channel".into(), Value::String(label.into()));
        art.summary.insert("commutation_residual".into(), Value::Float(residual));
        let t = twirl.matrix();
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        let mut header = vec!["row".to_string()];
        header.extend((0..t.ncols()).map(|c| PauliOperator::from_index(c, k).to_string()));
        w.write_record(&header).map_err(io)?;
        for r in 0..t.nrows() {
            let mut rec = vec![PauliOperator::from_index(r, k).to_string()];
            rec.extend((0..t.ncols()).map(|c| fmt_num(t[(r, c)])));
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        art.files.push((
            self.file("_twirl", "csv"),
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))?,
        ));
        let points = m_values
            .iter()
            .map(|&m| SurvivalPoint::from_mean(m, exact_survival_with(m - 1, channel, &twirl), 0))
            .collect();
        let curve = SurvivalCurve::new(format!("exact {label}"), self.seed, points);
        art.files.push((self.file("", "csv"), emit_csv(&curve)?));
        if witness {
            let wit = multiplicity_witness(self.seed)?;
            art.summary.insert("witness_standard".into(), report_table(&wit.standard));
            art.summary.insert("witness_hidden_register".into(), report_table(&wit.hidden_register));
        }
        if self.plot {
            art.files.push((self.file("", "svg"), emit_plot(&curve)?));
        }
        Ok(())
    }

    fn run_fit(
        &self,
        ms: &[f64],
        ps: &[f64],
        components: usize,
        art: &mut Artifacts,
    ) -> Result<(), CliError> {
        let f = fit_exponential(ms, ps, components)?;
        self.add_fit(&f, art)?;
        if self.plot {
            let data = Series {
                label: "data".into(),
                points: ms.iter().zip(ps).map(|(&m, &p)| (m, p, 0.0)).collect(),
                markers: true,
            };
            art.files.push((
                self.file("_fit", "svg"),
                render_plot(&[data, fit_series(&f, ms)], "sequence length m")?,
            ));
        }
        Ok(())
    }
}

fn fit_series(fit: &DecayFit, ms: &[f64]) -> Series {
    let (lo, hi) = ms
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &m| (a.min(m), b.max(m)));
    let steps = 200;
    Series {
        label: format!("fit, {} component(s)", fit.r),
        points: (0..=steps)
            .map(|i| {
                let m = lo + (hi - lo) * i as f64 / steps as f64;
                (m, fit.eval(m), 0.0)
            })
            .collect(),
        markers: false,
    }
}

fn add_curve_summary(curve: &SurvivalCurve, oscillates: bool, art: &mut Artifacts) {
    art.summary.insert("label".into(), Value::String(curve.label.clone()));
    if !oscillates {
        return;
    }
    let amps: Vec<Value> = curve
        .points
        .iter()
        .filter_map(|p| curve.oscillation_amplitude(p.m))
        .map(Value::Float)
        .collect();
    art.summary.insert("oscillation_amplitude".into(), Value::Array(amps));
}

fn report_table(r: &RepresentationReport) -> Value {
    let mut t = Table::new();
    t.insert("dim".into(), Value::Integer(r.dim as i64));
    t.insert(
        "blocks".into(),
        Value::Array(r.blocks.iter().map(|&b| Value::Integer(b as i64)).collect()),
    );
    t.insert("character_norm".into(), Value::Float(r.character_norm));
    t.insert("trivial_multiplicity".into(), Value::Float(r.trivial_multiplicity));
    t.insert("off_block_residual".into(), Value::Float(r.off_block_residual));
    t.insert("block_scalar_residual".into(), Value::Float(r.block_scalar_residual));
    t.insert("multiplicity_free".into(), Value::Boolean(r.multiplicity_free()));
    t.insert("scalar_action".into(), Value::Boolean(r.scalar_action()));
    Value::Table(t)
}

fn check_fit_points(components: usize, points: usize) -> Result<(), CliError> {
    if components == 0 {
        return reject("fit needs at least one component");
    }
    if points < 2 * components {
        return reject(format!(
            "a {components}-component fit needs {} points, got {points}",
            2 * components
        ));
    }
    Ok(())
}

fn plan_rb(rb: &RbSection, fit: Option<&FitSection>, seed: u64) -> Result<Job, CliError> {
    let model = match rb.model.as_str() {
        "ideal" => NoiseModel::Ideal,
        "depolarizing" => match rb.p {
            Some(p) => NoiseModel::Depolarizing { p },
            None => return reject("depolarizing model needs p"),
        },
        "hidden_register" => match rb.tau {
            Some(tau) => NoiseModel::HiddenRegisterTau { tau },
            None => NoiseModel::HiddenRegister,
        },
        other => {
            return reject(format!(
                "unknown model {other:?}; expected ideal, depolarizing or hidden_register"
            ))
        }
    };
    let config = RbConfig {
        k: rb.k,
        model,
        m_values: rb.m.values()?,
        n_sequences: rb.n_sequences,
        seed,
    };
    config.validate()?;
    let exact = if rb.exact {
        match config.model {
            NoiseModel::Depolarizing { p } if rb.k <= 2 => Some(Superoperator::depolarizing(rb.k, p)?),
            NoiseModel::Ideal if rb.k <= 2 => Some(Superoperator::identity(rb.k)),
            _ => return reject("exact = true needs an ideal or depolarizing model with k <= 2"),
        }
    } else {
        None
    };
    if let Some(f) = fit {
        if f.input.is_some() {
            return reject("[fit] input only applies to fit experiments");
        }
        check_fit_points(f.components, config.m_values.len())?;
    }
    Ok(Job::Rb {
        config,
        exact,
        fit: fit.map(|f| f.components),
    })
}

fn plan_lrb(
    lrb: &LrbSection,
    sweep: Option<&SweepSection>,
    fit: Option<&FitSection>,
    shielded: bool,
    seed: u64,
    base_dir: &Path,
) -> Result<Job, CliError> {
    let m_values = lrb.m.values()?;
    let reset = probability("reset", lrb.reset)?;
    let code = lrb.code.as_deref().unwrap_or("steane");
    if !shielded && (lrb.copies.unwrap_or(1) != 1 || lrb.target_amplitude.is_some()) {
        return reject("copies > 1 and target_amplitude need experiment = \"lrb-shield\"");
    }
    if shielded && code != "steane" {
        return reject("lrb-shield runs on Steane blocks only");
    }
    let horizon = lrb
        .horizon
        .unwrap_or_else(|| m_values.iter().copied().max().unwrap_or(1));
    let copies_for = |k: usize, r: f64| -> Result<usize, CliError> {
        if !shielded {
            return Ok(1);
        }
        match (lrb.copies, lrb.target_amplitude) {
            (Some(_), Some(_)) => reject("give either copies or target_amplitude, not both"),
            (Some(0), None) => reject("copies must be positive"),
            (Some(c), None) => Ok(c),
            (None, Some(a)) => Ok(copies_needed(k, horizon, a, r)?),
            (None, None) => reject("lrb-shield needs copies or target_amplitude"),
        }
    };

    let custom = if code == "steane" {
        None
    } else {
        let c = load_code(code, base_dir)?;
        if let Some(k) = lrb.k {
            if k != c.num_logical() {
                return reject(format!(
                    "k = {k} but the code encodes {} logical qubits",
                    c.num_logical()
                ));
            }
        }
        Some(Arc::new(LrbSetup::from_code(&c)?))
    };
    let k0 = lrb.k.unwrap_or(1);
    let make = |k: usize, r: f64| -> Result<LrbConfig, CliError> {
        let setup = match &custom {
            Some(s) => s.clone(),
            None => Arc::new(LrbSetup::steane(k, copies_for(k, r)?)?),
        };
        let cfg = LrbConfig {
            setup,
            reset_prob: r,
            m_values: m_values.clone(),
            n_sequences: lrb.n_sequences,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    };

    let mut runs = Vec::new();
    match sweep {
        None => runs.push((reset, make(k0, reset)?)),
        Some(sw) => {
            if sw.values.is_empty() {
                return reject("sweep needs at least one value");
            }
            for &v in &sw.values {
                match sw.parameter {
                    SweepParameter::Reset => runs.push((v, make(k0, probability("reset", v)?)?)),
                    SweepParameter::K => {
                        if custom.is_some() {
                            return reject("k sweeps run on Steane blocks only");
                        }
                        if v < 1.0 || v.fract() != 0.0 {
                            return reject(format!("swept k = {v} is not a positive integer"));
                        }
                        runs.push((v, make(v as usize, reset)?));
                    }
                }
            }
        }
    }
    if let Some(f) = fit {
        if f.input.is_some() {
            return reject("[fit] input only applies to fit experiments");
        }
        if sweep.is_some() {
            return reject("[fit] does not apply to sweeps");
        }
        check_fit_points(f.components, m_values.len())?;
    }
    let shield = if shielded {
        let setup = &runs[0].1.setup;
        Some(ShieldInfo {
            horizon,
            bound: amplitude_lower_bound(setup.copies(), setup.num_logical(), horizon, reset)?,
        })
    } else {
        None
    };
    Ok(Job::Lrb {
        runs,
        sweep: sweep.map(|s| s.parameter),
        fit: fit.map(|f| f.components),
        shield,
    })
}

fn plan_surjectivity(sec: &CodeSection, base_dir: &Path) -> Result<Job, CliError> {
    if sec.blocks == 0 {
        return reject("blocks must be positive");
    }
    let code = load_code(&sec.code, base_dir)?;
    let (block, report) = min_weight_decoder(&code)?;
    let decoder = Decoder::product(&vec![block; sec.blocks]);
    Ok(Job::Surjectivity {
        decoder,
        cutoff: report.cutoff,
        unfilled: report.unfilled.len() * sec.blocks,
        blocks: sec.blocks,
        block_logical: code.num_logical(),
    })
}

fn plan_twirl(tw: &TwirlSection, seed: u64) -> Result<Job, CliError> {
    if tw.k == 0 || tw.k > 2 {
        return reject(format!("twirl needs k in 1..=2, got {}", tw.k));
    }
    let need_p = || {
        tw.p
            .ok_or_else(|| CliError::Config(format!("{} channel needs p", tw.channel)))
            .and_then(|p| probability("p", p))
    };
    let channel = match tw.channel.as_str() {
        "depolarizing" => Superoperator::depolarizing(tw.k, need_p()?)?,
        "amplitude_damping" => {
            if tw.k != 1 {
                return reject("amplitude_damping is a single-qubit channel");
            }
            let g = need_p()?;
            let c = |v: f64| Complex::new(v, 0.0);
            let k0 = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c((1.0 - g).sqrt())]);
            let k1 = CMatrix::from_row_slice(2, 2, &[c(0.0), c(g.sqrt()), c(0.0), c(0.0)]);
            Superoperator::from_kraus(1, &[k0, k1])?
        }
        "random" => Superoperator::random(tw.k, &mut aux_rng(seed, RANDOM_CHANNEL_LABEL))?,
        other => {
            return reject(format!(
                "unknown channel {other:?}; expected depolarizing, amplitude_damping or random"
            ))
        }
    };
    let m_values = match &tw.m {
        Some(m) => m.values()?,
        None => (2..=20).collect(),
    };
    if let Some(&m) = m_values.iter().find(|&&m| m < 1) {
        return reject(format!("sequence length {m} must be at least 1"));
    }
    Ok(Job::Twirl {
        channel,
        label: tw.channel.clone(),
        m_values,
        witness: tw.witness,
    })
}

#[derive(Deserialize)]
struct CurveRow {
    m: f64,
    p_hat: f64,
}

fn plan_fit(fit: &FitSection, base_dir: &Path) -> Result<Job, CliError> {
    let Some(input) = &fit.input else {
        return reject("fit experiment needs [fit] input");
    };
    let path = base_dir.join(input);
    let mut reader = csv::Reader::from_path(&path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut ms = Vec::new();
    let mut ps = Vec::new();
    for row in reader.deserialize::<CurveRow>() {
        let row = row.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        ms.push(row.m);
        ps.push(row.p_hat);
    }
    check_fit_points(fit.components, ms.len())?;
    Ok(Job::Fit {
        ms,
        ps,
        components: fit.components,
    })
}

/// Validates, runs, then writes every artifact. Returns the written paths.
pub fn execute(loaded: &LoadedSpec, opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    let plan = Plan::build(loaded, opts)?;
    let mut art = plan.run()?;
    let summary = toml::to_string(&std::mem::take(&mut art.summary))
        .map_err(|e| CliError::Io(e.to_string()))?;
    art.files.push((plan.file("_summary", "toml"), summary));
    std::fs::create_dir_all(&plan.out_dir)?;
    let mut written = Vec::with_capacity(art.files.len());
    for (name, contents) in &art.files {
        let path = plan.out_dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
