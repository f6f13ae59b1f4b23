//! Process-variation sampling and Monte Carlo over the storage cell.
//!
//! Each trial perturbs one representative complementary cell (junction
//! dimensions, film thicknesses, channel dimensions, transistor thresholds
//! and widths), then runs a full write-0 / read / write-1 / read sequence
//! against it and records errors, switching times, currents and resistances.
//! Trials are seeded per (seed, trial index), so a run is reproducible and
//! the serial and parallel paths produce identical records.

use crate::circuit::{
    cell_read, cell_write, pull_transistor, read_disturbs, AccessResult, CellDesign, LutFlavor,
    MemoryCell,
};
use crate::device::{mtj_resistance, MtjState, TechParams, TransistorParams};
use crate::error::{Error, Result};
use crate::params::Document;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// How the stated variation fractions map to the Gaussian width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaConvention {
    /// The fraction is a three-sigma bound: sigma = fraction / 3. With the
    /// +-3 sigma truncation, no sampled value leaves the stated band.
    ThreeSigma,
    /// The fraction is one sigma.
    OneSigma,
}

impl SigmaConvention {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "three_sigma" => Ok(SigmaConvention::ThreeSigma),
            "one_sigma" => Ok(SigmaConvention::OneSigma),
            other => Err(Error::argument(format!(
                "unknown sigma convention {other:?}; expected three_sigma or one_sigma"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SigmaConvention::ThreeSigma => "three_sigma",
            SigmaConvention::OneSigma => "one_sigma",
        }
    }
}

/// Relative variation applied to each device parameter class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationSpec {
    /// Junction in-plane length and width.
    pub mtj_dimension_variation: f64,
    /// Free-layer, oxide and channel thicknesses.
    pub film_thickness_variation: f64,
    /// Channel in-plane length and width.
    pub she_channel_dimension_variation: f64,
    /// Transistor threshold voltage.
    pub transistor_vth_variation: f64,
    /// Transistor drawn width.
    pub transistor_dimension_variation: f64,
    pub sigma_convention: SigmaConvention,
    /// When false (the default), the two junctions of a pair share one
    /// in-plane dimension draw: adjacent devices see the same lithography,
    /// and the write loop cares about their resistance sum, not the split.
    /// Channel in-plane draws follow the same rule. Setting this true
    /// samples every junction and channel independently.
    pub independent_pair_dimensions: bool,
}

impl Default for VariationSpec {
    fn default() -> Self {
        VariationSpec {
            mtj_dimension_variation: 0.10,
            film_thickness_variation: 0.01,
            she_channel_dimension_variation: 0.10,
            transistor_vth_variation: 0.10,
            transistor_dimension_variation: 0.01,
            sigma_convention: SigmaConvention::ThreeSigma,
            independent_pair_dimensions: false,
        }
    }
}

const VARIATION_KEYS: &[&str] = &[
    "mtj_dimension_variation",
    "film_thickness_variation",
    "she_channel_dimension_variation",
    "transistor_vth_variation",
    "transistor_dimension_variation",
    "sigma_convention",
    "independent_pair_dimensions",
];

impl VariationSpec {
    /// Reads a spec from a document; absent keys keep their defaults.
    pub fn from_document(doc: &Document) -> Result<Self> {
        doc.ensure_known(VARIATION_KEYS)?;
        let defaults = VariationSpec::default();
        let spec = VariationSpec {
            mtj_dimension_variation: doc
                .get_f64_opt("mtj_dimension_variation")?
                .unwrap_or(defaults.mtj_dimension_variation),
            film_thickness_variation: doc
                .get_f64_opt("film_thickness_variation")?
                .unwrap_or(defaults.film_thickness_variation),
            she_channel_dimension_variation: doc
                .get_f64_opt("she_channel_dimension_variation")?
                .unwrap_or(defaults.she_channel_dimension_variation),
            transistor_vth_variation: doc
                .get_f64_opt("transistor_vth_variation")?
                .unwrap_or(defaults.transistor_vth_variation),
            transistor_dimension_variation: doc
                .get_f64_opt("transistor_dimension_variation")?
                .unwrap_or(defaults.transistor_dimension_variation),
            sigma_convention: match doc.get_str_opt("sigma_convention") {
                Some(text) => SigmaConvention::parse(text)?,
                None => defaults.sigma_convention,
            },
            independent_pair_dimensions: match doc.get_str_opt("independent_pair_dimensions") {
                Some("true") => true,
                Some("false") => false,
                Some(other) => {
                    return Err(Error::config(
                        "independent_pair_dimensions",
                        format!("expected true or false, got {other:?}"),
                    ))
                }
                None => defaults.independent_pair_dimensions,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_document(&Document::load(path)?)
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.set("mtj_dimension_variation", self.mtj_dimension_variation);
        doc.set("film_thickness_variation", self.film_thickness_variation);
        doc.set("she_channel_dimension_variation", self.she_channel_dimension_variation);
        doc.set("transistor_vth_variation", self.transistor_vth_variation);
        doc.set("transistor_dimension_variation", self.transistor_dimension_variation);
        doc.set("sigma_convention", self.sigma_convention.as_str());
        doc.set(
            "independent_pair_dimensions",
            if self.independent_pair_dimensions { "true" } else { "false" },
        );
        doc
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mtj_dimension_variation", self.mtj_dimension_variation),
            ("film_thickness_variation", self.film_thickness_variation),
            ("she_channel_dimension_variation", self.she_channel_dimension_variation),
            ("transistor_vth_variation", self.transistor_vth_variation),
            ("transistor_dimension_variation", self.transistor_dimension_variation),
        ] {
            if !(v.is_finite() && (0.0..1.0).contains(&v)) {
                return Err(Error::config(
                    name,
                    format!("variation fraction must be in [0, 1), got {v}"),
                ));
            }
        }
        Ok(())
    }

    /// Gaussian width for one stated fraction.
    pub fn sigma(&self, fraction: f64) -> f64 {
        match self.sigma_convention {
            SigmaConvention::ThreeSigma => fraction / 3.0,
            SigmaConvention::OneSigma => fraction,
        }
    }

    /// All fractions scaled by a common factor; used for stress sweeps.
    pub fn scaled(&self, factor: f64) -> Self {
        VariationSpec {
            mtj_dimension_variation: self.mtj_dimension_variation * factor,
            film_thickness_variation: self.film_thickness_variation * factor,
            she_channel_dimension_variation: self.she_channel_dimension_variation * factor,
            transistor_vth_variation: self.transistor_vth_variation * factor,
            transistor_dimension_variation: self.transistor_dimension_variation * factor,
            ..*self
        }
    }
}

/// One multiplicative variation factor: 1 + x * sigma with x standard
/// normal, redrawn until |x| <= 3 and the factor is positive.
fn truncated_factor(rng: &mut ChaCha8Rng, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 1.0;
    }
    loop {
        let x: f64 = rng.sample(StandardNormal);
        if x.abs() <= 3.0 {
            let factor = 1.0 + x * sigma;
            if factor > 0.0 {
                return factor;
            }
        }
    }
}

/// A sampled cell plus its read-divider pulls, ready for one trial.
#[derive(Debug, Clone)]
pub struct TrialInstance {
    pub cell: MemoryCell,
    pub pull_up: TransistorParams,
    pub pull_down: TransistorParams,
}

fn perturb_transistor(t: &mut TransistorParams, spec: &VariationSpec, rng: &mut ChaCha8Rng) {
    t.threshold_voltage *= truncated_factor(rng, spec.sigma(spec.transistor_vth_variation));
    t.width_multiplier *= truncated_factor(rng, spec.sigma(spec.transistor_dimension_variation));
}

/// Draws one varied instance. The draw order is fixed: primary junction
/// in-plane dims, complement in-plane dims (skipped when pairs share),
/// per-junction film thicknesses, channel dims and thicknesses for
/// three-terminal cells, then the five transistors (write gates, read gate,
/// pulls). The instance starts out storing bit 1.
pub fn sample_instance(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    rng: &mut ChaCha8Rng,
) -> TrialInstance {
    let mut cell = design.build_cell(tech);
    cell.mtj.state = MtjState::Parallel;
    cell.mtj_complement.state = MtjState::AntiParallel;

    let dim_sigma = spec.sigma(spec.mtj_dimension_variation);
    let film_sigma = spec.sigma(spec.film_thickness_variation);

    let f_length = truncated_factor(rng, dim_sigma);
    let f_width = truncated_factor(rng, dim_sigma);
    cell.mtj.geometry.length_nm *= f_length;
    cell.mtj.geometry.width_nm *= f_width;
    if spec.independent_pair_dimensions {
        cell.mtj_complement.geometry.length_nm *= truncated_factor(rng, dim_sigma);
        cell.mtj_complement.geometry.width_nm *= truncated_factor(rng, dim_sigma);
    } else {
        cell.mtj_complement.geometry.length_nm *= f_length;
        cell.mtj_complement.geometry.width_nm *= f_width;
    }
    cell.mtj.geometry.free_layer_thickness_nm *= truncated_factor(rng, film_sigma);
    cell.mtj.geometry.oxide_thickness_nm *= truncated_factor(rng, film_sigma);
    cell.mtj_complement.geometry.free_layer_thickness_nm *= truncated_factor(rng, film_sigma);
    cell.mtj_complement.geometry.oxide_thickness_nm *= truncated_factor(rng, film_sigma);

    if design.flavor == LutFlavor::She {
        let ch_sigma = spec.sigma(spec.she_channel_dimension_variation);
        let f_ch_length = truncated_factor(rng, ch_sigma);
        let f_ch_width = truncated_factor(rng, ch_sigma);
        let ch = cell.channel.as_mut().expect("three-terminal design has channels");
        ch.length_nm *= f_ch_length;
        ch.width_nm *= f_ch_width;
        ch.thickness_nm *= truncated_factor(rng, film_sigma);
        let chc = cell.channel_complement.as_mut().expect("three-terminal design has channels");
        if spec.independent_pair_dimensions {
            chc.length_nm *= truncated_factor(rng, ch_sigma);
            chc.width_nm *= truncated_factor(rng, ch_sigma);
        } else {
            chc.length_nm *= f_ch_length;
            chc.width_nm *= f_ch_width;
        }
        chc.thickness_nm *= truncated_factor(rng, film_sigma);
    }

    perturb_transistor(&mut cell.write_tg_1, spec, rng);
    perturb_transistor(&mut cell.write_tg_2, spec, rng);
    perturb_transistor(&mut cell.read_tg, spec, rng);
    let mut pull_up = pull_transistor(tech);
    let mut pull_down = pull_transistor(tech);
    perturb_transistor(&mut pull_up, spec, rng);
    perturb_transistor(&mut pull_down, spec, rng);

    TrialInstance { cell, pull_up, pull_down }
}

/// Outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    /// Any junction failed to switch within a write pulse.
    pub write_error: bool,
    /// A read sensed the wrong value, or the read current reached a
    /// critical current.
    pub read_error: bool,
    /// Primary-junction switching times, s; infinite when the junction did
    /// not switch.
    pub t_p_ap: f64,
    pub t_ap_p: f64,
    /// Mean of the two write-path and two read-path currents, A.
    pub i_write: f64,
    pub i_read: f64,
    /// Primary-junction resistances in each state, ohm.
    pub r_p: f64,
    pub r_ap: f64,
}

fn primary_time(result: &AccessResult) -> f64 {
    result
        .events
        .expect("write result carries events")
        .primary
        .time()
        .unwrap_or(f64::INFINITY)
}

/// Runs the trial protocol against one sampled instance: starting from a
/// stored 1, write 0, read, write 1, read. Both writes must flip both
/// junctions; both reads must return the just-written value without
/// reaching any critical current.
pub fn run_trial(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    seed: u64,
    trial_index: u64,
) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    let mut instance = sample_instance(design, tech, spec, &mut rng);
    run_protocol(&mut instance, design.flavor, tech)
}

fn run_protocol(
    instance: &mut TrialInstance,
    flavor: LutFlavor,
    tech: &TechParams,
) -> Result<TrialRecord> {
    let TrialInstance { cell, pull_up, pull_down } = instance;
    let pulse = tech.write_pulse;

    let mut write_error = false;
    let mut read_error = false;

    let write0 = cell_write(cell, tech, flavor, false, pulse)?;
    write_error |= write0.write_error();
    let t_p_ap = primary_time(&write0);

    let read0 = cell_read(cell, tech, pull_up, pull_down)?;
    read_error |= read0.sensed != Some(false);
    read_error |= read_disturbs(cell, tech, pull_up, pull_down)?;

    let write1 = cell_write(cell, tech, flavor, true, pulse)?;
    write_error |= write1.write_error();
    let t_ap_p = primary_time(&write1);

    let read1 = cell_read(cell, tech, pull_up, pull_down)?;
    read_error |= read1.sensed != Some(true);
    read_error |= read_disturbs(cell, tech, pull_up, pull_down)?;

    // Resistance metrics come from the primary junction; after the final
    // write it is parallel, and the antiparallel value follows from the
    // same sampled geometry.
    let r_p = cell.mtj.resistance();
    let r_ap = mtj_resistance(&cell.mtj.geometry, &cell.mtj.material, MtjState::AntiParallel);

    Ok(TrialRecord {
        write_error,
        read_error,
        t_p_ap,
        t_ap_p,
        i_write: 0.5 * (write0.current + write1.current),
        i_read: 0.5 * (read0.current + read1.current),
        r_p,
        r_ap,
    })
}

/// Runs `trials` independent trials. The parallel path distributes trial
/// indices over threads; records come back in index order either way, and
/// each trial's randomness depends only on (seed, index), so both paths
/// return identical records.
pub fn run_trials(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> Result<Vec<TrialRecord>> {
    if trials == 0 {
        return Err(Error::argument("trial count must be positive"));
    }
    if parallel {
        (0..trials)
            .into_par_iter()
            .map(|t| run_trial(design, tech, spec, seed, t))
            .collect()
    } else {
        (0..trials).map(|t| run_trial(design, tech, spec, seed, t)).collect()
    }
}

/// Default bin count for metric histograms.
pub const DEFAULT_HISTOGRAM_BINS: usize = 50;

/// Binned distribution of one metric. Bins are uniform between the sample
/// extremes; the last bin includes its upper edge. A degenerate sample
/// (min == max) is spread over a unit-wide span centered on the value so
/// the bin widths stay finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// bins + 1 edges, ascending.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// Bins the finite entries of `values`. Errors when nothing is finite
    /// or `bins` is zero.
    pub fn new(values: &[f64], bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::argument("histogram needs at least one bin"));
        }
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        if finite.is_empty() {
            return Err(Error::domain("no finite samples to bin"));
        }
        let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if min == max { (min - 0.5, max + 0.5) } else { (min, max) };
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        for v in &finite {
            let index = (((v - lo) / width) as usize).min(bins - 1);
            counts[index] += 1;
        }
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        edges[bins] = hi;
        Ok(Histogram { edges, counts })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Distribution statistics of one metric over the trials that produced a
/// finite value for it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary {
    /// Number of finite samples. Equals the trial count unless switches
    /// failed.
    pub samples: u64,
    pub mean: f64,
    /// Sample standard deviation; zero for a single sample.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    pub histogram: Histogram,
}

impl MetricSummary {
    pub fn from_values(values: &[f64], bins: usize, what: &str) -> Result<Self> {
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        if finite.is_empty() {
            return Err(Error::domain(format!("no trial produced a finite {what}")));
        }
        let n = finite.len() as f64;
        let mean = finite.iter().sum::<f64>() / n;
        let stddev = if finite.len() > 1 {
            (finite.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Ok(MetricSummary {
            samples: finite.len() as u64,
            mean,
            stddev,
            min: finite.iter().copied().fold(f64::INFINITY, f64::min),
            max: finite.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            histogram: Histogram::new(&finite, bins)?,
        })
    }
}

/// Aggregate results of a run: error counts plus, for each recorded metric,
/// distribution statistics and a histogram. Time statistics cover only the
/// trials whose primary junction actually switched; the error counts
/// account for the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub trials: u64,
    pub seed: u64,
    pub spec: VariationSpec,
    pub write_errors: u64,
    pub read_errors: u64,
    pub t_p_ap: MetricSummary,
    pub t_ap_p: MetricSummary,
    pub r_p: MetricSummary,
    pub r_ap: MetricSummary,
    pub i_read: MetricSummary,
    pub i_write: MetricSummary,
}

/// Reduces trial records to a summary with `bins`-bin histograms.
pub fn summarize(
    records: &[TrialRecord],
    seed: u64,
    spec: &VariationSpec,
    bins: usize,
) -> Result<McSummary> {
    if records.is_empty() {
        return Err(Error::argument("cannot summarize an empty run"));
    }
    let collect = |f: fn(&TrialRecord) -> f64| records.iter().map(f).collect::<Vec<f64>>();
    Ok(McSummary {
        trials: records.len() as u64,
        seed,
        spec: *spec,
        write_errors: records.iter().filter(|r| r.write_error).count() as u64,
        read_errors: records.iter().filter(|r| r.read_error).count() as u64,
        t_p_ap: MetricSummary::from_values(&collect(|r| r.t_p_ap), bins, "t_p_ap")?,
        t_ap_p: MetricSummary::from_values(&collect(|r| r.t_ap_p), bins, "t_ap_p")?,
        r_p: MetricSummary::from_values(&collect(|r| r.r_p), bins, "r_p")?,
        r_ap: MetricSummary::from_values(&collect(|r| r.r_ap), bins, "r_ap")?,
        i_read: MetricSummary::from_values(&collect(|r| r.i_read), bins, "i_read")?,
        i_write: MetricSummary::from_values(&collect(|r| r.i_write), bins, "i_write")?,
    })
}

impl McSummary {
    pub fn write_error_rate(&self) -> f64 {
        self.write_errors as f64 / self.trials as f64
    }

    pub fn read_error_rate(&self) -> f64 {
        self.read_errors as f64 / self.trials as f64
    }

    /// The six metrics with their document key prefix and unit.
    pub fn metrics(&self) -> [(&'static str, &'static str, &MetricSummary); 6] {
        [
            ("t_p_ap", "s", &self.t_p_ap),
            ("t_ap_p", "s", &self.t_ap_p),
            ("r_p", "ohm", &self.r_p),
            ("r_ap", "ohm", &self.r_ap),
            ("i_read", "a", &self.i_read),
            ("i_write", "a", &self.i_write),
        ]
    }

    /// Scalar view of the summary: run identity, the variation spec, error
    /// counts and per-metric statistics. Histograms are emitted separately
    /// as CSV.
    pub fn to_document(&self) -> Document {
        let mut doc = self.spec.to_document();
        doc.set("trials", self.trials);
        doc.set("seed", self.seed);
        doc.set("write_errors", self.write_errors);
        doc.set("read_errors", self.read_errors);
        doc.set("write_error_rate", self.write_error_rate());
        doc.set("read_error_rate", self.read_error_rate());
        for (name, unit, metric) in self.metrics() {
            doc.set(&format!("{name}_samples"), metric.samples);
            doc.set(&format!("{name}_mean_{unit}"), metric.mean);
            doc.set(&format!("{name}_stddev_{unit}"), metric.stddev);
            doc.set(&format!("{name}_min_{unit}"), metric.min);
            doc.set(&format!("{name}_max_{unit}"), metric.max);
        }
        doc
    }
}

/// Records plus their summary.
#[derive(Debug, Clone, PartialEq)]
pub struct McRun {
    pub records: Vec<TrialRecord>,
    pub summary: McSummary,
}

/// Samples, runs and summarizes a full Monte Carlo campaign.
pub fn run_monte_carlo(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> Result<McRun> {
    let records = run_trials(design, tech, spec, trials, seed, parallel)?;
    let summary = summarize(&records, seed, spec, DEFAULT_HISTOGRAM_BINS)?;
    Ok(McRun { records, summary })
}

/// Whole-array trial: every one of the 64 cells is sampled independently
/// (pairs still share in-plane draws unless configured otherwise) around
/// one shared pair of read pulls, and the protocol runs on each cell. The
/// record reports worst-case switching times and mean currents over the
/// array; the error flags fire if any cell errs.
pub fn run_whole_lut_trial(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    seed: u64,
    trial_index: u64,
) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    let mut shared_up = pull_transistor(tech);
    let mut shared_down = pull_transistor(tech);
    perturb_transistor(&mut shared_up, spec, &mut rng);
    perturb_transistor(&mut shared_down, spec, &mut rng);

    let mut worst = TrialRecord {
        write_error: false,
        read_error: false,
        t_p_ap: f64::NEG_INFINITY,
        t_ap_p: f64::NEG_INFINITY,
        i_write: 0.0,
        i_read: 0.0,
        r_p: 0.0,
        r_ap: 0.0,
    };
    let cells = crate::circuit::CELL_COUNT as f64;
    for _ in 0..crate::circuit::CELL_COUNT {
        let mut instance = sample_instance(design, tech, spec, &mut rng);
        // The array shares one read divider; per-cell pull draws are
        // replaced by the shared pair.
        instance.pull_up = shared_up;
        instance.pull_down = shared_down;
        let record = run_protocol(&mut instance, design.flavor, tech)?;
        worst.write_error |= record.write_error;
        worst.read_error |= record.read_error;
        worst.t_p_ap = worst.t_p_ap.max(record.t_p_ap);
        worst.t_ap_p = worst.t_ap_p.max(record.t_ap_p);
        worst.i_write += record.i_write / cells;
        worst.i_read += record.i_read / cells;
        worst.r_p += record.r_p / cells;
        worst.r_ap += record.r_ap / cells;
    }
    Ok(worst)
}

/// Whole-array Monte Carlo; same seeding scheme as the representative-cell
/// run.
pub fn run_whole_lut_monte_carlo(
    design: &CellDesign,
    tech: &TechParams,
    spec: &VariationSpec,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> Result<McRun> {
    if trials == 0 {
        return Err(Error::argument("trial count must be positive"));
    }
    let records: Vec<TrialRecord> = if parallel {
        (0..trials)
            .into_par_iter()
            .map(|t| run_whole_lut_trial(design, tech, spec, seed, t))
            .collect::<Result<_>>()?
    } else {
        (0..trials)
            .map(|t| run_whole_lut_trial(design, tech, spec, seed, t))
            .collect::<Result<_>>()?
    };
    let summary = summarize(&records, seed, spec, DEFAULT_HISTOGRAM_BINS)?;
    Ok(McRun { records, summary })
}
