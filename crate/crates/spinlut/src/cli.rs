//! Command-line front end.
//!
//! Seven subcommands cover the workflow: `calibrate` fits the parameter
//! files, `eval`/`write`/`read`/`trace` exercise a single LUT, `mc` runs
//! process-variation campaigns and `compare` renders the architecture
//! tables. Everything printed or written is a pure function of the inputs,
//! so repeated runs with the same arguments are byte-identical.
//!
//! Exit codes: 0 on success, 1 when configuration or simulation fails (the
//! message on stderr names the offending key), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::circuit::{
    parse_inputs, transient_trace, CellDesign, ClutCircuit, EvalOutputs, LutConfig, LutFlavor,
    LutMode, SwitchEvent, TraceScenario, CELL_COUNT,
};
use crate::device::{DeviceParamsFile, TechParams};
use crate::error::{Error, Result};
use crate::params::Document;
use crate::report::{calibrate_system, emit_histograms, generate_comparison, SystemTargets};
use crate::variation::{
    run_monte_carlo, run_whole_lut_monte_carlo, McRun, SigmaConvention, VariationSpec,
};

/// Calibrated device parameters embedded as the default; `--device-params`
/// overrides them.
pub const DEFAULT_DEVICE_PARAMS: &str = include_str!("../data/device.params");
/// Embedded technology parameters; `--tech-params` overrides them.
pub const DEFAULT_TECH_PARAMS: &str = include_str!("../data/tech.params");

/// One run's options after parsing: file paths, LUT shape and campaign
/// settings. [`RunConfig::validate`] checks that the parameter files exist
/// and parse and that the counts are positive; the accessors load on
/// demand with errors that name the offending key.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub device_params: Option<PathBuf>,
    pub tech_params: Option<PathBuf>,
    pub flavor: LutFlavor,
    pub mode: LutMode,
    pub table: Option<String>,
    pub seed: u64,
    pub trials: u64,
    pub variation: VariationSpec,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn device(&self) -> Result<DeviceParamsFile> {
        match &self.device_params {
            Some(path) => DeviceParamsFile::load(path)
                .map_err(|e| Error::config("device_params", e.to_string())),
            None => DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS),
        }
    }

    pub fn tech(&self) -> Result<TechParams> {
        match &self.tech_params {
            Some(path) => {
                TechParams::load(path).map_err(|e| Error::config("tech_params", e.to_string()))
            }
            None => TechParams::parse(DEFAULT_TECH_PARAMS),
        }
    }

    pub fn lut_config(&self) -> Result<LutConfig> {
        let table = self
            .table
            .as_deref()
            .ok_or_else(|| Error::config("table", "required for this command"))?;
        LutConfig::parse(table, self.mode).map_err(|e| Error::config("table", e.to_string()))
    }

    pub fn design(&self) -> Result<CellDesign> {
        CellDesign::from_device(&self.device()?, self.flavor)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seed == 0 {
            return Err(Error::config("seed", "must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be positive"));
        }
        self.device()?;
        self.tech()?;
        if self.table.is_some() {
            self.lut_config()?;
        }
        self.variation.validate()
    }
}

#[derive(Parser)]
#[command(
    name = "spinlut",
    version,
    about = "Behavioral simulator for spin-based fracturable look-up tables"
)]
struct Cli {
    /// Device parameter file; the embedded calibrated defaults apply when
    /// omitted.
    #[arg(long, value_name = "FILE", global = true)]
    device_params: Option<PathBuf>,
    /// Technology parameter file; embedded defaults apply when omitted.
    #[arg(long, value_name = "FILE", global = true)]
    tech_params: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TableOpts {
    /// Table contents: 16 hex digits (MSB first) in single6 mode, or two
    /// comma-separated 8-digit halves `low,high` in dual5 mode.
    #[arg(long)]
    table: String,
    /// LUT shape: single6 or dual5.
    #[arg(long, default_value = "single6")]
    mode: String,
}

#[derive(Args)]
struct FlavorOpt {
    /// Cell flavor: stt (two-terminal) or she (three-terminal).
    #[arg(long, default_value = "stt")]
    flavor: String,
}

#[derive(Args, Default)]
struct VariationOverrides {
    /// Override the junction in-plane dimension fraction.
    #[arg(long, value_name = "FRACTION")]
    mtj_dimension_variation: Option<f64>,
    /// Override the film thickness fraction.
    #[arg(long, value_name = "FRACTION")]
    film_thickness_variation: Option<f64>,
    /// Override the channel in-plane dimension fraction.
    #[arg(long, value_name = "FRACTION")]
    she_channel_dimension_variation: Option<f64>,
    /// Override the transistor threshold-voltage fraction.
    #[arg(long, value_name = "FRACTION")]
    transistor_vth_variation: Option<f64>,
    /// Override the transistor width fraction.
    #[arg(long, value_name = "FRACTION")]
    transistor_dimension_variation: Option<f64>,
    /// Override how fractions map to sigma: three_sigma or one_sigma.
    #[arg(long, value_name = "CONVENTION")]
    sigma_convention: Option<String>,
    /// Draw each junction's in-plane dimensions independently instead of
    /// sharing one draw per complementary pair.
    #[arg(long)]
    independent_pair_dimensions: bool,
}

impl VariationOverrides {
    fn apply(&self, mut spec: VariationSpec) -> Result<VariationSpec> {
        let overrides = [
            (&mut spec.mtj_dimension_variation, self.mtj_dimension_variation),
            (&mut spec.film_thickness_variation, self.film_thickness_variation),
            (&mut spec.she_channel_dimension_variation, self.she_channel_dimension_variation),
            (&mut spec.transistor_vth_variation, self.transistor_vth_variation),
            (&mut spec.transistor_dimension_variation, self.transistor_dimension_variation),
        ];
        for (slot, value) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
        }
        if let Some(text) = &self.sigma_convention {
            spec.sigma_convention = SigmaConvention::parse(text)
                .map_err(|e| Error::config("sigma_convention", e.to_string()))?;
        }
        if self.independent_pair_dimensions {
            spec.independent_pair_dimensions = true;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Program a table into a LUT and evaluate one input vector.
    ///
    /// Prints the output bit; dual5 prints both half outputs separated by
    /// a space.
    Eval {
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        flavor: FlavorOpt,
        /// Six binary digits, inputs A (most significant) through F.
        #[arg(long)]
        inputs: String,
    },
    /// Write one bit into a fresh cell and report the switching outcome.
    Write {
        #[command(flatten)]
        flavor: FlavorOpt,
        /// Cell index, 0..63.
        #[arg(long)]
        cell: usize,
        /// Bit value, 0 or 1.
        #[arg(long)]
        bit: u8,
    },
    /// Program a table and read one cell back through the sense path.
    Read {
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        flavor: FlavorOpt,
        /// Cell index, 0..63.
        #[arg(long)]
        cell: usize,
    },
    /// Record the configure-then-read waveforms as CSV.
    Trace {
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        flavor: FlavorOpt,
        /// Six binary digits, inputs A (most significant) through F.
        #[arg(long)]
        inputs: String,
        /// Keep the read line low; the outputs must hold their idle value.
        #[arg(long)]
        no_read: bool,
        /// Write trace.csv into this directory instead of stdout.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Monte Carlo campaign over process variation.
    ///
    /// Prints the summary document; with --out also writes summary.txt plus
    /// one histogram CSV per metric and a manifest into the directory.
    Mc {
        #[command(flatten)]
        flavor: FlavorOpt,
        /// Number of trials.
        #[arg(long)]
        trials: u64,
        /// Campaign seed; trial n draws from stream n of this seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Variation spec file; built-in defaults apply when omitted.
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        #[command(flatten)]
        overrides: VariationOverrides,
        /// Sample all 64 cells per trial instead of one representative
        /// cell; records then hold array-worst times and mean currents.
        #[arg(long)]
        whole_lut: bool,
        /// Run trials sequentially; the records are identical either way.
        #[arg(long)]
        serial: bool,
        /// Output directory for summary.txt and the histogram CSVs.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Compare the SRAM reference against both calibrated LUT flavors.
    Compare {
        /// Output directory for compare.txt and compare.csv.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Fit the free device and technology parameters to the published
    /// operating point and write device.params and tech.params.
    Calibrate {
        /// Output directory for the fitted parameter files.
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
}

/// Parses `args` (the first element is the program name) and runs the
/// selected command, writing results to `stdout` and failures to `stderr`.
/// Returns the process exit code.
pub fn cli_dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            }
        }
    };
    match run(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn parse_flavor(text: &str) -> Result<LutFlavor> {
    LutFlavor::parse(text).map_err(|e| Error::config("flavor", e.to_string()))
}

fn parse_mode(text: &str) -> Result<LutMode> {
    LutMode::parse(text).map_err(|e| Error::config("mode", e.to_string()))
}

fn parse_input_vector(text: &str) -> Result<[bool; 6]> {
    parse_inputs(text).map_err(|e| Error::config("inputs", e.to_string()))
}

fn event_fields(doc: &mut Document, prefix: &str, event: SwitchEvent) {
    let label = match event {
        SwitchEvent::AlreadySet => "already_set",
        SwitchEvent::Switched(_) => "switched",
        SwitchEvent::Failed => "failed",
    };
    doc.set(&format!("{prefix}_event"), label);
    if let Some(t) = event.time() {
        doc.set(&format!("{prefix}_switch_s"), t);
    }
}

fn check_cell_index(cell: usize) -> Result<()> {
    if cell >= CELL_COUNT {
        return Err(Error::config("cell", format!("index {cell} out of range 0..{CELL_COUNT}")));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let Cli { device_params, tech_params, command } = cli;
    let base = |flavor: LutFlavor, mode: LutMode, table: Option<String>| RunConfig {
        device_params: device_params.clone(),
        tech_params: tech_params.clone(),
        flavor,
        mode,
        table,
        seed: 1,
        trials: 1,
        variation: VariationSpec::default(),
        out: None,
    };

    match command {
        Command::Eval { table, flavor, inputs } => {
            let rc = base(parse_flavor(&flavor.flavor)?, parse_mode(&table.mode)?, Some(table.table));
            rc.validate()?;
            let inputs = parse_input_vector(&inputs)?;
            let circuit = ClutCircuit::build(&rc.design()?, &rc.tech()?, &rc.lut_config()?)?;
            match circuit.evaluate(inputs)? {
                EvalOutputs::Single6 { out1 } => writeln!(out, "{}", out1 as u8)?,
                EvalOutputs::DualFive { out0, out2 } => {
                    writeln!(out, "{} {}", out0 as u8, out2 as u8)?
                }
            }
        }
        Command::Write { flavor, cell, bit } => {
            let rc = base(parse_flavor(&flavor.flavor)?, LutMode::Single6, None);
            rc.validate()?;
            check_cell_index(cell)?;
            if bit > 1 {
                return Err(Error::config("bit", format!("expected 0 or 1, got {bit}")));
            }
            let design = rc.design()?;
            let tech = rc.tech()?;
            let mut circuit = ClutCircuit::build_unconfigured(&design, &tech, rc.mode)?;
            let result = circuit.write_cell(cell, bit == 1)?;
            let mut doc = Document::new();
            doc.set("cell", cell);
            doc.set("bit", bit);
            doc.set("write_current_a", result.current);
            doc.set("node_voltage_v", result.node_voltage);
            doc.set("energy_j", result.energy);
            doc.set("pulse_s", result.delay);
            let events = result.events.expect("writes report events");
            event_fields(&mut doc, "primary", events.primary);
            event_fields(&mut doc, "complement", events.complement);
            write!(out, "{}", doc.to_text("write outcome"))?;
        }
        Command::Read { table, flavor, cell } => {
            let rc = base(parse_flavor(&flavor.flavor)?, parse_mode(&table.mode)?, Some(table.table));
            rc.validate()?;
            check_cell_index(cell)?;
            let tech = rc.tech()?;
            let circuit = ClutCircuit::build(&rc.design()?, &tech, &rc.lut_config()?)?;
            let result = circuit.read_cell(cell)?;
            let mut doc = Document::new();
            doc.set("cell", cell);
            doc.set("bit", result.sensed.expect("reads sense") as u8);
            doc.set("node_voltage_v", result.node_voltage);
            doc.set("sense_threshold_v", tech.sense_threshold());
            doc.set("read_margin_v", circuit.read_margin(cell)?);
            doc.set("read_current_a", result.current);
            doc.set("delay_s", result.delay);
            doc.set("energy_j", result.energy);
            write!(out, "{}", doc.to_text("read outcome"))?;
        }
        Command::Trace { table, flavor, inputs, no_read, out: out_path } => {
            let rc = base(parse_flavor(&flavor.flavor)?, parse_mode(&table.mode)?, Some(table.table));
            rc.validate()?;
            let scenario = TraceScenario {
                config: rc.lut_config()?,
                inputs: parse_input_vector(&inputs)?,
                read_enabled: !no_read,
            };
            let trace = transient_trace(&rc.design()?, &rc.tech()?, &scenario)?;
            let csv = trace.to_csv();
            match out_path {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    std::fs::write(dir.join("trace.csv"), csv)?;
                }
                None => write!(out, "{csv}")?,
            }
        }
        Command::Mc { flavor, trials, seed, spec, overrides, whole_lut, serial, out: out_dir } => {
            let spec_base = match &spec {
                Some(path) => VariationSpec::load(path)
                    .map_err(|e| Error::config("spec", e.to_string()))?,
                None => VariationSpec::default(),
            };
            let mut rc = base(parse_flavor(&flavor.flavor)?, LutMode::Single6, None);
            rc.seed = seed;
            rc.trials = trials;
            rc.variation = overrides.apply(spec_base)?;
            rc.out = out_dir;
            rc.validate()?;
            let design = rc.design()?;
            let tech = rc.tech()?;
            let McRun { summary, .. } = if whole_lut {
                run_whole_lut_monte_carlo(&design, &tech, &rc.variation, trials, seed, !serial)?
            } else {
                run_monte_carlo(&design, &tech, &rc.variation, trials, seed, !serial)?
            };
            let text = summary.to_document().to_text("monte carlo summary");
            write!(out, "{text}")?;
            if let Some(dir) = &rc.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("summary.txt"), &text)?;
                emit_histograms(&summary, dir)?;
            }
        }
        Command::Compare { out: out_dir } => {
            let rc = base(LutFlavor::Stt, LutMode::Single6, None);
            rc.validate()?;
            let report = generate_comparison(&rc.device()?, &rc.tech()?)?;
            let text = report.to_text();
            write!(out, "{text}")?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("compare.txt"), &text)?;
                std::fs::write(dir.join("compare.csv"), report.to_csv())?;
            }
        }
        Command::Calibrate { out: out_dir } => {
            let rc = base(LutFlavor::Stt, LutMode::Single6, None);
            let seed_device = rc.device()?;
            let sys = calibrate_system(&seed_device, &SystemTargets::default())?;
            std::fs::create_dir_all(&out_dir)?;
            std::fs::write(
                out_dir.join("device.params"),
                sys.device.to_document().to_text(
                    "device parameters\nfitted_* fields were produced by `spinlut calibrate`",
                ),
            )?;
            std::fs::write(
                out_dir.join("tech.params"),
                sys.tech.to_document().to_text("technology parameters"),
            )?;
            let mut doc = Document::new();
            doc.set("anisotropy_field_a_per_m", sys.dynamics.material.uniaxial_anisotropy_field);
            doc.set("polarization_asymmetry", sys.dynamics.material.polarization_asymmetry);
            doc.set("overdrive_ap_p", sys.dynamics.overdrive_ap_p);
            doc.set("overdrive_p_ap", sys.dynamics.overdrive_p_ap);
            doc.set("closed_form_t_p_ap_s", sys.dynamics.closed_form_t_p_ap);
            doc.set("closed_form_t_ap_p_s", sys.dynamics.closed_form_t_ap_p);
            doc.set("llg_t_p_ap_s", sys.dynamics.llg_t_p_ap);
            doc.set("llg_t_ap_p_s", sys.dynamics.llg_t_ap_p);
            doc.set("critical_current_ap_p_a", sys.dynamics.critical_current_ap_p);
            doc.set("critical_current_p_ap_a", sys.dynamics.critical_current_p_ap);
            doc.set("read_overdrive", sys.dynamics.read_overdrive);
            doc.set("fit_residual", sys.dynamics.residual);
            doc.set("supply_voltage_v", sys.tech.supply_voltage);
            doc.set("ra_product_ohm_um2", sys.device.fitted_ra_product.expect("fitted"));
            doc.set("she_resistivity_ohm_m", sys.device.fitted_she_resistivity.expect("fitted"));
            write!(out, "{}", doc.to_text("calibration report"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dispatch(args: &[&str]) -> (i32, String, String) {
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let code = cli_dispatch(
            std::iter::once("spinlut").chain(args.iter().copied()),
            &mut stdout,
            &mut stderr,
        );
        (code, String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
    }

    #[test]
    fn eval_prints_the_addressed_bit() {
        let (code, out, err) =
            dispatch(&["eval", "--table", "FFFFFFFFFFFFFFFE", "--inputs", "000000"]);
        assert_eq!((code, out.as_str(), err.as_str()), (0, "0\n", ""));
        let (code, out, _) =
            dispatch(&["eval", "--table", "FFFFFFFFFFFFFFFE", "--inputs", "111111"]);
        assert_eq!((code, out.as_str()), (0, "1\n"));
    }

    #[test]
    fn eval_covers_the_fractured_mode() {
        let (code, out, _) = dispatch(&[
            "eval",
            "--table",
            "00000001,80000000",
            "--mode",
            "dual5",
            "--inputs",
            "000000",
        ]);
        assert_eq!((code, out.as_str()), (0, "1 0\n"));
        let (code, out, _) = dispatch(&[
            "eval",
            "--table",
            "00000001,80000000",
            "--mode",
            "dual5",
            "--inputs",
            "111110",
        ]);
        assert_eq!((code, out.as_str()), (0, "0 1\n"));
    }

    #[test]
    fn usage_errors_exit_2_and_config_errors_exit_1() {
        let (code, _, err) = dispatch(&["evaluate"]);
        assert_eq!(code, 2, "{err}");

        let (code, _, err) =
            dispatch(&["eval", "--table", "123", "--inputs", "000000"]);
        assert_eq!(code, 1, "{err}");
        assert!(err.contains("table"), "{err}");

        let (code, _, err) = dispatch(&[
            "eval",
            "--table",
            "FFFFFFFFFFFFFFFE",
            "--inputs",
            "000000",
            "--device-params",
            "/no/such/file.params",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("device_params"), "{err}");

        let (code, _, err) = dispatch(&["mc", "--trials", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("trials"), "{err}");

        let (code, _, err) = dispatch(&["mc", "--trials", "4", "--seed", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("seed"), "{err}");
    }

    #[test]
    fn write_and_read_report_documents() {
        let (code, out, _) = dispatch(&["write", "--cell", "3", "--bit", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("primary_event = switched"), "{out}");
        assert!(out.contains("write_current_a"), "{out}");

        let (code, out, _) =
            dispatch(&["read", "--table", "0000000000000008", "--cell", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("bit = 1"), "{out}");
        assert!(out.contains("read_margin_v"), "{out}");

        let (code, _, err) = dispatch(&["write", "--cell", "64", "--bit", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("cell"), "{err}");
    }

    #[test]
    fn mc_summaries_are_byte_identical_across_reruns_and_threading() {
        let run = |extra: &[&str]| {
            let mut args = vec!["mc", "--trials", "24", "--seed", "7"];
            args.extend_from_slice(extra);
            let (code, out, err) = dispatch(&args);
            assert_eq!(code, 0, "{err}");
            out
        };
        let first = run(&[]);
        let second = run(&[]);
        assert_eq!(first, second);
        let serial = run(&["--serial"]);
        assert_eq!(first, serial);
        assert!(first.contains("trials = 24"));
        assert!(first.contains("seed = 7"));
    }

    #[test]
    fn mc_writes_summary_and_histograms() {
        let dir = tempfile::tempdir().unwrap();
        let out_dir = dir.path().join("campaign");
        let (code, out, err) = dispatch(&[
            "mc",
            "--trials",
            "16",
            "--seed",
            "5",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        let summary = std::fs::read_to_string(out_dir.join("summary.txt")).unwrap();
        assert!(out.contains(summary.lines().nth(1).unwrap()));
        assert!(out_dir.join("manifest.csv").exists());
        assert!(out_dir.join("t_ap_p.csv").exists());
    }

    #[test]
    fn variation_overrides_reach_the_campaign() {
        let (code, out, err) = dispatch(&[
            "mc",
            "--trials",
            "8",
            "--seed",
            "2",
            "--mtj-dimension-variation",
            "0.02",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("mtj_dimension_variation = 0.02"), "{out}");

        let (code, _, err) = dispatch(&[
            "mc",
            "--trials",
            "8",
            "--mtj-dimension-variation",
            "1.5",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("mtj_dimension_variation"), "{err}");
    }

    #[test]
    fn calibrate_then_compare_using_the_written_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap().to_string();
        let (code, report, err) = dispatch(&["calibrate", "--out", &out]);
        assert_eq!(code, 0, "{err}");
        assert!(report.contains("read_overdrive"), "{report}");

        let device = dir.path().join("device.params");
        let tech = dir.path().join("tech.params");
        let (code, text, err) = dispatch(&[
            "compare",
            "--device-params",
            device.to_str().unwrap(),
            "--tech-params",
            tech.to_str().unwrap(),
            "--out",
            &out,
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(text.contains("she_clut"), "{text}");
        assert!(dir.path().join("compare.csv").exists());
    }

    #[test]
    fn uncalibrated_device_file_points_at_calibrate() {
        let dir = tempfile::tempdir().unwrap();
        let bare = "\
mtj_length_nm = 60
mtj_width_nm = 30
free_layer_thickness_nm = 1.3
oxide_thickness_nm = 1.0
saturation_magnetization = 1.5e5
gilbert_damping = 0.02
tmr_ratio = 1.0
spin_polarization = 0.6
initial_cant_angle_deg = 5.0
she_channel_length_nm = 260
she_channel_width_nm = 60
she_channel_thickness_nm = 1.2
spin_hall_angle = 0.3
";
        let path = dir.path().join("bare.params");
        std::fs::write(&path, bare).unwrap();
        let (code, _, err) = dispatch(&[
            "eval",
            "--table",
            "FFFFFFFFFFFFFFFE",
            "--inputs",
            "000000",
            "--device-params",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("spinlut calibrate"), "{err}");
    }

    #[test]
    fn trace_emits_csv() {
        let (code, out, _) = dispatch(&[
            "trace",
            "--table",
            "FFFFFFFFFFFFFFFE",
            "--inputs",
            "000001",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("time_s,signal,value\n"), "{out}");
        assert!(out.contains("WWL"), "{out}");
        assert!(out.contains("OUT1"), "{out}");

        let dir = tempfile::tempdir().unwrap();
        let (code, _, _) = dispatch(&[
            "trace",
            "--table",
            "FFFFFFFFFFFFFFFE",
            "--inputs",
            "000001",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let written = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
        assert_eq!(written, out);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = dispatch(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("calibrate"));
    }
}
