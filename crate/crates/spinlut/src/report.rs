//! System calibration and comparison reporting.
//!
//! [`calibrate_system`] turns a bare device description plus the published
//! operating point into a fully fitted device file and a technology file:
//! the switching fit pins the anisotropy field and polarization asymmetry,
//! and the electrical solve pins the junction RA product, the read pulls,
//! the heavy-metal resistivity, the sense swings and the leakage constants.
//! [`generate_comparison`] then measures the calibrated LUTs and lays them
//! next to the fixed SRAM reference numbers; [`emit_histograms`] renders a
//! Monte Carlo summary's distributions as CSV.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::circuit::{
    cell_read, cell_write, device_count, pull_transistor, standby_power, Architecture,
    CellDesign, DeviceCount, LutFlavor,
};
use crate::device::{DeviceParamsFile, MtjMaterial, MtjState, TechParams};
use crate::dynamics::{
    calibrate_dynamics, switching_time, CalibrationReport, CalibrationTargets, SwitchingOutcome,
    TorqueDrive,
};
use crate::error::{Error, Result};
use crate::variation::McSummary;

// Fixed design choices of the 45 nm implementation. Everything not listed
// here is fitted by `calibrate_system`.
const NODE: &str = "45nm";
const NOMINAL_VTH: f64 = 0.4;
/// Transmission-gate on-resistance at minimum width, ohm. Write gates for
/// two-terminal cells are drawn 4x wide (500 ohm each); three-terminal
/// cells write through the low-resistance channel and keep minimum-width
/// gates.
const TG_ON_RESISTANCE: f64 = 2000.0;
const STT_WRITE_TG_WIDTH: f64 = 4.0;
const SHE_WRITE_TG_WIDTH: f64 = 1.0;
const SENSE_NODE_CAPACITANCE: f64 = 2.0e-15;
const READ_WINDOW: f64 = 0.5e-9;
const SENSE_THRESHOLD_FRACTION: f64 = 0.5;

/// Published operating point the calibration must reproduce.
///
/// The supply voltage is fitted to the write power and current; the write
/// energy is left out of the fit on purpose so it stays an honest check
/// (power times pulse width) rather than an input.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemTargets {
    /// Switching-time and current targets for the magnetodynamic fit.
    pub switching: CalibrationTargets,
    /// Two-terminal write power, W.
    pub write_power: f64,
    /// Three-terminal write energy over one pulse, J.
    pub she_write_energy: f64,
    /// Sense settling time when the node swings low (reading 0), s.
    pub read_delay_low: f64,
    /// Sense settling time when the node swings high (reading 1), s.
    pub read_delay_high: f64,
    /// Whole-LUT standby power of the junction-based array, W.
    pub standby_power_mram: f64,
    /// Whole-LUT standby power of the SRAM reference, W.
    pub standby_power_sram: f64,
}

impl Default for SystemTargets {
    fn default() -> Self {
        SystemTargets {
            switching: CalibrationTargets::default(),
            write_power: 81.18e-6,
            she_write_energy: 175.5e-15,
            read_delay_low: 20.0e-12,
            read_delay_high: 60.0e-12,
            standby_power_mram: 0.31e-6,
            standby_power_sram: 1.67e-6,
        }
    }
}

/// A device file with every fitted field filled in, the technology file
/// that goes with it, and the switching-fit diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibratedSystem {
    pub device: DeviceParamsFile,
    pub tech: TechParams,
    pub dynamics: CalibrationReport,
}

impl CalibratedSystem {
    pub fn design(&self, flavor: LutFlavor) -> Result<CellDesign> {
        CellDesign::from_device(&self.device, flavor)
    }
}

/// Fits every free parameter of the system to `targets`.
///
/// The magnetodynamic fit runs first and is independent of the electrical
/// solve. The electrical solve then walks the write loop (supply from power
/// over current, junction RA from the loop resistance), the read divider
/// (pull resistance from the read current), the three-terminal write path
/// (resistivity from the write energy), the sense node (swing fractions
/// from the target delays) and the leakage budget. Both write polarities
/// are verified to switch inside the pulse before the result is returned.
pub fn calibrate_system(
    seed: &DeviceParamsFile,
    targets: &SystemTargets,
) -> Result<CalibratedSystem> {
    for (name, v) in [
        ("write_power", targets.write_power),
        ("she_write_energy", targets.she_write_energy),
        ("read_delay_low", targets.read_delay_low),
        ("read_delay_high", targets.read_delay_high),
        ("standby_power_mram", targets.standby_power_mram),
        ("standby_power_sram", targets.standby_power_sram),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::argument(format!("target {name} must be positive, got {v}")));
        }
    }

    let template = MtjMaterial {
        saturation_magnetization: seed.saturation_magnetization,
        gilbert_damping: seed.gilbert_damping,
        tmr_ratio: seed.tmr_ratio,
        // Placeholders; the switching fit does not read them and the
        // electrical solve overwrites them.
        ra_product: seed.fitted_ra_product.unwrap_or(1.0),
        spin_polarization: seed.spin_polarization,
        uniaxial_anisotropy_field: seed.fitted_anisotropy_field.unwrap_or(1.0e6),
        polarization_asymmetry: seed.fitted_polarization_asymmetry.unwrap_or(0.9),
        initial_cant_angle_deg: seed.initial_cant_angle_deg,
    };
    let dynamics = calibrate_dynamics(&seed.geometry, &template, &targets.switching)?;

    let infeasible = |message: String| Error::Calibration { message, residual: f64::INFINITY };

    let i_write = targets.switching.write_current;
    let vdd = targets.write_power / i_write;
    let pulse = targets.switching.pulse_duration;

    // Write loop: supply across two pass gates and the complementary pair
    // (always one parallel plus one antiparallel junction, R_AP = 2 R_P at
    // this TMR).
    let r_total = vdd / i_write;
    let r_p = (r_total - 2.0 * TG_ON_RESISTANCE / STT_WRITE_TG_WIDTH) / 3.0;
    if r_p <= 0.0 {
        return Err(infeasible(format!(
            "write loop leaves no junction resistance: total {r_total} ohm is consumed by the pass gates"
        )));
    }
    let ra_product = r_p * seed.geometry.area_um2();

    // Read divider: two pulls around the complementary pair.
    let r_ap = r_p * (1.0 + seed.tmr_ratio);
    let r_pull = (vdd / targets.switching.read_current - r_p - r_ap) / 2.0;
    if r_pull <= 0.0 {
        return Err(infeasible(format!(
            "read current target {} A exceeds what the junction pair alone allows",
            targets.switching.read_current
        )));
    }

    // Three-terminal write path: two minimum-width gates and two channels.
    let i_she = targets.she_write_energy / (vdd * pulse);
    let r_channel = (vdd / i_she - 2.0 * TG_ON_RESISTANCE / SHE_WRITE_TG_WIDTH) / 2.0;
    if r_channel <= 0.0 {
        return Err(infeasible(format!(
            "three-terminal write energy target {} J implies more current than the pass gates pass",
            targets.she_write_energy
        )));
    }
    let she_resistivity = r_channel
        * (seed.she_channel_width_nm * 1e-9)
        * (seed.she_channel_thickness_nm * 1e-9)
        / (seed.she_channel_length_nm * 1e-9);

    // Sense node: settling time constant from the read Thevenin resistance,
    // then the swing fractions that land on the target delays.
    let top = r_pull + r_p;
    let bottom = r_ap + r_pull;
    let tau = (TG_ON_RESISTANCE + top * bottom / (top + bottom)) * SENSE_NODE_CAPACITANCE;
    let read_swing_low = targets.read_delay_low / tau;
    let read_swing_high = targets.read_delay_high / tau;

    // Leakage budget: whole-LUT standby spread over the minimum-width
    // device tally of each architecture.
    let mram_devices = device_count(Architecture::SttClut).total_mos() as f64;
    let sram_devices = device_count(Architecture::SramLut).total_mos() as f64;
    let tech = TechParams {
        node: NODE.to_string(),
        supply_voltage: vdd,
        write_pulse: pulse,
        read_window: READ_WINDOW,
        nominal_vth: NOMINAL_VTH,
        tg_on_resistance: TG_ON_RESISTANCE,
        read_pull_on_resistance: r_pull,
        stt_write_tg_width: STT_WRITE_TG_WIDTH,
        she_write_tg_width: SHE_WRITE_TG_WIDTH,
        sense_node_capacitance: SENSE_NODE_CAPACITANCE,
        read_swing_low,
        read_swing_high,
        mram_leakage_per_width: targets.standby_power_mram / (mram_devices * vdd),
        sram_leakage_per_width: targets.standby_power_sram / (sram_devices * vdd),
        sense_threshold_fraction: SENSE_THRESHOLD_FRACTION,
    };

    let mut device = seed.clone();
    device.fitted_anisotropy_field = Some(dynamics.material.uniaxial_anisotropy_field);
    device.fitted_polarization_asymmetry = Some(dynamics.material.polarization_asymmetry);
    device.fitted_ra_product = Some(ra_product);
    device.fitted_she_resistivity = Some(she_resistivity);

    // The three-terminal drive was never part of the switching fit, so
    // check it actually writes inside the pulse in both directions.
    let material = device.require_calibrated()?;
    let channel = device.require_calibrated_channel()?;
    for (sign, from) in [(1.0, MtjState::Parallel), (-1.0, MtjState::AntiParallel)] {
        let drive = TorqueDrive::she(channel.clone(), sign * i_she, pulse);
        match switching_time(&seed.geometry, &material, &drive, from) {
            SwitchingOutcome::Switched(t) if t <= pulse => {}
            _ => {
                return Err(infeasible(format!(
                    "fitted three-terminal drive ({i_she} A) cannot switch the junction within the pulse"
                )));
            }
        }
    }

    Ok(CalibratedSystem { device, tech, dynamics })
}

/// Power and delay of one architecture at one logic value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDelay {
    pub read_power: f64,
    pub write_power: f64,
    pub standby_power: f64,
    pub read_delay: f64,
    pub write_delay: f64,
}

impl PowerDelay {
    fn midpoint(a: &PowerDelay, b: &PowerDelay) -> PowerDelay {
        PowerDelay {
            read_power: 0.5 * (a.read_power + b.read_power),
            write_power: 0.5 * (a.write_power + b.write_power),
            standby_power: 0.5 * (a.standby_power + b.standby_power),
            read_delay: 0.5 * (a.read_delay + b.read_delay),
            write_delay: 0.5 * (a.write_delay + b.write_delay),
        }
    }
}

/// One architecture's comparison entry: per-logic-value power and delay, an
/// average row, per-access energies and the device tally.
///
/// For measured architectures the average row is the midpoint of the two
/// logic rows. The SRAM reference keeps its published averages verbatim,
/// which for write power is not the midpoint (the reference averages were
/// taken over full waveforms, not the two endpoint patterns).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchComparison {
    pub architecture: Architecture,
    pub logic0: PowerDelay,
    pub logic1: PowerDelay,
    pub average: PowerDelay,
    pub read_energy: f64,
    pub write_energy: f64,
    pub counts: DeviceCount,
}

/// The published SRAM LUT reference row.
pub fn sram_reference() -> ArchComparison {
    let logic0 = PowerDelay {
        read_power: 2.58e-6,
        write_power: 28.4e-6,
        standby_power: 1.5e-6,
        read_delay: 30.0e-12,
        write_delay: 20.0e-12,
    };
    let logic1 = PowerDelay {
        read_power: 7.55e-6,
        write_power: 27.7e-6,
        standby_power: 1.85e-6,
        read_delay: 30.0e-12,
        write_delay: 20.0e-12,
    };
    let average = PowerDelay {
        read_power: 5.06e-6,
        write_power: 25.08e-6,
        standby_power: 1.67e-6,
        read_delay: 30.0e-12,
        write_delay: 20.0e-12,
    };
    ArchComparison {
        architecture: Architecture::SramLut,
        logic0,
        logic1,
        average,
        read_energy: 2.53e-15,
        write_energy: 14.0e-15,
        counts: device_count(Architecture::SramLut),
    }
}

/// Comparison of the SRAM reference against both measured LUT flavors.
/// Derived quantities (ratios, folds, savings) are methods so they can
/// never drift out of sync with the rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub write_pulse: f64,
    pub read_window: f64,
    pub sram: ArchComparison,
    pub stt: ArchComparison,
    pub she: ArchComparison,
}

impl ComparisonReport {
    pub fn rows(&self) -> [&ArchComparison; 3] {
        [&self.sram, &self.stt, &self.she]
    }

    /// SRAM standby power over the junction LUT's.
    pub fn standby_reduction(&self) -> f64 {
        self.sram.average.standby_power / self.stt.average.standby_power
    }

    pub fn mos_saved_vs_sram(&self) -> i64 {
        self.sram.counts.total_mos() as i64 - self.she.counts.total_mos() as i64
    }

    pub fn mos_saved_vs_stt(&self) -> i64 {
        self.stt.counts.total_mos() as i64 - self.she.counts.total_mos() as i64
    }

    pub fn mos_fold_vs_sram(&self) -> f64 {
        self.sram.counts.total_mos() as f64 / self.she.counts.total_mos() as f64
    }

    pub fn mos_fold_vs_stt(&self) -> f64 {
        self.stt.counts.total_mos() as f64 / self.she.counts.total_mos() as f64
    }

    /// Human-readable tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "power and delay per logic value");
        let _ = writeln!(
            out,
            "{:<10} {:>5} {:>9} {:>9} {:>11} {:>11} {:>11}",
            "arch", "logic", "read_uW", "write_uW", "standby_uW", "read_delay", "write_delay"
        );
        for arch in self.rows() {
            for (logic, row) in
                [("0", &arch.logic0), ("1", &arch.logic1), ("avg", &arch.average)]
            {
                let _ = writeln!(
                    out,
                    "{:<10} {:>5} {:>9.2} {:>9.2} {:>11.2} {:>11} {:>11}",
                    arch.architecture.label(),
                    logic,
                    row.read_power * 1e6,
                    row.write_power * 1e6,
                    row.standby_power * 1e6,
                    format_time(row.read_delay),
                    format_time(row.write_delay),
                );
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "energy and device count per 6-input LUT");
        let _ = writeln!(
            out,
            "{:<10} {:>8} {:>9} {:>8} {:>10} {:>6} {:>10} {:>10}",
            "arch", "read_fJ", "write_fJ", "storage", "write_ctl", "read", "total_mos", "junctions"
        );
        for arch in self.rows() {
            let c = arch.counts;
            let _ = writeln!(
                out,
                "{:<10} {:>8.2} {:>9.2} {:>8} {:>10} {:>6} {:>10} {:>10}",
                arch.architecture.label(),
                arch.read_energy * 1e15,
                arch.write_energy * 1e15,
                c.storage_mos,
                c.write_control_mos,
                c.read_mos,
                c.total_mos(),
                c.mtj_count,
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "derived");
        let _ = writeln!(out, "standby power ratio, sram over stt: {:.2}", self.standby_reduction());
        let _ = writeln!(out, "min-width devices saved, she vs sram: {}", self.mos_saved_vs_sram());
        let _ = writeln!(out, "min-width devices saved, she vs stt: {}", self.mos_saved_vs_stt());
        let _ = writeln!(out, "device fold, sram over she: {:.2}", self.mos_fold_vs_sram());
        let _ = writeln!(out, "device fold, stt over she: {:.2}", self.mos_fold_vs_stt());
        out
    }

    /// Machine-readable rows, one per architecture and logic value. Floats
    /// use shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "architecture,logic,read_power_w,write_power_w,standby_power_w,read_delay_s,\
             write_delay_s,read_energy_j,write_energy_j,storage_mos,write_control_mos,\
             read_mos,total_mos,mtj_count\n",
        );
        for arch in self.rows() {
            for (logic, row) in
                [("0", &arch.logic0), ("1", &arch.logic1), ("avg", &arch.average)]
            {
                let c = arch.counts;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    arch.architecture.label(),
                    logic,
                    row.read_power,
                    row.write_power,
                    row.standby_power,
                    row.read_delay,
                    row.write_delay,
                    arch.read_energy,
                    arch.write_energy,
                    c.storage_mos,
                    c.write_control_mos,
                    c.read_mos,
                    c.total_mos(),
                    c.mtj_count,
                );
            }
        }
        out
    }
}

fn format_time(seconds: f64) -> String {
    if seconds < 1e-9 {
        format!("{:.0} ps", seconds * 1e12)
    } else {
        format!("{:.2} ns", seconds * 1e9)
    }
}

/// Measures one calibrated LUT flavor: writes and reads both logic values
/// on a nominal cell and collects power, delay and energy per value.
fn measure_architecture(
    design: &CellDesign,
    tech: &TechParams,
    arch: Architecture,
) -> Result<ArchComparison> {
    let vdd = tech.supply_voltage;
    let pull_up = pull_transistor(tech);
    let pull_down = pull_transistor(tech);
    let standby = standby_power(arch, tech);
    let mut cell = design.build_cell(tech);

    // A fresh cell stores 0, so write 1 first: both rows then measure a
    // genuine transition, not a reinforcing pulse.
    let mut access = |bit: bool| -> Result<(PowerDelay, f64, f64)> {
        let w = cell_write(&mut cell, tech, design.flavor, bit, tech.write_pulse)?;
        if w.write_error() {
            return Err(Error::domain(format!("nominal write of {bit} failed to switch")));
        }
        let r = cell_read(&cell, tech, &pull_up, &pull_down)?;
        if r.sensed != Some(bit) {
            return Err(Error::domain(format!("nominal read after writing {bit} sensed {:?}", r.sensed)));
        }
        let row = PowerDelay {
            read_power: vdd * r.current,
            write_power: vdd * w.current,
            standby_power: standby,
            read_delay: r.delay,
            write_delay: w.delay,
        };
        Ok((row, r.energy, w.energy))
    };
    let (logic1, read_energy_1, write_energy_1) = access(true)?;
    let (logic0, read_energy_0, write_energy_0) = access(false)?;

    Ok(ArchComparison {
        architecture: arch,
        logic0,
        logic1,
        average: PowerDelay::midpoint(&logic0, &logic1),
        read_energy: 0.5 * (read_energy_0 + read_energy_1),
        write_energy: 0.5 * (write_energy_0 + write_energy_1),
        counts: device_count(arch),
    })
}

/// Builds the full comparison from a calibrated device file. A missing
/// fitted field surfaces here with the instruction to run calibration.
pub fn generate_comparison(
    device: &DeviceParamsFile,
    tech: &TechParams,
) -> Result<ComparisonReport> {
    let stt = CellDesign::from_device(device, LutFlavor::Stt)?;
    let she = CellDesign::from_device(device, LutFlavor::She)?;
    Ok(ComparisonReport {
        write_pulse: tech.write_pulse,
        read_window: tech.read_window,
        sram: sram_reference(),
        stt: measure_architecture(&stt, tech, Architecture::SttClut)?,
        she: measure_architecture(&she, tech, Architecture::SheClut)?,
    })
}

/// Writes one CSV per metric histogram plus a manifest into `dir`, creating
/// it if needed. Returns the paths written, manifest last. Each metric CSV
/// has a `metric,bin_low,bin_high,count` header and one row per bin; the
/// manifest lists `file,metric,unit`.
pub fn emit_histograms(summary: &McSummary, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut manifest = String::from("file,metric,unit\n");
    for (name, unit, metric) in summary.metrics() {
        let unit = match unit {
            "a" => "A",
            other => other,
        };
        let file_name = format!("{name}.csv");
        let mut text = String::from("metric,bin_low,bin_high,count\n");
        let hist = &metric.histogram;
        for bin in 0..hist.bins() {
            let _ = writeln!(
                text,
                "{},{},{},{}",
                name,
                hist.edges[bin],
                hist.edges[bin + 1],
                hist.counts[bin]
            );
        }
        let path = dir.join(&file_name);
        std::fs::write(&path, text)?;
        let _ = writeln!(manifest, "{file_name},{name},{unit}");
        written.push(path);
    }
    let manifest_path = dir.join("manifest.csv");
    std::fs::write(&manifest_path, manifest)?;
    written.push(manifest_path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{cell_read, LutFlavor};
    use crate::device::MtjGeometry;
    use crate::variation::{run_monte_carlo, VariationSpec};

    fn seed_device() -> DeviceParamsFile {
        DeviceParamsFile {
            geometry: MtjGeometry {
                length_nm: 60.0,
                width_nm: 30.0,
                free_layer_thickness_nm: 1.3,
                oxide_thickness_nm: 1.0,
            },
            saturation_magnetization: 1.5e5,
            gilbert_damping: 0.02,
            tmr_ratio: 1.0,
            spin_polarization: 0.6,
            initial_cant_angle_deg: 5.0,
            she_channel_length_nm: 260.0,
            she_channel_width_nm: 60.0,
            she_channel_thickness_nm: 1.2,
            spin_hall_angle: 0.3,
            fitted_anisotropy_field: None,
            fitted_polarization_asymmetry: None,
            fitted_ra_product: None,
            fitted_she_resistivity: None,
        }
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn calibration_reproduces_the_published_operating_point() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        assert!(close(sys.tech.supply_voltage, 81.18e-6 / 71.13e-6, 1e-12));
        assert!(close(sys.dynamics.closed_form_t_p_ap, 1.63e-9, 1e-6));
        assert!(close(sys.dynamics.closed_form_t_ap_p, 1.13e-9, 1e-6));
        assert!(sys.dynamics.residual < 1e-9);

        // The written file reproduces both write and read currents when the
        // cell is actually driven.
        let stt = sys.design(LutFlavor::Stt).unwrap();
        let mut cell = stt.build_cell(&sys.tech);
        let write = cell_write(&mut cell, &sys.tech, LutFlavor::Stt, true, sys.tech.write_pulse)
            .unwrap();
        assert!(close(write.current, 71.13e-6, 1e-9), "{}", write.current);
        let pu = pull_transistor(&sys.tech);
        let pd = pull_transistor(&sys.tech);
        let read = cell_read(&cell, &sys.tech, &pu, &pd).unwrap();
        assert!(close(read.current, 38.21e-6, 1e-9), "{}", read.current);

        // Sense delays land on the published pair; standby budgets are met.
        assert!(close(read.delay, 60.0e-12, 1e-9), "stored 1 reads high");
        assert!(close(standby_power(Architecture::SttClut, &sys.tech), 0.31e-6, 1e-12));
        assert!(close(standby_power(Architecture::SramLut, &sys.tech), 1.67e-6, 1e-12));
    }

    #[test]
    fn calibrated_files_round_trip_and_feed_the_builders() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let device_text = sys.device.to_document().to_text("device parameters");
        let device = DeviceParamsFile::parse(&device_text).unwrap();
        assert_eq!(device, sys.device);
        device.require_calibrated().unwrap();
        device.require_calibrated_channel().unwrap();

        let tech_text = sys.tech.to_document().to_text("technology parameters");
        assert_eq!(TechParams::parse(&tech_text).unwrap(), sys.tech);
    }

    #[test]
    fn missing_calibration_points_at_the_fix() {
        let err = CellDesign::from_device(&seed_device(), LutFlavor::Stt).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("calibrate"), "{message}");
    }

    #[test]
    fn infeasible_targets_are_rejected() {
        // Write power so low the pass gates alone exceed the loop budget.
        let mut t = SystemTargets::default();
        t.write_power = 1e-9;
        assert!(calibrate_system(&seed_device(), &t).is_err());
        // Read current above the write current is inconsistent.
        let mut t = SystemTargets::default();
        t.switching.read_current = 1e-3;
        assert!(calibrate_system(&seed_device(), &t).is_err());
    }

    #[test]
    fn comparison_rows_hold_the_window_identities() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let report = generate_comparison(&sys.device, &sys.tech).unwrap();
        for arch in [&report.stt, &report.she] {
            assert!(close(arch.write_energy, arch.average.write_power * report.write_pulse, 1e-12));
            assert!(close(arch.read_energy, arch.average.read_power * report.read_window, 1e-12));
            // Measured averages are true midpoints.
            assert_eq!(
                arch.average.read_delay,
                0.5 * (arch.logic0.read_delay + arch.logic1.read_delay)
            );
        }
    }

    #[test]
    fn comparison_matches_the_published_anchors() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let report = generate_comparison(&sys.device, &sys.tech).unwrap();

        assert!(close(report.stt.write_energy, 162.36e-15, 1e-9));
        assert!(close(report.she.write_energy, 175.5e-15, 1e-9));
        assert!(close(report.stt.logic0.read_delay, 20.0e-12, 1e-9));
        assert!(close(report.stt.logic1.read_delay, 60.0e-12, 1e-9));
        assert!(close(report.stt.average.read_delay, 40.0e-12, 1e-9));
        assert!((report.standby_reduction() - 5.4).abs() < 0.2);
        assert_eq!(report.mos_saved_vs_sram(), 250);
        assert_eq!(report.mos_saved_vs_stt(), 768);
        assert!((report.mos_fold_vs_sram() - 1.3).abs() < 0.05);
        assert!((report.mos_fold_vs_stt() - 2.0).abs() < 0.05);

        // The reference row stays verbatim.
        assert_eq!(report.sram.average.read_power, 5.06e-6);
        assert_eq!(report.sram.average.write_power, 25.08e-6);
        assert_eq!(report.sram.read_energy, 2.53e-15);
        assert_eq!(report.sram.write_energy, 14.0e-15);
    }

    #[test]
    fn comparison_renders_complete_text_and_csv() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let report = generate_comparison(&sys.device, &sys.tech).unwrap();
        let text = report.to_text();
        for label in ["sram_lut", "stt_clut", "she_clut", "standby power ratio"] {
            assert!(text.contains(label), "missing {label} in:\n{text}");
        }
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 10, "header plus three logic rows per architecture");
        let columns = lines[0].split(',').count();
        assert!(lines.iter().all(|l| l.split(',').count() == columns));
        // Spot-check one value survives the round trip.
        let stt_avg = lines.iter().find(|l| l.starts_with("stt_clut,avg")).unwrap();
        let write_energy: f64 = stt_avg.split(',').nth(8).unwrap().parse().unwrap();
        assert_eq!(write_energy, report.stt.write_energy);
    }

    #[test]
    fn histograms_emit_one_csv_per_metric_plus_manifest() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let design = sys.design(LutFlavor::Stt).unwrap();
        let run =
            run_monte_carlo(&design, &sys.tech, &VariationSpec::default(), 60, 3, true).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let files = emit_histograms(&run.summary, dir.path()).unwrap();
        assert_eq!(files.len(), 7);
        assert!(files.iter().all(|p| p.exists()));

        let t_csv = std::fs::read_to_string(dir.path().join("t_p_ap.csv")).unwrap();
        let lines: Vec<&str> = t_csv.lines().collect();
        assert_eq!(lines[0], "metric,bin_low,bin_high,count");
        assert_eq!(lines.len(), 1 + run.summary.t_p_ap.histogram.bins());
        let total: u64 =
            lines[1..].iter().map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
        assert_eq!(total, 60);
        // Every switching-time bin sits inside the write pulse.
        let max_edge: f64 = lines[1..]
            .iter()
            .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
            .fold(0.0, f64::max);
        assert!(max_edge < 2e-9, "{max_edge}");

        let manifest = std::fs::read_to_string(dir.path().join("manifest.csv")).unwrap();
        assert_eq!(manifest.lines().count(), 7);
        assert!(manifest.contains("i_write.csv,i_write,A"));
        assert!(manifest.contains("r_p.csv,r_p,ohm"));
    }

    #[test]
    fn histogram_emission_fails_cleanly_on_an_unwritable_path() {
        let sys = calibrate_system(&seed_device(), &SystemTargets::default()).unwrap();
        let design = sys.design(LutFlavor::Stt).unwrap();
        let run =
            run_monte_carlo(&design, &sys.tech, &VariationSpec::default(), 8, 3, false).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        let err = emit_histograms(&run.summary, &file.path().join("sub")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }
}
