//! Device-level models: magnetic tunnel junctions, spin-Hall channels, and
//! the access transistors around them.
//!
//! Everything here is static electrical behavior. Magnetization motion lives
//! in [`crate::dynamics`]; wiring devices into a LUT lives in
//! [`crate::circuit`].

use crate::error::{Error, Result};
use crate::params::Document;

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant, J*s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permeability, T*m/A.
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Gyromagnetic ratio of the electron, rad/(s*T).
pub const GYROMAGNETIC_RATIO: f64 = 1.760_859_63e11;

const NM: f64 = 1e-9;

/// Free-layer stack dimensions, all in nanometers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtjGeometry {
    /// In-plane length of the free layer, nm.
    pub length_nm: f64,
    /// In-plane width of the free layer, nm.
    pub width_nm: f64,
    /// Free-layer thickness, nm.
    pub free_layer_thickness_nm: f64,
    /// Tunnel-oxide thickness, nm. Enters resistance only through the RA
    /// product, which is specified directly; kept for completeness and for
    /// variation bookkeeping.
    pub oxide_thickness_nm: f64,
}

impl MtjGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("length_nm", self.length_nm),
            ("width_nm", self.width_nm),
            ("free_layer_thickness_nm", self.free_layer_thickness_nm),
            ("oxide_thickness_nm", self.oxide_thickness_nm),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("MTJ {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Junction area in um^2. The cross-section is treated as a
    /// length x width rectangle, which keeps relative dimension variation
    /// directly interpretable.
    pub fn area_um2(&self) -> f64 {
        (self.length_nm * 1e-3) * (self.width_nm * 1e-3)
    }

    /// Junction area in m^2.
    pub fn area_m2(&self) -> f64 {
        self.area_um2() * 1e-12
    }

    /// Free-layer volume in m^3.
    pub fn volume_m3(&self) -> f64 {
        self.area_m2() * self.free_layer_thickness_nm * NM
    }
}

/// Free-layer material and junction transport parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtjMaterial {
    /// Saturation magnetization Ms, A/m.
    pub saturation_magnetization: f64,
    /// Gilbert damping constant, dimensionless.
    pub gilbert_damping: f64,
    /// TMR ratio: (R_AP - R_P) / R_P, dimensionless.
    pub tmr_ratio: f64,
    /// Resistance-area product in the parallel state, ohm*um^2.
    pub ra_product: f64,
    /// Spin polarization of the tunnel current, dimensionless, in (0, 1).
    pub spin_polarization: f64,
    /// Effective uniaxial anisotropy field Hk, A/m.
    pub uniaxial_anisotropy_field: f64,
    /// Torque efficiency ratio for the P->AP direction relative to AP->P,
    /// dimensionless, in (0, 1]. The antiparallel-bound transition is the
    /// slower one in these stacks.
    pub polarization_asymmetry: f64,
    /// Initial cant of the magnetization away from the easy axis, degrees.
    /// Thermal agitation keeps the moment off the exact pole; without a cant
    /// the torque has a stationary point and nothing ever switches.
    pub initial_cant_angle_deg: f64,
}

impl MtjMaterial {
    pub fn validate(&self) -> Result<()> {
        let m = self;
        if !(m.saturation_magnetization.is_finite() && m.saturation_magnetization > 0.0) {
            return Err(Error::domain("saturation magnetization must be positive"));
        }
        if !(m.gilbert_damping > 0.0 && m.gilbert_damping < 1.0) {
            return Err(Error::domain("Gilbert damping must be in (0, 1)"));
        }
        if !(m.tmr_ratio > 0.0) {
            return Err(Error::domain("TMR ratio must be positive"));
        }
        if !(m.ra_product > 0.0) {
            return Err(Error::domain("RA product must be positive"));
        }
        if !(m.spin_polarization > 0.0 && m.spin_polarization < 1.0) {
            return Err(Error::domain("spin polarization must be in (0, 1)"));
        }
        if !(m.uniaxial_anisotropy_field.is_finite() && m.uniaxial_anisotropy_field > 0.0) {
            return Err(Error::domain("anisotropy field must be positive"));
        }
        if !(m.polarization_asymmetry > 0.0 && m.polarization_asymmetry <= 1.0) {
            return Err(Error::domain("polarization asymmetry must be in (0, 1]"));
        }
        if !(m.initial_cant_angle_deg > 0.0 && m.initial_cant_angle_deg < 90.0) {
            return Err(Error::domain("initial cant angle must be in (0, 90) degrees"));
        }
        Ok(())
    }
}

/// Magnetization state of a junction. Parallel is the low-resistance state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MtjState {
    Parallel,
    AntiParallel,
}

impl MtjState {
    /// Classifies a unit-magnetization z component. The fixed layer points
    /// along +z, so mz >= 0 reads as parallel.
    pub fn from_mz(mz: f64) -> Self {
        if mz >= 0.0 {
            MtjState::Parallel
        } else {
            MtjState::AntiParallel
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            MtjState::Parallel => MtjState::AntiParallel,
            MtjState::AntiParallel => MtjState::Parallel,
        }
    }

    /// Unit-magnetization z component this state relaxes to.
    pub fn mz(self) -> f64 {
        match self {
            MtjState::Parallel => 1.0,
            MtjState::AntiParallel => -1.0,
        }
    }
}

/// Junction resistance in the given state: R_P = RA / area, and the
/// antiparallel state is scaled up by (1 + TMR).
pub fn mtj_resistance(geometry: &MtjGeometry, material: &MtjMaterial, state: MtjState) -> f64 {
    let r_p = material.ra_product / geometry.area_um2();
    match state {
        MtjState::Parallel => r_p,
        MtjState::AntiParallel => r_p * (1.0 + material.tmr_ratio),
    }
}

/// Zero-temperature critical current for spin-transfer switching, A.
///
/// Below this drive the damping term wins at every cone angle and the moment
/// relaxes back; above it the torque wins everywhere and switching completes.
/// `asymmetric` applies the P->AP efficiency penalty.
pub fn stt_critical_current(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    asymmetric: bool,
) -> f64 {
    let mut efficiency = material.spin_polarization;
    if asymmetric {
        efficiency *= material.polarization_asymmetry;
    }
    (2.0 * ELEMENTARY_CHARGE / HBAR) * (material.gilbert_damping / efficiency)
        * MU0
        * material.saturation_magnetization
        * material.uniaxial_anisotropy_field
        * geometry.volume_m3()
}

/// Heavy-metal channel under a three-terminal junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheChannel {
    /// Channel length between write terminals, nm.
    pub length_nm: f64,
    /// Channel width, nm.
    pub width_nm: f64,
    /// Channel thickness, nm.
    pub thickness_nm: f64,
    /// Spin Hall angle, dimensionless.
    pub spin_hall_angle: f64,
    /// Channel resistivity, ohm*m.
    pub resistivity: f64,
}

impl SheChannel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("length_nm", self.length_nm),
            ("width_nm", self.width_nm),
            ("thickness_nm", self.thickness_nm),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("SHE channel {name} must be positive, got {v}")));
            }
        }
        if !(self.spin_hall_angle > 0.0) {
            return Err(Error::domain("spin Hall angle must be positive"));
        }
        if !(self.resistivity > 0.0) {
            return Err(Error::domain("channel resistivity must be positive"));
        }
        Ok(())
    }

    /// Longitudinal channel resistance rho * L / (W * t). A channel segment
    /// of zero length is an ideal tap and contributes nothing.
    pub fn resistance(&self) -> f64 {
        if self.length_nm == 0.0 {
            return 0.0;
        }
        self.resistivity * (self.length_nm * NM)
            / ((self.width_nm * NM) * (self.thickness_nm * NM))
    }

    /// Charge-to-spin conversion gain: the spin current absorbed by the free
    /// layer per unit charge current, theta_SH * A_mtj / (W * t). Junction
    /// area larger than the channel cross-section makes this exceed one.
    pub fn spin_gain(&self, geometry: &MtjGeometry) -> f64 {
        self.spin_hall_angle * geometry.area_m2()
            / ((self.width_nm * NM) * (self.thickness_nm * NM))
    }
}

/// Critical charge current for spin-Hall switching, A: the spin-current
/// threshold divided by the channel's charge-to-spin gain. Both switching
/// directions are symmetric for SHE writes.
pub fn she_critical_current(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    channel: &SheChannel,
) -> f64 {
    let spin_threshold = (2.0 * ELEMENTARY_CHARGE / HBAR)
        * material.gilbert_damping
        * MU0
        * material.saturation_magnetization
        * material.uniaxial_anisotropy_field
        * geometry.volume_m3();
    spin_threshold / channel.spin_gain(geometry)
}

/// Transistor role in the LUT. Only on-resistance and width-scaled leakage
/// are modeled; these cells never operate transistors in saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransistorKind {
    /// Transmission gate in a write path.
    WriteGate,
    /// Transmission gate in a read path.
    ReadGate,
    /// Pull device in the read divider.
    ReadPull,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransistorParams {
    pub kind: TransistorKind,
    /// Drawn width as a multiple of minimum width. On-resistance scales as
    /// 1/width, leakage scales as width.
    pub width_multiplier: f64,
    /// Threshold voltage, V.
    pub threshold_voltage: f64,
    /// On-resistance of a minimum-width device at the nominal threshold, ohm.
    pub on_resistance_at_min_size: f64,
    /// Off-state leakage of a minimum-width device, A.
    pub leakage_current: f64,
}

impl TransistorParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.width_multiplier > 0.0) {
            return Err(Error::domain("transistor width multiplier must be positive"));
        }
        if !(self.threshold_voltage > 0.0) {
            return Err(Error::domain("threshold voltage must be positive"));
        }
        if !(self.on_resistance_at_min_size > 0.0) {
            return Err(Error::domain("on-resistance must be positive"));
        }
        if !(self.leakage_current >= 0.0) {
            return Err(Error::domain("leakage current must be nonnegative"));
        }
        Ok(())
    }

    /// On-resistance at the given supply, ohm. First-order overdrive model:
    /// R = R_min/width * (V_DD - Vth_nominal)/(V_DD - Vth), so a device at
    /// the nominal threshold has exactly R_min/width and a higher threshold
    /// (weaker overdrive) raises the resistance.
    pub fn on_resistance(&self, supply_voltage: f64, nominal_vth: f64) -> Result<f64> {
        let overdrive = supply_voltage - self.threshold_voltage;
        if overdrive <= 0.0 {
            return Err(Error::domain(format!(
                "transistor does not turn on: supply {supply_voltage} V <= threshold {} V",
                self.threshold_voltage
            )));
        }
        Ok(self.on_resistance_at_min_size / self.width_multiplier * (supply_voltage - nominal_vth)
            / overdrive)
    }

    /// Off-state leakage, A, scaled by width.
    pub fn leakage(&self) -> f64 {
        self.leakage_current * self.width_multiplier
    }
}

/// A complete junction: stack geometry, material, and current state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtjDevice {
    pub geometry: MtjGeometry,
    pub material: MtjMaterial,
    pub state: MtjState,
}

impl MtjDevice {
    pub fn new(geometry: MtjGeometry, material: MtjMaterial, state: MtjState) -> Self {
        MtjDevice { geometry, material, state }
    }

    pub fn resistance(&self) -> f64 {
        mtj_resistance(&self.geometry, &self.material, self.state)
    }
}

/// Device parameter file contents.
///
/// The three `fitted_*` fields are produced by `spinlut calibrate`; loading a
/// file without them and asking for a calibrated device is an error that
/// tells the user to run calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceParamsFile {
    pub geometry: MtjGeometry,
    pub saturation_magnetization: f64,
    pub gilbert_damping: f64,
    pub tmr_ratio: f64,
    pub spin_polarization: f64,
    pub initial_cant_angle_deg: f64,
    pub she_channel_length_nm: f64,
    pub she_channel_width_nm: f64,
    pub she_channel_thickness_nm: f64,
    pub spin_hall_angle: f64,
    pub fitted_anisotropy_field: Option<f64>,
    pub fitted_polarization_asymmetry: Option<f64>,
    pub fitted_ra_product: Option<f64>,
    pub fitted_she_resistivity: Option<f64>,
}

const DEVICE_KEYS: &[&str] = &[
    "mtj_length_nm",
    "mtj_width_nm",
    "free_layer_thickness_nm",
    "oxide_thickness_nm",
    "saturation_magnetization",
    "gilbert_damping",
    "tmr_ratio",
    "spin_polarization",
    "initial_cant_angle_deg",
    "she_channel_length_nm",
    "she_channel_width_nm",
    "she_channel_thickness_nm",
    "spin_hall_angle",
    "fitted_anisotropy_field",
    "fitted_polarization_asymmetry",
    "fitted_ra_product",
    "fitted_she_resistivity",
];

impl DeviceParamsFile {
    pub fn from_document(doc: &Document) -> Result<Self> {
        doc.ensure_known(DEVICE_KEYS)?;
        let file = DeviceParamsFile {
            geometry: MtjGeometry {
                length_nm: doc.get_f64("mtj_length_nm")?,
                width_nm: doc.get_f64("mtj_width_nm")?,
                free_layer_thickness_nm: doc.get_f64("free_layer_thickness_nm")?,
                oxide_thickness_nm: doc.get_f64("oxide_thickness_nm")?,
            },
            saturation_magnetization: doc.get_f64("saturation_magnetization")?,
            gilbert_damping: doc.get_f64("gilbert_damping")?,
            tmr_ratio: doc.get_f64("tmr_ratio")?,
            spin_polarization: doc.get_f64("spin_polarization")?,
            initial_cant_angle_deg: doc.get_f64("initial_cant_angle_deg")?,
            she_channel_length_nm: doc.get_f64("she_channel_length_nm")?,
            she_channel_width_nm: doc.get_f64("she_channel_width_nm")?,
            she_channel_thickness_nm: doc.get_f64("she_channel_thickness_nm")?,
            spin_hall_angle: doc.get_f64("spin_hall_angle")?,
            fitted_anisotropy_field: doc.get_f64_opt("fitted_anisotropy_field")?,
            fitted_polarization_asymmetry: doc.get_f64_opt("fitted_polarization_asymmetry")?,
            fitted_ra_product: doc.get_f64_opt("fitted_ra_product")?,
            fitted_she_resistivity: doc.get_f64_opt("fitted_she_resistivity")?,
        };
        file.geometry.validate()?;
        Ok(file)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_document(&Document::load(path)?)
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.set("mtj_length_nm", self.geometry.length_nm);
        doc.set("mtj_width_nm", self.geometry.width_nm);
        doc.set("free_layer_thickness_nm", self.geometry.free_layer_thickness_nm);
        doc.set("oxide_thickness_nm", self.geometry.oxide_thickness_nm);
        doc.set("saturation_magnetization", self.saturation_magnetization);
        doc.set("gilbert_damping", self.gilbert_damping);
        doc.set("tmr_ratio", self.tmr_ratio);
        doc.set("spin_polarization", self.spin_polarization);
        doc.set("initial_cant_angle_deg", self.initial_cant_angle_deg);
        doc.set("she_channel_length_nm", self.she_channel_length_nm);
        doc.set("she_channel_width_nm", self.she_channel_width_nm);
        doc.set("she_channel_thickness_nm", self.she_channel_thickness_nm);
        doc.set("spin_hall_angle", self.spin_hall_angle);
        if let Some(v) = self.fitted_anisotropy_field {
            doc.set("fitted_anisotropy_field", v);
        }
        if let Some(v) = self.fitted_polarization_asymmetry {
            doc.set("fitted_polarization_asymmetry", v);
        }
        if let Some(v) = self.fitted_ra_product {
            doc.set("fitted_ra_product", v);
        }
        if let Some(v) = self.fitted_she_resistivity {
            doc.set("fitted_she_resistivity", v);
        }
        doc
    }

    /// Builds the junction material, requiring every fitted field. Errors
    /// direct the user to `spinlut calibrate`.
    pub fn require_calibrated(&self) -> Result<MtjMaterial> {
        let missing = |name: &str| {
            Error::config(
                name,
                "not present in device parameters; run `spinlut calibrate` to fit it",
            )
        };
        let material = MtjMaterial {
            saturation_magnetization: self.saturation_magnetization,
            gilbert_damping: self.gilbert_damping,
            tmr_ratio: self.tmr_ratio,
            ra_product: self.fitted_ra_product.ok_or_else(|| missing("fitted_ra_product"))?,
            spin_polarization: self.spin_polarization,
            uniaxial_anisotropy_field: self
                .fitted_anisotropy_field
                .ok_or_else(|| missing("fitted_anisotropy_field"))?,
            polarization_asymmetry: self
                .fitted_polarization_asymmetry
                .ok_or_else(|| missing("fitted_polarization_asymmetry"))?,
            initial_cant_angle_deg: self.initial_cant_angle_deg,
        };
        material.validate()?;
        Ok(material)
    }

    /// Builds the heavy-metal channel, requiring the fitted resistivity.
    pub fn require_calibrated_channel(&self) -> Result<SheChannel> {
        let channel = SheChannel {
            length_nm: self.she_channel_length_nm,
            width_nm: self.she_channel_width_nm,
            thickness_nm: self.she_channel_thickness_nm,
            spin_hall_angle: self.spin_hall_angle,
            resistivity: self.fitted_she_resistivity.ok_or_else(|| {
                Error::config(
                    "fitted_she_resistivity",
                    "not present in device parameters; run `spinlut calibrate` to fit it",
                )
            })?,
        };
        channel.validate()?;
        Ok(channel)
    }
}

/// Technology parameter file contents: supply, timing, transistor and sense
/// constants shared by every architecture in the comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct TechParams {
    /// Process node label, informational only.
    pub node: String,
    /// Supply voltage, V.
    pub supply_voltage: f64,
    /// Write pulse duration, s.
    pub write_pulse: f64,
    /// Read access window used for disturb checks, s.
    pub read_window: f64,
    /// Nominal transistor threshold, V.
    pub nominal_vth: f64,
    /// On-resistance of a minimum-width transmission gate, ohm.
    pub tg_on_resistance: f64,
    /// On-resistance of each read-divider pull device, ohm (at drawn width).
    pub read_pull_on_resistance: f64,
    /// Write transmission-gate width multiplier for two-terminal cells.
    pub stt_write_tg_width: f64,
    /// Write transmission-gate width multiplier for three-terminal cells.
    pub she_write_tg_width: f64,
    /// Capacitance at the sense node, F.
    pub sense_node_capacitance: f64,
    /// Sense-node settling is modeled as tau * swing_factor; the factors are
    /// fitted so that low/high reads settle in the target delays.
    pub read_swing_low: f64,
    pub read_swing_high: f64,
    /// Standby leakage per unit transistor width for junction-based cells, A.
    pub mram_leakage_per_width: f64,
    /// Standby leakage per unit transistor width for the SRAM reference, A.
    pub sram_leakage_per_width: f64,
    /// Sense threshold as a fraction of supply. Reads above it are ones.
    pub sense_threshold_fraction: f64,
}

const TECH_KEYS: &[&str] = &[
    "node",
    "supply_voltage",
    "write_pulse",
    "read_window",
    "nominal_vth",
    "tg_on_resistance",
    "read_pull_on_resistance",
    "stt_write_tg_width",
    "she_write_tg_width",
    "sense_node_capacitance",
    "read_swing_low",
    "read_swing_high",
    "mram_leakage_per_width",
    "sram_leakage_per_width",
    "sense_threshold_fraction",
];

impl TechParams {
    pub fn from_document(doc: &Document) -> Result<Self> {
        doc.ensure_known(TECH_KEYS)?;
        let tech = TechParams {
            node: doc.get_str("node")?.to_string(),
            supply_voltage: doc.get_f64("supply_voltage")?,
            write_pulse: doc.get_f64("write_pulse")?,
            read_window: doc.get_f64("read_window")?,
            nominal_vth: doc.get_f64("nominal_vth")?,
            tg_on_resistance: doc.get_f64("tg_on_resistance")?,
            read_pull_on_resistance: doc.get_f64("read_pull_on_resistance")?,
            stt_write_tg_width: doc.get_f64("stt_write_tg_width")?,
            she_write_tg_width: doc.get_f64("she_write_tg_width")?,
            sense_node_capacitance: doc.get_f64("sense_node_capacitance")?,
            read_swing_low: doc.get_f64("read_swing_low")?,
            read_swing_high: doc.get_f64("read_swing_high")?,
            mram_leakage_per_width: doc.get_f64("mram_leakage_per_width")?,
            sram_leakage_per_width: doc.get_f64("sram_leakage_per_width")?,
            sense_threshold_fraction: doc.get_f64("sense_threshold_fraction")?,
        };
        tech.validate()?;
        Ok(tech)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(&Document::parse(text)?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_document(&Document::load(path)?)
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.set("node", &self.node);
        doc.set("supply_voltage", self.supply_voltage);
        doc.set("write_pulse", self.write_pulse);
        doc.set("read_window", self.read_window);
        doc.set("nominal_vth", self.nominal_vth);
        doc.set("tg_on_resistance", self.tg_on_resistance);
        doc.set("read_pull_on_resistance", self.read_pull_on_resistance);
        doc.set("stt_write_tg_width", self.stt_write_tg_width);
        doc.set("she_write_tg_width", self.she_write_tg_width);
        doc.set("sense_node_capacitance", self.sense_node_capacitance);
        doc.set("read_swing_low", self.read_swing_low);
        doc.set("read_swing_high", self.read_swing_high);
        doc.set("mram_leakage_per_width", self.mram_leakage_per_width);
        doc.set("sram_leakage_per_width", self.sram_leakage_per_width);
        doc.set("sense_threshold_fraction", self.sense_threshold_fraction);
        doc
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("supply_voltage", self.supply_voltage),
            ("write_pulse", self.write_pulse),
            ("read_window", self.read_window),
            ("nominal_vth", self.nominal_vth),
            ("tg_on_resistance", self.tg_on_resistance),
            ("read_pull_on_resistance", self.read_pull_on_resistance),
            ("stt_write_tg_width", self.stt_write_tg_width),
            ("she_write_tg_width", self.she_write_tg_width),
            ("sense_node_capacitance", self.sense_node_capacitance),
            ("read_swing_low", self.read_swing_low),
            ("read_swing_high", self.read_swing_high),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.nominal_vth >= self.supply_voltage {
            return Err(Error::domain("nominal threshold must be below the supply"));
        }
        for (name, v) in [
            ("mram_leakage_per_width", self.mram_leakage_per_width),
            ("sram_leakage_per_width", self.sram_leakage_per_width),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::domain(format!("{name} must be nonnegative, got {v}")));
            }
        }
        if !(self.sense_threshold_fraction > 0.0 && self.sense_threshold_fraction < 1.0) {
            return Err(Error::domain("sense threshold fraction must be in (0, 1)"));
        }
        Ok(())
    }

    /// The voltage a read node is compared against.
    pub fn sense_threshold(&self) -> f64 {
        self.sense_threshold_fraction * self.supply_voltage
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_geometry() -> MtjGeometry {
        MtjGeometry {
            length_nm: 60.0,
            width_nm: 30.0,
            free_layer_thickness_nm: 1.3,
            oxide_thickness_nm: 1.2,
        }
    }

    fn example_material() -> MtjMaterial {
        MtjMaterial {
            saturation_magnetization: 1.5e5,
            gilbert_damping: 0.02,
            tmr_ratio: 1.0,
            ra_product: 9.0,
            spin_polarization: 0.6,
            uniaxial_anisotropy_field: 1.1e6,
            polarization_asymmetry: 0.9,
            initial_cant_angle_deg: 5.0,
        }
    }

    #[test]
    fn area_and_volume() {
        let g = example_geometry();
        // 0.06 um * 0.03 um rectangle.
        let expect = 0.06 * 0.03;
        assert!((g.area_um2() - expect).abs() < 1e-15);
        assert!((g.volume_m3() - expect * 1e-12 * 1.3e-9).abs() < 1e-35);
    }

    #[test]
    fn resistance_states() {
        // RA 9 ohm*um^2 over a 60 nm x 30 nm junction: exactly 5 kohm.
        let g = example_geometry();
        let m = example_material();
        let r_p = mtj_resistance(&g, &m, MtjState::Parallel);
        assert!((r_p - 5000.0).abs() / 5000.0 < 1e-12, "got {r_p}");
        let r_ap = mtj_resistance(&g, &m, MtjState::AntiParallel);
        assert!((r_ap - 2.0 * r_p).abs() / r_ap < 1e-12, "TMR of 1 doubles R");
    }

    #[test]
    fn unit_area_reference_resistance() {
        // A 1 um x 1 um junction has 1 um^2 area, so R_P = RA numerically.
        let g = MtjGeometry {
            length_nm: 1000.0,
            width_nm: 1000.0,
            free_layer_thickness_nm: 1.0,
            oxide_thickness_nm: 1.0,
        };
        let mut m = example_material();
        m.ra_product = 9.0;
        let r = mtj_resistance(&g, &m, MtjState::Parallel);
        assert!((r - 9.0).abs() < 1e-9, "got {r}");
    }

    #[test]
    fn critical_current_formula() {
        let g = example_geometry();
        let m = example_material();
        // Independent evaluation of (2e/hbar)(alpha/P) mu0 Ms Hk V.
        let v = g.volume_m3();
        let expect = 2.0 * 1.602176634e-19 / 1.054571817e-34 * (0.02 / 0.6)
            * 1.25663706212e-6
            * 1.5e5
            * 1.1e6
            * v;
        let ic = stt_critical_current(&g, &m, false);
        assert!((ic - expect).abs() / expect < 1e-12);
        // Asymmetric direction needs more current.
        let ic_asym = stt_critical_current(&g, &m, true);
        assert!((ic_asym - ic / 0.9).abs() / ic_asym < 1e-12);
        // Sanity: tens of microamps for these dimensions.
        assert!(ic > 10e-6 && ic < 100e-6, "Ic0 = {ic}");
    }

    #[test]
    fn channel_resistance() {
        let ch = SheChannel {
            length_nm: 100.0,
            width_nm: 50.0,
            thickness_nm: 2.0,
            spin_hall_angle: 0.3,
            resistivity: 200e-8,
        };
        // rho L / (W t) = 2e-6 * 100e-9 / (50e-9 * 2e-9) = 2000 ohm.
        assert!((ch.resistance() - 2000.0).abs() < 1e-9);
        let tap = SheChannel { length_nm: 0.0, ..ch };
        assert_eq!(tap.resistance(), 0.0);
    }

    #[test]
    fn spin_gain_and_she_threshold() {
        let g = example_geometry();
        let m = example_material();
        let ch = SheChannel {
            length_nm: 260.0,
            width_nm: 60.0,
            thickness_nm: 1.2,
            spin_hall_angle: 0.3,
            resistivity: 1.5e-6,
        };
        let gain = ch.spin_gain(&g);
        // 0.3 * (60 nm * 30 nm) / (60 nm * 1.2 nm) = 7.5.
        assert!((gain - 7.5).abs() < 1e-12, "got {gain}");
        assert!(gain > 1.0, "junction dwarfs channel cross-section: gain = {gain}");
        // SHE threshold = STT threshold * P / gain (both directions).
        let stt = stt_critical_current(&g, &m, false);
        let she = she_critical_current(&g, &m, &ch);
        assert!((she - stt * 0.6 / gain).abs() / she < 1e-12);
        assert!(she < stt, "spin-Hall writes pass the threshold sooner");
    }

    #[test]
    fn transistor_on_resistance_scaling() {
        let t = TransistorParams {
            kind: TransistorKind::WriteGate,
            width_multiplier: 4.0,
            threshold_voltage: 0.4,
            on_resistance_at_min_size: 2000.0,
            leakage_current: 1e-10,
        };
        // At nominal threshold the overdrive correction cancels.
        let r = t.on_resistance(1.1, 0.4).unwrap();
        assert!((r - 500.0).abs() < 1e-9);
        // Higher threshold -> weaker overdrive -> more resistance.
        let weak = TransistorParams { threshold_voltage: 0.5, ..t };
        assert!(weak.on_resistance(1.1, 0.4).unwrap() > r);
        // Supply below threshold refuses to conduct.
        assert!(t.on_resistance(0.3, 0.4).is_err());
        assert!((t.leakage() - 4e-10).abs() < 1e-22);
    }

    #[test]
    fn state_from_mz() {
        assert_eq!(MtjState::from_mz(0.9), MtjState::Parallel);
        assert_eq!(MtjState::from_mz(0.0), MtjState::Parallel);
        assert_eq!(MtjState::from_mz(-0.3), MtjState::AntiParallel);
        assert_eq!(MtjState::Parallel.opposite(), MtjState::AntiParallel);
    }

    #[test]
    fn device_file_round_trip_and_calibration_gate() {
        let file = DeviceParamsFile {
            geometry: example_geometry(),
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
        };
        let text = file.to_document().to_text("device parameters");
        let back = DeviceParamsFile::parse(&text).unwrap();
        assert_eq!(back, file);
        let err = back.require_calibrated().unwrap_err().to_string();
        assert!(err.contains("calibrate"), "{err}");

        let mut fitted = file.clone();
        fitted.fitted_anisotropy_field = Some(1.1e6);
        fitted.fitted_polarization_asymmetry = Some(0.9);
        fitted.fitted_ra_product = Some(9.0);
        fitted.fitted_she_resistivity = Some(1.5e-6);
        let text = fitted.to_document().to_text("device parameters");
        let back = DeviceParamsFile::parse(&text).unwrap();
        let material = back.require_calibrated().unwrap();
        assert_eq!(material.ra_product, 9.0);
        let channel = back.require_calibrated_channel().unwrap();
        assert_eq!(channel.resistivity, 1.5e-6);
    }

    #[test]
    fn validation_catches_bad_values() {
        let mut m = example_material();
        m.spin_polarization = 1.5;
        assert!(m.validate().is_err());
        let mut g = example_geometry();
        g.width_nm = -1.0;
        assert!(g.validate().is_err());
    }
}
