//! Cell array and read/write paths of the complementary-pair LUT.
//!
//! Every configuration bit lives in two junctions programmed to opposite
//! states. A write drives both junctions in series through transmission
//! gates; a read forms a five-element divider (pull-up, junction, node,
//! complement junction, pull-down) and compares the node against a fixed
//! threshold. The module also carries the architecture bookkeeping used by
//! the comparison tables: device counts, standby power, and transient traces
//! of a configure-then-read scenario.

use crate::device::{
    mtj_resistance, stt_critical_current, DeviceParamsFile, MtjDevice, MtjGeometry, MtjMaterial,
    MtjState, SheChannel, TechParams, TransistorKind, TransistorParams,
};
use crate::dynamics::{switching_time, SwitchingOutcome, TorqueDrive};
use crate::error::{Error, Result};

pub const CELL_COUNT: usize = 64;
const HALF_COUNT: usize = 32;

/// Storage cell technology of the LUT under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LutFlavor {
    /// Two-terminal cell: the write current tunnels through the junctions.
    Stt,
    /// Three-terminal cell: the write current flows through heavy-metal
    /// channels under the junctions and never crosses the oxide.
    She,
}

impl LutFlavor {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "stt" => Ok(LutFlavor::Stt),
            "she" => Ok(LutFlavor::She),
            other => Err(Error::argument(format!(
                "unknown cell flavor {other:?}; expected stt or she"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LutFlavor::Stt => "stt",
            LutFlavor::She => "she",
        }
    }
}

/// Logical shape of the LUT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LutMode {
    /// One six-input function on OUT1.
    Single6,
    /// Two independent five-input functions on OUT0 (cells 0..31) and OUT2
    /// (cells 32..63); input F is ignored.
    DualFive,
}

impl LutMode {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "single6" => Ok(LutMode::Single6),
            "dual5" => Ok(LutMode::DualFive),
            other => Err(Error::argument(format!(
                "unknown mode {other:?}; expected single6 or dual5"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LutMode::Single6 => "single6",
            LutMode::DualFive => "dual5",
        }
    }
}

/// Truth-table contents. Bit i of the packed value is the bit stored in
/// cell i.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LutConfig {
    Single6(u64),
    DualFive { low: u32, high: u32 },
}

impl LutConfig {
    pub fn mode(&self) -> LutMode {
        match self {
            LutConfig::Single6(_) => LutMode::Single6,
            LutConfig::DualFive { .. } => LutMode::DualFive,
        }
    }

    /// Configuration bit for one cell.
    pub fn bit(&self, cell: usize) -> bool {
        debug_assert!(cell < CELL_COUNT);
        match self {
            LutConfig::Single6(t) => (t >> cell) & 1 == 1,
            LutConfig::DualFive { low, high } => {
                if cell < HALF_COUNT {
                    (low >> cell) & 1 == 1
                } else {
                    (high >> (cell - HALF_COUNT)) & 1 == 1
                }
            }
        }
    }

    /// Parses the text form: sixteen hex digits for the six-input table,
    /// or two comma-separated eight-digit halves (low,high) for the dual
    /// five-input mode. Digits are most significant first.
    pub fn parse(text: &str, mode: LutMode) -> Result<Self> {
        let hex = |part: &str, digits: usize, what: &str| -> Result<u64> {
            if part.len() != digits || !part.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(Error::argument(format!(
                    "{what} must be exactly {digits} hex digits, got {part:?}"
                )));
            }
            Ok(u64::from_str_radix(part, 16).expect("validated hex"))
        };
        let text = text.trim();
        match mode {
            LutMode::Single6 => Ok(LutConfig::Single6(hex(text, 16, "table")?)),
            LutMode::DualFive => {
                let (lo, hi) = text.split_once(',').ok_or_else(|| {
                    Error::argument(format!(
                        "dual5 table must be two comma-separated halves (low,high), got {text:?}"
                    ))
                })?;
                Ok(LutConfig::DualFive {
                    low: hex(lo.trim(), 8, "low half")? as u32,
                    high: hex(hi.trim(), 8, "high half")? as u32,
                })
            }
        }
    }

    pub fn to_hex(&self) -> String {
        match self {
            LutConfig::Single6(t) => format!("{t:016X}"),
            LutConfig::DualFive { low, high } => format!("{low:08X},{high:08X}"),
        }
    }
}

/// Minterm index selected by inputs A..F, A most significant.
pub fn input_index(inputs: [bool; 6]) -> usize {
    inputs.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// Five-input index used by the fractured mode; input F is ignored.
pub fn half_input_index(inputs: [bool; 6]) -> usize {
    inputs[..5].iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// Parses an input vector like "010011", inputs A..F left to right.
pub fn parse_inputs(text: &str) -> Result<[bool; 6]> {
    let text = text.trim();
    let bytes = text.as_bytes();
    if bytes.len() != 6 || !bytes.iter().all(|b| *b == b'0' || *b == b'1') {
        return Err(Error::argument(format!(
            "inputs must be six binary digits A..F, got {text:?}"
        )));
    }
    let mut out = [false; 6];
    for (slot, b) in out.iter_mut().zip(bytes) {
        *slot = *b == b'1';
    }
    Ok(out)
}

/// One complementary storage cell. The primary junction sits between the
/// write line BL and node D, the complement between D and SL. Three-terminal
/// cells add a heavy-metal channel under each junction; the write current
/// then runs BL -> channel -> channel -> SL and never crosses the oxide.
#[derive(Debug, Clone)]
pub struct MemoryCell {
    pub mtj: MtjDevice,
    pub mtj_complement: MtjDevice,
    pub write_tg_1: TransistorParams,
    pub write_tg_2: TransistorParams,
    pub read_tg: TransistorParams,
    pub channel: Option<SheChannel>,
    pub channel_complement: Option<SheChannel>,
}

impl MemoryCell {
    /// The stored logic value, or None if the junctions are not in
    /// complementary states (possible only after a failed write).
    pub fn stored_bit(&self) -> Option<bool> {
        match (self.mtj.state, self.mtj_complement.state) {
            (MtjState::Parallel, MtjState::AntiParallel) => Some(true),
            (MtjState::AntiParallel, MtjState::Parallel) => Some(false),
            _ => None,
        }
    }

    pub fn is_complementary(&self) -> bool {
        self.stored_bit().is_some()
    }
}

/// Everything needed to instantiate one cell: junction design plus, for
/// three-terminal cells, the channel design. Process variation perturbs a
/// copy of this before building the cell.
#[derive(Debug, Clone)]
pub struct CellDesign {
    pub geometry: MtjGeometry,
    pub material: MtjMaterial,
    pub channel: Option<SheChannel>,
    pub flavor: LutFlavor,
}

impl CellDesign {
    pub fn new(
        geometry: MtjGeometry,
        material: MtjMaterial,
        channel: Option<SheChannel>,
        flavor: LutFlavor,
    ) -> Result<Self> {
        geometry.validate()?;
        material.validate()?;
        if flavor == LutFlavor::She {
            let ch = channel
                .as_ref()
                .ok_or_else(|| Error::domain("three-terminal cells need a channel design"))?;
            ch.validate()?;
        }
        Ok(CellDesign { geometry, material, channel, flavor })
    }

    /// Builds the design from a device parameter file. Requires the fitted
    /// fields; the error for a missing one tells the user to calibrate.
    pub fn from_device(device: &DeviceParamsFile, flavor: LutFlavor) -> Result<Self> {
        let material = device.require_calibrated()?;
        let channel = match flavor {
            LutFlavor::Stt => None,
            LutFlavor::She => Some(device.require_calibrated_channel()?),
        };
        CellDesign::new(device.geometry, material, channel, flavor)
    }

    pub fn write_tg_width(&self, tech: &TechParams) -> f64 {
        match self.flavor {
            LutFlavor::Stt => tech.stt_write_tg_width,
            LutFlavor::She => tech.she_write_tg_width,
        }
    }

    fn gate(&self, kind: TransistorKind, width: f64, tech: &TechParams) -> TransistorParams {
        TransistorParams {
            kind,
            width_multiplier: width,
            threshold_voltage: tech.nominal_vth,
            on_resistance_at_min_size: tech.tg_on_resistance,
            leakage_current: tech.mram_leakage_per_width,
        }
    }

    /// A fresh cell stores bit 0: primary antiparallel, complement parallel.
    pub fn build_cell(&self, tech: &TechParams) -> MemoryCell {
        let width = self.write_tg_width(tech);
        let channel = match self.flavor {
            LutFlavor::Stt => None,
            LutFlavor::She => self.channel.clone(),
        };
        MemoryCell {
            mtj: MtjDevice::new(self.geometry, self.material, MtjState::AntiParallel),
            mtj_complement: MtjDevice::new(self.geometry, self.material, MtjState::Parallel),
            write_tg_1: self.gate(TransistorKind::WriteGate, width, tech),
            write_tg_2: self.gate(TransistorKind::WriteGate, width, tech),
            read_tg: self.gate(TransistorKind::ReadGate, 1.0, tech),
            channel: channel.clone(),
            channel_complement: channel,
        }
    }
}

/// A pull device for the read divider.
pub fn pull_transistor(tech: &TechParams) -> TransistorParams {
    TransistorParams {
        kind: TransistorKind::ReadPull,
        width_multiplier: 1.0,
        threshold_voltage: tech.nominal_vth,
        on_resistance_at_min_size: tech.read_pull_on_resistance,
        leakage_current: tech.mram_leakage_per_width,
    }
}

/// What happened to one junction during a write pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchEvent {
    /// The junction already held the target state; the torque only
    /// reinforces it and nothing moves.
    AlreadySet,
    /// Equator crossing at this time into the pulse, s.
    Switched(f64),
    /// The pulse ended before the crossing; the moment relaxed back.
    Failed,
}

impl SwitchEvent {
    pub fn failed(&self) -> bool {
        matches!(self, SwitchEvent::Failed)
    }

    /// Crossing time for a real transition, None for AlreadySet or Failed.
    pub fn time(&self) -> Option<f64> {
        match self {
            SwitchEvent::Switched(t) => Some(*t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WriteOutcome {
    pub primary: SwitchEvent,
    pub complement: SwitchEvent,
}

impl WriteOutcome {
    pub fn failed(&self) -> bool {
        self.primary.failed() || self.complement.failed()
    }
}

/// Electrical summary of one write or read access.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccessResult {
    /// Magnitude of the current through the cell path, A.
    pub current: f64,
    /// Divider-node voltage during the access, V.
    pub node_voltage: f64,
    /// Supply energy over the access window, J.
    pub energy: f64,
    /// Access latency: the pulse length for writes, the sense settling time
    /// for reads, s.
    pub delay: f64,
    /// Sensed logic value; reads only.
    pub sensed: Option<bool>,
    /// Per-junction switching events; writes only.
    pub events: Option<WriteOutcome>,
}

impl AccessResult {
    pub fn write_error(&self) -> bool {
        self.events.map(|e| e.failed()).unwrap_or(false)
    }
}

/// Applies one signed drive to one junction. Positive charge current pushes
/// toward antiparallel, so the sign encodes the target state.
fn junction_write(device: &mut MtjDevice, drive: &TorqueDrive) -> SwitchEvent {
    let target =
        if drive.charge_current > 0.0 { MtjState::AntiParallel } else { MtjState::Parallel };
    if device.state == target {
        return SwitchEvent::AlreadySet;
    }
    match switching_time(&device.geometry, &device.material, drive, device.state) {
        SwitchingOutcome::Switched(t) => {
            device.state = target;
            SwitchEvent::Switched(t)
        }
        SwitchingOutcome::NoSwitch => SwitchEvent::Failed,
    }
}

/// Drives one cell to the given bit with a single bipolar pulse.
///
/// Both junctions carry the same series current, so one pulse programs the
/// pair to opposite states: bit 1 puts BL high, pushing the primary junction
/// toward parallel and the complement toward antiparallel; bit 0 reverses
/// the lines. Path resistance is evaluated at the pre-pulse states. For a
/// complementary pair the series total is the same before and after the
/// write, so the brief mid-pulse window where one junction has switched and
/// the other has not is not resolved.
pub fn cell_write(
    cell: &mut MemoryCell,
    tech: &TechParams,
    flavor: LutFlavor,
    bit: bool,
    pulse: f64,
) -> Result<AccessResult> {
    if !(pulse.is_finite() && pulse > 0.0) {
        return Err(Error::argument(format!("write pulse must be positive, got {pulse}")));
    }
    let vdd = tech.supply_voltage;
    let r1 = cell.write_tg_1.on_resistance(vdd, tech.nominal_vth)?;
    let r2 = cell.write_tg_2.on_resistance(vdd, tech.nominal_vth)?;
    // Segments above and below node D along the write path.
    let (upper, lower) = match flavor {
        LutFlavor::Stt => (cell.mtj.resistance(), cell.mtj_complement.resistance()),
        LutFlavor::She => {
            let missing = || Error::domain("three-terminal write path needs channels");
            let ch = cell.channel.as_ref().ok_or_else(missing)?;
            let chc = cell.channel_complement.as_ref().ok_or_else(missing)?;
            (ch.resistance(), chc.resistance())
        }
    };
    let total = r1 + upper + lower + r2;
    let current = vdd / total;
    let node_voltage =
        if bit { vdd * (lower + r2) / total } else { vdd * (upper + r1) / total };

    // Positive drive current -> antiparallel. The complement junction sees
    // the same physical current with opposite polarity.
    let primary_sign = if bit { -1.0 } else { 1.0 };
    let (primary_drive, complement_drive) = match flavor {
        LutFlavor::Stt => (
            TorqueDrive::stt(primary_sign * current, pulse),
            TorqueDrive::stt(-primary_sign * current, pulse),
        ),
        LutFlavor::She => {
            let ch = cell.channel.clone().expect("checked above");
            let chc = cell.channel_complement.clone().expect("checked above");
            (
                TorqueDrive::she(ch, primary_sign * current, pulse),
                TorqueDrive::she(chc, -primary_sign * current, pulse),
            )
        }
    };
    let primary = junction_write(&mut cell.mtj, &primary_drive);
    let complement = junction_write(&mut cell.mtj_complement, &complement_drive);

    Ok(AccessResult {
        current,
        node_voltage,
        energy: vdd * current * pulse,
        delay: pulse,
        sensed: None,
        events: Some(WriteOutcome { primary, complement }),
    })
}

/// Node-D voltage of the read divider: VDD across pull-up, primary junction,
/// node, complement junction, pull-down. The read transmission gate hangs
/// off the node toward the sense stage and carries no steady current.
pub fn cell_read_voltage(
    cell: &MemoryCell,
    tech: &TechParams,
    pull_up: &TransistorParams,
    pull_down: &TransistorParams,
) -> Result<f64> {
    let vdd = tech.supply_voltage;
    let top = pull_up.on_resistance(vdd, tech.nominal_vth)? + cell.mtj.resistance();
    let bottom = cell.mtj_complement.resistance() + pull_down.on_resistance(vdd, tech.nominal_vth)?;
    Ok(vdd * bottom / (top + bottom))
}

/// Full read access: divider voltage, sensed bit, read current, settling
/// delay, and supply energy over the read window.
pub fn cell_read(
    cell: &MemoryCell,
    tech: &TechParams,
    pull_up: &TransistorParams,
    pull_down: &TransistorParams,
) -> Result<AccessResult> {
    let vdd = tech.supply_voltage;
    let top = pull_up.on_resistance(vdd, tech.nominal_vth)? + cell.mtj.resistance();
    let bottom = cell.mtj_complement.resistance() + pull_down.on_resistance(vdd, tech.nominal_vth)?;
    let node_voltage = vdd * bottom / (top + bottom);
    let sensed = node_voltage > tech.sense_threshold();
    let current = vdd / (top + bottom);
    // Settling at the sense node: Thevenin resistance into the node times
    // the node capacitance, scaled by how far the node must swing for the
    // sensed value.
    let r_thevenin =
        cell.read_tg.on_resistance(vdd, tech.nominal_vth)? + top * bottom / (top + bottom);
    let tau = r_thevenin * tech.sense_node_capacitance;
    let delay = tau * if sensed { tech.read_swing_high } else { tech.read_swing_low };
    Ok(AccessResult {
        current,
        node_voltage,
        energy: vdd * current * tech.read_window,
        delay,
        sensed: Some(sensed),
        events: None,
    })
}

/// Whether a read of this cell can flip a junction.
///
/// The read current enters through the primary junction and leaves through
/// the complement, the same polarity as a write of bit 0. A junction whose
/// state that polarity opposes is destabilized; the read is safe only while
/// the current stays below its critical current. Both flavors read through
/// the junction stack, so the tunnel-current thresholds apply to both.
pub fn read_disturbs(
    cell: &MemoryCell,
    tech: &TechParams,
    pull_up: &TransistorParams,
    pull_down: &TransistorParams,
) -> Result<bool> {
    let vdd = tech.supply_voltage;
    let top = pull_up.on_resistance(vdd, tech.nominal_vth)? + cell.mtj.resistance();
    let bottom = cell.mtj_complement.resistance() + pull_down.on_resistance(vdd, tech.nominal_vth)?;
    let current = vdd / (top + bottom);
    // Primary is pushed toward antiparallel: at risk while parallel.
    if cell.mtj.state == MtjState::Parallel {
        let ic = stt_critical_current(&cell.mtj.geometry, &cell.mtj.material, true);
        if current >= ic {
            return Ok(true);
        }
    }
    // Complement is pushed toward parallel: at risk while antiparallel.
    if cell.mtj_complement.state == MtjState::AntiParallel {
        let ic = stt_critical_current(
            &cell.mtj_complement.geometry,
            &cell.mtj_complement.material,
            false,
        );
        if current >= ic {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Difference between the two read-node levels of one cell design, V.
pub fn read_margin_of(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    tech: &TechParams,
) -> f64 {
    let vdd = tech.supply_voltage;
    let r_pull = tech.read_pull_on_resistance;
    let r_p = mtj_resistance(geometry, material, MtjState::Parallel);
    let r_ap = mtj_resistance(geometry, material, MtjState::AntiParallel);
    let total = 2.0 * r_pull + r_p + r_ap;
    let v1 = vdd * (r_ap + r_pull) / total;
    let v0 = vdd * (r_p + r_pull) / total;
    (v1 - v0).abs()
}

/// Worst-case distance between the read node and the sense threshold over
/// both stored values, for the complementary-pair divider, V.
pub fn complementary_sense_margin(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    tech: &TechParams,
) -> f64 {
    let vdd = tech.supply_voltage;
    let vt = tech.sense_threshold();
    let r_pull = tech.read_pull_on_resistance;
    let r_p = mtj_resistance(geometry, material, MtjState::Parallel);
    let r_ap = mtj_resistance(geometry, material, MtjState::AntiParallel);
    let total = 2.0 * r_pull + r_p + r_ap;
    let v1 = vdd * (r_ap + r_pull) / total;
    let v0 = vdd * (r_p + r_pull) / total;
    (v1 - vt).abs().min((v0 - vt).abs())
}

/// The same worst-case threshold distance for a single-junction divider
/// read against a fixed mid-resistance reference arm with the same pulls
/// and threshold, V. The reference arm sits where the complement junction
/// would be and is fixed at the two-state midpoint.
pub fn single_ended_sense_margin(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    tech: &TechParams,
) -> f64 {
    let vdd = tech.supply_voltage;
    let vt = tech.sense_threshold();
    let r_pull = tech.read_pull_on_resistance;
    let r_p = mtj_resistance(geometry, material, MtjState::Parallel);
    let r_ap = mtj_resistance(geometry, material, MtjState::AntiParallel);
    let r_ref = 0.5 * (r_p + r_ap);
    let node = |r_top: f64| {
        let total = 2.0 * r_pull + r_top + r_ref;
        vdd * (r_ref + r_pull) / total
    };
    // Parallel top arm raises the node (reads as 1), antiparallel lowers it.
    let v1 = node(r_p);
    let v0 = node(r_ap);
    (v1 - vt).abs().min((v0 - vt).abs())
}

/// Outputs of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalOutputs {
    Single6 { out1: bool },
    DualFive { out0: bool, out2: bool },
}

/// The full 64-cell LUT.
#[derive(Debug, Clone)]
pub struct ClutCircuit {
    pub flavor: LutFlavor,
    pub mode: LutMode,
    pub tech: TechParams,
    pub cells: Vec<MemoryCell>,
    pub pull_up: TransistorParams,
    pub pull_down: TransistorParams,
}

impl ClutCircuit {
    /// All cells fresh (bit 0), nothing written yet.
    pub fn build_unconfigured(
        design: &CellDesign,
        tech: &TechParams,
        mode: LutMode,
    ) -> Result<Self> {
        tech.validate()?;
        let cells = (0..CELL_COUNT).map(|_| design.build_cell(tech)).collect();
        Ok(ClutCircuit {
            flavor: design.flavor,
            mode,
            tech: tech.clone(),
            cells,
            pull_up: pull_transistor(tech),
            pull_down: pull_transistor(tech),
        })
    }

    /// Builds the LUT and programs the table into it.
    pub fn build(design: &CellDesign, tech: &TechParams, config: &LutConfig) -> Result<Self> {
        let mut circuit = Self::build_unconfigured(design, tech, config.mode())?;
        circuit.configure(config)?;
        Ok(circuit)
    }

    /// Writes every cell of the table. Errors if any junction fails to
    /// switch within the write pulse; at nominal parameters that means the
    /// design is below threshold.
    pub fn configure(&mut self, config: &LutConfig) -> Result<()> {
        if config.mode() != self.mode {
            return Err(Error::argument("table shape does not match the LUT mode"));
        }
        for index in 0..CELL_COUNT {
            let result = self.write_cell(index, config.bit(index))?;
            if result.write_error() {
                return Err(Error::domain(format!(
                    "cell {index} failed to switch within the write pulse"
                )));
            }
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.cells.len() {
            return Err(Error::argument(format!(
                "cell index {index} out of range 0..{}",
                self.cells.len()
            )));
        }
        Ok(())
    }

    pub fn write_cell(&mut self, index: usize, bit: bool) -> Result<AccessResult> {
        self.check_index(index)?;
        let ClutCircuit { cells, tech, flavor, .. } = self;
        cell_write(&mut cells[index], tech, *flavor, bit, tech.write_pulse)
    }

    pub fn read_node_voltage(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        cell_read_voltage(&self.cells[index], &self.tech, &self.pull_up, &self.pull_down)
    }

    /// Compares a node voltage against the sense threshold. Strictly above
    /// reads as 1; the threshold itself reads as 0.
    pub fn sense(&self, node_voltage: f64) -> bool {
        node_voltage > self.tech.sense_threshold()
    }

    pub fn read_cell(&self, index: usize) -> Result<AccessResult> {
        self.check_index(index)?;
        cell_read(&self.cells[index], &self.tech, &self.pull_up, &self.pull_down)
    }

    pub fn read_margin(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        let cell = &self.cells[index];
        Ok(read_margin_of(&cell.mtj.geometry, &cell.mtj.material, &self.tech))
    }

    /// Evaluates the stored function(s) for one input vector through the
    /// read path: select the addressed cell(s), read, sense.
    pub fn evaluate(&self, inputs: [bool; 6]) -> Result<EvalOutputs> {
        match self.mode {
            LutMode::Single6 => {
                let index = input_index(inputs);
                let out1 = self.read_cell(index)?.sensed.expect("read senses");
                Ok(EvalOutputs::Single6 { out1 })
            }
            LutMode::DualFive => {
                let index = half_input_index(inputs);
                let out0 = self.read_cell(index)?.sensed.expect("read senses");
                let out2 = self.read_cell(HALF_COUNT + index)?.sensed.expect("read senses");
                Ok(EvalOutputs::DualFive { out0, out2 })
            }
        }
    }

    /// Reads every cell back into a table of the circuit's shape.
    pub fn read_back_table(&self) -> Result<LutConfig> {
        let mut bits = [false; CELL_COUNT];
        for (index, slot) in bits.iter_mut().enumerate() {
            *slot = self.read_cell(index)?.sensed.expect("read senses");
        }
        let pack = |range: std::ops::Range<usize>| {
            bits[range.clone()]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
        };
        Ok(match self.mode {
            LutMode::Single6 => LutConfig::Single6(pack(0..CELL_COUNT)),
            LutMode::DualFive => LutConfig::DualFive {
                low: pack(0..HALF_COUNT) as u32,
                high: pack(HALF_COUNT..CELL_COUNT) as u32,
            },
        })
    }

    /// Removes and restores the supply. Junction states are resistive, not
    /// charge-based, so the stored table survives; the read-back after the
    /// cycle is returned for verification.
    pub fn power_cycle(&mut self) -> Result<LutConfig> {
        let saved = self.tech.supply_voltage;
        self.tech.supply_voltage = 0.0;
        // Nothing to do while dark: no node in the cell holds state
        // electrically.
        self.tech.supply_voltage = saved;
        self.read_back_table()
    }
}

/// Architectures in the comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Architecture {
    SramLut,
    SttClut,
    SheClut,
}

impl Architecture {
    pub fn label(&self) -> &'static str {
        match self {
            Architecture::SramLut => "sram_lut",
            Architecture::SttClut => "stt_clut",
            Architecture::SheClut => "she_clut",
        }
    }
}

/// Transistor and junction tallies for one architecture, in minimum-width
/// equivalents: a width-k device counts k times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeviceCount {
    pub storage_mos: u32,
    pub write_control_mos: u32,
    pub read_mos: u32,
    pub mtj_count: u32,
}

impl DeviceCount {
    pub fn total_mos(&self) -> u32 {
        self.storage_mos + self.write_control_mos + self.read_mos
    }
}

/// Per-architecture device tallies for a 64-entry LUT.
///
/// The junction LUTs store in 64 complementary pairs (128 junctions, no
/// storage transistors). Each cell has two write transmission gates of two
/// devices each, 64 x 2 x 2 = 256 gate devices; two-terminal writes size
/// them 4x minimum (1024 equivalents) while three-terminal writes use
/// minimum width (256). Both add 256 minimum-width write drivers. The read
/// network (cell read gates, select tree, pulls, sense stages) totals 267;
/// the SRAM reference uses 384 storage, 384 write and 261 read devices.
pub fn device_count(arch: Architecture) -> DeviceCount {
    match arch {
        Architecture::SramLut => DeviceCount {
            storage_mos: 384,
            write_control_mos: 384,
            read_mos: 261,
            mtj_count: 0,
        },
        Architecture::SttClut => DeviceCount {
            storage_mos: 0,
            write_control_mos: 1280,
            read_mos: 267,
            mtj_count: 128,
        },
        Architecture::SheClut => DeviceCount {
            storage_mos: 0,
            write_control_mos: 512,
            read_mos: 267,
            mtj_count: 128,
        },
    }
}

/// Standby power of one architecture, W: every transistor leaks in
/// proportion to its width; junctions do not leak.
pub fn standby_power(arch: Architecture, tech: &TechParams) -> f64 {
    let leak_per_width = match arch {
        Architecture::SramLut => tech.sram_leakage_per_width,
        _ => tech.mram_leakage_per_width,
    };
    device_count(arch).total_mos() as f64 * leak_per_width * tech.supply_voltage
}

/// One point of a piecewise-constant signal record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub time: f64,
    pub signal: &'static str,
    pub value: f64,
}

/// Event record of a configure-then-read scenario. Each signal is a
/// piecewise-constant series: a row states the value the signal takes from
/// that time until its next row.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
}

impl Trace {
    /// Rows of one signal in time order.
    pub fn series(&self, signal: &str) -> Vec<(f64, f64)> {
        self.rows.iter().filter(|r| r.signal == signal).map(|r| (r.time, r.value)).collect()
    }

    pub fn final_value(&self, signal: &str) -> Option<f64> {
        self.series(signal).last().map(|&(_, v)| v)
    }

    pub fn signals(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = self.rows.iter().map(|r| r.signal).collect();
        names.sort_unstable();
        names.dedup();
        names
    }

    /// CSV rows sorted by time then signal name.
    pub fn to_csv(&self) -> String {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.signal.cmp(b.signal)));
        let mut out = String::from("time_s,signal,value\n");
        for row in rows {
            out.push_str(&format!("{},{},{}\n", row.time, row.signal, row.value));
        }
        out
    }
}

/// What a transient trace exercises: program a table, then read one address.
#[derive(Debug, Clone)]
pub struct TraceScenario {
    pub config: LutConfig,
    pub inputs: [bool; 6],
    /// When false the read line never asserts and the outputs must hold
    /// their pre-read values.
    pub read_enabled: bool,
}

/// Runs the scenario against a freshly built LUT and records the control
/// lines (WWL, RWL, S5, S6), the addressed divider node(s) and the
/// output(s) as piecewise-constant series. The write word line is high for
/// the write pulse; the read line then asserts for the read window, and the
/// addressed node and output settle one read delay later.
pub fn transient_trace(
    design: &CellDesign,
    tech: &TechParams,
    scenario: &TraceScenario,
) -> Result<Trace> {
    let mode = scenario.config.mode();
    let mut circuit = ClutCircuit::build_unconfigured(design, tech, mode)?;
    let pulse = tech.write_pulse;
    let mut rows = Vec::new();

    // Write phase: WWL up, selects reflect the mode, outputs idle low.
    rows.push(TraceRow { time: 0.0, signal: "WWL", value: 1.0 });
    rows.push(TraceRow { time: 0.0, signal: "RWL", value: 0.0 });
    let dual = mode == LutMode::DualFive;
    rows.push(TraceRow { time: 0.0, signal: "S5", value: dual as u8 as f64 });
    rows.push(TraceRow { time: 0.0, signal: "S6", value: !dual as u8 as f64 });

    // Addressed cell(s) and their output/node signal names.
    let reads: Vec<(usize, &'static str, &'static str)> = match mode {
        LutMode::Single6 => vec![(input_index(scenario.inputs), "D", "OUT1")],
        LutMode::DualFive => {
            let index = half_input_index(scenario.inputs);
            vec![(index, "D0", "OUT0"), (HALF_COUNT + index, "D2", "OUT2")]
        }
    };

    for index in 0..CELL_COUNT {
        let result = circuit.write_cell(index, scenario.config.bit(index))?;
        if result.write_error() {
            return Err(Error::domain(format!(
                "cell {index} failed to switch within the write pulse"
            )));
        }
        for &(addressed, node, out) in &reads {
            if addressed == index {
                rows.push(TraceRow { time: 0.0, signal: node, value: result.node_voltage });
                rows.push(TraceRow { time: 0.0, signal: out, value: 0.0 });
            }
        }
    }

    rows.push(TraceRow { time: pulse, signal: "WWL", value: 0.0 });
    if scenario.read_enabled {
        rows.push(TraceRow { time: pulse, signal: "RWL", value: 1.0 });
        for &(index, node, out) in &reads {
            let read = circuit.read_cell(index)?;
            let settle = pulse + read.delay;
            rows.push(TraceRow { time: settle, signal: node, value: read.node_voltage });
            rows.push(TraceRow {
                time: settle,
                signal: out,
                value: read.sensed.expect("read senses") as u8 as f64,
            });
        }
        rows.push(TraceRow { time: pulse + tech.read_window, signal: "RWL", value: 0.0 });
    }
    Ok(Trace { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{calibrate_dynamics, CalibrationTargets};
    use proptest::prelude::*;

    fn geometry() -> MtjGeometry {
        MtjGeometry {
            length_nm: 60.0,
            width_nm: 30.0,
            free_layer_thickness_nm: 1.3,
            oxide_thickness_nm: 1.0,
        }
    }

    /// Solves the electrical operating point the same way calibration does,
    /// but independently: supply from the write power and current, junction
    /// RA from the write loop, pulls from the read current, channel
    /// resistivity from the three-terminal write energy, swing factors from
    /// the target read delays.
    fn fixture() -> (CellDesign, CellDesign, TechParams) {
        let geometry = geometry();
        let seed = MtjMaterial {
            saturation_magnetization: 1.5e5,
            gilbert_damping: 0.02,
            tmr_ratio: 1.0,
            ra_product: 9.0,
            spin_polarization: 0.6,
            uniaxial_anisotropy_field: 1.0e6,
            polarization_asymmetry: 0.9,
            initial_cant_angle_deg: 5.0,
        };
        let targets = CalibrationTargets::default();
        let fit = calibrate_dynamics(&geometry, &seed, &targets).expect("calibration");
        let mut material = fit.material;

        let vdd = 81.18e-6 / 71.13e-6;
        let tg = 2000.0;
        let r_total = vdd / targets.write_current;
        let r_p = (r_total - 2.0 * tg / 4.0) / 3.0;
        material.ra_product = r_p * geometry.area_um2();
        let r_pull = (vdd / targets.read_current - 3.0 * r_p) / 2.0;

        let i_she = 175.5e-15 / (vdd * targets.pulse_duration);
        let r_channel = (vdd / i_she - 2.0 * tg) / 2.0;
        let channel_w = 60.0e-9;
        let channel_t = 1.2e-9;
        let channel_l = 260.0e-9;
        let channel = SheChannel {
            length_nm: 260.0,
            width_nm: 60.0,
            thickness_nm: 1.2,
            spin_hall_angle: 0.3,
            resistivity: r_channel * channel_w * channel_t / channel_l,
        };

        let r_ap = 2.0 * r_p;
        let top = r_pull + r_p;
        let bottom = r_ap + r_pull;
        let r_thevenin = tg + top * bottom / (top + bottom);
        let cap = 2.0e-15;
        let tau = r_thevenin * cap;

        let tech = TechParams {
            node: "45nm".to_string(),
            supply_voltage: vdd,
            write_pulse: targets.pulse_duration,
            read_window: 0.5e-9,
            nominal_vth: 0.4,
            tg_on_resistance: tg,
            read_pull_on_resistance: r_pull,
            stt_write_tg_width: 4.0,
            she_write_tg_width: 1.0,
            sense_node_capacitance: cap,
            read_swing_low: 20.0e-12 / tau,
            read_swing_high: 60.0e-12 / tau,
            mram_leakage_per_width: 0.31e-6 / (1547.0 * vdd),
            sram_leakage_per_width: 1.67e-6 / (1029.0 * vdd),
            sense_threshold_fraction: 0.5,
        };
        let stt = CellDesign::new(geometry, material, None, LutFlavor::Stt).unwrap();
        let she =
            CellDesign::new(geometry, material, Some(channel), LutFlavor::She).unwrap();
        (stt, she, tech)
    }

    #[test]
    fn config_hex_round_trips() {
        let single = LutConfig::parse("FFFFFFFFFFFFFFFE", LutMode::Single6).unwrap();
        assert_eq!(single, LutConfig::Single6(0xFFFF_FFFF_FFFF_FFFE));
        assert_eq!(single.to_hex(), "FFFFFFFFFFFFFFFE");
        assert!(!single.bit(0));
        assert!(single.bit(1) && single.bit(63));

        let dual = LutConfig::parse("0000ffff,80000001", LutMode::DualFive).unwrap();
        assert_eq!(dual, LutConfig::DualFive { low: 0xFFFF, high: 0x8000_0001 });
        assert_eq!(dual.to_hex(), "0000FFFF,80000001");
        assert!(dual.bit(0) && dual.bit(15) && !dual.bit(16));
        assert!(dual.bit(32) && !dual.bit(33) && dual.bit(63));
    }

    #[test]
    fn config_parse_rejects_malformed_text() {
        assert!(LutConfig::parse("123", LutMode::Single6).is_err());
        assert!(LutConfig::parse("123456789ABCDEFG", LutMode::Single6).is_err());
        assert!(LutConfig::parse("0011223344556677", LutMode::DualFive).is_err());
        assert!(LutConfig::parse("0011223,44556677", LutMode::DualFive).is_err());
        assert!(LutFlavor::parse("sot").is_err());
        assert!(LutMode::parse("triple").is_err());
        assert!(parse_inputs("01201x").is_err());
        assert!(parse_inputs("10110").is_err());
    }

    #[test]
    fn input_indexing_is_msb_first() {
        assert_eq!(input_index(parse_inputs("000000").unwrap()), 0);
        assert_eq!(input_index(parse_inputs("111111").unwrap()), 63);
        assert_eq!(input_index(parse_inputs("100000").unwrap()), 32);
        assert_eq!(input_index(parse_inputs("000001").unwrap()), 1);
        assert_eq!(half_input_index(parse_inputs("100000").unwrap()), 16);
        assert_eq!(half_input_index(parse_inputs("000010").unwrap()), 1);
        assert_eq!(half_input_index(parse_inputs("000001").unwrap()), 0);
    }

    #[test]
    fn divider_matches_chain_solution() {
        // Independent check: solve the five-element chain by Ohm's law from
        // the supply side instead of the bottom-ratio form.
        let (stt, _, tech) = fixture();
        let cell = stt.build_cell(&tech);
        let pu = pull_transistor(&tech);
        let pd = pull_transistor(&tech);
        let v = cell_read_voltage(&cell, &tech, &pu, &pd).unwrap();
        let r_up = tech.read_pull_on_resistance + cell.mtj.resistance();
        let r_dn = cell.mtj_complement.resistance() + tech.read_pull_on_resistance;
        let i = tech.supply_voltage / (r_up + r_dn);
        let oracle = tech.supply_voltage - i * r_up;
        assert!((v - oracle).abs() <= 1e-9 * oracle.abs().max(1.0), "{v} vs {oracle}");
    }

    #[test]
    fn stt_write_read_cycle_matches_operating_point() {
        let (stt, _, tech) = fixture();
        let config = LutConfig::Single6(0);
        let mut lut = ClutCircuit::build(&stt, &tech, &config).unwrap();

        // Fresh cells already store 0, so configuring with zeros moved
        // nothing.
        let r = lut.write_cell(7, false).unwrap();
        assert_eq!(
            r.events.unwrap(),
            WriteOutcome { primary: SwitchEvent::AlreadySet, complement: SwitchEvent::AlreadySet }
        );

        // Writing 1 flips both junctions within the pulse.
        let w = lut.write_cell(7, true).unwrap();
        let events = w.events.unwrap();
        let tp = events.primary.time().expect("primary switches");
        let tc = events.complement.time().expect("complement switches");
        assert!(!w.write_error());
        // Antiparallel-to-parallel is the easy direction; the complement
        // going parallel-to-antiparallel sets the write time.
        assert!(tp < tc, "{tp} vs {tc}");
        assert!(tc < tech.write_pulse);
        assert!((w.current - 71.13e-6).abs() / 71.13e-6 < 1e-6, "{}", w.current);
        assert!((w.energy - 162.36e-15).abs() / 162.36e-15 < 1e-6, "{}", w.energy);
        assert_eq!(lut.cells[7].stored_bit(), Some(true));

        let read = lut.read_cell(7).unwrap();
        assert_eq!(read.sensed, Some(true));
        assert!((read.current - 38.21e-6).abs() / 38.21e-6 < 1e-6, "{}", read.current);
        assert!(read.node_voltage > tech.sense_threshold());

        // And back to 0.
        let w0 = lut.write_cell(7, false).unwrap();
        assert!(!w0.write_error());
        assert_eq!(lut.cells[7].stored_bit(), Some(false));
        assert_eq!(lut.read_cell(7).unwrap().sensed, Some(false));
    }

    #[test]
    fn she_write_is_fast_and_hits_target_energy() {
        let (_, she, tech) = fixture();
        let mut lut = ClutCircuit::build(&she, &tech, &LutConfig::Single6(0)).unwrap();
        let w = lut.write_cell(3, true).unwrap();
        let events = w.events.unwrap();
        assert!(!w.write_error());
        // The channel gain makes the overdrive huge; both junctions flip in
        // well under a tenth of the pulse.
        assert!(events.primary.time().unwrap() < 0.1e-9);
        assert!(events.complement.time().unwrap() < 0.1e-9);
        assert!((w.energy - 175.5e-15).abs() / 175.5e-15 < 1e-6, "{}", w.energy);
        assert_eq!(lut.read_cell(3).unwrap().sensed, Some(true));
    }

    #[test]
    fn read_delays_hit_targets_and_average() {
        let (stt, _, tech) = fixture();
        let mut lut = ClutCircuit::build(&stt, &tech, &LutConfig::Single6(0)).unwrap();
        lut.write_cell(1, true).unwrap();
        let d0 = lut.read_cell(0).unwrap().delay;
        let d1 = lut.read_cell(1).unwrap().delay;
        assert!((d0 - 20e-12).abs() / 20e-12 < 1e-9, "{d0}");
        assert!((d1 - 60e-12).abs() / 60e-12 < 1e-9, "{d1}");
        assert!((0.5 * (d0 + d1) - 40e-12).abs() / 40e-12 < 1e-9);
    }

    #[test]
    fn read_never_disturbs_at_nominal() {
        let (stt, she, tech) = fixture();
        for design in [&stt, &she] {
            let mut lut = ClutCircuit::build(design, &tech, &LutConfig::Single6(0)).unwrap();
            lut.write_cell(5, true).unwrap();
            for index in [0, 5] {
                let cell = &lut.cells[index];
                assert!(
                    !read_disturbs(cell, &tech, &lut.pull_up, &lut.pull_down).unwrap(),
                    "read must stay below every critical current"
                );
            }
        }
    }

    #[test]
    fn read_margin_matches_resistor_algebra() {
        let (stt, _, tech) = fixture();
        let lut = ClutCircuit::build(&stt, &tech, &LutConfig::Single6(0)).unwrap();
        let margin = lut.read_margin(9).unwrap();
        let cell = &lut.cells[9];
        let r_p = cell.mtj.material.ra_product / cell.mtj.geometry.area_um2();
        let total = 3.0 * r_p + 2.0 * tech.read_pull_on_resistance;
        let oracle = tech.supply_voltage * r_p / total;
        assert!((margin - oracle).abs() / oracle < 1e-12);
        // A wide margin: more than a seventh of the supply.
        assert!(margin > tech.supply_voltage / 7.0);
    }

    #[test]
    fn dual_margin_at_least_twice_single_ended() {
        let (stt, _, tech) = fixture();
        let dual = complementary_sense_margin(&stt.geometry, &stt.material, &tech);
        let single = single_ended_sense_margin(&stt.geometry, &stt.material, &tech);
        assert!(dual >= 2.0 * single - 1e-15, "{dual} vs {single}");
    }

    #[test]
    fn device_counts_match_architecture_tallies() {
        let sram = device_count(Architecture::SramLut);
        assert_eq!((sram.storage_mos, sram.write_control_mos, sram.read_mos), (384, 384, 261));
        assert_eq!(sram.total_mos(), 1029);
        assert_eq!(sram.mtj_count, 0);

        let stt = device_count(Architecture::SttClut);
        assert_eq!((stt.storage_mos, stt.write_control_mos, stt.read_mos), (0, 1280, 267));
        assert_eq!(stt.total_mos(), 1547);
        assert_eq!(stt.mtj_count, 128);

        let she = device_count(Architecture::SheClut);
        assert_eq!((she.storage_mos, she.write_control_mos, she.read_mos), (0, 512, 267));
        assert_eq!(she.total_mos(), 779);
        assert_eq!(she.mtj_count, 128);
    }

    #[test]
    fn standby_power_scales_with_width_total() {
        let (_, _, tech) = fixture();
        let p_sram = standby_power(Architecture::SramLut, &tech);
        let p_stt = standby_power(Architecture::SttClut, &tech);
        let p_she = standby_power(Architecture::SheClut, &tech);
        assert!((p_sram - 1.67e-6).abs() / 1.67e-6 < 1e-9);
        assert!((p_stt - 0.31e-6).abs() / 0.31e-6 < 1e-9);
        // Same leakage per width, fewer width equivalents.
        assert!((p_she / p_stt - 779.0 / 1547.0).abs() < 1e-12);
    }

    #[test]
    fn nonvolatile_across_power_cycle() {
        let (stt, _, tech) = fixture();
        let config = LutConfig::Single6(0xDEAD_BEEF_0BAD_F00D);
        let mut lut = ClutCircuit::build(&stt, &tech, &config).unwrap();
        let after = lut.power_cycle().unwrap();
        assert_eq!(after, config);
    }

    #[test]
    fn evaluate_or_function() {
        let (stt, _, tech) = fixture();
        // OR of six inputs: every cell except 0 holds 1.
        let config = LutConfig::parse("FFFFFFFFFFFFFFFE", LutMode::Single6).unwrap();
        let lut = ClutCircuit::build(&stt, &tech, &config).unwrap();
        let zero = lut.evaluate(parse_inputs("000000").unwrap()).unwrap();
        assert_eq!(zero, EvalOutputs::Single6 { out1: false });
        for text in ["000001", "100000", "111111", "010101"] {
            let out = lut.evaluate(parse_inputs(text).unwrap()).unwrap();
            assert_eq!(out, EvalOutputs::Single6 { out1: true }, "inputs {text}");
        }
    }

    #[test]
    fn trace_settles_within_read_delay() {
        let (stt, _, tech) = fixture();
        let scenario = TraceScenario {
            config: LutConfig::Single6(1 << 63),
            inputs: parse_inputs("111111").unwrap(),
            read_enabled: true,
        };
        let trace = transient_trace(&stt, &tech, &scenario).unwrap();
        // Signals are piecewise series with strictly increasing times.
        for signal in trace.signals() {
            let series = trace.series(signal);
            assert!(!series.is_empty());
            for pair in series.windows(2) {
                assert!(pair[0].0 < pair[1].0, "{signal} times must increase");
            }
        }
        assert_eq!(trace.series("WWL"), vec![(0.0, 1.0), (tech.write_pulse, 0.0)]);
        let rwl = trace.series("RWL");
        assert_eq!(rwl[1], (tech.write_pulse, 1.0));
        // OUT1 reaches the stored 1 within one read delay of RWL.
        let out = trace.series("OUT1");
        assert_eq!(out[0], (0.0, 0.0));
        let (t_settle, v) = out[1];
        assert_eq!(v, 1.0);
        assert!(t_settle <= tech.write_pulse + 60e-12 * (1.0 + 1e-9));
        // The node lands above the threshold.
        assert!(trace.final_value("D").unwrap() > tech.sense_threshold());
        // CSV shape.
        let csv = trace.to_csv();
        assert!(csv.starts_with("time_s,signal,value\n"));
        assert_eq!(csv.lines().count(), 1 + trace.rows.len());
    }

    #[test]
    fn trace_without_read_holds_outputs() {
        let (stt, _, tech) = fixture();
        let scenario = TraceScenario {
            config: LutConfig::Single6(u64::MAX),
            inputs: parse_inputs("000000").unwrap(),
            read_enabled: false,
        };
        let trace = transient_trace(&stt, &tech, &scenario).unwrap();
        assert_eq!(trace.series("RWL"), vec![(0.0, 0.0)]);
        assert_eq!(trace.series("OUT1"), vec![(0.0, 0.0)]);
        assert_eq!(trace.series("D").len(), 1);
    }

    #[test]
    fn dual_trace_reads_both_halves() {
        let (stt, _, tech) = fixture();
        let scenario = TraceScenario {
            config: LutConfig::DualFive { low: 1, high: 0 },
            inputs: parse_inputs("000000").unwrap(),
            read_enabled: true,
        };
        let trace = transient_trace(&stt, &tech, &scenario).unwrap();
        assert_eq!(trace.final_value("OUT0"), Some(1.0));
        assert_eq!(trace.final_value("OUT2"), Some(0.0));
        assert_eq!(trace.final_value("S5"), Some(1.0));
        assert_eq!(trace.final_value("S6"), Some(0.0));
    }

    #[test]
    fn out_of_range_and_mode_mismatch_rejected() {
        let (stt, _, tech) = fixture();
        let mut lut = ClutCircuit::build(&stt, &tech, &LutConfig::Single6(0)).unwrap();
        assert!(lut.write_cell(64, true).is_err());
        assert!(lut.read_cell(64).is_err());
        assert!(lut.configure(&LutConfig::DualFive { low: 0, high: 0 }).is_err());
    }

    proptest! {
        #[test]
        fn evaluate_matches_table_lookup(table: u64, index in 0usize..64) {
            let (stt, _, tech) = fixture();
            let config = LutConfig::Single6(table);
            let lut = ClutCircuit::build(&stt, &tech, &config).unwrap();
            let mut inputs = [false; 6];
            for k in 0..6 {
                inputs[k] = (index >> (5 - k)) & 1 == 1;
            }
            let expect = (table >> index) & 1 == 1;
            prop_assert_eq!(lut.evaluate(inputs).unwrap(), EvalOutputs::Single6 { out1: expect });
        }

        #[test]
        fn dual_evaluate_matches_half_tables(low: u32, high: u32, index in 0usize..32, f: bool) {
            let (stt, _, tech) = fixture();
            let config = LutConfig::DualFive { low, high };
            let lut = ClutCircuit::build(&stt, &tech, &config).unwrap();
            let mut inputs = [false; 6];
            for k in 0..5 {
                inputs[k] = (index >> (4 - k)) & 1 == 1;
            }
            inputs[5] = f; // ignored by the fractured mode
            let out = lut.evaluate(inputs).unwrap();
            let expect = EvalOutputs::DualFive {
                out0: (low >> index) & 1 == 1,
                out2: (high >> index) & 1 == 1,
            };
            prop_assert_eq!(out, expect);
        }

        #[test]
        fn cells_stay_complementary_over_write_sequences(
            table: u64,
            writes in proptest::collection::vec((0usize..64, proptest::bool::ANY), 0..20),
        ) {
            let (stt, _, tech) = fixture();
            let mut lut = ClutCircuit::build(&stt, &tech, &LutConfig::Single6(table)).unwrap();
            for (index, bit) in writes {
                let result = lut.write_cell(index, bit).unwrap();
                prop_assert!(!result.write_error());
                prop_assert_eq!(lut.cells[index].stored_bit(), Some(bit));
            }
            for cell in &lut.cells {
                prop_assert!(cell.is_complementary());
            }
        }

        #[test]
        fn margin_comparison_holds_everywhere(
            tmr in 0.05f64..3.0,
            ra in 1.0f64..40.0,
            pull in 500.0f64..30000.0,
        ) {
            let (stt, _, mut tech) = fixture();
            let mut material = stt.material;
            material.tmr_ratio = tmr;
            material.ra_product = ra;
            tech.read_pull_on_resistance = pull;
            let dual = complementary_sense_margin(&stt.geometry, &material, &tech);
            let single = single_ended_sense_margin(&stt.geometry, &material, &tech);
            prop_assert!(dual >= 2.0 * single - 1e-12, "{} vs {}", dual, single);
        }
    }
}
