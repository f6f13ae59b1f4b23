//! Magnetization dynamics of the free layer.
//!
//! The model is a single-domain (macrospin) moment with a uniaxial easy axis
//! along z and a damping-like spin torque, integrated in the explicit
//! Landau-Lifshitz form:
//!
//! ```text
//! dm/dt = -g'/(1+a^2) [ m x H  +  a m x (m x H)  -  aj m x (m x z)  +  a aj (m x z) ]
//! ```
//!
//! with `H = Hk mz z`, Gilbert damping `a`, reduced gyromagnetic ratio
//! `g' = gamma mu0`, and spin-torque field amplitude `aj` (A/m, positive
//! driving toward the antiparallel pole). The `a aj (m x z)` term is the
//! algebraic byproduct of converting the Gilbert form to the explicit form,
//! not an added field-like torque; the torque itself is purely damping-like.
//!
//! Because the effective field and the torque polarization are both along z,
//! the polar angle decouples from the precession:
//!
//! ```text
//! d(theta)/dt = g'/(1+a^2) sin(theta) (aj - a Hk cos(theta))
//! ```
//!
//! which integrates in closed form. [`switching_time`] uses that closed form;
//! [`integrate_llg`] integrates the full vector equation and exists to
//! cross-check it and to produce inspectable trajectories. The two agree to
//! integration accuracy because the decoupling is exact, not approximate.

use crate::device::{
    she_critical_current, stt_critical_current, MtjGeometry, MtjMaterial, MtjState, SheChannel,
    ELEMENTARY_CHARGE, GYROMAGNETIC_RATIO, HBAR, MU0,
};
use crate::error::{Error, Result};

/// Reduced gyromagnetic ratio gamma * mu0, m/(A*s).
pub const GAMMA_PRIME: f64 = GYROMAGNETIC_RATIO * MU0;

/// How the charge current exerts torque on the free layer.
#[derive(Debug, Clone, PartialEq)]
pub enum TorqueMechanism {
    /// Two-terminal stack: the tunnel current itself is spin-polarized.
    SpinTransfer,
    /// Three-terminal stack: charge current through the heavy-metal channel
    /// injects a transverse spin current into the free layer.
    SpinHall(SheChannel),
}

/// A current pulse applied to one junction.
#[derive(Debug, Clone, PartialEq)]
pub struct TorqueDrive {
    pub mechanism: TorqueMechanism,
    /// Signed charge current, A. Positive drives the free layer toward the
    /// antiparallel pole.
    pub charge_current: f64,
    /// Pulse length, s. Torque acts only inside the pulse.
    pub pulse_duration: f64,
}

impl TorqueDrive {
    pub fn stt(charge_current: f64, pulse_duration: f64) -> Self {
        TorqueDrive { mechanism: TorqueMechanism::SpinTransfer, charge_current, pulse_duration }
    }

    pub fn she(channel: SheChannel, charge_current: f64, pulse_duration: f64) -> Self {
        TorqueDrive { mechanism: TorqueMechanism::SpinHall(channel), charge_current, pulse_duration }
    }

    /// Critical charge current of this mechanism for the transition out of
    /// `from`, A.
    pub fn critical_current(&self, geometry: &MtjGeometry, material: &MtjMaterial, from: MtjState) -> f64 {
        match &self.mechanism {
            TorqueMechanism::SpinTransfer => {
                stt_critical_current(geometry, material, from == MtjState::Parallel)
            }
            TorqueMechanism::SpinHall(ch) => she_critical_current(geometry, material, ch),
        }
    }
}

/// Signed spin-torque field amplitude, A/m. Positive drives toward the
/// antiparallel pole. The P->AP direction of a tunnel-current drive is
/// penalized by the polarization asymmetry factor.
pub fn spin_torque_field(geometry: &MtjGeometry, material: &MtjMaterial, drive: &TorqueDrive) -> f64 {
    let efficiency = match &drive.mechanism {
        TorqueMechanism::SpinTransfer => {
            let mut e = material.spin_polarization;
            if drive.charge_current > 0.0 {
                e *= material.polarization_asymmetry;
            }
            e
        }
        TorqueMechanism::SpinHall(ch) => ch.spin_gain(geometry),
    };
    HBAR * efficiency * drive.charge_current
        / (2.0 * ELEMENTARY_CHARGE * MU0 * material.saturation_magnetization * geometry.volume_m3())
}

/// Unit magnetization canted by the material's initial angle off the easy
/// axis, in the x-z plane. Thermal agitation keeps a real moment off the
/// exact pole; the deterministic model needs the same offset or the torque
/// would sit on a stationary point forever.
pub fn initial_moment(material: &MtjMaterial, from: MtjState) -> [f64; 3] {
    let theta = material.initial_cant_angle_deg.to_radians();
    [theta.sin(), 0.0, theta.cos() * from.mz()]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchingOutcome {
    /// The moment crossed the equator at this time, s; the transition then
    /// completes regardless of when the pulse ends.
    Switched(f64),
    /// No equator crossing within the pulse; the moment relaxes back.
    NoSwitch,
}

impl SwitchingOutcome {
    pub fn time(&self) -> Option<f64> {
        match self {
            SwitchingOutcome::Switched(t) => Some(*t),
            SwitchingOutcome::NoSwitch => None,
        }
    }

    pub fn switched(&self) -> bool {
        matches!(self, SwitchingOutcome::Switched(_))
    }
}

/// A sampled magnetization trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Sample times, s, strictly increasing, starting at 0.
    pub times: Vec<f64>,
    /// Unit magnetization at each sample.
    pub moments: Vec<[f64; 3]>,
    /// First time mz crossed zero (linear interpolation between samples).
    pub switching_event: Option<f64>,
}

impl Trajectory {
    /// Final magnetization state by the sign of mz.
    pub fn final_state(&self) -> MtjState {
        MtjState::from_mz(self.moments.last().expect("trajectory is never empty")[2])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("time_s,mx,my,mz\n");
        for (t, m) in self.times.iter().zip(&self.moments) {
            out.push_str(&format!("{},{},{},{}\n", t, m[0], m[1], m[2]));
        }
        out
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Right-hand side of the explicit Landau-Lifshitz equation with a
/// damping-like torque of amplitude `aj` (A/m, positive toward -z).
fn llg_rhs(m: [f64; 3], hk: f64, alpha: f64, aj: f64) -> [f64; 3] {
    let h = [0.0, 0.0, hk * m[2]];
    let m_x_h = cross(m, h);
    let m_x_m_x_h = cross(m, m_x_h);
    let m_x_z = cross(m, [0.0, 0.0, 1.0]);
    let m_x_m_x_z = cross(m, m_x_z);
    let k = GAMMA_PRIME / (1.0 + alpha * alpha);
    let mut out = [0.0; 3];
    for d in 0..3 {
        out[d] = -k
            * (m_x_h[d] + alpha * m_x_m_x_h[d] - aj * m_x_m_x_z[d] + alpha * aj * m_x_z[d]);
    }
    out
}

/// Integrates the vector LLG equation with fixed-step RK4, renormalizing the
/// moment each step. Torque acts while t < pulse_duration; the moment relaxes
/// freely for the remainder of `t_max`. Records the first mz zero crossing.
pub fn integrate_llg(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    drive: &TorqueDrive,
    initial: [f64; 3],
    dt: f64,
    t_max: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::argument(format!("dt must be positive and finite, got {dt}")));
    }
    if dt >= t_max {
        return Err(Error::argument(format!("dt = {dt} must be smaller than t_max = {t_max}")));
    }
    if (norm(initial) - 1.0).abs() > 1e-6 {
        return Err(Error::argument(format!(
            "initial magnetization must be a unit vector, |m| = {}",
            norm(initial)
        )));
    }
    material.validate()?;
    let hk = material.uniaxial_anisotropy_field;
    let alpha = material.gilbert_damping;
    let aj_on = spin_torque_field(geometry, material, drive);

    let steps = (t_max / dt).ceil() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut moments = Vec::with_capacity(steps + 1);
    let mut m = initial;
    times.push(0.0);
    moments.push(m);
    let mut switching_event = None;

    for step in 0..steps {
        let t = step as f64 * dt;
        let aj = if t < drive.pulse_duration { aj_on } else { 0.0 };
        let k1 = llg_rhs(m, hk, alpha, aj);
        let k2 = llg_rhs(advance(m, k1, dt / 2.0), hk, alpha, aj);
        let k3 = llg_rhs(advance(m, k2, dt / 2.0), hk, alpha, aj);
        let k4 = llg_rhs(advance(m, k3, dt), hk, alpha, aj);
        let prev_mz = m[2];
        for d in 0..3 {
            m[d] += dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        }
        let n = norm(m);
        for d in 0..3 {
            m[d] /= n;
        }
        let t_next = (step + 1) as f64 * dt;
        if switching_event.is_none() && prev_mz != 0.0 && (prev_mz > 0.0) != (m[2] > 0.0) {
            switching_event = Some(t + dt * prev_mz / (prev_mz - m[2]));
        }
        times.push(t_next);
        moments.push(m);
    }

    Ok(Trajectory { times, moments, switching_event })
}

fn advance(m: [f64; 3], k: [f64; 3], h: f64) -> [f64; 3] {
    [m[0] + h * k[0], m[1] + h * k[1], m[2] + h * k[2]]
}

/// Closed-form time for cos(theta) to fall from c0 to 0 under
/// d(theta)/dt = k sin(theta) (a - b cos(theta)) with overdrive i = a/b > 1,
/// in units of 1/(k b): the integral of dc / ((1-c^2)(i-c)) from 0 to c0.
fn equator_crossing_integral(i: f64, c0: f64) -> f64 {
    debug_assert!(i > c0 && (0.0..1.0).contains(&c0));
    if (i - 1.0).abs() < 1e-9 {
        // Double pole at c = 1: 1/((1-c)^2 (1+c)).
        return 0.5 / (1.0 - c0) - 0.5 + 0.25 * ((1.0 + c0) / (1.0 - c0)).ln();
    }
    let a = 1.0 / (2.0 * (i - 1.0));
    let b = 1.0 / (2.0 * (i + 1.0));
    let c = -1.0 / ((i - 1.0) * (i + 1.0));
    -a * (1.0 - c0).ln() + b * (1.0 + c0).ln() - c * ((i - c0) / i).ln()
}

/// Time for the moment to cross the equator under the given drive, starting
/// canted off the `from` pole, or [`SwitchingOutcome::NoSwitch`] if the drive
/// points the wrong way, is at or below the critical current, or the crossing
/// lands beyond the pulse (the moment then relaxes back to `from`).
///
/// Drives at or below the critical current are classified as non-switching
/// for any pulse length: the polar flow stagnates at cos(theta) = i before
/// reaching the equator. (For i inside the sliver (cos(theta0), 1] the
/// zero-temperature flow would technically creep across after tens to
/// thousands of nanoseconds; the model rounds that regime to NoSwitch, which
/// is indistinguishable at any practical pulse length.)
pub fn switching_time(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    drive: &TorqueDrive,
    from: MtjState,
) -> SwitchingOutcome {
    let aj = spin_torque_field(geometry, material, drive);
    // Leaving P needs torque toward -z (aj > 0); leaving AP the opposite.
    let outward = match from {
        MtjState::Parallel => aj,
        MtjState::AntiParallel => -aj,
    };
    if outward <= 0.0 {
        return SwitchingOutcome::NoSwitch;
    }
    let beta = material.gilbert_damping * material.uniaxial_anisotropy_field;
    let overdrive = outward / beta;
    if overdrive <= 1.0 {
        return SwitchingOutcome::NoSwitch;
    }
    let c0 = material.initial_cant_angle_deg.to_radians().cos();
    let alpha = material.gilbert_damping;
    let t = (1.0 + alpha * alpha) / (GAMMA_PRIME * beta) * equator_crossing_integral(overdrive, c0);
    if t <= drive.pulse_duration {
        SwitchingOutcome::Switched(t)
    } else {
        SwitchingOutcome::NoSwitch
    }
}

/// Targets for fitting the free device parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationTargets {
    /// Parallel-to-antiparallel switching time at the write current, s.
    pub t_p_ap: f64,
    /// Antiparallel-to-parallel switching time at the write current, s.
    pub t_ap_p: f64,
    /// Write current magnitude, A.
    pub write_current: f64,
    /// Read current magnitude, A; must disturb nothing.
    pub read_current: f64,
    /// Write pulse length, s; both times must fit inside it.
    pub pulse_duration: f64,
}

impl Default for CalibrationTargets {
    fn default() -> Self {
        CalibrationTargets {
            t_p_ap: 1.63e-9,
            t_ap_p: 1.13e-9,
            write_current: 71.13e-6,
            read_current: 38.21e-6,
            pulse_duration: 2.0e-9,
        }
    }
}

/// Outcome of [`calibrate_dynamics`]: the fitted material plus every
/// diagnostic needed to audit the fit.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    /// Template material with the fitted anisotropy field and polarization
    /// asymmetry filled in.
    pub material: MtjMaterial,
    /// Write-current overdrive (I / Ic0) for each transition.
    pub overdrive_ap_p: f64,
    pub overdrive_p_ap: f64,
    /// Closed-form switching times of the fitted device at the write current.
    pub closed_form_t_p_ap: f64,
    pub closed_form_t_ap_p: f64,
    /// The same two times from the vector LLG integrator at 1 ps steps.
    pub llg_t_p_ap: f64,
    pub llg_t_ap_p: f64,
    /// Critical currents of the fitted device, A.
    pub critical_current_ap_p: f64,
    pub critical_current_p_ap: f64,
    /// Read current as a fraction of the smaller critical current; < 1 means
    /// the read can never switch a cell no matter how long it lasts.
    pub read_overdrive: f64,
    /// Worst relative error of the closed-form times against the targets.
    pub residual: f64,
}

/// Fits the anisotropy field (on the AP->P time) and the polarization
/// asymmetry (on the P->AP time) so a tunnel-current drive at the target
/// write current reproduces both target times, then cross-checks with the
/// vector integrator and verifies the read current cannot disturb.
///
/// Both fits are nested bisections of strictly monotone maps, so the result
/// is deterministic; no randomness is involved anywhere.
pub fn calibrate_dynamics(
    geometry: &MtjGeometry,
    template: &MtjMaterial,
    targets: &CalibrationTargets,
) -> Result<CalibrationReport> {
    geometry.validate()?;
    for (name, v) in [
        ("t_p_ap", targets.t_p_ap),
        ("t_ap_p", targets.t_ap_p),
        ("write_current", targets.write_current),
        ("read_current", targets.read_current),
        ("pulse_duration", targets.pulse_duration),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::argument(format!("target {name} must be positive, got {v}")));
        }
    }
    if targets.t_p_ap < targets.t_ap_p {
        return Err(Error::argument(
            "P->AP must be the slower transition (t_p_ap >= t_ap_p)",
        ));
    }
    let infeasible = |message: String, residual: f64| Error::Calibration { message, residual };
    if targets.write_current <= targets.read_current {
        return Err(infeasible(
            "write current must exceed read current; no critical current can separate them"
                .into(),
            f64::INFINITY,
        ));
    }
    if targets.t_p_ap > targets.pulse_duration {
        return Err(infeasible(
            format!(
                "target switching time {} s does not fit in the write pulse {} s",
                targets.t_p_ap, targets.pulse_duration
            ),
            f64::INFINITY,
        ));
    }

    let alpha = template.gilbert_damping;
    let c0 = template.initial_cant_angle_deg.to_radians().cos();
    // Torque field per the full write current with base (AP->P) efficiency;
    // independent of the anisotropy being fitted.
    let a_base = HBAR * template.spin_polarization * targets.write_current
        / (2.0 * ELEMENTARY_CHARGE
            * MU0
            * template.saturation_magnetization
            * geometry.volume_m3());

    // t(i) = (1+alpha^2)/(gamma' a_base) * i * J(i): strictly decreasing in i,
    // with the ballistic floor (1/2) ln((1+c0)/(1-c0)) as i -> inf.
    let time_scale = (1.0 + alpha * alpha) / (GAMMA_PRIME * a_base);
    let f = |i: f64| i * equator_crossing_integral(i, c0);
    let f_target = targets.t_ap_p / time_scale;
    let f_floor = 0.5 * ((1.0 + c0) / (1.0 - c0)).ln();
    if f_target <= f_floor {
        return Err(infeasible(
            format!(
                "AP->P target {} s is below the ballistic limit {} s at this current",
                targets.t_ap_p,
                f_floor * time_scale
            ),
            (targets.t_ap_p - f_floor * time_scale).abs() / targets.t_ap_p,
        ));
    }
    let i_base = bisect_decreasing(&f, f_target, 1.0 + 1e-12)?;
    let anisotropy_field = a_base / (alpha * i_base);

    // With Hk fixed, the P->AP time depends only on its own overdrive:
    // t = (1+alpha^2) J(i) / (gamma' alpha Hk), J strictly decreasing.
    let j = |i: f64| equator_crossing_integral(i, c0);
    let j_target = targets.t_p_ap * GAMMA_PRIME * alpha * anisotropy_field / (1.0 + alpha * alpha);
    let i_p_ap = if targets.t_p_ap == targets.t_ap_p {
        i_base
    } else {
        bisect_decreasing(&j, j_target, 1.0 + 1e-12)?
    };
    let asymmetry = (i_p_ap / i_base).min(1.0);

    let material = MtjMaterial {
        uniaxial_anisotropy_field: anisotropy_field,
        polarization_asymmetry: asymmetry,
        ..*template
    };
    material.validate()?;

    let ic_ap_p = stt_critical_current(geometry, &material, false);
    let ic_p_ap = stt_critical_current(geometry, &material, true);
    let read_overdrive = targets.read_current / ic_ap_p.min(ic_p_ap);
    if read_overdrive >= 1.0 {
        return Err(infeasible(
            format!(
                "fitted critical current {} A sits below the read current {} A: reads would disturb",
                ic_ap_p.min(ic_p_ap),
                targets.read_current
            ),
            read_overdrive - 1.0,
        ));
    }

    // Audit: closed form against targets, then the vector integrator against
    // the closed form. The decoupled polar equation is exact, so both pairs
    // agree to solver accuracy; the 5% gate only trips on genuine breakage.
    let drive_to_ap = TorqueDrive::stt(targets.write_current, targets.pulse_duration);
    let drive_to_p = TorqueDrive::stt(-targets.write_current, targets.pulse_duration);
    let cf_t_p_ap = match switching_time(geometry, &material, &drive_to_ap, MtjState::Parallel) {
        SwitchingOutcome::Switched(t) => t,
        SwitchingOutcome::NoSwitch => {
            return Err(infeasible("fitted device does not switch P->AP at the write current".into(), f64::INFINITY))
        }
    };
    let cf_t_ap_p = match switching_time(geometry, &material, &drive_to_p, MtjState::AntiParallel) {
        SwitchingOutcome::Switched(t) => t,
        SwitchingOutcome::NoSwitch => {
            return Err(infeasible("fitted device does not switch AP->P at the write current".into(), f64::INFINITY))
        }
    };
    let residual = ((cf_t_p_ap - targets.t_p_ap).abs() / targets.t_p_ap)
        .max((cf_t_ap_p - targets.t_ap_p).abs() / targets.t_ap_p);
    if residual > 0.05 {
        return Err(infeasible(format!("fit residual {residual:.3} exceeds 5%"), residual));
    }

    let llg_t_p_ap = llg_crossing(geometry, &material, &drive_to_ap, MtjState::Parallel)?;
    let llg_t_ap_p = llg_crossing(geometry, &material, &drive_to_p, MtjState::AntiParallel)?;
    let llg_residual = ((llg_t_p_ap - targets.t_p_ap).abs() / targets.t_p_ap)
        .max((llg_t_ap_p - targets.t_ap_p).abs() / targets.t_ap_p);
    if llg_residual > 0.05 {
        return Err(infeasible(
            format!("vector-integrator cross-check residual {llg_residual:.3} exceeds 5%"),
            llg_residual,
        ));
    }

    // No-disturb guarantee: the read current must not switch either state
    // even for pulses far beyond the read window.
    let long = 100.0 * targets.pulse_duration;
    for (drive, from) in [
        (TorqueDrive::stt(targets.read_current, long), MtjState::Parallel),
        (TorqueDrive::stt(-targets.read_current, long), MtjState::AntiParallel),
    ] {
        if switching_time(geometry, &material, &drive, from).switched() {
            return Err(infeasible("read current switches the fitted device".into(), read_overdrive));
        }
    }

    Ok(CalibrationReport {
        material,
        overdrive_ap_p: i_base,
        overdrive_p_ap: i_p_ap,
        closed_form_t_p_ap: cf_t_p_ap,
        closed_form_t_ap_p: cf_t_ap_p,
        llg_t_p_ap,
        llg_t_ap_p,
        critical_current_ap_p: ic_ap_p,
        critical_current_p_ap: ic_p_ap,
        read_overdrive,
        residual,
    })
}

fn llg_crossing(
    geometry: &MtjGeometry,
    material: &MtjMaterial,
    drive: &TorqueDrive,
    from: MtjState,
) -> Result<f64> {
    let traj = integrate_llg(
        geometry,
        material,
        drive,
        initial_moment(material, from),
        1e-12,
        drive.pulse_duration,
    )?;
    traj.switching_event.ok_or_else(|| Error::Calibration {
        message: "vector integrator found no switching event inside the pulse".into(),
        residual: f64::INFINITY,
    })
}

/// Solves f(x) = target for strictly decreasing f on (lo, inf), expanding the
/// upper bracket geometrically and then bisecting to machine precision.
fn bisect_decreasing(f: &dyn Fn(f64) -> f64, target: f64, lo: f64) -> Result<f64> {
    let mut lo = lo;
    let mut hi = lo.max(1.0) * 2.0;
    let mut expansions = 0;
    while f(hi) > target {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::Calibration {
                message: "no solution within search bounds".into(),
                residual: f64::INFINITY,
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
