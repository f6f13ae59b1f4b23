//! Sweep the drive current and print the switching time of each
//! transition, showing why one direction is slower: the tunnel-current
//! spin efficiency is lower when driving toward antiparallel, so that
//! transition needs more current for the same speed.

use spinlut::circuit::{CellDesign, LutFlavor};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{stt_critical_current, DeviceParamsFile, MtjState, TechParams};
use spinlut::dynamics::{switching_time, TorqueDrive};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;
    let (g, m) = (&design.geometry, &design.material);

    println!(
        "critical currents: P->AP {:.2} uA, AP->P {:.2} uA",
        stt_critical_current(g, m, true) * 1e6,
        stt_critical_current(g, m, false) * 1e6,
    );
    println!("pulse budget {:.1} ns\n", tech.write_pulse * 1e9);

    println!("{:>10} {:>14} {:>14}", "I (uA)", "t P->AP (ns)", "t AP->P (ns)");
    for ua in (40..=100).step_by(5) {
        let i = ua as f64 * 1e-6;
        let fmt = |sign: f64, from: MtjState| {
            let drive = TorqueDrive::stt(sign * i, tech.write_pulse);
            match switching_time(g, m, &drive, from).time() {
                Some(t) => format!("{:.3}", t * 1e9),
                None => "no switch".into(),
            }
        };
        println!(
            "{:>10} {:>14} {:>14}",
            ua,
            fmt(1.0, MtjState::Parallel),
            fmt(-1.0, MtjState::AntiParallel)
        );
    }

    // The read current must sit safely under both thresholds.
    let read_current = tech.supply_voltage
        / (2.0 * tech.read_pull_on_resistance
            + spinlut::device::mtj_resistance(g, m, MtjState::Parallel)
            + spinlut::device::mtj_resistance(g, m, MtjState::AntiParallel));
    let ic_min = stt_critical_current(g, m, true).min(stt_critical_current(g, m, false));
    println!(
        "\nread current {:.2} uA = {:.0}% of the smaller critical current",
        read_current * 1e6,
        100.0 * read_current / ic_min
    );
    Ok(())
}
