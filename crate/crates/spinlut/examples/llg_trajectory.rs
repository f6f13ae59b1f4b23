//! Integrate the full vector magnetization motion for both write
//! transitions and compare the equator crossings against the closed form.
//!
//! Prints a downsampled (time, mz) series for each transition; pipe to a
//! file and plot if you want to see the reversal shape.

use spinlut::circuit::{CellDesign, LutFlavor};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, MtjState, TechParams};
use spinlut::dynamics::{initial_moment, integrate_llg, switching_time, TorqueDrive};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;

    // The write path splits the supply across gates and both junctions;
    // use the nominal write current directly on one junction here.
    let mut cell = design.build_cell(&tech);
    let write = spinlut::circuit::cell_write(&mut cell, &tech, LutFlavor::Stt, true, tech.write_pulse)?;
    let current = write.current;
    println!("drive current {:.2} uA, pulse {:.1} ns\n", current * 1e6, tech.write_pulse * 1e9);

    for (label, sign, from) in
        [("P -> AP", 1.0, MtjState::Parallel), ("AP -> P", -1.0, MtjState::AntiParallel)]
    {
        let drive = TorqueDrive::stt(sign * current, tech.write_pulse);
        let closed = switching_time(&design.geometry, &design.material, &drive, from)
            .time()
            .expect("nominal drive switches");
        let trajectory = integrate_llg(
            &design.geometry,
            &design.material,
            &drive,
            initial_moment(&design.material, from),
            1.0e-12,
            tech.write_pulse,
        )?;
        let integrated = trajectory.switching_event.expect("crossing within the pulse");

        println!("{label}: closed form {:.4} ns, integrator {:.4} ns", closed * 1e9, integrated * 1e9);
        println!("time_ns,mz");
        for (t, m) in trajectory.times.iter().zip(&trajectory.moments).step_by(100) {
            println!("{:.3},{:.4}", t * 1e9, m[2]);
        }
        println!("final state: {:?}\n", trajectory.final_state());
    }
    Ok(())
}
