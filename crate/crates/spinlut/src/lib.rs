//! Behavioral simulator for clockless spin-based fracturable look-up tables.
//!
//! The crate models a 6-input LUT whose 64 configuration cells are pairs of
//! complementary magnetic tunnel junctions written by spin-transfer torque
//! (two-terminal stacks) or spin-Hall-effect torque (three-terminal stacks
//! with a heavy-metal channel). The read path is a resistive divider sensed
//! against half the supply, so stored bits survive power-off and no clock or
//! refresh is involved.
//!
//! Layers, bottom to top:
//!
//! - [`device`]: junction geometry/material parameters and static electrical
//!   quantities (resistance per state, critical currents, channel resistance).
//! - [`dynamics`]: magnetization motion. A closed-form switching-time
//!   expression drives everything fast; a full vector integrator backs it up
//!   and produces trajectories for inspection.
//! - [`circuit`]: the LUT itself. Cells, write/read paths, fracturing into
//!   two 5-input LUTs, transient traces, device counts, standby power.
//! - [`variation`]: Monte Carlo over process variation with deterministic
//!   per-trial seeding (serial and parallel runs produce identical output).
//! - [`report`]: architecture comparison tables, histogram emission, and the
//!   system calibration driver that fits free parameters to design targets.
//! - [`cli`]: the command-line front end (`eval`, `write`, `read`, `trace`,
//!   `mc`, `compare`, `calibrate`).
//!
//! The `examples/` directory shows one runnable scenario per capability and
//! is the fastest way to learn the API.

pub mod circuit;
pub mod cli;
pub mod device;
pub mod dynamics;
pub mod error;
pub mod params;
pub mod report;
pub mod variation;

pub use error::{Error, Result};
