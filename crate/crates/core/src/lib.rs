//! Numerics for soliton-pair nucleation in a tilted sine-Gordon potential and
//! its hand-off to chaotic inflation.
//!
//! * [`potentials`]: regime potentials `V₁`, `V₂`, `V₃`, the brane parent and the schedule
//! * [`vacua`]: extrema, true/false vacuum pair, gap calibration, bracket terms
//! * [`solitons`]: kink, antikink and kink–antikink profiles, BPS energy, charge
//! * [`nucleation`]: thin-wall pair energy, Heisenberg scales, dilaton radius
//! * [`inflation`]: slow-roll formulas and the FRW field equation integrator
//! * [`qcdball`]: QCD-ball mass, stability, critical charge and radius
//! * [`baryogenesis`]: baryon asymmetry and the nucleosynthesis window
//!
//! All quantities are in Planck-natural units, `ħ = c = M_p = t_p = l_p = 1` by default.

pub mod baryogenesis;
pub mod error;
pub mod export;
pub mod inflation;
pub mod nucleation;
pub mod ode;
pub mod params;
pub mod potentials;
pub mod qcdball;
pub mod solitons;
pub mod vacua;

pub use error::{Error, Result};
pub use params::ModelParams;
pub use potentials::RegimeTag;
