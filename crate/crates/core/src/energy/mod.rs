//! Loewner energy functionals and the cross-route report.

pub mod driving;
pub mod report;

pub use driving::{
    chordal_energy, dirichlet_energy, loop_energy_via_chord, unslit, RefinedEnergy,
};
pub use report::{as_circle, energy_report, EnergyReport, ReportCurve, ReportParams, Route, RouteResult};
