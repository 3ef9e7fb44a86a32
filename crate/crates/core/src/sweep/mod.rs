//! Parameter grids over [`EffectiveParams`](crate::model::EffectiveParams),
//! region classification, figure presets and CSV output.

mod output;
mod presets;
mod region;
mod runner;
mod spec;

pub use output::{format_float, write_panel_csv, write_stability_csv, write_sweep, write_sweep_csv, SENTINEL};
pub use presets::{grid_groups, preset, reproduction, Panel, FIGURE_GROUPS, FIGURE_IDS};
pub use region::{
    classify, classify_direction, connected_regions, classify_entanglement, classify_steering, classify_tripartite, Direction,
    PresenceCode, RegionCodes, DIRECTION_PAIRS,
};
pub use runner::{
    evaluate_point, run_stability_map, run_sweep, run_sweep_with, Execution, StabilityRow, SweepResult, SweepRow,
};
pub use spec::{Axis, Scale, SweepSpec};
