//! Data ingestion, canonical reports, and plot emission.

pub mod csv;
pub mod plot;
pub mod report;

pub use csv::{read_csv, write_csv};
pub use plot::{emit_plot, Overlay, Plot, PlotScale};
pub use report::{write_report, AnalysisReport};
