//! Grid scans, Brillouin-zone integrals, summary reports and CSV/JSON export
//! for the post-quench quantum geometric tensor of the SSH chain.
//!
//! The numerics live in [`quench_qgt_core`]; this crate adds the std side:
//! parallel evaluation with a fixed output order, file formats and the
//! `quench-qgt` command line tool.

pub mod config;
pub mod error;
pub mod export;
pub mod reports;
pub mod scan;

pub use config::{Component, Format, ScanConfig, Settings, DEFAULT_FD_STEP, VERIFY_TOLERANCE};
pub use error::{Result, ScanError};
pub use export::{export, import_csv, import_json, read_csv, read_json, write, write_csv, write_json};
pub use reports::{
    bz_integral_im_qkt, diagnose, gtt_peak_report, reference_protocols, PeakEntry, PeakReport,
    SignDiagnosis, REFERENCE_PROTOCOLS,
};
pub use scan::{run_scan, GridMeta, Metadata, ProtocolMeta, ScanResult, VerifyMeta};
