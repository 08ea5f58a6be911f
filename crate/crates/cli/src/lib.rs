//! Scenario runner for `gaborlab-core`: JSON scenario files in, verification
//! reports out.

pub mod config;
pub mod report;
pub mod run;
pub mod scan;

pub use config::{parse_config, parse_group_list, CheckName, ConfigError, ScenarioConfig, WindowSpec};
pub use report::{emit_report, parse_report, Format, ReportDocument, Status, SCHEMA_VERSION};
pub use run::{build, run_scenario, RunOptions, MAX_ORDER_ENV};
