//! Group statistics over per-participant ExG cluster fits: paired t tests,
//! t intervals, and the cluster-by-cluster summary table.

mod params;
mod table2;
mod ttest;

pub use params::{
    bundled_table_b1, bundled_table_b1_csv, load_param_table, participant_stats, read_param_table, ParticipantParams,
    ParticipantStats, PARAM_HEADER,
};
pub use table2::{render_text, table2_report, write_csv, GroupSummary, RowKind, Table2Report, Table2Row};
pub use ttest::{paired_t_test, student_t_cdf, student_t_quantile, PairedTestResult, Stars};
