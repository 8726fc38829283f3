//! Stop-signal trial records, type-A/type-B clustering and differenced GORTs.
//!
//! A go trial is type B when the trial before it was a stop trial and type A
//! otherwise; the first trial of a session has no predecessor and is type A.

mod cluster;
mod parse;

pub use cluster::{difference_gorts, partition_clusters, ClusterCounts, ClusteredSession, Pairing, TrialCluster};
pub use parse::{parse_trials, read_trials, ParticipantTrials, TRIAL_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialType {
    Go,
    Stop,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub participant_id: String,
    /// 1-based position within the participant's session.
    pub trial_index: u32,
    pub trial_type: TrialType,
    /// Absent for omissions and successful stops.
    pub rt_ms: Option<f64>,
    pub ssd_ms: Option<f64>,
}
