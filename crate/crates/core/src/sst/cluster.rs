use rand::seq::SliceRandom;

use super::{TrialRecord, TrialType};
use crate::dist::seeded_rng;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialCluster {
    /// Preceded by a go trial, or first in the session.
    A,
    /// Preceded by a stop trial.
    B,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClusterCounts {
    pub trials: usize,
    pub go: usize,
    pub stop: usize,
    /// Go trials without a response.
    pub omissions: usize,
    /// Stop trials with a response.
    pub failed_stops: usize,
    pub type_a: usize,
    pub type_b: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredSession {
    pub participant_id: String,
    /// Cluster of every trial, in trial order.
    pub trial_clusters: Vec<TrialCluster>,
    pub gort_a: Vec<f64>,
    pub gort_b: Vec<f64>,
    pub gort_s: Vec<f64>,
    pub counts: ClusterCounts,
}

/// Assigns every trial to a cluster and collects go reaction times.
///
/// Trials must belong to one participant and carry contiguous indices in
/// ascending order. Omitted go responses keep their place in the sequence
/// but yield no GORT; failed stops never yield one.
pub fn partition_clusters(trials: &[TrialRecord]) -> Result<ClusteredSession> {
    let first = trials.first().ok_or(Error::Empty("participant has no trials"))?;
    let participant_id = first.participant_id.clone();
    for w in trials.windows(2) {
        if w[1].participant_id != participant_id {
            return Err(Error::Domain(format!(
                "trials of {} and {} mixed in one session",
                participant_id, w[1].participant_id
            )));
        }
        if w[1].trial_index != w[0].trial_index + 1 {
            return Err(Error::NonContiguous {
                participant: participant_id,
                previous: w[0].trial_index,
                next: w[1].trial_index,
            });
        }
    }

    let mut out = ClusteredSession {
        participant_id,
        trial_clusters: Vec::with_capacity(trials.len()),
        gort_a: Vec::new(),
        gort_b: Vec::new(),
        gort_s: Vec::new(),
        counts: ClusterCounts {
            trials: trials.len(),
            ..Default::default()
        },
    };
    let mut previous: Option<TrialType> = None;
    for t in trials {
        let cluster = if previous == Some(TrialType::Stop) {
            TrialCluster::B
        } else {
            TrialCluster::A
        };
        out.trial_clusters.push(cluster);
        match cluster {
            TrialCluster::A => out.counts.type_a += 1,
            TrialCluster::B => out.counts.type_b += 1,
        }
        match (t.trial_type, t.rt_ms) {
            (TrialType::Go, Some(rt)) => {
                out.counts.go += 1;
                out.gort_s.push(rt);
                match cluster {
                    TrialCluster::A => out.gort_a.push(rt),
                    TrialCluster::B => out.gort_b.push(rt),
                }
            }
            (TrialType::Go, None) => {
                out.counts.go += 1;
                out.counts.omissions += 1;
            }
            (TrialType::Stop, rt) => {
                out.counts.stop += 1;
                if rt.is_some() {
                    out.counts.failed_stops += 1;
                }
            }
        }
        previous = Some(t.trial_type);
    }
    Ok(out)
}

/// How type-B and type-A GORTs are matched for differencing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// i-th selected B value with i-th selected A value.
    Identity,
    /// Selected A values shuffled with a seeded generator before matching.
    Seeded(u64),
}

/// `m` evenly spaced elements of `xs`, in order.
fn spread_subset(xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    (0..m).map(|i| xs[i * n / m]).collect()
}

/// Differenced GORTs `b - a` over `min(|A|, |B|)` pairs.
///
/// The larger cluster is thinned to evenly spaced trials, so which values
/// take part never depends on the pairing; the seed only decides who is
/// matched with whom.
pub fn difference_gorts(cs: &ClusteredSession, pairing: Pairing) -> Result<Vec<f64>> {
    if cs.gort_a.is_empty() {
        return Err(Error::EmptyCluster("A"));
    }
    if cs.gort_b.is_empty() {
        return Err(Error::EmptyCluster("B"));
    }
    let m = cs.gort_a.len().min(cs.gort_b.len());
    let b = spread_subset(&cs.gort_b, m);
    let mut a = spread_subset(&cs.gort_a, m);
    if let Pairing::Seeded(seed) = pairing {
        a.shuffle(&mut seeded_rng(seed));
    }
    Ok(b.iter().zip(&a).map(|(b, a)| b - a).collect())
}
