//! Blocking pairs, blocking agents and the local/non-local split.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ids::{ProjectId, StudentId};
use crate::matching::{ensure_feasible, project_locations, Matching};
use crate::model::Instance;

/// A student-project pair that would both rather be matched to each other.
///
/// `local` is set when the project's students share the student's location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockingPair {
    pub student: StudentId,
    pub project: ProjectId,
    pub local: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingReport {
    /// Sorted by (student, project); each pair appears once.
    pub pairs: Vec<BlockingPair>,
    pub pair_count: usize,
    pub agent_count: usize,
    pub local_pair_count: usize,
}

impl BlockingReport {
    fn from_pairs(pairs: Vec<BlockingPair>) -> Self {
        let students: BTreeSet<_> = pairs.iter().map(|bp| bp.student).collect();
        let projects: BTreeSet<_> = pairs.iter().map(|bp| bp.project).collect();
        Self {
            pair_count: pairs.len(),
            agent_count: students.len() + projects.len(),
            local_pair_count: pairs.iter().filter(|bp| bp.local).count(),
            pairs,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.pair_count == 0
    }

    pub fn is_l_stable(&self) -> bool {
        self.local_pair_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Enumerates the blocking pairs of a feasible matching.
///
/// `(s, p)` blocks when `s` prefers `p` to its own project and `p` prefers
/// `s` to the least preferred of its current students. A pair is listed once
/// however many of `p`'s students it could displace.
pub fn blocking_report(instance: &Instance, matching: &Matching) -> Result<BlockingReport> {
    ensure_feasible(instance, matching)?;
    Ok(blocking_report_unchecked(instance, matching))
}

/// [`blocking_report`] without the feasibility check. The matching must be
/// feasible.
pub(crate) fn blocking_report_unchecked(instance: &Instance, matching: &Matching) -> BlockingReport {
    BlockingReport::from_pairs(blocking_pairs_unchecked(instance, matching))
}

pub(crate) fn blocking_pairs_unchecked(instance: &Instance, matching: &Matching) -> Vec<BlockingPair> {
    let locations = project_locations(instance, matching);

    // rank of the least preferred assigned student, per project
    let mut worst = vec![0usize; instance.num_projects()];
    for s in instance.students() {
        let p = matching.project_of(s);
        worst[p.0] = worst[p.0].max(instance.project_rank(p, s));
    }

    let mut pairs = Vec::new();
    for s in instance.students() {
        let current = matching.project_of(s);
        let home = instance.location_of(s);
        for &p in instance.student_prefs(s) {
            if p == current {
                break;
            }
            if instance.project_rank(p, s) < worst[p.0] {
                pairs.push(BlockingPair {
                    student: s,
                    project: p,
                    local: locations[p.0] == home,
                });
            }
        }
    }
    // walking each student's list yields projects in preference order
    pairs.sort_unstable();
    pairs
}

/// Fast count of blocking pairs for a feasible matching; used by the
/// exhaustive optimizers.
pub(crate) fn count_blocking_pairs(instance: &Instance, matching: &Matching, worst: &mut Vec<usize>) -> usize {
    worst.clear();
    worst.resize(instance.num_projects(), 0);
    for s in instance.students() {
        let p = matching.project_of(s);
        worst[p.0] = worst[p.0].max(instance.project_rank(p, s));
    }
    let mut count = 0;
    for s in instance.students() {
        let current = matching.project_of(s);
        for &p in instance.student_prefs(s) {
            if p == current {
                break;
            }
            if instance.project_rank(p, s) < worst[p.0] {
                count += 1;
            }
        }
    }
    count
}

pub fn is_stable(instance: &Instance, matching: &Matching) -> Result<bool> {
    Ok(blocking_report(instance, matching)?.is_stable())
}

pub fn is_l_stable(instance: &Instance, matching: &Matching) -> Result<bool> {
    Ok(blocking_report(instance, matching)?.is_l_stable())
}
