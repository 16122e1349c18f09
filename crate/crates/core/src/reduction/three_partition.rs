//! 3-Partition to LRSM feasibility.
//!
//! Every item becomes a project with that capacity; every one of the `m`
//! bins becomes a location holding `T` students. Feasible matchings and
//! 3-partitions correspond through the location packing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasible::LocationPacking;
use crate::ids::{LocationId, ProjectId, StudentId};
use crate::matching::Matching;
use crate::model::Instance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub m: usize,
    pub items: Vec<u64>,
    pub target: u64,
}

impl ThreePartitionInstance {
    /// Checks `|A| = 3m`, positive items and `ΣA = mT`.
    pub fn new(m: usize, items: Vec<u64>, target: u64) -> Result<Self> {
        let tp = Self { m, items, target };
        tp.check()?;
        Ok(tp)
    }

    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidReductionInput(msg));
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        if self.items.len() != 3 * self.m {
            return bad(format!("expected {} items, got {}", 3 * self.m, self.items.len()));
        }
        if self.items.contains(&0) {
            return bad("items must be positive".into());
        }
        let sum: u128 = self.items.iter().map(|&a| u128::from(a)).sum();
        if sum != self.m as u128 * u128::from(self.target) {
            return bad(format!(
                "items sum to {sum}, expected m*T = {}",
                self.m as u128 * u128::from(self.target)
            ));
        }
        Ok(())
    }

    /// Whether `T/4 < a < T/2` holds for every item.
    pub fn strict_bounds(&self) -> bool {
        self.items
            .iter()
            .all(|&a| 4 * u128::from(a) > u128::from(self.target) && 2 * u128::from(a) < u128::from(self.target))
    }
}

/// Builds the LRSM instance: project `j` has capacity `a_j`, location `l`
/// holds students `l*T .. (l+1)*T`. All students share the project list in
/// index order and all projects the student list in index order.
pub fn from_three_partition(tp: &ThreePartitionInstance) -> Result<Instance> {
    tp.check()?;
    let t = usize::try_from(tp.target).map_err(|_| Error::InvalidReductionInput("target too large".into()))?;
    let n_students =
        tp.m.checked_mul(t)
            .ok_or_else(|| Error::InvalidReductionInput("instance too large".into()))?;
    let project_list: Vec<ProjectId> = (0..tp.items.len()).map(ProjectId).collect();
    let student_list: Vec<StudentId> = (0..n_students).map(StudentId).collect();
    let students = (0..n_students)
        .map(|s| (LocationId(s / t), project_list.clone()))
        .collect();
    let projects = tp.items.iter().map(|&a| (a as usize, student_list.clone())).collect();
    Instance::new(tp.m, students, projects)
}

/// Reads a 3-partition off a feasible matching: the projects at each location
/// form one triplet. Triplets hold item indices, ascending, one per location.
pub fn matching_to_three_partition(
    tp: &ThreePartitionInstance,
    instance: &Instance,
    matching: &Matching,
) -> Result<Vec<[usize; 3]>> {
    if !tp.strict_bounds() {
        return Err(Error::BoundsNotStrict);
    }
    let packing = LocationPacking::from_matching(instance, matching)?;
    packing
        .projects
        .iter()
        .map(|projects| {
            let triplet: [usize; 3] =
                projects
                    .iter()
                    .map(|p| p.0)
                    .collect::<Vec<_>>()
                    .try_into()
                    .map_err(|v: Vec<usize>| {
                        Error::InvalidReductionInput(format!("location holds {} projects, expected 3", v.len()))
                    })?;
            Ok(triplet)
        })
        .collect()
}
