//! Small hand-built instances used in tests, docs and the CLI.

use crate::ids::{LocationId, ProjectId, StudentId};
use crate::model::Instance;

/// The four-student, two-project instance with feasible matchings but no
/// stable matching. Students 0 and 1 share location 0 and have crossed
/// first choices; students 2 and 3 share location 1. Preference lists:
///
/// ```text
/// s2: p0 p1        p0: s0 s1 s2 s3
/// s3: p0 p1        p1: s1 s0 s2 s3
/// ```
pub fn crossed() -> Instance {
    let p = |xs: [usize; 2]| xs.map(ProjectId).to_vec();
    let s = |xs: [usize; 4]| xs.map(StudentId).to_vec();
    Instance::new(
        2,
        vec![
            (LocationId(0), p([0, 1])),
            (LocationId(0), p([1, 0])),
            (LocationId(1), p([0, 1])),
            (LocationId(1), p([0, 1])),
        ],
        vec![(2, s([0, 1, 2, 3])), (2, s([1, 0, 2, 3]))],
    )
    .expect("crossed instance is valid")
}
