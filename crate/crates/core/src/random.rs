//! Random divisible instances for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ids::{LocationId, ProjectId, StudentId};
use crate::model::Instance;

/// A random divisible instance: `projects` projects of capacity `capacity`,
/// `locations` locations each holding a positive multiple of `capacity`
/// students (so `locations <= projects`), students scattered over locations
/// at random, and uniformly random preference permutations on both sides.
///
/// # Panics
///
/// If `capacity == 0`, `locations == 0` or `locations > projects`.
pub fn random_divisible<R: Rng + ?Sized>(rng: &mut R, capacity: usize, projects: usize, locations: usize) -> Instance {
    assert!(capacity > 0 && locations > 0 && locations <= projects);
    // every location gets one group, the rest are spread at random
    let mut groups = vec![1usize; locations];
    for _ in locations..projects {
        groups[rng.gen_range(0..locations)] += 1;
    }
    let mut homes: Vec<LocationId> = groups
        .iter()
        .enumerate()
        .flat_map(|(l, &g)| std::iter::repeat_n(LocationId(l), g * capacity))
        .collect();
    homes.shuffle(rng);

    let n = homes.len();
    let mut project_ids: Vec<ProjectId> = (0..projects).map(ProjectId).collect();
    let mut student_ids: Vec<StudentId> = (0..n).map(StudentId).collect();
    let students = homes
        .into_iter()
        .map(|l| {
            project_ids.shuffle(rng);
            (l, project_ids.clone())
        })
        .collect();
    let projects = (0..projects)
        .map(|_| {
            student_ids.shuffle(rng);
            (capacity, student_ids.clone())
        })
        .collect();
    Instance::new(locations, students, projects).expect("random divisible instance is valid")
}

/// A random instance with arbitrary capacities: `capacities` fixed, students
/// split over `locations` at random (every location non-empty).
///
/// # Panics
///
/// If there are fewer students than locations.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, capacities: &[usize], locations: usize) -> Instance {
    let n: usize = capacities.iter().sum();
    assert!(locations > 0 && locations <= n);
    let mut homes: Vec<LocationId> = (0..locations).map(LocationId).collect();
    homes.extend((locations..n).map(|_| LocationId(rng.gen_range(0..locations))));
    homes.shuffle(rng);

    let mut project_ids: Vec<ProjectId> = (0..capacities.len()).map(ProjectId).collect();
    let mut student_ids: Vec<StudentId> = (0..n).map(StudentId).collect();
    let students = homes
        .into_iter()
        .map(|l| {
            project_ids.shuffle(rng);
            (l, project_ids.clone())
        })
        .collect();
    let projects = capacities
        .iter()
        .map(|&c| {
            student_ids.shuffle(rng);
            (c, student_ids.clone())
        })
        .collect();
    Instance::new(locations, students, projects).expect("random instance is valid")
}
