//! l-stable matchings from a feasible seed.
//!
//! The seed fixes which projects sit at which location. Each location then
//! becomes an independent college-admissions instance over its own students
//! and projects, with preference lists filtered to collocated agents and
//! original order kept. Running student-proposing deferred acceptance in
//! every location and merging the results leaves no blocking pair between a
//! student and a project at its own location.

use std::collections::{BinaryHeap, VecDeque};

use crate::error::Result;
use crate::ids::{LocationId, ProjectId, StudentId};
use crate::matching::{ensure_feasible, project_locations, Matching};
use crate::model::Instance;

/// One location's admissions problem. Preference lists hold positions into
/// `students` / `projects`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub location: LocationId,
    pub students: Vec<StudentId>,
    pub projects: Vec<ProjectId>,
    pub capacities: Vec<usize>,
    pub student_prefs: Vec<Vec<usize>>,
    pub project_prefs: Vec<Vec<usize>>,
}

impl SubInstance {
    /// Builds a sub-instance directly from local preference lists.
    pub fn from_parts(
        location: LocationId,
        students: Vec<StudentId>,
        projects: Vec<ProjectId>,
        capacities: Vec<usize>,
        student_prefs: Vec<Vec<usize>>,
        project_prefs: Vec<Vec<usize>>,
    ) -> Self {
        Self {
            location,
            students,
            projects,
            capacities,
            student_prefs,
            project_prefs,
        }
    }

    fn project_ranks(&self) -> Vec<Vec<usize>> {
        self.project_prefs
            .iter()
            .map(|prefs| {
                let mut rank = vec![usize::MAX; self.students.len()];
                for (pos, &s) in prefs.iter().enumerate() {
                    rank[s] = pos;
                }
                rank
            })
            .collect()
    }

    /// Blocking pairs `(student, project)` (local positions) of an assignment
    /// given as a local project position per local student.
    pub fn blocking_pairs(&self, assignment: &[usize]) -> Vec<(usize, usize)> {
        let ranks = self.project_ranks();
        let mut worst = vec![0usize; self.projects.len()];
        for (s, &p) in assignment.iter().enumerate() {
            worst[p] = worst[p].max(ranks[p][s]);
        }
        let mut pairs = Vec::new();
        for (s, prefs) in self.student_prefs.iter().enumerate() {
            for &p in prefs {
                if p == assignment[s] {
                    break;
                }
                if ranks[p][s] < worst[p] {
                    pairs.push((s, p));
                }
            }
        }
        pairs
    }
}

/// Splits an instance by location under a feasible matching: every project
/// goes to the location of its students.
pub fn split_by_location(instance: &Instance, matching: &Matching) -> Result<Vec<SubInstance>> {
    ensure_feasible(instance, matching)?;
    Ok(split_unchecked(instance, matching))
}

fn split_unchecked(instance: &Instance, matching: &Matching) -> Vec<SubInstance> {
    let project_loc = project_locations(instance, matching);
    let mut projects_at = vec![Vec::new(); instance.num_locations()];
    for p in instance.projects() {
        projects_at[project_loc[p.0].0].push(p);
    }

    // local position of every agent within its own sub-instance
    let mut student_pos = vec![usize::MAX; instance.num_students()];
    for l in instance.locations() {
        for (k, s) in instance.locals(l).iter().enumerate() {
            student_pos[s.0] = k;
        }
    }
    let mut project_pos = vec![usize::MAX; instance.num_projects()];
    for projects in &projects_at {
        for (k, p) in projects.iter().enumerate() {
            project_pos[p.0] = k;
        }
    }

    instance
        .locations()
        .zip(projects_at)
        .map(|(l, projects)| {
            let students = instance.locals(l).to_vec();
            let student_prefs = students
                .iter()
                .map(|&s| {
                    instance
                        .student_prefs(s)
                        .iter()
                        .filter(|p| project_loc[p.0] == l)
                        .map(|p| project_pos[p.0])
                        .collect()
                })
                .collect();
            let project_prefs = projects
                .iter()
                .map(|&p| {
                    instance
                        .project_prefs(p)
                        .iter()
                        .filter(|&&s| instance.location_of(s) == l)
                        .map(|s| student_pos[s.0])
                        .collect()
                })
                .collect();
            let capacities = projects.iter().map(|&p| instance.capacity(p)).collect();
            SubInstance {
                location: l,
                students,
                projects,
                capacities,
                student_prefs,
                project_prefs,
            }
        })
        .collect()
}

/// Student-proposing deferred acceptance on one sub-instance.
///
/// Free students wait in a FIFO queue seeded in ascending order. Returns the
/// project assigned to each entry of `sub.students`.
pub fn gale_shapley_admissions(sub: &SubInstance) -> Vec<ProjectId> {
    gale_shapley_local(sub).into_iter().map(|p| sub.projects[p]).collect()
}

/// As [`gale_shapley_admissions`], returning local project positions.
pub fn gale_shapley_local(sub: &SubInstance) -> Vec<usize> {
    let ranks = sub.project_ranks();
    let n = sub.students.len();
    let mut next = vec![0usize; n];
    let mut assigned = vec![usize::MAX; n];
    // max-heap on rank: the top is the least preferred held student
    let mut held: Vec<BinaryHeap<(usize, usize)>> = sub
        .capacities
        .iter()
        .map(|&c| BinaryHeap::with_capacity(c + 1))
        .collect();
    let mut free: VecDeque<usize> = (0..n).collect();

    while let Some(s) = free.pop_front() {
        let Some(&p) = sub.student_prefs[s].get(next[s]) else {
            // capacities cover all students, so lists never run out
            unreachable!("student exhausted its list in a balanced sub-instance");
        };
        next[s] += 1;
        held[p].push((ranks[p][s], s));
        assigned[s] = p;
        if held[p].len() > sub.capacities[p] {
            let (_, rejected) = held[p].pop().expect("non-empty");
            assigned[rejected] = usize::MAX;
            free.push_back(rejected);
        }
    }
    assigned
}

/// Computes an l-stable matching that keeps every project at the location it
/// has under `seed`.
pub fn lstable(instance: &Instance, seed: &Matching) -> Result<Matching> {
    ensure_feasible(instance, seed)?;
    let mut assign = vec![ProjectId(usize::MAX); instance.num_students()];
    for sub in split_unchecked(instance, seed) {
        for (s, p) in sub.students.iter().zip(gale_shapley_admissions(&sub)) {
            assign[s.0] = p;
        }
    }
    Ok(Matching::new(assign))
}
