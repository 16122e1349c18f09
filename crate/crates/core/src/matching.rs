//! Matchings and the feasibility check.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{LocationId, ProjectId, StudentId};
use crate::model::Instance;

/// A total assignment of students to projects, indexed by student.
///
/// Feasibility is a property checked by [`check_feasible`], not an invariant
/// of the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub assign: Vec<ProjectId>,
}

impl Matching {
    pub fn new(assign: Vec<ProjectId>) -> Self {
        Self { assign }
    }

    pub fn from_indices(assign: &[usize]) -> Self {
        Self::new(assign.iter().copied().map(ProjectId).collect())
    }

    #[inline]
    pub fn project_of(&self, s: StudentId) -> ProjectId {
        self.assign[s.0]
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matchings always serialize")
    }

    /// Students assigned to each project, ascending within a project.
    /// Entries naming a project outside the instance are skipped.
    pub fn members(&self, num_projects: usize) -> Vec<Vec<StudentId>> {
        let mut members = vec![Vec::new(); num_projects];
        for (s, p) in self.assign.iter().enumerate() {
            if let Some(slot) = members.get_mut(p.0) {
                slot.push(StudentId(s));
            }
        }
        members
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeasibilityViolation {
    /// The assignment does not cover exactly the instance's students.
    AssignmentLength {
        expected: usize,
        actual: usize,
    },
    UnknownProject {
        student: StudentId,
        project: ProjectId,
    },
    Capacity {
        project: ProjectId,
        capacity: usize,
        assigned: usize,
    },
    Collocation {
        project: ProjectId,
        student: StudentId,
        other: StudentId,
    },
}

impl fmt::Display for FeasibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AssignmentLength { expected, actual } => {
                write!(f, "assignment has {actual} entries, instance has {expected} students")
            }
            Self::UnknownProject { student, project } => {
                write!(f, "{student} is assigned to unknown project {project}")
            }
            Self::Capacity {
                project,
                capacity,
                assigned,
            } => {
                write!(f, "{project} has capacity {capacity} but {assigned} students")
            }
            Self::Collocation {
                project,
                student,
                other,
            } => {
                write!(f, "{project} mixes {student} and {other} from different locations")
            }
        }
    }
}

/// Checks the three feasibility clauses: every student assigned exactly once,
/// every project filled to capacity, and every project's students collocated.
/// Reports the first offender for each violated clause.
pub fn check_feasible(instance: &Instance, matching: &Matching) -> std::result::Result<(), Vec<FeasibilityViolation>> {
    let mut violations = Vec::new();

    if matching.len() != instance.num_students() {
        violations.push(FeasibilityViolation::AssignmentLength {
            expected: instance.num_students(),
            actual: matching.len(),
        });
    } else if let Some((s, &p)) = matching
        .assign
        .iter()
        .enumerate()
        .find(|(_, p)| p.0 >= instance.num_projects())
    {
        violations.push(FeasibilityViolation::UnknownProject {
            student: StudentId(s),
            project: p,
        });
    }

    let members = matching.members(instance.num_projects());
    if let Some(p) = instance
        .projects()
        .find(|&p| members[p.0].len() != instance.capacity(p))
    {
        violations.push(FeasibilityViolation::Capacity {
            project: p,
            capacity: instance.capacity(p),
            assigned: members[p.0].len(),
        });
    }

    'outer: for p in instance.projects() {
        let m = &members[p.0];
        if let Some((&first, rest)) = m.split_first() {
            let home = instance.location_of(first);
            for &other in rest {
                if instance.location_of(other) != home {
                    violations.push(FeasibilityViolation::Collocation {
                        project: p,
                        student: first,
                        other,
                    });
                    break 'outer;
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Like [`check_feasible`], but as an [`Error`].
pub fn ensure_feasible(instance: &Instance, matching: &Matching) -> Result<()> {
    check_feasible(instance, matching).map_err(Error::InfeasibleInput)
}

/// Location of each project's students under a feasible matching.
pub(crate) fn project_locations(instance: &Instance, matching: &Matching) -> Vec<LocationId> {
    let mut loc = vec![LocationId(usize::MAX); instance.num_projects()];
    for s in instance.students() {
        loc[matching.project_of(s).0] = instance.location_of(s);
    }
    loc
}

/// Location of each project's students, after checking feasibility.
pub fn project_location_map(instance: &Instance, matching: &Matching) -> Result<Vec<LocationId>> {
    ensure_feasible(instance, matching)?;
    Ok(project_locations(instance, matching))
}
