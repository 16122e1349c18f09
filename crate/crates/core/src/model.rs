//! Instance representation, validation and restriction predicates.
//!
//! An [`InstanceDoc`] is the raw, untrusted JSON shape. [`validate`] reports
//! every problem with it; [`Instance::from_doc`] builds the immutable,
//! validated form with rank tables for O(1) preference comparisons.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{LocationId, ProjectId, StudentId};

/// Raw student record as it appears in an instance document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentDoc {
    pub location: i64,
    pub prefs: Vec<i64>,
}

/// Raw project record as it appears in an instance document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectDoc {
    pub capacity: i64,
    pub prefs: Vec<i64>,
}

/// The JSON instance document. Field order is the emitted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub locations: u64,
    pub students: Vec<StudentDoc>,
    pub projects: Vec<ProjectDoc>,
}

impl InstanceDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance documents always serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    DuplicatePref,
    MissingPref,
    /// A preference entry names an agent that does not exist.
    UnknownPref,
    /// A project capacity is zero or negative.
    BadCapacity,
    CapacitySumMismatch,
    BadLocation,
    EmptyLocation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}: {}", v.code, v.message)?;
        }
        Ok(())
    }
}

/// Checks a raw document against every instance invariant and returns all
/// violations found.
pub fn validate(doc: &InstanceDoc) -> ValidationReport {
    let mut violations = Vec::new();
    let n_students = doc.students.len();
    let n_projects = doc.projects.len();
    let n_locations = doc.locations;

    let mut push = |code, message: String| violations.push(Violation { code, message });

    let mut populated = vec![false; n_locations.min(n_students as u64) as usize];
    for (s, student) in doc.students.iter().enumerate() {
        if student.location < 0 || student.location as u64 >= n_locations {
            push(
                ViolationCode::BadLocation,
                format!("student {s} has location {} outside 0..{n_locations}", student.location),
            );
        } else if let Some(slot) = populated.get_mut(student.location as usize) {
            *slot = true;
        }
        check_permutation(
            &student.prefs,
            n_projects,
            &format!("student {s}"),
            "project",
            &mut push,
        );
    }

    let mut capacity_sum: i128 = 0;
    for (p, project) in doc.projects.iter().enumerate() {
        if project.capacity <= 0 {
            push(
                ViolationCode::BadCapacity,
                format!("project {p} has non-positive capacity {}", project.capacity),
            );
        }
        capacity_sum += i128::from(project.capacity);
        check_permutation(
            &project.prefs,
            n_students,
            &format!("project {p}"),
            "student",
            &mut push,
        );
    }
    if capacity_sum != n_students as i128 {
        push(
            ViolationCode::CapacitySumMismatch,
            format!("capacities sum to {capacity_sum} but there are {n_students} students"),
        );
    }

    // A location with an index beyond the student count is necessarily empty.
    if n_locations > n_students as u64 {
        push(
            ViolationCode::EmptyLocation,
            format!("{n_locations} locations but only {n_students} students"),
        );
    } else {
        for (l, seen) in populated.iter().take(n_locations as usize).enumerate() {
            if !seen {
                push(ViolationCode::EmptyLocation, format!("location {l} has no students"));
            }
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn check_permutation(prefs: &[i64], n: usize, owner: &str, kind: &str, push: &mut impl FnMut(ViolationCode, String)) {
    let mut seen = vec![false; n];
    let mut duplicates = BTreeSet::new();
    let mut unknown = BTreeSet::new();
    for &x in prefs {
        if x < 0 || x as u64 >= n as u64 {
            unknown.insert(x);
            continue;
        }
        let slot = &mut seen[x as usize];
        if *slot {
            duplicates.insert(x);
        }
        *slot = true;
    }
    if !unknown.is_empty() {
        push(
            ViolationCode::UnknownPref,
            format!("{owner} lists unknown {kind} ids {unknown:?}"),
        );
    }
    if !duplicates.is_empty() {
        push(
            ViolationCode::DuplicatePref,
            format!("{owner} lists {kind} ids {duplicates:?} more than once"),
        );
    }
    let missing: Vec<usize> = (0..n).filter(|&i| !seen[i]).collect();
    if !missing.is_empty() {
        push(
            ViolationCode::MissingPref,
            format!("{owner} does not rank {kind} ids {missing:?}"),
        );
    }
}

/// A validated, immutable LRSM instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    location_count: usize,
    student_location: Vec<LocationId>,
    student_prefs: Vec<Vec<ProjectId>>,
    capacities: Vec<usize>,
    project_prefs: Vec<Vec<StudentId>>,
    // rank tables: student_rank[s][p] is p's position in s's list
    student_rank: Vec<Vec<usize>>,
    project_rank: Vec<Vec<usize>>,
    locals: Vec<Vec<StudentId>>,
}

impl Instance {
    /// Builds an instance from typed parts, validating every invariant.
    pub fn new(
        location_count: usize,
        students: Vec<(LocationId, Vec<ProjectId>)>,
        projects: Vec<(usize, Vec<StudentId>)>,
    ) -> Result<Self> {
        let doc = InstanceDoc {
            locations: location_count as u64,
            students: students
                .into_iter()
                .map(|(l, prefs)| StudentDoc {
                    location: l.0 as i64,
                    prefs: prefs.into_iter().map(|p| p.0 as i64).collect(),
                })
                .collect(),
            projects: projects
                .into_iter()
                .map(|(c, prefs)| ProjectDoc {
                    capacity: c as i64,
                    prefs: prefs.into_iter().map(|s| s.0 as i64).collect(),
                })
                .collect(),
        };
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self> {
        let report = validate(doc);
        if !report.ok {
            return Err(Error::InvalidInstance(report));
        }
        let location_count = doc.locations as usize;
        let n_s = doc.students.len();
        let n_p = doc.projects.len();

        let student_location: Vec<LocationId> = doc.students.iter().map(|s| LocationId(s.location as usize)).collect();
        let student_prefs: Vec<Vec<ProjectId>> = doc
            .students
            .iter()
            .map(|s| s.prefs.iter().map(|&p| ProjectId(p as usize)).collect())
            .collect();
        let capacities = doc.projects.iter().map(|p| p.capacity as usize).collect();
        let project_prefs: Vec<Vec<StudentId>> = doc
            .projects
            .iter()
            .map(|p| p.prefs.iter().map(|&s| StudentId(s as usize)).collect())
            .collect();

        let student_rank = student_prefs
            .iter()
            .map(|prefs| inverse(prefs.iter().map(|p| p.0), n_p))
            .collect();
        let project_rank = project_prefs
            .iter()
            .map(|prefs| inverse(prefs.iter().map(|s| s.0), n_s))
            .collect();

        let mut locals = vec![Vec::new(); location_count];
        for (s, l) in student_location.iter().enumerate() {
            locals[l.0].push(StudentId(s));
        }

        Ok(Self {
            location_count,
            student_location,
            student_prefs,
            capacities,
            project_prefs,
            student_rank,
            project_rank,
            locals,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&InstanceDoc::from_json(text)?)
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            locations: self.location_count as u64,
            students: (0..self.num_students())
                .map(|s| StudentDoc {
                    location: self.student_location[s].0 as i64,
                    prefs: self.student_prefs[s].iter().map(|p| p.0 as i64).collect(),
                })
                .collect(),
            projects: (0..self.num_projects())
                .map(|p| ProjectDoc {
                    capacity: self.capacities[p] as i64,
                    prefs: self.project_prefs[p].iter().map(|s| s.0 as i64).collect(),
                })
                .collect(),
        }
    }

    pub fn num_students(&self) -> usize {
        self.student_location.len()
    }

    pub fn num_projects(&self) -> usize {
        self.capacities.len()
    }

    pub fn num_locations(&self) -> usize {
        self.location_count
    }

    pub fn students(&self) -> impl ExactSizeIterator<Item = StudentId> {
        (0..self.num_students()).map(StudentId)
    }

    pub fn projects(&self) -> impl ExactSizeIterator<Item = ProjectId> {
        (0..self.num_projects()).map(ProjectId)
    }

    pub fn locations(&self) -> impl ExactSizeIterator<Item = LocationId> {
        (0..self.location_count).map(LocationId)
    }

    pub fn location_of(&self, s: StudentId) -> LocationId {
        self.student_location[s.0]
    }

    pub fn capacity(&self, p: ProjectId) -> usize {
        self.capacities[p.0]
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn student_prefs(&self, s: StudentId) -> &[ProjectId] {
        &self.student_prefs[s.0]
    }

    pub fn project_prefs(&self, p: ProjectId) -> &[StudentId] {
        &self.project_prefs[p.0]
    }

    /// Position of `p` in `s`'s list; 0 is the most preferred.
    #[inline]
    pub fn student_rank(&self, s: StudentId, p: ProjectId) -> usize {
        self.student_rank[s.0][p.0]
    }

    /// Position of `s` in `p`'s list; 0 is the most preferred.
    #[inline]
    pub fn project_rank(&self, p: ProjectId, s: StudentId) -> usize {
        self.project_rank[p.0][s.0]
    }

    /// Students located at `l`, ascending.
    pub fn locals(&self, l: LocationId) -> &[StudentId] {
        &self.locals[l.0]
    }

    pub fn population(&self, l: LocationId) -> usize {
        self.locals[l.0].len()
    }
}

fn inverse(perm: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut rank = vec![0; n];
    for (pos, x) in perm.enumerate() {
        rank[x] = pos;
    }
    rank
}

/// Returns the universal capacity `c` when every project has capacity `c`
/// and every location's population is a multiple of `c`.
pub fn divisible_check(instance: &Instance) -> Option<usize> {
    let (&c, rest) = instance.capacities().split_first()?;
    if rest.iter().any(|&x| x != c) {
        return None;
    }
    instance
        .locations()
        .all(|l| instance.population(l).is_multiple_of(c))
        .then_some(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterListFlags {
    /// All students sharing a location have identical lists.
    pub location_master_lists: bool,
    /// All projects have identical lists.
    pub project_master_list: bool,
    /// Every location has exactly two students.
    pub all_locations_size_2: bool,
}

pub fn master_list_check(instance: &Instance) -> MasterListFlags {
    let location_master_lists = instance.locations().all(|l| {
        let locals = instance.locals(l);
        locals
            .windows(2)
            .all(|w| instance.student_prefs(w[0]) == instance.student_prefs(w[1]))
    });
    let project_master_list = instance
        .projects()
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| instance.project_prefs(w[0]) == instance.project_prefs(w[1]));
    let all_locations_size_2 = instance.locations().all(|l| instance.population(l) == 2);
    MasterListFlags {
        location_master_lists,
        project_master_list,
        all_locations_size_2,
    }
}
