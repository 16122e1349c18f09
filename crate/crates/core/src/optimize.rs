//! Exhaustive enumeration of feasible matchings and the exact Min-BP / Min-BA
//! optimizers built on it. Exponential; intended for a handful of students.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocking::{blocking_pairs_unchecked, count_blocking_pairs};
use crate::error::{Error, Result};
use crate::ids::{LocationId, ProjectId};
use crate::matching::Matching;
use crate::model::Instance;

type PairFilter<'a> = Box<dyn Fn(LocationId, ProjectId) -> bool + 'a>;

/// Iterator over every feasible matching, each exactly once.
///
/// Seats within a project are unordered, so a matching is identified by its
/// student-to-project map. Order: location packings (the project-to-location
/// vector) lexicographically; within a packing, the per-location seat label
/// sequences lexicographically, earlier locations varying slowest.
pub struct FeasibleMatchings<'a> {
    instance: &'a Instance,
    filter: Option<PairFilter<'a>>,
    location_of: Vec<usize>,
    remaining: Vec<usize>,
    started: bool,
    done: bool,
    in_packing: bool,
    projects_at: Vec<Vec<ProjectId>>,
    labels: Vec<Vec<usize>>,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> FeasibleMatchings<'a> {
    fn new(instance: &'a Instance, filter: Option<PairFilter<'a>>) -> Self {
        Self {
            instance,
            filter,
            location_of: vec![UNASSIGNED; instance.num_projects()],
            remaining: instance.locations().map(|l| instance.population(l)).collect(),
            started: false,
            done: false,
            in_packing: false,
            projects_at: vec![Vec::new(); instance.num_locations()],
            labels: vec![Vec::new(); instance.num_locations()],
        }
    }

    fn allowed(&self, l: usize, p: usize) -> bool {
        self.filter.as_ref().is_none_or(|f| f(LocationId(l), ProjectId(p)))
    }

    /// Places project `p` at the first admissible location `>= from`.
    fn place(&mut self, p: usize, from: usize) -> bool {
        let cap = self.instance.capacity(ProjectId(p));
        for l in from..self.remaining.len() {
            if self.remaining[l] >= cap && self.allowed(l, p) {
                self.remaining[l] -= cap;
                self.location_of[p] = l;
                return true;
            }
        }
        false
    }

    fn unplace(&mut self, p: usize) -> usize {
        let l = self.location_of[p];
        self.remaining[l] += self.instance.capacity(ProjectId(p));
        self.location_of[p] = UNASSIGNED;
        l
    }

    fn next_packing(&mut self) -> bool {
        let n = self.location_of.len();
        let (mut p, mut from) = if !self.started {
            self.started = true;
            if n == 0 {
                return true;
            }
            (0, 0)
        } else {
            if n == 0 {
                return false;
            }
            let l = self.unplace(n - 1);
            (n - 1, l + 1)
        };
        loop {
            if self.place(p, from) {
                if p + 1 == n {
                    // capacities sum to the student count, so a complete
                    // placement leaves every location exactly full
                    return true;
                }
                p += 1;
                from = 0;
            } else {
                if p == 0 {
                    return false;
                }
                p -= 1;
                from = self.unplace(p) + 1;
            }
        }
    }

    fn reset_labels(&mut self) {
        for projects in &mut self.projects_at {
            projects.clear();
        }
        for (p, &l) in self.location_of.iter().enumerate() {
            self.projects_at[l].push(ProjectId(p));
        }
        for (l, projects) in self.projects_at.iter().enumerate() {
            let labels = &mut self.labels[l];
            labels.clear();
            for (k, &p) in projects.iter().enumerate() {
                labels.extend(std::iter::repeat_n(k, self.instance.capacity(p)));
            }
        }
    }

    fn advance_labels(&mut self) -> bool {
        for labels in self.labels.iter_mut().rev() {
            if next_permutation(labels) {
                return true;
            }
            // exhausted permutations wrap back to ascending
        }
        false
    }

    fn current(&self) -> Matching {
        let mut assign = vec![ProjectId(UNASSIGNED); self.instance.num_students()];
        for l in self.instance.locations() {
            for (s, &k) in self.instance.locals(l).iter().zip(&self.labels[l.0]) {
                assign[s.0] = self.projects_at[l.0][k];
            }
        }
        Matching::new(assign)
    }
}

impl Iterator for FeasibleMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if self.in_packing && self.advance_labels() {
            return Some(self.current());
        }
        if self.next_packing() {
            self.in_packing = true;
            self.reset_labels();
            Some(self.current())
        } else {
            self.done = true;
            self.in_packing = false;
            None
        }
    }
}

/// Rearranges `xs` into the next lexicographic permutation of the multiset.
/// Returns false, leaving `xs` sorted ascending, when it was the last one.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

pub fn enumerate_feasible(instance: &Instance) -> FeasibleMatchings<'_> {
    FeasibleMatchings::new(instance, None)
}

/// Enumerates only the feasible matchings in which every project sits at a
/// location accepted by `allowed`.
pub fn enumerate_feasible_where<'a>(
    instance: &'a Instance,
    allowed: impl Fn(LocationId, ProjectId) -> bool + 'a,
) -> FeasibleMatchings<'a> {
    FeasibleMatchings::new(instance, Some(Box::new(allowed)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Number of blocking pairs.
    Bp,
    /// Number of agents appearing in some blocking pair.
    Ba,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Bp => "bp",
            Objective::Ba => "ba",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bp" => Ok(Objective::Bp),
            "ba" => Ok(Objective::Ba),
            other => Err(format!("unknown objective {other:?}, expected bp or ba")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub objective: Objective,
    pub value: usize,
    pub enumerated_count: u64,
    pub best_matching: Matching,
}

/// Exact Min-BP.
pub fn min_bp(instance: &Instance) -> Result<Optimum> {
    optimize(instance, Objective::Bp, None)
}

/// Exact Min-BA.
pub fn min_ba(instance: &Instance) -> Result<Optimum> {
    optimize(instance, Objective::Ba, None)
}

/// Minimises `objective` over all feasible matchings, returning the first
/// minimiser in enumeration order. With `limit`, aborts with
/// [`Error::LimitExceeded`] instead of inspecting more than `limit` matchings.
pub fn optimize(instance: &Instance, objective: Objective, limit: Option<u64>) -> Result<Optimum> {
    let mut best: Option<(usize, Matching)> = None;
    let mut count = 0u64;
    let mut scratch = Vec::new();
    for m in enumerate_feasible(instance) {
        if let Some(max) = limit.filter(|&max| count >= max) {
            return Err(Error::LimitExceeded(max));
        }
        count += 1;
        let value = match objective {
            Objective::Bp => count_blocking_pairs(instance, &m, &mut scratch),
            Objective::Ba => blocking_agent_count(instance, &m),
        };
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, m));
        }
    }
    let (value, best_matching) = best.ok_or(Error::InfeasibleInstance)?;
    Ok(Optimum {
        objective,
        value,
        enumerated_count: count,
        best_matching,
    })
}

fn blocking_agent_count(instance: &Instance, matching: &Matching) -> usize {
    let pairs = blocking_pairs_unchecked(instance, matching);
    let students: BTreeSet<_> = pairs.iter().map(|bp| bp.student).collect();
    let projects: BTreeSet<_> = pairs.iter().map(|bp| bp.project).collect();
    students.len() + projects.len()
}
