//! Constructing feasible matchings.
//!
//! Divisible instances are solved directly by grouping students. The
//! general problem is NP-complete (it embeds 3-Partition), so
//! [`feasible_exact`] is a backtracking search over location packings meant
//! for small instances.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{LocationId, ProjectId};
use crate::matching::Matching;
use crate::model::{divisible_check, Instance};

/// Projects assigned to each location; capacities in each entry sum to the
/// location's population.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocationPacking {
    pub projects: Vec<Vec<ProjectId>>,
}

impl LocationPacking {
    /// Fills each location's projects with its students in index order.
    /// Projects are taken in the order stored in the packing.
    pub fn to_matching(&self, instance: &Instance) -> Matching {
        let mut assign = vec![ProjectId(usize::MAX); instance.num_students()];
        for l in instance.locations() {
            let mut students = instance.locals(l).iter();
            for &p in &self.projects[l.0] {
                for s in students.by_ref().take(instance.capacity(p)) {
                    assign[s.0] = p;
                }
            }
        }
        Matching::new(assign)
    }

    /// Reads the packing off a feasible matching. Projects are listed
    /// ascending within each location.
    pub fn from_matching(instance: &Instance, matching: &Matching) -> Result<Self> {
        let locations = crate::matching::project_location_map(instance, matching)?;
        let mut projects = vec![Vec::new(); instance.num_locations()];
        for (p, l) in locations.iter().enumerate() {
            projects[l.0].push(ProjectId(p));
        }
        Ok(Self { projects })
    }
}

/// Feasible matching for a divisible instance: each location's students are
/// cut into consecutive groups of `c` in index order, and groups (location by
/// location) take projects in index order.
pub fn feasible_divisible(instance: &Instance) -> Result<Matching> {
    let c = divisible_check(instance).ok_or(Error::NotDivisible)?;
    let mut assign = vec![ProjectId(0); instance.num_students()];
    let mut next_project = 0;
    for l in instance.locations() {
        for group in instance.locals(l).chunks(c) {
            for s in group {
                assign[s.0] = ProjectId(next_project);
            }
            next_project += 1;
        }
    }
    debug_assert_eq!(next_project, instance.num_projects());
    Ok(Matching::new(assign))
}

/// Exact search for a feasible matching. Returns `None` when the instance has
/// none.
pub fn feasible_exact(instance: &Instance) -> Option<Matching> {
    find_packing(instance).map(|packing| packing.to_matching(instance))
}

/// Searches for a location packing.
///
/// Locations are handled by descending population (ties by index). Projects
/// with equal capacity are interchangeable, so the search branches over how
/// many projects of each capacity a location takes, larger capacities first,
/// and memoises failed `(depth, remaining capacity multiset)` states. Every
/// node is pruned when some remaining population is not a subset sum of the
/// remaining capacities.
pub fn find_packing(instance: &Instance) -> Option<LocationPacking> {
    let mut order: Vec<LocationId> = instance.locations().collect();
    order.sort_by_key(|&l| (std::cmp::Reverse(instance.population(l)), l));
    let pops: Vec<usize> = order.iter().map(|&l| instance.population(l)).collect();

    let mut values: Vec<usize> = instance.capacities().to_vec();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let mut counts = vec![0usize; values.len()];
    for &c in instance.capacities() {
        let v = values.iter().position(|&x| x == c).expect("value present");
        counts[v] += 1;
    }

    let mut search = PackingSearch {
        values: &values,
        pops: &pops,
        failed: HashSet::new(),
        chosen: Vec::with_capacity(pops.len()),
    };
    if !search.descend(0, &mut counts) {
        return None;
    }

    // Turn per-location capacity counts into concrete projects: lowest index
    // first within each capacity.
    let mut pools: Vec<std::vec::IntoIter<ProjectId>> = values
        .iter()
        .map(|&v| {
            instance
                .projects()
                .filter(|&p| instance.capacity(p) == v)
                .collect::<Vec<_>>()
                .into_iter()
        })
        .collect();
    let mut projects = vec![Vec::new(); instance.num_locations()];
    for (k, &l) in order.iter().enumerate() {
        for (v, &n) in search.chosen[k].iter().enumerate() {
            projects[l.0].extend(pools[v].by_ref().take(n));
        }
    }
    Some(LocationPacking { projects })
}

struct PackingSearch<'a> {
    /// distinct capacities, descending
    values: &'a [usize],
    /// populations in processing order
    pops: &'a [usize],
    failed: HashSet<(usize, Vec<usize>)>,
    /// per processed location: count taken of each capacity value
    chosen: Vec<Vec<usize>>,
}

impl PackingSearch<'_> {
    fn descend(&mut self, depth: usize, counts: &mut Vec<usize>) -> bool {
        if depth == self.pops.len() {
            return counts.iter().all(|&c| c == 0);
        }
        if self.failed.contains(&(depth, counts.clone())) {
            return false;
        }
        if !self.all_reachable(depth, counts) {
            self.failed.insert((depth, counts.clone()));
            return false;
        }
        let mut take = vec![0usize; self.values.len()];
        if self.choose(depth, 0, self.pops[depth], counts, &mut take) {
            return true;
        }
        self.failed.insert((depth, counts.clone()));
        false
    }

    /// Enumerates how many of each capacity value (from index `v` on) the
    /// location at `depth` takes, most of the largest value first.
    fn choose(
        &mut self,
        depth: usize,
        v: usize,
        remaining: usize,
        counts: &mut Vec<usize>,
        take: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            self.chosen.push(take.clone());
            if self.descend(depth + 1, counts) {
                return true;
            }
            self.chosen.pop();
            return false;
        }
        if v == self.values.len() {
            return false;
        }
        let value = self.values[v];
        let max = counts[v].min(remaining / value);
        for n in (0..=max).rev() {
            take[v] = n;
            counts[v] -= n;
            let found = self.choose(depth, v + 1, remaining - n * value, counts, take);
            counts[v] += n;
            if found {
                take[v] = 0;
                return true;
            }
        }
        take[v] = 0;
        false
    }

    /// Every unprocessed population must be a subset sum of what is left.
    fn all_reachable(&self, depth: usize, counts: &[usize]) -> bool {
        let Some(&max_pop) = self.pops[depth..].iter().max() else {
            return true;
        };
        let mut reachable = vec![false; max_pop + 1];
        reachable[0] = true;
        for (&value, &count) in self.values.iter().zip(counts) {
            for _ in 0..count {
                if value > max_pop {
                    break;
                }
                for t in (value..=max_pop).rev() {
                    if reachable[t - value] {
                        reachable[t] = true;
                    }
                }
            }
        }
        self.pops[depth..].iter().all(|&p| reachable[p])
    }
}
