//! Construction checks for the 3-Partition and Vertex Cover reductions.

use std::collections::BTreeSet;

use lrsm::reduction::vertex_cover::is_prohibited;
use lrsm::reduction::*;
use lrsm::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Does the multiset split into triplets that each sum to T? Exhaustive.
fn has_three_partition(items: &[u64], target: u64) -> bool {
    fn go(left: &mut Vec<u64>, target: u64) -> bool {
        let Some(first) = left.pop() else {
            return true;
        };
        let n = left.len();
        for i in 0..n {
            for j in i + 1..n {
                if first + left[i] + left[j] == target {
                    let mut rest: Vec<u64> = left
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i && k != j)
                        .map(|(_, &x)| x)
                        .collect();
                    if go(&mut rest, target) {
                        return true;
                    }
                }
            }
        }
        left.push(first);
        false
    }
    go(&mut items.to_vec(), target)
}

#[test]
fn three_partition_examples() {
    assert!(has_three_partition(&[5, 5, 5, 5, 6, 4], 15));
    assert!(!has_three_partition(&[5, 5, 5, 5, 5, 7], 16));

    let yes = ThreePartitionInstance::new(2, vec![5, 5, 5, 5, 6, 4], 15).unwrap();
    let inst = from_three_partition(&yes).unwrap();
    let m = feasible_exact(&inst).unwrap();
    let triplets = matching_to_three_partition(&yes, &inst, &m).unwrap();
    assert_eq!(triplets.len(), 2);
    let mut used = BTreeSet::new();
    for t in &triplets {
        assert_eq!(t.iter().map(|&j| yes.items[j]).sum::<u64>(), 15);
        used.extend(t.iter().copied());
    }
    assert_eq!(used.len(), 6);

    let no = ThreePartitionInstance::new(2, vec![5, 5, 5, 5, 5, 7], 16).unwrap();
    assert!(feasible_exact(&from_three_partition(&no).unwrap()).is_none());
    assert_eq!(enumerate_feasible(&from_three_partition(&no).unwrap()).count(), 0);
}

#[test]
fn feasibility_matches_triplet_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = [0usize; 2];
    for _ in 0..150 {
        let m = rng.gen_range(1..=3);
        let target: u64 = rng.gen_range(9..=21);
        // items strictly between T/4 and T/2, then repaired to sum m*T
        let lo = target / 4 + 1;
        let hi = (target - 1) / 2;
        let mut items: Vec<u64> = (0..3 * m).map(|_| rng.gen_range(lo..=hi)).collect();
        let sum: u64 = items.iter().sum();
        let want = m as u64 * target;
        if sum != want {
            // nudge towards the target, staying inside the bounds
            let mut diff = want as i64 - sum as i64;
            for x in items.iter_mut() {
                while diff > 0 && *x < hi {
                    *x += 1;
                    diff -= 1;
                }
                while diff < 0 && *x > lo {
                    *x -= 1;
                    diff += 1;
                }
            }
            if diff != 0 {
                continue;
            }
        }
        items.shuffle(&mut rng);
        let tp = ThreePartitionInstance::new(m, items.clone(), target).unwrap();
        assert!(tp.strict_bounds());
        let inst = from_three_partition(&tp).unwrap();
        let expected = has_three_partition(&items, target);
        let found = feasible_exact(&inst);
        assert_eq!(found.is_some(), expected, "{items:?} T={target}");
        seen[usize::from(expected)] += 1;
        if let Some(matching) = found {
            let triplets = matching_to_three_partition(&tp, &inst, &matching).unwrap();
            assert_eq!(triplets.len(), m);
            for t in triplets {
                assert_eq!(t.iter().map(|&j| items[j]).sum::<u64>(), target);
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "oracle saw only one outcome: {seen:?}");
}

fn single_edge(b2: usize) -> (Instance, GadgetLayout) {
    from_vertex_cover(&VcGadgetSpec::scaled(2, vec![(0, 1)], 1, b2)).unwrap()
}

/// All bijections gadget pairs -> gadget projects with no prohibited pair.
fn prohibited_free_gadget_matchings(
    inst: &Instance,
    layout: &GadgetLayout,
    gadget: &EdgeGadget,
) -> Vec<Vec<(LocationId, ProjectId)>> {
    fn permute(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    let mut perms = Vec::new();
    permute(0, &mut (0..gadget.pairs.len()).collect(), &mut perms);
    perms
        .into_iter()
        .filter(|perm| {
            perm.iter()
                .enumerate()
                .all(|(g, &h)| !is_prohibited(inst, layout, gadget.pairs[g], gadget.projects[h]))
        })
        .map(|perm| {
            let mut m: Vec<_> = perm
                .iter()
                .enumerate()
                .map(|(g, &h)| (gadget.pairs[g], gadget.projects[h]))
                .collect();
            m.sort_unstable();
            m
        })
        .collect()
}

#[test]
fn gadget_has_exactly_two_prohibited_free_matchings() {
    for b2 in [2, 3, 4] {
        let (inst, layout) = single_edge(b2);
        let gadget = &layout.gadgets[0];
        let brute = prohibited_free_gadget_matchings(&inst, &layout, gadget);
        assert_eq!(brute.len(), 2, "B2={b2}");
        let named = edge_gadget_matchings(&inst, &layout, (0, 1)).unwrap();
        let named_set: BTreeSet<_> = [named.vi_preferred.clone(), named.vj_preferred.clone()]
            .into_iter()
            .collect();
        assert_eq!(named_set, brute.into_iter().collect());
        // v_j-preferred: every g_{0,a} on h_{0,a}
        for a in 1..=b2 {
            assert!(named.vj_preferred.contains(&(gadget.g(0, a), gadget.h(0, a))));
        }
    }
}

fn internal_pairs(inst: &Instance, gadget: &EdgeGadget, m: &Matching) -> Vec<(StudentId, ProjectId)> {
    blocking_report(inst, m)
        .unwrap()
        .pairs
        .iter()
        .filter(|bp| gadget.pairs.contains(&inst.location_of(bp.student)) && gadget.projects.contains(&bp.project))
        .map(|bp| (bp.student, bp.project))
        .collect()
}

#[test]
fn gadget_matchings_have_the_two_named_blocking_pairs() {
    for b2 in [2, 3, 4] {
        let (inst, layout) = single_edge(b2);
        let gadget = &layout.gadgets[0];

        // cover {v_0}: gadget takes its v_i-preferred matching
        let m = vc_solution_to_matching(&inst, &layout, &[0]).unwrap();
        let (plus, minus) = GadgetLayout::members(gadget.g(0, 1));
        assert_eq!(
            internal_pairs(&inst, gadget, &m),
            vec![(plus, gadget.h(0, 1)), (minus, gadget.h(0, 1))]
        );

        // cover {v_1}: v_j-preferred
        let m = vc_solution_to_matching(&inst, &layout, &[1]).unwrap();
        let (plus, minus) = GadgetLayout::members(gadget.g(1, 1));
        assert_eq!(
            internal_pairs(&inst, gadget, &m),
            vec![(plus, gadget.h(0, 2)), (minus, gadget.h(0, 2))]
        );
    }
}

#[test]
fn prohibited_pairs_force_y_many_blocking_pairs_on_truncated_instance() {
    // single edge, B2 = 2, Y cut down to two projects: 8 pairs, 8! matchings
    let spec = VcGadgetSpec {
        n_v: 2,
        edges: vec![(0, 1)],
        k0: 1,
        mode: ScaleMode::Explicit { b1: 2, b2: 2 },
        rule: GadgetRule::Auto,
    };
    let (inst, layout) = from_vertex_cover(&spec).unwrap();
    let y = layout.y.len();
    let mut total = 0;
    let mut with_prohibited = 0;
    for m in enumerate_feasible(&inst) {
        total += 1;
        let prohibited = prohibited_pairs(&inst, &layout, &m);
        let non_x_on_y = prohibited.iter().any(|pp| layout.is_y(pp.project));
        if prohibited.is_empty() {
            continue;
        }
        with_prohibited += 1;
        let count = blocking_report(&inst, &m).unwrap().pair_count;
        assert!(count >= y, "prohibited {prohibited:?} but only {count} blocking pairs");
        if !non_x_on_y {
            // only past-Y placements: both members block with every y
            assert!(count >= 2 * y);
        }
    }
    assert_eq!(total, 40320);
    assert!(with_prohibited > 0);
}

/// Is the gadget matched as `v_i`-preferred while `v_i` is not held by C
/// (or `v_j`-preferred while `v_j` is not)?
fn mismatched(inst: &Instance, layout: &GadgetLayout, m: &Matching, gadget: &EdgeGadget) -> bool {
    let named = edge_gadget_matchings(inst, layout, gadget.edge).unwrap();
    let uses =
        |side: &[(LocationId, ProjectId)]| side.iter().all(|&(l, p)| m.project_of(GadgetLayout::members(l).0) == p);
    let held_by_c = |v: usize| {
        let holder = inst.students().find(|&s| m.project_of(s) == layout.v[v]).unwrap();
        layout.is_c(inst.location_of(holder))
    };
    (uses(&named.vi_preferred) && !held_by_c(gadget.edge.0)) || (uses(&named.vj_preferred) && !held_by_c(gadget.edge.1))
}

fn prohibited_free<'a>(inst: &'a Instance, layout: &'a GadgetLayout) -> impl Iterator<Item = Matching> + 'a {
    enumerate_feasible_where(inst, move |l, p| !is_prohibited(inst, layout, l, p))
}

#[test]
fn mismatched_gadget_costs_b1_blocking_pairs() {
    for b2 in [2, 3] {
        let (inst, layout) = single_edge(b2);
        let b1 = layout.b1;
        assert_eq!(2 * b2 + 2, b1);
        let gadget = &layout.gadgets[0];
        let (mut count, mut bad, mut min_agents) = (0, 0, usize::MAX);
        for m in prohibited_free(&inst, &layout) {
            count += 1;
            assert!(prohibited_pairs(&inst, &layout, &m).is_empty());
            let report = blocking_report(&inst, &m).unwrap();
            if mismatched(&inst, &layout, &m, gadget) {
                bad += 1;
                assert!(report.pair_count >= b1);
                assert!(report.agent_count >= b1);
                min_agents = min_agents.min(report.agent_count);
            } else {
                // the single C vertex covers the edge: a cheap matching
                assert_eq!(matching_to_vc(&inst, &layout, &m).len(), 1);
            }
        }
        // C/F on V (2), gadget (2), X on Y (B1!)
        assert_eq!(count, 4 * (1..=b1).product::<usize>());
        assert!(bad > 0);
        // the 2B2 + 6|E| agent count does not hold: 2B2 + 2 is attained
        assert_eq!(min_agents, 2 * b2 + 2);
    }
}

#[test]
fn uncovered_edges_cost_b1_on_triangle_with_one_cover_vertex() {
    // K0 = 1 cannot cover a triangle. X pinned to its own y keeps the
    // enumeration small; every other pair ranges over its prohibited-free
    // options.
    let (inst, layout) = from_vertex_cover(&VcGadgetSpec::scaled(3, vec![(0, 1), (0, 2), (1, 2)], 1, 2)).unwrap();
    let b1 = layout.b1;
    let allowed = |l: LocationId, p: ProjectId| {
        if layout.is_x(l) {
            layout.x.iter().position(|&x| x == l) == layout.y.iter().position(|&y| y == p)
        } else {
            !is_prohibited(&inst, &layout, l, p)
        }
    };
    let mut count = 0;
    for m in enumerate_feasible_where(&inst, allowed) {
        count += 1;
        let cover = matching_to_vc(&inst, &layout, &m);
        assert_eq!(cover.len(), 1);
        assert!(layout.gadgets.iter().any(|g| mismatched(&inst, &layout, &m, g)));
        assert!(blocking_report(&inst, &m).unwrap().pair_count >= b1);
    }
    assert_eq!(count, 6 * 8);
}

#[test]
fn cover_matchings_respect_yes_instance_bounds() {
    let (inst, layout) = from_vertex_cover(&VcGadgetSpec::scaled(3, vec![(0, 1), (0, 2), (1, 2)], 2, 3)).unwrap();
    let (n_v, e) = (3, 3);
    for cover in [[0, 1], [0, 2], [1, 2]] {
        let m = vc_solution_to_matching(&inst, &layout, &cover).unwrap();
        let report = blocking_report(&inst, &m).unwrap();
        assert!(report.pair_count <= 2 * n_v * n_v + 2 * e);
        assert!(report.agent_count <= 3 * n_v + 6 * e);
        assert_eq!(report.local_pair_count, 0);
        // exactly two internal pairs per gadget
        for gadget in &layout.gadgets {
            assert_eq!(internal_pairs(&inst, gadget, &m).len(), 2);
        }
        assert_eq!(matching_to_vc(&inst, &layout, &m), cover.into_iter().collect());
    }
}

#[test]
fn lstable_on_vc_instance_keeps_local_pairs_quiet() {
    let (inst, layout) = from_vertex_cover(&VcGadgetSpec::scaled(3, vec![(0, 1), (0, 2), (1, 2)], 2, 3)).unwrap();
    let seed = vc_solution_to_matching(&inst, &layout, &[0, 1]).unwrap();
    let subs = split_by_location(&inst, &seed).unwrap();
    assert_eq!(subs.len(), inst.num_locations());
    for sub in &subs {
        assert_eq!(sub.students.len(), 2);
        assert_eq!(sub.capacities.iter().sum::<usize>(), 2);
    }
    let out = lstable(&inst, &seed).unwrap();
    let report = blocking_report(&inst, &out).unwrap();
    assert_eq!(report.local_pair_count, 0);
    assert!(report.pair_count > 0);
}
