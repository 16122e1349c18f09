//! Vertex Cover to L2 Divisible ML-LRSM.
//!
//! Every location holds one "local pair" of two students with identical
//! lists; every project has capacity 2, so a feasible matching assigns whole
//! pairs to projects. Pairs are laid out as `C | F | G (per edge) | X` and
//! projects as `V | H (per edge) | Y`. Student `2k` is the positive member of
//! pair `k` and student `2k + 1` the negative one.
//!
//! Each edge `(i, j)` gets a gadget of `2 B2` pairs `g_{b,a}` and `2 B2`
//! projects `h_{b,a}` (`b ∈ {0, 1}`, `1 <= a <= B2`), stored at position
//! `b * B2 + (a - 1)`. A gadget pair ranks its first choice, the vertex
//! project `v_i` (b = 0) or `v_j` (b = 1), its third choice, then `Y`, then
//! everything else. All projects share one list:
//! `X⁺ | C | G* | F | X⁻`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{LocationId, ProjectId, StudentId};
use crate::matching::Matching;
use crate::model::Instance;
use crate::optimize::Objective;

/// Upper bound on local pairs a generated instance may have. Rank tables are
/// quadratic in the agent count.
pub const MAX_LOCAL_PAIRS: usize = 2048;

/// How the gadget sizes `B1` and `B2` are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScaleMode {
    /// `c = ⌈8/ε⌉` (BP) or `⌈9/ε⌉` (BA), `B1 = n_v^c`, `B2 = n_v^c / 2 - |E|`.
    Faithful { epsilon: f64, objective: Objective },
    /// Caller picks `B2 >= 2`; `B1 = 2 (B2 + |E|)` so that `2 B2 + 2|E| = B1`.
    Scaled { b2: usize },
    /// Both sizes given directly. Used for truncated variants (e.g. a small
    /// `Y` block) where the counting identity is deliberately not kept.
    Explicit { b1: usize, b2: usize },
}

/// Which third choices the `g_{0,a}` pairs get.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetRule {
    /// The irregular table: `a = 1 → h_{1,1}`, `a = B2 → h_{0,1}`,
    /// `a = 2 → h_{0,3}`, `a = B2 - 1 → h_{1,B2}`, otherwise `h_{0,a+1}`
    /// (earlier entries win when they coincide). Only forms a single cycle for
    /// `B2 <= 3`.
    Verbatim,
    /// `a = 1 → h_{1,1}`, `a = B2 → h_{0,1}`, otherwise `h_{0,a+1}`: the
    /// assignment under which every gadget is one cycle of length `4 B2`.
    SingleCycle,
    /// Verbatim, falling back to [`GadgetRule::SingleCycle`] when the cycle
    /// self-check fails.
    #[default]
    Auto,
}

impl fmt::Display for GadgetRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetRule::Verbatim => "verbatim",
            GadgetRule::SingleCycle => "single_cycle",
            GadgetRule::Auto => "auto",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VcGadgetSpec {
    pub n_v: usize,
    /// 0-based vertex pairs with `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub k0: usize,
    pub mode: ScaleMode,
    #[serde(default)]
    pub rule: GadgetRule,
}

impl VcGadgetSpec {
    pub fn scaled(n_v: usize, edges: Vec<(usize, usize)>, k0: usize, b2: usize) -> Self {
        Self {
            n_v,
            edges,
            k0,
            mode: ScaleMode::Scaled { b2 },
            rule: GadgetRule::Auto,
        }
    }

    pub fn with_rule(mut self, rule: GadgetRule) -> Self {
        self.rule = rule;
        self
    }

    /// Validates the graph and returns `(B1, B2)`.
    pub fn sizes(&self) -> Result<(usize, usize)> {
        let bad = |msg: String| Err(Error::InvalidReductionInput(msg));
        if self.n_v == 0 {
            return bad("graph has no vertices".into());
        }
        if self.k0 == 0 || self.k0 > self.n_v {
            return bad(format!("K0 = {} must lie in 1..={}", self.k0, self.n_v));
        }
        let mut seen = BTreeSet::new();
        for &(i, j) in &self.edges {
            if i >= j || j >= self.n_v {
                return bad(format!("edge ({i},{j}) must satisfy i < j < {}", self.n_v));
            }
            if !seen.insert((i, j)) {
                return bad(format!("edge ({i},{j}) listed twice"));
            }
        }
        let e = self.edges.len();
        let (b1, b2) = match self.mode {
            ScaleMode::Scaled { b2 } => {
                let b1 = b2
                    .checked_add(e)
                    .and_then(|x| x.checked_mul(2))
                    .ok_or_else(|| Error::InvalidReductionInput("B1 overflows".into()))?;
                (b1, b2)
            }
            ScaleMode::Explicit { b1, b2 } => (b1, b2),
            ScaleMode::Faithful { epsilon, objective } => {
                if !(epsilon.is_finite() && epsilon > 0.0) {
                    return bad(format!("epsilon must be positive, got {epsilon}"));
                }
                let numerator = match objective {
                    Objective::Bp => 8.0,
                    Objective::Ba => 9.0,
                };
                let c = (numerator / epsilon).ceil();
                if c > f64::from(u32::MAX) {
                    return bad(format!("exponent {c} too large"));
                }
                let b1 = self
                    .n_v
                    .checked_pow(c as u32)
                    .ok_or_else(|| Error::InvalidReductionInput(format!("n_v^{c} overflows")))?;
                if b1 % 2 != 0 {
                    return bad(format!("n_v^c = {b1} is odd, so B2 = n_v^c/2 - |E| is not an integer"));
                }
                let b2 = (b1 / 2)
                    .checked_sub(e)
                    .ok_or_else(|| Error::InvalidReductionInput("B2 would be negative".into()))?;
                (b1, b2)
            }
        };
        if b2 < 2 {
            return bad(format!("B2 = {b2} must be at least 2"));
        }
        if b1 == 0 {
            return bad("B1 must be positive".into());
        }
        let pairs = 2usize
            .checked_mul(b2)
            .and_then(|x| x.checked_mul(e))
            .and_then(|x| x.checked_add(self.n_v))
            .and_then(|x| x.checked_add(b1));
        match pairs {
            Some(n) if n <= MAX_LOCAL_PAIRS => Ok((b1, b2)),
            _ => bad(format!("instance would exceed {MAX_LOCAL_PAIRS} local pairs")),
        }
    }
}

/// Agents of one edge gadget, indexed `b * B2 + (a - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeGadget {
    pub edge: (usize, usize),
    pub pairs: Vec<LocationId>,
    pub projects: Vec<ProjectId>,
}

impl EdgeGadget {
    fn b2(&self) -> usize {
        self.pairs.len() / 2
    }

    /// Pair `g_{b,a}`, with `a` 1-based.
    pub fn g(&self, b: usize, a: usize) -> LocationId {
        self.pairs[b * self.b2() + a - 1]
    }

    /// Project `h_{b,a}`, with `a` 1-based.
    pub fn h(&self, b: usize, a: usize) -> ProjectId {
        self.projects[b * self.b2() + a - 1]
    }
}

fn gadget_label(kind: char, k: usize, b2: usize) -> String {
    format!("{kind}_{{{},{}}}", k / b2, k % b2 + 1)
}

/// Where every construction role landed in the generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetLayout {
    pub n_v: usize,
    pub k0: usize,
    pub b1: usize,
    pub b2: usize,
    /// Rule actually used for the third choices (never `Auto`).
    pub rule: GadgetRule,
    pub c: Vec<LocationId>,
    pub f: Vec<LocationId>,
    pub x: Vec<LocationId>,
    pub v: Vec<ProjectId>,
    pub y: Vec<ProjectId>,
    pub gadgets: Vec<EdgeGadget>,
}

impl GadgetLayout {
    /// `(positive, negative)` members of a local pair.
    pub fn members(pair: LocationId) -> (StudentId, StudentId) {
        (StudentId(2 * pair.0), StudentId(2 * pair.0 + 1))
    }

    pub fn gadget(&self, edge: (usize, usize)) -> Option<&EdgeGadget> {
        self.gadgets.iter().find(|g| g.edge == edge)
    }

    pub fn is_x(&self, pair: LocationId) -> bool {
        self.x.first().is_some_and(|first| pair >= *first)
    }

    pub fn is_c(&self, pair: LocationId) -> bool {
        pair.0 < self.k0
    }

    pub fn is_y(&self, project: ProjectId) -> bool {
        self.y.first().is_some_and(|first| project >= *first)
    }

    pub fn role_map(&self) -> RoleMap {
        let key = |g: &EdgeGadget| format!("{},{}", g.edge.0, g.edge.1);
        RoleMap {
            c: self.c.iter().map(|l| l.0).collect(),
            f: self.f.iter().map(|l| l.0).collect(),
            g: self
                .gadgets
                .iter()
                .map(|g| (key(g), g.pairs.iter().map(|l| l.0).collect()))
                .collect(),
            x: self.x.iter().map(|l| l.0).collect(),
            v: self.v.iter().map(|p| p.0).collect(),
            h: self
                .gadgets
                .iter()
                .map(|g| (key(g), g.projects.iter().map(|p| p.0).collect()))
                .collect(),
            y: self.y.iter().map(|p| p.0).collect(),
        }
    }
}

/// Role-map sidecar: pair (location) ids for student roles, project ids for
/// project roles. Gadget keys are `"i,j"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleMap {
    #[serde(rename = "C")]
    pub c: Vec<usize>,
    #[serde(rename = "F")]
    pub f: Vec<usize>,
    #[serde(rename = "G")]
    pub g: BTreeMap<String, Vec<usize>>,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "V")]
    pub v: Vec<usize>,
    #[serde(rename = "H")]
    pub h: BTreeMap<String, Vec<usize>>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
}

fn layout_for(spec: &VcGadgetSpec, b1: usize, b2: usize, rule: GadgetRule) -> GadgetLayout {
    let n_v = spec.n_v;
    let mut next_pair = 0usize;
    let mut take_pairs = |n: usize| {
        let r = (next_pair..next_pair + n).map(LocationId).collect::<Vec<_>>();
        next_pair += n;
        r
    };
    let c = take_pairs(spec.k0);
    let f = take_pairs(n_v - spec.k0);
    let gadget_pairs: Vec<_> = spec.edges.iter().map(|_| take_pairs(2 * b2)).collect();
    let x = take_pairs(b1);

    let mut next_project = 0usize;
    let mut take_projects = |n: usize| {
        let r = (next_project..next_project + n).map(ProjectId).collect::<Vec<_>>();
        next_project += n;
        r
    };
    let v = take_projects(n_v);
    let gadget_projects: Vec<_> = spec.edges.iter().map(|_| take_projects(2 * b2)).collect();
    let y = take_projects(b1);

    let gadgets = spec
        .edges
        .iter()
        .zip(gadget_pairs.into_iter().zip(gadget_projects))
        .map(|(&edge, (pairs, projects))| EdgeGadget { edge, pairs, projects })
        .collect();

    GadgetLayout {
        n_v,
        k0: spec.k0,
        b1,
        b2,
        rule,
        c,
        f,
        x,
        v,
        y,
        gadgets,
    }
}

/// Third choice of `g_{0,a}` as a 1-based `(b, a)` index into `H`.
fn third_choice_b0(a: usize, b2: usize, rule: GadgetRule) -> (usize, usize) {
    match rule {
        GadgetRule::Verbatim => {
            if a == 1 {
                (1, 1)
            } else if a == b2 {
                (0, 1)
            } else if a == 2 {
                (0, 3)
            } else if a == b2 - 1 {
                (1, b2)
            } else {
                (0, a + 1)
            }
        }
        GadgetRule::SingleCycle | GadgetRule::Auto => {
            if a == 1 {
                (1, 1)
            } else if a == b2 {
                (0, 1)
            } else {
                (0, a + 1)
            }
        }
    }
}

fn build(layout: &GadgetLayout) -> Result<Instance> {
    let n_pairs = layout.x.last().map_or(0, |l| l.0 + 1);
    let n_projects = n_pairs;
    let b2 = layout.b2;

    // one list per pair, shared by both members
    let mut pair_lists: Vec<Vec<ProjectId>> = vec![Vec::new(); n_pairs];
    let complete = |head: Vec<ProjectId>| -> Vec<ProjectId> {
        let mut listed = vec![false; n_projects];
        for p in &head {
            listed[p.0] = true;
        }
        let mut list = head;
        list.extend((0..n_projects).map(ProjectId).filter(|p| !listed[p.0]));
        list
    };

    for &pair in layout.c.iter().chain(&layout.f) {
        let mut head = layout.v.clone();
        head.extend(&layout.y);
        pair_lists[pair.0] = complete(head);
    }
    for gadget in &layout.gadgets {
        let (vi, vj) = (layout.v[gadget.edge.0], layout.v[gadget.edge.1]);
        for a in 1..=b2 {
            let (tb, ta) = third_choice_b0(a, b2, layout.rule);
            let mut head = vec![gadget.h(0, a), vi, gadget.h(tb, ta)];
            head.extend(&layout.y);
            pair_lists[gadget.g(0, a).0] = complete(head);

            let first = if a == 1 { gadget.h(0, 2) } else { gadget.h(1, a) };
            let third = gadget.h(1, a % b2 + 1);
            let mut head = vec![first, vj, third];
            head.extend(&layout.y);
            pair_lists[gadget.g(1, a).0] = complete(head);
        }
    }
    for (i, &pair) in layout.x.iter().enumerate() {
        let mut head = vec![layout.y[i]];
        head.extend(layout.y.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &p)| p));
        pair_lists[pair.0] = complete(head);
    }

    // shared project list: X⁺ | C | G* | F | X⁻, positive member first
    let (plus, minus) = (
        |l: LocationId| StudentId(2 * l.0),
        |l: LocationId| StudentId(2 * l.0 + 1),
    );
    let both = |l: &LocationId| [plus(*l), minus(*l)];
    let mut project_list: Vec<StudentId> = layout.x.iter().map(|&l| plus(l)).collect();
    project_list.extend(layout.c.iter().flat_map(both));
    for gadget in &layout.gadgets {
        let order = std::iter::once(gadget.g(1, 1))
            .chain((1..=b2).map(|a| gadget.g(0, a)))
            .chain((2..=b2).map(|a| gadget.g(1, a)));
        project_list.extend(order.flat_map(|l| both(&l)));
    }
    project_list.extend(layout.f.iter().flat_map(both));
    project_list.extend(layout.x.iter().map(|&l| minus(l)));

    let students = pair_lists
        .into_iter()
        .enumerate()
        .flat_map(|(l, list)| [(LocationId(l), list.clone()), (LocationId(l), list)])
        .collect();
    let projects = (0..n_projects).map(|_| (2, project_list.clone())).collect();
    Instance::new(n_pairs, students, projects)
}

/// Generates the instance and layout, then checks every edge gadget's
/// non-prohibited graph is a single `4 B2` cycle.
pub fn from_vertex_cover(spec: &VcGadgetSpec) -> Result<(Instance, GadgetLayout)> {
    let (b1, b2) = spec.sizes()?;
    let attempt = |rule: GadgetRule| -> Result<(Instance, GadgetLayout)> {
        let layout = layout_for(spec, b1, b2, rule);
        let instance = build(&layout)?;
        for gadget in &layout.gadgets {
            gadget_cycle(&instance, &layout, gadget)?;
        }
        Ok((instance, layout))
    };
    match spec.rule {
        GadgetRule::Auto => match attempt(GadgetRule::Verbatim) {
            Err(Error::GadgetCycleBroken { .. }) => attempt(GadgetRule::SingleCycle),
            other => other,
        },
        rule => attempt(rule),
    }
}

/// Rank of the last `Y` project in a pair's list; anything ranked later is
/// prohibited for that pair.
fn y_cutoff(instance: &Instance, layout: &GadgetLayout, pair: LocationId) -> usize {
    let (s, _) = GadgetLayout::members(pair);
    layout.y.iter().map(|&p| instance.student_rank(s, p)).max().unwrap_or(0)
}

fn non_prohibited_in_gadget(
    instance: &Instance,
    layout: &GadgetLayout,
    gadget: &EdgeGadget,
    pair: LocationId,
) -> Vec<usize> {
    let (s, _) = GadgetLayout::members(pair);
    let cutoff = y_cutoff(instance, layout, pair);
    gadget
        .projects
        .iter()
        .enumerate()
        .filter(|(_, &p)| instance.student_rank(s, p) < cutoff)
        .map(|(k, _)| k)
        .collect()
}

/// Walks the gadget's non-prohibited bipartite graph. Returns the cycle as a
/// list of `(g position, h position)` edges starting from `g_{0,1}` and its
/// first choice, or `GadgetCycleBroken`.
fn gadget_cycle(instance: &Instance, layout: &GadgetLayout, gadget: &EdgeGadget) -> Result<Vec<(usize, usize)>> {
    let n = gadget.pairs.len();
    let b2 = n / 2;
    let broken = |detail: String| Error::GadgetCycleBroken {
        i: gadget.edge.0,
        j: gadget.edge.1,
        expected: 2 * n,
        detail,
    };

    let g_adj: Vec<Vec<usize>> = gadget
        .pairs
        .iter()
        .map(|&l| non_prohibited_in_gadget(instance, layout, gadget, l))
        .collect();
    let mut h_adj = vec![Vec::new(); n];
    for (g, hs) in g_adj.iter().enumerate() {
        for &h in hs {
            h_adj[h].push(g);
        }
    }
    for (g, hs) in g_adj.iter().enumerate() {
        if hs.len() != 2 {
            return Err(broken(format!("{} has degree {}", gadget_label('g', g, b2), hs.len())));
        }
    }
    for (h, gs) in h_adj.iter().enumerate() {
        if gs.len() != 2 {
            return Err(broken(format!("{} has degree {}", gadget_label('h', h, b2), gs.len())));
        }
    }

    // start at g_{0,1} along its first choice, which is the earlier-ranked
    // of its two gadget neighbours
    let (s0, _) = GadgetLayout::members(gadget.pairs[0]);
    let rank = |h: usize| instance.student_rank(s0, gadget.projects[h]);
    let first_h = *g_adj[0].iter().min_by_key(|&&h| rank(h)).expect("degree 2");

    let other = |xs: &[usize], x: usize| if xs[0] == x { xs[1] } else { xs[0] };
    let mut edges = Vec::with_capacity(2 * n);
    let (mut g, mut h) = (0usize, first_h);
    loop {
        edges.push((g, h));
        g = other(&h_adj[h], g);
        edges.push((g, h));
        h = other(&g_adj[g], h);
        if g == 0 || edges.len() > 2 * n {
            break;
        }
    }
    if edges.len() != 2 * n {
        return Err(broken(format!("cycle through g_{{0,1}} has length {}", edges.len())));
    }
    Ok(edges)
}

/// The two prohibited-pair-free perfect matchings of one edge gadget, as
/// `(pair, project)` lists sorted by pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMatchings {
    /// `g_{0,a}` take their third choices and would prefer `v_i`.
    pub vi_preferred: Vec<(LocationId, ProjectId)>,
    /// `g_{1,a}` take their third choices and would prefer `v_j`.
    pub vj_preferred: Vec<(LocationId, ProjectId)>,
}

pub fn edge_gadget_matchings(
    instance: &Instance,
    layout: &GadgetLayout,
    edge: (usize, usize),
) -> Result<GadgetMatchings> {
    let gadget = layout
        .gadget(edge)
        .ok_or_else(|| Error::InvalidReductionInput(format!("no gadget for edge ({},{})", edge.0, edge.1)))?;
    let cycle = gadget_cycle(instance, layout, gadget)?;
    let pick = |parity: usize| {
        let mut m: Vec<_> = cycle
            .iter()
            .skip(parity)
            .step_by(2)
            .map(|&(g, h)| (gadget.pairs[g], gadget.projects[h]))
            .collect();
        m.sort_unstable();
        m
    };
    // even edges put g_{0,1} on its first choice: the v_j-preferred matching
    Ok(GadgetMatchings {
        vj_preferred: pick(0),
        vi_preferred: pick(1),
    })
}

/// Matching built from a vertex cover of size `K0`: `C` pairs take the cover
/// vertices and `F` pairs the rest (both ascending), each gadget takes its
/// `v_i`-preferred matching when `v_i` is in the cover and its
/// `v_j`-preferred one otherwise, and `x_i` takes `y_i`.
pub fn vc_solution_to_matching(instance: &Instance, layout: &GadgetLayout, cover: &[usize]) -> Result<Matching> {
    let cover: BTreeSet<usize> = cover.iter().copied().collect();
    if cover.len() != layout.k0 || cover.iter().any(|&v| v >= layout.n_v) {
        return Err(Error::InvalidReductionInput(format!(
            "cover must hold {} distinct vertices below {}",
            layout.k0, layout.n_v
        )));
    }
    if let Some(g) = layout
        .gadgets
        .iter()
        .find(|g| !cover.contains(&g.edge.0) && !cover.contains(&g.edge.1))
    {
        return Err(Error::NotACover(g.edge.0, g.edge.1));
    }

    let mut assign = vec![ProjectId(usize::MAX); instance.num_students()];
    let mut put = |pair: LocationId, p: ProjectId| {
        let (a, b) = GadgetLayout::members(pair);
        assign[a.0] = p;
        assign[b.0] = p;
    };
    for (&pair, &v) in layout.c.iter().zip(&cover) {
        put(pair, layout.v[v]);
    }
    let uncovered = (0..layout.n_v).filter(|v| !cover.contains(v));
    for (&pair, v) in layout.f.iter().zip(uncovered) {
        put(pair, layout.v[v]);
    }
    for gadget in &layout.gadgets {
        let both = edge_gadget_matchings(instance, layout, gadget.edge)?;
        let chosen = if cover.contains(&gadget.edge.0) {
            both.vi_preferred
        } else {
            both.vj_preferred
        };
        for (pair, p) in chosen {
            put(pair, p);
        }
    }
    for (&pair, &p) in layout.x.iter().zip(&layout.y) {
        put(pair, p);
    }
    Ok(Matching::new(assign))
}

/// Vertices whose project is held by a `C` pair.
pub fn matching_to_vc(instance: &Instance, layout: &GadgetLayout, matching: &Matching) -> BTreeSet<usize> {
    let mut holder = vec![None; instance.num_projects()];
    for s in instance.students() {
        if let Some(slot) = holder.get_mut(matching.project_of(s).0) {
            slot.get_or_insert(instance.location_of(s));
        }
    }
    layout
        .v
        .iter()
        .enumerate()
        .filter(|(_, p)| holder[p.0].is_some_and(|l| layout.is_c(l)))
        .map(|(v, _)| v)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProhibitedPair {
    pub pair: LocationId,
    pub project: ProjectId,
}

/// Pairs matched to a project ranked after their `Y` block, and non-`X` pairs
/// matched into `Y`. Reads each pair's positive member.
pub fn prohibited_pairs(instance: &Instance, layout: &GadgetLayout, matching: &Matching) -> Vec<ProhibitedPair> {
    instance
        .locations()
        .filter_map(|pair| {
            let (s, _) = GadgetLayout::members(pair);
            let project = matching.project_of(s);
            let past_y = instance.student_rank(s, project) > y_cutoff(instance, layout, pair);
            let into_y = layout.is_y(project) && !layout.is_x(pair);
            (past_y || into_y).then_some(ProhibitedPair { pair, project })
        })
        .collect()
}

/// Whether `(pair, project)` would be prohibited; used to restrict
/// enumeration to prohibited-pair-free matchings.
pub fn is_prohibited(instance: &Instance, layout: &GadgetLayout, pair: LocationId, project: ProjectId) -> bool {
    let (s, _) = GadgetLayout::members(pair);
    instance.student_rank(s, project) > y_cutoff(instance, layout, pair) || (layout.is_y(project) && !layout.is_x(pair))
}
