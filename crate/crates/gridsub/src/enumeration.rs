//! Backtracking enumeration of subdivisions: depth-first search over
//! candidate edges in lexicographic order, pruned by a per-candidate conflict
//! bitmask and by convexity checks applied to each point exactly once, at the
//! highest-indexed candidate touching it (after which its incident set can no
//! longer grow).
//!
//! The same engine counts subdivisions, lists them, and (with an extra
//! edge-count target plus an all-points-used requirement) counts full-point
//! triangulations, which serves as the brute-force oracle for the flip
//! module.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;
use thiserror::Error;

use crate::geom::faces::boundary_edges;
use crate::geom::{
    candidate_edges, classify_crossing, interact, point_passes_convexity, slope_class,
    BoundaryClass, CandidateFilter, Interaction, Mode, PointConfiguration, SegCrossing,
    SlopeClass,
};
use crate::{Coord, Count, Edge, Point};

/// Bitmask width of the conflict table.
pub const MAX_CANDIDATES: usize = 128;

/// Default search-node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000_000;

/// Which pairwise contacts count as conflicts when building the table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeRule {
    /// Two edges may meet only in a shared endpoint.
    Strict,
    /// Reject only intersections at a point that is not a configuration
    /// point (compatibility toggle; admits grid-point crossings and
    /// T-junctions).
    PaperLiteral,
}

impl EdgeRule {
    pub fn label(self) -> &'static str {
        match self {
            EdgeRule::Strict => "strict",
            EdgeRule::PaperLiteral => "paper-literal",
        }
    }
}

/// Knobs for one enumeration run.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub rule: EdgeRule,
    pub filter: CandidateFilter,
    pub budget_nodes: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        // Primitive candidates make the edge-subset model count polygon
        // collections exactly once: a polygon side spanning unused lattice
        // points is represented by its chain of primitive edges, never by a
        // second, longer edge drawing the same picture. This is the
        // configuration that reproduces the published grid counts; the
        // all-pairs model stays available as a sensitivity toggle.
        EnumOptions {
            rule: EdgeRule::Strict,
            filter: CandidateFilter::PrimitiveOnly,
            budget_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EnumError {
    #[error("search budget exhausted ({nodes} nodes used, budget {budget})")]
    BudgetExceeded { nodes: u64, budget: u64 },
    #[error("{count} candidate edges exceed the {MAX_CANDIDATES}-bit conflict table")]
    TooManyCandidates { count: usize },
}

/// Per-candidate bitmask of conflicting candidate indices.
pub struct ConflictTable {
    masks: Vec<u128>,
}

impl ConflictTable {
    /// Builds the symmetric table under the given rule.
    pub fn build(
        cfg: &PointConfiguration,
        edges: &[Edge],
        rule: EdgeRule,
    ) -> Result<Self, EnumError> {
        if edges.len() > MAX_CANDIDATES {
            return Err(EnumError::TooManyCandidates { count: edges.len() });
        }
        let mut masks = vec![0u128; edges.len()];
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if conflicts(cfg, &edges[i], &edges[j], rule) {
                    masks[i] |= 1u128 << j;
                    masks[j] |= 1u128 << i;
                }
            }
        }
        Ok(ConflictTable { masks })
    }

    pub fn mask(&self, i: usize) -> u128 {
        self.masks[i]
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }
}

fn conflicts(cfg: &PointConfiguration, e1: &Edge, e2: &Edge, rule: EdgeRule) -> bool {
    match rule {
        EdgeRule::Strict => interact(e1, e2) == Interaction::Conflict,
        EdgeRule::PaperLiteral => match classify_crossing(e1, e2) {
            SegCrossing::Empty => false,
            SegCrossing::Overlap => true,
            SegCrossing::At { lattice, .. } => match lattice {
                Some(p) => !cfg.contains(p),
                None => true,
            },
        },
    }
}

/// A validated set of internal edges over a configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subdivision {
    cfg: PointConfiguration,
    edges: Vec<Edge>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum SubdivisionError {
    #[error("edges {e1} and {e2} conflict")]
    Conflict { e1: Edge, e2: Edge },
    #[error("local convexity fails at {point}")]
    NonConvex { point: Point },
    #[error("edge {edge} has an endpoint outside the configuration")]
    ForeignEdge { edge: Edge },
}

impl Subdivision {
    /// Wraps an edge set after a from-scratch validation of the subdivision
    /// invariants (pairwise non-conflict under the strict rule, local
    /// convexity at every configuration point).
    pub fn new(cfg: PointConfiguration, mut edges: Vec<Edge>) -> Result<Self, SubdivisionError> {
        edges.sort();
        edges.dedup();
        let s = Subdivision { cfg, edges };
        s.validate()?;
        Ok(s)
    }

    pub fn cfg(&self) -> &PointConfiguration {
        &self.cfg
    }

    /// Internal edges, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn validate(&self) -> Result<(), SubdivisionError> {
        for e in &self.edges {
            if !(self.cfg.contains(e.a()) && self.cfg.contains(e.b())) {
                return Err(SubdivisionError::ForeignEdge { edge: *e });
            }
        }
        for (i, e1) in self.edges.iter().enumerate() {
            for e2 in &self.edges[i + 1..] {
                if interact(e1, e2) == Interaction::Conflict {
                    return Err(SubdivisionError::Conflict { e1: *e1, e2: *e2 });
                }
            }
        }
        for p in self.cfg.points() {
            if !crate::geom::local_convexity_ok(&self.cfg, &self.edges, p) {
                return Err(SubdivisionError::NonConvex { point: p });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Search space compilation
// ---------------------------------------------------------------------------

struct SearchSpace {
    edges: Vec<Edge>,
    conflict: ConflictTable,
    class: Vec<BoundaryClass>,
    /// Per candidate: its two endpoints as (point index, outward direction).
    cand_ends: Vec<[(u32, (Coord, Coord)); 2]>,
    /// Per candidate index: the points whose incident candidate set is
    /// complete once this index has been decided.
    finalize_at: Vec<Vec<u32>>,
    /// Triangulation filtering: require every non-corner point used, and the
    /// exact internal edge count implied by Euler's formula.
    require_used: bool,
    target_edges: Option<u32>,
    /// A non-corner point no candidate touches (kills triangulation counts).
    unusable_point: bool,
    /// The hull boundary itself violates the mode (a negative-slope hull
    /// side makes every subdivision non-bimonotone, the empty one included).
    hull_violates_mode: bool,
}

impl SearchSpace {
    fn build(
        cfg: &PointConfiguration,
        mode: Mode,
        opts: &EnumOptions,
        triangulations: bool,
    ) -> Result<Self, EnumError> {
        let edges = candidate_edges(cfg, mode, opts.filter);
        let conflict = ConflictTable::build(cfg, &edges, opts.rule)?;
        let points = cfg.points();
        let class: Vec<BoundaryClass> = points.iter().map(|&p| cfg.boundary_class(p)).collect();

        let index_of = |p: Point| -> u32 {
            points.iter().position(|&q| q == p).expect("endpoint is a configuration point") as u32
        };
        let cand_ends: Vec<[(u32, (Coord, Coord)); 2]> = edges
            .iter()
            .map(|e| {
                [
                    (index_of(e.a()), e.direction_from(e.a())),
                    (index_of(e.b()), e.direction_from(e.b())),
                ]
            })
            .collect();

        let mut last_touch: Vec<Option<usize>> = vec![None; points.len()];
        for (ci, ends) in cand_ends.iter().enumerate() {
            for &(p, _) in ends {
                last_touch[p as usize] = Some(ci);
            }
        }
        let mut finalize_at: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
        for (pi, lt) in last_touch.iter().enumerate() {
            if let Some(ci) = lt {
                finalize_at[*ci].push(pi as u32);
            }
        }

        let mut hull_violates_mode = false;
        if mode == Mode::Bimonotone {
            let hull = cfg.hull();
            let sides = if hull.len() == 2 { 1 } else { hull.len() };
            for i in 0..sides {
                let (u, v) = (hull[i], hull[(i + 1) % hull.len()]);
                if u != v && slope_class(&Edge::new(u, v)) == SlopeClass::Negative {
                    hull_violates_mode = true;
                }
            }
        }

        let mut target_edges = None;
        let mut unusable_point = false;
        if triangulations {
            let hull = cfg.hull();
            if hull.len() < 3 {
                unusable_point = true;
            } else {
                // All points used and all faces triangles pin the edge count:
                // E_total = V + 2*Area - 1, of which the boundary contributes
                // one unit edge per boundary point.
                let two_area = crate::geom::faces::signed_area_doubled(&hull);
                let v = points.len() as i64;
                let b = class
                    .iter()
                    .filter(|c| !matches!(c, BoundaryClass::Interior))
                    .count() as i64;
                let internal = v + two_area - 1 - b;
                if internal < 0 {
                    unusable_point = true;
                } else {
                    target_edges = Some(internal as u32);
                }
            }
            for (pi, lt) in last_touch.iter().enumerate() {
                if lt.is_none() && !matches!(class[pi], BoundaryClass::Corner) {
                    unusable_point = true;
                }
            }
        }

        Ok(SearchSpace {
            edges,
            conflict,
            class,
            cand_ends,
            finalize_at,
            require_used: triangulations,
            target_edges,
            unusable_point,
            hull_violates_mode,
        })
    }

    fn is_empty_by_construction(&self) -> bool {
        self.unusable_point || self.hull_violates_mode
    }

    fn full_mask(&self) -> u128 {
        if self.edges.len() >= 128 {
            !0u128
        } else {
            (1u128 << self.edges.len()) - 1
        }
    }
}

fn mask_from(next: usize) -> u128 {
    if next >= 128 {
        0
    } else {
        !0u128 << next
    }
}

// ---------------------------------------------------------------------------
// Budgeted depth-first search
// ---------------------------------------------------------------------------

const BUDGET_BATCH: u64 = 4096;

struct Budget {
    limit: u64,
    used: AtomicU64,
    tripped: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), tripped: AtomicBool::new(false) }
    }

    fn charge(&self, n: u64) -> Result<(), EnumError> {
        let total = self.used.fetch_add(n, AtomicOrdering::Relaxed) + n;
        if total > self.limit || self.tripped.load(AtomicOrdering::Relaxed) {
            self.tripped.store(true, AtomicOrdering::Relaxed);
            return Err(EnumError::BudgetExceeded { nodes: total, budget: self.limit });
        }
        Ok(())
    }
}

trait Sink {
    /// Called once per valid complete subset; returns false to stop early.
    fn emit(&mut self, selected: &[u16]) -> bool;
}

struct CountSink {
    n: u64,
}

impl Sink for CountSink {
    fn emit(&mut self, _selected: &[u16]) -> bool {
        self.n += 1;
        true
    }
}

struct ListSink {
    out: Vec<Vec<u16>>,
    limit: Option<usize>,
}

impl Sink for ListSink {
    fn emit(&mut self, selected: &[u16]) -> bool {
        self.out.push(selected.to_vec());
        match self.limit {
            Some(l) => self.out.len() < l,
            None => true,
        }
    }
}

struct Dfs<'a, S: Sink> {
    sp: &'a SearchSpace,
    budget: &'a Budget,
    sink: &'a mut S,
    dirs: Vec<Vec<(Coord, Coord)>>,
    selected: Vec<u16>,
    scratch: Vec<(Coord, Coord)>,
    pending_nodes: u64,
    stop: bool,
}

impl<'a, S: Sink> Dfs<'a, S> {
    fn new(sp: &'a SearchSpace, budget: &'a Budget, sink: &'a mut S) -> Self {
        Dfs {
            sp,
            budget,
            sink,
            dirs: vec![Vec::new(); sp.class.len()],
            selected: Vec::new(),
            scratch: Vec::new(),
            pending_nodes: 0,
            stop: false,
        }
    }

    fn tick(&mut self) -> Result<(), EnumError> {
        self.pending_nodes += 1;
        if self.pending_nodes >= BUDGET_BATCH {
            self.budget.charge(self.pending_nodes)?;
            self.pending_nodes = 0;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), EnumError> {
        if self.pending_nodes > 0 {
            self.budget.charge(self.pending_nodes)?;
            self.pending_nodes = 0;
        }
        Ok(())
    }

    fn include(&mut self, i: usize) {
        for &(p, d) in &self.sp.cand_ends[i] {
            self.dirs[p as usize].push(d);
        }
        self.selected.push(i as u16);
    }

    fn undo(&mut self, i: usize) {
        self.selected.pop();
        for &(p, _) in &self.sp.cand_ends[i] {
            self.dirs[p as usize].pop();
        }
    }

    fn point_ok(&mut self, p: u32) -> bool {
        let pi = p as usize;
        let class = self.sp.class[pi];
        if self.sp.require_used
            && self.dirs[pi].is_empty()
            && !matches!(class, BoundaryClass::Corner)
        {
            return false;
        }
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.dirs[pi]);
        point_passes_convexity(class, &mut self.scratch)
    }

    /// Checks every point finalizing in `[from..=to]`; returns the finalize
    /// index of the first failure.
    fn check_range(&mut self, from: usize, to: usize) -> Option<usize> {
        for i in from..=to {
            for k in 0..self.sp.finalize_at[i].len() {
                let p = self.sp.finalize_at[i][k];
                if !self.point_ok(p) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Whether the current set, with all candidates >= `next` excluded, is a
    /// valid complete subset.
    fn emission_ok(&mut self, next: usize) -> bool {
        if let Some(t) = self.sp.target_edges {
            if self.selected.len() as u32 != t {
                return false;
            }
        }
        for i in next..self.sp.edges.len() {
            for k in 0..self.sp.finalize_at[i].len() {
                let p = self.sp.finalize_at[i][k];
                if !self.point_ok(p) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, next: usize, allowed: u128) -> Result<(), EnumError> {
        self.tick()?;
        if self.emission_ok(next) && !self.sink.emit(&self.selected) {
            self.stop = true;
        }
        if self.stop {
            return Ok(());
        }
        let mut avail = allowed & mask_from(next);
        if let Some(t) = self.sp.target_edges {
            let have = self.selected.len() as u32;
            if have >= t || have + avail.count_ones() < t {
                return Ok(());
            }
        }
        while avail != 0 {
            let i = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            self.include(i);
            let fail = self.check_range(next, i);
            if fail.is_none() {
                self.run(i + 1, allowed & !self.sp.conflict.mask(i))?;
            }
            self.undo(i);
            if self.stop {
                return Ok(());
            }
            if let Some(fi) = fail {
                // The failing point's incident set is already final, so every
                // later sibling inherits the failure; only a failure at the
                // just-included candidate is branch-specific.
                if fi < i {
                    break;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parallel decomposition: fix the membership pattern of the first few
// included candidates and search the branches independently.
// ---------------------------------------------------------------------------

struct Task {
    selected: Vec<u16>,
    next: usize,
    allowed: u128,
}

const SPLIT_DEPTH: usize = 2;

fn collect_tasks(
    dfs: &mut Dfs<'_, CountSink>,
    next: usize,
    allowed: u128,
    tasks: &mut Vec<Task>,
) -> Result<(), EnumError> {
    dfs.tick()?;
    if dfs.emission_ok(next) {
        dfs.sink.emit(&dfs.selected);
    }
    let mut avail = allowed & mask_from(next);
    if let Some(t) = dfs.sp.target_edges {
        let have = dfs.selected.len() as u32;
        if have >= t || have + avail.count_ones() < t {
            return Ok(());
        }
    }
    while avail != 0 {
        let i = avail.trailing_zeros() as usize;
        avail &= avail - 1;
        dfs.include(i);
        let fail = dfs.check_range(next, i);
        if fail.is_none() {
            let child_allowed = allowed & !dfs.sp.conflict.mask(i);
            if dfs.selected.len() >= SPLIT_DEPTH {
                tasks.push(Task {
                    selected: dfs.selected.clone(),
                    next: i + 1,
                    allowed: child_allowed,
                });
            } else {
                collect_tasks(dfs, i + 1, child_allowed, tasks)?;
            }
        }
        dfs.undo(i);
        if let Some(fi) = fail {
            if fi < i {
                break;
            }
        }
    }
    Ok(())
}

fn run_task(sp: &SearchSpace, budget: &Budget, task: &Task) -> Result<u64, EnumError> {
    let mut sink = CountSink { n: 0 };
    let mut dfs = Dfs::new(sp, budget, &mut sink);
    for &i in &task.selected {
        dfs.include(i as usize);
    }
    dfs.run(task.next, task.allowed)?;
    dfs.flush()?;
    Ok(sink.n)
}

fn count_with_space(sp: &SearchSpace, opts: &EnumOptions, parallel: bool) -> Result<Count, EnumError> {
    if sp.is_empty_by_construction() {
        return Ok(Count::from(0u32));
    }
    let budget = Budget::new(opts.budget_nodes);
    if !parallel {
        let mut sink = CountSink { n: 0 };
        let mut dfs = Dfs::new(sp, &budget, &mut sink);
        dfs.run(0, sp.full_mask())?;
        dfs.flush()?;
        return Ok(Count::from(sink.n));
    }
    let mut shallow = CountSink { n: 0 };
    let mut tasks = Vec::new();
    {
        let mut dfs = Dfs::new(sp, &budget, &mut shallow);
        collect_tasks(&mut dfs, 0, sp.full_mask(), &mut tasks)?;
        dfs.flush()?;
    }
    let branch_counts: Result<Vec<u64>, EnumError> = tasks
        .par_iter()
        .map(|t| run_task(sp, &budget, t))
        .collect();
    let total: u64 = shallow.n + branch_counts?.iter().sum::<u64>();
    Ok(Count::from(total))
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// Exact number of subdivisions, searched in parallel over the current rayon
/// thread pool. Results are identical for any thread count.
pub fn count_subdivisions(
    cfg: &PointConfiguration,
    mode: Mode,
    opts: &EnumOptions,
) -> Result<Count, EnumError> {
    let sp = SearchSpace::build(cfg, mode, opts, false)?;
    count_with_space(&sp, opts, true)
}

/// Single-threaded reference implementation of [`count_subdivisions`].
pub fn count_subdivisions_serial(
    cfg: &PointConfiguration,
    mode: Mode,
    opts: &EnumOptions,
) -> Result<Count, EnumError> {
    let sp = SearchSpace::build(cfg, mode, opts, false)?;
    count_with_space(&sp, opts, false)
}

/// Emits every valid subdivision exactly once, in lexicographic edge-set
/// order. The total emitted equals [`count_subdivisions`] when `limit` is not
/// hit.
pub fn list_subdivisions(
    cfg: &PointConfiguration,
    mode: Mode,
    opts: &EnumOptions,
    limit: Option<usize>,
) -> Result<Vec<Subdivision>, EnumError> {
    let sp = SearchSpace::build(cfg, mode, opts, false)?;
    let sets = list_with_space(&sp, opts, limit)?;
    Ok(sets
        .into_iter()
        .map(|sel| Subdivision {
            cfg: *cfg,
            edges: sel.iter().map(|&i| sp.edges[i as usize]).collect(),
        })
        .collect())
}

fn list_with_space(
    sp: &SearchSpace,
    opts: &EnumOptions,
    limit: Option<usize>,
) -> Result<Vec<Vec<u16>>, EnumError> {
    if sp.is_empty_by_construction() || limit == Some(0) {
        return Ok(Vec::new());
    }
    let budget = Budget::new(opts.budget_nodes);
    let mut sink = ListSink { out: Vec::new(), limit };
    let mut dfs = Dfs::new(sp, &budget, &mut sink);
    dfs.run(0, sp.full_mask())?;
    dfs.flush()?;
    Ok(sink.out)
}

/// Counts subdivisions that are full-point triangulations: every non-corner
/// point has an incident edge and every face is a triangle (enforced through
/// the exact Euler edge-count criterion; see the flip module's oracle tests
/// for the face-level cross-check).
pub fn count_full_triangulations(
    cfg: &PointConfiguration,
    mode: Mode,
    opts: &EnumOptions,
) -> Result<Count, EnumError> {
    let sp = SearchSpace::build(cfg, mode, opts, true)?;
    count_with_space(&sp, opts, true)
}

/// Lists full-point triangulations as complete sorted edge sets, boundary
/// unit edges included, for set comparison against flip-BFS.
pub fn list_full_triangulations(
    cfg: &PointConfiguration,
    mode: Mode,
    opts: &EnumOptions,
) -> Result<Vec<Vec<Edge>>, EnumError> {
    let sp = SearchSpace::build(cfg, mode, opts, true)?;
    let sets = list_with_space(&sp, opts, None)?;
    Ok(sets
        .into_iter()
        .map(|sel| {
            let internal: Vec<Edge> = sel.iter().map(|&i| sp.edges[i as usize]).collect();
            let mut full = internal.clone();
            full.extend(boundary_edges(cfg, &internal));
            full.sort();
            full.dedup();
            full
        })
        .collect())
}
