//! Graph k-coloring as a grouping problem.
//!
//! The cost of a coloring is the number of monochromatic ("conflicting")
//! edges. Moves recolor a single conflicting vertex. A gain matrix holding,
//! for every vertex and color, the number of neighbors currently using that
//! color makes each move delta an O(1) lookup and each move an O(deg) update.

use std::cell::RefCell;

use rand::Rng;

use crate::graph::{Graph, Vertex};
use crate::grouping::{Assignment, GroupingProblem, Move, SearchState};

/// Number of edges whose endpoints share a group.
pub fn evaluate(graph: &Graph, coloring: &Assignment) -> u64 {
    assert_eq!(
        graph.n(),
        coloring.len(),
        "assignment size differs from vertex count"
    );
    graph
        .edges()
        .iter()
        .filter(|&&(u, v)| coloring.group(u) == coloring.group(v))
        .count() as u64
}

/// The fixed-k coloring problem on a graph.
#[derive(Debug, Clone, Copy)]
pub struct KColoring<'g> {
    graph: &'g Graph,
    k: usize,
}

impl<'g> KColoring<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        Self { graph, k }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }
}

impl<'g> GroupingProblem for KColoring<'g> {
    type State = ColoringState<'g>;

    fn item_count(&self) -> usize {
        self.graph.n()
    }

    fn group_count(&self) -> usize {
        self.k
    }

    fn cost(&self, assignment: &Assignment) -> u64 {
        evaluate(self.graph, assignment)
    }

    fn attach(&self, assignment: Assignment) -> ColoringState<'g> {
        assert_eq!(
            assignment.k(),
            self.k,
            "assignment uses a different group count"
        );
        ColoringState::new(self.graph, assignment)
    }
}

/// Set of vertices with O(1) insert, remove and membership.
#[derive(Debug, Clone)]
struct VertexSet {
    members: Vec<Vertex>,
    /// Index into `members`, or `usize::MAX` when absent.
    position: Vec<usize>,
}

impl VertexSet {
    fn new(n: usize) -> Self {
        Self {
            members: Vec::new(),
            position: vec![usize::MAX; n],
        }
    }

    fn clear(&mut self) {
        for &v in &self.members {
            self.position[v] = usize::MAX;
        }
        self.members.clear();
    }

    #[inline]
    fn contains(&self, v: Vertex) -> bool {
        self.position[v] != usize::MAX
    }

    #[inline]
    fn insert(&mut self, v: Vertex) {
        if !self.contains(v) {
            self.position[v] = self.members.len();
            self.members.push(v);
        }
    }

    #[inline]
    fn remove(&mut self, v: Vertex) {
        let idx = self.position[v];
        if idx == usize::MAX {
            return;
        }
        let last = self.members.pop().expect("non-empty when a member exists");
        if last != v {
            self.members[idx] = last;
            self.position[last] = idx;
        }
        self.position[v] = usize::MAX;
    }
}

/// Incremental search state for [`KColoring`].
#[derive(Debug, Clone)]
pub struct ColoringState<'g> {
    graph: &'g Graph,
    assignment: Assignment,
    k: usize,
    /// Row-major n×k table: `gain[v * k + c]` neighbors of `v` colored `c`.
    gain: Vec<u32>,
    conflicts: u64,
    conflicting: VertexSet,
    /// Scratch buffer of equally good moves.
    ties: RefCell<Vec<Move>>,
}

impl<'g> ColoringState<'g> {
    pub fn new(graph: &'g Graph, assignment: Assignment) -> Self {
        assert_eq!(
            graph.n(),
            assignment.len(),
            "assignment size differs from vertex count"
        );
        let k = assignment.k();
        let mut state = Self {
            graph,
            k,
            gain: vec![0; graph.n() * k],
            conflicts: 0,
            conflicting: VertexSet::new(graph.n()),
            ties: RefCell::new(Vec::new()),
            assignment,
        };
        state.rebuild();
        state
    }

    fn rebuild(&mut self) {
        let k = self.k;
        self.gain.clear();
        self.gain.resize(self.graph.n() * k, 0);
        self.conflicting.clear();
        let mut twice = 0u64;
        for v in 0..self.graph.n() {
            let row = &mut self.gain[v * k..(v + 1) * k];
            for &u in self.graph.neighbors(v) {
                row[self.assignment.group(u)] += 1;
            }
            let own = row[self.assignment.group(v)];
            if own > 0 {
                twice += u64::from(own);
                self.conflicting.insert(v);
            }
        }
        self.conflicts = twice / 2;
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Neighbors of `v` currently colored `c`.
    #[inline]
    pub fn gain(&self, v: Vertex, c: usize) -> u32 {
        self.gain[v * self.k + c]
    }

    /// The gain-matrix row of `v`.
    pub fn gain_row(&self, v: Vertex) -> &[u32] {
        &self.gain[v * self.k..(v + 1) * self.k]
    }

    pub fn conflict_count(&self) -> u64 {
        self.conflicts
    }

    /// Vertices with at least one neighbor of the same color, in no
    /// particular order.
    pub fn conflicting(&self) -> &[Vertex] {
        &self.conflicting.members
    }

    pub fn is_conflicting(&self, v: Vertex) -> bool {
        self.conflicting.contains(v)
    }

    /// Cost change of recoloring `v` with `c`.
    #[inline]
    pub fn delta(&self, v: Vertex, c: usize) -> i64 {
        let row = self.gain_row(v);
        i64::from(row[c]) - i64::from(row[self.assignment.group(v)])
    }

    pub fn into_assignment(self) -> Assignment {
        self.assignment
    }
}

impl SearchState for ColoringState<'_> {
    fn cost(&self) -> u64 {
        self.conflicts
    }

    fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    fn best_improving_move<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Move> {
        let k = self.k;
        let mut ties = self.ties.borrow_mut();
        ties.clear();
        // Candidates must satisfy delta <= bound: strictly negative at first,
        // then no worse than the best delta seen so far.
        let mut bound = -1i64;
        for &v in &self.conflicting.members {
            let current = self.assignment.group(v);
            let row = &self.gain[v * k..(v + 1) * k];
            let own = i64::from(row[current]);
            if own + bound < 0 {
                continue;
            }
            for (c, &g) in row.iter().enumerate() {
                let delta = i64::from(g) - own;
                if delta > bound || c == current {
                    continue;
                }
                if delta < bound || ties.is_empty() {
                    bound = delta;
                    ties.clear();
                }
                ties.push(Move {
                    item: v,
                    group: c,
                    delta,
                });
            }
        }
        match ties.len() {
            0 => None,
            1 => Some(ties[0]),
            len => Some(ties[rng.random_range(0..len)]),
        }
    }

    fn apply_move(&mut self, v: usize, c: usize) {
        let k = self.k;
        let old = self.assignment.group(v);
        assert_ne!(old, c, "move must change the group");
        let row = &self.gain[v * k..(v + 1) * k];
        self.conflicts = (self.conflicts as i64 + i64::from(row[c]) - i64::from(row[old])) as u64;
        let now_conflicting = row[c] > 0;
        self.assignment.set(v, c);
        for &u in self.graph.neighbors(v) {
            let base = u * k;
            self.gain[base + old] -= 1;
            self.gain[base + c] += 1;
            let own = self.assignment.group(u);
            if own == old && self.gain[base + old] == 0 {
                self.conflicting.remove(u);
            } else if own == c && self.gain[base + c] == 1 {
                self.conflicting.insert(u);
            }
        }
        if now_conflicting {
            self.conflicting.insert(v);
        } else {
            self.conflicting.remove(v);
        }
    }

    fn reset(&mut self, assignment: &Assignment) {
        assert_eq!(assignment.len(), self.graph.n());
        self.assignment.overwrite(assignment);
        self.k = assignment.k();
        self.rebuild();
    }
}
