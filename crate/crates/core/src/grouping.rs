//! Problem-independent grouping machinery: assignments of items to groups,
//! the contract a concrete grouping problem fulfils, and steepest descent.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("group count must be at least 1")]
    NoGroups,
    #[error("item {item} assigned to group {group}, but only {k} groups exist")]
    GroupOutOfRange { item: usize, group: usize, k: usize },
}

/// A partition of items `0..n` into `k` (possibly empty) groups, stored as
/// the group index of every item.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    group_of: Vec<usize>,
    k: usize,
}

impl Assignment {
    pub fn new(group_of: Vec<usize>, k: usize) -> Result<Self, AssignmentError> {
        if k == 0 {
            return Err(AssignmentError::NoGroups);
        }
        if let Some((item, &group)) = group_of.iter().enumerate().find(|(_, &g)| g >= k) {
            return Err(AssignmentError::GroupOutOfRange { item, group, k });
        }
        Ok(Self { group_of, k })
    }

    /// Every item in `group`.
    pub fn filled(n: usize, k: usize, group: usize) -> Self {
        assert!(group < k, "group {group} out of range for k = {k}");
        Self {
            group_of: vec![group; n],
            k,
        }
    }

    /// Each item in a uniformly random group.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        assert!(k >= 1);
        Self {
            group_of: (0..n).map(|_| rng.random_range(0..k)).collect(),
            k,
        }
    }

    #[inline]
    pub fn group(&self, item: usize) -> usize {
        self.group_of[item]
    }

    #[inline]
    pub fn set(&mut self, item: usize, group: usize) {
        debug_assert!(group < self.k);
        self.group_of[item] = group;
    }

    pub fn len(&self) -> usize {
        self.group_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group_of.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.group_of
    }

    /// Members of each group, in item order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k];
        for (item, &g) in self.group_of.iter().enumerate() {
            groups[g].push(item);
        }
        groups
    }

    pub(crate) fn overwrite(&mut self, other: &Assignment) {
        self.k = other.k;
        self.group_of.clear();
        self.group_of.extend_from_slice(&other.group_of);
    }
}

/// Moving `item` into `group` changes the cost by `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub item: usize,
    pub group: usize,
    pub delta: i64,
}

/// A grouping problem with a fixed number of groups.
///
/// `cost` is the evaluation function; a cost of zero marks a feasible
/// solution.
pub trait GroupingProblem {
    type State: SearchState;

    fn item_count(&self) -> usize;

    fn group_count(&self) -> usize;

    fn cost(&self, assignment: &Assignment) -> u64;

    /// Builds the incremental search state for `assignment`.
    fn attach(&self, assignment: Assignment) -> Self::State;
}

/// Mutable search state with incremental move evaluation.
pub trait SearchState {
    fn cost(&self) -> u64;

    fn assignment(&self) -> &Assignment;

    /// A move of minimal delta among the neighborhood, if that delta is
    /// negative. Ties are broken uniformly at random.
    fn best_improving_move<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Move>;

    fn apply_move(&mut self, item: usize, group: usize);

    /// Replaces the current assignment, rebuilding any incremental data.
    fn reset(&mut self, assignment: &Assignment);
}

/// Outcome of [`descent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub assignment: Assignment,
    pub cost: u64,
    pub moves: u64,
}

/// Steepest descent from `start`: repeatedly applies a best strictly
/// improving move until none exists or the cost reaches zero.
pub fn descent<P, R>(problem: &P, start: Assignment, rng: &mut R) -> Descent
where
    P: GroupingProblem,
    R: Rng + ?Sized,
{
    let mut state = problem.attach(start);
    let moves = descend(&mut state, rng);
    Descent {
        cost: state.cost(),
        assignment: state.assignment().clone(),
        moves,
    }
}

/// In-place form of [`descent`]. Returns the number of accepted moves.
pub fn descend<S, R>(state: &mut S, rng: &mut R) -> u64
where
    S: SearchState,
    R: Rng + ?Sized,
{
    let mut moves = 0;
    while state.cost() > 0 {
        match state.best_improving_move(rng) {
            Some(mv) => {
                debug_assert!(mv.delta < 0);
                state.apply_move(mv.item, mv.group);
                moves += 1;
            }
            None => break,
        }
    }
    moves
}
