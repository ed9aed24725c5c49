//! The state-based search for approximate explicit maximal objects.
//!
//! A [`State`] assigns every enumeration index either `In` (the element is
//! currently in the candidate set `M`) or `Out(code)` (the element was
//! excluded, with `code` as evidence). Only a finite prefix is stored; every
//! index past the prefix is implicitly `In`.
//!
//! Each step asks a counterexample functional for a pair `(nᵢ, pᵢ)`, scans
//! `n = 0..=nᵢ` for the first `In` index whose initial segment
//! `M↾n ∪ {x_n}` is refuted by `pᵢ`, and if one is found excludes it and
//! resets every later index to `In`. The run ends when no index qualifies.

use std::marker::PhantomData;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateEntry<C> {
    In,
    Out(C),
}

impl<C> StateEntry<C> {
    pub fn is_in(&self) -> bool {
        matches!(self, StateEntry::In)
    }

    pub fn code(&self) -> Option<&C> {
        match self {
            StateEntry::In => None,
            StateEntry::Out(code) => Some(code),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State<C> {
    prefix: Vec<StateEntry<C>>,
}

impl<C> Default for State<C> {
    fn default() -> Self {
        State { prefix: Vec::new() }
    }
}

impl<C> State<C> {
    /// Every entry `In`: `M = X` and no evidence recorded.
    pub fn initial() -> Self {
        Self::default()
    }

    pub fn prefix(&self) -> &[StateEntry<C>] {
        &self.prefix
    }

    pub fn is_in(&self, n: usize) -> bool {
        self.prefix.get(n).is_none_or(StateEntry::is_in)
    }

    /// The evidence recorded for an excluded index.
    pub fn code(&self, n: usize) -> Option<&C> {
        self.prefix.get(n).and_then(StateEntry::code)
    }

    /// Indices `< len` that are currently in `M`.
    pub fn members(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..len).filter(move |&n| self.is_in(n))
    }

    /// Indices with recorded evidence, in ascending order.
    pub fn excluded(&self) -> impl Iterator<Item = (usize, &C)> + '_ {
        self.prefix.iter().enumerate().filter_map(|(n, e)| e.code().map(|c| (n, c)))
    }

    /// Ascending listing of `M↾n ∪ {x_n}` as enumeration indices.
    pub fn segment_with(&self, n: usize) -> Vec<usize> {
        let mut gens: Vec<usize> = self.members(n).collect();
        gens.push(n);
        gens
    }

    /// `s↾n :: code :: λk.In`.
    pub fn excluding(&self, n: usize, code: C) -> Self
    where
        C: Clone,
    {
        let mut prefix: Vec<StateEntry<C>> = self.prefix.iter().take(n).cloned().collect();
        prefix.resize_with(n, || StateEntry::In);
        prefix.push(StateEntry::Out(code));
        State { prefix }
    }
}

impl<C> State<C> {
    /// Entry at `n`, with the implicit tail reported as `In`.
    pub fn entry(&self, n: usize) -> StateEntry<&C> {
        match self.code(n) {
            None => StateEntry::In,
            Some(code) => StateEntry::Out(code),
        }
    }
}

/// The functional pair `(ω, φ)`: maps a state to a search bound and a
/// candidate counterexample.
pub trait CounterexampleFunctional<C> {
    fn query(&self, state: &State<C>) -> Result<Query<C>>;
}

impl<C, F> CounterexampleFunctional<C> for F
where
    F: Fn(&State<C>) -> Result<Query<C>>,
{
    fn query(&self, state: &State<C>) -> Result<Query<C>> {
        self(state)
    }
}

/// Decides `¬R_A(code)` for `A` given as ascending enumeration indices.
pub trait Refutation<C> {
    fn refutes(&self, generators: &[usize], code: &C) -> bool;
}

impl<C, F> Refutation<C> for F
where
    F: Fn(&[usize], &C) -> bool,
{
    fn refutes(&self, generators: &[usize], code: &C) -> bool {
        self(generators, code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query<C> {
    pub bound: usize,
    pub code: C,
}

impl<C> Query<C> {
    pub fn new(bound: usize, code: C) -> Self {
        Query { bound, code }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step<C> {
    Terminated { query: Query<C> },
    Next { query: Query<C>, removed: usize, state: State<C> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Terminated,
    Removed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep<C> {
    pub i: usize,
    pub n_i: usize,
    pub p: C,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<C> {
    pub steps: Vec<TraceStep<C>>,
}

impl<C> Default for Trace<C> {
    fn default() -> Self {
        Trace { steps: Vec::new() }
    }
}

impl<C> Trace<C> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn removals(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().filter_map(|s| match s.outcome {
            Outcome::Removed(n) => Some(n),
            Outcome::Terminated => None,
        })
    }

    /// Replays the recorded removals from the initial state.
    pub fn replay(&self) -> State<C>
    where
        C: Clone,
    {
        self.steps.iter().fold(State::initial(), |s, step| match step.outcome {
            Outcome::Removed(n) => s.excluding(n, step.p.clone()),
            Outcome::Terminated => s,
        })
    }

    /// Every state visited, starting with the initial one.
    pub fn states(&self) -> Vec<State<C>>
    where
        C: Clone,
    {
        let mut states = vec![State::initial()];
        for n in self.removals() {
            let step = &self.steps[states.len() - 1];
            let next = states.last().unwrap().excluding(n, step.p.clone());
            states.push(next);
        }
        states
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String
    where
        C: Serialize,
    {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&serde_json::to_string(step).expect("trace steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> serde_json::Result<Self>
    where
        C: DeserializeOwned,
    {
        let steps = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<serde_json::Result<Vec<_>>>()?;
        Ok(Trace { steps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run<C> {
    pub final_state: State<C>,
    pub trace: Trace<C>,
}

/// The search over an enumeration of `universe` elements.
pub struct Engine<C, F, R> {
    functional: F,
    refutation: R,
    universe: usize,
    _code: PhantomData<fn() -> C>,
}

impl<C, F, R> Engine<C, F, R>
where
    C: Clone,
    F: CounterexampleFunctional<C>,
    R: Refutation<C>,
{
    pub fn new(functional: F, refutation: R, universe: usize) -> Self {
        Engine { functional, refutation, universe, _code: PhantomData }
    }

    pub fn functional(&self) -> &F {
        &self.functional
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    fn query(&self, state: &State<C>) -> Result<Query<C>> {
        let query = self.functional.query(state)?;
        if query.bound >= self.universe {
            return Err(Error::BoundOutOfRange { bound: query.bound, len: self.universe });
        }
        Ok(query)
    }

    fn refuted_at(&self, state: &State<C>, n: usize, code: &C) -> bool {
        self.refutation.refutes(&state.segment_with(n), code)
    }

    pub fn step(&self, state: &State<C>) -> Result<Step<C>> {
        let query = self.query(state)?;
        let hit = (0..=query.bound).find(|&n| state.is_in(n) && self.refuted_at(state, n, &query.code));
        Ok(match hit {
            None => Step::Terminated { query },
            Some(n) => {
                let state = state.excluding(n, query.code.clone());
                Step::Next { query, removed: n, state }
            }
        })
    }

    pub fn run(&self, max_iters: usize) -> Result<Run<C>> {
        self.run_observed(max_iters, |_| {})
    }

    /// Runs to termination, calling `observe` on every state visited
    /// (initial and final included). At most `max_iters` queries are made.
    pub fn run_observed(&self, max_iters: usize, mut observe: impl FnMut(&State<C>)) -> Result<Run<C>> {
        let mut state = State::initial();
        let mut trace = Trace::default();
        for i in 0..max_iters {
            observe(&state);
            match self.step(&state)? {
                Step::Terminated { query } => {
                    trace.steps.push(TraceStep { i, n_i: query.bound, p: query.code, outcome: Outcome::Terminated });
                    return Ok(Run { final_state: state, trace });
                }
                Step::Next { query, removed, state: next } => {
                    trace.steps.push(TraceStep {
                        i,
                        n_i: query.bound,
                        p: query.code,
                        outcome: Outcome::Removed(removed),
                    });
                    state = next;
                }
            }
        }
        Err(Error::CapExceeded { max_iters })
    }

    /// Whether `state` is an approximate explicit maximal object relative to
    /// the functional: for every `n ≤ ω(state)`, `In` entries are not refuted
    /// by `φ(state)` and `Out` entries are refuted by their own evidence.
    pub fn verify_approx_max(&self, state: &State<C>) -> Result<bool> {
        let query = self.query(state)?;
        Ok((0..=query.bound).all(|n| match state.code(n) {
            None => !self.refuted_at(state, n, &query.code),
            Some(code) => self.refuted_at(state, n, code),
        }))
    }

    /// Every excluded index carries evidence refuting its current segment.
    pub fn check_domain_invariant(&self, state: &State<C>) -> bool {
        state.excluded().all(|(n, code)| self.refuted_at(state, n, code))
    }
}
