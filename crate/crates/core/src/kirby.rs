//! Spin Kirby moves on linking-matrix presentations.
//!
//! Moves never mutate their input. A slide of `L_i` over `L_j` is the
//! congruence `Pᵀ B P` where `P` replaces column `i` of the identity by
//! `e_i + e_j`; the characteristic vector transforms by `P⁻¹`, which flips
//! `c_j` exactly when `c_i = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::presentation::SpinPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Adds a ±1-framed unknot split from the rest, as a new last component.
    BlowUp(Sign),
    /// Deletes an isolated ±1-framed component.
    BlowDown(usize),
    /// Slides component `i` over component `j`.
    Slide { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("component {index} out of range for {n} components")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("component {index} links component {other}")]
    NotIsolated { index: usize, other: usize },
    #[error("component {index} has framing {framing}, expected ±1")]
    NotUnitFramed { index: usize, framing: BigInt },
    #[error("cannot slide component {index} over itself")]
    SameIndex { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {position} ({mv}) failed: {source}")]
pub struct SequenceError {
    pub position: usize,
    pub mv: Move,
    #[source]
    pub source: MoveError,
}

pub fn blow_up(p: &SpinPresentation, sign: Sign) -> SpinPresentation {
    let n = p.len();
    let mut b = p.matrix().block_sum(&crate::exactlin::IntSymMatrix::zeros(1));
    b.set(n, n, BigInt::from(sign.value()));
    let mut c = p.characteristic().clone();
    c.push(true);
    SpinPresentation::from_parts_unchecked(b, c)
}

pub fn blow_down(p: &SpinPresentation, i: usize) -> Result<SpinPresentation, MoveError> {
    let n = p.len();
    check_index(i, n)?;
    let b = p.matrix();
    if let Some(other) = (0..n).find(|&k| k != i && !b.get(i, k).is_zero()) {
        return Err(MoveError::NotIsolated { index: i, other });
    }
    let framing = b.get(i, i);
    if !framing.is_one() && *framing != -BigInt::one() {
        return Err(MoveError::NotUnitFramed {
            index: i,
            framing: framing.clone(),
        });
    }
    let mut c = p.characteristic().clone();
    c.remove(i);
    Ok(SpinPresentation::from_parts_unchecked(b.remove(i), c))
}

pub fn slide(p: &SpinPresentation, i: usize, j: usize) -> Result<SpinPresentation, MoveError> {
    let n = p.len();
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(MoveError::SameIndex { index: i });
    }
    let old = p.matrix();
    let mut b = old.clone();
    b.set(i, i, old.get(i, i) + 2 * old.get(i, j) + old.get(j, j));
    for k in (0..n).filter(|&k| k != i) {
        b.set(i, k, old.get(i, k) + old.get(j, k));
    }
    let mut c = p.characteristic().clone();
    if c.get(i) {
        c.set(j, !c.get(j));
    }
    Ok(SpinPresentation::from_parts_unchecked(b, c))
}

fn check_index(index: usize, n: usize) -> Result<(), MoveError> {
    if index < n {
        Ok(())
    } else {
        Err(MoveError::IndexOutOfRange { index, n })
    }
}

impl Move {
    pub fn apply(&self, p: &SpinPresentation) -> Result<SpinPresentation, MoveError> {
        match *self {
            Move::BlowUp(sign) => Ok(blow_up(p, sign)),
            Move::BlowDown(i) => blow_down(p, i),
            Move::Slide { i, j } => slide(p, i, j),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::BlowUp(Sign::Plus) => f.write_str("blowup:+1"),
            Move::BlowUp(Sign::Minus) => f.write_str("blowup:-1"),
            Move::BlowDown(i) => write!(f, "blowdown:{i}"),
            Move::Slide { i, j } => write!(f, "slide:{i},{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse move `{text}`: {reason}")]
pub struct ParseMoveError {
    pub text: String,
    pub reason: &'static str,
}

impl FromStr for Move {
    type Err = ParseMoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        let fail = |reason| ParseMoveError {
            text: compact.clone(),
            reason,
        };
        let (kind, args) = compact.split_once(':').ok_or_else(|| fail("expected `kind:args`"))?;
        let index = |t: &str| t.parse::<usize>().map_err(|_| fail("bad component index"));
        match kind.to_ascii_lowercase().as_str() {
            "blowup" => match args {
                "+1" | "1" => Ok(Move::BlowUp(Sign::Plus)),
                "-1" => Ok(Move::BlowUp(Sign::Minus)),
                _ => Err(fail("blowup sign must be +1 or -1")),
            },
            "blowdown" => Ok(Move::BlowDown(index(args)?)),
            "slide" => {
                let (i, j) = args.split_once(',').ok_or_else(|| fail("slide needs `i,j`"))?;
                Ok(Move::Slide {
                    i: index(i)?,
                    j: index(j)?,
                })
            }
            _ => Err(fail("unknown move kind")),
        }
    }
}

/// Moves applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
    pub seed: Option<u64>,
}

impl MoveSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves, seed: None }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.moves.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = ParseMoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let moves = s
            .split(';')
            .filter(|seg| !seg.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        Ok(Self::new(moves))
    }
}

pub fn apply_sequence(p: &SpinPresentation, seq: &MoveSequence) -> Result<SpinPresentation, SequenceError> {
    let mut state = p.clone();
    for_each_step(p, seq, |_, next| state = next.clone())?;
    Ok(state)
}

/// Every intermediate presentation, starting with `p` itself.
pub fn trajectory(p: &SpinPresentation, seq: &MoveSequence) -> Result<Vec<SpinPresentation>, SequenceError> {
    let mut states = vec![p.clone()];
    for_each_step(p, seq, |_, next| states.push(next.clone()))?;
    Ok(states)
}

/// Applies `seq` and hands each post-move state to `visit` with its position.
pub fn for_each_step(
    p: &SpinPresentation,
    seq: &MoveSequence,
    mut visit: impl FnMut(usize, &SpinPresentation),
) -> Result<(), SequenceError> {
    let mut state = p.clone();
    for (position, mv) in seq.moves.iter().enumerate() {
        state = mv.apply(&state).map_err(|source| SequenceError {
            position,
            mv: *mv,
            source,
        })?;
        visit(position, &state);
    }
    Ok(())
}

/// Components that can be blown down.
pub fn isolated_unit_components(p: &SpinPresentation) -> Vec<usize> {
    let b = p.matrix();
    let n = p.len();
    (0..n)
        .filter(|&i| {
            let f = b.get(i, i);
            (f.is_one() || *f == -BigInt::one()) && (0..n).all(|k| k == i || b.get(i, k).is_zero())
        })
        .collect()
}

/// Component count above which the fuzzer stops blowing up.
const FUZZ_MAX_COMPONENTS: usize = 10;

/// A seeded random move sequence, every move of which applies in order.
pub fn random_sequence(p: &SpinPresentation, steps: usize, seed: u64) -> MoveSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = p.clone();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = state.len();
        let downs = isolated_unit_components(&state);
        let roll: f64 = rng.random();
        let mv = if !downs.is_empty() && roll < 0.25 {
            Move::BlowDown(downs[rng.random_range(0..downs.len())])
        } else if n < 2 || (n < FUZZ_MAX_COMPONENTS && roll < 0.5) {
            Move::BlowUp(if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus })
        } else {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            Move::Slide { i, j }
        };
        state = mv.apply(&state).expect("generated move is applicable");
        moves.push(mv);
    }
    MoveSequence {
        moves,
        seed: Some(seed),
    }
}
