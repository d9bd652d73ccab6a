//! The CHSH game: two parties get uniform bits `(u, v)` and win when their
//! outputs satisfy `x ⊕ y = u·v`.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use crate::bit::Bit;
use crate::primitives::{nl_box, NLBoxOutcome, Transcript};
use crate::qubit::{singlet_joint_probability, singlet_sample, BlochVector};
use crate::rng::RandomSource;

fn all_inputs() -> impl Iterator<Item = (Bit, Bit)> {
    Bit::BOTH
        .into_iter()
        .flat_map(|u| Bit::BOTH.into_iter().map(move |v| (u, v)))
}

fn wins(u: Bit, v: Bit, x: Bit, y: Bit) -> bool {
    x ^ y == u & v
}

/// Each party answers from a fixed two-entry table indexed by its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub alice_map: [Bit; 2],
    pub bob_map: [Bit; 2],
}

impl DeterministicStrategy {
    pub const CONSTANT_ZERO: DeterministicStrategy = DeterministicStrategy {
        alice_map: [Bit::ZERO; 2],
        bob_map: [Bit::ZERO; 2],
    };

    /// All 16 strategy pairs.
    pub fn all() -> impl Iterator<Item = DeterministicStrategy> {
        (0..16u8).map(|k| {
            let b = |i: u8| Bit::from_bool(k >> i & 1 == 1);
            DeterministicStrategy {
                alice_map: [b(0), b(1)],
                bob_map: [b(2), b(3)],
            }
        })
    }

    pub fn answer(&self, u: Bit, v: Bit) -> (Bit, Bit) {
        (
            self.alice_map[u.value() as usize],
            self.bob_map[v.value() as usize],
        )
    }

    /// Number of the four input pairs this strategy wins.
    pub fn wins(&self) -> u32 {
        all_inputs()
            .filter(|&(u, v)| {
                let (x, y) = self.answer(u, v);
                wins(u, v, x, y)
            })
            .count() as u32
    }
}

/// Exhaustive maximum over deterministic strategies, with a strategy that
/// attains it. Shared randomness only mixes these, so it cannot do better.
pub fn chsh_classical_optimum() -> (f64, DeterministicStrategy) {
    let best = DeterministicStrategy::all()
        .max_by_key(|s| {
            (
                s.wins(),
                std::cmp::Reverse(s.alice_map),
                std::cmp::Reverse(s.bob_map),
            )
        })
        .expect("16 strategies");
    (best.wins() as f64 / 4.0, best)
}

/// Measurement axes for the two halves of a singlet, indexed by input bit,
/// and a flip on Bob's reported outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub alice: [BlochVector; 2],
    pub bob: [BlochVector; 2],
    pub bob_flip: Bit,
}

impl ChshSettings {
    /// Alice on the equator at `{0, π/2}`, Bob at `{π/4, −π/4}`, with Bob's
    /// flip picked by [`ChshSettings::with_best_flip`].
    pub fn optimal() -> Self {
        Self::with_best_flip(
            [
                BlochVector::equatorial(0.0),
                BlochVector::equatorial(FRAC_PI_2),
            ],
            [
                BlochVector::equatorial(FRAC_PI_4),
                BlochVector::equatorial(-FRAC_PI_4),
            ],
        )
    }

    /// Chooses Bob's output flip that maximizes the exact score. The singlet
    /// is anti-correlated, so for near-aligned axes the flip is 1.
    pub fn with_best_flip(alice: [BlochVector; 2], bob: [BlochVector; 2]) -> Self {
        let candidate = |bob_flip| ChshSettings {
            alice,
            bob,
            bob_flip,
        };
        let (a, b) = (candidate(Bit::ZERO), candidate(Bit::ONE));
        if chsh_quantum_score(&b) > chsh_quantum_score(&a) {
            b
        } else {
            a
        }
    }

    /// One round with uniformly random inputs, sampled on the singlet.
    pub fn play(&self, rng: &mut RandomSource) -> bool {
        let (u, v) = (rng.bit(), rng.bit());
        let a = &self.alice[u.value() as usize];
        let b = &self.bob[v.value() as usize];
        let (x, y) = singlet_sample(a, b, rng);
        wins(u, v, x, y ^ self.bob_flip)
    }
}

/// Exact winning probability from the singlet's closed-form joint distribution.
pub fn chsh_quantum_score(settings: &ChshSettings) -> f64 {
    let mut total = 0.0;
    for (u, v) in all_inputs() {
        let a = &settings.alice[u.value() as usize];
        let b = &settings.bob[v.value() as usize];
        for x in Bit::BOTH {
            for y in Bit::BOTH {
                if wins(u, v, x, y ^ settings.bob_flip) {
                    total += singlet_joint_probability(a, b, x, y);
                }
            }
        }
    }
    total / 4.0
}

/// `(2 + √2) / 4`, reached by [`ChshSettings::optimal`].
pub fn chsh_quantum_exact() -> f64 {
    chsh_quantum_score(&ChshSettings::optimal())
}

/// Plays `rounds_per_input` rounds on each of the four inputs with the box
/// `nl_box` and returns the winning fraction.
pub fn chsh_nlbox_with<B>(rounds_per_input: u64, mut nl_box: B) -> f64
where
    B: FnMut(Bit, Bit, &mut Transcript) -> NLBoxOutcome,
{
    let mut won = 0u64;
    for (u, v) in all_inputs() {
        for _ in 0..rounds_per_input {
            let NLBoxOutcome { x, y } = nl_box(u, v, &mut Transcript::new());
            won += wins(u, v, x, y) as u64;
        }
    }
    won as f64 / (4 * rounds_per_input) as f64
}

pub fn chsh_nlbox(rng: &mut RandomSource, rounds_per_input: u64) -> f64 {
    chsh_nlbox_with(rounds_per_input, |u, v, t| nl_box(u, v, rng, t))
}
