//! Ideal two-party resources, each metered by a [`Transcript`].
//!
//! Resources are trusted in-process oracles. Nothing here enforces privacy:
//! a caller can always see more than the resource's nominal output.

use serde::Serialize;

use crate::bit::Bit;
use crate::qubit::QubitState;
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Sender (Alice) to receiver (Bob).
    AliceToBob,
    /// A joint resource invoked by both parties at once.
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    NlBox,
    ObliviousTransfer,
    ClassicalBit,
    Qubit,
}

/// Per-run resource totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ResourceCounts {
    pub nlbox_uses: u64,
    pub ot_uses: u64,
    pub classical_bits: u64,
    pub qubits_sent: u64,
}

impl std::ops::AddAssign for ResourceCounts {
    fn add_assign(&mut self, o: ResourceCounts) {
        self.nlbox_uses += o.nlbox_uses;
        self.ot_uses += o.ot_uses;
        self.classical_bits += o.classical_bits;
        self.qubits_sent += o.qubits_sent;
    }
}

/// Ordered ledger of every resource a protocol run consumed.
///
/// Counters are kept alongside the message log and only ever move together.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    counts: ResourceCounts,
    messages: Vec<(Direction, Payload)>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, direction: Direction, payload: Payload) {
        match payload {
            Payload::NlBox => self.counts.nlbox_uses += 1,
            Payload::ObliviousTransfer => self.counts.ot_uses += 1,
            Payload::ClassicalBit => self.counts.classical_bits += 1,
            Payload::Qubit => self.counts.qubits_sent += 1,
        }
        self.messages.push((direction, payload));
    }

    pub fn nlbox_uses(&self) -> u64 {
        self.counts.nlbox_uses
    }

    pub fn ot_uses(&self) -> u64 {
        self.counts.ot_uses
    }

    pub fn classical_bits(&self) -> u64 {
        self.counts.classical_bits
    }

    pub fn qubits_sent(&self) -> u64 {
        self.counts.qubits_sent
    }

    pub fn counts(&self) -> ResourceCounts {
        self.counts
    }

    pub fn messages(&self) -> &[(Direction, Payload)] {
        &self.messages
    }

    /// Number of logged messages carrying `payload`.
    pub fn count_of(&self, payload: Payload) -> u64 {
        self.messages.iter().filter(|(_, p)| *p == payload).count() as u64
    }
}

/// Outputs of one non-local box use; `x ⊕ y = u·v` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NLBoxOutcome {
    pub x: Bit,
    pub y: Bit,
}

/// Ideal non-local box: `x` is a fresh uniform bit and `y = x ⊕ u·v`.
pub fn nl_box(u: Bit, v: Bit, rng: &mut RandomSource, t: &mut Transcript) -> NLBoxOutcome {
    t.record(Direction::Shared, Payload::NlBox);
    let x = rng.bit();
    NLBoxOutcome { x, y: x ^ (u & v) }
}

/// Ideal chosen 1-out-of-2 oblivious transfer: the receiver learns `b_c`.
pub fn ideal_ot(b0: Bit, b1: Bit, c: Bit, t: &mut Transcript) -> Bit {
    t.record(Direction::AliceToBob, Payload::ObliviousTransfer);
    c.select(b0, b1)
}

/// Noiseless one-bit classical channel.
pub fn send_classical_bit(b: Bit, t: &mut Transcript) -> Bit {
    t.record(Direction::AliceToBob, Payload::ClassicalBit);
    b
}

/// Noiseless one-qubit quantum channel.
pub fn send_qubit(s: QubitState, t: &mut Transcript) -> QubitState {
    t.record(Direction::AliceToBob, Payload::Qubit);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::binomial_band;
    use num_complex::Complex64;

    #[test]
    fn nl_box_satisfies_xor_constraint() {
        let mut rng = RandomSource::new(1, 0);
        let mut t = Transcript::new();
        for u in Bit::BOTH {
            for v in Bit::BOTH {
                for _ in 0..1000 {
                    let o = nl_box(u, v, &mut rng, &mut t);
                    assert_eq!(o.x ^ o.y, u & v);
                }
            }
        }
        assert_eq!(t.nlbox_uses(), 4000);
        assert_eq!(t.classical_bits(), 0);
    }

    #[test]
    fn nl_box_first_output_is_fair() {
        let n = 100_000u64;
        let mut rng = RandomSource::new(2, 0);
        let mut t = Transcript::new();
        let zeros = (0..n)
            .filter(|_| !nl_box(Bit::ONE, Bit::ZERO, &mut rng, &mut t).x.is_one())
            .count();
        let f = zeros as f64 / n as f64;
        assert!((f - 0.5).abs() < binomial_band(0.5, n), "{f}");
    }

    #[test]
    fn ideal_ot_truth_table() {
        let mut t = Transcript::new();
        assert_eq!(ideal_ot(Bit::ZERO, Bit::ONE, Bit::ZERO, &mut t), Bit::ZERO);
        assert_eq!(ideal_ot(Bit::ZERO, Bit::ONE, Bit::ONE, &mut t), Bit::ONE);
        for b0 in 0..2u8 {
            for b1 in 0..2u8 {
                for c in 0..2u8 {
                    let expected = if c == 0 { b0 } else { b1 };
                    let got = ideal_ot(
                        Bit::new(b0).unwrap(),
                        Bit::new(b1).unwrap(),
                        Bit::new(c).unwrap(),
                        &mut t,
                    );
                    assert_eq!(got.value(), expected);
                }
            }
        }
        assert_eq!(t.ot_uses(), 10);
    }

    #[test]
    fn channels_pass_payload_unchanged() {
        let mut t = Transcript::new();
        assert_eq!(send_classical_bit(Bit::ZERO, &mut t), Bit::ZERO);
        assert_eq!(t.classical_bits(), 1);
        assert_eq!(send_classical_bit(Bit::ONE, &mut t), Bit::ONE);
        assert_eq!(t.classical_bits(), 2);

        let s = QubitState::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        assert_eq!(send_qubit(s, &mut t), s);
        assert_eq!(send_qubit(QubitState::ZERO, &mut t), QubitState::ZERO);
        assert_eq!(t.qubits_sent(), 2);
    }

    #[test]
    fn each_resource_call_moves_exactly_one_counter_and_one_message() {
        let mut rng = RandomSource::new(0, 0);
        let mut t = Transcript::new();
        type Call<'a> = &'a dyn Fn(&mut Transcript, &mut RandomSource);
        let calls: [Call; 4] = [
            &|t, r| {
                nl_box(Bit::ONE, Bit::ONE, r, t);
            },
            &|t, _| {
                ideal_ot(Bit::ONE, Bit::ZERO, Bit::ONE, t);
            },
            &|t, _| {
                send_classical_bit(Bit::ONE, t);
            },
            &|t, _| {
                send_qubit(QubitState::ONE, t);
            },
        ];
        for call in calls {
            let before = t.counts();
            let len = t.messages().len();
            call(&mut t, &mut rng);
            let after = t.counts();
            let moved = [
                after.nlbox_uses - before.nlbox_uses,
                after.ot_uses - before.ot_uses,
                after.classical_bits - before.classical_bits,
                after.qubits_sent - before.qubits_sent,
            ];
            assert_eq!(moved.iter().sum::<u64>(), 1);
            assert_eq!(t.messages().len(), len + 1);
        }
        assert_eq!(t.count_of(Payload::NlBox), t.nlbox_uses());
        assert_eq!(t.count_of(Payload::ObliviousTransfer), t.ot_uses());
        assert_eq!(t.count_of(Payload::ClassicalBit), t.classical_bits());
        assert_eq!(t.count_of(Payload::Qubit), t.qubits_sent());
    }
}
