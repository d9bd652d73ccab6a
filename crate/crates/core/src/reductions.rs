//! Protocol reductions between oblivious transfer, non-local boxes and the
//! one-qubit channel.
//!
//! Each protocol is built only from the metered calls in
//! [`primitives`](crate::primitives) plus local computation, and returns
//! its output(s) while the caller's [`Transcript`] records what was used.

use std::f64::consts::FRAC_PI_8;

use crate::bit::Bit;
use crate::primitives::{
    ideal_ot, nl_box, send_classical_bit, send_qubit, NLBoxOutcome, Transcript,
};
use crate::qubit::{
    born_probability_zero, hadamard, measure_computational, random_bloch, rotate, BlochVector,
    QubitState, Vec3,
};
use crate::rng::RandomSource;
use crate::tolerance::EXACT;

/// Bit-valued signum: 0 for `x ≥ 0`, 1 otherwise.
pub fn sg(x: f64) -> Bit {
    Bit::from_bool(x < 0.0)
}

/// OT from one NL box plus one classical bit, with the box supplied by the
/// caller. The sender feeds `b0 ⊕ b1`, the receiver feeds `c`, and the
/// sender announces `x ⊕ b0`; the receiver outputs `(x ⊕ b0) ⊕ y = b_c`.
pub fn ot_from_nlbox_with<B>(b0: Bit, b1: Bit, c: Bit, t: &mut Transcript, mut nl_box: B) -> Bit
where
    B: FnMut(Bit, Bit, &mut Transcript) -> NLBoxOutcome,
{
    let NLBoxOutcome { x, y } = nl_box(b0 ^ b1, c, t);
    let announced = send_classical_bit(x ^ b0, t);
    announced ^ y
}

pub fn ot_from_nlbox(b0: Bit, b1: Bit, c: Bit, rng: &mut RandomSource, t: &mut Transcript) -> Bit {
    ot_from_nlbox_with(b0, b1, c, t, |u, v, t| nl_box(u, v, rng, t))
}

/// NL box from one OT with sender mask `r`: the sender offers `(r, r ⊕ u)`,
/// the receiver chooses with `v`, and the outputs are `(r, r ⊕ u·v)`.
pub fn nlbox_from_ot_with_mask(u: Bit, v: Bit, r: Bit, t: &mut Transcript) -> (Bit, Bit) {
    let y = ideal_ot(r, r ^ u, v, t);
    (r, y)
}

pub fn nlbox_from_ot(u: Bit, v: Bit, rng: &mut RandomSource, t: &mut Transcript) -> (Bit, Bit) {
    let r = rng.bit();
    nlbox_from_ot_with_mask(u, v, r, t)
}

/// Shared randomness for the teleportation protocols: two independent
/// uniform unit vectors and their sum and difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedSphereRandomness {
    pub l1: BlochVector,
    pub l2: BlochVector,
    pub l_plus: Vec3,
    pub l_minus: Vec3,
}

impl SharedSphereRandomness {
    /// `None` when `l1 = ±l2`, where one of `l±` vanishes.
    pub fn from_pair(l1: BlochVector, l2: BlochVector) -> Option<Self> {
        let l_plus = l1.vec() + l2.vec();
        let l_minus = l1.vec() - l2.vec();
        if l_plus.norm() <= EXACT || l_minus.norm() <= EXACT {
            return None;
        }
        Some(Self {
            l1,
            l2,
            l_plus,
            l_minus,
        })
    }

    /// Draws `(l1, l2)` uniformly, redrawing the measure-zero degenerate pairs.
    pub fn draw(rng: &mut RandomSource) -> Self {
        loop {
            let l1 = random_bloch(rng);
            let l2 = random_bloch(rng);
            if let Some(s) = Self::from_pair(l1, l2) {
                return s;
            }
        }
    }
}

/// Fixed flip applied to Bob's teleportation output so that bit 0 means the
/// outcome along `+v_B`. Found by running the protocol with `v_A = v_B`,
/// where the quantum outcome is 0 with certainty; see
/// [`calibrate_teleport_flip`].
pub const TELEPORT_OUTPUT_FLIP: Bit = Bit::ZERO;

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportationResult {
    pub outcome: Bit,
    pub transcript: Transcript,
}

/// Bob's output before the calibration flip: `b_c ⊕ sg(v_B·l+)` where the OT
/// inputs are `(sg(v_A·l1), sg(v_A·l2))` and the choice bit is
/// `sg(v_B·l+) ⊕ sg(v_B·l−)`.
fn teleport_raw<O>(
    v_a: &BlochVector,
    v_b: &BlochVector,
    shared: &SharedSphereRandomness,
    t: &mut Transcript,
    mut ot: O,
) -> Bit
where
    O: FnMut(Bit, Bit, Bit, &mut Transcript) -> Bit,
{
    // Alice's side.
    let b0 = sg(v_a.dot(&shared.l1));
    let b1 = sg(v_a.dot(&shared.l2));
    // Bob's side.
    let s_plus = sg(v_b.dot_vec(&shared.l_plus));
    let s_minus = sg(v_b.dot_vec(&shared.l_minus));
    let z = ot(b0, b1, s_plus ^ s_minus, t);
    z ^ s_plus
}

/// Simulates sending the state `v_a` and measuring it along `v_b`, given the
/// shared randomness and an OT implementation.
pub fn teleport_with<O>(
    v_a: &BlochVector,
    v_b: &BlochVector,
    shared: &SharedSphereRandomness,
    t: &mut Transcript,
    ot: O,
) -> Bit
where
    O: FnMut(Bit, Bit, Bit, &mut Transcript) -> Bit,
{
    teleport_raw(v_a, v_b, shared, t, ot) ^ TELEPORT_OUTPUT_FLIP
}

/// Classical teleportation from one ideal OT and shared randomness.
pub fn teleport_via_ot(
    v_a: &BlochVector,
    v_b: &BlochVector,
    rng: &mut RandomSource,
) -> TeleportationResult {
    let shared = SharedSphereRandomness::draw(rng);
    let mut transcript = Transcript::new();
    let outcome = teleport_with(v_a, v_b, &shared, &mut transcript, ideal_ot);
    TeleportationResult {
        outcome,
        transcript,
    }
}

/// Classical teleportation from one NL box and one classical bit: the OT
/// above is replaced by [`ot_from_nlbox`].
pub fn teleport_via_nlbox(
    v_a: &BlochVector,
    v_b: &BlochVector,
    rng: &mut RandomSource,
) -> TeleportationResult {
    let shared = SharedSphereRandomness::draw(rng);
    let mut transcript = Transcript::new();
    let outcome = teleport_with(v_a, v_b, &shared, &mut transcript, |b0, b1, c, t| {
        ot_from_nlbox(b0, b1, c, rng, t)
    });
    TeleportationResult {
        outcome,
        transcript,
    }
}

/// Recovers the output flip from `rounds` aligned runs (`v_A = v_B`, random
/// direction). Returns `None` if the raw output is not constant, which would
/// mean the protocol does not reproduce a deterministic quantum event.
pub fn calibrate_teleport_flip(rng: &mut RandomSource, rounds: usize) -> Option<Bit> {
    let mut seen = None;
    for _ in 0..rounds {
        let v = random_bloch(rng);
        let shared = SharedSphereRandomness::draw(rng);
        let raw = teleport_raw(&v, &v, &shared, &mut Transcript::new(), ideal_ot);
        match seen {
            None => seen = Some(raw),
            Some(prev) if prev != raw => return None,
            _ => {}
        }
    }
    // The quantum outcome is 0, so the flip is whatever maps `raw` to 0.
    seen
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeleportVariant {
    Ot,
    NlBox,
}

impl TeleportVariant {
    pub fn run(
        self,
        v_a: &BlochVector,
        v_b: &BlochVector,
        rng: &mut RandomSource,
    ) -> TeleportationResult {
        match self {
            TeleportVariant::Ot => teleport_via_ot(v_a, v_b, rng),
            TeleportVariant::NlBox => teleport_via_nlbox(v_a, v_b, rng),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TeleportVariant::Ot => "teleport-ot",
            TeleportVariant::NlBox => "teleport-nlbox",
        }
    }
}

/// Rotation angle `π/8·(2m0 + 4m1 − 3)` that places `(m0, m1)` on one of four
/// real states at 45° spacing.
pub fn encoding_angle(m0: Bit, m1: Bit) -> f64 {
    FRAC_PI_8 * (2.0 * m0.value() as f64 + 4.0 * m1.value() as f64 - 3.0)
}

/// Alice-side relabeling `(m0, m1) = (b0 ⊕ α·b1 ⊕ β, b1 ⊕ γ)` together with
/// Bob's output flip `d`, for one-qubit OT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumEncoding {
    pub alpha: Bit,
    pub beta: Bit,
    pub gamma: Bit,
    pub decode_flip: Bit,
}

impl QuantumEncoding {
    /// The encoding picked by [`QuantumEncoding::calibrate`]:
    /// `(m0, m1) = (b0 ⊕ b1, b1 ⊕ 1)`, raw measurement outcome as output.
    pub const CALIBRATED: QuantumEncoding = QuantumEncoding {
        alpha: Bit::ONE,
        beta: Bit::ZERO,
        gamma: Bit::ONE,
        decode_flip: Bit::ZERO,
    };

    pub fn all() -> impl Iterator<Item = QuantumEncoding> {
        (0..16u8).map(|k| QuantumEncoding {
            alpha: Bit::from_bool(k & 1 != 0),
            beta: Bit::from_bool(k & 2 != 0),
            gamma: Bit::from_bool(k & 4 != 0),
            decode_flip: Bit::from_bool(k & 8 != 0),
        })
    }

    pub fn relabel(&self, b0: Bit, b1: Bit) -> (Bit, Bit) {
        (b0 ^ (self.alpha & b1) ^ self.beta, b1 ^ self.gamma)
    }

    /// State Alice sends for inputs `(b0, b1)`.
    pub fn prepare(&self, b0: Bit, b1: Bit) -> QubitState {
        let (m0, m1) = self.relabel(b0, b1);
        rotate(&QubitState::ZERO, encoding_angle(m0, m1)).expect("|0⟩ is normalized")
    }

    /// Bob's basis change for choice `c`: Hadamard iff `c = 1`.
    pub fn bob_transform(c: Bit, s: &QubitState) -> QubitState {
        if c.is_one() {
            hadamard(s).expect("channel preserves normalization")
        } else {
            *s
        }
    }

    /// Exact probability that Bob outputs `b_c`.
    pub fn success_probability(&self, b0: Bit, b1: Bit, c: Bit) -> f64 {
        let received = Self::bob_transform(c, &self.prepare(b0, b1));
        let p0 = born_probability_zero(&received);
        let target = c.select(b0, b1) ^ self.decode_flip;
        target.select(p0, 1.0 - p0)
    }

    /// Worst-case success probability over all eight inputs.
    pub fn worst_case(&self) -> f64 {
        all_ot_inputs()
            .map(|(b0, b1, c)| self.success_probability(b0, b1, c))
            .fold(f64::INFINITY, f64::min)
    }

    /// True if every input succeeds with probability `cos²(π/8)`.
    pub fn is_uniformly_optimal(&self) -> bool {
        all_ot_inputs().all(|(b0, b1, c)| {
            (self.success_probability(b0, b1, c) - crate::QUANTUM_SUCCESS).abs() <= EXACT
        })
    }

    /// Enumerates every relabeling and decode flip and returns the uniformly
    /// optimal one, preferring no decode flip.
    pub fn calibrate() -> Option<QuantumEncoding> {
        Self::all()
            .filter(QuantumEncoding::is_uniformly_optimal)
            .min_by_key(|e| (e.decode_flip, e.alpha, e.beta, e.gamma))
    }
}

/// All eight `(b0, b1, c)` combinations.
pub fn all_ot_inputs() -> impl Iterator<Item = (Bit, Bit, Bit)> {
    (0..8u8).map(|k| {
        (
            Bit::from_bool(k & 1 != 0),
            Bit::from_bool(k & 2 != 0),
            Bit::from_bool(k & 4 != 0),
        )
    })
}

/// OT over one qubit: Alice sends a rotated `|0⟩`, Bob applies a Hadamard
/// iff `c = 1` and measures in the computational basis.
pub fn ot_via_quantum(b0: Bit, b1: Bit, c: Bit, rng: &mut RandomSource, t: &mut Transcript) -> Bit {
    let enc = QuantumEncoding::CALIBRATED;
    let sent = send_qubit(enc.prepare(b0, b1), t);
    let received = QuantumEncoding::bob_transform(c, &sent);
    measure_computational(&received, rng) ^ enc.decode_flip
}

/// Exact success probability of [`ot_via_quantum`] for fixed inputs.
pub fn ot_via_quantum_success_probability(b0: Bit, b1: Bit, c: Bit) -> f64 {
    QuantumEncoding::CALIBRATED.success_probability(b0, b1, c)
}

/// OT over one classical bit: Alice always sends `b0`.
pub fn ot_via_one_classical_bit(b0: Bit, _b1: Bit, _c: Bit, t: &mut Transcript) -> Bit {
    send_classical_bit(b0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::probability_along;
    use crate::tolerance::binomial_band;

    fn bits(b0: u8, b1: u8, c: u8) -> (Bit, Bit, Bit) {
        (
            Bit::new(b0).unwrap(),
            Bit::new(b1).unwrap(),
            Bit::new(c).unwrap(),
        )
    }

    #[test]
    fn sg_examples() {
        assert_eq!(sg(3.2), Bit::ZERO);
        assert_eq!(sg(-0.5), Bit::ONE);
        assert_eq!(sg(0.0), Bit::ZERO);
    }

    #[test]
    fn ot_from_nlbox_examples_and_budget() {
        let mut rng = RandomSource::new(0, 0);
        let (b0, b1, c) = bits(1, 0, 1);
        let mut t = Transcript::new();
        assert_eq!(ot_from_nlbox(b0, b1, c, &mut rng, &mut t), Bit::ZERO);
        assert_eq!((t.nlbox_uses(), t.classical_bits(), t.ot_uses()), (1, 1, 0));
        let (b0, b1, c) = bits(1, 0, 0);
        assert_eq!(
            ot_from_nlbox(b0, b1, c, &mut rng, &mut Transcript::new()),
            Bit::ONE
        );
    }

    #[test]
    fn ot_from_nlbox_exhaustive_over_box_randomness() {
        for (b0, b1, c) in all_ot_inputs() {
            for x in Bit::BOTH {
                let fixed_box =
                    |u: Bit, v: Bit, _: &mut Transcript| NLBoxOutcome { x, y: x ^ (u & v) };
                let got = ot_from_nlbox_with(b0, b1, c, &mut Transcript::new(), fixed_box);
                assert_eq!(got, c.select(b0, b1));
            }
        }
    }

    #[test]
    fn nlbox_from_ot_examples() {
        let mut rng = RandomSource::new(4, 0);
        for _ in 0..100 {
            let mut t = Transcript::new();
            let (x, y) = nlbox_from_ot(Bit::ONE, Bit::ONE, &mut rng, &mut t);
            assert_ne!(x, y);
            assert_eq!((t.ot_uses(), t.classical_bits()), (1, 0));
            let (x, y) = nlbox_from_ot(Bit::ZERO, Bit::ONE, &mut rng, &mut Transcript::new());
            assert_eq!(x, y);
        }
        for u in Bit::BOTH {
            for v in Bit::BOTH {
                for r in Bit::BOTH {
                    let (x, y) = nlbox_from_ot_with_mask(u, v, r, &mut Transcript::new());
                    assert_eq!(x ^ y, u & v);
                    assert_eq!(x, r);
                }
            }
        }
    }

    #[test]
    fn nlbox_from_ot_first_output_is_fair() {
        let n = 100_000u64;
        let mut rng = RandomSource::new(6, 0);
        let zeros = (0..n)
            .filter(|_| {
                !nlbox_from_ot(Bit::ONE, Bit::ONE, &mut rng, &mut Transcript::new())
                    .0
                    .is_one()
            })
            .count();
        let f = zeros as f64 / n as f64;
        assert!((f - 0.5).abs() < binomial_band(0.5, n));
    }

    #[test]
    fn ot_round_trips_through_nlbox_built_from_ot() {
        for (b0, b1, c) in all_ot_inputs() {
            for r in Bit::BOTH {
                let mut t = Transcript::new();
                let got = ot_from_nlbox_with(b0, b1, c, &mut t, |u, v, t| {
                    let (x, y) = nlbox_from_ot_with_mask(u, v, r, t);
                    NLBoxOutcome { x, y }
                });
                assert_eq!(got, c.select(b0, b1));
                assert_eq!((t.ot_uses(), t.classical_bits(), t.nlbox_uses()), (1, 1, 0));
            }
        }
    }

    #[test]
    fn shared_randomness_sum_and_difference() {
        let mut rng = RandomSource::new(8, 0);
        for _ in 0..100 {
            let s = SharedSphereRandomness::draw(&mut rng);
            let twice_l1 = s.l_plus + s.l_minus;
            let twice_l2 = s.l_plus - s.l_minus;
            let (l1, l2) = (s.l1.vec(), s.l2.vec());
            for (a, b) in [(twice_l1, l1 * 2.0), (twice_l2, l2 * 2.0)] {
                assert!((a - b).norm() < EXACT);
            }
        }
        let z = BlochVector::PLUS_Z;
        assert!(SharedSphereRandomness::from_pair(z, z).is_none());
        assert!(SharedSphereRandomness::from_pair(z, -z).is_none());
    }

    #[test]
    fn teleport_flip_calibrates_to_constant() {
        let mut rng = RandomSource::new(10, 0);
        let raw =
            calibrate_teleport_flip(&mut rng, 10_000).expect("aligned output must be constant");
        assert_eq!(raw ^ TELEPORT_OUTPUT_FLIP, Bit::ZERO);
    }

    #[test]
    fn teleport_budgets() {
        let mut rng = RandomSource::new(1, 1);
        let (a, b) = (BlochVector::PLUS_Z, BlochVector::PLUS_X);
        let r = teleport_via_ot(&a, &b, &mut rng);
        assert_eq!(r.transcript.counts().ot_uses, 1);
        assert_eq!(r.transcript.classical_bits(), 0);
        assert_eq!(r.transcript.qubits_sent(), 0);
        let r = teleport_via_nlbox(&a, &b, &mut rng);
        assert_eq!(r.transcript.nlbox_uses(), 1);
        assert_eq!(r.transcript.classical_bits(), 1);
        assert_eq!(r.transcript.ot_uses(), 0);
    }

    #[test]
    fn teleport_aligned_and_anti_aligned_are_deterministic() {
        let mut rng = RandomSource::new(77, 0);
        for _ in 0..20_000 {
            let v = random_bloch(&mut rng);
            for variant in [TeleportVariant::Ot, TeleportVariant::NlBox] {
                assert_eq!(variant.run(&v, &v, &mut rng).outcome, Bit::ZERO);
                assert_eq!(variant.run(&v, &-v, &mut rng).outcome, Bit::ONE);
            }
        }
    }

    #[test]
    fn teleport_matches_born_rule_at_quarter_turn() {
        let n = 100_000u64;
        let a = BlochVector::PLUS_Z;
        let b = BlochVector::from_spherical(std::f64::consts::FRAC_PI_4, 0.7);
        let p = probability_along(&a, &b);
        let mut rng = RandomSource::new(13, 0);
        let zeros = (0..n)
            .filter(|_| !teleport_via_ot(&a, &b, &mut rng).outcome.is_one())
            .count();
        let f = zeros as f64 / n as f64;
        assert!((f - p).abs() < binomial_band(p, n), "{f} vs {p}");
    }

    #[test]
    fn calibrated_encoding_is_the_selected_one() {
        assert_eq!(
            QuantumEncoding::calibrate(),
            Some(QuantumEncoding::CALIBRATED)
        );
        assert!(QuantumEncoding::CALIBRATED.is_uniformly_optimal());
    }

    #[test]
    fn literal_encoding_is_not_uniformly_optimal() {
        let literal = QuantumEncoding {
            alpha: Bit::ZERO,
            beta: Bit::ZERO,
            gamma: Bit::ZERO,
            decode_flip: Bit::ZERO,
        };
        assert!(!literal.is_uniformly_optimal());
    }

    #[test]
    fn ot_via_quantum_budget() {
        let mut rng = RandomSource::new(3, 3);
        let mut t = Transcript::new();
        ot_via_quantum(Bit::ONE, Bit::ZERO, Bit::ONE, &mut rng, &mut t);
        assert_eq!(
            (t.qubits_sent(), t.classical_bits(), t.ot_uses()),
            (1, 0, 0)
        );
    }

    #[test]
    fn classical_bit_baseline_examples() {
        let mut t = Transcript::new();
        let (b0, b1, c) = bits(1, 0, 0);
        assert_eq!(ot_via_one_classical_bit(b0, b1, c, &mut t), Bit::ONE);
        let (b0, b1, c) = bits(0, 1, 1);
        assert_eq!(ot_via_one_classical_bit(b0, b1, c, &mut t), Bit::ZERO);
        assert_eq!(t.classical_bits(), 2);
        let correct = all_ot_inputs()
            .filter(|&(b0, b1, c)| {
                ot_via_one_classical_bit(b0, b1, c, &mut Transcript::new()) == c.select(b0, b1)
            })
            .count();
        assert_eq!(correct, 6);
    }
}
