//! Exact and exhaustive checks run by `obtsim verify`. None of them sample
//! except the teleport flip calibration, which uses a fixed seed.

use obtsim_core::primitives::{ideal_ot, NLBoxOutcome};
use obtsim_core::reductions::{
    all_ot_inputs, calibrate_teleport_flip, nlbox_from_ot_with_mask, ot_from_nlbox_with,
    ot_via_quantum_success_probability, QuantumEncoding, TELEPORT_OUTPUT_FLIP,
};
use obtsim_core::tolerance::EXACT;
use obtsim_core::{
    chsh_classical_optimum, chsh_nlbox_with, chsh_quantum_exact, ot_via_one_classical_bit, Bit,
    BlochVector, RandomSource, TeleportVariant, Transcript, CLASSICAL_SUCCESS, QUANTUM_SUCCESS,
};

use crate::report::{Reference, ResultRow};

pub struct Check {
    pub row: ResultRow,
    pub passed: bool,
}

fn check(label: &str, value: f64, passed: bool) -> Check {
    Check {
        row: ResultRow::exact(label, value).with_passed(passed),
        passed,
    }
}

fn count_check(label: &str, cases: impl Iterator<Item = bool>) -> Check {
    let (mut ok, mut total) = (0u32, 0u32);
    for c in cases {
        total += 1;
        ok += c as u32;
    }
    check(&format!("{label} ({ok}/{total})"), ok as f64, ok == total)
}

fn fixed_box(x: Bit) -> impl FnMut(Bit, Bit, &mut Transcript) -> NLBoxOutcome {
    move |u, v, _| NLBoxOutcome { x, y: x ^ (u & v) }
}

fn bit_pairs() -> impl Iterator<Item = (Bit, Bit)> {
    Bit::BOTH
        .into_iter()
        .flat_map(|a| Bit::BOTH.into_iter().map(move |b| (a, b)))
}

pub fn run_checks() -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(count_check(
        "ideal_ot truth table",
        all_ot_inputs()
            .map(|(b0, b1, c)| ideal_ot(b0, b1, c, &mut Transcript::new()) == c.select(b0, b1)),
    ));

    checks.push(count_check(
        "ot_from_nlbox exhaustive",
        all_ot_inputs().flat_map(|(b0, b1, c)| {
            Bit::BOTH.into_iter().map(move |x| {
                ot_from_nlbox_with(b0, b1, c, &mut Transcript::new(), fixed_box(x))
                    == c.select(b0, b1)
            })
        }),
    ));

    checks.push(count_check(
        "nlbox_from_ot exhaustive",
        bit_pairs().flat_map(|(u, v)| {
            Bit::BOTH.into_iter().map(move |r| {
                let (x, y) = nlbox_from_ot_with_mask(u, v, r, &mut Transcript::new());
                x ^ y == u & v
            })
        }),
    ));

    checks.push(count_check(
        "ot round trip through nlbox_from_ot",
        all_ot_inputs().flat_map(|(b0, b1, c)| {
            Bit::BOTH.into_iter().map(move |r| {
                let got = ot_from_nlbox_with(b0, b1, c, &mut Transcript::new(), |u, v, t| {
                    let (x, y) = nlbox_from_ot_with_mask(u, v, r, t);
                    NLBoxOutcome { x, y }
                });
                got == c.select(b0, b1)
            })
        }),
    ));

    let (classical, _) = chsh_classical_optimum();
    checks.push(check(
        "chsh classical optimum",
        classical,
        classical == CLASSICAL_SUCCESS,
    ));

    let quantum = chsh_quantum_exact();
    checks.push(check(
        "chsh quantum exact",
        quantum,
        (quantum - QUANTUM_SUCCESS).abs() <= EXACT,
    ));

    let gap = quantum - classical;
    checks.push(check(
        "chsh quantum advantage",
        gap,
        gap > 0.0 && (gap - (2f64.sqrt() - 1.0) / 4.0).abs() <= EXACT,
    ));

    let nlbox_score = Bit::BOTH
        .into_iter()
        .map(|x| chsh_nlbox_with(1, fixed_box(x)))
        .fold(f64::INFINITY, f64::min);
    checks.push(check(
        "chsh nlbox exhaustive",
        nlbox_score,
        nlbox_score == 1.0,
    ));

    let quantum_ot = all_ot_inputs()
        .map(|(b0, b1, c)| ot_via_quantum_success_probability(b0, b1, c))
        .collect::<Vec<_>>();
    let worst = quantum_ot.iter().copied().fold(f64::INFINITY, f64::min);
    checks.push(check(
        "ot_via_quantum success, every input",
        worst,
        quantum_ot
            .iter()
            .all(|p| (p - QUANTUM_SUCCESS).abs() <= EXACT),
    ));

    checks.push(check(
        "ot_via_quantum encoding calibration",
        1.0,
        QuantumEncoding::calibrate() == Some(QuantumEncoding::CALIBRATED),
    ));

    let classical_ot = all_ot_inputs()
        .filter(|&(b0, b1, c)| {
            ot_via_one_classical_bit(b0, b1, c, &mut Transcript::new()) == c.select(b0, b1)
        })
        .count() as f64
        / 8.0;
    checks.push(check(
        "ot_via_one_classical_bit average",
        classical_ot,
        classical_ot == CLASSICAL_SUCCESS,
    ));

    let flip = calibrate_teleport_flip(&mut RandomSource::new(0, 0), 1000);
    checks.push(check(
        "teleport output flip calibration",
        TELEPORT_OUTPUT_FLIP.value() as f64,
        flip == Some(TELEPORT_OUTPUT_FLIP),
    ));

    checks.push(budget_check());
    checks
}

/// Every protocol's transcript matches its resource budget.
fn budget_check() -> Check {
    let mut rng = RandomSource::new(0, 0);
    let (a, b) = (BlochVector::PLUS_Z, BlochVector::PLUS_X);
    let mut ok = true;

    let counts = |t: &Transcript| {
        (
            t.nlbox_uses(),
            t.ot_uses(),
            t.classical_bits(),
            t.qubits_sent(),
        )
    };
    for (b0, b1, c) in all_ot_inputs() {
        let mut t = Transcript::new();
        obtsim_core::ot_from_nlbox(b0, b1, c, &mut rng, &mut t);
        ok &= counts(&t) == (1, 0, 1, 0);
        let mut t = Transcript::new();
        obtsim_core::ot_via_quantum(b0, b1, c, &mut rng, &mut t);
        ok &= counts(&t) == (0, 0, 0, 1);
        let mut t = Transcript::new();
        ot_via_one_classical_bit(b0, b1, c, &mut t);
        ok &= counts(&t) == (0, 0, 1, 0);
    }
    for (u, v) in bit_pairs() {
        let mut t = Transcript::new();
        obtsim_core::nlbox_from_ot(u, v, &mut rng, &mut t);
        ok &= counts(&t) == (0, 1, 0, 0);
    }
    ok &= counts(&TeleportVariant::Ot.run(&a, &b, &mut rng).transcript) == (0, 1, 0, 0);
    ok &= counts(&TeleportVariant::NlBox.run(&a, &b, &mut rng).transcript) == (1, 0, 1, 0);
    check("protocol resource budgets", ok as u8 as f64, ok)
}

pub fn references() -> Vec<Reference> {
    vec![
        Reference::new("classical success (chsh, one-bit ot)", CLASSICAL_SUCCESS),
        Reference::new("quantum success cos^2(pi/8)", QUANTUM_SUCCESS),
    ]
}
