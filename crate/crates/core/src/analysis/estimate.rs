//! Monte-Carlo success estimation with per-trial random streams.
//!
//! Trial `i` of a run with seed `s` always draws from `RandomSource::new(s, i)`,
//! and aggregation is plain counting, so an estimate is identical however the
//! trials are split across workers.

use std::num::NonZeroUsize;
use std::str::FromStr;
use std::thread;

use serde::Serialize;

use crate::analysis::chsh::{chsh_classical_optimum, ChshSettings};
use crate::bit::Bit;
use crate::error::{Error, Result};
use crate::primitives::{ideal_ot, nl_box, ResourceCounts, Transcript};
use crate::qubit::{probability_along, BlochVector};
use crate::reductions::{
    nlbox_from_ot, ot_from_nlbox, ot_via_one_classical_bit, ot_via_quantum, TeleportVariant,
};
use crate::rng::RandomSource;
use crate::tolerance::Z_95;
use crate::{CLASSICAL_SUCCESS, QUANTUM_SUCCESS};

/// A protocol plus fixed parameters, run once per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Experiment {
    ChshClassical,
    ChshQuantum,
    ChshNlbox,
    OtNlbox,
    NlboxOt,
    OtQuantum,
    OtClassicalBit,
    IdealOt,
    /// Success means Bob's outcome is 0, i.e. along `+v_b`.
    Teleport {
        variant: TeleportVariant,
        v_a: BlochVector,
        v_b: BlochVector,
    },
    /// Reference coin used to check interval coverage.
    Bernoulli(f64),
}

impl Experiment {
    /// Names accepted by [`FromStr`].
    pub const NAMES: [&'static str; 9] = [
        "chsh-classical",
        "chsh-quantum",
        "chsh-nlbox",
        "ot-nlbox",
        "nlbox-ot",
        "ot-quantum",
        "ot-classical-bit",
        "teleport-ot",
        "teleport-nlbox",
    ];

    /// Teleportation of `+z` measured along an axis at polar angle `theta`.
    pub fn teleport_at_angle(variant: TeleportVariant, theta: f64) -> Self {
        Experiment::Teleport {
            variant,
            v_a: BlochVector::PLUS_Z,
            v_b: BlochVector::from_spherical(theta, 0.0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::ChshClassical => "chsh-classical",
            Experiment::ChshQuantum => "chsh-quantum",
            Experiment::ChshNlbox => "chsh-nlbox",
            Experiment::OtNlbox => "ot-nlbox",
            Experiment::NlboxOt => "nlbox-ot",
            Experiment::OtQuantum => "ot-quantum",
            Experiment::OtClassicalBit => "ot-classical-bit",
            Experiment::IdealOt => "ideal-ot",
            Experiment::Teleport { variant, .. } => variant.name(),
            Experiment::Bernoulli(_) => "bernoulli",
        }
    }

    /// Exact success probability the estimate should converge to.
    pub fn reference(&self) -> f64 {
        match self {
            Experiment::ChshClassical | Experiment::OtClassicalBit => CLASSICAL_SUCCESS,
            Experiment::ChshQuantum | Experiment::OtQuantum => QUANTUM_SUCCESS,
            Experiment::ChshNlbox
            | Experiment::OtNlbox
            | Experiment::NlboxOt
            | Experiment::IdealOt => 1.0,
            Experiment::Teleport { v_a, v_b, .. } => probability_along(v_a, v_b),
            Experiment::Bernoulli(p) => *p,
        }
    }

    /// Runs one trial; returns whether it succeeded and what it consumed.
    pub fn trial(&self, rng: &mut RandomSource) -> (bool, Transcript) {
        let mut t = Transcript::new();
        let success = match self {
            Experiment::ChshClassical => {
                let (_, strategy) = chsh_classical_optimum();
                let (u, v) = (rng.bit(), rng.bit());
                let (x, y) = strategy.answer(u, v);
                x ^ y == u & v
            }
            Experiment::ChshQuantum => ChshSettings::optimal().play(rng),
            Experiment::ChshNlbox => {
                let (u, v) = (rng.bit(), rng.bit());
                let o = nl_box(u, v, rng, &mut t);
                o.x ^ o.y == u & v
            }
            Experiment::NlboxOt => {
                let (u, v) = (rng.bit(), rng.bit());
                let (x, y) = nlbox_from_ot(u, v, rng, &mut t);
                x ^ y == u & v
            }
            Experiment::OtNlbox
            | Experiment::OtQuantum
            | Experiment::OtClassicalBit
            | Experiment::IdealOt => {
                let (b0, b1, c) = (rng.bit(), rng.bit(), rng.bit());
                let out = match self {
                    Experiment::OtNlbox => ot_from_nlbox(b0, b1, c, rng, &mut t),
                    Experiment::OtQuantum => ot_via_quantum(b0, b1, c, rng, &mut t),
                    Experiment::OtClassicalBit => ot_via_one_classical_bit(b0, b1, c, &mut t),
                    _ => ideal_ot(b0, b1, c, &mut t),
                };
                out == c.select(b0, b1)
            }
            Experiment::Teleport { variant, v_a, v_b } => {
                let r = variant.run(v_a, v_b, rng);
                t = r.transcript;
                r.outcome == Bit::ZERO
            }
            Experiment::Bernoulli(p) => rng.bernoulli(*p).is_one(),
        };
        (success, t)
    }
}

impl FromStr for Experiment {
    type Err = Error;

    /// Teleportation names map to the aligned case (`θ = 0`).
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chsh-classical" => Experiment::ChshClassical,
            "chsh-quantum" => Experiment::ChshQuantum,
            "chsh-nlbox" => Experiment::ChshNlbox,
            "ot-nlbox" => Experiment::OtNlbox,
            "nlbox-ot" => Experiment::NlboxOt,
            "ot-quantum" => Experiment::OtQuantum,
            "ot-classical-bit" => Experiment::OtClassicalBit,
            "teleport-ot" => Experiment::teleport_at_angle(TeleportVariant::Ot, 0.0),
            "teleport-nlbox" => Experiment::teleport_at_angle(TeleportVariant::NlBox, 0.0),
            other => return Err(Error::UnknownExperiment(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub seed: u64,
    /// Totals over all trials.
    pub resources: ResourceCounts,
}

impl EstimateResult {
    fn from_counts(trials: u64, successes: u64, seed: u64, resources: ResourceCounts) -> Self {
        let p_hat = successes as f64 / trials as f64;
        let (lo, hi) = wilson_interval(successes, trials, Z_95);
        EstimateResult {
            trials,
            successes,
            p_hat,
            ci95_low: lo.min(p_hat),
            ci95_high: hi.max(p_hat),
            seed,
            resources,
        }
    }

    /// Resources of a single run, when every run consumed the same amount.
    pub fn per_trial_resources(&self) -> Option<ResourceCounts> {
        let r = self.resources;
        let n = self.trials;
        let all = [r.nlbox_uses, r.ot_uses, r.classical_bits, r.qubits_sent];
        all.iter().all(|c| c % n == 0).then(|| ResourceCounts {
            nlbox_uses: r.nlbox_uses / n,
            ot_uses: r.ot_uses / n,
            classical_bits: r.classical_bits / n,
            qubits_sent: r.qubits_sent / n,
        })
    }

    /// Standard error of `p_hat` under `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn run_range(
    experiment: &Experiment,
    seed: u64,
    range: std::ops::Range<u64>,
) -> (u64, ResourceCounts) {
    let mut successes = 0;
    let mut resources = ResourceCounts::default();
    for i in range {
        let mut rng = RandomSource::new(seed, i);
        let (ok, t) = experiment.trial(&mut rng);
        successes += ok as u64;
        resources += t.counts();
    }
    (successes, resources)
}

/// Runs `n` trials split evenly over `workers` threads.
pub fn run_trials_with_workers(
    experiment: &Experiment,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<EstimateResult> {
    if n == 0 {
        return Err(Error::ZeroTrials);
    }
    let workers = (workers.max(1) as u64).min(n);
    let chunk = n.div_ceil(workers);
    let parts: Vec<(u64, ResourceCounts)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk).min(n)..((w + 1) * chunk).min(n);
                scope.spawn(move || run_range(experiment, seed, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial worker panicked"))
            .collect()
    });
    let mut successes = 0;
    let mut resources = ResourceCounts::default();
    for (s, r) in parts {
        successes += s;
        resources += r;
    }
    Ok(EstimateResult::from_counts(n, successes, seed, resources))
}

/// Runs `n` trials on all available cores.
pub fn run_trials(experiment: &Experiment, n: u64, seed: u64) -> Result<EstimateResult> {
    let workers = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    run_trials_with_workers(experiment, n, seed, workers)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub estimate: EstimateResult,
    /// Born-rule prediction `(1 + cos θ) / 2`.
    pub reference: f64,
}

/// Seed for the `index`-th grid point; point 0 uses `seed` itself.
fn point_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs the teleportation protocol with `v_A`, `v_B` at each relative angle
/// in `grid`, alongside the quantum prediction.
pub fn sweep_alignment(
    variant: TeleportVariant,
    grid: &[f64],
    n: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.iter()
        .enumerate()
        .map(|(i, &theta)| {
            let estimate = run_trials(
                &Experiment::teleport_at_angle(variant, theta),
                n,
                point_seed(seed, i),
            )?;
            Ok(SweepRow {
                theta,
                estimate,
                reference: (1.0 + theta.cos()) / 2.0,
            })
        })
        .collect()
}
