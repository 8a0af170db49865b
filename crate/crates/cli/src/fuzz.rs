use std::collections::BTreeMap;
use std::fmt;

use mixent::criteria::BoundName;
use mixent::states::{ansatz_state, haar_unitary2, memms, random_product_state, random_state, sample_lptps_params, sample_memms_params, DensityMatrix};
use mixent::Matrix4;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::describe_invalid_state;
use crate::record::{analyze, BundleMeasure, StateRecord};
use crate::state_rng;

/// Where a fuzzed state came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SampleKind {
    /// Induced-measure state of random rank.
    Random,
    /// Pure state plus a small random admixture.
    NearPure,
    /// MEMMS plus a small random admixture.
    NearMemms,
    /// Product state plus a small random admixture.
    NearProduct,
    /// Entangled LPTPS from the ansatz.
    Lptps,
    /// Matrix supplied by the caller.
    Injected,
}

impl SampleKind {
    const DRAWN: [SampleKind; 5] = [
        SampleKind::Random,
        SampleKind::NearPure,
        SampleKind::NearMemms,
        SampleKind::NearProduct,
        SampleKind::Lptps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SampleKind::Random => "random",
            SampleKind::NearPure => "near_pure",
            SampleKind::NearMemms => "near_memms",
            SampleKind::NearProduct => "near_product",
            SampleKind::Lptps => "lptps",
            SampleKind::Injected => "injected",
        }
    }
}

/// Admixture weight: exactly zero a quarter of the time, else `10^-u` with `u` in `[3, 12]`.
fn admixture<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random_bool(0.25) {
        0.0
    } else {
        10f64.powf(-rng.random_range(3.0..12.0))
    }
}

fn perturb<R: Rng + ?Sized>(base: DensityMatrix, rng: &mut R) -> DensityMatrix {
    let eps = admixture(rng);
    let noise = random_state(rng, None);
    let mixed = base.mix(&noise, eps).expect("convex mixture of states");
    let (u, v) = (haar_unitary2(rng), haar_unitary2(rng));
    mixed.local_unitary(&u, &v).expect("local unitary keeps a valid state")
}

fn draw<R: Rng + ?Sized>(kind: SampleKind, rng: &mut R) -> DensityMatrix {
    match kind {
        SampleKind::Random => {
            let rank = rng.random_range(1..=4);
            random_state(rng, Some(rank))
        }
        SampleKind::NearPure => {
            let base = random_state(rng, Some(1));
            perturb(base, rng)
        }
        SampleKind::NearMemms => {
            let base = memms(sample_memms_params(rng));
            perturb(base, rng)
        }
        SampleKind::NearProduct => {
            let base = random_product_state(rng);
            perturb(base, rng)
        }
        SampleKind::Lptps => ansatz_state(sample_lptps_params(rng), true).expect("sampled parameters are LPTPS"),
        SampleKind::Injected => unreachable!("injected states are not drawn"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzViolation {
    pub label: String,
    pub bound: BoundName,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport {
    pub seed: u64,
    pub checked: usize,
    pub per_kind: BTreeMap<SampleKind, usize>,
    /// Inputs that were not valid states, with the failed invariant.
    pub rejected: Vec<(String, String)>,
    pub min_slack: BTreeMap<BoundName, f64>,
    pub checks: BTreeMap<BoundName, usize>,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            checked: 0,
            per_kind: BTreeMap::new(),
            rejected: Vec::new(),
            min_slack: BTreeMap::new(),
            checks: BTreeMap::new(),
            violations: Vec::new(),
        }
    }

    fn record(&mut self, label: String, kind: SampleKind, rec: &StateRecord) {
        self.checked += 1;
        *self.per_kind.entry(kind).or_default() += 1;
        for b in &rec.bounds {
            let m = self.min_slack.entry(b.bound).or_insert(f64::INFINITY);
            *m = m.min(b.slack);
            *self.checks.entry(b.bound).or_default() += 1;
            if !b.satisfied {
                self.violations.push(FuzzViolation {
                    label: label.clone(),
                    bound: b.bound,
                    slack: b.slack,
                });
            }
        }
    }

    /// Validates and checks an externally supplied matrix. Invalid input is
    /// listed under `rejected` and does not count as a checked state.
    pub fn check_matrix(&mut self, label: &str, m: Matrix4) -> bool {
        match DensityMatrix::new(m) {
            Ok(rho) => {
                let rec = analyze(&rho, 0, self.seed, BundleMeasure::Eof);
                self.record(label.to_string(), SampleKind::Injected, &rec);
                true
            }
            Err(e) => {
                self.rejected.push((label.to_string(), describe_invalid_state(&e)));
                false
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let by_bound = |m: &BTreeMap<BoundName, f64>| -> Value {
            m.iter().map(|(b, v)| (b.as_str().to_string(), json!(v))).collect::<serde_json::Map<_, _>>().into()
        };
        json!({
            "tool": crate::TOOL,
            "seed": self.seed,
            "checked": self.checked,
            "per_kind": self.per_kind.iter().map(|(k, n)| (k.as_str().to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
            "rejected": self.rejected.iter().map(|(l, r)| json!({"input": l, "reason": r})).collect::<Vec<_>>(),
            "min_slack": by_bound(&self.min_slack),
            "checks": self.checks.iter().map(|(b, n)| (b.as_str().to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
            "violations": self.violations.iter().map(|v| json!({"state": v.label, "bound": v.bound.as_str(), "slack": v.slack})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}: {} states checked", self.seed, self.checked)?;
        for (kind, n) in &self.per_kind {
            writeln!(f, "  {:<13} {n}", kind.as_str())?;
        }
        for (input, reason) in &self.rejected {
            writeln!(f, "rejected {input}: {reason}")?;
        }
        for (bound, slack) in &self.min_slack {
            writeln!(f, "min slack {:<16} {slack:+.3e} over {} checks", bound.as_str(), self.checks[bound])?;
        }
        write!(f, "violations: {}", self.violations.len())?;
        for v in self.violations.iter().take(10) {
            write!(f, "\n  {} {} slack {:+.3e}", v.label, v.bound, v.slack)?;
        }
        Ok(())
    }
}

/// Checks every bound on `n` states cycling through the drawn sample kinds.
pub fn fuzz_bounds(n: usize, seed: u64) -> FuzzReport {
    let results: Vec<(SampleKind, StateRecord)> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let kind = SampleKind::DRAWN[(i % SampleKind::DRAWN.len() as u64) as usize];
            let mut rng = state_rng(seed, i);
            let rho = draw(kind, &mut rng);
            (kind, analyze(&rho, i, seed, BundleMeasure::Eof))
        })
        .collect();
    let mut report = FuzzReport::new(seed);
    for (kind, rec) in &results {
        report.record(format!("#{}", rec.id), *kind, rec);
    }
    report
}
