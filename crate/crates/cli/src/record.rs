use std::collections::HashMap;

use mixent::criteria::{
    bound_sweep, criteria_verdict_with, delta_mu_from_profile, delta_mu_max, lptps_entropy_exclusion_pair,
    memms_tangle_bound, BoundCheck, BoundName, CriteriaVerdict,
};
use mixent::measures::{concurrence, entanglement_of_formation, entropy_profile, EntanglementReport, EntropyKind, EntropyProfile};
use mixent::states::{DensityMatrix, Family};

use crate::dataset::Cell;

/// Entanglement class of a record: separable, or one of four equal-width
/// bins of the bundle measure (`q1` = (0, 1/4], ..., `q4` = (3/4, 1]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bundle {
    Separable,
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Bundle {
    pub const ALL: [Bundle; 5] = [Bundle::Separable, Bundle::Q1, Bundle::Q2, Bundle::Q3, Bundle::Q4];

    pub fn from_measure(m: f64) -> Self {
        if m <= 0.0 {
            Bundle::Separable
        } else if m <= 0.25 {
            Bundle::Q1
        } else if m <= 0.5 {
            Bundle::Q2
        } else if m <= 0.75 {
            Bundle::Q3
        } else {
            Bundle::Q4
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Bundle::Separable => "separable",
            Bundle::Q1 => "q1",
            Bundle::Q2 => "q2",
            Bundle::Q3 => "q3",
            Bundle::Q4 => "q4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Bundle::ALL.into_iter().find(|b| b.as_str() == s)
    }
}

/// Which entanglement measure is binned into bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleMeasure {
    /// Entanglement of formation, for von Neumann datasets.
    Eof,
    /// Tangle, for linear-entropy datasets.
    Tangle,
}

impl BundleMeasure {
    pub fn for_kind(kind: EntropyKind) -> Self {
        match kind {
            EntropyKind::VonNeumann => BundleMeasure::Eof,
            EntropyKind::Linear => BundleMeasure::Tangle,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BundleMeasure::Eof => "eof",
            BundleMeasure::Tangle => "tangle",
        }
    }
}

/// Everything computed for one state.
#[derive(Clone, Debug)]
pub struct StateRecord {
    pub id: u64,
    pub seed: u64,
    pub family: Family,
    /// `(x1, x2, c)` for ansatz-based families.
    pub params: Option<[f64; 3]>,
    pub s_v: EntropyProfile,
    pub s_l: EntropyProfile,
    pub ent: EntanglementReport,
    pub verdict: CriteriaVerdict,
    pub delta_mu: f64,
    pub bundle: Bundle,
    pub bundle_measure: BundleMeasure,
    /// Inequalities that apply to this state, each with its slack.
    pub bounds: Vec<BoundCheck>,
}

/// Column order of the full record.
pub const FULL_COLUMNS: [&str; 24] = [
    "id",
    "seed",
    "family",
    "x1",
    "x2",
    "c",
    "sV1",
    "sV2",
    "sV",
    "sL1",
    "sL2",
    "sL",
    "mu1",
    "mu2",
    "mu",
    "concurrence",
    "tangle",
    "eof",
    "delta_mu",
    "ppt",
    "entropic_vn",
    "entropic_lin",
    "majorization",
    "bundle",
];

/// Runs every measure and criterion on `rho`.
///
/// The family and parameters come from the state's provenance (`input` when it
/// has none). Entangled LPTPS also get the exclusion and extremal-line checks.
pub fn analyze(rho: &DensityMatrix, id: u64, seed: u64, bundle_measure: BundleMeasure) -> StateRecord {
    let s_v = entropy_profile(rho, EntropyKind::VonNeumann);
    let s_l = entropy_profile(rho, EntropyKind::Linear);
    let ent = concurrence(rho);
    let verdict = criteria_verdict_with(rho, &s_v, &s_l);
    let delta_mu = delta_mu_from_profile(&s_l);

    let family = rho.family().unwrap_or(Family::Input);
    let params = rho.provenance().and_then(|p| match (p.family, p.params.as_slice()) {
        (Family::Memms, &[x1, x2]) => Some([x1, x2, 2.0 * (x1 * x2).sqrt()]),
        (_, &[x1, x2, c]) => Some([x1, x2, c]),
        _ => None,
    });

    let mut bounds = bound_sweep(&s_v, &s_l, &ent).expect("profiles have matching kinds").to_vec();
    if family == Family::Lptps && verdict.ppt_entangled {
        bounds.extend(lptps_entropy_exclusion_pair(s_l.s_1, s_l.s_2).expect("linear entropies lie in [0, 1]"));
        bounds.push(BoundCheck::new(BoundName::LptpsLine, ent.tangle, 2.0 * (delta_mu_max() - delta_mu)));
    }

    let measure = match bundle_measure {
        BundleMeasure::Eof => ent.eof,
        BundleMeasure::Tangle => ent.tangle,
    };
    StateRecord {
        id,
        seed,
        family,
        params,
        s_v,
        s_l,
        ent,
        verdict,
        delta_mu,
        bundle: Bundle::from_measure(measure),
        bundle_measure,
        bounds,
    }
}

impl StateRecord {
    /// Value of a named column, `None` for unknown names.
    pub fn cell(&self, column: &str) -> Option<Cell> {
        let param = |i: usize| self.params.map_or(Cell::Missing, |p| Cell::Float(p[i]));
        Some(match column {
            "id" => Cell::Int(self.id),
            "seed" => Cell::Int(self.seed),
            "family" => Cell::Text(self.family.as_str()),
            "x1" => param(0),
            "x2" => param(1),
            "c" => param(2),
            "sV1" => Cell::Float(self.s_v.s_1),
            "sV2" => Cell::Float(self.s_v.s_2),
            "sV" => Cell::Float(self.s_v.s_global),
            "sL1" => Cell::Float(self.s_l.s_1),
            "sL2" => Cell::Float(self.s_l.s_2),
            "sL" => Cell::Float(self.s_l.s_global),
            "mu1" => Cell::Float(self.s_l.mu_1),
            "mu2" => Cell::Float(self.s_l.mu_2),
            "mu" => Cell::Float(self.s_l.mu),
            "concurrence" => Cell::Float(self.ent.concurrence),
            "tangle" => Cell::Float(self.ent.tangle),
            "eof" => Cell::Float(self.ent.eof),
            "delta_mu" => Cell::Float(self.delta_mu),
            "ppt" => Cell::Bool(self.verdict.ppt_entangled),
            "entropic_vn" => Cell::Bool(self.verdict.entropic_vn_flag),
            "entropic_lin" => Cell::Bool(self.verdict.entropic_lin_flag),
            "majorization" => Cell::Bool(self.verdict.majorization_flag),
            "bundle" => Cell::Text(self.bundle.as_str()),
            _ => return None,
        })
    }

    pub fn cells(&self, columns: &[&str]) -> Vec<Cell> {
        columns
            .iter()
            .map(|c| self.cell(c).unwrap_or_else(|| panic!("unknown column {c}")))
            .collect()
    }
}

const ROW_TOL: f64 = 1e-9;
const EXACT_TOL: f64 = 1e-12;

/// Re-checks the record invariants on one parsed row. Only relations between
/// columns that are present are tested, so projected figure datasets can be
/// verified as well as full records.
pub fn verify_row(columns: &[String], values: &[String], bundle_measure: BundleMeasure) -> Result<(), String> {
    if columns.len() != values.len() {
        return Err(format!("{} columns but {} values", columns.len(), values.len()));
    }
    let fields: HashMap<&str, &str> = columns.iter().map(String::as_str).zip(values.iter().map(String::as_str)).collect();
    let num = |name: &str| -> Result<Option<f64>, String> {
        match fields.get(name) {
            None | Some(&"") => Ok(None),
            Some(v) => v.parse::<f64>().map(Some).map_err(|e| format!("{name} = {v:?}: {e}")),
        }
    };
    let flag = |name: &str| -> Result<Option<bool>, String> {
        match fields.get(name) {
            None => Ok(None),
            Some(v) => v.parse::<bool>().map(Some).map_err(|e| format!("{name} = {v:?}: {e}")),
        }
    };
    let ensure = |ok: bool, what: String| if ok { Ok(()) } else { Err(what) };

    for name in ["sV1", "sV2", "sV", "sL1", "sL2", "sL", "concurrence", "tangle", "eof", "x1", "x2", "c"] {
        if let Some(v) = num(name)? {
            ensure((0.0..=1.0).contains(&v), format!("{name} = {v} outside [0, 1]"))?;
        }
    }
    for (name, lo) in [("mu", 0.25), ("mu1", 0.5), ("mu2", 0.5)] {
        if let Some(v) = num(name)? {
            ensure(v >= lo - EXACT_TOL && v <= 1.0 + EXACT_TOL, format!("{name} = {v} outside [{lo}, 1]"))?;
        }
    }

    let c = num("concurrence")?;
    let tangle = num("tangle")?;
    let eof = num("eof")?;
    if let (Some(c), Some(t)) = (c, tangle) {
        ensure((t - c * c).abs() <= EXACT_TOL, format!("tangle {t} != concurrence^2 {}", c * c))?;
    }
    let c_for_eof = c.or(tangle.map(f64::sqrt));
    if let (Some(c), Some(e)) = (c_for_eof, eof) {
        let expected = entanglement_of_formation(c).map_err(|e| e.to_string())?;
        ensure((e - expected).abs() <= ROW_TOL, format!("eof {e} != F(C) = {expected}"))?;
    }

    for (s, mu, d) in [("sL", "mu", 4.0), ("sL1", "mu1", 2.0), ("sL2", "mu2", 2.0)] {
        if let (Some(s), Some(mu)) = (num(s)?, num(mu)?) {
            let expected = (d / (d - 1.0) * (1.0 - mu)).clamp(0.0, 1.0);
            ensure((s - expected).abs() <= EXACT_TOL, format!("linear entropy {s} disagrees with purity {mu}"))?;
        }
    }
    if let (Some(dm), Some(mu1), Some(mu2), Some(mu)) = (num("delta_mu")?, num("mu1")?, num("mu2")?, num("mu")?) {
        ensure((dm - (mu1 * mu2 - mu)).abs() <= EXACT_TOL, format!("delta_mu {dm} != mu1 mu2 - mu"))?;
    }

    if let (Some(s1), Some(s2), Some(s)) = (num("sV1")?, num("sV2")?, num("sV")?) {
        ensure((s1 - s2).abs() <= 2.0 * s + ROW_TOL, format!("Araki-Lieb violated: sV1 {s1}, sV2 {s2}, sV {s}"))?;
        ensure(2.0 * s <= s1 + s2 + ROW_TOL, format!("subadditivity violated: sV1 {s1}, sV2 {s2}, sV {s}"))?;
        if let Some(e) = eof {
            ensure(e <= s1.min(s2) + ROW_TOL, format!("eof {e} above min marginal entropy"))?;
        }
    }
    if let (Some(s1), Some(s2), Some(t)) = (num("sL1")?, num("sL2")?, tangle) {
        let bound = memms_tangle_bound(s1, s2).map_err(|e| e.to_string())?;
        ensure(t <= s1.min(s2) + ROW_TOL, format!("tangle {t} above min marginal linear entropy"))?;
        ensure(t <= bound + ROW_TOL, format!("tangle {t} above MEMMS bound {bound}"))?;
    }

    let ppt = flag("ppt")?;
    let weak = [flag("entropic_vn")?, flag("entropic_lin")?, flag("majorization")?];
    if let Some(ppt) = ppt {
        ensure(
            ppt || !weak.iter().any(|f| f == &Some(true)),
            "a sufficient criterion fired on a PPT state".to_string(),
        )?;
        if let Some(c) = c {
            ensure(!ppt || c > 0.0, format!("PPT flags entanglement but concurrence is {c}"))?;
        }
    }

    if let Some(b) = fields.get("bundle") {
        let bundle = Bundle::parse(b).ok_or_else(|| format!("unknown bundle {b:?}"))?;
        let measure = match bundle_measure {
            BundleMeasure::Eof => eof,
            BundleMeasure::Tangle => tangle,
        };
        if let Some(m) = measure {
            let expected = Bundle::from_measure(m);
            ensure(bundle == expected, format!("bundle {b} but {} = {m} belongs to {}", bundle_measure.as_str(), expected.as_str()))?;
        }
    }
    Ok(())
}
