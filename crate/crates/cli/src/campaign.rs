use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use mixent::criteria::BoundName;
use mixent::states::{
    ansatz_state, memms, random_product_state, random_state, sample_lptps_params, sample_memms_params, DensityMatrix,
    Family,
};
use rand::Rng;
use rayon::prelude::*;

use crate::dataset::{Dataset, Format, Metadata};
use crate::error::CliError;
use crate::grids::{lptps_line, memms_grid};
use crate::record::{analyze, Bundle, BundleMeasure, StateRecord, FULL_COLUMNS};
use crate::{state_rng, svg};

/// Families a campaign can sample.
pub const CAMPAIGN_FAMILIES: [Family; 5] = [Family::Random, Family::Memms, Family::Lptps, Family::Product, Family::Pure];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3a,
    Fig3b,
    None,
}

impl Figure {
    pub fn as_str(self) -> &'static str {
        match self {
            Figure::Fig1a => "fig1a",
            Figure::Fig1b => "fig1b",
            Figure::Fig2 => "fig2",
            Figure::Fig3a => "fig3a",
            Figure::Fig3b => "fig3b",
            Figure::None => "none",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Figure::Fig1a => &["sV1", "sV2", "sV", "eof", "bundle"],
            Figure::Fig1b => &["sL1", "sL2", "sL", "tangle", "bundle"],
            Figure::Fig2 => &["sL1", "sL2", "tangle"],
            Figure::Fig3a => &["sL1", "sL2", "sL", "tangle", "bundle"],
            Figure::Fig3b => &["delta_mu", "tangle"],
            Figure::None => &FULL_COLUMNS,
        }
    }

    /// The family a figure is drawn from; `None` means any campaign family.
    pub fn family(self) -> Option<Family> {
        match self {
            Figure::Fig1a | Figure::Fig1b | Figure::Fig2 => Some(Family::Random),
            Figure::Fig3a | Figure::Fig3b => Some(Family::Lptps),
            Figure::None => None,
        }
    }

    pub fn bundle_measure(self) -> BundleMeasure {
        match self {
            Figure::Fig1a | Figure::None => BundleMeasure::Eof,
            _ => BundleMeasure::Tangle,
        }
    }

    pub fn entangled_only(self) -> bool {
        self == Figure::Fig2
    }

    /// State counts used for the published figures.
    pub fn default_n(self) -> usize {
        match self {
            Figure::Fig1a | Figure::Fig1b => 60_000,
            Figure::Fig2 => 30_000,
            Figure::Fig3a | Figure::Fig3b | Figure::None => 10_000,
        }
    }

    /// Axes of the quick-look SVG.
    fn svg_axes(self) -> (&'static str, &'static str) {
        match self {
            Figure::Fig1a => ("sV", "eof"),
            Figure::Fig1b | Figure::None => ("sL", "tangle"),
            Figure::Fig2 => ("sL1", "tangle"),
            Figure::Fig3a => ("sL1", "sL2"),
            Figure::Fig3b => ("delta_mu", "tangle"),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub n_states: usize,
    pub seed: u64,
    pub family: Family,
    pub figure: Figure,
    pub output_path: PathBuf,
    pub format: Format,
    pub svg: bool,
}

impl CampaignConfig {
    /// Checks the invariants; the figure's family is used when `family` is `None`.
    pub fn new(
        n_states: usize,
        seed: u64,
        family: Option<Family>,
        figure: Figure,
        output_path: PathBuf,
        format: Format,
    ) -> Result<Self, CliError> {
        if n_states == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        let family = match (figure.family(), family) {
            (Some(fixed), Some(asked)) if fixed != asked => {
                return Err(CliError::Usage(format!("figure {figure} is drawn from the {fixed} family, not {asked}")))
            }
            (Some(fixed), _) => fixed,
            (None, Some(asked)) => asked,
            (None, None) => Family::Random,
        };
        if !CAMPAIGN_FAMILIES.contains(&family) {
            return Err(CliError::Usage(format!(
                "family {family} cannot be sampled; use one of random, memms, lptps, product, pure"
            )));
        }
        Ok(Self {
            n_states,
            seed,
            family,
            figure,
            output_path,
            format,
            svg: false,
        })
    }

    pub fn with_svg(mut self, svg: bool) -> Self {
        self.svg = svg;
        self
    }

    fn metadata(&self) -> Metadata {
        Metadata::new(self.figure.as_str())
            .with("family", self.family)
            .with("n", self.n_states)
            .with("seed", self.seed)
            .with("bundle_measure", self.figure.bundle_measure().as_str())
            .with("rng", crate::RNG_NAME)
    }
}

/// One state of `family` drawn from `rng`.
pub fn sample_state<R: Rng + ?Sized>(family: Family, rng: &mut R) -> DensityMatrix {
    match family {
        Family::Random => random_state(rng, None),
        Family::Pure => random_state(rng, Some(1)),
        Family::Product => random_product_state(rng),
        Family::Memms => memms(sample_memms_params(rng)),
        Family::Lptps => ansatz_state(sample_lptps_params(rng), true).expect("sampled parameters are LPTPS"),
        other => panic!("family {other} is not sampled by campaigns"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub id: u64,
    pub bound: BoundName,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub rows: usize,
    /// States drawn, including any discarded by an entangled-only figure.
    pub drawn: u64,
    pub bundle_counts: BTreeMap<Bundle, usize>,
    pub min_slack: BTreeMap<BoundName, f64>,
    pub checks: BTreeMap<BoundName, usize>,
    pub violations: Vec<Violation>,
}

impl Summary {
    pub fn from_records(records: &[StateRecord], drawn: u64) -> Self {
        let mut s = Summary {
            rows: records.len(),
            drawn,
            bundle_counts: Bundle::ALL.into_iter().map(|b| (b, 0)).collect(),
            min_slack: BTreeMap::new(),
            checks: BTreeMap::new(),
            violations: Vec::new(),
        };
        for r in records {
            *s.bundle_counts.entry(r.bundle).or_default() += 1;
            for b in &r.bounds {
                let m = s.min_slack.entry(b.bound).or_insert(f64::INFINITY);
                *m = m.min(b.slack);
                *s.checks.entry(b.bound).or_default() += 1;
                if !b.satisfied {
                    s.violations.push(Violation {
                        id: r.id,
                        bound: b.bound,
                        slack: b.slack,
                    });
                }
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows: {} (drawn {})", self.rows, self.drawn)?;
        let counts: Vec<String> = self.bundle_counts.iter().map(|(b, n)| format!("{}={n}", b.as_str())).collect();
        writeln!(f, "bundles: {}", counts.join(" "))?;
        for (bound, slack) in &self.min_slack {
            writeln!(f, "min slack {:<16} {slack:+.3e} over {} checks", bound.as_str(), self.checks[bound])?;
        }
        write!(f, "violations: {}", self.violations.len())?;
        for v in self.violations.iter().take(10) {
            write!(f, "\n  id {} {} slack {:+.3e}", v.id, v.bound, v.slack)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CampaignOutput {
    pub records: Vec<StateRecord>,
    pub dataset: Dataset,
    /// Extra datasets with the file-name suffix they are written under.
    pub companions: Vec<(&'static str, Dataset)>,
    pub summary: Summary,
}

const BLOCK: u64 = 4096;

/// Samples and analyses the states of a campaign. Ids are processed in
/// parallel but collected in id order, so the result only depends on the config.
pub fn generate(config: &CampaignConfig) -> CampaignOutput {
    let n = config.n_states;
    let measure = config.figure.bundle_measure();
    let one = |id: u64| {
        let mut rng = state_rng(config.seed, id);
        let rho = sample_state(config.family, &mut rng);
        analyze(&rho, id, config.seed, measure)
    };

    let mut records = Vec::with_capacity(n);
    let drawn = if config.figure.entangled_only() {
        let mut next = 0u64;
        while records.len() < n {
            let block: Vec<StateRecord> = (next..next + BLOCK)
                .into_par_iter()
                .map(one)
                .filter(|r| r.verdict.ppt_entangled)
                .collect();
            next += BLOCK;
            records.extend(block.into_iter().take(n - records.len()));
        }
        records.last().map_or(0, |r| r.id + 1)
    } else {
        records = (0..n as u64).into_par_iter().map(one).collect();
        n as u64
    };

    let columns = config.figure.columns().to_vec();
    let mut dataset = Dataset::new(config.metadata(), columns.clone());
    for r in &records {
        dataset.push(r.cells(&columns));
    }

    let companions = match config.figure {
        Figure::Fig2 => vec![("memms", memms_grid(50).expect("resolution is valid"))],
        Figure::Fig3b => vec![("line", lptps_line(101).expect("grid is valid"))],
        _ => Vec::new(),
    };
    let summary = Summary::from_records(&records, drawn);
    CampaignOutput {
        records,
        dataset,
        companions,
        summary,
    }
}

/// `fig2.csv` with suffix `memms` and extension `csv` becomes `fig2.memms.csv`.
pub fn sibling_path(path: &Path, suffix: &str, extension: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.{extension}"))
}

/// Writes the dataset, its companions and the optional SVG; returns the paths written.
pub fn write_outputs(output: &CampaignOutput, config: &CampaignConfig) -> Result<Vec<PathBuf>, CliError> {
    let mut written = vec![config.output_path.clone()];
    output.dataset.write_to_path(config.format, &config.output_path)?;
    for (suffix, data) in &output.companions {
        let path = sibling_path(&config.output_path, suffix, config.format.extension());
        data.write_to_path(config.format, &path)?;
        written.push(path);
    }
    if config.svg {
        let (x, y) = config.figure.svg_axes();
        let path = config.output_path.with_extension("svg");
        let doc = svg::scatter(&output.records, x, y, &format!("{} ({} states)", config.figure, output.records.len()));
        std::fs::write(&path, doc).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Generates and writes a campaign. The files are written even when a bound
/// is violated; the violation is then reported as the error.
pub fn run_campaign(config: &CampaignConfig) -> Result<(CampaignOutput, Vec<PathBuf>), CliError> {
    let output = generate(config);
    let written = write_outputs(&output, config)?;
    if let Some(v) = output.summary.violations.first() {
        return Err(CliError::Violation(format!(
            "{} violation(s); first: state {} {} slack {:e}",
            output.summary.violations.len(),
            v.id,
            v.bound,
            v.slack
        )));
    }
    Ok((output, written))
}
