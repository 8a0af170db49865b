use mixent::criteria::{delta_mu_from_profile, delta_mu_max, lptps_optimal_x, memms_tangle_bound};
use mixent::measures::{concurrence, entropy_profile, EntropyKind};
use mixent::states::{ansatz_state, memms, LptpsParams, MemmsParams};

use crate::dataset::{Cell, Dataset, Metadata};
use crate::error::CliError;

/// MEMMS over a `resolution x resolution` grid of marginal spectra.
///
/// Row `(i, j)` has smaller marginal eigenvalues `i h / 2` and `j h / 2` with
/// `h = 1 / (resolution - 1)`, so the corners run from the pure product state
/// to the Bell state. Where the grid asks for a purer first qubit the row is the
/// qubit-swapped MEMMS. Entropies and tangle are measured from the state;
/// `slack` is the distance to the marginal tangle bound, which MEMMS saturate.
pub fn memms_grid(resolution: usize) -> Result<Dataset, CliError> {
    if resolution < 2 {
        return Err(CliError::Usage(format!("resolution must be at least 2, got {resolution}")));
    }
    let meta = Metadata::new("memms_grid").with("resolution", resolution).with("rng", "none");
    let mut data = Dataset::new(meta, vec!["x1", "x2", "sL1", "sL2", "tangle", "bound", "slack"]);
    let step = 0.5 / (resolution - 1) as f64;
    for i in 0..resolution {
        for j in 0..resolution {
            let (p, q) = (i as f64 * step, j as f64 * step);
            let params = MemmsParams::from_marginal_spectra(p, q).expect("grid stays inside [0, 1/2]");
            let rho = memms(params);
            let lin = entropy_profile(&rho, EntropyKind::Linear);
            let tangle = concurrence(&rho).tangle;
            // the swap leaves tangle and the (symmetric) bound unchanged
            let target = 4.0 * p * (1.0 - p);
            let (s1, s2) = if (lin.s_1 - target).abs() <= (lin.s_2 - target).abs() {
                (lin.s_1, lin.s_2)
            } else {
                (lin.s_2, lin.s_1)
            };
            let bound = memms_tangle_bound(s1, s2).expect("entropies in range");
            data.push(vec![
                Cell::Float(params.x1()),
                Cell::Float(params.x2()),
                Cell::Float(s1),
                Cell::Float(s2),
                Cell::Float(tangle),
                Cell::Float(bound),
                Cell::Float(bound - tangle),
            ]);
        }
    }
    Ok(data)
}

/// Extremal LPTPS at `points` evenly spaced purity gaps in `[0, dmu_max]`.
///
/// Every row is the ansatz with `x1 = x2 = (3 - sqrt 5) / 4` and the largest
/// coherence giving the target gap. `delta_mu` and `tangle` are measured from
/// the state; `residual` is `tangle + 2 delta_mu - 2 dmu_max`.
pub fn lptps_line(points: usize) -> Result<Dataset, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!("the line needs at least 2 points, got {points}")));
    }
    let meta = Metadata::new("lptps_line").with("points", points).with("rng", "none");
    let mut data = Dataset::new(meta, vec!["x1", "x2", "c", "delta_mu", "tangle", "line", "residual"]);
    let x = lptps_optimal_x();
    let top = delta_mu_max();
    for k in 0..points {
        let target = top * k as f64 / (points - 1) as f64;
        let c = (2.0 * (top - target)).max(0.0).sqrt();
        let params = LptpsParams::new(x, x, c).expect("extremal parameters are valid");
        let rho = ansatz_state(params, false).expect("extremal ansatz is a state");
        let dm = delta_mu_from_profile(&entropy_profile(&rho, EntropyKind::Linear));
        let tangle = concurrence(&rho).tangle;
        let line = 2.0 * (top - dm);
        data.push(vec![
            Cell::Float(x),
            Cell::Float(x),
            Cell::Float(c),
            Cell::Float(dm),
            Cell::Float(tangle),
            Cell::Float(line),
            Cell::Float(tangle - line),
        ]);
    }
    Ok(data)
}
