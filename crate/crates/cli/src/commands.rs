use std::path::Path;
use std::sync::Arc;

use braidsim::adiabatic::{diabatic_error_scan, BraidProtocol, DrivenHamiltonian, HolonomyOptions, HolonomyResult};
use braidsim::anyon::AnyonModel;
use braidsim::chains::{splitting_scan, BraidMethod, ChainLimits, ChainSystem, DomainWallParams, JunctionChainLayout};
use braidsim::fusion_space::FusionTreeBasis;
use braidsim::linalg::CMatrix;
use braidsim::tjunction::{build_hamiltonian, degeneracy_profile, ground_space, CouplingConfig};
use braidsim::{ChargeLabel, Pair};
use serde_json::{json, Value};

use crate::config::{
    BraidParams, ChainBraidParams, ChainScalingParams, Method, SpectrumParams, SweepParams, VerifyParams,
};
use crate::error::CliError;
use crate::output::{fit_slope, Table};

type Model = AnyonModel<f64>;

/// What a command produced. `failure` is set when the run completed far
/// enough to report results but must still exit unsuccessfully.
pub struct Outcome {
    pub result: Value,
    pub summary: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(result: Value, summary: String) -> Self {
        Self {
            result,
            summary,
            failure: None,
        }
    }
}

fn lib<T>(field: &str, r: braidsim::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::library(field, e))
}

/// The named label, or the first non-Abelian charge (falling back to the
/// first non-vacuum one).
fn charge(model: &Model, name: &Option<String>) -> Result<ChargeLabel, CliError> {
    match name {
        Some(n) => lib("params.charge", model.label(n)),
        None => model
            .charges()
            .find(|&c| !model.is_abelian(c))
            .or_else(|| model.charges().nth(1))
            .ok_or_else(|| CliError::config("params.charge", "model has no non-vacuum charge")),
    }
}

fn favored(model: &Model, name: &Option<String>) -> Result<ChargeLabel, CliError> {
    match name {
        Some(n) => lib("params.favored", model.label(n)),
        None => Ok(ChargeLabel::VACUUM),
    }
}

fn names(model: &Model, labels: &[ChargeLabel]) -> Vec<String> {
    labels.iter().map(|&l| model.label_name(l).to_string()).collect()
}

fn matrix_rows(m: &CMatrix<f64>) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

fn holonomy_json(model: &Model, r: &HolonomyResult<f64>) -> Value {
    json!({
        "fidelity": r.fidelity,
        "infidelity": r.infidelity(),
        "global_phase": r.global_phase,
        "min_gap": r.min_gap,
        "discretization": r.discretization,
        "per_step_phase_spread": r.per_step_phase_spread,
        "step_phases": r.step_phases,
        "ground_sectors": names(model, &r.ground_sectors),
        "sector_phases": r.sector_phases,
        "leakage": r.leakage,
        "unitary": matrix_rows(&r.unitary),
        "target": matrix_rows(&r.target),
    })
}

fn holonomy_summary(command: &str, r: &HolonomyResult<f64>) -> String {
    let mut s = format!(
        "{command} fidelity={:.6} phase={:.4} min_gap={:.4}",
        r.fidelity, r.global_phase, r.min_gap
    );
    if let Some(l) = r.leakage {
        s.push_str(&format!(" leakage={l:.3e}"));
    }
    s
}

fn options(rel_tol: f64, gap_threshold: f64, max_leakage: f64) -> HolonomyOptions {
    HolonomyOptions {
        rel_tol,
        gap_threshold,
        max_leakage,
    }
}

/// Couplings and instantaneous spectrum along the schedule.
fn spectrum_table(h: &DrivenHamiltonian<f64>, samples: usize, channels: &[String]) -> Table {
    let mut header = vec!["t".to_string()];
    header.extend(channels.iter().map(|c| format!("eps_{c}")));
    header.extend((0..h.dim()).map(|k| format!("E{k}")));
    let mut table = Table::new(header);
    for (t, levels) in h.spectrum_series(samples) {
        let mut row = vec![t.to_string()];
        row.extend(h.schedule().couplings(t).iter().map(|e| e.to_string()));
        row.extend(levels.iter().map(|e| e.to_string()));
        table.push(row);
    }
    table
}

pub fn verify_model(model: &Model, p: &VerifyParams) -> Result<Outcome, CliError> {
    let report = lib("model", model.verify(p.tolerance))?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "max_residual": c.max_residual, "passed": c.passed}))
        .collect();
    let result = json!({
        "model": model.name(),
        "labels": model.labels(),
        "tolerance": p.tolerance,
        "passed": report.passed(),
        "checks": checks,
    });
    let worst = report
        .checks
        .iter()
        .map(|c| format!("{}={:.2e}", c.name, c.max_residual))
        .collect::<Vec<_>>()
        .join(" ");
    let summary = format!("verify-model passed={} {worst}", report.passed());
    let failure = (!report.passed()).then(|| CliError::Numerical {
        name: "ConsistencyCheck",
        message: report
            .failures()
            .map(|c| format!("{} residual {:.3e} exceeds {:.1e}", c.name, c.max_residual, p.tolerance))
            .collect::<Vec<_>>()
            .join("; "),
    });
    Ok(Outcome {
        result,
        summary,
        failure,
    })
}

pub fn spectrum(model: Model, p: &SpectrumParams, out: &Path) -> Result<Outcome, CliError> {
    let t = charge(&model, &p.charge)?;
    let a = favored(&model, &p.favored)?;
    let basis = lib("params.charge", FusionTreeBasis::enumerate(model, t))?;
    let model = basis.model().clone();
    let mut cfg = CouplingConfig::favored_only(a, p.eps);
    for (k, c) in p.extra.iter().enumerate() {
        let channel = lib(&format!("params.extra[{k}].channel"), model.label(&c.channel))?;
        cfg = cfg.with(c.pair, channel, c.eps);
    }
    let h = lib("params", build_hamiltonian(&basis, &cfg, p.chirality))?;
    let report = lib("params", ground_space(&h, p.rel_tol))?;

    let mut table = Table::new(["index", "eigenvalue"]);
    for (k, e) in report.eigenvalues.iter().enumerate() {
        table.push(vec![k.to_string(), e.to_string()]);
    }
    table.write(out, "spectrum.csv")?;

    let mut result = json!({
        "charge": model.label_name(t),
        "favored": model.label_name(a),
        "dim": basis.dim(),
        "basis": basis.states().iter().map(|&s| basis.describe(s)).collect::<Vec<_>>(),
        "eigenvalues": report.eigenvalues,
        "ground_energy": report.ground_energy,
        "ground_degeneracy": report.ground_degeneracy,
        "ground_sectors": names(&model, &report.ground_sectors),
        "gap": report.gap,
    });
    if let Some(grid) = p.profile_grid {
        let profile = lib("params", degeneracy_profile(&basis, &cfg, grid, p.chirality, p.rel_tol))?;
        let mut table = Table::new(["s_L", "s_R", "s_B", "ground_degeneracy", "gap"]);
        for pt in &profile {
            table.push(vec![
                pt.scale[0].to_string(),
                pt.scale[1].to_string(),
                pt.scale[2].to_string(),
                pt.ground_degeneracy.to_string(),
                pt.gap.to_string(),
            ]);
        }
        table.write(out, "profile.csv")?;
        result["profile_points"] = json!(profile.len());
    }
    let summary = format!(
        "spectrum ground_energy={:.6} degeneracy={} gap={:.4}",
        report.ground_energy, report.ground_degeneracy, report.gap
    );
    Ok(Outcome::ok(result, summary))
}

fn protocol(
    model: Model,
    charge_name: &Option<String>,
    favored_name: &Option<String>,
) -> Result<(Arc<FusionTreeBasis<f64>>, ChargeLabel), CliError> {
    let t = charge(&model, charge_name)?;
    let a = favored(&model, favored_name)?;
    let basis = lib("params.charge", FusionTreeBasis::enumerate(model, t))?;
    Ok((Arc::new(basis), a))
}

fn pair_names() -> Vec<String> {
    Pair::ALL.iter().map(|p| p.to_string()).collect()
}

pub fn braid(model: Model, p: &BraidParams, out: &Path) -> Result<Outcome, CliError> {
    let (basis, a) = protocol(model, &p.charge, &p.favored)?;
    let mut proto = BraidProtocol::new(basis.clone(), a, p.chirality);
    proto.eps_max = p.eps_max;
    proto.floor = p.floor;
    proto.ramp = p.ramp;
    proto.reverse = p.reverse;
    let opts = options(p.rel_tol, p.gap_threshold, p.max_leakage);
    let r = match p.method {
        Method::WilsonLine => lib("params", proto.wilson_line(p.points, &opts))?,
        Method::Evolution => {
            let dt = p.dt.unwrap_or(p.step_time / 1000.0);
            lib("params", proto.evolve(p.step_time, dt, &opts))?
        }
    };
    if p.spectrum_samples > 0 {
        let h = lib("params", proto.driven(p.step_time))?;
        spectrum_table(&h, p.spectrum_samples, &pair_names()).write(out, "spectrum.csv")?;
    }
    let model = basis.model();
    let mut result = holonomy_json(model, &r);
    result["charge"] = json!(model.label_name(basis.charge()));
    result["favored"] = json!(model.label_name(a));
    result["basis"] = json!(basis.states().iter().map(|&s| basis.describe(s)).collect::<Vec<_>>());
    Ok(Outcome::ok(result, holonomy_summary("braid", &r)))
}

pub fn sweep_time(model: Model, p: &SweepParams, out: &Path) -> Result<Outcome, CliError> {
    let (basis, a) = protocol(model, &p.charge, &p.favored)?;
    let mut proto = BraidProtocol::new(basis, a, p.chirality);
    proto.eps_max = p.eps_max;
    proto.floor = p.floor;
    proto.ramp = p.ramp;
    proto.reverse = p.reverse;
    let rows = lib("params", diabatic_error_scan(&proto, &p.step_times, p.dt_ratio))?;

    let mut table = Table::new(["step_time", "dt", "infidelity", "leakage", "global_phase", "min_gap"]);
    for r in &rows {
        table.push(
            [r.step_time, r.dt, r.infidelity, r.leakage, r.global_phase, r.min_gap]
                .iter()
                .map(|v| v.to_string())
                .collect(),
        );
    }
    table.write(out, "sweep.csv")?;

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "step_time": r.step_time,
                "dt": r.dt,
                "infidelity": r.infidelity,
                "leakage": r.leakage,
                "global_phase": r.global_phase,
                "min_gap": r.min_gap,
            })
        })
        .collect();
    let last = rows.last().expect("validated non-empty");
    let summary = format!(
        "sweep-time points={} infidelity={:.3e} leakage={:.3e} at T={}",
        rows.len(),
        last.infidelity,
        last.leakage,
        last.step_time
    );
    Ok(Outcome::ok(json!({ "rows": json_rows }), summary))
}

pub fn chain_scaling(model: Model, p: &ChainScalingParams, out: &Path) -> Result<Outcome, CliError> {
    let t = charge(&model, &p.charge)?;
    let a = favored(&model, &p.favored)?;
    let limits = ChainLimits {
        max_count: p.max_count,
        dim_cap: p.dim_cap,
    };
    let rows = lib("params", splitting_scan(&model, t, a, p.eps_min, p.eps_max, &p.n_values, limits))?;

    let mut table = Table::new(["model", "N", "eps_min", "eps_max", "splitting", "ln_splitting"]);
    for r in &rows {
        table.push(vec![
            model.name().to_string(),
            r.n.to_string(),
            r.eps_min.to_string(),
            r.eps_max.to_string(),
            r.splitting.to_string(),
            r.ln_splitting.to_string(),
        ]);
    }
    let path = table.write(out, "splitting.csv")?;
    let fit = if rows.len() >= 2 {
        Some(fit_slope(&path, "N", "ln_splitting")?)
    } else {
        None
    };

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"N": r.n, "splitting": r.splitting, "ln_splitting": r.ln_splitting}))
        .collect();
    let result = json!({
        "charge": model.label_name(t),
        "favored": model.label_name(a),
        "eps_min": p.eps_min,
        "eps_max": p.eps_max,
        "rows": json_rows,
        "fit": fit.map(|f| json!({"slope": f.slope, "intercept": f.intercept, "r_squared": f.r_squared})),
    });
    let summary = match fit {
        Some(f) => format!("chain-scaling slope={:.4} intercept={:.4} r2={:.6}", f.slope, f.intercept, f.r_squared),
        None => format!("chain-scaling ln_splitting={:.4}", rows[0].ln_splitting),
    };
    Ok(Outcome::ok(result, summary))
}

pub fn chain_braid(model: Model, p: &ChainBraidParams, out: &Path) -> Result<Outcome, CliError> {
    let t = charge(&model, &p.charge)?;
    let a = favored(&model, &p.favored)?;
    let layout = JunctionChainLayout::new(p.arms[0], p.arms[1], p.arms[2]);
    let limits = ChainLimits {
        max_count: p.max_count,
        dim_cap: p.dim_cap,
    };
    let system = lib("params", ChainSystem::new(model, t, layout, a, p.chirality, limits))?;
    let target = lib("params", system.end_charge_target())?;
    let method = match p.method {
        Method::WilsonLine => BraidMethod::WilsonLine {
            points_per_move: p.points_per_move,
        },
        Method::Evolution => BraidMethod::TimeEvolution {
            dt: p.dt.unwrap_or(p.move_time / 1000.0),
        },
    };
    let params = DomainWallParams {
        move_time: p.move_time,
        eps_max: p.eps_max,
        floor: p.floor,
        ramp: p.ramp,
        method,
    };
    let opts = options(p.rel_tol, p.gap_threshold, p.max_leakage);
    let r = lib("params", system.domain_wall_braid(&params, &target, &opts))?;

    let layout = system.layout();
    if p.spectrum_samples > 0 {
        let h = lib("params", system.driven(p.move_time, p.eps_max, p.floor, p.ramp))?;
        let bonds: Vec<String> = layout
            .bonds()
            .iter()
            .map(|b| format!("{}-{}", b.sites.0, b.sites.1))
            .collect();
        spectrum_table(&h, p.spectrum_samples, &bonds).write(out, "spectrum.csv")?;
    }
    let model = system.basis().model();
    let mut result = holonomy_json(model, &r);
    result["charge"] = json!(model.label_name(t));
    result["favored"] = json!(model.label_name(a));
    result["arms"] = json!(p.arms);
    result["anyons"] = json!(layout.count());
    result["dim"] = json!(system.basis().dim());
    result["sites"] = json!(layout.sites().iter().map(|s| s.to_string()).collect::<Vec<_>>());
    result["moves"] = json!(layout.moves().len());
    Ok(Outcome::ok(result, holonomy_summary("chain-braid", &r)))
}
