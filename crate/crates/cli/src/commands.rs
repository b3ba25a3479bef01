//! Per-command dispatch: resolve parameters, call the analysis modules,
//! emit CSV.

use crate::channel_file::load_discrete_channel;
use crate::config::RunConfig;
use crate::csv::{fmt_f64, render, Field};
use crate::CliError;
use relay_secrecy::coverkim::{ck_achievable, ck_upper, CoverKimParams};
use relay_secrecy::mcsim::{af_simulate, SimConfig};
use relay_secrecy::model1::{
    model1_region, model1_secrecy_capacity_with_split, GaussianModel1Params,
};
use relay_secrecy::model2::{
    af_optimize, af_rate, b_sweep, cf_optimize, power_sweep, upper_bound, GaussianModel2Params,
};
use relay_secrecy::GridSpec;
use std::path::Path;

const COMMANDS: &[&str] = &[
    "model1-region",
    "model1-capacity",
    "model2-rates",
    "model2-power-sweep",
    "model2-b-sweep",
    "coverkim-curve",
    "discrete-eval",
    "af-sim",
];

type Output = (Vec<(String, String)>, Vec<&'static str>, Vec<Vec<Field>>);

pub fn run(args: &[String]) -> Result<(), CliError> {
    let command = args.first().ok_or_else(|| {
        CliError::Validation(format!(
            "missing command; expected one of: {}",
            COMMANDS.join(", ")
        ))
    })?;
    let cfg = RunConfig::from_args(&args[1..])?;
    let (pairs, header, rows) = dispatch(command, &cfg)?;
    let body = render(&pairs, &header, &rows);
    std::fs::write(&cfg.out, body)
        .map_err(|e| CliError::Validation(format!("cannot write output file {}: {e}", cfg.out)))?;
    Ok(())
}

fn dispatch(command: &str, cfg: &RunConfig) -> Result<Output, CliError> {
    match command {
        "model1-region" => model1_region_cmd(cfg),
        "model1-capacity" => model1_capacity_cmd(cfg),
        "model2-rates" => model2_rates_cmd(cfg),
        "model2-power-sweep" => model2_power_sweep_cmd(cfg),
        "model2-b-sweep" => model2_b_sweep_cmd(cfg),
        "coverkim-curve" => coverkim_curve_cmd(cfg),
        "discrete-eval" => discrete_eval_cmd(cfg),
        "af-sim" => af_sim_cmd(cfg),
        other => Err(CliError::Validation(format!(
            "unknown command: {other}; expected one of: {}",
            COMMANDS.join(", ")
        ))),
    }
}

fn grid_spec(cfg: &RunConfig, default: u32) -> Result<GridSpec, CliError> {
    let res = cfg.grid.unwrap_or(default);
    GridSpec::new(res)
        .map_err(|_| CliError::Validation(format!("invalid value for key grid: `{res}`")))
}

fn pair(key: &str, value: f64) -> (String, String) {
    (key.to_string(), fmt_f64(value))
}

fn pair_u(key: &str, value: u64) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn command_pair(name: &str) -> (String, String) {
    ("command".to_string(), name.to_string())
}

fn model1_params(
    cfg: &RunConfig,
) -> Result<(GaussianModel1Params, Vec<(String, String)>), CliError> {
    cfg.check_keys(&["a", "b", "gamma", "p", "n"])?;
    let a = cfg.require_f64("a")?;
    let b = cfg.require_f64("b")?;
    let gamma = cfg.require_f64("gamma")?;
    let p = cfg.require_f64("p")?;
    let n = cfg.require_f64("n")?;
    let params = GaussianModel1Params::new(a, b, gamma, p, n)?;
    let pairs = vec![
        pair("a", a),
        pair("b", b),
        pair("gamma", gamma),
        pair("p", p),
        pair("n", n),
    ];
    Ok((params, pairs))
}

fn model1_region_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let (params, mut pairs) = model1_params(cfg)?;
    let grid = grid_spec(cfg, 256)?;
    pairs.insert(0, command_pair("model1-region"));
    pairs.push(pair_u("grid", u64::from(grid.resolution())));
    let region = model1_region(&params, grid);
    let rows = region
        .points()
        .iter()
        .map(|rp| {
            vec![
                Field::F(rp.provenance.v()),
                Field::F(rp.provenance.rho()),
                Field::F(rp.point.r1().bits()),
                Field::F(rp.point.re().bits()),
            ]
        })
        .collect();
    Ok((pairs, vec!["v", "rho", "r1", "re"], rows))
}

fn model1_capacity_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let (params, mut pairs) = model1_params(cfg)?;
    let grid = grid_spec(cfg, 256)?;
    pairs.insert(0, command_pair("model1-capacity"));
    pairs.push(pair_u("grid", u64::from(grid.resolution())));
    let (capacity, split) = model1_secrecy_capacity_with_split(&params, grid);
    let rows = vec![vec![
        Field::F(capacity.bits()),
        Field::F(split.v()),
        Field::F(split.rho()),
    ]];
    Ok((pairs, vec!["capacity", "v_star", "rho_star"], rows))
}

fn model2_params(
    cfg: &RunConfig,
) -> Result<(GaussianModel2Params, Vec<(String, String)>), CliError> {
    cfg.check_keys(&["a", "b", "p", "p_r"])?;
    let a = cfg.require_f64("a")?;
    let b = cfg.require_f64("b")?;
    let p = cfg.require_f64("p")?;
    let p_r = cfg.require_f64("p_r")?;
    let params = GaussianModel2Params::new(a, b, p, p_r)?;
    let pairs = vec![pair("a", a), pair("b", b), pair("p", p), pair("p_r", p_r)];
    Ok((params, pairs))
}

fn model2_rates_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let (params, mut pairs) = model2_params(cfg)?;
    let grid = grid_spec(cfg, 1024)?;
    pairs.insert(0, command_pair("model2-rates"));
    pairs.push(pair_u("grid", u64::from(grid.resolution())));
    let (cf_p, cf_re) = cf_optimize(&params, grid)?;
    let (af_p, af_re) = af_optimize(&params, grid)?;
    let rows = vec![vec![
        Field::F(cf_p),
        Field::F(cf_re.bits()),
        Field::F(af_p),
        Field::F(af_re.bits()),
        Field::F(upper_bound(&params).bits()),
    ]];
    Ok((
        pairs,
        vec!["cf_p_star", "cf_re", "af_p_star", "af_re", "upper_bound"],
        rows,
    ))
}

fn model2_power_sweep_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let (params, mut pairs) = model2_params(cfg)?;
    let grid = grid_spec(cfg, 1024)?;
    pairs.insert(0, command_pair("model2-power-sweep"));
    pairs.push(pair_u("grid", u64::from(grid.resolution())));
    let rows = power_sweep(&params, grid)?
        .into_iter()
        .map(|row| {
            vec![
                Field::F(row.p),
                Field::F(row.cf_re.bits()),
                Field::F(row.af_re.bits()),
            ]
        })
        .collect();
    Ok((pairs, vec!["p", "cf_re", "af_re"], rows))
}

fn model2_b_sweep_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_keys(&["a", "p", "p_r", "b_min", "b_max", "b_steps"])?;
    let a = cfg.require_f64("a")?;
    let p = cfg.require_f64("p")?;
    let p_r = cfg.require_f64("p_r")?;
    let b_min = cfg.require_f64("b_min")?;
    let b_max = cfg.require_f64("b_max")?;
    let b_steps = cfg.require_u64("b_steps")?;
    if !(b_min.is_finite() && b_min > 0.0) {
        return Err(CliError::Validation(format!(
            "invalid value for key b_min: `{b_min}` (must be positive)"
        )));
    }
    if b_max <= b_min {
        return Err(CliError::Validation(format!(
            "invalid value for key b_max: `{b_max}` (must exceed b_min)"
        )));
    }
    if !(2..=1_000_000).contains(&b_steps) {
        return Err(CliError::Validation(format!(
            "invalid value for key b_steps: `{b_steps}`"
        )));
    }
    let grid = grid_spec(cfg, 1024)?;

    // geometric spacing with exact endpoints
    let ratio = (b_max / b_min).powf(1.0 / (b_steps - 1) as f64);
    let b_values: Vec<f64> = (0..b_steps)
        .map(|i| {
            if i == 0 {
                b_min
            } else if i == b_steps - 1 {
                b_max
            } else {
                b_min * ratio.powi(i as i32)
            }
        })
        .collect();

    let pairs = vec![
        command_pair("model2-b-sweep"),
        pair("a", a),
        pair("p", p),
        pair("p_r", p_r),
        pair("b_min", b_min),
        pair("b_max", b_max),
        pair_u("b_steps", b_steps),
        pair_u("grid", u64::from(grid.resolution())),
    ];

    let rows = b_sweep(a, p, p_r, &b_values, grid)?
        .into_iter()
        .map(|row| {
            vec![
                Field::F(row.b),
                Field::F(row.cf_re_star.bits()),
                Field::F(row.af_re_star.bits()),
                Field::F(row.upper_bound.bits()),
            ]
        })
        .collect();
    Ok((pairs, vec!["b", "cf_re", "af_re", "upper_bound"], rows))
}

fn coverkim_curve_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_keys(&["r0", "p", "alpha_min", "alpha_max", "alpha_step"])?;
    let r0 = cfg.require_f64("r0")?;
    let p = cfg.require_f64("p")?;
    let alpha_min = cfg.require_f64("alpha_min")?;
    let alpha_max = cfg.require_f64("alpha_max")?;
    let alpha_step = cfg.require_f64("alpha_step")?;
    if !(alpha_step.is_finite() && alpha_step > 0.0) {
        return Err(CliError::Validation(format!(
            "invalid value for key alpha_step: `{alpha_step}`"
        )));
    }
    if alpha_min < 0.0 || alpha_max < alpha_min {
        return Err(CliError::Validation(format!(
            "invalid value for key alpha_max: `{alpha_max}` (range [{alpha_min}, {alpha_max}] is empty or negative)"
        )));
    }
    let steps = ((alpha_max - alpha_min) / alpha_step + 1e-9).floor();
    if steps > 10_000_000.0 {
        return Err(CliError::Validation(
            "alpha grid too fine: more than 1e7 rows".into(),
        ));
    }

    let pairs = vec![
        command_pair("coverkim-curve"),
        pair("r0", r0),
        pair("p", p),
        pair("alpha_min", alpha_min),
        pair("alpha_max", alpha_max),
        pair("alpha_step", alpha_step),
    ];

    let mut rows = Vec::with_capacity(steps as usize + 1);
    for i in 0..=(steps as u64) {
        let alpha = alpha_min + i as f64 * alpha_step;
        let params = CoverKimParams::new(alpha, p, r0)?;
        rows.push(vec![
            Field::F(alpha),
            Field::F(ck_achievable(&params).bits()),
            Field::F(ck_upper(&params).bits()),
        ]);
    }
    Ok((pairs, vec!["alpha", "achievable", "upper"], rows))
}

fn discrete_eval_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_keys(&["yhat"])?;
    let channel_path = cfg
        .channel
        .as_ref()
        .ok_or_else(|| CliError::Validation("missing key: channel".into()))?;
    let channel = load_discrete_channel(Path::new(channel_path))?;
    let yhat = match cfg.optional_u64("yhat")? {
        Some(v) if (1..=8).contains(&v) => v as usize,
        Some(v) => {
            return Err(CliError::Validation(format!(
                "invalid value for key yhat: `{v}`"
            )))
        }
        None => channel.nyr() + 1,
    };
    let grid = grid_spec(cfg, 4)?;

    let pairs = vec![
        command_pair("discrete-eval"),
        ("channel".to_string(), channel_path.clone()),
        pair_u("yhat", yhat as u64),
        pair_u("grid", u64::from(grid.resolution())),
    ];

    let region = relay_secrecy::discrete::thm1_search(&channel, grid, yhat)?;
    let rows = region
        .points()
        .iter()
        .map(|rp| {
            vec![
                Field::F(rp.point.r1().bits()),
                Field::F(rp.point.re().bits()),
                Field::U(1),
                Field::U(rp.provenance),
            ]
        })
        .collect();
    Ok((
        pairs,
        vec!["r1", "re", "feasible", "provenance_index"],
        rows,
    ))
}

fn af_sim_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_keys(&["a", "b", "p", "p_r", "n_samples"])?;
    let a = cfg.require_f64("a")?;
    let b = cfg.require_f64("b")?;
    let p = cfg.require_f64("p")?;
    let p_r = cfg.require_f64("p_r")?;
    let n_samples = cfg.require_u64("n_samples")?;
    let seed = cfg.seed.unwrap_or(0);

    let params = GaussianModel2Params::new(a, b, p, p_r)?;
    let sim = SimConfig::new(params, p, n_samples, seed)?;
    let report = af_simulate(&sim)?;
    let formula = af_rate(&params, p)?;

    let pairs = vec![
        command_pair("af-sim"),
        pair("a", a),
        pair("b", b),
        pair("p", p),
        pair("p_r", p_r),
        pair_u("n_samples", n_samples),
        pair_u("seed", seed),
    ];
    let rows = vec![vec![
        Field::F(report.xi_hat),
        Field::F(formula.xi),
        Field::F(report.relay_power_hat),
        Field::F(report.re_hat.bits()),
        Field::F(formula.re_bound.bits()),
        Field::U(report.n_samples),
        Field::U(report.seed),
    ]];
    Ok((
        pairs,
        vec![
            "xi_hat",
            "xi_formula",
            "relay_power_hat",
            "re_hat",
            "re_formula",
            "n_samples",
            "seed",
        ],
        rows,
    ))
}
