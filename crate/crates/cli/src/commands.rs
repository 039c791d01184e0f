//! Value-producing subcommands.

use rayon::prelude::*;
use serde_json::{json, Value};

use qwhit::arith::{rat_to_json, BigRat, QSeries};
use qwhit::characters::{character_a, character_bruteforce, character_limit};
use qwhit::genus::{
    additive_log, genus_of_projective_space, group_law, multiplicative_log, q_exponent, series_reversion,
};
use qwhit::gz::{dominant_window, whittaker_eval, LatticePoint};
use qwhit::localization::{
    eigprop_check_with, full_contour_value, gil_pairing, jfunction, localization_sum_over, specialized_value,
    ZAssignment,
};
use qwhit::specialized::{difference_equation_holds_with, specialized_eval, specialized_via_series, SpecPoint};
use qwhit::toda::{verify_eigen_with, HamiltonianSpec, LatticeFn, Perturbation};

use crate::config::{Perturb, RunConfig};
use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

pub fn point_json(p: &LatticePoint) -> Value {
    json!(p.coords())
}

pub fn z_cell(za: &ZAssignment) -> Cell {
    let text: Vec<String> = za.values().iter().map(BigRat::to_string).collect();
    Cell::pair(
        Value::Array(za.values().iter().map(rat_to_json).collect()),
        format!("[{}]", text.join(", ")),
    )
}

pub fn hamiltonian_perturbation(cfg: &RunConfig) -> Perturbation {
    match cfg.perturb {
        Some(Perturb::DropFirstFactor) => Perturbation::DropFirstFactor,
        _ => Perturbation::None,
    }
}

pub fn eigen_exponent(cfg: &RunConfig, n: i64) -> i64 {
    match cfg.perturb {
        Some(Perturb::WrongEigenvalue) => n + 1,
        _ => n,
    }
}

pub fn component_range(cfg: &RunConfig) -> std::ops::Range<usize> {
    match cfg.perturb {
        Some(Perturb::OffByOne) => 0..cfg.d,
        _ => 0..cfg.d + 1,
    }
}

/// Values of `n` to sweep: the window when one was given, else `--n`.
fn n_values(cfg: &RunConfig) -> Vec<i64> {
    if cfg.window_given {
        cfg.window.range().collect()
    } else {
        vec![cfg.n]
    }
}

pub fn lattice_window(cfg: &RunConfig) -> Vec<LatticePoint> {
    match &cfg.point {
        Some(p) => vec![LatticePoint::new(p.clone())],
        None => dominant_window(cfg.ell + 1, cfg.window.lo, cfg.window.hi),
    }
}

pub fn whittaker(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let points = lattice_window(cfg);
    if points.iter().any(|p| p.is_empty()) {
        return Err(CliError::Usage("--point needs at least one coordinate".into()));
    }
    let values: Vec<_> = points.par_iter().map(whittaker_eval).collect();
    let mut t = Table::new(&["point", "value"]);
    for (p, v) in points.iter().zip(&values) {
        t.push(vec![Cell::pair(point_json(p), p.to_string()), Cell::value(v)]);
    }
    Ok(Outcome::pass(t))
}

/// `H_r Ψ` against `e_r(z) Ψ` on the window, every `r` unless one is given.
pub fn toda(cfg: &RunConfig, r: Option<usize>) -> Result<Outcome, CliError> {
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..=cfg.ell + 1).collect(),
    };
    let window = lattice_window(cfg);
    let psi = LatticeFn::whittaker(cfg.ell);
    let mut t = Table::new(&["point", "r", "lhs", "rhs", "equal"]);
    let mut pass = true;
    for r in rs {
        let spec = HamiltonianSpec::new(cfg.ell, r)?;
        let rep = verify_eigen_with(&spec, &psi, &window, hamiltonian_perturbation(cfg))?;
        pass &= rep.pass();
        for c in rep.checks {
            t.push(vec![
                Cell::pair(point_json(&c.point), c.point.to_string()),
                c.r.into(),
                Cell::value(&c.lhs),
                Cell::value(&c.rhs),
                c.equal.into(),
            ]);
        }
    }
    Ok(Outcome { table: t, pass })
}

/// `Ψ(n,k)` with its difference equation and series form checked.
pub fn spec(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["n", "k", "value", "difference_equation", "series_mod_q", "series_agrees"]);
    let mut pass = true;
    for n in n_values(cfg) {
        let p = SpecPoint::new(n, cfg.k, cfg.ell)?;
        let value = specialized_eval(&p);
        let diff = difference_equation_holds_with(&p, eigen_exponent(cfg, n));
        let series = specialized_via_series(&p, cfg.q_order)?;
        let agrees = series.agrees_with(&value)?;
        pass &= diff && agrees;
        t.push(vec![
            n.into(),
            cfg.k.into(),
            Cell::value(&value),
            diff.into(),
            Cell::value(&series.value),
            agrees.into(),
        ]);
    }
    Ok(Outcome { table: t, pass })
}

pub struct CharMode {
    pub limit: bool,
    pub at_q_zero: bool,
    pub oracle: bool,
}

/// `A^{(d)}_{n,k}`, its `q = 0` value, its stable limit, or the brute-force
/// enumeration with monomial count.
pub fn character(cfg: &RunConfig, mode: &CharMode) -> Result<Outcome, CliError> {
    let mut pass = true;
    if mode.limit {
        let mut t = Table::new(&["n", "k", "q_order", "value", "matches_psi"]);
        for n in n_values(cfg) {
            let lim = character_limit(n, cfg.k, cfg.ell, cfg.q_order)?;
            let ok = lim.agrees_with(&specialized_eval(&SpecPoint::new(n, cfg.k, cfg.ell)?))?;
            pass &= ok;
            t.push(vec![n.into(), cfg.k.into(), cfg.q_order.into(), Cell::value(&lim.value), ok.into()]);
        }
        return Ok(Outcome { table: t, pass });
    }
    if mode.oracle {
        let mut t = Table::new(&["d", "n", "k", "value", "monomials", "matches_closed_form"]);
        for n in n_values(cfg) {
            let b = character_bruteforce(n, cfg.k, cfg.ell, cfg.d, cfg.budget)?;
            let ok = b.character == character_a(n, cfg.k, cfg.ell, cfg.d);
            pass &= ok;
            t.push(vec![
                cfg.d.into(),
                n.into(),
                cfg.k.into(),
                Cell::value(&b.character.value),
                Cell::text(b.monomials.to_string()),
                ok.into(),
            ]);
        }
        return Ok(Outcome { table: t, pass });
    }
    let mut t = Table::new(&["d", "n", "k", "value"]);
    for n in n_values(cfg) {
        let a = character_a(n, cfg.k, cfg.ell, cfg.d);
        let v = if mode.at_q_zero { a.value.at_q_zero()? } else { a.value };
        t.push(vec![cfg.d.into(), n.into(), cfg.k.into(), Cell::value(&v)]);
    }
    Ok(Outcome { table: t, pass })
}

/// Fixed-point sum against the full contour value, one row per seed.
pub fn localize(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let seeds: Vec<u64> = cfg.seeds().collect();
    let rows = seeds
        .par_iter()
        .map(|&seed| {
            let za = ZAssignment::random(cfg.ell + 1, seed);
            let lhs = localization_sum_over(cfg.n, cfg.k, cfg.ell, cfg.d, &za, component_range(cfg))?;
            let rhs = full_contour_value(cfg.n, cfg.k, cfg.ell, cfg.d, &za)?;
            Ok((seed, za, lhs, rhs))
        })
        .collect::<Result<Vec<_>, qwhit::Error>>()?;
    let mut t = Table::new(&["seed", "z", "localization_sum", "full_contour", "equal"]);
    let mut pass = true;
    for (seed, za, lhs, rhs) in rows {
        let eq = lhs == rhs;
        pass &= eq;
        t.push(vec![seed.into(), z_cell(&za), Cell::value(&lhs), Cell::value(&rhs), eq.into()]);
    }
    Ok(Outcome { table: t, pass })
}

/// Components of `I_{n,k}` at the fixed points, the pairing, and `Ψ`.
pub fn jfunction_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["seed", "item", "value"]);
    let mut pass = true;
    for seed in cfg.seeds() {
        let za = ZAssignment::random(cfg.ell + 1, seed);
        let kv = jfunction(cfg.n, cfg.k, cfg.ell, &za, cfg.q_order)?;
        t.push(vec![seed.into(), Cell::text("z"), z_cell(&za)]);
        for (j, c) in kv.components.iter().enumerate() {
            t.push(vec![seed.into(), Cell::text(format!("I@1/z{}", j + 1)), Cell::value(c)]);
        }
        let pairing: QSeries = gil_pairing(cfg.n, cfg.k, cfg.ell, &za, cfg.q_order)?;
        let psi = specialized_value(cfg.n, cfg.k, cfg.ell, &za, cfg.q_order)?;
        let eig = eigprop_check_with(cfg.n, cfg.k, cfg.ell, &za, cfg.q_order, eigen_exponent(cfg, cfg.n))?;
        pass &= pairing == psi && eig;
        t.push(vec![seed.into(), Cell::text("pairing"), Cell::value(&pairing)]);
        t.push(vec![seed.into(), Cell::text("psi"), Cell::value(&psi)]);
        t.push(vec![seed.into(), Cell::text("pairing_equals_psi"), (pairing == psi).into()]);
        t.push(vec![seed.into(), Cell::text("eigenproperty"), eig.into()]);
    }
    Ok(Outcome { table: t, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum LogKind {
    Additive,
    Multiplicative,
}

/// Logarithm, exponential, group law and `φ(Pⁿ)` of a genus, plus the
/// q-deformed exponent.
pub fn genus(cfg: &RunConfig, kind: LogKind) -> Result<Outcome, CliError> {
    let order = cfg.t_order.max(1);
    let log = match kind {
        LogKind::Additive => additive_log(order),
        LogKind::Multiplicative => multiplicative_log(order),
    };
    let mut t = Table::new(&["item", "value"]);
    t.push(vec![Cell::text("log"), Cell::text(log.to_string())]);
    t.push(vec![Cell::text("exp"), Cell::text(series_reversion(&log, order)?.to_string())]);
    t.push(vec![Cell::text("group_law"), Cell::text(group_law(&log, order)?.to_string())]);
    for n in 0..order {
        let g = genus_of_projective_space(&log, n)?;
        t.push(vec![Cell::text(format!("genus(P^{n})")), Cell::pair(rat_to_json(&g), g.to_string())]);
    }
    t.push(vec![
        Cell::text("q_exponent"),
        Cell::text(q_exponent(order, cfg.q_order).to_string()),
    ]);
    Ok(Outcome::pass(t))
}
