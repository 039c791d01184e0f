//! Verification suites: each check records both sides when it fails.

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use qwhit::arith::{rat, PowerSeries, QRatFn, QSeries};
use qwhit::characters::{character_a, character_bruteforce, character_limit, symmetric_power_character};
use qwhit::genus::{
    gamma_q_series, group_law, multiplicative_log, one_minus_exp_neg, q_exponent, rrh_projective, series_reversion,
};
use qwhit::gz::{whittaker_eval, whittaker_recursive};
use qwhit::localization::{
    eigprop_check_with, full_contour_value, gil_pairing, localization_sum_over, specialized_value, ZAssignment,
};
use qwhit::specialized::{
    difference_op_apply, genfun_check, specialized_eval, specialized_via_series, SpecPoint,
};
use qwhit::toda::{gl2_system_holds, verify_eigen_with, HamiltonianSpec, LatticeFn};

use crate::commands::{component_range, eigen_exponent, hamiltonian_perturbation, lattice_window, point_json};
use crate::config::RunConfig;
use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    Gl2,
    Recursion,
    Difference,
    Series,
    Genfun,
    Character,
    Limit,
    Qzero,
    Localization,
    Pairing,
    Eigprop,
    Genus,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value().expect("not skipped").get_name().to_string()
    }
}

struct Check {
    params: Value,
    pass: bool,
    /// Both sides, kept only on failure.
    diff: Option<(String, String)>,
}

impl Check {
    fn compare<T: PartialEq + std::fmt::Display>(params: Value, lhs: &T, rhs: &T) -> Self {
        let pass = lhs == rhs;
        Check {
            params,
            pass,
            diff: (!pass).then(|| (lhs.to_string(), rhs.to_string())),
        }
    }

    fn flag(params: Value, pass: bool) -> Self {
        Check { params, pass, diff: None }
    }
}

fn random(cfg: &RunConfig, seed: u64) -> ZAssignment {
    ZAssignment::random(cfg.ell + 1, seed)
}

fn par_seeds<F>(cfg: &RunConfig, f: F) -> Result<Vec<Check>, CliError>
where
    F: Fn(u64) -> qwhit::Result<Check> + Sync,
{
    let seeds: Vec<u64> = cfg.seeds().collect();
    Ok(seeds.par_iter().map(|&s| f(s)).collect::<qwhit::Result<Vec<_>>>()?)
}

fn checks(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let (ell, n, k, d, qo) = (cfg.ell, cfg.n, cfg.k, cfg.d, cfg.q_order);
    let base = json!({"ell": ell, "n": n, "k": k});
    let out = match suite {
        Suite::Eigen => {
            let window = lattice_window(cfg);
            let psi = LatticeFn::whittaker(ell);
            let mut out = Vec::new();
            for r in 1..=ell + 1 {
                let spec = HamiltonianSpec::new(ell, r)?;
                let rep = verify_eigen_with(&spec, &psi, &window, hamiltonian_perturbation(cfg))?;
                out.extend(rep.checks.iter().map(|c| {
                    Check::compare(json!({"ell": ell, "r": r, "point": point_json(&c.point)}), &c.lhs, &c.rhs)
                }));
            }
            out
        }
        Suite::Gl2 => {
            let mut c = cfg.clone();
            c.ell = 1;
            lattice_window(&c)
                .into_iter()
                .filter(|p| p.len() == 2)
                .map(|p| Check::flag(json!({"point": point_json(&p)}), gl2_system_holds(&p)))
                .collect()
        }
        Suite::Recursion => lattice_window(cfg)
            .par_iter()
            .map(|p| Check::compare(json!({"point": point_json(p)}), &whittaker_recursive(p), &whittaker_eval(p)))
            .collect(),
        Suite::Difference => {
            let p = SpecPoint::new(n, k, ell)?;
            let rhs = specialized_eval(&p).scale(&QRatFn::q_pow(eigen_exponent(cfg, n)));
            vec![Check::compare(base, &difference_op_apply(&p), &rhs)]
        }
        Suite::Series => {
            let p = SpecPoint::new(n, k, ell)?;
            let lhs = specialized_via_series(&p, qo)?.value;
            let rhs = specialized_eval(&p).truncate_q(qo)?;
            vec![Check::compare(json!({"ell": ell, "n": n, "k": k, "q_order": qo}), &lhs, &rhs)]
        }
        Suite::Genfun => {
            vec![Check::flag(json!({"ell": ell, "k": k, "t_order": cfg.t_order}), genfun_check(ell, k, cfg.t_order)?)]
        }
        Suite::Character => {
            let b = character_bruteforce(n, k, ell, d, cfg.budget)?;
            let a = character_a(n, k, ell, d);
            vec![Check::compare(json!({"ell": ell, "n": n, "k": k, "d": d}), &b.character.value, &a.value)]
        }
        Suite::Limit => {
            let lim = character_limit(n, k, ell, qo)?.value;
            let psi = specialized_eval(&SpecPoint::new(n, k, ell)?).truncate_q(qo)?;
            vec![Check::compare(json!({"ell": ell, "n": n, "k": k, "q_order": qo}), &lim, &psi)]
        }
        Suite::Qzero => {
            let a = character_a(n, k, ell, d).value.at_q_zero()?;
            vec![Check::compare(json!({"ell": ell, "n": n, "k": k, "d": d}), &a, &symmetric_power_character(n, k, ell))]
        }
        Suite::Localization => par_seeds(cfg, |seed| {
            let za = random(cfg, seed);
            let lhs = localization_sum_over(n, k, ell, d, &za, component_range(cfg))?;
            let rhs = full_contour_value(n, k, ell, d, &za)?;
            Ok(Check::compare(json!({"ell": ell, "n": n, "k": k, "d": d, "seed": seed}), &lhs, &rhs))
        })?,
        Suite::Pairing => par_seeds(cfg, |seed| {
            let za = random(cfg, seed);
            let lhs = gil_pairing(n, k, ell, &za, qo)?;
            let rhs = specialized_value(n, k, ell, &za, qo)?;
            Ok(Check::compare(json!({"ell": ell, "n": n, "k": k, "q_order": qo, "seed": seed}), &lhs, &rhs))
        })?,
        Suite::Eigprop => par_seeds(cfg, |seed| {
            let za = random(cfg, seed);
            let ok = eigprop_check_with(n, k, ell, &za, qo, eigen_exponent(cfg, n))?;
            Ok(Check::flag(json!({"ell": ell, "n": n, "k": k, "q_order": qo, "seed": seed}), ok))
        })?,
        Suite::Genus => genus_checks(cfg)?,
    };
    Ok(out)
}

fn genus_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let order = cfg.t_order.max(1);
    let mut out = vec![Check::compare(
        json!({"check": "reversion", "order": order}),
        &series_reversion(&multiplicative_log(order), order)?,
        &one_minus_exp_neg(order),
    )];
    let law = group_law(&multiplicative_log(order), order)?;
    let mut expect = vec![(1, 0, rat(1)), (0, 1, rat(1))];
    if order >= 2 {
        expect.push((1, 1, rat(-1)));
    }
    expect.sort();
    let mut got = law.terms();
    got.sort();
    out.push(Check::flag(json!({"check": "group_law", "order": order}), got == expect));
    let prod: PowerSeries<QSeries> = q_exponent(order, cfg.q_order).mul(&gamma_q_series(order, cfg.q_order)?);
    let one = PowerSeries::constant(QSeries::one(cfg.q_order), order);
    out.push(Check::compare(json!({"check": "q_exponent", "x_order": order, "q_order": cfg.q_order}), &prod, &one));
    let (n, k, ell) = (cfg.n, cfg.k, cfg.ell);
    out.extend(par_seeds(cfg, |seed| {
        let za = random(cfg, seed);
        let lhs = rrh_projective(n, k, ell, &za)?;
        let rhs = symmetric_power_character(n, k, ell).specialize(za.values())?;
        Ok(Check::compare(json!({"check": "rrh", "ell": ell, "n": n, "k": k, "seed": seed}), &lhs, &rhs))
    })?);
    Ok(out)
}

pub fn verify(suites: &[Suite], cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["suite", "params", "pass", "lhs", "rhs"]);
    let mut pass = true;
    for &s in suites {
        let cs = checks(s, cfg)?;
        let ok = cs.iter().filter(|c| c.pass).count();
        eprintln!("verify {}: {ok}/{} checks pass", s.name(), cs.len());
        for c in cs {
            pass &= c.pass;
            let (l, r) = match c.diff {
                Some((l, r)) => (Cell::text(l), Cell::text(r)),
                None => (Cell::empty(), Cell::empty()),
            };
            t.push(vec![Cell::text(s.name()), Cell::json(c.params), c.pass.into(), l, r]);
        }
    }
    Ok(Outcome { table: t, pass })
}

pub fn all_suites() -> Vec<Suite> {
    Suite::value_variants().to_vec()
}
