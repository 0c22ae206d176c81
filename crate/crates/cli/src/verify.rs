//! Invariant suites behind `verify`.

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tzitzeica::algebra::random::{random_poly, RandomPolyConfig};
use tzitzeica::cohomology::{closed_mod_ideal, phi_tilde, q_classical, translation_gauge};
use tzitzeica::jet::{d_form, d_function, e_minus1, e_minus1bar, SystemParams};
use tzitzeica::killing::{build_connection, component_equations_check, flatness_residual, KillingChain};
use tzitzeica::recursion::{p_step, v5};
use tzitzeica::DiffPoly;

use crate::{load_poly, require_tzitzeica, Failure, Output, Suite};

/// Named residuals; the suite passes iff all are zero.
struct Report {
    title: String,
    checks: Vec<(String, String, bool)>,
}

impl Report {
    fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, residual: impl ToString, ok: bool) {
        self.checks.push((name.into(), residual.to_string(), ok));
    }

    fn finish(self) -> Result<Output, Failure> {
        let passed = self.checks.iter().filter(|c| c.2).count();
        let total = self.checks.len();
        if let Some((name, res, _)) = self.checks.iter().find(|c| !c.2) {
            return Err(Failure::math(format!(
                "{}: {} failed, residual {}",
                self.title, name, res
            )));
        }
        let text = format!("{}: {}/{} residuals zero\nPASS\n", self.title, passed, total);
        let json = json!({
            "suite": self.title,
            "passed": passed,
            "total": total,
            "checks": self.checks.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
        });
        Ok(Output { text, json })
    }
}

fn flatness(params: &SystemParams) -> Result<Output, Failure> {
    require_tzitzeica(params, "flatness")?;
    let conn = build_connection(params)?;
    let mut rep = Report::new("flatness");
    for (k, m) in flatness_residual(params, &conn) {
        for (i, row) in m.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                rep.push(format!("lambda^{} [{},{}]", k, i + 1, j + 1), f, f.is_zero());
            }
        }
    }
    rep.finish()
}

fn killing(params: &SystemParams, seed: &str) -> Result<Output, Failure> {
    require_tzitzeica(params, "the Killing suite")?;
    let a = load_poly(seed)?;
    let chain = KillingChain::from_trace(params, &p_step(params, &a)?)?;
    let mut rep = Report::new(format!("killing (seed {})", seed));
    for (name, r) in component_equations_check(params, &chain) {
        let ok = r.is_zero();
        rep.push(name, r, ok);
    }
    rep.finish()
}

fn closed(params: &SystemParams) -> Result<Output, Failure> {
    require_tzitzeica(params, "the closedness suite")?;
    let u0 = DiffPoly::u(0);
    let p7 = p_step(params, &u0)?.a_next;
    let q = q_classical();
    let mut rep = Report::new("closed");
    for (name, p) in [("u0", &u0), ("v5", &v5()), ("p7", &p7)] {
        for (label, w) in [
            ("phi[q; P]", phi_tilde(params, &q, p)),
            ("phi[P; u0]", phi_tilde(params, p, &u0)),
        ] {
            let r = closed_mod_ideal(params, &w);
            let ok = r.is_zero();
            rep.push(format!("{} with P = {}", label, name), r, ok);
        }
    }
    rep.finish()
}

fn gauge(params: &SystemParams) -> Result<Output, Failure> {
    require_tzitzeica(params, "the gauge suite")?;
    let mut rep = Report::new("gauge");
    for (name, p) in [("u0", DiffPoly::u(0)), ("v5", v5())] {
        let g = translation_gauge(params, &p, 4)?;
        let r = closed_mod_ideal(params, &g.phi_hat);
        let ok = r.is_zero() && !g.phi_hat.has_z();
        rep.push(format!("phi_hat for P = {}", name), r, ok);
    }
    rep.finish()
}

fn commutator(params: &SystemParams, cases: usize, seed: u64) -> Result<Output, Failure> {
    let a = params.alpha();
    let cfg = RandomPolyConfig {
        exps: vec![Rational64::from_integer(0), a / 2, a],
        z_vars: true,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new(format!("commutator and d^2 ({} cases, seed {})", cases, seed));
    for k in 0..cases {
        let x = random_poly(&mut rng, &cfg);
        let c = &e_minus1(params, &e_minus1bar(params, &x)) - &e_minus1bar(params, &e_minus1(params, &x));
        let ok = c.is_zero();
        rep.push(format!("[e-1, e-1bar] case {}", k), c, ok);
        let dd = d_form(params, &d_function(params, &x));
        let ok = dd.is_zero();
        rep.push(format!("d^2 case {}", k), dd, ok);
    }
    rep.finish()
}

pub fn run(params: &SystemParams, what: Suite, seed: &str, cases: usize, rng_seed: u64) -> Result<Output, Failure> {
    match what {
        Suite::Flatness => flatness(params),
        Suite::Killing => killing(params, seed),
        Suite::Closed => closed(params),
        Suite::Gauge => gauge(params),
        Suite::Commutator => commutator(params, cases, rng_seed),
    }
}
