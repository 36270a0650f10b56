use serde_json::{json, Value};
use yr_core::reflection::{
    bump, coideal_check, embed_b, reflection_residual_of, sdet_identity_check, sklyanin_det, twisted_map_check,
    unitarity_residual_of, EmbeddedB, TwistSign,
};
use yr_core::sampling::rational_points;
use yr_core::yangian::{is_central, qdet, rtt_residual_of, t_matrix, ybe_holds_offset};
use yr_core::{Coefficient, GenIndex, MatrixSeries, NCPolynomial, Rational};

use crate::commands::signature;
use crate::output::{pass_fail, usage, CliError, Outcome};
use crate::{Check, SigArgs, SignArg};

/// Adds 1 to the `u^{-2}` coefficient of entry (1,2), or of (1,1) when n = 1.
fn broken(m: &MatrixSeries<NCPolynomial>) -> MatrixSeries<NCPolynomial> {
    let j = usize::from(m.n() > 1);
    bump(m, 0, j, 2, &NCPolynomial::one())
}

fn embedded(sig: SigArgs, order: usize, perturb: bool) -> Result<EmbeddedB, CliError> {
    let mut eb = embed_b(signature(sig)?, order)?;
    if perturb {
        eb.b = broken(&eb.b);
    }
    Ok(eb)
}

fn need_order(order: usize, min: usize, what: &str) -> Result<(), CliError> {
    if order < min {
        return Err(usage(format!("{what} needs order >= {min}")));
    }
    Ok(())
}

pub fn run(
    check: Check,
    sig: SigArgs,
    order: usize,
    sign: Option<SignArg>,
    seed: u64,
    points: usize,
    perturb: bool,
) -> Result<Outcome, CliError> {
    signature(sig)?;
    if perturb {
        need_order(order, 2, "a perturbed check")?;
    }
    let n = sig.n;
    let (name, passed, detail): (&str, bool, Value) = match check {
        Check::Rtt => {
            let mut t = t_matrix(n, order);
            if perturb {
                t = broken(&t);
            }
            let r = rtt_residual_of(&t)?;
            ("rtt", r.is_zero(), json!({ "residual": r }))
        }
        Check::Reflection => {
            let eb = embedded(sig, order, perturb)?;
            let r = reflection_residual_of(&eb.b)?;
            ("reflection", r.is_zero(), json!({ "residual": r }))
        }
        Check::Unitarity => {
            let eb = embedded(sig, order, perturb)?;
            let r = unitarity_residual_of(&eb.b)?;
            ("unitarity", r.is_zero(), json!({ "residual": r }))
        }
        Check::Coideal => {
            let eb = embedded(sig, order, perturb)?;
            let failures = coideal_check(&eb)?;
            ("coideal", failures.is_empty(), json!({ "failures": failures }))
        }
        Check::SdetIdentity => {
            let sg = signature(sig)?;
            let mut eb = embed_b(sg, order)?;
            if perturb {
                eb.b = bump(&eb.b, 0, 0, 1, &NCPolynomial::one());
            }
            let s = sklyanin_det(&eb.b)?;
            let rep = sdet_identity_check(sg, &s)?;
            ("sdet-identity", rep.passed(), json!({ "report": rep }))
        }
        Check::Central => {
            if perturb && n < 2 {
                return Err(usage("a perturbed centrality check needs n >= 2"));
            }
            need_order(order, 2, "the centrality check")?;
            let q = qdet(n, order - 1)?;
            let extra = NCPolynomial::gen(GenIndex::new(1, 2.min(n), 1));
            let mut reports = Vec::new();
            let mut ok = true;
            for m in 1..order {
                let mut d = q.coeff(m).clone();
                if perturb && m == 1 {
                    d = d.add(&extra);
                }
                let rep = is_central(&d, n, order - m);
                ok &= rep.is_central();
                reports.push(json!({ "mode": m, "checked": rep.checked, "failures": rep.failures }));
            }
            ("central", ok, json!({ "max_degree": order, "coefficients": reports }))
        }
        Check::Twisted => {
            if n != 2 {
                return Err(usage("twisted maps are defined for n = 2"));
            }
            let sign = match sign {
                Some(SignArg::Plus) => TwistSign::Plus,
                Some(SignArg::Minus) => TwistSign::Minus,
                None if sig.l == 1 => TwistSign::Plus,
                None => TwistSign::Minus,
            };
            let eb = embedded(sig, order, perturb)?;
            let rep = twisted_map_check(&eb, sign)?;
            ("twisted", rep.passed(), json!({ "report": rep }))
        }
        Check::Ybe => {
            let pts: Vec<[Rational; 3]> = rational_points(seed, points, 3)
                .into_iter()
                .map(|p| [p[0].clone(), p[1].clone(), p[2].clone()])
                .collect();
            let offset = if perturb { Rational::one() } else { Rational::zero() };
            let ok = ybe_holds_offset(n, &pts, &offset);
            ("ybe", ok, json!({ "seed": seed, "points": points }))
        }
    };
    let mut fields = json!({ "check": name, "n": n, "l": sig.l, "order": order, "perturbed": perturb });
    if let (Value::Object(f), Value::Object(d)) = (&mut fields, detail) {
        f.extend(d);
    }
    let text = format!(
        "verify {name} n={n} l={} order={order}{}: {}",
        sig.l,
        if perturb { " (perturbed)" } else { "" },
        pass_fail(passed)
    );
    Ok(Outcome::new("verify", passed, fields, text))
}
