use std::path::Path;

use serde::Deserialize;
use serde_json::json;
use yr_core::classify::{classify_finite_dim, verma_exists, ClassifyStatus};
use yr_core::reflection::{embed_b, sdet_identity_check, sklyanin_det, theta as theta_of, Signature};
use yr_core::repr::HighestWeight;
use yr_core::yangian::{qdet as qdet_series, qdet_via_antisymmetrizer};
use yr_core::{NCPolynomial, RationalFunction, TruncatedSeries};

use crate::output::{pass_fail, usage, CliError, Outcome};
use crate::SigArgs;

pub fn signature(sig: SigArgs) -> Result<Signature, CliError> {
    Ok(Signature::new(sig.n, sig.l)?)
}

fn render_series(s: &TruncatedSeries<NCPolynomial>) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| format!("  u^-{m}: {c}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn qdet(n: usize, order: usize) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let q = qdet_series(n, order)?;
    let agrees = qdet_via_antisymmetrizer(n, order)? == q;
    let text = format!(
        "qdet T(u), n = {n}, order {order} (antisymmetrizer cross-check: {})\n{}",
        pass_fail(agrees),
        render_series(&q)
    );
    Ok(Outcome::new(
        "qdet",
        agrees,
        json!({ "n": n, "order": order, "antisymmetrizer_agrees": agrees, "qdet": q }),
        text,
    ))
}

pub fn sdet(sig: SigArgs, order: usize) -> Result<Outcome, CliError> {
    let sig = signature(sig)?;
    let eb = embed_b(sig, order)?;
    let s = sklyanin_det(&eb.b)?;
    let report = sdet_identity_check(sig, &s)?;
    let passed = report.passed();
    let text = format!(
        "sdet B(u), n = {}, l = {}, order {order} (identity with qdet: {})\n{}",
        sig.n(),
        sig.l(),
        pass_fail(passed),
        render_series(&s)
    );
    Ok(Outcome::new(
        "sdet",
        passed,
        json!({ "n": sig.n(), "l": sig.l(), "order": order, "identity": report, "sdet": s }),
        text,
    ))
}

pub fn theta(sig: SigArgs) -> Result<Outcome, CliError> {
    let sig = signature(sig)?;
    let th = theta_of(sig);
    let text = format!("theta(u) = {th}");
    Ok(Outcome::new(
        "theta",
        true,
        json!({ "n": sig.n(), "l": sig.l(), "theta": th, "display": th.to_string() }),
        text,
    ))
}

#[derive(Deserialize)]
struct WeightsFile {
    mu: Vec<RationalFunction>,
}

pub fn read_weights(path: &Path, n: usize) -> Result<HighestWeight, CliError> {
    let raw = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let w: WeightsFile = serde_json::from_str(&raw).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if w.mu.len() != n {
        return Err(usage(format!("{} holds {} weight components, n = {n}", path.display(), w.mu.len())));
    }
    Ok(HighestWeight(w.mu))
}

fn status_name(s: &ClassifyStatus) -> &'static str {
    match s {
        ClassifyStatus::FiniteDimensional => "finite_dimensional",
        ClassifyStatus::InfiniteDimensional => "infinite_dimensional",
        ClassifyStatus::NoVermaModule => "no_verma_module",
        ClassifyStatus::UndecidedAtBound => "undecided_at_bound",
    }
}

pub fn classify(sig: SigArgs, weights: &Path, max_deg: usize) -> Result<Outcome, CliError> {
    let sig = signature(sig)?;
    let mu = read_weights(weights, sig.n())?;
    let rep = classify_finite_dim(&mu, sig, max_deg)?;
    let mut fields = json!({
        "n": sig.n(),
        "l": sig.l(),
        "max_deg": max_deg,
        "status": status_name(&rep.status),
    });
    let mut text = format!("status: {}", status_name(&rep.status));
    if let Some(data) = &rep.data {
        let polys: Vec<String> = data.polys.iter().map(ToString::to_string).collect();
        fields["polys"] = json!(polys);
        fields["poly_coeffs"] = json!(data.polys);
        for (i, p) in polys.iter().enumerate() {
            text.push_str(&format!("\nP_{}(u) = {p}", i + 1));
        }
        if let Some(g) = &data.gamma {
            fields["gamma"] = json!(g.to_string());
            text.push_str(&format!("\ngamma = {g}"));
        }
    }
    if let Some(v) = &rep.verma.violation {
        fields["violations"] = json!([v]);
    }
    if !rep.issues.is_empty() {
        fields["issues"] = json!(rep.issues);
        for issue in &rep.issues {
            text.push_str(&format!("\nindex {}: {}", issue.index, issue.reason));
        }
    }
    Ok(Outcome::new("classify", true, fields, text))
}

pub fn verma_check(sig: SigArgs, weights: &Path) -> Result<Outcome, CliError> {
    let sig = signature(sig)?;
    let mu = read_weights(weights, sig.n())?;
    let rep = verma_exists(&mu, sig)?;
    let text = match &rep.violation {
        None => "Verma module exists".to_string(),
        Some(v) => format!("no Verma module: {v:?}"),
    };
    Ok(Outcome::new(
        "verma-check",
        rep.exists,
        json!({ "n": sig.n(), "l": sig.l(), "exists": rep.exists, "violation": rep.violation }),
        text,
    ))
}
