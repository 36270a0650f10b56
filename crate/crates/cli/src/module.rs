use serde_json::{json, Value};
use yr_core::reflection::Signature;
use yr_core::repr::{
    b_tensor_module, cyclic_span, evaluation_highest_weight, evaluation_module, highest_vector, one_dim_b_module,
    predicted_mu, restrict_to_b, tensor_module, unitarity_defect, weight_on, FiniteModule, HighestWeight,
};
use yr_core::Rational;

use crate::commands::signature;
use crate::output::{pass_fail, usage, CliError, Outcome};
use crate::{BuildArgs, ModuleCmd};

fn rational(s: &str) -> Result<Rational, CliError> {
    Ok(s.parse::<Rational>()?)
}

fn eval_pair(s: &str) -> Result<(Rational, Rational), CliError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("expected ALPHA,BETA, got {s:?}")))?;
    Ok((rational(a)?, rational(b)?))
}

fn eval_tensor(evals: &[String]) -> Result<(FiniteModule, HighestWeight), CliError> {
    let mut acc: Option<(FiniteModule, HighestWeight)> = None;
    for s in evals {
        let (a, b) = eval_pair(s)?;
        let m = evaluation_module(&a, &b)?;
        let lam = evaluation_highest_weight(&a, &b);
        acc = Some(match acc {
            None => (m, lam),
            Some((m0, l0)) => (tensor_module(&m0, &m)?, l0.product(&lam)),
        });
    }
    acc.ok_or_else(|| usage("at least one --eval is required"))
}

struct Built {
    module: FiniteModule,
    lambda: HighestWeight,
    sig: Option<Signature>,
    gamma: Option<Rational>,
}

fn build(args: &BuildArgs) -> Result<Built, CliError> {
    let (l_mod, lambda) = eval_tensor(&args.evals)?;
    let Some(l) = args.l else {
        if args.gamma.is_some() {
            return Err(usage("--gamma needs --l"));
        }
        return Ok(Built {
            module: l_mod,
            lambda,
            sig: None,
            gamma: None,
        });
    };
    let sig = Signature::new(2, l)?;
    let gamma = args.gamma.as_deref().map(rational).transpose()?;
    let module = match &gamma {
        None => restrict_to_b(&l_mod, sig)?,
        Some(g) => {
            let v = one_dim_b_module(sig, &(&Rational::from_int(l as i64) - g))?;
            b_tensor_module(&l_mod, &v)?
        }
    };
    Ok(Built {
        module,
        lambda,
        sig: Some(sig),
        gamma,
    })
}

/// Highest vector and its weight; with a degenerate kernel the first basis
/// vector, which is the tensor product of the highest vectors, is used.
fn highest(m: &FiniteModule) -> Result<(usize, Vec<Rational>, HighestWeight), CliError> {
    let rep = highest_vector(m)?;
    match (rep.vector, rep.weight) {
        (Some(v), Some(w)) => Ok((rep.kernel_dim, v, w)),
        _ => {
            let mut e0 = vec![Rational::zero(); m.dim];
            e0[0] = Rational::one();
            let w = weight_on(m, &e0)?;
            Ok((rep.kernel_dim, e0, w))
        }
    }
}

fn render_weight(w: &HighestWeight) -> Vec<String> {
    w.0.iter().map(ToString::to_string).collect()
}

fn weight_text(label: &str, w: &HighestWeight) -> String {
    render_weight(w)
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{label}_{}(u) = {s}", i + 1))
        .collect::<Vec<_>>()
        .join("\n")
}

fn plain(command: &str, m: &FiniteModule) -> Result<Outcome, CliError> {
    let (kernel_dim, v, w) = highest(m)?;
    let text = format!("dim = {}\n{}", m.dim, weight_text("lambda", &w));
    Ok(Outcome::new(
        command,
        true,
        json!({ "dim": m.dim, "kernel_dim": kernel_dim, "vector": v, "mu": w.0, "mu_display": render_weight(&w) }),
        text,
    ))
}

pub fn run(cmd: ModuleCmd) -> Result<Outcome, CliError> {
    match cmd {
        ModuleCmd::Eval { alpha, beta } => {
            let m = evaluation_module(&rational(&alpha)?, &rational(&beta)?)?;
            plain("module eval", &m)
        }
        ModuleCmd::Tensor { evals } => plain("module tensor", &eval_tensor(&evals)?.0),
        ModuleCmd::Hw { build: args } => {
            let b = build(&args)?;
            let mut out = plain("module hw", &b.module)?;
            if let Some(sig) = b.sig {
                out.report["n"] = json!(sig.n());
                out.report["l"] = json!(sig.l());
            }
            Ok(out)
        }
        ModuleCmd::Restrict { build: args } => {
            let b = build(&args)?;
            let sig = b.sig.ok_or_else(|| usage("module restrict needs --l"))?;
            let m = &b.module;
            let unitary = unitarity_defect(m)?.is_zero();
            let (kernel_dim, v, w) = highest(m)?;
            let predicted = predicted_mu(&b.lambda, sig, b.gamma.as_ref())?;
            let matches = predicted == w;
            let (span, _) = cyclic_span(m, &v);
            let passed = unitary && matches;
            let mut fields = json!({
                "n": 2,
                "l": sig.l(),
                "dim": m.dim,
                "unitary": unitary,
                "kernel_dim": kernel_dim,
                "vector": v,
                "mu": w.0,
                "mu_display": render_weight(&w),
                "predicted_mu": predicted.0,
                "matches_prediction": matches,
                "cyclic_span_dim": span,
            });
            if let Some(g) = &b.gamma {
                fields["gamma"] = Value::String(g.to_string());
            }
            let text = format!(
                "dim = {}, unitary: {}, weight matches prediction: {}, cyclic span {span}\n{}",
                m.dim,
                pass_fail(unitary),
                pass_fail(matches),
                weight_text("mu", &w)
            );
            Ok(Outcome::new("module restrict", passed, fields, text))
        }
        ModuleCmd::Onedim { sig, gamma } => {
            let sig = signature(sig)?;
            let m = one_dim_b_module(sig, &rational(&gamma)?)?;
            let w = weight_on(&m, &[Rational::one()])?;
            let text = weight_text("mu", &w);
            Ok(Outcome::new(
                "module onedim",
                true,
                json!({ "n": sig.n(), "l": sig.l(), "gamma": gamma, "dim": 1, "mu": w.0, "mu_display": render_weight(&w) }),
                text,
            ))
        }
    }
}
