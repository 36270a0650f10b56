use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use yr_core::classify::{
    classify_finite_dim, drinfeld_solve, symmetric_factor_check, symmetric_from_factor, verma_exists,
    VermaViolation, DEFAULT_MAX_DEG,
};
use yr_core::reflection::{
    coideal_check, embed_b, reflection_residual, sdet_identity_check, sklyanin_det, twisted_map_check,
    unitarity_residual, Signature, TwistSign,
};
use yr_core::repr::{
    b_tensor_module, evaluation_highest_weight, evaluation_module, highest_vector, one_dim_b_module, predicted_mu,
    restrict_to_b, tensor_module, unitarity_defect, weight_on, FiniteModule, HighestWeight,
};
use yr_core::yangian::{qdet, qdet_centrality, qdet_via_antisymmetrizer, rtt_residual};
use yr_core::{Polynomial, Rational, RationalFunction};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: yr_core::Error) -> String {
    e.to_string()
}

fn sig(n: usize, l: usize) -> Signature {
    Signature::new(n, l).expect("admissible signature")
}

fn rtt() -> Outcome {
    for n in [2, 3] {
        let r = rtt_residual(n, 5).map_err(err)?;
        ensure(r.is_zero(), || format!("n={n}: {} nonzero coefficients", r.nonzero.len()))?;
    }
    Ok("n=2,3 at D=5".into())
}

fn quantum_determinant() -> Outcome {
    let q = qdet(2, 5).map_err(err)?;
    ensure(q == qdet_via_antisymmetrizer(2, 5).map_err(err)?, || "n=2 routes differ".into())?;
    let mut checked = 0;
    for n in [2, 3] {
        for (m, rep) in qdet_centrality(n, 6).map_err(err)? {
            checked += rep.checked;
            ensure(rep.is_central(), || format!("n={n}: d_{m} fails {} commutators", rep.failures.len()))?;
        }
    }
    Ok(format!("routes agree at D=5; {checked} commutators vanish"))
}

const SIGS: [(usize, usize); 4] = [(2, 0), (2, 1), (3, 0), (3, 1)];

fn embedding() -> Outcome {
    for (n, l) in SIGS {
        let eb = embed_b(sig(n, l), 4).map_err(err)?;
        let r = reflection_residual(&eb).map_err(err)?;
        ensure(r.is_zero(), || format!("({n},{l}): reflection residual nonzero"))?;
        ensure(unitarity_residual(&eb).map_err(err)?.is_zero(), || format!("({n},{l}): unitarity residual nonzero"))?;
    }
    Ok("(2,0),(2,1),(3,0),(3,1) at D=4".into())
}

fn sklyanin() -> Outcome {
    for (n, l) in SIGS {
        let order = if n == 2 { 5 } else { 4 };
        let s = sig(n, l);
        let eb = embed_b(s, order).map_err(err)?;
        let rep = sdet_identity_check(s, &sklyanin_det(&eb.b).map_err(err)?).map_err(err)?;
        ensure(rep.passed(), || format!("({n},{l}) D={order}: {rep:?}"))?;
    }
    Ok("identity, constant term, c(u)c(-u)=1 for all four signatures".into())
}

fn coideal() -> Outcome {
    for (n, l) in SIGS {
        let eb = embed_b(sig(n, l), 3).map_err(err)?;
        let f = coideal_check(&eb).map_err(err)?;
        ensure(f.is_empty(), || format!("({n},{l}): {} entries differ", f.len()))?;
    }
    Ok("n=2,3, both l, D=3".into())
}

fn twisted() -> Outcome {
    for sign in [TwistSign::Plus, TwistSign::Minus] {
        let eb = embed_b(sig(2, sign.expected_l()), 4).map_err(err)?;
        let rep = twisted_map_check(&eb, sign).map_err(err)?;
        ensure(rep.passed(), || format!("sign {}: relation/proportionality/delta failed", sign.as_char()))?;
    }
    Ok("both signs at D=4".into())
}

fn weight_of(m: &FiniteModule) -> Result<(usize, HighestWeight), String> {
    let hv = highest_vector(m).map_err(err)?;
    match hv.weight {
        Some(w) => Ok((hv.kernel_dim, w)),
        None => {
            let mut e0 = vec![Rational::zero(); m.dim];
            e0[0] = Rational::one();
            Ok((hv.kernel_dim, weight_on(m, &e0).map_err(err)?))
        }
    }
}

struct Built {
    label: String,
    module: FiniteModule,
    lambda: HighestWeight,
}

fn evaluation_family() -> Result<Vec<Built>, String> {
    let q = |a: i64| Rational::from_int(a);
    let mut out = Vec::new();
    for (a, b) in [(1, 0), (2, 0), (2, 1)] {
        let l = evaluation_module(&q(a), &q(b)).map_err(err)?;
        let lam = evaluation_highest_weight(&q(a), &q(b));
        out.push(Built {
            label: format!("L({a},{b})^2"),
            module: tensor_module(&l, &l).map_err(err)?,
            lambda: lam.product(&lam),
        });
        out.push(Built {
            label: format!("L({a},{b})"),
            module: l,
            lambda: lam,
        });
    }
    Ok(out)
}

fn drinfeld_of_lambda(lam: &HighestWeight) -> Result<Polynomial, String> {
    let r = lam.component(0).div(lam.component(1)).map_err(err)?;
    drinfeld_solve(&r, DEFAULT_MAX_DEG).ok_or_else(|| "lambda ratio is not P(u+1)/P(u)".into())
}

fn gamma_factor(g: &Rational) -> RationalFunction {
    RationalFunction::new(
        Polynomial::linear(-Rational::one(), g.clone()),
        Polynomial::linear(Rational::one(), g - &Rational::one()),
    )
    .expect("nonzero")
}

fn pipeline() -> Outcome {
    let s20 = sig(2, 0);
    let s21 = sig(2, 1);
    let two = Rational::from_int(2);
    let mut inadmissible = Vec::new();
    let family = evaluation_family()?;
    for b in &family {
        let m = restrict_to_b(&b.module, s20).map_err(err)?;
        ensure(unitarity_defect(&m).map_err(err)?.is_zero(), || format!("{} on B(2,0): not unitary", b.label))?;
        let (kd, w) = weight_of(&m)?;
        ensure(kd == 1, || format!("{} on B(2,0): highest vector space has dimension {kd}", b.label))?;
        ensure(w == predicted_mu(&b.lambda, s20, None).map_err(err)?, || format!("{}: weight differs", b.label))?;
        let rep = classify_finite_dim(&w, s20, DEFAULT_MAX_DEG).map_err(err)?;
        let data = rep.data.ok_or_else(|| format!("{} on B(2,0): status {:?}", b.label, rep.status))?;
        let p = &data.polys[0];
        ensure(p.reflect(&two) == *p, || format!("{}: P = {p} not symmetric", b.label))?;
        let q = drinfeld_of_lambda(&b.lambda)?;
        ensure(*p == symmetric_from_factor(&q, 1, 2), || format!("{}: P = {p}, Q = {q}", b.label))?;

        for g in [2i64, 3] {
            let gamma = Rational::from_int(g);
            let v = one_dim_b_module(s21, &(&Rational::one() - &gamma)).map_err(err)?;
            let t = b_tensor_module(&b.module, &v).map_err(err)?;
            let tag = format!("{} ⊗ V({})", b.label, 1 - g);
            ensure(unitarity_defect(&t).map_err(err)?.is_zero(), || format!("{tag}: not unitary"))?;
            let (_, w) = weight_of(&t)?;
            ensure(w == predicted_mu(&b.lambda, s21, Some(&gamma)).map_err(err)?, || format!("{tag}: weight differs"))?;
            let rep = classify_finite_dim(&w, s21, DEFAULT_MAX_DEG).map_err(err)?;
            let data = rep.data.ok_or_else(|| format!("{tag}: status {:?} {:?}", rep.status, rep.issues))?;
            let (p, got) = (&data.polys[0], data.gamma.clone().ok_or("no gamma")?);
            ensure(p.reflect(&two) == *p, || format!("{tag}: P = {p} not symmetric"))?;
            ensure(!p.eval(&got).is_zero(), || format!("{tag}: P(gamma) = 0"))?;
            let expected = symmetric_from_factor(&drinfeld_of_lambda(&b.lambda)?, 1, 2);
            if !expected.eval(&gamma).is_zero() {
                ensure(*p == expected && got == gamma, || format!("{tag}: got ({p}, {got}), built ({expected}, {gamma})"))?;
            } else {
                // the constructed pair has P(gamma) = 0; the reported pair must give the same weight
                let tilde = yr_core::classify::mu_tilde(&w, s21).map_err(err)?;
                let ratio = tilde[0].div(&tilde[1]).map_err(err)?;
                let rebuilt = &RationalFunction::new(p.shift(&Rational::one()), p.clone()).map_err(err)? * &gamma_factor(&got);
                ensure(ratio == rebuilt, || format!("{tag}: reported pair does not reproduce the weight"))?;
                inadmissible.push(format!("{tag}->gamma={got}"));
            }
        }
    }
    let note = if inadmissible.is_empty() {
        String::new()
    } else {
        format!("; constructed pair has P(gamma)=0 and was re-expressed for {}", inadmissible.join(", "))
    };
    Ok(format!("{} modules on B(2,0) and {} on B(2,1){note}", family.len(), 2 * family.len()))
}

#[derive(Deserialize)]
struct WeightsFile {
    mu: Vec<RationalFunction>,
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn load(name: &str) -> Result<HighestWeight, String> {
    let raw = std::fs::read_to_string(fixtures().join(name)).map_err(|e| e.to_string())?;
    let w: WeightsFile = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
    Ok(HighestWeight(w.mu))
}

fn verma() -> Outcome {
    let mut count = 0;
    for b in evaluation_family()? {
        for (s, module) in [
            (sig(2, 0), restrict_to_b(&b.module, sig(2, 0)).map_err(err)?),
            (sig(2, 1), restrict_to_b(&b.module, sig(2, 1)).map_err(err)?),
        ] {
            let (_, w) = weight_of(&module)?;
            ensure(verma_exists(&w, s).map_err(err)?.exists, || format!("{} fails on B(2,{})", b.label, s.l()))?;
            count += 1;
        }
    }
    let onedim = weight_of(&one_dim_b_module(sig(2, 1), &Rational::new(-5, 2)).map_err(err)?)?.1;
    ensure(verma_exists(&onedim, sig(2, 1)).map_err(err)?.exists, || "V(-5/2) fails".into())?;
    let bad = [
        ("verma_bad_last.json", sig(2, 0), VermaViolation::LastComponentUnitary),
        ("verma_bad_index1.json", sig(2, 0), VermaViolation::TildeSymmetry { index: 1 }),
        ("verma_bad_index2.json", sig(3, 1), VermaViolation::TildeSymmetry { index: 2 }),
    ];
    for (file, s, expected) in bad {
        let rep = verma_exists(&load(file)?, s).map_err(err)?;
        ensure(rep.violation.as_ref() == Some(&expected), || format!("{file}: got {:?}", rep.violation))?;
    }
    Ok(format!("{} constructed weights pass; 3 perturbed weights fail at the expected condition", count + 1))
}

fn drinfeld_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 0..100 {
        let deg = rng.gen_range(0..=4);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(1);
        let p = Polynomial::from_ints(&c);
        let r = RationalFunction::new(p.shift(&Rational::one()), p.clone()).map_err(err)?;
        ensure(drinfeld_solve(&r, DEFAULT_MAX_DEG).as_ref() == Some(&p), || format!("case {k}: P = {p}"))?;
    }
    for k in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let i = rng.gen_range(1..n);
        let c = Rational::from_int((n - i + 1) as i64);
        let roots: Vec<Rational> = (0..rng.gen_range(0..=3))
            .map(|_| Rational::new(rng.gen_range(-8..=8), rng.gen_range(1..=3)))
            .collect();
        let q = Polynomial::from_roots(&roots);
        let mut all = roots.clone();
        all.extend(roots.iter().map(|a| &c - a));
        let p = Polynomial::from_roots(&all);
        ensure(symmetric_factor_check(&p, &q, i, n), || format!("case {k}: Q = {q}"))?;
    }
    Ok("100 random P recovered; 50 random Q factor checks pass".into())
}

const ARTIFACT_RUNS: [&[&str]; 10] = [
    &["qdet", "--n", "3", "--order", "3"],
    &["sdet", "--n", "3", "--l", "1", "--order", "3"],
    &["theta", "--n", "4", "--l", "2"],
    &["verify", "rtt", "--n", "2", "--order", "3", "--perturb"],
    &["verify", "coideal", "--n", "2", "--l", "1", "--order", "2"],
    &["verify", "twisted", "--n", "2", "--l", "0", "--order", "3"],
    &["verify", "ybe", "--n", "3", "--points", "10"],
    &["module", "restrict", "--eval", "2,1", "--eval", "1,0", "--l", "1", "--gamma", "3"],
    &["classify", "--n", "2", "--l", "1", "--weights", "onedim_gamma3.json"],
    &["verma-check", "--n", "3", "--l", "1", "--weights", "verma_bad_index2.json"],
];

fn artifacts() -> Result<Vec<Vec<u8>>, String> {
    ARTIFACT_RUNS
        .iter()
        .map(|args| {
            let out = Command::new(env!("CARGO_BIN_EXE_yr"))
                .arg("--json")
                .args(*args)
                .current_dir(fixtures())
                .env_remove("YR_ORDER")
                .output()
                .map_err(|e| e.to_string())?;
            ensure(!out.stdout.is_empty(), || format!("{args:?}: empty output"))?;
            Ok(out.stdout)
        })
        .collect()
}

fn determinism() -> Outcome {
    let first = artifacts()?;
    let second = artifacts()?;
    for (k, (a, b)) in first.iter().zip(&second).enumerate() {
        ensure(a == b, || format!("{:?} differs between runs", ARTIFACT_RUNS[k]))?;
    }
    let in_process = || -> Result<String, String> {
        let eb = embed_b(sig(3, 1), 3).map_err(err)?;
        let s = sklyanin_det(&eb.b).map_err(err)?;
        serde_json::to_string(&s).map_err(|e| e.to_string())
    };
    ensure(in_process()? == in_process()?, || "in-process sdet serialization differs".into())?;
    Ok(format!("{} CLI artifacts byte-identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("RTT self-consistency", rtt),
        ("quantum determinant", quantum_determinant),
        ("embedding", embedding),
        ("Sklyanin determinant identity", sklyanin),
        ("coideal property", coideal),
        ("twisted Yangian maps", twisted),
        ("representation pipeline", pipeline),
        ("Verma existence", verma),
        ("Drinfeld solver oracle", drinfeld_oracle),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2} s) {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2} s) {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
