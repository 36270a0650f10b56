//! Finite-dimensional modules with actions by exact rational-function
//! matrices: evaluation and tensor modules of Y(n), one-dimensional
//! B(n,l)-modules, restriction, highest vectors and predicted weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::ratmatrix::RMatrix;
use crate::rational::Rational;
use crate::reflection::Signature;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algebra", rename_all = "lowercase")]
pub enum ModuleKind {
    /// Blocks are the `t_ij(u)`.
    Yangian,
    /// Blocks are the `b_ij(u)` of B(n,l).
    Reflection { l: usize },
}

/// A module of dimension `dim` given by the `n x n` blocks of its generator
/// matrix, each a `dim x dim` matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteModule {
    pub n: usize,
    pub dim: usize,
    pub kind: ModuleKind,
    blocks: Vec<RMatrix>,
}

/// `(lambda_1(u), ..., lambda_n(u))` or `(mu_1(u), ..., mu_n(u))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HighestWeight(pub Vec<RationalFunction>);

impl HighestWeight {
    pub fn trivial(n: usize) -> Self {
        HighestWeight(vec![RationalFunction::one(); n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn component(&self, i: usize) -> &RationalFunction {
        &self.0[i]
    }

    /// Componentwise product, the weight of a tensor product of Y(n)-modules.
    pub fn product(&self, other: &HighestWeight) -> HighestWeight {
        HighestWeight(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

fn linear_over_u(c: &Rational) -> RationalFunction {
    // 1 + c u^{-1} = (u + c) / u
    RationalFunction::new(Polynomial::linear(Rational::one(), c.clone()), Polynomial::u()).expect("nonzero")
}

fn unit(d: usize, i: usize, j: usize, x: RationalFunction) -> RMatrix {
    let mut m = RMatrix::zeros(d, d);
    m.set(i, j, x);
    m
}

impl FiniteModule {
    pub fn new(n: usize, dim: usize, kind: ModuleKind, blocks: Vec<RMatrix>) -> Result<Self> {
        if blocks.len() != n * n || blocks.iter().any(|b| b.rows() != dim || b.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} blocks of size {dim}x{dim}",
                n * n
            )));
        }
        Ok(FiniteModule { n, dim, kind, blocks })
    }

    /// Zero-based block `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> &RMatrix {
        &self.blocks[i * self.n + j]
    }

    pub fn blocks(&self) -> &[RMatrix] {
        &self.blocks
    }

    /// The `n*dim x n*dim` matrix with row index `i*dim + p`.
    pub fn full_matrix(&self) -> RMatrix {
        let d = self.dim;
        RMatrix::from_fn(self.n * d, self.n * d, |r, c| self.block(r / d, c / d).get(r % d, c % d).clone())
    }

    fn from_full(n: usize, dim: usize, kind: ModuleKind, m: &RMatrix) -> Self {
        let blocks = (0..n * n)
            .map(|b| {
                let (i, j) = (b / n, b % n);
                RMatrix::from_fn(dim, dim, |p, q| m.get(i * dim + p, j * dim + q).clone())
            })
            .collect();
        FiniteModule { n, dim, kind, blocks }
    }

    fn require_yangian(&self) -> Result<()> {
        match self.kind {
            ModuleKind::Yangian => Ok(()),
            ModuleKind::Reflection { .. } => Err(Error::WrongModuleKind("expected a Yangian module")),
        }
    }

    fn reflection_l(&self) -> Result<usize> {
        match self.kind {
            ModuleKind::Reflection { l } => Ok(l),
            ModuleKind::Yangian => Err(Error::WrongModuleKind("expected a reflection-algebra module")),
        }
    }
}

/// The one-dimensional trivial Y(n)-module, `t_ij(u) = delta_ij`.
pub fn trivial_module(n: usize) -> FiniteModule {
    let blocks = (0..n * n)
        .map(|b| if b / n == b % n { RMatrix::identity(1) } else { RMatrix::zeros(1, 1) })
        .collect();
    FiniteModule {
        n,
        dim: 1,
        kind: ModuleKind::Yangian,
        blocks,
    }
}

/// `L(alpha, beta)` for Y(2) through `t_ij(u) -> delta_ij + E_ij u^{-1}`, in
/// the weight basis `v_0, ..., v_m` with `E_21 v_k = v_{k+1}` and
/// `E_12 v_k = k(m-k+1) v_{k-1}`.
pub fn evaluation_module(alpha: &Rational, beta: &Rational) -> Result<FiniteModule> {
    let diff = alpha - beta;
    let m = match diff.to_i64() {
        Some(m) if m >= 0 && diff.is_integer() => m as usize,
        _ => return Err(Error::NotDominant(diff.to_string())),
    };
    let d = m + 1;
    let inv_u = RationalFunction::new(Polynomial::one(), Polynomial::u()).expect("nonzero");
    let diag = |weight: &dyn Fn(usize) -> Rational| {
        RMatrix::from_fn(d, d, |p, q| {
            if p == q {
                linear_over_u(&weight(p))
            } else {
                RationalFunction::zero()
            }
        })
    };
    let t11 = diag(&|k| alpha - &Rational::from_int(k as i64));
    let t22 = diag(&|k| beta + &Rational::from_int(k as i64));
    let mut t12 = RMatrix::zeros(d, d);
    let mut t21 = RMatrix::zeros(d, d);
    for k in 0..m {
        t21.set(k + 1, k, inv_u.clone());
        let c = Rational::from_int(((k + 1) * (m - k)) as i64);
        t12.set(k, k + 1, inv_u.scale(&c));
    }
    FiniteModule::new(2, d, ModuleKind::Yangian, vec![t11, t12, t21, t22])
}

/// `C^n` with `t_ij(u) -> delta_ij + e_ij (u + c)^{-1}`; highest weight
/// `((u+c+1)/(u+c), 1, ..., 1)` on `e_1`.
pub fn vector_module(n: usize, c: &Rational) -> FiniteModule {
    let pole = RationalFunction::new(Polynomial::one(), Polynomial::linear(Rational::one(), c.clone())).expect("nonzero");
    let blocks = (0..n * n)
        .map(|b| {
            let (i, j) = (b / n, b % n);
            let mut m = unit(n, i, j, pole.clone());
            if i == j {
                m = m.add(&RMatrix::identity(n));
            }
            m
        })
        .collect();
    FiniteModule {
        n,
        dim: n,
        kind: ModuleKind::Yangian,
        blocks,
    }
}

/// `t_ij(u) -> sum_a t_ia(u) ⊗ t_aj(u)`.
pub fn tensor_module(m1: &FiniteModule, m2: &FiniteModule) -> Result<FiniteModule> {
    m1.require_yangian()?;
    m2.require_yangian()?;
    if m1.n != m2.n {
        return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", m1.n, m2.n)));
    }
    let n = m1.n;
    let d = m1.dim * m2.dim;
    let blocks = (0..n * n)
        .map(|b| {
            let (i, j) = (b / n, b % n);
            (0..n).fold(RMatrix::zeros(d, d), |acc, a| acc.add(&m1.block(i, a).kron(m2.block(a, j))))
        })
        .collect();
    FiniteModule::new(n, d, ModuleKind::Yangian, blocks)
}

/// `V(gamma)`: `b_ij(u) -> delta_ij (u + gamma) / (epsilon_i u - gamma)`.
pub fn one_dim_b_module(sig: Signature, gamma: &Rational) -> Result<FiniteModule> {
    if sig.l() == 0 {
        return Err(Error::OneDimRequiresPositiveL);
    }
    let n = sig.n();
    let blocks = (0..n * n)
        .map(|b| {
            let (i, j) = (b / n, b % n);
            if i != j {
                return RMatrix::zeros(1, 1);
            }
            let eps = Rational::from_int(sig.epsilon(i));
            let x = RationalFunction::new(
                Polynomial::linear(Rational::one(), gamma.clone()),
                Polynomial::linear(eps, -gamma),
            )
            .expect("nonzero");
            RMatrix::from_fn(1, 1, |_, _| x.clone())
        })
        .collect();
    FiniteModule::new(n, 1, ModuleKind::Reflection { l: sig.l() }, blocks)
}

/// Full matrix of `T^{-1}(-u)` on a Yangian module.
fn inverse_at_minus_u(m: &FiniteModule) -> Result<RMatrix> {
    Ok(m.full_matrix().inverse()?.reflect(&Rational::zero()))
}

/// `b_ij(u) = sum_a epsilon_a t_ia(u) t'_aj(-u)` on the same space.
pub fn restrict_to_b(m: &FiniteModule, sig: Signature) -> Result<FiniteModule> {
    m.require_yangian()?;
    if sig.n() != m.n {
        return Err(Error::DimensionMismatch(format!("module has n = {}, signature n = {}", m.n, sig.n())));
    }
    let d = m.dim;
    let g = RMatrix::from_constant(&sig.g()).kron(&RMatrix::identity(d));
    let b = m.full_matrix().mul(&g).mul(&inverse_at_minus_u(m)?);
    Ok(FiniteModule::from_full(m.n, d, ModuleKind::Reflection { l: sig.l() }, &b))
}

/// `b_ij(u) -> sum_{a,c} t_ia(u) t'_cj(-u) ⊗ b_ac(u)` on `L ⊗ V`.
pub fn b_tensor_module(lm: &FiniteModule, v: &FiniteModule) -> Result<FiniteModule> {
    lm.require_yangian()?;
    let l = v.reflection_l()?;
    if lm.n != v.n {
        return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", lm.n, v.n)));
    }
    let n = lm.n;
    let dl = lm.dim;
    let tinv = inverse_at_minus_u(lm)?;
    let tinv_block = |c: usize, j: usize| RMatrix::from_fn(dl, dl, |p, q| tinv.get(c * dl + p, j * dl + q).clone());
    let d = dl * v.dim;
    let blocks = (0..n * n)
        .map(|b| {
            let (i, j) = (b / n, b % n);
            let mut acc = RMatrix::zeros(d, d);
            for a in 0..n {
                for c in 0..n {
                    let bac = v.block(a, c);
                    if bac.is_zero() {
                        continue;
                    }
                    acc = acc.add(&lm.block(i, a).mul(&tinv_block(c, j)).kron(bac));
                }
            }
            acc
        })
        .collect();
    FiniteModule::new(n, d, ModuleKind::Reflection { l }, blocks)
}

/// `B(u) B(-u) - 1` as an exact rational-function matrix.
pub fn unitarity_defect(m: &FiniteModule) -> Result<RMatrix> {
    m.reflection_l()?;
    let b = m.full_matrix();
    Ok(b.mul(&b.reflect(&Rational::zero())).sub(&RMatrix::identity(b.rows())))
}

/// Joint kernel of the upper-triangular generators and, when it is a line,
/// the eigenvalues of the diagonal ones on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HighestVectorReport {
    pub kernel_dim: usize,
    pub vector: Option<Vec<Rational>>,
    pub weight: Option<HighestWeight>,
}

pub fn highest_vector(m: &FiniteModule) -> Result<HighestVectorReport> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..m.n {
        for j in i + 1..m.n {
            for c in m.block(i, j).numerator_coefficients().1 {
                rows.extend((0..c.rows()).map(|r| c.row(r).to_vec()));
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..m.dim)
            .map(|k| (0..m.dim).map(|p| if p == k { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    if kernel.is_empty() {
        return Err(Error::NoHighestVector);
    }
    if kernel.len() > 1 {
        return Ok(HighestVectorReport {
            kernel_dim: kernel.len(),
            vector: None,
            weight: None,
        });
    }
    let mut xi = kernel.into_iter().next().unwrap();
    let lead = xi.iter().find(|x| !x.is_zero()).unwrap().recip()?;
    for x in xi.iter_mut() {
        *x = &*x * &lead;
    }
    let weight = weight_on(m, &xi)?;
    Ok(HighestVectorReport {
        kernel_dim: 1,
        vector: Some(xi),
        weight: Some(weight),
    })
}

/// The eigenvalues of the diagonal blocks on `xi`, after checking that every
/// block above the diagonal annihilates it.
pub fn weight_on(m: &FiniteModule, xi: &[Rational]) -> Result<HighestWeight> {
    if xi.len() != m.dim {
        return Err(Error::DimensionMismatch(format!("vector of length {}, module of dimension {}", xi.len(), m.dim)));
    }
    let p = xi.iter().position(|x| !x.is_zero()).ok_or(Error::NoHighestVector)?;
    let xi_rf: Vec<RationalFunction> = xi.iter().map(|x| RationalFunction::constant(x.clone())).collect();
    for i in 0..m.n {
        for j in i + 1..m.n {
            if m.block(i, j).mul_vec(&xi_rf).iter().any(|y| !y.is_zero()) {
                return Err(Error::NoHighestVector);
            }
        }
    }
    let mut weight = Vec::with_capacity(m.n);
    for i in 0..m.n {
        let image = m.block(i, i).mul_vec(&xi_rf);
        let mu = image[p].scale(&xi[p].recip()?);
        if image.iter().zip(&xi_rf).any(|(y, x)| *y != x * &mu) {
            return Err(Error::NotAnEigenvector(i + 1));
        }
        weight.push(mu);
    }
    Ok(HighestWeight(weight))
}

/// The weight of the B(n,l)-span of `xi ⊗ eta` in `L(lambda) ⊗ V(l - gamma)`,
/// or of the restriction of `L(lambda)` when `gamma` is absent:
/// `mu_n = ±lambda_n(u)/lambda_n(-u)`, then `mu~_i / mu~_{i+1}` from `lambda`
/// and `mu_i` solved downwards from `mu~_i = (2u-n+i) mu_i + mu_{i+1} + ... + mu_n`.
pub fn predicted_mu(lambda: &HighestWeight, sig: Signature, gamma: Option<&Rational>) -> Result<HighestWeight> {
    let n = sig.n();
    if lambda.n() != n {
        return Err(Error::DimensionMismatch(format!("weight has {} components, n = {n}", lambda.n())));
    }
    if sig.l() == 0 && gamma.is_some() {
        return Err(Error::OneDimRequiresPositiveL);
    }
    let zero = Rational::zero();
    let lam = |i: usize| &lambda.0[i];
    let mut mu_n = lam(n - 1).div(&lam(n - 1).reflect(&zero))?;
    if sig.l() > 0 {
        mu_n = -&mu_n;
    }
    let two_u = RationalFunction::from_poly(Polynomial::from_ints(&[0, 2]));
    let mut mu = vec![RationalFunction::zero(); n];
    mu[n - 1] = mu_n;
    let mut tilde_next = &two_u * &mu[n - 1];
    let mut tail = mu[n - 1].clone();
    for i in (0..n - 1).rev() {
        // one-based index i+1, reflection point n - (i+1)
        let c = Rational::from_int((n - i - 1) as i64);
        let mut ratio = (lam(i) * &lam(i + 1).reflect(&c)).div(&(lam(i + 1) * &lam(i).reflect(&c)))?;
        if sig.l() > 0 && i + 1 == sig.k() {
            let l = Rational::from_int(sig.l() as i64);
            let g = gamma.cloned().unwrap_or_else(|| l.clone());
            let factor = RationalFunction::new(
                Polynomial::linear(-Rational::one(), g.clone()),
                Polynomial::linear(Rational::one(), &g - &l),
            )?;
            ratio = &ratio * &factor;
        }
        let tilde = &ratio * &tilde_next;
        let lin = RationalFunction::from_poly(Polynomial::linear(
            Rational::from_int(2),
            Rational::from_int(i as i64 + 1 - n as i64),
        ));
        mu[i] = (&tilde - &tail).div(&lin)?;
        tail = &tail + &mu[i];
        tilde_next = tilde;
    }
    Ok(HighestWeight(mu))
}

/// Eigenvalues of `t'_ii(u)` on the highest vector of `L(lambda)`:
/// `lambda_{i+1}(u+n-i)...lambda_n(u+1) / (lambda_i(u+n-i)...lambda_n(u))`.
pub fn tprime_highest_eigenvalues(lambda: &HighestWeight) -> Result<Vec<RationalFunction>> {
    let n = lambda.n();
    (0..n)
        .map(|i| {
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for j in i..n {
                let at = |s: usize| lambda.0[j].shift(&Rational::from_int(s as i64));
                den = &den * &at(n - 1 - j);
                if j > i {
                    num = &num * &at(n - j);
                }
            }
            num.div(&den)
        })
        .collect()
}

/// The blocks of `T^{-1}(u)` on a Yangian module.
pub fn tprime_action(m: &FiniteModule) -> Result<FiniteModule> {
    m.require_yangian()?;
    let inv = m.full_matrix().inverse()?;
    Ok(FiniteModule::from_full(m.n, m.dim, ModuleKind::Yangian, &inv))
}

/// The Yangian highest weight of `L(alpha, beta)`.
pub fn evaluation_highest_weight(alpha: &Rational, beta: &Rational) -> HighestWeight {
    HighestWeight(vec![linear_over_u(alpha), linear_over_u(beta)])
}

/// Dimension and a basis of the span of `xi` under the numerator coefficient
/// matrices of all generator blocks.
pub fn cyclic_span(m: &FiniteModule, xi: &[Rational]) -> (usize, Vec<Vec<Rational>>) {
    let gens: Vec<QMatrix> = m.blocks.iter().flat_map(|b| b.numerator_coefficients().1).collect();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut frontier = vec![xi.to_vec()];
    while let Some(v) = frontier.pop() {
        let mut candidate = basis.clone();
        candidate.push(v.clone());
        if QMatrix::from_rows(candidate.clone()).rank() <= basis.len() {
            continue;
        }
        basis = candidate;
        for g in &gens {
            frontier.push(g.mul_vec(&v));
        }
    }
    (basis.len(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    #[test]
    fn evaluation_module_shapes() {
        let triv = evaluation_module(&q(0), &q(0)).unwrap();
        assert_eq!(triv.dim, 1);
        assert!(triv.block(0, 1).is_zero());
        assert!(triv.block(0, 0).get(0, 0).is_one());
        let v = evaluation_module(&q(1), &q(0)).unwrap();
        assert_eq!(v.dim, 2);
        assert_eq!(v.block(0, 0).get(0, 0), &linear_over_u(&q(1)));
        assert!(v.block(0, 0).get(1, 1).is_one());
        assert!(matches!(evaluation_module(&q(0), &q(1)), Err(Error::NotDominant(_))));
        assert!(matches!(evaluation_module(&Rational::new(1, 2), &q(0)), Err(Error::NotDominant(_))));
    }

    #[test]
    fn evaluation_highest_weight_on_v0() {
        let (a, b) = (q(2), q(-1));
        let m = evaluation_module(&a, &b).unwrap();
        let rep = highest_vector(&m).unwrap();
        assert_eq!(rep.kernel_dim, 1);
        assert_eq!(rep.weight.unwrap(), evaluation_highest_weight(&a, &b));
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let m = evaluation_module(&q(1), &q(0)).unwrap();
        assert_eq!(tensor_module(&m, &trivial_module(2)).unwrap(), m);
        assert_eq!(tensor_module(&m, &m).unwrap().dim, 4);
    }

    #[test]
    fn one_dim_module_values() {
        let sig = Signature::new(2, 1).unwrap();
        let v = one_dim_b_module(sig, &q(3)).unwrap();
        assert_eq!(v.block(1, 1).get(0, 0), &RationalFunction::from_int(-1));
        assert!(unitarity_defect(&v).unwrap().is_zero());
        let g = one_dim_b_module(sig, &q(0)).unwrap();
        assert!(g.block(0, 0).get(0, 0).is_one());
        assert_eq!(one_dim_b_module(Signature::new(2, 0).unwrap(), &q(1)), Err(Error::OneDimRequiresPositiveL));
    }

    #[test]
    fn restriction_of_trivial_module_is_g() {
        let sig = Signature::new(2, 1).unwrap();
        let b = restrict_to_b(&trivial_module(2), sig).unwrap();
        assert_eq!(b.full_matrix(), RMatrix::from_constant(&sig.g()));
    }

    #[test]
    fn restricted_vector_module_is_unitary_with_predicted_weight() {
        let sig = Signature::new(2, 0).unwrap();
        let l = evaluation_module(&q(1), &q(0)).unwrap();
        let b = restrict_to_b(&l, sig).unwrap();
        assert!(unitarity_defect(&b).unwrap().is_zero());
        let hv = highest_vector(&b).unwrap();
        let lambda = evaluation_highest_weight(&q(1), &q(0));
        assert_eq!(hv.weight.unwrap(), predicted_mu(&lambda, sig, None).unwrap());
        assert_eq!(cyclic_span(&b, &hv.vector.unwrap()).0, 2);
    }

    #[test]
    fn tprime_eigenvalues_match_inverse() {
        let lambda = evaluation_highest_weight(&q(1), &q(0));
        let m = evaluation_module(&q(1), &q(0)).unwrap();
        let inv = tprime_action(&m).unwrap();
        let xi = vec![RationalFunction::one(), RationalFunction::zero()];
        let expected = tprime_highest_eigenvalues(&lambda).unwrap();
        for i in 0..2 {
            let image = inv.block(i, i).mul_vec(&xi);
            assert_eq!(image[0], expected[i]);
            assert!(image[1].is_zero());
        }
        let single = HighestWeight(vec![linear_over_u(&q(2))]);
        assert_eq!(tprime_highest_eigenvalues(&single).unwrap()[0], linear_over_u(&q(2)).invert().unwrap());
    }
}
