//! Linearized polynomials Σ c_i X^{q^i} over F_{q^n}, subspace polynomials and
//! reduction onto the step-s transversal {Σ_{j<m} a_j X^{q^{sj}}}.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gcd, Basis, Fe, FieldRef};
use crate::linalg::Matrix;

/// Σ c_i X^{q^i}, i < n, i.e. reduced modulo X^{q^n} − X.
#[derive(Clone)]
pub struct LinearizedPoly {
    field: FieldRef,
    coeffs: Vec<Fe>,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for LinearizedPoly {}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LinearizedPoly").field(&self.coeffs).finish()
    }
}

impl LinearizedPoly {
    /// Coefficients of any length; index i is folded to i mod n.
    pub fn new(field: &FieldRef, coeffs: Vec<Fe>) -> Self {
        let n = field.n() as usize;
        let mut folded = vec![Fe::ZERO; n];
        for (i, c) in coeffs.into_iter().enumerate() {
            folded[i % n] = field.add(folded[i % n], c);
        }
        LinearizedPoly {
            field: field.clone(),
            coeffs: folded,
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        LinearizedPoly::new(field, vec![])
    }

    /// The identity map X.
    pub fn identity(field: &FieldRef) -> Self {
        LinearizedPoly::monomial(field, Fe::ONE, 0)
    }

    /// c·X^{q^i}, exponent taken mod n.
    pub fn monomial(field: &FieldRef, c: Fe, i: i64) -> Self {
        let n = field.n() as i64;
        let mut coeffs = vec![Fe::ZERO; n as usize];
        coeffs[i.rem_euclid(n) as usize] = c;
        LinearizedPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Σ a_j X^{q^{sj}}.
    pub fn from_transversal(field: &FieldRef, coeffs: &[Fe], s: i64) -> Self {
        coeffs
            .iter()
            .enumerate()
            .fold(LinearizedPoly::zero(field), |acc, (j, &a)| {
                acc.add(&LinearizedPoly::monomial(field, a, s * j as i64))
            })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Fe::ZERO, |acc, (i, &c)| {
                f.add(acc, f.mul(c, f.frobenius(x, i as i64)))
            })
    }

    pub fn add(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly {
            field: f.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearizedPoly) -> LinearizedPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearizedPoly {
        LinearizedPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        }
    }

    /// c · f (multiplication of values by c).
    pub fn scale(&self, c: Fe) -> LinearizedPoly {
        LinearizedPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect(),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        if !self.field.same_as(&other.field) {
            return Err(Error::SpecMismatch);
        }
        let f = &self.field;
        let n = f.n() as usize;
        let mut h = vec![Fe::ZERO; n];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in other.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                h[k] = f.add(h[k], f.mul(fi, f.frobenius(gj, i as i64)));
            }
        }
        Ok(LinearizedPoly {
            field: f.clone(),
            coeffs: h,
        })
    }

    /// The unique linearized polynomial taking `images[j]` at `basis[j]`.
    pub fn from_images(basis: &Basis, images: &[Fe]) -> LinearizedPoly {
        let field = basis.field();
        let full = SubspaceSpec::new(field, basis.elements().to_vec(), 1)
            .expect("a basis is independent");
        LinearizedPoly {
            field: field.clone(),
            coeffs: full.solve_transversal(images),
        }
    }

    /// Matrix Y with row j = v(f(β_j)), so that C·Y applies f to the rows of C.
    pub fn to_matrix(&self, basis: &Basis) -> Matrix {
        let rows: Vec<Vec<u32>> = basis
            .elements()
            .iter()
            .map(|&b| basis.coords(self.eval(b)))
            .collect();
        Matrix::from_rows(&rows)
    }

    /// Inverse of [`LinearizedPoly::to_matrix`].
    pub fn from_matrix(basis: &Basis, y: &Matrix) -> LinearizedPoly {
        let images: Vec<Fe> = (0..y.rows()).map(|j| basis.combine(y.row(j))).collect();
        LinearizedPoly::from_images(basis, &images)
    }

    /// Coefficients folded modulo X^{q^l} − X (l | n).
    pub fn fold_mod_subfield(&self, l: u32) -> Vec<Fe> {
        let l = l as usize;
        let mut out = vec![Fe::ZERO; l];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % l] = self.field.add(out[i % l], c);
        }
        out
    }
}

pub fn lp_eval(f: &LinearizedPoly, x: Fe) -> Fe {
    f.eval(x)
}

pub fn lp_compose(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<LinearizedPoly> {
    f.compose(g)
}

/// Inverts a square matrix over F_{q^n} by Gauss–Jordan.
pub(crate) fn invert_fe(field: &FieldRef, m: &[Vec<Fe>]) -> Option<Vec<Vec<Fe>>> {
    let n = m.len();
    let mut a: Vec<Vec<Fe>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, pr);
        let inv = field.inv(a[c][c])?;
        for x in a[c].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c];
            for j in 0..2 * n {
                let v = field.mul(f, a[c][j]);
                a[i][j] = field.sub(a[i][j], v);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// An ordered F_q-independent set S = (α_1, …, α_m) with its subspace
/// polynomial θ_S and the cached inverse Moore matrix for step s.
#[derive(Clone)]
pub struct SubspaceSpec {
    field: FieldRef,
    alphas: Vec<Fe>,
    theta: Vec<Fe>,
    step: i64,
    moore_inverse: Vec<Vec<Fe>>,
    // F_q-coordinates of U_S elements: pivot columns of the α coordinate
    // matrix and the inverse of that m×m block
    pivots: Vec<usize>,
    pivot_inverse: Matrix,
    power_basis: Basis,
}

impl fmt::Debug for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspaceSpec")
            .field("alphas", &self.alphas)
            .field("theta", &self.theta)
            .field("step", &self.step)
            .finish()
    }
}

/// Serialized form: the coordinates of each α_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDescription {
    pub alphas: Vec<Vec<u32>>,
}

fn check_step(s: i64, n: u32) -> Result<()> {
    if gcd(s.unsigned_abs(), n as u64) != 1 {
        Err(Error::GcdViolation { s, n })
    } else {
        Ok(())
    }
}

impl SubspaceSpec {
    pub fn new(field: &FieldRef, alphas: Vec<Fe>, step: i64) -> Result<Self> {
        let n = field.n();
        let m = alphas.len();
        if m > n as usize {
            return Err(Error::TooLarge { m, n });
        }
        if m == 0 {
            return Err(Error::ParamViolation("S must be nonempty".into()));
        }
        check_step(step, n)?;
        let sf = field.scalars();
        let power_basis = field.power_basis();
        let coord_rows: Vec<Vec<u32>> = alphas.iter().map(|&a| power_basis.coords(a)).collect();
        let coord_matrix = Matrix::from_rows(&coord_rows);
        let pivots = coord_matrix.clone().rref_in_place(sf);
        if pivots.len() < m {
            return Err(Error::DependentSet);
        }
        let mut block = Matrix::zeros(m, m);
        for i in 0..m {
            for (c, &pc) in pivots.iter().enumerate() {
                block[(i, c)] = coord_matrix[(i, pc)];
            }
        }
        let pivot_inverse = block.inverse(sf).ok_or(Error::DependentSet)?;

        let theta = build_theta(field, &alphas);
        let moore = moore_rows(field, &alphas, step);
        let moore_inverse = invert_fe(field, &moore).ok_or(Error::DependentSet)?;
        Ok(SubspaceSpec {
            field: field.clone(),
            alphas,
            theta,
            step,
            moore_inverse,
            pivots,
            pivot_inverse,
            power_basis,
        })
    }

    /// Same S with the Moore inverse cached for another step.
    pub fn with_step(&self, step: i64) -> Result<Self> {
        check_step(step, self.field.n())?;
        let moore = moore_rows(&self.field, &self.alphas, step);
        let moore_inverse = invert_fe(&self.field, &moore).ok_or(Error::DependentSet)?;
        Ok(SubspaceSpec {
            step,
            moore_inverse,
            ..self.clone()
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn alphas(&self) -> &[Fe] {
        &self.alphas
    }

    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    /// q-coefficients (θ_0, …, θ_m) of θ_S, monic.
    pub fn theta(&self) -> &[Fe] {
        &self.theta
    }

    pub fn description(&self) -> SubspaceDescription {
        SubspaceDescription {
            alphas: self.alphas.iter().map(|&a| self.field.digits(a)).collect(),
        }
    }

    pub fn theta_eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.theta.iter().enumerate().fold(Fe::ZERO, |acc, (i, &c)| {
            f.add(acc, f.mul(c, f.frobenius(x, i as i64)))
        })
    }

    /// θ_S as a map reduced mod X^{q^n} − X (zero when m = n).
    pub fn theta_poly(&self) -> LinearizedPoly {
        LinearizedPoly::new(&self.field, self.theta.clone())
    }

    pub fn contains(&self, u: Fe) -> bool {
        self.theta_eval(u).is_zero()
    }

    /// All q^m elements of U_S.
    pub fn elements(&self) -> Vec<Fe> {
        let sf = self.field.scalars();
        let mut out = vec![Fe::ZERO];
        for &a in &self.alphas {
            let mut next = Vec::with_capacity(out.len() * sf.q() as usize);
            for c in sf.elements() {
                let ca = self.field.scale(a, c);
                next.extend(out.iter().map(|&u| self.field.add(u, ca)));
            }
            out = next;
        }
        out
    }

    /// F_q-coordinates of u ∈ U_S with respect to (α_1, …, α_m).
    pub fn coords(&self, u: Fe) -> Option<Vec<u32>> {
        let sf = self.field.scalars();
        let full = self.power_basis.coords(u);
        let m = self.m();
        let picked = Matrix::from_vec(1, m, self.pivots.iter().map(|&p| full[p]).collect());
        let x = picked.mul(&self.pivot_inverse, sf).data().to_vec();
        let back = self
            .alphas
            .iter()
            .zip(&x)
            .fold(Fe::ZERO, |acc, (&a, &c)| self.field.add(acc, self.field.scale(a, c)));
        (back == u).then_some(x)
    }

    /// Solves Σ_j a_j α_i^{q^{sj}} = values[i] with the cached step.
    pub fn solve_transversal(&self, values: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        self.moore_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(values)
                    .fold(Fe::ZERO, |acc, (&a, &v)| f.add(acc, f.mul(a, v)))
            })
            .collect()
    }

    /// Transversal representative of `f` for the cached step.
    pub fn reduce(&self, f: &LinearizedPoly) -> Vec<Fe> {
        let values: Vec<Fe> = self.alphas.iter().map(|&a| f.eval(a)).collect();
        self.solve_transversal(&values)
    }
}

fn moore_rows(field: &FieldRef, alphas: &[Fe], s: i64) -> Vec<Vec<Fe>> {
    let m = alphas.len();
    alphas
        .iter()
        .map(|&a| (0..m).map(|j| field.frobenius(a, s * j as i64)).collect())
        .collect()
}

// θ_{V+<α>} = θ_V^q − θ_V(α)^{q−1} θ_V
fn build_theta(field: &FieldRef, alphas: &[Fe]) -> Vec<Fe> {
    let q = field.q();
    let mut theta = vec![Fe::ONE];
    for &a in alphas {
        let v = theta.iter().enumerate().fold(Fe::ZERO, |acc, (i, &c)| {
            field.add(acc, field.mul(c, field.frobenius(a, i as i64)))
        });
        let w = field.pow(v, q - 1);
        let mut next = vec![Fe::ZERO; theta.len() + 1];
        for (j, &c) in theta.iter().enumerate() {
            next[j + 1] = field.add(next[j + 1], field.frobenius(c, 1));
            next[j] = field.sub(next[j], field.mul(w, c));
        }
        theta = next;
    }
    theta
}

/// θ_S for S, with the Moore inverse cached for step 1.
pub fn subspace_poly(field: &FieldRef, alphas: Vec<Fe>) -> Result<SubspaceSpec> {
    SubspaceSpec::new(field, alphas, 1)
}

/// The m×m matrix (α_i^{q^{sj}}).
pub fn moore_matrix(spec: &SubspaceSpec, s: i64) -> Result<Vec<Vec<Fe>>> {
    check_step(s, spec.field.n())?;
    Ok(moore_rows(&spec.field, &spec.alphas, s))
}

/// (a_0, …, a_{m−1}) with Σ a_j X^{q^{sj}} ≡ f mod θ_S.
pub fn reduce_mod_theta(f: &LinearizedPoly, spec: &SubspaceSpec, s: i64) -> Result<Vec<Fe>> {
    let n = spec.field.n() as i64;
    if (s - spec.step).rem_euclid(n) == 0 {
        check_step(s, spec.field.n())?;
        Ok(spec.reduce(f))
    } else {
        Ok(spec.with_step(s)?.reduce(f))
    }
}

/// #{u ∈ U_S : f(u) = 0}.
pub fn roots_in_subspace(f: &LinearizedPoly, spec: &SubspaceSpec) -> u64 {
    spec.elements()
        .into_iter()
        .filter(|&u| f.eval(u).is_zero())
        .count() as u64
}

/// Reduced coefficients E_k of X^{q^k}, k = 0..n−1.
pub fn monomial_expansions(spec: &SubspaceSpec) -> Vec<Vec<Fe>> {
    let field = &spec.field;
    (0..field.n() as i64)
        .map(|k| spec.reduce(&LinearizedPoly::monomial(field, Fe::ONE, k)))
        .collect()
}

/// The index set {j : coefficient j of φ(a X^{q^{ts}}) mod θ_S is nonzero for some a}.
///
/// With φ = Σ d_i X^{q^i}, coefficient j equals Σ_i d_i E_{i+ts}^{(j)} a^{q^i},
/// a reduced linearized polynomial in a, so it vanishes identically iff every
/// product d_i E_{i+ts}^{(j)} does.
pub fn shift_support(
    phi: &LinearizedPoly,
    spec: &SubspaceSpec,
    s: i64,
    t: usize,
) -> Result<BTreeSet<usize>> {
    let m = spec.m();
    if t >= m {
        return Err(Error::ParamViolation(format!("t = {t} must be below m = {m}")));
    }
    let spec = if (s - spec.step).rem_euclid(spec.field.n() as i64) == 0 {
        check_step(s, spec.field.n())?;
        spec.clone()
    } else {
        spec.with_step(s)?
    };
    let expansions = monomial_expansions(&spec);
    let n = spec.field.n() as i64;
    let mut out = BTreeSet::new();
    for (i, d) in phi.coeffs().iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let k = (i as i64 + t as i64 * s).rem_euclid(n) as usize;
        for (j, e) in expansions[k].iter().enumerate() {
            if !e.is_zero() {
                out.insert(j);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f16() -> FieldRef {
        Field::new(2, 1, 4, Some(vec![1, 1, 0, 0, 1])).unwrap()
    }

    fn random_poly(field: &FieldRef, rng: &mut ChaCha8Rng) -> LinearizedPoly {
        let coeffs = (0..field.n()).map(|_| field.random(rng)).collect();
        LinearizedPoly::new(field, coeffs)
    }

    #[test]
    fn eval_examples() {
        let f = f16();
        let xi = f.generator();
        let a = f.mul(xi, f.add(xi, Fe::ONE));
        assert_eq!(LinearizedPoly::identity(&f).eval(a), a);
        assert_eq!(LinearizedPoly::monomial(&f, Fe::ONE, 1).eval(a), f.pow(a, 2));
        let p = LinearizedPoly::new(&f, vec![Fe::ONE, Fe::ONE]);
        assert_eq!(p.eval(xi), f.add(f.mul(xi, xi), xi));
    }

    #[test]
    fn compose_matches_evaluation() {
        let f = Field::new(3, 1, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (a, b) = (random_poly(&f, &mut rng), random_poly(&f, &mut rng));
            let c = a.compose(&b).unwrap();
            for _ in 0..50 {
                let x = f.random(&mut rng);
                assert_eq!(c.eval(x), a.eval(b.eval(x)));
            }
        }
        let id = LinearizedPoly::identity(&f);
        let g = random_poly(&f, &mut rng);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
        let mono = LinearizedPoly::monomial(&f, Fe::ONE, 3)
            .compose(&LinearizedPoly::monomial(&f, Fe::ONE, 2))
            .unwrap();
        assert_eq!(mono, LinearizedPoly::monomial(&f, Fe::ONE, 1));
        let other = Field::new(2, 1, 4, None).unwrap();
        assert_eq!(
            id.compose(&LinearizedPoly::identity(&other)).unwrap_err(),
            Error::SpecMismatch
        );
    }

    #[test]
    fn theta_classical_identities() {
        let f = Field::new(3, 1, 4, None).unwrap();
        let s = subspace_poly(&f, vec![Fe::ONE]).unwrap();
        let minus_one = f.neg(Fe::ONE);
        assert_eq!(s.theta(), &[minus_one, Fe::ONE]);
        let full = subspace_poly(&f, f.power_basis().elements().to_vec()).unwrap();
        assert_eq!(full.theta(), &[minus_one, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
    }

    // ordinary polynomial product ∏_{u∈U}(X − u), coefficient vector by degree
    fn direct_product(field: &FieldRef, spec: &SubspaceSpec) -> Vec<Fe> {
        let mut poly = vec![Fe::ONE];
        for u in spec.elements() {
            let mut next = vec![Fe::ZERO; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] = field.add(next[d + 1], c);
                next[d] = field.sub(next[d], field.mul(u, c));
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn theta_recursion_matches_direct_product() {
        for (p, n) in [(2u64, 4u32), (3, 4), (2, 6)] {
            let f = Field::new(p, 1, n, None).unwrap();
            let xi = f.generator();
            for m in 1..=3usize {
                let alphas: Vec<Fe> = (0..m).map(|j| f.pow(xi, (2 * j + 1) as u64)).collect();
                let Ok(spec) = subspace_poly(&f, alphas) else { continue };
                let direct = direct_product(&f, &spec);
                let q = f.q() as usize;
                for (d, &c) in direct.iter().enumerate() {
                    let qexp = (0..=m).find(|&i| q.pow(i as u32) == d);
                    match qexp {
                        Some(i) => assert_eq!(c, spec.theta()[i]),
                        None => assert!(c.is_zero()),
                    }
                }
            }
        }
    }

    #[test]
    fn theta_vanishes_exactly_on_span() {
        let f = f16();
        let xi = f.generator();
        let spec = subspace_poly(&f, vec![Fe::ONE, xi]).unwrap();
        assert_eq!(spec.theta().len(), 3);
        let span = [Fe::ZERO, Fe::ONE, xi, f.add(xi, Fe::ONE)];
        let mut nonroots = 0;
        for a in f.elements() {
            if span.contains(&a) {
                assert!(spec.theta_eval(a).is_zero());
            } else {
                assert!(!spec.theta_eval(a).is_zero());
                nonroots += 1;
            }
        }
        assert_eq!(nonroots, 12);
    }

    #[test]
    fn subspace_errors() {
        let f = f16();
        let xi = f.generator();
        assert_eq!(
            subspace_poly(&f, vec![xi, xi]).unwrap_err(),
            Error::DependentSet
        );
        assert!(matches!(
            subspace_poly(&f, vec![Fe::ONE; 5]),
            Err(Error::TooLarge { .. })
        ));
        let spec = subspace_poly(&f, vec![Fe::ONE]).unwrap();
        assert!(matches!(
            moore_matrix(&spec, 2),
            Err(Error::GcdViolation { .. })
        ));
    }

    #[test]
    fn moore_matrix_small() {
        let f = f16();
        let spec = subspace_poly(&f, vec![Fe::ONE]).unwrap();
        assert_eq!(moore_matrix(&spec, 1).unwrap(), vec![vec![Fe::ONE]]);
    }

    #[test]
    fn reduce_examples() {
        let f = f16();
        let xi = f.generator();
        // U_S = F_4 inside F_16
        let f4 = f.subfield_generator(2).unwrap();
        let spec = subspace_poly(&f, vec![Fe::ONE, f4]).unwrap();
        let red = spec.reduce(&LinearizedPoly::monomial(&f, Fe::ONE, 2));
        assert_eq!(red, vec![Fe::ONE, Fe::ZERO]);
        // already in the transversal
        let g = LinearizedPoly::from_transversal(&f, &[xi, Fe::ONE], 1);
        assert_eq!(spec.reduce(&g), vec![xi, Fe::ONE]);
        // theta itself reduces to zero
        let spec3 = subspace_poly(&f, vec![Fe::ONE, xi, f.mul(xi, xi)]).unwrap();
        assert!(spec3.reduce(&spec3.theta_poly()).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn roots_counts() {
        let f = Field::new(3, 1, 4, None).unwrap();
        let xi = f.generator();
        let spec = subspace_poly(&f, vec![Fe::ONE, xi, f.mul(xi, xi)]).unwrap();
        assert_eq!(roots_in_subspace(&LinearizedPoly::zero(&f), &spec), 27);
        assert_eq!(roots_in_subspace(&LinearizedPoly::identity(&f), &spec), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mut th = spec.theta().to_vec();
            let k = rng.gen_range(0..th.len());
            th[k] = f.add(th[k], f.random(&mut rng));
            let count = roots_in_subspace(&LinearizedPoly::new(&f, th), &spec);
            assert!([1, 3, 9, 27].contains(&count));
        }
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = Field::new(3, 1, 3, None).unwrap();
        let basis = f.power_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let g = random_poly(&f, &mut rng);
            let y = g.to_matrix(&basis);
            assert_eq!(LinearizedPoly::from_matrix(&basis, &y), g);
        }
    }

    #[test]
    fn shift_support_small_cases() {
        let f = Field::new(2, 1, 5, None).unwrap();
        let xi = f.generator();
        let spec = subspace_poly(&f, vec![Fe::ONE, xi, f.mul(xi, xi)]).unwrap();
        let id = LinearizedPoly::identity(&f);
        assert_eq!(shift_support(&id, &spec, 1, 0).unwrap(), BTreeSet::from([0]));
        let xq = LinearizedPoly::monomial(&f, Fe::ONE, 1);
        assert_eq!(shift_support(&xq, &spec, 1, 0).unwrap(), BTreeSet::from([1]));
        let xq3 = LinearizedPoly::monomial(&f, Fe::ONE, 3);
        assert_eq!(shift_support(&xq3, &spec, 3, 0).unwrap(), BTreeSet::from([1]));
        assert!(shift_support(&id, &spec, 1, 3).is_err());
    }

}
