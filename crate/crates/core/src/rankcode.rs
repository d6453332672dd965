//! Rank-metric codes as F_q-subspaces of F_q^{m×n}.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gcd, vec_repr, Basis, Fe, FieldDescription, FieldRef, ScalarField};
use crate::linalg::{Matrix, Subspace};
use crate::linpoly::{LinearizedPoly, SubspaceDescription, SubspaceSpec};

/// Default cap on the number of codewords an exhaustive pass may visit.
pub const CODEWORD_LIMIT: u64 = 1 << 22;

/// Parameters (n, m, k, s, h, η) of a twisted Gabidulin code H_{k,s}(η, h).
#[derive(Clone, Debug)]
pub struct CodeParams {
    field: FieldRef,
    m: usize,
    k: usize,
    s: i64,
    h: u32,
    eta: Fe,
}

impl CodeParams {
    pub fn new(field: &FieldRef, m: usize, k: usize, s: i64, h: u32, eta: Fe) -> Result<Self> {
        let n = field.n();
        if gcd(s.unsigned_abs(), n as u64) != 1 {
            return Err(Error::GcdViolation { s, n });
        }
        if !(1 <= k && k < m && m <= n as usize) {
            return Err(Error::ParamViolation(format!(
                "need 1 <= k < m <= n, got k = {k}, m = {m}, n = {n}"
            )));
        }
        if h >= n {
            return Err(Error::ParamViolation(format!("h = {h} must be below n = {n}")));
        }
        if !eta.is_zero() {
            let norm = field.relative_norm(eta, s)?;
            let sign = if (n as usize * k).is_multiple_of(2) {
                Fe::ONE
            } else {
                field.neg(Fe::ONE)
            };
            if norm == sign {
                return Err(Error::NormConditionViolated {
                    norm: field.digits(norm),
                });
            }
        }
        Ok(CodeParams {
            field: field.clone(),
            m,
            k,
            s,
            h,
            eta,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.field.n() as usize
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn eta(&self) -> Fe {
        self.eta
    }

    /// The same parameters with another η (re-validated).
    pub fn with_eta(&self, eta: Fe) -> Result<Self> {
        CodeParams::new(&self.field, self.m, self.k, self.s, self.h, eta)
    }

    pub fn description(&self) -> ParamsDescription {
        ParamsDescription {
            field: self.field.description(),
            m: self.m,
            k: self.k,
            s: self.s,
            h: self.h,
            eta: self.field.digits(self.eta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDescription {
    pub field: FieldDescription,
    pub m: usize,
    pub k: usize,
    pub s: i64,
    pub h: u32,
    pub eta: Vec<u32>,
}

/// The F_{q^n}-shape of H_{k,s}(η, h): k slots, each F_q-linear in its
/// coefficient a_i.
#[derive(Clone, Debug)]
pub struct GtgShape {
    params: CodeParams,
}

impl GtgShape {
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// Slot 0 is a ↦ aX + η a^{q^h} X^{q^{sk}}; slot i is a ↦ a X^{q^{si}}.
    pub fn slot(&self, i: usize, a: Fe) -> LinearizedPoly {
        let p = &self.params;
        let f = &p.field;
        let base = LinearizedPoly::monomial(f, a, p.s * i as i64);
        if i == 0 && !p.eta.is_zero() {
            let tw = f.mul(p.eta, f.frobenius(a, p.h as i64));
            base.add(&LinearizedPoly::monomial(f, tw, p.s * p.k as i64))
        } else {
            base
        }
    }

    /// The polynomial with slot coefficients (a_0, …, a_{k−1}).
    pub fn poly(&self, coeffs: &[Fe]) -> LinearizedPoly {
        coeffs
            .iter()
            .enumerate()
            .fold(LinearizedPoly::zero(&self.params.field), |acc, (i, &a)| {
                acc.add(&self.slot(i, a))
            })
    }

    /// The nk F_q-generators slot(i, β_j), slot-major.
    pub fn expand(&self, basis: &Basis) -> Vec<LinearizedPoly> {
        (0..self.params.k)
            .flat_map(|i| basis.elements().iter().map(move |&b| self.slot(i, b)))
            .collect()
    }
}

pub fn build_gtg(params: &CodeParams) -> GtgShape {
    GtgShape {
        params: params.clone(),
    }
}

/// Matrix with row i = v(f(α_i)).
pub fn codeword_matrix(f: &LinearizedPoly, spec: &SubspaceSpec, basis: &Basis) -> Matrix {
    let rows: Vec<Vec<u32>> = spec
        .alphas()
        .iter()
        .map(|&a| vec_repr(f.eval(a), basis))
        .collect();
    Matrix::from_rows(&rows)
}

/// Where a code came from.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub params: CodeParams,
    pub subspace: SubspaceSpec,
    pub basis: Basis,
}

/// An F_q-linear code in F_q^{m×n} held by a basis.
#[derive(Clone, Debug)]
pub struct RankCode {
    scalars: ScalarField,
    m: usize,
    n: usize,
    basis: Vec<Matrix>,
    span: Subspace,
    provenance: Option<Provenance>,
}

/// Maps generators into matrices via U_S and checks the dimension is kept.
pub fn project_code(
    generators: &[LinearizedPoly],
    spec: &SubspaceSpec,
    basis: &Basis,
) -> Result<RankCode> {
    let field = spec.field();
    let mats: Vec<Matrix> = generators
        .iter()
        .map(|g| codeword_matrix(g, spec, basis))
        .collect();
    let n = field.n() as usize;
    RankCode::from_basis(field.scalars().clone(), spec.m(), n, mats)
}

impl RankCode {
    /// A code spanned by `basis`; fails with DimensionCollapse if dependent.
    pub fn from_basis(
        scalars: ScalarField,
        m: usize,
        n: usize,
        basis: Vec<Matrix>,
    ) -> Result<RankCode> {
        if let Some(b) = basis.iter().find(|b| b.shape() != (m, n)) {
            return Err(Error::ShapeMismatch(format!(
                "expected {m}x{n}, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        let span = Subspace::span(m * n, basis.iter().map(|b| b.data()), &scalars);
        if span.dim() != basis.len() {
            return Err(Error::DimensionCollapse {
                expected: basis.len(),
                got: span.dim(),
            });
        }
        Ok(RankCode {
            scalars,
            m,
            n,
            basis,
            span,
            provenance: None,
        })
    }

    /// The projected twisted Gabidulin code for `params` on U_S, over the
    /// power basis.
    pub fn twisted_gabidulin(params: &CodeParams, spec: &SubspaceSpec) -> Result<RankCode> {
        RankCode::twisted_gabidulin_with_basis(params, spec, &params.field.power_basis())
    }

    pub fn twisted_gabidulin_with_basis(
        params: &CodeParams,
        spec: &SubspaceSpec,
        basis: &Basis,
    ) -> Result<RankCode> {
        if !spec.field().same_as(&params.field) || !basis.field().same_as(&params.field) {
            return Err(Error::SpecMismatch);
        }
        if spec.m() != params.m {
            return Err(Error::ParamViolation(format!(
                "S has {} elements but m = {}",
                spec.m(),
                params.m
            )));
        }
        let gens = build_gtg(params).expand(basis);
        let mut code = project_code(&gens, spec, basis)?;
        code.provenance = Some(Provenance {
            params: params.clone(),
            subspace: spec.clone(),
            basis: basis.clone(),
        });
        Ok(code)
    }

    pub fn scalars(&self) -> &ScalarField {
        &self.scalars
    }

    pub fn q(&self) -> u32 {
        self.scalars.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// q^dim, saturating.
    pub fn size(&self) -> u128 {
        (self.q() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        x.shape() == (self.m, self.n) && self.span.contains(x.data(), &self.scalars)
    }

    /// Rows spanning the dual of vec(code) in F_q^{mn}: H·vec(X) = 0 iff X ∈ code.
    pub fn parity_check(&self) -> Vec<Vec<u32>> {
        let g = Matrix::from_rows(
            &self
                .basis
                .iter()
                .map(|b| b.data().to_vec())
                .collect::<Vec<_>>(),
        );
        if self.basis.is_empty() {
            return (0..self.m * self.n)
                .map(|i| {
                    let mut v = vec![0; self.m * self.n];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        g.nullspace(&self.scalars)
    }

    /// Σ c_i B_i.
    pub fn combine(&self, coeffs: &[u32]) -> Matrix {
        let sf = &self.scalars;
        let mut out = Matrix::zeros(self.m, self.n);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                out = out.add(&b.scale(c, sf), sf);
            }
        }
        out
    }

    pub fn check_enumerable(&self, limit: u64) -> Result<()> {
        let count = self.size();
        if count > limit as u128 {
            return Err(Error::TooLargeToEnumerate {
                what: "codewords".into(),
                count,
                limit,
            });
        }
        Ok(())
    }

    /// Every codeword, in odometer order of the coefficient vector.
    pub fn codewords(&self, limit: u64) -> Result<Vec<Matrix>> {
        self.check_enumerable(limit)?;
        let mut out = Vec::with_capacity(self.size() as usize);
        self.walk(&[], |data| {
            out.push(Matrix::from_vec(self.m, self.n, data.to_vec()));
        });
        Ok(out)
    }

    // Odometer over the coefficients of basis[fixed.len()..], with the
    // leading coefficients pinned to `fixed`; `visit` sees each codeword.
    fn walk<F: FnMut(&[u32])>(&self, fixed: &[u32], mut visit: F) {
        let sf = &self.scalars;
        let q = sf.q();
        let len = self.m * self.n;
        let mut cur = vec![0u32; len];
        for (b, &c) in self.basis.iter().zip(fixed) {
            axpy(&mut cur, c, b.data(), sf);
        }
        let free = &self.basis[fixed.len()..];
        // digits in scalar encoding order 0..q; delta vectors d·B_i
        let mut digits = vec![0u32; free.len()];
        visit(&cur);
        loop {
            let mut i = 0;
            loop {
                if i == free.len() {
                    return;
                }
                let old = digits[i];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[i] = new;
                axpy(&mut cur, sf.sub(new, old), free[i].data(), sf);
                if new != 0 {
                    break;
                }
                i += 1;
            }
            visit(&cur);
        }
    }

    // Splits the enumeration into independent chunks by pinning the
    // leading coefficients, runs `f` on each in parallel and collects.
    fn par_chunks<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&[u32]) -> T + Sync,
    {
        let q = self.q() as u64;
        let mut pinned = 0;
        let mut chunks = 1u64;
        while pinned < self.dim() && chunks < 256 && self.dim() - pinned > 4 {
            pinned += 1;
            chunks *= q;
        }
        (0..chunks)
            .into_par_iter()
            .map(|idx| {
                let mut prefix = vec![0u32; pinned];
                let mut x = idx;
                for d in prefix.iter_mut() {
                    *d = (x % q) as u32;
                    x /= q;
                }
                f(&prefix)
            })
            .collect()
    }

    /// Histogram of codeword ranks, indexed 0..=min(m, n).
    pub fn weight_distribution(&self, limit: u64) -> Result<Vec<u64>> {
        self.check_enumerable(limit)?;
        let width = self.m.min(self.n) + 1;
        let parts = self.par_chunks(|prefix| {
            let mut hist = vec![0u64; width];
            let mut ranker = Ranker::new(self.m, self.n, &self.scalars);
            self.walk(prefix, |data| hist[ranker.rank(data)] += 1);
            hist
        });
        Ok(parts.into_iter().fold(vec![0u64; width], |mut acc, h| {
            for (a, b) in acc.iter_mut().zip(h) {
                *a += b;
            }
            acc
        }))
    }

    /// Minimum rank of a nonzero codeword (None for the zero code).
    pub fn min_distance(&self, limit: u64) -> Result<Option<usize>> {
        self.check_enumerable(limit)?;
        if self.dim() == 0 {
            return Ok(None);
        }
        let parts = self.par_chunks(|prefix| {
            let mut best = usize::MAX;
            let mut ranker = Ranker::new(self.m, self.n, &self.scalars);
            self.walk(prefix, |data| {
                let r = ranker.rank(data);
                if r != 0 && r < best {
                    best = r;
                }
            });
            best
        });
        Ok(parts.into_iter().min().filter(|&d| d != usize::MAX))
    }

    pub fn is_mrd(&self, limit: u64) -> Result<MrdCertificate> {
        let d = self.min_distance(limit)?;
        let size = self.size();
        let (big, small) = (self.m.max(self.n), self.m.min(self.n));
        let bound = d.and_then(|d| {
            (self.q() as u128).checked_pow((big * (small + 1 - d)) as u32)
        });
        Ok(MrdCertificate {
            min_distance: d,
            size,
            bound,
            is_mrd: bound == Some(size),
        })
    }

    /// {A X^γ B + C : X ∈ code}; γ is the entrywise x ↦ x^{p^γ}.
    pub fn apply_equivalence(
        &self,
        a: &Matrix,
        b: &Matrix,
        c: Option<&Matrix>,
        gamma: u32,
    ) -> Result<RankCode> {
        let sf = &self.scalars;
        if a.shape() != (self.m, self.m) || b.shape() != (self.n, self.n) {
            return Err(Error::ShapeMismatch("A must be m×m and B n×n".into()));
        }
        if !a.is_invertible(sf) {
            return Err(Error::SingularA);
        }
        if !b.is_invertible(sf) {
            return Err(Error::SingularB);
        }
        if c.is_some_and(|c| !c.is_zero()) {
            return Err(Error::TranslationBreaksLinearity);
        }
        let basis = self
            .basis
            .iter()
            .map(|x| a.mul(&x.frobenius(gamma, sf), sf).mul(b, sf))
            .collect();
        RankCode::from_basis(sf.clone(), self.m, self.n, basis)
    }

    /// {X^T : X ∈ code}, for square codes.
    pub fn adjoint(&self) -> Result<RankCode> {
        if self.m != self.n {
            return Err(Error::NotSquare);
        }
        let basis = self.basis.iter().map(Matrix::transpose).collect();
        RankCode::from_basis(self.scalars.clone(), self.m, self.n, basis)
    }

    /// Same code as a set: equal dimension and mutual containment.
    pub fn same_code(&self, other: &RankCode) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.span.same_as(&other.span, &self.scalars)
    }

    pub fn to_json(&self) -> RankCodeJson {
        RankCodeJson {
            q: self.q(),
            m: self.m,
            n: self.n,
            basis: self.basis.iter().map(|b| b.data().to_vec()).collect(),
            provenance: self.provenance.as_ref().map(|p| ProvenanceJson {
                params: p.params.description(),
                subspace: p.subspace.description(),
            }),
        }
    }
}

fn axpy(acc: &mut [u32], c: u32, x: &[u32], sf: &ScalarField) {
    if c == 0 {
        return;
    }
    for (a, &v) in acc.iter_mut().zip(x) {
        if v != 0 {
            *a = sf.add(*a, sf.mul(c, v));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrdCertificate {
    pub min_distance: Option<usize>,
    pub size: u128,
    /// q^{max(m,n)(min(m,n)−d+1)}; None when it overflows or the code is zero.
    pub bound: Option<u128>,
    pub is_mrd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub params: ParamsDescription,
    pub subspace: SubspaceDescription,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCodeJson {
    pub q: u32,
    pub m: usize,
    pub n: usize,
    /// Each basis matrix row-major.
    pub basis: Vec<Vec<u32>>,
    pub provenance: Option<ProvenanceJson>,
}

/// rk(A − B).
pub fn rank_distance(a: &Matrix, b: &Matrix, sf: &ScalarField) -> Result<usize> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.sub(b, sf).rank(sf))
}

// Reusable rank computation for flat m×n buffers, with packed rows for q = 2.
struct Ranker<'a> {
    rows: usize,
    cols: usize,
    sf: &'a ScalarField,
    work: Vec<u32>,
    bits: Vec<u64>,
}

impl<'a> Ranker<'a> {
    fn new(rows: usize, cols: usize, sf: &'a ScalarField) -> Self {
        Ranker {
            rows,
            cols,
            sf,
            work: vec![0; rows * cols],
            bits: vec![0; rows],
        }
    }

    fn rank(&mut self, data: &[u32]) -> usize {
        if self.sf.q() == 2 && self.cols <= 64 {
            for (i, slot) in self.bits.iter_mut().enumerate() {
                *slot = data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &v)| acc | ((v as u64) << j));
            }
            return rank_gf2(&mut self.bits);
        }
        self.work.copy_from_slice(data);
        let (rows, cols, sf) = (self.rows, self.cols, self.sf);
        let w = &mut self.work;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| w[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    w.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = sf.inv(w[r * cols + c]).expect("nonzero pivot");
            for i in r + 1..rows {
                let f = w[i * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = sf.neg(sf.mul(f, inv));
                for j in c..cols {
                    let v = w[r * cols + j];
                    if v != 0 {
                        w[i * cols + j] = sf.add(w[i * cols + j], sf.mul(nf, v));
                    }
                }
            }
            r += 1;
        }
        r
    }
}

fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::linpoly::subspace_poly;

    fn small_params(q: u64, n: u32, m: usize, k: usize, eta: Fe) -> (CodeParams, SubspaceSpec) {
        let f = Field::new(q, 1, n, None).unwrap();
        let xi = f.generator();
        let alphas = (0..m).map(|i| f.pow(xi, i as u64)).collect();
        let spec = subspace_poly(&f, alphas).unwrap();
        (CodeParams::new(&f, m, k, 1, 1, eta).unwrap(), spec)
    }

    #[test]
    fn parameter_validation() {
        let f = Field::new(2, 1, 4, None).unwrap();
        let xi = f.generator();
        assert!(matches!(
            CodeParams::new(&f, 3, 1, 2, 0, Fe::ZERO),
            Err(Error::GcdViolation { .. })
        ));
        assert!(CodeParams::new(&f, 3, 3, 1, 0, Fe::ZERO).is_err());
        assert!(CodeParams::new(&f, 5, 1, 1, 0, Fe::ZERO).is_err());
        assert!(CodeParams::new(&f, 3, 1, 1, 4, Fe::ZERO).is_err());
        for e in f.elements().filter(|e| !e.is_zero()) {
            assert!(matches!(
                CodeParams::new(&f, 3, 1, 1, 0, e),
                Err(Error::NormConditionViolated { .. })
            ));
        }
        let _ = xi;
        let f81 = Field::new(3, 1, 4, None).unwrap();
        let g = f81.generator();
        assert!(!f81.is_square(g));
        assert!(CodeParams::new(&f81, 3, 1, 1, 0, g).is_ok());
    }

    #[test]
    fn projected_dimension_and_mrd() {
        let (params, spec) = small_params(3, 4, 3, 1, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        assert_eq!(code.dim(), 4);
        assert_eq!(code.size(), 81);
        assert_eq!(code.min_distance(CODEWORD_LIMIT).unwrap(), Some(3));
        assert!(code.is_mrd(CODEWORD_LIMIT).unwrap().is_mrd);
    }

    #[test]
    fn twisted_code_is_mrd() {
        let f = Field::new(3, 1, 4, None).unwrap();
        let eta = f.generator();
        let (params, spec) = small_params(3, 4, 3, 1, Fe::ZERO);
        let params = params.with_eta(eta).unwrap();
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        assert_eq!(code.min_distance(CODEWORD_LIMIT).unwrap(), Some(3));
        let cert = code.is_mrd(CODEWORD_LIMIT).unwrap();
        assert_eq!(cert.bound, Some(81));
        assert!(cert.is_mrd);
    }

    #[test]
    fn weight_distribution_sums_and_matches_sequential() {
        let (params, spec) = small_params(2, 5, 4, 2, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let hist = code.weight_distribution(CODEWORD_LIMIT).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 1 << 10);
        assert_eq!(hist[0], 1);
        let sf = code.scalars();
        let mut seq = vec![0u64; hist.len()];
        for cw in code.codewords(CODEWORD_LIMIT).unwrap() {
            seq[cw.rank(sf)] += 1;
        }
        assert_eq!(seq, hist);
        assert_eq!(hist[1] + hist[2], 0);
    }

    #[test]
    fn codewords_are_distinct_members() {
        let (params, spec) = small_params(3, 4, 3, 1, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let mut words = code.codewords(CODEWORD_LIMIT).unwrap();
        assert!(words.iter().all(|w| code.contains(w)));
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 81);
        assert!(code.codewords(10).is_err());
    }

    #[test]
    fn rank_distance_examples() {
        let f = Field::new(2, 1, 1, None).unwrap();
        let sf = f.scalars();
        let a = Matrix::from_rows(&[vec![1, 0, 1, 1], vec![1, 0, 1, 1], vec![0, 1, 0, 0]]);
        assert_eq!(rank_distance(&a, &a, sf).unwrap(), 0);
        assert_eq!(rank_distance(&a, &Matrix::zeros(3, 4), sf).unwrap(), 2);
        assert!(rank_distance(&a, &Matrix::zeros(4, 3), sf).is_err());
    }

    #[test]
    fn trivial_mrd_cases() {
        let f = Field::new(2, 1, 1, None).unwrap();
        let sf = f.scalars().clone();
        let single = RankCode::from_basis(
            sf.clone(),
            2,
            2,
            vec![Matrix::from_rows(&[vec![1, 0], vec![0, 0]])],
        )
        .unwrap();
        let cert = single.is_mrd(CODEWORD_LIMIT).unwrap();
        assert_eq!(cert.min_distance, Some(1));
        assert!(!cert.is_mrd);
        let full = RankCode::from_basis(
            sf.clone(),
            2,
            2,
            (0..4)
                .map(|i| {
                    let mut d = vec![0; 4];
                    d[i] = 1;
                    Matrix::from_vec(2, 2, d)
                })
                .collect(),
        )
        .unwrap();
        assert!(full.is_mrd(CODEWORD_LIMIT).unwrap().is_mrd);
        let dup = RankCode::from_basis(sf, 2, 2, vec![Matrix::identity(2), Matrix::identity(2)]);
        assert!(matches!(dup, Err(Error::DimensionCollapse { .. })));
    }

    #[test]
    fn equivalence_and_adjoint() {
        let (params, spec) = small_params(2, 4, 4, 2, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let sf = code.scalars().clone();
        let id = Matrix::identity(4);
        let same = code.apply_equivalence(&id, &id, None, 0).unwrap();
        assert!(same.same_code(&code));
        let a = Matrix::from_rows(&[
            vec![1, 1, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ]);
        assert!(a.is_invertible(&sf));
        let b = a.transpose();
        let eq = code.apply_equivalence(&a, &b, None, 0).unwrap();
        assert_eq!(
            eq.weight_distribution(CODEWORD_LIMIT).unwrap(),
            code.weight_distribution(CODEWORD_LIMIT).unwrap()
        );
        assert_eq!(
            code.apply_equivalence(&Matrix::zeros(4, 4), &id, None, 0)
                .unwrap_err(),
            Error::SingularA
        );
        assert_eq!(
            code.apply_equivalence(&id, &id, Some(&id), 0).unwrap_err(),
            Error::TranslationBreaksLinearity
        );
        let adj = code.adjoint().unwrap();
        assert!(adj.adjoint().unwrap().same_code(&code));
        assert_eq!(
            adj.min_distance(CODEWORD_LIMIT).unwrap(),
            code.min_distance(CODEWORD_LIMIT).unwrap()
        );
        let (p3, s3) = small_params(2, 4, 3, 1, Fe::ZERO);
        let rect = RankCode::twisted_gabidulin(&p3, &s3).unwrap();
        assert_eq!(rect.adjoint().unwrap_err(), Error::NotSquare);
    }

    #[test]
    fn parity_check_characterizes_membership() {
        let (params, spec) = small_params(3, 4, 3, 1, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let h = code.parity_check();
        assert_eq!(h.len(), 12 - 4);
        let sf = code.scalars();
        for b in code.basis() {
            for row in &h {
                let dot = row
                    .iter()
                    .zip(b.data())
                    .fold(0, |acc, (&x, &y)| sf.add(acc, sf.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn json_shape() {
        let (params, spec) = small_params(2, 4, 3, 1, Fe::ZERO);
        let code = RankCode::twisted_gabidulin(&params, &spec).unwrap();
        let json = serde_json::to_value(code.to_json()).unwrap();
        assert_eq!(json["q"], 2);
        assert_eq!(json["basis"].as_array().unwrap().len(), 4);
        assert_eq!(json["basis"][0].as_array().unwrap().len(), 12);
        assert_eq!(json["provenance"]["params"]["k"], 1);
    }
}
