//! Middle and right nuclei: brute force over F_q, structural predictions,
//! and the hypothesis flags that decide when a prediction applies.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{divisors, gcd, Basis, Fe, FieldRef, ScalarField};
use crate::linalg::{Matrix, Subspace};
use crate::linpoly::{shift_support, LinearizedPoly, SubspaceSpec};
use crate::rankcode::{CodeParams, RankCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NucleusKind {
    Middle,
    Right,
}

/// Which structural results apply to a parameter set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    pub eta_zero: bool,
    pub m_gt_k_plus_1: bool,
    pub not_m4k2: bool,
    /// η ≠ 0, m > k+1 and (m,k) ≠ (4,2): monomials go to monomials under N_r and N_m.
    pub lemma_b: bool,
    pub middle_case_a: bool,
    pub middle_case_b: bool,
    pub middle_case_c: bool,
    pub middle_case_d: bool,
    /// k = 1, h ≡ s: the code is (X + ηX^{q^s})∘G_{1,s}.
    pub degenerate_twist_right: bool,
    /// k = 1, h ≡ 0: the code is G_{1,s}∘(X + ηX^{q^s}).
    pub degenerate_twist_middle: bool,
    pub open_case_right: bool,
    pub open_case_middle: bool,
    pub open_case: bool,
    pub middle_prediction: bool,
    pub right_prediction: bool,
}

impl HypothesisFlags {
    fn failed_middle(&self) -> Vec<String> {
        let mut out = vec!["eta_zero".to_string(), "lemma_b".to_string()];
        out.extend(["middle_case_a", "middle_case_b", "middle_case_c", "middle_case_d"].map(String::from));
        out
    }

    fn failed_right(&self) -> Vec<String> {
        vec!["eta_zero".into(), "lemma_b".into()]
    }
}

pub fn hypothesis_check(params: &CodeParams) -> HypothesisFlags {
    let f = params.field();
    let (n, m, k) = (params.n(), params.m(), params.k());
    let h = params.h() as usize % n;
    let eta = params.eta();
    let eta_zero = eta.is_zero();
    let twisted = !eta_zero;
    let m_gt_k_plus_1 = m > k + 1;
    let not_m4k2 = (m, k) != (4, 2);
    let lemma_b = twisted && m_gt_k_plus_1 && not_m4k2;
    let middle_case_a = twisted && k == 1 && m == 2 && !(2 * h).is_multiple_of(n) && h != 0;
    let middle_case_b = twisted && k == 2 && h != 0;
    let middle_case_c = twisted && k == 2 && m == 4 && n == 4 && {
        let s = params.s();
        let a = f.mul(f.frobenius(eta, 2 * s), eta);
        let b = f.mul(f.frobenius(eta, 3 * s), f.frobenius(eta, s));
        f.mul(a, b) != Fe::ONE
    };
    let middle_case_d = twisted && k > 2 && m == k + 1 && h != 0;
    let degenerate_twist_right = twisted && k == 1 && params.s().rem_euclid(n as i64) as usize == h;
    let degenerate_twist_middle = twisted && k == 1 && h == 0;
    let open_case_right = twisted && (m == k + 1 || (m == 4 && k == 2));
    let open_case_middle = twisted
        && ((k == 1 && m == 2 && n == 2 * h)
            || (k == 2 && m == 3 && h == 0)
            || (k == 2 && m == 4 && n > m)
            || (k > 2 && m == k + 1 && h == 0));
    HypothesisFlags {
        eta_zero,
        m_gt_k_plus_1,
        not_m4k2,
        lemma_b,
        middle_case_a,
        middle_case_b,
        middle_case_c,
        middle_case_d,
        degenerate_twist_right,
        degenerate_twist_middle,
        open_case_right,
        open_case_middle,
        open_case: open_case_right || open_case_middle,
        middle_prediction: eta_zero
            || lemma_b
            || middle_case_a
            || middle_case_b
            || middle_case_c
            || middle_case_d,
        right_prediction: eta_zero || lemma_b,
    }
}

fn flatten(mats: &[Matrix]) -> impl Iterator<Item = &[u32]> {
    mats.iter().map(|m| m.data())
}

fn span_of(mats: &[Matrix], sf: &ScalarField) -> Subspace {
    let len = mats.first().map_or(0, |m| m.rows() * m.cols());
    Subspace::span(len, flatten(mats), sf)
}

fn basis_from_kernel(kernel: Vec<Vec<u32>>, size: usize) -> Vec<Matrix> {
    kernel
        .into_iter()
        .map(|v| Matrix::from_vec(size, size, v))
        .collect()
}

/// Basis of {Z ∈ F_q^{m×m} : Z·C ⊆ C}.
pub fn middle_nucleus_bruteforce(code: &RankCode) -> Vec<Matrix> {
    let (m, n) = (code.m(), code.n());
    let sf = code.scalars();
    let parity = code.parity_check();
    let mut eqs = Subspace::new(m * m);
    // coefficient of Z[r,t] in w·vec(Z B) is Σ_c w[r,c] B[t,c]
    for b in code.basis() {
        for w in &parity {
            let mut row = vec![0u32; m * m];
            for r in 0..m {
                for t in 0..m {
                    let mut acc = 0;
                    for c in 0..n {
                        let (x, y) = (w[r * n + c], b[(t, c)]);
                        if x != 0 && y != 0 {
                            acc = sf.add(acc, sf.mul(x, y));
                        }
                    }
                    row[r * m + t] = acc;
                }
            }
            eqs.insert(&row, sf);
        }
    }
    basis_from_kernel(kernel_of(&eqs, m * m, sf), m)
}

/// Basis of {Y ∈ F_q^{n×n} : C·Y ⊆ C}.
pub fn right_nucleus_bruteforce(code: &RankCode) -> Vec<Matrix> {
    let (m, n) = (code.m(), code.n());
    let sf = code.scalars();
    let parity = code.parity_check();
    let mut eqs = Subspace::new(n * n);
    // coefficient of Y[t,c] in w·vec(B Y) is Σ_r w[r,c] B[r,t]
    for b in code.basis() {
        for w in &parity {
            let mut row = vec![0u32; n * n];
            for t in 0..n {
                for c in 0..n {
                    let mut acc = 0;
                    for r in 0..m {
                        let (x, y) = (w[r * n + c], b[(r, t)]);
                        if x != 0 && y != 0 {
                            acc = sf.add(acc, sf.mul(x, y));
                        }
                    }
                    row[t * n + c] = acc;
                }
            }
            eqs.insert(&row, sf);
        }
    }
    basis_from_kernel(kernel_of(&eqs, n * n, sf), n)
}

fn kernel_of(eqs: &Subspace, unknowns: usize, sf: &ScalarField) -> Vec<Vec<u32>> {
    if eqs.dim() == 0 {
        return (0..unknowns)
            .map(|i| {
                let mut v = vec![0; unknowns];
                v[i] = 1;
                v
            })
            .collect();
    }
    Matrix::from_rows(eqs.basis()).nullspace(sf)
}

/// Whether a span of square matrices is a field under matrix operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldStructure {
    pub is_field: bool,
    pub order: Option<u128>,
    /// False when the invertibility pass was skipped by the enumeration limit.
    pub complete: bool,
}

pub fn nucleus_field_structure(basis: &[Matrix], sf: &ScalarField, limit: u64) -> FieldStructure {
    let not_field = |complete| FieldStructure {
        is_field: false,
        order: None,
        complete,
    };
    let Some(first) = basis.first() else {
        return not_field(true);
    };
    let size = first.rows();
    let span = span_of(basis, sf);
    if !span.contains(Matrix::identity(size).data(), sf) {
        return not_field(true);
    }
    for a in basis {
        for b in basis {
            let ab = a.mul(b, sf);
            if !span.contains(ab.data(), sf) || ab != b.mul(a, sf) {
                return not_field(true);
            }
        }
    }
    let order = (sf.q() as u128).checked_pow(span.dim() as u32);
    if order.is_none_or(|o| o > limit as u128) {
        return not_field(false);
    }
    let all_invertible = span
        .elements(sf)
        .filter(|v| v.iter().any(|&x| x != 0))
        .all(|v| Matrix::from_vec(size, size, v).is_invertible(sf));
    FieldStructure {
        is_field: all_invertible,
        order: all_invertible.then_some(order.unwrap()),
        complete: true,
    }
}

/// Largest ℓ | n with U_S an F_{q^ℓ}-space.
pub fn largest_linearity_field(spec: &SubspaceSpec) -> u32 {
    let f = spec.field();
    let m = spec.m() as u32;
    let mut divs = divisors(f.n());
    divs.reverse();
    for l in divs {
        if !m.is_multiple_of(l) {
            continue;
        }
        let z = f.subfield_generator(l).expect("l divides n");
        if spec.alphas().iter().all(|&a| spec.contains(f.mul(z, a))) {
            return l;
        }
    }
    1
}

/// Smallest ℓ | n with U_S ⊆ F_{q^ℓ}.
pub fn smallest_containing_subfield(spec: &SubspaceSpec) -> u32 {
    let f = spec.field();
    divisors(f.n())
        .into_iter()
        .find(|&l| spec.alphas().iter().all(|&a| f.is_in_subfield(a, l)))
        .unwrap_or(f.n())
}

/// Predicted middle nucleus {u ↦ cu : c ∈ F_{q^t}} as m×m matrices.
#[derive(Clone, Debug)]
pub struct MiddlePrediction {
    pub t: u32,
    pub ell_mid: u32,
    pub order: u128,
    pub basis: Vec<Matrix>,
}

/// The m×m matrix of u ↦ cu on U_S (row i = S-coordinates of cα_i).
pub fn multiplication_matrix(spec: &SubspaceSpec, c: Fe) -> Option<Matrix> {
    let f = spec.field();
    let rows: Option<Vec<Vec<u32>>> = spec
        .alphas()
        .iter()
        .map(|&a| spec.coords(f.mul(c, a)))
        .collect();
    rows.map(|r| Matrix::from_rows(&r))
}

pub fn predict_middle_nucleus(params: &CodeParams, spec: &SubspaceSpec) -> Result<MiddlePrediction> {
    let flags = hypothesis_check(params);
    if !flags.middle_prediction {
        return Err(Error::HypothesisNotMet(flags.failed_middle()));
    }
    let f = params.field();
    let n = params.n() as u64;
    let ell_mid = largest_linearity_field(spec);
    let t = if flags.eta_zero {
        ell_mid
    } else {
        let skh = params.s() * params.k() as i64 - params.h() as i64;
        gcd(gcd(n, skh.unsigned_abs()), ell_mid as u64) as u32
    };
    let z = f.subfield_generator(t)?;
    let basis = (0..t as u64)
        .map(|j| multiplication_matrix(spec, f.pow(z, j)).expect("F_{q^t} stabilizes U_S"))
        .collect();
    Ok(MiddlePrediction {
        t,
        ell_mid,
        order: (f.q() as u128).pow(t),
        basis,
    })
}

/// Predicted right nucleus {Σ_{i<r} c_i X^{q^{iℓ}} : c_i ∈ C_i}.
#[derive(Clone, Debug)]
pub struct RightPrediction {
    pub ell_right: u32,
    pub r: u32,
    /// F_q-bases of the admissible coefficient spaces C_0, …, C_{r−1}.
    pub coefficient_bases: Vec<Vec<Fe>>,
    pub order: u128,
    pub basis: Vec<Matrix>,
    /// Whether S was rescaled by 1/α_1 (and η adjusted) first.
    pub normalized: bool,
}

/// The parameters and subspace of the same matrix code with S rescaled by
/// 1/α_1, so that 1 ∈ S: η becomes η·α_1^{q^{sk}}/α_1^{q^h}.
pub fn normalize_by_first(params: &CodeParams, spec: &SubspaceSpec) -> Result<(CodeParams, SubspaceSpec)> {
    let f = params.field();
    let a1 = spec.alphas()[0];
    let inv = f.inv(a1).ok_or(Error::DependentSet)?;
    let alphas = spec.alphas().iter().map(|&a| f.mul(a, inv)).collect();
    let new_spec = SubspaceSpec::new(f, alphas, spec.step())?;
    let k = params.k() as i64;
    let eta = f.mul(
        params.eta(),
        f.mul(f.frobenius(a1, params.s() * k), f.frobenius(inv, params.h() as i64)),
    );
    Ok((params.with_eta(eta)?, new_spec))
}

/// F_q-basis of {c : η c^{q^h} = η^{q^{e}} c}.
fn constraint_basis(f: &FieldRef, eta: Fe, h: u32, e: u32) -> Vec<Fe> {
    let pb = f.power_basis();
    let target = f.frobenius(eta, e as i64);
    let mut sub = Subspace::new(f.n() as usize);
    let mut out = Vec::new();
    for c in f.elements() {
        if c.is_zero() {
            continue;
        }
        if f.mul(eta, f.frobenius(c, h as i64)) == f.mul(target, c) && sub.insert(&pb.coords(c), f.scalars()) {
            out.push(c);
        }
    }
    out
}

pub fn predict_right_nucleus(
    params: &CodeParams,
    spec: &SubspaceSpec,
    basis: &Basis,
    normalize: bool,
) -> Result<RightPrediction> {
    let flags = hypothesis_check(params);
    if !flags.right_prediction {
        return Err(Error::HypothesisNotMet(flags.failed_right()));
    }
    let has_one = spec.alphas().contains(&Fe::ONE);
    let (params, spec, normalized) = if has_one {
        (params.clone(), spec.clone(), false)
    } else if normalize {
        let (p, s) = normalize_by_first(params, spec)?;
        (p, s, true)
    } else {
        return Err(Error::OneNotInS);
    };
    let f = params.field();
    let n = f.n();
    let ell = smallest_containing_subfield(&spec);
    let r = n / ell;
    let coefficient_bases: Vec<Vec<Fe>> = (0..r)
        .map(|i| {
            if params.eta().is_zero() {
                f.power_basis().elements().to_vec()
            } else {
                constraint_basis(f, params.eta(), params.h(), i * ell)
            }
        })
        .collect();
    let dim: usize = coefficient_bases.iter().map(Vec::len).sum();
    let mats = coefficient_bases
        .iter()
        .enumerate()
        .flat_map(|(i, cs)| {
            cs.iter().map(move |&c| {
                LinearizedPoly::monomial(f, c, (i as u32 * ell) as i64).to_matrix(basis)
            })
        })
        .collect();
    Ok(RightPrediction {
        ell_right: ell,
        r,
        coefficient_bases,
        order: (f.q() as u128).pow(dim as u32),
        basis: mats,
        normalized,
    })
}

fn ser_mats<S: Serializer>(mats: &[Matrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(mats.iter().map(|m| m.data()))
}

/// Brute-force nucleus with the structural prediction when one applies.
#[derive(Clone, Debug, Serialize)]
pub struct NucleusReport {
    pub kind: NucleusKind,
    pub order: u128,
    #[serde(serialize_with = "ser_mats")]
    pub basis: Vec<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_order: Option<u128>,
    #[serde(skip)]
    pub predicted_basis: Option<Vec<Matrix>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell_mid: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell_right: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<HypothesisFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub normalized: bool,
    pub field_structure: FieldStructure,
    pub contains_scalars: bool,
}

impl NucleusReport {
    fn bruteforce(kind: NucleusKind, basis: Vec<Matrix>, code: &RankCode, limit: u64) -> Self {
        let sf = code.scalars();
        let size = match kind {
            NucleusKind::Middle => code.m(),
            NucleusKind::Right => code.n(),
        };
        let span = Subspace::span(size * size, flatten(&basis), sf);
        NucleusReport {
            kind,
            order: (sf.q() as u128).saturating_pow(basis.len() as u32),
            field_structure: nucleus_field_structure(&basis, sf, limit),
            contains_scalars: span.contains(Matrix::identity(size).data(), sf),
            basis,
            predicted_order: None,
            predicted_basis: None,
            t: None,
            ell_mid: None,
            ell_right: None,
            r: None,
            flags: None,
            agree: None,
            normalized: false,
        }
    }

    fn set_prediction(&mut self, predicted: Vec<Matrix>, order: u128, sf: &ScalarField) {
        let size = match self.basis.first() {
            Some(b) => b.rows(),
            None => return,
        };
        let ours = Subspace::span(size * size, flatten(&self.basis), sf);
        let theirs = Subspace::span(size * size, flatten(&predicted), sf);
        self.agree = Some(ours.same_as(&theirs, sf));
        self.predicted_order = Some(order);
        self.predicted_basis = Some(predicted);
    }
}

/// Brute-force middle nucleus, compared with the prediction when the code
/// carries its construction parameters and the hypotheses hold.
pub fn analyze_middle(code: &RankCode, limit: u64) -> Result<NucleusReport> {
    let mut report = NucleusReport::bruteforce(NucleusKind::Middle, middle_nucleus_bruteforce(code), code, limit);
    if let Some(p) = code.provenance() {
        let flags = hypothesis_check(&p.params);
        report.ell_mid = Some(largest_linearity_field(&p.subspace));
        if flags.middle_prediction {
            let pred = predict_middle_nucleus(&p.params, &p.subspace)?;
            report.t = Some(pred.t);
            report.set_prediction(pred.basis, pred.order, code.scalars());
        }
        report.flags = Some(flags);
    }
    Ok(report)
}

/// Brute-force right nucleus, compared with the prediction when available.
pub fn analyze_right(code: &RankCode, limit: u64, normalize: bool) -> Result<NucleusReport> {
    let mut report = NucleusReport::bruteforce(NucleusKind::Right, right_nucleus_bruteforce(code), code, limit);
    if let Some(p) = code.provenance() {
        let flags = hypothesis_check(&p.params);
        if flags.right_prediction {
            let pred = predict_right_nucleus(&p.params, &p.subspace, &p.basis, normalize)?;
            report.ell_right = Some(pred.ell_right);
            report.r = Some(pred.r);
            report.normalized = pred.normalized;
            report.set_prediction(pred.basis, pred.order, code.scalars());
        } else {
            let ell = smallest_containing_subfield(&p.subspace);
            report.ell_right = Some(ell);
            report.r = Some(p.params.field().n() / ell);
        }
        report.flags = Some(flags);
    }
    Ok(report)
}

/// For every right-nucleus basis element φ: φ(aX) mod θ_S is a multiple of X
/// for all a, i.e. its shift support at t = 0 is within {0}.
pub fn right_maps_monomials_to_monomials(
    nucleus: &[Matrix],
    spec: &SubspaceSpec,
    basis: &Basis,
    s: i64,
) -> Result<bool> {
    for y in nucleus {
        let phi = LinearizedPoly::from_matrix(basis, y);
        if shift_support(&phi, spec, s, 0)?.iter().any(|&j| j != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every middle-nucleus basis element Z: the map α_i ↦ Σ_j Z_ij α_j on
/// U_S is u ↦ bu for a single b.
pub fn middle_acts_by_multiplication(nucleus: &[Matrix], spec: &SubspaceSpec) -> bool {
    let f = spec.field();
    let alphas = spec.alphas();
    let sf = f.scalars();
    nucleus.iter().all(|z| {
        let image = |i: usize| {
            alphas.iter().enumerate().fold(Fe::ZERO, |acc, (j, &a)| {
                f.add(acc, f.scale(a, z[(i, j)]))
            })
        };
        let b = f.div(image(0), alphas[0]).expect("α_1 ≠ 0");
        let _ = sf;
        (0..alphas.len()).all(|i| image(i) == f.mul(b, alphas[i]))
    })
}
