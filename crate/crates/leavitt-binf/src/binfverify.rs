//! Identity suites: the three brace-algebra axioms, the transpose and
//! opposite structures, the antipode composition trees, Lie-bracket
//! identities, the strict isomorphism between the two cochain models,
//! and a generic homotopy-morphism checker.
//!
//! Everything runs over a shared interface so the same suites apply to
//! the two-copy complex and to the parallel-path complex.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::combinat::compositions;
use crate::error::CalcError;
use crate::field::{Field, Scalar};
use crate::hatcomplex::{
    brace_hat, cup_hat, delta_prime, hat_is_zero, rho, rho_inv, HatElement,
};
use crate::leavitt::{enumerate_monomials_up_to, LeavittElement, LeavittMonomial};
use crate::quiver::{enumerate_paths, Quiver};
use crate::report::{Counterexample, SuiteReport};
use crate::sgcomplex::{
    brace_sg, cup_sg, differential_sg, sg_is_zero, SgElement, SgTerm,
};
use crate::transfer::insertion_data;

/// Common interface of the graded algebras under test. Degrees are the
/// internal ones entering all Koszul signs; `arg_dead` flags elements
/// that vanish in every brace argument slot.
pub trait BraceAlgebra {
    type Elem: Clone;
    fn field(&self) -> Field;
    fn degree(&self, x: &Self::Elem) -> Result<Option<i64>, CalcError>;
    fn m1(&self, x: &Self::Elem) -> Result<Self::Elem, CalcError>;
    fn m2(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, CalcError>;
    fn brace(&self, x: &Self::Elem, ys: &[Self::Elem]) -> Result<Self::Elem, CalcError>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> Result<bool, CalcError>;
    fn arg_dead(&self, x: &Self::Elem) -> bool;
    fn atoms(&self, max_letters: usize) -> Vec<Self::Elem>;
    fn render(&self, x: &Self::Elem) -> String;

    fn scale_sign(&self, x: &Self::Elem, exponent: i64) -> Self::Elem {
        self.scale(x, &self.field().sign(exponent))
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.scale(y, &self.field().from_i64(-1)))
    }

    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, CalcError> {
        self.is_zero(&self.sub(x, y))
    }

    fn deg_or(&self, x: &Self::Elem) -> i64 {
        self.degree(x).ok().flatten().unwrap_or(0)
    }
}

/// The two-copy complex with its cup and brace.
pub struct HatBrace<'q> {
    pub q: &'q Quiver,
    pub field: Field,
}

impl<'q> BraceAlgebra for HatBrace<'q> {
    type Elem = HatElement;

    fn field(&self) -> Field {
        self.field
    }

    fn degree(&self, x: &HatElement) -> Result<Option<i64>, CalcError> {
        x.degree()
    }

    fn m1(&self, x: &HatElement) -> Result<HatElement, CalcError> {
        Ok(delta_prime(self.q, x))
    }

    fn m2(&self, x: &HatElement, y: &HatElement) -> Result<HatElement, CalcError> {
        Ok(cup_hat(self.q, x, y))
    }

    fn brace(&self, x: &HatElement, ys: &[HatElement]) -> Result<HatElement, CalcError> {
        brace_hat(self.q, x, ys)
    }

    fn add(&self, x: &HatElement, y: &HatElement) -> HatElement {
        x.add(y)
    }

    fn scale(&self, x: &HatElement, c: &Scalar) -> HatElement {
        x.scale(c)
    }

    fn zero(&self) -> HatElement {
        HatElement::zero(self.field)
    }

    fn is_zero(&self, x: &HatElement) -> Result<bool, CalcError> {
        hat_is_zero(self.q, x)
    }

    fn arg_dead(&self, x: &HatElement) -> bool {
        x.shifted.is_empty_form()
    }

    fn atoms(&self, max_letters: usize) -> Vec<HatElement> {
        let mut monos: Vec<LeavittMonomial> =
            self.q.vertices().map(LeavittMonomial::idempotent).collect();
        monos.extend(enumerate_monomials_up_to(self.q, max_letters, true));
        let mut out = Vec::new();
        for m in &monos {
            let e = LeavittElement::monomial(self.field, m.clone());
            out.push(HatElement::from_plain(e.clone()));
            out.push(HatElement::from_shifted(e));
        }
        out
    }

    fn render(&self, x: &HatElement) -> String {
        x.render(self.q)
    }
}

/// The parallel-path complex with its cup and brace.
pub struct SgBrace<'q> {
    pub q: &'q Quiver,
    pub field: Field,
}

impl<'q> BraceAlgebra for SgBrace<'q> {
    type Elem = SgElement;

    fn field(&self) -> Field {
        self.field
    }

    fn degree(&self, x: &SgElement) -> Result<Option<i64>, CalcError> {
        let mut deg = None;
        for t in x.terms.keys() {
            match deg {
                None => deg = Some(t.degree()),
                Some(d) if d == t.degree() => {}
                Some(_) => return Err(CalcError::Inhomogeneous),
            }
        }
        Ok(deg)
    }

    fn m1(&self, x: &SgElement) -> Result<SgElement, CalcError> {
        differential_sg(self.q, x)
    }

    fn m2(&self, x: &SgElement, y: &SgElement) -> Result<SgElement, CalcError> {
        cup_sg(self.q, x, y)
    }

    fn brace(&self, x: &SgElement, ys: &[SgElement]) -> Result<SgElement, CalcError> {
        brace_sg(self.q, x, ys)
    }

    fn add(&self, x: &SgElement, y: &SgElement) -> SgElement {
        x.add(y)
    }

    fn scale(&self, x: &SgElement, c: &Scalar) -> SgElement {
        x.scale(c)
    }

    fn zero(&self) -> SgElement {
        SgElement::zero(self.field)
    }

    fn is_zero(&self, x: &SgElement) -> Result<bool, CalcError> {
        sg_is_zero(self.q, x)
    }

    fn arg_dead(&self, x: &SgElement) -> bool {
        x.terms.keys().all(|t| !t.shifted)
    }

    fn atoms(&self, max_letters: usize) -> Vec<SgElement> {
        let mut out = Vec::new();
        for total in 0..=max_letters {
            for m in 0..=total {
                let p = total - m;
                for gamma in enumerate_paths(self.q, m, None, None) {
                    let src = gamma.source();
                    let tgt = gamma.target(self.q);
                    for gp in enumerate_paths(self.q, p, Some(src), Some(tgt)) {
                        for shifted in [false, true] {
                            if let Some(t) =
                                SgTerm::new(self.q, gamma.clone(), gp.clone(), shifted)
                            {
                                out.push(SgElement::term(self.field, t));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn render(&self, x: &SgElement) -> String {
        x.render(self.q)
    }
}

fn tuples<E: Clone>(atoms: &[E], n: usize) -> Vec<Vec<E>> {
    let mut out: Vec<Vec<E>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for a in atoms {
                let mut t2 = t.clone();
                t2.push(a.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn record_identity<A: BraceAlgebra>(
    alg: &A,
    report: &mut SuiteReport,
    inputs: &[&A::Elem],
    lhs: &A::Elem,
    rhs: &A::Elem,
) -> Result<(), CalcError> {
    let ok = alg.equal(lhs, rhs)?;
    report.record(ok, || Counterexample {
        inputs: inputs.iter().map(|x| alg.render(x)).collect(),
        lhs: alg.render(lhs),
        rhs: alg.render(rhs),
    });
    Ok(())
}

/// Higher pre-Jacobi: composing two braces equals the sum over all
/// in-order insertions of the inner arguments into the outer ones.
pub fn check_pre_jacobi<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    pq_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new("pre-jacobi");
    let atoms = alg.atoms(max_letters);
    for p in 1..=pq_cap.saturating_sub(1) {
        for qn in 1..=(pq_cap - p) {
            let data = insertion_data(p, qn);
            for a in &atoms {
                for bs in tuples(&atoms, p) {
                    let inner = alg.brace(a, &bs)?;
                    let bdeg: Vec<i64> = bs.iter().map(|b| alg.deg_or(b)).collect();
                    for cs in tuples(&atoms, qn) {
                        let cdeg: Vec<i64> = cs.iter().map(|c| alg.deg_or(c)).collect();
                        let lhs = alg.brace(&inner, &cs)?;
                        let mut rhs = alg.zero();
                        for datum in &data {
                            let mut args: Vec<A::Elem> = Vec::new();
                            let mut eps: i64 = 0;
                            let mut at = 0usize;
                            for (l, &(i, w)) in datum.iter().enumerate() {
                                args.extend_from_slice(&cs[at..i]);
                                args.push(alg.brace(&bs[l], &cs[i..i + w])?);
                                eps += (bdeg[l] - 1)
                                    * cdeg[..i].iter().map(|d| d - 1).sum::<i64>();
                                at = i + w;
                            }
                            args.extend_from_slice(&cs[at..]);
                            let term = alg.brace(a, &args)?;
                            rhs = alg.add(&rhs, &alg.scale_sign(&term, eps));
                        }
                        let mut inputs: Vec<&A::Elem> = alloc::vec![a];
                        inputs.extend(bs.iter());
                        inputs.extend(cs.iter());
                        record_identity(alg, &mut report, &inputs, &lhs, &rhs)?;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Distributivity of braces over the product. Instances where some
/// argument dies in every brace slot hold with both sides zero and are
/// recorded without evaluation.
pub fn check_distributivity<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    pq_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new("distributivity");
    let atoms = alg.atoms(max_letters);
    for qn in 1..=pq_cap {
        for a1 in &atoms {
            for a2 in &atoms {
                let a2deg = alg.deg_or(a2);
                let prod = alg.m2(a1, a2)?;
                for bs in tuples(&atoms, qn) {
                    if bs.iter().any(|b| alg.arg_dead(b)) {
                        report.record(true, || unreachable!());
                        continue;
                    }
                    let bdeg: Vec<i64> = bs.iter().map(|b| alg.deg_or(b)).collect();
                    let lhs = alg.brace(&prod, &bs)?;
                    let mut rhs = alg.zero();
                    for j in 0..=qn {
                        let left = alg.brace(a1, &bs[..j])?;
                        let right = alg.brace(a2, &bs[j..])?;
                        let eps = a2deg * bdeg[..j].iter().map(|d| d - 1).sum::<i64>();
                        let term = alg.m2(&left, &right)?;
                        rhs = alg.add(&rhs, &alg.scale_sign(&term, eps));
                    }
                    let mut inputs: Vec<&A::Elem> = alloc::vec![a1, a2];
                    inputs.extend(bs.iter());
                    record_identity(alg, &mut report, &inputs, &lhs, &rhs)?;
                }
            }
        }
    }
    Ok(report)
}

/// Higher homotopy: the failure of the differential to be a brace
/// derivation is the two boundary products.
pub fn check_higher_homotopy<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    pq_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new("higher-homotopy");
    let atoms = alg.atoms(max_letters);
    for p in 1..=pq_cap {
        for a in &atoms {
            let adeg = alg.deg_or(a);
            for bs in tuples(&atoms, p) {
                let bdeg: Vec<i64> = bs.iter().map(|b| alg.deg_or(b)).collect();
                let eps_at = |i: usize| -> i64 {
                    adeg + bdeg[..i].iter().map(|d| d - 1).sum::<i64>()
                };
                let mut lhs = alg.m1(&alg.brace(a, &bs)?)?;
                let head = alg.m2(&bs[0], &alg.brace(a, &bs[1..])?)?;
                lhs = alg.add(&lhs, &alg.scale_sign(&head, adeg * (bdeg[0] - 1) + 1));
                let tail = alg.m2(&alg.brace(a, &bs[..p - 1])?, &bs[p - 1])?;
                lhs = alg.add(&lhs, &alg.scale_sign(&tail, eps_at(p - 1)));
                let mut rhs = alg.brace(&alg.m1(a)?, &bs)?;
                for i in 0..p {
                    let mut args = bs[..i].to_vec();
                    args.push(alg.m1(&bs[i])?);
                    args.extend_from_slice(&bs[i + 1..]);
                    let term = alg.brace(a, &args)?;
                    rhs = alg.add(&rhs, &alg.scale_sign(&term, eps_at(i) + 1));
                }
                for i in 0..p.saturating_sub(1) {
                    let mut args = bs[..i].to_vec();
                    args.push(alg.m2(&bs[i], &bs[i + 1])?);
                    args.extend_from_slice(&bs[i + 2..]);
                    let term = alg.brace(a, &args)?;
                    rhs = alg.add(&rhs, &alg.scale_sign(&term, eps_at(i + 1)));
                }
                let mut inputs: Vec<&A::Elem> = alloc::vec![a];
                inputs.extend(bs.iter());
                record_identity(alg, &mut report, &inputs, &lhs, &rhs)?;
            }
        }
    }
    Ok(report)
}

/// Runs the three axiom suites at the given bounds.
pub fn check_brace_axioms<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    pq_cap: usize,
) -> Result<Vec<SuiteReport>, CalcError> {
    Ok(alloc::vec![
        check_pre_jacobi(alg, max_letters, pq_cap)?,
        check_distributivity(alg, max_letters, pq_cap)?,
        check_higher_homotopy(alg, max_letters, pq_cap)?,
    ])
}

/// Brace of the transpose algebra: reverse the arguments and twist by
/// the arity and the pairwise argument degrees.
pub fn brace_transposed<A: BraceAlgebra>(
    alg: &A,
    a: &A::Elem,
    bs: &[A::Elem],
) -> Result<A::Elem, CalcError> {
    let k = bs.len();
    if k == 0 {
        return Ok(a.clone());
    }
    let deg: Vec<i64> = bs.iter().map(|b| alg.deg_or(b)).collect();
    let mut eps = k as i64;
    for j in 0..k - 1 {
        eps += (deg[j] - 1) * deg[j + 1..].iter().map(|d| d - 1).sum::<i64>();
    }
    let rev: Vec<A::Elem> = bs.iter().rev().cloned().collect();
    Ok(alg.scale_sign(&alg.brace(a, &rev)?, eps))
}

/// Transpose of a brace algebra: same differential, opposite signed
/// product, reversed braces.
pub struct TransposedBrace<A> {
    pub inner: A,
}

impl<A: BraceAlgebra> BraceAlgebra for TransposedBrace<A> {
    type Elem = A::Elem;

    fn field(&self) -> Field {
        self.inner.field()
    }

    fn degree(&self, x: &A::Elem) -> Result<Option<i64>, CalcError> {
        self.inner.degree(x)
    }

    fn m1(&self, x: &A::Elem) -> Result<A::Elem, CalcError> {
        self.inner.m1(x)
    }

    fn m2(&self, x: &A::Elem, y: &A::Elem) -> Result<A::Elem, CalcError> {
        let e = self.inner.deg_or(x) * self.inner.deg_or(y);
        Ok(self.inner.scale_sign(&self.inner.m2(y, x)?, e))
    }

    fn brace(&self, x: &A::Elem, ys: &[A::Elem]) -> Result<A::Elem, CalcError> {
        brace_transposed(&self.inner, x, ys)
    }

    fn add(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        self.inner.add(x, y)
    }

    fn scale(&self, x: &A::Elem, c: &Scalar) -> A::Elem {
        self.inner.scale(x, c)
    }

    fn zero(&self) -> A::Elem {
        self.inner.zero()
    }

    fn is_zero(&self, x: &A::Elem) -> Result<bool, CalcError> {
        self.inner.is_zero(x)
    }

    fn arg_dead(&self, x: &A::Elem) -> bool {
        self.inner.arg_dead(x)
    }

    fn atoms(&self, max_letters: usize) -> Vec<A::Elem> {
        self.inner.atoms(max_letters)
    }

    fn render(&self, x: &A::Elem) -> String {
        self.inner.render(x)
    }
}

/// Transposing twice returns the original brace.
pub fn check_transpose_involution<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    k_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new("transpose-involution");
    let twisted = TransposedBrace { inner: TransposedBrace { inner: alg } };
    let atoms = alg.atoms(max_letters);
    for k in 1..=k_cap {
        for a in &atoms {
            for bs in tuples(&atoms, k) {
                let lhs = twisted.brace(a, &bs)?;
                let rhs = alg.brace(a, &bs)?;
                let mut inputs: Vec<&A::Elem> = alloc::vec![a];
                inputs.extend(bs.iter());
                record_identity(alg, &mut report, &inputs, &lhs, &rhs)?;
            }
        }
    }
    Ok(report)
}

impl<'a, A: BraceAlgebra> BraceAlgebra for &'a A {
    type Elem = A::Elem;

    fn field(&self) -> Field {
        (*self).field()
    }

    fn degree(&self, x: &A::Elem) -> Result<Option<i64>, CalcError> {
        (*self).degree(x)
    }

    fn m1(&self, x: &A::Elem) -> Result<A::Elem, CalcError> {
        (*self).m1(x)
    }

    fn m2(&self, x: &A::Elem, y: &A::Elem) -> Result<A::Elem, CalcError> {
        (*self).m2(x, y)
    }

    fn brace(&self, x: &A::Elem, ys: &[A::Elem]) -> Result<A::Elem, CalcError> {
        (*self).brace(x, ys)
    }

    fn add(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        (*self).add(x, y)
    }

    fn scale(&self, x: &A::Elem, c: &Scalar) -> A::Elem {
        (*self).scale(x, c)
    }

    fn zero(&self) -> A::Elem {
        (*self).zero()
    }

    fn is_zero(&self, x: &A::Elem) -> Result<bool, CalcError> {
        (*self).is_zero(x)
    }

    fn arg_dead(&self, x: &A::Elem) -> bool {
        (*self).arg_dead(x)
    }

    fn atoms(&self, max_letters: usize) -> Vec<A::Elem> {
        (*self).atoms(max_letters)
    }

    fn render(&self, x: &A::Elem) -> String {
        (*self).render(x)
    }
}

/// Multiplication component recovered from the brace convention.
pub fn mu_from_brace<A: BraceAlgebra>(
    alg: &A,
    a: &A::Elem,
    bs: &[A::Elem],
) -> Result<A::Elem, CalcError> {
    let k = bs.len() as i64;
    let mut eps = k * alg.deg_or(a);
    for (j, b) in bs.iter().enumerate() {
        eps += (k - 1 - j as i64) * alg.deg_or(b);
    }
    Ok(alg.scale_sign(&alg.brace(a, bs)?, eps))
}

/// The nonzero components of the opposite structure, arguments first.
pub fn mu_opposite<A: BraceAlgebra>(
    alg: &A,
    bs: &[A::Elem],
    a: &A::Elem,
) -> Result<A::Elem, CalcError> {
    let eps = alg.deg_or(a) * bs.iter().map(|b| alg.deg_or(b)).sum::<i64>()
        + bs.len() as i64;
    mu_from_brace(alg, a, bs).map(|x| alg.scale_sign(&x, eps))
}

/// Taking the opposite twice returns the original components.
pub fn check_opposite_involution<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    k_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new("opposite-involution");
    let atoms = alg.atoms(max_letters);
    for k in 1..=k_cap {
        for a in &atoms {
            for bs in tuples(&atoms, k) {
                let once = mu_opposite(alg, &bs, a)?;
                let eps = alg.deg_or(a)
                    * bs.iter().map(|b| alg.deg_or(b)).sum::<i64>()
                    + k as i64;
                let twice = alg.scale_sign(&once, eps);
                let rhs = mu_from_brace(alg, a, &bs)?;
                let mut inputs: Vec<&A::Elem> = alloc::vec![a];
                inputs.extend(bs.iter());
                record_identity(alg, &mut report, &inputs, &twice, &rhs)?;
            }
        }
    }
    Ok(report)
}

/// Composition tree of reversed-brace operations: a leaf is the
/// identity, a node braces its head input with the children values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaTree {
    Leaf,
    Node { children: Vec<ThetaTree> },
}

impl ThetaTree {
    /// Number of inputs the tree consumes.
    pub fn size(&self) -> usize {
        match self {
            ThetaTree::Leaf => 1,
            ThetaTree::Node { children } => {
                1 + children.iter().map(|c| c.size()).sum::<usize>()
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            ThetaTree::Leaf => String::from("1"),
            ThetaTree::Node { children } => {
                let head = format!("M^tr_{{1,{}}}", children.len());
                if children.iter().all(|c| matches!(c, ThetaTree::Leaf)) {
                    return head;
                }
                let parts: Vec<String> = children.iter().map(|c| c.render()).collect();
                format!("{} \u{2218} (1 \u{2297} {})", head, parts.join(" \u{2297} "))
            }
        }
    }
}

/// All composition trees on `k` inputs, outer arity descending and
/// compositions in descending lexicographic order.
pub fn theta_trees(k: usize) -> Vec<ThetaTree> {
    assert!(k >= 1, "composition trees need at least one input");
    if k == 1 {
        return alloc::vec![ThetaTree::Leaf];
    }
    let mut out = Vec::new();
    for r in (1..=k - 1).rev() {
        for comp in compositions(k - 1, r) {
            let parts: Vec<Vec<ThetaTree>> =
                comp.iter().map(|&i| theta_trees(i)).collect();
            let mut choices: Vec<Vec<ThetaTree>> = alloc::vec![Vec::new()];
            for part in &parts {
                let mut next = Vec::new();
                for c in &choices {
                    for t in part {
                        let mut c2 = c.clone();
                        c2.push(t.clone());
                        next.push(c2);
                    }
                }
                choices = next;
            }
            for children in choices {
                out.push(ThetaTree::Node { children });
            }
        }
    }
    out
}

/// Evaluates one tree on an input tuple through the reversed brace.
pub fn theta_eval<A: BraceAlgebra>(
    alg: &A,
    tree: &ThetaTree,
    xs: &[A::Elem],
) -> Result<A::Elem, CalcError> {
    assert_eq!(tree.size(), xs.len(), "input count must match the tree size");
    match tree {
        ThetaTree::Leaf => Ok(xs[0].clone()),
        ThetaTree::Node { children } => {
            let mut vals = Vec::new();
            let mut at = 1usize;
            for child in children {
                let sz = child.size();
                vals.push(theta_eval(alg, child, &xs[at..at + sz])?);
                at += sz;
            }
            brace_transposed(alg, &xs[0], &vals)
        }
    }
}

/// Sum of all tree evaluations on `k` inputs.
pub fn theta_k<A: BraceAlgebra>(alg: &A, xs: &[A::Elem]) -> Result<A::Elem, CalcError> {
    let mut out = alg.zero();
    for tree in theta_trees(xs.len()) {
        out = alg.add(&out, &theta_eval(alg, &tree, xs)?);
    }
    Ok(out)
}

/// Lie bracket of braces.
pub fn bracket<A: BraceAlgebra>(
    alg: &A,
    x: &A::Elem,
    y: &A::Elem,
) -> Result<A::Elem, CalcError> {
    let xy = alg.brace(x, core::slice::from_ref(y))?;
    let yx = alg.brace(y, core::slice::from_ref(x))?;
    let eps = (alg.deg_or(x) - 1) * (alg.deg_or(y) - 1);
    Ok(alg.add(&xy, &alg.scale_sign(&yx, eps + 1)))
}

/// Antisymmetry, graded Jacobi, and compatibility of the bracket with
/// the differential.
pub fn gerstenhaber_checks<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
) -> Result<Vec<SuiteReport>, CalcError> {
    let atoms = alg.atoms(max_letters);
    let deg: Vec<i64> = atoms.iter().map(|x| alg.deg_or(x)).collect();
    let mut antisym = SuiteReport::new("bracket-antisymmetry");
    let mut chain = SuiteReport::new("bracket-chain-map");
    for (i, x) in atoms.iter().enumerate() {
        for (j, y) in atoms.iter().enumerate() {
            let br = bracket(alg, x, y)?;
            let rev = bracket(alg, y, x)?;
            let rhs = alg.scale_sign(&rev, (deg[i] - 1) * (deg[j] - 1) + 1);
            record_identity(alg, &mut antisym, &[x, y], &br, &rhs)?;
            let lhs = alg.m1(&br)?;
            let mut rhs = bracket(alg, &alg.m1(x)?, y)?;
            let other = bracket(alg, x, &alg.m1(y)?)?;
            rhs = alg.add(&rhs, &alg.scale_sign(&other, deg[i] - 1));
            record_identity(alg, &mut chain, &[x, y], &lhs, &rhs)?;
        }
    }
    let mut jacobi = SuiteReport::new("bracket-jacobi");
    for (i, x) in atoms.iter().enumerate() {
        for (j, y) in atoms.iter().enumerate() {
            for (l, z) in atoms.iter().enumerate() {
                let t1 = alg.scale_sign(
                    &bracket(alg, &bracket(alg, x, y)?, z)?,
                    (deg[i] - 1) * (deg[l] - 1),
                );
                let t2 = alg.scale_sign(
                    &bracket(alg, &bracket(alg, y, z)?, x)?,
                    (deg[j] - 1) * (deg[i] - 1),
                );
                let t3 = alg.scale_sign(
                    &bracket(alg, &bracket(alg, z, x)?, y)?,
                    (deg[l] - 1) * (deg[j] - 1),
                );
                let sum = alg.add(&alg.add(&t1, &t2), &t3);
                record_identity(alg, &mut jacobi, &[x, y, z], &sum, &alg.zero())?;
            }
        }
    }
    Ok(alloc::vec![antisym, chain, jacobi])
}

/// Data of a homotopy-morphism check between two graded structures.
/// The source family `m_s` vanishes for `s > 2`, the target products
/// `m'_1, m'_2` likewise, so all relations close with these components.
pub struct AInfMorphism<'c, S, T> {
    pub source_m: Box<dyn Fn(&[S]) -> Result<S, CalcError> + 'c>,
    pub map: Box<dyn Fn(&[S]) -> Result<T, CalcError> + 'c>,
    pub target_m1: Box<dyn Fn(&T) -> Result<T, CalcError> + 'c>,
    pub target_m2: Box<dyn Fn(&T, &T) -> Result<T, CalcError> + 'c>,
    pub add: Box<dyn Fn(&T, &T) -> T + 'c>,
    pub scale_sign: Box<dyn Fn(&T, i64) -> T + 'c>,
    pub degree: Box<dyn Fn(&S) -> i64 + 'c>,
    pub equal: Box<dyn Fn(&T, &T) -> Result<Option<Counterexample>, CalcError> + 'c>,
    pub render: Box<dyn Fn(&S) -> String + 'c>,
}

/// Verifies the morphism relations up to arity `n_cap` on all tuples of
/// the given atoms.
pub fn check_a_infinity_morphism<S: Clone, T>(
    name: &str,
    data: &AInfMorphism<S, T>,
    atoms: &[S],
    n_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let mut report = SuiteReport::new(name);
    for n in 1..=n_cap {
        for tuple in tuples(atoms, n) {
            let degs: Vec<i64> = tuple.iter().map(|u| (data.degree)(u)).collect();
            let mut lhs: Option<T> = None;
            for s in 1..=n {
                for a in 0..=(n - s) {
                    let t = n - s - a;
                    let inner = (data.source_m)(&tuple[a..a + s])?;
                    let mut args: Vec<S> = tuple[..a].to_vec();
                    args.push(inner);
                    args.extend_from_slice(&tuple[a + s..]);
                    let val = (data.map)(&args)?;
                    let pre: i64 = degs[..a].iter().sum();
                    let sign = (a + s * t) as i64 + s as i64 * pre;
                    let term = (data.scale_sign)(&val, sign);
                    lhs = Some(match lhs {
                        Some(x) => (data.add)(&x, &term),
                        None => term,
                    });
                }
            }
            let lhs = lhs.expect("arity is at least one");
            let mut rhs = (data.target_m1)(&(data.map)(&tuple)?)?;
            for i1 in 1..n {
                let i2 = n - i1;
                let pre: i64 = degs[..i1].iter().sum();
                let sign = (i1 as i64 - 1) + (1 - i2 as i64) * pre;
                let left = (data.map)(&tuple[..i1])?;
                let right = (data.map)(&tuple[i1..])?;
                let term = (data.scale_sign)(&(data.target_m2)(&left, &right)?, sign);
                rhs = (data.add)(&rhs, &term);
            }
            let cex = (data.equal)(&lhs, &rhs)?;
            let renders: Vec<String> = tuple.iter().map(|u| (data.render)(u)).collect();
            report.record(cex.is_none(), || {
                let inner = cex.unwrap();
                let mut inputs = renders;
                inputs.extend(inner.inputs);
                Counterexample { inputs, lhs: inner.lhs, rhs: inner.rhs }
            });
        }
    }
    Ok(report)
}

/// The tree family as a candidate homotopy morphism from the opposite
/// structure to the transpose, checked through the generic relations.
/// The tree sums compose shift-side components, so each arity picks up
/// the unshifting sign of its inputs before entering the relations.
pub fn check_theta_morphism<A: BraceAlgebra>(
    alg: &A,
    max_letters: usize,
    n_cap: usize,
) -> Result<SuiteReport, CalcError> {
    let data: AInfMorphism<A::Elem, A::Elem> = AInfMorphism {
        source_m: Box::new(move |args| match args.len() {
            1 => alg.m1(&args[0]),
            2 => alg.m2(&args[0], &args[1]),
            _ => Ok(alg.zero()),
        }),
        map: Box::new(move |args| {
            let k = args.len();
            let eps: i64 = args
                .iter()
                .enumerate()
                .map(|(j, x)| (k - 1 - j) as i64 * alg.deg_or(x))
                .sum();
            theta_k(alg, args).map(|v| alg.scale_sign(&v, eps))
        }),
        target_m1: Box::new(move |x| alg.m1(x)),
        target_m2: Box::new(move |x, y| {
            let t = TransposedBrace { inner: alg };
            t.m2(x, y)
        }),
        add: Box::new(move |x, y| alg.add(x, y)),
        scale_sign: Box::new(move |x, e| alg.scale_sign(x, e)),
        degree: Box::new(move |x| alg.deg_or(x)),
        equal: Box::new(move |x, y| {
            if alg.equal(x, y)? {
                Ok(None)
            } else {
                Ok(Some(Counterexample {
                    inputs: Vec::new(),
                    lhs: alg.render(x),
                    rhs: alg.render(y),
                }))
            }
        }),
        render: Box::new(move |x| alg.render(x)),
    };
    let atoms = alg.atoms(max_letters);
    check_a_infinity_morphism("theta-morphism", &data, &atoms, n_cap)
}

/// The bridge between the parallel-path and two-copy models is a strict
/// isomorphism: it intertwines differentials, cups, and braces, and
/// composes to the identity with its inverse both ways.
pub fn check_rho_morphism(
    q: &Quiver,
    field: Field,
    max_letters: usize,
    k_cap: usize,
) -> Result<Vec<SuiteReport>, CalcError> {
    let sg = SgBrace { q, field };
    let hat = HatBrace { q, field };
    let atoms = sg.atoms(max_letters);
    let mut chain = SuiteReport::new("rho-chain-map");
    let mut inv = SuiteReport::new("rho-inverse");
    for x in &atoms {
        let lhs = rho(q, &differential_sg(q, x)?);
        let rhs = delta_prime(q, &rho(q, x));
        let ok = hat.equal(&lhs, &rhs)?;
        chain.record(ok, || Counterexample {
            inputs: alloc::vec![x.render(q)],
            lhs: lhs.render(q),
            rhs: rhs.render(q),
        });
        let back = rho_inv(q, &rho(q, x))?;
        let ok = sg.equal(&back, x)?;
        inv.record(ok, || Counterexample {
            inputs: alloc::vec![x.render(q)],
            lhs: back.render(q),
            rhs: x.render(q),
        });
    }
    let hat_atoms = hat.atoms(max_letters);
    for z in &hat_atoms {
        let fwd = rho(q, &rho_inv(q, z)?);
        let ok = hat.equal(&fwd, z)?;
        inv.record(ok, || Counterexample {
            inputs: alloc::vec![z.render(q)],
            lhs: fwd.render(q),
            rhs: z.render(q),
        });
    }
    let mut cup = SuiteReport::new("rho-cup");
    for x in &atoms {
        for y in &atoms {
            let lhs = rho(q, &cup_sg(q, x, y)?);
            let rhs = cup_hat(q, &rho(q, x), &rho(q, y));
            let ok = hat.equal(&lhs, &rhs)?;
            cup.record(ok, || Counterexample {
                inputs: alloc::vec![x.render(q), y.render(q)],
                lhs: lhs.render(q),
                rhs: rhs.render(q),
            });
        }
    }
    let mut brace = SuiteReport::new("rho-brace");
    for k in 1..=k_cap {
        for x in &atoms {
            for ys in tuples(&atoms, k) {
                let lhs = rho(q, &brace_sg(q, x, &ys)?);
                let mapped: Vec<HatElement> = ys.iter().map(|y| rho(q, y)).collect();
                let rhs = brace_hat(q, &rho(q, x), &mapped)?;
                let ok = hat.equal(&lhs, &rhs)?;
                brace.record(ok, || {
                    let mut inputs = alloc::vec![x.render(q)];
                    inputs.extend(ys.iter().map(|y| y.render(q)));
                    Counterexample { inputs, lhs: lhs.render(q), rhs: rhs.render(q) }
                });
            }
        }
    }
    Ok(alloc::vec![chain, inv, cup, brace])
}
