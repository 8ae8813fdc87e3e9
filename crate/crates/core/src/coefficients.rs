//! The three explicit coefficient families: the type A coefficients indexed by
//! strictly upper triangular matrices, their last-column quotient `d`, and the
//! branching coefficients `e` of the type B eigenfunction.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{qpow, ParamPoint, PochhammerTable, Rational};

/// Strictly upper triangular `N x N` matrix of non-negative integers.
///
/// Indices are 0-based; entry `(i, j)` with `i < j` is the exponent of `x_j/x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl ThetaMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from `(i, j, value)` triples with `i < j < n`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, u32)]) -> Self {
        let mut m = Self::zero(n);
        for &(i, j, v) in entries {
            m.set(i, j, v);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // rows 0..i contribute (n-1) + (n-2) + ... + (n-i) entries
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `(i, j)`; zero on and below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i < j && j < self.n {
            self.entries[self.index(i, j)]
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        assert!(i < j && j < self.n, "({i}, {j}) is not strictly upper triangular");
        let k = self.index(i, j);
        self.entries[k] = value;
    }

    /// `sum_{i<j} (j - i) theta_{ij}`, the cone degree of its monomial.
    pub fn degree(&self) -> u32 {
        let mut d = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                d += (j - i) as u32 * self.get(i, j);
            }
        }
        d
    }

    /// Exponent vector of `prod_{i<j} (x_j/x_i)^{theta_ij}`.
    pub fn exponents(&self) -> Vec<i64> {
        let mut e = vec![0i64; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                let t = self.get(i, j) as i64;
                e[i] -= t;
                e[j] += t;
            }
        }
        e
    }

    /// `(theta_{i,N})_{i<N}`.
    pub fn last_column(&self) -> ThetaVector {
        assert!(self.n >= 2);
        ThetaVector((0..self.n - 1).map(|i| self.get(i, self.n - 1)).collect())
    }

    /// The leading `(N-1) x (N-1)` block.
    pub fn without_last(&self) -> ThetaMatrix {
        assert!(self.n >= 1);
        let mut m = ThetaMatrix::zero(self.n - 1);
        for i in 0..self.n - 1 {
            for j in i + 1..self.n - 1 {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// All matrices of degree at most `max_degree`, depth-first over entries in
    /// row-major order, each entry bounded by the remaining degree over `j - i`.
    pub fn enumerate(n: usize, max_degree: u32) -> Vec<ThetaMatrix> {
        let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        let mut current = ThetaMatrix::zero(n);
        fn walk(
            pos: usize,
            remaining: u32,
            positions: &[(usize, usize)],
            current: &mut ThetaMatrix,
            out: &mut Vec<ThetaMatrix>,
        ) {
            if pos == positions.len() {
                out.push(current.clone());
                return;
            }
            let (i, j) = positions[pos];
            let w = (j - i) as u32;
            for v in 0..=remaining / w {
                current.set(i, j, v);
                walk(pos + 1, remaining - v * w, positions, current, out);
            }
            current.set(i, j, 0);
        }
        walk(0, max_degree, &positions, &mut current, &mut out);
        out
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                r.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Non-negative integer index vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThetaVector(pub Vec<u32>);

impl ThetaVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&t| t == 0)
    }

    /// `sum_i weight(i) * theta_i`.
    pub fn weighted(&self, weight: impl Fn(usize) -> u32) -> u32 {
        self.0.iter().enumerate().map(|(i, &t)| weight(i) * t).sum()
    }

    /// `theta - e_k`, or `None` when `theta_k = 0`.
    pub fn decremented(&self, k: usize) -> Option<ThetaVector> {
        let mut out = self.clone();
        out.0[k] = out.0[k].checked_sub(1)?;
        Some(out)
    }

    /// Vectors with `sum_i weight(i) * theta_i <= max`, in lexicographic order.
    pub fn enumerate_weighted(n: usize, weight: impl Fn(usize) -> u32, max: u32) -> Vec<ThetaVector> {
        let weights: Vec<u32> = (0..n).map(&weight).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn walk(pos: usize, remaining: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<ThetaVector>) {
            if pos == w.len() {
                out.push(ThetaVector(cur.clone()));
                return;
            }
            for v in 0..=remaining / w[pos] {
                cur[pos] = v;
                walk(pos + 1, remaining - v * w[pos], w, cur, out);
            }
            cur[pos] = 0;
        }
        walk(0, max, &weights, &mut cur, &mut out);
        out
    }

    /// Every vector with all entries in `0..=bound`, lexicographic.
    pub fn enumerate_box(n: usize, bound: u32) -> Vec<ThetaVector> {
        let mut out = vec![ThetaVector(Vec::with_capacity(n))];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=bound).map(move |t| {
                        let mut w = v.0.clone();
                        w.push(t);
                        ThetaVector(w)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Evaluates the coefficient families at a fixed `(q, s)` with a shared
/// Pochhammer memo. No genericity certificate is required; a vanishing
/// denominator is reported as [`Error::VanishingDenominator`].
#[derive(Debug, Clone)]
pub struct Evaluator {
    s: Vec<Rational>,
    table: PochhammerTable,
}

impl Evaluator {
    pub fn new(q: &Rational, s: &[Rational]) -> Self {
        Self {
            s: s.to_vec(),
            table: PochhammerTable::new(q.clone()),
        }
    }

    pub fn at(p: &ParamPoint) -> Self {
        Self::new(p.q(), p.s())
    }

    pub fn q(&self) -> &Rational {
        self.table.q()
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    fn poch(&mut self, base: Rational, n: u32) -> Rational {
        if n == 0 {
            return Rational::one();
        }
        self.table.get(&base, n)
    }

    fn finish(num: Rational, den: Rational, what: impl FnOnce() -> String) -> Result<Rational> {
        if den.is_zero() {
            Err(Error::VanishingDenominator(what()))
        } else {
            Ok(num / den)
        }
    }

    fn check_len(&self, expected: usize) -> Result<()> {
        if self.s.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.s.len(),
            });
        }
        Ok(())
    }

    /// Type A coefficient `c_N(theta; s; q)`:
    ///
    /// ```text
    /// prod_{k=2}^{N} prod_{1<=i<=j<=k-1}
    ///     1 / (q^{sum_{a>k}(theta_{i,a} - theta_{j+1,a})} q s_{j+1}/s_i; q)_{theta_{ik}}
    ///   * q^{theta_{ik}} / (q^{theta_{jk} - theta_{ik} - sum_{a>k}(theta_{i,a} - theta_{j,a})} q s_i/s_j; q)_{theta_{ik}}
    /// ```
    pub fn c_toda(&mut self, theta: &ThetaMatrix) -> Result<Rational> {
        let n = theta.n();
        self.check_len(n)?;
        let q = self.q().clone();
        let mut q_exp = 0i64;
        let mut den = Rational::one();
        for k in 1..n {
            for i in 0..k {
                let t = theta.get(i, k);
                if t == 0 {
                    continue;
                }
                for j in i..k {
                    let tail = |r: usize| -> i64 { (k + 1..n).map(|a| theta.get(r, a) as i64).sum() };
                    let s1 = tail(i) - tail(j + 1);
                    let s2 = tail(i) - tail(j);
                    let b1 = qpow(&q, s1 + 1) * &self.s[j + 1] / &self.s[i];
                    let b2 = qpow(&q, theta.get(j, k) as i64 - t as i64 - s2 + 1) * &self.s[i] / &self.s[j];
                    den *= self.poch(b1, t) * self.poch(b2, t);
                    q_exp += t as i64;
                }
            }
        }
        Self::finish(qpow(&q, q_exp), den, || format!("c_toda at theta = {theta}"))
    }

    /// Last-column quotient in closed form:
    ///
    /// ```text
    /// prod_{i<N} q^{theta_i} / ((q;q)_{theta_i} (q s_N/s_i; q)_{theta_i})
    /// * prod_{i<j<N} q^{theta_i} / ((q s_j/s_i; q)_{theta_i} (q^{theta_j - theta_i + 1} s_i/s_j; q)_{theta_i})
    /// ```
    pub fn d_toda(&mut self, theta: &ThetaVector) -> Result<Rational> {
        let m = theta.len();
        self.check_len(m + 1)?;
        let q = self.q().clone();
        let th = &theta.0;
        let last = self.s[m].clone();
        let mut q_exp = 0i64;
        let mut den = Rational::one();
        for i in 0..m {
            let t = th[i];
            if t == 0 {
                continue;
            }
            q_exp += t as i64;
            den *= self.poch(q.clone(), t) * self.poch(&q * &last / &self.s[i], t);
            for j in i + 1..m {
                q_exp += t as i64;
                let b1 = &q * &self.s[j] / &self.s[i];
                let b2 = qpow(&q, th[j] as i64 - t as i64 + 1) * &self.s[i] / &self.s[j];
                den *= self.poch(b1, t) * self.poch(b2, t);
            }
        }
        Self::finish(qpow(&q, q_exp), den, || format!("d_toda at theta = {theta}"))
    }

    /// Branching coefficient:
    ///
    /// ```text
    /// prod_k q^{(N-k+1) theta_k} / ((q;q)_{theta_k} (q/s_k^2; q)_{theta_k})
    /// * prod_{i<j} 1 / ((q s_j/s_i; q)_{theta_i} (q^{theta_j - theta_i} q s_i/s_j; q)_{theta_i})
    ///     * (q/s_i s_j; q)_{theta_i + theta_j} / ((q/s_i s_j; q)_{theta_i} (q/s_i s_j; q)_{theta_j})
    /// ```
    pub fn e_branch(&mut self, theta: &ThetaVector) -> Result<Rational> {
        let n = theta.len();
        self.check_len(n)?;
        let q = self.q().clone();
        let th = &theta.0;
        let mut q_exp = 0i64;
        let mut num = Rational::one();
        let mut den = Rational::one();
        for k in 0..n {
            let t = th[k];
            if t == 0 {
                continue;
            }
            q_exp += (n - k) as i64 * t as i64;
            let b = &q / (&self.s[k] * &self.s[k]);
            den *= self.poch(q.clone(), t) * self.poch(b, t);
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ti, tj) = (th[i], th[j]);
                if ti > 0 {
                    let b1 = &q * &self.s[j] / &self.s[i];
                    let b2 = qpow(&q, tj as i64 - ti as i64 + 1) * &self.s[i] / &self.s[j];
                    den *= self.poch(b1, ti) * self.poch(b2, ti);
                }
                if ti > 0 && tj > 0 {
                    let b = &q / (&self.s[i] * &self.s[j]);
                    num *= self.poch(b.clone(), ti + tj);
                    den *= self.poch(b.clone(), ti) * self.poch(b, tj);
                }
            }
        }
        Self::finish(qpow(&q, q_exp) * num, den, || format!("e_branch at theta = {theta}"))
    }
}

/// `c_N(theta; s; q)` at a certified point.
pub fn c_toda(theta: &ThetaMatrix, p: &ParamPoint) -> Result<Rational> {
    p.require(theta.degree())?;
    Evaluator::at(p).c_toda(theta)
}

/// `d_N(theta; s; q)` for `theta` of length `N - 1`.
pub fn d_toda(theta: &ThetaVector, p: &ParamPoint) -> Result<Rational> {
    let n = p.n();
    p.require(theta.weighted(|i| (n - 1 - i) as u32))?;
    Evaluator::at(p).d_toda(theta)
}

/// Branching coefficient `e_theta(s|q)` for `theta` of length `N`.
pub fn e_branch(theta: &ThetaVector, p: &ParamPoint) -> Result<Rational> {
    let n = p.n();
    p.require(theta.weighted(|i| (n - i) as u32))?;
    Evaluator::at(p).e_branch(theta)
}

/// `(theta, e_theta)` for every `theta` with `sum_i (N + 1 - i) theta_i <= order`.
pub fn branch_coefficient_table(p: &ParamPoint, order: u32) -> Result<Vec<(ThetaVector, Rational)>> {
    p.require(order)?;
    let n = p.n();
    let mut ev = Evaluator::at(p);
    ThetaVector::enumerate_weighted(n, |i| (n - i) as u32, order)
        .into_iter()
        .map(|t| ev.e_branch(&t).map(|e| (t, e)))
        .collect()
}
