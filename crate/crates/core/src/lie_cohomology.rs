//! The Chevalley–Eilenberg complex `(⋀* gl_n^*, d)`.
//!
//! With `e^γ` the one-form dual to the matrix unit `E_γ`, the differential on
//! generators is `d e^γ = -Σ_{α<β} f^γ_{αβ} e^α ∧ e^β`, where `f` are the
//! structure constants of the commutator bracket, extended to all forms as
//! an antiderivation. All coefficients are integers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{out_of_range, Error, Result};
use crate::exterior::{Blade, CoordIndex, Form, TangentVector, MAX_N};
use crate::linalg;
use crate::scalars::ExactScalar;

/// Largest `n` for which full Betti tables are computed by default.
pub const DEFAULT_BETTI_MAX_N: usize = 3;
/// Hard ceiling for enumerating the whole complex (`2^{n^2}` blades).
pub const FULL_COMPLEX_HARD_MAX_N: usize = 4;
/// Largest `n` for degree-local operations such as [`top_integrality`].
pub const DEFAULT_LOCAL_MAX_N: usize = 4;

/// The matrix commutator `ab - ba`.
pub fn bracket(a: &TangentVector, b: &TangentVector) -> Result<TangentVector> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// `d e^γ` for every generator `γ`, as integer combinations of 2-blades.
#[derive(Clone, Debug)]
pub struct StructureTable {
    n: usize,
    generators: Vec<Vec<(Blade, i64)>>,
}

impl StructureTable {
    pub fn new(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n = {} outside 1..={}", n, MAX_N);
        let k = n * n;
        let mut acc: Vec<BTreeMap<Blade, i64>> = vec![BTreeMap::new(); k];
        for alpha in 0..k {
            let CoordIndex { row: i, col: j } = CoordIndex::from_position(alpha, n);
            for beta in alpha + 1..k {
                let CoordIndex { row: a, col: b } = CoordIndex::from_position(beta, n);
                let pair = Blade::from_positions([alpha, beta]);
                // [E_ij, E_ab] = δ_ja E_ib - δ_bi E_aj
                if j == a {
                    *acc[CoordIndex::new(i, b).position(n)]
                        .entry(pair)
                        .or_insert(0) -= 1;
                }
                if b == i {
                    *acc[CoordIndex::new(a, j).position(n)]
                        .entry(pair)
                        .or_insert(0) += 1;
                }
            }
        }
        let generators = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| *c != 0).collect())
            .collect();
        Self { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d e^γ` for the generator at position `gamma`.
    pub fn generator(&self, gamma: usize) -> &[(Blade, i64)] {
        &self.generators[gamma]
    }

    /// `d` of a single basis blade.
    pub fn differential_on_blade(&self, blade: Blade) -> BTreeMap<Blade, i64> {
        let mut out = BTreeMap::new();
        let mut prefix = Blade::EMPTY;
        for (r, p) in blade.positions().enumerate() {
            let below_or_at = if p == 63 { u64::MAX } else { (2u64 << p) - 1 };
            let suffix = Blade::from_bits(blade.bits() & !below_or_at);
            let sign_r: i64 = if r % 2 == 0 { 1 } else { -1 };
            for (pair, c) in &self.generators[p] {
                let Some((s1, pq)) = prefix.wedge(*pair) else {
                    continue;
                };
                let Some((s2, full)) = pq.wedge(suffix) else {
                    continue;
                };
                *out.entry(full).or_insert(0) += sign_r * i64::from(s1 * s2) * c;
            }
            prefix = Blade::from_bits(prefix.bits() | (1u64 << p));
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn differential(&self, f: &Form) -> Result<Form> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: f.n(),
                right: self.n,
            });
        }
        let mut out = Form::zero(self.n);
        for (blade, c) in f.terms() {
            for (b, k) in self.differential_on_blade(blade) {
                out = out.add(&Form::from_blade(self.n, b, c * &ExactScalar::integer(k)))?;
            }
        }
        Ok(out)
    }
}

/// The Chevalley–Eilenberg differential of `f`.
pub fn ce_differential(f: &Form) -> Form {
    StructureTable::new(f.n())
        .differential(f)
        .expect("table built for the form's own n")
}

/// Graded bases and integer differential matrices of the complex.
#[derive(Clone, Debug)]
pub struct CEComplex {
    n: usize,
    bases: Vec<Vec<Blade>>,
    /// `differentials[k]` maps degree `k` to degree `k + 1`; rows index the
    /// target basis, columns the source basis.
    differentials: Vec<Vec<Vec<i64>>>,
}

impl CEComplex {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_limit(n, DEFAULT_BETTI_MAX_N)
    }

    pub fn build_with_limit(n: usize, max_n: usize) -> Result<Self> {
        if n == 0 || n > max_n.min(FULL_COMPLEX_HARD_MAX_N) {
            return Err(out_of_range("n", n, "1 <= n <= configured Betti maximum"));
        }
        let k = n * n;
        let mut bases = vec![Vec::new(); k + 1];
        for bits in 0u64..(1u64 << k) {
            bases[bits.count_ones() as usize].push(Blade::from_bits(bits));
        }
        for b in &mut bases {
            b.sort();
        }
        let table = StructureTable::new(n);
        let mut differentials = Vec::with_capacity(k);
        for deg in 0..k {
            let target = &bases[deg + 1];
            let index: BTreeMap<Blade, usize> =
                target.iter().enumerate().map(|(i, b)| (*b, i)).collect();
            let mut m = vec![vec![0i64; bases[deg].len()]; target.len()];
            for (col, blade) in bases[deg].iter().enumerate() {
                for (b, c) in table.differential_on_blade(*blade) {
                    m[index[&b]][col] = c;
                }
            }
            differentials.push(m);
        }
        Ok(Self {
            n,
            bases,
            differentials,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self, degree: usize) -> &[Blade] {
        &self.bases[degree]
    }

    /// Matrix of `d: degree -> degree + 1`, or `None` for the top degree.
    pub fn differential(&self, degree: usize) -> Option<&[Vec<i64>]> {
        self.differentials.get(degree).map(Vec::as_slice)
    }

    /// Checks `d_{k+1} ∘ d_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| {
            let (d0, d1) = (&w[0], &w[1]);
            let inner = d0.len();
            let cols = d0.first().map_or(0, Vec::len);
            d1.iter().all(|row| {
                (0..cols).all(|c| (0..inner).map(|i| row[i] * d0[i][c]).sum::<i64>() == 0)
            })
        })
    }

    pub fn rank(&self, degree: usize) -> usize {
        match self.differentials.get(degree) {
            Some(m) => linalg::rank(to_big(m)),
            None => 0,
        }
    }

    pub fn betti(&self) -> BettiTable {
        let top = self.n * self.n;
        let ranks: Vec<usize> = (0..=top).map(|k| self.rank(k)).collect();
        let betti = (0..=top)
            .map(|k| {
                let below = if k == 0 { 0 } else { ranks[k - 1] };
                self.bases[k].len() - ranks[k] - below
            })
            .collect();
        BettiTable { n: self.n, betti }
    }

    /// Free rank and torsion of `H^k(gl_n, Z)` for every `k`.
    #[cfg(feature = "smith")]
    pub fn integral_cohomology(&self) -> Vec<IntegralGroup> {
        let top = self.n * self.n;
        let factors: Vec<Vec<BigInt>> = (0..top)
            .map(|k| linalg::invariant_factors(to_big(&self.differentials[k])))
            .collect();
        (0..=top)
            .map(|k| {
                let out_rank = if k < top { factors[k].len() } else { 0 };
                let (in_rank, torsion) = if k == 0 {
                    (0, Vec::new())
                } else {
                    let f = &factors[k - 1];
                    let one = BigInt::from(1);
                    (f.len(), f.iter().filter(|v| **v != one).cloned().collect())
                };
                IntegralGroup {
                    rank: self.bases[k].len() - out_rank - in_rank,
                    torsion,
                }
            })
            .collect()
    }
}

/// `Z^rank ⊕ ⊕ Z/t` for `t` in `torsion`.
#[cfg(feature = "smith")]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub n: usize,
    pub betti: Vec<usize>,
}

impl BettiTable {
    /// `b_k == b_{n^2 - k}` for all `k`.
    pub fn is_symmetric(&self) -> bool {
        self.betti.iter().eq(self.betti.iter().rev())
    }
}

/// Betti numbers of `gl_n` over the rationals (default size limit).
pub fn betti(n: usize) -> Result<BettiTable> {
    Ok(CEComplex::build(n)?.betti())
}

/// Coefficients of `∏_{j=1}^n (1 + t^{2j-1})`.
pub fn expected_poincare(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for j in 1..=n {
        let shift = 2 * j - 1;
        let mut next = vec![0u64; poly.len() + shift];
        for (k, c) in poly.iter().enumerate() {
            next[k] += c;
            next[k + shift] += c;
        }
        poly = next;
    }
    poly
}

/// Whether `d` vanishes on every form of degree `n^2 - 1`, so that the top
/// cohomology is the full lattice spanned by `⋀ dz_ij`.
pub fn top_integrality(n: usize) -> Result<bool> {
    top_integrality_with_limit(n, DEFAULT_LOCAL_MAX_N)
}

pub fn top_integrality_with_limit(n: usize, max_n: usize) -> Result<bool> {
    if n == 0 || n > max_n.min(MAX_N) {
        return Err(out_of_range("n", n, "1 <= n <= configured local maximum"));
    }
    let table = StructureTable::new(n);
    let full = Blade::full(n);
    Ok(full
        .positions()
        .map(|p| Blade::from_bits(full.bits() & !(1u64 << p)))
        .all(|b| table.differential_on_blade(b).is_empty()))
}
