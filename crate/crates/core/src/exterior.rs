//! Sparse exterior algebra on the coordinate one-forms `dz_ij` of `gl_n`.
//!
//! A [`Blade`] is a bitset over the `n^2` coordinate positions, linearized
//! row-major (`row * n + col`). It denotes the wedge of its members in
//! increasing position order; every sign reported by this crate is relative
//! to that order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{out_of_range, Error, Result};
use crate::scalars::{ExactScalar, GaussianRational};

/// Largest `n` whose `n^2` coordinates fit in a blade bitset.
pub const MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordIndex {
    pub row: usize,
    pub col: usize,
}

impl CoordIndex {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn position(self, n: usize) -> usize {
        self.row * n + self.col
    }

    pub fn from_position(pos: usize, n: usize) -> Self {
        Self::new(pos / n, pos % n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn single(pos: usize) -> Self {
        Self(1 << pos)
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        Self(positions.into_iter().fold(0, |acc, p| acc | (1 << p)))
    }

    /// All `n^2` positions.
    pub fn full(n: usize) -> Self {
        let k = n * n;
        if k == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << k) - 1)
        }
    }

    /// The `size x size` block of an `n x n` matrix starting at `(start, start)`.
    pub fn block(n: usize, start: usize, size: usize) -> Self {
        Self::from_positions(
            (start..start + size).flat_map(|r| {
                (start..start + size).map(move |c| CoordIndex::new(r, c).position(n))
            }),
        )
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, pos: usize) -> bool {
        self.0 >> pos & 1 == 1
    }

    /// Member positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p)
        })
    }

    pub fn coords(self, n: usize) -> impl Iterator<Item = CoordIndex> {
        self.positions()
            .map(move |p| CoordIndex::from_position(p, n))
    }

    /// Number of members strictly below `pos`.
    fn rank_below(self, pos: usize) -> u32 {
        (self.0 & ((1u64 << pos) - 1)).count_ones()
    }

    /// `self ∧ other` as a sign and blade, or `None` if they share a member.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each member q of `other` must move past the members of `self`
        // above it.
        let mut swaps = 0u32;
        for q in other.positions() {
            swaps += self.degree() as u32 - self.rank_below(q);
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// Removes `pos`, returning the contraction sign `(-1)^r` where `r` is
    /// the rank of `pos` within the blade.
    pub fn remove(self, pos: usize) -> Option<(i8, Blade)> {
        if !self.contains(pos) {
            return None;
        }
        let sign = if self.rank_below(pos).is_multiple_of(2) {
            1
        } else {
            -1
        };
        Some((sign, Blade(self.0 & !(1u64 << pos))))
    }
}

/// An `n x n` matrix over `Q(i)`: a complexified tangent vector of `GL_n`
/// at the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangentVector {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl TangentVector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: alloc::vec![GaussianRational::zero(); n * n],
        }
    }

    /// The matrix unit `E_{row,col}`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut v = Self::zero(n);
        v.entries[row * n + col] = GaussianRational::one();
        v
    }

    /// Row-major entries. Panics if `entries.len() != n * n`.
    pub fn from_entries(n: usize, entries: Vec<GaussianRational>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussianRational) {
        self.entries[row * self.n + col] = value;
    }

    pub fn entry(&self, pos: usize) -> &GaussianRational {
        &self.entries[pos]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, q: &GaussianRational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * q).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * other.get(k, j);
                    out.entries[i * n + j] = &out.entries[i * n + j] + &t;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// Column `col` as a vector of length `n`.
    pub fn column(&self, col: usize) -> Vec<GaussianRational> {
        (0..self.n).map(|r| self.get(r, col).clone()).collect()
    }
}

/// A sparse element of the exterior algebra over the `n^2` one-forms `dz_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Blade, ExactScalar>,
}

impl Form {
    /// Panics unless `1 <= n <= MAX_N`.
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n = {} outside 1..={}", n, MAX_N);
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_blade(n: usize, blade: Blade, coeff: ExactScalar) -> Self {
        let mut f = Self::zero(n);
        f.add_term(blade, &coeff);
        f
    }

    /// The one-form `dz_{row,col}`.
    pub fn one_form(n: usize, row: usize, col: usize) -> Self {
        Self::from_blade(
            n,
            Blade::single(CoordIndex::new(row, col).position(n)),
            ExactScalar::one(),
        )
    }

    /// The constant function `c`.
    pub fn constant(n: usize, c: ExactScalar) -> Self {
        Self::from_blade(n, Blade::EMPTY, c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &ExactScalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: Blade) -> ExactScalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&blade) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, sum);
        }
    }

    /// `Some(k)` if every term has degree `k`. The zero form reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Whether every term has degree `k` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.degree() == k)
    }

    fn check_same(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_same(other.n)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(*b, &(c * s));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_same(other.n)?;
        let mut out = Form::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, blade)) = a.wedge(*b) {
                    let c = ca * cb;
                    out.add_term(blade, &if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Contraction `ι_v`: lowers degree by one, alternating over the members
    /// of each blade.
    pub fn interior(&self, v: &TangentVector) -> Result<Form> {
        self.check_same(v.n())?;
        let mut out = Form::zero(self.n);
        for (blade, c) in &self.terms {
            for p in blade.positions() {
                let vp = v.entry(p);
                if vp.is_zero() {
                    continue;
                }
                let (sign, rest) = blade.remove(p).expect("member position");
                let mut term = c.scale(vp);
                if sign < 0 {
                    term = -term;
                }
                out.add_term(rest, &term);
            }
        }
        Ok(out)
    }

    /// `f(frame[0], ..., frame[k-1])`, computed as `ι_{frame[k-1]} ∘ … ∘ ι_{frame[0]} f`.
    pub fn evaluate(&self, frame: &[TangentVector]) -> Result<ExactScalar> {
        if !self.is_homogeneous_of(frame.len()) {
            return Err(Error::DegreeMismatch {
                expected: frame.len(),
            });
        }
        let mut f = self.clone();
        for v in frame {
            f = f.interior(v)?;
        }
        Ok(f.coefficient(Blade::EMPTY))
    }

    /// Coefficient of the full `n^2` blade, i.e. relative to [`rho`].
    pub fn top_coefficient(&self) -> ExactScalar {
        self.coefficient(Blade::full(self.n))
    }

    /// Coefficient of the full blade in `self ∧ other` without forming the
    /// whole product.
    pub fn top_coefficient_of_wedge(&self, other: &Form) -> Result<ExactScalar> {
        self.check_same(other.n)?;
        let full = Blade::full(self.n);
        let mut acc = ExactScalar::zero();
        for (a, ca) in &self.terms {
            let complement = Blade::from_bits(full.bits() & !a.bits());
            if let Some(cb) = other.terms.get(&complement) {
                let (sign, _) = a.wedge(complement).expect("disjoint");
                let c = ca * cb;
                acc += &if sign < 0 { -c } else { c };
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (blade, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for (j, ix) in blade.coords(self.n).enumerate() {
                write!(
                    f,
                    "{}dz{}{}",
                    if j == 0 { "·" } else { "∧" },
                    ix.row,
                    ix.col
                )?;
            }
        }
        Ok(())
    }
}

/// The canonical top-degree generator `⋀ dz_ij` (row-major order) of
/// `⋀^{n^2} gl_n^*`, i.e. `det^{-n} ⋀ dz_ij` at the identity.
pub fn rho(n: usize) -> Form {
    Form::from_blade(n, Blade::full(n), ExactScalar::one())
}

/// `tr(dZ^{∧(2j-1)})`: the sum over index cycles `a_1 → a_2 → … → a_1` of
/// `dz_{a_1 a_2} ∧ dz_{a_2 a_3} ∧ … ∧ dz_{a_{2j-1} a_1}`.
pub fn trace_form(j: usize, n: usize) -> Result<Form> {
    if j == 0 || j > n {
        return Err(out_of_range("j", j, "1 <= j <= n"));
    }
    let len = 2 * j - 1;
    let mut coeffs: BTreeMap<Blade, i64> = BTreeMap::new();
    for start in 0..n {
        walk(n, len, start, start, 1, Blade::EMPTY, 1, &mut coeffs);
    }
    let mut out = Form::zero(n);
    for (b, c) in coeffs {
        out.add_term(b, &ExactScalar::integer(c));
    }
    Ok(out)
}

// Depth-first enumeration of closed index walks with distinct edges.
#[allow(clippy::too_many_arguments)]
fn walk(
    n: usize,
    len: usize,
    start: usize,
    current: usize,
    step: usize,
    blade: Blade,
    sign: i8,
    out: &mut BTreeMap<Blade, i64>,
) {
    let next_choices = if step == len { start..start + 1 } else { 0..n };
    for next in next_choices {
        let pos = CoordIndex::new(current, next).position(n);
        let Some((s, b)) = blade.wedge(Blade::single(pos)) else {
            continue;
        };
        let sign = sign * s;
        if step == len {
            *out.entry(b).or_insert(0) += i64::from(sign);
        } else {
            walk(n, len, start, next, step + 1, b, sign, out);
        }
    }
}

/// `trace_form(1, n) ∧ trace_form(2, n) ∧ … ∧ trace_form(n, n)`, which has
/// degree `1 + 3 + … + (2n-1) = n^2`; returns its top coefficient.
pub fn trace_wedge_top(n: usize) -> Result<ExactScalar> {
    if n == 0 || n > MAX_N {
        return Err(out_of_range("n", n, "1 <= n <= 8"));
    }
    let mut acc = Form::constant(n, ExactScalar::one());
    for j in 1..n {
        acc = acc.wedge(&trace_form(j, n)?)?;
    }
    acc.top_coefficient_of_wedge(&trace_form(n, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn dz(n: usize, r: usize, c: usize) -> Form {
        Form::one_form(n, r, c)
    }

    fn int(v: i64) -> ExactScalar {
        ExactScalar::integer(v)
    }

    #[test]
    fn wedge_examples() {
        assert!(dz(2, 0, 0).wedge(&dz(2, 0, 0)).unwrap().is_zero());

        let lhs = dz(2, 0, 1).wedge(&dz(2, 0, 0)).unwrap();
        let rhs = dz(2, 0, 0).wedge(&dz(2, 0, 1)).unwrap().neg();
        assert_eq!(lhs, rhs);

        let t1 = dz(2, 0, 0).add(&dz(2, 1, 1)).unwrap();
        let t2 = Form::from_blade(2, Blade::from_positions([0, 1, 2]), int(3))
            .add(&Form::from_blade(
                2,
                Blade::from_positions([1, 2, 3]),
                int(-3),
            ))
            .unwrap();
        let w = t1.wedge(&t2).unwrap();
        assert_eq!(w, Form::from_blade(2, Blade::full(2), int(-6)));
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert_eq!(
            dz(2, 0, 0).wedge(&dz(3, 0, 0)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn interior_examples() {
        let e00 = TangentVector::unit(2, 0, 0);
        let e01 = TangentVector::unit(2, 0, 1);
        assert_eq!(
            dz(2, 0, 0).interior(&e00).unwrap(),
            Form::constant(2, int(1))
        );
        assert!(dz(2, 1, 1).interior(&e00).unwrap().is_zero());
        let f = dz(2, 0, 0).wedge(&dz(2, 0, 1)).unwrap();
        assert_eq!(f.interior(&e01).unwrap(), dz(2, 0, 0).neg());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            rho(1).evaluate(&[TangentVector::unit(1, 0, 0)]).unwrap(),
            int(1)
        );

        let basis: Vec<_> = (0..2)
            .flat_map(|r| (0..2).map(move |c| TangentVector::unit(2, r, c)))
            .collect();
        assert_eq!(rho(2).evaluate(&basis).unwrap(), int(1));

        let f = dz(2, 0, 0).wedge(&dz(2, 0, 1)).unwrap();
        let frame = [TangentVector::unit(2, 0, 1), TangentVector::unit(2, 0, 0)];
        assert_eq!(f.evaluate(&frame).unwrap(), int(-1));

        assert_eq!(
            f.evaluate(&frame[..1]),
            Err(Error::DegreeMismatch { expected: 1 })
        );
    }

    #[test]
    fn rho_canonical_basis_is_unit() {
        for n in 1..=3 {
            let basis: Vec<_> = (0..n)
                .flat_map(|r| (0..n).map(move |c| TangentVector::unit(n, r, c)))
                .collect();
            assert_eq!(rho(n).evaluate(&basis).unwrap(), int(1));
        }
        assert_eq!(rho(1), dz(1, 0, 0));
    }

    #[test]
    fn trace_form_examples() {
        let t = trace_form(1, 3).unwrap();
        let expected = dz(3, 0, 0)
            .add(&dz(3, 1, 1))
            .unwrap()
            .add(&dz(3, 2, 2))
            .unwrap();
        assert_eq!(t, expected);

        let t2 = trace_form(2, 2).unwrap();
        let expected = Form::from_blade(2, Blade::from_positions([0, 1, 2]), int(3))
            .add(&Form::from_blade(
                2,
                Blade::from_positions([1, 2, 3]),
                int(-3),
            ))
            .unwrap();
        assert_eq!(t2, expected);

        assert!(matches!(trace_form(2, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(trace_form(0, 2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn trace_form_degrees() {
        for n in 1..=3 {
            for j in 1..=n {
                let t = trace_form(j, n).unwrap();
                assert!(!t.is_zero());
                assert_eq!(t.degree(), Some(2 * j - 1));
            }
        }
    }

    #[test]
    fn top_coefficient_examples() {
        assert_eq!(rho(3).top_coefficient(), int(1));
        assert!(dz(2, 0, 0).top_coefficient().is_zero());
        let w = trace_form(1, 2)
            .unwrap()
            .wedge(&trace_form(2, 2).unwrap())
            .unwrap();
        assert_eq!(w.top_coefficient(), int(-6));
        assert_eq!(trace_wedge_top(1).unwrap(), int(1));
        assert_eq!(trace_wedge_top(2).unwrap(), int(-6));
    }

    #[test]
    fn block_blade() {
        let b = Blade::block(3, 1, 2);
        let coords: Vec<_> = b.coords(3).map(|c| (c.row, c.col)).collect();
        assert_eq!(coords, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }

    fn arb_form(n: usize, max_terms: usize) -> impl Strategy<Value = Form> {
        let k = n * n;
        proptest::collection::vec((0u64..(1u64 << k), -3i64..=3), 0..=max_terms).prop_map(
            move |terms| {
                let mut f = Form::zero(n);
                for (bits, c) in terms {
                    f.add_term(Blade::from_bits(bits), &ExactScalar::integer(c));
                }
                f
            },
        )
    }

    fn arb_homogeneous(n: usize, deg: usize) -> impl Strategy<Value = Form> {
        let positions: Vec<usize> = (0..n * n).collect();
        proptest::collection::vec(
            (proptest::sample::subsequence(positions, deg), -3i64..=3),
            0..=4,
        )
        .prop_map(move |terms| {
            let mut f = Form::zero(n);
            for (ps, c) in terms {
                f.add_term(Blade::from_positions(ps), &ExactScalar::integer(c));
            }
            f
        })
    }

    fn arb_vector(n: usize) -> impl Strategy<Value = TangentVector> {
        proptest::collection::vec((-2i64..=2, -2i64..=2), n * n).prop_map(move |e| {
            let entries = e
                .into_iter()
                .map(|(re, im)| {
                    &GaussianRational::from_integer(re)
                        + &(&GaussianRational::i() * &GaussianRational::from_integer(im))
                })
                .collect();
            TangentVector::from_entries(n, entries)
        })
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(
            (f, g, df, dg) in (1usize..=3)
                .prop_flat_map(|n| (Just(n), 0..=(n * n).min(4), 0..=(n * n).min(4)))
                .prop_flat_map(|(n, df, dg)| {
                    (arb_homogeneous(n, df), arb_homogeneous(n, dg), Just(df), Just(dg))
                })
        ) {
            let lhs = f.wedge(&g).unwrap();
            let rhs = g.wedge(&f).unwrap();
            let rhs = if (df * dg) % 2 == 1 { rhs.neg() } else { rhs };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn wedge_associative(f in arb_form(3, 4), g in arb_form(3, 4), h in arb_form(3, 4)) {
            prop_assert_eq!(
                f.wedge(&g).unwrap().wedge(&h).unwrap(),
                f.wedge(&g.wedge(&h).unwrap()).unwrap()
            );
        }

        #[test]
        fn interior_is_antiderivation(
            f in arb_homogeneous(3, 3),
            g in arb_form(3, 4),
            v in arb_vector(3),
        ) {
            let lhs = f.wedge(&g).unwrap().interior(&v).unwrap();
            let a = f.interior(&v).unwrap().wedge(&g).unwrap();
            let b = f.wedge(&g.interior(&v).unwrap()).unwrap().neg();
            prop_assert_eq!(lhs, a.add(&b).unwrap());
        }

        #[test]
        fn interior_squares_to_zero(f in arb_form(3, 6), v in arb_vector(3)) {
            prop_assert!(f.interior(&v).unwrap().interior(&v).unwrap().is_zero());
        }

        #[test]
        fn evaluate_alternates(
            f in arb_homogeneous(2, 3),
            frame in proptest::collection::vec(arb_vector(2), 3),
        ) {
            let a = f.evaluate(&frame).unwrap();
            let swapped = [frame[1].clone(), frame[0].clone(), frame[2].clone()];
            prop_assert_eq!(f.evaluate(&swapped).unwrap(), -a);
        }
    }
}
