//! The volume of `U(n)` against `det^{-n} ⋀ dz_ij`, computed by induction
//! along the fibration `U(n+1) -> S^{2n+1}`, `g ↦ g a_0`.
//!
//! One induction step has three exact ingredients, each exposed separately:
//!
//! * [`contract_step`]: contracting the top form of `gl_{n+1}` by the lifted
//!   complexified sphere frame leaves `±` the top form of the embedded
//!   `gl_n` block;
//! * [`basis_change_factor`]: the complexified frame `v_0, …, v_{2n}` wedges
//!   to `± i^{n+1}/2^n` times the real frame `b_0, a_1, b_1, …, a_n, b_n`;
//! * [`sphere_surface`]: `vol(S^{2n+1}) = 2 π^{n+1} / n!`.
//!
//! Together they give `C(n+1) = C(n) · i^{n+1} 2^n · 2π^{n+1}/n!`
//! `= C(n) (2πi)^{n+1}/n!`, with `C(1) = 2πi`. All comparisons are up to
//! sign; the concrete signs obtained under the row-major blade order are
//! recorded in the trace.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exterior::{rho, Blade, Form, TangentVector, MAX_N};
use crate::linalg;
use crate::scalars::{ExactScalar, GaussianRational};

/// Largest `n` accepted by [`volume_recursive`] by default.
pub const DEFAULT_RECURSION_MAX_N: usize = 8;
/// Largest ambient size `n + 1` at which the contraction identity is
/// re-derived during the recursion.
pub const DEFAULT_CONTRACTION_CHECK_MAX_AMBIENT: usize = 4;

/// Tangent vectors at the identity of `U(n+1)` lifting a frame of
/// `T_{a_0} S^{2n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFrame {
    pub n: usize,
    /// `A_ν = E_{ν0} - E_{0ν}` for `ν = 1..=n` (index `ν - 1`).
    pub real_a: Vec<TangentVector>,
    /// `B_0 = i E_00`, `B_ν = i E_{ν0} + i E_{0ν}` for `ν = 1..=n`.
    pub real_b: Vec<TangentVector>,
    /// `ṽ_0 = -E_00`, `ṽ_ν = E_{ν0}`, `ṽ_{n+ν} = -E_{0ν}`.
    pub complexified: Vec<TangentVector>,
}

impl LiftFrame {
    /// Whether `A_ν a_0 = a_ν` and `B_ν a_0 = b_ν`, i.e. the first column of
    /// `A_ν` is the real unit vector `e_ν` and that of `B_ν` is `i e_ν`.
    pub fn lifts_sphere_frame(&self) -> bool {
        let m = self.n + 1;
        let unit = |nu: usize, c: GaussianRational| {
            let mut v = alloc::vec![GaussianRational::zero(); m];
            v[nu] = c;
            v
        };
        let a_ok = self
            .real_a
            .iter()
            .enumerate()
            .all(|(k, a)| a.column(0) == unit(k + 1, GaussianRational::one()));
        let b_ok = self
            .real_b
            .iter()
            .enumerate()
            .all(|(nu, b)| b.column(0) == unit(nu, GaussianRational::i()));
        a_ok && b_ok
    }

    /// Whether every lift vector lies in `u(n+1)`, i.e. is anti-Hermitian.
    pub fn real_vectors_are_skew_hermitian(&self) -> bool {
        self.real_a
            .iter()
            .chain(&self.real_b)
            .all(|v| v.adjoint() == v.scale(&GaussianRational::from_integer(-1)))
    }
}

pub fn lift_frame(n: usize) -> Result<LiftFrame> {
    if n == 0 || n + 1 > MAX_N {
        return Err(out_of_range("n", n, "1 <= n <= 7"));
    }
    let m = n + 1;
    let e = |r, c| TangentVector::unit(m, r, c);
    let i = GaussianRational::i();
    let real_a = (1..=n)
        .map(|nu| e(nu, 0).sub(&e(0, nu)))
        .collect::<Result<Vec<_>>>()?;
    let mut real_b = Vec::with_capacity(m);
    real_b.push(e(0, 0).scale(&i));
    for nu in 1..=n {
        real_b.push(e(nu, 0).add(&e(0, nu))?.scale(&i));
    }
    let minus = GaussianRational::from_integer(-1);
    let mut complexified = Vec::with_capacity(2 * n + 1);
    complexified.push(e(0, 0).scale(&minus));
    complexified.extend((1..=n).map(|nu| e(nu, 0)));
    complexified.extend((1..=n).map(|nu| e(0, nu).scale(&minus)));
    Ok(LiftFrame {
        n,
        real_a,
        real_b,
        complexified,
    })
}

/// Image of a complexified tangent vector `M = X + iY` (`X`, `Y` skew
/// Hermitian) in `T_{a_0} R^{2n+2} ⊗ C`, in coordinates
/// `(x_0, y_0, x_1, y_1, …)`.
pub fn sphere_tangent_image(v: &TangentVector) -> Vec<GaussianRational> {
    let half = GaussianRational::ratio(1, 2);
    let adj = v.adjoint();
    let x = v.sub(&adj).expect("same size").scale(&half);
    // Y = (M + M*) / (2i) = -i (M + M*) / 2
    let y = v
        .add(&adj)
        .expect("same size")
        .scale(&(&half * &-GaussianRational::i()));
    let realify = |col: Vec<GaussianRational>| -> Vec<GaussianRational> {
        col.iter()
            .flat_map(|z| {
                [
                    GaussianRational::from_rational(z.re().clone()),
                    GaussianRational::from_rational(z.im().clone()),
                ]
            })
            .collect()
    };
    let px = realify(x.column(0));
    let py = realify(y.column(0));
    px.iter()
        .zip(&py)
        .map(|(a, b)| a + &(&GaussianRational::i() * b))
        .collect()
}

/// Contracts `⋀ dz_ij` on `gl_{n+1}` by the complexified lift vectors
/// `ṽ_0, …, ṽ_{2n}` (applied in that order).
///
/// The result must be `±` the top form of the lower-right `n x n` block;
/// anything else is reported as an identity violation.
pub fn contract_step(n: usize) -> Result<Form> {
    let frame = lift_frame(n)?;
    let mut f = rho(n + 1);
    for v in &frame.complexified {
        f = f.interior(v)?;
    }
    contraction_sign(n, &f)?;
    Ok(f)
}

/// The sign `s` with `contract_step(n) = s · ⋀_{1≤i,j≤n} dz_ij`.
pub fn contraction_sign(n: usize, contracted: &Form) -> Result<i8> {
    let block = Blade::block(n + 1, 1, n);
    let coeff = match contracted.terms().collect::<Vec<_>>().as_slice() {
        [(b, c)] if *b == block => (*c).clone(),
        _ => {
            return Err(Error::IdentityViolation {
                check: "contraction",
                detail: format!("expected ± block generator, got {}", contracted),
            })
        }
    };
    coeff
        .sign_relative_to(&ExactScalar::one())
        .ok_or_else(|| Error::IdentityViolation {
            check: "contraction",
            detail: format!("block coefficient {} is not ±1", coeff),
        })
}

/// `i^{n+1} / 2^n`.
fn expected_basis_change(n: usize) -> GaussianRational {
    let two_pow = BigRational::from_integer(BigInt::from(2).pow(n as u32));
    GaussianRational::i_pow(n as u32 + 1).scale(&two_pow.recip())
}

/// Determinant of the complexified frame `v_0, …, v_{2n}` (images of the
/// lift vectors) in the real basis `b_0, a_1, b_1, …, a_n, b_n`.
///
/// Must equal `± i^{n+1}/2^n`; otherwise an identity violation is returned.
pub fn basis_change_factor(n: usize) -> Result<ExactScalar> {
    let frame = lift_frame(n)?;
    let mut rows = Vec::with_capacity(2 * n + 1);
    for v in &frame.complexified {
        let image = sphere_tangent_image(v);
        if !image[0].is_zero() {
            return Err(Error::IdentityViolation {
                check: "basis_change",
                detail: format!("lift image has a_0 component {}", image[0]),
            });
        }
        // Drop a_0; the rest is (b_0, a_1, b_1, …, a_n, b_n).
        rows.push(image[1..].to_vec());
    }
    let det = linalg::determinant(rows);
    let expected = expected_basis_change(n);
    if det != expected && det != -&expected {
        return Err(Error::IdentityViolation {
            check: "basis_change",
            detail: format!("determinant {} is not ±{}", det, expected),
        });
    }
    Ok(ExactScalar::from(det))
}

/// Surface of the unit sphere `S^{2n+1}`: `2 π^{n+1} / n!`.
pub fn sphere_surface(n: usize) -> ExactScalar {
    let coeff = BigRational::new(BigInt::from(2), factorial(n));
    ExactScalar::monomial(GaussianRational::from_rational(coeff), n as u32 + 1)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `∏_{j=1}^n (j-1)!`.
pub fn superfactorial(n: usize) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, k| acc * factorial(k))
}

/// One induction step `C(n) -> C(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionTrace {
    /// The step goes from `U(n)` to `U(n+1)`.
    pub n: usize,
    /// Contraction of `⋀ dz_ij` on `gl_{n+1}`, when re-derived.
    pub contraction_result: Option<Form>,
    pub contraction_sign: Option<i8>,
    /// Exact determinant `± i^{n+1}/2^n`.
    pub basis_change: ExactScalar,
    /// `s` with `basis_change^{-1} = s · i^{n+1} 2^n`.
    pub basis_change_sign: i8,
    /// `i^{n+1} 2^n`.
    pub step_factor: ExactScalar,
    pub sphere_factor: ExactScalar,
    /// `C(n+1) = C(n) · step_factor · sphere_factor`.
    pub c_value: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeResult {
    pub n: usize,
    pub value: ExactScalar,
    pub trace: Vec<RecursionTrace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursionConfig {
    pub max_n: usize,
    pub contraction_check_max_ambient: usize,
}

impl Default for RecursionConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_RECURSION_MAX_N,
            contraction_check_max_ambient: DEFAULT_CONTRACTION_CHECK_MAX_AMBIENT,
        }
    }
}

pub fn volume_recursive(n: usize) -> Result<VolumeResult> {
    volume_recursive_with(n, &RecursionConfig::default())
}

pub fn volume_recursive_with(n: usize, config: &RecursionConfig) -> Result<VolumeResult> {
    if n == 0 || n > config.max_n.min(MAX_N) {
        return Err(out_of_range(
            "n",
            n,
            "1 <= n <= configured recursion maximum",
        ));
    }
    // Base case: the integral of dz/z over the unit circle.
    let mut c = ExactScalar::two_pi_i_pow(1);
    let mut trace = Vec::with_capacity(n - 1);
    for m in 1..n {
        let (contraction_result, contraction_sign) = if m < config.contraction_check_max_ambient {
            let f = contract_step(m)?;
            let s = contraction_sign(m, &f)?;
            (Some(f), Some(s))
        } else {
            (None, None)
        };

        let basis_change = basis_change_factor(m)?;
        let det = basis_change.as_gaussian().expect("degree-0 determinant");
        let inverse = ExactScalar::from(det.inv()?);
        let two_pow = GaussianRational::from_bigint(BigInt::from(2).pow(m as u32));
        let step_factor = ExactScalar::from(&GaussianRational::i_pow(m as u32 + 1) * &two_pow);
        let basis_change_sign =
            inverse
                .sign_relative_to(&step_factor)
                .ok_or_else(|| Error::IdentityViolation {
                    check: "basis_change",
                    detail: format!("inverse determinant {} is not ±{}", inverse, step_factor),
                })?;

        let sphere_factor = sphere_surface(m);
        c = &(&c * &step_factor) * &sphere_factor;
        trace.push(RecursionTrace {
            n: m,
            contraction_result,
            contraction_sign,
            basis_change,
            basis_change_sign,
            step_factor,
            sphere_factor,
            c_value: c.clone(),
        });
    }
    Ok(VolumeResult { n, value: c, trace })
}

/// `∏_{ν=0}^{n-1} (2πi)^{ν+1} / ν!`.
pub fn volume_closed_form(n: usize) -> ExactScalar {
    let k = (n * (n + 1) / 2) as u32;
    let denom = (0..n).fold(BigInt::one(), |acc, nu| acc * factorial(nu));
    ExactScalar::two_pi_i_pow(k).scale(&GaussianRational::from_rational(BigRational::new(
        BigInt::one(),
        denom,
    )))
}

/// The comparison factor `α` with `(2πi)^{n(n+1)/2} α^{-1} = ∫_{U(n)} ρ`,
/// normalized to be positive.
pub fn derive_alpha(n: usize) -> Result<ExactScalar> {
    if n == 0 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    alpha_from_volume(n, &volume_closed_form(n))
}

/// `α = ± (2πi)^{n(n+1)/2} / volume`, checked to be the positive integer
/// `∏_{j=1}^n (j-1)!` after sign normalization.
pub fn alpha_from_volume(n: usize, volume: &ExactScalar) -> Result<ExactScalar> {
    let violation = |detail| Error::IdentityViolation {
        check: "alpha",
        detail,
    };
    let (deg, coeff) = volume
        .as_monomial()
        .ok_or_else(|| violation(format!("volume {} is not a monomial", volume)))?;
    let k = (n * (n + 1) / 2) as u32;
    let quotient = ExactScalar::two_pi_i_pow(k)
        .div_monomial(coeff, deg)
        .map_err(|e| violation(format!("{}", e)))?;
    let q = quotient
        .as_gaussian()
        .ok_or_else(|| violation(format!("quotient {} still involves π", quotient)))?;
    let r = q
        .as_rational()
        .ok_or_else(|| violation(format!("quotient {} is not real", q)))?;
    let alpha = r.abs();
    if r.is_zero() || !alpha.is_integer() || *alpha.numer() != superfactorial(n) {
        return Err(violation(format!(
            "quotient {} is not ±{}",
            q,
            superfactorial(n)
        )));
    }
    Ok(ExactScalar::from(GaussianRational::from_rational(alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        &GaussianRational::from_integer(re)
            + &(&GaussianRational::i() * &GaussianRational::from_integer(im))
    }

    #[test]
    fn lift_frame_examples() {
        let f = lift_frame(1).unwrap();
        let e = |r, c| TangentVector::unit(2, r, c);
        let minus = GaussianRational::from_integer(-1);
        assert_eq!(
            f.complexified,
            vec![e(0, 0).scale(&minus), e(1, 0), e(0, 1).scale(&minus)]
        );
        assert_eq!(f.real_a[0], e(1, 0).sub(&e(0, 1)).unwrap());

        let g = lift_frame(2).unwrap();
        assert_eq!(
            g.real_b[0],
            TangentVector::unit(3, 0, 0).scale(&GaussianRational::i())
        );
        assert_eq!(lift_frame(0), Err(out_of_range("n", 0, "1 <= n <= 7")));
    }

    #[test]
    fn lift_frame_invariants() {
        for n in 1..=6 {
            let f = lift_frame(n).unwrap();
            assert!(f.lifts_sphere_frame());
            assert!(f.real_vectors_are_skew_hermitian());
            // ṽ_ν = (A_ν - i B_ν)/2 and ṽ_{n+ν} = (A_ν + i B_ν)/2.
            let half = GaussianRational::ratio(1, 2);
            let i = GaussianRational::i();
            for nu in 1..=n {
                let a = &f.real_a[nu - 1];
                let ib = f.real_b[nu].scale(&i);
                assert_eq!(f.complexified[nu], a.sub(&ib).unwrap().scale(&half));
                assert_eq!(f.complexified[n + nu], a.add(&ib).unwrap().scale(&half));
            }
            assert_eq!(f.complexified[0], f.real_b[0].scale(&i));
        }
    }

    #[test]
    fn tangent_images_n1() {
        // v_0 = i b_0, v_1 = (a_1 - i b_1)/2, v_2 = (a_1 + i b_1)/2.
        let f = lift_frame(1).unwrap();
        let half = GaussianRational::ratio(1, 2);
        let z = GaussianRational::zero();
        let i = GaussianRational::i();
        assert_eq!(
            sphere_tangent_image(&f.complexified[0]),
            vec![z.clone(), i.clone(), z.clone(), z.clone()]
        );
        assert_eq!(
            sphere_tangent_image(&f.complexified[1]),
            vec![z.clone(), z.clone(), half.clone(), -(&half * &i)]
        );
        assert_eq!(
            sphere_tangent_image(&f.complexified[2]),
            vec![z.clone(), z, half.clone(), &half * &i]
        );
    }

    #[test]
    fn contract_step_n1_by_hand() {
        // ι_{-E01} ι_{E10} ι_{-E00} (dz00∧dz01∧dz10∧dz11) = ± dz11.
        let f = contract_step(1).unwrap();
        let block = Blade::block(2, 1, 1);
        assert_eq!(f.terms().count(), 1);
        let (b, c) = f.terms().next().unwrap();
        assert_eq!(b, block);
        assert!(c.sign_relative_to(&ExactScalar::one()).is_some());
    }

    #[test]
    fn contract_step_is_block_generator() {
        for n in 1..=3 {
            let f = contract_step(n).unwrap();
            let s = contraction_sign(n, &f).unwrap();
            assert_eq!(
                f,
                Form::from_blade(
                    n + 1,
                    Blade::block(n + 1, 1, n),
                    ExactScalar::integer(s.into())
                )
            );
        }
    }

    #[test]
    fn contraction_sign_rejects_other_forms() {
        let bad = Form::one_form(2, 0, 0);
        assert!(matches!(
            contraction_sign(1, &bad),
            Err(Error::IdentityViolation { .. })
        ));
        let doubled = Form::from_blade(2, Blade::block(2, 1, 1), ExactScalar::integer(2));
        assert!(matches!(
            contraction_sign(1, &doubled),
            Err(Error::IdentityViolation { .. })
        ));
    }

    #[test]
    fn basis_change_examples() {
        let d1 = basis_change_factor(1).unwrap();
        assert!(d1
            .sign_relative_to(&ExactScalar::from(GaussianRational::ratio(1, 2)))
            .is_some());

        let d2 = basis_change_factor(2).unwrap();
        let expected = GaussianRational::ratio(1, 4).scale(&BigRational::one());
        let expected = ExactScalar::from(&expected * &gr(0, -1));
        assert!(d2.sign_relative_to(&expected).is_some());

        for n in 1..=6 {
            let d = basis_change_factor(n).unwrap().as_gaussian().unwrap();
            let four_pow = BigRational::from_integer(BigInt::from(4).pow(n as u32));
            assert_eq!(d.norm_sqr(), four_pow.recip(), "n={n}");
        }
    }

    #[test]
    fn sphere_surface_examples() {
        let two = GaussianRational::from_integer(2);
        assert_eq!(sphere_surface(0), ExactScalar::monomial(two.clone(), 1));
        assert_eq!(sphere_surface(1), ExactScalar::monomial(two, 2));
        assert_eq!(
            sphere_surface(3),
            ExactScalar::monomial(GaussianRational::ratio(1, 3), 4)
        );
    }

    #[test]
    fn volume_examples() {
        assert_eq!(
            volume_recursive(1).unwrap().value,
            ExactScalar::two_pi_i_pow(1)
        );
        let v2 = volume_recursive(2).unwrap();
        assert_eq!(v2.value, ExactScalar::monomial(gr(0, -8), 3));
        assert_eq!(v2.trace.len(), 1);
        let v3 = volume_recursive(3).unwrap().value;
        assert!(v3
            .sign_relative_to(&ExactScalar::monomial(gr(-32, 0), 6))
            .is_some());

        assert_eq!(volume_closed_form(1), ExactScalar::two_pi_i_pow(1));
        assert_eq!(volume_closed_form(2), ExactScalar::monomial(gr(0, -8), 3));
        assert!(matches!(volume_recursive(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(volume_recursive(9), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn trace_composes() {
        let v = volume_recursive(6).unwrap();
        let mut c = ExactScalar::two_pi_i_pow(1);
        for t in &v.trace {
            c = &(&c * &t.step_factor) * &t.sphere_factor;
            assert_eq!(c, t.c_value);
            assert_eq!(t.contraction_result.is_some(), t.n < 4);
        }
        assert_eq!(c, v.value);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(derive_alpha(1).unwrap(), ExactScalar::integer(1));
        assert_eq!(derive_alpha(3).unwrap(), ExactScalar::integer(2));
        assert_eq!(derive_alpha(5).unwrap(), ExactScalar::integer(288));
        assert!(matches!(derive_alpha(0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn alpha_ignores_orientation() {
        for n in 1..=8 {
            let c = volume_closed_form(n);
            assert_eq!(
                alpha_from_volume(n, &c).unwrap(),
                alpha_from_volume(n, &-c).unwrap()
            );
        }
    }

    #[test]
    fn alpha_rejects_wrong_volume() {
        let wrong = volume_closed_form(3).scale(&GaussianRational::from_integer(3));
        assert!(matches!(
            alpha_from_volume(3, &wrong),
            Err(Error::IdentityViolation { .. })
        ));
        let off_degree = &volume_closed_form(2) * &ExactScalar::pi_pow(1);
        assert!(matches!(
            alpha_from_volume(2, &off_degree),
            Err(Error::IdentityViolation { .. })
        ));
    }
}
