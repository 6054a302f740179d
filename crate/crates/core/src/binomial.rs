//! The binomial-related circulant family.
//!
//! `c_n(z)` is the coefficient list of `(x + z·y)^{n-1}`:
//! entry `k` is `C(n-1, k)·z^k`. Its right circulant has eigenvalues
//! `(1 + z·ω^m)^{n-1}`, and for the four units `z ∈ {1, -1, i, -i}` the
//! determinants of both the right and the left circulant have closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::circulant::{
    self, complex_powu, root_of_unity, CirculantScalar, CirculantSpec, Method, Orientation, Scalar,
};
use crate::error::{Error, Result};
use crate::exact_arith::GaussInt;
use crate::ComplexF;

/// Relative tolerance of [`conjugation_check`].
pub const CONJUGATION_RTOL: f64 = 1e-8;

/// Scalars that can serve as `z`.
pub trait BinomialScalar: CirculantScalar {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn scale_int(&self, k: &BigInt) -> Self;
}

impl BinomialScalar for GaussInt {
    fn one() -> Self {
        GaussInt::one()
    }

    fn is_zero(&self) -> bool {
        GaussInt::is_zero(self)
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(k)
    }
}

impl BinomialScalar for ComplexF {
    fn one() -> Self {
        ComplexF::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(k.to_f64().unwrap_or(f64::INFINITY))
    }
}

/// `C(m, 0), C(m, 1), .., C(m, m)` from `C(m, k) = C(m, k-1)·(m-k+1)/k`.
pub fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 1..=m {
        c = c * BigInt::from(m - k + 1) / BigInt::from(k);
        row.push(c.clone());
    }
    row
}

/// The first row `c_n(z)`.
pub fn coeff_vector<T: BinomialScalar>(n: usize, z: &T) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::EmptyRow);
    }
    if z.is_zero() {
        return Err(Error::ZeroZ);
    }
    let mut power = T::one();
    let mut out = Vec::with_capacity(n);
    for (k, c) in binomial_row(n - 1).iter().enumerate() {
        if k > 0 {
            power = power.mul(z);
        }
        out.push(power.scale_int(c));
    }
    Ok(out)
}

/// `λ_m = (1 + z·e^{2mπi/n})^{n-1}`, the power taken by repeated squaring.
pub fn binomial_eigenvalue(n: usize, z: ComplexF, m: usize) -> Result<ComplexF> {
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, n });
    }
    let base = ComplexF::new(1.0, 0.0) + z * root_of_unity(m, n);
    Ok(complex_powu(base, (n - 1) as u64))
}

/// `(2i·cos(2mπ/n))^{n-1}`, which equals `λ_m·λ_{n-m}` for `z = i`.
pub fn pair_product(n: usize, m: usize) -> Result<ComplexF> {
    if m == 0 || m >= n {
        return Err(Error::IndexOutOfRange { index: m, n });
    }
    let cos = root_of_unity(m, n).re;
    Ok(complex_powu(ComplexF::new(0.0, 2.0 * cos), (n - 1) as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinomialFamilyParams {
    pub n: usize,
    pub z: Scalar,
    pub orientation: Orientation,
}

impl BinomialFamilyParams {
    pub fn new(n: usize, z: impl Into<Scalar>, orientation: Orientation) -> Self {
        BinomialFamilyParams {
            n,
            z: z.into(),
            orientation,
        }
    }
}

/// Which closed-form case produced a [`ClosedFormResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Mod0,
    Mod1,
    Mod2,
    Mod3,
    ZOne,
    ZMinusOne,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormResult {
    pub value: GaussInt,
    pub case_tag: CaseTag,
}

/// The four Gaussian units, the only `z` with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitZ {
    One,
    MinusOne,
    I,
    MinusI,
}

impl UnitZ {
    pub const ALL: [UnitZ; 4] = [UnitZ::One, UnitZ::MinusOne, UnitZ::I, UnitZ::MinusI];

    pub fn to_gauss(self) -> GaussInt {
        match self {
            UnitZ::One => GaussInt::new(1, 0),
            UnitZ::MinusOne => GaussInt::new(-1, 0),
            UnitZ::I => GaussInt::new(0, 1),
            UnitZ::MinusI => GaussInt::new(0, -1),
        }
    }

    pub fn conj(self) -> UnitZ {
        match self {
            UnitZ::I => UnitZ::MinusI,
            UnitZ::MinusI => UnitZ::I,
            other => other,
        }
    }

    /// Recognizes a unit in either domain; floats must be exactly ±1 or ±i.
    pub fn from_scalar(z: &Scalar) -> Result<UnitZ> {
        if z.is_zero() {
            return Err(Error::ZeroZ);
        }
        let c = z.to_complex();
        let unit = match z {
            Scalar::Exact(g) if !g.is_unit() => None,
            _ => match (c.re, c.im) {
                (r, i) if r == 1.0 && i == 0.0 => Some(UnitZ::One),
                (r, i) if r == -1.0 && i == 0.0 => Some(UnitZ::MinusOne),
                (r, i) if r == 0.0 && i == 1.0 => Some(UnitZ::I),
                (r, i) if r == 0.0 && i == -1.0 => Some(UnitZ::MinusI),
                _ => None,
            },
        };
        unit.ok_or_else(|| Error::UnsupportedZ(z.to_string()))
    }
}

impl fmt::Display for UnitZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitZ::One => "1",
            UnitZ::MinusOne => "-1",
            UnitZ::I => "i",
            UnitZ::MinusI => "-i",
        })
    }
}

fn two_pow(e: usize) -> GaussInt {
    GaussInt::real(BigInt::one() << e)
}

fn neg_one_pow(e: usize) -> GaussInt {
    GaussInt::real(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// Closed-form determinant of `rcir(c_n(z))` or `lcir(c_n(z))` for a unit `z`.
///
/// Both orientations are written out case by case rather than derived from
/// each other. `n = 1` always gives 1.
pub fn closed_form_det(params: &BinomialFamilyParams) -> Result<ClosedFormResult> {
    let n = params.n;
    if n == 0 {
        return Err(Error::EmptyRow);
    }
    let z = UnitZ::from_scalar(&params.z)?;
    let case_tag = match z {
        UnitZ::One => CaseTag::ZOne,
        UnitZ::MinusOne => CaseTag::ZMinusOne,
        UnitZ::I | UnitZ::MinusI => match n % 4 {
            0 => CaseTag::Mod0,
            1 => CaseTag::Mod1,
            2 => CaseTag::Mod2,
            _ => CaseTag::Mod3,
        },
    };
    if n == 1 {
        return Ok(ClosedFormResult {
            value: GaussInt::one(),
            case_tag,
        });
    }

    let two_i = GaussInt::new(0, 2);
    let half = (n - 1) / 2;
    let floor_sign = neg_one_pow((n - 1) / 2);
    // (1 + (-1)^{n-1})·2^{n-2}
    let z_one = &(&GaussInt::one() + &neg_one_pow(n - 1)) * &two_pow(n - 2);

    let value = match (params.orientation, z) {
        (_, UnitZ::MinusOne) => GaussInt::zero(),
        (Orientation::Right, UnitZ::One) => z_one,
        (Orientation::Left, UnitZ::One) => &floor_sign * &z_one,
        (Orientation::Right, UnitZ::I) => match case_tag {
            CaseTag::Mod1 => two_i.pow(half as u64),
            CaseTag::Mod2 => two_pow(n - 1),
            CaseTag::Mod3 => -two_i.pow(half as u64),
            _ => GaussInt::zero(),
        },
        (Orientation::Right, UnitZ::MinusI) | (Orientation::Left, UnitZ::I) => match case_tag {
            CaseTag::Mod1 | CaseTag::Mod3 => two_i.pow(half as u64),
            CaseTag::Mod2 => two_pow(n - 1),
            _ => GaussInt::zero(),
        },
        (Orientation::Left, UnitZ::MinusI) => match case_tag {
            CaseTag::Mod1 | CaseTag::Mod3 => &neg_one_pow(half) * &two_i.pow(half as u64),
            CaseTag::Mod2 => two_pow(n - 1),
            _ => GaussInt::zero(),
        },
    };
    Ok(ClosedFormResult { value, case_tag })
}

/// `c_n(z)` as a circulant spec with exact entries. `z` must be a Gaussian integer.
pub fn exact_spec(params: &BinomialFamilyParams) -> Result<CirculantSpec<GaussInt>> {
    let z = params.z.as_exact().ok_or(Error::DomainMismatch)?;
    CirculantSpec::new(coeff_vector(params.n, z)?, params.orientation)
}

/// `c_n(z)` in double precision. Gaussian-integer `z` is expanded exactly and
/// rounded once per entry.
pub fn float_row(n: usize, z: &Scalar) -> Result<Vec<ComplexF>> {
    match z {
        Scalar::Exact(g) => Ok(coeff_vector(n, g)?
            .iter()
            .map(GaussInt::to_complex)
            .collect()),
        Scalar::Float(c) => coeff_vector(n, &ComplexF::from(*c)),
    }
}

/// Determinant of the family member by the given general-purpose method.
pub fn family_det(params: &BinomialFamilyParams, method: Method) -> Result<Scalar> {
    match method {
        Method::Exact => circulant::det(&exact_spec(params)?, Method::Exact),
        Method::Spectral => {
            let spec = CirculantSpec::new(float_row(params.n, &params.z)?, params.orientation)?;
            circulant::det(&spec, Method::Spectral)
        }
    }
}

/// Numeric check that `det(c_n(conj z)) = conj(det(c_n(z)))` in both
/// orientations, at relative tolerance [`CONJUGATION_RTOL`].
pub fn conjugation_check(n: usize, z: ComplexF) -> Result<bool> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroZ);
    }
    for orientation in [Orientation::Right, Orientation::Left] {
        let direct = CirculantSpec::new(coeff_vector(n, &z)?, orientation)?;
        let conjugated = CirculantSpec::new(coeff_vector(n, &z.conj())?, orientation)?;
        let direct = circulant::det(&direct, Method::Spectral)?.to_complex();
        let conjugated = circulant::det(&conjugated, Method::Spectral)?.to_complex();
        if !relative_close(conjugated, direct.conj(), CONJUGATION_RTOL) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `det(rcir(c_n(-i))) = det(lcir(c_n(i)))` and
/// `det(rcir(c_n(i))) = det(lcir(c_n(-i)))`, exactly, on closed forms.
pub fn cross_identity_check(n: usize) -> Result<bool> {
    let cf = |z: UnitZ, o: Orientation| {
        closed_form_det(&BinomialFamilyParams::new(n, z.to_gauss(), o)).map(|r| r.value)
    };
    Ok(
        cf(UnitZ::MinusI, Orientation::Right)? == cf(UnitZ::I, Orientation::Left)?
            && cf(UnitZ::I, Orientation::Right)? == cf(UnitZ::MinusI, Orientation::Left)?,
    )
}

/// `|a - b| / max(1, |b|) <= rtol`.
pub fn relative_close(a: ComplexF, b: ComplexF, rtol: f64) -> bool {
    (a - b).norm() <= rtol * b.norm().max(1.0)
}
