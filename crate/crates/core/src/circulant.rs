//! Right and left circulant matrices: dense construction, spectra over the
//! n-th roots of unity, and determinants by eigenvalue product or by exact
//! fraction-free elimination.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::GaussInt;
use crate::ComplexF;

mod refine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Each row is the previous one rotated one place to the right.
    Right,
    /// Each row is the previous one rotated one place to the left.
    Left,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Right => "right",
            Orientation::Left => "left",
        })
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "r" => Ok(Orientation::Right),
            "left" | "l" => Ok(Orientation::Left),
            other => Err(format!(
                "unknown orientation '{other}' (expected right or left)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Product of the DFT eigenvalues.
    Spectral,
    /// Bareiss elimination over Z[i].
    Exact,
}

/// A scalar from either arithmetic domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Exact(GaussInt),
    Float(FloatScalar),
}

/// JSON form of a [`ComplexF`]: `{"re": <number>, "im": <number>}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloatScalar {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexF> for FloatScalar {
    fn from(c: ComplexF) -> Self {
        FloatScalar { re: c.re, im: c.im }
    }
}

impl From<FloatScalar> for ComplexF {
    fn from(c: FloatScalar) -> Self {
        ComplexF::new(c.re, c.im)
    }
}

impl Scalar {
    pub fn float(c: ComplexF) -> Self {
        Scalar::Float(c.into())
    }

    pub fn to_complex(&self) -> ComplexF {
        match self {
            Scalar::Exact(g) => g.to_complex(),
            Scalar::Float(c) => (*c).into(),
        }
    }

    pub fn as_exact(&self) -> Option<&GaussInt> {
        match self {
            Scalar::Exact(g) => Some(g),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::Float(c) => Scalar::Float(FloatScalar {
                re: c.re,
                im: -c.im,
            }),
        }
    }
}

impl From<GaussInt> for Scalar {
    fn from(g: GaussInt) -> Self {
        Scalar::Exact(g)
    }
}

impl From<ComplexF> for Scalar {
    fn from(c: ComplexF) -> Self {
        Scalar::float(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => g.fmt(f),
            Scalar::Float(c) => {
                if c.im < 0.0 || (c.im == 0.0 && c.im.is_sign_negative()) {
                    write!(f, "{}-{}i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}

/// Entry type of a circulant first row.
pub trait CirculantScalar: Clone + fmt::Debug {
    fn to_complex(&self) -> ComplexF;
    /// `Some` only for entries that live in Z[i].
    fn as_gauss(&self) -> Option<&GaussInt>;
}

impl CirculantScalar for GaussInt {
    fn to_complex(&self) -> ComplexF {
        GaussInt::to_complex(self)
    }

    fn as_gauss(&self) -> Option<&GaussInt> {
        Some(self)
    }
}

impl CirculantScalar for ComplexF {
    fn to_complex(&self) -> ComplexF {
        *self
    }

    fn as_gauss(&self) -> Option<&GaussInt> {
        None
    }
}

/// A circulant matrix described by its first row; the matrix itself is only
/// materialized on request.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpec<T> {
    first_row: Vec<T>,
    orientation: Orientation,
}

impl<T: CirculantScalar> CirculantSpec<T> {
    pub fn new(first_row: Vec<T>, orientation: Orientation) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::EmptyRow);
        }
        Ok(CirculantSpec {
            first_row,
            orientation,
        })
    }

    pub fn right(first_row: Vec<T>) -> Result<Self> {
        Self::new(first_row, Orientation::Right)
    }

    pub fn left(first_row: Vec<T>) -> Result<Self> {
        Self::new(first_row, Orientation::Left)
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[T] {
        &self.first_row
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Same first row, other orientation.
    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        CirculantSpec {
            first_row: self.first_row.clone(),
            orientation,
        }
    }

    fn complex_row(&self) -> Vec<ComplexF> {
        self.first_row
            .iter()
            .map(CirculantScalar::to_complex)
            .collect()
    }
}

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        DenseMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

/// Materializes the circulant matrix.
///
/// Right: entry `(r, c)` is `a[(c - r) mod n]`. Left: entry `(r, c)` is
/// `a[(c + r) mod n]`.
pub fn build_dense<T: CirculantScalar>(spec: &CirculantSpec<T>) -> DenseMatrix<T> {
    let n = spec.n();
    let a = spec.first_row();
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let k = match spec.orientation() {
                Orientation::Right => (c + n - r) % n,
                Orientation::Left => (c + r) % n,
            };
            entries.push(a[k].clone());
        }
    }
    DenseMatrix { n, entries }
}

/// `e^{2πi·j/n}`, exact at multiples of a quarter turn.
pub fn root_of_unity(j: usize, n: usize) -> ComplexF {
    let j = j % n;
    if (4 * j).is_multiple_of(n) {
        return match 4 * j / n {
            0 => ComplexF::new(1.0, 0.0),
            1 => ComplexF::new(0.0, 1.0),
            2 => ComplexF::new(-1.0, 0.0),
            _ => ComplexF::new(0.0, -1.0),
        };
    }
    let (s, c) = (std::f64::consts::TAU * j as f64 / n as f64).sin_cos();
    ComplexF::new(c, s)
}

/// Eigenvalues `λ_0 .. λ_{n-1}` of a right circulant matrix, in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<ComplexF>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Product of the eigenvalues, multiplied in ascending index order.
    ///
    /// Partial products carry a separate power-of-two exponent so that
    /// intermediate overflow cannot turn a finite determinant into inf or NaN.
    /// Power-of-two rescaling is exact, so whenever the plain left-to-right
    /// product stays in range the two results agree bit for bit.
    pub fn product(&self) -> Result<ComplexF> {
        let mut mantissa = ComplexF::new(1.0, 0.0);
        let mut exponent: i64 = 0;
        for v in &self.values {
            if v.is_zero() {
                return Ok(ComplexF::zero());
            }
            let (vm, ve) = split_exponent(*v);
            let (m, e) = split_exponent(mantissa * vm);
            mantissa = m;
            exponent += ve + e;
        }
        let re = ldexp(mantissa.re, exponent);
        let im = ldexp(mantissa.im, exponent);
        if re.is_finite() && im.is_finite() {
            Ok(ComplexF::new(re, im))
        } else {
            Err(Error::NonFiniteResult)
        }
    }
}

// Writes v = m·2^e with max(|m.re|, |m.im|) in [1, 2).
fn split_exponent(v: ComplexF) -> (ComplexF, i64) {
    let mag = v.re.abs().max(v.im.abs());
    if mag == 0.0 {
        return (v, 0);
    }
    let mut e = mag.log2().floor() as i64;
    let mut m = ComplexF::new(ldexp(v.re, -e), ldexp(v.im, -e));
    // log2 may be off by one near powers of two
    let mm = m.re.abs().max(m.im.abs());
    if mm >= 2.0 {
        m = m.unscale(2.0);
        e += 1;
    } else if mm < 1.0 {
        m = m.scale(2.0);
        e -= 1;
    }
    (m, e)
}

// x·2^e, applied in exact power-of-two steps.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    const STEP: i64 = 1000;
    while e != 0 && x != 0.0 && x.is_finite() {
        let k = e.clamp(-STEP, STEP);
        x *= f64::from_bits(((k + 1023) as u64) << 52);
        e -= k;
    }
    x
}

/// How eigenvalues of a floating row are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// One double-precision pass, `O(n²)` flops.
    Double,
    /// A double-precision pass, then fixed-point re-evaluation of every
    /// eigenvalue whose error bound exceeds about 2^-52 of its magnitude,
    /// doubling the working precision up to `max_bits`.
    Refined { max_bits: u32 },
}

pub const DEFAULT_MAX_BITS: u32 = 1024;

impl Default for Precision {
    fn default() -> Self {
        Precision::Refined {
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// `λ_m = Σ_k a_k ω^{km}` with `ω = e^{2πi/n}`, for `m = 0 .. n-1`.
///
/// The exponent `k·m` is reduced mod n before any angle is evaluated.
/// Uses [`Precision::default`]; see [`eigenvalues_dft_with`].
pub fn eigenvalues_dft(first_row: &[ComplexF]) -> Result<Spectrum> {
    eigenvalues_dft_with(first_row, Precision::default())
}

pub fn eigenvalues_dft_with(first_row: &[ComplexF], precision: Precision) -> Result<Spectrum> {
    if first_row.is_empty() {
        return Err(Error::EmptyRow);
    }
    if let Some(index) = first_row
        .iter()
        .position(|a| !(a.re.is_finite() && a.im.is_finite()))
    {
        return Err(Error::NonFiniteInput { index });
    }
    let n = first_row.len();
    let roots: Vec<ComplexF> = (0..n).map(|j| root_of_unity(j, n)).collect();
    let mut values: Vec<ComplexF> = (0..n)
        .map(|m| {
            let mut acc = ComplexF::zero();
            for (k, a) in first_row.iter().enumerate() {
                acc += a * roots[(k * m) % n];
            }
            acc
        })
        .collect();
    if let Precision::Refined { max_bits } = precision {
        let l1: f64 = first_row.iter().map(|a| a.re.abs() + a.im.abs()).sum();
        let bound = 4.0 * (n as f64 + 4.0) * f64::EPSILON * l1;
        let targets: Vec<usize> = (0..n)
            .filter(|&m| bound > refine::REL_TARGET * values[m].norm())
            .collect();
        if !targets.is_empty() {
            let estimates: Vec<ComplexF> = targets.iter().map(|&m| values[m]).collect();
            let refined = refine::refine(first_row, &targets, &estimates, l1, max_bits);
            for (m, v) in targets.into_iter().zip(refined) {
                values[m] = v;
            }
        }
    }
    if values
        .iter()
        .any(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFiniteResult);
    }
    Ok(Spectrum { values })
}

/// Determinant of the right circulant matrix as the product of its eigenvalues.
pub fn det_via_eigen(first_row: &[ComplexF]) -> Result<ComplexF> {
    eigenvalues_dft(first_row)?.product()
}

pub fn det_via_eigen_with(first_row: &[ComplexF], precision: Precision) -> Result<ComplexF> {
    eigenvalues_dft_with(first_row, precision)?.product()
}

/// Exact determinant by fraction-free (Bareiss) elimination over Z[i].
///
/// A zero pivot is replaced by the first nonzero entry below it (flipping the
/// sign); a column with no nonzero pivot means the determinant is 0.
pub fn det_bareiss(m: &DenseMatrix<GaussInt>) -> Result<GaussInt> {
    let n = m.n();
    if n == 0 {
        return Ok(GaussInt::one());
    }
    let mut a: Vec<Vec<GaussInt>> = m.rows().map(<[GaussInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = GaussInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(GaussInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * pivot) - &(&lead * &pivot_row[j]);
                row[j] = num.exact_div(&prev)?;
            }
            row[k] = GaussInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `(-1)^⌊(n-1)/2⌋`: the determinant of the permutation taking a right
/// circulant matrix to the left circulant matrix with the same first row.
pub fn exchange_factor(n: usize) -> i32 {
    assert!(n >= 1, "exchange_factor needs n >= 1");
    if ((n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Determinant of the circulant matrix by the chosen method.
///
/// Left circulants are reduced to the right circulant with the same first row
/// via [`exchange_factor`]. See [`det_exact_direct`] for elimination on the
/// left matrix itself.
pub fn det<T: CirculantScalar>(spec: &CirculantSpec<T>, method: Method) -> Result<Scalar> {
    let sign = exchange_factor(spec.n());
    match method {
        Method::Spectral => {
            let d = det_via_eigen(&spec.complex_row())?;
            let d = match spec.orientation() {
                Orientation::Left if sign < 0 => -d,
                _ => d,
            };
            Ok(Scalar::float(d))
        }
        Method::Exact => {
            let row = exact_row(spec)?;
            let right = CirculantSpec {
                first_row: row,
                orientation: Orientation::Right,
            };
            let d = det_bareiss(&build_dense(&right))?;
            let d = match spec.orientation() {
                Orientation::Left if sign < 0 => -d,
                _ => d,
            };
            Ok(Scalar::Exact(d))
        }
    }
}

/// Bareiss elimination on the matrix exactly as oriented, without the
/// left/right reduction.
pub fn det_exact_direct<T: CirculantScalar>(spec: &CirculantSpec<T>) -> Result<GaussInt> {
    let row = exact_row(spec)?;
    let exact = CirculantSpec {
        first_row: row,
        orientation: spec.orientation(),
    };
    det_bareiss(&build_dense(&exact))
}

fn exact_row<T: CirculantScalar>(spec: &CirculantSpec<T>) -> Result<Vec<GaussInt>> {
    spec.first_row()
        .iter()
        .map(|a| a.as_gauss().cloned().ok_or(Error::DomainMismatch))
        .collect()
}

/// Complex power by repeated squaring; no logarithms, so no branch cuts.
pub fn complex_powu(base: ComplexF, mut exp: u64) -> ComplexF {
    let mut result = Complex::new(1.0, 0.0);
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= b;
        }
        exp >>= 1;
        if exp > 0 {
            b = b * b;
        }
    }
    result
}
