//! Determinants of circulant matrices built from the coefficients of
//! `(x + z·y)^{n-1}`.
//!
//! Three independent routes are provided and meant to be cross-checked:
//! closed forms for `z ∈ {1, -1, i, -i}` ([`binomial::closed_form_det`]),
//! the product of the DFT spectrum ([`circulant::det_via_eigen`]), and exact
//! Bareiss elimination over the Gaussian integers ([`circulant::det_bareiss`]).

pub mod binomial;
pub mod circulant;
pub mod error;
pub mod exact_arith;
pub mod trig;

/// Double-precision complex scalar of the numeric path.
pub type ComplexF = num_complex::Complex64;

pub use binomial::{
    closed_form_det, coeff_vector, BinomialFamilyParams, CaseTag, ClosedFormResult, UnitZ,
};
pub use circulant::{
    build_dense, det, det_bareiss, det_exact_direct, det_via_eigen, det_via_eigen_with,
    eigenvalues_dft, eigenvalues_dft_with, exchange_factor, CirculantSpec, DenseMatrix, Method,
    Orientation, Precision, Scalar, Spectrum,
};
pub use error::{Error, Result};
pub use exact_arith::GaussInt;
