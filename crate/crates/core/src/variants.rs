//! Switches between alternative forms of formulas where only one form agrees
//! with the brute-force oracle. Defaults are the variants
//! that the oracle confirms; the alternatives exist for the arbitration report.

/// Evaluation point of the squeezed-family normalization kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormPoint {
    /// `(-1)^m ∂_X^m (X² - C²)^{-1/2}` at `X = 1 - B`.
    #[default]
    OneMinusB,
    /// `∂_v^m (v² - C²)^{-1/2}` at `v = B`.
    B,
}

/// Ordering shift in the output photon-subtracted thermal P_κ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PstsOutputShift {
    /// `(κ - 1)/2`
    #[default]
    KappaMinusOne,
    /// `(κ + 1)/2`
    KappaPlusOne,
}

/// Expansion point of the output photon-subtracted thermal PND generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PstsPndPoint {
    /// `u = -1`
    #[default]
    MinusOne,
    /// `u = 0`
    Zero,
}

/// Expansion point in `u` of the photon-added squeezed PND generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PastsPndPoint {
    /// `u = 0`
    #[default]
    Zero,
    /// `u = 1`
    One,
}

/// Assignment of the exponent coefficients in the output photon-subtracted
/// squeezed characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsstsOutputExponent {
    /// `A1 γ*² + A2 γ² - (A3 + s - (κ-1)/2)|γ|²`
    #[default]
    Consistent,
    /// `N3 γ*² + N2 γ² - (N1 - (κ-1)/2)|γ|²` with `N1 = C/(2D)`, `N3 = A3 + s`
    Swapped,
}
