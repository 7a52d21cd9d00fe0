#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace shiftlab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Coefficients whose modulus falls below this fraction of the largest
/// coefficient are treated as exact zeros when trimming products and sums.
inline constexpr double kCoeffTrimRel = 1e-14;

/// Normalization attached to a raw coefficient sequence.
///
/// Sum2:  coefficients sum to 2 — the refinement-rule convention, where one
///        subdivision step distributes each value over two finer cells.
/// Unit:  value 1 at frequency zero — the convention consumed by infinite
///        Fourier-side products.
///
/// Converting Sum2 -> Unit divides the coefficients by 2.
enum class Normalization { Sum2, Unit };

/// Finite Laurent polynomial p(z) = sum_{m=lo}^{hi} c_{m-lo} z^m with complex
/// coefficients.  Always stored trimmed: the first and last coefficients are
/// non-negligible unless the polynomial is identically zero, which is stored
/// as the single coefficient 0 at exponent 0.
class LaurentPolynomial {
public:
    /// Zero polynomial.
    LaurentPolynomial();

    /// Coefficients c[0..n-1] attached to exponents lo..lo+n-1.  Trims
    /// negligible leading/trailing entries (relative threshold kCoeffTrimRel).
    LaurentPolynomial(std::vector<cplx> coeffs, std::int64_t lo);

    static LaurentPolynomial monomial(cplx c, std::int64_t exponent);

    bool is_zero() const { return zero_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    /// hi() - lo(); the degree spread of the symbol.
    std::int64_t span() const { return hi() - lo(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    /// Coefficient at exponent m (zero outside the stored window).
    cplx coeff(std::int64_t m) const;

    double max_abs_coeff() const;

    /// Sum of all coefficients, i.e. the value at z = 1.
    cplx coeff_sum() const;

private:
    std::vector<cplx> coeffs_;
    std::int64_t lo_;
    bool zero_;
};

/// Evaluate p at z.  z = 0 is allowed only when no negative exponents are
/// present (throws std::domain_error otherwise).
cplx eval_z(const LaurentPolynomial& p, cplx z);

/// Evaluate the trigonometric form a(y) = scale * p(e^{-2 pi i y}), where
/// `conv` names the normalization the stored coefficients are in and the
/// result is always reported in the Unit view (scale = 1/2 for Sum2 input).
/// y may be complex; the symbol is entire in y.
cplx eval_trig(const LaurentPolynomial& p, cplx y, Normalization conv);

/// Coefficient sequence of d^order/dy^order of a(y) = sum c_m e^{-2 pi i m y}:
/// coefficient m is multiplied by (-2 pi i m)^order.  The result is a raw
/// trigonometric polynomial; evaluate it with Normalization::Unit.
LaurentPolynomial derivative_trig(const LaurentPolynomial& p, int order);

/// d/dz of p as a Laurent polynomial.
LaurentPolynomial derivative_z(const LaurentPolynomial& p);

LaurentPolynomial mul(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial add(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial scale(const LaurentPolynomial& a, cplx c);

/// Result of the interpolation-type sup-norm bound
///   ||a||_inf * (min pairwise gap)^N  <=  2^{-N} (N+1) max_m |a(y_m)|
/// for a trigonometric polynomial with exponents in [0, N] and N+1 pairwise
/// distinct points y_m in [0,1).
struct LagrangeBound {
    double lhs = 0.0;             ///< sup-norm estimate times gap^N
    double rhs = 0.0;             ///< 2^{-N} (N+1) max point value
    double sup_norm = 0.0;        ///< dense-grid estimate of ||a||_inf
    double max_at_points = 0.0;   ///< max_m |a(y_m)|
    double min_gap = 0.0;         ///< min pairwise circular distance of the y_m (1 when N = 0)
    double grid_slack = 0.0;      ///< relative sampling error allowance
    bool holds = false;           ///< lhs <= rhs * (1 + grid_slack)
};

/// Checks the bound above.  `points` supplies the N+1 evaluation points
/// (N = points.size() - 1); p must have exponents within [0, N] and the
/// points must be pairwise distinct members of [0,1), else
/// std::invalid_argument.  The sup norm is estimated on a dense uniform grid;
/// grid_slack accounts for the sampling error via the derivative bound
/// ||a'||_inf <= 2 pi N ||a||_inf.
LagrangeBound lagrange_bound(const LaurentPolynomial& p, const std::vector<double>& points);

}  // namespace shiftlab
