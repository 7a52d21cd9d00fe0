#include "shiftlab/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

namespace {

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

LaurentPolynomial::LaurentPolynomial() : coeffs_{cplx(0.0)}, lo_(0), zero_(true) {}

LaurentPolynomial::LaurentPolynomial(std::vector<cplx> coeffs, std::int64_t lo)
    : coeffs_(std::move(coeffs)), lo_(lo), zero_(false) {
    if (coeffs_.empty()) {
        *this = LaurentPolynomial();
        return;
    }
    const double thr = kCoeffTrimRel * max_abs(coeffs_);
    std::size_t first = 0, last = coeffs_.size();
    while (first < last && std::abs(coeffs_[first]) <= thr) ++first;
    while (last > first && std::abs(coeffs_[last - 1]) <= thr) --last;
    if (first == last) {
        *this = LaurentPolynomial();
        return;
    }
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
        lo_ += static_cast<std::int64_t>(first);
    }
}

LaurentPolynomial LaurentPolynomial::monomial(cplx c, std::int64_t exponent) {
    return LaurentPolynomial({c}, exponent);
}

cplx LaurentPolynomial::coeff(std::int64_t m) const {
    if (m < lo() || m > hi()) return cplx(0.0);
    return coeffs_[static_cast<std::size_t>(m - lo_)];
}

double LaurentPolynomial::max_abs_coeff() const { return max_abs(coeffs_); }

cplx LaurentPolynomial::coeff_sum() const {
    cplx s(0.0);
    for (const cplx& c : coeffs_) s += c;
    return s;
}

cplx eval_z(const LaurentPolynomial& p, cplx z) {
    if (p.is_zero()) return cplx(0.0);
    if (z == cplx(0.0)) {
        if (p.lo() < 0) throw std::domain_error("eval_z: z = 0 with negative exponents present");
        return p.coeff(0);
    }
    // Horner over ascending exponents, then the monomial prefactor z^lo.
    cplx acc(0.0);
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    std::int64_t e = p.lo();
    cplx prefix(1.0);
    cplx base = (e < 0) ? cplx(1.0) / z : z;
    std::uint64_t n = static_cast<std::uint64_t>(e < 0 ? -e : e);
    while (n > 0) {
        if (n & 1u) prefix *= base;
        base *= base;
        n >>= 1u;
    }
    return acc * prefix;
}

cplx eval_trig(const LaurentPolynomial& p, cplx y, Normalization conv) {
    const cplx z = std::exp(cplx(0.0, -kTwoPi) * y);
    const cplx v = eval_z(p, z);
    return conv == Normalization::Sum2 ? 0.5 * v : v;
}

LaurentPolynomial derivative_trig(const LaurentPolynomial& p, int order) {
    if (order < 0) throw std::invalid_argument("derivative_trig: negative order");
    if (order == 0) return p;
    std::vector<cplx> out(p.coeffs());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto m = static_cast<double>(p.lo() + static_cast<std::int64_t>(i));
        cplx factor(1.0);
        const cplx step = cplx(0.0, -kTwoPi * m);
        for (int k = 0; k < order; ++k) factor *= step;
        out[i] *= factor;
    }
    return LaurentPolynomial(std::move(out), p.lo());
}

LaurentPolynomial derivative_z(const LaurentPolynomial& p) {
    if (p.is_zero()) return LaurentPolynomial();
    std::vector<cplx> out(p.coeffs());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= static_cast<double>(p.lo() + static_cast<std::int64_t>(i));
    }
    return LaurentPolynomial(std::move(out), p.lo() - 1);
}

LaurentPolynomial mul(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPolynomial();
    std::vector<cplx> out(a.coeffs().size() + b.coeffs().size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            out[i + j] += a.coeffs()[i] * b.coeffs()[j];
        }
    }
    return LaurentPolynomial(std::move(out), a.lo() + b.lo());
}

LaurentPolynomial add(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t lo = std::min(a.lo(), b.lo());
    const std::int64_t hi = std::max(a.hi(), b.hi());
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0));
    for (std::int64_t m = a.lo(); m <= a.hi(); ++m) out[static_cast<std::size_t>(m - lo)] += a.coeff(m);
    for (std::int64_t m = b.lo(); m <= b.hi(); ++m) out[static_cast<std::size_t>(m - lo)] += b.coeff(m);
    return LaurentPolynomial(std::move(out), lo);
}

LaurentPolynomial scale(const LaurentPolynomial& a, cplx c) {
    if (a.is_zero() || c == cplx(0.0)) return LaurentPolynomial();
    std::vector<cplx> out(a.coeffs());
    for (cplx& v : out) v *= c;
    return LaurentPolynomial(std::move(out), a.lo());
}

LagrangeBound lagrange_bound(const LaurentPolynomial& p, const std::vector<double>& points) {
    if (points.empty()) throw std::invalid_argument("lagrange_bound: no points");
    const int N = static_cast<int>(points.size()) - 1;
    if (!p.is_zero() && (p.lo() < 0 || p.hi() > N)) {
        throw std::invalid_argument("lagrange_bound: exponents outside [0, N]");
    }
    for (double y : points) {
        if (!(y >= 0.0 && y < 1.0)) throw std::invalid_argument("lagrange_bound: points must lie in [0,1)");
    }

    LagrangeBound out;
    out.min_gap = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            // Distance on the torus: the symbol arguments live on the unit
            // circle, where 0.001 and 0.999 are close neighbours.
            const double d = std::abs(points[i] - points[j]);
            out.min_gap = std::min(out.min_gap, std::min(d, 1.0 - d));
        }
    }
    if (points.size() > 1 && out.min_gap == 0.0) {
        throw std::invalid_argument("lagrange_bound: points must be pairwise distinct");
    }

    constexpr int kGrid = 4096;
    for (int g = 0; g < kGrid; ++g) {
        const double y = static_cast<double>(g) / kGrid;
        out.sup_norm = std::max(out.sup_norm, std::abs(eval_trig(p, y, Normalization::Unit)));
    }
    for (double y : points) {
        out.max_at_points = std::max(out.max_at_points, std::abs(eval_trig(p, y, Normalization::Unit)));
    }

    // |a(y) - a(y_g)| <= ||a'||_inf * h/2 <= pi N h ||a||_inf for grid step h,
    // so the sampled maximum underestimates ||a||_inf by at most this factor.
    const double bern = (kTwoPi / 2.0) * N / kGrid;
    out.grid_slack = (bern < 1.0) ? bern / (1.0 - bern) : 1.0;

    out.lhs = out.sup_norm * std::pow(out.min_gap, N);
    out.rhs = std::ldexp(static_cast<double>(N + 1), -N) * out.max_at_points;
    out.holds = out.lhs <= out.rhs * (1.0 + out.grid_slack) + 1e-300;
    return out;
}

}  // namespace shiftlab
