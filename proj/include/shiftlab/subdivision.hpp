#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "shiftlab/laurent.hpp"

namespace shiftlab {

/// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Refinement mask: a Laurent symbol in the Sum2 normalization (coefficient
/// sum within 1e-10 of 2, enforced at construction).  Coefficients may be
/// complex; real-ness is a reported property, not a constraint, because
/// schedules built from non-conjugate-closed spectra are legitimately
/// complex-valued.
class Mask {
public:
    explicit Mask(LaurentPolynomial symbol);

    /// Builds from either normalization; Unit input is doubled to Sum2.
    static Mask from(LaurentPolynomial symbol, Normalization conv);

    const LaurentPolynomial& symbol() const { return symbol_; }
    /// The Unit-normalized symbol (coefficients halved); the form consumed by
    /// Fourier-side products.
    LaurentPolynomial unit_symbol() const { return scale(symbol_, 0.5); }

    std::int64_t lo() const { return symbol_.lo(); }
    std::int64_t hi() const { return symbol_.hi(); }

    /// True when every imaginary part is below tol * max |coeff|.
    bool is_real(double tol = 1e-14) const;

private:
    LaurentPolynomial symbol_;
};

/// Tail rule: all levels beyond the head repeat the last head mask.
struct RepeatLastTail {};

/// Tail rule: the level-j mask beyond the head is the normalized product
/// prod_lambda (z + e^{-lambda 2^{-(j+level_offset)}})^{mult+1} over the
/// listed (lambda, mult) pairs; see exponential_mask().  level_offset is an
/// experimentation knob for the level-indexing convention; 0 is standard.
struct ExponentialTail {
    std::vector<std::pair<cplx, int>> lambdas;  ///< (lambda, multiplicity >= 0)
    int level_offset = 0;
};

using TailRule = std::variant<RepeatLastTail, ExponentialTail>;

/// Level-indexed mask sequence: explicit head masks for levels 1..head_size()
/// plus a tail rule supplying every later level.
class MaskSchedule {
public:
    explicit MaskSchedule(std::vector<Mask> head, TailRule tail = RepeatLastTail{});

    int head_size() const { return static_cast<int>(head_.size()); }
    const std::vector<Mask>& head() const { return head_; }
    const TailRule& tail() const { return tail_; }

    /// Mask applied at refinement level `level` (1-based).
    Mask mask_at(int level) const;

    /// True when the tail repeats and all head masks coincide.
    bool is_stationary() const;

private:
    std::vector<Mask> head_;
    TailRule tail_;
};

/// The level-j mask prod (z + e^{-lambda 2^{-(j+offset)}})^{mult+1}, shifted
/// to exponents [-ceil(D/2), D - ceil(D/2)] for total degree D = sum(mult+1)
/// and normalized to coefficient sum 2.  Throws std::domain_error when some
/// factor vanishes at z = 1 (degenerate lambda for this level).
Mask exponential_mask(const std::vector<std::pair<cplx, int>>& lambdas, int level, int level_offset = 0);

/// Data on the dyadic grid 2^{-level} Z: values[i] sits at t = (lo + i) 2^{-level}.
struct SampledFunction {
    int level = 0;
    std::int64_t lo = 0;
    std::vector<cplx> values;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(values.size()) - 1; }
    double step() const;
    double t(std::size_t i) const;
    /// Value at grid index k, zero outside the stored window.
    cplx at_index(std::int64_t k) const;
    double max_abs() const;
};

/// Kronecker delta at 0 on the integer grid.
SampledFunction delta();

/// One refinement step (S_a c)_k = sum_m a_{k-2m} c_m.  The output window is
/// the full convolution support [2 c.lo + a.lo, 2 c.hi + a.hi] and the output
/// level is c.level + 1.
SampledFunction subdivide_step(const Mask& mask, const SampledFunction& c);

/// Applies `levels` refinement steps, drawing the mask for each step from the
/// schedule at level start.level + i (i = 1..levels).
SampledFunction run(const MaskSchedule& schedule, SampledFunction start, int levels);

/// Cascade from the delta start: level-r samples of the scheme's basic limit,
/// trimmed to the support_bound interval.
SampledFunction basic_limit(const MaskSchedule& schedule, int levels);

/// Support interval [sum_j 2^{-j} lo_j, sum_j 2^{-j} hi_j] of the basic
/// limit, with the tail beyond the head summed in closed form.
Interval support_bound(const MaskSchedule& schedule);

/// High-accuracy basic-limit samples on the coarse grid 2^{-grid_level} Z
/// restricted to `window`: internally refines to `refine_level` but prunes
/// the cascade to the backward dependency set of the requested points, so the
/// cost is O(levels * points * mask_span^2) instead of O(2^refine_level).
/// Deep refinement matters because level-r cascade data carries an O(2^{-r})
/// drift against the limit for non-interpolatory schemes.
SampledFunction limit_samples(const MaskSchedule& schedule, int grid_level, Interval window,
                              int refine_level = 32);

/// ceil(sum of interval lengths): upper bound for the dimension of the space
/// of analytic elements spanned by generators with the given supports.
std::int64_t dimension_bound(const std::vector<Interval>& supports);

}  // namespace shiftlab
