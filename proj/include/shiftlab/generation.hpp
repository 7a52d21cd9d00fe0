#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shiftlab/fourier.hpp"
#include "shiftlab/subdivision.hpp"

namespace shiftlab {

/// Finite-dimensional space span{ t^a e^{lambda t} : (lambda, mult) in
/// spectrum, 0 <= a <= mult } of exponential polynomials.  Spectrum points
/// must be pairwise distinct modulo 2 pi i (distance >= 1e-8), else
/// std::invalid_argument.
struct ExponentialSpace {
    std::vector<std::pair<cplx, int>> spectrum;  ///< (lambda, multiplicity >= 0)

    explicit ExponentialSpace(std::vector<std::pair<cplx, int>> points);
    int dim() const;
};

struct ZeroConditionRow {
    int level = 0;
    std::vector<bool> zero_ok;          ///< per derivative order 0..d
    std::vector<double> zero_residual;  ///< |D^k a(-e^{-lambda 2^{-j}})| / max|coeff|
    bool nondegenerate = false;         ///< all D^k a(+e^{-lambda 2^{-j}}) != 0
};

struct ZeroConditionReport {
    std::vector<ZeroConditionRow> rows;
    bool all_pass = false;  ///< every row: all zero_ok and nondegenerate
};

/// Evaluates, per level j in [level_begin, level_end], whether the z-side
/// derivatives D^k of the level symbol vanish at -e^{-lambda 2^{-(j+offset)}}
/// for k = 0..order (relative tolerance `tol` against the coefficient sup
/// norm) and stay away from zero at +e^{-lambda 2^{-(j+offset)}}.  Both
/// conditions are evaluated on the shift-normalized polynomial z^{-lo} a(z),
/// so the report does not depend on integer support placement.
ZeroConditionReport check_zero_conditions(const MaskSchedule& schedule, cplx lambda, int order,
                                          int level_begin, int level_end, double tol = 1e-10,
                                          int level_offset = 0);

/// Mask schedule whose level-j symbol is the normalized product
/// prod (z + e^{-lambda 2^{-(j+offset)}})^{mult+1} over the spectrum:
/// explicit head for levels 1..head_levels plus the matching tail rule, so
/// every deeper level is available on demand.
MaskSchedule construct_schedule(const ExponentialSpace& space, int head_levels,
                                int level_offset = 0);

struct GenerationReport {
    double residual = 0.0;  ///< worst relative least-squares misfit
    bool generated = false;
    Interval fit_window;
    int grid_level = 0;
    std::int64_t start_lo = 0;  ///< integer start window used
    std::int64_t start_hi = 0;
};

/// Starts the scheme from integer samples of each basis function of `space`,
/// runs `levels` refinement steps, and fits the resulting data against the
/// basis of `space` (scaled to unit sup norm) on `fit_window` restricted to
/// the zero-extension-safe interior.  generated == (worst residual <= tol).
GenerationReport verify_generation(const MaskSchedule& schedule, const ExponentialSpace& space,
                                   int levels, Interval fit_window, double tol = 1e-5);

struct AuditEntry {
    cplx lambda;
    bool inconclusive = false;
    std::string note;                    ///< set when inconclusive
    std::vector<DecayVerdict> verdicts;  ///< per order 0..d (empty when inconclusive)
    bool all_finite = false;             ///< every order FinitelySupported
    std::int64_t joint_support_count = 0;
};

/// Decay survey over a user-supplied lambda grid, orders 0..order.
struct AuditReport {
    std::int64_t max_degree_span = 0;  ///< N: max symbol span over probed levels
    bool stationary = false;
    std::vector<AuditEntry> entries;
    /// Non-empty finite supports occur only at lambda = 0.
    bool support_only_at_zero = true;
    /// Stationary case: every non-empty finite support is a single point.
    bool single_point_supports = true;
    /// Every fully finitely-supported lambda has joint support count <= N.
    bool count_within_degree = true;
};

/// For each lambda on the grid classifies the order-0..order decay sequences
/// and aggregates the support structure.  Overflow-prone lambdas
/// (e^{|Re lambda|} > 1e6) and inconclusive classifications are flagged, not
/// guessed.
AuditReport analytic_limit_audit(const MaskSchedule& schedule, const std::vector<cplx>& lambda_grid,
                                 int order, int range, int depth = -1);

}  // namespace shiftlab
