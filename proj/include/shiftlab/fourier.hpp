#pragma once

#include <string>
#include <vector>

#include "shiftlab/subdivision.hpp"

namespace shiftlab {

/// Depth used when a caller passes depth < 0: 48 + ceil(log2(1 + |y|)),
/// which keeps the tail of the level product below ~1e-10 for the bounded
/// symbols this library works with.
int default_depth(cplx y);

/// Value and y-derivatives of the truncated level product
///   P(y) = prod_{j=1}^{depth} a_j(2^{-j} y)
/// in the Unit normalization, together with an estimate of the neglected
/// tail's contribution.
struct PhiHat {
    std::vector<cplx> derivs;  ///< orders 0..requested
    double tail_bound = 0.0;   ///< estimated |truncated - full| for each order
    int depth = 0;
};

/// Evaluates PhiHat at (possibly complex) y with derivative orders
/// 0..order, combining per-factor derivatives by the Leibniz rule (the
/// order-q derivative of a_j(2^{-j} y) carries the factor 2^{-jq}).
/// Every consumed mask must satisfy a_j(0) = 1 in the Unit view within 1e-8,
/// else std::domain_error.  depth < 0 selects default_depth(y); depth is
/// capped at 128.
PhiHat phi_hat_derivs(const MaskSchedule& schedule, cplx y, int order, int depth = -1);

/// The two-sided sequence  entries[l] = P^{(order)}(-i lambda / (2 pi) + l)
/// for l = -range..range, with the worst per-entry truncation bound.
struct DecaySequence {
    cplx lambda;
    int order = 0;
    int range = 0;
    std::vector<cplx> entries;  ///< index l + range
    double truncation_error = 0.0;

    cplx at(int l) const { return entries[static_cast<std::size_t>(l + range)]; }
};

DecaySequence decay_sequence(const MaskSchedule& schedule, cplx lambda, int order, int range,
                             int depth = -1);

enum class DecayKind { FinitelySupported, ExponentialDecay, NoDecay };

struct DecayVerdict {
    DecayKind kind = DecayKind::NoDecay;
    std::vector<int> support;   ///< above-threshold offsets (FinitelySupported)
    double C = 0.0;             ///< fitted amplitude (ExponentialDecay)
    double q = 0.0;             ///< fitted ratio in (0,1) (ExponentialDecay)
    double fit_residual = 0.0;  ///< max |log entry - fit| over fitted points
    double threshold = 0.0;     ///< zero threshold that was applied
};

struct ClassifyOutcome {
    bool ok = false;
    DecayVerdict verdict;
    std::string diagnostics;  ///< set when !ok (inconclusive)
};

/// Zero threshold: max(truncation_error, 1e-9 * max entry).  Entries with
/// |l| in [2, range] above the threshold feed a linear fit of log|entry|
/// against |l| when at least 8 such points exist: max-abs log residual
/// <= 0.5 and fitted q <= 0.98 give ExponentialDecay, otherwise NoDecay.
/// With fewer than 8 points the sequence is FinitelySupported on its
/// above-threshold offsets — unless that support reaches the range boundary,
/// which is reported as inconclusive (slow decay past the range cannot be
/// excluded).
ClassifyOutcome try_classify(const DecaySequence& seq);

/// Like try_classify but throws std::runtime_error on inconclusive input.
DecayVerdict classify_decay(const DecaySequence& seq);

/// Joint verdict over several orders: FinitelySupported with the union of
/// supports when every sequence is finitely supported; ExponentialDecay with
/// the slowest fitted q when every sequence decays; NoDecay otherwise.
DecayVerdict classify_decay(const std::vector<DecaySequence>& seqs);

/// 1-periodic function given by finitely many Fourier coefficients
/// coeffs[l + range] attached to e^{2 pi i l t}.
struct PeriodicFunction {
    int range = 0;
    std::vector<cplx> coeffs;

    cplx coeff(int l) const { return coeffs[static_cast<std::size_t>(l + range)]; }
    cplx eval(double t) const;
    double max_coeff() const;
};

/// The order-k periodic factor with Fourier coefficients
///   c_l = (i / (2 pi))^k * P^{(k)}(-i lambda / (2 pi) + l),
/// i.e. the Fourier expansion of sum_l (t-l)^k psi(t-l) for psi = e^{-lambda .} phi
/// (the plus-sign summation convention; validated by h_lambda_basis).
/// Requires the order-k sequence to decay: classification NoDecay or
/// inconclusive raises std::domain_error / std::runtime_error.
PeriodicFunction omega(const MaskSchedule& schedule, cplx lambda, int order, int range,
                       int depth = -1);

/// Samples of the analytic-element basis functions
///   F_k(t) = sum_l e^{lambda l} l^k phi(t - l),  k = 0..order,
/// on the 2^{-grid_level} grid inside `window`, evaluated two independent
/// ways: in time (deep-refined cascade samples of phi, summed over the
/// integer shifts meeting the support) and in frequency
/// (e^{lambda t} sum_j C(k,j) t^{k-j} (-1)^j omega_j(t)).  Returns the
/// time-domain samples; `consistency` is max |time - frequency| over all k
/// and grid points and must stay below `tol`, else std::runtime_error —
/// disagreement indicates a wrong summation sign or insufficient depth.
/// The internal Fourier range for the omega factors is 32.
struct HBasis {
    std::vector<SampledFunction> functions;  ///< orders 0..order
    double consistency = 0.0;
};

HBasis h_lambda_basis(const MaskSchedule& schedule, cplx lambda, int order, Interval window,
                      int grid_level, int depth = -1, double tol = 1e-6);

}  // namespace shiftlab
