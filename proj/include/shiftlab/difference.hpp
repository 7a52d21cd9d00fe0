#pragma once

#include <utility>
#include <vector>

#include "shiftlab/subdivision.hpp"

namespace shiftlab {

/// One application of the exponential difference operator
///   (D_lambda f)(t) = e^{-lambda} f(t+1) - f(t)
/// on dyadic samples.  The unit shift consumes 2^level indices, so the output
/// window shrinks by one time unit on the right; throws std::invalid_argument
/// when fewer than 2^level + 1 samples remain.
SampledFunction exp_difference(cplx lambda, const SampledFunction& f);

/// `power`-fold application of exp_difference with the same lambda.
/// On samples of p(t) e^{lambda t} with a 1-periodic modulation, power =
/// deg p + 1 annihilates the input exactly (in exact arithmetic) while
/// power = deg p does not.
SampledFunction exp_difference_power(cplx lambda, int power, const SampledFunction& f);

/// Removes every component but `keep_index` from samples of
///   f = sum_j pi_j(t) p_j(t) e^{lambda_j t}
/// by applying D_{lambda_j}^{d_j + 1} for all j != keep_index, where
/// `components` lists (lambda_j, d_j = deg p_j).  The surviving summand is
/// proportional to a (shifted-coefficient) polynomial of the kept component's
/// degree times e^{lambda_keep t}, with its periodic factor preserved.
SampledFunction eliminate_components(const SampledFunction& f,
                                     const std::vector<std::pair<cplx, int>>& components,
                                     std::size_t keep_index);

}  // namespace shiftlab
