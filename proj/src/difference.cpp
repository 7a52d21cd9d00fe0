#include "shiftlab/difference.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftlab {

SampledFunction exp_difference(cplx lambda, const SampledFunction& f) {
    const std::int64_t shift = std::int64_t(1) << f.level;
    if (static_cast<std::int64_t>(f.values.size()) <= shift) {
        throw std::invalid_argument("exp_difference: window shorter than one unit shift");
    }
    const cplx w = std::exp(-lambda);
    SampledFunction out;
    out.level = f.level;
    out.lo = f.lo;
    out.values.resize(f.values.size() - static_cast<std::size_t>(shift));
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = w * f.values[i + static_cast<std::size_t>(shift)] - f.values[i];
    }
    return out;
}

SampledFunction exp_difference_power(cplx lambda, int power, const SampledFunction& f) {
    if (power < 0) throw std::invalid_argument("exp_difference_power: negative power");
    SampledFunction out = f;
    for (int i = 0; i < power; ++i) out = exp_difference(lambda, out);
    return out;
}

SampledFunction eliminate_components(const SampledFunction& f,
                                     const std::vector<std::pair<cplx, int>>& components,
                                     std::size_t keep_index) {
    if (keep_index >= components.size()) {
        throw std::invalid_argument("eliminate_components: keep_index out of range");
    }
    SampledFunction out = f;
    for (std::size_t j = 0; j < components.size(); ++j) {
        if (j == keep_index) continue;
        out = exp_difference_power(components[j].first, components[j].second + 1, out);
    }
    return out;
}

}  // namespace shiftlab
