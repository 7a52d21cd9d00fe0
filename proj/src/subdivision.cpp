#include "shiftlab/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

namespace {

/// Largest sample vector a single dense refinement step may produce.
constexpr std::size_t kMaxSamples = std::size_t(1) << 28;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Disjoint sorted index intervals with a flat value store per interval.
struct IndexSet {
    std::vector<std::pair<std::int64_t, std::int64_t>> iv;  // inclusive [lo, hi]
    std::vector<std::size_t> offset;                        // into values
    std::vector<cplx> values;

    void finalize() {
        offset.resize(iv.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < iv.size(); ++i) {
            offset[i] = total;
            total += static_cast<std::size_t>(iv[i].second - iv[i].first + 1);
        }
        values.assign(total, cplx(0.0));
    }

    cplx get(std::int64_t k) const {
        std::size_t lo = 0, hi = iv.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (iv[mid].second < k) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo == iv.size() || k < iv[lo].first) return cplx(0.0);
        return values[offset[lo] + static_cast<std::size_t>(k - iv[lo].first)];
    }
};

std::vector<std::pair<std::int64_t, std::int64_t>> merge_intervals(
    std::vector<std::pair<std::int64_t, std::int64_t>> iv) {
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& r : iv) {
        if (!out.empty() && r.first <= out.back().second + 1) {
            out.back().second = std::max(out.back().second, r.second);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace

Mask::Mask(LaurentPolynomial symbol) : symbol_(std::move(symbol)) {
    const cplx s = symbol_.coeff_sum();
    if (std::abs(s - cplx(2.0)) > 1e-10) {
        throw std::invalid_argument("Mask: coefficient sum must equal 2 (got deviation " +
                                    std::to_string(std::abs(s - cplx(2.0))) + ")");
    }
}

Mask Mask::from(LaurentPolynomial symbol, Normalization conv) {
    if (conv == Normalization::Unit) symbol = scale(symbol, 2.0);
    return Mask(std::move(symbol));
}

bool Mask::is_real(double tol) const {
    const double thr = tol * symbol_.max_abs_coeff();
    for (const cplx& c : symbol_.coeffs()) {
        if (std::abs(c.imag()) > thr) return false;
    }
    return true;
}

MaskSchedule::MaskSchedule(std::vector<Mask> head, TailRule tail)
    : head_(std::move(head)), tail_(std::move(tail)) {
    if (head_.empty()) throw std::invalid_argument("MaskSchedule: head must be non-empty");
}

Mask MaskSchedule::mask_at(int level) const {
    if (level < 1) throw std::invalid_argument("MaskSchedule::mask_at: level must be >= 1");
    if (level <= head_size()) return head_[static_cast<std::size_t>(level - 1)];
    if (std::holds_alternative<RepeatLastTail>(tail_)) return head_.back();
    const auto& tail = std::get<ExponentialTail>(tail_);
    return exponential_mask(tail.lambdas, level, tail.level_offset);
}

bool MaskSchedule::is_stationary() const {
    if (!std::holds_alternative<RepeatLastTail>(tail_)) return false;
    const auto& first = head_.front().symbol();
    for (const Mask& m : head_) {
        const auto& s = m.symbol();
        if (s.lo() != first.lo() || s.coeffs().size() != first.coeffs().size()) return false;
        for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
            if (std::abs(s.coeffs()[i] - first.coeffs()[i]) > 1e-14 * first.max_abs_coeff()) return false;
        }
    }
    return true;
}

Mask exponential_mask(const std::vector<std::pair<cplx, int>>& lambdas, int level, int level_offset) {
    if (lambdas.empty()) throw std::invalid_argument("exponential_mask: empty spectrum");
    if (level < 1) throw std::invalid_argument("exponential_mask: level must be >= 1");
    LaurentPolynomial p = LaurentPolynomial::monomial(cplx(1.0), 0);
    std::int64_t degree = 0;
    for (const auto& [lambda, mult] : lambdas) {
        if (mult < 0) throw std::invalid_argument("exponential_mask: negative multiplicity");
        const cplx root = std::exp(-lambda * std::ldexp(1.0, -(level + level_offset)));
        const LaurentPolynomial factor({root, cplx(1.0)}, 0);  // z + root
        for (int i = 0; i <= mult; ++i) p = mul(p, factor);
        degree += mult + 1;
    }
    const cplx at_one = eval_z(p, cplx(1.0));
    if (std::abs(at_one) < 1e-12 * p.max_abs_coeff()) {
        throw std::domain_error("exponential_mask: degenerate spectrum (factor vanishes at z = 1)");
    }
    // Center: exponents [-(ceil(D/2)), D - ceil(D/2)].
    const std::int64_t shift = -(degree + 1) / 2;
    LaurentPolynomial centered(std::vector<cplx>(p.coeffs()), p.lo() + shift);
    return Mask(scale(centered, cplx(2.0) / at_one));
}

double SampledFunction::step() const { return std::ldexp(1.0, -level); }

double SampledFunction::t(std::size_t i) const {
    return static_cast<double>(lo + static_cast<std::int64_t>(i)) * step();
}

cplx SampledFunction::at_index(std::int64_t k) const {
    if (k < lo || k > hi()) return cplx(0.0);
    return values[static_cast<std::size_t>(k - lo)];
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

SampledFunction delta() { return SampledFunction{0, 0, {cplx(1.0)}}; }

SampledFunction subdivide_step(const Mask& mask, const SampledFunction& c) {
    if (c.values.empty()) throw std::invalid_argument("subdivide_step: empty input");
    const auto& a = mask.symbol();
    const std::size_t out_size =
        2 * (c.values.size() - 1) + static_cast<std::size_t>(a.span()) + 1;
    if (out_size > kMaxSamples) throw std::length_error("subdivide_step: output too large");
    SampledFunction out;
    out.level = c.level + 1;
    out.lo = 2 * c.lo + a.lo();
    out.values.assign(out_size, cplx(0.0));
    for (std::size_t m = 0; m < c.values.size(); ++m) {
        const cplx cm = c.values[m];
        if (cm == cplx(0.0)) continue;
        for (std::size_t q = 0; q < a.coeffs().size(); ++q) {
            out.values[2 * m + q] += a.coeffs()[q] * cm;
        }
    }
    return out;
}

SampledFunction run(const MaskSchedule& schedule, SampledFunction start, int levels) {
    if (levels < 0) throw std::invalid_argument("run: negative level count");
    for (int i = 1; i <= levels; ++i) {
        start = subdivide_step(schedule.mask_at(start.level + 1), start);
    }
    return start;
}

Interval support_bound(const MaskSchedule& schedule) {
    Interval s{0.0, 0.0};
    const int J = schedule.head_size();
    for (int j = 1; j <= J; ++j) {
        const Mask m = schedule.mask_at(j);
        s.lo += std::ldexp(static_cast<double>(m.lo()), -j);
        s.hi += std::ldexp(static_cast<double>(m.hi()), -j);
    }
    // sum_{j>J} 2^{-j} = 2^{-J} times the (constant) tail exponent range.
    std::int64_t tail_lo, tail_hi;
    if (std::holds_alternative<RepeatLastTail>(schedule.tail())) {
        tail_lo = schedule.head().back().lo();
        tail_hi = schedule.head().back().hi();
    } else {
        std::int64_t degree = 0;
        for (const auto& [lambda, mult] : std::get<ExponentialTail>(schedule.tail()).lambdas) {
            degree += mult + 1;
        }
        tail_lo = -(degree + 1) / 2;
        tail_hi = tail_lo + degree;
    }
    s.lo += std::ldexp(static_cast<double>(tail_lo), -J);
    s.hi += std::ldexp(static_cast<double>(tail_hi), -J);
    return s;
}

SampledFunction basic_limit(const MaskSchedule& schedule, int levels) {
    if (levels < 1) throw std::invalid_argument("basic_limit: levels must be >= 1");
    SampledFunction raw = run(schedule, delta(), levels);
    const Interval supp = support_bound(schedule);
    const double eps = 1e-9;
    const std::int64_t keep_lo =
        std::max(raw.lo, static_cast<std::int64_t>(std::ceil(supp.lo * std::ldexp(1.0, levels) - eps)));
    const std::int64_t keep_hi =
        std::min(raw.hi(), static_cast<std::int64_t>(std::floor(supp.hi * std::ldexp(1.0, levels) + eps)));
    if (keep_lo > keep_hi) return SampledFunction{levels, 0, {cplx(0.0)}};
    SampledFunction out;
    out.level = levels;
    out.lo = keep_lo;
    out.values.assign(raw.values.begin() + static_cast<std::ptrdiff_t>(keep_lo - raw.lo),
                      raw.values.begin() + static_cast<std::ptrdiff_t>(keep_hi - raw.lo + 1));
    return out;
}

SampledFunction limit_samples(const MaskSchedule& schedule, int grid_level, Interval window,
                              int refine_level) {
    if (grid_level < 0) throw std::invalid_argument("limit_samples: negative grid level");
    if (!(window.lo <= window.hi)) throw std::invalid_argument("limit_samples: empty window");
    const int R = std::max(refine_level, grid_level);
    if (R > 48) throw std::invalid_argument("limit_samples: refine level too deep");
    const int r = grid_level;
    const std::int64_t jlo = static_cast<std::int64_t>(std::ceil(window.lo * std::ldexp(1.0, r) - 1e-9));
    const std::int64_t jhi = static_cast<std::int64_t>(std::floor(window.hi * std::ldexp(1.0, r) + 1e-9));
    if (jhi < jlo) throw std::invalid_argument("limit_samples: window holds no grid point");
    if (jhi - jlo > (1 << 24)) throw std::length_error("limit_samples: too many grid points");
    const std::int64_t stride = std::int64_t(1) << (R - r);

    // Backward pass: needed[j] = indices of the data produced by step j
    // (level-j samples); needed[R] are the requested target indices.
    std::vector<Mask> masks;
    masks.reserve(static_cast<std::size_t>(R));
    for (int j = 1; j <= R; ++j) masks.push_back(schedule.mask_at(j));

    std::vector<IndexSet> needed(static_cast<std::size_t>(R) + 1);
    {
        std::vector<std::pair<std::int64_t, std::int64_t>> targets;
        targets.reserve(static_cast<std::size_t>(jhi - jlo + 1));
        for (std::int64_t j = jlo; j <= jhi; ++j) targets.push_back({j * stride, j * stride});
        needed[static_cast<std::size_t>(R)].iv = merge_intervals(std::move(targets));
    }
    for (int j = R; j >= 1; --j) {
        const auto& a = masks[static_cast<std::size_t>(j - 1)].symbol();
        std::vector<std::pair<std::int64_t, std::int64_t>> dep;
        dep.reserve(needed[static_cast<std::size_t>(j)].iv.size());
        for (const auto& [klo, khi] : needed[static_cast<std::size_t>(j)].iv) {
            dep.push_back({ceil_div(klo - a.hi(), 2), floor_div(khi - a.lo(), 2)});
        }
        needed[static_cast<std::size_t>(j - 1)].iv = merge_intervals(std::move(dep));
    }
    for (auto& set : needed) set.finalize();

    // Forward pass: level-0 data is the delta start.
    for (std::size_t i = 0; i < needed[0].iv.size(); ++i) {
        const auto& [klo, khi] = needed[0].iv[i];
        if (klo <= 0 && 0 <= khi) {
            needed[0].values[needed[0].offset[i] + static_cast<std::size_t>(-klo)] = cplx(1.0);
        }
    }
    for (int j = 1; j <= R; ++j) {
        const auto& a = masks[static_cast<std::size_t>(j - 1)].symbol();
        const IndexSet& prev = needed[static_cast<std::size_t>(j - 1)];
        IndexSet& cur = needed[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < cur.iv.size(); ++i) {
            for (std::int64_t k = cur.iv[i].first; k <= cur.iv[i].second; ++k) {
                cplx acc(0.0);
                const std::int64_t mlo = ceil_div(k - a.hi(), 2);
                const std::int64_t mhi = floor_div(k - a.lo(), 2);
                for (std::int64_t m = mlo; m <= mhi; ++m) {
                    acc += a.coeff(k - 2 * m) * prev.get(m);
                }
                cur.values[cur.offset[i] + static_cast<std::size_t>(k - cur.iv[i].first)] = acc;
            }
        }
        // Free the consumed level to keep the footprint flat.
        needed[static_cast<std::size_t>(j - 1)].values.clear();
        needed[static_cast<std::size_t>(j - 1)].values.shrink_to_fit();
    }

    SampledFunction out;
    out.level = r;
    out.lo = jlo;
    out.values.reserve(static_cast<std::size_t>(jhi - jlo + 1));
    const IndexSet& top = needed[static_cast<std::size_t>(R)];
    for (std::int64_t j = jlo; j <= jhi; ++j) out.values.push_back(top.get(j * stride));
    return out;
}

std::int64_t dimension_bound(const std::vector<Interval>& supports) {
    double total = 0.0;
    for (const Interval& s : supports) {
        if (s.hi < s.lo) throw std::invalid_argument("dimension_bound: inverted interval");
        total += s.length();
    }
    return static_cast<std::int64_t>(std::ceil(total - 1e-12));
}

}  // namespace shiftlab
