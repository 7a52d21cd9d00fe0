#include "shiftlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

namespace {

constexpr int kMaxDepth = 128;
constexpr int kMaxRange = 512;
constexpr int kHBasisOmegaRange = 32;
constexpr int kHBasisRefineLevel = 32;

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

cplx pow_int(cplx base, int e) {
    cplx out(1.0);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

double pow_int(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

/// First-moment sum |m| |c_m| and max exponent modulus of a Unit symbol;
/// drives the Lipschitz-type tail estimates.
struct SymbolScale {
    double moment1 = 0.0;
    double max_exp = 0.0;
};

SymbolScale symbol_scale(const LaurentPolynomial& unit) {
    SymbolScale s;
    for (std::int64_t m = unit.lo(); m <= unit.hi(); ++m) {
        const double am = std::abs(unit.coeff(m));
        const double mm = std::abs(static_cast<double>(m));
        s.moment1 += mm * am;
        if (am > 0.0) s.max_exp = std::max(s.max_exp, mm);
    }
    return s;
}

}  // namespace

int default_depth(cplx y) {
    return 48 + static_cast<int>(std::ceil(std::log2(1.0 + std::abs(y))));
}

PhiHat phi_hat_derivs(const MaskSchedule& schedule, cplx y, int order, int depth) {
    if (order < 0) throw std::invalid_argument("phi_hat_derivs: negative order");
    if (depth < 0) depth = default_depth(y);
    if (depth < 1 || depth > kMaxDepth) throw std::invalid_argument("phi_hat_derivs: depth outside [1,128]");

    PhiHat out;
    out.depth = depth;
    out.derivs.assign(static_cast<std::size_t>(order) + 1, cplx(0.0));
    out.derivs[0] = cplx(1.0);

    std::vector<cplx> next(static_cast<std::size_t>(order) + 1);
    std::vector<cplx> fder(static_cast<std::size_t>(order) + 1);
    for (int j = 1; j <= depth; ++j) {
        const LaurentPolynomial unit = schedule.mask_at(j).unit_symbol();
        if (std::abs(eval_trig(unit, cplx(0.0), Normalization::Unit) - cplx(1.0)) > 1e-8) {
            throw std::domain_error("phi_hat_derivs: level " + std::to_string(j) +
                                    " mask is not normalized to 1 at frequency zero");
        }
        const double h = std::ldexp(1.0, -j);
        const cplx x = h * y;
        LaurentPolynomial dq = unit;
        for (int q = 0; q <= order; ++q) {
            if (q > 0) dq = derivative_trig(dq, 1);
            fder[static_cast<std::size_t>(q)] = pow_int(h, q) * eval_trig(dq, x, Normalization::Unit);
        }
        for (int n = 0; n <= order; ++n) {
            cplx acc(0.0);
            for (int q = 0; q <= n; ++q) {
                acc += binomial(n, q) * out.derivs[static_cast<std::size_t>(n - q)] *
                       fder[static_cast<std::size_t>(q)];
            }
            next[static_cast<std::size_t>(n)] = acc;
        }
        out.derivs.swap(next);
    }

    // Tail estimate.  Each neglected factor satisfies
    //   |a_j(x) - 1| <= sum_m |c_m| 2 pi |m| |x| e^{2 pi |m| |x|} =: eps_j
    // at x = 2^{-j} y, so the neglected product T obeys |T - 1| <= e^S - 1
    // with S = sum eps_j, and |T^(q)| <= q! (2 S1)^q e^S with
    // S1 = sum_j 2^{-j} 2 pi M1_j e^{2 pi N_j |x_j|}.  The reported bound
    // combines these through the Leibniz rule; it is an estimate, not a
    // certified enclosure.
    const double ay = std::abs(y);
    double S = 0.0, S1 = 0.0;
    double last_term = 0.0, last_term1 = 0.0;
    const int probe_end = depth + 80;
    for (int j = depth + 1; j <= probe_end; ++j) {
        const SymbolScale sc = symbol_scale(schedule.mask_at(j).unit_symbol());
        const double xj = std::ldexp(1.0, -j) * ay;
        const double grow = std::exp(kTwoPi * sc.max_exp * xj);
        last_term = kTwoPi * sc.moment1 * xj * grow;
        last_term1 = std::ldexp(1.0, -j) * kTwoPi * sc.moment1 * grow;
        S += last_term;
        S1 += last_term1;
    }
    // Geometric remainder past the probe window (ratio <= 1/2 per level).
    S += 2.0 * last_term;
    S1 += 2.0 * last_term1;

    std::vector<double> tail_q(static_cast<std::size_t>(order) + 1);
    tail_q[0] = std::expm1(S);
    double fact = 1.0;
    for (int q = 1; q <= order; ++q) {
        fact *= q;
        tail_q[static_cast<std::size_t>(q)] = fact * pow_int(2.0 * S1, q) * std::exp(S);
    }
    double bound = 0.0;
    for (int n = 0; n <= order; ++n) {
        double bn = 0.0;
        for (int q = 0; q <= n; ++q) {
            bn += binomial(n, q) * std::abs(out.derivs[static_cast<std::size_t>(n - q)]) *
                  tail_q[static_cast<std::size_t>(q)];
        }
        bound = std::max(bound, bn);
    }
    out.tail_bound = bound;
    return out;
}

DecaySequence decay_sequence(const MaskSchedule& schedule, cplx lambda, int order, int range,
                             int depth) {
    if (range < 1 || range > kMaxRange) throw std::invalid_argument("decay_sequence: range outside [1,512]");
    DecaySequence seq;
    seq.lambda = lambda;
    seq.order = order;
    seq.range = range;
    seq.entries.resize(2 * static_cast<std::size_t>(range) + 1);
    const cplx alpha = cplx(0.0, -1.0) * lambda / kTwoPi;
    for (int l = -range; l <= range; ++l) {
        const cplx y = alpha + static_cast<double>(l);
        const PhiHat ph = phi_hat_derivs(schedule, y, order, depth);
        seq.entries[static_cast<std::size_t>(l + range)] = ph.derivs[static_cast<std::size_t>(order)];
        seq.truncation_error = std::max(seq.truncation_error, ph.tail_bound);
    }
    return seq;
}

ClassifyOutcome try_classify(const DecaySequence& seq) {
    ClassifyOutcome out;
    double max_entry = 0.0;
    for (const cplx& e : seq.entries) max_entry = std::max(max_entry, std::abs(e));

    DecayVerdict v;
    v.threshold = std::max(seq.truncation_error, 1e-9 * max_entry);
    if (max_entry == 0.0) {
        v.kind = DecayKind::FinitelySupported;
        out.ok = true;
        out.verdict = v;
        return out;
    }

    std::vector<int> support;
    for (int l = -seq.range; l <= seq.range; ++l) {
        if (std::abs(seq.at(l)) > v.threshold) support.push_back(l);
    }

    // Fit window: |l| in [2, range], entries above threshold.
    std::vector<double> xs, ys;
    for (int l : support) {
        if (std::abs(l) < 2) continue;
        xs.push_back(std::abs(static_cast<double>(l)));
        ys.push_back(std::log(std::abs(seq.at(l))));
    }

    if (xs.size() >= 8) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        double resid = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            resid = std::max(resid, std::abs(ys[i] - (intercept + slope * xs[i])));
        }
        v.fit_residual = resid;
        if (resid <= 0.5 && slope < std::log(0.98)) {
            v.kind = DecayKind::ExponentialDecay;
            v.C = std::exp(intercept);
            v.q = std::exp(slope);
        } else {
            v.kind = DecayKind::NoDecay;
        }
        out.ok = true;
        out.verdict = v;
        return out;
    }

    if (!support.empty() && (std::abs(support.front()) >= seq.range - 1 ||
                             std::abs(support.back()) >= seq.range - 1)) {
        out.ok = false;
        out.diagnostics = "support reaches the range boundary with too few points for a decay fit; "
                          "increase the range";
        return out;
    }
    v.kind = DecayKind::FinitelySupported;
    v.support = std::move(support);
    out.ok = true;
    out.verdict = v;
    return out;
}

DecayVerdict classify_decay(const DecaySequence& seq) {
    ClassifyOutcome out = try_classify(seq);
    if (!out.ok) throw std::runtime_error("classify_decay: inconclusive — " + out.diagnostics);
    return out.verdict;
}

DecayVerdict classify_decay(const std::vector<DecaySequence>& seqs) {
    if (seqs.empty()) throw std::invalid_argument("classify_decay: empty list");
    bool all_finite = true, any_nodecay = false, any_exp = false;
    DecayVerdict joint;
    DecayVerdict slowest;
    for (const DecaySequence& s : seqs) {
        const DecayVerdict v = classify_decay(s);
        joint.threshold = std::max(joint.threshold, v.threshold);
        switch (v.kind) {
            case DecayKind::FinitelySupported:
                for (int l : v.support) joint.support.push_back(l);
                break;
            case DecayKind::ExponentialDecay:
                all_finite = false;
                any_exp = true;
                if (v.q > slowest.q) slowest = v;
                break;
            case DecayKind::NoDecay:
                all_finite = false;
                any_nodecay = true;
                break;
        }
    }
    if (all_finite) {
        std::sort(joint.support.begin(), joint.support.end());
        joint.support.erase(std::unique(joint.support.begin(), joint.support.end()),
                            joint.support.end());
        joint.kind = DecayKind::FinitelySupported;
        return joint;
    }
    if (any_exp && !any_nodecay) {
        slowest.kind = DecayKind::ExponentialDecay;
        return slowest;
    }
    joint.kind = DecayKind::NoDecay;
    joint.support.clear();
    return joint;
}

cplx PeriodicFunction::eval(double t) const {
    cplx acc(0.0);
    for (int l = -range; l <= range; ++l) {
        acc += coeff(l) * std::exp(cplx(0.0, kTwoPi * l * t));
    }
    return acc;
}

double PeriodicFunction::max_coeff() const {
    double m = 0.0;
    for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

PeriodicFunction omega(const MaskSchedule& schedule, cplx lambda, int order, int range, int depth) {
    const DecaySequence seq = decay_sequence(schedule, lambda, order, range, depth);
    const DecayVerdict v = classify_decay(seq);  // throws when inconclusive
    if (v.kind == DecayKind::NoDecay) {
        throw std::domain_error("omega: order-" + std::to_string(order) +
                                " sequence does not decay; the periodic factor is undefined");
    }
    PeriodicFunction w;
    w.range = range;
    w.coeffs.resize(seq.entries.size());
    const cplx factor = pow_int(cplx(0.0, 1.0) / kTwoPi, order);
    for (std::size_t i = 0; i < seq.entries.size(); ++i) w.coeffs[i] = factor * seq.entries[i];
    return w;
}

HBasis h_lambda_basis(const MaskSchedule& schedule, cplx lambda, int order, Interval window,
                      int grid_level, int depth, double tol) {
    if (order < 0) throw std::invalid_argument("h_lambda_basis: negative order");
    if (grid_level < 0 || grid_level > 24) {
        throw std::invalid_argument("h_lambda_basis: grid level outside [0,24]");
    }
    if (!(window.lo < window.hi)) throw std::invalid_argument("h_lambda_basis: empty window");

    const Interval supp = support_bound(schedule);
    const SampledFunction phi =
        limit_samples(schedule, grid_level, supp, kHBasisRefineLevel);

    std::vector<PeriodicFunction> omegas;
    omegas.reserve(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        omegas.push_back(omega(schedule, lambda, k, kHBasisOmegaRange, depth));
    }

    const double sc = std::ldexp(1.0, grid_level);
    const std::int64_t ilo = static_cast<std::int64_t>(std::ceil(window.lo * sc - 1e-9));
    const std::int64_t ihi = static_cast<std::int64_t>(std::floor(window.hi * sc + 1e-9));
    const std::int64_t llo = static_cast<std::int64_t>(std::floor(window.lo - supp.hi)) - 1;
    const std::int64_t lhi = static_cast<std::int64_t>(std::ceil(window.hi - supp.lo)) + 1;

    HBasis out;
    out.functions.assign(static_cast<std::size_t>(order) + 1,
                         SampledFunction{grid_level, ilo, {}});
    for (auto& f : out.functions) {
        f.values.assign(static_cast<std::size_t>(ihi - ilo + 1), cplx(0.0));
    }

    const std::int64_t unit = std::int64_t(1) << grid_level;
    for (std::int64_t i = ilo; i <= ihi; ++i) {
        const double t = static_cast<double>(i) / sc;
        for (int k = 0; k <= order; ++k) {
            // Time side: shifts of the deep-refined cascade samples.
            cplx time_side(0.0);
            for (std::int64_t l = llo; l <= lhi; ++l) {
                const cplx pv = phi.at_index(i - l * unit);
                if (pv == cplx(0.0)) continue;
                time_side += std::exp(lambda * static_cast<double>(l)) *
                             pow_int(static_cast<double>(l), k) * pv;
            }
            // Frequency side via the periodic factors.
            cplx freq_side(0.0);
            for (int j = 0; j <= k; ++j) {
                freq_side += binomial(k, j) * pow_int(t, k - j) * (j % 2 == 0 ? 1.0 : -1.0) *
                             omegas[static_cast<std::size_t>(j)].eval(t);
            }
            freq_side *= std::exp(lambda * t);
            out.functions[static_cast<std::size_t>(k)]
                .values[static_cast<std::size_t>(i - ilo)] = time_side;
            out.consistency = std::max(out.consistency, std::abs(time_side - freq_side));
        }
    }
    if (out.consistency > tol) {
        throw std::runtime_error(
            "h_lambda_basis: time/frequency pipelines disagree (max deviation " +
            std::to_string(out.consistency) +
            "); check the summation sign convention or increase depth");
    }
    return out;
}

}  // namespace shiftlab
