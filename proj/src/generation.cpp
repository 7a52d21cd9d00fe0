#include "shiftlab/generation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

namespace {

cplx pow_int(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return cplx(out);
}

/// Distance of delta from the lattice 2 pi i Z.
double dist_mod_2pii(cplx delta) {
    const double k = std::round(delta.imag() / kTwoPi);
    return std::abs(delta - cplx(0.0, kTwoPi * k));
}

}  // namespace

ExponentialSpace::ExponentialSpace(std::vector<std::pair<cplx, int>> points)
    : spectrum(std::move(points)) {
    if (spectrum.empty()) throw std::invalid_argument("ExponentialSpace: empty spectrum");
    for (const auto& [lambda, mult] : spectrum) {
        (void)lambda;
        if (mult < 0) throw std::invalid_argument("ExponentialSpace: negative multiplicity");
    }
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
            if (dist_mod_2pii(spectrum[i].first - spectrum[j].first) < 1e-8) {
                throw std::invalid_argument(
                    "ExponentialSpace: spectrum points must be distinct modulo 2 pi i");
            }
        }
    }
}

int ExponentialSpace::dim() const {
    int d = 0;
    for (const auto& [lambda, mult] : spectrum) {
        (void)lambda;
        d += mult + 1;
    }
    return d;
}

ZeroConditionReport check_zero_conditions(const MaskSchedule& schedule, cplx lambda, int order,
                                          int level_begin, int level_end, double tol,
                                          int level_offset) {
    if (level_begin < 1 || level_end < level_begin) {
        throw std::invalid_argument("check_zero_conditions: bad level range");
    }
    if (order < 0) throw std::invalid_argument("check_zero_conditions: negative order");
    ZeroConditionReport report;
    report.all_pass = true;
    for (int j = level_begin; j <= level_end; ++j) {
        const LaurentPolynomial raw = schedule.mask_at(j).symbol();
        // z-derivative conditions are not invariant under integer support
        // shifts, so evaluate them on the plain polynomial z^{-lo} a(z).
        const LaurentPolynomial a(std::vector<cplx>(raw.coeffs()), 0);
        const double norm = a.max_abs_coeff();
        const cplx root = std::exp(-lambda * std::ldexp(1.0, -(j + level_offset)));
        ZeroConditionRow row;
        row.level = j;
        row.nondegenerate = true;
        LaurentPolynomial dk = a;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) dk = derivative_z(dk);
            const double at_zero = std::abs(eval_z(dk, -root));
            const double at_anchor = std::abs(eval_z(dk, root));
            row.zero_residual.push_back(at_zero / norm);
            row.zero_ok.push_back(at_zero <= tol * norm);
            if (at_anchor <= tol * norm) row.nondegenerate = false;
        }
        bool pass = row.nondegenerate;
        for (bool ok : row.zero_ok) pass = pass && ok;
        report.all_pass = report.all_pass && pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

MaskSchedule construct_schedule(const ExponentialSpace& space, int head_levels, int level_offset) {
    if (head_levels < 1) throw std::invalid_argument("construct_schedule: head_levels must be >= 1");
    std::vector<Mask> head;
    head.reserve(static_cast<std::size_t>(head_levels));
    for (int j = 1; j <= head_levels; ++j) {
        head.push_back(exponential_mask(space.spectrum, j, level_offset));
    }
    return MaskSchedule(std::move(head), ExponentialTail{space.spectrum, level_offset});
}

GenerationReport verify_generation(const MaskSchedule& schedule, const ExponentialSpace& space,
                                   int levels, Interval fit_window, double tol) {
    if (levels < 1 || levels > 24) throw std::invalid_argument("verify_generation: levels outside [1,24]");
    if (!(fit_window.lo < fit_window.hi)) throw std::invalid_argument("verify_generation: empty window");

    // Influence interval of the first `levels` steps (partial support sums).
    double slo = 0.0, shi = 0.0;
    for (int j = 1; j <= levels; ++j) {
        const Mask m = schedule.mask_at(j);
        slo += std::ldexp(static_cast<double>(m.lo()), -j);
        shi += std::ldexp(static_cast<double>(m.hi()), -j);
    }
    GenerationReport report;
    report.fit_window = fit_window;
    report.grid_level = levels;
    report.start_lo = static_cast<std::int64_t>(std::floor(fit_window.lo - shi)) - 1;
    report.start_hi = static_cast<std::int64_t>(std::ceil(fit_window.hi - slo)) + 1;
    if (report.start_hi - report.start_lo > 100000) {
        throw std::length_error("verify_generation: start window too wide");
    }

    // Level-r grid points inside the fit window.
    const double sc = std::ldexp(1.0, levels);
    const std::int64_t ilo = static_cast<std::int64_t>(std::ceil(fit_window.lo * sc - 1e-9));
    const std::int64_t ihi = static_cast<std::int64_t>(std::floor(fit_window.hi * sc + 1e-9));
    if (ihi < ilo) throw std::invalid_argument("verify_generation: window holds no grid point");
    const std::size_t rows = static_cast<std::size_t>(ihi - ilo + 1);

    // Fit basis: t^a e^{mu t} scaled to unit sup norm on the window grid.
    std::vector<std::pair<cplx, int>> basis;  // (mu, power)
    for (const auto& [mu, mult] : space.spectrum) {
        for (int a = 0; a <= mult; ++a) basis.push_back({mu, a});
    }
    Eigen::MatrixXcd M(rows, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        double sup = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const double t = static_cast<double>(ilo + static_cast<std::int64_t>(i)) / sc;
            const cplx v = pow_int(t, basis[b].second) * std::exp(basis[b].first * t);
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = v;
            sup = std::max(sup, std::abs(v));
        }
        if (sup == 0.0) sup = 1.0;
        M.col(static_cast<Eigen::Index>(b)) /= sup;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(svd.singularValues().size() - 1) <
        1e-12 * svd.singularValues()(0)) {
        throw std::runtime_error("verify_generation: fit basis is numerically rank-deficient on the window");
    }

    for (const auto& [mu, power] : basis) {
        SampledFunction start;
        start.level = 0;
        start.lo = report.start_lo;
        start.values.resize(static_cast<std::size_t>(report.start_hi - report.start_lo + 1));
        for (std::size_t i = 0; i < start.values.size(); ++i) {
            const double t = static_cast<double>(report.start_lo + static_cast<std::int64_t>(i));
            start.values[i] = pow_int(t, power) * std::exp(mu * t);
        }
        const SampledFunction data = run(schedule, start, levels);
        Eigen::VectorXcd b(static_cast<Eigen::Index>(rows));
        for (std::size_t i = 0; i < rows; ++i) {
            b(static_cast<Eigen::Index>(i)) = data.at_index(ilo + static_cast<std::int64_t>(i));
        }
        const double bnorm = b.norm();
        if (bnorm == 0.0) continue;
        const Eigen::VectorXcd x = svd.solve(b);
        const double misfit = (M * x - b).norm() / bnorm;
        report.residual = std::max(report.residual, misfit);
    }
    report.generated = report.residual <= tol;
    return report;
}

AuditReport analytic_limit_audit(const MaskSchedule& schedule, const std::vector<cplx>& lambda_grid,
                                 int order, int range, int depth) {
    if (order < 0) throw std::invalid_argument("analytic_limit_audit: negative order");
    AuditReport report;
    report.stationary = schedule.is_stationary();

    // Probe the degree spread N over the head and a stretch of the tail.
    const int probe_end = schedule.head_size() + 8;
    for (int j = 1; j <= probe_end; ++j) {
        report.max_degree_span = std::max(report.max_degree_span, schedule.mask_at(j).symbol().span());
    }

    for (const cplx lambda : lambda_grid) {
        AuditEntry entry;
        entry.lambda = lambda;
        if (std::exp(std::abs(lambda.real())) > 1e6) {
            entry.inconclusive = true;
            entry.note = "overflow guard: |e^{Re lambda}| exceeds 1e6";
            report.entries.push_back(std::move(entry));
            continue;
        }
        entry.all_finite = true;
        for (int k = 0; k <= order && !entry.inconclusive; ++k) {
            const DecaySequence seq = decay_sequence(schedule, lambda, k, range, depth);
            const ClassifyOutcome oc = try_classify(seq);
            if (!oc.ok) {
                entry.inconclusive = true;
                entry.note = "order " + std::to_string(k) + ": " + oc.diagnostics;
                entry.verdicts.clear();
                break;
            }
            if (oc.verdict.kind == DecayKind::FinitelySupported) {
                entry.joint_support_count += static_cast<std::int64_t>(oc.verdict.support.size());
                if (!oc.verdict.support.empty()) {
                    if (std::abs(lambda) > 1e-12) report.support_only_at_zero = false;
                    if (oc.verdict.support.size() > 1) report.single_point_supports = false;
                }
            } else {
                entry.all_finite = false;
            }
            entry.verdicts.push_back(oc.verdict);
        }
        if (!entry.inconclusive && entry.all_finite &&
            entry.joint_support_count > report.max_degree_span) {
            report.count_within_degree = false;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace shiftlab
