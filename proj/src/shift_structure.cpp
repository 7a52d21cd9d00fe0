#include "shiftlab/shift_structure.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace shiftlab {

Eigen::MatrixXd shift_block(int degree) {
    if (degree < 0) throw std::invalid_argument("shift_block: negative degree");
    const int n = degree + 1;
    // Pascal triangle: binom[i][j] = C(i, j).
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        binom[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1, 1.0);
        for (int j = 1; j < i; ++j) {
            binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
        }
    }
    // p(t) = sum_i c_i t^i maps to p(t+1) with new c'_m = sum_{i>=m} C(i,m) c_i.
    // Descending order: row rho = degree - m, column gamma = degree - i.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m <= degree; ++m) {
        for (int i = m; i <= degree; ++i) {
            B(degree - m, degree - i) = binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
        }
    }
    return B;
}

int block_shift_dimension(int d) { return (d + 1) * (d + 2) / 2; }

int block_shift_order(int ambient) {
    for (int d = 0; block_shift_dimension(d) <= ambient; ++d) {
        if (block_shift_dimension(d) == ambient) return d;
    }
    return -1;
}

Eigen::MatrixXd block_shift_operator(int d) {
    if (d < 0) throw std::invalid_argument("block_shift_operator: negative order");
    const int n = block_shift_dimension(d);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    int at = 0;
    for (int k = 0; k <= d; ++k) {
        A.block(at, at, k + 1, k + 1) = shift_block(k);
        at += k + 1;
    }
    return A;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * sv(0)) ++rank;
    }
    return rank;
}

bool is_invariant(const Eigen::MatrixXd& A, const Eigen::MatrixXd& basis, double tol) {
    if (A.rows() != A.cols() || A.cols() != basis.rows()) {
        throw std::invalid_argument("is_invariant: dimension mismatch");
    }
    Eigen::MatrixXd joint(basis.rows(), 2 * basis.cols());
    joint << basis, A * basis;
    return numerical_rank(joint, tol) == numerical_rank(basis, tol);
}

Eigen::MatrixXd minimal_invariant_subspace(const Eigen::MatrixXd& A, const Eigen::VectorXd& v,
                                           double tol) {
    if (A.rows() != A.cols() || A.cols() != v.size()) {
        throw std::invalid_argument("minimal_invariant_subspace: dimension mismatch");
    }
    const double vnorm = v.norm();
    if (vnorm == 0.0) return Eigen::MatrixXd(v.size(), 0);
    Eigen::MatrixXd Q(v.size(), 0);
    Eigen::VectorXd w = v / vnorm;
    while (Q.cols() < A.rows()) {
        const double pre = w.norm();
        // Twice-applied Gram-Schmidt for orthogonality at working precision.
        for (int pass = 0; pass < 2; ++pass) {
            if (Q.cols() > 0) w -= Q * (Q.transpose() * w);
        }
        const double rem = w.norm();
        if (rem <= tol * std::max(1.0, pre)) break;  // Krylov space saturated
        Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
        Q.col(Q.cols() - 1) = w / rem;
        w = A * Q.col(Q.cols() - 1);
    }
    return Q;
}

bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    if (a.rows() != b.rows()) return false;
    const int ra = numerical_rank(a, tol);
    const int rb = numerical_rank(b, tol);
    if (ra != rb) return false;
    Eigen::MatrixXd joint(a.rows(), a.cols() + b.cols());
    joint << a, b;
    return numerical_rank(joint, tol) == ra;
}

FourFamiliesReport four_families_demo(unsigned seed) {
    const Eigen::MatrixXd A = block_shift_operator(1);
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    FourFamiliesReport report;

    auto check = [&](const std::string& label, int trials,
                     const std::function<Eigen::MatrixXd()>& draw) {
        FamilyCheck fc{label, trials, 0};
        for (int i = 0; i < trials; ++i) {
            if (is_invariant(A, draw())) ++fc.invariant_count;
        }
        report.families.push_back(fc);
    };

    // Family 1: P_1 alone, {(0, b, c)}.
    Eigen::MatrixXd n1(3, 2);
    n1 << 0, 0, 1, 0, 0, 1;
    check("degree-one block {(0,b,c)}", 1, [&] { return n1; });

    // Family 2: constants against constants, {(a, 0, c)}.
    Eigen::MatrixXd n2(3, 2);
    n2 << 1, 0, 0, 0, 0, 1;
    check("constant pair {(a,0,c)}", 1, [&] { return n2; });

    // Family 3: lines through a fixed constant pair, span{(a0, 0, c0)}.
    check("line {t(a0,0,c0)}", 16, [&] {
        Eigen::MatrixXd m(3, 1);
        double a0 = 0.0, c0 = 0.0;
        while (a0 == 0.0 && c0 == 0.0) {
            a0 = unif(rng);
            c0 = unif(rng);
        }
        m << a0, 0, c0;
        return m;
    });

    // Family 4: planes {u a + v b = 0}.
    check("plane {ua+vb=0}", 16, [&] {
        double u = 0.0, v = 0.0;
        while (u == 0.0 && v == 0.0) {
            u = unif(rng);
            v = unif(rng);
        }
        Eigen::MatrixXd m(3, 2);
        // Basis: (v, -u, 0) and (0, 0, 1).
        m << v, 0, -u, 0, 0, 1;
        return m;
    });

    report.all_families_invariant = true;
    for (const FamilyCheck& fc : report.families) {
        if (fc.invariant_count != fc.trials) report.all_families_invariant = false;
    }

    // Negative control: random planes are almost surely not invariant.
    report.random_trials = 100;
    for (int i = 0; i < report.random_trials; ++i) {
        Eigen::MatrixXd m(3, 2);
        for (int rrow = 0; rrow < 3; ++rrow)
            for (int ccol = 0; ccol < 2; ++ccol) m(rrow, ccol) = gauss(rng);
        if (is_invariant(A, m)) ++report.random_invariant_count;
    }

    Eigen::VectorXd t_vec(3);
    t_vec << 0, 1, 0;
    const Eigen::MatrixXd cyc = minimal_invariant_subspace(A, t_vec);
    report.minimal_dim_from_t = static_cast<int>(cyc.cols());
    report.minimal_is_first_family = same_span(cyc, n1);
    return report;
}

}  // namespace shiftlab
