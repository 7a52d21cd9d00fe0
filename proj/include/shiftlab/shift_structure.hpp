#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace shiftlab {

/// Matrix of p |-> p(.+1) on polynomials of degree <= k, in descending-degree
/// coordinates (c_k, ..., c_0).  Entries are binomial coefficients; the
/// matrix is unipotent lower triangular, e.g. degree 1 gives [[1,0],[1,1]].
Eigen::MatrixXd shift_block(int degree);

/// Block-diagonal operator diag(B_0, ..., B_d) acting on the direct sum
/// P_0 + P_1 + ... + P_d of polynomial spaces, each block in
/// descending-degree coordinates; ambient dimension (d+1)(d+2)/2.
Eigen::MatrixXd block_shift_operator(int d);

/// Ambient dimension (d+1)(d+2)/2 of block_shift_operator(d).
int block_shift_dimension(int d);

/// Inverse of block_shift_dimension: the d with (d+1)(d+2)/2 == ambient, or
/// -1 when ambient is not of that form.
int block_shift_order(int ambient);

/// Numerical rank with the relative singular-value threshold `tol`.
int numerical_rank(const Eigen::MatrixXd& m, double tol = 1e-10);

/// True when span(basis columns) is A-invariant:
/// rank([basis | A*basis]) == rank(basis).
bool is_invariant(const Eigen::MatrixXd& A, const Eigen::MatrixXd& basis, double tol = 1e-10);

/// Orthonormal basis (columns) of the smallest A-invariant subspace
/// containing v, via Krylov iteration saturated at the ambient dimension.
Eigen::MatrixXd minimal_invariant_subspace(const Eigen::MatrixXd& A, const Eigen::VectorXd& v,
                                           double tol = 1e-10);

/// True when the two column spans coincide (equal rank and equal joint rank).
bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-10);

struct FamilyCheck {
    std::string label;
    int trials = 0;           ///< parameter draws tested (1 for fixed subspaces)
    int invariant_count = 0;  ///< how many draws passed is_invariant
};

/// Result of the d = 1 demonstration: the four invariant families in
/// P_0 + P_1 (coordinates (a | b, c) for the pair (a, b t + c)), plus a
/// negative control of random planes.
struct FourFamiliesReport {
    std::vector<FamilyCheck> families;
    int random_trials = 0;
    int random_invariant_count = 0;   ///< expected 0 almost surely
    int minimal_dim_from_t = 0;       ///< dim of the cyclic subspace of (0,1,0)
    bool minimal_is_first_family = false;
    bool all_families_invariant = false;
};

FourFamiliesReport four_families_demo(unsigned seed = 20260823u);

}  // namespace shiftlab
