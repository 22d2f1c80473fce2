#pragma once

#include "opmodel/charfun.hpp"

namespace opm {

using Point = std::vector<cplx>;

// points of the scalar domain { z : sum |f_i(z)|^2 < 1, g(f(z)) = z }
struct PointSet {
    std::vector<Point> points;
    int size() const { return static_cast<int>(points.size()); }
};

struct PointCheck {
    double f_norm_sq = 0.0;     // sum |f_i(z)|^2
    double inverse_gap = 0.0;   // |g(f(z)) - z|
    bool inside = false;
};
PointCheck check_point(const ModelContext& ctx, const Point& z, const Tolerances& tol = {});
// z = g(w) for w uniform in the ball of the given radius, each point re-checked
PointSet sample_points(const ModelContext& ctx, int count, Rng& rng, double radius = 0.9,
                       const Tolerances& tol = {});

// 1 / (1 - sum f_i(mu) conj(f_i(lambda)))
cplx kernel_eval(const ModelContext& ctx, const Point& mu, const Point& lambda, const Tolerances& tol = {});

struct KernelSeries {
    cplx partial = 0.0;      // sum over |a| <= degree of f_a(mu) conj(f_a(lambda))
    double tail_bound = 0.0;  // r^{degree+1} / (1 - r), r = |f(mu)| |f(lambda)|
};
KernelSeries kernel_partial_sum(const ModelContext& ctx, const Point& mu, const Point& lambda, int degree);

struct GramReport {
    CMatrix gram;
    double min_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
    bool pass = false;
};
GramReport gram_psd_check(const ModelContext& ctx, const PointSet& P, double tol = 1e-10);

struct PickReport {
    CMatrix pick;  // blocks (I - Theta(z_i) Theta(z_j)^*) K(z_i, z_j)
    double min_eigenvalue = 0.0;
    double threshold = 0.0;  // -1e-9 * trace
    bool pass = false;
};
// theta_scale multiplies Theta before assembly; values above 1 are for sensitivity checks
PickReport pick_contractivity_check(const ModelContext& ctx, const OperatorTuple& X, const PointSet& P,
                                    double theta_scale = 1.0, const Tolerances& tol = {});

// sum_a conj(f_a(lambda)) e_a through the truncation degree, as a Fock vector
CVector kernel_vector(const ModelContext& ctx, const Point& lambda);

struct SymmetricModelReport {
    double eigen_residual = 0.0;    // max_i ||interior (B_i^* v - conj(lambda_i) v)||, normalized by ||v||
    double tail = 0.0;              // same residual outside the interior
    double membership_defect = 0.0;  // distance of the kernel vector from N, normalized
    double norm_gap = 0.0;          // | ||v||^2 - K(lambda, lambda) |
    double norm_tail_bound = 0.0;
    bool pass = false;
};
SymmetricModelReport symmetric_model_consistency(const VarietyContext& v, const PointSet& P, double tol = 1e-8);

struct PointEvaluationReport {
    double max_gap = 0.0;        // | Theta(z) - (k_z^* (x) I) Theta (e_0 (x) I) |
    double max_tail_bound = 0.0;  // r^{d+1} / (1 - r), r = |f(z)|
    bool pass = false;
};
// compares commutative_char_at_point with the constrained Theta read against kernel vectors
PointEvaluationReport point_evaluation_consistency(const VarietyContext& v, const OperatorTuple& X,
                                                   const PointSet& P, const Tolerances& tol = {});

}  // namespace opm
