#pragma once

#include "opmodel/fock.hpp"

#include <optional>
#include <string>

namespace opm {

struct OperatorTuple {
    std::vector<CMatrix> T;

    OperatorTuple() = default;
    explicit OperatorTuple(std::vector<CMatrix> mats);

    int n() const { return static_cast<int>(T.size()); }
    int dim() const { return T.empty() ? 0 : static_cast<int>(T[0].rows()); }
    const CMatrix& operator[](int i) const { return T.at(i); }
    // row operator [T_1 ... T_n] : H^(n) -> H
    CMatrix row() const;
    OperatorTuple adjoint_conjugated(const CMatrix& W) const;  // (W T_i W*)
};

using RMatrixResult = Eigen::MatrixXd;

struct ModelContext {
    FockContext fock;
    NcSeriesTuple f, g;
    std::vector<CMatrix> MZ, MF, LAM;
    std::string class_assertion = "unspecified";
    int g_degree = 1;  // highest nonzero degree of g
    int f_degree = 1;

    int n() const { return fock.n; }
    int degree() const { return fock.degree; }
    int dim() const { return fock.dim; }
};

ModelContext build_model(const NcSeriesTuple& f, const Tolerances& tol = {},
                         const std::string& class_assertion = "unspecified");

// <Z_j, Z_i> in H^2(f), read off the coefficients of g
cplx hardy_inner(const ModelContext& ctx, int i, int j);
// R(i,j) = ||P (M_{Z_i}^* M_{Z_j} - <Z_j, Z_i> I) P|| with P the interior of margin deg g
RMatrixResult model_gram_residuals(const ModelContext& ctx);
// f_i(M_Z) = S_i residual, max over i
double model_inverse_residual(const ModelContext& ctx);

struct SeriesEvaluation {
    std::vector<CMatrix> values;
    bool exact = false;        // tuple jointly nilpotent of order <= degree
    double tail_bound = 0.0;   // advisory majorant of the omitted terms
};
SeriesEvaluation evaluate_series(const NcSeriesTuple& F, const OperatorTuple& X);
bool jointly_nilpotent(const OperatorTuple& X, int order, double eps = 0.0);

enum class Membership { Inside, Boundary, Outside };
std::string to_string(Membership m);

struct MembershipReport {
    std::vector<double> residual;  // ||g(f(X)) - X|| per component
    double row_norm = 0.0;         // ||row f(X)||
    bool exact = false;
    Membership verdict = Membership::Outside;
    bool member() const { return verdict != Membership::Outside; }
};
MembershipReport membership_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol = {});

struct PowerReport {
    std::vector<double> r;  // r[k] = ||sum_{|a|=k} F_a F_a^*||, k = 0..K
    bool verdict = false;
    int fixed_dim = 0;      // c.n.c. only
    std::string label;      // "exact" or "diagnostic"
};
// iterate Y <- sum F_i Y F_i^* starting from Y = I
std::vector<CMatrix> phi_powers(const std::vector<CMatrix>& F, int K);
PowerReport pure_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol = {}, int K = 200);
PowerReport cnc_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol = {}, int K = 200);

struct DefectData {
    std::vector<CMatrix> fT;  // f_i(T)
    CMatrix delta;            // dim x dim
    CMatrix delta_star;       // n dim x n dim
    Subspace frame_D;
    Subspace frame_Dstar;
};
DefectData defects(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol = {});

struct PoissonKernelData {
    CMatrix K;               // H -> (Fock or N) (x) D, Fock index outer
    int outer_dim = 0;       // Fock dim, or dim N when constrained
    int defect_dim = 0;
    double tail = 0.0;       // ||sum_{|a|=d+1} F_a F_a^*||
    double isometry_defect = 0.0;  // ||K^*K - I||
    double kernel_defect = 0.0;    // ||K^*K - (I - sum_{|a|=d+1} F_a F_a^*)||, free case
    std::vector<double> intertwining;  // interior residuals of K T_i^* = (M_{Z_i}^* (x) I) K
};
// N, when given, is the frame of the constrained subspace
PoissonKernelData poisson_kernel(const ModelContext& ctx, const OperatorTuple& X, const DefectData& dd,
                                 const Tolerances& tol = {}, const Subspace* N = nullptr);

struct RankOneReport {
    double max_residual = 0.0;
    int instances = 0;
};
// r(A) P q(A)^* xi versus <xi, q(A) v> r(A) v with P = I - sum A_i A_i^*, v the vacuum
double rank_one_residual(const std::vector<CMatrix>& A, const CVector& vacuum, const NcSeries& q,
                         const NcSeries& r, const CVector& xi);
RankOneReport rank_one_identity_check(const ModelContext& ctx, Rng& rng, int instances = 50, int poly_degree = 2);
NcSeries random_polynomial(int n, int d, int max_deg, int terms, Rng& rng);

// test tuple generators
OperatorTuple random_nilpotent_tuple(int n, int dim, double row_norm, Rng& rng);
OperatorTuple random_contraction_tuple(int n, int dim, double row_norm, Rng& rng);
// T = g(Y), so that f(T) = Y for polynomial automorphisms or nilpotent Y
OperatorTuple pull_back(const ModelContext& ctx, const OperatorTuple& Y);

}  // namespace opm
