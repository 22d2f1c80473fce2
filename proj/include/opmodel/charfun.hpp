#pragma once

#include "opmodel/variety.hpp"

namespace opm {

struct CharFunData {
    CMatrix theta;        // (outer x E_*) -> (outer x E), outer index outermost
    CMatrix delta_theta;  // (I - theta^* theta)^{1/2}
    int outer_dim = 0;
    int e = 0;       // dim of the target multiplicity space (D_{f,T})
    int e_star = 0;  // dim of the source multiplicity space (D_{f,T*})
    // compressed Fourier coefficients, indexed by Fock word index; empty for raw input
    std::vector<CMatrix> blocks;
    // model operators on the outer space: M_Z (or B) and f(M_Z) = S (or f(B))
    std::vector<CMatrix> outer_Z, outer_F;
    CVector vacuum;
    std::vector<int> outer_degree;  // grading of outer coordinates
    int degree = 0;
    int g_degree = 1;
    bool constrained = false;
    bool degenerate = false;  // one of the defect spaces is trivial

    // (P_{<= d - margin} (x) I) on the target or source side
    CMatrix interior_target(int margin) const;
    CMatrix interior_source(int margin) const;
};

CharFunData characteristic_function(const ModelContext& ctx, const OperatorTuple& X, const DefectData& D,
                                    const Tolerances& tol = {});
CharFunData constrained_characteristic_function(const VarietyContext& v, const OperatorTuple& X,
                                                const DefectData& D, const Tolerances& tol = {});
// wrap an externally supplied multi-analytic operator on Fock (x) E_* -> Fock (x) E
CharFunData charfun_from_matrix(const ModelContext& ctx, const CMatrix& theta, int e, int e_star,
                                const Tolerances& tol = {});
// same on N (x) E_* -> N (x) E for a variety; no Fourier blocks are extracted
CharFunData charfun_from_matrix(const VarietyContext& v, const CMatrix& theta, int e, int e_star,
                                const Tolerances& tol = {});

// (I_outer (x) A) X
CMatrix inner_apply(const CMatrix& A, int outer, const CMatrix& X);
// X (I_outer (x) A)
CMatrix inner_apply_right(const CMatrix& X, int outer, const CMatrix& A);

struct IdentityReport {
    double residual = 0.0;
    double tail = 0.0;
    int margin = 0;
    bool pass = false;
};
IdentityReport fundamental_identity_check(const PoissonKernelData& K, const CharFunData& theta,
                                          const Tolerances& tol = {}, int margin = 0);

struct IsometryReport {
    double isometry_defect = 0.0;        // ||theta^* theta - I|| on interior columns
    double partial_isometry_defect = 0.0;  // ||A^2 - A||, A = theta^* theta on interior columns
    bool pure = false;
    bool degenerate = false;
    bool consistent = false;  // isometric (free) / partial isometry (constrained) agrees with pure verdict
    int margin = 0;
};
IsometryReport isometry_iff_pure_check(const CharFunData& theta, const PowerReport& pure, const Tolerances& tol = {},
                                       int margin = -1);
// smallest power L with r_L <= eps, capped at d
int settle_power(const PowerReport& pure, int degree, double eps = 1e-13);

struct MultiAnalyticReport {
    double residual = 0.0;
    int margin = 0;
};
MultiAnalyticReport multi_analytic_check(const CharFunData& theta);

struct CoincidenceReport {
    bool coincide = false;
    bool heuristic = false;
    std::string obstruction;  // "", "rank", "residual"
    double residual = 0.0;
    double unitary_defect = 0.0;
    CMatrix tau, tau_star;
};
CoincidenceReport coincide(const CharFunData& a, const CharFunData& b, const CMatrix& tau, const CMatrix& tau_star,
                           const Tolerances& tol = {});
// witnesses from a known unitary W with T' = W T W^*
std::pair<CMatrix, CMatrix> coincidence_witness(const DefectData& D, const DefectData& D2, const CMatrix& W);
// alternating Procrustes fit on the Fourier blocks
CoincidenceReport coincide_search(const CharFunData& a, const CharFunData& b, const Tolerances& tol = {},
                                  int restarts = 8, unsigned seed = 1);

struct PurelyContractiveReport {
    double vacuum_norm = 0.0;
    bool purely_contractive = false;
    int rank_full = 0;
    int rank_shifted = 0;
    bool range_condition = false;
};
PurelyContractiveReport purely_contractive_check(const CharFunData& theta, const Tolerances& tol = {});

// scalar-point characteristic function for commuting tuples
CMatrix commutative_char_at_point(const OperatorTuple& X, const DefectData& D, const NcSeriesTuple& f,
                                  const std::vector<cplx>& z, const Tolerances& tol = {});
// f evaluated at a point of C^n
std::vector<cplx> evaluate_at_point(const NcSeriesTuple& f, const std::vector<cplx>& z);
// symbol sum_k theta_k z^k of a one-variable Theta from its Fourier blocks
CMatrix symbol_at(const CharFunData& theta, cplx z);

}  // namespace opm
