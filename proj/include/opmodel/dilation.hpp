#pragma once

#include "opmodel/variety.hpp"

namespace opm {

struct DilationData {
    std::string kind;  // "pure_poisson" or "constrained_pure"
    int ambient_dim = 0;
    int outer_dim = 0;
    int defect_dim = 0;
    int degree = 0;  // spanning words V_a embed run over |a| <= degree
    std::vector<CMatrix> V;
    CMatrix embed;      // H -> ambient
    CMatrix interior;   // projector onto ambient coordinates below the top slice
    int minimality_rank = 0;
    int interior_dim = 0;
    bool minimal = false;
    double embed_defect = 0.0;         // ||embed^* embed - I||
    double intertwining = 0.0;         // max_i ||V_i^* embed - embed T_i^*||
    double coinvariance = 0.0;         // max_i ||(I - P_H) V_i^* P_H||
    double row_isometry_defect = 0.0;  // ||f_i(V)^* f_j(V) - delta_ij I|| on interior columns, free case
    double tail = 0.0;
};

// columns V_a embed for all words |a| <= degree, Fock word order
CMatrix spanning_vectors(const DilationData& d);
// fills minimality_rank, interior_dim and minimal from V, embed and interior
void measure_minimality(DilationData& d, const Tolerances& tol = {});

// V_i = M_{Z_i} (x) I_D, embedded through the Poisson kernel
DilationData minimal_dilation_pure(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol = {});

struct UniquenessReport {
    CMatrix U;  // ambient1 -> ambient2 on the span of V_a embed
    double gram_residual = 0.0;
    double map_residual = 0.0;        // ||U M1 - M2||
    double isometry_defect = 0.0;     // ||U^* U - P_span1||
    double intertwining = 0.0;        // max_i ||(U V_i - V'_i U) on spanning vectors below the top||
    bool pass = false;
};
// throws GramMismatch when the spanning Gram matrices differ or either dilation is not minimal
UniquenessReport dilation_uniqueness_witness(const DilationData& a, const DilationData& b,
                                             const Tolerances& tol = {});

struct WoldReport {
    int ambient_dim = 0;
    int multiplicity = 0;  // rank of I - sum f_i(V) f_i(V)^*
    int dim_K0 = 0;
    int dim_K1 = 0;
    Subspace K0;
    // a nonzero K1 cannot carry exact Cuntz-type relations in finite dimensions (trace obstruction),
    // so it is only a numerical remainder
    bool k1_numerical_only = false;
};
WoldReport wold_split(const OperatorTuple& V, const NcSeriesTuple& f, const Tolerances& tol = {});

struct ConstrainedDilationData {
    DilationData dilation;
    double generator_norm = 0.0;  // generators evaluated at V, interior compression
    bool vanishing = false;
    bool defect_zero_X = false;
    bool defect_zero_V = false;
    bool defect_consistent = false;  // Delta_{f,X} = 0 iff Delta_{f,V} = 0
    bool V_pure = false;
};
ConstrainedDilationData constrained_dilation_pure(const VarietyContext& v, const OperatorTuple& X,
                                                  const Tolerances& tol = {});

struct CompleteContractivityReport {
    int samples = 0;
    int failures = 0;
    double worst_slack = 0.0;
    bool pass = false;
};
CompleteContractivityReport completely_contractive_check(const VarietyContext& v, const OperatorTuple& X, int level,
                                                         int samples, Rng& rng, const Tolerances& tol = {},
                                                         int max_deg = 2, int terms = 4);

}  // namespace opm
