#pragma once

#include "opmodel/domain.hpp"

namespace opm {

enum class IdealKind { Commutator, HomogeneousComposed, ExplicitGenerators };
std::string to_string(IdealKind k);
IdealKind ideal_kind_from_string(const std::string& s);

struct IdealSpec {
    IdealKind kind = IdealKind::ExplicitGenerators;
    std::vector<NcSeries> polys;  // unused for the commutator ideal

    static IdealSpec commutator() { return {IdealKind::Commutator, {}}; }
    static IdealSpec trivial() { return {IdealKind::ExplicitGenerators, {}}; }
};

bool is_homogeneous(const NcSeries& p);

struct VarietyContext {
    ModelContext model;
    IdealSpec ideal;
    Subspace M_frame;  // M_{f,J}
    Subspace N_frame;  // N_{f,J}
    std::vector<int> N_degrees;  // degree of each frame column when N is graded, else empty
    std::vector<CMatrix> B, W;
    bool contains_vacuum = false;
    double dropped_mass = 0.0;  // largest top-slice mass lost while closing M_{f,J}
    int generator_degree = 0;

    int dim() const { return N_frame.dim(); }
    CMatrix P_N() const { return N_frame.projector(); }
};

// generator matrices on the Fock space
std::vector<CMatrix> generator_matrices(const ModelContext& ctx, const IdealSpec& ideal);
// generators evaluated at an arbitrary tuple (the tuple plays the role of M_Z)
std::vector<CMatrix> generators_at(const ModelContext& ctx, const IdealSpec& ideal, const OperatorTuple& X);

VarietyContext build_variety(const ModelContext& ctx, const IdealSpec& ideal, const Tolerances& tol = {});

struct ConstraintReport {
    std::vector<double> norms;
    bool pass = true;
    double max_norm() const;
};
ConstraintReport vanishing_check(const VarietyContext& v, const OperatorTuple& X, const Tolerances& tol = {});
ConstraintReport universal_constraint_check(const VarietyContext& v, const Tolerances& tol = {});
double coinvariance_defect(const VarietyContext& v);
// projector in N coordinates onto frame columns of degree <= d - margin
CMatrix interior_in_N(const VarietyContext& v, int margin);

// one sample of coefficients a_{ab}^{(ij)}: for each (i, j) a map (a, b) -> coefficient
struct KernelPolynomial {
    int level = 1;
    std::vector<std::vector<std::map<std::pair<Word, Word>, cplx>>> coeffs;  // [i][j]
};
KernelPolynomial random_kernel_polynomial(int n, int level, int max_deg, int terms, Rng& rng);
// [sum a_{ab}^{(ij)} X_a X_b^*]_{i,j}
CMatrix kernel_polynomial_at(const KernelPolynomial& p, const std::vector<CMatrix>& X);

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    double slack() const { return rhs - lhs; }
};
InequalityReport von_neumann_inequality_check(const VarietyContext& v, const OperatorTuple& X,
                                              const std::vector<NcSeries>& polys, const Tolerances& tol = {});
InequalityReport complete_contractivity_check(const VarietyContext& v, const OperatorTuple& X,
                                              const KernelPolynomial& p, const Tolerances& tol = {});

// the rank-one identity at the compressed tuple f(B)
RankOneReport constrained_rank_one_check(const VarietyContext& v, Rng& rng, int instances = 50, int poly_degree = 2);

// commuting nilpotent tuples: polynomials in one random nilpotent matrix
OperatorTuple random_commuting_nilpotent_tuple(int n, int dim, double row_norm, Rng& rng);

}  // namespace opm
