#pragma once

#include "opmodel/charfun.hpp"

namespace opm {

// H = [(outer (x) E) + range(Delta_Theta)] minus the graph {Theta x + Delta_Theta x}
struct ModelSpaceData {
    int outer_dim = 0;
    int e = 0;
    int e_star = 0;
    bool reduced = false;           // Theta was a partial isometry, H = (outer (x) E) minus range(Theta)
    double partial_isometry_defect = 0.0;
    Subspace defect_range;          // range frame of Delta_Theta inside outer (x) E_*; empty when reduced
    Subspace graph_frame;           // inside (outer (x) E) + defect_range
    Subspace H_frame;               // same ambient as graph_frame
    std::vector<CMatrix> D;         // D_i on the defect_range frame, only built when H reaches it
    double d_residual = 0.0;
    std::vector<CMatrix> Tt;        // model tuple in H_frame coordinates
    double coinvariance_defect = 0.0;  // ||(I - P_H) T_i^* P_H|| on the ambient space

    int dim() const { return H_frame.dim(); }
    OperatorTuple tuple() const { return OperatorTuple(Tt); }
};

// force_general skips the partial-isometry shortcut
ModelSpaceData build_model_space(const CharFunData& theta, const Tolerances& tol = {}, bool force_general = false);

struct SpechtReport {
    bool equivalent = false;
    int word_length = 0;
    int words_checked = 0;
    int basis_size = 0;
    double max_mismatch = 0.0;
    std::string mismatch_word;  // letters i and i* over the first failing word, empty when none
};
// Traces of all words in X_i, X_i^* up to length L. Words whose pair (w(X), w(Y)) is a linear
// combination of earlier pairs are not extended: their traces and all their extensions are then
// forced by the earlier ones. L <= 0 means 2 * dim.
SpechtReport specht_equivalence(const OperatorTuple& X, const OperatorTuple& Y, int L = 0,
                                const Tolerances& tol = {}, double trace_tol = 1e-7);

struct ReconstructionReport {
    bool pure = false;
    bool approximate = false;  // tuple not pure at this truncation
    int dim_X = 0;
    int dim_H = 0;
    bool reduced = false;
    SpechtReport specht;
    bool pass = false;
};
ReconstructionReport reconstruct_and_compare(const ModelContext& ctx, const OperatorTuple& X,
                                             const Tolerances& tol = {}, const VarietyContext* v = nullptr);

struct TupleFromThetaReport {
    ModelSpaceData model;
    PurelyContractiveReport purely;
    bool coincidence_checked = false;
    CoincidenceReport coincidence;
};
TupleFromThetaReport tuple_from_theta(const ModelContext& ctx, const CMatrix& theta, int e, int e_star,
                                      const Tolerances& tol = {});
TupleFromThetaReport tuple_from_theta(const VarietyContext& v, const CMatrix& theta, int e, int e_star,
                                      const Tolerances& tol = {});

// B (x) I_k has zero constrained characteristic function, and Theta = 0 gives back B (x) I_k
struct ZeroCharacteristicReport {
    bool contains_vacuum = false;
    double theta_norm = 0.0;
    bool theta_zero = false;
    SpechtReport specht;
    bool pass = false;
};
ZeroCharacteristicReport zero_characteristic_check(const VarietyContext& v, int k, const Tolerances& tol = {});

}  // namespace opm
