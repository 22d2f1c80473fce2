#pragma once

#include "opmodel/variety.hpp"

namespace opm {

struct BeurlingFactorization {
    int k = 0;      // multiplicity of the target, M lives in N (x) C^k
    int G_dim = 0;  // dimension of the wandering subspace
    Subspace lifted;           // E = (M_J (x) K) + M inside Fock (x) K
    Subspace wandering_frame;  // E minus sum_i (S_i (x) I) E, inside Fock (x) K
    CMatrix psi;    // Fock (x) G -> Fock (x) K, e_a (x) w_j -> (S_a (x) I) w_j
    CMatrix theta;  // N (x) G -> N (x) K
    double lift_invariance = 0.0;        // ||(I - P_E)(S_i (x) I) P_E||
    double wandering_orthogonality = 0.0;  // max |<S_a w, S_b w'>| over a != b below the support margin
    double residual = 0.0;               // ||P_M - theta theta^*||
    double partial_isometry_defect = 0.0;  // ||(theta^* theta)^2 - theta^* theta||
    double intertwining = 0.0;  // ||theta (B_i (x) I_G) - (B_i (x) I_K) theta|| below the top slice
    double round_trip = 0.0;    // ||P_M - P_{range theta}||
    // E invariant under the word-length grading; otherwise the wandering vectors carry tails past the
    // truncation and theta is only approximately a partial isometry
    bool graded = false;
};

// smallest subspace of N (x) C^k containing the columns of `seed` and invariant under B_i (x) I
Subspace invariant_closure(const VarietyContext& v, int k, const CMatrix& seed, const Tolerances& tol = {});

// M is given by a frame in N-frame (x) C^k coordinates
BeurlingFactorization beurling_factor(const VarietyContext& v, const Subspace& M, const Tolerances& tol = {});

struct LiftingProblem {
    const VarietyContext* v = nullptr;
    int k1 = 1, k2 = 1;
    Subspace E1, E2;  // co-invariant under B_i (x) I, in N (x) C^{k_j} coordinates
    CMatrix X;        // E1 -> E2 in frame coordinates
    int max_iterations = 500;  // per bisection step
    int bisection_steps = 20;
    double opt_tol = 1e-6;
};

struct LiftReport {
    CMatrix G;
    double norm = 0.0;
    double x_norm = 0.0;
    double eps_lift = 0.0;  // ||G|| / ||X|| - 1
    double intertwining = 0.0;  // max_i ||G (B_i (x) I) - (B_i (x) I) G||
    double compression = 0.0;   // ||P_{E2} G|_{E1} - X||
    double range_defect = 0.0;  // ||(I - P_{E1}) G^* |_{E2}||
    int iterations = 0;
    double bisection_norm = 0.0;  // norm reached by the projection stage alone
    int newton_steps = 0;
};
// min ||G|| subject to the intertwining relations and G^*|_{E2} = X^*, by bisection on the norm with
// alternating projections between the affine constraint set and the spectral ball, then a log-det
// barrier polish inside the affine set (projections crawl once the ball is nearly tangent)
LiftReport commutant_lift(const LiftingProblem& problem);

struct GeneratedLift {
    LiftingProblem problem;  // points at the variety passed in
    CMatrix canonical;       // a commuting G of which X is the compression
};
// E1 = E2 = (complement of a graded invariant subspace) (x) C^k, X the compression of sum_{|a| <= 2} B_a (x) C_a
GeneratedLift random_feasible_lifting(const VarietyContext& v, int k, Rng& rng);

struct ParrottInstance {
    LiftingProblem problem;
    double closed_form = 0.0;  // max of the known rows and the known columns
};
// one variable, degree 1, trivial ideal: G = [[A0, 0], [A1, A0]] with one row of A1 unknown
ParrottInstance parrott_instance(const VarietyContext& v, int k, Rng& rng);

}  // namespace opm
