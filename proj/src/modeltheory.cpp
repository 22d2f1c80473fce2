#include "opmodel/modeltheory.hpp"

#include <cmath>
#include <functional>

namespace opm {

ModelSpaceData build_model_space(const CharFunData& cf, const Tolerances& tol, bool force_general) {
    const CMatrix& Th = cf.theta;
    if (Th.size() > 0 && spectral_norm(Th) > 1.0 + tol.check_abs) fail("NotContractive", "theta has norm above one");
    ModelSpaceData ms;
    ms.outer_dim = cf.outer_dim;
    ms.e = cf.e;
    ms.e_star = cf.e_star;
    int rows = static_cast<int>(Th.rows()), cols = static_cast<int>(Th.cols());
    ms.partial_isometry_defect = Th.size() ? spectral_norm(Th * (Th.adjoint() * Th) - Th) : 0.0;
    ms.reduced = !force_general && ms.partial_isometry_defect <= tol.check_abs;

    CMatrix Delta;
    if (ms.reduced) {
        ms.defect_range = Subspace::zero(cols);
        ms.graph_frame = cols ? orth_range(Th, tol) : Subspace::zero(rows);
    } else {
        Delta = hermitian_psd_sqrt(CMatrix::Identity(cols, cols) - Th.adjoint() * Th, tol);
        ms.defect_range = orth_range(Delta, tol);
        CMatrix stacked(rows + ms.defect_range.dim(), cols);
        stacked << Th, ms.defect_range.frame.adjoint() * Delta;
        ms.graph_frame = cols ? orth_range(stacked, tol) : Subspace::zero(rows + ms.defect_range.dim());
    }
    ms.H_frame = orth_complement(ms.graph_frame, tol);

    int s = ms.defect_range.dim();
    const CMatrix& Q = ms.H_frame.frame;
    CMatrix Qt = Q.topRows(rows), Qb = Q.bottomRows(s);
    bool need_D = s > 0 && Qb.norm() > tol.check_abs;
    int n = static_cast<int>(cf.outer_Z.size());
    if (need_D) {
        const CMatrix& U = ms.defect_range.frame;
        CMatrix C = U.adjoint() * Delta;
        for (int i = 0; i < n; ++i) {
            CMatrix DZ = Delta * kron_apply(cf.outer_Z[i], cf.e_star, CMatrix::Identity(cols, cols));
            CMatrix R = U.adjoint() * DZ;
            double outside = spectral_norm(DZ - U * R);
            LeastSquares ls = least_squares_on_range(C.adjoint(), R.adjoint(), tol);
            ms.D.push_back(ls.X.adjoint());
            ms.d_residual = std::max({ms.d_residual, outside, spectral_norm(ms.D.back() * C - R)});
        }
        if (ms.d_residual > tol.check_abs)
            fail("DOperatorInconsistent", "range of Delta_Theta is not invariant at this truncation (residual " +
                                              std::to_string(ms.d_residual) + "); raise the degree");
    }
    for (int i = 0; i < n; ++i) {
        CMatrix ZQ = kron_apply(cf.outer_Z[i], cf.e, Qt);
        CMatrix T = Qt.adjoint() * ZQ;
        if (need_D) T += Qb.adjoint() * ms.D[i] * Qb;
        ms.Tt.push_back(T);
        // T_i^* on the ambient space applied to H, minus its compression
        CMatrix star(rows + s, Q.cols());
        star.topRows(rows) = kron_apply(cf.outer_Z[i].adjoint(), cf.e, Qt);
        if (s) star.bottomRows(s) = need_D ? CMatrix(ms.D[i].adjoint() * Qb) : CMatrix::Zero(s, Q.cols());
        if (Q.cols()) ms.coinvariance_defect = std::max(ms.coinvariance_defect, spectral_norm(star - Q * (Q.adjoint() * star)));
    }
    return ms;
}

namespace {

std::string letters_string(const std::vector<int>& w, int n) {
    std::string out;
    for (int a : w) {
        if (!out.empty()) out += ' ';
        out += std::to_string(a % n + 1);
        if (a >= n) out += '*';
    }
    return out;
}

CVector stack_pair(const CMatrix& A, const CMatrix& B) {
    CVector v(A.size() + B.size());
    v.head(A.size()) = Eigen::Map<const CVector>(A.data(), A.size());
    v.tail(B.size()) = Eigen::Map<const CVector>(B.data(), B.size());
    return v;
}

}  // namespace

SpechtReport specht_equivalence(const OperatorTuple& X, const OperatorTuple& Y, int L, const Tolerances& tol,
                                double trace_tol) {
    if (X.n() != Y.n() || X.dim() != Y.dim()) fail("DimensionMismatch", "tuples differ in size");
    int n = X.n(), m = X.dim();
    SpechtReport rep;
    rep.word_length = L > 0 ? L : 2 * m;
    std::vector<CMatrix> AX, AY;
    for (int i = 0; i < n; ++i) {
        AX.push_back(X[i]);
        AY.push_back(Y[i]);
    }
    for (int i = 0; i < n; ++i) {
        AX.push_back(X[i].adjoint());
        AY.push_back(Y[i].adjoint());
    }
    struct Node {
        std::vector<int> w;
        CMatrix MX, MY;
    };
    std::vector<CVector> basis;
    auto independent = [&](CVector v) {
        double nv = v.norm();
        if (nv <= 1e-13) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        double r = v.norm();
        if (r <= std::max(tol.rank_rel * nv, 1e-13)) return false;
        basis.push_back(v / r);
        return true;
    };
    std::vector<Node> frontier{{{}, CMatrix::Identity(m, m), CMatrix::Identity(m, m)}};
    if (m > 0) independent(stack_pair(frontier[0].MX, frontier[0].MY));
    std::size_t cap = 2 * static_cast<std::size_t>(m) * m;
    for (int len = 1; len <= rep.word_length && !frontier.empty(); ++len) {
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (int a = 0; a < 2 * n; ++a) {
                Node c{node.w, node.MX * AX[a], node.MY * AY[a]};
                c.w.push_back(a);
                ++rep.words_checked;
                cplx tx = c.MX.trace(), ty = c.MY.trace();
                double diff = std::abs(tx - ty);
                rep.max_mismatch = std::max(rep.max_mismatch, diff);
                if (diff > trace_tol * std::max(1.0, std::abs(tx))) {
                    rep.mismatch_word = letters_string(c.w, n);
                    rep.basis_size = static_cast<int>(basis.size());
                    return rep;
                }
                if (basis.size() < cap && independent(stack_pair(c.MX, c.MY))) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    rep.basis_size = static_cast<int>(basis.size());
    rep.equivalent = true;
    return rep;
}

ReconstructionReport reconstruct_and_compare(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol,
                                             const VarietyContext* v) {
    ReconstructionReport rep;
    rep.pure = pure_check(ctx, X, tol).verdict;
    rep.approximate = !rep.pure;
    DefectData D = defects(ctx, X, tol);
    CharFunData cf = v ? constrained_characteristic_function(*v, X, D, tol) : characteristic_function(ctx, X, D, tol);
    ModelSpaceData ms = build_model_space(cf, tol);
    rep.dim_X = X.dim();
    rep.dim_H = ms.dim();
    rep.reduced = ms.reduced;
    if (rep.dim_X != rep.dim_H) return rep;
    rep.specht = specht_equivalence(X, ms.tuple(), 2 * X.dim(), tol);
    rep.pass = rep.specht.equivalent;
    return rep;
}

static TupleFromThetaReport finish_tuple(const CharFunData& cf, const Tolerances& tol,
                                         const std::function<CharFunData(const OperatorTuple&)>& char_of) {
    TupleFromThetaReport rep;
    rep.model = build_model_space(cf, tol);
    rep.purely = purely_contractive_check(cf, tol);
    OperatorTuple T = rep.model.tuple();
    if (rep.purely.purely_contractive && rep.purely.range_condition && T.dim() > 0) {
        rep.coincidence = coincide_search(char_of(T), cf, tol);
        rep.coincidence_checked = true;
    }
    return rep;
}

TupleFromThetaReport tuple_from_theta(const ModelContext& ctx, const CMatrix& theta, int e, int e_star,
                                      const Tolerances& tol) {
    CharFunData cf = charfun_from_matrix(ctx, theta, e, e_star, tol);
    return finish_tuple(cf, tol, [&](const OperatorTuple& T) {
        return characteristic_function(ctx, T, defects(ctx, T, tol), tol);
    });
}

TupleFromThetaReport tuple_from_theta(const VarietyContext& v, const CMatrix& theta, int e, int e_star,
                                      const Tolerances& tol) {
    CharFunData cf = charfun_from_matrix(v, theta, e, e_star, tol);
    return finish_tuple(cf, tol, [&](const OperatorTuple& T) {
        return constrained_characteristic_function(v, T, defects(v.model, T, tol), tol);
    });
}

ZeroCharacteristicReport zero_characteristic_check(const VarietyContext& v, int k, const Tolerances& tol) {
    ZeroCharacteristicReport rep;
    rep.contains_vacuum = v.contains_vacuum;
    std::vector<CMatrix> BI;
    for (const auto& B : v.B) BI.push_back(kron(B, CMatrix::Identity(k, k)));
    OperatorTuple T(BI);
    DefectData D = defects(v.model, T, tol);
    CharFunData cf = constrained_characteristic_function(v, T, D, tol);
    rep.theta_norm = cf.theta.size() ? spectral_norm(cf.theta) : 0.0;
    rep.theta_zero = rep.theta_norm <= tol.check_abs;
    // the converse: Theta = 0 between N (x) C^k spaces
    int p = v.dim();
    CharFunData zero = charfun_from_matrix(v, CMatrix::Zero(p * k, p * k), k, k, tol);
    ModelSpaceData ms = build_model_space(zero, tol);
    if (ms.dim() == T.dim()) rep.specht = specht_equivalence(T, ms.tuple(), 0, tol);
    rep.pass = rep.contains_vacuum && rep.theta_zero && rep.specht.equivalent;
    return rep;
}

}  // namespace opm
