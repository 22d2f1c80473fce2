#include "opmodel/dilation.hpp"

#include <limits>

namespace opm {

CMatrix spanning_vectors(const DilationData& d) {
    int n = static_cast<int>(d.V.size());
    FockContext fc(n, d.degree);
    int m = static_cast<int>(d.embed.cols());
    CMatrix M(d.ambient_dim, fc.dim * m);
    M.leftCols(m) = d.embed;
    for (int idx = 1; idx < fc.dim; ++idx) {
        Word w = fc.word(idx);
        Word rest(w.begin() + 1, w.end());
        M.middleCols(idx * m, m) = d.V[w.front() - 1] * M.middleCols(fc.index(rest) * m, m);
    }
    return M;
}

void measure_minimality(DilationData& d, const Tolerances& tol) {
    d.interior_dim = numerical_rank(d.interior, tol.rank_rel);
    d.minimality_rank = d.embed.cols() ? numerical_rank(d.interior * spanning_vectors(d), tol.rank_rel) : 0;
    d.minimal = d.minimality_rank == d.interior_dim;
}

namespace {

void common_checks(DilationData& d, const OperatorTuple& X, const Tolerances& tol) {
    const CMatrix& E = d.embed;
    int m = static_cast<int>(E.cols());
    d.embed_defect = m ? spectral_norm(E.adjoint() * E - CMatrix::Identity(m, m)) : 0.0;
    for (int i = 0; i < X.n(); ++i) {
        CMatrix VE = d.V[i].adjoint() * E;
        d.intertwining = std::max(d.intertwining, spectral_norm(VE - E * X[i].adjoint()));
        d.coinvariance = std::max(d.coinvariance, spectral_norm(VE - E * (E.adjoint() * VE)));
    }
    measure_minimality(d, tol);
}

std::vector<CMatrix> tensor_identity(const std::vector<CMatrix>& A, int r) {
    std::vector<CMatrix> out;
    for (const auto& a : A) out.push_back(kron(a, CMatrix::Identity(r, r)));
    return out;
}

}  // namespace

DilationData minimal_dilation_pure(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol) {
    if (!pure_check(ctx, X, tol).verdict) fail("NotPure", "tuple is not pure");
    DefectData D = defects(ctx, X, tol);
    PoissonKernelData K = poisson_kernel(ctx, X, D, tol);
    DilationData d;
    d.kind = "pure_poisson";
    d.outer_dim = ctx.dim();
    d.defect_dim = D.frame_D.dim();
    d.degree = ctx.degree();
    d.ambient_dim = d.outer_dim * d.defect_dim;
    d.V = tensor_identity(ctx.MZ, d.defect_dim);
    d.embed = K.K;
    d.tail = K.tail;
    d.interior = kron(interior(ctx.fock, 1).P, CMatrix::Identity(d.defect_dim, d.defect_dim));
    common_checks(d, X, tol);
    // f(V) should be the row of creations, isometric on columns below the top slice
    auto fV = evaluate(ctx.f, d.V);
    for (int i = 0; i < ctx.n(); ++i)
        for (int j = 0; j < ctx.n(); ++j) {
            CMatrix G = fV[i].adjoint() * fV[j];
            if (i == j) G -= CMatrix::Identity(G.rows(), G.cols());
            d.row_isometry_defect = std::max(d.row_isometry_defect, spectral_norm(G * d.interior));
        }
    return d;
}

UniquenessReport dilation_uniqueness_witness(const DilationData& a, const DilationData& b, const Tolerances& tol) {
    if (a.embed.cols() != b.embed.cols() || a.V.size() != b.V.size() || a.degree != b.degree)
        fail("GramMismatch", "dilations of different tuples");
    if (!a.minimal || !b.minimal) fail("GramMismatch", "a dilation is not minimal");
    UniquenessReport rep;
    CMatrix M1 = spanning_vectors(a), M2 = spanning_vectors(b);
    CMatrix G1 = M1.adjoint() * M1;
    double scale = std::max(1.0, spectral_norm(G1));
    rep.gram_residual = spectral_norm(G1 - M2.adjoint() * M2);
    if (rep.gram_residual > tol.check_abs * scale) fail("GramMismatch", "spanning Gram matrices differ");
    rep.U = least_squares_on_range(M1.adjoint(), M2.adjoint(), tol).X.adjoint();
    rep.map_residual = spectral_norm(rep.U * M1 - M2);
    rep.isometry_defect = spectral_norm(rep.U.adjoint() * rep.U - orth_range(M1, tol).projector());
    // words below the top stay inside the truncation after one more letter
    int m = static_cast<int>(a.embed.cols());
    int below = static_cast<int>(fock_dim(static_cast<int>(a.V.size()), a.degree - 1)) * m;
    CMatrix low = M1.leftCols(below);
    for (std::size_t i = 0; i < a.V.size(); ++i)
        rep.intertwining = std::max(rep.intertwining, spectral_norm(rep.U * (a.V[i] * low) - b.V[i] * (rep.U * low)));
    double lim = tol.check_abs * scale;
    rep.pass = rep.map_residual <= lim && rep.isometry_defect <= lim && rep.intertwining <= lim;
    return rep;
}

WoldReport wold_split(const OperatorTuple& V, const NcSeriesTuple& f, const Tolerances& tol) {
    WoldReport rep;
    int m = V.dim();
    rep.ambient_dim = m;
    auto fV = evaluate(f, V.T);
    CMatrix Q = CMatrix::Identity(m, m);
    for (const auto& F : fV) Q -= F * F.adjoint();
    Q = 0.5 * (Q + Q.adjoint());
    Subspace R = orth_range(Q, tol);
    rep.multiplicity = R.dim();
    Subspace K0 = R;
    while (K0.dim() > 0) {
        CMatrix grown(m, K0.dim() * (1 + V.n()));
        grown.leftCols(K0.dim()) = K0.frame;
        for (int i = 0; i < V.n(); ++i) grown.middleCols(K0.dim() * (1 + i), K0.dim()) = V[i] * K0.frame;
        Subspace next = orth_range(grown, tol);
        bool done = next.dim() == K0.dim();
        K0 = next;
        if (done) break;
    }
    rep.K0 = K0;
    rep.dim_K0 = K0.dim();
    rep.dim_K1 = m - rep.dim_K0;
    rep.k1_numerical_only = rep.dim_K1 > 0;
    return rep;
}

ConstrainedDilationData constrained_dilation_pure(const VarietyContext& v, const OperatorTuple& X,
                                                  const Tolerances& tol) {
    const ModelContext& ctx = v.model;
    if (!pure_check(ctx, X, tol).verdict) fail("NotPure", "tuple is not pure");
    if (!vanishing_check(v, X, tol).pass) fail("ConstraintViolated", "tuple does not annihilate the ideal");
    DefectData D = defects(ctx, X, tol);
    PoissonKernelData K = poisson_kernel(ctx, X, D, tol, &v.N_frame);
    ConstrainedDilationData out;
    DilationData& d = out.dilation;
    d.kind = "constrained_pure";
    d.outer_dim = v.dim();
    d.defect_dim = D.frame_D.dim();
    d.degree = ctx.degree();
    d.ambient_dim = d.outer_dim * d.defect_dim;
    d.V = tensor_identity(v.B, d.defect_dim);
    d.embed = K.K;
    d.tail = K.tail;
    CMatrix Ir = CMatrix::Identity(d.defect_dim, d.defect_dim);
    d.interior = kron(interior_in_N(v, 1), Ir);
    common_checks(d, X, tol);

    int margin = std::min(ctx.degree(), v.generator_degree * ctx.g_degree);
    CMatrix Pg = kron(interior_in_N(v, margin), Ir);
    for (const auto& G : generators_at(ctx, v.ideal, OperatorTuple(d.V)))
        out.generator_norm = std::max(out.generator_norm, spectral_norm(Pg * G * Pg));
    out.vanishing = out.generator_norm <= tol.check_abs;

    out.defect_zero_X = spectral_norm(D.delta) <= tol.check_abs;
    auto fV = evaluate(ctx.f, d.V);
    CMatrix QV = CMatrix::Identity(d.ambient_dim, d.ambient_dim);
    for (const auto& F : fV) QV -= F * F.adjoint();
    out.defect_zero_V = spectral_norm(d.interior * QV * d.interior) <= tol.check_abs;
    out.defect_consistent = out.defect_zero_X == out.defect_zero_V;
    out.V_pure = pure_check(ctx, OperatorTuple(d.V), tol).verdict;
    return out;
}

CompleteContractivityReport completely_contractive_check(const VarietyContext& v, const OperatorTuple& X, int level,
                                                         int samples, Rng& rng, const Tolerances& tol, int max_deg,
                                                         int terms) {
    if (level < 1 || level > 3) fail("SchemaError", "matrix level must be 1, 2 or 3");
    CompleteContractivityReport rep;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        KernelPolynomial p = random_kernel_polynomial(X.n(), level, max_deg, terms, rng);
        InequalityReport r = complete_contractivity_check(v, X, p, tol);
        ++rep.samples;
        if (!r.pass) ++rep.failures;
        rep.worst_slack = std::min(rep.worst_slack, r.slack());
    }
    rep.pass = rep.failures == 0;
    return rep;
}

}  // namespace opm
