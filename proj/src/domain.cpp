#include "opmodel/domain.hpp"

#include <cmath>
#include <limits>

namespace opm {

OperatorTuple::OperatorTuple(std::vector<CMatrix> mats) : T(std::move(mats)) {
    for (const auto& M : T)
        if (M.rows() != M.cols() || M.rows() != T[0].rows())
            fail("ShapeMismatch", "tuple entries must be square of equal size");
}

CMatrix OperatorTuple::row() const {
    CMatrix R(dim(), dim() * n());
    for (int i = 0; i < n(); ++i) R.middleCols(i * dim(), dim()) = T[i];
    return R;
}

OperatorTuple OperatorTuple::adjoint_conjugated(const CMatrix& W) const {
    std::vector<CMatrix> out;
    for (const auto& M : T) out.push_back(W * M * W.adjoint());
    return OperatorTuple(std::move(out));
}

ModelContext build_model(const NcSeriesTuple& f, const Tolerances& tol, const std::string& class_assertion) {
    ModelContext ctx;
    ctx.fock = FockContext(f.n(), f.degree());
    ctx.f = f;
    ctx.g = invert_composition(f, tol);
    ctx.class_assertion = class_assertion;
    ctx.f_degree = std::max(1, f.max_degree(1e-14));
    ctx.g_degree = std::max(1, ctx.g.max_degree(1e-14));
    ctx.MF = left_creations(ctx.fock);
    ctx.LAM = right_creations(ctx.fock);
    ctx.MZ = evaluate(ctx.g, ctx.MF);
    return ctx;
}

cplx hardy_inner(const ModelContext& ctx, int i, int j) {
    cplx s = 0.0;
    for (const auto& [w, a] : ctx.g[i].coeffs) s += std::conj(a) * ctx.g[j].coeff(w);
    return s;
}

RMatrixResult model_gram_residuals(const ModelContext& ctx) {
    int n = ctx.n();
    RMatrixResult R(n, n);
    CMatrix P = interior(ctx.fock, std::min(ctx.degree(), ctx.g_degree)).P;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            R(i, j) = spectral_norm(P * ctx.MZ[i].adjoint() * ctx.MZ[j] * P - hardy_inner(ctx, i, j) * P);
    return R;
}

double model_inverse_residual(const ModelContext& ctx) {
    auto fMZ = evaluate(ctx.f, ctx.MZ);
    CMatrix P = interior(ctx.fock, std::min(ctx.degree(), ctx.f_degree * ctx.g_degree)).P;
    double r = 0.0;
    for (int i = 0; i < ctx.n(); ++i) r = std::max(r, spectral_norm((fMZ[i] - ctx.MF[i]) * P));
    return r;
}

std::vector<CMatrix> phi_powers(const std::vector<CMatrix>& F, int K) {
    int m = F.empty() ? 0 : static_cast<int>(F[0].rows());
    std::vector<CMatrix> out;
    CMatrix Y = CMatrix::Identity(m, m);
    out.push_back(Y);
    for (int k = 1; k <= K; ++k) {
        CMatrix next = CMatrix::Zero(m, m);
        for (const auto& Fi : F) next += Fi * Y * Fi.adjoint();
        Y = 0.5 * (next + next.adjoint());
        out.push_back(Y);
    }
    return out;
}

bool jointly_nilpotent(const OperatorTuple& X, int order, double eps) {
    auto p = phi_powers(X.T, order);
    return spectral_norm(p.back()) <= eps;
}

SeriesEvaluation evaluate_series(const NcSeriesTuple& F, const OperatorTuple& X) {
    SeriesEvaluation ev;
    ev.values = evaluate(F, X.T);
    int d = F.degree();
    ev.exact = jointly_nilpotent(X, d + 1);
    if (!ev.exact) {
        double rho = std::sqrt(spectral_norm(X.row() * X.row().adjoint()));
        double top = 0.0;
        for (const auto& s : F.components) {
            double l1 = 0.0;
            for (const auto& [w, c] : s.coeffs)
                if (static_cast<int>(w.size()) == d) l1 += std::abs(c);
            top = std::max(top, l1);
        }
        ev.tail_bound = rho < 1.0 ? top * std::pow(rho, d + 1) / (1.0 - rho)
                                  : std::numeric_limits<double>::infinity();
    }
    return ev;
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::Inside: return "inside";
        case Membership::Boundary: return "boundary";
        default: return "outside";
    }
}

MembershipReport membership_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol) {
    if (X.n() != ctx.n()) fail("DimensionMismatch", "tuple length differs from variable count");
    MembershipReport rep;
    SeriesEvaluation fx = evaluate_series(ctx.f, X);
    OperatorTuple FX(fx.values);
    SeriesEvaluation back = evaluate_series(ctx.g, FX);
    rep.exact = fx.exact && back.exact;
    bool ok = true;
    for (int i = 0; i < X.n(); ++i) {
        double res = spectral_norm(back.values[i] - X[i]);
        rep.residual.push_back(res);
        double allowance = tol.check_abs * (1.0 + spectral_norm(X[i]));
        if (!rep.exact) allowance += fx.tail_bound + back.tail_bound;
        if (!(res <= allowance)) ok = false;
    }
    rep.row_norm = spectral_norm(FX.row());
    if (!ok || rep.row_norm > 1.0 + tol.check_abs)
        rep.verdict = Membership::Outside;
    else if (rep.row_norm >= 1.0 - tol.check_abs)
        rep.verdict = Membership::Boundary;
    else
        rep.verdict = Membership::Inside;
    return rep;
}

static std::vector<CMatrix> f_values(const ModelContext& ctx, const OperatorTuple& X) {
    if (X.n() != ctx.n()) fail("DimensionMismatch", "tuple length differs from variable count");
    return evaluate(ctx.f, X.T);
}

PowerReport pure_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol, int K) {
    PowerReport rep;
    auto F = f_values(ctx, X);
    for (const auto& Y : phi_powers(F, K)) rep.r.push_back(spectral_norm(Y));
    rep.verdict = rep.r.back() <= tol.check_abs;
    rep.label = jointly_nilpotent(OperatorTuple(F), std::min(K, X.dim() + 1)) ? "exact" : "diagnostic";
    return rep;
}

PowerReport cnc_check(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol, int K) {
    PowerReport rep;
    auto F = f_values(ctx, X);
    auto powers = phi_powers(F, 2 * K);
    for (int k = 0; k <= K; ++k) rep.r.push_back(spectral_norm(powers[k]));
    auto fixed = [&](const CMatrix& Y) {
        if (Y.size() == 0) return 0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(Y, Eigen::EigenvaluesOnly);
        int c = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) >= 1.0 - tol.check_abs) ++c;
        return c;
    };
    // a fixed vector must persist from K to 2K
    rep.fixed_dim = std::min(fixed(powers[K]), fixed(powers[2 * K]));
    rep.verdict = rep.fixed_dim == 0;
    rep.label = jointly_nilpotent(OperatorTuple(F), std::min(K, X.dim() + 1)) ? "exact" : "diagnostic";
    return rep;
}

DefectData defects(const ModelContext& ctx, const OperatorTuple& X, const Tolerances& tol) {
    DefectData dd;
    dd.fT = f_values(ctx, X);
    int m = X.dim(), n = X.n();
    CMatrix A = CMatrix::Identity(m, m);
    for (const auto& Fi : dd.fT) A -= Fi * Fi.adjoint();
    dd.delta = hermitian_psd_sqrt(A, tol);
    CMatrix row = OperatorTuple(dd.fT).row();
    dd.delta_star = hermitian_psd_sqrt(CMatrix::Identity(n * m, n * m) - row.adjoint() * row, tol);
    dd.frame_D = orth_range(dd.delta, tol);
    dd.frame_Dstar = orth_range(dd.delta_star, tol);
    return dd;
}

PoissonKernelData poisson_kernel(const ModelContext& ctx, const OperatorTuple& X, const DefectData& dd,
                                 const Tolerances& tol, const Subspace* N) {
    (void)tol;
    const FockContext& fc = ctx.fock;
    int m = X.dim(), r = dd.frame_D.dim(), d = fc.degree;
    PoissonKernelData out;
    out.defect_dim = r;
    // F_a for every word, built by appending letters
    std::vector<CMatrix> Fw(fc.dim);
    Fw[0] = CMatrix::Identity(m, m);
    CMatrix Kfree(fc.dim * r, m);
    CMatrix Dd = dd.frame_D.frame.adjoint() * dd.delta;
    for (int idx = 0; idx < fc.dim; ++idx) {
        Word w = fc.word(idx);
        if (idx > 0) {
            int last = w.back();
            Word pre(w.begin(), w.end() - 1);
            Fw[idx] = Fw[fc.index(pre)] * dd.fT[last - 1];
        }
        if (r > 0) Kfree.middleRows(idx * r, r) = Dd * Fw[idx].adjoint();
    }
    out.tail = spectral_norm(phi_powers(dd.fT, d + 1).back());
    CMatrix I = CMatrix::Identity(m, m);
    CMatrix limit_term = phi_powers(dd.fT, d + 1).back();
    int margin = std::min(d, ctx.g_degree);
    CMatrix inner = interior(fc, margin).P;
    if (N == nullptr) {
        out.K = Kfree;
        out.outer_dim = fc.dim;
        for (int i = 0; i < ctx.n(); ++i) {
            CMatrix diff = out.K * X[i].adjoint() - kron_apply(ctx.MZ[i].adjoint(), r, out.K);
            out.intertwining.push_back(r ? spectral_norm(kron_apply(inner, r, diff)) : 0.0);
        }
    } else {
        out.K = kron_apply(N->frame.adjoint(), r, Kfree);
        out.outer_dim = N->dim();
        for (int i = 0; i < ctx.n(); ++i) {
            CMatrix B = N->frame.adjoint() * ctx.MZ[i] * N->frame;
            CMatrix diff = out.K * X[i].adjoint() - kron_apply(B.adjoint(), r, out.K);
            CMatrix lifted = kron_apply(N->frame, r, diff);
            out.intertwining.push_back(r ? spectral_norm(kron_apply(inner, r, lifted)) : 0.0);
        }
    }
    CMatrix KK = out.K.adjoint() * out.K;
    out.isometry_defect = spectral_norm(KK - I);
    out.kernel_defect = spectral_norm(KK - (I - limit_term));
    return out;
}

double rank_one_residual(const std::vector<CMatrix>& A, const CVector& vacuum, const NcSeries& q,
                         const NcSeries& r, const CVector& xi) {
    int m = static_cast<int>(vacuum.size());
    CMatrix P = CMatrix::Identity(m, m);
    for (const auto& Ai : A) P -= Ai * Ai.adjoint();
    CMatrix qA = evaluate(q, A), rA = evaluate(r, A);
    CVector lhs = rA * P * qA.adjoint() * xi;
    CVector q1 = qA * vacuum;
    CVector rhs = q1.dot(xi) * (rA * vacuum);
    return (lhs - rhs).norm();
}

NcSeries random_polynomial(int n, int d, int max_deg, int terms, Rng& rng) {
    NcSeries p(n, d);
    auto words = words_up_to(n, std::min(d, max_deg));
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::normal_distribution<double> nd;
    for (int t = 0; t < terms; ++t) p.add_to(words[pick(rng)], cplx(nd(rng), nd(rng)));
    return p;
}

RankOneReport rank_one_identity_check(const ModelContext& ctx, Rng& rng, int instances, int poly_degree) {
    RankOneReport rep;
    const FockContext& fc = ctx.fock;
    auto A = evaluate(ctx.f, ctx.MZ);  // f(M_Z)
    CMatrix P = CMatrix::Identity(fc.dim, fc.dim);
    for (const auto& Ai : A) P -= Ai * Ai.adjoint();
    for (int t = 0; t < instances; ++t) {
        NcSeries q = random_polynomial(fc.n, fc.degree, poly_degree, 4, rng);
        NcSeries r = random_polynomial(fc.n, fc.degree, poly_degree, 4, rng);
        CVector xi = random_complex(fc.dim, 1, rng);
        CVector lhs = evaluate(r, A) * P * evaluate(q, A).adjoint() * xi;
        // right side straight from coefficient tables: q 1 = sum q_a e_a
        cplx pairing = 0.0;
        for (const auto& [w, c] : q.coeffs) pairing += std::conj(c) * xi(fc.index(w));
        CVector rhs = CVector::Zero(fc.dim);
        for (const auto& [w, c] : r.coeffs) rhs(fc.index(w)) += pairing * c;
        rep.max_residual = std::max(rep.max_residual, (lhs - rhs).norm());
        ++rep.instances;
    }
    return rep;
}

static void scale_row(std::vector<CMatrix>& T, double row_norm) {
    int m = static_cast<int>(T[0].rows());
    CMatrix R(m, m * static_cast<int>(T.size()));
    for (std::size_t i = 0; i < T.size(); ++i) R.middleCols(i * m, m) = T[i];
    double s = spectral_norm(R);
    if (s > 0)
        for (auto& M : T) M *= row_norm / s;
}

OperatorTuple random_nilpotent_tuple(int n, int dim, double row_norm, Rng& rng) {
    std::vector<CMatrix> T;
    for (int i = 0; i < n; ++i) {
        CMatrix M = random_complex(dim, dim, rng);
        T.push_back(M.triangularView<Eigen::StrictlyUpper>());
    }
    scale_row(T, row_norm);
    return OperatorTuple(std::move(T));
}

OperatorTuple random_contraction_tuple(int n, int dim, double row_norm, Rng& rng) {
    std::vector<CMatrix> T;
    for (int i = 0; i < n; ++i) T.push_back(random_complex(dim, dim, rng));
    scale_row(T, row_norm);
    return OperatorTuple(std::move(T));
}

OperatorTuple pull_back(const ModelContext& ctx, const OperatorTuple& Y) {
    return OperatorTuple(evaluate(ctx.g, Y.T));
}

}  // namespace opm
