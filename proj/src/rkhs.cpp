#include "opmodel/rkhs.hpp"

#include <random>

namespace opm {

namespace {

double norm_sq(const std::vector<cplx>& w) {
    double s = 0.0;
    for (cplx c : w) s += std::norm(c);
    return s;
}

void require_inside(const ModelContext& ctx, const Point& z, const Tolerances& tol) {
    if (static_cast<int>(z.size()) != ctx.n()) fail("ShapeMismatch", "point has the wrong number of coordinates");
    auto c = check_point(ctx, z, tol);
    if (!c.inside)
        fail("PointOutsideDomain", "sum |f_i(z)|^2 = " + std::to_string(c.f_norm_sq) +
                                       ", |g(f(z)) - z| = " + std::to_string(c.inverse_gap));
}

// value at every Fock word of prod_k a(w_k), built from the word with its first letter removed
std::vector<cplx> word_products(const FockContext& fc, const std::vector<cplx>& a) {
    std::vector<cplx> out(fc.dim);
    out[0] = 1.0;
    for (int idx = 1; idx < fc.dim; ++idx) {
        Word w = fc.word(idx);
        out[idx] = a[w.front() - 1] * out[fc.index(Word(w.begin() + 1, w.end()))];
    }
    return out;
}

double ball_radius_tail(double r, int d) { return r < 1.0 ? std::pow(r, d + 1) / (1.0 - r) : std::numeric_limits<double>::infinity(); }

}  // namespace

PointCheck check_point(const ModelContext& ctx, const Point& z, const Tolerances& tol) {
    PointCheck c;
    auto w = evaluate_at_point(ctx.f, z);
    c.f_norm_sq = norm_sq(w);
    auto back = evaluate_at_point(ctx.g, w);
    for (std::size_t i = 0; i < z.size(); ++i) c.inverse_gap = std::max(c.inverse_gap, std::abs(back[i] - z[i]));
    c.inside = c.f_norm_sq < 1.0 && c.inverse_gap <= tol.check_abs;
    return c;
}

PointSet sample_points(const ModelContext& ctx, int count, Rng& rng, double radius, const Tolerances& tol) {
    int n = ctx.n();
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    PointSet P;
    while (P.size() < count) {
        std::vector<cplx> w(n);
        for (auto& c : w) c = cplx(gauss(rng), gauss(rng));
        double len = std::sqrt(norm_sq(w));
        if (len == 0.0) continue;
        double r = radius * std::pow(unif(rng), 1.0 / (2.0 * n));
        for (auto& c : w) c *= r / len;
        Point z = evaluate_at_point(ctx.g, w);
        // g of a polynomial automorphism can leave the ball only through truncation; drop those
        if (check_point(ctx, z, tol).inside) P.points.push_back(z);
    }
    return P;
}

cplx kernel_eval(const ModelContext& ctx, const Point& mu, const Point& lambda, const Tolerances& tol) {
    require_inside(ctx, mu, tol);
    require_inside(ctx, lambda, tol);
    auto a = evaluate_at_point(ctx.f, mu), b = evaluate_at_point(ctx.f, lambda);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return 1.0 / (1.0 - s);
}

KernelSeries kernel_partial_sum(const ModelContext& ctx, const Point& mu, const Point& lambda, int degree) {
    auto a = evaluate_at_point(ctx.f, mu), b = evaluate_at_point(ctx.f, lambda);
    std::vector<cplx> ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] * std::conj(b[i]);
    KernelSeries ks;
    auto terms = word_products(ctx.fock, ab);
    for (int idx = 0; idx < ctx.fock.dim; ++idx)
        if (static_cast<int>(ctx.fock.word(idx).size()) <= degree) ks.partial += terms[idx];
    ks.tail_bound = ball_radius_tail(std::sqrt(norm_sq(a) * norm_sq(b)), degree);
    return ks;
}

GramReport gram_psd_check(const ModelContext& ctx, const PointSet& P, double tol) {
    int m = P.size();
    GramReport r;
    r.gram = CMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.gram(i, j) = kernel_eval(ctx, P.points[i], P.points[j]);
    r.hermitian_defect = m ? (r.gram - r.gram.adjoint()).cwiseAbs().maxCoeff() : 0.0;
    CMatrix H = 0.5 * (r.gram + r.gram.adjoint());
    r.min_eigenvalue = m ? Eigen::SelfAdjointEigenSolver<CMatrix>(H, Eigen::EigenvaluesOnly).eigenvalues()(0) : 0.0;
    r.pass = r.min_eigenvalue >= -tol;
    return r;
}

PickReport pick_contractivity_check(const ModelContext& ctx, const OperatorTuple& X, const PointSet& P,
                                    double theta_scale, const Tolerances& tol) {
    auto D = defects(ctx, X, tol);
    std::vector<CMatrix> theta;
    for (const auto& z : P.points) {
        require_inside(ctx, z, tol);
        theta.push_back(theta_scale * commutative_char_at_point(X, D, ctx.f, z, tol));
    }
    PickReport r;
    int m = P.size(), e = m ? static_cast<int>(theta[0].rows()) : 0;
    r.pick = CMatrix::Zero(m * e, m * e);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CMatrix blk = CMatrix::Identity(e, e) - theta[i] * theta[j].adjoint();
            r.pick.block(i * e, j * e, e, e) = blk * kernel_eval(ctx, P.points[i], P.points[j], tol);
        }
    if (r.pick.size() == 0) {
        r.pass = true;
        return r;
    }
    CMatrix H = 0.5 * (r.pick + r.pick.adjoint());
    r.min_eigenvalue = Eigen::SelfAdjointEigenSolver<CMatrix>(H, Eigen::EigenvaluesOnly).eigenvalues()(0);
    r.threshold = -1e-9 * std::abs(H.trace().real());
    r.pass = r.min_eigenvalue >= r.threshold;
    return r;
}

CVector kernel_vector(const ModelContext& ctx, const Point& lambda) {
    auto w = evaluate_at_point(ctx.f, lambda);
    for (auto& c : w) c = std::conj(c);
    auto vals = word_products(ctx.fock, w);
    return Eigen::Map<const CVector>(vals.data(), ctx.fock.dim);
}

SymmetricModelReport symmetric_model_consistency(const VarietyContext& v, const PointSet& P, double tol) {
    const ModelContext& ctx = v.model;
    SymmetricModelReport r;
    CMatrix interior = interior_in_N(v, ctx.g_degree);
    CMatrix exterior = CMatrix::Identity(v.dim(), v.dim()) - interior;
    const CMatrix& N = v.N_frame.frame;
    for (const auto& z : P.points) {
        require_inside(ctx, z, Tolerances{});
        CVector u = kernel_vector(ctx, z);
        CVector vz = N.adjoint() * u;
        double un = u.norm();
        r.membership_defect = std::max(r.membership_defect, (u - N * vz).norm() / un);
        for (int i = 0; i < ctx.n(); ++i) {
            CVector res = v.B[i].adjoint() * vz - std::conj(z[i]) * vz;
            r.eigen_residual = std::max(r.eigen_residual, (interior * res).norm() / un);
            r.tail = std::max(r.tail, (exterior * res).norm() / un);
        }
        cplx K = kernel_eval(ctx, z, z);
        r.norm_gap = std::max(r.norm_gap, std::abs(u.squaredNorm() - K.real()));
        r.norm_tail_bound = std::max(r.norm_tail_bound, kernel_partial_sum(ctx, z, z, ctx.degree()).tail_bound);
    }
    r.pass = r.eigen_residual <= tol && r.membership_defect <= tol && r.norm_gap <= r.norm_tail_bound + tol;
    return r;
}

PointEvaluationReport point_evaluation_consistency(const VarietyContext& v, const OperatorTuple& X,
                                                   const PointSet& P, const Tolerances& tol) {
    const ModelContext& ctx = v.model;
    auto D = defects(ctx, X, tol);
    auto cf = constrained_characteristic_function(v, X, D, tol);
    PointEvaluationReport r;
    CMatrix Ie = CMatrix::Identity(cf.e, cf.e), Ies = CMatrix::Identity(cf.e_star, cf.e_star);
    CMatrix column = cf.theta * kron(CMatrix(cf.vacuum), Ies);
    for (const auto& z : P.points) {
        require_inside(ctx, z, tol);
        CVector k = v.N_frame.frame.adjoint() * kernel_vector(ctx, z);
        CMatrix read = kron(CMatrix(k.adjoint()), Ie) * column;
        CMatrix direct = commutative_char_at_point(X, D, ctx.f, z, tol);
        r.max_gap = std::max(r.max_gap, spectral_norm(read - direct));
        double rr = std::sqrt(norm_sq(evaluate_at_point(ctx.f, z)));
        r.max_tail_bound = std::max(r.max_tail_bound, ball_radius_tail(rr, ctx.degree()));
    }
    r.pass = r.max_gap <= tol.check_abs + r.max_tail_bound;
    return r;
}

}  // namespace opm
