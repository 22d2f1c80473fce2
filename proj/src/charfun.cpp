#include "opmodel/charfun.hpp"

#include <cmath>

namespace opm {

CMatrix inner_apply(const CMatrix& A, int outer, const CMatrix& X) {
    if (X.rows() != outer * A.cols()) fail("ShapeMismatch", "inner_apply shape");
    CMatrix out(outer * A.rows(), X.cols());
    for (int o = 0; o < outer; ++o) out.middleRows(o * A.rows(), A.rows()) = A * X.middleRows(o * A.cols(), A.cols());
    return out;
}

CMatrix inner_apply_right(const CMatrix& X, int outer, const CMatrix& A) {
    if (X.cols() != outer * A.rows()) fail("ShapeMismatch", "inner_apply_right shape");
    CMatrix out(X.rows(), outer * A.cols());
    for (int o = 0; o < outer; ++o) out.middleCols(o * A.cols(), A.cols()) = X.middleCols(o * A.rows(), A.rows()) * A;
    return out;
}

static CMatrix interior_block(const std::vector<int>& outer_degree, int cutoff, int inner) {
    int outer = static_cast<int>(outer_degree.size());
    CMatrix P = CMatrix::Zero(outer * inner, outer * inner);
    for (int o = 0; o < outer; ++o)
        if (outer_degree[o] <= cutoff)
            for (int j = 0; j < inner; ++j) P(o * inner + j, o * inner + j) = 1.0;
    return P;
}

CMatrix CharFunData::interior_target(int margin) const { return interior_block(outer_degree, degree - margin, e); }
CMatrix CharFunData::interior_source(int margin) const { return interior_block(outer_degree, degree - margin, e_star); }

namespace {

struct Coefficients {
    std::vector<CMatrix> blocks;  // by Fock index of gamma
    CMatrix Q, Qs;
};

// theta_empty = -F, theta_{j mu} = Delta F_mu^* E_j Delta_*, all compressed to the defect frames
Coefficients fourier_blocks(const FockContext& fc, const DefectData& D) {
    Coefficients c;
    c.Q = D.frame_D.frame;
    c.Qs = D.frame_Dstar.frame;
    int m = static_cast<int>(D.delta.rows());
    int r = static_cast<int>(c.Q.cols()), rs = static_cast<int>(c.Qs.cols());
    CMatrix row = OperatorTuple(D.fT).row();
    CMatrix left = c.Q.adjoint() * D.delta;   // r x m
    CMatrix right = D.delta_star * c.Qs;      // nm x r*
    std::vector<CMatrix> Fw(fc.dim);
    Fw[0] = CMatrix::Identity(m, m);
    for (int idx = 1; idx < fc.dim; ++idx) {
        Word w = fc.word(idx);
        Word pre(w.begin(), w.end() - 1);
        Fw[idx] = Fw[fc.index(pre)] * D.fT[w.back() - 1];
    }
    c.blocks.assign(fc.dim, CMatrix::Zero(r, rs));
    c.blocks[0] = -c.Q.adjoint() * row * c.Qs;
    for (int idx = 1; idx < fc.dim; ++idx) {
        Word g = fc.word(idx);
        int j = g.front();
        Word mu(g.begin() + 1, g.end());
        c.blocks[idx] = left * Fw[fc.index(mu)].adjoint() * right.middleRows((j - 1) * m, m);
    }
    return c;
}

void fill_common(CharFunData& cf, const ModelContext& ctx) {
    cf.degree = ctx.degree();
    cf.g_degree = ctx.g_degree;
    cf.degenerate = cf.e == 0 || cf.e_star == 0;
}

}  // namespace

CharFunData characteristic_function(const ModelContext& ctx, const OperatorTuple& X, const DefectData& D,
                                    const Tolerances& tol) {
    (void)tol;
    const FockContext& fc = ctx.fock;
    CharFunData cf;
    Coefficients co = fourier_blocks(fc, D);
    cf.e = static_cast<int>(co.Q.cols());
    cf.e_star = static_cast<int>(co.Qs.cols());
    cf.outer_dim = fc.dim;
    cf.blocks = co.blocks;
    cf.theta = CMatrix::Zero(fc.dim * cf.e, fc.dim * cf.e_star);
    for (int b = 0; b < fc.dim; ++b) {
        Word beta = fc.word(b);
        int room = fc.degree - static_cast<int>(beta.size());
        long long count = fock_dim(fc.n, room);
        for (long long gi = 0; gi < count; ++gi) {
            Word gamma = word_at(gi, fc.n);
            int row = fc.index(concat(beta, gamma));
            cf.theta.block(row * cf.e, b * cf.e_star, cf.e, cf.e_star) = co.blocks[gi];
        }
    }
    cf.outer_Z = ctx.MZ;
    cf.outer_F = ctx.MF;
    cf.vacuum = fc.basis({});
    for (int i = 0; i < fc.dim; ++i) cf.outer_degree.push_back(static_cast<int>(fc.word(i).size()));
    (void)X;
    fill_common(cf, ctx);
    return cf;
}

CharFunData constrained_characteristic_function(const VarietyContext& v, const OperatorTuple& X,
                                                const DefectData& D, const Tolerances& tol) {
    if (!vanishing_check(v, X, tol).pass) fail("ConstraintViolated", "tuple does not annihilate the ideal");
    const ModelContext& ctx = v.model;
    const FockContext& fc = ctx.fock;
    CharFunData cf;
    Coefficients co = fourier_blocks(fc, D);
    cf.e = static_cast<int>(co.Q.cols());
    cf.e_star = static_cast<int>(co.Qs.cols());
    int p = v.dim();
    cf.outer_dim = p;
    cf.blocks = co.blocks;
    cf.constrained = true;
    // products of the W_i along every word, built by appending
    std::vector<CMatrix> Wp(fc.dim);
    Wp[0] = CMatrix::Identity(p, p);
    for (int idx = 1; idx < fc.dim; ++idx) {
        Word w = fc.word(idx);
        Word pre(w.begin(), w.end() - 1);
        Wp[idx] = Wp[fc.index(pre)] * v.W[w.back() - 1];
    }
    cf.theta = CMatrix::Zero(p * cf.e, p * cf.e_star);
    if (cf.e > 0 && cf.e_star > 0)
        for (int gi = 0; gi < fc.dim; ++gi) {
            Word g = fc.word(gi);
            Word rev(g.rbegin(), g.rend());
            cf.theta += kron(Wp[fc.index(rev)], co.blocks[gi]);
        }
    cf.outer_Z = v.B;
    cf.outer_F = evaluate(ctx.f, v.B);
    cf.vacuum = v.N_frame.frame.adjoint() * fc.basis({});
    cf.outer_degree = v.N_degrees;
    if (cf.outer_degree.empty()) cf.outer_degree.assign(p, 0);
    fill_common(cf, ctx);
    return cf;
}

CharFunData charfun_from_matrix(const ModelContext& ctx, const CMatrix& theta, int e, int e_star,
                                const Tolerances& tol) {
    const FockContext& fc = ctx.fock;
    if (theta.rows() != fc.dim * e || theta.cols() != fc.dim * e_star)
        fail("ShapeMismatch", "theta does not act between Fock multiplicity spaces");
    if (spectral_norm(theta) > 1.0 + tol.check_abs) fail("NotContractive", "theta has norm above one");
    CharFunData cf;
    cf.theta = theta;
    cf.e = e;
    cf.e_star = e_star;
    cf.outer_dim = fc.dim;
    for (int gi = 0; gi < fc.dim; ++gi) cf.blocks.push_back(theta.block(gi * e, 0, e, e_star));
    cf.outer_Z = ctx.MZ;
    cf.outer_F = ctx.MF;
    cf.vacuum = fc.basis({});
    for (int i = 0; i < fc.dim; ++i) cf.outer_degree.push_back(static_cast<int>(fc.word(i).size()));
    fill_common(cf, ctx);
    if (multi_analytic_check(cf).residual > tol.check_abs) fail("NotMultiAnalytic", "theta does not intertwine");
    return cf;
}

CharFunData charfun_from_matrix(const VarietyContext& v, const CMatrix& theta, int e, int e_star,
                                const Tolerances& tol) {
    int p = v.dim();
    if (theta.rows() != p * e || theta.cols() != p * e_star)
        fail("ShapeMismatch", "theta does not act between N multiplicity spaces");
    if (spectral_norm(theta) > 1.0 + tol.check_abs) fail("NotContractive", "theta has norm above one");
    CharFunData cf;
    cf.theta = theta;
    cf.e = e;
    cf.e_star = e_star;
    cf.outer_dim = p;
    cf.constrained = true;
    cf.outer_Z = v.B;
    cf.outer_F = evaluate(v.model.f, v.B);
    cf.vacuum = v.N_frame.frame.adjoint() * v.model.fock.basis({});
    cf.outer_degree = v.N_degrees;
    if (cf.outer_degree.empty()) cf.outer_degree.assign(p, 0);
    fill_common(cf, v.model);
    if (multi_analytic_check(cf).residual > tol.check_abs) fail("NotMultiAnalytic", "theta does not intertwine");
    return cf;
}

IdentityReport fundamental_identity_check(const PoissonKernelData& K, const CharFunData& theta,
                                          const Tolerances& tol, int margin) {
    if (K.K.rows() != theta.theta.rows()) fail("ContextMismatch", "kernel and theta act on different spaces");
    IdentityReport rep;
    rep.margin = margin;
    rep.tail = K.tail;
    int rows = static_cast<int>(theta.theta.rows());
    CMatrix P = theta.interior_target(margin);
    CMatrix R = CMatrix::Identity(rows, rows) - theta.theta * theta.theta.adjoint() - K.K * K.K.adjoint();
    rep.residual = rows ? hermitian_norm(P * R * P) : 0.0;
    rep.pass = rep.residual <= tol.check_abs + rep.tail;
    return rep;
}

int settle_power(const PowerReport& pure, int degree, double eps) {
    for (int L = 0; L < static_cast<int>(pure.r.size()) && L <= degree; ++L)
        if (pure.r[L] <= eps) return L;
    return degree;
}

IsometryReport isometry_iff_pure_check(const CharFunData& theta, const PowerReport& pure, const Tolerances& tol,
                                       int margin) {
    IsometryReport rep;
    rep.pure = pure.verdict;
    rep.degenerate = theta.degenerate;
    rep.margin = margin >= 0 ? margin : settle_power(pure, theta.degree);
    if (theta.degenerate) {
        rep.consistent = true;
        return rep;
    }
    CMatrix Pc = theta.interior_source(rep.margin);
    CMatrix Tc = theta.theta * Pc;
    rep.isometry_defect = hermitian_norm(Tc.adjoint() * Tc - Pc);
    rep.partial_isometry_defect = spectral_norm(theta.theta * (theta.theta.adjoint() * Tc) - Tc);
    const double bound = 10.0 * tol.check_abs;
    bool structural = theta.constrained ? rep.partial_isometry_defect <= bound : rep.isometry_defect <= bound;
    rep.consistent = structural == rep.pure;
    return rep;
}

MultiAnalyticReport multi_analytic_check(const CharFunData& theta) {
    MultiAnalyticReport rep;
    rep.margin = std::min(theta.degree, theta.g_degree + 1);
    if (theta.degenerate) return rep;
    CMatrix Pt = theta.interior_target(rep.margin);
    for (const auto& Z : theta.outer_Z) {
        CMatrix lhs = kron_apply(Z, theta.e_star, CMatrix::Identity(theta.theta.cols(), theta.theta.cols()));
        CMatrix diff = theta.theta * lhs - kron_apply(Z, theta.e, theta.theta);
        rep.residual = std::max(rep.residual, spectral_norm(Pt * diff));
    }
    return rep;
}

CoincidenceReport coincide(const CharFunData& a, const CharFunData& b, const CMatrix& tau, const CMatrix& tau_star,
                           const Tolerances& tol) {
    CoincidenceReport rep;
    if (a.e != b.e || a.e_star != b.e_star || a.outer_dim != b.outer_dim) {
        rep.obstruction = "rank";
        return rep;
    }
    if (tau.rows() != b.e || tau.cols() != a.e || tau_star.rows() != b.e_star || tau_star.cols() != a.e_star)
        fail("ShapeMismatch", "witness shapes");
    rep.tau = tau;
    rep.tau_star = tau_star;
    auto udef = [](const CMatrix& U) {
        if (U.size() == 0) return 0.0;
        CMatrix I = CMatrix::Identity(U.rows(), U.cols());
        return std::max(spectral_norm(U.adjoint() * U - I), spectral_norm(U * U.adjoint() - I));
    };
    rep.unitary_defect = std::max(udef(tau), udef(tau_star));
    if (a.theta.size() > 0)
        rep.residual = spectral_norm(inner_apply(tau, a.outer_dim, a.theta) -
                                     inner_apply_right(b.theta, b.outer_dim, tau_star));
    rep.coincide = rep.unitary_defect <= tol.check_abs && rep.residual <= tol.check_abs;
    if (!rep.coincide) rep.obstruction = "residual";
    return rep;
}

std::pair<CMatrix, CMatrix> coincidence_witness(const DefectData& D, const DefectData& D2, const CMatrix& W) {
    int n = static_cast<int>(D.fT.size());
    CMatrix tau = D2.frame_D.frame.adjoint() * W * D.frame_D.frame;
    CMatrix tau_star = D2.frame_Dstar.frame.adjoint() * kron(CMatrix::Identity(n, n), W) * D.frame_Dstar.frame;
    return {tau, tau_star};
}

static CMatrix polar(const CMatrix& M) {
    Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

CoincidenceReport coincide_search(const CharFunData& a, const CharFunData& b, const Tolerances& tol, int restarts,
                                  unsigned seed) {
    CoincidenceReport best;
    best.heuristic = true;
    if (a.e != b.e || a.e_star != b.e_star || a.outer_dim != b.outer_dim) {
        best.obstruction = "rank";
        return best;
    }
    if (a.degenerate) return coincide(a, b, CMatrix::Identity(a.e, a.e), CMatrix::Identity(a.e_star, a.e_star), tol);
    bool by_blocks = !a.blocks.empty() && a.blocks.size() == b.blocks.size();
    Rng rng(seed);
    double best_fit = std::numeric_limits<double>::infinity();
    CMatrix bt, bts;
    for (int s = 0; s < restarts; ++s) {
        CMatrix ts = s == 0 ? CMatrix::Identity(a.e_star, a.e_star) : random_unitary(a.e_star, rng);
        CMatrix t = CMatrix::Identity(a.e, a.e);
        double fit = 0.0;
        for (int it = 0; it < 300; ++it) {
            CMatrix M = CMatrix::Zero(a.e, a.e), Ms = CMatrix::Zero(a.e_star, a.e_star);
            if (by_blocks) {
                for (std::size_t g = 0; g < a.blocks.size(); ++g) M += b.blocks[g] * ts * a.blocks[g].adjoint();
                t = polar(M);
                for (std::size_t g = 0; g < a.blocks.size(); ++g) Ms += b.blocks[g].adjoint() * t * a.blocks[g];
                ts = polar(Ms);
                fit = 0.0;
                for (std::size_t g = 0; g < a.blocks.size(); ++g)
                    fit += (t * a.blocks[g] - b.blocks[g] * ts).squaredNorm();
            } else {
                // same fit on the whole operators, row blocks for tau and column blocks for tau_*
                CMatrix bts = inner_apply_right(b.theta, b.outer_dim, ts);
                for (int o = 0; o < a.outer_dim; ++o)
                    M += bts.middleRows(o * a.e, a.e) * a.theta.middleRows(o * a.e, a.e).adjoint();
                t = polar(M);
                CMatrix ta = inner_apply(t, a.outer_dim, a.theta);
                for (int o = 0; o < a.outer_dim; ++o)
                    Ms += b.theta.middleCols(o * a.e_star, a.e_star).adjoint() * ta.middleCols(o * a.e_star, a.e_star);
                ts = polar(Ms);
                fit = (inner_apply(t, a.outer_dim, a.theta) - inner_apply_right(b.theta, b.outer_dim, ts)).squaredNorm();
            }
            if (fit < 1e-30) break;
        }
        if (fit < best_fit) {
            best_fit = fit;
            bt = t;
            bts = ts;
        }
    }
    CoincidenceReport rep = coincide(a, b, bt, bts, tol);
    rep.heuristic = true;
    return rep;
}

PurelyContractiveReport purely_contractive_check(const CharFunData& theta, const Tolerances& tol) {
    PurelyContractiveReport rep;
    if (theta.degenerate) {
        rep.purely_contractive = true;
        rep.range_condition = true;
        return rep;
    }
    CMatrix Vt = kron(theta.vacuum, CMatrix::Identity(theta.e, theta.e));
    CMatrix Vs = kron(theta.vacuum, CMatrix::Identity(theta.e_star, theta.e_star));
    rep.vacuum_norm = spectral_norm(Vt.adjoint() * theta.theta * Vs);
    rep.purely_contractive = rep.vacuum_norm < 1.0 - tol.check_abs;
    int cols = static_cast<int>(theta.theta.cols());
    CMatrix D2 = CMatrix::Identity(cols, cols) - theta.theta.adjoint() * theta.theta;
    D2 = 0.5 * (D2 + D2.adjoint());
    CMatrix shifted(cols, cols * static_cast<int>(theta.outer_F.size()));
    for (std::size_t i = 0; i < theta.outer_F.size(); ++i)
        shifted.middleCols(i * cols, cols) = D2 * kron(theta.outer_F[i], CMatrix::Identity(theta.e_star, theta.e_star));
    rep.rank_full = numerical_rank(D2, tol.rank_rel);
    rep.rank_shifted = numerical_rank(shifted, tol.rank_rel);
    rep.range_condition = rep.rank_full == rep.rank_shifted;
    return rep;
}

std::vector<cplx> evaluate_at_point(const NcSeriesTuple& f, const std::vector<cplx>& z) {
    std::vector<CMatrix> X;
    for (cplx zi : z) X.push_back(CMatrix::Constant(1, 1, zi));
    std::vector<cplx> out;
    for (const auto& M : evaluate(f, X)) out.push_back(M(0, 0));
    return out;
}

CMatrix commutative_char_at_point(const OperatorTuple& X, const DefectData& D, const NcSeriesTuple& f,
                                  const std::vector<cplx>& z, const Tolerances& tol) {
    int n = X.n(), m = X.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (spectral_norm(X[i] * X[j] - X[j] * X[i]) > tol.check_abs)
                fail("NonCommutingTuple", "tuple entries do not commute");
    auto fz = evaluate_at_point(f, z);
    double s = 0.0;
    for (cplx c : fz) s += std::norm(c);
    if (s >= 1.0) fail("PointOutsideDomain", "sum |f_i(z)|^2 >= 1");
    CMatrix A = CMatrix::Identity(m, m);
    CMatrix rowz(m, n * m);
    for (int i = 0; i < n; ++i) {
        A -= fz[i] * D.fT[i].adjoint();
        rowz.middleCols(i * m, m) = fz[i] * CMatrix::Identity(m, m);
    }
    CMatrix val = -OperatorTuple(D.fT).row() + D.delta * A.inverse() * rowz * D.delta_star;
    return D.frame_D.frame.adjoint() * val * D.frame_Dstar.frame;
}

CMatrix symbol_at(const CharFunData& theta, cplx z) {
    CMatrix s = CMatrix::Zero(theta.e, theta.e_star);
    cplx p = 1.0;
    for (int k = 0; k <= theta.degree && k < static_cast<int>(theta.blocks.size()); ++k) {
        s += p * theta.blocks[k];
        p *= z;
    }
    return s;
}

}  // namespace opm
