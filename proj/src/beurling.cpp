#include "opmodel/beurling.hpp"

#include <limits>

namespace opm {

namespace {

std::vector<CMatrix> tensor_identity(const std::vector<CMatrix>& A, int k) {
    std::vector<CMatrix> out;
    for (const auto& a : A) out.push_back(kron(a, CMatrix::Identity(k, k)));
    return out;
}

double invariance_defect(const std::vector<CMatrix>& ops, const Subspace& S) {
    double r = 0.0;
    const CMatrix& F = S.frame;
    for (const auto& A : ops) {
        CMatrix AF = A * F;
        r = std::max(r, spectral_norm(AF - F * (F.adjoint() * AF)));
    }
    return r;
}

}  // namespace

Subspace invariant_closure(const VarietyContext& v, int k, const CMatrix& seed, const Tolerances& tol) {
    auto ops = tensor_identity(v.B, k);
    int amb = v.dim() * k;
    if (seed.rows() != amb) fail("ShapeMismatch", "seed vectors do not live in N (x) C^k");
    Subspace S = seed.cols() ? orth_range(seed, tol) : Subspace::zero(amb);
    while (S.dim() > 0) {
        CMatrix grown(amb, S.dim() * (1 + ops.size()));
        grown.leftCols(S.dim()) = S.frame;
        for (std::size_t i = 0; i < ops.size(); ++i) grown.middleCols(S.dim() * (1 + i), S.dim()) = ops[i] * S.frame;
        Subspace next = orth_range(grown, tol);
        bool done = next.dim() == S.dim();
        S = next;
        if (done) break;
    }
    return S;
}

BeurlingFactorization beurling_factor(const VarietyContext& v, const Subspace& M, const Tolerances& tol) {
    const ModelContext& ctx = v.model;
    int p = v.dim();
    if (p == 0 || M.ambient_dim % p != 0) fail("ShapeMismatch", "M does not live in N (x) K");
    BeurlingFactorization bf;
    bf.k = M.ambient_dim / p;
    int k = bf.k;
    CMatrix Ik = CMatrix::Identity(k, k);
    if (invariance_defect(tensor_identity(v.B, k), M) > tol.check_abs)
        fail("NotInvariant", "M is not invariant under B_i (x) I");

    // E = (M_J (x) K) + M, lifted to Fock (x) K
    int F = ctx.dim();
    CMatrix lifted(F * k, v.M_frame.dim() * k + M.dim());
    lifted << kron(v.M_frame.frame, Ik), kron(v.N_frame.frame, Ik) * M.frame;
    bf.lifted = orth_range(lifted, tol);
    auto S = tensor_identity(ctx.MF, k);
    bf.lift_invariance = invariance_defect(S, bf.lifted);
    CMatrix grading = CMatrix::Zero(F * k, F * k);
    for (int o = 0; o < F; ++o)
        grading.block(o * k, o * k, k, k).diagonal().setConstant(static_cast<double>(ctx.fock.word(o).size()));
    bf.graded = invariance_defect({grading}, bf.lifted) <= tol.check_abs;

    // wandering subspace by frame subtraction
    const CMatrix& E = bf.lifted.frame;
    CMatrix shifted(F * k, E.cols() * S.size());
    for (std::size_t i = 0; i < S.size(); ++i) shifted.middleCols(i * E.cols(), E.cols()) = S[i] * E;
    Subspace R = E.cols() ? orth_range(shifted, tol) : Subspace::zero(F * k);
    CMatrix rest = E - R.frame * (R.frame.adjoint() * E);
    bf.wandering_frame = E.cols() ? orth_range(rest, tol) : Subspace::zero(F * k);
    bf.G_dim = bf.wandering_frame.dim();
    if (bf.G_dim == 0 && M.dim() > 0) fail("WanderingDegenerate", "wandering subspace vanished; raise the degree");
    int g = bf.G_dim;
    const CMatrix& W = bf.wandering_frame.frame;

    // Psi(e_a (x) w_j) = (S_a (x) I) w_j
    const FockContext& fc = ctx.fock;
    bf.psi = CMatrix::Zero(F * k, F * g);
    if (g > 0) {
        bf.psi.leftCols(g) = W;
        for (int idx = 1; idx < fc.dim; ++idx) {
            Word a = fc.word(idx);
            Word rest_w(a.begin() + 1, a.end());
            bf.psi.middleCols(idx * g, g) = S[a.front() - 1] * bf.psi.middleCols(fc.index(rest_w) * g, g);
        }
    }
    // highest degree carried by the wandering vectors; words up to d minus that stay exact
    int wdeg = 0;
    for (int o = 0; o < F; ++o)
        if (g > 0 && W.middleRows(o * k, k).norm() > tol.check_abs)
            wdeg = std::max(wdeg, static_cast<int>(fc.word(o).size()));
    int keep = static_cast<int>(fock_dim(fc.n, std::max(0, fc.degree - wdeg))) * g;
    if (keep > 0) {
        CMatrix P = bf.psi.leftCols(keep);
        bf.wandering_orthogonality = spectral_norm(P.adjoint() * P - CMatrix::Identity(keep, keep));
    }

    bf.theta = kron(v.N_frame.frame.adjoint(), Ik) * bf.psi * kron(v.N_frame.frame, CMatrix::Identity(g, g));
    CMatrix TT = bf.theta * bf.theta.adjoint();
    bf.residual = spectral_norm(M.projector() - TT);
    CMatrix A = bf.theta.adjoint() * bf.theta;
    bf.partial_isometry_defect = g ? spectral_norm(A * A - A) : 0.0;
    CMatrix Pint = kron(interior_in_N(v, 1), Ik);
    auto Bk = tensor_identity(v.B, k), Bg = tensor_identity(v.B, g);
    for (std::size_t i = 0; i < v.B.size(); ++i)
        bf.intertwining = std::max(bf.intertwining, spectral_norm(Pint * (bf.theta * Bg[i] - Bk[i] * bf.theta)));
    Subspace range = g ? orth_range(bf.theta, tol) : Subspace::zero(M.ambient_dim);
    bf.round_trip = spectral_norm(M.projector() - range.projector());
    return bf;
}

namespace {

struct AffineSet {
    CVector particular;  // minimal-norm solution
    CMatrix null_basis;  // orthonormal basis of the homogeneous solutions
    CVector project(const CVector& x) const {
        return particular + null_basis * (null_basis.adjoint() * x);
    }
};

CVector vec(const CMatrix& A) { return Eigen::Map<const CVector>(A.data(), A.size()); }
CMatrix unvec(const CVector& x, int rows, int cols) { return Eigen::Map<const CMatrix>(x.data(), rows, cols); }

// projection onto ||G|| <= t: G V diag(min(1, t / sigma)) V^*
CMatrix clip(const CMatrix& G, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(G.adjoint() * G);
    RVector shrink = es.eigenvalues().unaryExpr([t](double l) {
        double sigma = std::sqrt(std::max(0.0, l));
        return sigma > t ? t / sigma : 1.0;
    });
    return G * es.eigenvectors() * shrink.asDiagonal() * es.eigenvectors().adjoint();
}

// orthonormal null space of L and the minimal-norm least-squares solution of L x = rhs, from the
// eigenpairs of L^* L; eigenvalues below rank_rel * max count as zero
struct NullSplit {
    CMatrix null_basis;
    CVector particular;
    double residual = 0.0;
};
NullSplit split_constraints(const CMatrix& L, const CVector& rhs, const Tolerances& tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(L.adjoint() * L);
    const RVector& lam = es.eigenvalues();
    int nv = static_cast<int>(lam.size());
    double cut = tol.rank_rel * std::max(lam(nv - 1), 0.0);
    int zero = 0;
    while (zero < nv && lam(zero) <= cut) ++zero;
    NullSplit out;
    out.null_basis = es.eigenvectors().leftCols(zero);
    CMatrix Vr = es.eigenvectors().rightCols(nv - zero);
    RVector inv = lam.tail(nv - zero).cwiseInverse();
    CVector x = CVector::Zero(nv);
    // two sweeps of iterative refinement on the normal equations
    for (int sweep = 0; sweep < 2; ++sweep) x += Vr * (inv.asDiagonal() * (Vr.adjoint() * (L.adjoint() * (rhs - L * x))));
    out.particular = x;
    out.residual = rhs.size() ? (L * x - rhs).norm() : 0.0;
    return out;
}

// min t over [[t I, G(c)], [G(c)^*, t I]] >= 0 with G(c) = G_p + sum_a c_a N_a, c complex, by a
// log-det barrier path started at c0; returns the final G.
// With M^{-1} = [[P, Q], [Q^*, R]] and directions C = w N_a:
//   tr(M^{-1} A_C) = 2 Re <Q, C>,  tr(M^{-1} A_C M^{-1} A_C') = 2 Re <C', P C R + Q C^* Q>
CMatrix barrier_polish(const AffineSet& aff, int rows, int cols, const CVector& c0, double gap_tol, int& steps) {
    const CMatrix& Nb = aff.null_basis;
    int q = static_cast<int>(Nb.cols());
    int s = rows + cols, m = 1 + 2 * q;
    auto coeffs = [&](const RVector& y) {
        CVector c(q);
        for (int a = 0; a < q; ++a) c(a) = cplx(y(1 + a), y(1 + q + a));
        return c;
    };
    auto G_of = [&](const RVector& y) { return unvec(aff.particular + Nb * coeffs(y), rows, cols); };
    auto lmi = [&](const RVector& y) {
        CMatrix M = CMatrix::Zero(s, s);
        M.topLeftCorner(rows, rows).diagonal().setConstant(y(0));
        M.bottomRightCorner(cols, cols).diagonal().setConstant(y(0));
        CMatrix G = G_of(y);
        M.topRightCorner(rows, cols) = G;
        M.bottomLeftCorner(cols, rows) = G.adjoint();
        return M;
    };
    // t / mu - log det M, +inf outside the cone
    auto phi = [&](const RVector& y, double mu) {
        Eigen::LLT<CMatrix> llt(lmi(y));
        if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        double logdet = 0.0;
        for (int i = 0; i < s; ++i) {
            double d = llt.matrixLLT()(i, i).real();
            if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
            logdet += 2.0 * std::log(d);
        }
        return y(0) / mu - logdet;
    };

    RVector y = RVector::Zero(m);
    for (int a = 0; a < q; ++a) {
        y(1 + a) = c0(a).real();
        y(1 + q + a) = c0(a).imag();
    }
    double g0 = spectral_norm(G_of(y));
    double scale = std::max(1.0, g0);
    y(0) = g0 + 1e-3 * scale;
    double mu = 0.1 * y(0) / s;
    const cplx unit[2] = {cplx(1.0, 0.0), cplx(0.0, 1.0)};
    CMatrix Xa(rows * cols, q), Ya(rows * cols, q);
    while (true) {
        for (int it = 0; it < 60; ++it) {
            CMatrix Minv = Eigen::LLT<CMatrix>(lmi(y)).solve(CMatrix::Identity(s, s));
            CMatrix P = Minv.topLeftCorner(rows, rows), Q = Minv.topRightCorner(rows, cols),
                    R = Minv.bottomRightCorner(cols, cols);
            CMatrix Q2 = (Minv * Minv).topRightCorner(rows, cols);
            for (int a = 0; a < q; ++a) {
                CMatrix N = unvec(Nb.col(a), rows, cols);
                Xa.col(a) = vec(P * N * R);
                Ya.col(a) = vec(Q * N.adjoint() * Q);
            }
            CMatrix G1 = Nb.adjoint() * Xa, G2 = Nb.adjoint() * Ya;
            CVector gq = Nb.adjoint() * vec(Q), gq2 = Nb.adjoint() * vec(Q2);

            RVector grad(m);
            Eigen::MatrixXd H(m, m);
            grad(0) = 1.0 / mu - Minv.trace().real();
            H(0, 0) = Minv.squaredNorm();
            for (int i = 1; i < m; ++i) {
                int a = (i - 1) % q;
                cplx wi = unit[(i - 1) / q];
                grad(i) = -2.0 * (wi * std::conj(gq(a))).real();
                H(0, i) = H(i, 0) = 2.0 * (wi * std::conj(gq2(a))).real();
                for (int j = i; j < m; ++j) {
                    int b = (j - 1) % q;
                    cplx wj = unit[(j - 1) / q];
                    H(i, j) = H(j, i) = 2.0 * (std::conj(wj) * (wi * G1(b, a) + std::conj(wi) * G2(b, a))).real();
                }
            }
            RVector dy = H.ldlt().solve(-grad);
            double dec = -grad.dot(dy);
            ++steps;
            if (!(dec > 1e-10)) break;
            double f = phi(y, mu), step = 1.0;
            while (step > 1e-12 && !(phi(y + step * dy, mu) <= f - 0.25 * step * dec)) step *= 0.5;
            if (step <= 1e-12) break;
            y += step * dy;
            if (dec < 1e-8) break;
        }
        if (s * mu <= gap_tol * scale) break;
        mu *= 0.1;
    }
    return G_of(y);
}

}  // namespace

LiftReport commutant_lift(const LiftingProblem& pr) {
    if (!pr.v) fail("SchemaError", "lifting problem without a variety");
    const VarietyContext& v = *pr.v;
    int p = v.dim();
    int P1 = p * pr.k1, P2 = p * pr.k2;
    if (pr.E1.ambient_dim != P1 || pr.E2.ambient_dim != P2 || pr.X.rows() != pr.E2.dim() || pr.X.cols() != pr.E1.dim())
        fail("ShapeMismatch", "lifting problem shapes");
    auto A = tensor_identity(v.B, pr.k1), C = tensor_identity(v.B, pr.k2);
    std::vector<CMatrix> A_star, C_star;
    for (const auto& a : A) A_star.push_back(a.adjoint());
    for (const auto& c : C) C_star.push_back(c.adjoint());
    Tolerances ctol;
    if (invariance_defect(A_star, pr.E1) > ctol.check_abs || invariance_defect(C_star, pr.E2) > ctol.check_abs)
        fail("NotInvariant", "E_j is not co-invariant");
    const CMatrix &F1 = pr.E1.frame, &F2 = pr.E2.frame;
    for (std::size_t i = 0; i < A.size(); ++i) {
        CMatrix lhs = pr.X * (F1.adjoint() * A[i] * F1), rhs = (F2.adjoint() * C[i] * F2) * pr.X;
        if (spectral_norm(lhs - rhs) > ctol.check_abs) fail("NotIntertwining", "X does not intertwine the compressions");
    }

    // linear constraints on vec(G): G A_i - C_i G = 0 and F2^* G = X F1^*
    int nv = P1 * P2, nb = static_cast<int>(A.size());
    int rows = nb * nv + static_cast<int>(F2.cols()) * P1;
    CMatrix L = CMatrix::Zero(rows, nv);
    CVector rhs = CVector::Zero(rows);
    CMatrix I1 = CMatrix::Identity(P1, P1), I2 = CMatrix::Identity(P2, P2);
    for (int i = 0; i < nb; ++i) L.middleRows(i * nv, nv) = kron(A[i].transpose(), I2) - kron(I1, C[i]);
    L.bottomRows(F2.cols() * P1) = kron(I1, F2.adjoint());
    rhs.tail(F2.cols() * P1) = vec(pr.X * F1.adjoint());
    AffineSet aff;
    NullSplit split = split_constraints(L, rhs, ctol);
    if (split.residual > pr.opt_tol)
        fail("Infeasible", "constraints are inconsistent (residual " + std::to_string(split.residual) + ")");
    aff.particular = split.particular;
    aff.null_basis = split.null_basis;

    LiftReport rep;
    rep.x_norm = pr.X.size() ? spectral_norm(pr.X) : 0.0;
    auto measure = [&](const CMatrix& G, LiftReport& r) {
        r.intertwining = 0.0;
        for (int i = 0; i < nb; ++i) r.intertwining = std::max(r.intertwining, spectral_norm(G * A[i] - C[i] * G));
        r.compression = pr.X.size() ? spectral_norm(F2.adjoint() * G * F1 - pr.X) : 0.0;
        CMatrix GsE2 = G.adjoint() * F2;
        r.range_defect = F2.cols() ? spectral_norm(GsE2 - F1 * (F1.adjoint() * GsE2)) : 0.0;
    };
    auto feasible = [&](const LiftReport& r) {
        return r.intertwining <= pr.opt_tol && r.compression <= pr.opt_tol && r.range_defect <= pr.opt_tol;
    };

    // alternating projections at norm level t, warm-started from x
    auto attempt = [&](double t, CVector& x, LiftReport& out) {
        for (int it = 0; it < pr.max_iterations; ++it) {
            ++rep.iterations;
            CMatrix Y = clip(unvec(x, P2, P1), t);
            x = aff.project(vec(Y));
            if (it % 10 == 9 || it == pr.max_iterations - 1) {
                LiftReport r;
                measure(Y, r);
                if (feasible(r)) {
                    r.G = Y;
                    out = r;
                    return true;
                }
            }
        }
        return false;
    };

    CVector x0 = aff.particular;
    CMatrix G0 = unvec(x0, P2, P1);
    double g0 = spectral_norm(G0);
    LiftReport best;
    double lo = rep.x_norm, hi = 2.0 * rep.x_norm;
    if (g0 <= lo * (1.0 + 1e-12) || rep.x_norm == 0.0) {
        // the minimal-Frobenius solution already attains the lower bound
        measure(G0, best);
        best.G = G0;
        hi = lo;
    } else {
        CVector x = x0;
        if (!attempt(hi, x, best)) {
            LiftReport r;
            measure(unvec(x, P2, P1), r);
            double worst = std::max({r.intertwining, r.compression, r.range_defect});
            fail("Infeasible", "no lift within twice the norm of X (best residual " + std::to_string(worst) + ")");
        }
        CVector warm = vec(best.G);
        for (int s = 0; s < pr.bisection_steps && hi - lo > 0.1 * pr.opt_tol * std::max(1.0, rep.x_norm); ++s) {
            double mid = 0.5 * (lo + hi);
            CVector x = warm;
            LiftReport r;
            if (attempt(mid, x, r)) {
                hi = mid;
                best = r;
                warm = vec(r.G);
            } else {
                lo = mid;
            }
        }
    }
    best.iterations = rep.iterations;
    best.bisection_norm = best.G.size() ? spectral_norm(best.G) : 0.0;
    if (hi > lo && aff.null_basis.cols() > 0) {
        CVector c0 = aff.null_basis.adjoint() * (vec(best.G) - aff.particular);
        int steps = 0;
        CMatrix G = barrier_polish(aff, P2, P1, c0, 1e-11, steps);
        LiftReport r;
        measure(G, r);
        if (feasible(r) && spectral_norm(G) <= best.bisection_norm) {
            r.G = G;
            r.iterations = best.iterations;
            r.bisection_norm = best.bisection_norm;
            best = r;
        }
        best.newton_steps = steps;
    }
    best.x_norm = rep.x_norm;
    best.norm = best.G.size() ? spectral_norm(best.G) : 0.0;
    best.eps_lift = rep.x_norm > 0.0 ? best.norm / rep.x_norm - 1.0 : best.norm;
    return best;
}

GeneratedLift random_feasible_lifting(const VarietyContext& v, int k, Rng& rng) {
    const FockContext& fc = v.model.fock;
    int p = v.dim();
    CMatrix Ik = CMatrix::Identity(k, k);
    // degree-2 seed so the complement keeps the low words; M0 (x) C^k is invariant under every B_a (x) C
    CMatrix slice = CMatrix::Zero(fc.dim, fc.dim);
    for (int i = 0; i < fc.dim; ++i)
        if (fc.word(i).size() == 2) slice(i, i) = 1.0;
    CMatrix P2 = v.N_frame.frame.adjoint() * slice * v.N_frame.frame;
    Subspace E0 = orth_complement(invariant_closure(v, 1, P2 * random_complex(p, 1, rng)));
    Subspace E = orth_range(kron(E0.frame, Ik));
    GeneratedLift out;
    out.canonical = CMatrix::Zero(p * k, p * k);
    for (const Word& w : words_up_to(fc.n, std::min(2, fc.degree)))
        out.canonical += kron(word_product(v.B, w), 0.3 * random_complex(k, k, rng));
    out.problem.v = &v;
    out.problem.k1 = out.problem.k2 = k;
    out.problem.E1 = E;
    out.problem.E2 = E;
    out.problem.X = E.frame.adjoint() * out.canonical * E.frame;
    return out;
}

ParrottInstance parrott_instance(const VarietyContext& v, int k, Rng& rng) {
    if (v.model.n() != 1 || v.model.degree() != 1 || v.dim() != 2)
        fail("ShapeMismatch", "the one-step completion lives on one variable at degree 1");
    CMatrix Ik = CMatrix::Identity(k, k);
    CMatrix A0 = 0.3 * random_complex(k, k, rng), A1 = 0.3 * random_complex(k, k, rng);
    CMatrix Gt = kron(CMatrix::Identity(2, 2), A0) + kron(v.B[0], A1);
    CMatrix to_N = v.N_frame.frame.adjoint();
    // keep e_0 (x) C^k and e_1 (x) eps_1
    CMatrix F2 = CMatrix::Zero(2 * k, k + 1);
    for (int j = 0; j < k; ++j) F2.col(j) = kron(to_N.col(0), Ik.col(j));
    F2.col(k) = kron(to_N.col(1), Ik.col(0));
    ParrottInstance out;
    out.problem.v = &v;
    out.problem.k1 = out.problem.k2 = k;
    out.problem.E1 = Subspace::full(2 * k);
    out.problem.E2 = orth_range(F2);
    out.problem.X = out.problem.E2.frame.adjoint() * Gt;
    CMatrix known_columns = Gt * kron(to_N.col(1), Ik);
    out.closed_form = std::max(spectral_norm(out.problem.X), spectral_norm(known_columns));
    return out;
}

}  // namespace opm
