#include "opmodel/variety.hpp"

namespace opm {

std::string to_string(IdealKind k) {
    switch (k) {
        case IdealKind::Commutator: return "commutator";
        case IdealKind::HomogeneousComposed: return "homogeneous_composed";
        default: return "explicit_generators";
    }
}

IdealKind ideal_kind_from_string(const std::string& s) {
    if (s == "commutator") return IdealKind::Commutator;
    if (s == "homogeneous_composed") return IdealKind::HomogeneousComposed;
    if (s == "explicit_generators") return IdealKind::ExplicitGenerators;
    fail("SchemaError", "unknown ideal kind " + s);
}

bool is_homogeneous(const NcSeries& p) {
    int deg = -1;
    for (const auto& [w, c] : p.coeffs) {
        if (deg < 0) deg = static_cast<int>(w.size());
        if (static_cast<int>(w.size()) != deg) return false;
    }
    return true;
}

double ConstraintReport::max_norm() const {
    double m = 0.0;
    for (double x : norms) m = std::max(m, x);
    return m;
}

std::vector<CMatrix> generators_at(const ModelContext& ctx, const IdealSpec& ideal, const OperatorTuple& X) {
    std::vector<CMatrix> out;
    if (ideal.kind == IdealKind::Commutator) {
        for (int i = 0; i < X.n(); ++i)
            for (int j = i + 1; j < X.n(); ++j) out.push_back(X[i] * X[j] - X[j] * X[i]);
        return out;
    }
    auto fX = evaluate(ctx.f, X.T);
    for (const auto& q : ideal.polys) {
        if (q.n != ctx.n() || q.degree != ctx.degree())
            fail("MismatchedContext", "ideal generator context differs from model");
        out.push_back(evaluate(q, fX));
    }
    return out;
}

std::vector<CMatrix> generator_matrices(const ModelContext& ctx, const IdealSpec& ideal) {
    return generators_at(ctx, ideal, OperatorTuple(ctx.MZ));
}

VarietyContext build_variety(const ModelContext& ctx, const IdealSpec& ideal, const Tolerances& tol) {
    if (ideal.kind == IdealKind::HomogeneousComposed)
        for (const auto& q : ideal.polys)
            if (!is_homogeneous(q)) fail("SchemaError", "generator is not homogeneous");
    VarietyContext v;
    v.model = ctx;
    v.ideal = ideal;
    int dim = ctx.dim();
    v.generator_degree = ideal.kind == IdealKind::Commutator ? 2 : 0;
    for (const auto& q : ideal.polys) v.generator_degree = std::max(v.generator_degree, q.max_degree());

    auto gens = generator_matrices(ctx, ideal);
    CMatrix seed(dim, 0);
    for (const auto& G : gens) {
        CMatrix next(dim, seed.cols() + dim);
        next << seed, G;
        seed = next;
    }
    Subspace M = seed.cols() ? orth_range(seed, tol) : Subspace::zero(dim);
    CMatrix top = CMatrix::Identity(dim, dim) - interior(ctx.fock, 1).P;
    int stable = 0, last = M.dim();
    while (stable < 2) {
        CMatrix grown(dim, M.dim() * (1 + 2 * ctx.n()));
        grown.leftCols(M.dim()) = M.frame;
        for (int i = 0; i < ctx.n(); ++i) {
            if (M.dim()) v.dropped_mass = std::max(v.dropped_mass, spectral_norm(top * M.frame));
            grown.middleCols(M.dim() * (1 + 2 * i), M.dim()) = ctx.MZ[i] * M.frame;
            grown.middleCols(M.dim() * (2 + 2 * i), M.dim()) = ctx.MF[i] * M.frame;
        }
        M = grown.cols() ? orth_range(grown, tol) : Subspace::zero(dim);
        stable = (M.dim() == last) ? stable + 1 : 0;
        last = M.dim();
    }
    v.M_frame = M;
    v.N_frame = orth_complement(M, tol);
    if (v.N_frame.dim() == 0) fail("IdealIsEverything", "N is trivial at this truncation");
    // rebuild the frame slice by slice when P_N respects the grading
    CMatrix PN = v.N_frame.projector(), graded = CMatrix::Zero(dim, dim);
    std::vector<CMatrix> slices;
    for (int k = 0; k <= ctx.degree(); ++k) {
        CMatrix Pk = interior(ctx.fock, ctx.degree() - k).P;
        if (k > 0) Pk -= interior(ctx.fock, ctx.degree() - k + 1).P;
        slices.push_back(Pk * PN * Pk);
        graded += slices.back();
    }
    if (spectral_norm(PN - graded) <= tol.check_abs) {
        CMatrix F(dim, v.N_frame.dim());
        int c = 0;
        for (int k = 0; k <= ctx.degree(); ++k) {
            Subspace s = orth_range(slices[k], tol);
            if (c + s.dim() > F.cols()) break;
            F.middleCols(c, s.dim()) = s.frame;
            for (int j = 0; j < s.dim(); ++j) v.N_degrees.push_back(k);
            c += s.dim();
        }
        if (c == F.cols())
            v.N_frame.frame = F;
        else
            v.N_degrees.clear();
    }
    const CMatrix& N = v.N_frame.frame;
    for (int i = 0; i < ctx.n(); ++i) {
        v.B.push_back(N.adjoint() * ctx.MZ[i] * N);
        v.W.push_back(N.adjoint() * ctx.LAM[i] * N);
    }
    v.contains_vacuum = M.dim() == 0 || M.frame.row(0).norm() <= tol.check_abs;
    return v;
}

ConstraintReport vanishing_check(const VarietyContext& v, const OperatorTuple& X, const Tolerances& tol) {
    ConstraintReport rep;
    for (const auto& G : generators_at(v.model, v.ideal, X)) {
        rep.norms.push_back(spectral_norm(G));
        if (rep.norms.back() > tol.check_abs) rep.pass = false;
    }
    return rep;
}

ConstraintReport universal_constraint_check(const VarietyContext& v, const Tolerances& tol) {
    ConstraintReport rep;
    const CMatrix& N = v.N_frame.frame;
    int margin = std::min(v.model.degree(), std::max(0, v.generator_degree * v.model.g_degree));
    CMatrix P = interior(v.model.fock, margin).P;
    for (const auto& G : generators_at(v.model, v.ideal, OperatorTuple(v.B))) {
        rep.norms.push_back(spectral_norm(P * N * G * N.adjoint() * P));
        if (rep.norms.back() > tol.check_abs) rep.pass = false;
    }
    return rep;
}

double coinvariance_defect(const VarietyContext& v) {
    CMatrix PN = v.P_N();
    CMatrix PM = CMatrix::Identity(PN.rows(), PN.cols()) - PN;
    double r = 0.0;
    for (const auto& M : v.model.MZ) r = std::max(r, spectral_norm(PM * M.adjoint() * PN));
    return r;
}

CMatrix interior_in_N(const VarietyContext& v, int margin) {
    int cutoff = v.model.degree() - margin;
    const CMatrix& N = v.N_frame.frame;
    if (v.N_degrees.empty()) return N.adjoint() * interior(v.model.fock, margin).P * N;
    CMatrix P = CMatrix::Zero(v.dim(), v.dim());
    for (int j = 0; j < v.dim(); ++j)
        if (v.N_degrees[j] <= cutoff) P(j, j) = 1.0;
    return P;
}

KernelPolynomial random_kernel_polynomial(int n, int level, int max_deg, int terms, Rng& rng) {
    KernelPolynomial p;
    p.level = level;
    auto words = words_up_to(n, max_deg);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::normal_distribution<double> nd;
    p.coeffs.assign(level, std::vector<std::map<std::pair<Word, Word>, cplx>>(level));
    for (int i = 0; i < level; ++i)
        for (int j = 0; j < level; ++j)
            for (int t = 0; t < terms; ++t) p.coeffs[i][j][{words[pick(rng)], words[pick(rng)]}] += cplx(nd(rng), nd(rng));
    return p;
}

CMatrix kernel_polynomial_at(const KernelPolynomial& p, const std::vector<CMatrix>& X) {
    int m = static_cast<int>(X.at(0).rows());
    CMatrix out = CMatrix::Zero(p.level * m, p.level * m);
    std::map<Word, CMatrix, GradedLess> cache;
    auto prod = [&](const Word& w) -> const CMatrix& {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, word_product(X, w)).first;
        return it->second;
    };
    for (int i = 0; i < p.level; ++i)
        for (int j = 0; j < p.level; ++j)
            for (const auto& [ab, c] : p.coeffs[i][j])
                out.block(i * m, j * m, m, m) += c * prod(ab.first) * prod(ab.second).adjoint();
    return out;
}

static void require_constraint(const VarietyContext& v, const OperatorTuple& X, const Tolerances& tol) {
    if (!vanishing_check(v, X, tol).pass) fail("ConstraintViolated", "tuple does not annihilate the ideal");
}

InequalityReport von_neumann_inequality_check(const VarietyContext& v, const OperatorTuple& X,
                                              const std::vector<NcSeries>& polys, const Tolerances& tol) {
    require_constraint(v, X, tol);
    InequalityReport rep;
    CMatrix L = CMatrix::Zero(X.dim(), X.dim()), R = CMatrix::Zero(v.dim(), v.dim());
    for (const auto& q : polys) {
        CMatrix qX = evaluate(q, X.T), qB = evaluate(q, v.B);
        L += qX * qX.adjoint();
        R += qB * qB.adjoint();
    }
    rep.lhs = spectral_norm(L);
    rep.rhs = spectral_norm(R);
    rep.pass = rep.lhs <= rep.rhs + tol.check_abs;
    return rep;
}

InequalityReport complete_contractivity_check(const VarietyContext& v, const OperatorTuple& X,
                                              const KernelPolynomial& p, const Tolerances& tol) {
    require_constraint(v, X, tol);
    InequalityReport rep;
    rep.lhs = spectral_norm(kernel_polynomial_at(p, X.T));
    rep.rhs = spectral_norm(kernel_polynomial_at(p, v.B));
    rep.pass = rep.lhs <= rep.rhs + tol.check_abs;
    return rep;
}

RankOneReport constrained_rank_one_check(const VarietyContext& v, Rng& rng, int instances, int poly_degree) {
    if (!v.contains_vacuum) fail("ConstraintViolated", "vacuum vector is not in N");
    RankOneReport rep;
    const ModelContext& ctx = v.model;
    auto A = evaluate(ctx.f, v.B);
    CVector vac = v.N_frame.frame.adjoint() * ctx.fock.basis({});
    for (int t = 0; t < instances; ++t) {
        NcSeries q = random_polynomial(ctx.n(), ctx.degree(), poly_degree, 4, rng);
        NcSeries r = random_polynomial(ctx.n(), ctx.degree(), poly_degree, 4, rng);
        CVector xi = random_complex(v.dim(), 1, rng);
        rep.max_residual = std::max(rep.max_residual, rank_one_residual(A, vac, q, r, xi));
        ++rep.instances;
    }
    return rep;
}

OperatorTuple random_commuting_nilpotent_tuple(int n, int dim, double row_norm, Rng& rng) {
    CMatrix A = random_complex(dim, dim, rng).triangularView<Eigen::StrictlyUpper>();
    std::normal_distribution<double> nd;
    std::vector<CMatrix> T;
    for (int i = 0; i < n; ++i) {
        CMatrix P = CMatrix::Zero(dim, dim), Ak = A;
        for (int k = 1; k < dim; ++k) {
            P += cplx(nd(rng), nd(rng)) * Ak;
            Ak = Ak * A;
        }
        T.push_back(P);
    }
    CMatrix R(dim, dim * n);
    for (int i = 0; i < n; ++i) R.middleCols(i * dim, dim) = T[i];
    double s = spectral_norm(R);
    if (s > 0)
        for (auto& M : T) M *= row_norm / s;
    return OperatorTuple(std::move(T));
}

}  // namespace opm
