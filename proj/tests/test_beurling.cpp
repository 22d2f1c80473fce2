#include <doctest.h>

#include "opmodel/beurling.hpp"

using namespace opm;

namespace {

NcSeriesTuple automorphism(int d) {
    NcSeries f2 = NcSeries::variable(2, d, 2);
    f2.set({1, 1}, 1.0);
    return NcSeriesTuple({NcSeries::variable(2, d, 1), f2});
}

// |<A, B>| = ||A|| ||B||, i.e. equal up to a unimodular factor when the norms agree
bool equal_up_to_phase(const CMatrix& A, const CMatrix& B, double eps) {
    cplx ip = (A.adjoint() * B).trace();
    if (std::abs(ip) < eps) return A.norm() < eps && B.norm() < eps;
    cplx ph = ip / std::abs(ip);
    return (A * ph - B).norm() < eps;
}

// N frame coordinates of Fock vectors
CMatrix in_N(const VarietyContext& v, const CMatrix& fock_vectors) {
    return v.N_frame.frame.adjoint() * fock_vectors;
}

// projector onto word length m, in N coordinates
CMatrix degree_part(const VarietyContext& v, int m) {
    const auto& fc = v.model.fock;
    CMatrix P = CMatrix::Zero(fc.dim, fc.dim);
    for (int i = 0; i < fc.dim; ++i)
        if (static_cast<int>(fc.word(i).size()) == m) P(i, i) = 1.0;
    return in_N(v, P * v.N_frame.frame);
}

}  // namespace

TEST_CASE("Beurling factor of simple subspaces") {
    auto ctx = build_model(NcSeriesTuple::identity(2, 3));
    auto v = build_variety(ctx, IdealSpec::trivial());
    int F = ctx.dim();
    SUBCASE("everything") {
        auto bf = beurling_factor(v, Subspace::full(F));
        CHECK(bf.G_dim == 1);
        CHECK(equal_up_to_phase(bf.theta, CMatrix::Identity(F, F), 1e-10));
        CHECK(bf.residual < 1e-10);
    }
    SUBCASE("words ending in the first letter") {
        CMatrix cols(F, 0);
        for (int i = 0; i < F; ++i) {
            Word w = ctx.fock.word(i);
            if (!w.empty() && w.back() == 1) {
                cols.conservativeResize(F, cols.cols() + 1);
                cols.col(cols.cols() - 1) = ctx.fock.basis(w);
            }
        }
        Subspace M = orth_range(in_N(v, cols));
        auto bf = beurling_factor(v, M);
        CHECK(bf.G_dim == 1);
        CHECK(equal_up_to_phase(bf.theta, in_N(v, ctx.LAM[0] * v.N_frame.frame), 1e-10));
        CHECK(bf.residual < 1e-10);
        CHECK(bf.partial_isometry_defect < 1e-10);
    }
    SUBCASE("a subspace that is not invariant") {
        CMatrix e(F, 1);
        e.col(0) = ctx.fock.basis({1});
        CHECK_THROWS_AS(beurling_factor(v, orth_range(in_N(v, e))), Error);
    }
}

TEST_CASE("Beurling factor under the commutator ideal") {
    auto ctx = build_model(NcSeriesTuple::identity(2, 4));
    auto v = build_variety(ctx, IdealSpec::commutator());
    int p = v.dim();
    // range of the compressed z_1 multiplier
    Subspace M = invariant_closure(v, 1, v.B[0]);
    CHECK(M.dim() == numerical_rank(v.B[0], 1e-9));
    auto bf = beurling_factor(v, M);
    CHECK(bf.residual < 1e-9);
    CHECK(bf.partial_isometry_defect < 1e-9);
    CHECK(bf.intertwining < 1e-9);
    CHECK(bf.round_trip < 1e-9);
    CHECK(bf.lift_invariance < 1e-9);
    CHECK(bf.wandering_orthogonality < 1e-9);
    CHECK(p == 15);
}

TEST_CASE("Beurling factor of random invariant subspaces") {
    Rng rng(13);
    for (int which = 0; which < 2; ++which) {
        auto ctx = build_model(which ? automorphism(4) : NcSeriesTuple::identity(2, 4));
        auto v = build_variety(ctx, which ? IdealSpec::trivial() : IdealSpec::commutator());
        for (int k : {1, 2}) {
            // homogeneous seeds of degrees 1 and 2 give a graded subspace
            CMatrix seed(v.dim() * k, 2);
            for (int m : {1, 2})
                seed.col(m - 1) = kron(degree_part(v, m), CMatrix::Identity(k, k)) * random_complex(v.dim() * k, 1, rng);
            Subspace M = invariant_closure(v, k, seed);
            REQUIRE(M.dim() > 0);
            auto bf = beurling_factor(v, M);
            CHECK(bf.graded);
            CHECK(bf.residual < 1e-8);
            CHECK(bf.partial_isometry_defect < 1e-8);
            CHECK(bf.intertwining < 1e-8);
            CHECK(bf.round_trip < 1e-8);
        }
    }
    SUBCASE("mixed degrees leave a truncation tail") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 4));
        auto v = build_variety(ctx, IdealSpec::trivial());
        CMatrix seed = degree_part(v, 1) * random_complex(v.dim(), 1, rng) + degree_part(v, 2) * random_complex(v.dim(), 1, rng);
        auto bf = beurling_factor(v, invariant_closure(v, 1, seed));
        CHECK_FALSE(bf.graded);
        CHECK(bf.residual > 1e-6);
    }
}

TEST_CASE("commutant lifting") {
    SUBCASE("identity") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 2));
        auto v = build_variety(ctx, IdealSpec::commutator());
        LiftingProblem pr;
        pr.v = &v;
        pr.E1 = Subspace::full(v.dim());
        pr.E2 = Subspace::full(v.dim());
        pr.X = CMatrix::Identity(v.dim(), v.dim());
        auto r = commutant_lift(pr);
        CHECK(spectral_norm(r.G - pr.X) < 1e-9);
        CHECK(r.norm == doctest::Approx(1.0));
    }
    SUBCASE("polynomial in the compressed model") {
        Rng rng(2);
        auto ctx = build_model(NcSeriesTuple::identity(2, 3));
        auto v = build_variety(ctx, IdealSpec::commutator());
        int p = v.dim();
        // co-invariant E = complement of an invariant subspace
        Subspace M = invariant_closure(v, 1, v.B[0] * random_complex(p, 1, rng));
        Subspace E = orth_complement(M);
        CMatrix G0 = 0.5 * CMatrix::Identity(p, p) + cplx(0.3, 0.1) * v.B[0] - 0.4 * v.B[1] + 0.2 * v.B[0] * v.B[1];
        LiftingProblem pr;
        pr.v = &v;
        pr.E1 = E;
        pr.E2 = E;
        pr.X = E.frame.adjoint() * G0 * E.frame;
        auto r = commutant_lift(pr);
        CHECK(r.intertwining <= pr.opt_tol);
        CHECK(r.compression <= pr.opt_tol);
        CHECK(r.range_defect <= pr.opt_tol);
        CHECK(r.norm <= spectral_norm(G0) + 1e-9);
        CHECK(r.eps_lift <= 1e-4);
    }
    SUBCASE("one-step Parrott completion") {
        Rng rng(9);
        auto ctx = build_model(NcSeriesTuple::identity(1, 1));
        auto v = build_variety(ctx, IdealSpec::trivial());
        auto inst = parrott_instance(v, 2, rng);
        auto r = commutant_lift(inst.problem);
        CHECK(std::abs(r.norm - inst.closed_form) <= 1e-8);
        CHECK(r.compression <= inst.problem.opt_tol);
        CHECK(r.bisection_norm >= r.norm);
    }
    SUBCASE("generated feasible problems") {
        Rng rng(31);
        auto ctx = build_model(NcSeriesTuple::identity(2, 3));
        auto v = build_variety(ctx, IdealSpec::commutator());
        for (int k : {1, 2}) {
            auto gen = random_feasible_lifting(v, k, rng);
            auto r = commutant_lift(gen.problem);
            CHECK(r.intertwining <= 1e-6);
            CHECK(r.compression <= 1e-6);
            CHECK(r.eps_lift <= 1e-4);
        }
    }
}
