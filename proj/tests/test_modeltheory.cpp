#include <doctest.h>

#include "opmodel/modeltheory.hpp"

using namespace opm;

namespace {

NcSeriesTuple automorphism(int d) {
    NcSeries f2 = NcSeries::variable(2, d, 2);
    f2.set({1, 1}, 1.0);
    return NcSeriesTuple({NcSeries::variable(2, d, 1), f2});
}

CMatrix jordan2() {
    CMatrix J = CMatrix::Zero(2, 2);
    J(0, 1) = 1;
    return J;
}

// every word of length <= L in the 2n letters, no pruning
double brute_trace_gap(const OperatorTuple& X, const OperatorTuple& Y, int L) {
    int n = X.n(), m = X.dim();
    std::vector<std::pair<CMatrix, CMatrix>> level{{CMatrix::Identity(m, m), CMatrix::Identity(m, m)}};
    double gap = 0.0;
    for (int len = 1; len <= L; ++len) {
        std::vector<std::pair<CMatrix, CMatrix>> next;
        for (const auto& [a, b] : level)
            for (int k = 0; k < 2 * n; ++k) {
                CMatrix x = k < n ? CMatrix(X[k]) : CMatrix(X[k - n].adjoint());
                CMatrix y = k < n ? CMatrix(Y[k]) : CMatrix(Y[k - n].adjoint());
                next.emplace_back(a * x, b * y);
                gap = std::max(gap, std::abs(next.back().first.trace() - next.back().second.trace()));
            }
        level = std::move(next);
    }
    return gap;
}

}  // namespace

TEST_CASE("specht oracle") {
    Rng rng(3);
    OperatorTuple X({random_complex(3, 3, rng), random_complex(3, 3, rng)});
    CMatrix W = random_unitary(3, rng);
    auto same = specht_equivalence(X, X.adjoint_conjugated(W));
    CHECK(same.equivalent);
    CHECK(same.basis_size <= 18);
    CHECK(brute_trace_gap(X, X.adjoint_conjugated(W), 5) < 1e-9);

    OperatorTuple J({jordan2()}), Z({CMatrix::Zero(2, 2)});
    auto jz = specht_equivalence(J, Z);
    CHECK_FALSE(jz.equivalent);
    CHECK(jz.mismatch_word == "1 1*");
    CHECK(jz.max_mismatch == doctest::Approx(1.0));

    CMatrix P = X[0];
    P(1, 2) += 1e-3;
    OperatorTuple Xp({P, X[1]});
    CHECK_FALSE(specht_equivalence(X, Xp).equivalent);
    CHECK(brute_trace_gap(X, Xp, 4) > 1e-7);

    CHECK_THROWS_AS(specht_equivalence(X, J), Error);
}

TEST_CASE("model space of simple characteristic functions") {
    SUBCASE("zero tuple") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 3));
        OperatorTuple X({CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)});
        auto cf = characteristic_function(ctx, X, defects(ctx, X));
        auto ms = build_model_space(cf);
        CHECK(ms.reduced);
        REQUIRE(ms.dim() == 1);
        CHECK(ms.Tt[0].norm() < 1e-12);
        CHECK(ms.Tt[1].norm() < 1e-12);
        // H is the vacuum line
        CHECK(std::abs(std::abs(ms.H_frame.frame(0, 0)) - 1.0) < 1e-12);
        auto rc = reconstruct_and_compare(ctx, X);
        CHECK(rc.pass);
    }
    SUBCASE("Jordan block") {
        auto ctx = build_model(NcSeriesTuple::identity(1, 6));
        OperatorTuple J({jordan2()});
        auto cf = characteristic_function(ctx, J, defects(ctx, J));
        auto ms = build_model_space(cf);
        REQUIRE(ms.dim() == 2);
        CHECK((ms.Tt[0] * ms.Tt[0]).norm() < 1e-12);
        CHECK(std::abs((ms.Tt[0] * ms.Tt[0].adjoint()).trace() - 1.0) < 1e-12);
        CHECK(specht_equivalence(J, ms.tuple()).equivalent);
        CHECK(ms.coinvariance_defect < 1e-10);
    }
}

TEST_CASE("general construction agrees with the partial-isometry shortcut") {
    Rng rng(7);
    auto ctx = build_model(automorphism(4));
    OperatorTuple X = pull_back(ctx, random_nilpotent_tuple(2, 2, 0.5, rng));
    auto cf = characteristic_function(ctx, X, defects(ctx, X));
    auto red = build_model_space(cf);
    auto gen = build_model_space(cf, {}, true);
    REQUIRE(red.reduced);
    REQUIRE_FALSE(gen.reduced);
    REQUIRE(red.dim() == gen.dim());
    int rows = static_cast<int>(cf.theta.rows());
    CMatrix Qg = gen.H_frame.frame;
    CHECK(Qg.bottomRows(gen.defect_range.dim()).norm() < 1e-10);
    CHECK(spectral_norm(red.H_frame.projector() - Qg.topRows(rows) * Qg.topRows(rows).adjoint()) < 1e-9);
    CHECK(specht_equivalence(red.tuple(), gen.tuple()).equivalent);
}

TEST_CASE("round trip of pure tuples") {
    Rng rng(11);
    SUBCASE("free, automorphism symbol") {
        auto ctx = build_model(automorphism(5));
        for (int t = 0; t < 2; ++t) {
            OperatorTuple X = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.6, rng));
            auto rc = reconstruct_and_compare(ctx, X);
            CHECK(rc.pure);
            CHECK(rc.dim_H == 3);
            CHECK(rc.pass);
        }
    }
    SUBCASE("commuting pair under the commutator ideal") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 5));
        auto v = build_variety(ctx, IdealSpec::commutator());
        OperatorTuple X = random_commuting_nilpotent_tuple(2, 3, 0.8, rng);
        auto rc = reconstruct_and_compare(ctx, X, {}, &v);
        CHECK(rc.dim_H == 3);
        CHECK(rc.pass);
    }
    SUBCASE("Jordan block") {
        auto ctx = build_model(NcSeriesTuple::identity(1, 5));
        auto rc = reconstruct_and_compare(ctx, OperatorTuple({jordan2()}));
        CHECK(rc.pass);
    }
}

TEST_CASE("tuple from a given theta") {
    SUBCASE("theta = 0 gives the universal model") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 2));
        int N = ctx.dim();
        auto r = tuple_from_theta(ctx, CMatrix::Zero(N, N), 1, 1);
        REQUIRE(r.model.dim() == N);
        CHECK(specht_equivalence(r.model.tuple(), OperatorTuple(ctx.MZ)).equivalent);
    }
    SUBCASE("multiplication by z squared") {
        auto ctx = build_model(NcSeriesTuple::identity(1, 6));
        CMatrix S2 = ctx.MZ[0] * ctx.MZ[0];
        auto r = tuple_from_theta(ctx, S2, 1, 1);
        REQUIRE(r.model.dim() == 2);
        CHECK(specht_equivalence(r.model.tuple(), OperatorTuple({jordan2()})).equivalent);
        CHECK(r.purely.purely_contractive);
        REQUIRE(r.coincidence_checked);
        CHECK(r.coincidence.coincide);
    }
    SUBCASE("isometric right row") {
        auto ctx = build_model(NcSeriesTuple::identity(2, 3));
        int N = ctx.dim();
        CMatrix theta(N, 2 * N);
        for (int o = 0; o < N; ++o) {
            theta.col(2 * o) = ctx.LAM[0].col(o);
            theta.col(2 * o + 1) = ctx.LAM[1].col(o);
        }
        auto r = tuple_from_theta(ctx, theta, 1, 2);
        REQUIRE(r.model.dim() == 1);
        CHECK(r.model.Tt[0].norm() < 1e-12);
        CHECK(r.model.Tt[1].norm() < 1e-12);
        if (r.coincidence_checked) CHECK(r.coincidence.coincide);
    }
    SUBCASE("rejects bad input") {
        auto ctx = build_model(NcSeriesTuple::identity(1, 4));
        CHECK_THROWS_AS(tuple_from_theta(ctx, 2.0 * ctx.MZ[0], 1, 1), Error);
        CHECK_THROWS_AS(tuple_from_theta(ctx, ctx.MZ[0].adjoint(), 1, 1), Error);
    }
}

TEST_CASE("coinciding thetas give equivalent tuples") {
    Rng rng(5);
    auto ctx = build_model(NcSeriesTuple::identity(2, 5));
    OperatorTuple X = random_nilpotent_tuple(2, 2, 0.5, rng);
    auto cf = characteristic_function(ctx, X, defects(ctx, X));
    CMatrix tau = random_unitary(cf.e, rng), tau_star = random_unitary(cf.e_star, rng);
    CMatrix moved = inner_apply_right(inner_apply(tau, cf.outer_dim, cf.theta), cf.outer_dim, tau_star.adjoint());
    auto a = tuple_from_theta(ctx, cf.theta, cf.e, cf.e_star);
    auto b = tuple_from_theta(ctx, moved, cf.e, cf.e_star);
    REQUIRE(a.model.dim() == 2);
    REQUIRE(b.model.dim() == 2);
    CHECK(specht_equivalence(a.model.tuple(), b.model.tuple()).equivalent);
    CHECK(specht_equivalence(a.model.tuple(), X).equivalent);
}

TEST_CASE("inconsistent defect operators are reported") {
    auto ctx = build_model(NcSeriesTuple::identity(1, 4));
    CMatrix A = CMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 0.5;
    CMatrix theta = kron(ctx.MZ[0], A);
    auto cf = charfun_from_matrix(ctx, theta, 2, 2);
    try {
        build_model_space(cf);
        FAIL("expected DOperatorInconsistent");
    } catch (const Error& e) {
        CHECK(e.kind() == "DOperatorInconsistent");
    }
}

TEST_CASE("universal model has zero characteristic function") {
    auto ctx = build_model(NcSeriesTuple::identity(2, 3));
    auto v = build_variety(ctx, IdealSpec::commutator());
    for (int k : {1, 2}) {
        auto z = zero_characteristic_check(v, k);
        CHECK(z.contains_vacuum);
        CHECK(z.theta_norm < 1e-10);
        CHECK(z.specht.equivalent);
        CHECK(z.pass);
    }
}
