#include <doctest.h>

#include "opmodel/domain.hpp"

using namespace opm;

namespace {

NcSeriesTuple automorphism(int d) {
    NcSeries f2 = NcSeries::variable(2, d, 2);
    f2.set({1, 1}, 1.0);
    return NcSeriesTuple({NcSeries::variable(2, d, 1), f2});
}

NcSeriesTuple scalar_z_plus_z2(int d) {
    NcSeries f = NcSeries::variable(1, d, 1);
    f.set({1, 1}, 1.0);
    return NcSeriesTuple({f});
}

CMatrix jordan2() {
    CMatrix J = CMatrix::Zero(2, 2);
    J(0, 1) = 1;
    return J;
}

// explicit triple loop over words, no caching
CMatrix brute_force_eval(const NcSeries& s, const std::vector<CMatrix>& X) {
    int m = static_cast<int>(X[0].rows());
    CMatrix R = CMatrix::Zero(m, m);
    for (const Word& w : words_up_to(s.n, s.degree)) {
        CMatrix P = CMatrix::Identity(m, m);
        for (int l : w) {
            CMatrix Q = CMatrix::Zero(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int c = 0; c < m; ++c) Q(a, c) += P(a, b) * X[l - 1](b, c);
            P = Q;
        }
        R += s.coeff(w) * P;
    }
    return R;
}

}  // namespace

TEST_CASE("build_model") {
    auto id = build_model(NcSeriesTuple::identity(2, 4));
    for (int i = 0; i < 2; ++i) CHECK((id.MZ[i] - id.MF[i]).norm() == 0.0);
    auto ctx = build_model(automorphism(5));
    CHECK((ctx.MZ[1] - (ctx.MF[1] - ctx.MF[0] * ctx.MF[0])).norm() < 1e-14);
    auto fMZ = evaluate(ctx.f, ctx.MZ);
    CMatrix inner = interior(ctx.fock, ctx.f_degree * ctx.g_degree).P;
    for (int i = 0; i < 2; ++i) {
        CHECK(((fMZ[i] - ctx.MF[i]) * inner).norm() < 1e-14);
        CHECK(((fMZ[i] - ctx.MF[i])).norm() < 1e-14);
    }
    CHECK_THROWS_AS(build_model(NcSeriesTuple({NcSeries::monomial(2, 4, {1, 1}), NcSeries::variable(2, 4, 2)})),
                    Error);
}

TEST_CASE("model relations") {
    auto ctx = build_model(automorphism(5));
    CHECK(hardy_inner(ctx, 1, 1) == cplx(2));
    CHECK(hardy_inner(ctx, 0, 0) == cplx(1));
    CHECK(hardy_inner(ctx, 0, 1) == cplx(0));
    CMatrix P = interior(ctx.fock, ctx.g_degree).P;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(((ctx.LAM[i] * ctx.MZ[j] - ctx.MZ[j] * ctx.LAM[i]) * P).norm() < 1e-12);
    CHECK(model_inverse_residual(ctx) < 1e-14);
    auto R = model_gram_residuals(ctx);
    CHECK(R(0, 0) < 1e-12);
    CHECK(R(1, 1) < 1e-12);
    // M_{Z_1}^* M_{Z_2} = -S_1 on the interior while <Z_2, Z_1> = 0
    CHECK(R(0, 1) == doctest::Approx(1.0));
    CHECK(model_gram_residuals(build_model(NcSeriesTuple::identity(2, 4))).maxCoeff() < 1e-14);
    auto pr = pure_check(ctx, OperatorTuple(ctx.MZ));
    CHECK(pr.verdict);
}

TEST_CASE("evaluate_series") {
    auto F = scalar_z_plus_z2(4);
    auto ev = evaluate_series(F, OperatorTuple({jordan2()}));
    CHECK((ev.values[0] - jordan2()).norm() == 0.0);
    CHECK(ev.exact);
    Rng rng(13);
    OperatorTuple X = random_contraction_tuple(2, 3, 0.5, rng);
    auto idv = evaluate_series(NcSeriesTuple::identity(2, 4), X);
    for (int i = 0; i < 2; ++i) CHECK((idv.values[i] - X[i]).norm() == 0.0);
    OperatorTuple N = random_nilpotent_tuple(2, 3, 0.8, rng);
    auto G = automorphism(4);
    auto gv = evaluate_series(G, N);
    for (int i = 0; i < 2; ++i) CHECK((gv.values[i] - brute_force_eval(G[i], N.T)).norm() < 1e-13);
    CHECK(gv.exact);
    // multiplicativity on nilpotent input of order <= d/2
    NcSeries a = random_polynomial(2, 6, 3, 5, rng), b = random_polynomial(2, 6, 3, 5, rng);
    OperatorTuple N3 = random_nilpotent_tuple(2, 3, 0.8, rng);
    CHECK((evaluate(multiply(a, b), N3.T) - evaluate(a, N3.T) * evaluate(b, N3.T)).norm() < 1e-12);
}

TEST_CASE("membership") {
    auto ctx = build_model(automorphism(4));
    auto zero = membership_check(ctx, OperatorTuple({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}));
    CHECK(zero.verdict == Membership::Inside);
    CHECK(zero.row_norm == 0.0);
    auto idc = build_model(NcSeriesTuple::identity(2, 4));
    Rng rng(1);
    CHECK(membership_check(idc, random_contraction_tuple(2, 3, 0.9, rng)).member());
    CHECK(membership_check(idc, random_contraction_tuple(2, 3, 1.2, rng)).verdict == Membership::Outside);
    OperatorTuple T = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.9, rng));
    auto rep = membership_check(ctx, T);
    CHECK(rep.member());
    for (double r : rep.residual) CHECK(r <= 1e-12);
}

TEST_CASE("pure and cnc") {
    auto idc = build_model(NcSeriesTuple::identity(2, 3));
    auto zero = pure_check(idc, OperatorTuple({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}));
    CHECK(zero.r[1] == 0.0);
    CHECK(zero.verdict);
    FockContext small(2, 2);
    auto shifts = pure_check(idc, OperatorTuple(left_creations(small)));
    CHECK(shifts.verdict);
    CHECK(shifts.r[3] == 0.0);
    auto z = build_model(NcSeriesTuple::identity(1, 3));
    CMatrix one = CMatrix::Identity(1, 1);
    auto u = pure_check(z, OperatorTuple({one}), {}, 50);
    CHECK_FALSE(u.verdict);
    for (double r : u.r) CHECK(r == doctest::Approx(1.0));
    CHECK_FALSE(cnc_check(z, OperatorTuple({one})).verdict);
    CHECK(cnc_check(idc, OperatorTuple(left_creations(small))).verdict);
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 1;
    D(1, 1) = 0.5;
    auto c = cnc_check(z, OperatorTuple({D}));
    CHECK_FALSE(c.verdict);
    CHECK(c.fixed_dim == 1);
}

TEST_CASE("defects") {
    auto idc = build_model(NcSeriesTuple::identity(2, 3));
    auto dz = defects(idc, OperatorTuple({CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)}));
    CHECK((dz.delta - CMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK(dz.frame_D.dim() == 3);
    CHECK(dz.frame_Dstar.dim() == 6);
    auto z = build_model(NcSeriesTuple::identity(1, 4));
    auto dj = defects(z, OperatorTuple({jordan2()}));
    CHECK(std::abs(dj.delta(0, 0)) < 1e-12);
    CHECK(std::abs(dj.delta(1, 1) - 1.0) < 1e-12);
    CHECK(dj.frame_D.dim() == 1);
    // coisometric row: [1/sqrt2, 1/sqrt2] on C
    CMatrix a = CMatrix::Constant(1, 1, 1.0 / std::sqrt(2.0));
    auto dc = defects(idc, OperatorTuple({a, a}));
    CHECK(dc.frame_D.dim() == 0);
    Rng rng(3);
    CHECK_THROWS_AS(defects(idc, random_contraction_tuple(2, 3, 1.5, rng)), Error);
    auto T = random_contraction_tuple(2, 3, 0.8, rng);
    auto dd = defects(idc, T);
    CMatrix row = T.row();
    CHECK(spectral_norm(dd.delta_star * dd.delta_star - (CMatrix::Identity(6, 6) - row.adjoint() * row)) < 1e-8);
}

TEST_CASE("poisson kernel") {
    auto idc = build_model(NcSeriesTuple::identity(2, 4));
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    auto pk0 = poisson_kernel(idc, Z, defects(idc, Z));
    CHECK(pk0.isometry_defect < 1e-12);
    CMatrix top = pk0.K.topRows(2);
    CHECK(std::abs(std::abs(top.determinant()) - 1.0) < 1e-12);
    CHECK(pk0.K.bottomRows(pk0.K.rows() - 2).norm() < 1e-12);

    Rng rng(17);
    auto ctx = build_model(automorphism(5));
    for (int t = 0; t < 3; ++t) {
        OperatorTuple T = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.9, rng));
        auto dd = defects(ctx, T);
        auto pk = poisson_kernel(ctx, T, dd);
        CHECK(pk.isometry_defect <= pk.tail + 1e-8);
        CHECK(pk.kernel_defect <= 1e-10);
        for (double r : pk.intertwining) CHECK(r <= 1e-10);
    }
    OperatorTuple C = random_contraction_tuple(2, 3, 0.5, rng);
    auto pkc = poisson_kernel(idc, C, defects(idc, C));
    CHECK(pkc.kernel_defect <= 1e-10);
    CHECK(pkc.isometry_defect <= pkc.tail + 1e-8);
    for (double r : pkc.intertwining) CHECK(r <= 1e-10);
}

TEST_CASE("rank one identity") {
    auto idc = build_model(NcSeriesTuple::identity(2, 3));
    FockContext fc = idc.fock;
    CVector vac = fc.basis({});
    NcSeries one = NcSeries::one(2, 3);
    Rng seed(2);
    CVector xi = random_complex(fc.dim, 1, seed);
    CHECK(rank_one_residual(idc.MF, vac, one, one, xi) < 1e-12);
    // q = Z1, r = Z2, xi = e_1: both sides equal e_2
    NcSeries q = NcSeries::variable(2, 3, 1), r = NcSeries::variable(2, 3, 2);
    CVector e1 = fc.basis({1});
    CMatrix P = vacuum_projection(fc);
    CVector lhs = evaluate(r, idc.MF) * P * evaluate(q, idc.MF).adjoint() * e1;
    CHECK((lhs - fc.basis({2})).norm() < 1e-14);
    CHECK(rank_one_residual(idc.MF, vac, q, r, e1) < 1e-14);
    Rng rng(5);
    auto rep = rank_one_identity_check(build_model(automorphism(4)), rng, 20);
    CHECK(rep.max_residual <= 1e-10);
    CHECK(rep.instances == 20);
}
