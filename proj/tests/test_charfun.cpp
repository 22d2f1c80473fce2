#include <doctest.h>

#include "opmodel/charfun.hpp"

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

// the defining formula with Kronecker products and a generic inverse
CMatrix formula_oracle(const ModelContext& ctx, const DefectData& D) {
    int N = ctx.dim(), m = static_cast<int>(D.delta.rows()), n = ctx.n();
    CMatrix IF = CMatrix::Identity(N, N);
    CMatrix row = OperatorTuple(D.fT).row();
    CMatrix A = CMatrix::Identity(N * m, N * m);
    CMatrix L = CMatrix::Zero(N * m, N * n * m);
    for (int i = 0; i < n; ++i) {
        A -= kron(ctx.LAM[i], D.fT[i].adjoint());
        CMatrix E = CMatrix::Zero(m, n * m);
        E.middleCols(i * m, m) = CMatrix::Identity(m, m);
        L += kron(ctx.LAM[i], E);
    }
    CMatrix theta = -kron(IF, row) + kron(IF, D.delta) * A.inverse() * L * kron(IF, D.delta_star);
    return kron(IF, D.frame_D.frame.adjoint()) * theta * kron(IF, D.frame_Dstar.frame);
}

struct Built {
    DefectData D;
    CharFunData cf;
    PoissonKernelData K;
};

Built build(const ModelContext& ctx, const OperatorTuple& X) {
    Built b;
    b.D = defects(ctx, X);
    b.cf = characteristic_function(ctx, X, b.D);
    b.K = poisson_kernel(ctx, X, b.D);
    return b;
}

// entries equal up to one global unimodular factor
bool equal_up_to_phase(const CMatrix& A, const CMatrix& B, double eps) {
    Eigen::Index r, c;
    B.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(A(r, c)) < eps) return A.norm() < eps && B.norm() < eps;
    cplx ph = B(r, c) / A(r, c);
    return std::abs(std::abs(ph) - 1.0) < eps && (A * ph - B).norm() < eps;
}

}  // namespace

TEST_CASE("scalar zero gives the shift") {
    auto ctx = build_model(NcSeriesTuple::identity(1, 5));
    auto b = build(ctx, OperatorTuple({CMatrix::Zero(1, 1)}));
    CHECK(equal_up_to_phase(ctx.MF[0], b.cf.theta, 1e-12));
}

TEST_CASE("Jordan block gives z^2") {
    auto ctx = build_model(NcSeriesTuple::identity(1, 5));
    auto b = build(ctx, OperatorTuple({jordan2()}));
    CHECK(equal_up_to_phase(ctx.MF[0] * ctx.MF[0], b.cf.theta, 1e-12));
    for (int k = 0; k < 8; ++k) {
        cplx z = std::polar(0.1 * (k + 1), 0.7 * k);
        CMatrix th = commutative_char_at_point(OperatorTuple({jordan2()}), b.D, ctx.f, {z});
        CHECK(std::abs(std::abs(th(0, 0)) - std::norm(z)) < 1e-12);
        CHECK(std::abs(th(0, 0) - symbol_at(b.cf, z)(0, 0)) < 1e-12);
    }
}

TEST_CASE("zero tuple gives the right row") {
    auto ctx = build_model(NcSeriesTuple::identity(2, 4));
    auto b = build(ctx, OperatorTuple({CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)}));
    CMatrix row(ctx.dim(), 2 * ctx.dim());
    // interleave so that column o*2 + j is Lambda_j applied to e_o
    for (int o = 0; o < ctx.dim(); ++o)
        for (int j = 0; j < 2; ++j) row.col(o * 2 + j) = ctx.LAM[j].col(o);
    CMatrix unframed = inner_apply_right(b.cf.theta, ctx.dim(), b.D.frame_Dstar.frame.adjoint());
    CHECK(equal_up_to_phase(row, unframed, 1e-12));
}

TEST_CASE("assembled theta matches the formula") {
    Rng rng(41);
    for (const auto& f : {NcSeriesTuple::identity(2, 3), automorphism(4)}) {
        auto ctx = build_model(f);
        for (int t = 0; t < 2; ++t) {
            OperatorTuple X = t == 0 ? pull_back(ctx, random_nilpotent_tuple(2, 2, 0.8, rng))
                                     : random_contraction_tuple(2, 2, 0.3, rng);
            auto b = build(ctx, X);
            CHECK(spectral_norm(b.cf.theta - formula_oracle(ctx, b.D)) < 1e-10);
            CHECK(spectral_norm(b.cf.theta) <= 1.0 + 1e-8);
            CHECK(multi_analytic_check(b.cf).residual < 1e-10);
        }
    }
}

TEST_CASE("fundamental identity") {
    auto idc = build_model(NcSeriesTuple::identity(2, 4));
    auto b0 = build(idc, OperatorTuple({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}));
    CHECK(fundamental_identity_check(b0.K, b0.cf).residual < 1e-12);
    Rng rng(2);
    auto ctx = build_model(automorphism(5));
    for (int t = 0; t < 3; ++t) {
        OperatorTuple X = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.9, rng));
        auto b = build(ctx, X);
        auto rep = fundamental_identity_check(b.K, b.cf);
        CHECK(rep.pass);
        CHECK(rep.residual <= 1e-8);
    }
    auto z = build_model(NcSeriesTuple::identity(1, 5));
    auto bj = build(z, OperatorTuple({jordan2()}));
    CHECK(fundamental_identity_check(bj.K, bj.cf).residual <= 1e-8);
    OperatorTuple C = random_contraction_tuple(2, 2, 0.4, rng);
    auto bc = build(idc, C);
    CHECK(fundamental_identity_check(bc.K, bc.cf).pass);
}

TEST_CASE("isometry iff pure") {
    auto idc = build_model(NcSeriesTuple::identity(2, 4));
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    auto b0 = build(idc, Z);
    auto r0 = isometry_iff_pure_check(b0.cf, pure_check(idc, Z));
    CHECK(r0.consistent);
    CHECK(r0.isometry_defect < 1e-12);
    auto z = build_model(NcSeriesTuple::identity(1, 4));
    OperatorTuple one({CMatrix::Identity(1, 1)});
    auto b1 = build(z, one);
    auto r1 = isometry_iff_pure_check(b1.cf, pure_check(z, one, {}, 50));
    CHECK(r1.degenerate);
    CHECK_FALSE(r1.pure);
    Rng rng(8);
    auto ctx = build_model(automorphism(5));
    OperatorTuple X = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.9, rng));
    auto b = build(ctx, X);
    auto r = isometry_iff_pure_check(b.cf, pure_check(ctx, X));
    CHECK(r.pure);
    CHECK(r.isometry_defect <= 1e-7);
    CHECK(r.consistent);
}

TEST_CASE("coincidence") {
    Rng rng(12);
    auto ctx = build_model(automorphism(4));
    OperatorTuple X = pull_back(ctx, random_nilpotent_tuple(2, 3, 0.9, rng));
    auto b = build(ctx, X);
    auto self = coincide(b.cf, b.cf, CMatrix::Identity(b.cf.e, b.cf.e), CMatrix::Identity(b.cf.e_star, b.cf.e_star));
    CHECK(self.coincide);
    CMatrix W = random_unitary(3, rng);
    OperatorTuple Y = X.adjoint_conjugated(W);
    auto b2 = build(ctx, Y);
    auto [tau, tau_star] = coincidence_witness(b.D, b2.D, W);
    auto rep = coincide(b.cf, b2.cf, tau, tau_star);
    CHECK(rep.coincide);
    CHECK(rep.residual <= 1e-8);
    // symmetric with adjoint witnesses
    CHECK(coincide(b2.cf, b.cf, tau.adjoint(), tau_star.adjoint()).coincide);
    auto found = coincide_search(b.cf, b2.cf);
    CHECK(found.heuristic);
    CHECK(found.coincide);

    auto z = build_model(NcSeriesTuple::identity(1, 5));
    auto bz = build(z, OperatorTuple({CMatrix::Zero(2, 2)}));
    auto bj = build(z, OperatorTuple({jordan2()}));
    CHECK(coincide_search(bz.cf, bj.cf).obstruction == "rank");
    auto bz1 = build(z, OperatorTuple({CMatrix::Zero(1, 1)}));
    auto s = coincide_search(bz1.cf, bj.cf);
    CHECK_FALSE(s.coincide);
    CHECK(s.obstruction == "residual");
}

TEST_CASE("purely contractive") {
    auto z = build_model(NcSeriesTuple::identity(1, 5));
    auto bz = build(z, OperatorTuple({CMatrix::Zero(1, 1)}));
    auto p0 = purely_contractive_check(bz.cf);
    CHECK(p0.vacuum_norm < 1e-12);
    CHECK(p0.purely_contractive);
    auto ident = charfun_from_matrix(z, CMatrix::Identity(z.dim(), z.dim()), 1, 1);
    CHECK_FALSE(purely_contractive_check(ident).purely_contractive);
    auto bj = build(z, OperatorTuple({jordan2()}));
    auto pj = purely_contractive_check(bj.cf);
    CHECK(pj.vacuum_norm < 1e-12);
    CHECK(pj.range_condition);
    CHECK_THROWS_AS(charfun_from_matrix(z, z.MF[0].adjoint(), 1, 1), Error);
}

TEST_CASE("commutative point evaluation") {
    auto z = build_model(NcSeriesTuple::identity(1, 4));
    OperatorTuple T0({CMatrix::Zero(1, 1)});
    auto D0 = defects(z, T0);
    cplx p(0.3, -0.2);
    CMatrix v = commutative_char_at_point(T0, D0, z.f, {p});
    CHECK(std::abs(std::abs(v(0, 0)) - std::abs(p)) < 1e-14);
    Rng rng(5);
    auto idc = build_model(NcSeriesTuple::identity(2, 4));
    OperatorTuple C = random_commuting_nilpotent_tuple(2, 3, 0.7, rng);
    auto D = defects(idc, C);
    CMatrix at0 = commutative_char_at_point(C, D, idc.f, {0.0, 0.0});
    CHECK(spectral_norm(at0 + D.frame_D.frame.adjoint() * C.row() * D.frame_Dstar.frame) < 1e-12);
    CHECK_THROWS_AS(commutative_char_at_point(C, D, idc.f, {0.9, 0.9}), Error);
    OperatorTuple NC = random_nilpotent_tuple(2, 3, 0.7, rng);
    CHECK_THROWS_AS(commutative_char_at_point(NC, defects(idc, NC), idc.f, {0.1, 0.1}), Error);
}

TEST_CASE("constrained characteristic function") {
    Rng rng(19);
    for (const auto& f : {NcSeriesTuple::identity(2, 5), automorphism(5)}) {
        auto ctx = build_model(f);
        auto v = build_variety(ctx, IdealSpec::commutator());
        OperatorTuple X = pull_back(ctx, random_commuting_nilpotent_tuple(2, 3, 0.9, rng));
        auto D = defects(ctx, X);
        auto cf = constrained_characteristic_function(v, X, D);
        auto K = poisson_kernel(ctx, X, D, {}, &v.N_frame);
        CHECK(fundamental_identity_check(K, cf).residual <= 1e-8);
        auto iso = isometry_iff_pure_check(cf, pure_check(ctx, X));
        CHECK(iso.partial_isometry_defect <= 1e-7);
        CHECK(iso.consistent);
        CHECK(multi_analytic_check(cf).residual < 1e-8);
        for (double r : K.intertwining) CHECK(r < 1e-8);
    }
    auto ctx = build_model(NcSeriesTuple::identity(2, 4));
    auto v = build_variety(ctx, IdealSpec::commutator());
    OperatorTuple NC = random_nilpotent_tuple(2, 3, 0.7, rng);
    CHECK_THROWS_AS(constrained_characteristic_function(v, NC, defects(ctx, NC)), Error);
    OperatorTuple T0({CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)});
    auto cf0 = constrained_characteristic_function(v, T0, defects(ctx, T0));
    CHECK(cf0.e == 1);
    CHECK(cf0.e_star == 2);
}
