#include <doctest.h>

#include "opmodel/fock.hpp"

using namespace opm;

namespace {

long long binom(int a, int b) {
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

}  // namespace

TEST_CASE("context and basis") {
    FockContext ctx(2, 3);
    CHECK(ctx.dim == 15);
    for (int i = 0; i < ctx.dim; ++i) CHECK(ctx.index(ctx.word(i)) == i);
    CHECK_THROWS_AS(left_creation(ctx, 3), Error);
}

TEST_CASE("left creation") {
    FockContext ctx(2, 4);
    auto S = left_creations(ctx);
    CHECK((S[0] * ctx.basis({}) - ctx.basis({1})).norm() == 0.0);
    CHECK((S[0] * ctx.basis({2, 1}) - ctx.basis({1, 2, 1})).norm() == 0.0);
    auto inner = interior(ctx, 1).P;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CMatrix expect = (i == j) ? inner : CMatrix::Zero(ctx.dim, ctx.dim);
            CHECK((inner * S[i].adjoint() * S[j] * inner - expect).norm() == 0.0);
        }
    CMatrix sum = S[0] * S[0].adjoint() + S[1] * S[1].adjoint();
    CHECK((sum - (CMatrix::Identity(ctx.dim, ctx.dim) - vacuum_projection(ctx))).norm() == 0.0);
    CMatrix P = S[0];
    for (int k = 0; k < 4; ++k) P = P * S[0];
    CHECK(P.norm() == 0.0);
    CHECK(std::abs(spectral_norm(S[1]) - 1.0) < 1e-12);
    for (int k = 1; k <= 4; ++k) {
        CMatrix Pk = interior(ctx, 4 - k).P, Pk1 = interior(ctx, 5 - k).P;
        CHECK((Pk * S[0] * Pk1 - S[0] * Pk1).norm() == 0.0);
    }
}

TEST_CASE("right creation") {
    FockContext ctx(2, 4);
    auto S = left_creations(ctx);
    auto R = right_creations(ctx);
    CHECK((R[0] * ctx.basis({}) - ctx.basis({1})).norm() == 0.0);
    CHECK((R[1] * ctx.basis({1}) - ctx.basis({1, 2})).norm() == 0.0);
    auto P2 = interior(ctx, 2).P, P1 = interior(ctx, 1).P;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(((S[i] * R[j] - R[j] * S[i]) * P2).norm() == 0.0);
            CMatrix expect = (i == j) ? P1 : CMatrix::Zero(ctx.dim, ctx.dim);
            CHECK((P1 * R[i].adjoint() * R[j] * P1 - expect).norm() == 0.0);
        }
    // word action
    Word a = {1, 2, 2};
    Word rev(a.rbegin(), a.rend());
    CHECK((word_product(S, a) * ctx.basis({}) - ctx.basis(a)).norm() == 0.0);
    CHECK((word_product(R, rev) * ctx.basis({}) - ctx.basis(a)).norm() == 0.0);
}

TEST_CASE("vacuum projection") {
    FockContext ctx(3, 2);
    CMatrix P = vacuum_projection(ctx);
    CHECK((P * ctx.basis({}) - ctx.basis({})).norm() == 0.0);
    CHECK((P * ctx.basis({1})).norm() == 0.0);
    CHECK(P.trace() == cplx(1));
}

TEST_CASE("symmetric subspace") {
    FockContext ctx(2, 5);
    CHECK(symmetric_slice(ctx, 1).dim() == 2);
    for (int k = 0; k <= 5; ++k) CHECK(symmetric_slice(ctx, k).dim() == k + 1);
    FockContext c3(3, 3);
    CHECK(symmetric_slice(c3, 2).dim() == binom(4, 2));
    Subspace s = symmetric_subspace(c3);
    CHECK((s.frame.adjoint() * s.frame - CMatrix::Identity(s.dim(), s.dim())).norm() < 1e-12);
    int expect = 0;
    for (int k = 0; k <= 3; ++k) expect += static_cast<int>(binom(2 + k, k));
    CHECK(s.dim() == expect);
}

TEST_CASE("interior projector") {
    FockContext ctx(2, 4);
    CHECK((interior(ctx, 0).P - CMatrix::Identity(ctx.dim, ctx.dim)).norm() == 0.0);
    CHECK((interior(ctx, 4).P - vacuum_projection(ctx)).norm() == 0.0);
    for (int m = 0; m <= 4; ++m) CHECK(std::abs(interior(ctx, m).P.trace().real() - fock_dim(2, 4 - m)) < 1e-12);
}
