#include "opmodel/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opm {

namespace {
// singular values below this are roundoff regardless of scale
constexpr double kAbsoluteFloor = 1e-13;
}  // namespace

void Tolerances::validate() const {
    if (!(rank_rel > 0 && check_abs > 0 && opt_tol > 0) || rank_rel >= 1)
        fail("SchemaError", "tolerances must be positive with rank_rel < 1");
}

Subspace Subspace::zero(int ambient) { return {ambient, CMatrix::Zero(ambient, 0)}; }
Subspace Subspace::full(int ambient) { return {ambient, CMatrix::Identity(ambient, ambient)}; }

double hermitian_defect(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue_hermitian(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CMatrix hermitian_psd_sqrt(const CMatrix& A, const Tolerances& tol) {
    if (A.rows() != A.cols()) fail("ShapeMismatch", "square root of non-square matrix");
    if (A.size() == 0) return A;
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if (hermitian_defect(A) > tol.check_abs * scale) fail("NotHermitian", "input is not Hermitian");
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    RVector ev = es.eigenvalues();
    if (ev.minCoeff() < -tol.check_abs)
        fail("NegativeEigenvalue", "eigenvalue " + std::to_string(ev.minCoeff()));
    // eigenvalues at roundoff level are zero
    double noise = 100.0 * std::numeric_limits<double>::epsilon() * A.rows() * scale;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) <= noise) ev(i) = 0.0;
    RVector root = ev.cwiseSqrt();
    CMatrix V = es.eigenvectors();
    CMatrix B = V * root.asDiagonal() * V.adjoint();
    return 0.5 * (B + B.adjoint());
}

int numerical_rank(const CMatrix& A, double rank_rel) {
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(A);
    const RVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= kAbsoluteFloor) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > std::max(rank_rel * s(0), kAbsoluteFloor)) ++r;
    return r;
}

Subspace orth_range(const CMatrix& A, const Tolerances& tol) {
    int m = static_cast<int>(A.rows());
    if (A.cols() == 0 || m == 0) return Subspace::zero(m);
    auto cut = [&](const RVector& s) {
        int r = 0;
        if (s.size() > 0 && s(0) > kAbsoluteFloor)
            for (int i = 0; i < s.size(); ++i)
                if (s(i) > std::max(tol.rank_rel * s(0), kAbsoluteFloor)) ++r;
        return r;
    };
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
    return {m, svd.matrixU().leftCols(cut(svd.singularValues()))};
}

double spectral_norm(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    // largest eigenvalue of the smaller Gram matrix; absolute error ~ eps ||A||^2, so the norm is
    // accurate relative to itself
    CMatrix gram = A.rows() <= A.cols() ? CMatrix(A * A.adjoint()) : CMatrix(A.adjoint() * A);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

double hermitian_norm(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

LeastSquares least_squares_on_range(const CMatrix& A, const CMatrix& B, const Tolerances& tol,
                                    bool exact) {
    if (A.rows() != B.rows()) fail("ShapeMismatch", "least squares row mismatch");
    LeastSquares out;
    if (A.cols() == 0) {
        out.X = CMatrix::Zero(0, B.cols());
    } else {
        Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(A);
        double smax = spectral_norm(A);
        cod.setThreshold(smax > 0 ? tol.rank_rel : 1.0);
        out.X = cod.solve(B);
        if (smax == 0.0) out.X.setZero();
    }
    out.residual = B.size() == 0 ? 0.0 : spectral_norm(A * out.X - B);
    if (exact && out.residual > tol.check_abs)
        fail("InconsistentSystem", "residual " + std::to_string(out.residual));
    return out;
}

bool unitary_check(const CMatrix& U, const Tolerances& tol) {
    if (U.rows() != U.cols()) return false;
    CMatrix I = CMatrix::Identity(U.rows(), U.cols());
    return spectral_norm(U.adjoint() * U - I) <= tol.check_abs &&
           spectral_norm(U * U.adjoint() - I) <= tol.check_abs;
}

Subspace orth_complement(const Subspace& S, const Tolerances& tol) {
    int m = S.ambient_dim;
    (void)tol;
    if (S.dim() == 0) return Subspace::full(m);
    // the frame is orthonormal, so the trailing Householder columns span its complement
    Eigen::HouseholderQR<CMatrix> qr(S.frame);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(m, m);
    return {m, Q.rightCols(m - S.dim())};
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    if (a.ambient_dim != b.ambient_dim) fail("DimensionMismatch", "subspace ambient mismatch");
    CMatrix M(a.ambient_dim, a.dim() + b.dim());
    M << a.frame, b.frame;
    return orth_range(M, tol);
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

CMatrix kron_apply(const CMatrix& A, int r, const CMatrix& X) {
    if (A.cols() * r != X.rows()) fail("ShapeMismatch", "kron_apply shape");
    CMatrix out(A.rows() * r, X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        CVector col = X.col(c);
        Eigen::Map<const CMatrix> Xm(col.data(), r, A.cols());
        CMatrix Y = Xm * A.transpose();
        out.col(c) = Eigen::Map<const CVector>(Y.data(), Y.size());
    }
    return out;
}

CMatrix random_complex(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMatrix M(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = nd(rng);
            double im = nd(rng);
            M(i, j) = cplx(re, im);
        }
    return M;
}

CMatrix random_unitary(int n, Rng& rng) {
    CMatrix G = random_complex(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(G);
    CMatrix Q = qr.householderQ();
    CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cplx d = R(i, i);
        double a = std::abs(d);
        if (a > 0) Q.col(i) *= d / a;
    }
    return Q;
}

}  // namespace opm
