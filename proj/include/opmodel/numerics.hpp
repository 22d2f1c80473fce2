#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace opm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Every failure carries one of the error kinds listed in the README.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

struct Tolerances {
    double rank_rel = 1e-9;
    double check_abs = 1e-8;
    double opt_tol = 1e-6;

    void validate() const;
};

struct Subspace {
    int ambient_dim = 0;
    CMatrix frame;  // orthonormal columns

    int dim() const { return static_cast<int>(frame.cols()); }
    CMatrix projector() const { return frame * frame.adjoint(); }
    static Subspace zero(int ambient);
    static Subspace full(int ambient);
};

CMatrix hermitian_psd_sqrt(const CMatrix& A, const Tolerances& tol = {});
Subspace orth_range(const CMatrix& A, const Tolerances& tol = {});
double spectral_norm(const CMatrix& A);
// largest |eigenvalue| of the Hermitian part
double hermitian_norm(const CMatrix& A);

struct LeastSquares {
    CMatrix X;
    double residual = 0.0;
};
// Minimal-norm solution of AX = B. With `exact`, a residual above check_abs throws.
LeastSquares least_squares_on_range(const CMatrix& A, const CMatrix& B, const Tolerances& tol = {},
                                    bool exact = false);
bool unitary_check(const CMatrix& U, const Tolerances& tol = {});

// helpers used throughout
int numerical_rank(const CMatrix& A, double rank_rel);
Subspace orth_complement(const Subspace& S, const Tolerances& tol = {});
Subspace subspace_sum(const Subspace& a, const Subspace& b, const Tolerances& tol = {});
double hermitian_defect(const CMatrix& A);
double min_eigenvalue_hermitian(const CMatrix& A);
CMatrix kron(const CMatrix& A, const CMatrix& B);
// (A (x) I_r) X without forming the Kronecker product; rows of X are indexed outer*r + inner
CMatrix kron_apply(const CMatrix& A, int r, const CMatrix& X);
using Rng = std::mt19937_64;
// entries with iid standard normal real and imaginary parts
CMatrix random_complex(int rows, int cols, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);

}  // namespace opm
