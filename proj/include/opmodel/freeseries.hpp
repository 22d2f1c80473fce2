#pragma once

#include "opmodel/numerics.hpp"

#include <map>
#include <vector>

namespace opm {

// Letters are 1-based; the empty word is the unit of the free monoid.
using Word = std::vector<int>;

struct GradedLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

void check_word(const Word& w, int n);
long long fock_dim(int n, int d);
long long word_index(const Word& w, int n);
Word word_at(long long idx, int n);
std::vector<Word> words_up_to(int n, int d);
std::vector<Word> words_of_length(int n, int k);
Word concat(const Word& a, const Word& b);
std::string word_string(const Word& w);

struct NcSeries {
    int n = 1;
    int degree = 0;
    std::map<Word, cplx, GradedLess> coeffs;

    NcSeries() = default;
    NcSeries(int n_, int degree_) : n(n_), degree(degree_) {}

    static NcSeries zero(int n, int d) { return NcSeries(n, d); }
    static NcSeries one(int n, int d);
    static NcSeries variable(int n, int d, int i);
    static NcSeries monomial(int n, int d, const Word& w, cplx c = 1.0);

    cplx coeff(const Word& w) const;
    void set(const Word& w, cplx c);
    void add_to(const Word& w, cplx c);
    cplx constant() const { return coeff({}); }
    int max_degree(double eps = 0.0) const;  // -1 for the zero series
    void prune(double eps = 0.0);

    NcSeries operator+(const NcSeries& o) const;
    NcSeries operator-(const NcSeries& o) const;
    NcSeries operator*(cplx s) const;
    // truncate or extend the context explicitly
    NcSeries with_degree(int d) const;
};

NcSeries multiply(const NcSeries& a, const NcSeries& b);

struct NcSeriesTuple {
    std::vector<NcSeries> components;

    NcSeriesTuple() = default;
    explicit NcSeriesTuple(std::vector<NcSeries> c);

    static NcSeriesTuple identity(int n, int d);

    int n() const { return components.empty() ? 0 : components[0].n; }
    int degree() const { return components.empty() ? 0 : components[0].degree; }
    const NcSeries& operator[](int i) const { return components.at(i); }
    NcSeries& operator[](int i) { return components.at(i); }
    bool vanishes_at_zero(double eps = 0.0) const;
    // polynomial data: highest word length carrying a nonzero coefficient
    int max_degree(double eps = 0.0) const;
    NcSeriesTuple with_degree(int d) const;
    double max_coeff_diff(const NcSeriesTuple& o) const;
};

NcSeries compose(const NcSeries& F, const NcSeriesTuple& G);
NcSeriesTuple compose(const NcSeriesTuple& F, const NcSeriesTuple& G);

struct Jacobian {
    CMatrix J;
    cplx det;
};
Jacobian jacobian_at_zero(const NcSeriesTuple& F);

NcSeriesTuple invert_composition(const NcSeriesTuple& F, const Tolerances& tol = {});
bool property_A_check(const NcSeriesTuple& F, const Tolerances& tol = {});
// f_k = Z_k + (random words of length 2..max_deg in Z_1..Z_{k-1}); invertible by a polynomial tuple
NcSeriesTuple random_triangular_automorphism(int n, int d, int max_deg, int terms, double scale, Rng& rng);

struct RadiusReport {
    std::vector<std::vector<double>> per_degree;  // [component][k], k = 0..d
    std::vector<double> proxy;                    // max_{k>=1} s_k^{1/k} per component
    double overall_proxy = 0.0;
};
RadiusReport radius_diagnostics(const NcSeriesTuple& F);

// X_w = X_{w1} X_{w2} ... ; identity for the empty word
CMatrix word_product(const std::vector<CMatrix>& X, const Word& w);
CMatrix evaluate(const NcSeries& f, const std::vector<CMatrix>& X);
std::vector<CMatrix> evaluate(const NcSeriesTuple& f, const std::vector<CMatrix>& X);

}  // namespace opm
