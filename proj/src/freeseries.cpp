#include "opmodel/freeseries.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace opm {

void check_word(const Word& w, int n) {
    for (int l : w)
        if (l < 1 || l > n) fail("LetterOutOfRange", "letter " + std::to_string(l));
}

long long fock_dim(int n, int d) {
    long long total = 0, p = 1;
    for (int k = 0; k <= d; ++k) {
        total += p;
        p *= n;
    }
    return total;
}

long long word_index(const Word& w, int n) {
    long long off = fock_dim(n, static_cast<int>(w.size()) - 1);
    long long v = 0;
    for (int l : w) v = v * n + (l - 1);
    return off + v;
}

Word word_at(long long idx, int n) {
    int k = 0;
    long long p = 1;
    while (idx >= p) {
        idx -= p;
        p *= n;
        ++k;
    }
    Word w(k);
    for (int j = k - 1; j >= 0; --j) {
        w[j] = static_cast<int>(idx % n) + 1;
        idx /= n;
    }
    return w;
}

std::vector<Word> words_of_length(int n, int k) {
    std::vector<Word> out;
    long long start = fock_dim(n, k - 1), count = fock_dim(n, k) - start;
    out.reserve(count);
    for (long long i = 0; i < count; ++i) out.push_back(word_at(start + i, n));
    return out;
}

std::vector<Word> words_up_to(int n, int d) {
    std::vector<Word> out;
    long long N = fock_dim(n, d);
    out.reserve(N);
    for (long long i = 0; i < N; ++i) out.push_back(word_at(i, n));
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

std::string word_string(const Word& w) {
    if (w.empty()) return "g0";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << w[i];
    return os.str();
}

NcSeries NcSeries::one(int n, int d) { return monomial(n, d, {}, 1.0); }

NcSeries NcSeries::variable(int n, int d, int i) { return monomial(n, d, {i}, 1.0); }

NcSeries NcSeries::monomial(int n, int d, const Word& w, cplx c) {
    NcSeries s(n, d);
    s.set(w, c);
    return s;
}

cplx NcSeries::coeff(const Word& w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? cplx(0.0) : it->second;
}

void NcSeries::set(const Word& w, cplx c) {
    check_word(w, n);
    if (static_cast<int>(w.size()) > degree) return;
    if (c == cplx(0.0))
        coeffs.erase(w);
    else
        coeffs[w] = c;
}

void NcSeries::add_to(const Word& w, cplx c) {
    if (static_cast<int>(w.size()) > degree) return;
    cplx& slot = coeffs[w];
    slot += c;
    if (slot == cplx(0.0)) coeffs.erase(w);
}

int NcSeries::max_degree(double eps) const {
    int m = -1;
    for (const auto& [w, c] : coeffs)
        if (std::abs(c) > eps) m = std::max(m, static_cast<int>(w.size()));
    return m;
}

void NcSeries::prune(double eps) {
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = std::abs(it->second) <= eps ? coeffs.erase(it) : std::next(it);
}

static void same_context(const NcSeries& a, const NcSeries& b) {
    if (a.n != b.n || a.degree != b.degree)
        fail("MismatchedContext", "series with different variable count or degree");
}

NcSeries NcSeries::operator+(const NcSeries& o) const {
    same_context(*this, o);
    NcSeries r = *this;
    for (const auto& [w, c] : o.coeffs) r.add_to(w, c);
    return r;
}

NcSeries NcSeries::operator-(const NcSeries& o) const { return *this + o * cplx(-1.0); }

NcSeries NcSeries::operator*(cplx s) const {
    NcSeries r(n, degree);
    if (s == cplx(0.0)) return r;
    for (const auto& [w, c] : coeffs) r.coeffs[w] = c * s;
    return r;
}

NcSeries NcSeries::with_degree(int d) const {
    NcSeries r(n, d);
    for (const auto& [w, c] : coeffs)
        if (static_cast<int>(w.size()) <= d) r.coeffs[w] = c;
    return r;
}

NcSeries multiply(const NcSeries& a, const NcSeries& b) {
    same_context(a, b);
    NcSeries r(a.n, a.degree);
    for (const auto& [wa, ca] : a.coeffs)
        for (const auto& [wb, cb] : b.coeffs)
            if (static_cast<int>(wa.size() + wb.size()) <= a.degree) r.add_to(concat(wa, wb), ca * cb);
    return r;
}

NcSeriesTuple::NcSeriesTuple(std::vector<NcSeries> c) : components(std::move(c)) {
    for (const auto& s : components) {
        same_context(s, components[0]);
        if (static_cast<int>(components.size()) != s.n)
            fail("MismatchedContext", "tuple length must equal variable count");
    }
}

NcSeriesTuple NcSeriesTuple::identity(int n, int d) {
    std::vector<NcSeries> c;
    for (int i = 1; i <= n; ++i) c.push_back(NcSeries::variable(n, d, i));
    return NcSeriesTuple(std::move(c));
}

bool NcSeriesTuple::vanishes_at_zero(double eps) const {
    for (const auto& s : components)
        if (std::abs(s.constant()) > eps) return false;
    return true;
}

int NcSeriesTuple::max_degree(double eps) const {
    int m = -1;
    for (const auto& s : components) m = std::max(m, s.max_degree(eps));
    return m;
}

NcSeriesTuple NcSeriesTuple::with_degree(int d) const {
    std::vector<NcSeries> c;
    for (const auto& s : components) c.push_back(s.with_degree(d));
    return NcSeriesTuple(std::move(c));
}

double NcSeriesTuple::max_coeff_diff(const NcSeriesTuple& o) const {
    if (components.size() != o.components.size()) fail("MismatchedContext", "tuple size");
    double m = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        NcSeries diff = components[i] - o.components[i];
        for (const auto& [w, c] : diff.coeffs) m = std::max(m, std::abs(c));
    }
    return m;
}

NcSeries compose(const NcSeries& F, const NcSeriesTuple& G) {
    if (G.n() != F.n || G.degree() != F.degree)
        fail("MismatchedContext", "composition context mismatch");
    if (!G.vanishes_at_zero()) fail("CompositionRequiresZeroConstant", "inner tuple has constant term");
    // prefix products G_{w1}...G_{wk}, shared across words of F
    std::map<Word, NcSeries, GradedLess> prod;
    prod.emplace(Word{}, NcSeries::one(F.n, F.degree));
    NcSeries r(F.n, F.degree);
    for (const auto& [w, c] : F.coeffs) {
        Word pre;
        const NcSeries* cur = &prod.at(pre);
        for (int l : w) {
            pre.push_back(l);
            auto it = prod.find(pre);
            if (it == prod.end()) it = prod.emplace(pre, multiply(*cur, G[l - 1])).first;
            cur = &it->second;
        }
        for (const auto& [v, cv] : cur->coeffs) r.add_to(v, c * cv);
    }
    return r;
}

NcSeriesTuple compose(const NcSeriesTuple& F, const NcSeriesTuple& G) {
    std::vector<NcSeries> c;
    for (const auto& s : F.components) c.push_back(compose(s, G));
    return NcSeriesTuple(std::move(c));
}

Jacobian jacobian_at_zero(const NcSeriesTuple& F) {
    int n = F.n();
    CMatrix J(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J(i, j) = F[i].coeff({j + 1});
    return {J, n ? J.determinant() : cplx(1.0)};
}

NcSeriesTuple invert_composition(const NcSeriesTuple& F, const Tolerances& tol) {
    int n = F.n(), d = F.degree();
    if (!F.vanishes_at_zero()) fail("NonzeroConstantTerm", "f(0) must vanish");
    Jacobian jac = jacobian_at_zero(F);
    if (std::abs(jac.det) <= tol.check_abs) fail("SingularJacobian", "det J(0) is zero");
    CMatrix Ainv = jac.J.inverse();
    // nonlinear part N = F - A Z
    NcSeriesTuple N = F;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) N[i].set({j + 1}, 0.0);
    NcSeriesTuple Z = NcSeriesTuple::identity(n, d);
    auto apply_inverse = [&](const NcSeriesTuple& X) {
        std::vector<NcSeries> out;
        for (int i = 0; i < n; ++i) {
            NcSeries s(n, d);
            for (int j = 0; j < n; ++j)
                if (Ainv(i, j) != cplx(0.0)) s = s + X[j] * Ainv(i, j);
            out.push_back(s);
        }
        return NcSeriesTuple(std::move(out));
    };
    NcSeriesTuple G = apply_inverse(Z);
    // each pass fixes one more degree
    for (int k = 2; k <= d; ++k) {
        NcSeriesTuple NG = compose(N, G);
        std::vector<NcSeries> rhs;
        for (int i = 0; i < n; ++i) rhs.push_back(Z[i] - NG[i]);
        G = apply_inverse(NcSeriesTuple(std::move(rhs)));
    }
    return G;
}

bool property_A_check(const NcSeriesTuple& F, const Tolerances& tol) {
    int degF = F.max_degree();
    if (degF < 1) return false;
    if (F.degree() < 2 * degF) fail("MismatchedContext", "property (A) needs degree >= 2 deg F");
    NcSeriesTuple G;
    try {
        G = invert_composition(F, tol);
    } catch (const Error& e) {
        if (e.kind() == "SingularJacobian") return false;
        throw;
    }
    const double eps = 1e-12;
    for (auto& s : G.components) s.prune(eps);
    int degG = G.max_degree();
    if (degG < 1 || degG > F.degree() - degF) return false;
    // exact polynomial compositions need the full product degree
    int big = degF * degG;
    if (big > 24) return false;
    NcSeriesTuple Fb = F.with_degree(big), Gb = G.with_degree(big);
    NcSeriesTuple id = NcSeriesTuple::identity(F.n(), big);
    return compose(Fb, Gb).max_coeff_diff(id) <= 1e-10 && compose(Gb, Fb).max_coeff_diff(id) <= 1e-10;
}

RadiusReport radius_diagnostics(const NcSeriesTuple& F) {
    RadiusReport rep;
    int d = F.degree();
    for (const auto& s : F.components) {
        std::vector<double> sk(d + 1, 0.0);
        for (const auto& [w, c] : s.coeffs) sk[w.size()] += std::norm(c);
        double proxy = 0.0;
        for (int k = 0; k <= d; ++k) {
            sk[k] = std::sqrt(sk[k]);
            if (k >= 1) proxy = std::max(proxy, std::pow(sk[k], 1.0 / k));
        }
        rep.per_degree.push_back(sk);
        rep.proxy.push_back(proxy);
        rep.overall_proxy = std::max(rep.overall_proxy, proxy);
    }
    return rep;
}

CMatrix word_product(const std::vector<CMatrix>& X, const Word& w) {
    int m = X.empty() ? 0 : static_cast<int>(X[0].rows());
    CMatrix P = CMatrix::Identity(m, m);
    for (int l : w) P = P * X.at(l - 1);
    return P;
}

CMatrix evaluate(const NcSeries& f, const std::vector<CMatrix>& X) {
    if (static_cast<int>(X.size()) != f.n) fail("DimensionMismatch", "tuple length");
    int m = X.empty() ? 0 : static_cast<int>(X[0].rows());
    CMatrix R = CMatrix::Zero(m, m);
    std::map<Word, CMatrix, GradedLess> cache;
    cache.emplace(Word{}, CMatrix::Identity(m, m));
    for (const auto& [w, c] : f.coeffs) {
        Word pre;
        const CMatrix* cur = &cache.at(pre);
        for (int l : w) {
            pre.push_back(l);
            auto it = cache.find(pre);
            if (it == cache.end()) it = cache.emplace(pre, (*cur) * X[l - 1]).first;
            cur = &it->second;
        }
        R += c * (*cur);
    }
    return R;
}

std::vector<CMatrix> evaluate(const NcSeriesTuple& f, const std::vector<CMatrix>& X) {
    std::vector<CMatrix> out;
    for (const auto& s : f.components) out.push_back(evaluate(s, X));
    return out;
}

NcSeriesTuple random_triangular_automorphism(int n, int d, int max_deg, int terms, double scale, Rng& rng) {
    std::normal_distribution<double> nd;
    std::vector<NcSeries> comps;
    for (int k = 1; k <= n; ++k) {
        NcSeries fk = NcSeries::variable(n, d, k);
        std::vector<Word> pool;
        for (int len = 2; k > 1 && len <= std::min(max_deg, d); ++len)
            for (const Word& w : words_of_length(k - 1, len)) pool.push_back(w);
        if (!pool.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            for (int t = 0; t < terms; ++t) fk.add_to(pool[pick(rng)], scale * cplx(nd(rng), nd(rng)));
        }
        comps.push_back(fk);
    }
    return NcSeriesTuple(comps);
}

}  // namespace opm
