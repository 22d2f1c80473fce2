#include "opmodel/fock.hpp"

#include <algorithm>
#include <set>

namespace opm {

FockContext::FockContext(int n_, int d_) : n(n_), degree(d_) {
    if (n < 1 || d_ < 0) fail("SchemaError", "Fock context needs n >= 1 and degree >= 0");
    dim = static_cast<int>(fock_dim(n, d_));
}

int FockContext::index(const Word& w) const {
    check_word(w, n);
    if (static_cast<int>(w.size()) > degree) fail("LetterOutOfRange", "word longer than degree");
    return static_cast<int>(word_index(w, n));
}

CVector FockContext::basis(const Word& w) const {
    CVector v = CVector::Zero(dim);
    v(index(w)) = 1.0;
    return v;
}

static CMatrix creation(const FockContext& ctx, int i, bool left) {
    if (i < 1 || i > ctx.n) fail("LetterOutOfRange", "creation letter " + std::to_string(i));
    CMatrix S = CMatrix::Zero(ctx.dim, ctx.dim);
    for (int c = 0; c < ctx.dim; ++c) {
        Word w = ctx.word(c);
        if (static_cast<int>(w.size()) >= ctx.degree) continue;
        if (left)
            w.insert(w.begin(), i);
        else
            w.push_back(i);
        S(ctx.index(w), c) = 1.0;
    }
    return S;
}

CMatrix left_creation(const FockContext& ctx, int i) { return creation(ctx, i, true); }
CMatrix right_creation(const FockContext& ctx, int i) { return creation(ctx, i, false); }

std::vector<CMatrix> left_creations(const FockContext& ctx) {
    std::vector<CMatrix> out;
    for (int i = 1; i <= ctx.n; ++i) out.push_back(left_creation(ctx, i));
    return out;
}

std::vector<CMatrix> right_creations(const FockContext& ctx) {
    std::vector<CMatrix> out;
    for (int i = 1; i <= ctx.n; ++i) out.push_back(right_creation(ctx, i));
    return out;
}

CMatrix vacuum_projection(const FockContext& ctx) {
    CMatrix P = CMatrix::Zero(ctx.dim, ctx.dim);
    P(0, 0) = 1.0;
    return P;
}

Subspace symmetric_slice(const FockContext& ctx, int k) {
    std::vector<CVector> cols;
    for (const Word& w : words_of_length(ctx.n, k)) {
        if (!std::is_sorted(w.begin(), w.end())) continue;
        CVector v = CVector::Zero(ctx.dim);
        Word p = w;
        do {
            v(ctx.index(p)) = 1.0;
        } while (std::next_permutation(p.begin(), p.end()));
        cols.push_back(v.normalized());
    }
    CMatrix F(ctx.dim, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) F.col(j) = cols[j];
    return {ctx.dim, F};
}

Subspace symmetric_subspace(const FockContext& ctx) {
    std::vector<CMatrix> parts;
    int total = 0;
    for (int k = 0; k <= ctx.degree; ++k) {
        parts.push_back(symmetric_slice(ctx, k).frame);
        total += static_cast<int>(parts.back().cols());
    }
    CMatrix F(ctx.dim, total);
    int c = 0;
    for (const auto& p : parts) {
        F.middleCols(c, p.cols()) = p;
        c += static_cast<int>(p.cols());
    }
    return {ctx.dim, F};
}

GradedProjector interior(const FockContext& ctx, int margin) {
    if (margin < 0 || margin > ctx.degree) fail("SchemaError", "interior margin out of range");
    int cutoff = ctx.degree - margin;
    int rank = static_cast<int>(fock_dim(ctx.n, cutoff));
    CMatrix P = CMatrix::Zero(ctx.dim, ctx.dim);
    for (int i = 0; i < rank; ++i) P(i, i) = 1.0;
    return {cutoff, P};
}

}  // namespace opm
