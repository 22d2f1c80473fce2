#pragma once

#include "opmodel/freeseries.hpp"

namespace opm {

struct FockContext {
    int n = 1;
    int degree = 0;
    int dim = 1;

    FockContext() = default;
    FockContext(int n_, int d_);

    int index(const Word& w) const;
    Word word(int idx) const { return word_at(idx, n); }
    CVector basis(const Word& w) const;
};

struct GradedProjector {
    int cutoff = 0;
    CMatrix P;  // diagonal 0/1 onto span{e_a : |a| <= cutoff}
};

CMatrix left_creation(const FockContext& ctx, int i);
CMatrix right_creation(const FockContext& ctx, int i);
std::vector<CMatrix> left_creations(const FockContext& ctx);
std::vector<CMatrix> right_creations(const FockContext& ctx);
CMatrix vacuum_projection(const FockContext& ctx);
Subspace symmetric_subspace(const FockContext& ctx);
// symmetric vectors of exactly degree k
Subspace symmetric_slice(const FockContext& ctx, int k);
GradedProjector interior(const FockContext& ctx, int margin);

}  // namespace opm
