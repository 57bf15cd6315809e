#pragma once

#include <vector>

namespace fracdim {

/// One affine branch of a piecewise-monotone interval map, acting on
/// [lo, hi): x -> slope * x + intercept.
struct AffineBranch {
    double lo = 0.0;
    double hi = 1.0;
    double slope = 1.0;
    double intercept = 0.0;

    double at(double x) const { return slope * x + intercept; }
};

/// Piecewise-affine map of [0,1]: branches on a partition of [0,1], each
/// strictly monotone (slope != 0), image inside [0,1].
struct PiecewiseAffineMap {
    std::vector<AffineBranch> branches;

    explicit PiecewiseAffineMap(std::vector<AffineBranch> b);

    static PiecewiseAffineMap tent(double slope = 2.0);
    static PiecewiseAffineMap full_branches(std::size_t m);  // slope m, m onto branches
};

/// Number of maximal monotonicity intervals of the n-fold composition,
/// counted by propagating affine pieces and merging monotone continuations.
long long lap_count(const PiecewiseAffineMap& map, int n);

/// (1/n) log lap_count(T^n) at n = n_max. Converges to the topological
/// entropy; exactly max{0, log s} for constant-slope +-s maps.
double lap_entropy(const PiecewiseAffineMap& map, int n_max);

}  // namespace fracdim
