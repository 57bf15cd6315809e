#include "fracdim/interval_map.hpp"

#include <algorithm>
#include <cmath>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {
constexpr double kGeomTol = 1e-12;
}

PiecewiseAffineMap::PiecewiseAffineMap(std::vector<AffineBranch> b) : branches(std::move(b)) {
    if (branches.empty()) throw ValidationError("piecewise map needs at least one branch");
    std::sort(branches.begin(), branches.end(),
              [](const AffineBranch& x, const AffineBranch& y) { return x.lo < y.lo; });
    double cursor = 0.0;
    for (const auto& br : branches) {
        if (br.hi <= br.lo) throw ValidationError("empty branch interval");
        if (br.lo < cursor - kGeomTol) throw ValidationError("overlapping partition intervals");
        if (br.lo > cursor + kGeomTol) throw ValidationError("partition has a gap");
        if (br.slope == 0.0) throw ValidationError("branch slope must be nonzero");
        double ya = br.at(br.lo), yb = br.at(br.hi);
        if (std::min(ya, yb) < -kGeomTol || std::max(ya, yb) > 1.0 + kGeomTol)
            throw ValidationError("branch image leaves [0,1]");
        cursor = br.hi;
    }
    if (std::abs(cursor - 1.0) > kGeomTol) throw ValidationError("partition must end at 1");
}

PiecewiseAffineMap PiecewiseAffineMap::tent(double slope) {
    return PiecewiseAffineMap({{0.0, 0.5, slope, 0.0}, {0.5, 1.0, -slope, slope}});
}

PiecewiseAffineMap PiecewiseAffineMap::full_branches(std::size_t m) {
    std::vector<AffineBranch> b;
    double w = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
        b.push_back({i * w, (i + 1) * w, static_cast<double>(m), -static_cast<double>(i)});
    return PiecewiseAffineMap(std::move(b));
}

namespace {

// A maximal interval on which the composed map is affine.
struct Piece {
    double lo, hi;        // domain interval
    double slope, inter;  // composed affine map on it
};

}  // namespace

long long lap_count(const PiecewiseAffineMap& map, int n) {
    if (n < 1) throw ValidationError("lap count needs n >= 1");
    std::vector<Piece> pieces{{0.0, 1.0, 1.0, 0.0}};
    std::vector<double> cuts;
    for (const auto& br : map.branches) cuts.push_back(br.lo);
    cuts.push_back(map.branches.back().hi);

    for (int step = 0; step < n; ++step) {
        std::vector<Piece> next;
        for (const Piece& pc : pieces) {
            double ya = pc.slope * pc.lo + pc.inter;
            double yb = pc.slope * pc.hi + pc.inter;
            double ylo = std::min(ya, yb), yhi = std::max(ya, yb);
            // Split the domain at preimages of partition points inside the image.
            std::vector<double> xs{pc.lo, pc.hi};
            for (double c : cuts)
                if (c > ylo + kGeomTol && c < yhi - kGeomTol)
                    xs.push_back((c - pc.inter) / pc.slope);
            std::sort(xs.begin(), xs.end());
            for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
                double a = xs[k], b = xs[k + 1];
                if (b - a <= kGeomTol) continue;
                double mid = std::clamp(pc.slope * (0.5 * (a + b)) + pc.inter, 0.0, 1.0);
                const AffineBranch* host = &map.branches.back();
                for (const auto& br : map.branches)
                    if (mid >= br.lo && mid < br.hi) {
                        host = &br;
                        break;
                    }
                next.push_back({a, b, host->slope * pc.slope,
                                host->slope * pc.inter + host->intercept});
            }
        }
        pieces = std::move(next);
        if (pieces.empty()) throw NumericError("lap propagation lost all pieces");
    }

    // Merge adjacent pieces that continue one monotone lap: continuous at the
    // junction with the same slope sign.
    long long laps = 1;
    for (std::size_t k = 1; k < pieces.size(); ++k) {
        const Piece& a = pieces[k - 1];
        const Piece& b = pieces[k];
        double va = a.slope * a.hi + a.inter;
        double vb = b.slope * b.lo + b.inter;
        bool continuous = std::abs(va - vb) <= 1e-9;
        bool same_dir = (a.slope > 0) == (b.slope > 0);
        if (!(continuous && same_dir)) ++laps;
    }
    return laps;
}

double lap_entropy(const PiecewiseAffineMap& map, int n_max) {
    long long laps = lap_count(map, n_max);
    return std::log(static_cast<double>(laps)) / static_cast<double>(n_max);
}

}  // namespace fracdim
