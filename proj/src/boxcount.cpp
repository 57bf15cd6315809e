#include "fracdim/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "fracdim/errors.hpp"

namespace fracdim {

std::vector<double> dyadic_scales(int lo, int hi) {
    std::vector<double> s;
    for (int k = lo; k <= hi; ++k) s.push_back(std::pow(2.0, -k));
    return s;
}

namespace {

// Packed grid index: 21 bits per coordinate, biased to keep negatives sortable.
std::uint64_t box_key(const Vec& p, double delta) {
    constexpr std::int64_t bias = 1 << 20;
    std::uint64_t key = 0;
    for (double c : p) {
        std::int64_t idx = static_cast<std::int64_t>(std::floor(c / delta)) + bias;
        if (idx < 0 || idx >= (1 << 21))
            throw ValidationError("coordinate out of range for this scale grid");
        key = (key << 21) | static_cast<std::uint64_t>(idx);
    }
    return key;
}

}  // namespace

BoxCountProfile box_count(const PointCloud& points, const std::vector<double>& scales) {
    if (points.empty()) throw ValidationError("empty point cloud");
    if (scales.size() < 2) throw ValidationError("need >= 2 scales");
    std::size_t d = points.front().size();
    if (d == 0 || d > 3) throw ValidationError("box counting supports 1 <= d <= 3");
    for (double s : scales)
        if (!(s > 0.0 && s < 1.0)) throw ValidationError("scales must lie in (0,1)");

    BoxCountProfile prof;
    prof.dim = d;
    prof.scales = scales;
    std::sort(prof.scales.begin(), prof.scales.end(), std::greater<double>());

    std::vector<std::uint64_t> keys(points.size());
    for (double delta : prof.scales) {
        for (std::size_t i = 0; i < points.size(); ++i) keys[i] = box_key(points[i], delta);
        std::sort(keys.begin(), keys.end());
        prof.counts.push_back(std::unique(keys.begin(), keys.end()) - keys.begin());
    }

    // Least squares of log N against -log delta.
    std::size_t n = prof.scales.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = -std::log(prof.scales[i]);
        double y = std::log(static_cast<double>(prof.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double nn = static_cast<double>(n);
    double denom = nn * sxx - sx * sx;
    prof.slope = (nn * sxy - sx * sy) / denom;
    prof.intercept = (sy - prof.slope * sx) / nn;
    double ss_tot = syy - sy * sy / nn;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = -std::log(prof.scales[i]);
        double y = std::log(static_cast<double>(prof.counts[i]));
        double r = y - (prof.slope * x + prof.intercept);
        ss_res += r * r;
    }
    prof.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    prof.fit_warning = prof.r_squared < 0.99;
    return prof;
}

LocalDimensionEstimate local_dimension(const PointCloud& samples, const Vec& x,
                                       const std::vector<double>& radii) {
    if (samples.empty()) throw ValidationError("empty sample cloud");
    if (radii.empty()) throw ValidationError("no radii");
    for (std::size_t k = 0; k + 1 < radii.size(); ++k)
        if (radii[k + 1] >= radii[k]) throw ValidationError("radii must be decreasing");
    std::size_t d = x.size();

    LocalDimensionEstimate est;
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double r2 = radii[k] * radii[k];
        std::size_t count = 0;
        for (const Vec& p : samples) {
            double dist2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double diff = p[i] - x[i];
                dist2 += diff * diff;
            }
            if (dist2 <= r2) ++count;
        }
        if (count == 0) {
            if (k == 0) throw ValidationError("insufficient samples");
            break;  // finer radii are noise once the ball empties
        }
        double mass = static_cast<double>(count) / static_cast<double>(samples.size());
        double value = std::log(mass) / std::log(radii[k]);
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    est.lower = lo;
    est.upper = hi;
    return est;
}

CrosscheckVerdict dimension_crosscheck(double analytic, const BoxCountProfile& profile,
                                       double tol) {
    CrosscheckVerdict v;
    v.analytic = analytic;
    v.expected = std::min(static_cast<double>(profile.dim), analytic);
    v.slope = profile.slope;
    v.tolerance = tol;
    v.fit_warning = profile.fit_warning;
    v.pass = std::abs(v.slope - v.expected) <= tol;
    std::ostringstream os;
    os << (v.pass ? "PASS" : "FAIL") << ": box-count slope " << v.slope << " vs analytic "
       << v.expected << " (tol " << tol << ")";
    if (v.fit_warning) os << " [warning: R^2 = " << profile.r_squared << " < 0.99]";
    v.text = os.str();
    return v;
}

}  // namespace fracdim
