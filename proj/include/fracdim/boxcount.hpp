#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracdim/matrix.hpp"

namespace fracdim {

using PointCloud = std::vector<Vec>;

struct BoxCountProfile {
    std::size_t dim = 0;
    std::vector<double> scales;       // box sides, decreasing
    std::vector<std::size_t> counts;  // occupied grid boxes per scale
    double slope = 0.0;               // least-squares fit of log N against -log delta
    double intercept = 0.0;
    double r_squared = 0.0;
    bool fit_warning = false;  // R^2 below 0.99
};

/// Dyadic scale window 2^-lo ... 2^-hi (the default 2^-4 ... 2^-9 suits
/// clouds of about 10^6 points).
std::vector<double> dyadic_scales(int lo = 4, int hi = 9);

/// Counts occupied axis-aligned grid boxes of side delta anchored at the
/// origin and fits the box-dimension slope over the scale window.
BoxCountProfile box_count(const PointCloud& points, const std::vector<double>& scales);

struct LocalDimensionEstimate {
    double lower = 0.0;  // min of log mu(B(x,r)) / log r over the radii
    double upper = 0.0;  // max over the radii
};

/// Empirical local dimension of a sampled measure at x from ball masses at
/// the given (decreasing) radii.
LocalDimensionEstimate local_dimension(const PointCloud& samples, const Vec& x,
                                       const std::vector<double>& radii);

struct CrosscheckVerdict {
    bool pass = false;
    double analytic = 0.0;   // as supplied
    double expected = 0.0;   // min(dim, analytic)
    double slope = 0.0;
    double tolerance = 0.0;
    bool fit_warning = false;
    std::string text;
};

/// Compares a fitted box-count slope against an analytic dimension clamped
/// to the ambient dimension.
CrosscheckVerdict dimension_crosscheck(double analytic, const BoxCountProfile& profile,
                                       double tol);

}  // namespace fracdim
