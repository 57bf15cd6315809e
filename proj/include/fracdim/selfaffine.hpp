#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdim/matrix.hpp"
#include "fracdim/sft.hpp"

namespace fracdim {

struct AffineMap {
    Mat linear;
    Vec translation;
};

/// Affine IFS: non-singular linear parts with operator norm < 1.
struct AffineIFS {
    std::vector<AffineMap> maps;

    explicit AffineIFS(std::vector<AffineMap> maps);

    std::size_t size() const { return maps.size(); }
    std::size_t dim() const { return maps.front().translation.size(); }
    std::vector<Mat> linear_parts() const;
};

struct LyapunovSpectrum {
    Vec exponents;       // chi_1 >= ... >= chi_d, nats per step
    Vec standard_error;  // per exponent; zero on the closed-form path
    double entropy = 0.0;  // of the driving measure
    int trials = 0;
    bool closed_form = false;
};

enum class LyapunovMethod { automatic, monte_carlo, closed_form };

/// Lyapunov exponents of the matrix cocycle driven by an ergodic measure.
/// Monte Carlo path: per trial, sample an n-word, run the product with
/// re-orthonormalization every 20 steps, accumulate (1/n) log of the
/// orthogonalized column growths. All-diagonal families instead use the
/// exact per-slot expectation of log |entries| (no sampling).
LyapunovSpectrum lyapunov_exponents(const std::vector<Mat>& matrices,
                                    const ErgodicMeasureSpec& measure, std::size_t n,
                                    std::size_t trials, std::uint64_t seed,
                                    LyapunovMethod method = LyapunovMethod::automatic);

struct LyapunovDimensionResult {
    double value = 0.0;    // unclamped
    double clamped = 0.0;  // min(d, value)
    int k = 0;             // number of fully counted directions
};

/// Entropy-over-exponents dimension for a contracting spectrum
/// chi_1 >= ... >= chi_d < 0: k + (h + chi_1 + ... + chi_k) / (-chi_{k+1}),
/// with k the largest index keeping the numerator positive (ties fall to the
/// smaller k), switching to d h / (-sum chi) once h exceeds total contraction.
LyapunovDimensionResult lyapunov_dimension(double h, const Vec& exponents);

struct BhrReport {
    bool all_lower_triangular = false;
    bool triangular_contrast = false;     // a_i < c_i for all lower-triangular parts
    bool obstruction_found = false;       // a common invariant line exists
    std::optional<Vec> invariant_line;    // witness direction when found
    std::string separation = "not checked";
    std::string summary;
};

/// Applicability checks for the planar dimension predictions: exact
/// triangular-part test, heuristic common-invariant-line search over the
/// generators and their pairwise products (absence of a witness is not a
/// proof), separation deliberately left undecided.
BhrReport bhr_conditions(const AffineIFS& ifs);

}  // namespace fracdim
