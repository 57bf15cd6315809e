#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracdim/matrix.hpp"

namespace fracdim {

/// One similarity x -> ratio * rotation * x + translation with ratio in (0,1)
/// and an orthogonal rotation part. In dimension 1 the rotation is +-1.
struct SimilarityMap {
    double ratio = 0.5;
    Mat rotation;  // d x d orthogonal
    Vec translation;

    Vec apply(const Vec& x) const;
    /// Signed derivative in dimension 1: ratio * rotation(0,0).
    double signed_ratio_1d() const { return ratio * rotation(0, 0); }
};

struct SimilarIFS {
    std::vector<SimilarityMap> maps;

    explicit SimilarIFS(std::vector<SimilarityMap> maps);

    /// Convenience for the line: maps x -> ratio_i * x + translation_i,
    /// ratios may be signed (reflections).
    static SimilarIFS line(const std::vector<double>& ratios,
                           const std::vector<double>& translations);

    std::size_t size() const { return maps.size(); }
    std::size_t dim() const { return maps.front().translation.size(); }
    std::vector<double> ratios() const;

    /// Radius of a centered ball mapped into itself by every map.
    double invariant_ball_radius() const;
};

/// The unique s >= 0 with sum ratio_i^s = 1, by bisection to 1e-12. Not
/// clamped to the ambient dimension.
double similarity_dimension(const std::vector<double>& ratios);

/// S_{w1} o S_{w2} o ... o S_{wn} applied to base.
Vec natural_projection(const SimilarIFS& ifs, std::span<const int> word, Vec base);

/// Chaos-game sample of the attractor: uniformly random maps from a seeded
/// generator, 100-step burn-in.
std::vector<Vec> attractor_points(const SimilarIFS& ifs, std::size_t count, std::uint64_t seed);

struct SelfSimilarMeasureSpec {
    SimilarIFS ifs;
    Vec p;
};

/// Entropy over Lyapunov exponent, (sum p log p) / (sum p log r).
double simdim_measure(const SelfSimilarMeasureSpec& spec);

/// Minimal distance between level-n cylinder endpoints sharing a composed
/// derivative, with the per-level decay rates -(1/k) log Delta_k.
struct SeparationReport {
    int n = 0;
    double delta_n = 0.0;         // +inf when no two words share a derivative
    bool exact_overlap = false;   // some Delta_k vanished for k <= n
    std::vector<double> deltas;   // Delta_1 .. Delta_n
    std::vector<double> rates;    // -(1/k) log Delta_k; NaN where undefined
};

SeparationReport separation_delta(const SimilarIFS& ifs, int n, std::size_t budget = 10000000);

struct OverlapWitness {
    std::vector<int> word_a;
    std::vector<int> word_b;
};

/// Search for distinct words (lengths up to n_max) whose composed maps
/// coincide: equal signed derivative and equal value at 0, both to 1e-12.
std::optional<OverlapWitness> exact_overlap_search(const SimilarIFS& ifs, int n_max,
                                                   std::size_t budget = 10000000);

/// Pairwise image-interval intersection check on the line: true when the
/// closed images of a common invariant interval are pairwise disjoint up to
/// endpoints (an interval open set condition certificate, d = 1 only).
bool interval_overlap_free(const SimilarIFS& ifs);

}  // namespace fracdim
