#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracdim/matrix.hpp"
#include "fracdim/sft.hpp"

namespace fracdim {

/// Locally constant potential: one real value per symbol, in nats.
struct DepthOnePotential {
    Vec values;

    static DepthOnePotential zero(std::size_t m) { return {Vec(m, 0.0)}; }
};

struct AdditivePressureResult {
    double value = 0.0;     // (1/n) log sum over admissible n-words of exp(S_n phi)
    double spectral = 0.0;  // exact limit: log rho(B), B_ij = A_ij exp(phi_j)
};

/// Topological pressure of a depth-1 potential on a primitive subshift.
/// Birkhoff sums of locally constant potentials are exact, so the finite-n
/// sum and the weighted transfer matrix B agree up to boundary terms.
AdditivePressureResult additive_pressure(const SubshiftFiniteType& sft,
                                         const DepthOnePotential& phi, std::size_t n);

struct GibbsMeasureResult {
    ErgodicMeasureSpec measure;
    double pressure = 0.0;
    // Constants certifying the Gibbs ratio mu[w] / exp(-l P + S_l phi) on all
    // cylinders up to checked_depth.
    double c_lower = 0.0;
    double c_upper = 0.0;
    int checked_depth = 0;
};

/// Equilibrium (Gibbs) Markov measure of a depth-1 potential, built from the
/// Perron data of B_ij = A_ij exp(phi_j). With phi = 0 this is the Parry
/// measure; on the full shift with phi = log p it is Bernoulli(p).
GibbsMeasureResult gibbs_markov_measure(const SubshiftFiniteType& sft,
                                        const DepthOnePotential& phi, int check_depth = 6);

/// Ordered singular values of a non-singular matrix.
struct SingularValueProfile {
    std::size_t dim = 0;
    Vec values;  // alpha_1 >= ... >= alpha_d > 0
};

/// Throws "rank-deficient" when the smallest singular value vanishes.
SingularValueProfile singular_value_profile(const Mat& m);

/// Falconer's singular value function phi^s: for 0 <= s <= d the product
/// a_1 ... a_k * a_{k+1}^{s-k} with k = floor(s); |det|^{s/d} beyond d.
/// Throws on rank-deficient input.
double singular_value_function(const Mat& m, double s);

struct SubadditivePressureResult {
    double estimate = 0.0;  // level-n value (1/n) log sum_{|w|=n} phi^s(A_w)
    double upper = 0.0;     // min over k <= n of the level-k values: certified upper bound
};

/// Subadditive pressure of the singular-value cocycle of a matrix family,
/// evaluated by depth-first enumeration reusing partial products.
SubadditivePressureResult subadditive_pressure(const std::vector<Mat>& matrices, double s,
                                               std::size_t n, std::size_t budget = 10000000);

struct PressureSample {
    double s = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct PressureCurve {
    std::vector<PressureSample> samples;
    double root_lo = 0.0;
    double root_hi = 0.0;
};

/// Root bracket and diagnostics for a dimension computed as a pressure zero.
struct DimensionReport {
    double lower = 0.0;
    double upper = 0.0;
    std::string note;

    double value() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

struct AffinityDimensionOptions {
    double tol = 1e-6;
    std::size_t word_budget = 10000000;
    std::size_t max_level = 5;
};

/// Zero of the subadditive pressure: bisection on s in [0, 2d] against the
/// certified finite-level upper bound. The bracket is exact for families
/// where the singular-value cocycle is multiplicative (similarities,
/// common diagonal frames).
DimensionReport affinity_dimension(const std::vector<Mat>& matrices,
                                   const AffinityDimensionOptions& opts = {});

struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
};

/// Bisection for a strictly decreasing function with a sign change on
/// [lo, hi]. Throws NumericError("root not bracketed") otherwise.
RootBracket pressure_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-10, int max_steps = 60);

}  // namespace fracdim
