#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/matrix.hpp"
#include "fracdim/pressure.hpp"
#include "fracdim/selfsimilar.hpp"

namespace fracdim {

/// One branch of the planar skew product
///   F(x, y) = (gamma x + v, a x + lambda y + t)   on  I_i x R,
/// with |gamma|, |lambda| > 1 and gamma x + v mapping I_i into [0,1].
struct BarnsleyBranch {
    double gamma = 2.0;
    double v = 0.0;
    double a = 0.0;
    double lambda = 2.0;
    double t = 0.0;

    double fx(double x) const { return gamma * x + v; }
};

/// Piecewise-expanding skew product on [0,1] x R. Partition intervals are
/// half-open [x_{i-1}, x_i), the last one closed.
struct BarnsleySystem {
    std::vector<double> partition;  // x_0 = 0 < x_1 < ... < x_m = 1
    std::vector<BarnsleyBranch> branches;

    std::size_t branch_count() const { return branches.size(); }
    int branch_of(double x) const;
    double apply_base(double x) const;
    /// Image interval of branch i (endpoints sorted).
    std::pair<double, double> branch_image(std::size_t i) const;

    static BarnsleySystem full_branch(const std::vector<double>& gammas,
                                      const std::vector<double>& lambdas,
                                      const std::vector<double>& a,
                                      const std::vector<double>& t);
};

struct BarnsleyDiagnostics {
    bool valid = false;
    bool expansion_ordered = false;  // |gamma_i| > |lambda_i| > 1 for every branch
    std::vector<std::pair<double, double>> images;
    std::vector<std::string> issues;
};

BarnsleyDiagnostics validate(const BarnsleySystem& system);
/// Throws ValidationError with the first issue if invalid.
void ensure_valid(const BarnsleySystem& system);

/// An admissible word with the interval hull of its cylinder and the image
/// of the hull under the |word|-fold composition.
struct CylinderWord {
    std::vector<int> word;
    double lo = 0.0, hi = 0.0;              // cylinder hull [lo, hi)
    double image_lo = 0.0, image_hi = 0.0;  // f^n(hull)
    double gamma_product = 1.0;             // composed |gamma| over the word
    double lambda_product = 1.0;            // composed |lambda| over the word

    double length() const { return hi - lo; }
};

/// Level-n admissible words by exact affine interval propagation with the
/// half-open convention at partition points.
std::vector<CylinderWord> admissible_words(const BarnsleySystem& system, int n,
                                           std::size_t budget = 10000000);

/// True iff every branch-image closure is a union of partition intervals.
bool is_markov(const BarnsleySystem& system, double tol = 1e-12);

enum class Diagonality { diagonal, essentially_diagonal, essentially_non_diagonal, undetermined };

std::string to_string(Diagonality d);

struct DiagonalityReport {
    Diagonality cls = Diagonality::undetermined;
    // Periodic witness words for the essentially-non-diagonal class.
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

/// Derivative triangles [[gamma,0],[a,lambda]] are simultaneously
/// diagonalizable iff the ratios (gamma - lambda)/a agree; otherwise a
/// witness pair of joinable periodic words with conflicting composed ratios
/// is searched up to the given depth.
DiagonalityReport classify_diagonality(const BarnsleySystem& system, int search_depth = 3);

/// Family of cylinders closed under the type-1 condition: each image either
/// contains a member or misses its interior. Transition i -> j means
/// cylinder j is contained in the image of cylinder i.
struct MarkovSubsystem {
    int level = 1;
    std::vector<CylinderWord> cylinders;
    Mat transition;  // 0/1

    bool empty() const { return cylinders.empty(); }
};

/// Greedy deletion fixed point over level-n cylinders: repeatedly remove any
/// cylinder partially overlapped by a survivor's image and any cylinder
/// whose image contains no survivor.
MarkovSubsystem extract_markov_subsystem(const BarnsleySystem& system, int n,
                                         std::size_t budget = 10000000);

/// log spectral radius of the weighted transition matrix with entries
/// (1/lambda_w)^s for s <= 1 and (1/lambda_w)(1/gamma_w)^{s-1} for s > 1,
/// where lambda_w, gamma_w are composed over each cylinder's word.
double markov_pressure(const BarnsleySystem& system, const MarkovSubsystem& subsystem, double s);

struct HofbauerBounds {
    double lower = 0.0;  // best Markov-subsystem pressure over levels <= n_max
    double upper = 0.0;  // least all-cylinder sum over levels <= n_max
};

/// Pressure envelopes at parameter s. Markov systems short-circuit to the
/// exact level-1 spectral value on both sides.
HofbauerBounds hofbauer_pressure(const BarnsleySystem& system, double s, int n_max,
                                 std::size_t budget = 10000000);

struct BarnsleyDimensionReport {
    double s_lo = 0.0;
    double s_hi = 0.0;
    bool markov = false;
    bool bracket_closed = false;
    Diagonality diagonality = Diagonality::undetermined;
    std::vector<double> inverse_separation_rates;  // advisory, diagonal classes only
    bool inverse_exact_overlap = false;
    std::string note;

    double value() const { return 0.5 * (s_lo + s_hi); }
};

/// Dimension prediction: the zero of the Markov/Hofbauer pressure on [0,2].
/// Requires |gamma_i| > |lambda_i| > 1 on every branch and a transitive base.
BarnsleyDimensionReport barnsley_dimension(const BarnsleySystem& system, int n_max = 6);

struct RepellerCloud {
    std::vector<std::array<double, 2>> points;
    double tail_bound = 0.0;     // truncation error bound on the y-values
    std::size_t resamples = 0;   // draws rejected near the singularity set
};

/// Points on the graph of the repeller function: y(x) is the truncated
/// series over the forward orbit of x, orbits near partition points are
/// rejected and redrawn.
RepellerCloud repeller_points(const BarnsleySystem& system, std::size_t count, int depth,
                              std::uint64_t seed);

/// The repeller function at one point, truncated at `depth` orbit steps.
/// Throws NumericError when the orbit comes within 1e-9 of an interior
/// partition point before the truncation depth.
double repeller_value(const BarnsleySystem& system, double x, int depth);

/// Strong connectivity of the level-n cylinder digraph with an edge where
/// f(Cylinder) overlaps another cylinder with positive length.
bool transitivity_check(const BarnsleySystem& system, int n);

struct BarnsleyExponents {
    double chi_x = 0.0;  // sum q_i log |gamma_i|
    double chi_y = 0.0;  // sum q_i log |lambda_i|
};

BarnsleyExponents barnsley_lyapunov(const BarnsleySystem& system, const Vec& branch_probs);

/// Lyapunov dimension of a Bernoulli branch distribution, evaluated through
/// the contracting-spectrum formula with negated expansion rates.
double barnsley_lyapunov_dimension(const BarnsleySystem& system, const Vec& branch_probs);

/// The contracting inverse fibre IFS y -> (y - t_i) / lambda_i on the line.
SimilarIFS inverse_fibre_ifs(const BarnsleySystem& system);

}  // namespace fracdim
