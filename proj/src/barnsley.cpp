#include "fracdim/barnsley.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <limits>

#include "fracdim/errors.hpp"
#include "fracdim/rng.hpp"
#include "fracdim/selfaffine.hpp"

namespace fracdim {

namespace {
constexpr double kPartTol = 1e-12;   // partition / image validation
constexpr double kLenTol = 1e-12;    // positive-length test for cylinders
constexpr double kGeomTol = 1e-9;    // containment slack for composed images
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

int BarnsleySystem::branch_of(double x) const {
    std::size_t m = branch_count();
    if (x >= partition[m]) return static_cast<int>(m) - 1;  // last interval closed
    for (std::size_t i = 0; i < m; ++i)
        if (x >= partition[i] && x < partition[i + 1]) return static_cast<int>(i);
    return 0;
}

double BarnsleySystem::apply_base(double x) const {
    return branches[branch_of(x)].fx(x);
}

std::pair<double, double> BarnsleySystem::branch_image(std::size_t i) const {
    double a = branches[i].fx(partition[i]);
    double b = branches[i].fx(partition[i + 1]);
    return {std::min(a, b), std::max(a, b)};
}

BarnsleySystem BarnsleySystem::full_branch(const std::vector<double>& gammas,
                                           const std::vector<double>& lambdas,
                                           const std::vector<double>& a,
                                           const std::vector<double>& t) {
    std::size_t m = gammas.size();
    if (lambdas.size() != m || a.size() != m || t.size() != m)
        throw ValidationError("branch parameter lists must have equal length");
    double total = 0.0;
    for (double g : gammas) total += 1.0 / std::abs(g);
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("full-branch slopes must satisfy sum 1/|gamma| = 1");
    BarnsleySystem sys;
    sys.partition.push_back(0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double lo = sys.partition.back();
        sys.partition.push_back(i + 1 == m ? 1.0 : lo + 1.0 / std::abs(gammas[i]));
        BarnsleyBranch br;
        br.gamma = gammas[i];
        br.v = gammas[i] > 0 ? -gammas[i] * lo : -gammas[i] * sys.partition.back();
        br.a = a[i];
        br.lambda = lambdas[i];
        br.t = t[i];
        sys.branches.push_back(br);
    }
    return sys;
}

BarnsleyDiagnostics validate(const BarnsleySystem& system) {
    BarnsleyDiagnostics diag;
    std::size_t m = system.branch_count();
    if (m == 0 || system.partition.size() != m + 1) {
        diag.issues.push_back("partition must have one more point than branches");
        return diag;
    }
    if (std::abs(system.partition.front()) > kPartTol ||
        std::abs(system.partition.back() - 1.0) > kPartTol)
        diag.issues.push_back("partition must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < system.partition.size(); ++i)
        if (system.partition[i + 1] <= system.partition[i])
            diag.issues.push_back("partition points must be strictly increasing");
    diag.expansion_ordered = true;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& br = system.branches[i];
        std::string tag = "branch " + std::to_string(i);
        if (std::abs(br.gamma) <= 1.0) diag.issues.push_back(tag + ": not expanding (|gamma| <= 1)");
        if (std::abs(br.lambda) <= 1.0)
            diag.issues.push_back(tag + ": not expanding (|lambda| <= 1)");
        auto img = system.branch_image(i);
        diag.images.push_back(img);
        if (img.first < -kPartTol || img.second > 1.0 + kPartTol)
            diag.issues.push_back(tag + ": image [" + std::to_string(img.first) + ", " +
                                  std::to_string(img.second) + "] leaves [0,1]");
        if (!(std::abs(br.gamma) > std::abs(br.lambda))) diag.expansion_ordered = false;
    }
    diag.valid = diag.issues.empty();
    if (!diag.valid) diag.expansion_ordered = false;
    return diag;
}

void ensure_valid(const BarnsleySystem& system) {
    BarnsleyDiagnostics diag = validate(system);
    if (!diag.valid) throw ValidationError(diag.issues.front());
}

std::vector<CylinderWord> admissible_words(const BarnsleySystem& system, int n,
                                           std::size_t budget) {
    ensure_valid(system);
    if (n < 1) throw ValidationError("level must be >= 1");
    std::size_t m = system.branch_count();
    std::vector<CylinderWord> out;
    std::size_t visited = 0;

    struct State {
        double hull_lo, hull_hi;
        double slope, inter;  // composed base map on the hull
        double glam, llam;    // |gamma|, |lambda| products
    };
    std::vector<int> word;

    auto rec = [&](auto&& self, const State& st, int depth) -> void {
        if (depth == n) {
            CylinderWord cw;
            cw.word = word;
            cw.lo = st.hull_lo;
            cw.hi = st.hull_hi;
            double ia = st.slope * st.hull_lo + st.inter;
            double ib = st.slope * st.hull_hi + st.inter;
            cw.image_lo = std::min(ia, ib);
            cw.image_hi = std::max(ia, ib);
            cw.gamma_product = st.glam;
            cw.lambda_product = st.llam;
            out.push_back(std::move(cw));
            return;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (++visited > budget) throw NumericError("cylinder budget exceeded; reduce n");
            const auto& br = system.branches[i];
            State next;
            if (depth == 0) {
                next = {system.partition[i], system.partition[i + 1], br.gamma, br.v,
                        std::abs(br.gamma), std::abs(br.lambda)};
            } else {
                // Constrain the current image to I_i, pull back, compose.
                double ia = st.slope * st.hull_lo + st.inter;
                double ib = st.slope * st.hull_hi + st.inter;
                double u = std::max(std::min(ia, ib), system.partition[i]);
                double v = std::min(std::max(ia, ib), system.partition[i + 1]);
                if (v - u <= kLenTol) continue;
                double xa = (u - st.inter) / st.slope;
                double xb = (v - st.inter) / st.slope;
                next.hull_lo = std::min(xa, xb);
                next.hull_hi = std::max(xa, xb);
                next.slope = br.gamma * st.slope;
                next.inter = br.gamma * st.inter + br.v;
                next.glam = st.glam * std::abs(br.gamma);
                next.llam = st.llam * std::abs(br.lambda);
            }
            word.push_back(static_cast<int>(i));
            self(self, next, depth + 1);
            word.pop_back();
        }
    };
    State root{};
    rec(rec, root, 0);
    return out;
}

bool is_markov(const BarnsleySystem& system, double tol) {
    ensure_valid(system);
    auto is_partition_point = [&](double x) {
        for (double p : system.partition)
            if (std::abs(x - p) <= tol) return true;
        return false;
    };
    for (std::size_t i = 0; i < system.branch_count(); ++i) {
        auto img = system.branch_image(i);
        if (!is_partition_point(img.first) || !is_partition_point(img.second)) return false;
    }
    return true;
}

std::string to_string(Diagonality d) {
    switch (d) {
        case Diagonality::diagonal: return "diagonal";
        case Diagonality::essentially_diagonal: return "essentially diagonal";
        case Diagonality::essentially_non_diagonal: return "essentially non-diagonal";
        default: return "undetermined";
    }
}

namespace {

struct Triangle {
    double gamma = 1.0;
    double a = 0.0;
    double lambda = 1.0;
};

Triangle compose(const Triangle& later, const Triangle& earlier) {
    // later * earlier for [[gamma, 0], [a, lambda]]
    return {later.gamma * earlier.gamma, later.a * earlier.gamma + later.lambda * earlier.a,
            later.lambda * earlier.lambda};
}

// Ratio (gamma - lambda)/a classifying the invariant eigendirection. The
// returned flag marks a scalar triangle compatible with any ratio.
struct RatioClass {
    bool wildcard = false;
    bool infinite = false;
    double ratio = 0.0;
};

RatioClass ratio_class(const Triangle& t, double tol) {
    RatioClass rc;
    if (std::abs(t.a) <= tol * std::max(1.0, std::abs(t.gamma))) {
        if (std::abs(t.gamma - t.lambda) <= tol * std::max(1.0, std::abs(t.gamma)))
            rc.wildcard = true;
        else
            rc.infinite = true;
        return rc;
    }
    rc.ratio = (t.gamma - t.lambda) / t.a;
    return rc;
}

bool ratios_definitely_differ(const RatioClass& x, const RatioClass& y, double tol) {
    if (x.wildcard || y.wildcard) return false;
    if (x.infinite != y.infinite) return true;
    if (x.infinite && y.infinite) return false;
    return std::abs(x.ratio - y.ratio) > tol * std::max({1.0, std::abs(x.ratio), std::abs(y.ratio)});
}

bool ratios_agree(const RatioClass& x, const RatioClass& y, double tol) {
    if (x.wildcard || y.wildcard) return true;
    if (x.infinite || y.infinite) return x.infinite && y.infinite;
    return std::abs(x.ratio - y.ratio) <= tol * std::max({1.0, std::abs(x.ratio), std::abs(y.ratio)});
}

// Word admissibility by interval propagation; the word may be any
// concatenation, not just one produced by the cylinder enumeration.
bool word_admissible_interval(const BarnsleySystem& system, const std::vector<int>& word) {
    if (word.empty()) return true;
    double lo = system.partition[word[0]];
    double hi = system.partition[word[0] + 1];
    double slope = system.branches[word[0]].gamma;
    double inter = system.branches[word[0]].v;
    for (std::size_t k = 1; k < word.size(); ++k) {
        const auto& br = system.branches[word[k]];
        double ia = slope * lo + inter;
        double ib = slope * hi + inter;
        double u = std::max(std::min(ia, ib), system.partition[word[k]]);
        double v = std::min(std::max(ia, ib), system.partition[word[k] + 1]);
        if (v - u <= kLenTol) return false;
        double xa = (u - inter) / slope;
        double xb = (v - inter) / slope;
        lo = std::min(xa, xb);
        hi = std::max(xa, xb);
        slope = br.gamma * slope;
        inter = br.gamma * inter + br.v;
    }
    return true;
}

}  // namespace

DiagonalityReport classify_diagonality(const BarnsleySystem& system, int search_depth) {
    ensure_valid(system);
    DiagonalityReport rep;
    bool any_offdiag = false;
    for (const auto& br : system.branches)
        if (br.a != 0.0) any_offdiag = true;
    if (!any_offdiag) {
        rep.cls = Diagonality::diagonal;
        return rep;
    }

    std::vector<RatioClass> branch_ratios;
    for (const auto& br : system.branches)
        branch_ratios.push_back(ratio_class({br.gamma, br.a, br.lambda}, 1e-12));
    bool all_agree = true;
    for (std::size_t i = 0; i < branch_ratios.size() && all_agree; ++i)
        for (std::size_t j = i + 1; j < branch_ratios.size(); ++j)
            if (!ratios_agree(branch_ratios[i], branch_ratios[j], 1e-12)) {
                all_agree = false;
                break;
            }
    if (all_agree) {
        rep.cls = Diagonality::essentially_diagonal;
        return rep;
    }

    // Collect periodic admissible words up to the search depth: the composed
    // base map must fix a point of the (closed) cylinder hull.
    struct Candidate {
        std::vector<int> word;
        RatioClass ratio;
    };
    std::vector<Candidate> periodic;
    for (int len = 1; len <= search_depth; ++len) {
        for (const auto& cyl : admissible_words(system, len)) {
            double slope = 1.0, inter = 0.0;
            Triangle tri;
            for (int s : cyl.word) {
                const auto& br = system.branches[s];
                slope = br.gamma * slope;
                inter = br.gamma * inter + br.v;
                tri = compose({br.gamma, br.a, br.lambda}, tri);
            }
            if (std::abs(slope - 1.0) < 1e-12) continue;
            double fixed = inter / (1.0 - slope);
            if (fixed < cyl.lo - kGeomTol || fixed > cyl.hi + kGeomTol) continue;
            periodic.push_back({cyl.word, ratio_class(tri, 1e-12)});
        }
    }

    // Look for a joinable pair with conflicting composed ratios.
    for (std::size_t i = 0; i < periodic.size(); ++i) {
        for (std::size_t j = 0; j < periodic.size(); ++j) {
            if (i == j) continue;
            if (!ratios_definitely_differ(periodic[i].ratio, periodic[j].ratio, 1e-9)) continue;
            // Search a connecting word eta, shortest first.
            std::vector<int> eta;
            auto joinable = [&](auto&& self, int remaining) -> bool {
                std::vector<int> joined = periodic[i].word;
                joined.insert(joined.end(), eta.begin(), eta.end());
                joined.insert(joined.end(), periodic[j].word.begin(), periodic[j].word.end());
                if (word_admissible_interval(system, joined)) return true;
                if (remaining == 0) return false;
                for (std::size_t s = 0; s < system.branch_count(); ++s) {
                    eta.push_back(static_cast<int>(s));
                    if (self(self, remaining - 1)) return true;
                    eta.pop_back();
                }
                return false;
            };
            if (joinable(joinable, search_depth)) {
                rep.cls = Diagonality::essentially_non_diagonal;
                rep.witness = std::make_pair(periodic[i].word, periodic[j].word);
                return rep;
            }
        }
    }
    rep.cls = Diagonality::undetermined;
    return rep;
}

namespace {

enum class Relation { contains, disjoint, partial };

Relation relate(double img_lo, double img_hi, const CylinderWord& cyl) {
    if (img_lo <= cyl.lo + kGeomTol && cyl.hi <= img_hi + kGeomTol) return Relation::contains;
    double overlap = std::min(img_hi, cyl.hi) - std::max(img_lo, cyl.lo);
    if (overlap <= kGeomTol) return Relation::disjoint;
    return Relation::partial;
}

}  // namespace

MarkovSubsystem extract_markov_subsystem(const BarnsleySystem& system, int n,
                                         std::size_t budget) {
    std::vector<CylinderWord> cyls = admissible_words(system, n, budget);
    std::size_t count = cyls.size();
    std::vector<bool> alive(count, true);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < count; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = 0; j < count; ++j) {
                if (!alive[j]) continue;
                if (relate(cyls[i].image_lo, cyls[i].image_hi, cyls[j]) == Relation::partial) {
                    alive[j] = false;
                    changed = true;
                }
            }
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!alive[i]) continue;
            bool has_target = false;
            for (std::size_t j = 0; j < count && !has_target; ++j)
                if (alive[j] &&
                    relate(cyls[i].image_lo, cyls[i].image_hi, cyls[j]) == Relation::contains)
                    has_target = true;
            if (!has_target) {
                alive[i] = false;
                changed = true;
            }
        }
    }

    MarkovSubsystem sub;
    sub.level = n;
    for (std::size_t i = 0; i < count; ++i)
        if (alive[i]) sub.cylinders.push_back(cyls[i]);
    std::size_t k = sub.cylinders.size();
    sub.transition = Mat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            sub.transition(i, j) =
                relate(sub.cylinders[i].image_lo, sub.cylinders[i].image_hi, sub.cylinders[j]) ==
                        Relation::contains
                    ? 1.0
                    : 0.0;
    return sub;
}

double markov_pressure(const BarnsleySystem& system, const MarkovSubsystem& subsystem, double s) {
    ensure_valid(system);
    if (s < 0.0 || s > 2.0) throw ValidationError("pressure parameter must lie in [0,2]");
    if (subsystem.empty()) return -kInf;
    std::size_t k = subsystem.cylinders.size();
    // The family must satisfy the type-1 condition.
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (relate(subsystem.cylinders[i].image_lo, subsystem.cylinders[i].image_hi,
                       subsystem.cylinders[j]) == Relation::partial)
                throw ValidationError("subsystem violates the Markov (type-1) property");
    Mat weighted(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& cyl = subsystem.cylinders[i];
        double w = s <= 1.0 ? std::pow(1.0 / cyl.lambda_product, s)
                            : (1.0 / cyl.lambda_product) *
                                  std::pow(1.0 / cyl.gamma_product, s - 1.0);
        for (std::size_t j = 0; j < k; ++j)
            weighted(i, j) = subsystem.transition(i, j) > 0.0 ? w : 0.0;
    }
    double rho = spectral_radius(weighted, 1e-14);
    return rho > 0.0 ? std::log(rho) : -kInf;
}

namespace {

double cylinder_weight(const CylinderWord& cyl, double s) {
    return s <= 1.0
               ? std::pow(1.0 / cyl.lambda_product, s)
               : (1.0 / cyl.lambda_product) * std::pow(1.0 / cyl.gamma_product, s - 1.0);
}

// Per-level cylinder data shared across s-evaluations.
struct HofbauerEvaluator {
    const BarnsleySystem* system = nullptr;
    bool markov = false;
    MarkovSubsystem level1;
    std::vector<std::vector<CylinderWord>> cylinder_levels;
    std::vector<MarkovSubsystem> subsystems;

    HofbauerEvaluator(const BarnsleySystem& sys, int n_max, std::size_t budget) : system(&sys) {
        markov = is_markov(sys);
        if (markov) {
            level1 = extract_markov_subsystem(sys, 1, budget);
            return;
        }
        for (int n = 1; n <= n_max; ++n) {
            try {
                cylinder_levels.push_back(admissible_words(sys, n, budget));
            } catch (const NumericError&) {
                break;  // level too deep for the budget; keep what we have
            }
            subsystems.push_back(extract_markov_subsystem(sys, n, budget));
        }
    }

    HofbauerBounds bounds(double s) const {
        if (markov) {
            double p = markov_pressure(*system, level1, s);
            return {p, p};
        }
        double lower = -kInf;
        double upper = kInf;
        for (std::size_t idx = 0; idx < cylinder_levels.size(); ++idx) {
            double n = static_cast<double>(idx + 1);
            double sum = 0.0;
            for (const auto& cyl : cylinder_levels[idx]) sum += cylinder_weight(cyl, s);
            upper = std::min(upper, std::log(sum) / n);
            if (!subsystems[idx].empty())
                lower = std::max(lower, markov_pressure(*system, subsystems[idx], s) / n);
        }
        return {lower, upper};
    }
};

}  // namespace

HofbauerBounds hofbauer_pressure(const BarnsleySystem& system, double s, int n_max,
                                 std::size_t budget) {
    ensure_valid(system);
    if (s < 0.0 || s > 2.0) throw ValidationError("pressure parameter must lie in [0,2]");
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    return HofbauerEvaluator(system, n_max, budget).bounds(s);
}

BarnsleyDimensionReport barnsley_dimension(const BarnsleySystem& system, int n_max) {
    ensure_valid(system);
    BarnsleyDiagnostics diag = validate(system);
    if (!diag.expansion_ordered)
        throw ValidationError(
            "dimension prediction requires |gamma_i| > |lambda_i| > 1 on every branch");
    if (!transitivity_check(system, std::min(n_max, 2)))
        throw ValidationError("base map is not transitive on level cylinders");

    BarnsleyDimensionReport rep;
    rep.markov = is_markov(system);
    DiagonalityReport dcls = classify_diagonality(system);
    rep.diagonality = dcls.cls;

    if (rep.markov) {
        MarkovSubsystem level1 = extract_markov_subsystem(system, 1);
        auto pressure = [&](double s) { return markov_pressure(system, level1, s); };
        RootBracket br = pressure_root(pressure, 0.0, 2.0, 1e-10);
        rep.s_lo = br.lo;
        rep.s_hi = br.hi;
        rep.bracket_closed = true;
        rep.note = "exact Markov pressure root";
    } else {
        HofbauerEvaluator eval(system, n_max, 10000000);
        // Decreasing envelopes bracket the pressure, so their roots bracket s0.
        auto envelope_root = [&](const std::function<double(double)>& f) {
            double at0 = f(0.0);
            double at2 = f(2.0);
            if (at0 <= 0.0) return 0.0;
            if (at2 > 0.0) return 2.0;
            return pressure_root(f, 0.0, 2.0, 1e-8).mid();
        };
        rep.s_lo = envelope_root([&](double s) { return eval.bounds(s).lower; });
        rep.s_hi = envelope_root([&](double s) { return eval.bounds(s).upper; });
        rep.bracket_closed = rep.s_hi - rep.s_lo <= 1e-6;
        rep.note = rep.bracket_closed
                       ? "Hofbauer envelopes closed"
                       : "Hofbauer envelope bracket did not close; the Markov-subsystem "
                         "lower bound may be non-optimal";
    }

    if (rep.diagonality == Diagonality::diagonal ||
        rep.diagonality == Diagonality::essentially_diagonal) {
        // Advisory separation rates of the inverse fibre IFS.
        SimilarIFS inverse = inverse_fibre_ifs(system);
        int depth = 1;
        double words = static_cast<double>(system.branch_count());
        while (depth < 12 && words * static_cast<double>(system.branch_count()) <= 1e6) {
            words *= static_cast<double>(system.branch_count());
            ++depth;
        }
        SeparationReport sep = separation_delta(inverse, depth);
        rep.inverse_separation_rates = sep.rates;
        rep.inverse_exact_overlap = sep.exact_overlap;
    }
    return rep;
}

namespace {

// Base orbits are tracked in double-double precision. Binary-rational slopes
// (the doubling map) shift mantissa bits out exactly, so a plain double orbit
// collapses onto the partition points within ~53 steps; the compensated tail
// keeps sampled orbits generic through the truncation depths used here.
struct SplitX {
    double hi = 0.0;
    double lo = 0.0;

    double value() const { return hi; }
};

SplitX renormalize(double hi, double lo) {
    double s = hi + lo;
    double err = lo - (s - hi);
    return {s, err};
}

SplitX affine_step(const SplitX& x, double gamma, double v) {
    double p = gamma * x.hi;
    double perr = std::fma(gamma, x.hi, -p);
    double s = p + v;
    double bb = s - p;
    double serr = (p - (s - bb)) + (v - bb);
    return renormalize(s, perr + serr + gamma * x.lo);
}

int branch_of_split(const BarnsleySystem& system, const SplitX& x) {
    std::size_t m = system.branch_count();
    if ((x.hi - system.partition[m]) + x.lo >= 0.0) return static_cast<int>(m) - 1;
    for (std::size_t i = 0; i < m; ++i)
        if ((x.hi - system.partition[i]) + x.lo >= 0.0 &&
            (x.hi - system.partition[i + 1]) + x.lo < 0.0)
            return static_cast<int>(i);
    return 0;
}

bool near_interior_partition_point(const BarnsleySystem& system, const SplitX& x) {
    for (double p : system.partition)
        if (std::abs((x.hi - p) + x.lo) < 1e-9 && p != 0.0 && p != 1.0) return true;
    return false;
}

// Truncated series for the fibre coordinate over the forward orbit. With
// `reject_near_singularity` the orbit is abandoned within 1e-9 of an interior
// partition point; otherwise the half-open branch convention resolves hits
// and the value on that countable set is the one-sided limit.
std::optional<double> repeller_series(const BarnsleySystem& system, SplitX x, int depth,
                                      bool reject_near_singularity) {
    double inv = 1.0;
    double acc = 0.0;
    for (int step = 0; step < depth; ++step) {
        if (reject_near_singularity && near_interior_partition_point(system, x))
            return std::nullopt;
        const auto& br = system.branches[branch_of_split(system, x)];
        inv /= br.lambda;
        acc += (br.a * x.value() + br.t) * inv;
        x = affine_step(x, br.gamma, br.v);
        if (x.hi < 0.0) x = {0.0, 0.0};
        if ((x.hi - 1.0) + x.lo > 0.0) x = {1.0, 0.0};
    }
    return -acc;
}

double min_fibre_expansion(const BarnsleySystem& system) {
    double lambda_min = kInf;
    for (const auto& br : system.branches)
        lambda_min = std::min(lambda_min, std::abs(br.lambda));
    return lambda_min;
}

}  // namespace

double repeller_value(const BarnsleySystem& system, double x, int depth) {
    ensure_valid(system);
    return *repeller_series(system, {x, 0.0}, depth, false);
}

RepellerCloud repeller_points(const BarnsleySystem& system, std::size_t count, int depth,
                              std::uint64_t seed) {
    ensure_valid(system);
    double lambda_min = min_fibre_expansion(system);
    double a_max = 0.0, t_max = 0.0;
    for (const auto& br : system.branches) {
        a_max = std::max(a_max, std::abs(br.a));
        t_max = std::max(t_max, std::abs(br.t));
    }
    if (std::pow(lambda_min, -static_cast<double>(depth)) >= 1e-9)
        throw ValidationError("depth too small: lambda_min^-depth must be below 1e-9");

    RepellerCloud cloud;
    cloud.tail_bound = (2.0 * a_max + t_max) / (lambda_min - 1.0) *
                       std::pow(lambda_min, -static_cast<double>(depth));
    cloud.points.reserve(count);

    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        bool accepted = false;
        for (int attempt = 0; attempt < 10000 && !accepted; ++attempt) {
            double x0 = rng.uniform();
            // sub-ulp tail makes the tracked orbit that of a generic real point
            SplitX x{x0, (rng.uniform() - 0.5) * 0x1.0p-55};
            auto value = repeller_series(system, x, depth, true);
            if (!value) {
                ++cloud.resamples;
                continue;
            }
            cloud.points.push_back({x0, *value});
            accepted = true;
        }
        if (!accepted) throw NumericError("could not sample away from the singularity set");
    }
    return cloud;
}

bool transitivity_check(const BarnsleySystem& system, int n) {
    std::vector<CylinderWord> cyls = admissible_words(system, n);
    std::size_t k = cyls.size();
    if (k == 0) return false;
    Mat graph(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& br = system.branches[cyls[i].word[0]];
        double a = br.fx(cyls[i].lo);
        double b = br.fx(cyls[i].hi);
        double lo = std::min(a, b), hi = std::max(a, b);
        for (std::size_t j = 0; j < k; ++j) {
            double overlap = std::min(hi, cyls[j].hi) - std::max(lo, cyls[j].lo);
            graph(i, j) = overlap > kLenTol ? 1.0 : 0.0;
        }
    }
    return is_strongly_connected(graph);
}

BarnsleyExponents barnsley_lyapunov(const BarnsleySystem& system, const Vec& branch_probs) {
    if (branch_probs.size() != system.branch_count())
        throw ValidationError("branch probability size mismatch");
    BarnsleyExponents out;
    for (std::size_t i = 0; i < branch_probs.size(); ++i) {
        out.chi_x += branch_probs[i] * std::log(std::abs(system.branches[i].gamma));
        out.chi_y += branch_probs[i] * std::log(std::abs(system.branches[i].lambda));
    }
    return out;
}

double barnsley_lyapunov_dimension(const BarnsleySystem& system, const Vec& branch_probs) {
    BarnsleyExponents chi = barnsley_lyapunov(system, branch_probs);
    double h = 0.0;
    for (double q : branch_probs)
        if (q > 0.0) h -= q * std::log(q);
    if (h == 0.0) return 0.0;
    Vec spectrum{-chi.chi_x, -chi.chi_y};
    std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
    return lyapunov_dimension(h, spectrum).value;
}

SimilarIFS inverse_fibre_ifs(const BarnsleySystem& system) {
    std::vector<double> ratios, translations;
    for (const auto& br : system.branches) {
        ratios.push_back(1.0 / br.lambda);
        translations.push_back(-br.t / br.lambda);
    }
    return SimilarIFS::line(ratios, translations);
}

}  // namespace fracdim
