// Acceptance suite: one pass/fail line per criterion, with the tolerances
// and runtime budgets stated inline. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracdim/barnsley.hpp"
#include "fracdim/boxcount.hpp"
#include "fracdim/interval_map.hpp"
#include "fracdim/pressure.hpp"
#include "fracdim/selfaffine.hpp"
#include "fracdim/selfsimilar.hpp"
#include "fracdim/sft.hpp"

using namespace fracdim;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Harness {
    int failures = 0;

    void run(int index, const std::string& name, bool (*fn)(std::string&)) {
        std::string detail;
        bool pass = false;
        try {
            pass = fn(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
        if (!detail.empty()) std::cout << " [" << detail << "]";
        std::cout << std::endl;
        if (!pass) ++failures;
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

const double kSqrt2 = std::sqrt(2.0);

BarnsleySystem full_branch_two(double lambda, double a1 = 0.0, double a2 = 0.0) {
    return BarnsleySystem::full_branch({2.0, 2.0}, {lambda, lambda}, {a1, a2}, {0.0, 0.0});
}

SimilarIFS gasket() {
    std::vector<SimilarityMap> maps;
    for (Vec t : {Vec{0.0, 0.0}, Vec{0.5, 0.0}, Vec{0.0, 0.5}}) {
        SimilarityMap m;
        m.ratio = 0.5;
        m.rotation = Mat::identity(2);
        m.translation = t;
        maps.push_back(m);
    }
    return SimilarIFS(std::move(maps));
}

// 1. Moran equation roots at 1e-10, under 1 ms.
bool criterion_moran(std::string& detail) {
    auto start = Clock::now();
    double s3 = similarity_dimension({0.5, 0.5, 0.5});
    double s4 = similarity_dimension({0.25, 0.25, 0.25, 0.25});
    double elapsed = seconds_since(start);
    bool ok = std::abs(s3 - std::log(3.0) / std::log(2.0)) <= 1e-10 &&
              std::abs(s4 - 1.0) <= 1e-10 && elapsed < 1e-3;
    detail = "s3 = " + fmt(s3) + ", s4 = " + fmt(s4) + ", " + fmt(elapsed * 1e3) + " ms";
    return ok;
}

// 2. Exact-overlap detection in the {lx, lx+1, lx+3} family, under 10 ms.
bool criterion_overlap(std::string& detail) {
    auto start = Clock::now();
    SimilarIFS third = SimilarIFS::line({1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.0, 1.0, 3.0});
    auto rep = separation_delta(third, 2);
    auto witness = exact_overlap_search(third, 2);
    SimilarIFS s35 = SimilarIFS::line({0.35, 0.35, 0.35}, {0.0, 1.0, 3.0});
    auto rep35 = separation_delta(s35, 2);
    double elapsed = seconds_since(start);
    // witness in map indices: (0,2) composes translations (0,3), (1,0) gives (1,0)
    bool witness_ok = witness && witness->word_a == std::vector<int>{0, 2} &&
                      witness->word_b == std::vector<int>{1, 0};
    bool ok = rep.exact_overlap && rep.delta_n == 0.0 && witness_ok &&
              std::abs(rep35.delta_n - 0.05) <= 1e-12 && elapsed < 0.01;
    detail = "delta2(1/3) = " + fmt(rep.delta_n) + ", delta2(0.35) = " + fmt(rep35.delta_n) +
             ", " + fmt(elapsed * 1e3) + " ms";
    return ok;
}

// 3. Affinity dimension bracket vs the Lyapunov dimension closed form, under 1 s.
bool criterion_affinity_lyapunov(std::string& detail) {
    auto start = Clock::now();
    Mat d{{1.0 / 3, 0}, {0, 1.0 / 5}};
    auto aff = affinity_dimension(std::vector<Mat>(6, d));
    double target = 1.0 + std::log(2.0) / std::log(5.0);
    auto lyap = lyapunov_dimension(std::log(6.0), {-std::log(3.0), -std::log(5.0)});
    double elapsed = seconds_since(start);
    bool ok = aff.width() < 1e-6 && aff.lower <= target && target <= aff.upper &&
              std::abs(lyap.value - target) <= 1e-12 && elapsed < 1.0;
    detail = "bracket [" + fmt(aff.lower) + ", " + fmt(aff.upper) + "], D = " + fmt(lyap.value) +
             ", " + fmt(elapsed) + " s";
    return ok;
}

// 4. Skew-product dimension closed forms and pressure row sums, under 1 s.
bool criterion_barnsley_closed_forms(std::string& detail) {
    auto start = Clock::now();
    auto rep_sqrt2 = barnsley_dimension(full_branch_two(kSqrt2));
    auto rep_15 = barnsley_dimension(full_branch_two(1.5));
    double t15 = 1.0 + std::log(4.0 / 3.0) / std::log(2.0);
    auto sys = full_branch_two(kSqrt2);
    auto level1 = extract_markov_subsystem(sys, 1);
    double p1 = markov_pressure(sys, level1, 1.0);
    double p2 = markov_pressure(sys, level1, 2.0);
    double elapsed = seconds_since(start);
    bool ok = std::abs(rep_sqrt2.value() - 1.5) <= 1e-8 &&
              std::abs(rep_15.value() - t15) <= 1e-8 &&
              std::abs(p1 - 0.5 * std::log(2.0)) <= 1e-12 &&
              std::abs(p2 + 0.5 * std::log(2.0)) <= 1e-12 && elapsed < 1.0;
    detail = "s0(sqrt2) = " + fmt(rep_sqrt2.value()) + ", s0(1.5) = " + fmt(rep_15.value()) +
             ", " + fmt(elapsed) + " s";
    return ok;
}

// 5. Pressure structure: strict decrease, continuity at s = 1, envelope order.
bool criterion_pressure_structure(std::string& detail) {
    BarnsleySystem golden;
    golden.partition = {0.0, 2.0 / (1.0 + std::sqrt(5.0)), 1.0};
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    golden.branches.push_back({phi, 0.0, 0.0, 1.3, 0.0});
    golden.branches.push_back({phi, -1.0, 0.0, 1.2, 0.0});
    auto level1 = extract_markov_subsystem(golden, 1);

    bool decreasing = true;
    double prev = 1e300;
    for (int k = 0; k <= 40; ++k) {
        double p = markov_pressure(golden, level1, 0.05 * k);
        if (p >= prev) decreasing = false;
        prev = p;
    }

    // the two potential branches must agree at s = 1 on every cylinder weight
    bool joint = true;
    for (const auto& cyl : level1.cylinders) {
        double w_low = std::pow(1.0 / cyl.lambda_product, 1.0);
        double w_high = (1.0 / cyl.lambda_product) * std::pow(1.0 / cyl.gamma_product, 0.0);
        if (std::abs(w_low - w_high) > 1e-12 * w_low) joint = false;
    }

    bool envelopes = true;
    bool markov_equal = true;
    BarnsleySystem trunc;  // non-Markov transitive base
    trunc.partition = {0.0, 0.5, 1.0};
    trunc.branches.push_back({2.0, 0.0, 0.0, 1.2, 0.0});
    trunc.branches.push_back({1.4, -0.7, 0.0, 1.2, 0.0});
    for (int k = 0; k <= 40; ++k) {
        double s = 0.05 * k;
        auto hb = hofbauer_pressure(trunc, s, 5);
        if (hb.lower > hb.upper + 1e-12) envelopes = false;
        auto hg = hofbauer_pressure(golden, s, 1);
        double exact = markov_pressure(golden, level1, s);
        if (std::abs(hg.lower - exact) > 1e-12 || std::abs(hg.upper - exact) > 1e-12)
            markov_equal = false;
    }
    detail = std::string("decreasing=") + (decreasing ? "yes" : "no") +
             ", s=1 joint=" + (joint ? "yes" : "no") +
             ", lower<=upper=" + (envelopes ? "yes" : "no") +
             ", markov n=1 equality=" + (markov_equal ? "yes" : "no");
    return decreasing && joint && envelopes && markov_equal;
}

// 6. Variational check: Bernoulli grid maximum of the Lyapunov dimension
//    reproduces the pressure root within 1e-3, under 10 s.
bool criterion_variational(std::string& detail) {
    auto start = Clock::now();
    auto sys = full_branch_two(kSqrt2);
    double s0 = barnsley_dimension(sys).value();
    double best = 0.0;
    for (int k = 1; k <= 200; ++k) {
        double q = static_cast<double>(k) / 201.0;
        best = std::max(best, barnsley_lyapunov_dimension(sys, {q, 1.0 - q}));
    }
    double elapsed = seconds_since(start);
    bool ok = best <= s0 + 1e-3 && std::abs(best - s0) <= 1e-3 && elapsed < 10.0;
    detail = "sup D = " + fmt(best) + ", s0 = " + fmt(s0) + ", " + fmt(elapsed) + " s";
    return ok;
}

// 7. Entropy suite: golden-mean entropies, certified Gibbs constants, laps.
bool criterion_entropy(std::string& detail) {
    SubshiftFiniteType golden(2, {{1, 1}, {1, 0}});
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    double h_top = topological_entropy(golden);
    double h_parry = entropy(parry_measure(golden));
    bool entropies = std::abs(h_top - std::log(phi)) <= 1e-10 &&
                     std::abs(h_parry - std::log(phi)) <= 1e-10;

    auto gibbs = gibbs_markov_measure(golden, DepthOnePotential::zero(2), 6);
    bool gibbs_ok = gibbs.c_lower > 0.0 && gibbs.c_upper < 1e6 &&
                    gibbs.c_lower <= gibbs.c_upper && gibbs.checked_depth == 6;

    double lap = lap_entropy(PiecewiseAffineMap::tent(2.0), 12);
    bool lap_ok = std::abs(lap - std::log(2.0)) <= 1e-3;
    detail = "h_top = " + fmt(h_top) + ", c1 = " + fmt(gibbs.c_lower) +
             ", c2 = " + fmt(gibbs.c_upper) + ", lap = " + fmt(lap);
    return entropies && gibbs_ok && lap_ok;
}

// 8. Box-count oracle: gasket within 0.05 (under 30 s) and a skewed repeller
//    within 0.1 of the analytic root (under 60 s), both at 1e6 points.
bool criterion_boxcount(std::string& detail) {
    auto start = Clock::now();
    auto cloud = attractor_points(gasket(), 1000000, 2);
    auto prof = box_count(cloud, dyadic_scales(4, 9));
    double target = std::log(3.0) / std::log(2.0);
    double gasket_time = seconds_since(start);
    bool gasket_ok = std::abs(prof.slope - target) <= 0.05 && gasket_time < 30.0;

    auto start2 = Clock::now();
    auto sys = full_branch_two(kSqrt2, 1.0, 2.0);
    auto rc = repeller_points(sys, 1000000, 62, 2);
    PointCloud pts;
    pts.reserve(rc.points.size());
    for (const auto& p : rc.points) pts.push_back({p[0], p[1]});
    auto rprof = box_count(pts, dyadic_scales(4, 9));
    double rep_time = seconds_since(start2);
    bool repeller_ok = std::abs(rprof.slope - 1.5) <= 0.1 && rep_time < 60.0;

    detail = "gasket slope = " + fmt(prof.slope) + " (" + fmt(gasket_time) + " s), repeller slope = " +
             fmt(rprof.slope) + " (" + fmt(rep_time) + " s)";
    return gasket_ok && repeller_ok;
}

// 9. Monte Carlo Lyapunov exponents within 3 standard errors, under 10 s.
bool criterion_lyapunov_mc(std::string& detail) {
    auto start = Clock::now();
    std::vector<Mat> pair{Mat{{0.5, 0}, {0, 1.0 / 3}}, Mat{{0.25, 0}, {0, 0.2}}};
    auto measure = ErgodicMeasureSpec::bernoulli({0.5, 0.5});
    auto mc = lyapunov_exponents(pair, measure, 10000, 200, 4242, LyapunovMethod::monte_carlo);
    double c1 = -1.5 * std::log(2.0);       // about -1.039721
    double c2 = -0.5 * std::log(15.0);      // about -1.354025
    double elapsed = seconds_since(start);
    bool ok = std::abs(mc.exponents[0] - c1) <= 3.0 * mc.standard_error[0] &&
              std::abs(mc.exponents[1] - c2) <= 3.0 * mc.standard_error[1] && elapsed < 10.0;
    detail = "chi = (" + fmt(mc.exponents[0]) + ", " + fmt(mc.exponents[1]) + "), se = (" +
             fmt(mc.standard_error[0]) + ", " + fmt(mc.standard_error[1]) + "), " +
             fmt(elapsed) + " s";
    return ok;
}

// 10. CLI determinism: identical seeds give byte-identical CSV artifacts.
bool criterion_determinism(std::string& detail) {
    fs::path dir = fs::temp_directory_path() / "fracdim_acceptance";
    fs::create_directories(dir);
    fs::path spec = dir / "gasket.json";
    {
        std::ofstream out(spec);
        out << R"({"kind":"similar","system":{"maps":[
          {"ratio":0.5,"translation":[0.0,0.0]},
          {"ratio":0.5,"translation":[0.5,0.0]},
          {"ratio":0.5,"translation":[0.0,0.5]}]},
          "task":{"count":100000}})";
    }
    auto run = [&](const std::string& out_dir) {
        std::string cmd = std::string(FRACDIM_CLI_PATH) + " boxcount " + spec.string() +
                          " --seed 7 --out " + out_dir + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    fs::path o1 = dir / "run1", o2 = dir / "run2";
    fs::remove_all(o1);
    fs::remove_all(o2);
    if (!run(o1.string()) || !run(o2.string())) {
        detail = "CLI invocation failed";
        return false;
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string a1 = slurp(o1 / "cloud.csv"), a2 = slurp(o2 / "cloud.csv");
    std::string b1 = slurp(o1 / "boxcount.csv"), b2 = slurp(o2 / "boxcount.csv");
    bool ok = !a1.empty() && a1 == a2 && !b1.empty() && b1 == b2;
    detail = ok ? "byte-identical artifacts" : "artifacts differ";
    return ok;
}

}  // namespace

int main() {
    Harness h;
    h.run(1, "Moran equation roots at 1e-10 under 1 ms", criterion_moran);
    h.run(2, "exact overlap and level-2 separation under 10 ms", criterion_overlap);
    h.run(3, "affinity bracket aligns with Lyapunov closed form", criterion_affinity_lyapunov);
    h.run(4, "skew-product dimension closed forms at 1e-8", criterion_barnsley_closed_forms);
    h.run(5, "pressure decrease, s=1 continuity, envelope order", criterion_pressure_structure);
    h.run(6, "Bernoulli variational maximum matches the root at 1e-3", criterion_variational);
    h.run(7, "entropy suite: golden mean, Gibbs constants, laps", criterion_entropy);
    h.run(8, "box-count oracle: gasket 0.05, repeller 0.1", criterion_boxcount);
    h.run(9, "Monte Carlo exponents within 3 standard errors", criterion_lyapunov_mc);
    h.run(10, "CLI artifact determinism under a fixed seed", criterion_determinism);
    if (h.failures) {
        std::cout << h.failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
