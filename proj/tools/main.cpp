#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdim/barnsley.hpp"
#include "fracdim/boxcount.hpp"
#include "fracdim/csvio.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/pressure.hpp"
#include "fracdim/selfaffine.hpp"
#include "fracdim/selfsimilar.hpp"
#include "fracdim/sft.hpp"
#include "fracdim/specfile.hpp"

namespace {

using namespace fracdim;

struct CommonOptions {
    std::string spec_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<int> n_max;
    std::optional<long long> points;
    std::optional<double> tol;
    std::string s_grid;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("spec", opt.spec_path, "path to the JSON spec file")->required();
    cmd->add_option("--out", opt.out_dir, "directory for CSV artifacts");
    cmd->add_option("--seed", opt.seed, "random seed (default 0)");
    cmd->add_option("--workers", opt.workers, "worker count (1 = bit-stable reduction)");
    cmd->add_option("--n", opt.n, "level / word length");
    cmd->add_option("--n-max", opt.n_max, "maximum level");
    cmd->add_option("--points", opt.points, "point or trial count");
    cmd->add_option("--s-grid", opt.s_grid, "pressure grid LO:HI:STEP");
    cmd->add_option("--tol", opt.tol, "tolerance");
}

struct GridSpec {
    double lo = 0.0, hi = 2.0, step = 0.05;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (text.empty()) return g;
    std::istringstream in(text);
    char c1 = 0, c2 = 0;
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || g.step <= 0.0 ||
        g.hi < g.lo)
        throw ValidationError("--s-grid must be LO:HI:STEP with STEP > 0");
    return g;
}

std::string artifact_path(const CommonOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

// Effective task parameters: command line beats spec file beats default.
template <typename T, typename U>
T pick(const std::optional<T>& flag, const std::optional<U>& file_value, T fallback) {
    if (flag) return *flag;
    if (file_value) return static_cast<T>(*file_value);
    return fallback;
}

const SimilarIFS& need_similar(const SpecFile& spec) {
    if (!spec.similar) throw ValidationError("this command needs a spec with kind \"similar\"");
    return *spec.similar;
}

const AffineIFS& need_affine(const SpecFile& spec) {
    if (!spec.affine) throw ValidationError("this command needs a spec with kind \"affine\"");
    return *spec.affine;
}

const BarnsleySystem& need_barnsley(const SpecFile& spec) {
    if (!spec.barnsley) throw ValidationError("this command needs a spec with kind \"barnsley\"");
    return *spec.barnsley;
}

const SubshiftFiniteType& need_sft(const SpecFile& spec) {
    if (!spec.sft) throw ValidationError("this command needs a spec with kind \"sft\"");
    return *spec.sft;
}

std::string rounded(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

int cmd_simdim(const SpecFile& spec, const CommonOptions&) {
    const SimilarIFS& ifs = need_similar(spec);
    double s = similarity_dimension(ifs.ratios());
    std::cout << "similarity dimension = " << rounded(s) << " (" << format_double(s) << ")\n";
    std::cout << "clamped to ambient dimension: "
              << format_double(std::min(static_cast<double>(ifs.dim()), s)) << "\n";
    if (!spec.similar_probabilities.empty()) {
        double sd = simdim_measure({ifs, spec.similar_probabilities});
        std::cout << "measure similarity dimension = " << format_double(sd) << " (clamped "
                  << format_double(std::min(static_cast<double>(ifs.dim()), sd)) << ")\n";
    }
    return 0;
}

int cmd_affdim(const SpecFile& spec, const CommonOptions& opt) {
    const AffineIFS& ifs = need_affine(spec);
    AffinityDimensionOptions aopt;
    if (opt.tol) aopt.tol = *opt.tol;
    if (opt.n_max) aopt.max_level = static_cast<std::size_t>(*opt.n_max);
    DimensionReport rep = affinity_dimension(ifs.linear_parts(), aopt);
    std::cout << "affinity dimension bracket = [" << format_double(rep.lower) << ", "
              << format_double(rep.upper) << "]\n";
    std::cout << "note: " << rep.note << "\n";
    return 0;
}

int cmd_lyapdim(const SpecFile& spec, const CommonOptions& opt) {
    const AffineIFS& ifs = need_affine(spec);
    ErgodicMeasureSpec measure =
        spec.measure ? *spec.measure
                     : ErgodicMeasureSpec::bernoulli(
                           Vec(ifs.size(), 1.0 / static_cast<double>(ifs.size())));
    std::size_t n = static_cast<std::size_t>(pick(opt.n, spec.task.n, 10000));
    std::size_t trials = static_cast<std::size_t>(pick(opt.points, spec.task.count, 200LL));
    std::uint64_t seed = pick(opt.seed, spec.task.seed, std::uint64_t{0});
    LyapunovSpectrum sp = lyapunov_exponents(ifs.linear_parts(), measure, n, trials, seed);
    double h = entropy(measure);
    std::cout << "entropy h = " << format_double(h) << "\n";
    for (std::size_t k = 0; k < sp.exponents.size(); ++k)
        std::cout << "chi_" << (k + 1) << " = " << format_double(sp.exponents[k]) << " +- "
                  << format_double(sp.standard_error[k])
                  << (sp.closed_form ? " (closed form)" : "") << "\n";
    auto dim = lyapunov_dimension(h, sp.exponents);
    std::cout << "Lyapunov dimension = " << format_double(dim.value) << " (clamped "
              << format_double(dim.clamped) << ")\n";
    if (!opt.out_dir.empty()) write_spectrum_csv(artifact_path(opt, "spectrum.csv"), sp);
    return 0;
}

int cmd_barnsley_dim(const SpecFile& spec, const CommonOptions& opt) {
    const BarnsleySystem& sys = need_barnsley(spec);
    int n_max = pick(opt.n_max, spec.task.n_max, 6);
    BarnsleyDimensionReport rep = barnsley_dimension(sys, n_max);
    std::cout << "dimension = " << rounded(rep.value()) << "\n";
    std::cout << "dimension bracket = [" << format_double(rep.s_lo) << ", "
              << format_double(rep.s_hi) << "]\n";
    std::cout << "markov base: " << (rep.markov ? "yes" : "no") << "\n";
    std::cout << "derivative class: " << to_string(rep.diagonality) << "\n";
    std::cout << "note: " << rep.note << "\n";
    if (rep.inverse_exact_overlap) {
        std::cout << "inverse-fibre maps have exact overlaps (separation rates undefined)\n";
    } else if (!rep.inverse_separation_rates.empty()) {
        std::cout << "inverse-fibre separation rates:";
        for (double r : rep.inverse_separation_rates) std::cout << " " << format_double(r);
        std::cout << "\n";
    }
    return 0;
}

int cmd_pressure_curve(const SpecFile& spec, const CommonOptions& opt) {
    const BarnsleySystem& sys = need_barnsley(spec);
    ensure_valid(sys);
    int n_max = pick(opt.n_max, spec.task.n_max, 6);
    GridSpec grid = parse_grid(opt.s_grid);
    PressureCurve curve;
    for (double s = grid.lo; s <= grid.hi + 1e-12; s += grid.step) {
        double sv = std::min(s, 2.0);
        HofbauerBounds hb = hofbauer_pressure(sys, sv, n_max);
        curve.samples.push_back({sv, hb.lower, hb.upper});
    }
    for (const auto& smp : curve.samples)
        std::cout << "s = " << format_double(smp.s) << "  P in [" << format_double(smp.lower)
                  << ", " << format_double(smp.upper) << "]\n";
    try {
        BarnsleyDimensionReport rep = barnsley_dimension(sys, n_max);
        curve.root_lo = rep.s_lo;
        curve.root_hi = rep.s_hi;
        std::cout << "root bracket = [" << format_double(curve.root_lo) << ", "
                  << format_double(curve.root_hi) << "]\n";
    } catch (const ValidationError& err) {
        std::cout << "root not located: " << err.what() << "\n";
    }
    if (!opt.out_dir.empty())
        write_curve_csv(artifact_path(opt, "pressure_curve.csv"), curve.samples);
    return 0;
}

int cmd_hesc(const SpecFile& spec, const CommonOptions& opt) {
    const SimilarIFS& ifs = need_similar(spec);
    int n = pick(opt.n, spec.task.n, 8);
    SeparationReport rep = separation_delta(ifs, n);
    for (std::size_t k = 0; k < rep.deltas.size(); ++k)
        std::cout << "n = " << (k + 1) << "  delta = " << format_double(rep.deltas[k])
                  << "  rate = " << format_double(rep.rates[k]) << "\n";
    if (rep.exact_overlap) {
        std::cout << "exact overlap detected\n";
        auto witness = exact_overlap_search(ifs, n);
        if (witness) {
            auto print_word = [](const std::vector<int>& w) {
                std::string s = "(";
                for (std::size_t i = 0; i < w.size(); ++i)
                    s += (i ? "," : "") + std::to_string(w[i]);
                return s + ")";
            };
            std::cout << "witness words: " << print_word(witness->word_a) << " and "
                      << print_word(witness->word_b) << "\n";
        }
    } else {
        std::cout << "no exact overlap up to level " << n << "\n";
    }
    if (!opt.out_dir.empty()) write_separation_csv(artifact_path(opt, "separation.csv"), rep);
    return 0;
}

int cmd_entropy(const SpecFile& spec, const CommonOptions&) {
    const SubshiftFiniteType& sft = need_sft(spec);
    std::cout << "topological entropy = " << format_double(topological_entropy(sft)) << "\n";
    auto parry = parry_measure(sft);
    std::cout << "parry measure entropy = " << format_double(entropy(parry)) << "\n";
    if (spec.measure)
        std::cout << "measure entropy = " << format_double(entropy(*spec.measure)) << "\n";
    return 0;
}

int cmd_boxcount(const SpecFile& spec, const CommonOptions& opt) {
    std::uint64_t seed = pick(opt.seed, spec.task.seed, std::uint64_t{0});
    long long count = pick(opt.points, spec.task.count, 1000000LL);
    std::vector<double> scales = spec.task.scales.empty() ? dyadic_scales() : spec.task.scales;
    double tol = pick(opt.tol, spec.task.tolerance, 0.05);

    PointCloud cloud;
    std::optional<double> analytic;
    if (spec.kind == SpecFile::Kind::similar) {
        const SimilarIFS& ifs = need_similar(spec);
        cloud = attractor_points(ifs, static_cast<std::size_t>(count), seed);
        analytic = similarity_dimension(ifs.ratios());
    } else if (spec.kind == SpecFile::Kind::barnsley) {
        const BarnsleySystem& sys = need_barnsley(spec);
        double lambda_min = 1e300;
        for (const auto& br : sys.branches)
            lambda_min = std::min(lambda_min, std::abs(br.lambda));
        int default_depth =
            static_cast<int>(std::ceil(9.0 * std::log(10.0) / std::log(lambda_min))) + 2;
        int depth = pick(opt.n, spec.task.n, default_depth);
        RepellerCloud rc = repeller_points(sys, static_cast<std::size_t>(count), depth, seed);
        std::cout << "tail bound = " << format_double(rc.tail_bound)
                  << ", resamples = " << rc.resamples << "\n";
        for (const auto& p : rc.points) cloud.push_back({p[0], p[1]});
        try {
            analytic = barnsley_dimension(sys, pick(opt.n_max, spec.task.n_max, 6)).value();
        } catch (const ValidationError&) {
            // dimension prediction unavailable; report the slope alone
        }
    } else {
        throw ValidationError("boxcount needs a \"similar\" or \"barnsley\" system");
    }

    BoxCountProfile prof = box_count(cloud, scales);
    std::cout << "fitted slope = " << format_double(prof.slope)
              << " (R^2 = " << format_double(prof.r_squared) << ")\n";
    if (analytic) {
        CrosscheckVerdict verdict = dimension_crosscheck(*analytic, prof, tol);
        std::cout << verdict.text << "\n";
    }
    if (!opt.out_dir.empty()) {
        write_points_csv(artifact_path(opt, "cloud.csv"), cloud);
        write_profile_csv(artifact_path(opt, "boxcount.csv"), prof);
    }
    return 0;
}

int cmd_validate(const SpecFile& spec, const CommonOptions&) {
    switch (spec.kind) {
        case SpecFile::Kind::similar: {
            const SimilarIFS& ifs = need_similar(spec);
            std::cout << "similar system: " << ifs.size() << " maps in dimension " << ifs.dim()
                      << ", valid\n";
            if (ifs.dim() == 1)
                std::cout << "pairwise image intervals disjoint: "
                          << (interval_overlap_free(ifs) ? "yes" : "no") << "\n";
            return 0;
        }
        case SpecFile::Kind::affine: {
            const AffineIFS& ifs = need_affine(spec);
            std::cout << "affine system: " << ifs.size() << " maps in dimension " << ifs.dim()
                      << ", valid\n";
            if (ifs.dim() == 2) {
                BhrReport rep = bhr_conditions(ifs);
                std::cout << "lower triangular: " << (rep.all_lower_triangular ? "yes" : "no")
                          << "\n";
                std::cout << "triangular contrast a_i < c_i: "
                          << (rep.triangular_contrast ? "yes" : "no") << "\n";
                std::cout << "invariant line search: " << rep.summary << "\n";
                std::cout << "separation: " << rep.separation << "\n";
            }
            return 0;
        }
        case SpecFile::Kind::barnsley: {
            const BarnsleySystem& sys = need_barnsley(spec);
            BarnsleyDiagnostics diag = validate(sys);
            for (std::size_t i = 0; i < diag.images.size(); ++i)
                std::cout << "branch " << i << " image = [" << format_double(diag.images[i].first)
                          << ", " << format_double(diag.images[i].second) << "]\n";
            for (const auto& issue : diag.issues) std::cout << "issue: " << issue << "\n";
            if (!diag.valid) throw ValidationError(diag.issues.front());
            std::cout << "valid barnsley system with " << sys.branch_count() << " branches\n";
            std::cout << "expansion hypotheses (|gamma| > |lambda| > 1): "
                      << (diag.expansion_ordered ? "yes" : "no") << "\n";
            std::cout << "markov base: " << (is_markov(sys) ? "yes" : "no") << "\n";
            std::cout << "derivative class: " << to_string(classify_diagonality(sys).cls) << "\n";
            return 0;
        }
        case SpecFile::Kind::sft: {
            const SubshiftFiniteType& sft = need_sft(spec);
            auto prim = is_primitive(sft);
            std::cout << "subshift on " << sft.alphabet_size << " symbols, valid\n";
            std::cout << "primitive: " << (prim.primitive ? "yes" : "no");
            if (prim.power) std::cout << " (power " << *prim.power << ")";
            std::cout << "\n";
            return 0;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracdim: fractal dimensions via pressure root-finding and box counting"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const SpecFile&, const CommonOptions&);
    };
    const Command commands[] = {
        {"simdim", "similarity dimension of a self-similar system", cmd_simdim},
        {"affdim", "affinity dimension of a self-affine system", cmd_affdim},
        {"lyapdim", "Lyapunov exponents and dimension of a driven system", cmd_lyapdim},
        {"barnsley-dim", "dimension of a skew-product repeller", cmd_barnsley_dim},
        {"pressure-curve", "Markov/Hofbauer pressure over an s-grid", cmd_pressure_curve},
        {"hesc", "cylinder separation sequence and exact-overlap search", cmd_hesc},
        {"entropy", "entropies of a subshift of finite type", cmd_entropy},
        {"boxcount", "box-counting estimate of a generated point cloud", cmd_boxcount},
        {"validate", "validate a system spec and print diagnostics", cmd_validate},
    };

    std::vector<CommonOptions> opts(std::size(commands));
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
        add_common(sub, opts[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    for (std::size_t i = 0; i < std::size(commands); ++i) {
        if (app.get_subcommands().front()->get_name() == commands[i].name) {
            const CommonOptions& opt = opts[i];
            try {
                if (opt.workers < 1) throw ValidationError("--workers must be >= 1");
                SpecFile spec = load_spec_file(opt.spec_path);
                return commands[i].run(spec, opt);
            } catch (const ValidationError& err) {
                std::cerr << "validation error: " << err.what() << "\n";
                return 2;
            } catch (const NumericError& err) {
                std::cerr << "numeric error: " << err.what() << "\n";
                return 3;
            }
        }
    }
    return 64;
}
