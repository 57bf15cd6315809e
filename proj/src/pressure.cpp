#include "fracdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

Mat weighted_transfer_matrix(const SubshiftFiniteType& sft, const DepthOnePotential& phi) {
    std::size_t m = sft.alphabet_size;
    if (phi.values.size() != m) throw ValidationError("potential size must match alphabet");
    Mat b(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            b(i, j) = sft.allows(i, j) ? std::exp(phi.values[j]) : 0.0;
    return b;
}

}  // namespace

AdditivePressureResult additive_pressure(const SubshiftFiniteType& sft,
                                         const DepthOnePotential& phi, std::size_t n) {
    if (n < 1) throw ValidationError("pressure needs n >= 1");
    if (!is_primitive(sft).primitive) throw ValidationError("not primitive");
    Mat b = weighted_transfer_matrix(sft, phi);

    // sum over admissible n-words of prod_k exp(phi(w_k)) = d^T B^{n-1} 1,
    // d_i = exp(phi_i). Evaluated by n-1 matrix-vector products.
    std::size_t m = sft.alphabet_size;
    Vec v(m, 1.0);
    double logscale = 0.0;
    for (std::size_t step = 1; step < n; ++step) {
        v = b.apply(v);
        double mx = *std::max_element(v.begin(), v.end());
        for (double& x : v) x /= mx;
        logscale += std::log(mx);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += std::exp(phi.values[i]) * v[i];
    double value = (std::log(total) + logscale) / static_cast<double>(n);
    return {value, std::log(spectral_radius(b, 1e-14))};
}

GibbsMeasureResult gibbs_markov_measure(const SubshiftFiniteType& sft,
                                        const DepthOnePotential& phi, int check_depth) {
    if (!is_primitive(sft).primitive) throw ValidationError("not primitive");
    Mat b = weighted_transfer_matrix(sft, phi);
    PerronData eig = perron_eigen(b, 1e-14);
    std::size_t m = sft.alphabet_size;

    Vec u = eig.left, v = eig.right;
    double uv = 0.0;
    for (std::size_t i = 0; i < m; ++i) uv += u[i] * v[i];
    Vec p(m);
    Mat P(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        p[i] = u[i] * v[i] / uv;
        for (std::size_t j = 0; j < m; ++j)
            P(i, j) = b(i, j) > 0.0 ? b(i, j) * v[j] / (eig.value * v[i]) : 0.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < m; ++j) rowsum += P(i, j);
        for (std::size_t j = 0; j < m; ++j) P(i, j) /= rowsum;
    }

    GibbsMeasureResult out{ErgodicMeasureSpec::markov(std::move(p), std::move(P), sft),
                           std::log(eig.value), 0.0, 0.0, check_depth};

    // Certify the Gibbs ratio on every cylinder up to check_depth.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int len = 1; len <= check_depth; ++len) {
        for (const auto& word : sft.admissible_words(static_cast<std::size_t>(len))) {
            double lmass = out.measure.cylinder_log_mass(word);
            double birkhoff = 0.0;
            for (int sym : word) birkhoff += phi.values[sym];
            double ratio = std::exp(lmass - (-len * out.pressure + birkhoff));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    out.c_lower = lo;
    out.c_upper = hi;
    return out;
}

SingularValueProfile singular_value_profile(const Mat& m) {
    Vec sv = singular_values(m);
    if (sv.back() <= 1e-14 * std::max(sv.front(), 1e-300)) throw ValidationError("rank-deficient");
    return {sv.size(), std::move(sv)};
}

double singular_value_function(const Mat& m, double s) {
    if (s < 0.0) throw ValidationError("singular value function needs s >= 0");
    Vec sv = singular_value_profile(m).values;
    std::size_t d = sv.size();
    if (s >= static_cast<double>(d)) {
        double logdet = 0.0;
        for (double a : sv) logdet += std::log(a);
        return std::exp(s / static_cast<double>(d) * logdet);
    }
    std::size_t k = static_cast<std::size_t>(std::floor(s));
    double logv = 0.0;
    for (std::size_t j = 0; j < k; ++j) logv += std::log(sv[j]);
    logv += (s - static_cast<double>(k)) * std::log(sv[k]);
    return std::exp(logv);
}

SubadditivePressureResult subadditive_pressure(const std::vector<Mat>& matrices, double s,
                                               std::size_t n, std::size_t budget) {
    if (matrices.empty()) throw ValidationError("no matrices");
    if (n < 1) throw ValidationError("level must be >= 1");
    std::size_t m = matrices.size();
    double words = std::pow(static_cast<double>(m), static_cast<double>(n));
    if (words > static_cast<double>(budget))
        throw NumericError("word budget exceeded at level " + std::to_string(n) +
                           "; reduce n");

    // Depth-first over words; the product along the current path is reused
    // for all its extensions. level_sum[k] accumulates sum phi^s over |w|=k+1.
    std::vector<double> level_sum(n, 0.0);
    std::vector<Mat> path;
    path.reserve(n);
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        for (std::size_t i = 0; i < m; ++i) {
            Mat prod = depth == 0 ? matrices[i] : path.back() * matrices[i];
            level_sum[depth] += singular_value_function(prod, s);
            if (depth + 1 < n) {
                path.push_back(std::move(prod));
                self(self, depth + 1);
                path.pop_back();
            }
        }
    };
    dfs(dfs, 0);

    SubadditivePressureResult out;
    out.estimate = std::log(level_sum[n - 1]) / static_cast<double>(n);
    out.upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        out.upper = std::min(out.upper, std::log(level_sum[k]) / static_cast<double>(k + 1));
    return out;
}

DimensionReport affinity_dimension(const std::vector<Mat>& matrices,
                                   const AffinityDimensionOptions& opts) {
    if (matrices.empty()) throw ValidationError("no matrices");
    std::size_t d = matrices.front().rows();
    for (const Mat& a : matrices) {
        Vec sv = singular_values(a);
        if (sv.front() >= 1.0) throw ValidationError("matrices must be contracting");
    }
    // Deepest level within budget; exact anyway for multiplicative families.
    std::size_t level = 1;
    double count = static_cast<double>(matrices.size());
    while (level < opts.max_level &&
           count * static_cast<double>(matrices.size()) <= static_cast<double>(opts.word_budget)) {
        count *= static_cast<double>(matrices.size());
        ++level;
    }
    auto upper_pressure = [&](double s) {
        return subadditive_pressure(matrices, s, level, opts.word_budget).upper;
    };
    double hi = 2.0 * static_cast<double>(d);
    RootBracket br = pressure_root(upper_pressure, 0.0, hi, opts.tol);
    DimensionReport rep;
    rep.lower = br.lo;
    rep.upper = br.hi;
    rep.note = "root of the level-" + std::to_string(level) + " upper-bound pressure";
    return rep;
}

RootBracket pressure_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int max_steps) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, lo};
    if (fhi == 0.0) return {hi, hi};
    if (flo < 0.0 || fhi > 0.0) throw NumericError("root not bracketed");
    for (int step = 0; step < max_steps && hi - lo > tol; ++step) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return {mid, mid};
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace fracdim
