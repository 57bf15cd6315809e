#include "fracdim/selfaffine.hpp"

#include <algorithm>
#include <cmath>

#include "fracdim/errors.hpp"
#include "fracdim/rng.hpp"

namespace fracdim {

AffineIFS::AffineIFS(std::vector<AffineMap> m) : maps(std::move(m)) {
    if (maps.empty()) throw ValidationError("empty IFS");
    std::size_t d = maps.front().translation.size();
    for (const auto& map : maps) {
        if (map.translation.size() != d || map.linear.rows() != d || map.linear.cols() != d)
            throw ValidationError("inconsistent IFS dimensions");
        Vec sv = singular_values(map.linear);
        if (sv.front() >= 1.0) throw ValidationError("linear part must contract (norm < 1)");
        if (sv.back() <= 1e-14) throw ValidationError("linear part must be non-singular");
    }
}

std::vector<Mat> AffineIFS::linear_parts() const {
    std::vector<Mat> out;
    for (const auto& m : maps) out.push_back(m.linear);
    return out;
}

namespace {

bool all_diagonal(const std::vector<Mat>& mats) {
    for (const Mat& a : mats)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (i != j && a(i, j) != 0.0) return false;
    return true;
}

LyapunovSpectrum diagonal_closed_form(const std::vector<Mat>& mats, const Vec& marginals) {
    std::size_t d = mats.front().rows();
    Vec chi(d, 0.0);
    for (std::size_t slot = 0; slot < d; ++slot)
        for (std::size_t i = 0; i < mats.size(); ++i)
            chi[slot] += marginals[i] * std::log(std::abs(mats[i](slot, slot)));
    std::sort(chi.begin(), chi.end(), std::greater<double>());
    LyapunovSpectrum out;
    out.exponents = std::move(chi);
    out.standard_error.assign(d, 0.0);
    out.closed_form = true;
    return out;
}

// Modified Gram-Schmidt; returns log |diagonal of R| and leaves Q in place.
Vec orthonormalize_columns(Mat& q) {
    std::size_t d = q.rows();
    Vec logdiag(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) dot += q(i, k) * q(i, j);
            for (std::size_t i = 0; i < d; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < d; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        logdiag[j] = std::log(norm);
        for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
    }
    return logdiag;
}

}  // namespace

LyapunovSpectrum lyapunov_exponents(const std::vector<Mat>& matrices,
                                    const ErgodicMeasureSpec& measure, std::size_t n,
                                    std::size_t trials, std::uint64_t seed,
                                    LyapunovMethod method) {
    if (matrices.empty()) throw ValidationError("no matrices");
    if (measure.alphabet_size() != matrices.size())
        throw ValidationError("measure alphabet does not match matrix count");
    if (n < 1 || trials < 1) throw ValidationError("need n >= 1 and trials >= 1");

    if (method == LyapunovMethod::closed_form ||
        (method == LyapunovMethod::automatic && all_diagonal(matrices))) {
        if (!all_diagonal(matrices))
            throw ValidationError("closed form requires diagonal matrices");
        LyapunovSpectrum out = diagonal_closed_form(matrices, measure.symbol_marginals());
        out.entropy = entropy(measure);
        return out;
    }

    std::size_t d = matrices.front().rows();
    constexpr std::size_t kReorthPeriod = 20;
    std::vector<Vec> per_trial(trials, Vec(d, 0.0));
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(Rng::derive_seed(seed, t));
        std::vector<int> word = measure.sample_word(n, rng);
        Mat q = Mat::identity(d);
        Vec logsum(d, 0.0);
        std::size_t since = 0;
        for (std::size_t step = 0; step < n; ++step) {
            q = matrices[word[step]] * q;
            if (++since == kReorthPeriod || step + 1 == n) {
                Vec logdiag = orthonormalize_columns(q);
                for (std::size_t k = 0; k < d; ++k) logsum[k] += logdiag[k];
                since = 0;
            }
        }
        for (std::size_t k = 0; k < d; ++k)
            per_trial[t][k] = logsum[k] / static_cast<double>(n);
    }

    LyapunovSpectrum out;
    out.exponents.assign(d, 0.0);
    out.standard_error.assign(d, 0.0);
    out.entropy = entropy(measure);
    out.trials = static_cast<int>(trials);
    for (std::size_t k = 0; k < d; ++k) {
        double mean = 0.0;
        for (std::size_t t = 0; t < trials; ++t) mean += per_trial[t][k];
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            double dev = per_trial[t][k] - mean;
            var += dev * dev;
        }
        var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
        out.exponents[k] = mean;
        out.standard_error[k] = std::sqrt(var / static_cast<double>(trials));
    }
    // Growth rates of orthogonalized columns come out ordered in expectation;
    // enforce the ordering for ties produced by noise.
    for (std::size_t k = 0; k + 1 < d; ++k)
        if (out.exponents[k] < out.exponents[k + 1]) {
            std::swap(out.exponents[k], out.exponents[k + 1]);
            std::swap(out.standard_error[k], out.standard_error[k + 1]);
        }
    return out;
}

LyapunovDimensionResult lyapunov_dimension(double h, const Vec& exponents) {
    if (h < 0.0) throw ValidationError("entropy must be non-negative");
    if (exponents.empty()) throw ValidationError("empty spectrum");
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        if (exponents[k] >= 0.0) throw ValidationError("exponents must be negative");
        if (k > 0 && exponents[k - 1] < exponents[k])
            throw ValidationError("exponents must be sorted descending");
    }
    std::size_t d = exponents.size();
    LyapunovDimensionResult out;
    if (h == 0.0) {
        out.value = 0.0;
        out.clamped = 0.0;
        return out;
    }
    // Largest k with h + chi_1 + ... + chi_k > 0 (k = 0 always qualifies).
    std::size_t k = 0;
    double acc = h;
    for (std::size_t i = 0; i < d; ++i) {
        acc += exponents[i];
        if (acc > 0.0)
            k = i + 1;
        else
            break;
    }
    double total = h;
    for (std::size_t i = 0; i < k; ++i) total += exponents[i];
    if (k == d) {
        double sum = 0.0;
        for (double chi : exponents) sum += chi;
        out.value = static_cast<double>(d) * h / (-sum);
    } else {
        out.value = static_cast<double>(k) + total / (-exponents[k]);
    }
    out.k = static_cast<int>(k);
    out.clamped = std::min(static_cast<double>(d), out.value);
    return out;
}

namespace {

// Real eigendirections of a 2x2 matrix (unit vectors), empty for complex pairs.
std::vector<Vec> real_eigendirections(const Mat& a) {
    double tr = a(0, 0) + a(1, 1);
    double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    double disc = tr * tr - 4.0 * det;
    std::vector<Vec> dirs;
    if (disc < -1e-14 * std::max(1.0, tr * tr)) return dirs;
    disc = std::max(disc, 0.0);
    for (double sign : {1.0, -1.0}) {
        double lam = 0.5 * (tr + sign * std::sqrt(disc));
        // (a - lam I) v = 0
        double r1x = a(0, 0) - lam, r1y = a(0, 1);
        double r2x = a(1, 0), r2y = a(1, 1) - lam;
        Vec v;
        if (std::abs(r1x) + std::abs(r1y) > std::abs(r2x) + std::abs(r2y))
            v = {-r1y, r1x};
        else
            v = {-r2y, r2x};
        double norm = std::hypot(v[0], v[1]);
        if (norm < 1e-12) v = {1.0, 0.0};  // scalar matrix: any direction
        else {
            v[0] /= norm;
            v[1] /= norm;
        }
        dirs.push_back(v);
    }
    return dirs;
}

bool line_invariant_under(const Mat& a, const Vec& v, double tol) {
    Vec w = a.apply(v);
    double cross = w[0] * v[1] - w[1] * v[0];
    double scale = std::hypot(w[0], w[1]);
    return std::abs(cross) <= tol * std::max(1.0, scale);
}

}  // namespace

BhrReport bhr_conditions(const AffineIFS& ifs) {
    if (ifs.dim() != 2) throw ValidationError("applicability checks require dimension 2");
    BhrReport rep;

    rep.all_lower_triangular = true;
    rep.triangular_contrast = true;
    for (const auto& m : ifs.maps) {
        if (std::abs(m.linear(0, 1)) > 1e-14) rep.all_lower_triangular = false;
        if (!(m.linear(0, 0) < m.linear(1, 1))) rep.triangular_contrast = false;
    }
    if (!rep.all_lower_triangular) rep.triangular_contrast = false;

    // Candidate invariant lines: real eigendirections of the generators and of
    // their pairwise products; a common line must be invariant under every
    // generator. Depth-2 products only widen the candidate pool.
    std::vector<Mat> pool = ifs.linear_parts();
    std::size_t g = pool.size();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) pool.push_back(pool[i] * pool[j]);
    constexpr double kTol = 1e-10;
    for (const Mat& cand : pool) {
        for (const Vec& v : real_eigendirections(cand)) {
            bool common = true;
            for (const auto& m : ifs.maps)
                if (!line_invariant_under(m.linear, v, kTol)) {
                    common = false;
                    break;
                }
            if (common) {
                rep.obstruction_found = true;
                rep.invariant_line = v;
                break;
            }
        }
        if (rep.obstruction_found) break;
    }
    rep.summary = rep.obstruction_found ? "common invariant line found"
                                        : "no obstruction found";
    return rep;
}

}  // namespace fracdim
