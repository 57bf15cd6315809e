#include "fracdim/selfsimilar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracdim/errors.hpp"
#include "fracdim/rng.hpp"

namespace fracdim {

namespace {
constexpr double kOverlapTol = 1e-12;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Vec SimilarityMap::apply(const Vec& x) const {
    Vec y = rotation.apply(x);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = ratio * y[k] + translation[k];
    return y;
}

SimilarIFS::SimilarIFS(std::vector<SimilarityMap> m) : maps(std::move(m)) {
    if (maps.empty()) throw ValidationError("empty IFS");
    std::size_t d = maps.front().translation.size();
    for (const auto& map : maps) {
        if (map.translation.size() != d || map.rotation.rows() != d || map.rotation.cols() != d)
            throw ValidationError("inconsistent IFS dimensions");
        if (!(map.ratio > 0.0 && map.ratio < 1.0))
            throw ValidationError("contraction ratio must lie in (0,1)");
        Mat gram = map.rotation.transposed() * map.rotation;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)) > 1e-12)
                    throw ValidationError("rotation part is not orthogonal");
    }
}

SimilarIFS SimilarIFS::line(const std::vector<double>& ratios,
                            const std::vector<double>& translations) {
    if (ratios.size() != translations.size()) throw ValidationError("ratio/translation mismatch");
    std::vector<SimilarityMap> maps;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        SimilarityMap m;
        m.ratio = std::abs(ratios[i]);
        m.rotation = Mat(1, 1);
        m.rotation(0, 0) = ratios[i] < 0.0 ? -1.0 : 1.0;
        m.translation = {translations[i]};
        maps.push_back(std::move(m));
    }
    return SimilarIFS(std::move(maps));
}

std::vector<double> SimilarIFS::ratios() const {
    std::vector<double> r;
    for (const auto& m : maps) r.push_back(m.ratio);
    return r;
}

double SimilarIFS::invariant_ball_radius() const {
    double tmax = 0.0, rmax = 0.0;
    for (const auto& m : maps) {
        double norm = 0.0;
        for (double t : m.translation) norm += t * t;
        tmax = std::max(tmax, std::sqrt(norm));
        rmax = std::max(rmax, m.ratio);
    }
    return tmax / (1.0 - rmax);
}

double similarity_dimension(const std::vector<double>& ratios) {
    if (ratios.empty()) throw ValidationError("no contraction ratios");
    for (double r : ratios)
        if (!(std::abs(r) > 0.0 && std::abs(r) < 1.0))
            throw ValidationError("ratios must lie in (0,1)");
    auto moran = [&](double s) {
        double sum = 0.0;
        for (double r : ratios) sum += std::pow(std::abs(r), s);
        return sum - 1.0;
    };
    double hi = 1.0;
    while (moran(hi) > 0.0) hi *= 2.0;
    double lo = 0.0;
    if (moran(0.0) <= 0.0) return 0.0;  // single map: sum r^0 = 1 only for m = 1
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (moran(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Vec natural_projection(const SimilarIFS& ifs, std::span<const int> word, Vec base) {
    if (word.empty()) throw ValidationError("empty word");
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        int s = *it;
        if (s < 0 || static_cast<std::size_t>(s) >= ifs.size())
            throw ValidationError("word symbol out of range");
        base = ifs.maps[s].apply(base);
    }
    return base;
}

std::vector<Vec> attractor_points(const SimilarIFS& ifs, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Vec x(ifs.dim(), 0.0);
    for (int burn = 0; burn < 100; ++burn) x = ifs.maps[rng.index(ifs.size())].apply(x);
    std::vector<Vec> cloud;
    cloud.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        x = ifs.maps[rng.index(ifs.size())].apply(x);
        cloud.push_back(x);
    }
    return cloud;
}

double simdim_measure(const SelfSimilarMeasureSpec& spec) {
    if (spec.p.size() != spec.ifs.size()) throw ValidationError("probability size mismatch");
    double num = 0.0, den = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < spec.p.size(); ++i) {
        if (spec.p[i] <= 0.0) continue;
        any = true;
        num += spec.p[i] * std::log(spec.p[i]);
        den += spec.p[i] * std::log(spec.ifs.maps[i].ratio);
    }
    if (!any) throw ValidationError("probability vector has no mass");
    if (num == 0.0) return 0.0;  // degenerate single atom
    return num / den;
}

namespace {

struct Composition {
    double deriv;  // signed product of ratios
    double value;  // S_w(0)
};

// All length-n compositions evaluated at 0, derivative-major order.
std::vector<Composition> level_compositions(const SimilarIFS& ifs, int n, std::size_t budget) {
    double total = std::pow(static_cast<double>(ifs.size()), n);
    if (total > static_cast<double>(budget))
        throw NumericError("word budget exceeded at level " + std::to_string(n));
    std::vector<Composition> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<double> sr(ifs.size()), tr(ifs.size());
    for (std::size_t i = 0; i < ifs.size(); ++i) {
        sr[i] = ifs.maps[i].signed_ratio_1d();
        tr[i] = ifs.maps[i].translation[0];
    }
    // S_{w1..wn}(0) = t_{w1} + r_{w1} t_{w2} + ... ; recursed front-to-back.
    auto rec = [&](auto&& self, int depth, double deriv, double value) -> void {
        if (depth == n) {
            out.push_back({deriv, value});
            return;
        }
        for (std::size_t i = 0; i < ifs.size(); ++i)
            self(self, depth + 1, deriv * sr[i], value + deriv * tr[i]);
    };
    rec(rec, 0, 1.0, 0.0);
    return out;
}

bool same_derivative(double a, double b) {
    return std::abs(a - b) <= kOverlapTol * std::max(1.0, std::abs(a));
}

double min_gap_same_derivative(std::vector<Composition>& comps) {
    std::sort(comps.begin(), comps.end(),
              [](const Composition& a, const Composition& b) { return a.deriv < b.deriv; });
    double best = kInf;
    std::size_t start = 0;
    for (std::size_t k = 1; k <= comps.size(); ++k) {
        bool boundary =
            k == comps.size() || !same_derivative(comps[k - 1].deriv, comps[k].deriv);
        if (!boundary) continue;
        if (k - start >= 2) {
            std::sort(comps.begin() + start, comps.begin() + k,
                      [](const Composition& a, const Composition& b) { return a.value < b.value; });
            for (std::size_t j = start; j + 1 < k; ++j)
                best = std::min(best, comps[j + 1].value - comps[j].value);
        }
        start = k;
    }
    return best;
}

}  // namespace

SeparationReport separation_delta(const SimilarIFS& ifs, int n, std::size_t budget) {
    if (ifs.dim() != 1) throw ValidationError("separation analysis requires dimension 1");
    if (n < 1) throw ValidationError("level must be >= 1");
    SeparationReport rep;
    rep.n = n;
    for (int k = 1; k <= n; ++k) {
        auto comps = level_compositions(ifs, k, budget);
        double delta = min_gap_same_derivative(comps);
        if (delta <= kOverlapTol) {
            delta = 0.0;
            rep.exact_overlap = true;
        }
        rep.deltas.push_back(delta);
        rep.rates.push_back(delta > 0.0 && std::isfinite(delta)
                                ? -std::log(delta) / static_cast<double>(k)
                                : kNan);
    }
    rep.delta_n = rep.deltas.back();
    return rep;
}

std::optional<OverlapWitness> exact_overlap_search(const SimilarIFS& ifs, int n_max,
                                                   std::size_t budget) {
    if (ifs.dim() != 1) throw ValidationError("overlap search requires dimension 1");
    struct Entry {
        double deriv, value;
        std::vector<int> word;
    };
    std::vector<Entry> entries;
    std::size_t visited = 0;
    std::vector<int> word;
    auto rec = [&](auto&& self, int depth, double deriv, double value) -> void {
        if (depth > 0) entries.push_back({deriv, value, word});
        if (depth == n_max) return;
        for (std::size_t i = 0; i < ifs.size(); ++i) {
            if (++visited > budget) throw NumericError("word budget exceeded");
            word.push_back(static_cast<int>(i));
            self(self, depth + 1, deriv * ifs.maps[i].signed_ratio_1d(),
                 value + deriv * ifs.maps[i].translation[0]);
            word.pop_back();
        }
    };
    rec(rec, 0, 1.0, 0.0);

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.deriv != b.deriv) return a.deriv < b.deriv;
        return a.value < b.value;
    });
    std::optional<OverlapWitness> best;
    auto consider = [&](const Entry& a, const Entry& b) {
        if (std::abs(a.value - b.value) > kOverlapTol) return;
        if (a.word == b.word) return;
        OverlapWitness w{a.word, b.word};
        if (w.word_b < w.word_a) std::swap(w.word_a, w.word_b);
        if (!best || w.word_a < best->word_a ||
            (w.word_a == best->word_a && w.word_b < best->word_b))
            best = std::move(w);
    };
    std::size_t start = 0;
    for (std::size_t k = 1; k <= entries.size(); ++k) {
        bool boundary = k == entries.size() ||
                        std::abs(entries[k].deriv - entries[k - 1].deriv) >
                            kOverlapTol * std::max(1.0, std::abs(entries[k - 1].deriv));
        if (!boundary) continue;
        std::sort(entries.begin() + start, entries.begin() + k, [](const Entry& a, const Entry& b) {
            if (a.value != b.value) return a.value < b.value;
            return a.word < b.word;
        });
        for (std::size_t j = start; j + 1 < k; ++j) consider(entries[j], entries[j + 1]);
        start = k;
    }
    return best;
}

bool interval_overlap_free(const SimilarIFS& ifs) {
    if (ifs.dim() != 1) throw ValidationError("interval check requires dimension 1");
    double R = ifs.invariant_ball_radius();
    std::vector<std::pair<double, double>> images;
    for (const auto& m : ifs.maps) {
        double a = m.signed_ratio_1d() * -R + m.translation[0];
        double b = m.signed_ratio_1d() * R + m.translation[0];
        images.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(images.begin(), images.end());
    for (std::size_t i = 0; i + 1 < images.size(); ++i)
        if (images[i + 1].first < images[i].second - kOverlapTol) return false;
    return true;
}

}  // namespace fracdim
