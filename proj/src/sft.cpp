#include "fracdim/sft.hpp"

#include <cmath>
#include <limits>

#include "fracdim/errors.hpp"

namespace fracdim {

SubshiftFiniteType::SubshiftFiniteType(std::size_t m, std::vector<std::vector<int>> a)
    : alphabet_size(m), transition(std::move(a)) {
    if (m < 1) throw ValidationError("subshift needs a non-empty alphabet");
    if (transition.size() != m) throw ValidationError("transition matrix must be m x m");
    for (const auto& row : transition)
        if (row.size() != m) throw ValidationError("transition matrix must be m x m");
    for (std::size_t i = 0; i < m; ++i) {
        int rowsum = 0, colsum = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (transition[i][j] != 0 && transition[i][j] != 1)
                throw ValidationError("transition entries must be 0 or 1");
            rowsum += transition[i][j];
            colsum += transition[j][i];
        }
        if (rowsum == 0) throw ValidationError("transition row is all zero");
        if (colsum == 0) throw ValidationError("transition column is all zero");
    }
}

SubshiftFiniteType SubshiftFiniteType::full_shift(std::size_t m) {
    return SubshiftFiniteType(m, std::vector<std::vector<int>>(m, std::vector<int>(m, 1)));
}

bool SubshiftFiniteType::word_admissible(std::span<const int> word) const {
    for (int s : word)
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet_size) return false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k)
        if (!allows(word[k], word[k + 1])) return false;
    return true;
}

std::vector<std::vector<int>> SubshiftFiniteType::admissible_words(std::size_t n,
                                                                   std::size_t budget) const {
    std::vector<std::vector<int>> words;
    if (n == 0) return words;
    std::vector<int> cur;
    cur.reserve(n);
    std::size_t visited = 0;
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            words.push_back(cur);
            return;
        }
        for (std::size_t s = 0; s < alphabet_size; ++s) {
            if (depth > 0 && !allows(cur.back(), s)) continue;
            if (++visited > budget)
                throw NumericError("admissible word budget exceeded; reduce n");
            cur.push_back(static_cast<int>(s));
            self(self, depth + 1);
            cur.pop_back();
        }
    };
    dfs(dfs, 0);
    return words;
}

Mat SubshiftFiniteType::transition_matrix() const {
    Mat a(alphabet_size, alphabet_size);
    for (std::size_t i = 0; i < alphabet_size; ++i)
        for (std::size_t j = 0; j < alphabet_size; ++j) a(i, j) = transition[i][j];
    return a;
}

PrimitivityResult is_primitive(const SubshiftFiniteType& sft) {
    std::size_t m = sft.alphabet_size;
    // Wielandt: primitive iff A^k positive for some k <= m^2 - 2m + 2.
    std::size_t bound = m * m - 2 * m + 2;
    std::vector<std::vector<char>> pow(m, std::vector<char>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) pow[i][j] = sft.transition[i][j] != 0;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (std::size_t i = 0; i < m && positive; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!pow[i][j]) {
                    positive = false;
                    break;
                }
        if (positive) return {true, static_cast<int>(k)};
        std::vector<std::vector<char>> next(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l) {
                if (!pow[i][l]) continue;
                for (std::size_t j = 0; j < m; ++j)
                    if (sft.transition[l][j]) next[i][j] = 1;
            }
        pow = std::move(next);
    }
    return {false, std::nullopt};
}

double topological_entropy(const SubshiftFiniteType& sft) {
    if (!is_primitive(sft).primitive) throw ValidationError("not primitive");
    return std::log(spectral_radius(sft.transition_matrix(), 1e-14));
}

namespace {

void check_probability_vector(const Vec& p) {
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) throw ValidationError("negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("probabilities must sum to 1");
}

}  // namespace

ErgodicMeasureSpec ErgodicMeasureSpec::bernoulli(Vec p) {
    std::size_t m = p.size();
    return bernoulli(std::move(p), SubshiftFiniteType::full_shift(m));
}

ErgodicMeasureSpec ErgodicMeasureSpec::bernoulli(Vec p, SubshiftFiniteType host) {
    check_probability_vector(p);
    if (p.size() != host.alphabet_size)
        throw ValidationError("probability vector size must match alphabet");
    ErgodicMeasureSpec spec{Kind::bernoulli, std::move(p), Mat(), std::move(host)};
    return spec;
}

ErgodicMeasureSpec ErgodicMeasureSpec::markov(Vec stationary, Mat transition,
                                              SubshiftFiniteType host) {
    check_probability_vector(stationary);
    std::size_t m = host.alphabet_size;
    if (stationary.size() != m || transition.rows() != m || transition.cols() != m)
        throw ValidationError("Markov spec dimensions must match alphabet");
    for (std::size_t i = 0; i < m; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double pij = transition(i, j);
            if (pij < 0.0) throw ValidationError("negative Markov transition probability");
            if (pij > 0.0 && !host.allows(i, j))
                throw ValidationError("Markov transition supported outside the subshift");
            rowsum += pij;
        }
        if (std::abs(rowsum - 1.0) > 1e-12) throw ValidationError("Markov rows must sum to 1");
    }
    for (std::size_t j = 0; j < m; ++j) {
        double pj = 0.0;
        for (std::size_t i = 0; i < m; ++i) pj += stationary[i] * transition(i, j);
        if (std::abs(pj - stationary[j]) > 1e-12)
            throw ValidationError("stationary vector is not P-invariant");
    }
    ErgodicMeasureSpec spec{Kind::markov, std::move(stationary), std::move(transition),
                            std::move(host)};
    return spec;
}

double ErgodicMeasureSpec::cylinder_log_mass(std::span<const int> word) const {
    if (word.empty()) return 0.0;
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    for (int s : word)
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet_size()) return neg_inf;
    double lm = p[word[0]] > 0.0 ? std::log(p[word[0]]) : neg_inf;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
        double step = kind == Kind::bernoulli ? p[word[k + 1]] : P(word[k], word[k + 1]);
        if (step <= 0.0) return neg_inf;
        lm += std::log(step);
    }
    return lm;
}

std::vector<int> ErgodicMeasureSpec::sample_word(std::size_t length, Rng& rng) const {
    std::vector<int> word;
    word.reserve(length);
    if (length == 0) return word;
    word.push_back(static_cast<int>(rng.categorical(p)));
    Vec row(alphabet_size());
    for (std::size_t k = 1; k < length; ++k) {
        if (kind == Kind::bernoulli) {
            word.push_back(static_cast<int>(rng.categorical(p)));
        } else {
            std::size_t i = word.back();
            for (std::size_t j = 0; j < alphabet_size(); ++j) row[j] = P(i, j);
            word.push_back(static_cast<int>(rng.categorical(row)));
        }
    }
    return word;
}

double entropy(const ErgodicMeasureSpec& measure) {
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    double h = 0.0;
    if (measure.kind == ErgodicMeasureSpec::Kind::bernoulli) {
        for (double pi : measure.p) h -= xlogx(pi);
    } else {
        for (std::size_t i = 0; i < measure.alphabet_size(); ++i)
            for (std::size_t j = 0; j < measure.alphabet_size(); ++j)
                h -= measure.p[i] * xlogx(measure.P(i, j));
    }
    return h;
}

ErgodicMeasureSpec parry_measure(const SubshiftFiniteType& sft) {
    if (!is_primitive(sft).primitive) throw ValidationError("not primitive");
    PerronData eig = perron_eigen(sft.transition_matrix(), 1e-14);
    std::size_t m = sft.alphabet_size;
    Vec u = eig.left;   // already L1-normalized: sum u = 1
    Vec v = eig.right;
    double uv = 0.0;
    for (std::size_t i = 0; i < m; ++i) uv += u[i] * v[i];
    for (std::size_t i = 0; i < m; ++i) v[i] /= uv;  // now sum u_i v_i = 1
    Vec p(m);
    Mat P(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        p[i] = u[i] * v[i];
        for (std::size_t j = 0; j < m; ++j)
            P(i, j) = sft.transition[i][j] ? v[j] / (eig.value * v[i]) : 0.0;
    }
    // Renormalize away the last ulps so the validating constructor passes.
    for (std::size_t i = 0; i < m; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < m; ++j) rowsum += P(i, j);
        for (std::size_t j = 0; j < m; ++j) P(i, j) /= rowsum;
    }
    double psum = 0.0;
    for (double x : p) psum += x;
    for (double& x : p) x /= psum;
    return ErgodicMeasureSpec::markov(std::move(p), std::move(P), sft);
}

}  // namespace fracdim
