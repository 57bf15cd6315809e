#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracdim/matrix.hpp"
#include "fracdim/rng.hpp"

namespace fracdim {

/// Subshift of finite type: alphabet {0,...,m-1} plus a 0/1 transition
/// matrix. A finite word (i1...in) is admissible iff every step i_k -> i_{k+1}
/// is allowed. Every row and column must contain a 1 (every symbol occurs).
struct SubshiftFiniteType {
    std::size_t alphabet_size = 0;
    std::vector<std::vector<int>> transition;

    SubshiftFiniteType(std::size_t m, std::vector<std::vector<int>> a);
    static SubshiftFiniteType full_shift(std::size_t m);

    bool allows(std::size_t i, std::size_t j) const { return transition[i][j] != 0; }
    bool word_admissible(std::span<const int> word) const;

    /// All admissible words of length n, lexicographic.
    std::vector<std::vector<int>> admissible_words(std::size_t n,
                                                   std::size_t budget = 10000000) const;

    Mat transition_matrix() const;
};

struct PrimitivityResult {
    bool primitive = false;
    std::optional<int> power;  // least k with A^k > 0 entrywise
};

/// Primitivity test via the Wielandt bound: A is primitive iff A^k > 0 for
/// some k <= m^2 - 2m + 2.
PrimitivityResult is_primitive(const SubshiftFiniteType& sft);

/// log of the Perron eigenvalue, in nats. Throws on non-primitive input.
double topological_entropy(const SubshiftFiniteType& sft);

/// Bernoulli or Markov measure on a subshift. Markov specs carry the
/// stationary vector explicitly and are validated against it.
struct ErgodicMeasureSpec {
    enum class Kind { bernoulli, markov };

    Kind kind = Kind::bernoulli;
    Vec p;     // Bernoulli probabilities, or the Markov stationary vector
    Mat P;     // Markov transition matrix (rows sum to 1); empty for Bernoulli
    SubshiftFiniteType host;

    static ErgodicMeasureSpec bernoulli(Vec p);
    static ErgodicMeasureSpec bernoulli(Vec p, SubshiftFiniteType host);
    static ErgodicMeasureSpec markov(Vec stationary, Mat transition, SubshiftFiniteType host);

    std::size_t alphabet_size() const { return p.size(); }

    /// Marginal probability of each symbol (p itself for both kinds).
    const Vec& symbol_marginals() const { return p; }

    /// log mu[word]; -inf for zero-mass cylinders.
    double cylinder_log_mass(std::span<const int> word) const;

    std::vector<int> sample_word(std::size_t length, Rng& rng) const;
};

/// Entropy in nats: Bernoulli -sum p log p, Markov -sum p_i P_ij log P_ij,
/// with 0 log 0 = 0.
double entropy(const ErgodicMeasureSpec& measure);

/// Maximal-entropy Markov measure of a primitive subshift, built from the
/// left/right Perron eigenvectors u, v normalized so sum(u) = sum(u_i v_i) = 1:
/// p_i = u_i v_i, P_ij = A_ij v_j / (lambda v_i). Its entropy equals the
/// topological entropy.
ErgodicMeasureSpec parry_measure(const SubshiftFiniteType& sft);

}  // namespace fracdim
