#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdim/barnsley.hpp"
#include "fracdim/selfaffine.hpp"
#include "fracdim/selfsimilar.hpp"
#include "fracdim/sft.hpp"

namespace fracdim {

/// Task parameters from the spec file; command-line flags override them.
struct TaskParams {
    std::optional<int> n;
    std::optional<int> n_max;
    std::optional<long long> count;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::vector<double> scales;
};

/// One self-contained run description: a single system of one kind plus
/// task parameters. Parsed from a JSON document with top-level keys
/// `kind`, `system`, `task`.
struct SpecFile {
    enum class Kind { similar, affine, barnsley, sft };

    Kind kind = Kind::similar;
    std::optional<SimilarIFS> similar;
    Vec similar_probabilities;  // optional companion measure weights
    std::optional<AffineIFS> affine;
    std::optional<ErgodicMeasureSpec> measure;  // affine / sft systems
    std::optional<BarnsleySystem> barnsley;
    std::optional<SubshiftFiniteType> sft;
    TaskParams task;
};

/// Parse a spec document; throws ValidationError naming the failing field.
SpecFile parse_spec_text(const std::string& text);
SpecFile load_spec_file(const std::string& path);

}  // namespace fracdim
