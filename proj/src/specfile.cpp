#include "fracdim/specfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double number_field(const json& j, const std::string& path, const std::string& key) {
    return number_at(field(j, path, key), path + "." + key);
}

std::vector<double> number_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Mat matrix_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    std::size_t rows = j.size();
    std::vector<std::vector<double>> data;
    for (std::size_t i = 0; i < rows; ++i)
        data.push_back(number_array(j[i], path + "[" + std::to_string(i) + "]"));
    std::size_t cols = data.front().size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (data[i].size() != cols) fail(path, "rows have unequal lengths");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = data[i][k];
    }
    return m;
}

SimilarIFS parse_similar(const json& sys, const std::string& path) {
    const json& maps = field(sys, path, "maps");
    if (!maps.is_array() || maps.empty()) fail(path + ".maps", "expected a non-empty array");
    std::vector<SimilarityMap> parsed;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::string mp = path + ".maps[" + std::to_string(i) + "]";
        const json& m = maps[i];
        SimilarityMap sm;
        double ratio = number_field(m, mp, "ratio");
        sm.translation = number_array(field(m, mp, "translation"), mp + ".translation");
        std::size_t d = sm.translation.size();
        if (m.contains("rotation")) {
            sm.rotation = matrix_at(m["rotation"], mp + ".rotation");
            sm.ratio = std::abs(ratio);
            if (ratio < 0.0) fail(mp + ".ratio", "signed ratios only without a rotation part");
        } else {
            sm.rotation = Mat::identity(d);
            sm.ratio = std::abs(ratio);
            if (ratio < 0.0) {
                if (d != 1) fail(mp + ".ratio", "signed ratio shorthand is 1-d only");
                sm.rotation(0, 0) = -1.0;
            }
        }
        parsed.push_back(std::move(sm));
    }
    return SimilarIFS(std::move(parsed));
}

AffineIFS parse_affine(const json& sys, const std::string& path) {
    const json& maps = field(sys, path, "maps");
    if (!maps.is_array() || maps.empty()) fail(path + ".maps", "expected a non-empty array");
    std::vector<AffineMap> parsed;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::string mp = path + ".maps[" + std::to_string(i) + "]";
        AffineMap am;
        am.linear = matrix_at(field(maps[i], mp, "matrix"), mp + ".matrix");
        am.translation = number_array(field(maps[i], mp, "translation"), mp + ".translation");
        parsed.push_back(std::move(am));
    }
    return AffineIFS(std::move(parsed));
}

BarnsleySystem parse_barnsley(const json& sys, const std::string& path) {
    BarnsleySystem b;
    b.partition = number_array(field(sys, path, "partition"), path + ".partition");
    const json& branches = field(sys, path, "branches");
    if (!branches.is_array()) fail(path + ".branches", "expected an array");
    for (std::size_t i = 0; i < branches.size(); ++i) {
        std::string bp = path + ".branches[" + std::to_string(i) + "]";
        BarnsleyBranch br;
        br.gamma = number_field(branches[i], bp, "gamma");
        br.v = number_field(branches[i], bp, "v");
        br.a = number_field(branches[i], bp, "a");
        br.lambda = number_field(branches[i], bp, "lambda");
        br.t = number_field(branches[i], bp, "t");
        b.branches.push_back(br);
    }
    return b;
}

SubshiftFiniteType parse_sft(const json& sys, const std::string& path) {
    Mat t = matrix_at(field(sys, path, "transition"), path + ".transition");
    if (t.rows() != t.cols()) fail(path + ".transition", "must be square");
    std::vector<std::vector<int>> rows(t.rows(), std::vector<int>(t.cols()));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            double v = t(i, j);
            if (v != 0.0 && v != 1.0) fail(path + ".transition", "entries must be 0 or 1");
            rows[i][j] = static_cast<int>(v);
        }
    return SubshiftFiniteType(t.rows(), std::move(rows));
}

ErgodicMeasureSpec parse_measure(const json& m, const std::string& path,
                                 const SubshiftFiniteType& host) {
    const json& type = field(m, path, "type");
    if (!type.is_string()) fail(path + ".type", "expected \"bernoulli\" or \"markov\"");
    std::string kind = type.get<std::string>();
    Vec p = number_array(field(m, path, "p"), path + ".p");
    if (kind == "bernoulli") return ErgodicMeasureSpec::bernoulli(std::move(p), host);
    if (kind == "markov") {
        Mat P = matrix_at(field(m, path, "P"), path + ".P");
        return ErgodicMeasureSpec::markov(std::move(p), std::move(P), host);
    }
    fail(path + ".type", "unknown measure type '" + kind + "'");
}

}  // namespace

SpecFile parse_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ValidationError(std::string("spec is not valid JSON: ") + err.what());
    }
    const json& kind_j = field(doc, "spec", "kind");
    if (!kind_j.is_string()) fail("spec.kind", "expected a string");
    std::string kind = kind_j.get<std::string>();
    const json& sys = field(doc, "spec", "system");

    SpecFile out;
    if (kind == "similar") {
        out.kind = SpecFile::Kind::similar;
        out.similar = parse_similar(sys, "system");
        if (sys.contains("probabilities"))
            out.similar_probabilities = number_array(sys["probabilities"], "system.probabilities");
    } else if (kind == "affine") {
        out.kind = SpecFile::Kind::affine;
        out.affine = parse_affine(sys, "system");
        if (sys.contains("measure")) {
            SubshiftFiniteType host = SubshiftFiniteType::full_shift(out.affine->size());
            out.measure = parse_measure(sys["measure"], "system.measure", host);
        }
    } else if (kind == "barnsley") {
        out.kind = SpecFile::Kind::barnsley;
        out.barnsley = parse_barnsley(sys, "system");
    } else if (kind == "sft") {
        out.kind = SpecFile::Kind::sft;
        out.sft = parse_sft(sys, "system");
        if (sys.contains("measure"))
            out.measure = parse_measure(sys["measure"], "system.measure", *out.sft);
    } else {
        fail("spec.kind", "unknown kind '" + kind + "'");
    }

    if (doc.contains("task")) {
        const json& task = doc["task"];
        if (!task.is_object()) fail("task", "expected an object");
        if (task.contains("n")) out.task.n = static_cast<int>(number_at(task["n"], "task.n"));
        if (task.contains("n_max"))
            out.task.n_max = static_cast<int>(number_at(task["n_max"], "task.n_max"));
        if (task.contains("count"))
            out.task.count = static_cast<long long>(number_at(task["count"], "task.count"));
        if (task.contains("seed"))
            out.task.seed = static_cast<std::uint64_t>(number_at(task["seed"], "task.seed"));
        if (task.contains("tolerance"))
            out.task.tolerance = number_at(task["tolerance"], "task.tolerance");
        if (task.contains("scales")) out.task.scales = number_array(task["scales"], "task.scales");
    }
    return out;
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

}  // namespace fracdim
