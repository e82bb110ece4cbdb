#include "ramanmp/model_io.hpp"

#include <fstream>

#include "serde.hpp"

namespace ramanmp {

using nlohmann::json;

PolymerType ModelBundle::predict(std::span<const double> x) const {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

std::vector<double> ModelBundle::vote_fractions(std::span<const double> x) const {
    return std::visit([&](const auto& m) { return m.vote_fractions(x); }, model);
}

const std::vector<PolymerType>& ModelBundle::classes() const {
    return std::visit(
        [](const auto& m) -> const std::vector<PolymerType>& {
            return m.classes();
        },
        model);
}

std::size_t ModelBundle::n_features() const {
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, KnnModel>)
                return m.data().width();
            else
                return m.n_features();
        },
        model);
}

namespace {

json tree_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
        if (n.feature < 0) {
            nodes.push_back({{"counts", n.counts}});
        } else {
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right}});
        }
    }
    json classes = json::array();
    for (PolymerType t : tree.classes())
        classes.push_back(std::string(canonical_name(t)));
    return json{{"classes", classes},
                {"n_features", tree.n_features()},
                {"nodes", nodes}};
}

DecisionTree tree_from_json(const json& j, const std::string& where) {
    std::vector<PolymerType> classes;
    for (const auto& name : serde::require(j, "classes", where))
        classes.push_back(serde::polymer_from_json(name, where + ".classes"));

    std::vector<DecisionTree::Node> nodes;
    const json& jnodes = serde::require(j, "nodes", where);
    if (!jnodes.is_array() || jnodes.empty())
        throw FormatError(where + ".nodes: expected a non-empty array");
    nodes.reserve(jnodes.size());
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        const std::string at = where + ".nodes[" + std::to_string(i) + "]";
        const json& jn = jnodes[i];
        DecisionTree::Node node;
        if (jn.contains("feature")) {
            node.feature = serde::require(jn, "feature", at).get<int>();
            node.threshold = serde::require(jn, "threshold", at).get<double>();
            node.left = serde::require(jn, "left", at).get<int>();
            node.right = serde::require(jn, "right", at).get<int>();
            const auto in_range = [&](int child) {
                return child >= 0 && static_cast<std::size_t>(child) < jnodes.size();
            };
            if (node.feature < 0 || !in_range(node.left) || !in_range(node.right))
                throw FormatError(at + ": node indices out of range");
        } else {
            node.counts =
                serde::require(jn, "counts", at).get<std::vector<std::size_t>>();
            if (node.counts.size() != classes.size())
                throw FormatError(at + ": counts length != class count");
        }
        nodes.push_back(std::move(node));
    }
    const std::size_t n_features =
        serde::require(j, "n_features", where).get<std::size_t>();
    return DecisionTree(std::move(nodes), std::move(classes), n_features);
}

json matrix_json(const FeatureMatrix& m) {
    json labels = json::array();
    for (PolymerType t : m.labels)
        labels.push_back(std::string(canonical_name(t)));
    return json{{"ids", m.ids}, {"labels", labels}, {"rows", m.rows}};
}

FeatureMatrix matrix_from_json(const json& j, const std::string& where) {
    FeatureMatrix m;
    m.ids = serde::require(j, "ids", where).get<std::vector<std::string>>();
    for (const auto& name : serde::require(j, "labels", where))
        m.labels.push_back(serde::polymer_from_json(name, where + ".labels"));
    m.rows = serde::require(j, "rows", where)
                 .get<std::vector<std::vector<double>>>();
    if (m.ids.size() != m.rows.size() || m.labels.size() != m.rows.size())
        throw FormatError(where + ": ids/labels/rows lengths differ");
    return m;
}

json model_json(const ModelBundle& bundle) {
    json j;
    if (const auto* tree = std::get_if<DecisionTree>(&bundle.model)) {
        j = tree_json(*tree);
        j["kind"] = "decision_tree";
    } else if (const auto* forest = std::get_if<RandomForestModel>(&bundle.model)) {
        json trees = json::array();
        for (const auto& t : forest->trees()) trees.push_back(tree_json(t));
        j = json{{"kind", "random_forest"},
                 {"criterion", std::string(criterion_name(forest->criterion()))},
                 {"seed", forest->seed()},
                 {"trees", std::move(trees)}};
    } else {
        const auto& knn = std::get<KnnModel>(bundle.model);
        j = json{{"kind", "knn"},
                 {"k", knn.k()},
                 {"data", matrix_json(knn.data())}};
    }
    return j;
}

}  // namespace

void save_model(const ModelBundle& bundle, const std::filesystem::path& file) {
    const json j{{"format_version", kModelFormatVersion},
                 {"pipeline", serde::pipeline_json(bundle.pipeline)},
                 {"model", model_json(bundle)}};
    std::ofstream out(file);
    if (!out) throw DataError("cannot write model file: " + file.string());
    out << j.dump(2) << '\n';
    if (!out) throw DataError("short write to model file: " + file.string());
}

ModelBundle load_model(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open model file: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("model file " + file.string() + ": " + e.what());
    }

    const std::string where = "model file " + file.string();
    const json& version = serde::require(j, "format_version", where);
    if (!version.is_number_integer() ||
        version.get<int>() != kModelFormatVersion) {
        throw ConfigError(where + ": format_version " + version.dump() +
                          " unsupported (this build reads version " +
                          std::to_string(kModelFormatVersion) + ")");
    }

    ModelBundle bundle;
    bundle.pipeline = serde::pipeline_from_json(
        serde::require(j, "pipeline", where), PipelineConfig{}, where + ".pipeline");

    const json& jm = serde::require(j, "model", where);
    const std::string kind =
        serde::require(jm, "kind", where + ".model").get<std::string>();
    if (kind == "decision_tree") {
        bundle.model = tree_from_json(jm, where + ".model");
    } else if (kind == "random_forest") {
        std::vector<DecisionTree> trees;
        const json& jtrees = serde::require(jm, "trees", where + ".model");
        for (std::size_t i = 0; i < jtrees.size(); ++i)
            trees.push_back(tree_from_json(
                jtrees[i], where + ".model.trees[" + std::to_string(i) + "]"));
        bundle.model = RandomForestModel(
            std::move(trees),
            criterion_from_name(
                serde::require(jm, "criterion", where + ".model")
                    .get<std::string>()),
            serde::require(jm, "seed", where + ".model").get<std::uint64_t>());
    } else if (kind == "knn") {
        bundle.model = KnnModel(
            matrix_from_json(serde::require(jm, "data", where + ".model"),
                             where + ".model.data"),
            serde::require(jm, "k", where + ".model").get<std::size_t>());
    } else {
        throw FormatError(where + ".model.kind: unknown kind '" + kind + "'");
    }
    return bundle;
}

}  // namespace ramanmp
