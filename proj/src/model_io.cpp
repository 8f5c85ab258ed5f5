#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <string>

#include "fedsurvey/models.hpp"

// Text model format, documented in docs/model_format.md. Doubles are printed
// with 17 significant digits so parse(serialize(x)) round-trips bit-exactly.

namespace fedsurvey {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    std::istringstream expect(const std::string& keyword) {
        std::string line;
        do {
            if (!std::getline(in_, line))
                throw SerializationError("model parse: expected '" + keyword + "', got EOF");
        } while (line.empty());
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head != keyword)
            throw SerializationError("model parse: expected '" + keyword + "', got '" +
                                     head + "'");
        return ls;
    }

private:
    std::istringstream in_;
};

void check_header(LineReader& reader, const std::string& kind) {
    std::string version;
    reader.expect("fedsurvey-model") >> version;
    if (version != "v1")
        throw SerializationError("model parse: unsupported version '" + version + "'");
    std::string got;
    reader.expect("kind") >> got;
    if (got != kind)
        throw SerializationError("model parse: expected kind '" + kind + "', got '" + got +
                                 "'");
}

}  // namespace

std::string serialize_linear(const LinearModel& model) {
    std::ostringstream out;
    out << "fedsurvey-model v1\n";
    out << "kind linear\n";
    out << "ridged " << (model.ridged ? 1 : 0) << "\n";
    out << "intercept " << fmt(model.intercept) << "\n";
    out << "coefficients " << model.coefficients.size();
    for (double c : model.coefficients) out << " " << fmt(c);
    out << "\n";
    return out.str();
}

LinearModel parse_linear(const std::string& text) {
    LineReader reader(text);
    check_header(reader, "linear");
    LinearModel model;
    int ridged = 0;
    reader.expect("ridged") >> ridged;
    model.ridged = ridged != 0;
    reader.expect("intercept") >> model.intercept;
    std::size_t m = 0;
    auto ls = reader.expect("coefficients");
    ls >> m;
    model.coefficients.resize(m);
    for (std::size_t j = 0; j < m; ++j) ls >> model.coefficients[j];
    if (ls.fail()) throw SerializationError("model parse: malformed coefficient line");
    return model;
}

std::string serialize_forest(const Forest& forest) {
    std::ostringstream out;
    out << "fedsurvey-model v1\n";
    out << "kind forest\n";
    out << "task "
        << (forest.task == TaskKind::kRegression ? "regression" : "classification") << "\n";
    out << "trees " << forest.trees.size() << "\n";
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        const std::uint64_t seed = t < forest.tree_seeds.size() ? forest.tree_seeds[t] : 0;
        out << "tree " << seed << "\n";
        out << "nodes " << forest.trees[t].nodes.size() << "\n";
        for (const TreeNode& node : forest.trees[t].nodes) {
            out << "node " << node.feature << " " << fmt(node.threshold) << " " << node.left
                << " " << node.right << " " << fmt(node.value) << " " << fmt(node.pos_count)
                << " " << fmt(node.neg_count) << "\n";
        }
    }
    return out.str();
}

Forest parse_forest(const std::string& text) {
    LineReader reader(text);
    check_header(reader, "forest");
    Forest forest;
    std::string task;
    reader.expect("task") >> task;
    if (task == "regression")
        forest.task = TaskKind::kRegression;
    else if (task == "classification")
        forest.task = TaskKind::kClassification;
    else
        throw SerializationError("model parse: unknown task '" + task + "'");

    std::size_t n_trees = 0;
    reader.expect("trees") >> n_trees;
    for (std::size_t t = 0; t < n_trees; ++t) {
        std::uint64_t seed = 0;
        reader.expect("tree") >> seed;
        forest.tree_seeds.push_back(seed);
        std::size_t n_nodes = 0;
        reader.expect("nodes") >> n_nodes;
        Tree tree;
        tree.nodes.resize(n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            TreeNode& node = tree.nodes[i];
            auto ls = reader.expect("node");
            ls >> node.feature >> node.threshold >> node.left >> node.right >> node.value >>
                node.pos_count >> node.neg_count;
            if (ls.fail()) throw SerializationError("model parse: malformed node line");
        }
        forest.trees.push_back(std::move(tree));
    }
    if (forest.trees.empty()) throw SerializationError("model parse: empty forest");
    return forest;
}

}  // namespace fedsurvey
