#include "pdeid/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "pdeid/rng.hpp"

namespace pdeid::gbdt {

using nlohmann::json;

double Tree::predict(std::span<const double> x) const {
    int i = 0;
    while (nodes[i].feature_index >= 0) {
        const TreeNode& n = nodes[i];
        i = x[n.feature_index] < n.threshold ? n.left : n.right;
    }
    return nodes[i].leaf_value;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct SplitCandidate {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool valid = false;
};

struct BuildNode {
    double sum_g = 0.0;
    double sum_h = 0.0;
    int tree_index = -1; // node slot in the output tree
    SplitCandidate best;
};

// One regression tree on (g, h), grown level by level with exact greedy
// splits. Leaf values carry the learning rate. Split gains are accumulated
// into gain_totals.
Tree build_tree(const std::vector<std::vector<double>>& columns,
                const std::vector<std::vector<int>>& sorted_idx, const std::vector<double>& g,
                const std::vector<double>& h, const std::vector<char>& in_sample,
                const TrainConfig& cfg, std::vector<double>& gain_totals) {
    const size_t n_rows = g.size();
    const int n_features = static_cast<int>(columns.size());
    Tree tree;

    // position[i]: slot of the level-node the row currently sits in, -1 if out
    std::vector<int> position(n_rows, -1);
    std::vector<BuildNode> level(1);
    for (size_t i = 0; i < n_rows; ++i) {
        if (!in_sample[i]) continue;
        position[i] = 0;
        level[0].sum_g += g[i];
        level[0].sum_h += h[i];
    }
    tree.nodes.push_back(TreeNode{});
    level[0].tree_index = 0;

    struct Running {
        double g_left = 0.0;
        double h_left = 0.0;
        double last_value = 0.0;
        bool seen = false;
    };

    for (int depth = 0; depth < cfg.max_depth && !level.empty(); ++depth) {
        for (auto& node : level) node.best = SplitCandidate{};
        // exact greedy scan, features ascending so gain ties keep the lowest
        // feature index and threshold
        std::vector<Running> run(level.size());
        for (int f = 0; f < n_features; ++f) {
            std::fill(run.begin(), run.end(), Running{});
            for (int row : sorted_idx[f]) {
                const int slot = position[row];
                if (slot < 0) continue;
                BuildNode& node = level[slot];
                Running& r = run[slot];
                const double x = columns[f][row];
                if (r.seen && x > r.last_value) {
                    const double g_r = node.sum_g - r.g_left;
                    const double h_r = node.sum_h - r.h_left;
                    if (r.h_left >= cfg.min_child_weight && h_r >= cfg.min_child_weight) {
                        const double lam = cfg.lambda_l2;
                        const double gain =
                            0.5 * (r.g_left * r.g_left / (r.h_left + lam) + g_r * g_r / (h_r + lam) -
                                   node.sum_g * node.sum_g / (node.sum_h + lam));
                        if (gain > node.best.gain && gain > 0.0) {
                            double thr = 0.5 * (r.last_value + x);
                            if (thr <= r.last_value) thr = x; // adjacent floats
                            node.best =
                                SplitCandidate{gain, f, thr, true};
                        }
                    }
                }
                r.g_left += g[row];
                r.h_left += h[row];
                r.last_value = x;
                r.seen = true;
            }
        }

        std::vector<BuildNode> next_level;
        std::vector<int> slot_remap(level.size(), -1); // old slot -> first child slot
        for (size_t s = 0; s < level.size(); ++s) {
            BuildNode& node = level[s];
            TreeNode& out = tree.nodes[node.tree_index];
            if (!node.best.valid) {
                out.leaf_value =
                    -node.sum_g / (node.sum_h + cfg.lambda_l2) * cfg.learning_rate;
                continue;
            }
            gain_totals[node.best.feature] += node.best.gain;
            out.feature_index = node.best.feature;
            out.threshold = node.best.threshold;
            out.left = static_cast<int>(tree.nodes.size());
            out.right = out.left + 1;
            tree.nodes.push_back(TreeNode{});
            tree.nodes.push_back(TreeNode{});
            slot_remap[s] = static_cast<int>(next_level.size());
            BuildNode left_child;
            left_child.tree_index = out.left;
            BuildNode right_child;
            right_child.tree_index = out.right;
            next_level.push_back(left_child);
            next_level.push_back(right_child);
        }
        if (next_level.empty()) break;

        for (size_t i = 0; i < n_rows; ++i) {
            const int slot = position[i];
            if (slot < 0) continue;
            if (slot_remap[slot] < 0) {
                position[i] = -1; // settled in a leaf
                continue;
            }
            const BuildNode& parent = level[slot];
            const TreeNode& out = tree.nodes[parent.tree_index];
            const int child = slot_remap[slot] +
                              (columns[out.feature_index][i] < out.threshold ? 0 : 1);
            position[i] = child;
            next_level[child].sum_g += g[i];
            next_level[child].sum_h += h[i];
        }
        level = std::move(next_level);
    }
    // any nodes still pending at the depth cap become leaves
    for (const auto& node : level) {
        TreeNode& out = tree.nodes[node.tree_index];
        if (out.feature_index < 0) {
            out.leaf_value = -node.sum_g / (node.sum_h + cfg.lambda_l2) * cfg.learning_rate;
        }
    }
    return tree;
}

void validate_inputs(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                     const std::vector<std::string>& names) {
    if (X.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "X rows and y length differ");
    }
    if (X.empty()) throw Error(ErrorCode::DegenerateLabels, "empty training set");
    for (const auto& row : X) {
        if (row.size() != names.size()) {
            throw Error(ErrorCode::DimensionMismatch, "row width differs from feature names");
        }
    }
}

double softmax_loss_row(std::span<const double> raw, int label) {
    double mx = raw[0];
    for (double v : raw) mx = std::max(mx, v);
    double denom = 0.0;
    for (double v : raw) denom += std::exp(v - mx);
    return -(raw[label] - mx - std::log(denom));
}

} // namespace

GbdtModel fit(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
              Objective objective, const TrainConfig& cfg,
              std::vector<std::string> feature_names) {
    validate_inputs(X, y, feature_names);
    const size_t n = X.size();
    const int n_features = static_cast<int>(feature_names.size());

    int num_classes = 2;
    if (objective == Objective::BinaryLogistic) {
        bool seen0 = false;
        bool seen1 = false;
        for (int v : y) {
            if (v == 0) seen0 = true;
            else if (v == 1) seen1 = true;
            else throw Error(ErrorCode::DataError, "binary labels must be 0/1");
        }
        if (!seen0 || !seen1) {
            throw Error(ErrorCode::DegenerateLabels, "binary training labels are single-class");
        }
    } else {
        int mx = 0;
        for (int v : y) {
            if (v < 0) throw Error(ErrorCode::DataError, "softmax labels must be >= 0");
            mx = std::max(mx, v);
        }
        num_classes = mx + 1;
        std::vector<int> counts(num_classes, 0);
        for (int v : y) counts[v]++;
        int present = 0;
        for (int c : counts) present += c > 0 ? 1 : 0;
        if (present < 2) {
            throw Error(ErrorCode::DegenerateLabels, "softmax training labels are single-class");
        }
    }

    // column-major copy plus presorted row order per feature
    std::vector<std::vector<double>> columns(n_features, std::vector<double>(n));
    std::vector<std::vector<int>> sorted_idx(n_features, std::vector<int>(n));
    for (int f = 0; f < n_features; ++f) {
        for (size_t i = 0; i < n; ++i) columns[f][i] = X[i][f];
        std::iota(sorted_idx[f].begin(), sorted_idx[f].end(), 0);
        std::stable_sort(sorted_idx[f].begin(), sorted_idx[f].end(),
                         [&](int a, int b) { return columns[f][a] < columns[f][b]; });
    }

    GbdtModel model;
    model.objective = objective;
    model.num_classes = objective == Objective::BinaryLogistic ? 2 : num_classes;
    model.config = cfg;
    model.feature_names = std::move(feature_names);
    model.gain_totals.assign(n_features, 0.0);

    const int trees_per_round = objective == Objective::BinaryLogistic ? 1 : num_classes;
    std::vector<double> raw(n * trees_per_round, 0.0); // additive scores per row (and class)
    std::vector<double> g(n), h(n);
    std::vector<char> in_sample(n, 1);

    for (int round = 0; round < cfg.rounds; ++round) {
        if (cfg.subsample < 1.0) {
            Rng rng(derive_seed(cfg.seed, static_cast<uint64_t>(round)));
            for (size_t i = 0; i < n; ++i) in_sample[i] = rng.uniform() < cfg.subsample ? 1 : 0;
        }
        if (objective == Objective::BinaryLogistic) {
            for (size_t i = 0; i < n; ++i) {
                const double p = sigmoid(raw[i]);
                g[i] = p - static_cast<double>(y[i]);
                h[i] = p * (1.0 - p);
            }
            Tree tree =
                build_tree(columns, sorted_idx, g, h, in_sample, cfg, model.gain_totals);
            for (size_t i = 0; i < n; ++i) raw[i] += tree.predict(X[i]);
            model.trees.push_back(std::move(tree));
            double loss = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double z = y[i] == 1 ? raw[i] : -raw[i];
                // numerically stable -log(sigmoid(z))
                loss += z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
            }
            model.train_loss.push_back(loss / static_cast<double>(n));
        } else {
            std::vector<double> probs(n * num_classes);
            for (size_t i = 0; i < n; ++i) {
                double mx = raw[i * num_classes];
                for (int k = 1; k < num_classes; ++k) {
                    mx = std::max(mx, raw[i * num_classes + k]);
                }
                double denom = 0.0;
                for (int k = 0; k < num_classes; ++k) {
                    probs[i * num_classes + k] = std::exp(raw[i * num_classes + k] - mx);
                    denom += probs[i * num_classes + k];
                }
                for (int k = 0; k < num_classes; ++k) probs[i * num_classes + k] /= denom;
            }
            for (int k = 0; k < num_classes; ++k) {
                for (size_t i = 0; i < n; ++i) {
                    const double p = probs[i * num_classes + k];
                    g[i] = p - (y[i] == k ? 1.0 : 0.0);
                    h[i] = p * (1.0 - p);
                }
                Tree tree =
                    build_tree(columns, sorted_idx, g, h, in_sample, cfg, model.gain_totals);
                for (size_t i = 0; i < n; ++i) raw[i * num_classes + k] += tree.predict(X[i]);
                model.trees.push_back(std::move(tree));
            }
            double loss = 0.0;
            for (size_t i = 0; i < n; ++i) {
                loss += softmax_loss_row(
                    std::span<const double>(raw.data() + i * num_classes,
                                            static_cast<size_t>(num_classes)),
                    y[i]);
            }
            model.train_loss.push_back(loss / static_cast<double>(n));
        }
    }
    return model;
}

std::vector<double> GbdtModel::predict_raw(std::span<const double> x) const {
    if (x.size() != feature_names.size()) {
        throw Error(ErrorCode::DimensionMismatch, "feature vector width mismatch");
    }
    if (objective == Objective::BinaryLogistic) {
        double s = 0.0;
        for (const auto& t : trees) s += t.predict(x);
        return {s};
    }
    std::vector<double> s(num_classes, 0.0);
    for (size_t i = 0; i < trees.size(); ++i) {
        s[i % num_classes] += trees[i].predict(x);
    }
    return s;
}

std::vector<double> GbdtModel::predict_proba(std::span<const double> x) const {
    const std::vector<double> raw = predict_raw(x);
    if (objective == Objective::BinaryLogistic) {
        const double bias = std::log(base_score / (1.0 - base_score));
        const double p1 = sigmoid(raw[0] + bias);
        return {1.0 - p1, p1};
    }
    double mx = raw[0];
    for (double v : raw) mx = std::max(mx, v);
    std::vector<double> p(raw.size());
    double denom = 0.0;
    for (size_t k = 0; k < raw.size(); ++k) {
        p[k] = std::exp(raw[k] - mx);
        denom += p[k];
    }
    for (double& v : p) v /= denom;
    return p;
}

double mean_loss(const GbdtModel& model, const std::vector<std::vector<double>>& X,
                 const std::vector<int>& y) {
    if (X.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "X rows and y length differ");
    }
    double loss = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        const std::vector<double> p = model.predict_proba(X[i]);
        const double q = std::max(p[y[i]], 1e-300);
        loss += -std::log(q);
    }
    return loss / static_cast<double>(X.size());
}

std::vector<std::pair<std::string, double>> feature_importance(const GbdtModel& model) {
    if (!model.trained()) {
        throw Error(ErrorCode::UntrainedModel, "feature_importance needs a fitted model");
    }
    std::map<std::string, double> family_gain;
    std::map<std::string, int> family_count;
    for (size_t f = 0; f < model.feature_names.size(); ++f) {
        const std::string& name = model.feature_names[f];
        const std::string family = name.substr(0, name.find('_'));
        family_gain[family] += model.gain_totals[f];
        family_count[family] += 1;
    }
    std::vector<std::pair<std::string, double>> out;
    double total = 0.0;
    for (const auto& [family, gain] : family_gain) {
        const double normalized = gain / static_cast<double>(family_count[family]);
        out.emplace_back(family, normalized);
        total += normalized;
    }
    if (total > 0.0) {
        for (auto& [family, v] : out) v = v / total * 100.0;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

std::string serialize(const GbdtModel& model) {
    json j;
    j["format"] = "gbdt-model/1";
    j["objective"] = model.objective == Objective::BinaryLogistic ? "binary-logistic" : "softmax";
    j["num_classes"] = model.num_classes;
    j["base_score"] = model.base_score;
    j["config"] = json{{"rounds", model.config.rounds},
                       {"max_depth", model.config.max_depth},
                       {"learning_rate", model.config.learning_rate},
                       {"min_child_weight", model.config.min_child_weight},
                       {"lambda_l2", model.config.lambda_l2},
                       {"subsample", model.config.subsample},
                       {"seed", model.config.seed}};
    j["feature_names"] = model.feature_names;
    j["gain_totals"] = model.gain_totals;
    j["train_loss"] = model.train_loss;
    json trees = json::array();
    for (const auto& t : model.trees) {
        json nodes = json::array();
        for (const auto& n : t.nodes) {
            nodes.push_back(json::array(
                {n.feature_index, n.threshold, n.left, n.right, n.leaf_value}));
        }
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j.dump(2) + "\n";
}

GbdtModel deserialize(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "gbdt-model/1") {
        throw Error(ErrorCode::DataError, "unexpected model format");
    }
    GbdtModel m;
    m.objective = j.at("objective").get<std::string>() == "binary-logistic"
                      ? Objective::BinaryLogistic
                      : Objective::Softmax;
    m.num_classes = j.at("num_classes").get<int>();
    m.base_score = j.at("base_score").get<double>();
    const json& c = j.at("config");
    m.config.rounds = c.at("rounds").get<int>();
    m.config.max_depth = c.at("max_depth").get<int>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.min_child_weight = c.at("min_child_weight").get<double>();
    m.config.lambda_l2 = c.at("lambda_l2").get<double>();
    m.config.subsample = c.at("subsample").get<double>();
    m.config.seed = c.at("seed").get<uint64_t>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.gain_totals = j.at("gain_totals").get<std::vector<double>>();
    m.train_loss = j.at("train_loss").get<std::vector<double>>();
    for (const auto& t : j.at("trees")) {
        Tree tree;
        for (const auto& n : t) {
            TreeNode node;
            node.feature_index = n.at(0).get<int>();
            node.threshold = n.at(1).get<double>();
            node.left = n.at(2).get<int>();
            node.right = n.at(3).get<int>();
            node.leaf_value = n.at(4).get<double>();
            tree.nodes.push_back(node);
        }
        m.trees.push_back(std::move(tree));
    }
    return m;
}

} // namespace pdeid::gbdt
