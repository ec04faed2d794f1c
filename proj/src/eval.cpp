#include "pdeid/eval.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pdeid/parallel.hpp"
#include "pdeid/rng.hpp"

namespace pdeid::eval {

FeatureDataset from_table(const io::FeatureTable& table) {
    FeatureDataset ds;
    ds.ids = table.ids;
    ds.labels = table.labels;
    ds.X.reserve(table.rows.size());
    for (const auto& fv : table.rows) ds.X.push_back(fv.values);
    return ds;
}

SplitResult split_dataset(const std::vector<TermLabels>& labels, double ratio, uint64_t seed) {
    if (labels.empty()) throw Error(ErrorCode::DataError, "split over an empty dataset");
    if (ratio < 0.0 || ratio > 1.0) throw Error(ErrorCode::UsageError, "ratio must be in [0,1]");
    std::map<int, std::vector<int>> by_class;
    for (size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i].class_id].push_back(static_cast<int>(i));
    }
    SplitResult out;
    for (auto& [class_id, idx] : by_class) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(class_id)));
        rng.shuffle(idx);
        const size_t n_train = static_cast<size_t>(ratio * static_cast<double>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i) {
            (i < n_train ? out.train_idx : out.test_idx).push_back(idx[i]);
        }
    }
    std::sort(out.train_idx.begin(), out.train_idx.end());
    std::sort(out.test_idx.begin(), out.test_idx.end());
    return out;
}

namespace {

std::vector<double> slice_row(const std::vector<double>& row, const std::vector<int>& cols) {
    std::vector<double> out;
    out.reserve(cols.size());
    for (int c : cols) out.push_back(row[c]);
    return out;
}

gbdt::GbdtModel train_bit_detector(const FeatureDataset& ds, const std::vector<int>& train_idx,
                                   features::Task task, const gbdt::TrainConfig& cfg) {
    const std::vector<int> cols = features::task_mask_indices(task);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    X.reserve(train_idx.size());
    y.reserve(train_idx.size());
    for (int i : train_idx) {
        X.push_back(slice_row(ds.X[i], cols));
        const TermLabels& l = ds.labels[i];
        const bool bit = task == features::Task::Utt   ? l.has_utt
                         : task == features::Task::Ut ? l.has_ut
                                                      : l.has_conv;
        y.push_back(bit ? 1 : 0);
    }
    return gbdt::fit(X, y, gbdt::Objective::BinaryLogistic, cfg, features::task_mask(task));
}

bool detector_bit(const gbdt::GbdtModel& model, features::Task task, const FeatureVector& x) {
    const std::vector<std::string> mask = features::task_mask(task);
    if (model.feature_names != mask) {
        throw Error(ErrorCode::MaskMismatch,
                    std::string("detector features disagree with the ") +
                        features::task_name(task) + " mask");
    }
    const std::vector<int> cols = features::task_mask_indices(task);
    if (x.values.size() != static_cast<size_t>(feature_names::kTotal)) {
        throw Error(ErrorCode::DimensionMismatch, "expected the full 46-entry feature vector");
    }
    const std::vector<double> sliced = slice_row(x.values, cols);
    return model.predict_proba(sliced)[1] >= 0.5;
}

} // namespace

Detectors train_detectors(const FeatureDataset& ds, const std::vector<int>& train_idx,
                          const gbdt::TrainConfig& cfg) {
    Detectors d;
    d.utt = train_bit_detector(ds, train_idx, features::Task::Utt, cfg);
    d.ut = train_bit_detector(ds, train_idx, features::Task::Ut, cfg);
    d.conv = train_bit_detector(ds, train_idx, features::Task::Conv, cfg);
    return d;
}

TermLabels identify_equation(const Detectors& detectors, const FeatureVector& x) {
    const bool utt = detector_bit(detectors.utt, features::Task::Utt, x);
    const bool ut = detector_bit(detectors.ut, features::Task::Ut, x);
    const bool conv = detector_bit(detectors.conv, features::Task::Conv, x);
    return labels_from_bits(utt, ut, conv);
}

ConfusionMatrix confusion_matrix(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.size() != pred.size()) {
        throw Error(ErrorCode::LengthMismatch, "truth and prediction lengths differ");
    }
    ConfusionMatrix cm;
    int correct = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 1 || truth[i] > 8 || pred[i] < 1 || pred[i] > 8) {
            throw Error(ErrorCode::DataError, "class ids must be in 1..8");
        }
        cm.counts[truth[i] - 1][pred[i] - 1]++;
        correct += truth[i] == pred[i] ? 1 : 0;
    }
    cm.total = static_cast<int>(truth.size());
    cm.accuracy = cm.total == 0 ? 0.0 : static_cast<double>(correct) / cm.total;
    return cm;
}

LoeoResult leave_one_equation_out(const FeatureDataset& ds, const gbdt::TrainConfig& cfg,
                                  int threads) {
    for (int k = 1; k <= 8; ++k) {
        if (std::none_of(ds.labels.begin(), ds.labels.end(),
                         [&](const TermLabels& l) { return l.class_id == k; })) {
            throw Error(ErrorCode::DataError,
                        "leave-one-equation-out needs all 8 classes, missing " +
                            std::to_string(k));
        }
    }
    LoeoResult res;
    std::array<std::array<int, 8>, 8> table{};
    parallel_for(8, threads, [&](size_t fold) {
        const int held_out = static_cast<int>(fold) + 1;
        std::vector<int> train_idx;
        std::vector<int> test_idx;
        for (size_t i = 0; i < ds.size(); ++i) {
            (ds.labels[i].class_id == held_out ? test_idx : train_idx)
                .push_back(static_cast<int>(i));
        }
        // the held-out class must not leak into any detector's training rows
        {
            std::set<int> train_set(train_idx.begin(), train_idx.end());
            for (int i : test_idx) {
                if (train_set.count(i)) {
                    throw Error(ErrorCode::DataError, "fold leakage detected");
                }
            }
        }
        gbdt::TrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, fold);
        const Detectors detectors = train_detectors(ds, train_idx, fold_cfg);
        for (int i : test_idx) {
            FeatureVector fv;
            fv.values = ds.X[i];
            const TermLabels pred = identify_equation(detectors, fv);
            table[fold][pred.class_id - 1]++;
        }
    });
    res.table = table;
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
        int row_total = 0;
        for (int c = 0; c < 8; ++c) row_total += table[k][c];
        res.per_class_accuracy[k] =
            row_total == 0 ? 0.0 : static_cast<double>(table[k][k]) / row_total;
        sum += res.per_class_accuracy[k];
    }
    res.average_accuracy = sum / 8.0;
    return res;
}

std::vector<int> feature_columns_for_families(const std::vector<std::string>& families) {
    std::set<std::string> wanted(families.begin(), families.end());
    if (wanted.count("all")) {
        std::vector<int> cols(feature_names::kTotal);
        for (int i = 0; i < feature_names::kTotal; ++i) cols[i] = i;
        return cols;
    }
    for (const auto& f : wanted) {
        const auto& known = feature_names::families();
        if (std::find(known.begin(), known.end(), f) == known.end()) {
            throw Error(ErrorCode::UsageError, "unknown feature family: " + f);
        }
    }
    std::vector<int> cols;
    for (int i = 0; i < feature_names::kTotal; ++i) {
        if (wanted.count(feature_names::family_of(i))) cols.push_back(i);
    }
    return cols;
}

MulticlassResult multiclass_run(const FeatureDataset& ds, const std::vector<int>& feature_cols,
                                const gbdt::TrainConfig& cfg, double ratio, uint64_t split_seed) {
    if (feature_cols.empty()) {
        throw Error(ErrorCode::EmptyMask, "multiclass run with no feature columns");
    }
    const SplitResult split = split_dataset(ds.labels, ratio, split_seed);
    if (split.test_idx.empty()) {
        throw Error(ErrorCode::DataError, "empty test split");
    }
    std::vector<std::string> names;
    for (int c : feature_cols) names.push_back(feature_names::all()[c]);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i : split.train_idx) {
        X.push_back(slice_row(ds.X[i], feature_cols));
        y.push_back(ds.labels[i].class_id - 1);
    }
    MulticlassResult res;
    res.model = gbdt::fit(X, y, gbdt::Objective::Softmax, cfg, names);
    std::vector<int> truth;
    std::vector<int> pred;
    for (int i : split.test_idx) {
        const std::vector<double> p = res.model.predict_proba(slice_row(ds.X[i], feature_cols));
        const int k = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
        truth.push_back(ds.labels[i].class_id);
        pred.push_back(k + 1);
    }
    res.confusion = confusion_matrix(truth, pred);
    res.accuracy = res.confusion.accuracy;
    return res;
}

std::vector<AblationRow> ablation(const FeatureDataset& ds,
                                  const std::vector<std::vector<std::string>>& subsets,
                                  const gbdt::TrainConfig& cfg, double ratio,
                                  uint64_t split_seed) {
    std::vector<AblationRow> rows;
    for (const auto& families : subsets) {
        if (families.empty()) {
            throw Error(ErrorCode::EmptyMask, "ablation subset with no families");
        }
        const std::vector<int> cols = feature_columns_for_families(families);
        const MulticlassResult res = multiclass_run(ds, cols, cfg, ratio, split_seed);
        AblationRow row;
        for (size_t i = 0; i < families.size(); ++i) {
            row.name += (i ? "+" : "") + families[i];
        }
        row.accuracy = res.accuracy;
        rows.push_back(std::move(row));
    }
    return rows;
}

double pipeline_accuracy(const FeatureDataset& ds, const Detectors& detectors,
                         const std::vector<int>& test_idx) {
    if (test_idx.empty()) return 0.0;
    int correct = 0;
    for (int i : test_idx) {
        FeatureVector fv;
        fv.values = ds.X[i];
        const TermLabels pred = identify_equation(detectors, fv);
        correct += pred.class_id == ds.labels[i].class_id ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(test_idx.size());
}

} // namespace pdeid::eval
