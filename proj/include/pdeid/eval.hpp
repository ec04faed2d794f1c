#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pdeid/core.hpp"
#include "pdeid/features.hpp"
#include "pdeid/gbdt.hpp"
#include "pdeid/io.hpp"

namespace pdeid::eval {

/// In-memory feature matrix with labels; rows follow the source CSV/manifest.
struct FeatureDataset {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> X; // all 46 columns per row
    std::vector<TermLabels> labels;

    size_t size() const { return ids.size(); }
};

FeatureDataset from_table(const io::FeatureTable& table);

struct SplitResult {
    std::vector<int> train_idx;
    std::vector<int> test_idx;
};

/// Stratified by class_id, deterministic in seed; floor(n*ratio) per class
/// goes to train.
SplitResult split_dataset(const std::vector<TermLabels>& labels, double ratio, uint64_t seed);

/// The three binary term detectors, each trained on its task's feature mask.
struct Detectors {
    gbdt::GbdtModel utt;
    gbdt::GbdtModel ut;
    gbdt::GbdtModel conv;
};

Detectors train_detectors(const FeatureDataset& ds, const std::vector<int>& train_idx,
                          const gbdt::TrainConfig& cfg);

/// Threshold each detector at 0.5, assemble bits, map to the class id.
TermLabels identify_equation(const Detectors& detectors, const FeatureVector& x);

struct ConfusionMatrix {
    std::array<std::array<int, 8>, 8> counts{}; // row = truth-1, col = prediction-1
    double accuracy = 0.0;
    int total = 0;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& truth, const std::vector<int>& pred);

struct LoeoResult {
    std::array<std::array<int, 8>, 8> table{}; // row = held-out class, col = predicted class
    std::array<double, 8> per_class_accuracy{};
    double average_accuracy = 0.0;
};

/// For each class: train the detectors on the other seven, identify every
/// held-out sample through the bit pipeline, tally predictions.
LoeoResult leave_one_equation_out(const FeatureDataset& ds, const gbdt::TrainConfig& cfg,
                                  int threads);

struct MulticlassResult {
    double accuracy = 0.0;
    ConfusionMatrix confusion;
    gbdt::GbdtModel model;
};

/// 80/20-style multiclass run restricted to the named feature columns
/// (by index into the 46); empty selection is an error.
MulticlassResult multiclass_run(const FeatureDataset& ds, const std::vector<int>& feature_cols,
                                const gbdt::TrainConfig& cfg, double ratio, uint64_t split_seed);

struct AblationRow {
    std::string name;
    double accuracy = 0.0;
};

/// Multiclass accuracy per feature-family subset. Family names must be among
/// stat/amp/fft/motion/sym; "all" denotes the full set.
std::vector<AblationRow> ablation(const FeatureDataset& ds,
                                  const std::vector<std::vector<std::string>>& subsets,
                                  const gbdt::TrainConfig& cfg, double ratio, uint64_t split_seed);

/// Pipeline accuracy of the detector cascade on a test split.
double pipeline_accuracy(const FeatureDataset& ds, const Detectors& detectors,
                         const std::vector<int>& test_idx);

std::vector<int> feature_columns_for_families(const std::vector<std::string>& families);

} // namespace pdeid::eval
