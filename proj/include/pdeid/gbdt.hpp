#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdeid/error.hpp"

namespace pdeid::gbdt {

enum class Objective { BinaryLogistic, Softmax };

struct TrainConfig {
    int rounds = 200;
    int max_depth = 4;
    double learning_rate = 0.1;
    double min_child_weight = 1.0;
    double lambda_l2 = 1.0;
    double subsample = 1.0;
    uint64_t seed = 0;
};

struct TreeNode {
    int feature_index = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double leaf_value = 0.0; // learning rate already applied
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> x) const;
};

struct GbdtModel {
    Objective objective = Objective::BinaryLogistic;
    int num_classes = 2;
    TrainConfig config;
    double base_score = 0.5; // probability-space prior for the binary objective
    std::vector<std::string> feature_names;
    std::vector<Tree> trees; // binary: one per round; softmax: class-major per round
    std::vector<double> gain_totals;
    std::vector<double> train_loss; // mean training loss after each round

    bool trained() const { return !trees.empty(); }
    /// Raw additive scores: length 1 (binary) or num_classes (softmax).
    std::vector<double> predict_raw(std::span<const double> x) const;
    /// Class probabilities; length 2 for binary ([P(y=0), P(y=1)]).
    std::vector<double> predict_proba(std::span<const double> x) const;
};

/// Second-order boosting with exact greedy splits on presorted columns.
/// Binary labels are {0,1}; softmax labels are {0..K-1} with K inferred.
GbdtModel fit(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
              Objective objective, const TrainConfig& cfg,
              std::vector<std::string> feature_names);

/// Mean training objective of a fitted model on (X, y).
double mean_loss(const GbdtModel& model, const std::vector<std::vector<double>>& X,
                 const std::vector<int>& y);

/// Split gain aggregated per feature family (prefix before '_'), divided by
/// the family's feature count, rescaled to percentages summing to 100.
std::vector<std::pair<std::string, double>> feature_importance(const GbdtModel& model);

std::string serialize(const GbdtModel& model);
GbdtModel deserialize(const std::string& text);

} // namespace pdeid::gbdt
