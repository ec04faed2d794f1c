#include <doctest.h>

#include <cmath>

#include "pdeid/gbdt.hpp"
#include "pdeid/rng.hpp"

using namespace pdeid;
using gbdt::Objective;
using gbdt::TrainConfig;

namespace {

struct Dataset2D {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
};

Dataset2D xor_data(Rng& rng, int n) {
    Dataset2D d;
    for (int i = 0; i < n; ++i) {
        // quadrant samples with a margin off the axes
        const double a = rng.uniform(0.1, 1.0) * (rng.below(2) ? 1.0 : -1.0);
        const double b = rng.uniform(0.1, 1.0) * (rng.below(2) ? 1.0 : -1.0);
        d.X.push_back({a, b});
        d.y.push_back(((a > 0.0) != (b > 0.0)) ? 1 : 0);
    }
    return d;
}

double accuracy(const gbdt::GbdtModel& m, const Dataset2D& d) {
    int correct = 0;
    for (size_t i = 0; i < d.X.size(); ++i) {
        const auto p = m.predict_proba(d.X[i]);
        const int pred = m.objective == Objective::BinaryLogistic
                             ? (p[1] >= 0.5 ? 1 : 0)
                             : static_cast<int>(std::max_element(p.begin(), p.end()) -
                                                p.begin());
        correct += pred == d.y[i] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(d.X.size());
}

} // namespace

TEST_CASE("threshold-separable data reaches training accuracy 1.0 in 10 rounds") {
    Rng rng(801);
    Dataset2D d;
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(-2.0, 2.0);
        d.X.push_back({x});
        d.y.push_back(x < 0.0 ? 0 : 1);
    }
    TrainConfig cfg;
    cfg.rounds = 10;
    cfg.max_depth = 2;
    const auto model = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_x"});
    CHECK(accuracy(model, d) == 1.0);
}

TEST_CASE("XOR layout reaches 0.95 test accuracy with depth 2") {
    Rng rng(802);
    const Dataset2D train = xor_data(rng, 400);
    const Dataset2D test = xor_data(rng, 400);
    TrainConfig cfg;
    cfg.rounds = 100;
    cfg.max_depth = 2;
    const auto model = gbdt::fit(train.X, train.y, Objective::BinaryLogistic, cfg,
                                 {"f_a", "f_b"});
    CHECK(accuracy(model, test) >= 0.95);
}

TEST_CASE("first-round leaf values match the hand-computed Newton step") {
    // 4 points, y = [0,0,1,1]; at base 0.5: g = +-0.5, h = 0.25
    const std::vector<std::vector<double>> X{{0.0}, {1.0}, {2.0}, {3.0}};
    const std::vector<int> y{0, 0, 1, 1};
    TrainConfig cfg;
    cfg.rounds = 1;
    cfg.max_depth = 1;
    cfg.min_child_weight = 0.0;
    cfg.learning_rate = 0.1;
    cfg.lambda_l2 = 1.0;
    const auto model = gbdt::fit(X, y, Objective::BinaryLogistic, cfg, {"f_x"});
    // split at 1.5: G_L = 1.0, H_L = 0.5 -> leaf = -1.0/1.5 * 0.1
    const double expect = -1.0 / 1.5 * 0.1;
    CHECK(model.predict_raw(std::vector<double>{0.0})[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(model.predict_raw(std::vector<double>{3.0})[0] == doctest::Approx(-expect).epsilon(1e-12));
    REQUIRE(model.trees.size() == 1);
    CHECK(model.trees[0].nodes[0].threshold == doctest::Approx(1.5));
    // gain = 0.5 * (1/1.5 + 1/1.5 - 0/2.5)
    CHECK(model.gain_totals[0] == doctest::Approx(0.5 * (2.0 / 1.5)).epsilon(1e-12));
}

TEST_CASE("zero-tree models emit the prior") {
    gbdt::GbdtModel binary;
    binary.objective = Objective::BinaryLogistic;
    binary.feature_names = {"f_a"};
    const auto p = binary.predict_proba(std::vector<double>{1.0});
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));

    gbdt::GbdtModel softmax;
    softmax.objective = Objective::Softmax;
    softmax.num_classes = 8;
    softmax.feature_names = {"f_a"};
    const auto q = softmax.predict_proba(std::vector<double>{1.0});
    REQUIRE(q.size() == 8);
    for (double v : q) CHECK(v == doctest::Approx(0.125));
}

TEST_CASE("single split predicts piecewise-constant probabilities") {
    const std::vector<std::vector<double>> X{{0.0}, {1.0}, {2.0}, {3.0}};
    const std::vector<int> y{0, 0, 1, 1};
    TrainConfig cfg;
    cfg.rounds = 1;
    cfg.max_depth = 1;
    cfg.min_child_weight = 0.0;
    const auto model = gbdt::fit(X, y, Objective::BinaryLogistic, cfg, {"f_x"});
    const auto p_left_a = model.predict_proba(std::vector<double>{0.0});
    const auto p_left_b = model.predict_proba(std::vector<double>{1.0});
    const auto p_right = model.predict_proba(std::vector<double>{2.5});
    CHECK(p_left_a[1] == p_left_b[1]);
    CHECK(p_left_a[1] < 0.5);
    CHECK(p_right[1] > 0.5);
    CHECK(p_left_a[0] + p_left_a[1] == doctest::Approx(1.0).epsilon(1e-12));

    // batch equals one-by-one (purity)
    for (const auto& row : X) {
        const auto p1 = model.predict_proba(row);
        const auto p2 = model.predict_proba(row);
        CHECK(p1[1] == p2[1]);
    }
}

TEST_CASE("probabilities sum to one for the softmax objective") {
    Rng rng(803);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 300; ++i) {
        const double a = rng.uniform(-1.0, 1.0);
        const double b = rng.uniform(-1.0, 1.0);
        X.push_back({a, b});
        y.push_back((a > 0 ? 1 : 0) + (b > 0 ? 2 : 0));
    }
    TrainConfig cfg;
    cfg.rounds = 30;
    const auto model = gbdt::fit(X, y, Objective::Softmax, cfg, {"f_a", "f_b"});
    for (int i = 0; i < 20; ++i) {
        const auto p = model.predict_proba(X[i]);
        double sum = 0.0;
        for (double v : p) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("training loss is non-increasing per round") {
    Rng rng(804);
    const Dataset2D d = xor_data(rng, 300);
    TrainConfig cfg;
    cfg.rounds = 60;
    cfg.max_depth = 3;
    const auto model = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_a", "f_b"});
    REQUIRE(model.train_loss.size() == 60);
    for (size_t r = 1; r < model.train_loss.size(); ++r) {
        CHECK(model.train_loss[r] <= model.train_loss[r - 1] + 1e-12);
    }
}

TEST_CASE("feature importance concentrates on the only informative family") {
    Rng rng(805);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 200; ++i) {
        const double a = rng.uniform(-1.0, 1.0);
        X.push_back({a, rng.uniform(-1.0, 1.0)});
        y.push_back(a > 0 ? 1 : 0);
    }
    TrainConfig cfg;
    cfg.rounds = 20;
    const auto model =
        gbdt::fit(X, y, Objective::BinaryLogistic, cfg, {"stat_only", "amp_noise"});
    const auto imp = gbdt::feature_importance(model);
    double total = 0.0;
    for (const auto& [family, pct] : imp) total += pct;
    CHECK(std::abs(total - 100.0) <= 1e-6);
    CHECK(imp[0].first == "stat");
    CHECK(imp[0].second == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("identical fits serialize to identical bytes") {
    Rng rng(806);
    const Dataset2D d = xor_data(rng, 200);
    TrainConfig cfg;
    cfg.rounds = 15;
    cfg.subsample = 0.8;
    cfg.seed = 99;
    const auto a = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_a", "f_b"});
    const auto b = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_a", "f_b"});
    CHECK(gbdt::serialize(a) == gbdt::serialize(b));
}

TEST_CASE("serialize/deserialize round-trips predictions exactly") {
    Rng rng(807);
    const Dataset2D d = xor_data(rng, 150);
    TrainConfig cfg;
    cfg.rounds = 12;
    const auto model = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_a", "f_b"});
    const auto restored = gbdt::deserialize(gbdt::serialize(model));
    for (const auto& row : d.X) {
        CHECK(model.predict_proba(row)[1] == restored.predict_proba(row)[1]);
    }
    CHECK(gbdt::serialize(model) == gbdt::serialize(restored));
}

TEST_CASE("leaf assignment is invariant under monotone feature transforms") {
    Rng rng(808);
    Dataset2D d = xor_data(rng, 200);
    Dataset2D warped = d;
    for (auto& row : warped.X) {
        row[0] = std::exp(row[0]);
        row[1] = row[1] * row[1] * row[1];
    }
    TrainConfig cfg;
    cfg.rounds = 25;
    const auto a = gbdt::fit(d.X, d.y, Objective::BinaryLogistic, cfg, {"f_a", "f_b"});
    const auto b = gbdt::fit(warped.X, warped.y, Objective::BinaryLogistic, cfg,
                             {"f_a", "f_b"});
    for (size_t i = 0; i < d.X.size(); ++i) {
        CHECK(a.predict_raw(d.X[i])[0] ==
              doctest::Approx(b.predict_raw(warped.X[i])[0]).epsilon(1e-12));
    }
}

TEST_CASE("degenerate labels and dimension mismatches are rejected") {
    const std::vector<std::vector<double>> X{{0.0}, {1.0}};
    CHECK_THROWS_AS(gbdt::fit(X, {1, 1}, Objective::BinaryLogistic, TrainConfig{}, {"f"}),
                    Error);
    CHECK_THROWS_AS(gbdt::fit(X, {0}, Objective::BinaryLogistic, TrainConfig{}, {"f"}), Error);
    CHECK_THROWS_AS(gbdt::fit(X, {0, 1}, Objective::BinaryLogistic, TrainConfig{},
                              {"f", "extra"}),
                    Error);

    TrainConfig cfg;
    cfg.rounds = 2;
    const auto model = gbdt::fit(X, {0, 1}, Objective::BinaryLogistic, cfg, {"f"});
    CHECK_THROWS_AS(model.predict_proba(std::vector<double>{1.0, 2.0}), Error);
    CHECK_THROWS_AS(gbdt::feature_importance(gbdt::GbdtModel{}), Error);
}
