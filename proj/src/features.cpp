#include "pdeid/features.hpp"

#include "pdeid/motion.hpp"
#include "pdeid/signal.hpp"
#include "pdeid/spatial.hpp"

namespace pdeid::features {

Task task_from_name(const std::string& name) {
    if (name == "utt") return Task::Utt;
    if (name == "ut") return Task::Ut;
    if (name == "conv") return Task::Conv;
    if (name == "multiclass") return Task::Multiclass;
    throw Error(ErrorCode::UsageError, "unknown task: " + name);
}

const char* task_name(Task t) {
    switch (t) {
    case Task::Utt: return "utt";
    case Task::Ut: return "ut";
    case Task::Conv: return "conv";
    case Task::Multiclass: return "multiclass";
    }
    return "?";
}

FeatureVector extract_all(const GridField& field, const PdeSpec& spec) {
    FeatureVector fv;
    fv.values.reserve(feature_names::kTotal);

    const signal::TimeSignal prepared = signal::prepare_signal(signal::delta_signal(field));
    const auto stat = signal::stats_features(prepared);
    fv.values.insert(fv.values.end(), stat.begin(), stat.end());

    const signal::EnvelopePair env = signal::envelopes(prepared);
    const auto amp = signal::amplitude_features(env);
    fv.values.insert(fv.values.end(), amp.begin(), amp.end());

    const auto fft = signal::fft_features(prepared);
    fv.values.insert(fv.values.end(), fft.begin(), fft.end());

    fv.values.push_back(motion::motion_magnitude(motion::motion_vectors(field)));

    const auto sym = spatial::spatial_features(field, spec);
    fv.values.insert(fv.values.end(), sym.begin(), sym.end());

    if (!fv.finite()) {
        throw Error(ErrorCode::NonFinite, "feature extraction produced non-finite values");
    }
    return fv;
}

namespace {

bool family_in_task(const std::string& family, Task task) {
    switch (task) {
    case Task::Utt:
    case Task::Ut:
        return family == "stat" || family == "amp" || family == "fft" || family == "motion";
    case Task::Conv:
        return family == "motion" || family == "sym";
    case Task::Multiclass:
        return true;
    }
    return false;
}

} // namespace

std::vector<int> task_mask_indices(Task task) {
    std::vector<int> idx;
    for (int i = 0; i < feature_names::kTotal; ++i) {
        if (family_in_task(feature_names::family_of(i), task)) idx.push_back(i);
    }
    return idx;
}

std::vector<std::string> task_mask(Task task) {
    std::vector<std::string> names;
    for (int i : task_mask_indices(task)) names.push_back(feature_names::all()[i]);
    return names;
}

} // namespace pdeid::features
