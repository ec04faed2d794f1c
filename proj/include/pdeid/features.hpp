#pragma once

#include <string>
#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::features {

enum class Task { Utt, Ut, Conv, Multiclass };

Task task_from_name(const std::string& name);
const char* task_name(Task t);

/// All 46 features of one normalized field, in the fixed name order.
FeatureVector extract_all(const GridField& field, const PdeSpec& spec);

/// Feature names visible to a task's detector.
std::vector<std::string> task_mask(Task task);

/// Column indices of the mask within the 46-entry vector.
std::vector<int> task_mask_indices(Task task);

} // namespace pdeid::features
