#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::io {

inline constexpr const char* kSampleFormat = "pde-sample/1";
inline constexpr const char* kManifestFormat = "pde-dataset/1";
inline constexpr const char* kRunFormat = "pde-run/1";

/// Everything persisted next to a raw field file.
struct SampleMeta {
    std::string id;
    PdeSpec spec;
    TermLabels labels;
    double vmin = 0.0; // normalization recorded so raw values are recoverable
    double vmax = 0.0;
    bool constant_field = false;
};

/// Writes <id>.f64 (little-endian doubles, (t,y,x) row-major) and <id>.json.
void write_sample(const std::string& dir, const SampleMeta& meta, const GridField& field);

struct LoadedSample {
    SampleMeta meta;
    GridField field;
};

LoadedSample read_sample(const std::string& dir, const std::string& id);
SampleMeta read_sample_meta(const std::string& dir, const std::string& id);

struct ManifestEntry {
    std::string id;
    int class_id = 0;
    std::string field_file;
    std::string meta_file;
    std::string field_sha256;
};

struct Manifest {
    uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
};

void write_manifest(const std::string& dir, const Manifest& manifest);
Manifest read_manifest(const std::string& dir);

/// Feature matrix CSV: sample_id, the 46 feature names, class_id, has_utt,
/// has_ut, has_conv. Row order follows the manifest.
struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<FeatureVector> rows;
    std::vector<TermLabels> labels;
};

void write_feature_csv(const std::string& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::string& path);

/// Two-column plot series (x, y) with a header line.
void write_series_csv(const std::string& path, const std::string& x_name,
                      const std::string& y_name, const std::vector<double>& x,
                      const std::vector<double>& y);

/// Deterministic shortest-precision-free formatting used by every CSV writer.
std::string format_double(double v);

std::string join_path(const std::string& dir, const std::string& name);
void ensure_dir(const std::string& dir);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace pdeid::io
