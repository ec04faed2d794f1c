#include "pdeid/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pdeid/sha256.hpp"

namespace pdeid::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little,
              "sample files are little-endian; byte swapping not implemented");

json spec_to_json(const PdeSpec& s) {
    return json{{"e", s.e},
                {"d", s.d},
                {"c", s.c},
                {"bx", s.bx},
                {"by", s.by},
                {"bc", s.bc},
                {"ic", s.ic},
                {"dt_sim", s.dt_sim},
                {"nt", s.nt},
                {"ny", s.ny},
                {"nx", s.nx},
                {"domain_len", s.domain_len}};
}

PdeSpec spec_from_json(const json& j) {
    PdeSpec s;
    s.e = j.at("e").get<double>();
    s.d = j.at("d").get<double>();
    s.c = j.at("c").get<double>();
    s.bx = j.at("bx").get<double>();
    s.by = j.at("by").get<double>();
    const auto bc = j.at("bc").get<std::vector<double>>();
    if (bc.size() != 4) throw Error(ErrorCode::DataError, "bc must have 4 entries");
    std::copy(bc.begin(), bc.end(), s.bc.begin());
    s.ic = j.at("ic").get<double>();
    s.dt_sim = j.at("dt_sim").get<double>();
    s.nt = j.at("nt").get<int>();
    s.ny = j.at("ny").get<int>();
    s.nx = j.at("nx").get<int>();
    s.domain_len = j.at("domain_len").get<double>();
    return s;
}

json labels_to_json(const TermLabels& l) {
    return json{{"has_utt", l.has_utt ? 1 : 0},
                {"has_ut", l.has_ut ? 1 : 0},
                {"has_conv", l.has_conv ? 1 : 0},
                {"class_id", l.class_id}};
}

TermLabels labels_from_json(const json& j) {
    TermLabels l;
    l.has_utt = j.at("has_utt").get<int>() != 0;
    l.has_ut = j.at("has_ut").get<int>() != 0;
    l.has_conv = j.at("has_conv").get<int>() != 0;
    l.class_id = j.at("class_id").get<int>();
    return l;
}

} // namespace

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::DataError, "cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::DataError, "short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::DataError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sample(const std::string& dir, const SampleMeta& meta, const GridField& field) {
    const std::string field_path = join_path(dir, meta.id + ".f64");
    {
        std::ofstream out(field_path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::DataError, "cannot write " + field_path);
        out.write(reinterpret_cast<const char*>(field.values.data()),
                  static_cast<std::streamsize>(field.values.size() * sizeof(double)));
        if (!out) throw Error(ErrorCode::DataError, "short write to " + field_path);
    }
    json j;
    j["format"] = kSampleFormat;
    j["id"] = meta.id;
    j["spec"] = spec_to_json(meta.spec);
    j["labels"] = labels_to_json(meta.labels);
    j["shape"] = {field.nt, field.ny, field.nx};
    j["dt"] = field.dt;
    j["norm"] = {{"min", meta.vmin}, {"max", meta.vmax}, {"constant", meta.constant_field}};
    write_text_file(join_path(dir, meta.id + ".json"), j.dump(2) + "\n");
}

SampleMeta read_sample_meta(const std::string& dir, const std::string& id) {
    const json j = json::parse(read_text_file(join_path(dir, id + ".json")));
    if (j.at("format").get<std::string>() != kSampleFormat) {
        throw Error(ErrorCode::DataError, "unexpected sample format for " + id);
    }
    SampleMeta meta;
    meta.id = j.at("id").get<std::string>();
    meta.spec = spec_from_json(j.at("spec"));
    meta.labels = labels_from_json(j.at("labels"));
    meta.vmin = j.at("norm").at("min").get<double>();
    meta.vmax = j.at("norm").at("max").get<double>();
    meta.constant_field = j.at("norm").at("constant").get<bool>();
    return meta;
}

LoadedSample read_sample(const std::string& dir, const std::string& id) {
    LoadedSample s;
    s.meta = read_sample_meta(dir, id);
    const std::string field_path = join_path(dir, id + ".f64");
    std::ifstream in(field_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::DataError, "cannot read " + field_path);
    s.field = GridField(s.meta.spec.nt, s.meta.spec.ny, s.meta.spec.nx, s.meta.spec.dt_sim);
    in.read(reinterpret_cast<char*>(s.field.values.data()),
            static_cast<std::streamsize>(s.field.values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(s.field.values.size() * sizeof(double))) {
        throw Error(ErrorCode::DataError, "sample " + id + ": truncated field file");
    }
    return s;
}

void write_manifest(const std::string& dir, const Manifest& manifest) {
    json entries = json::array();
    for (const auto& e : manifest.entries) {
        entries.push_back(json{{"id", e.id},
                               {"class_id", e.class_id},
                               {"field_file", e.field_file},
                               {"meta_file", e.meta_file},
                               {"field_sha256", e.field_sha256}});
    }
    json j;
    j["format"] = kManifestFormat;
    j["seed"] = manifest.seed;
    j["count"] = manifest.entries.size();
    j["samples"] = std::move(entries);
    write_text_file(join_path(dir, "manifest.json"), j.dump(2) + "\n");
}

Manifest read_manifest(const std::string& dir) {
    const json j = json::parse(read_text_file(join_path(dir, "manifest.json")));
    if (j.at("format").get<std::string>() != kManifestFormat) {
        throw Error(ErrorCode::DataError, "unexpected manifest format in " + dir);
    }
    Manifest m;
    m.seed = j.at("seed").get<uint64_t>();
    for (const auto& e : j.at("samples")) {
        ManifestEntry entry;
        entry.id = e.at("id").get<std::string>();
        entry.class_id = e.at("class_id").get<int>();
        entry.field_file = e.at("field_file").get<std::string>();
        entry.meta_file = e.at("meta_file").get<std::string>();
        entry.field_sha256 = e.at("field_sha256").get<std::string>();
        m.entries.push_back(std::move(entry));
    }
    return m;
}

void write_feature_csv(const std::string& path, const FeatureTable& table) {
    if (table.ids.size() != table.rows.size() || table.ids.size() != table.labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "feature table columns disagree");
    }
    std::ostringstream out;
    out << "sample_id";
    for (const auto& name : feature_names::all()) out << ',' << name;
    out << ",class_id,has_utt,has_ut,has_conv\n";
    for (size_t i = 0; i < table.ids.size(); ++i) {
        const auto& fv = table.rows[i];
        if (fv.values.size() != feature_names::kTotal) {
            throw Error(ErrorCode::DimensionMismatch,
                        "row " + table.ids[i] + " has wrong feature count");
        }
        out << table.ids[i];
        for (double v : fv.values) out << ',' << format_double(v);
        const auto& l = table.labels[i];
        out << ',' << l.class_id << ',' << (l.has_utt ? 1 : 0) << ',' << (l.has_ut ? 1 : 0) << ','
            << (l.has_conv ? 1 : 0) << '\n';
    }
    write_text_file(path, out.str());
}

FeatureTable read_feature_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::DataError, "empty feature csv " + path);
    {
        std::ostringstream expect;
        expect << "sample_id";
        for (const auto& name : feature_names::all()) expect << ',' << name;
        expect << ",class_id,has_utt,has_ut,has_conv";
        if (line != expect.str()) {
            throw Error(ErrorCode::DataError, "feature csv header mismatch in " + path);
        }
    }
    FeatureTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 1 + feature_names::kTotal + 4) {
            throw Error(ErrorCode::DataError, "feature csv row width mismatch in " + path);
        }
        table.ids.push_back(cells[0]);
        FeatureVector fv;
        fv.values.reserve(feature_names::kTotal);
        for (int i = 0; i < feature_names::kTotal; ++i) {
            fv.values.push_back(std::stod(cells[1 + i]));
        }
        table.rows.push_back(std::move(fv));
        TermLabels l;
        l.class_id = std::stoi(cells[1 + feature_names::kTotal]);
        l.has_utt = cells[2 + feature_names::kTotal] == "1";
        l.has_ut = cells[3 + feature_names::kTotal] == "1";
        l.has_conv = cells[4 + feature_names::kTotal] == "1";
        table.labels.push_back(l);
    }
    return table;
}

void write_series_csv(const std::string& path, const std::string& x_name,
                      const std::string& y_name, const std::vector<double>& x,
                      const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "series columns differ in length");
    }
    std::ostringstream out;
    out << x_name << ',' << y_name << '\n';
    for (size_t i = 0; i < x.size(); ++i) {
        out << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
    }
    write_text_file(path, out.str());
}

} // namespace pdeid::io
