#include "repocorpus/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "repocorpus/text.hpp"

namespace repocorpus {
namespace {

using nlohmann::json;

std::string_view tail_name(TailPolicy t) { return t == TailPolicy::drop ? "drop" : "pad"; }
std::string_view format_name(OutputFormat f) { return f == OutputFormat::jsonl ? "jsonl" : "binary"; }

json filter_json(const FilterThresholds& t) {
  return {
      {"max_line_len", t.max_line_len},
      {"max_avg_line_len", t.max_avg_line_len},
      {"min_alphabetic_fraction", t.min_alphabetic_fraction},
      {"xml_header_window", t.xml_header_window},
      {"html_min_visible_chars", t.html_min_visible_chars},
      {"html_min_visible_ratio", t.html_min_visible_ratio},
      {"data_min_chars", t.data_min_chars},
      {"data_max_chars", t.data_max_chars},
      {"quality_heuristics", t.quality_heuristics},
      {"max_repeated_token_share", t.max_repeated_token_share},
      {"repeated_token_min_tokens", t.repeated_token_min_tokens},
      {"long_line_len", t.long_line_len},
      {"max_long_line_share", t.max_long_line_share},
  };
}

json sentinels_json(const SentinelSet& s) {
  return {{"fim_start", s.fim_start}, {"fim_hole", s.fim_hole}, {"fim_end", s.fim_end}, {"eos", s.eos}};
}

// Reads typed fields out of one JSON object, recording problems instead of
// throwing so that every violation is reported together.
class Reader {
public:
  Reader(const json& obj, std::string where, std::vector<std::string>& problems)
      : obj_(obj), where_(std::move(where)), problems_(problems) {
    if (!obj_.is_object()) problems_.push_back(where_ + ": expected an object");
  }

  ~Reader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!known_.contains(key)) problems_.push_back(fmt::format("{}: unknown key '{}'", where_, key));
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    known_.insert(key);
    if (!obj_.is_object()) return;
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      problems_.push_back(fmt::format("{}.{}: wrong type ({})", where_, key, it->type_name()));
    }
  }

  const json* child(const char* key) {
    known_.insert(key);
    if (!obj_.is_object()) return nullptr;
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const std::string& where() const { return where_; }

private:
  const json& obj_;
  std::string where_;
  std::vector<std::string>& problems_;
  std::set<std::string> known_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

} // namespace

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::filter: return "filter";
    case Stage::order: return "order";
    case Stage::dedup: return "dedup";
    case Stage::decontaminate: return "decontaminate";
    case Stage::build: return "build";
  }
  return "unknown";
}

std::optional<Stage> stage_from_name(std::string_view name) {
  for (const auto s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  - " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

json config_to_json(const PipelineConfig& cfg) {
  json inputs = json::array();
  for (const auto& p : cfg.inputs) inputs.push_back(p.string());
  json stages = json::object();
  for (const auto s : kAllStages) stages[std::string(stage_name(s))] = cfg.enabled(s);
  json test_sets = json::array();
  for (const auto& p : cfg.decontam.test_sets) test_sets.push_back(p.string());

  return {
      {"inputs", inputs},
      {"output", cfg.output.string()},
      {"extension_map", cfg.extension_map ? json(cfg.extension_map->string()) : json(nullptr)},
      {"workers", cfg.workers},
      {"seed", cfg.seed},
      {"shard_records", cfg.shard_records},
      {"stages", stages},
      {"filter", filter_json(cfg.filter)},
      {"order", {{"dump_graphs", cfg.dump_graphs}}},
      {"dedup",
       {{"num_perm", cfg.dedup.minhash.num_perm},
        {"shingle_width", cfg.dedup.minhash.shingle_width},
        {"threshold", cfg.dedup.threshold},
        {"bands", cfg.dedup.lsh.bands},
        {"rows", cfg.dedup.lsh.rows},
        {"auto_banding", cfg.dedup.auto_banding},
        {"report", cfg.dedup.report}}},
      {"decontaminate", {{"test_sets", test_sets}, {"report", cfg.decontam.report}}},
      {"build",
       {{"fim_rate", cfg.build.fim_rate},
        {"fim_mode", fim_mode_name(cfg.build.fim_mode)},
        {"entry_len", cfg.build.entry_len},
        {"tail", tail_name(cfg.build.tail)},
        {"format", format_name(cfg.build.format)},
        {"entries_per_shard", cfg.build.entries_per_shard},
        {"sentinels", sentinels_json(cfg.build.sentinels)}}},
  };
}

PipelineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  std::vector<std::string> problems;
  {
    Reader top(doc, "config", problems);
    std::vector<std::string> inputs;
    top.get("inputs", inputs);
    for (const auto& p : inputs) cfg.inputs.push_back(resolve(base_dir, p));
    std::string output;
    top.get("output", output);
    if (!output.empty()) cfg.output = resolve(base_dir, output);
    if (const json* em = top.child("extension_map"); em && !em->is_null()) {
      if (em->is_string()) {
        cfg.extension_map = resolve(base_dir, em->get<std::string>());
      } else {
        problems.push_back("config.extension_map: expected a string or null");
      }
    }
    top.get("workers", cfg.workers);
    top.get("seed", cfg.seed);
    top.get("shard_records", cfg.shard_records);

    if (const json* st = top.child("stages")) {
      Reader r(*st, "stages", problems);
      for (const auto s : kAllStages) {
        r.get(std::string(stage_name(s)).c_str(), cfg.stages[static_cast<std::size_t>(s)]);
      }
    }
    if (const json* f = top.child("filter")) {
      Reader r(*f, "filter", problems);
      auto& t = cfg.filter;
      r.get("max_line_len", t.max_line_len);
      r.get("max_avg_line_len", t.max_avg_line_len);
      r.get("min_alphabetic_fraction", t.min_alphabetic_fraction);
      r.get("xml_header_window", t.xml_header_window);
      r.get("html_min_visible_chars", t.html_min_visible_chars);
      r.get("html_min_visible_ratio", t.html_min_visible_ratio);
      r.get("data_min_chars", t.data_min_chars);
      r.get("data_max_chars", t.data_max_chars);
      r.get("quality_heuristics", t.quality_heuristics);
      r.get("max_repeated_token_share", t.max_repeated_token_share);
      r.get("repeated_token_min_tokens", t.repeated_token_min_tokens);
      r.get("long_line_len", t.long_line_len);
      r.get("max_long_line_share", t.max_long_line_share);
    }
    if (const json* o = top.child("order")) {
      Reader r(*o, "order", problems);
      r.get("dump_graphs", cfg.dump_graphs);
    }
    if (const json* d = top.child("dedup")) {
      Reader r(*d, "dedup", problems);
      r.get("num_perm", cfg.dedup.minhash.num_perm);
      r.get("shingle_width", cfg.dedup.minhash.shingle_width);
      r.get("threshold", cfg.dedup.threshold);
      r.get("bands", cfg.dedup.lsh.bands);
      r.get("rows", cfg.dedup.lsh.rows);
      r.get("auto_banding", cfg.dedup.auto_banding);
      r.get("report", cfg.dedup.report);
    }
    if (const json* d = top.child("decontaminate")) {
      Reader r(*d, "decontaminate", problems);
      std::vector<std::string> sets;
      r.get("test_sets", sets);
      for (const auto& p : sets) cfg.decontam.test_sets.push_back(resolve(base_dir, p));
      r.get("report", cfg.decontam.report);
    }
    if (const json* b = top.child("build")) {
      Reader r(*b, "build", problems);
      r.get("fim_rate", cfg.build.fim_rate);
      std::string mode(fim_mode_name(cfg.build.fim_mode));
      r.get("fim_mode", mode);
      if (auto m = fim_mode_from_name(mode)) {
        cfg.build.fim_mode = *m;
      } else {
        problems.push_back("build.fim_mode: expected 'psm' or 'spm', got '" + mode + "'");
      }
      r.get("entry_len", cfg.build.entry_len);
      std::string tail(tail_name(cfg.build.tail));
      r.get("tail", tail);
      if (tail == "drop" || tail == "pad") {
        cfg.build.tail = tail == "drop" ? TailPolicy::drop : TailPolicy::pad;
      } else {
        problems.push_back("build.tail: expected 'drop' or 'pad', got '" + tail + "'");
      }
      std::string format(format_name(cfg.build.format));
      r.get("format", format);
      if (format == "jsonl" || format == "binary") {
        cfg.build.format = format == "jsonl" ? OutputFormat::jsonl : OutputFormat::binary;
      } else {
        problems.push_back("build.format: expected 'jsonl' or 'binary', got '" + format + "'");
      }
      r.get("entries_per_shard", cfg.build.entries_per_shard);
      if (const json* s = r.child("sentinels")) {
        Reader sr(*s, "build.sentinels", problems);
        sr.get("fim_start", cfg.build.sentinels.fim_start);
        sr.get("fim_hole", cfg.build.sentinels.fim_hole);
        sr.get("fim_end", cfg.build.sentinels.fim_end);
        sr.get("eos", cfg.build.sentinels.eos);
      }
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  cfg.dedup.minhash.seed = cfg.seed;
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"cannot open config file " + file.string()});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({file.string() + ": " + e.what()});
  }
  return config_from_json(doc, file.parent_path());
}

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
  std::vector<std::string> problems;
  namespace fs = std::filesystem;
  if (cfg.output.empty()) problems.push_back("output: required");
  for (const auto& p : cfg.inputs) {
    if (!fs::exists(p)) problems.push_back("inputs: path does not exist: " + p.string());
  }
  if (cfg.extension_map && !fs::is_regular_file(*cfg.extension_map)) {
    problems.push_back("extension_map: file does not exist: " + cfg.extension_map->string());
  }
  for (const auto& p : cfg.decontam.test_sets) {
    if (!fs::is_regular_file(p)) problems.push_back("decontaminate.test_sets: file does not exist: " + p.string());
  }
  if (cfg.workers == 0) problems.push_back("workers: must be at least 1");
  if (cfg.shard_records == 0) problems.push_back("shard_records: must be at least 1");

  const auto& t = cfg.filter;
  auto fraction = [&](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) problems.push_back(fmt::format("filter.{}: must lie in [0, 1]", name));
  };
  fraction(t.min_alphabetic_fraction, "min_alphabetic_fraction");
  fraction(t.html_min_visible_ratio, "html_min_visible_ratio");
  fraction(t.max_repeated_token_share, "max_repeated_token_share");
  fraction(t.max_long_line_share, "max_long_line_share");
  if (t.max_avg_line_len < 0.0) problems.push_back("filter.max_avg_line_len: must be non-negative");
  if (t.data_min_chars > t.data_max_chars) problems.push_back("filter.data_min_chars: exceeds data_max_chars");

  const auto& d = cfg.dedup;
  if (d.minhash.num_perm < 16) problems.push_back("dedup.num_perm: must be at least 16");
  if (d.minhash.shingle_width == 0) problems.push_back("dedup.shingle_width: must be at least 1");
  if (!(d.threshold > 0.0 && d.threshold < 1.0)) problems.push_back("dedup.threshold: must lie in (0, 1)");
  if (!d.auto_banding && (d.lsh.bands == 0 || d.lsh.rows == 0 || d.lsh.bands * d.lsh.rows > d.minhash.num_perm)) {
    problems.push_back("dedup.bands * dedup.rows: must be positive and at most num_perm");
  }

  const auto& b = cfg.build;
  if (!(b.fim_rate >= 0.0 && b.fim_rate <= 1.0)) problems.push_back("build.fim_rate: must lie in [0, 1]");
  if (b.entry_len < 2) problems.push_back("build.entry_len: must be at least 2");
  if (b.entries_per_shard == 0) problems.push_back("build.entries_per_shard: must be at least 1");
  try {
    b.sentinels.validate();
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("build.sentinels: ") + e.what());
  }
  return problems;
}

std::string stage_parameters(const PipelineConfig& cfg, Stage stage) {
  const json full = config_to_json(cfg);
  json params = {{"stage", stage_name(stage)}, {"enabled", cfg.enabled(stage)}};
  switch (stage) {
    case Stage::filter:
      params["filter"] = full["filter"];
      params["extension_map"] = cfg.extension_map ? ExtensionMap::load(*cfg.extension_map).to_json()
                                                  : ExtensionMap::builtin().to_json();
      break;
    case Stage::order: break;
    case Stage::dedup:
      params["dedup"] = full["dedup"];
      params["seed"] = cfg.seed;
      break;
    case Stage::decontaminate: {
      // Test sets are identified by content, not by where they live.
      json digests = json::array();
      for (const auto& p : cfg.decontam.test_sets) {
        std::ifstream in(p, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        digests.push_back(to_hex(stable_hash(bytes)));
      }
      params["test_sets"] = digests;
      params["report"] = cfg.decontam.report;
      break;
    }
    case Stage::build:
      params["build"] = full["build"];
      params["seed"] = cfg.seed;
      params["shard_records"] = cfg.shard_records;
      break;
  }
  if (stage != Stage::build) params["shard_records"] = cfg.shard_records;
  return params.dump();
}

} // namespace repocorpus
