#include "repocorpus/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "repocorpus/decontam.hpp"
#include "repocorpus/dedup.hpp"
#include "repocorpus/fim.hpp"
#include "repocorpus/ingest.hpp"
#include "repocorpus/packing.hpp"
#include "repocorpus/parallel.hpp"
#include "repocorpus/quality_filter.hpp"
#include "repocorpus/repo_sample.hpp"
#include "repocorpus/shard_io.hpp"
#include "repocorpus/text.hpp"
#include "repocorpus/tokenizer.hpp"

namespace repocorpus {

namespace fs = std::filesystem;
using nlohmann::json;

StageError::StageError(Stage stage, const std::string& what)
    : std::runtime_error(fmt::format("stage {} failed: {}", stage_name(stage), what)), stage_(stage) {}

void emit_stats(const CorpusStats& stats, const fs::path& output_dir) {
  write_file_atomic(output_dir / "stats.txt", stats.render_table());
  write_file_atomic(output_dir / "stats.json", stats.to_json().dump(2) + "\n");
}

namespace {

constexpr int kFormatVersion = 1;
constexpr std::size_t kBuildBatch = 256;

constexpr FilterRule kRules[] = {
    FilterRule::max_line_len,  FilterRule::avg_line_len,  FilterRule::alphabetic_fraction, FilterRule::xml_header,
    FilterRule::visible_min_chars, FilterRule::visible_ratio, FilterRule::data_too_small,  FilterRule::data_too_large,
    FilterRule::repeated_token, FilterRule::long_code_lines,
};

// Repo ids may contain '/', so graph dump names get a readable stem plus a
// short hash to stay unique.
std::string file_stem_for(std::string_view repo_id) {
  std::string out;
  for (char c : repo_id) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_') ? c : '_';
  }
  return out + "-" + to_hex(stable_hash(repo_id)).substr(0, 8);
}

std::string input_digest(const IngestResult& in) {
  std::string hashes;
  hashes.reserve(in.files.size() * 17);
  for (const auto& f : in.files) {
    std::string key = f.repo_id;
    key += '\0';
    key += f.path;
    key += '\0';
    hashes += to_hex(hash_combine(stable_hash(key), stable_hash(f.content)));
    hashes += '\n';
  }
  return sha256_hex(hashes + in.counters.to_json().dump());
}

StageCounters counters_for(Stage s, std::string unit, std::uint64_t input) {
  StageCounters c;
  c.stage = std::string(stage_name(s));
  c.unit = std::move(unit);
  c.input = input;
  c.output = input;
  return c;
}

void append_le32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out += static_cast<char>((v >> (8 * k)) & 0xffu);
}

class Runner {
public:
  Runner(const PipelineConfig& cfg, const RunOptions& opt) : cfg_(cfg), opt_(opt) {}

  RunSummary run();

private:
  fs::path stage_dir(Stage s) const { return cfg_.output / "stages" / std::string(stage_name(s)); }
  fs::path reports_dir() const { return cfg_.output / "reports"; }
  fs::path data_dir() const { return cfg_.output / "data"; }

  std::optional<json> reusable_manifest(Stage s, const std::string& fingerprint) const;
  void load_outputs(Stage s, const json& manifest);

  StageCounters execute(Stage s, json& extra);
  StageCounters run_filter(json& extra);
  StageCounters run_order(json& extra);
  StageCounters run_dedup(json& extra);
  StageCounters run_decontaminate(json& extra);
  StageCounters run_build(json& extra);

  std::vector<ShardInfo> write_files(Stage s) const;
  std::vector<ShardInfo> write_samples(Stage s) const;

  void write_run_manifest(std::optional<Stage> failed, const std::string& error);
  CorpusStats current_stats() const;
  void copy_report(const fs::path& from, const std::optional<fs::path>& to) const;

  const PipelineConfig& cfg_;
  const RunOptions& opt_;

  IngestResult ingest_;
  std::string input_digest_;
  std::vector<SourceFile> files_;
  std::vector<RepoSample> samples_;
  bool have_samples_ = false;
  std::vector<std::string> build_dropped_;  // repo ids without a packed document

  std::vector<StageOutcome> done_;
  std::string pending_fingerprint_;
};

std::optional<json> Runner::reusable_manifest(Stage s, const std::string& fingerprint) const {
  const fs::path file = stage_dir(s) / "manifest.json";
  if (!fs::exists(file)) return std::nullopt;
  try {
    json m = json::parse(read_file(file));
    if (m.value("format_version", 0) != kFormatVersion || m.value("status", "") != "complete" ||
        m.value("fingerprint", "") != fingerprint) {
      return std::nullopt;
    }
    verify_shards(stage_dir(s), shard_list_from_json(m.at("shards")));
    if (s == Stage::build && m.at("enabled").get<bool>()) {
      verify_shards(data_dir(), shard_list_from_json(m.at("data_shards")));
      verify_shards(data_dir(), shard_list_from_json(m.at("boundary_shards")));
      if (sha256_file(data_dir() / "manifest.json") != m.at("data_manifest_sha256").get<std::string>()) {
        return std::nullopt;
      }
    }
    return m;
  } catch (const std::exception&) {
    // Unreadable or altered checkpoint: recompute the stage.
    return std::nullopt;
  }
}

void Runner::load_outputs(Stage s, const json& manifest) {
  const auto records = read_jsonl_shards(stage_dir(s), shard_list_from_json(manifest.at("shards")));
  switch (s) {
    case Stage::filter:
      files_.clear();
      for (const auto& r : records) files_.push_back(source_file_from_json(r));
      break;
    case Stage::order:
    case Stage::dedup:
    case Stage::decontaminate:
      samples_.clear();
      for (const auto& r : records) samples_.push_back(repo_sample_from_json(r));
      files_.clear();
      have_samples_ = true;
      break;
    case Stage::build:
      build_dropped_ = manifest.at("dropped_repo_ids").get<std::vector<std::string>>();
      break;
  }
}

std::vector<ShardInfo> Runner::write_files(Stage s) const {
  ShardWriter w(stage_dir(s), cfg_.shard_records);
  for (const auto& f : files_) w.write_json(source_file_to_json(f));
  return w.finish();
}

std::vector<ShardInfo> Runner::write_samples(Stage s) const {
  ShardWriter w(stage_dir(s), cfg_.shard_records);
  for (const auto& sample : samples_) w.write_json(repo_sample_to_json(sample));
  return w.finish();
}

StageCounters Runner::execute(Stage s, json& extra) {
  switch (s) {
    case Stage::filter: return run_filter(extra);
    case Stage::order: return run_order(extra);
    case Stage::dedup: return run_dedup(extra);
    case Stage::decontaminate: return run_decontaminate(extra);
    case Stage::build: return run_build(extra);
  }
  throw std::logic_error("unknown stage");
}

StageCounters Runner::run_filter(json& extra) {
  auto c = counters_for(Stage::filter, "files", files_.size());
  for (auto rule : kRules) c.drops[std::string(rule_name(rule))] = 0;
  if (cfg_.enabled(Stage::filter)) {
    std::vector<FilterVerdict> verdicts(files_.size());
    parallel_for(files_.size(), cfg_.workers,
                 [&](std::size_t i) { verdicts[i] = evaluate_file(files_[i], cfg_.filter); });
    std::vector<SourceFile> kept;
    for (std::size_t i = 0; i < files_.size(); ++i) {
      if (verdicts[i].accepted) {
        kept.push_back(std::move(files_[i]));
      } else {
        ++c.drops[std::string(rule_name(*verdicts[i].rule_fired))];
      }
    }
    files_ = std::move(kept);
  }
  c.output = files_.size();
  extra["shards"] = shard_list_to_json(write_files(Stage::filter));
  return c;
}

StageCounters Runner::run_order(json& extra) {
  auto c = counters_for(Stage::order, "files", files_.size());
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t b = 0; b < files_.size();) {
    std::size_t e = b + 1;
    while (e < files_.size() && files_[e].repo_id == files_[b].repo_id) ++e;
    ranges.emplace_back(b, e);
    b = e;
  }
  const std::span<const SourceFile> all(files_);
  std::vector<RepoSample> samples(ranges.size());
  std::vector<OrderStats> stats(ranges.size());
  std::vector<std::string> dumps(ranges.size());
  const bool enabled = cfg_.enabled(Stage::order);
  fs::remove_all(reports_dir() / "graphs");
  parallel_for(ranges.size(), cfg_.workers, [&](std::size_t r) {
    const auto [b, e] = ranges[r];
    const auto repo = all.subspan(b, e - b);
    if (!enabled) {
      samples[r] = concatenate_with_paths(repo.front().repo_id, repo);
      return;
    }
    auto ordered = order_repository(repo.front().repo_id, repo);
    samples[r] = std::move(ordered.sample);
    stats[r] = ordered.stats;
    if (cfg_.dump_graphs) dumps[r] = ordered.graph.dump_edges();
  });

  std::uint64_t out_files = 0, edges = 0, unsupported = 0, components = 0;
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    out_files += samples[r].ordered_paths.size();
    edges += stats[r].edges;
    unsupported += stats[r].unsupported_files;
    components += stats[r].components;
    if (enabled && cfg_.dump_graphs) {
      write_file_atomic(reports_dir() / "graphs" / (file_stem_for(samples[r].repo_id) + ".edges"), dumps[r]);
    }
  }
  c.output = out_files;
  c.info = {{"repos", samples.size()}, {"edges", edges}, {"unsupported_files", unsupported},
            {"components", components}};
  samples_ = std::move(samples);
  files_.clear();
  have_samples_ = true;
  extra["shards"] = shard_list_to_json(write_samples(Stage::order));
  return c;
}

StageCounters Runner::run_dedup(json& extra) {
  auto c = counters_for(Stage::dedup, "repos", samples_.size());
  c.drops["near_duplicate"] = 0;
  fs::remove(reports_dir() / "dedup_clusters.jsonl");
  if (cfg_.enabled(Stage::dedup)) {
    MinHashParams params = cfg_.dedup.minhash;
    params.seed = cfg_.seed;
    const MinHasher hasher(params);
    std::vector<MinHashSignature> sigs(samples_.size());
    parallel_for(samples_.size(), cfg_.workers, [&](std::size_t i) { sigs[i] = hasher.sign(samples_[i]); });
    const LshParams lsh =
        cfg_.dedup.auto_banding ? optimal_banding(cfg_.dedup.threshold, params.num_perm) : cfg_.dedup.lsh;
    const auto clusters = find_near_duplicates(sigs, cfg_.dedup.threshold, lsh);
    const std::size_t before = samples_.size();
    samples_ = dedup_repos(std::move(samples_), clusters);
    c.drops["near_duplicate"] = before - samples_.size();
    c.info = {{"clusters", clusters.size()}, {"bands", lsh.bands}, {"rows", lsh.rows}};
    if (cfg_.dedup.report) {
      std::string report;
      for (const auto& cl : clusters) {
        json pairs = json::array();
        for (const auto& p : cl.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}, {"similarity", p.similarity}});
        report += json{{"members", cl.member_repo_ids}, {"representative", cl.representative}, {"pairs", pairs}}
                      .dump() +
                  "\n";
      }
      write_file_atomic(reports_dir() / "dedup_clusters.jsonl", report);
    }
  }
  c.output = samples_.size();
  extra["shards"] = shard_list_to_json(write_samples(Stage::dedup));
  return c;
}

StageCounters Runner::run_decontaminate(json& extra) {
  auto c = counters_for(Stage::decontaminate, "repos", samples_.size());
  c.drops["contaminated"] = 0;
  fs::remove(reports_dir() / "contamination.jsonl");
  if (cfg_.enabled(Stage::decontaminate)) {
    const auto tests = load_test_sets(cfg_.decontam.test_sets);
    const auto index = build_contamination_index(tests);
    std::vector<ContaminationReport> reports(samples_.size());
    parallel_for(samples_.size(), cfg_.workers,
                 [&](std::size_t i) { reports[i] = is_contaminated(samples_[i], index); });
    std::vector<RepoSample> kept;
    std::string report;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!reports[i].hit) {
        kept.push_back(std::move(samples_[i]));
        continue;
      }
      ++c.drops["contaminated"];
      report += json{{"repo_id", samples_[i].repo_id},
                     {"benchmarks", reports[i].benchmarks},
                     {"matched", reports[i].matched_entries}}
                    .dump() +
                "\n";
    }
    samples_ = std::move(kept);
    c.info = {{"test_strings", tests.size()},
              {"ten_gram_strings", index.ten_gram_count()},
              {"exact_strings", index.exact_count()},
              {"ignored_strings", index.ignored_count()}};
    if (cfg_.decontam.report) write_file_atomic(reports_dir() / "contamination.jsonl", report);
  }
  c.output = samples_.size();
  extra["shards"] = shard_list_to_json(write_samples(Stage::decontaminate));
  return c;
}

StageCounters Runner::run_build(json& extra) {
  auto c = counters_for(Stage::build, "documents", samples_.size());
  extra["shards"] = json::array();
  extra["dropped_repo_ids"] = json::array();
  build_dropped_.clear();
  fs::remove_all(data_dir());
  if (!cfg_.enabled(Stage::build)) return c;

  c.drops = {{"empty_document", 0}, {"sentinel_collision", 0}, {"tokenizer_error", 0}};
  const auto& b = cfg_.build;
  const ByteTokenizer tokenizer(b.sentinels);
  const FimConfig fim{b.fim_rate, b.fim_mode, cfg_.seed};
  const bool binary = b.format == OutputFormat::binary;

  ShardWriter entries(data_dir(), b.entries_per_shard, binary ? ".bin" : ".jsonl");
  std::optional<ShardWriter> boundaries;
  if (binary) boundaries.emplace(data_dir(), b.entries_per_shard, ".jsonl", "boundaries");

  std::uint64_t entry_index = 0;
  Packer packer(b.entry_len, b.tail, tokenizer.eos_id(), [&](PackedEntry&& e) {
    if (binary) {
      std::string raw;
      raw.reserve(e.token_ids.size() * 4);
      for (auto id : e.token_ids) append_le32(raw, id);
      entries.write_raw(raw);
      boundaries->write_json({{"entry", entry_index}, {"doc_boundaries", e.doc_boundaries}});
    } else {
      entries.write_json({{"tokens", e.token_ids}, {"doc_boundaries", e.doc_boundaries}});
    }
    ++entry_index;
  });

  enum class Fate { packed, empty, collision, tokenizer };
  std::uint64_t transformed = 0;
  for (std::size_t base = 0; base < samples_.size(); base += kBuildBatch) {
    const std::size_t n = std::min(kBuildBatch, samples_.size() - base);
    std::vector<std::vector<TokenId>> tokens(n);
    std::vector<Fate> fate(n, Fate::packed);
    std::vector<bool> was_fim(n, false);
    parallel_for(n, cfg_.workers, [&](std::size_t k) {
      const std::string& doc = samples_[base + k].text;
      if (doc.empty()) {
        fate[k] = Fate::empty;
        return;
      }
      auto out = fim_transform(doc, fim, b.sentinels, base + k);
      if (out.status == FimStatus::collision) {
        fate[k] = Fate::collision;
        return;
      }
      was_fim[k] = out.status == FimStatus::transformed;
      try {
        tokens[k] = tokenizer.encode(out.text);
      } catch (const TokenizerError&) {
        fate[k] = Fate::tokenizer;
      }
    });
    for (std::size_t k = 0; k < n; ++k) {
      switch (fate[k]) {
        case Fate::packed:
          packer.add_document(tokens[k]);
          transformed += was_fim[k];
          continue;
        case Fate::empty: ++c.drops["empty_document"]; break;
        case Fate::collision: ++c.drops["sentinel_collision"]; break;
        case Fate::tokenizer: ++c.drops["tokenizer_error"]; break;
      }
      build_dropped_.push_back(samples_[base + k].repo_id);
    }
  }
  packer.finish();
  const auto& ps = packer.stats();
  c.output = ps.documents;
  c.info = {{"fim_transformed", transformed},  {"entries", ps.entries},
            {"total_tokens", ps.total_tokens}, {"dropped_tail_tokens", ps.dropped_tail_tokens},
            {"padded_tokens", ps.padded_tokens}};

  const auto entry_shards = entries.finish();
  const auto boundary_shards = boundaries ? boundaries->finish() : std::vector<ShardInfo>{};
  const SentinelSet& s = b.sentinels;
  json data_manifest = {
      {"format_version", kFormatVersion},
      {"format", binary ? "binary" : "jsonl"},
      {"entry_len", b.entry_len},
      {"dtype", "uint32-le"},
      {"tail", b.tail == TailPolicy::drop ? "drop" : "pad"},
      {"tokenizer", {{"name", "byte"}, {"vocab_size", tokenizer.vocab_size()}, {"eos_id", tokenizer.eos_id()}}},
      {"sentinels",
       {{"fim_start", {{"text", s.fim_start}, {"id", ByteTokenizer::kFimStart}}},
        {"fim_hole", {{"text", s.fim_hole}, {"id", ByteTokenizer::kFimHole}}},
        {"fim_end", {{"text", s.fim_end}, {"id", ByteTokenizer::kFimEnd}}},
        {"eos", {{"text", s.eos}, {"id", ByteTokenizer::kEos}}}}},
      {"fim", {{"rate", b.fim_rate}, {"mode", fim_mode_name(b.fim_mode)}, {"seed", cfg_.seed}}},
      {"documents", ps.documents},
      {"entries", ps.entries},
      {"total_tokens", ps.total_tokens},
      {"dropped_tail_tokens", ps.dropped_tail_tokens},
      {"padded_tokens", ps.padded_tokens},
      {"shards", shard_list_to_json(entry_shards)},
      {"boundary_shards", shard_list_to_json(boundary_shards)},
  };
  const std::string data_manifest_text = data_manifest.dump(2) + "\n";
  write_file_atomic(data_dir() / "manifest.json", data_manifest_text);

  extra["data_shards"] = shard_list_to_json(entry_shards);
  extra["boundary_shards"] = shard_list_to_json(boundary_shards);
  extra["data_manifest_sha256"] = sha256_hex(data_manifest_text);
  extra["dropped_repo_ids"] = build_dropped_;
  return c;
}

CorpusStats Runner::current_stats() const {
  StatsAccumulator acc;
  const std::set<std::string> dropped(build_dropped_.begin(), build_dropped_.end());
  if (!have_samples_) {
    for (const auto& f : files_) acc.add(f);
  } else {
    for (const auto& s : samples_) {
      if (!dropped.contains(s.repo_id)) acc.add(s);
    }
  }
  std::vector<StageCounters> stages{ingest_.counters};
  for (const auto& d : done_) stages.push_back(d.counters);
  return acc.finish(std::move(stages));
}

void Runner::write_run_manifest(std::optional<Stage> failed, const std::string& error) {
  json stages = json::array();
  for (Stage s : kAllStages) {
    json entry = {{"stage", stage_name(s)}, {"enabled", cfg_.enabled(s)}};
    auto it = std::find_if(done_.begin(), done_.end(), [&](const StageOutcome& o) { return o.stage == s; });
    if (it != done_.end()) {
      entry["status"] = "complete";
      entry["fingerprint"] = it->fingerprint;
      entry["counters"] = it->counters.to_json();
    } else if (failed == s) {
      entry["status"] = "failed";
      entry["fingerprint"] = pending_fingerprint_;
      entry["error"] = error;
    } else {
      entry["status"] = "pending";
    }
    stages.push_back(std::move(entry));
  }
  std::string status = "partial";
  if (failed) {
    status = "failed";
  } else if (done_.size() == kAllStages.size()) {
    status = "complete";
  }
  json m = {{"format_version", kFormatVersion},
            {"status", status},
            {"input_digest", input_digest_},
            {"ingest", ingest_.counters.to_json()},
            {"stages", stages},
            {"last_completed", done_.empty() ? json(nullptr) : json(stage_name(done_.back().stage))}};
  write_file_atomic(cfg_.output / "run_manifest.json", m.dump(2) + "\n");
}

void Runner::copy_report(const fs::path& from, const std::optional<fs::path>& to) const {
  if (!to) return;
  write_file_atomic(*to, fs::exists(from) ? read_file(from) : std::string());
}

RunSummary Runner::run() {
  const ExtensionMap map = cfg_.extension_map ? ExtensionMap::load(*cfg_.extension_map) : ExtensionMap::builtin();
  fs::create_directories(cfg_.output);
  ingest_ = ingest_inputs(cfg_.inputs, map);
  input_digest_ = input_digest(ingest_);
  files_ = std::move(ingest_.files);
  ingest_.files.clear();

  std::string upstream = sha256_hex("repocorpus/" + std::to_string(kFormatVersion) + "\n" + input_digest_);
  for (Stage s : kAllStages) {
    const std::string fingerprint = sha256_hex(upstream + "\n" + stage_parameters(cfg_, s));
    pending_fingerprint_ = fingerprint;
    StageOutcome outcome{s, cfg_.enabled(s), false, fingerprint, {}};
    if (auto m = reusable_manifest(s, fingerprint)) {
      load_outputs(s, *m);
      outcome.resumed = true;
      outcome.counters = StageCounters::from_json(m->at("counters"));
    } else if (opt_.stats_only) {
      break;
    } else {
      json extra;
      try {
        fs::remove_all(stage_dir(s));
        fs::create_directories(stage_dir(s));
        outcome.counters = execute(s, extra);
      } catch (const std::exception& e) {
        write_file_atomic(stage_dir(s) / "manifest.json",
                          json{{"format_version", kFormatVersion},
                               {"stage", stage_name(s)},
                               {"status", "failed"},
                               {"fingerprint", fingerprint},
                               {"error", e.what()}}
                                  .dump(2) +
                              "\n");
        write_run_manifest(s, e.what());
        throw StageError(s, e.what());
      }
      json m = {{"format_version", kFormatVersion},
                {"stage", stage_name(s)},
                {"status", "complete"},
                {"enabled", cfg_.enabled(s)},
                {"fingerprint", fingerprint},
                {"counters", outcome.counters.to_json()}};
      m.update(extra);
      write_file_atomic(stage_dir(s) / "manifest.json", m.dump(2) + "\n");
    }
    done_.push_back(std::move(outcome));
    upstream = fingerprint;
    if (opt_.stop_after == s) break;
  }

  if (done_.empty()) throw StageError(Stage::filter, "no completed stage to report on");
  write_run_manifest(std::nullopt, {});

  RunSummary summary;
  summary.ingest = ingest_.counters;
  summary.stages = done_;
  summary.stats = current_stats();
  emit_stats(summary.stats, cfg_.output);
  summary.manifest = json::parse(read_file(cfg_.output / "run_manifest.json"));
  copy_report(reports_dir() / "dedup_clusters.jsonl", opt_.dedup_report);
  copy_report(reports_dir() / "contamination.jsonl", opt_.contamination_report);
  return summary;
}

} // namespace

RunSummary run_pipeline(const PipelineConfig& config, const RunOptions& options) {
  if (auto problems = validate_config(config); !problems.empty()) throw ConfigError(std::move(problems));
  Runner runner(config, options);
  return runner.run();
}

} // namespace repocorpus
