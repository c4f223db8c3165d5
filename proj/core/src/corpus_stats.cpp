#include "repocorpus/corpus_stats.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace repocorpus {
namespace {

__extension__ typedef unsigned __int128 uint128;

constexpr std::uint64_t kBytesPerCentiGb = 10'000'000;  // 1 GB = 1e9 bytes

std::string centi(std::uint64_t v) { return fmt::format("{}.{:02d}", v / 100, v % 100); }
std::string milli(std::uint64_t v) { return fmt::format("{}.{:03d}", v / 1000, v % 1000); }

nlohmann::json row_json(const LanguageRow& r) {
  return {{"language", r.language},
          {"bytes", r.bytes},
          {"files", r.files},
          {"size_gb", centi(r.size_centi_gb)},
          {"files_k", milli(r.files)},
          {"proportion", centi(r.proportion_centi)}};
}

} // namespace

std::uint64_t StageCounters::dropped() const {
  std::uint64_t sum = 0;
  for (const auto& [k, v] : drops) sum += v;
  return sum;
}

nlohmann::json StageCounters::to_json() const {
  return {{"stage", stage}, {"unit", unit}, {"input", input}, {"output", output}, {"drops", drops}, {"info", info}};
}

StageCounters StageCounters::from_json(const nlohmann::json& j) {
  StageCounters c;
  c.stage = j.at("stage").get<std::string>();
  c.unit = j.at("unit").get<std::string>();
  c.input = j.at("input").get<std::uint64_t>();
  c.output = j.at("output").get<std::uint64_t>();
  c.drops = j.at("drops").get<std::map<std::string, std::uint64_t>>();
  c.info = j.at("info").get<std::map<std::string, std::uint64_t>>();
  return c;
}

std::vector<std::uint64_t> apportion(std::span<const std::uint64_t> weights, std::uint64_t units) {
  std::vector<std::uint64_t> out(weights.size(), 0);
  const uint128 total = std::accumulate(weights.begin(), weights.end(), uint128{0});
  if (total == 0) return out;
  std::vector<uint128> remainder(weights.size());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const uint128 scaled = static_cast<uint128>(weights[i]) * units;
    out[i] = static_cast<std::uint64_t>(scaled / total);
    remainder[i] = scaled % total;
    assigned += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < units; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

void StatsAccumulator::add_file(std::optional<LanguageId> language, std::uint64_t bytes) {
  if (!language) return;
  auto& slot = per_language_[*language];
  slot.first += bytes;
  slot.second += 1;
}

void StatsAccumulator::add(const RepoSample& sample) {
  for (std::size_t i = 0; i < sample.ordered_paths.size(); ++i) add_file(sample.languages[i], sample.file_bytes[i]);
}

CorpusStats StatsAccumulator::finish(std::vector<StageCounters> stages) const {
  CorpusStats stats;
  stats.stages = std::move(stages);
  stats.total.language = "Total";
  std::vector<std::uint64_t> bytes;
  for (const auto& [lang, v] : per_language_) {
    LanguageRow row;
    row.language = std::string(lang.name());
    row.bytes = v.first;
    row.files = v.second;
    stats.total.bytes += row.bytes;
    stats.total.files += row.files;
    bytes.push_back(row.bytes);
    stats.rows.push_back(std::move(row));
  }
  stats.total.size_centi_gb = (stats.total.bytes + kBytesPerCentiGb / 2) / kBytesPerCentiGb;
  stats.total.proportion_centi = stats.total.bytes > 0 ? 10000 : 0;
  const auto sizes = apportion(bytes, stats.total.size_centi_gb);
  const auto props = apportion(bytes, stats.total.proportion_centi);
  for (std::size_t i = 0; i < stats.rows.size(); ++i) {
    stats.rows[i].size_centi_gb = sizes[i];
    stats.rows[i].proportion_centi = props[i];
  }
  return stats;
}

std::string CorpusStats::render_table() const {
  std::size_t width = std::string_view("Language").size();
  for (const auto& r : rows) width = std::max(width, r.language.size());

  std::string out;
  auto line = [&](const std::string& lang, const std::string& size, const std::string& files, const std::string& prop) {
    out += fmt::format("| {:<{}} | {:>10} | {:>10} | {:>9} |\n", lang, width, size, files, prop);
  };
  line("Language", "Size (GB)", "Files (k)", "Prop. (%)");
  out += fmt::format("|{:-<{}}|{:-<12}|{:-<12}|{:-<11}|\n", "", width + 2, "", "", "");
  for (const auto& r : rows) line(r.language, centi(r.size_centi_gb), milli(r.files), centi(r.proportion_centi));
  line(total.language, centi(total.size_centi_gb), milli(total.files), centi(total.proportion_centi));

  if (!stages.empty()) {
    out += "\n";
    out += fmt::format("{:<14} {:<9} {:>10} {:>10}  {}\n", "Stage", "Unit", "Input", "Output", "Drops");
    for (const auto& s : stages) {
      std::string drops;
      for (const auto& [reason, n] : s.drops) {
        if (n == 0) continue;
        if (!drops.empty()) drops += ", ";
        drops += fmt::format("{}={}", reason, n);
      }
      out += fmt::format("{:<14} {:<9} {:>10} {:>10}  {}\n", s.stage, s.unit, s.input, s.output,
                         drops.empty() ? "-" : drops);
    }
  }
  return out;
}

nlohmann::json CorpusStats::to_json() const {
  nlohmann::json langs = nlohmann::json::array();
  for (const auto& r : rows) langs.push_back(row_json(r));
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) st.push_back(s.to_json());
  return {{"columns", {"Language", "Size (GB)", "Files (k)", "Prop. (%)"}},
          {"languages", langs},
          {"total", row_json(total)},
          {"stages", st}};
}

} // namespace repocorpus
