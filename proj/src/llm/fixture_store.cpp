#include "aptc/llm/gateway.hpp"
#include "aptc/util/files.hpp"
#include "aptc/util/time.hpp"

#include <algorithm>

namespace aptc::llm {

std::filesystem::path FixtureStore::path_for(std::string_view key) const {
  return dir_ / (std::string(key) + ".json");
}

std::optional<GenerationRecord> FixtureStore::load(std::string_view key) const {
  auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  auto j = nlohmann::json::parse(util::read_file(path));
  GenerationRecord r;
  r.request_key = j.at("requestKey").get<std::string>();
  r.prompt_digest = j.value("promptDigest", "");
  r.raw_response = j.at("rawResponse").get<std::string>();
  if (j.contains("metadata")) {
    const auto& m = j.at("metadata");
    r.model_id = m.value("modelId", "");
    r.strategy = m.value("strategy", "");
    r.case_study = m.value("caseStudy", "");
    r.weaknesses = m.value("weaknesses", std::vector<std::string>{});
    r.latency = std::chrono::milliseconds(m.value("latencyMs", 0));
  }
  return r;
}

std::string FixtureStore::store(const GenerationRecord& record) {
  nlohmann::ordered_json j;
  j["requestKey"] = record.request_key;
  j["promptDigest"] = record.prompt_digest;
  j["rawResponse"] = record.raw_response;
  j["metadata"] = {{"modelId", record.model_id},
                   {"strategy", record.strategy},
                   {"caseStudy", record.case_study},
                   {"weaknesses", record.weaknesses},
                   {"latencyMs", record.latency.count()},
                   {"timestamp", util::iso8601_utc(record.timestamp)}};
  std::lock_guard lock(write_mutex_);
  util::write_file_atomic(path_for(record.request_key), j.dump(2) + "\n");
  return record.request_key;
}

std::vector<std::string> FixtureStore::keys() const {
  std::vector<std::string> out;
  if (!std::filesystem::exists(dir_)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string record_fixture(const GenerationRecord& record, const std::filesystem::path& store) {
  FixtureStore s(store);
  return s.store(record);
}

}  // namespace aptc::llm
