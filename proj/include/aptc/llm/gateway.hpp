#pragma once

#include "aptc/prompting/prompt.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aptc::llm {

enum class ProviderKind { OpenAiCompatible, Gemini, Replay };

std::string_view to_string(ProviderKind k);
/// Accepts "openai", "openai-compatible", "gemini", "replay".
std::optional<ProviderKind> parse_provider_kind(std::string_view s);

inline constexpr std::string_view kOpenAiKeyEnv = "APTC_OPENAI_API_KEY";
inline constexpr std::string_view kGeminiKeyEnv = "APTC_GEMINI_API_KEY";

struct ProviderConfig {
  ProviderKind kind = ProviderKind::Replay;
  std::string model_id;  ///< label such as "GPT-5.2"
  /// Concrete model string sent to the provider; defaults to model_id.
  std::string provider_model;
  std::string endpoint_url;
  /// Name of the environment variable holding the API key, never the key.
  std::string credential_env;
  double temperature = 0.0;
  int max_output_tokens = 8192;
  std::chrono::seconds timeout{120};
  int max_retries = 3;
  std::filesystem::path fixtures_path;  ///< replay only

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;

  /// Fills provider-specific endpoint and credential defaults.
  static ProviderConfig defaults_for(ProviderKind kind, std::string model_id);
  static ProviderConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct GenerationRecord {
  std::string request_key;
  std::string raw_response;
  std::chrono::milliseconds latency{0};
  std::chrono::system_clock::time_point timestamp;

  std::string model_id;
  std::string strategy;
  std::string case_study;
  std::vector<std::string> weaknesses;
  std::string prompt_digest;
};

/// SHA-256 over (model id, strategy, case study, weakness ids, prompt bytes).
std::string request_key(const prompting::PromptBundle& bundle, std::string_view model_id);
std::string prompt_digest(const prompting::PromptBundle& bundle);

class GatewayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AuthError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};
class TransportError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};
class TimeoutError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};
class FixtureMissing : public GatewayError {
 public:
  explicit FixtureMissing(std::string key)
      : GatewayError("no replay fixture for request key " + key), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::chrono::seconds timeout{120};
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Connection-level failure raised by an HttpTransport.
class TransportFailure : public std::runtime_error {
 public:
  TransportFailure(const std::string& what, bool timed_out)
      : std::runtime_error(what), timed_out_(timed_out) {}
  bool timed_out() const noexcept { return timed_out_; }

 private:
  bool timed_out_;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

/// cpp-httplib backed transport (HTTPS via OpenSSL).
std::shared_ptr<HttpTransport> make_http_transport();

/// One JSON file per request key.
class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(std::string_view key) const;
  std::optional<GenerationRecord> load(std::string_view key) const;
  /// Atomic per file; concurrent writers are serialized.
  std::string store(const GenerationRecord& record);
  std::vector<std::string> keys() const;

 private:
  std::filesystem::path dir_;
  std::mutex write_mutex_;
};

std::string record_fixture(const GenerationRecord& record, const std::filesystem::path& store);

class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  Gateway();
  explicit Gateway(std::shared_ptr<HttpTransport> transport, Sleeper sleeper = {},
                   EnvLookup env = {});

  /// Live providers return the response text verbatim, retrying transient
  /// failures (connection errors, 429, 5xx) with exponential backoff. Replay
  /// never touches the transport.
  GenerationRecord generate(const prompting::PromptBundle& bundle,
                            const ProviderConfig& config) const;

  std::chrono::milliseconds backoff_base{500};

 private:
  std::string call_live(const prompting::PromptBundle& bundle, const ProviderConfig& config) const;

  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  EnvLookup env_;
};

GenerationRecord generate(const prompting::PromptBundle& bundle, const ProviderConfig& config);

/// Request payloads and response decoding for the live adapters.
HttpRequest build_openai_request(const prompting::PromptBundle& bundle,
                                 const ProviderConfig& config, const std::string& api_key);
HttpRequest build_gemini_request(const prompting::PromptBundle& bundle,
                                 const ProviderConfig& config, const std::string& api_key);
std::string decode_openai_response(const std::string& body);
std::string decode_gemini_response(const std::string& body);

}  // namespace aptc::llm
