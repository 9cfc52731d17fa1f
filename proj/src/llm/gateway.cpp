#include "aptc/llm/gateway.hpp"
#include "aptc/util/digest.hpp"

#include <cstdlib>
#include <thread>

namespace aptc::llm {

namespace {

using nlohmann::json;

std::string trim_slash(std::string s) {
  while (!s.empty() && s.back() == '/') s.pop_back();
  return s;
}

bool transient(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

std::string_view to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::OpenAiCompatible: return "openai-compatible";
    case ProviderKind::Gemini: return "gemini";
    case ProviderKind::Replay: return "replay";
  }
  return "?";
}

std::optional<ProviderKind> parse_provider_kind(std::string_view s) {
  if (s == "openai" || s == "openai-compatible") return ProviderKind::OpenAiCompatible;
  if (s == "gemini") return ProviderKind::Gemini;
  if (s == "replay") return ProviderKind::Replay;
  return std::nullopt;
}

void ProviderConfig::validate() const {
  if (model_id.empty()) throw std::invalid_argument("provider config needs a model id");
  if (temperature < 0) throw std::invalid_argument("temperature must be >= 0");
  if (max_output_tokens <= 0) throw std::invalid_argument("maxOutputTokens must be positive");
  if (max_retries < 0) throw std::invalid_argument("maxRetries must be non-negative");
  if (kind == ProviderKind::Replay) {
    if (fixtures_path.empty()) throw std::invalid_argument("replay provider needs a fixtures path");
  } else {
    if (endpoint_url.empty()) throw std::invalid_argument("live provider needs an endpoint URL");
    if (credential_env.empty()) {
      throw std::invalid_argument("live provider needs a credential environment variable");
    }
  }
}

ProviderConfig ProviderConfig::defaults_for(ProviderKind kind, std::string model_id) {
  ProviderConfig c;
  c.kind = kind;
  c.model_id = std::move(model_id);
  if (kind == ProviderKind::OpenAiCompatible) {
    c.endpoint_url = "https://api.openai.com/v1";
    c.credential_env = kOpenAiKeyEnv;
  } else if (kind == ProviderKind::Gemini) {
    c.endpoint_url = "https://generativelanguage.googleapis.com/v1beta";
    c.credential_env = kGeminiKeyEnv;
  }
  return c;
}

ProviderConfig ProviderConfig::from_json(const nlohmann::json& j) {
  auto kind = parse_provider_kind(j.at("providerKind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown providerKind " + j.at("providerKind").dump());
  auto c = defaults_for(*kind, j.at("modelId").get<std::string>());
  c.provider_model = j.value("providerModel", c.provider_model);
  c.endpoint_url = j.value("endpointUrl", c.endpoint_url);
  c.credential_env = j.value("credentialRef", c.credential_env);
  c.temperature = j.value("temperature", c.temperature);
  c.max_output_tokens = j.value("maxOutputTokens", c.max_output_tokens);
  c.timeout = std::chrono::seconds(j.value("timeoutSeconds", static_cast<long>(c.timeout.count())));
  c.max_retries = j.value("maxRetries", c.max_retries);
  if (j.contains("fixturesPath")) c.fixtures_path = j.at("fixturesPath").get<std::string>();
  c.validate();
  return c;
}

nlohmann::ordered_json ProviderConfig::to_json() const {
  nlohmann::ordered_json j;
  j["providerKind"] = to_string(kind);
  j["modelId"] = model_id;
  if (!provider_model.empty()) j["providerModel"] = provider_model;
  if (kind == ProviderKind::Replay) {
    j["fixturesPath"] = fixtures_path.string();
  } else {
    j["endpointUrl"] = endpoint_url;
    j["credentialRef"] = credential_env;
  }
  j["temperature"] = temperature;
  j["maxOutputTokens"] = max_output_tokens;
  j["timeoutSeconds"] = timeout.count();
  j["maxRetries"] = max_retries;
  return j;
}

std::string prompt_digest(const prompting::PromptBundle& bundle) {
  return util::FieldHasher{}.add(bundle.system_message).add(bundle.user_message).hex();
}

std::string request_key(const prompting::PromptBundle& bundle, std::string_view model_id) {
  return util::FieldHasher{}
      .add(model_id)
      .add(prompting::to_string(bundle.strategy))
      .add(bundle.case_study)
      .add(bundle.target_weaknesses)
      .add(bundle.system_message)
      .add(bundle.user_message)
      .hex();
}

HttpRequest build_openai_request(const prompting::PromptBundle& bundle,
                                 const ProviderConfig& config, const std::string& api_key) {
  json body{
      {"model", config.provider_model.empty() ? config.model_id : config.provider_model},
      {"messages",
       json::array({{{"role", "system"}, {"content", bundle.system_message}},
                    {{"role", "user"}, {"content", bundle.user_message}}})},
      {"temperature", config.temperature},
      {"max_tokens", config.max_output_tokens},
  };
  return {trim_slash(config.endpoint_url) + "/chat/completions",
          {{"Authorization", "Bearer " + api_key}, {"Content-Type", "application/json"}},
          body.dump(),
          config.timeout};
}

HttpRequest build_gemini_request(const prompting::PromptBundle& bundle,
                                 const ProviderConfig& config, const std::string& api_key) {
  const auto& model = config.provider_model.empty() ? config.model_id : config.provider_model;
  json body{
      {"systemInstruction", {{"parts", json::array({{{"text", bundle.system_message}}})}}},
      {"contents", json::array({{{"role", "user"},
                                 {"parts", json::array({{{"text", bundle.user_message}}})}}})},
      {"generationConfig",
       {{"temperature", config.temperature}, {"maxOutputTokens", config.max_output_tokens}}},
  };
  return {trim_slash(config.endpoint_url) + "/models/" + model + ":generateContent",
          {{"x-goog-api-key", api_key}, {"Content-Type", "application/json"}},
          body.dump(),
          config.timeout};
}

std::string decode_openai_response(const std::string& body) {
  try {
    auto j = json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected OpenAI-compatible response: ") + e.what());
  }
}

std::string decode_gemini_response(const std::string& body) {
  try {
    auto j = json::parse(body);
    std::string text;
    for (const auto& part : j.at("candidates").at(0).at("content").at("parts")) {
      text += part.value("text", "");
    }
    return text;
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected Gemini response: ") + e.what());
  }
}

Gateway::Gateway() : Gateway(make_http_transport()) {}

Gateway::Gateway(std::shared_ptr<HttpTransport> transport, Sleeper sleeper, EnvLookup env)
    : transport_(std::move(transport)), sleeper_(std::move(sleeper)), env_(std::move(env)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!env_) {
    env_ = [](const std::string& name) -> std::optional<std::string> {
      const char* v = std::getenv(name.c_str());
      if (v == nullptr || *v == '\0') return std::nullopt;
      return std::string(v);
    };
  }
}

std::string Gateway::call_live(const prompting::PromptBundle& bundle,
                               const ProviderConfig& config) const {
  auto key = env_(config.credential_env);
  if (!key) throw AuthError("environment variable " + config.credential_env + " is not set");
  HttpRequest request = config.kind == ProviderKind::Gemini
                            ? build_gemini_request(bundle, config, *key)
                            : build_openai_request(bundle, config, *key);

  std::string last_error;
  bool last_timed_out = false;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) sleeper_(backoff_base * (1 << (attempt - 1)));
    HttpResponse response;
    try {
      response = transport_->post(request);
    } catch (const TransportFailure& f) {
      last_error = f.what();
      last_timed_out = f.timed_out();
      continue;
    }
    if (response.status == 401 || response.status == 403) {
      throw AuthError("provider rejected credentials (HTTP " + std::to_string(response.status) + ")");
    }
    if (response.status >= 200 && response.status < 300) {
      return config.kind == ProviderKind::Gemini ? decode_gemini_response(response.body)
                                                 : decode_openai_response(response.body);
    }
    last_error = "HTTP " + std::to_string(response.status) + ": " + response.body.substr(0, 200);
    last_timed_out = false;
    if (!transient(response.status)) throw TransportError(last_error);
  }
  std::string msg = "giving up after " + std::to_string(config.max_retries + 1) +
                    " attempt(s): " + last_error;
  if (last_timed_out) throw TimeoutError(msg);
  throw TransportError(msg);
}

GenerationRecord Gateway::generate(const prompting::PromptBundle& bundle,
                                   const ProviderConfig& config) const {
  config.validate();
  GenerationRecord rec;
  rec.request_key = request_key(bundle, config.model_id);
  rec.model_id = config.model_id;
  rec.strategy = prompting::to_string(bundle.strategy);
  rec.case_study = bundle.case_study;
  rec.weaknesses = bundle.target_weaknesses;
  rec.prompt_digest = prompt_digest(bundle);

  auto started = std::chrono::steady_clock::now();
  if (config.kind == ProviderKind::Replay) {
    auto fixture = FixtureStore(config.fixtures_path).load(rec.request_key);
    if (!fixture) throw FixtureMissing(rec.request_key);
    rec.raw_response = std::move(fixture->raw_response);
  } else {
    rec.raw_response = call_live(bundle, config);
  }
  rec.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  rec.timestamp = std::chrono::system_clock::now();
  return rec;
}

GenerationRecord generate(const prompting::PromptBundle& bundle, const ProviderConfig& config) {
  static const Gateway gateway;
  return gateway.generate(bundle, config);
}

}  // namespace aptc::llm
