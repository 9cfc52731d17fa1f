#include "aptc/llm/gateway.hpp"

#include <httplib.h>

namespace aptc::llm {

namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const HttpRequest& request) override {
    auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos) throw TransportFailure("malformed URL " + request.url, false);
    auto path_start = request.url.find('/', scheme_end + 3);
    std::string base = request.url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(request.timeout);
    client.set_read_timeout(request.timeout);
    client.set_write_timeout(request.timeout);

    httplib::Headers headers;
    std::string content_type = "application/json";
    for (const auto& [k, v] : request.headers) {
      if (k == "Content-Type") content_type = v;
      else headers.emplace(k, v);
    }
    auto result = client.Post(path, headers, request.body, content_type);
    if (!result) {
      auto err = result.error();
      bool timed_out = err == httplib::Error::Read || err == httplib::Error::Write ||
                       err == httplib::Error::ConnectionTimeout;
      throw TransportFailure("HTTP transport error: " + httplib::to_string(err), timed_out);
    }
    return {result->status, result->body};
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport() { return std::make_shared<HttplibTransport>(); }

}  // namespace aptc::llm
