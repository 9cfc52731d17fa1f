#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aptc::prompting {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replaces every `{{slot}}` in `text`. A slot without a binding is an error;
/// bindings that the template does not use are ignored.
std::string render_template(std::string_view text, const std::map<std::string, std::string>& slots);

}  // namespace aptc::prompting
