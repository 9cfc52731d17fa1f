#include "aptc/prompting/template.hpp"

namespace aptc::prompting {

std::string render_template(std::string_view text, const std::map<std::string, std::string>& slots) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      return out;
    }
    auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw TemplateError("unterminated slot in template");
    out.append(text.substr(pos, open - pos));
    std::string name(text.substr(open + 2, close - open - 2));
    auto it = slots.find(name);
    if (it == slots.end()) throw TemplateError("no value bound for slot '" + name + "'");
    out.append(it->second);
    pos = close + 2;
  }
}

}  // namespace aptc::prompting
