#include "akb/scenarios.hpp"

#include <algorithm>

#include "akb/parser.hpp"

namespace akb {

// Generated from scenarios/*.akb at configure time.
std::span<const BuiltinScenario> embedded_scenarios();

std::span<const BuiltinScenario> builtin_list() { return embedded_scenarios(); }

std::optional<std::string_view> builtin_text(std::string_view name) {
  const auto list = builtin_list();
  auto it = std::find_if(list.begin(), list.end(),
                         [&](const BuiltinScenario& b) { return b.name == name; });
  if (it == list.end()) return std::nullopt;
  return it->text;
}

std::optional<Net> builtin_net(std::string_view name) {
  const auto text = builtin_text(name);
  if (!text) return std::nullopt;
  return parse_scenario(*text, std::string(name) + ".akb");
}

std::map<std::string, Net> builtin_scenarios() {
  std::map<std::string, Net> out;
  for (const auto& b : builtin_list())
    out.emplace(std::string(b.name), parse_scenario(b.text, std::string(b.name) + ".akb"));
  return out;
}

}  // namespace akb
