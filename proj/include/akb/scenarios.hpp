#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "akb/ast.hpp"

namespace akb {

struct BuiltinScenario {
  std::string_view name;
  std::string_view text;  // identical to scenarios/<name>.akb
};

std::span<const BuiltinScenario> builtin_list();
std::optional<std::string_view> builtin_text(std::string_view name);
std::optional<Net> builtin_net(std::string_view name);
std::map<std::string, Net> builtin_scenarios();

}  // namespace akb
