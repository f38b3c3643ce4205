#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "akb/ast.hpp"
#include "akb/error.hpp"

namespace akb {

struct SourceSpan {
  std::string file;
  std::size_t line = 1;
  std::size_t column = 1;
};

// First error in a scenario or policy text. code() is SyntaxError,
// UnknownLevelName or DuplicateLatticeDecl.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceSpan span, std::string message,
             std::vector<std::string> expected = {});

  const SourceSpan& span() const noexcept { return span_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

Net parse_scenario(std::string_view text, std::string_view file = "<input>");
Policy parse_policy(std::string_view text);
Process parse_process(std::string_view text);

std::string render(const Net& net);
std::string render_policy(const Policy& policy);
std::string render_process(const Process& process);
std::string render_action(const Action& action);
std::string render_pattern(const Pattern& pattern);
std::string render_tuple(const Tuple& tuple);

}  // namespace akb
