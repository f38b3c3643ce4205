#include "syntax.hpp"

#include <array>
#include <cctype>

namespace akb::detail {

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 7> reserved = {
      "in", "out", "read", "test", "true", "false", "if"};
  for (auto r : reserved)
    if (r == word) return true;
  return false;
}

bool is_level_keyword(std::string_view word) {
  return word == "Ss" || word == "Cs" || word == "Hs" || word == "Ot" || word == "Ht";
}

bool is_identifier(std::string_view word) {
  if (word.empty() || !std::isalpha(static_cast<unsigned char>(word[0]))) return false;
  for (char c : word)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_number(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_var_name(std::string_view word) {
  return is_identifier(word) && std::islower(static_cast<unsigned char>(word[0])) &&
         !is_reserved(word);
}

std::string quote(std::string_view word) {
  std::string out = "\"";
  for (char c : word) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string literal_text(std::string_view name) {
  if (is_number(name) ||
      (is_identifier(name) && std::isupper(static_cast<unsigned char>(name[0]))))
    return std::string(name);
  return quote(name);
}

std::string level_text(std::string_view name) {
  if (is_number(name) ||
      (is_identifier(name) && !is_reserved(name) && !is_level_keyword(name)))
    return std::string(name);
  return quote(name);
}

std::string word_text(std::string_view name) {
  if (is_number(name) || (is_identifier(name) && !is_reserved(name)))
    return std::string(name);
  return quote(name);
}

}  // namespace akb::detail
