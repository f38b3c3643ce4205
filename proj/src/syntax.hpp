#pragma once

#include <string>
#include <string_view>

// Spelling rules shared by the parser and the renderer.
namespace akb::detail {

bool is_reserved(std::string_view word);
bool is_level_keyword(std::string_view word);
bool is_identifier(std::string_view word);
bool is_number(std::string_view word);
// A lowercase, non-reserved identifier: a variable wherever a LocRef is read.
bool is_var_name(std::string_view word);

std::string quote(std::string_view word);
// Location literal in process/policy position.
std::string literal_text(std::string_view name);
// Level name in a lattice declaration, a state or a level expression.
std::string level_text(std::string_view name);
// Tuple component or location name in a declaration.
std::string word_text(std::string_view name);

}  // namespace akb::detail
