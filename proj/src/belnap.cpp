#include "akb/belnap.hpp"

namespace akb {

std::string_view to_string(Four v) {
  switch (v) {
    case Four::Bottom: return "bot";
    case Four::True: return "tt";
    case Four::False: return "ff";
    case Four::Top: return "top";
  }
  return "?";
}

std::optional<Four> parse_four(std::string_view text) {
  for (Four v : kAllFour)
    if (to_string(v) == text) return v;
  return std::nullopt;
}

}  // namespace akb
