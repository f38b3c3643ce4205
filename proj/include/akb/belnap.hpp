#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace akb {

// Belnap's four truth values: no information, accept, deny, conflict.
enum class Four : std::uint8_t { Bottom, True, False, Top };

inline constexpr std::array<Four, 4> kAllFour = {Four::Bottom, Four::True,
                                                 Four::False, Four::Top};

// Knowledge order: Bottom below everything, Top above everything, True and
// False incomparable.
constexpr bool leq_k(Four a, Four b) {
  return a == b || a == Four::Bottom || b == Four::Top;
}

// Truth order: False below everything, True above everything, Bottom and Top
// incomparable.
constexpr bool leq_t(Four a, Four b) {
  return a == b || a == Four::False || b == Four::True;
}

namespace detail {

template <class Leq>
constexpr Four lub(Four a, Four b, Leq leq) {
  for (Four c : kAllFour) {
    if (!leq(a, c) || !leq(b, c)) continue;
    bool least = true;
    for (Four d : kAllFour)
      if (leq(a, d) && leq(b, d) && !leq(c, d)) least = false;
    if (least) return c;
  }
  return Four::Top;  // unreachable: both orders are lattices
}

template <class Leq>
constexpr Four glb(Four a, Four b, Leq leq) {
  for (Four c : kAllFour) {
    if (!leq(c, a) || !leq(c, b)) continue;
    bool greatest = true;
    for (Four d : kAllFour)
      if (leq(d, a) && leq(d, b) && !leq(d, c)) greatest = false;
    if (greatest) return c;
  }
  return Four::Bottom;
}

}  // namespace detail

constexpr Four band(Four a, Four b) { return detail::glb(a, b, leq_t); }
constexpr Four bor(Four a, Four b) { return detail::lub(a, b, leq_t); }
constexpr Four otimes(Four a, Four b) { return detail::glb(a, b, leq_k); }
constexpr Four oplus(Four a, Four b) { return detail::lub(a, b, leq_k); }

constexpr Four bnot(Four a) {
  switch (a) {
    case Four::True: return Four::False;
    case Four::False: return Four::True;
    default: return a;
  }
}

constexpr Four implies(Four p1, Four p2) {
  return leq_k(p1, Four::True) ? p2 : Four::True;
}

// First operand unless it carries no decision.
constexpr Four priority(Four p1, Four p2) {
  return p1 != Four::Bottom ? p1 : p2;
}

// Access gate: admits exactly the values at or below True in the knowledge
// order, i.e. Bottom and True.
constexpr bool grant(Four p) { return leq_k(p, Four::True); }

constexpr Four from_bool(bool b) { return b ? Four::True : Four::False; }

// "bot", "tt", "ff", "top".
std::string_view to_string(Four v);
std::optional<Four> parse_four(std::string_view text);

}  // namespace akb
