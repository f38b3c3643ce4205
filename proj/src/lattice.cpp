#include "akb/lattice.hpp"

#include <atomic>
#include <unordered_map>

#include "akb/error.hpp"

namespace akb {

namespace {

std::uint64_t next_lattice_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

Lattice Lattice::build(std::vector<std::string> names,
                       const std::vector<OrderEdge>& edges) {
  const std::size_t n = names.size();
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!index.emplace(names[i], i).second) {
      throw Error(ErrorCode::DuplicateLevelName,
                  "level '" + names[i] + "' declared twice");
    }
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw Error(ErrorCode::UnknownLevelName,
                  "order edge refers to undeclared level '" + name + "'");
    }
    return it->second;
  };

  std::vector<bool> le(n * n, false);
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = true;
  for (const auto& e : edges) {
    auto lo = lookup(e.lower);
    auto hi = lookup(e.upper);
    if (lo == hi) {
      throw Error(ErrorCode::CycleInOrder,
                  "edge " + e.lower + " < " + e.upper + " is a self-loop");
    }
    le[lo * n + hi] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k * n + j]) le[i * n + j] = true;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i * n + j] && le[j * n + i]) {
        throw Error(ErrorCode::CycleInOrder,
                    "levels '" + names[i] + "' and '" + names[j] +
                        "' are ordered both ways");
      }

  std::vector<std::uint32_t> joins(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::vector<std::uint32_t> minimal;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (!le[a * n + c] || !le[b * n + c]) continue;
        bool is_minimal = true;
        for (std::uint32_t d = 0; d < n && is_minimal; ++d) {
          if (d != c && le[a * n + d] && le[b * n + d] && le[d * n + c])
            is_minimal = false;
        }
        if (is_minimal) minimal.push_back(c);
      }
      if (minimal.size() != 1) {
        throw Error(ErrorCode::NotALattice,
                    "levels '" + names[a] + "' and '" + names[b] + "' have " +
                        std::to_string(minimal.size()) +
                        " minimal upper bounds");
      }
      joins[a * n + b] = joins[b * n + a] = minimal.front();
    }
  }

  std::optional<std::uint32_t> bottom;
  for (std::uint32_t c = 0; c < n && !bottom; ++c) {
    bool below_all = true;
    for (std::size_t x = 0; x < n && below_all; ++x)
      below_all = le[c * n + x];
    if (below_all) bottom = c;
  }
  if (!bottom) {
    throw Error(ErrorCode::NoBottom, "lattice has no least element");
  }

  Lattice lat;
  lat.id_ = next_lattice_id();
  lat.names_ = std::move(names);
  lat.order_ = std::move(le);
  lat.joins_ = std::move(joins);
  lat.bottom_ = *bottom;
  return lat;
}

Lattice Lattice::chain(const std::vector<std::string>& names) {
  std::vector<OrderEdge> edges;
  for (std::size_t i = 1; i < names.size(); ++i)
    edges.push_back({names[i - 1], names[i]});
  return build(names, edges);
}

Lattice Lattice::diamond() {
  return build({"bot", "a", "b", "top"},
               {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

void Lattice::check_owned(Level level) const {
  if (!owns(level)) {
    throw Error(ErrorCode::ForeignLevel,
                "level does not belong to this lattice");
  }
}

bool Lattice::leq(Level a, Level b) const {
  check_owned(a);
  check_owned(b);
  return order_[a.index() * names_.size() + b.index()];
}

Level Lattice::join(Level a, Level b) const {
  check_owned(a);
  check_owned(b);
  return Level(id_, joins_[a.index() * names_.size() + b.index()]);
}

Level Lattice::join_all(std::span<const Level> levels) const {
  Level acc = bottom();
  for (Level l : levels) acc = join(acc, l);
  return acc;
}

Level Lattice::at(std::size_t index) const {
  if (index >= names_.size()) {
    throw Error(ErrorCode::ForeignLevel, "level index out of range");
  }
  return Level(id_, static_cast<std::uint32_t>(index));
}

std::optional<Level> Lattice::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return Level(id_, i);
  return std::nullopt;
}

Level Lattice::level(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw Error(ErrorCode::UnknownLevelName,
              "unknown level '" + std::string(name) + "'");
}

const std::string& Lattice::name(Level level) const {
  check_owned(level);
  return names_[level.index()];
}

std::vector<std::pair<std::size_t, std::size_t>> Lattice::covering_edges()
    const {
  const std::size_t n = names_.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !order_[a * n + b]) continue;
      bool covers = true;
      for (std::size_t c = 0; c < n && covers; ++c) {
        if (c != a && c != b && order_[a * n + c] && order_[c * n + b])
          covers = false;
      }
      if (covers) out.emplace_back(a, b);
    }
  }
  return out;
}

bool Lattice::same_shape(const Lattice& other) const {
  return names_ == other.names_ && order_ == other.order_;
}

}  // namespace akb
