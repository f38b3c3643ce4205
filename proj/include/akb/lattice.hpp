#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace akb {

class Lattice;

// An element of one particular Lattice. Levels from different lattices never
// compare equal and are rejected by every Lattice operation.
class Level {
 public:
  Level() = default;

  std::uint32_t index() const noexcept { return index_; }
  std::uint64_t lattice_id() const noexcept { return lattice_id_; }

  friend bool operator==(Level, Level) = default;
  friend auto operator<=>(Level, Level) = default;

 private:
  friend class Lattice;
  Level(std::uint64_t lattice_id, std::uint32_t index)
      : lattice_id_(lattice_id), index_(index) {}

  std::uint64_t lattice_id_ = 0;
  std::uint32_t index_ = 0;
};

struct OrderEdge {
  std::string lower;
  std::string upper;
};

// A finite join-semilattice with a least element, declared by level names
// and "a < b" edges. The order is the reflexive-transitive closure of the
// edges. Meets are not computed.
class Lattice {
 public:
  // Throws Error{CycleInOrder | NotALattice | NoBottom | UnknownLevelName |
  // DuplicateLevelName}.
  static Lattice build(std::vector<std::string> names,
                       const std::vector<OrderEdge>& edges);

  // Convenience lattices used by the harness and the built-in scenarios.
  static Lattice chain(const std::vector<std::string>& names);
  static Lattice diamond();

  bool leq(Level a, Level b) const;
  Level join(Level a, Level b) const;
  Level join_all(std::span<const Level> levels) const;
  Level bottom() const noexcept { return Level(id_, bottom_); }

  std::size_t size() const noexcept { return names_.size(); }
  Level at(std::size_t index) const;
  std::optional<Level> find(std::string_view name) const;
  // Throws Error{UnknownLevelName}.
  Level level(std::string_view name) const;
  const std::string& name(Level level) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool owns(Level level) const noexcept {
    return level.lattice_id() == id_ && level.index() < names_.size();
  }

  // Hasse diagram of the order: (lower, upper) index pairs with no level
  // strictly in between. Rebuilding from these yields the same order.
  std::vector<std::pair<std::size_t, std::size_t>> covering_edges() const;

  std::uint64_t id() const noexcept { return id_; }

  // Same level names in the same order and the same order relation.
  bool same_shape(const Lattice& other) const;

 private:
  Lattice() = default;
  void check_owned(Level level) const;

  std::uint64_t id_ = 0;
  std::vector<std::string> names_;
  std::vector<bool> order_;            // order_[a * n + b] <=> a <= b
  std::vector<std::uint32_t> joins_;   // joins_[a * n + b]
  std::uint32_t bottom_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

}  // namespace akb
