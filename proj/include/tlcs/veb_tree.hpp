#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace tlcs {

/**
 * van Emde Boas tree over the integer universe {0, ..., u-1}.
 *
 * The universe is rounded up to a power of two u = 2^k. A node with k > 1
 * splits a key into a high half (ceil(k/2) bits, the cluster index) and a low
 * half (floor(k/2) bits, the offset inside the cluster). The summary tracks
 * which clusters are nonempty. Nodes with k == 1 are leaves that hold their
 * (at most two) keys in min/max only.
 *
 *   node<k>
 *   +---------------------------------+
 *   | min, max   cached, min is never | <- min lives only here
 *   |            stored in a cluster  |
 *   | summary    node<ceil(k/2)>      | <- allocated on first cluster insert
 *   | clusters   node<floor(k/2)>[]   | <- each allocated on first insert
 *   +---------------------------------+
 *
 * Insert, erase, successor and predecessor make at most one non-trivial
 * recursive call per level, so each costs O(log log u).
 *
 * Keys outside the universe raise DomainError. Erasing an absent key is a
 * no-op and inserting a present key is idempotent.
 */
class VebTree {
 public:
  using Key = std::uint64_t;

  /// Largest supported universe exponent. The top-level cluster directory
  /// of a 2^40 universe is 2^20 pointers.
  static constexpr unsigned kMaxLogUniverse = 40;

  /// Universe becomes the smallest power of two >= max(universe_request, 2).
  /// Throws std::invalid_argument for 0 and ResourceError above 2^40.
  explicit VebTree(Key universe_request);

  VebTree(VebTree&&) noexcept = default;
  VebTree& operator=(VebTree&&) noexcept = default;
  VebTree(const VebTree&) = delete;
  VebTree& operator=(const VebTree&) = delete;
  ~VebTree();

  Key universe() const noexcept { return Key{1} << log_universe_; }
  unsigned log_universe() const noexcept { return log_universe_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  std::optional<Key> min() const noexcept;
  std::optional<Key> max() const noexcept;

  bool contains(Key x) const;
  void insert(Key x);
  void erase(Key x);

  /// Smallest stored key strictly greater than x.
  std::optional<Key> successor(Key x) const;
  /// Largest stored key strictly less than x.
  std::optional<Key> predecessor(Key x) const;

  /// Ascending contents; O(size * log log u).
  std::vector<Key> keys() const;

  /// Number of levels on the longest root-to-leaf path for a 2^log_universe tree.
  static unsigned depth_for(unsigned log_universe) noexcept;
  unsigned depth() const noexcept { return depth_for(log_universe_); }

  /// Recursively checks the cache, summary and population invariants.
  bool check_invariants() const;

 private:
  struct LevelTag {};
  VebTree(LevelTag, unsigned log_universe);

  unsigned high_bits() const noexcept { return (log_universe_ + 1) / 2; }
  unsigned low_bits() const noexcept { return log_universe_ / 2; }
  Key high(Key x) const noexcept { return x >> low_bits(); }
  Key low(Key x) const noexcept { return x & ((Key{1} << low_bits()) - 1); }
  Key index(Key h, Key l) const noexcept { return (h << low_bits()) | l; }

  void check_key(Key x) const;
  bool contains_impl(Key x) const noexcept;
  void insert_absent(Key x);
  void erase_present(Key x);
  std::optional<Key> successor_impl(Key x) const noexcept;
  std::optional<Key> predecessor_impl(Key x) const noexcept;
  void collect(Key offset, std::vector<Key>& out) const;

  const VebTree* cluster(Key h) const noexcept;

  unsigned log_universe_;
  std::size_t size_ = 0;
  Key min_ = 0;
  Key max_ = 0;
  std::unique_ptr<VebTree> summary_;
  std::vector<std::unique_ptr<VebTree>> clusters_;
};

}  // namespace tlcs
