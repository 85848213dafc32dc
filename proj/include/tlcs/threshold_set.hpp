#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "tlcs/veb_tree.hpp"

namespace tlcs {

/// A column of Y, 1-based. Column 0 is the "none" sentinel.
using Column = std::size_t;

enum class Backend { veb, tree, array };

std::string_view to_string(Backend backend) noexcept;
/// Throws std::invalid_argument on unknown names.
Backend parse_backend(std::string_view name);

struct OpCounters {
  std::uint64_t size = 0;
  std::uint64_t succ = 0;
  std::uint64_t pred = 0;
  std::uint64_t update = 0;
  std::uint64_t insert = 0;
  std::uint64_t erase = 0;
  /// Array backend: element comparisons made by the cursor walk.
  std::uint64_t comparisons = 0;
  /// Tree backend: deepest node visited by any single operation (root = 1).
  std::uint64_t max_depth = 0;

  /// Succ + Delete + Insert + Pred, the four operations bounded per match.
  std::uint64_t dictionary_ops() const noexcept { return succ + erase + insert + pred; }

  bool operator==(const OpCounters&) const = default;
};

struct UpdateResult {
  enum class Kind { replaced, appended };
  Kind kind;
  /// The displaced element for `replaced`, 0 for `appended`.
  Column old = 0;

  static UpdateResult appended() noexcept { return {Kind::appended, 0}; }
  static UpdateResult replaced(Column old) noexcept { return {Kind::replaced, old}; }
  bool operator==(const UpdateResult&) const = default;
};

/// How the vEB backend realises Update.
enum class UpdateRule {
  /// Delete the successor of x-1 whenever it exists, then insert x.
  definition,
  /// Delete only when the successor is below the current maximum. Reproduces
  /// the guard printed in the original pseudocode; it over-counts and exists
  /// only so tests can show that it is detectably wrong.
  literal_max_guard,
};

/**
 * Ordered set S of positive integers drawn from {1, ..., capacity}, kept
 * strictly increasing. Its one mutation, update(x), replaces the successor of
 * x-1 by x or appends x when no successor exists. Driving update with the
 * match columns of each row (in decreasing column order) leaves S as the set
 * of columns at which the prefix LCS length first reaches each rank.
 *
 * succ/pred use 0 as the "none" answer, which is safe since members are >= 1.
 * Every public call bumps the matching counter in counters().
 */
class ThresholdSet {
 public:
  explicit ThresholdSet(std::size_t capacity);
  virtual ~ThresholdSet() = default;

  ThresholdSet(const ThresholdSet&) = delete;
  ThresholdSet& operator=(const ThresholdSet&) = delete;

  virtual Backend backend() const noexcept = 0;

  std::size_t capacity() const noexcept { return capacity_; }

  std::size_t size();
  /// Smallest member > x, or 0. Requires 0 <= x <= capacity.
  Column succ(Column x);
  /// Largest member < x, or 0. Requires 1 <= x <= capacity.
  Column pred(Column x);
  /// Requires 1 <= x <= capacity.
  UpdateResult update(Column x);

  /// Largest member or 0; not counted.
  virtual Column max() const = 0;
  /// Ascending members; not counted.
  virtual std::vector<Column> contents() const = 0;

  /// Marks the start of a new row of matches. Only the array backend cares.
  virtual void begin_row() {}

  const OpCounters& counters() const noexcept { return counters_; }

 protected:
  virtual std::size_t do_size() const = 0;
  virtual Column do_succ(Column x) = 0;
  virtual Column do_pred(Column x) = 0;
  virtual UpdateResult do_update(Column x) = 0;

  OpCounters counters_;

 private:
  void check_range(Column x, Column lo, std::string_view op) const;

  std::size_t capacity_;
};

/// S stored in a van Emde Boas tree over {0, ..., capacity}.
class VebBackend final : public ThresholdSet {
 public:
  explicit VebBackend(std::size_t capacity, UpdateRule rule = UpdateRule::definition);

  Backend backend() const noexcept override { return Backend::veb; }
  Column max() const override;
  std::vector<Column> contents() const override;

  const VebTree& tree() const noexcept { return tree_; }

 private:
  std::size_t do_size() const override;
  Column do_succ(Column x) override;
  Column do_pred(Column x) override;
  UpdateResult do_update(Column x) override;

  VebTree tree_;
  UpdateRule rule_;
};

/**
 * S stored in an AVL tree. Update never deletes: the successor y of x-1 can
 * be overwritten with x in place because every other member is either
 * <= x-1 or > y, so the key order is preserved. The tree therefore only grows
 * by appends and has at most |S| <= L nodes.
 */
class TreeBackend final : public ThresholdSet {
 public:
  explicit TreeBackend(std::size_t capacity);

  Backend backend() const noexcept override { return Backend::tree; }
  Column max() const override;
  std::vector<Column> contents() const override;

  /// Height of the tree (empty = 0).
  std::size_t height() const noexcept;

 private:
  struct Node {
    Column key;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t height = 1;
  };

  std::size_t do_size() const override { return nodes_.size(); }
  Column do_succ(Column x) override;
  Column do_pred(Column x) override;
  UpdateResult do_update(Column x) override;

  /// Node index of the smallest key > x, or -1.
  std::int32_t find_successor(Column x);
  std::int32_t insert_at(std::int32_t root, Column key, std::uint64_t depth);
  std::int32_t rebalance(std::int32_t node);
  std::int32_t rotate_left(std::int32_t node);
  std::int32_t rotate_right(std::int32_t node);
  std::int32_t height_of(std::int32_t node) const noexcept;
  void refresh_height(std::int32_t node) noexcept;
  void note_depth(std::uint64_t depth) noexcept;

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

/**
 * S stored as a sorted array with a per-row scan cursor.
 *
 * Within a row updates arrive with strictly decreasing x, so the position of
 * succ(x-1) only moves left: the cursor starts at the last element when a row
 * begins and walks down while s[cursor] >= x. A row therefore costs at most
 * alpha + (updates in the row) comparisons, where alpha is |S| at row start.
 *
 * An update that arrives out of order (x larger than the last value written
 * this row) resets the cursor to the end first, so the set stays correct for
 * arbitrary update sequences; only the cost guarantee needs the row order.
 */
class ArrayBackend final : public ThresholdSet {
 public:
  explicit ArrayBackend(std::size_t capacity);

  Backend backend() const noexcept override { return Backend::array; }
  Column max() const override { return s_.empty() ? 0 : s_.back(); }
  std::vector<Column> contents() const override { return s_; }
  void begin_row() override;

 private:
  std::size_t do_size() const override { return s_.size(); }
  Column do_succ(Column x) override;
  Column do_pred(Column x) override;
  UpdateResult do_update(Column x) override;

  std::vector<Column> s_;
  std::ptrdiff_t cursor_ = -1;
};

std::unique_ptr<ThresholdSet> make_threshold_set(std::size_t capacity, Backend backend,
                                                 UpdateRule rule = UpdateRule::definition);

}  // namespace tlcs
