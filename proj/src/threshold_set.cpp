#include "tlcs/threshold_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tlcs/errors.hpp"

namespace tlcs {

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::veb: return "veb";
    case Backend::tree: return "tree";
    case Backend::array: return "array";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "veb") return Backend::veb;
  if (name == "tree") return Backend::tree;
  if (name == "array") return Backend::array;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// ThresholdSet

ThresholdSet::ThresholdSet(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("threshold set capacity must be >= 1");
}

void ThresholdSet::check_range(Column x, Column lo, std::string_view op) const {
  if (x < lo || x > capacity_) {
    throw DomainError(std::string(op) + "(" + std::to_string(x) + ") outside [" +
                      std::to_string(lo) + ", " + std::to_string(capacity_) + "]");
  }
}

std::size_t ThresholdSet::size() {
  ++counters_.size;
  return do_size();
}

Column ThresholdSet::succ(Column x) {
  check_range(x, 0, "succ");
  ++counters_.succ;
  return do_succ(x);
}

Column ThresholdSet::pred(Column x) {
  check_range(x, 1, "pred");
  ++counters_.pred;
  return do_pred(x);
}

UpdateResult ThresholdSet::update(Column x) {
  check_range(x, 1, "update");
  ++counters_.update;
  return do_update(x);
}

// ---------------------------------------------------------------------------
// VebBackend

VebBackend::VebBackend(std::size_t capacity, UpdateRule rule)
    : ThresholdSet(capacity), tree_(static_cast<VebTree::Key>(capacity) + 1), rule_(rule) {}

Column VebBackend::max() const { return static_cast<Column>(tree_.max().value_or(0)); }

std::vector<Column> VebBackend::contents() const {
  const auto keys = tree_.keys();
  return {keys.begin(), keys.end()};
}

std::size_t VebBackend::do_size() const { return tree_.size(); }

Column VebBackend::do_succ(Column x) {
  return static_cast<Column>(tree_.successor(x).value_or(0));
}

Column VebBackend::do_pred(Column x) {
  return static_cast<Column>(tree_.predecessor(x).value_or(0));
}

UpdateResult VebBackend::do_update(Column x) {
  ++counters_.succ;
  const Column k = static_cast<Column>(tree_.successor(x - 1).value_or(0));
  if (rule_ == UpdateRule::literal_max_guard) {
    const std::size_t before = tree_.size();
    if (k < max()) {
      ++counters_.erase;
      tree_.erase(k);
    }
    ++counters_.insert;
    tree_.insert(x);
    if (k > 0 && tree_.size() == before) return UpdateResult::replaced(k);
    return UpdateResult::appended();
  }
  if (k > 0) {
    ++counters_.erase;
    tree_.erase(k);
  }
  ++counters_.insert;
  tree_.insert(x);
  return k > 0 ? UpdateResult::replaced(k) : UpdateResult::appended();
}

// ---------------------------------------------------------------------------
// TreeBackend

TreeBackend::TreeBackend(std::size_t capacity) : ThresholdSet(capacity) {}

std::int32_t TreeBackend::height_of(std::int32_t node) const noexcept {
  return node < 0 ? 0 : nodes_[node].height;
}

std::size_t TreeBackend::height() const noexcept {
  return static_cast<std::size_t>(height_of(root_));
}

void TreeBackend::refresh_height(std::int32_t node) noexcept {
  auto& n = nodes_[node];
  n.height = 1 + std::max(height_of(n.left), height_of(n.right));
}

void TreeBackend::note_depth(std::uint64_t depth) noexcept {
  counters_.max_depth = std::max(counters_.max_depth, depth);
}

std::int32_t TreeBackend::rotate_left(std::int32_t node) {
  const std::int32_t pivot = nodes_[node].right;
  nodes_[node].right = nodes_[pivot].left;
  nodes_[pivot].left = node;
  refresh_height(node);
  refresh_height(pivot);
  return pivot;
}

std::int32_t TreeBackend::rotate_right(std::int32_t node) {
  const std::int32_t pivot = nodes_[node].left;
  nodes_[node].left = nodes_[pivot].right;
  nodes_[pivot].right = node;
  refresh_height(node);
  refresh_height(pivot);
  return pivot;
}

std::int32_t TreeBackend::rebalance(std::int32_t node) {
  refresh_height(node);
  const auto balance = [this](std::int32_t n) {
    return height_of(nodes_[n].left) - height_of(nodes_[n].right);
  };
  if (balance(node) > 1) {
    if (balance(nodes_[node].left) < 0) nodes_[node].left = rotate_left(nodes_[node].left);
    return rotate_right(node);
  }
  if (balance(node) < -1) {
    if (balance(nodes_[node].right) > 0) nodes_[node].right = rotate_right(nodes_[node].right);
    return rotate_left(node);
  }
  return node;
}

std::int32_t TreeBackend::insert_at(std::int32_t root, Column key, std::uint64_t depth) {
  if (root < 0) {
    note_depth(depth);
    nodes_.push_back(Node{key});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }
  if (key < nodes_[root].key) {
    const std::int32_t child = insert_at(nodes_[root].left, key, depth + 1);
    nodes_[root].left = child;
  } else {
    const std::int32_t child = insert_at(nodes_[root].right, key, depth + 1);
    nodes_[root].right = child;
  }
  return rebalance(root);
}

std::int32_t TreeBackend::find_successor(Column x) {
  std::int32_t best = -1;
  std::uint64_t depth = 0;
  for (std::int32_t n = root_; n >= 0;) {
    ++depth;
    if (nodes_[n].key > x) {
      best = n;
      n = nodes_[n].left;
    } else {
      n = nodes_[n].right;
    }
  }
  note_depth(depth);
  return best;
}

Column TreeBackend::do_succ(Column x) {
  const std::int32_t n = find_successor(x);
  return n < 0 ? 0 : nodes_[n].key;
}

Column TreeBackend::do_pred(Column x) {
  Column best = 0;
  std::uint64_t depth = 0;
  for (std::int32_t n = root_; n >= 0;) {
    ++depth;
    if (nodes_[n].key < x) {
      best = nodes_[n].key;
      n = nodes_[n].right;
    } else {
      n = nodes_[n].left;
    }
  }
  note_depth(depth);
  return best;
}

UpdateResult TreeBackend::do_update(Column x) {
  ++counters_.succ;
  const std::int32_t n = find_successor(x - 1);
  if (n >= 0) {
    const Column old = nodes_[n].key;
    nodes_[n].key = x;
    return UpdateResult::replaced(old);
  }
  ++counters_.insert;
  root_ = insert_at(root_, x, 1);
  return UpdateResult::appended();
}

Column TreeBackend::max() const {
  if (root_ < 0) return 0;
  std::int32_t n = root_;
  while (nodes_[n].right >= 0) n = nodes_[n].right;
  return nodes_[n].key;
}

std::vector<Column> TreeBackend::contents() const {
  std::vector<Column> out;
  out.reserve(nodes_.size());
  std::vector<std::int32_t> stack;
  std::int32_t n = root_;
  while (n >= 0 || !stack.empty()) {
    while (n >= 0) {
      stack.push_back(n);
      n = nodes_[n].left;
    }
    n = stack.back();
    stack.pop_back();
    out.push_back(nodes_[n].key);
    n = nodes_[n].right;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ArrayBackend

ArrayBackend::ArrayBackend(std::size_t capacity) : ThresholdSet(capacity) {}

void ArrayBackend::begin_row() { cursor_ = static_cast<std::ptrdiff_t>(s_.size()) - 1; }

Column ArrayBackend::do_succ(Column x) {
  const auto it = std::upper_bound(s_.begin(), s_.end(), x);
  return it == s_.end() ? 0 : *it;
}

Column ArrayBackend::do_pred(Column x) {
  const auto it = std::lower_bound(s_.begin(), s_.end(), x);
  return it == s_.begin() ? 0 : *std::prev(it);
}

UpdateResult ArrayBackend::do_update(Column x) {
  const auto alpha = static_cast<std::ptrdiff_t>(s_.size());
  // Everything right of the cursor must be >= x for the downward walk to be valid.
  if (cursor_ + 1 < alpha && s_[cursor_ + 1] < x) cursor_ = alpha - 1;
  while (cursor_ >= 0) {
    ++counters_.comparisons;
    if (s_[cursor_] < x) break;
    --cursor_;
  }
  const auto slot = static_cast<std::size_t>(cursor_ + 1);
  if (slot == s_.size()) {
    ++counters_.insert;
    s_.push_back(x);
    return UpdateResult::appended();
  }
  const Column old = s_[slot];
  s_[slot] = x;
  return UpdateResult::replaced(old);
}

// ---------------------------------------------------------------------------

std::unique_ptr<ThresholdSet> make_threshold_set(std::size_t capacity, Backend backend,
                                                 UpdateRule rule) {
  switch (backend) {
    case Backend::veb: return std::make_unique<VebBackend>(capacity, rule);
    case Backend::tree: return std::make_unique<TreeBackend>(capacity);
    case Backend::array: return std::make_unique<ArrayBackend>(capacity);
  }
  throw std::invalid_argument("unknown backend");
}

}  // namespace tlcs
