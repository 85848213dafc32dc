#include "tlcs/veb_tree.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include "tlcs/errors.hpp"

namespace tlcs {

namespace {

unsigned ceil_log2(std::uint64_t v) {
  return v <= 1 ? 0u : static_cast<unsigned>(std::bit_width(v - 1));
}

}  // namespace

VebTree::VebTree(Key universe_request) {
  if (universe_request == 0) {
    throw std::invalid_argument("vEB universe must be at least 1");
  }
  if (universe_request > (Key{1} << kMaxLogUniverse)) {
    throw ResourceError("vEB universe " + std::to_string(universe_request) +
                        " exceeds the supported maximum 2^" + std::to_string(kMaxLogUniverse));
  }
  log_universe_ = std::max(1u, ceil_log2(universe_request));
  // Recursion depth stays within ceil(log2 log2 u) + 1.
  assert(depth() <= ceil_log2(log_universe_) + 1);
}

VebTree::VebTree(LevelTag, unsigned log_universe) : log_universe_(log_universe) {}

VebTree::~VebTree() = default;

unsigned VebTree::depth_for(unsigned log_universe) noexcept {
  unsigned depth = 1;
  while (log_universe > 1) {
    log_universe = (log_universe + 1) / 2;
    ++depth;
  }
  return depth;
}

std::optional<VebTree::Key> VebTree::min() const noexcept {
  if (size_ == 0) return std::nullopt;
  return min_;
}

std::optional<VebTree::Key> VebTree::max() const noexcept {
  if (size_ == 0) return std::nullopt;
  return max_;
}

void VebTree::check_key(Key x) const {
  if (x >= universe()) {
    throw DomainError("key " + std::to_string(x) + " outside vEB universe [0, " +
                      std::to_string(universe()) + ")");
  }
}

const VebTree* VebTree::cluster(Key h) const noexcept {
  if (clusters_.empty()) return nullptr;
  const auto& c = clusters_[h];
  return (c && !c->empty()) ? c.get() : nullptr;
}

bool VebTree::contains(Key x) const {
  check_key(x);
  return contains_impl(x);
}

bool VebTree::contains_impl(Key x) const noexcept {
  if (size_ == 0) return false;
  if (x == min_ || x == max_) return true;
  if (log_universe_ == 1) return false;
  const VebTree* c = cluster(high(x));
  return c != nullptr && c->contains_impl(low(x));
}

void VebTree::insert(Key x) {
  check_key(x);
  if (contains_impl(x)) return;
  insert_absent(x);
}

void VebTree::insert_absent(Key x) {
  if (size_ == 0) {
    min_ = max_ = x;
    size_ = 1;
    return;
  }
  if (x < min_) std::swap(x, min_);
  if (log_universe_ > 1) {
    const Key h = high(x);
    const Key l = low(x);
    if (clusters_.empty()) clusters_.resize(std::size_t{1} << high_bits());
    auto& c = clusters_[h];
    if (!c || c->empty()) {
      if (!summary_) summary_.reset(new VebTree(LevelTag{}, high_bits()));
      summary_->insert_absent(h);
      if (!c) c.reset(new VebTree(LevelTag{}, low_bits()));
      // Empty cluster: O(1).
      c->insert_absent(l);
    } else {
      c->insert_absent(l);
    }
  }
  if (x > max_) max_ = x;
  ++size_;
}

void VebTree::erase(Key x) {
  check_key(x);
  if (!contains_impl(x)) return;
  erase_present(x);
}

void VebTree::erase_present(Key x) {
  if (size_ == 1) {
    size_ = 0;
    min_ = max_ = 0;
    return;
  }
  if (log_universe_ == 1) {
    // Both 0 and 1 were present.
    min_ = max_ = (x == 0) ? 1 : 0;
    size_ = 1;
    return;
  }
  if (x == min_) {
    // Promote the smallest clustered key into the cache and remove it below.
    const Key first = *summary_->min();
    x = index(first, *clusters_[first]->min());
    min_ = x;
  }
  const Key h = high(x);
  auto& c = clusters_[h];
  c->erase_present(low(x));
  if (c->empty()) {
    summary_->erase_present(h);
    c.reset();
    if (x == max_) {
      if (summary_->empty()) {
        max_ = min_;
      } else {
        const Key last = *summary_->max();
        max_ = index(last, *clusters_[last]->max());
      }
    }
  } else if (x == max_) {
    max_ = index(h, *c->max());
  }
  --size_;
}

std::optional<VebTree::Key> VebTree::successor(Key x) const {
  check_key(x);
  return successor_impl(x);
}

std::optional<VebTree::Key> VebTree::successor_impl(Key x) const noexcept {
  if (size_ == 0 || x >= max_) return std::nullopt;
  if (x < min_) return min_;
  if (log_universe_ == 1) return max_;  // x == 0 == min_, max_ == 1
  const Key h = high(x);
  const Key l = low(x);
  if (const VebTree* c = cluster(h); c != nullptr && l < c->max_) {
    return index(h, *c->successor_impl(l));
  }
  const auto next = summary_->successor_impl(h);
  if (!next) return std::nullopt;
  return index(*next, clusters_[*next]->min_);
}

std::optional<VebTree::Key> VebTree::predecessor(Key x) const {
  check_key(x);
  return predecessor_impl(x);
}

std::optional<VebTree::Key> VebTree::predecessor_impl(Key x) const noexcept {
  if (size_ == 0 || x <= min_) return std::nullopt;
  if (x > max_) return max_;
  if (log_universe_ == 1) return min_;  // x == 1 == max_, min_ == 0
  const Key h = high(x);
  const Key l = low(x);
  if (const VebTree* c = cluster(h); c != nullptr && l > c->min_) {
    return index(h, *c->predecessor_impl(l));
  }
  const auto prev = summary_ ? summary_->predecessor_impl(h) : std::nullopt;
  if (!prev) return min_;  // x > min_ was established above
  return index(*prev, clusters_[*prev]->max_);
}

std::vector<VebTree::Key> VebTree::keys() const {
  std::vector<Key> out;
  out.reserve(size_);
  collect(0, out);
  return out;
}

void VebTree::collect(Key offset, std::vector<Key>& out) const {
  if (size_ == 0) return;
  out.push_back(offset + min_);
  if (log_universe_ == 1) {
    if (size_ == 2) out.push_back(offset + max_);
    return;
  }
  if (!summary_) return;
  for (auto h = summary_->min(); h; h = summary_->successor_impl(*h)) {
    clusters_[*h]->collect(offset + index(*h, 0), out);
  }
}

bool VebTree::check_invariants() const {
  if (size_ == 0) {
    if (summary_ && !summary_->empty()) return false;
    for (const auto& c : clusters_) {
      if (c && !c->empty()) return false;
    }
    return true;
  }
  if (min_ > max_ || max_ >= universe()) return false;
  if ((size_ == 1) != (min_ == max_)) return false;
  if (log_universe_ == 1) return size_ <= 2;

  std::size_t clustered = 0;
  for (std::size_t h = 0; h < clusters_.size(); ++h) {
    const auto& c = clusters_[h];
    const bool occupied = c && !c->empty();
    const bool flagged = summary_ && summary_->contains_impl(h);
    if (occupied != flagged) return false;
    if (!occupied) continue;
    if (!c->check_invariants()) return false;
    // The cached min is never stored recursively; every clustered key exceeds it.
    if (index(h, c->min_) <= min_ || index(h, c->max_) > max_) return false;
    clustered += c->size_;
  }
  if (summary_ && !summary_->check_invariants()) return false;
  if (clustered + 1 != size_) return false;
  if (size_ > 1) {
    const Key last = *summary_->max();
    if (index(last, clusters_[last]->max_) != max_) return false;
  }
  return true;
}

}  // namespace tlcs
