#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "tlcs/errors.hpp"
#include "tlcs/threshold_set.hpp"

using namespace tlcs;
using tlcs::testing::reference_update;
using Cols = std::vector<Column>;

namespace {

constexpr Backend kAll[] = {Backend::veb, Backend::tree, Backend::array};

std::unique_ptr<ThresholdSet> filled(Backend b, std::size_t capacity, const Cols& ascending) {
  auto s = make_threshold_set(capacity, b);
  for (const Column c : ascending) s->update(c);
  return s;
}

}  // namespace

TEST_CASE("new sets are empty with zeroed counters") {
  for (const Backend b : kAll) {
    CAPTURE(to_string(b));
    auto s = make_threshold_set(7, b);
    CHECK(s->size() == 0);
    CHECK(s->capacity() == 7);
    CHECK(s->contents().empty());
    CHECK(s->max() == 0);
    CHECK(s->counters().update == 0);
  }
  CHECK(make_threshold_set(1, Backend::tree)->capacity() == 1);
  CHECK_THROWS_AS(make_threshold_set(0, Backend::veb), std::invalid_argument);
}

TEST_CASE("size/succ/pred on the worked example set") {
  for (const Backend b : kAll) {
    CAPTURE(to_string(b));
    auto s = filled(b, 7, {2, 3, 6});
    CHECK(s->size() == 3);
    CHECK(s->succ(0) == 2);
    CHECK(s->succ(3) == 6);
    CHECK(s->succ(6) == 0);
    CHECK(s->pred(6) == 3);
    CHECK(s->pred(2) == 0);
    CHECK(s->pred(4) == 3);

    auto two = filled(b, 7, {2, 3});
    CHECK(two->size() == 2);
    CHECK(two->succ(5) == 0);
  }
}

TEST_CASE("update replaces the successor of x-1 or appends") {
  for (const Backend b : kAll) {
    CAPTURE(to_string(b));
    auto s = filled(b, 7, {2, 3});
    CHECK(s->update(6) == UpdateResult::appended());
    CHECK(s->contents() == Cols{2, 3, 6});

    CHECK(s->update(1) == UpdateResult::replaced(2));
    CHECK(s->contents() == Cols{1, 3, 6});

    auto fixed = filled(b, 7, {2, 3, 6});
    CHECK(fixed->update(3) == UpdateResult::replaced(3));
    CHECK(fixed->contents() == Cols{2, 3, 6});

    auto empty = make_threshold_set(7, b);
    CHECK(empty->update(4) == UpdateResult::appended());
    CHECK(empty->contents() == Cols{4});

    auto repeated = make_threshold_set(7, b);
    for (int k = 0; k < 3; ++k) repeated->update(5);
    CHECK(repeated->contents() == Cols{5});
  }
}

TEST_CASE("range checks") {
  for (const Backend b : kAll) {
    CAPTURE(to_string(b));
    auto s = make_threshold_set(5, b);
    CHECK_THROWS_AS(s->update(0), DomainError);
    CHECK_THROWS_AS(s->update(6), DomainError);
    CHECK_THROWS_AS(s->pred(0), DomainError);
    CHECK_THROWS_AS(s->succ(6), DomainError);
    CHECK_NOTHROW(s->succ(0));
    CHECK_NOTHROW(s->succ(5));
    CHECK_NOTHROW(s->pred(5));
  }
}

TEST_CASE("random update sequences follow the definition on every backend") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 512;
    std::uniform_int_distribution<Column> pick(1, n);
    auto veb = make_threshold_set(n, Backend::veb);
    auto tree = make_threshold_set(n, Backend::tree);
    auto array = make_threshold_set(n, Backend::array);
    Cols ref;
    const int steps = trial == 0 ? 10000 : 500;
    for (int step = 0; step < steps; ++step) {
      if (rng() % 7 == 0) {
        veb->begin_row();
        tree->begin_row();
        array->begin_row();
      }
      const Column x = pick(rng);
      const Cols before = ref;
      reference_update(ref, x);

      const auto rv = veb->update(x);
      const auto rt = tree->update(x);
      const auto ra = array->update(x);
      REQUIRE(rv == rt);
      REQUIRE(rv == ra);
      // Size grows by one on append and not at all on replace.
      if (rv.kind == UpdateResult::Kind::appended) {
        REQUIRE(ref.size() == before.size() + 1);
      } else {
        REQUIRE(ref.size() == before.size());
        REQUIRE(x <= rv.old);
      }
      REQUIRE(veb->contents() == ref);
      REQUIRE(tree->contents() == ref);
      REQUIRE(array->contents() == ref);
    }
  }
}

TEST_CASE("veb backend update costs at most succ + delete + insert") {
  auto s = make_threshold_set(100, Backend::veb);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) s->update(1 + rng() % 100);
  const auto& c = s->counters();
  CHECK(c.update == 1000);
  CHECK(c.succ == 1000);
  CHECK(c.insert == 1000);
  CHECK(c.erase <= c.insert);
  CHECK(c.dictionary_ops() <= 3 * 1000);
}

TEST_CASE("literal max guard grows the set when the successor is the maximum") {
  VebBackend literal(7, UpdateRule::literal_max_guard);
  literal.update(2);
  // succ(0) = 2 = max, so the guard skips the delete.
  literal.update(1);
  CHECK(literal.contents() == Cols{1, 2});

  VebBackend definition(7);
  definition.update(2);
  definition.update(1);
  CHECK(definition.contents() == Cols{1});
}

TEST_CASE("tree backend stays balanced") {
  TreeBackend s(1 << 16);
  for (Column x = 1; x <= 4000; ++x) s.update(x);  // ascending: all appends
  CHECK(s.contents().size() == 4000);
  const double bound = 1.45 * std::log2(4000.0 + 2.0);
  CHECK(static_cast<double>(s.height()) <= bound);
  CHECK(static_cast<double>(s.counters().max_depth) <= 2.0 * std::log2(4002.0) + 2.0);
}

TEST_CASE("array cursor: decreasing updates in a row cost at most alpha + updates") {
  ArrayBackend s(100);
  for (const Column c : {10, 20, 30, 40, 50}) s.update(c);
  s.begin_row();
  const auto before = s.counters().comparisons;
  // One row's worth of columns, decreasing.
  for (const Column c : {55, 45, 33, 12, 3}) s.update(c);
  const auto spent = s.counters().comparisons - before;
  CHECK(spent <= 5 + 5 + 1);
  CHECK(s.contents() == Cols{3, 12, 30, 33, 45, 55});
}
