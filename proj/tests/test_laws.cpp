#include <chrono>

#include "doctest.h"
#include "soalg/laws.hpp"

using namespace soalg;

namespace {

void require_clean(const LawSuite& s, std::uint64_t samples) {
  CAPTURE(s.name);
  CHECK(s.samples == samples);
  for (const auto& l : s.laws) {
    CAPTURE(l.name);
    CHECK(l.checked > 0);
    CHECK(l.failed == 0);
    CHECK(l.first_failure.empty());
  }
  CHECK(s.ok());
}

bool same(const LawSuite& a, const LawSuite& b) {
  if (a.samples != b.samples || a.laws.size() != b.laws.size()) return false;
  for (std::size_t i = 0; i < a.laws.size(); ++i)
    if (a.laws[i].name != b.laws[i].name ||
        a.laws[i].checked != b.laws[i].checked ||
        a.laws[i].failed != b.laws[i].failed)
      return false;
  return true;
}

}  // namespace

TEST_SUITE("laws") {
  TEST_CASE("suites run clean") {
    require_clean(substitution_suite(1, 300), 300);
    require_clean(category_suite(2, 100), 100);
    require_clean(compositionality_suite(3, 300), 300);
  }

  TEST_CASE("suites are deterministic in the seed") {
    CHECK(same(substitution_suite(9, 50), substitution_suite(9, 50)));
    CHECK(same(category_suite(9, 30), category_suite(9, 30)));
    CHECK(same(compositionality_suite(9, 50), compositionality_suite(9, 50)));
  }

  TEST_CASE("every law is exercised on every sample it applies to") {
    LawSuite s = substitution_suite(5, 100);
    CHECK(s.law("unit").checked == 100);
    CHECK(s.law("associativity").checked == 100);
    // one metasubstitution check per sample plus one per successful fusion
    CHECK(s.law("preservation").checked == 100 + s.law("fusion").checked);
    LawSuite c = category_suite(5, 20);
    for (const auto& l : c.laws) CHECK(l.checked == 20);
  }

  TEST_CASE("zero samples") {
    LawSuite s = category_suite(1, 0);
    CHECK(s.samples == 0);
    CHECK(!s.ok());  // nothing was checked
  }

  TEST_CASE("clone suite") {
    LawSuite s = clone_suite(1);
    CHECK(s.ok());
    // identity: one instance per table of arity <= 2 over s = 1, 2
    CHECK(s.law("identity").checked == 3 + (2 + 4 + 16));
    CHECK_THROWS_AS(clone_suite(1, {1000, 1}), ResourceError);
  }
}
