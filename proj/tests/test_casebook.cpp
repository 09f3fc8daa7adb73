#include "rewire/casebook.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rewire;

TEST_CASE("closed-form counts for the quadratic system") {
  CHECK(lambda_counts(1) == std::pair<Int, Int>{Int(1), Int(2)});
  CHECK(lambda_counts(2) == std::pair<Int, Int>{Int(4), Int(12)});
  CHECK(lambda_counts(3) == std::pair<Int, Int>{Int(32), Int(128)});
  CHECK(lambda_counts(4) == std::pair<Int, Int>{Int(336), Int(1680)});
  CHECK(lambda_counts(5) == std::pair<Int, Int>{Int(4096), Int(24576)});
  CHECK_THROWS_AS(lambda_counts(0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_counts(-3), std::invalid_argument);
}

TEST_CASE("closed-form counts for the nonseparable system") {
  CHECK(tutte_ns_count(1) == 1);
  CHECK(tutte_ns_count(2) == 2);
  CHECK(tutte_ns_count(3) == 6);
  CHECK(tutte_ns_count(4) == 22);
  CHECK(tutte_ns_count(5) == 91);
  CHECK(tutte_ns_count(6) == 408);
  CHECK(tutte_ns_count(7) == 1938);
  CHECK(tutte_ns_count(8) == 9614);
  CHECK_THROWS_AS(tutte_ns_count(0), std::invalid_argument);
}

TEST_CASE("case reports accumulate failures") {
  CaseReport rep{.name = "demo"};
  rep.check(true, "first");
  CHECK(rep.ok());
  rep.check(false, "second");
  rep.check(false, "third");
  CHECK_FALSE(rep.ok());
  CHECK(rep.failures == 2);
  CHECK(rep.str().find("FAIL: second") != std::string::npos);
  CHECK(rep.str().find("2 failure(s)") != std::string::npos);
}

TEST_CASE("every registered case passes") {
  for (const std::string& name : case_names()) {
    CaseReport rep = run_case(name);
    INFO(rep.str());
    CHECK(rep.ok());
  }
}

TEST_CASE("unknown case names are rejected") {
  CHECK_THROWS_AS(run_case("no-such-case"), std::invalid_argument);
  CHECK_THROWS_WITH(run_case("lam"), "unknown case 'lam'");
}
