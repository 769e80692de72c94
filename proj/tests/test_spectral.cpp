#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tlab/spectral.hpp"

using namespace tlab;
using spectral::Method;
using spectral::QuadSpec;

TEST_CASE("unit symbol gives eigenvalue one", "[spectral]") {
  const auto unit = symbols::parse_symbol("moment: 1");
  for (int n : {3, 4})
    for (double lambda : {n + 1.0, n + 2.5})
      for (int k1 : {0, 2})
        for (int k2 : {0, 1})
          REQUIRE(std::abs(spectral::eigenvalue_quad(unit, n, lambda, k1, k2) - 1.0) <
                  1e-12);
}

TEST_CASE("constants pass through", "[spectral]") {
  const auto kappa = symbols::parse_symbol("moment: 2.5");
  REQUIRE(spectral::eigenvalue_quad(kappa, 3, 4.0, 1, 1) ==
          Catch::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("eigenvalue map is linear in the symbol", "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto g = symbols::parse_symbol("moment: 1/(1 - s)");
  const auto combo = symbols::parse_symbol("moment: 2*exp(s) + 3/(1 - s)");
  for (int k1 : {0, 1})
    for (int k2 : {0, 1}) {
      const double cf = spectral::eigenvalue_quad(f, 3, 4.0, k1, k2);
      const double cg = spectral::eigenvalue_quad(g, 3, 4.0, k1, k2);
      const double cc = spectral::eigenvalue_quad(combo, 3, 4.0, k1, k2);
      REQUIRE(std::abs(cc - (2.0 * cf + 3.0 * cg)) < 1e-12);
    }
}

TEST_CASE("order doubling stability", "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const double base = spectral::eigenvalue_quad(f, 3, 4.0, 1, 1);
  const double fine =
      spectral::eigenvalue_quad(f, 3, 4.0, 1, 1, QuadSpec{128, 128, 128});
  REQUIRE(std::abs(fine - base) / std::abs(fine) < 1e-8);
}

TEST_CASE("cone MC with unit symbol is exactly one", "[spectral]") {
  const auto unit = symbols::parse_symbol("moment: 1");
  const auto r = spectral::eigenvalue_mc_cone(unit, 3, 4.0, 1, 1, 10000, 5);
  REQUIRE(r.value == 1.0);
  // deterministic per seed
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto a = spectral::eigenvalue_mc_cone(f, 3, 4.0, 1, 0, 20000, 5);
  const auto b = spectral::eigenvalue_mc_cone(f, 3, 4.0, 1, 0, 20000, 5);
  REQUIRE(a.value == b.value);
}

TEST_CASE("reduction agrees with the n-dimensional cone MC", "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const double q = spectral::eigenvalue_quad(f, 3, 4.0, 1, 1);
  const auto mc = spectral::eigenvalue_mc_cone(f, 3, 4.0, 1, 1, 200000, 9);
  REQUIRE(std::abs(q - mc.value) < 3.0 * mc.stderr_);
  // n = 4 exercises the nontrivial t weight
  const double q4 = spectral::eigenvalue_quad(f, 4, 5.5, 2, 0);
  const auto mc4 = spectral::eigenvalue_mc_cone(f, 4, 5.5, 2, 0, 200000, 9);
  REQUIRE(std::abs(q4 - mc4.value) < 3.0 * mc4.stderr_);
}

TEST_CASE("lambda range is enforced", "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  try {
    spectral::eigenvalue_quad(f, 3, 2.0, 0, 0);
    FAIL("expected throw");
  } catch (const tlab::Error& e) {
    REQUIRE(e.code() == ErrorCode::UnsupportedLambda);
  }
  REQUIRE_THROWS_AS(spectral::eigenvalue_mc_cone(f, 3, 1.5, 0, 0, 100, 1),
                    tlab::Error);
}

TEST_CASE("eigenvalue tables are sorted and bounded by the symbol range",
          "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto rows = spectral::eigenvalue_table(f, 3, 4.0, 4, Method::quad);
  REQUIRE(!rows.empty());
  for (size_t i = 1; i < rows.size(); ++i) {
    const int da = rows[i - 1].k1 + 2 * rows[i - 1].k2;
    const int db = rows[i].k1 + 2 * rows[i].k2;
    REQUIRE((da < db || (da == db && rows[i - 1].k1 < rows[i].k1)));
  }
  // exp(s) on s <= 0 ranges over (0, 1]
  for (const auto& r : rows) {
    REQUIRE(r.value > 0.0);
    REQUIRE(r.value <= 1.0);
  }

  const auto unit_rows = spectral::eigenvalue_table(
      symbols::parse_symbol("moment: 1"), 3, 4.0, 3, Method::quad);
  for (const auto& r : unit_rows) REQUIRE(std::abs(r.value - 1.0) < 1e-12);
}

TEST_CASE("table serialization formats", "[spectral]") {
  const auto f = symbols::parse_symbol("moment: exp(s)");
  const auto rows = spectral::eigenvalue_table(f, 3, 4.0, 2, Method::quad);
  const std::string csv = spectral::table_to_csv(rows, 3, 4.0, 0, 0);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  REQUIRE(header == "n,lambda,k1,k2,method,value,error,samples,seed");
  size_t lines = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++lines;
  REQUIRE(lines == rows.size());

  const auto j = spectral::table_to_json(rows, 3, 4.0, 0, 0);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == rows.size());
  REQUIRE(j[0].at("method") == "quad");
}
