#include "doctest.h"

#include "bllp/syntax.hpp"
#include "oracles.hpp"

using namespace bllp;
using bllp::testing::grid;
using bllp::testing::random_poly;

namespace {
ResourcePoly P(const char* s) { return parse_poly(s); }
const ResourcePoly x = ResourcePoly::var("x");
const ResourcePoly y = ResourcePoly::var("y");
}  // namespace

TEST_CASE("add") {
  CHECK(add(0, P("bin(x,2) + 3")) == P("bin(x,2) + 3"));
  ResourcePoly s = add(x, 1);
  CHECK(s.coefficient({{"x", 1}}) == 1);
  CHECK(s.coefficient({}) == 1);
  CHECK(add(ResourcePoly::binomial("x", 2), ResourcePoly::binomial("x", 2)).coefficient({{"x", 2}}) == 2);
}

TEST_CASE("mul") {
  CHECK(mul(1, P("x*y + 2")) == P("x*y + 2"));
  CHECK(mul(x, y).terms().size() == 1);
  ResourcePoly sq = mul(x, x);
  CHECK(sq.coefficient({{"x", 1}}) == 1);
  CHECK(sq.coefficient({{"x", 2}}) == 2);
  CHECK(sq.terms().size() == 2);
  // bin(x,2)^2 = bin(x,2) + 6 bin(x,3) + 6 bin(x,4)
  CHECK(mul(P("bin(x,2)"), P("bin(x,2)")) == P("bin(x,2) + 6*bin(x,3) + 6*bin(x,4)"));
}

TEST_CASE("bounded_sum") {
  CHECK(bounded_sum("z", y, 1) == y);
  CHECK(bounded_sum("z", y, ResourcePoly::var("z")) == ResourcePoly::binomial("y", 2));
  CHECK(bounded_sum("z", 0, P("z*x + 4")).is_zero());
  CHECK_THROWS_AS(bounded_sum("z", P("z + 1"), x), Error);
  for (unsigned n = 0; n <= 6; ++n) {
    Assignment s{{"y", n}};
    CHECK(eval(bounded_sum("z", y, 1), s) == n);
    CHECK(eval(bounded_sum("z", y, ResourcePoly::var("z")), s) == n * (n - (n ? 1 : 0)) / 2);
  }
}

TEST_CASE("compose") {
  ResourcePoly q = P("bin(y,2) + 3");
  CHECK(compose(x, "x", q) == q);
  CHECK(compose(ResourcePoly::binomial("x", 2), "x", 2) == 1);
  ResourcePoly r = compose(P("x + bin(x,2)"), "x", add(y, 1));
  for (unsigned n = 0; n <= 6; ++n) CHECK(eval(r, {{"y", n}}) == (n + 1) * (n + 2) / 2);
}

TEST_CASE("eval") {
  CHECK(eval(P("bin(x,2) + x"), {{"x", 3}}) == 6);
  CHECK(eval(1, {}) == 1);
  CHECK(eval(P("x*bin(y,2)"), {{"x", 2}, {"y", 4}}) == 12);
  CHECK(eval(P("bin(x,3)"), {{"x", 2}}) == 0);
  CHECK_THROWS_AS(eval(x, {}), Error);
}

TEST_CASE("poly_leq") {
  ResourcePoly p = P("x*y + 2*bin(x,2)");
  CHECK(poly_leq(p, p));
  CHECK(poly_leq(x, add(x, 1)));
  CHECK_FALSE(poly_leq(add(x, 1), x));
  CHECK(poly_lt(x, add(x, 1)));
  CHECK_FALSE(poly_lt(p, p));
  // pointwise x <= bin(x,2) + 1 holds but the order is syntactic
  CHECK_FALSE(poly_leq(x, P("bin(x,2) + 1")));
}

TEST_CASE("fd_oracle") {
  auto sq = [](const Assignment& s) { return s.at("x") * s.at("x"); };
  CHECK(fd_oracle(sq, {"x"}, {{"x", 2}}) == P("x + 2*bin(x,2)"));
  CHECK(fd_oracle([](const Assignment&) { return Natural(5); }, {}, {}) == 5);
  auto prod = [](const Assignment& s) { return s.at("x") * s.at("y"); };
  CHECK(fd_oracle(prod, {"x", "y"}, {{"x", 1}, {"y", 1}}) == P("x*y"));
  auto neg = [](const Assignment& s) { return s.at("x") == 0 ? Natural(1) : Natural(0); };
  CHECK_THROWS_AS(fd_oracle(neg, {"x"}, {{"x", 2}}), Error);
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    ResourcePoly p = random_poly(rng, {"x", "y", "z"}, 3);
    CHECK(parse_poly(p.str()) == p);
  }
}

TEST_CASE("homomorphism and order properties") {
  std::mt19937 rng(11);
  const std::vector<VarId> vars{"x", "y"};
  for (int i = 0; i < 40; ++i) {
    ResourcePoly p = random_poly(rng, vars, 3), q = random_poly(rng, vars, 3);
    ResourcePoly r = p + random_poly(rng, vars, 2), s = q + random_poly(rng, vars, 2);
    for (const auto& a : grid(vars, 8)) {
      REQUIRE(eval(p + q, a) == eval(p, a) + eval(q, a));
      REQUIRE(eval(p * q, a) == eval(p, a) * eval(q, a));
      Assignment b = a;
      b["x"] = eval(q, a);
      REQUIRE(eval(compose(p, "x", q), a) == eval(p, b));
    }
    CHECK(poly_leq(p, r));
    CHECK(poly_leq(p + q, r + s));
    CHECK(poly_leq(p * q, r * s));
    CHECK(poly_leq(compose(p, "x", q), compose(r, "x", s)));
    if (poly_leq(r, p)) CHECK(r == p);
    for (const auto& a : grid(vars, 4)) CHECK(eval(p, a) <= eval(r, a));
  }
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    auto err = bllp::testing::poly_oracle_instance(rng);
    INFO(err.value_or(""));
    CHECK_FALSE(err.has_value());
  }
}

TEST_CASE("fresh names avoid the given set") {
  CHECK(fresh_name("x", {"x", "y"}) != "x");
  CHECK(fresh_name("w", {"x"}) == "w");
}
