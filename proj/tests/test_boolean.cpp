#include <doctest.h>

#include "ccn/boolean.hpp"

using namespace ccn;

TEST_CASE("index and coefficients stay consistent") {
  for (int m = 0; m < kBooleanCount; ++m) {
    const TwoBitBoolean f(m);
    CHECK(f.index() == m);
    CHECK(TwoBitBoolean::from_coeffs(f.coef_u(), f.coef_v(), f.coef_uv(), f.coef_1()).index() == m);
    const std::array<int, 4> table = {f.eval(0, 0), f.eval(0, 1), f.eval(1, 0), f.eval(1, 1)};
    CHECK(TwoBitBoolean::from_truth_table(table).index() == m);
  }
}

TEST_CASE("named members of the even class evaluate as expected") {
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      CHECK(TwoBitBoolean(0).eval(u, v) == 0);
      CHECK(TwoBitBoolean(2).eval(u, v) == (u & v));
      CHECK(TwoBitBoolean(4).eval(u, v) == v);
      CHECK(TwoBitBoolean(6).eval(u, v) == ((u ^ 1) & v));
      CHECK(TwoBitBoolean(8).eval(u, v) == u);
      CHECK(TwoBitBoolean(10).eval(u, v) == (u & (v ^ 1)));
      CHECK(TwoBitBoolean(12).eval(u, v) == (u ^ v));
      CHECK(TwoBitBoolean(14).eval(u, v) == (u | v));
    }
  }
}

TEST_CASE("odd indices are the negations of their even partners") {
  for (int k = 0; k < 8; ++k) {
    const TwoBitBoolean even(2 * k);
    const TwoBitBoolean odd(2 * k + 1);
    CHECK(even.is_even());
    CHECK_FALSE(odd.is_even());
    CHECK(even.negation() == odd);
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) CHECK(odd.eval(u, v) == (1 ^ even.eval(u, v)));
  }
}

TEST_CASE("input flips rewrite coefficients correctly") {
  CHECK(TwoBitBoolean(12).with_flipped_inputs(1, 0).index() == 13);
  CHECK(TwoBitBoolean(4).with_flipped_inputs(0, 1).index() == 5);
  for (int m = 0; m < kBooleanCount; ++m)
    CHECK(TwoBitBoolean(m).with_flipped_inputs(0, 0).index() == m);
}

TEST_CASE("flip images satisfy the defining truth-table identity") {
  for (int m = 0; m < kBooleanCount; ++m) {
    const TwoBitBoolean f(m);
    for (int fu = 0; fu < 2; ++fu) {
      for (int fv = 0; fv < 2; ++fv) {
        const TwoBitBoolean g = f.with_flipped_inputs(fu, fv);
        for (int u = 0; u < 2; ++u)
          for (int v = 0; v < 2; ++v) CHECK(g.eval(u ^ fu, v ^ fv) == f.eval(u, v));
      }
    }
  }
}

TEST_CASE("eval table matches direct evaluation") {
  for (int m = 0; m < kBooleanCount; ++m)
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        CHECK(kEvalTable[m][(u << 1) | v] == TwoBitBoolean(m).eval(u, v));
}
