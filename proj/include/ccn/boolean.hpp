#pragma once

#include <array>
#include <cstdint>

#include "ccn/task.hpp"

namespace ccn {

// A Boolean function of two bits in algebraic normal form,
//   f(u,v) = coef_u*u XOR coef_v*v XOR coef_uv*u*v XOR coef_1,
// indexed 0..15 as 8*coef_u + 4*coef_v + 2*coef_uv + coef_1. Even indices
// form the non-negated class; index 2k+1 is the negation of index 2k.
class TwoBitBoolean {
 public:
  constexpr TwoBitBoolean() = default;
  explicit constexpr TwoBitBoolean(int index)
      : coef_u_((index >> 3) & 1),
        coef_v_((index >> 2) & 1),
        coef_uv_((index >> 1) & 1),
        coef_1_(index & 1) {}

  static constexpr TwoBitBoolean from_coeffs(int coef_u, int coef_v, int coef_uv, int coef_1) {
    return TwoBitBoolean((coef_u & 1) << 3 | (coef_v & 1) << 2 | (coef_uv & 1) << 1 | (coef_1 & 1));
  }

  // Truth table in input order (u,v) = (0,0), (0,1), (1,0), (1,1).
  static constexpr TwoBitBoolean from_truth_table(const std::array<int, 4>& t) {
    const int coef_1 = t[0] & 1;
    const int coef_v = (t[1] ^ t[0]) & 1;
    const int coef_u = (t[2] ^ t[0]) & 1;
    const int coef_uv = (t[3] ^ t[2] ^ t[1] ^ t[0]) & 1;
    return from_coeffs(coef_u, coef_v, coef_uv, coef_1);
  }

  constexpr int index() const { return coef_u_ << 3 | coef_v_ << 2 | coef_uv_ << 1 | coef_1_; }
  constexpr int coef_u() const { return coef_u_; }
  constexpr int coef_v() const { return coef_v_; }
  constexpr int coef_uv() const { return coef_uv_; }
  constexpr int coef_1() const { return coef_1_; }

  constexpr int eval(int u, int v) const {
    return (coef_u_ & u) ^ (coef_v_ & v) ^ (coef_uv_ & u & v) ^ coef_1_;
  }
  constexpr int eval(const TwoBitString& s) const { return eval(s.first_bit, s.second_bit); }

  // Even class: constant term zero, i.e. the non-negated half.
  constexpr bool is_even() const { return coef_1_ == 0; }

  constexpr TwoBitBoolean negation() const {
    return from_coeffs(coef_u_, coef_v_, coef_uv_, coef_1_ ^ 1);
  }

  // The function f' with f'(u ^ flip_u, v ^ flip_v) == f(u, v) for all inputs.
  // Input complementation rewrites only the linear and constant coefficients,
  // which is what lets encoding searches stay inside the even class.
  constexpr TwoBitBoolean with_flipped_inputs(int flip_u, int flip_v) const {
    int cu = coef_u_;
    int cv = coef_v_;
    int c1 = coef_1_;
    if (flip_v & 1) {
      cu ^= coef_uv_;
      c1 ^= cv;
    }
    if (flip_u & 1) {
      cv ^= coef_uv_;
      c1 ^= cu;
    }
    return from_coeffs(cu, cv, coef_uv_, c1);
  }

  friend constexpr bool operator==(const TwoBitBoolean& a, const TwoBitBoolean& b) {
    return a.index() == b.index();
  }

 private:
  std::uint8_t coef_u_ = 0;
  std::uint8_t coef_v_ = 0;
  std::uint8_t coef_uv_ = 0;
  std::uint8_t coef_1_ = 0;
};

inline constexpr int kBooleanCount = 16;
inline constexpr std::array<int, 8> kEvenIndices = {0, 2, 4, 6, 8, 10, 12, 14};

// eval_table[m][(u << 1) | v]
inline constexpr std::array<std::array<std::uint8_t, 4>, 16> make_eval_table() {
  std::array<std::array<std::uint8_t, 4>, 16> t{};
  for (int m = 0; m < 16; ++m)
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        t[m][(u << 1) | v] = static_cast<std::uint8_t>(TwoBitBoolean(m).eval(u, v));
  return t;
}
inline constexpr auto kEvalTable = make_eval_table();

}  // namespace ccn
