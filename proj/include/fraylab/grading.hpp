#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fraylab {

/// Exponents of a, q and t.
struct MultiDegree {
  int a = 0;
  int q = 0;
  int t = 0;

  constexpr MultiDegree() = default;
  constexpr MultiDegree(int a_, int q_, int t_) : a(a_), q(q_), t(t_) {}

  auto operator<=>(const MultiDegree&) const = default;

  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator-(const MultiDegree& o) const;
  MultiDegree operator-() const;
  MultiDegree& operator+=(const MultiDegree& o);
  MultiDegree operator*(int k) const;

  bool odd() const { return ((a + t) & 1) != 0; }
  bool is_zero() const { return a == 0 && q == 0 && t == 0; }
};

struct ShiftSpec {
  MultiDegree delta;
};

MultiDegree deg_add(const MultiDegree& d1, const MultiDegree& d2);

/// (a1 a2 + t1 t2) mod 2
int parity(const MultiDegree& d1, const MultiDegree& d2);

/// (-1)^parity(d1, d2)
int commutator_sign(const MultiDegree& d1, const MultiDegree& d2);

/// Sign picked up by a map when its source and target are both shifted by s.
int shift_sign(const ShiftSpec& s);

std::string to_string(const MultiDegree& d);

inline constexpr MultiDegree kDegA{1, 0, 0};
inline constexpr MultiDegree kDegQ{0, 1, 0};
inline constexpr MultiDegree kDegT{0, 0, 1};

}  // namespace fraylab
