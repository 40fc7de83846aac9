#include "fraylab/grading.hpp"

#include <limits>
#include <stdexcept>

namespace fraylab {

namespace {

int checked_add(int x, int y) {
  int r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("degree overflow");
  return r;
}

int checked_mul(int x, int y) {
  int r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("degree overflow");
  return r;
}

}  // namespace

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  return {checked_add(a, o.a), checked_add(q, o.q), checked_add(t, o.t)};
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const { return *this + (-o); }

MultiDegree MultiDegree::operator-() const {
  if (a == std::numeric_limits<int>::min() || q == std::numeric_limits<int>::min() ||
      t == std::numeric_limits<int>::min())
    throw std::overflow_error("degree overflow");
  return {-a, -q, -t};
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& o) { return *this = *this + o; }

MultiDegree MultiDegree::operator*(int k) const {
  return {checked_mul(a, k), checked_mul(q, k), checked_mul(t, k)};
}

MultiDegree deg_add(const MultiDegree& d1, const MultiDegree& d2) { return d1 + d2; }

int parity(const MultiDegree& d1, const MultiDegree& d2) {
  return ((d1.a & 1) * (d2.a & 1) + (d1.t & 1) * (d2.t & 1)) & 1;
}

int commutator_sign(const MultiDegree& d1, const MultiDegree& d2) {
  return parity(d1, d2) ? -1 : 1;
}

int shift_sign(const ShiftSpec& s) { return s.delta.odd() ? -1 : 1; }

std::string to_string(const MultiDegree& d) {
  return "(" + std::to_string(d.a) + "," + std::to_string(d.q) + "," + std::to_string(d.t) + ")";
}

}  // namespace fraylab
