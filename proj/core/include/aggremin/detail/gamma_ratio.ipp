#pragma once

// Template bodies for special_functions.hpp.

namespace aggremin::special {

namespace detail {

/// Running product kept as mantissa * 2^exponent so that long gamma
/// products neither overflow nor underflow.
class ScaledProduct {
 public:
  void multiply_by_gamma(double x);
  void divide_by_gamma(double x);
  double value() const;

 private:
  double mantissa_ = 1.0;
  long exponent_ = 0;
};

}  // namespace detail

template <std::size_t N, std::size_t M>
double gamma_ratio(const std::array<double, N>& num, const std::array<double, M>& den) {
  for (double x : den) {
    if (is_nonpositive_integer(x, 0.0)) return 0.0;
  }
  detail::ScaledProduct p;
  for (double x : num) p.multiply_by_gamma(x);
  for (double x : den) p.divide_by_gamma(x);
  return p.value();
}

}  // namespace aggremin::special
