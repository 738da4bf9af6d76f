#ifndef MOMENTKERNEL_PRECISION_HPP
#define MOMENTKERNEL_PRECISION_HPP

#include <string>
#include <string_view>

#include "momentkernel/types.hpp"

namespace momentkernel {

/// Sets the default precision for freshly created Real values and restores
/// the previous default on destruction. The default is process-wide, so
/// scopes must not be entered concurrently from several threads.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned digits10_for_bits(unsigned bits);

/// Actual MPFR precision of a value, in bits.
unsigned precision_bits(const Real& x);

/// 2^-bits.
Real unit_roundoff(unsigned bits);

/// q^k for k >= 0.
Rational pow_int(const Rational& q, unsigned k);

Real to_real(const Rational& q, unsigned bits);
Real to_real(long long v, unsigned bits);

/// Parses "p/q", an integer, or a decimal literal such as "0.5" or "-1.25e-3"
/// into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a rational or decimal literal at the given precision.
Real parse_real(std::string_view text, unsigned bits);

/// True when the literal denotes an exact rational in "p/q" or integer form.
bool is_rational_literal(std::string_view text);

/// Scientific decimal string carrying every digit the precision supports.
std::string to_decimal(const Real& x, unsigned bits);
std::string to_decimal(const Rational& q);

/// Shortest "p/q" (or integer) form.
std::string to_fraction(const Rational& q);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_PRECISION_HPP
