#ifndef MOMENTKERNEL_TYPES_HPP
#define MOMENTKERNEL_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace momentkernel {

namespace bmp = boost::multiprecision;

/// Variable-precision binary float. Results of arithmetic keep the
/// precision of their operands; fresh values take the scope default.
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using Complex = std::complex<Real>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kDefaultPrecisionCeiling = 4096;

struct MomentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot be certified below the precision ceiling.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by iterative solvers that exhaust their sweep budget.
struct ConvergenceError : PrecisionError {
  using PrecisionError::PrecisionError;
};

}  // namespace momentkernel

#endif  // MOMENTKERNEL_TYPES_HPP
