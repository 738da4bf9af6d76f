#ifndef MOMENTKERNEL_TESTS_ORACLE_VALUES_HPP
#define MOMENTKERNEL_TESTS_ORACLE_VALUES_HPP

// Smallest Hankel eigenvalues computed independently with mpmath (eigsy) at
// 1024-bit working precision from the closed-form moments.

#include <array>

namespace oracle {

// gaussian, R = 1, N = 0..20
inline constexpr std::array<const char*, 21> kGaussianLambda{
    "1.0",
    "1.0",
    "0.585786437626905",
    "0.384226894136092",
    "0.311369513861836",
    "0.195204108537472",
    "0.158381597937538",
    "0.108440374695441",
    "0.0852584359295009",
    "0.0628250693394899",
    "0.048758552086927",
    "0.037524126892313",
    "0.0292130620039332",
    "0.0230374392164501",
    "0.0181280403411059",
    "0.0145080503466759",
    "0.0115625735008242",
    "0.00934945854186655",
    "0.00754238110496684",
    "0.00614978049342801",
    "0.00501448443130746"};

// lognormal(1), R = 1, N = 0..12
inline constexpr std::array<const char*, 13> kLognormalLambda{
    "1.0",
    "0.599630097189102",
    "0.494967238860776",
    "0.460780124120377",
    "0.448745506855997",
    "0.444389748696975",
    "0.442796947203028",
    "0.442212282131598",
    "0.441997370760747",
    "0.441918332943691",
    "0.441889259756946",
    "0.441878564762465",
    "0.4418746303525"};

// lognormal(1) at R = 1/2 and R = 2, N = 12 (8 digits)
inline constexpr const char* kLognormalLambdaHalf12 = "0.48868714";
inline constexpr const char* kLognormalLambdaTwo12 = "0.29132171";

// gaussian x lognormal(1), R = 1, N = 0..7
inline constexpr std::array<const char*, 8> kGaussianLognormalLambda{
    "1.0",
    "0.59963009718910230928",
    "0.38601047759011260414",
    "0.28534845623039439589",
    "0.20771678184073869177",
    "0.12977479851892492725",
    "0.10162739380462068281",
    "0.068934868919975270699"};

// Positive floor for the lognormal(1) marginal eta_N^2 below N = 7: every
// eta_N exceeds this value (eta_12 = 0.44187...).
inline constexpr const char* kLognormalFloor = "0.44";

}  // namespace oracle

#endif  // MOMENTKERNEL_TESTS_ORACLE_VALUES_HPP
