#ifndef MOMENTKERNEL_TOOLS_CHECK_SUITE_HPP
#define MOMENTKERNEL_TOOLS_CHECK_SUITE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace momentkernel {

struct CheckOutcome {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Invariant suite on the builtin sources. Writes its artifacts and
/// check_summary.json into `dir`.
std::vector<CheckOutcome> run_check_suite(const std::filesystem::path& dir, unsigned bits, unsigned ceiling,
                                          std::uint64_t seed);

}  // namespace momentkernel

#endif  // MOMENTKERNEL_TOOLS_CHECK_SUITE_HPP
