#pragma once

#include <cstdint>
#include <string>

namespace symcub {

struct SelftestConfig {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out = "-";
};

/// Seeded oracle-equivalence suites: fast symmetric paths against the full
/// linear-system reference paths, plus kernel symmetry certification. Writes
/// CSV rows (suite,cases,max_rel_diff,status); returns true when every suite
/// passes.
bool run_selftest(const SelftestConfig& config);

}  // namespace symcub
