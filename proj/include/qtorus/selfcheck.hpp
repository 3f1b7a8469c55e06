#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace qtorus {

struct SelfCheckResult {
    std::vector<std::tuple<std::string, bool, std::string>> batteries;
    bool all_pass = true;
};

// Invariant suite: scalar field axioms, sigma automorphism laws, skew
// associativity, parallel-kernel equivalence, the delta/mode oracles,
// q-binomial recurrence, mutation detection, representation property and
// determinism. QTORUS_SELFCHECK_INJECT=1 injects a deliberate failure.
SelfCheckResult run_selfcheck(std::uint64_t seed);

}  // namespace qtorus
