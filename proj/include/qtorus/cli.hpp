#pragma once

#include "qtorus/config.hpp"

namespace qtorus {

// Exit codes: 0 success, 1 verification failure, 2 configuration error.
int cmd_verify(const RunConfig& rc);
int cmd_print_generators(const RunConfig& rc);
int cmd_selfcheck(std::uint64_t seed, bool verbose);

// Builds the generator set for a resolved configuration (family dispatch).
GeneratorSet build_generators(const ResolvedConfig& rcfg);

}  // namespace qtorus
