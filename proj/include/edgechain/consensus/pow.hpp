#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "edgechain/ledger/block.hpp"
#include "edgechain/result.hpp"

namespace edgechain::consensus {

/// Wide enough for the 2^256 threshold at difficulty 1.
using Uint512 = boost::multiprecision::uint512_t;

enum class PowError { DifficultyZero, NoSolution };

/// floor(2^256 / difficulty).
Result<Uint512, PowError> pow_target(std::uint64_t difficulty);

/// The digest read as a big-endian unsigned integer.
Uint512 digest_value(const Digest256& d);

struct MinedSeal {
  std::uint64_t nonce = 0;
  Digest256 digest;
};

/// Smallest nonce in [0, max_iterations) whose sealed header digest is
/// below the target. The template's consensus proof is ignored.
Result<MinedSeal, PowError> pow_mine(ledger::BlockHeader header, std::uint64_t difficulty,
                                     std::uint64_t max_iterations);

/// False for PoS-sealed headers and for difficulty 0.
bool pow_verify(const ledger::BlockHeader& header, std::uint64_t difficulty);

}  // namespace edgechain::consensus
