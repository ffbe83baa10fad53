#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "edgechain/contract/engine.hpp"
#include "edgechain/ledger/block.hpp"
#include "edgechain/ledger/signature.hpp"
#include "edgechain/ledger/verify.hpp"

namespace edgechain::contract {

struct GenesisAllocation {
  Address address;
  Amount balance = 0;
  std::uint64_t stake = 0;
  std::uint64_t stake_age = 0;
};

struct ContractSetup {
  Address admin;
  QuotaConfig quota;
  std::uint64_t epoch_length = 20;
  Amount epoch_mint = 0;
};

WorldState genesis_state(std::span<const GenesisAllocation> allocations, const ContractSetup& setup,
                         Allowlist allowlist);

struct ChainParams {
  GasSchedule schedule;
  Amount block_reward = 0;
};

enum class BlockExecError { DisallowedSender, InvalidTransaction };

struct BlockExecFailure {
  BlockExecError code;
  std::size_t tx_index = 0;
  std::optional<ledger::TxError> tx_error;
};

struct BlockOutcome {
  WorldState state;
  std::vector<Receipt> receipts;
};

/// Broken money-conservation identity. Always a bug; never recoverable.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// State transition for one block on top of `parent`: every transaction is
/// admission-checked and executed in order, the producer is paid the block
/// reward, stake ages advance, and the supply identity is asserted.
/// Signatures are checked only when a scheme is supplied.
Result<BlockOutcome, BlockExecFailure> apply_block(const WorldState& parent, const ledger::Block& block,
                                                   const ChainParams& params,
                                                   const ledger::SignatureScheme* scheme = nullptr);

}  // namespace edgechain::contract
