#include "edgechain/contract/block_exec.hpp"

#include <string>

namespace edgechain::contract {

WorldState genesis_state(std::span<const GenesisAllocation> allocations, const ContractSetup& setup,
                         Allowlist allowlist) {
  WorldState ws;
  for (const auto& a : allocations) {
    auto& acct = ws.account_mut(a.address);
    acct.balance += a.balance;
    acct.stake = a.stake;
    acct.stake_age = a.stake_age;
    ws.genesis_supply += a.balance;
  }
  ws.contract.admin = setup.admin;
  ws.contract.quota = setup.quota;
  ws.contract.epoch_length = setup.epoch_length;
  ws.contract.epoch_mint = setup.epoch_mint;
  allowlist.set(setup.admin, true);
  ws.allowlist = std::move(allowlist);
  return ws;
}

Result<BlockOutcome, BlockExecFailure> apply_block(const WorldState& parent, const ledger::Block& block,
                                                   const ChainParams& params, const ledger::SignatureScheme* scheme) {
  BlockOutcome out{parent, {}};
  auto& state = out.state;
  const auto& header = block.header;
  ExecContext ctx{header.height, header.producer};

  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const auto& tx = block.transactions[i];
    if (!state.allowlist.permits(tx.sender)) return BlockExecFailure{BlockExecError::DisallowedSender, i, {}};
    auto account = state.account(tx.sender);
    auto verified = scheme ? ledger::verify_transaction(tx, account, params.schedule, *scheme)
                           : ledger::verify_unsigned(tx, account, params.schedule);
    if (!verified) return BlockExecFailure{BlockExecError::InvalidTransaction, i, verified.error()};
    out.receipts.push_back(apply_transaction(state, tx, params.schedule, ctx));
  }

  state.account_mut(header.producer).balance += params.block_reward;
  for (auto& [_, acct] : state.accounts) {
    if (acct.stake > 0) ++acct.stake_age;
  }
  state.account_mut(header.producer).stake_age = 0;

  auto have = circulating_supply(state);
  auto want = expected_supply(state, params.block_reward, header.height);
  if (have != want) {
    throw InvariantViolation("conservation breached at height " + std::to_string(header.height) + ": supply " +
                             amount_to_string(have) + " != expected " + amount_to_string(want));
  }
  return out;
}

}  // namespace edgechain::contract
