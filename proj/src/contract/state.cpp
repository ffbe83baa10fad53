#include "edgechain/contract/state.hpp"

#include "edgechain/ledger/hash.hpp"

namespace edgechain::contract {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Register: return "Register";
    case Action::SubmitData: return "SubmitData";
    case Action::Report: return "Report";
    case Action::Distribute: return "Distribute";
    case Action::Migrate: return "Migrate";
    case Action::Rejected: return "Rejected";
    case Action::ApplyUpdate: return "ApplyUpdate";
  }
  return "Unknown";
}

void Allowlist::set(const Address& a, bool allow) {
  if (allow) {
    denied.erase(a);
    allowed.insert(a);
  } else {
    allowed.erase(a);
    denied.insert(a);
  }
}

ledger::Account WorldState::account(const Address& a) const {
  auto it = accounts.find(a);
  if (it != accounts.end()) return it->second;
  ledger::Account fresh;
  fresh.address = a;
  return fresh;
}

ledger::Account& WorldState::account_mut(const Address& a) {
  auto [it, inserted] = accounts.try_emplace(a);
  if (inserted) it->second.address = a;
  return it->second;
}

namespace {

void encode_contract(Encoder& enc, const ContractState& s) {
  enc.fixed(s.admin).u32(s.current_version).var(as_bytes(s.update_url)).u64(s.block_interval);
  enc.u8(s.initialized ? 1 : 0);
  enc.u64(s.devices.size());
  for (const auto& [addr, d] : s.devices) {
    enc.fixed(addr).u32(d.firmware_version).u64(d.registered_at).u64(d.window_tx_count).u64(d.total_gas_spent);
    enc.u8(d.flagged ? 1 : 0).u128(d.penalty_debt);
  }
  enc.u64(s.activity_log.size());
  for (const auto& e : s.activity_log) {
    enc.u64(e.height).fixed(e.device).u8(static_cast<std::uint8_t>(e.action)).u64(e.gas_used);
  }
  const auto& q = s.quota;
  enc.u64(q.window_blocks).u32(q.max_share_percent).u64(q.min_active_senders).u128(q.penalty_rate);
  enc.u32(q.reporter_share_percent);
  enc.u64(s.pending_reimbursements.size());
  for (const auto& [addr, amount] : s.pending_reimbursements) enc.fixed(addr).u128(amount);
  enc.u128(s.penalty_pool);
  enc.u64(s.epoch_length).u128(s.epoch_mint).u64(s.epochs_distributed).u64(s.last_distribution_height);
  enc.u128(s.total_penalties).u128(s.total_reimbursed);
}

}  // namespace

Digest256 state_digest(const ContractState& state) {
  Encoder enc;
  encode_contract(enc, state);
  return sha256(enc.bytes());
}

Digest256 world_digest(const WorldState& state) {
  Encoder enc;
  enc.u64(state.accounts.size());
  for (const auto& [addr, a] : state.accounts) {
    enc.fixed(addr).u128(a.balance).u64(a.nonce).u64(a.stake).u64(a.stake_age);
  }
  encode_contract(enc, state.contract);
  enc.u8(state.allowlist.allow_all ? 1 : 0);
  enc.u64(state.allowlist.allowed.size());
  for (const auto& a : state.allowlist.allowed) enc.fixed(a);
  enc.u64(state.allowlist.denied.size());
  for (const auto& a : state.allowlist.denied) enc.fixed(a);
  enc.u128(state.genesis_supply);
  return sha256(enc.bytes());
}

Amount circulating_supply(const WorldState& state) {
  Amount total = state.contract.penalty_pool;
  for (const auto& [_, a] : state.accounts) total += a.balance;
  for (const auto& [_, p] : state.contract.pending_reimbursements) total += p;
  return total;
}

Amount expected_supply(const WorldState& state, const Amount& block_reward, std::uint64_t height) {
  return state.genesis_supply + block_reward * height + state.contract.epoch_mint * state.contract.epochs_distributed;
}

}  // namespace edgechain::contract
