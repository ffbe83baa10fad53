#include "edgechain/contract/engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "edgechain/ledger/hash.hpp"

namespace edgechain::contract {

namespace {

constexpr std::uint64_t kMaxGas = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kMaxGas - b ? kMaxGas : a + b; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMaxGas / a) return kMaxGas;
  return a * b;
}

std::uint64_t window_floor(const ContractState& s, std::uint64_t height) {
  return height >= s.quota.window_blocks ? height - s.quota.window_blocks : 0;
}

/// SubmitData entries of `device` with height in (h - W, h].
std::uint64_t count_window(const ContractState& s, const Address& device, std::uint64_t height) {
  std::uint64_t floor = window_floor(s, height);
  std::uint64_t n = 0;
  for (auto it = s.activity_log.rbegin(); it != s.activity_log.rend() && it->height > floor; ++it) {
    if (it->height <= height && it->device == device && it->action == Action::SubmitData) ++n;
  }
  return n;
}

void append_log(ContractState& s, const ActivityEntry& entry) {
  s.activity_log.push_back(entry);
  auto it = s.devices.find(entry.device);
  if (it == s.devices.end()) return;
  it->second.total_gas_spent += entry.gas_used;
  if (entry.action == Action::SubmitData) {
    it->second.window_tx_count = count_window(s, entry.device, entry.height);
  }
}

std::uint64_t method_cost(const ledger::ContractCall& call, const GasSchedule& g) {
  switch (call.method_id) {
    case method::register_device: return g.register_device;
    case method::submit_data: return g.submit_data;
    case method::apply_update: return 0;
    case method::report_malicious: return g.report_malicious;
    case method::distribute: return g.distribute;
    default: return 0;
  }
}

Result<std::vector<Event>, RevertReason> no_events(Result<void, RevertReason> r) {
  if (!r) return r.error();
  return std::vector<Event>{};
}

Result<std::vector<Event>, RevertReason> dispatch_call(WorldState& world, const ledger::Transaction& tx,
                                                       const ledger::ContractCall& call, std::uint64_t height,
                                                       std::uint64_t gas) {
  auto& contract = world.contract;
  switch (call.method_id) {
    case method::register_device: {
      Decoder dec(call.args);
      auto version = dec.u32();
      if (!version || !dec.done()) return RevertReason::BadArguments;
      return no_events(register_device(contract, tx.sender, *version, height, gas));
    }
    case method::submit_data:
      if (!call.args.empty()) return RevertReason::BadArguments;
      return no_events(submit_data(contract, tx.sender, height, gas));
    case method::apply_update:
      if (!call.args.empty()) return RevertReason::BadArguments;
      return no_events(apply_update(contract, tx.sender, height, gas));
    case method::report_malicious: {
      Decoder dec(call.args);
      auto offender = dec.fixed<Address>();
      if (!offender || !dec.done()) return RevertReason::BadArguments;
      return report_malicious(world, tx.sender, *offender, height, gas);
    }
    case method::distribute:
      if (!call.args.empty()) return RevertReason::BadArguments;
      return distribute_resources(world, tx.sender, height, gas);
    default:
      return RevertReason::UnknownMethod;
  }
}

Result<std::vector<Event>, RevertReason> dispatch(WorldState& world, const ledger::Transaction& tx,
                                                  std::uint64_t height, std::uint64_t gas) {
  if (const auto* t = std::get_if<ledger::Transfer>(&tx.kind)) {
    world.account_mut(tx.sender).balance -= t->amount;
    world.account_mut(t->to).balance += t->amount;
    return std::vector<Event>{};
  }
  if (const auto* call = std::get_if<ledger::ContractCall>(&tx.kind)) {
    return dispatch_call(world, tx, *call, height, gas);
  }
  if (const auto* m = std::get_if<ledger::Migrate>(&tx.kind)) {
    auto params = decode_migrate_params(m->params);
    if (!params) return RevertReason::BadArguments;
    return no_events(migrate(world.contract, tx.sender, *params, height, gas));
  }
  const auto& p = std::get<ledger::PermissionUpdate>(tx.kind);
  if (tx.sender != world.contract.admin) return RevertReason::Unauthorized;
  if (p.target == world.contract.admin) return RevertReason::BadArguments;
  world.allowlist.set(p.target, p.allow);
  return std::vector<Event>{};
}

}  // namespace

Bytes encode_migrate_params(const MigrateParams& p) {
  return Encoder{}.u32(p.version).u64(p.block_interval).var(as_bytes(p.update_url)).bytes();
}

std::optional<MigrateParams> decode_migrate_params(ByteView raw) {
  Decoder dec(raw);
  auto version = dec.u32();
  auto interval = dec.u64();
  auto url = dec.var();
  if (!version || !interval || !url || !dec.done()) return std::nullopt;
  return MigrateParams{*version, std::string(url->begin(), url->end()), *interval};
}

std::uint64_t required_gas(const ledger::Transaction& tx, const ContractState& state, const GasSchedule& schedule) {
  std::uint64_t gas = saturating_add(schedule.base_tx, saturating_mul(schedule.per_payload_byte, tx.payload.size()));
  std::uint64_t op = 0;
  if (const auto* call = std::get_if<ledger::ContractCall>(&tx.kind)) {
    op = method_cost(*call, schedule);
  } else if (const auto* m = std::get_if<ledger::Migrate>(&tx.kind)) {
    op = schedule.migrate;
    // First successful initialisation pays the surcharge.
    if (!state.initialized && tx.sender == state.admin && decode_migrate_params(m->params)) {
      op = saturating_add(op, schedule.init_surcharge);
    }
  } else if (std::holds_alternative<ledger::PermissionUpdate>(tx.kind)) {
    op = schedule.permission_update;
  }
  return saturating_add(gas, op);
}

Result<void, RevertReason> migrate(ContractState& state, const Address& caller, const MigrateParams& params,
                                   std::uint64_t height, std::uint64_t gas) {
  if (caller != state.admin) return RevertReason::Unauthorized;
  if (state.initialized && params.version < state.current_version) return RevertReason::VersionRegression;
  state.current_version = params.version;
  state.update_url = params.update_url;
  state.block_interval = params.block_interval;
  state.initialized = true;
  append_log(state, {height, caller, Action::Migrate, gas});
  return outcome::success();
}

Result<void, RevertReason> register_device(ContractState& state, const Address& caller,
                                           std::uint32_t firmware_version, std::uint64_t height, std::uint64_t gas) {
  if (state.devices.contains(caller)) return RevertReason::AlreadyRegistered;
  DeviceRecord rec;
  rec.address = caller;
  rec.firmware_version = firmware_version;
  rec.registered_at = height;
  state.devices.emplace(caller, rec);
  append_log(state, {height, caller, Action::Register, gas});
  return outcome::success();
}

Result<void, RevertReason> submit_data(ContractState& state, const Address& caller, std::uint64_t height,
                                       std::uint64_t gas) {
  const auto* dev = state.device(caller);
  if (!dev) return RevertReason::NotRegistered;
  if (dev->firmware_version < state.current_version) {
    append_log(state, {height, caller, Action::Rejected, gas});
    return RevertReason::OutdatedVersion;
  }
  append_log(state, {height, caller, Action::SubmitData, gas});
  return outcome::success();
}

Result<void, RevertReason> apply_update(ContractState& state, const Address& caller, std::uint64_t height,
                                        std::uint64_t gas) {
  auto it = state.devices.find(caller);
  if (it == state.devices.end()) return RevertReason::NotRegistered;
  it->second.firmware_version = state.current_version;
  append_log(state, {height, caller, Action::ApplyUpdate, gas});
  return outcome::success();
}

Result<QuotaStatus, RevertReason> check_quota(const ContractState& state, const Address& device,
                                              std::uint64_t height) {
  if (!state.devices.contains(device)) return RevertReason::NotRegistered;
  std::map<Address, std::uint64_t> counts;
  std::uint64_t floor = window_floor(state, height);
  for (auto it = state.activity_log.rbegin(); it != state.activity_log.rend() && it->height > floor; ++it) {
    if (it->height <= height && it->action == Action::SubmitData && state.devices.contains(it->device)) {
      ++counts[it->device];
    }
  }
  QuotaStatus q;
  q.active_senders = counts.size();
  for (const auto& [_, n] : counts) q.window_total += n;
  if (auto it = counts.find(device); it != counts.end()) q.device_count = it->second;
  q.allowed = (static_cast<std::uint64_t>(state.quota.max_share_percent) * q.window_total + 99) / 100;
  if (q.active_senders < state.quota.min_active_senders) return q;
  if (q.device_count > q.allowed) {
    q.exceeded = true;
    q.excess = q.device_count - q.allowed;
  }
  return q;
}

Result<std::vector<Event>, RevertReason> report_malicious(WorldState& world, const Address& reporter,
                                                          const Address& offender, std::uint64_t height,
                                                          std::uint64_t gas) {
  auto& c = world.contract;
  if (reporter == offender) return RevertReason::SelfReport;
  if (!c.devices.contains(reporter) || !c.devices.contains(offender)) return RevertReason::NotRegistered;
  // A flagged device has already been penalised this epoch.
  if (c.devices.at(offender).flagged) return RevertReason::NoViolation;
  auto quota = check_quota(c, offender, height);
  if (!quota) return quota.error();
  if (!quota.value().exceeded) return RevertReason::NoViolation;

  Amount penalty = Amount(quota.value().excess) * c.quota.penalty_rate;
  auto& offender_account = world.account_mut(offender);
  Amount collected = std::min(penalty, offender_account.balance);
  offender_account.balance -= collected;

  auto& rec = c.devices.at(offender);
  rec.flagged = true;
  rec.penalty_debt += penalty - collected;

  // The reporter's share is carved out of the collected amount and held
  // until the next distribution.
  Amount share = collected * c.quota.reporter_share_percent / 100;
  c.penalty_pool += collected - share;
  if (share > 0) c.pending_reimbursements[reporter] += share;
  c.total_penalties += collected;

  append_log(c, {height, reporter, Action::Report, gas});
  return std::vector<Event>{PenaltyApplied{offender, collected}};
}

Result<std::vector<Event>, RevertReason> distribute_resources(WorldState& world, const Address& caller,
                                                              std::uint64_t height, std::uint64_t gas) {
  auto& c = world.contract;
  if (c.epoch_length == 0 || height == 0 || height % c.epoch_length != 0) return RevertReason::NotEpochBoundary;
  if (c.epochs_distributed > 0 && c.last_distribution_height == height) return RevertReason::NotEpochBoundary;

  std::vector<Event> events;
  for (const auto& [to, amount] : c.pending_reimbursements) {
    world.account_mut(to).balance += amount;
    c.total_reimbursed += amount;
    events.push_back(Reimbursed{to, amount});
  }
  c.pending_reimbursements.clear();

  c.penalty_pool += c.epoch_mint;
  ++c.epochs_distributed;
  c.last_distribution_height = height;

  std::vector<Address> eligible;
  for (const auto& [addr, rec] : c.devices) {
    if (!rec.flagged) eligible.push_back(addr);
  }
  if (!eligible.empty()) {
    Amount grant = c.penalty_pool / eligible.size();
    for (const auto& addr : eligible) {
      auto& rec = c.devices.at(addr);
      Amount withheld = std::min(rec.penalty_debt, grant);
      rec.penalty_debt -= withheld;
      Amount pay = grant - withheld;
      world.account_mut(addr).balance += pay;
      c.penalty_pool -= pay;
      if (pay > 0) events.push_back(Granted{addr, pay});
    }
  }
  for (auto& [_, rec] : c.devices) rec.flagged = false;

  append_log(c, {height, caller, Action::Distribute, gas});
  return events;
}

std::vector<ActivityEntry> get_activity(const ContractState& state, const Address& device) {
  std::vector<ActivityEntry> out;
  std::ranges::copy_if(state.activity_log, std::back_inserter(out),
                       [&](const ActivityEntry& e) { return e.device == device; });
  return out;
}

Receipt apply_transaction(WorldState& world, const ledger::Transaction& tx, const GasSchedule& schedule,
                          const ExecContext& ctx) {
  Amount escrow = Amount(tx.gas_limit) * tx.gas_price;
  {
    auto& sender = world.account_mut(tx.sender);
    if (sender.balance < tx.max_cost()) throw std::logic_error("apply_transaction: sender cannot cover escrow");
    sender.balance -= escrow;
    sender.nonce += 1;
  }

  Receipt receipt;
  receipt.tx_hash = ledger::tx_hash(tx);
  std::uint64_t gas = required_gas(tx, world.contract, schedule);

  if (gas > tx.gas_limit) {
    receipt.revert = RevertReason::OutOfGas;
    receipt.gas_used = tx.gas_limit;
    receipt.fee = escrow;
    world.account_mut(ctx.producer).balance += escrow;
    return receipt;
  }

  receipt.gas_used = gas;
  receipt.fee = Amount(gas) * tx.gas_price;
  auto outcome = dispatch(world, tx, ctx.height, gas);
  if (outcome) {
    receipt.events = std::move(outcome.value());
  } else {
    receipt.revert = outcome.error();
    if (outcome.error() == RevertReason::OutdatedVersion) {
      receipt.events.push_back(UpdateRequired{world.contract.update_url});
    }
  }
  world.account_mut(tx.sender).balance += escrow - receipt.fee;
  world.account_mut(ctx.producer).balance += receipt.fee;
  return receipt;
}

std::pair<WorldState, Receipt> execute(WorldState world, const ledger::Transaction& tx, const GasSchedule& schedule,
                                       const ExecContext& ctx) {
  auto receipt = apply_transaction(world, tx, schedule, ctx);
  return {std::move(world), std::move(receipt)};
}

}  // namespace edgechain::contract
