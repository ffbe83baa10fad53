#include "edgechain/netsim/sim.hpp"

#include <algorithm>

#include "edgechain/consensus/proof.hpp"

namespace edgechain::netsim {

namespace {

/// A client's view of its bound edge server; admitted submissions are
/// gossiped to the other servers.
class ReplicaEndpoint final : public client::Endpoint {
 public:
  ReplicaEndpoint(Sim& sim, std::size_t server) : sim_(sim), server_(server) {}

  Result<void, client::DropReason> submit(const ledger::Transaction& tx) override {
    auto admitted = replica().admit(tx);
    if (admitted) sim_.gossip_tx(server_, tx);
    return admitted;
  }
  const contract::WorldState& state() const override { return replica().state(); }
  std::uint64_t height() const override { return replica().height(); }
  std::uint64_t pending_nonce(const Address& sender) const override { return replica().pending_nonce(sender); }
  client::TxStatus status(const Digest256& tx_hash) const override { return replica().status(tx_hash); }

 private:
  Replica& replica() const { return *sim_.node(server_).replica; }

  Sim& sim_;
  std::size_t server_;
};

Bytes payload_for(std::uint64_t counter, std::uint64_t size) {
  Bytes out(size);
  for (std::uint64_t i = 0; i < size; ++i) out[i] = static_cast<std::uint8_t>(counter + i);
  return out;
}

constexpr std::size_t deployment_step = static_cast<std::size_t>(-1);

}  // namespace

Sim::Sim(SimConfig config, std::uint64_t seed) : config_(std::move(config)), seed_(seed) {
  ctx_.scheme = &scheme_;
  ctx_.consensus = config_.consensus;
  ctx_.params = {config_.gas, config_.consensus.block_reward};
  ctx_.seed = seed_;
  ctx_.max_block_txs = config_.max_block_txs;

  std::vector<contract::GenesisAllocation> alloc;
  contract::ContractSetup setup;
  contract::Allowlist allow;
  allow.allow_all = config_.allow_all;
  for (const auto& spec : config_.nodes) {
    NodeRuntime n;
    n.spec = spec;
    n.account = client::create_account(scheme_, as_bytes(spec.name)).value();
    const auto& addr = n.account.address;
    alloc.push_back({addr, spec.balance, spec.stake, 0});
    if (spec.kind == NodeKind::EdgeServer && spec.mining && spec.stake > 0) {
      ctx_.genesis_stakes.push_back({addr, spec.stake, 0});
    }
    if (spec.kind == NodeKind::Admin) setup.admin = addr;
    if (spec.kind == NodeKind::EdgeServer || spec.kind == NodeKind::UpdateRepository) allow.allowed.insert(addr);
    n.customer.firmware_version = spec.customer.firmware_version.value_or(config_.contract.version);
    nodes_.push_back(std::move(n));
  }
  for (const auto& entry : config_.allowlist) allow.allowed.insert(*resolve_address(config_, entry));
  setup.quota = config_.contract.quota;
  setup.epoch_length = config_.contract.epoch_length;
  setup.epoch_mint = config_.contract.epoch_mint;
  genesis_ = contract::genesis_state(alloc, setup, std::move(allow));
  ctx_.proof_check = consensus::make_proof_check(config_.consensus, ctx_.genesis_stakes, seed_, scheme_);

  auto servers = edge_servers();
  for (auto i : servers) nodes_[i].replica = std::make_unique<Replica>(nodes_[i].account.address, genesis_, &ctx_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& n = nodes_[i];
    if (n.spec.kind == NodeKind::EdgeServer || servers.empty()) continue;
    n.bound = n.spec.bound_to ? *index_of(*n.spec.bound_to) : servers.front();
    n.endpoint = std::make_unique<ReplicaEndpoint>(*this, n.bound);
    n.handle = client::bind(*n.endpoint, scheme_, n.account);
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& spec = nodes_[i].spec;
    Event e;
    e.node = i;
    switch (spec.kind) {
      case NodeKind::Admin:
        if (servers.empty()) break;
        e.action = ClientAction::Migrate;
        e.step = deployment_step;
        schedule(e);
        for (std::size_t s = 0; s < spec.migrations.size(); ++s) {
          e.fire_at = spec.migrations[s].tick;
          e.step = s;
          schedule(e);
        }
        e.action = ClientAction::Permission;
        for (std::size_t s = 0; s < spec.permission_updates.size(); ++s) {
          e.fire_at = spec.permission_updates[s].tick;
          e.step = s;
          schedule(e);
        }
        break;
      case NodeKind::Customer:
        e.fire_at = spec.customer.start_tick;
        schedule(e);
        if (spec.customer.report) {
          e.action = ClientAction::ReportStep;
          e.fire_at = spec.customer.start_tick + spec.customer.report->period;
          schedule(e);
        }
        break;
      case NodeKind::EdgeServer:
        if (!spec.mining) break;
        e.kind = EventKind::ProduceBlock;
        e.fire_at = config_.consensus.target_block_interval;
        schedule(e);
        break;
      case NodeKind::UpdateRepository: break;
    }
  }
  if (!servers.empty()) {
    Event tick;
    tick.kind = EventKind::EpochTick;
    tick.node = servers.front();
    tick.fire_at = config_.contract.epoch_length * config_.contract.block_interval;
    schedule(tick);
  }
}

std::optional<std::size_t> Sim::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].spec.name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Sim::index_of(const Address& addr) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].account.address == addr) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Sim::edge_servers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].spec.kind == NodeKind::EdgeServer) out.push_back(i);
  }
  return out;
}

const Replica& Sim::observer() const { return *nodes_.at(edge_servers().at(0)).replica; }

std::uint64_t Sim::drop_count() const {
  std::uint64_t total = 0;
  for (const auto& n : nodes_) total += n.drops;
  return total;
}

void Sim::schedule(Event e) {
  e.sequence = next_sequence_++;
  queue_.push(std::move(e));
}

std::optional<std::uint64_t> Sim::next_fire() const {
  if (queue_.empty()) return std::nullopt;
  return queue_.top().fire_at;
}

std::uint64_t Sim::latency(std::size_t from, std::size_t to) const {
  const auto& a = nodes_[from].spec.name;
  const auto& b = nodes_[to].spec.name;
  for (const auto& l : config_.latency.links) {
    if ((l.from == a && l.to == b) || (l.from == b && l.to == a)) return l.ticks;
  }
  return config_.latency.default_ticks;
}

bool Sim::reachable(std::size_t from, std::size_t to, std::uint64_t at) const {
  auto group_of = [](const Partition& p, const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      if (std::ranges::find(p.groups[g], name) != p.groups[g].end()) return g;
    }
    return std::nullopt;
  };
  for (const auto& p : config_.latency.partitions) {
    if (at < p.start || at >= p.end) continue;
    auto ga = group_of(p, nodes_[from].spec.name);
    auto gb = group_of(p, nodes_[to].spec.name);
    if (ga && gb && *ga != *gb) return false;
  }
  return true;
}

std::uint64_t Sim::interval_at(const Replica& r) const {
  const auto& c = r.state().contract;
  return c.initialized && c.block_interval > 0 ? c.block_interval : config_.consensus.target_block_interval;
}

bool Sim::step() {
  if (queue_.empty()) return false;
  Event e = queue_.top();
  queue_.pop();
  now_ = e.fire_at;
  switch (e.kind) {
    case EventKind::SubmitTx: on_client(e); break;
    case EventKind::ProduceBlock: on_produce(e); break;
    case EventKind::DeliverBlock: on_deliver_block(e); break;
    case EventKind::DeliverTx: on_deliver_tx(e); break;
    case EventKind::BeginDownload: on_begin_download(e); break;
    case EventKind::FinishDownload: on_finish_download(e); break;
    case EventKind::EpochTick: on_epoch_tick(e); break;
  }
  return true;
}

void Sim::record(std::size_t node, std::string event, std::optional<Digest256> tx_hash, std::string detail) {
  const auto& n = nodes_[node];
  const Replica& view = n.replica ? *n.replica : *nodes_[n.bound].replica;
  records_.push_back({now_, view.height(), node, std::move(event), tx_hash,
                      view.state().account(n.account.address).balance, std::move(detail)});
}

std::optional<Digest256> Sim::client_submit(std::size_t i, ledger::TxKind kind, Bytes payload,
                                             std::uint64_t gas_limit, std::uint64_t gas_price) {
  auto& n = nodes_[i];
  auto submitted = client::submit(*n.handle, std::move(kind), std::move(payload), gas_limit, gas_price);
  if (!submitted) {
    ++n.drops;
    record(i, "Drop", std::nullopt, std::string(client::to_string(submitted.error())));
    return std::nullopt;
  }
  n.customer.outstanding.push_back({submitted.value(), n.handle->nonce_cache - 1});
  return submitted.value();
}

void Sim::gossip_tx(std::size_t from, const ledger::Transaction& tx) {
  for (auto j : edge_servers()) {
    if (j == from) continue;
    if (!reachable(from, j, now_)) {
      ++stats_.messages_lost;
      continue;
    }
    Event e;
    e.kind = EventKind::DeliverTx;
    e.fire_at = now_ + latency(from, j);
    e.node = j;
    e.from = from;
    e.tx = tx;
    schedule(std::move(e));
  }
}

void Sim::on_client(const Event& e) {
  auto& n = nodes_[e.node];
  switch (e.action) {
    case ClientAction::CustomerStep: customer_step(e.node); return;
    case ClientAction::ReportStep: report_step(e.node); return;
    case ClientAction::Migrate: {
      contract::MigrateParams params;
      if (e.step == deployment_step) {
        params = {config_.contract.version, config_.contract.update_url, config_.contract.block_interval};
      } else {
        const auto& m = n.spec.migrations[e.step];
        params = {m.version, m.update_url, m.block_interval};
      }
      ledger::Transaction draft;
      draft.sender = n.account.address;
      draft.kind = ledger::Migrate{contract::encode_migrate_params(params)};
      // Sized as if first, so a deployment still in flight cannot starve it.
      auto view = n.endpoint->state().contract;
      view.initialized = false;
      client_submit(e.node, draft.kind, {}, contract::required_gas(draft, view, config_.gas), 1);
      return;
    }
    case ClientAction::Permission: {
      const auto& p = n.spec.permission_updates[e.step];
      ledger::Transaction draft;
      draft.sender = n.account.address;
      draft.kind = ledger::PermissionUpdate{*resolve_address(config_, p.target), p.allow};
      client_submit(e.node, draft.kind, {}, contract::required_gas(draft, n.endpoint->state().contract, config_.gas),
                    1);
      return;
    }
  }
}

void Sim::poll_receipts(std::size_t i) {
  auto& n = nodes_[i];
  auto& c = n.customer;
  const auto confirmed = n.endpoint->state().account(n.account.address).nonce;
  std::optional<std::string> update_url;
  std::erase_if(c.outstanding, [&](const Tracked& t) {
    auto status = client::get_receipt(*n.handle, t.hash);
    if (auto* r = std::get_if<contract::Receipt>(&status)) {
      for (const auto& ev : r->events) {
        if (auto* u = std::get_if<contract::UpdateRequired>(&ev); u && t.nonce >= c.updated_from_nonce) {
          update_url = u->url;
        }
      }
      return true;
    }
    return std::holds_alternative<client::Unknown>(status) && t.nonce < confirmed;
  });
  if (update_url && !c.downloading) {
    c.downloading = true;
    auto repo = std::ranges::find_if(nodes_, [](const NodeRuntime& x) {
      return x.spec.kind == NodeKind::UpdateRepository;
    });
    std::size_t server = repo != nodes_.end() ? static_cast<std::size_t>(repo - nodes_.begin())
                                              : *index_of(n.endpoint->state().contract.admin);
    record(i, "BeginDownload", std::nullopt, *update_url);
    Event e;
    e.kind = EventKind::BeginDownload;
    e.fire_at = now_ + latency(i, server);
    e.node = server;
    e.from = i;
    schedule(std::move(e));
  }
}

void Sim::customer_step(std::size_t i) {
  auto& n = nodes_[i];
  auto& c = n.customer;
  const auto& b = n.spec.customer;
  poll_receipts(i);
  if (!c.started) {
    c.started = true;
    if (!n.endpoint->state().contract.device(n.account.address)) {
      client_submit(i, ledger::ContractCall{contract::method::register_device, Encoder{}.u32(c.firmware_version).bytes()},
                    {}, b.gas_limit, b.gas_price);
    }
  }
  bool quota_left = b.max_submits == 0 || c.submits < b.max_submits;
  if (!c.downloading && quota_left) {
    client_submit(i, ledger::ContractCall{contract::method::submit_data, {}}, payload_for(c.submits, b.payload_bytes),
                  b.gas_limit, b.gas_price);
    ++c.submits;
    quota_left = b.max_submits == 0 || c.submits < b.max_submits;
  }
  if (quota_left || c.downloading || !c.outstanding.empty()) {
    Event e;
    e.fire_at = now_ + b.submit_period;
    e.node = i;
    e.action = ClientAction::CustomerStep;
    schedule(std::move(e));
  }
}

void Sim::report_step(std::size_t i) {
  auto& n = nodes_[i];
  auto& c = n.customer;
  const auto& r = *n.spec.customer.report;
  if (r.max_reports != 0 && c.reports >= r.max_reports) return;

  if (c.open_report) {
    auto status = client::get_receipt(*n.handle, c.open_report->hash);
    bool settled = std::holds_alternative<contract::Receipt>(status) ||
                   (std::holds_alternative<client::Unknown>(status) &&
                    c.open_report->nonce < n.endpoint->state().account(n.account.address).nonce);
    if (settled) c.open_report.reset();
  }
  if (!c.open_report) {
    auto offender = *resolve_address(config_, r.offender);
    auto quota = client::query(*n.handle, client::Quota{offender});
    auto device = client::query(*n.handle, client::Device{offender});
    if (quota && device && std::get<contract::QuotaStatus>(quota.value()).exceeded &&
        !std::get<contract::DeviceRecord>(device.value()).flagged) {
      auto hash = client_submit(i, ledger::ContractCall{contract::method::report_malicious, Encoder{}.fixed(offender).bytes()},
                                {}, n.spec.customer.gas_limit, n.spec.customer.gas_price);
      if (hash) {
        c.open_report = n.customer.outstanding.back();
        n.customer.outstanding.pop_back();
        ++c.reports;
      }
    }
  }
  Event e;
  e.fire_at = now_ + r.period;
  e.node = i;
  e.action = ClientAction::ReportStep;
  schedule(std::move(e));
}

void Sim::on_produce(const Event& e) {
  auto& n = nodes_[e.node];
  auto produced = n.replica->produce(now_, n.account.keys);
  if (produced) {
    ++stats_.produced;
    auto hash = ledger::hash_block(produced.value().header);
    for (auto j : edge_servers()) {
      if (j == e.node) continue;
      if (!reachable(e.node, j, now_)) {
        ++stats_.messages_lost;
        continue;
      }
      Event d;
      d.kind = EventKind::DeliverBlock;
      d.fire_at = now_ + latency(e.node, j);
      d.node = j;
      d.from = e.node;
      d.block_hash = hash;
      schedule(std::move(d));
    }
  } else {
    ++stats_.not_selected;
  }
  Event next = e;
  next.fire_at = now_ + interval_at(*n.replica);
  schedule(std::move(next));
}

void Sim::on_deliver_block(const Event& e) {
  auto& target = *nodes_[e.node].replica;
  const auto& source = *nodes_[e.from].replica;
  if (target.knows(e.block_hash)) return;
  // Pull unknown ancestors from the sender before importing.
  std::vector<const ledger::Block*> missing;
  for (auto hash = e.block_hash; !target.knows(hash);) {
    const auto* b = source.block(hash);
    if (!b) return;
    missing.push_back(b);
    hash = b->header.prev_hash;
  }
  for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
    if (target.import(**it) != ImportResult::Added) return;
  }
}

void Sim::on_deliver_tx(const Event& e) { (void)nodes_[e.node].replica->admit(*e.tx); }

void Sim::on_begin_download(const Event& e) {
  Event f;
  f.kind = EventKind::FinishDownload;
  f.fire_at = now_ + latency(e.node, e.from);
  f.node = e.from;
  f.from = e.node;
  schedule(std::move(f));
}

void Sim::on_finish_download(const Event& e) {
  auto& n = nodes_[e.node];
  auto& c = n.customer;
  const auto& contract = n.endpoint->state().contract;
  c.firmware_version = contract.current_version;
  record(e.node, "FinishDownload", std::nullopt, contract.update_url);
  c.updated_from_nonce = std::max(n.handle->nonce_cache, n.endpoint->pending_nonce(n.account.address));
  client_submit(e.node, ledger::ContractCall{contract::method::apply_update, {}}, {}, n.spec.customer.gas_limit,
                n.spec.customer.gas_price);
  c.downloading = false;
}

void Sim::on_epoch_tick(const Event& e) {
  for (auto j : edge_servers()) {
    const auto& r = *nodes_[j].replica;
    auto have = contract::circulating_supply(r.state());
    auto want = contract::expected_supply(r.state(), config_.consensus.block_reward, r.height());
    if (have != want) {
      throw contract::InvariantViolation("supply drift at node " + nodes_[j].spec.name + " height " +
                                         std::to_string(r.height()));
    }
  }
  ++stats_.checkpoints;
  Event next = e;
  next.fire_at = now_ + config_.contract.epoch_length * interval_at(observer());
  schedule(std::move(next));
}

Result<std::unique_ptr<Sim>, InvalidScenario> init_sim(const SimConfig& config, std::uint64_t seed) {
  if (auto bad = check_config(config)) return *bad;
  return std::make_unique<Sim>(config, seed);
}

std::uint64_t tick_budget(const SimConfig& config, std::uint64_t blocks) {
  std::uint64_t interval = std::max(config.contract.block_interval, config.consensus.target_block_interval);
  for (const auto& n : config.nodes) {
    for (const auto& m : n.migrations) interval = std::max(interval, m.block_interval);
  }
  return (blocks + 2) * interval * 4 + 100;
}

void run_until(Sim& sim, StopAt stop) {
  auto height = stop.height;
  if (!height && !stop.tick) height = sim.config().run.max_blocks;
  const auto tick = stop.tick.value_or(tick_budget(sim.config(), height.value_or(0)));
  if (sim.edge_servers().empty()) return;
  for (;;) {
    if (height && sim.observer().height() >= *height) return;
    auto next = sim.next_fire();
    if (!next || *next > tick) return;
    sim.step();
  }
}

}  // namespace edgechain::netsim
