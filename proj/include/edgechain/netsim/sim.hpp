#pragma once

#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "edgechain/client/client.hpp"
#include "edgechain/netsim/config.hpp"
#include "edgechain/netsim/replica.hpp"

namespace edgechain::netsim {

enum class EventKind { SubmitTx, ProduceBlock, DeliverBlock, DeliverTx, BeginDownload, FinishDownload, EpochTick };

/// What a SubmitTx event asks a client node to do.
enum class ClientAction { CustomerStep, ReportStep, Migrate, Permission };

struct Event {
  std::uint64_t fire_at = 0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::SubmitTx;
  std::size_t node = 0;
  std::size_t from = 0;
  ClientAction action = ClientAction::CustomerStep;
  /// Index into the admin's migration or permission list.
  std::size_t step = 0;
  Digest256 block_hash;
  std::optional<ledger::Transaction> tx;
};

/// Orders a min-heap by (fire_at, sequence).
struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.fire_at, a.sequence) > std::tie(b.fire_at, b.sequence);
  }
};

/// Off-chain observations, merged with the chain-derived rows at export.
struct SimRecord {
  std::uint64_t tick = 0;
  std::uint64_t height = 0;
  std::size_t node = 0;
  std::string event;
  std::optional<Digest256> tx_hash;
  Amount balance_after = 0;
  std::string detail;
};

struct Tracked {
  Digest256 hash;
  std::uint64_t nonce = 0;
};

struct CustomerState {
  bool started = false;
  std::uint64_t submits = 0;
  std::uint64_t reports = 0;
  std::uint32_t firmware_version = 0;
  bool downloading = false;
  /// UpdateRequired receipts for nonces below this predate the last update.
  std::uint64_t updated_from_nonce = 0;
  std::vector<Tracked> outstanding;
  std::optional<Tracked> open_report;
};

struct NodeRuntime {
  NodeSpec spec;
  client::Account account;
  std::size_t bound = 0;
  std::unique_ptr<Replica> replica;
  std::unique_ptr<client::Endpoint> endpoint;
  std::optional<client::ClientHandle> handle;
  CustomerState customer;
  std::uint64_t drops = 0;
};

struct RunStats {
  std::uint64_t produced = 0;
  std::uint64_t not_selected = 0;
  std::uint64_t messages_lost = 0;
  std::uint64_t checkpoints = 0;
};

class Sim {
 public:
  Sim(SimConfig config, std::uint64_t seed);
  Sim(const Sim&) = delete;
  Sim& operator=(const Sim&) = delete;

  const SimConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t now() const { return now_; }
  const ledger::SignatureScheme& scheme() const { return scheme_; }
  const ReplicaContext& context() const { return ctx_; }
  const contract::WorldState& genesis() const { return genesis_; }

  std::span<const NodeRuntime> nodes() const { return nodes_; }
  NodeRuntime& node(std::size_t i) { return nodes_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<std::size_t> index_of(const Address& addr) const;
  std::vector<std::size_t> edge_servers() const;
  /// The edge server whose chain is exported.
  const Replica& observer() const;

  const std::vector<SimRecord>& records() const { return records_; }
  const RunStats& stats() const { return stats_; }
  std::uint64_t drop_count() const;

  /// Pops and handles one event. False once the queue is empty.
  bool step();
  std::optional<std::uint64_t> next_fire() const;

  std::uint64_t latency(std::size_t from, std::size_t to) const;
  bool reachable(std::size_t from, std::size_t to, std::uint64_t at) const;

  void schedule(Event e);

  /// Called by the endpoint when a client submission is admitted.
  void gossip_tx(std::size_t from, const ledger::Transaction& tx);

 private:
  void on_client(const Event& e);
  void on_produce(const Event& e);
  void on_deliver_block(const Event& e);
  void on_deliver_tx(const Event& e);
  void on_begin_download(const Event& e);
  void on_finish_download(const Event& e);
  void on_epoch_tick(const Event& e);

  void customer_step(std::size_t i);
  void report_step(std::size_t i);
  void poll_receipts(std::size_t i);
  std::optional<Digest256> client_submit(std::size_t i, ledger::TxKind kind, Bytes payload,
                                         std::uint64_t gas_limit, std::uint64_t gas_price);
  void record(std::size_t node, std::string event, std::optional<Digest256> tx_hash, std::string detail);
  std::uint64_t interval_at(const Replica& r) const;

  SimConfig config_;
  std::uint64_t seed_;
  ledger::MockSignatureScheme scheme_;
  ReplicaContext ctx_;
  contract::WorldState genesis_;
  std::vector<NodeRuntime> nodes_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t now_ = 0;
  std::uint64_t next_sequence_ = 0;
  std::vector<SimRecord> records_;
  RunStats stats_;
};

/// Builds genesis from the allocations, queues the admin's deployment at
/// tick 0 and schedules every periodic node event.
Result<std::unique_ptr<Sim>, InvalidScenario> init_sim(const SimConfig& config, std::uint64_t seed);

struct StopAt {
  std::optional<std::uint64_t> tick = std::nullopt;
  std::optional<std::uint64_t> height = std::nullopt;
};

/// Processes events in (fire_at, sequence) order until the observer
/// reaches the height, the next event lies past the tick, or the queue
/// drains. With no bound it runs to the scenario's max_blocks.
void run_until(Sim& sim, StopAt stop);

/// Tick bound that a healthy run to `blocks` never reaches.
std::uint64_t tick_budget(const SimConfig& config, std::uint64_t blocks);

}  // namespace edgechain::netsim
