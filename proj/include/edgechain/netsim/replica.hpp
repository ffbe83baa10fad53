#pragma once

#include <map>
#include <set>
#include <vector>

#include "edgechain/client/client.hpp"
#include "edgechain/consensus/config.hpp"
#include "edgechain/consensus/pos.hpp"
#include "edgechain/contract/block_exec.hpp"
#include "edgechain/ledger/chain.hpp"

namespace edgechain::netsim {

/// Shared, read-only inputs of every replica in one simulation.
struct ReplicaContext {
  const ledger::SignatureScheme* scheme = nullptr;
  consensus::ConsensusConfig consensus;
  contract::ChainParams params;
  ledger::ProofCheck proof_check;
  consensus::StakeSet genesis_stakes;
  std::uint64_t seed = 0;
  std::uint64_t max_block_txs = 100;
};

enum class ImportResult { Added, Known, MissingParent, Invalid };
enum class ProduceError { NotSelected, NoSolution };

/// A full node's view: every valid block it has seen, the post-state of
/// each, the preferred tip, and a FIFO mempool.
class Replica {
 public:
  Replica(Address self, const contract::WorldState& genesis_state, const ReplicaContext* ctx);

  const Address& address() const { return self_; }

  /// Admission against the best state adjusted for the sender's queued
  /// transactions, so consecutive nonces can wait in the pool together.
  Result<void, client::DropReason> admit(const ledger::Transaction& tx);

  /// The parent must already be known.
  ImportResult import(const ledger::Block& block);

  /// Seals a block on the best tip and imports it.
  Result<ledger::Block, ProduceError> produce(std::uint64_t tick, const ledger::Keypair& keys);

  bool knows(const Digest256& hash) const { return tree_.contains(hash); }
  const ledger::Block* block(const Digest256& hash) const;
  const std::vector<contract::Receipt>* receipts(const Digest256& hash) const;

  const Digest256& tip() const { return path_.back(); }
  std::uint64_t height() const { return path_.size() - 1; }
  const contract::WorldState& state() const { return tree_.at(tip()).state; }
  /// Block hashes of the best chain, indexed by height.
  const std::vector<Digest256>& path() const { return path_; }
  std::vector<ledger::Block> best_chain() const;

  std::uint64_t pending_nonce(const Address& sender) const;
  client::TxStatus status(const Digest256& tx_hash) const;
  std::size_t mempool_size() const { return pool_.size(); }
  bool in_mempool(const Digest256& tx_hash) const;
  std::uint64_t invalid_blocks() const { return invalid_blocks_; }

 private:
  struct Entry {
    ledger::Block block;
    std::uint64_t height = 0;
    contract::WorldState state;
    std::vector<contract::Receipt> receipts;
  };
  struct PoolTx {
    ledger::Transaction tx;
    Digest256 hash;
  };

  std::vector<ledger::Block> chain_to(const Digest256& hash) const;
  void set_best(const Digest256& hash);
  void prune_pool();

  Address self_;
  const ReplicaContext* ctx_;
  std::map<Digest256, Entry> tree_;
  std::map<Digest256, std::vector<std::pair<Digest256, std::size_t>>> tx_index_;
  std::vector<Digest256> path_;
  std::vector<PoolTx> pool_;
  std::uint64_t invalid_blocks_ = 0;
};

}  // namespace edgechain::netsim
