#include "edgechain/netsim/replica.hpp"

#include <algorithm>
#include <limits>

#include "edgechain/consensus/fork_choice.hpp"
#include "edgechain/consensus/pow.hpp"
#include "edgechain/consensus/proof.hpp"

namespace edgechain::netsim {

Replica::Replica(Address self, const contract::WorldState& genesis_state, const ReplicaContext* ctx)
    : self_(self), ctx_(ctx) {
  auto genesis = ledger::genesis_block();
  auto hash = ledger::hash_block(genesis.header);
  tree_.emplace(hash, Entry{genesis, 0, genesis_state, {}});
  path_.push_back(hash);
}

const ledger::Block* Replica::block(const Digest256& hash) const {
  auto it = tree_.find(hash);
  return it == tree_.end() ? nullptr : &it->second.block;
}

const std::vector<contract::Receipt>* Replica::receipts(const Digest256& hash) const {
  auto it = tree_.find(hash);
  return it == tree_.end() ? nullptr : &it->second.receipts;
}

std::vector<ledger::Block> Replica::chain_to(const Digest256& hash) const {
  std::vector<ledger::Block> out;
  const Entry* e = &tree_.at(hash);
  out.resize(e->height + 1);
  for (;;) {
    out[e->height] = e->block;
    if (e->height == 0) break;
    e = &tree_.at(e->block.header.prev_hash);
  }
  return out;
}

std::vector<ledger::Block> Replica::best_chain() const { return chain_to(tip()); }

std::uint64_t Replica::pending_nonce(const Address& sender) const {
  auto nonce = state().account(sender).nonce;
  for (const auto& p : pool_) {
    if (p.tx.sender == sender && p.tx.nonce >= nonce) nonce = p.tx.nonce + 1;
  }
  return nonce;
}

bool Replica::in_mempool(const Digest256& tx_hash) const {
  return std::ranges::any_of(pool_, [&](const PoolTx& p) { return p.hash == tx_hash; });
}

client::TxStatus Replica::status(const Digest256& tx_hash) const {
  if (auto it = tx_index_.find(tx_hash); it != tx_index_.end()) {
    for (const auto& [block_hash, index] : it->second) {
      const auto& e = tree_.at(block_hash);
      if (e.height < path_.size() && path_[e.height] == block_hash) return e.receipts[index];
    }
  }
  if (in_mempool(tx_hash)) return client::Pending{};
  return client::Unknown{};
}

Result<void, client::DropReason> Replica::admit(const ledger::Transaction& tx) {
  const auto& st = state();
  if (!st.allowlist.permits(tx.sender)) return client::DropReason::NotAllowlisted;
  for (const auto& p : pool_) {
    if (p.tx.sender == tx.sender && p.tx.nonce == tx.nonce) return client::DropReason::Duplicate;
  }
  auto account = st.account(tx.sender);
  Amount escrowed = 0;
  for (const auto& p : pool_) {
    if (p.tx.sender == tx.sender && p.tx.nonce >= account.nonce) escrowed += p.tx.max_cost();
  }
  account.nonce = pending_nonce(tx.sender);
  account.balance = account.balance >= escrowed ? account.balance - escrowed : Amount{0};
  auto verified = ledger::verify_transaction(tx, account, ctx_->params.schedule, *ctx_->scheme);
  if (!verified) {
    switch (verified.error()) {
      case ledger::TxError::BadSignature: return client::DropReason::BadSignature;
      case ledger::TxError::BadNonce: return client::DropReason::BadNonce;
      case ledger::TxError::InsufficientFunds: return client::DropReason::InsufficientFunds;
      case ledger::TxError::GasLimitTooLow: return client::DropReason::GasLimitTooLow;
    }
  }
  pool_.push_back({tx, ledger::tx_hash(tx)});
  return outcome::success();
}

ImportResult Replica::import(const ledger::Block& block) {
  auto hash = ledger::hash_block(block.header);
  if (tree_.contains(hash)) return ImportResult::Known;
  auto parent = tree_.find(block.header.prev_hash);
  if (parent == tree_.end()) return ImportResult::MissingParent;

  const auto& h = block.header;
  bool ok = h.height == parent->second.height + 1 && h.tx_root == ledger::compute_tx_root(block.transactions);
  if (ok) {
    std::vector<ledger::Block> prefix;
    if (ctx_->consensus.mode == consensus::Mode::PoS) prefix = chain_to(parent->first);
    ok = ctx_->proof_check(prefix, h);
  }
  if (!ok) {
    ++invalid_blocks_;
    return ImportResult::Invalid;
  }
  auto outcome = contract::apply_block(parent->second.state, block, ctx_->params, ctx_->scheme);
  if (!outcome) {
    ++invalid_blocks_;
    return ImportResult::Invalid;
  }
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    tx_index_[ledger::tx_hash(block.transactions[i])].emplace_back(hash, i);
  }
  tree_.emplace(hash,
                Entry{block, h.height, std::move(outcome.value().state), std::move(outcome.value().receipts)});

  consensus::ChainSummary candidate{h.height + 1, hash};
  consensus::ChainSummary current{height() + 1, tip()};
  if (consensus::better_chain(candidate, current)) set_best(hash);
  return ImportResult::Added;
}

void Replica::set_best(const Digest256& hash) {
  std::vector<Digest256> next;
  {
    const Entry* e = &tree_.at(hash);
    next.resize(e->height + 1);
    Digest256 cur = hash;
    for (;;) {
      next[e->height] = cur;
      if (e->height == 0) break;
      cur = e->block.header.prev_hash;
      e = &tree_.at(cur);
    }
  }
  // Transactions sealed only on the abandoned branch go back to the pool.
  std::size_t fork = 0;
  while (fork < path_.size() && fork < next.size() && path_[fork] == next[fork]) ++fork;
  std::vector<PoolTx> orphaned;
  for (std::size_t i = fork; i < path_.size(); ++i) {
    for (const auto& tx : tree_.at(path_[i]).block.transactions) orphaned.push_back({tx, ledger::tx_hash(tx)});
  }
  path_ = std::move(next);
  if (!orphaned.empty()) {
    orphaned.insert(orphaned.end(), pool_.begin(), pool_.end());
    pool_ = std::move(orphaned);
  }
  prune_pool();
}

void Replica::prune_pool() {
  const auto& st = state();
  std::set<std::pair<Address, std::uint64_t>> seen;
  std::erase_if(pool_, [&](const PoolTx& p) {
    if (p.tx.nonce < st.account(p.tx.sender).nonce) return true;
    return !seen.emplace(p.tx.sender, p.tx.nonce).second;
  });
}

Result<ledger::Block, ProduceError> Replica::produce(std::uint64_t tick, const ledger::Keypair& keys) {
  const auto& parent = tree_.at(tip());
  const std::uint64_t height = parent.height + 1;

  if (ctx_->consensus.mode == consensus::Mode::PoS) {
    auto stakes = consensus::stake_set_after(ctx_->genesis_stakes, best_chain());
    auto chosen = consensus::pos_select(stakes, ctx_->seed, height);
    if (!chosen || chosen.value() != self_) return ProduceError::NotSelected;
  }

  auto running = parent.state;
  contract::ExecContext exec{height, self_};
  const auto& schedule = ctx_->params.schedule;
  std::vector<ledger::Transaction> txs;

  auto include = [&](const ledger::Transaction& tx) {
    txs.push_back(tx);
    contract::apply_transaction(running, tx, schedule, exec);
  };

  // The producer triggers the distribution at epoch boundaries.
  if (height % running.contract.epoch_length == 0) {
    ledger::Transaction d;
    d.sender = self_;
    d.nonce = running.account(self_).nonce;
    d.kind = ledger::ContractCall{contract::method::distribute, {}};
    d.gas_limit = contract::required_gas(d, running.contract, schedule);
    d.gas_price = 1;
    d.signature = ctx_->scheme->sign(keys.secret, ledger::signing_preimage(d));
    if (running.allowlist.permits(self_) &&
        ledger::verify_transaction(d, running.account(self_), schedule, *ctx_->scheme)) {
      include(d);
    }
  }

  std::erase_if(pool_, [&](const PoolTx& p) {
    if (txs.size() >= ctx_->max_block_txs) return false;
    if (!running.allowlist.permits(p.tx.sender)) return true;
    auto account = running.account(p.tx.sender);
    auto verified = ledger::verify_transaction(p.tx, account, schedule, *ctx_->scheme);
    if (verified) {
      include(p.tx);
      return true;
    }
    // Future nonces wait for their predecessors.
    return !(verified.error() == ledger::TxError::BadNonce && p.tx.nonce > account.nonce);
  });

  ledger::Block block;
  block.transactions = std::move(txs);
  auto& h = block.header;
  h.height = height;
  h.prev_hash = tip();
  h.tx_root = ledger::compute_tx_root(block.transactions);
  h.timestamp = tick;
  h.producer = self_;
  if (ctx_->consensus.mode == consensus::Mode::PoW) {
    auto seal = consensus::pow_mine(h, ctx_->consensus.difficulty, std::numeric_limits<std::uint64_t>::max());
    if (!seal) return ProduceError::NoSolution;
    h.consensus_proof = ledger::PowProof{seal.value().nonce};
  } else {
    consensus::pos_seal(h, keys.secret, *ctx_->scheme);
  }
  if (import(block) != ImportResult::Added) {
    throw std::logic_error("replica rejected its own block at height " + std::to_string(height));
  }
  return block;
}

}  // namespace edgechain::netsim
