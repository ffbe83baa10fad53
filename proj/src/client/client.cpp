#include "edgechain/client/client.hpp"

#include "edgechain/ledger/signature.hpp"

namespace edgechain::client {

std::string_view to_string(DropReason r) {
  switch (r) {
    case DropReason::NotAllowlisted: return "NotAllowlisted";
    case DropReason::Duplicate: return "Duplicate";
    case DropReason::BadSignature: return "BadSignature";
    case DropReason::BadNonce: return "BadNonce";
    case DropReason::InsufficientFunds: return "InsufficientFunds";
    case DropReason::GasLimitTooLow: return "GasLimitTooLow";
  }
  return "?";
}

Result<Account, AccountError> create_account(ledger::SignatureScheme& scheme, ByteView seed) {
  if (seed.empty()) return AccountError::EmptySeed;
  auto keys = scheme.keypair(seed);
  Address addr = ledger::address_of(keys.public_key);
  if (auto* mock = dynamic_cast<ledger::MockSignatureScheme*>(&scheme)) mock->enroll(keys);
  return Account{std::move(keys), addr};
}

ClientHandle bind(Endpoint& node, const ledger::SignatureScheme& scheme, Account account) {
  ClientHandle h{&node, &scheme, std::move(account), 0};
  h.nonce_cache = node.state().account(h.account.address).nonce;
  return h;
}

namespace {

ledger::Transaction sign(const ClientHandle& h, const ledger::TxKind& kind, const Bytes& payload,
                         std::uint64_t gas_limit, std::uint64_t gas_price) {
  ledger::Transaction tx;
  tx.sender = h.account.address;
  tx.nonce = h.nonce_cache;
  tx.kind = kind;
  tx.payload = payload;
  tx.gas_limit = gas_limit;
  tx.gas_price = gas_price;
  tx.signature = h.scheme->sign(h.account.keys.secret, ledger::signing_preimage(tx));
  return tx;
}

}  // namespace

Result<Digest256, DropReason> submit(ClientHandle& h, ledger::TxKind kind, Bytes payload, std::uint64_t gas_limit,
                                     std::uint64_t gas_price) {
  h.nonce_cache = std::max(h.nonce_cache, h.node->state().account(h.account.address).nonce);
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto tx = sign(h, kind, payload, gas_limit, gas_price);
    auto admitted = h.node->submit(tx);
    if (admitted) {
      ++h.nonce_cache;
      return ledger::tx_hash(tx);
    }
    if (admitted.error() != DropReason::BadNonce && admitted.error() != DropReason::Duplicate) {
      return admitted.error();
    }
    auto repaired = h.node->pending_nonce(h.account.address);
    if (repaired == h.nonce_cache) return admitted.error();
    h.nonce_cache = repaired;
  }
  return DropReason::BadNonce;
}

TxStatus get_receipt(const ClientHandle& h, const Digest256& tx_hash) { return h.node->status(tx_hash); }

Result<QueryValue, QueryError> query(const ClientHandle& h, const Query& what) {
  const auto& state = h.node->state();
  const auto& contract = state.contract;
  return std::visit(
      [&](const auto& q) -> Result<QueryValue, QueryError> {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, Balance>) {
          return outcome::success(QueryValue{state.account(q.address).balance});
        } else if constexpr (std::is_same_v<Q, Device>) {
          const auto* d = contract.device(q.address);
          if (!d) return outcome::failure(QueryError::UnknownAddress);
          return outcome::success(QueryValue{*d});
        } else if constexpr (std::is_same_v<Q, Activity>) {
          return outcome::success(QueryValue{contract::get_activity(contract, q.address)});
        } else if constexpr (std::is_same_v<Q, ContractMeta>) {
          return outcome::success(QueryValue{
              ContractInfo{contract.current_version, contract.update_url, contract.block_interval, contract.initialized}});
        } else {
          auto status = contract::check_quota(contract, q.address, h.node->height());
          if (!status) return outcome::failure(QueryError::UnknownAddress);
          return outcome::success(QueryValue{status.value()});
        }
      },
      what);
}

}  // namespace edgechain::client
