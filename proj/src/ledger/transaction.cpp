#include "edgechain/ledger/transaction.hpp"

#include "edgechain/ledger/hash.hpp"

namespace edgechain::ledger {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void encode_kind(Encoder& enc, const TxKind& kind) {
  enc.u8(static_cast<std::uint8_t>(kind.index()));
  std::visit(Overloaded{
                 [&](const Transfer& t) { enc.fixed(t.to).u128(t.amount); },
                 [&](const ContractCall& c) { enc.u32(c.method_id).var(c.args); },
                 [&](const Migrate& m) { enc.var(m.params); },
                 [&](const PermissionUpdate& p) { enc.fixed(p.target).u8(p.allow ? 1 : 0); },
             },
             kind);
}

Encoder encode_unsigned(const Transaction& tx) {
  Encoder enc;
  enc.fixed(tx.sender).u64(tx.nonce);
  encode_kind(enc, tx.kind);
  enc.var(tx.payload).u64(tx.gas_limit).u64(tx.gas_price);
  return enc;
}

std::optional<TxKind> decode_kind(Decoder& dec) {
  auto tag = dec.u8();
  if (!tag) return std::nullopt;
  switch (static_cast<TxKindTag>(*tag)) {
    case TxKindTag::Transfer: {
      auto to = dec.fixed<Address>();
      auto amount = dec.u128();
      if (!to || !amount) return std::nullopt;
      return Transfer{*to, *amount};
    }
    case TxKindTag::ContractCall: {
      auto method = dec.u32();
      auto args = dec.var();
      if (!method || !args) return std::nullopt;
      return ContractCall{*method, std::move(*args)};
    }
    case TxKindTag::Migrate: {
      auto params = dec.var();
      if (!params) return std::nullopt;
      return Migrate{std::move(*params)};
    }
    case TxKindTag::PermissionUpdate: {
      auto target = dec.fixed<Address>();
      auto allow = dec.u8();
      if (!target || !allow || *allow > 1) return std::nullopt;
      return PermissionUpdate{*target, *allow == 1};
    }
  }
  return std::nullopt;
}

}  // namespace

Amount Transaction::max_cost() const {
  Amount cost = Amount(gas_limit) * Amount(gas_price);
  if (const auto* t = std::get_if<Transfer>(&kind)) cost += t->amount;
  return cost;
}

Bytes signing_preimage(const Transaction& tx) { return encode_unsigned(tx).bytes(); }

Bytes canonical_encode(const Transaction& tx) {
  auto enc = encode_unsigned(tx);
  enc.var(tx.signature);
  return std::move(enc).bytes();
}

std::optional<Transaction> decode_transaction(ByteView data) {
  Decoder dec(data);
  Transaction tx;
  auto sender = dec.fixed<Address>();
  auto nonce = dec.u64();
  if (!sender || !nonce) return std::nullopt;
  auto kind = decode_kind(dec);
  if (!kind) return std::nullopt;
  auto payload = dec.var();
  auto gas_limit = dec.u64();
  auto gas_price = dec.u64();
  auto signature = dec.var();
  if (!payload || !gas_limit || !gas_price || !signature || !dec.done()) return std::nullopt;
  tx.sender = *sender;
  tx.nonce = *nonce;
  tx.kind = std::move(*kind);
  tx.payload = std::move(*payload);
  tx.gas_limit = *gas_limit;
  tx.gas_price = *gas_price;
  tx.signature = std::move(*signature);
  return tx;
}

Digest256 tx_hash(const Transaction& tx) { return sha256(canonical_encode(tx)); }

}  // namespace edgechain::ledger
