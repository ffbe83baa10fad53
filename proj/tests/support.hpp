#pragma once

#include <string>
#include <string_view>

#include "edgechain/contract/engine.hpp"
#include "edgechain/ledger/hash.hpp"
#include "edgechain/ledger/signature.hpp"
#include "edgechain/ledger/transaction.hpp"

namespace edgechain::testing {

inline Digest256 digest_from_hex(std::string_view hex) { return *Digest256::from_hex(hex); }
inline Address address_from_hex(std::string_view hex) { return *Address::from_hex(hex); }

struct TestKey {
  ledger::Keypair keys;
  Address address;
};

inline TestKey make_key(ledger::MockSignatureScheme& scheme, std::string_view seed) {
  auto keys = scheme.keypair(as_bytes(seed));
  auto addr = scheme.enroll(keys);
  return {keys, addr};
}

inline ledger::Transaction signed_tx(const ledger::SignatureScheme& scheme, const TestKey& key, std::uint64_t nonce,
                                     ledger::TxKind kind, Bytes payload = {}, std::uint64_t gas_limit = 1000,
                                     std::uint64_t gas_price = 1) {
  ledger::Transaction tx;
  tx.sender = key.address;
  tx.nonce = nonce;
  tx.kind = std::move(kind);
  tx.payload = std::move(payload);
  tx.gas_limit = gas_limit;
  tx.gas_price = gas_price;
  tx.signature = scheme.sign(key.keys.secret, ledger::signing_preimage(tx));
  return tx;
}

inline ledger::ContractCall call(std::uint32_t method, Bytes args = {}) { return {method, std::move(args)}; }

inline Bytes u32_args(std::uint32_t v) { return Encoder{}.u32(v).bytes(); }
inline Bytes address_args(const Address& a) { return Encoder{}.fixed(a).bytes(); }

}  // namespace edgechain::testing
