#pragma once

#include <cstdint>
#include <variant>

#include "edgechain/ledger/bytes.hpp"

namespace edgechain::ledger {

struct Transfer {
  Address to;
  Amount amount = 0;
  bool operator==(const Transfer&) const = default;
};

struct ContractCall {
  std::uint32_t method_id = 0;
  Bytes args;
  bool operator==(const ContractCall&) const = default;
};

struct Migrate {
  Bytes params;
  bool operator==(const Migrate&) const = default;
};

struct PermissionUpdate {
  Address target;
  bool allow = false;
  bool operator==(const PermissionUpdate&) const = default;
};

using TxKind = std::variant<Transfer, ContractCall, Migrate, PermissionUpdate>;

/// Wire tags of the TxKind alternatives, in variant order.
enum class TxKindTag : std::uint8_t { Transfer = 0, ContractCall = 1, Migrate = 2, PermissionUpdate = 3 };

struct Transaction {
  Address sender;
  std::uint64_t nonce = 0;
  TxKind kind;
  Bytes payload;
  std::uint64_t gas_limit = 0;
  std::uint64_t gas_price = 0;
  Bytes signature;

  bool operator==(const Transaction&) const = default;

  /// Gas escrow plus any transferred amount.
  Amount max_cost() const;
};

/// Canonical encoding. Fields are written in declaration order, integers
/// big-endian fixed width, byte strings with a 4-byte length prefix.
/// The signing pre-image omits the signature; the sealed form appends it.
Bytes signing_preimage(const Transaction& tx);
Bytes canonical_encode(const Transaction& tx);

/// Inverse of canonical_encode; nullopt on malformed or trailing input.
std::optional<Transaction> decode_transaction(ByteView data);

/// Digest of the sealed transaction (signature included).
Digest256 tx_hash(const Transaction& tx);

}  // namespace edgechain::ledger
