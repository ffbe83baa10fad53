#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "edgechain/contract/engine.hpp"
#include "edgechain/ledger/signature.hpp"
#include "edgechain/result.hpp"

namespace edgechain::client {

/// Why a node refused a transaction at admission.
enum class DropReason { NotAllowlisted, Duplicate, BadSignature, BadNonce, InsufficientFunds, GasLimitTooLow };

std::string_view to_string(DropReason r);

struct Pending {};
struct Unknown {};
using TxStatus = std::variant<contract::Receipt, Pending, Unknown>;

/// What a client can see and do at the node it is bound to.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  /// Synchronous admission into the node's mempool.
  virtual Result<void, DropReason> submit(const ledger::Transaction& tx) = 0;
  /// State at the node's best tip.
  virtual const contract::WorldState& state() const = 0;
  virtual std::uint64_t height() const = 0;
  /// Next nonce the node would accept from `sender`, counting its mempool.
  virtual std::uint64_t pending_nonce(const Address& sender) const = 0;
  virtual TxStatus status(const Digest256& tx_hash) const = 0;
};

enum class AccountError { EmptySeed };

struct Account {
  ledger::Keypair keys;
  Address address;
};

/// Deterministic keypair from a seed. The mock scheme also enrolls it so
/// its signatures can be verified.
Result<Account, AccountError> create_account(ledger::SignatureScheme& scheme, ByteView seed);

struct ClientHandle {
  Endpoint* node = nullptr;
  const ledger::SignatureScheme* scheme = nullptr;
  Account account;
  std::uint64_t nonce_cache = 0;
};

ClientHandle bind(Endpoint& node, const ledger::SignatureScheme& scheme, Account account);

/// Signs with the cached nonce and submits. A BadNonce refusal repairs the
/// cache from the node and retries once.
Result<Digest256, DropReason> submit(ClientHandle& handle, ledger::TxKind kind, Bytes payload,
                                     std::uint64_t gas_limit, std::uint64_t gas_price = 1);

TxStatus get_receipt(const ClientHandle& handle, const Digest256& tx_hash);

struct Balance {
  Address address;
};
struct Device {
  Address address;
};
struct Activity {
  Address address;
};
struct ContractMeta {};
struct Quota {
  Address address;
};
using Query = std::variant<Balance, Device, Activity, ContractMeta, Quota>;

struct ContractInfo {
  std::uint32_t version = 0;
  std::string update_url;
  std::uint64_t block_interval = 0;
  bool initialized = false;

  bool operator==(const ContractInfo&) const = default;
};

using QueryValue =
    std::variant<Amount, contract::DeviceRecord, std::vector<contract::ActivityEntry>, ContractInfo, contract::QuotaStatus>;

enum class QueryError { UnknownAddress };

/// Read-only view of the bound node's best state.
Result<QueryValue, QueryError> query(const ClientHandle& handle, const Query& what);

}  // namespace edgechain::client
