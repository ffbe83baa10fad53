#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "edgechain/ledger/block.hpp"
#include "edgechain/ledger/transaction.hpp"

namespace edgechain::ledger {

/// Raised for JSON that is well-formed but not a valid ledger object.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte fields are lowercase hex without a prefix; 128-bit amounts are
// decimal strings; 64-bit integers are JSON numbers.
nlohmann::json to_json(const Transaction& tx);
nlohmann::json to_json(const BlockHeader& header);
nlohmann::json to_json(const Block& block);

Transaction transaction_from_json(const nlohmann::json& j);
Block block_from_json(const nlohmann::json& j);

/// Accessors shared by every strict reader in the project.
Bytes hex_field(const nlohmann::json& j, const char* key);
template <class T>
T fixed_field(const nlohmann::json& j, const char* key) {
  auto raw = hex_field(j, key);
  if (raw.size() != T::size()) throw FormatError(std::string("field '") + key + "' has wrong length");
  return T::from_view(raw);
}
std::uint64_t u64_field(const nlohmann::json& j, const char* key);
Amount amount_field(const nlohmann::json& j, const char* key);
void require_keys(const nlohmann::json& j, std::initializer_list<const char*> keys, const char* what);

}  // namespace edgechain::ledger
