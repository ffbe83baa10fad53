#include "edgechain/ledger/json.hpp"

#include <algorithm>

namespace edgechain::ledger {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected object containing '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

json kind_to_json(const TxKind& kind) {
  if (const auto* t = std::get_if<Transfer>(&kind)) {
    return {{"type", "Transfer"}, {"to", t->to.hex()}, {"amount", amount_to_string(t->amount)}};
  }
  if (const auto* c = std::get_if<ContractCall>(&kind)) {
    return {{"type", "ContractCall"}, {"method_id", c->method_id}, {"args", to_hex(c->args)}};
  }
  if (const auto* m = std::get_if<Migrate>(&kind)) {
    return {{"type", "Migrate"}, {"params", to_hex(m->params)}};
  }
  const auto& p = std::get<PermissionUpdate>(kind);
  return {{"type", "PermissionUpdate"}, {"target", p.target.hex()}, {"allow", p.allow}};
}

TxKind kind_from_json(const json& j) {
  const auto& type = field(j, "type");
  if (!type.is_string()) throw FormatError("kind.type must be a string");
  auto name = type.get<std::string>();
  if (name == "Transfer") {
    require_keys(j, {"type", "to", "amount"}, "Transfer");
    return Transfer{fixed_field<Address>(j, "to"), amount_field(j, "amount")};
  }
  if (name == "ContractCall") {
    require_keys(j, {"type", "method_id", "args"}, "ContractCall");
    auto id = u64_field(j, "method_id");
    if (id > 0xffffffffu) throw FormatError("method_id out of range");
    return ContractCall{static_cast<std::uint32_t>(id), hex_field(j, "args")};
  }
  if (name == "Migrate") {
    require_keys(j, {"type", "params"}, "Migrate");
    return Migrate{hex_field(j, "params")};
  }
  if (name == "PermissionUpdate") {
    require_keys(j, {"type", "target", "allow"}, "PermissionUpdate");
    const auto& allow = field(j, "allow");
    if (!allow.is_boolean()) throw FormatError("allow must be boolean");
    return PermissionUpdate{fixed_field<Address>(j, "target"), allow.get<bool>()};
  }
  throw FormatError("unknown transaction kind '" + name + "'");
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected object");
  for (const auto& [k, _] : j.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; });
    if (!known) throw FormatError(std::string(what) + ": unknown key '" + k + "'");
  }
}

Bytes hex_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a hex string");
  auto raw = from_hex(v.get<std::string>());
  if (!raw) throw FormatError(std::string("field '") + key + "' is not valid hex");
  return std::move(*raw);
}

std::uint64_t u64_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw FormatError(std::string("field '") + key + "' must be an unsigned integer");
  return v.get<std::uint64_t>();
}

Amount amount_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (v.is_number_unsigned()) return Amount(v.get<std::uint64_t>());
  if (v.is_string()) {
    if (auto a = amount_from_string(v.get<std::string>())) return *a;
  }
  throw FormatError(std::string("field '") + key + "' must be a non-negative amount");
}

json to_json(const Transaction& tx) {
  return {{"sender", tx.sender.hex()},     {"nonce", tx.nonce},
          {"kind", kind_to_json(tx.kind)}, {"payload", to_hex(tx.payload)},
          {"gas_limit", tx.gas_limit},     {"gas_price", tx.gas_price},
          {"signature", to_hex(tx.signature)}};
}

json to_json(const BlockHeader& h) {
  json proof;
  if (const auto* pow = std::get_if<PowProof>(&h.consensus_proof)) {
    proof = {{"pow_nonce", pow->nonce}};
  } else {
    proof = {{"pos_signature", to_hex(std::get<PosProof>(h.consensus_proof).signature)}};
  }
  return {{"height", h.height},         {"prev_hash", h.prev_hash.hex()}, {"tx_root", h.tx_root.hex()},
          {"timestamp", h.timestamp},   {"producer", h.producer.hex()},   {"consensus_proof", proof}};
}

json to_json(const Block& block) {
  auto j = to_json(block.header);
  auto txs = json::array();
  for (const auto& tx : block.transactions) txs.push_back(to_json(tx));
  j["transactions"] = std::move(txs);
  return j;
}

Transaction transaction_from_json(const json& j) {
  require_keys(j, {"sender", "nonce", "kind", "payload", "gas_limit", "gas_price", "signature"}, "transaction");
  Transaction tx;
  tx.sender = fixed_field<Address>(j, "sender");
  tx.nonce = u64_field(j, "nonce");
  tx.kind = kind_from_json(field(j, "kind"));
  tx.payload = hex_field(j, "payload");
  tx.gas_limit = u64_field(j, "gas_limit");
  tx.gas_price = u64_field(j, "gas_price");
  tx.signature = hex_field(j, "signature");
  return tx;
}

Block block_from_json(const json& j) {
  require_keys(j, {"height", "prev_hash", "tx_root", "timestamp", "producer", "consensus_proof", "transactions"},
               "block");
  Block b;
  auto& h = b.header;
  h.height = u64_field(j, "height");
  h.prev_hash = fixed_field<Digest256>(j, "prev_hash");
  h.tx_root = fixed_field<Digest256>(j, "tx_root");
  h.timestamp = u64_field(j, "timestamp");
  h.producer = fixed_field<Address>(j, "producer");
  const auto& proof = field(j, "consensus_proof");
  if (proof.is_object() && proof.contains("pow_nonce")) {
    require_keys(proof, {"pow_nonce"}, "consensus_proof");
    h.consensus_proof = PowProof{u64_field(proof, "pow_nonce")};
  } else if (proof.is_object() && proof.contains("pos_signature")) {
    require_keys(proof, {"pos_signature"}, "consensus_proof");
    h.consensus_proof = PosProof{hex_field(proof, "pos_signature")};
  } else {
    throw FormatError("consensus_proof must carry pow_nonce or pos_signature");
  }
  const auto& txs = field(j, "transactions");
  if (!txs.is_array()) throw FormatError("transactions must be an array");
  for (const auto& t : txs) b.transactions.push_back(transaction_from_json(t));
  return b;
}

}  // namespace edgechain::ledger
