#include "edgechain/ledger/signature.hpp"

#include <algorithm>

#include "edgechain/ledger/hash.hpp"

namespace edgechain::ledger {

Address address_of(const PublicKey& key) {
  return Address::from_view(sha256(key.view()).view());
}

PublicKey MockSignatureScheme::derive_public_key(ByteView secret) const {
  return PublicKey::from_view(sha256(secret).view());
}

Bytes MockSignatureScheme::sign(ByteView secret, ByteView message) const {
  auto d = sha256(secret, message);
  return Bytes(d.bytes.begin(), d.bytes.end());
}

bool MockSignatureScheme::verify(const Address& signer, ByteView message, ByteView signature) const {
  auto it = registry_.find(signer);
  if (it == registry_.end()) return false;
  const auto& keys = it->second;
  if (derive_public_key(keys.secret) != keys.public_key) return false;
  auto expected = sign(keys.secret, message);
  return std::ranges::equal(expected, signature);
}

Address MockSignatureScheme::enroll(const Keypair& keys) {
  auto addr = address_of(keys.public_key);
  registry_.insert_or_assign(addr, keys);
  return addr;
}

const PublicKey* MockSignatureScheme::public_key(const Address& addr) const {
  auto it = registry_.find(addr);
  return it == registry_.end() ? nullptr : &it->second.public_key;
}

}  // namespace edgechain::ledger
