#pragma once

#include <map>
#include <memory>

#include "edgechain/ledger/bytes.hpp"

namespace edgechain::ledger {

struct Keypair {
  Bytes secret;
  PublicKey public_key;
};

/// First 20 bytes of SHA-256(public key).
Address address_of(const PublicKey& key);

/// Pluggable signing contract. Verification is address-based; a scheme
/// resolves the address to whatever key material it needs.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;

  virtual PublicKey derive_public_key(ByteView secret) const = 0;
  virtual Bytes sign(ByteView secret, ByteView message) const = 0;
  virtual bool verify(const Address& signer, ByteView message, ByteView signature) const = 0;

  Keypair keypair(ByteView secret) const {
    return {Bytes(secret.begin(), secret.end()), derive_public_key(secret)};
  }
};

/// Deterministic hash-based stand-in for a real signature scheme:
///   public_key = SHA-256(secret)
///   signature  = SHA-256(secret || message)
/// Verifying requires the signer's enrolled key material, so the scheme
/// carries a registry populated with enroll(). Not secure; simulation only.
class MockSignatureScheme final : public SignatureScheme {
 public:
  PublicKey derive_public_key(ByteView secret) const override;
  Bytes sign(ByteView secret, ByteView message) const override;
  bool verify(const Address& signer, ByteView message, ByteView signature) const override;

  /// Registers a keypair and returns its address.
  Address enroll(const Keypair& keys);
  bool knows(const Address& addr) const { return registry_.contains(addr); }
  const PublicKey* public_key(const Address& addr) const;

 private:
  std::map<Address, Keypair> registry_;
};

}  // namespace edgechain::ledger
