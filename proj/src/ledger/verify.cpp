#include "edgechain/ledger/verify.hpp"

namespace edgechain::ledger {

std::string_view to_string(TxError e) {
  switch (e) {
    case TxError::BadSignature: return "BadSignature";
    case TxError::BadNonce: return "BadNonce";
    case TxError::InsufficientFunds: return "InsufficientFunds";
    case TxError::GasLimitTooLow: return "GasLimitTooLow";
  }
  return "Unknown";
}

Result<void, TxError> verify_unsigned(const Transaction& tx, const Account& account,
                                      const contract::GasSchedule& schedule) {
  if (tx.nonce != account.nonce) return TxError::BadNonce;
  if (account.balance < tx.max_cost()) return TxError::InsufficientFunds;
  if (tx.gas_limit < schedule.base_tx) return TxError::GasLimitTooLow;
  return outcome::success();
}

Result<void, TxError> verify_transaction(const Transaction& tx, const Account& account,
                                         const contract::GasSchedule& schedule,
                                         const SignatureScheme& scheme) {
  if (!scheme.verify(tx.sender, signing_preimage(tx), tx.signature)) return TxError::BadSignature;
  return verify_unsigned(tx, account, schedule);
}

}  // namespace edgechain::ledger
