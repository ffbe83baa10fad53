#pragma once

#include <string_view>

#include "edgechain/contract/gas_schedule.hpp"
#include "edgechain/ledger/account.hpp"
#include "edgechain/ledger/signature.hpp"
#include "edgechain/ledger/transaction.hpp"
#include "edgechain/result.hpp"

namespace edgechain::ledger {

enum class TxError { BadSignature, BadNonce, InsufficientFunds, GasLimitTooLow };

std::string_view to_string(TxError e);

/// Admission checks in a fixed order; the first failing one is reported.
Result<void, TxError> verify_transaction(const Transaction& tx, const Account& account,
                                         const contract::GasSchedule& schedule,
                                         const SignatureScheme& scheme);

/// verify_transaction minus the signature check, for re-execution of
/// transactions that were already sealed in validated blocks.
Result<void, TxError> verify_unsigned(const Transaction& tx, const Account& account,
                                      const contract::GasSchedule& schedule);

}  // namespace edgechain::ledger
