#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "edgechain/netsim/sim.hpp"

namespace edgechain::cli {

inline constexpr std::string_view csv_header = "tick,height,node,event,tx_hash,gas_used,fee,balance_after,detail";

struct MetricRow {
  std::uint64_t tick = 0;
  std::uint64_t height = 0;
  std::string node;
  std::string event;
  std::string tx_hash;
  std::uint64_t gas_used = 0;
  Amount fee = 0;
  Amount balance_after = 0;
  std::string detail;
};

struct NodeTotals {
  Amount fees_paid = 0;
  Amount penalties_paid = 0;
  Amount reimbursed = 0;
  Amount granted = 0;
  Amount rewards = 0;
  std::uint64_t transactions = 0;
  std::uint64_t reverted = 0;
};

/// Everything exported about a finished run, derived from the observer's
/// best chain plus the simulator's off-chain records.
struct RunReport {
  std::vector<MetricRow> rows;
  std::map<Address, NodeTotals> totals;
};

RunReport analyse(const netsim::Sim& sim);

std::string metrics_csv(const std::vector<MetricRow>& rows);

/// {scenario, seed, blocks, receipts, footer}; blocks include genesis and
/// receipts[i] belongs to blocks[i].
nlohmann::json chain_json(const netsim::Sim& sim);

nlohmann::json summary_json(const netsim::Sim& sim, const RunReport& report);

}  // namespace edgechain::cli
