#include "edgechain/cli/artifacts.hpp"

#include <algorithm>
#include <sstream>

#include "edgechain/cli/scenario.hpp"
#include "edgechain/ledger/json.hpp"

namespace edgechain::cli {

using nlohmann::json;

namespace {

std::string name_of(const netsim::Sim& sim, const Address& a) {
  auto i = sim.index_of(a);
  return i ? sim.nodes()[*i].spec.name : a.hex();
}

std::string event_name(const ledger::Transaction& tx) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ledger::Transfer>) return "Transfer";
        if constexpr (std::is_same_v<K, ledger::Migrate>) return "Migrate";
        if constexpr (std::is_same_v<K, ledger::PermissionUpdate>) return "PermissionUpdate";
        if constexpr (std::is_same_v<K, ledger::ContractCall>) {
          switch (k.method_id) {
            case contract::method::register_device: return "Register";
            case contract::method::submit_data: return "SubmitData";
            case contract::method::apply_update: return "ApplyUpdate";
            case contract::method::report_malicious: return "Report";
            case contract::method::distribute: return "Distribute";
          }
          return "Call(" + std::to_string(k.method_id) + ")";
        }
      },
      tx.kind);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RunReport analyse(const netsim::Sim& sim) {
  RunReport report;
  const auto& observer = sim.observer();
  const auto& params = sim.context().params;
  auto chain = observer.best_chain();
  auto state = sim.genesis();
  std::vector<MetricRow> chain_rows;

  for (std::size_t h = 1; h < chain.size(); ++h) {
    const auto& block = chain[h];
    const auto tick = block.header.timestamp;
    contract::ExecContext ctx{block.header.height, block.header.producer};
    auto running = state;
    for (const auto& tx : block.transactions) {
      auto r = contract::apply_transaction(running, tx, params.schedule, ctx);
      auto hash = r.tx_hash.hex();
      auto& totals = report.totals[tx.sender];
      totals.fees_paid += r.fee;
      ++totals.transactions;
      totals.reverted += !r.success();

      std::string detail = r.success() ? "Success" : "Reverted(" + std::string(contract::to_string(*r.revert)) + ")";
      for (const auto& ev : r.events) {
        if (const auto* u = std::get_if<contract::UpdateRequired>(&ev)) detail += " url=" + u->url;
      }
      chain_rows.push_back({tick, h, name_of(sim, tx.sender), event_name(tx), hash, r.gas_used, r.fee,
                            running.account(tx.sender).balance, detail});

      for (const auto& ev : r.events) {
        std::visit(
            [&](const auto& e) {
              using E = std::decay_t<decltype(e)>;
              if constexpr (std::is_same_v<E, contract::PenaltyApplied>) {
                report.totals[e.offender].penalties_paid += e.amount;
                chain_rows.push_back({tick, h, name_of(sim, e.offender), "Penalty", hash, 0, 0,
                                      running.account(e.offender).balance, "amount=" + amount_to_string(e.amount)});
              } else if constexpr (std::is_same_v<E, contract::Reimbursed>) {
                report.totals[e.to].reimbursed += e.amount;
                chain_rows.push_back({tick, h, name_of(sim, e.to), "Reimbursed", hash, 0, 0,
                                      running.account(e.to).balance, "amount=" + amount_to_string(e.amount)});
              } else if constexpr (std::is_same_v<E, contract::Granted>) {
                report.totals[e.to].granted += e.amount;
                chain_rows.push_back({tick, h, name_of(sim, e.to), "Grant", hash, 0, 0, running.account(e.to).balance,
                                      "amount=" + amount_to_string(e.amount)});
              }
            },
            ev);
      }
    }
    state = contract::apply_block(state, block, params).value().state;
    report.totals[block.header.producer].rewards += params.block_reward;
    chain_rows.push_back({tick, h, name_of(sim, block.header.producer), "BlockReward", "", 0, 0,
                          state.account(block.header.producer).balance,
                          "amount=" + amount_to_string(params.block_reward)});
  }

  for (const auto& rec : sim.records()) {
    report.rows.push_back({rec.tick, rec.height, sim.nodes()[rec.node].spec.name, rec.event,
                           rec.tx_hash ? rec.tx_hash->hex() : "", 0, 0, rec.balance_after, rec.detail});
  }
  report.rows.insert(report.rows.end(), chain_rows.begin(), chain_rows.end());
  std::ranges::stable_sort(report.rows, {}, &MetricRow::tick);
  return report;
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
  std::ostringstream out;
  out << csv_header << '\n';
  for (const auto& r : rows) {
    out << r.tick << ',' << r.height << ',' << csv_field(r.node) << ',' << r.event << ',' << r.tx_hash << ','
        << r.gas_used << ',' << amount_to_string(r.fee) << ',' << amount_to_string(r.balance_after) << ','
        << csv_field(r.detail) << '\n';
  }
  return out.str();
}

json chain_json(const netsim::Sim& sim) {
  const auto& observer = sim.observer();
  json blocks = json::array();
  json receipts = json::array();
  for (const auto& hash : observer.path()) {
    blocks.push_back(ledger::to_json(*observer.block(hash)));
    json rs = json::array();
    for (const auto& r : *observer.receipts(hash)) rs.push_back(contract::to_json(r));
    receipts.push_back(std::move(rs));
  }
  auto scenario = scenario_to_json(sim.config());
  return {{"scenario", std::move(scenario)},
          {"seed", sim.seed()},
          {"blocks", std::move(blocks)},
          {"receipts", std::move(receipts)},
          {"footer",
           {{"height", observer.height()},
            {"tip", observer.tip().hex()},
            {"contract_state_digest", contract::state_digest(observer.state().contract).hex()},
            {"world_state_digest", contract::world_digest(observer.state()).hex()}}}};
}

json summary_json(const netsim::Sim& sim, const RunReport& report) {
  const auto& observer = sim.observer();
  const auto& state = observer.state();
  const auto& c = state.contract;
  json nodes = json::object();
  for (const auto& n : sim.nodes()) {
    const auto& addr = n.account.address;
    NodeTotals t;
    if (auto it = report.totals.find(addr); it != report.totals.end()) t = it->second;
    json entry{{"address", addr.hex()},
               {"kind", std::string(netsim::to_string(n.spec.kind))},
               {"balance", amount_to_string(state.account(addr).balance)},
               {"fees_paid", amount_to_string(t.fees_paid)},
               {"penalties_paid", amount_to_string(t.penalties_paid)},
               {"reimbursed", amount_to_string(t.reimbursed)},
               {"granted", amount_to_string(t.granted)},
               {"block_rewards", amount_to_string(t.rewards)},
               {"transactions", t.transactions},
               {"reverted", t.reverted},
               {"drops", n.drops}};
    if (const auto* d = c.device(addr)) {
      entry["device"] = {{"firmware_version", d->firmware_version},
                         {"registered_at", d->registered_at},
                         {"window_tx_count", d->window_tx_count},
                         {"total_gas_spent", d->total_gas_spent},
                         {"flagged", d->flagged},
                         {"penalty_debt", amount_to_string(d->penalty_debt)}};
    }
    nodes[n.spec.name] = std::move(entry);
  }
  Amount pending = 0;
  for (const auto& [_, v] : c.pending_reimbursements) pending += v;
  return {{"scenario", sim.config().name},
          {"seed", sim.seed()},
          {"height", observer.height()},
          {"tip", observer.tip().hex()},
          {"nodes", std::move(nodes)},
          {"totals",
           {{"penalties_collected", amount_to_string(c.total_penalties)},
            {"reimbursed", amount_to_string(c.total_reimbursed)},
            {"pending_reimbursements", amount_to_string(pending)},
            {"penalty_pool", amount_to_string(c.penalty_pool)},
            {"epochs_distributed", c.epochs_distributed},
            {"drop_count", sim.drop_count()},
            {"genesis_supply", amount_to_string(state.genesis_supply)},
            {"circulating_supply", amount_to_string(contract::circulating_supply(state))}}},
          {"contract_state_digest", contract::state_digest(c).hex()},
          {"world_state_digest", contract::world_digest(state).hex()}};
}

}  // namespace edgechain::cli
