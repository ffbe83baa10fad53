#include <doctest.h>

#include <set>

#include "edgechain/netsim/sim.hpp"

using namespace edgechain;
using namespace edgechain::netsim;

namespace {

NodeSpec node(std::string name, NodeKind kind, Amount balance = 0) {
  NodeSpec n;
  n.name = std::move(name);
  n.kind = kind;
  n.balance = balance;
  return n;
}

NodeSpec customer(std::string name, Amount balance, std::uint64_t period, std::uint64_t max_submits) {
  auto n = node(std::move(name), NodeKind::Customer, balance);
  n.customer.submit_period = period;
  n.customer.max_submits = max_submits;
  return n;
}

SimConfig minimal() {
  SimConfig c;
  c.nodes = {node("admin", NodeKind::Admin, 100000), node("miner", NodeKind::EdgeServer, 1000),
             customer("device", 10000, 10, 20)};
  c.run.max_blocks = 30;
  return c;
}

std::unique_ptr<Sim> start(const SimConfig& c, std::uint64_t seed = 1) {
  auto sim = init_sim(c, seed);
  REQUIRE(sim);
  return std::move(sim).value();
}

Address addr(const std::string& name) { return address_for(name); }

/// Receipts of `who`'s sealed transactions on the observer's chain, in order.
std::vector<std::pair<ledger::Transaction, contract::Receipt>> sealed_by(const Sim& sim, const Address& who) {
  std::vector<std::pair<ledger::Transaction, contract::Receipt>> out;
  const auto& r = sim.observer();
  for (const auto& hash : r.path()) {
    const auto* b = r.block(hash);
    const auto* rs = r.receipts(hash);
    for (std::size_t i = 0; i < b->transactions.size(); ++i) {
      if (b->transactions[i].sender == who) out.emplace_back(b->transactions[i], (*rs)[i]);
    }
  }
  return out;
}

bool is_call(const ledger::Transaction& tx, std::uint32_t method) {
  const auto* c = std::get_if<ledger::ContractCall>(&tx.kind);
  return c && c->method_id == method;
}

}  // namespace

TEST_CASE("init_sim") {
  SUBCASE("minimal scenario") {
    auto sim = start(minimal());
    CHECK(sim->genesis().accounts.size() == 3);
    CHECK(sim->observer().height() == 0);
  }
  SUBCASE("duplicate address") {
    auto c = minimal();
    c.nodes.push_back(node("device", NodeKind::Customer));
    auto r = init_sim(c, 1);
    REQUIRE_FALSE(r);
    CHECK(r.error().rule.find("duplicate") != std::string::npos);
  }
  SUBCASE("customers without a miner") {
    auto c = minimal();
    c.nodes[1].mining = false;
    CHECK_FALSE(init_sim(c, 1));
  }
  SUBCASE("two admins") {
    auto c = minimal();
    c.nodes.push_back(node("admin2", NodeKind::Admin));
    CHECK_FALSE(init_sim(c, 1));
  }
}

TEST_CASE("run_until") {
  SUBCASE("block 0 is genesis only") {
    auto sim = start(minimal());
    run_until(*sim, {.height = 0});
    CHECK(sim->observer().height() == 0);
    CHECK(sim->now() == 0);
  }
  SUBCASE("same seed, same tip") {
    auto a = start(minimal(), 7);
    auto b = start(minimal(), 7);
    run_until(*a, {});
    run_until(*b, {});
    CHECK(a->observer().height() == 30);
    CHECK(a->observer().tip() == b->observer().tip());
  }
  SUBCASE("one block per interval with one miner") {
    auto sim = start(minimal());
    for (std::uint64_t t : {5u, 10u, 19u, 20u, 95u, 100u}) {
      run_until(*sim, {.tick = t});
      CHECK(sim->observer().height() == t / 10);
    }
  }
}

TEST_CASE("customer happy path") {
  auto sim = start(minimal());
  run_until(*sim, {});
  auto txs = sealed_by(*sim, addr("device"));
  REQUIRE(txs.size() == 21);  // register + 20 submits
  for (const auto& [tx, r] : txs) CHECK(r.success());
  CHECK(sim->drop_count() == 0);
  const auto* dev = sim->observer().state().contract.device(addr("device"));
  REQUIRE(dev);
  CHECK(dev->total_gas_spent == 71 + 20 * 35);
}

TEST_CASE("empty blocks still pay the reward") {
  auto c = minimal();
  c.nodes.pop_back();
  c.run.max_blocks = 3;
  auto sim = start(c);
  run_until(*sim, {});
  const auto& r = sim->observer();
  CHECK(r.block(r.path()[2])->transactions.empty());
  CHECK(r.state().account(addr("miner")).balance == 1000 + 3 * 50 + 721);
}

TEST_CASE("admission") {
  auto c = minimal();
  c.nodes[2].customer.max_submits = 0;
  auto& admin = c.nodes[0];
  admin.permission_updates.push_back({55, "device", false});
  c.allow_all = false;
  c.allowlist = {"device"};
  c.run.max_blocks = 12;
  auto sim = start(c);
  run_until(*sim, {});
  auto txs = sealed_by(*sim, addr("device"));
  CHECK_FALSE(txs.empty());
  CHECK(sim->node(2).drops > 0);
  bool saw_drop = false;
  for (const auto& rec : sim->records()) {
    if (rec.event == "Drop") {
      CHECK(rec.detail == "NotAllowlisted");
      CHECK(rec.tick > 55);
      saw_drop = true;
    }
  }
  CHECK(saw_drop);
  // Allowlist soundness: nothing from the device after its removal was sealed.
  for (const auto& hash : sim->observer().path()) {
    const auto* b = sim->observer().block(hash);
    for (const auto& tx : b->transactions) {
      if (tx.sender == addr("device")) CHECK(b->header.timestamp <= 60);
    }
  }

  SUBCASE("duplicates and nonce gaps") {
    auto& n = sim->node(2);
    auto& replica = *sim->node(1).replica;
    auto first = n.handle->node->pending_nonce(n.account.address);
    ledger::Transaction tx;
    tx.sender = addr("admin");
    tx.nonce = replica.pending_nonce(addr("admin"));
    tx.kind = ledger::ContractCall{contract::method::apply_update, {}};
    tx.gas_limit = 50;
    tx.gas_price = 1;
    const auto& keys = sim->node(0).account.keys;
    tx.signature = sim->scheme().sign(keys.secret, ledger::signing_preimage(tx));
    CHECK(replica.admit(tx));
    CHECK(replica.admit(tx).error() == client::DropReason::Duplicate);
    tx.nonce += 2;
    tx.signature = sim->scheme().sign(keys.secret, ledger::signing_preimage(tx));
    CHECK(replica.admit(tx).error() == client::DropReason::BadNonce);
    (void)first;
  }
}

TEST_CASE("customer without funds is dropped at admission") {
  auto c = minimal();
  c.nodes[2].balance = 0;
  c.nodes[2].customer.max_submits = 3;
  c.run.max_blocks = 5;
  auto sim = start(c);
  run_until(*sim, {});
  CHECK(sim->node(2).drops == 4);
  for (const auto& rec : sim->records()) CHECK(rec.detail == "InsufficientFunds");
  CHECK(sealed_by(*sim, addr("device")).empty());
}

TEST_CASE("firmware update after rejection") {
  auto c = minimal();
  c.nodes.push_back(node("repo", NodeKind::UpdateRepository));
  c.nodes[0].migrations.push_back({100, 2, "repo://firmware/v2", 10});
  c.nodes[2].customer.max_submits = 30;
  c.latency.links.push_back({"device", "repo", 3});
  c.run.max_blocks = 40;
  auto sim = start(c);
  run_until(*sim, {});

  auto txs = sealed_by(*sim, addr("device"));
  bool updated = false, first_after_update = true, saw_reject = false;
  for (const auto& [tx, r] : txs) {
    if (is_call(tx, contract::method::apply_update)) {
      CHECK(r.success());
      updated = true;
      continue;
    }
    if (!is_call(tx, contract::method::submit_data)) continue;
    if (!updated && !r.success()) {
      saw_reject = true;
      CHECK(*r.revert == contract::RevertReason::OutdatedVersion);
      REQUIRE(r.events.size() == 1);
      CHECK(std::get<contract::UpdateRequired>(r.events[0]).url == "repo://firmware/v2");
    }
    if (updated && first_after_update) {
      CHECK(r.success());
      first_after_update = false;
    }
  }
  CHECK(saw_reject);
  CHECK(updated);
  CHECK_FALSE(first_after_update);
  std::vector<std::string> kinds;
  for (const auto& rec : sim->records()) kinds.push_back(rec.event);
  CHECK(kinds == std::vector<std::string>{"BeginDownload", "FinishDownload"});
  CHECK(sim->records()[1].tick - sim->records()[0].tick == 6);
  CHECK(sim->observer().state().contract.device(addr("device"))->firmware_version == 2);
}

TEST_CASE("proof of stake") {
  auto c = minimal();
  c.consensus.mode = consensus::Mode::PoS;
  c.nodes[1].stake = 10;
  c.run.max_blocks = 25;
  SUBCASE("a single staked miner produces every interval") {
    auto sim = start(c);
    run_until(*sim, {.tick = 250});
    CHECK(sim->observer().height() == 25);
    CHECK(sim->stats().not_selected == 0);
  }
  SUBCASE("several validators share the chain") {
    auto second = node("miner2", NodeKind::EdgeServer, 1000);
    second.stake = 30;
    c.nodes.push_back(second);
    auto sim = start(c, 3);
    run_until(*sim, {});
    CHECK(sim->observer().height() == 25);
    std::set<Address> producers;
    for (const auto& h : sim->observer().path()) producers.insert(sim->observer().block(h)->header.producer);
    CHECK(producers.size() == 3);  // genesis zero address plus both miners
    CHECK(sim->node(1).replica->tip() == sim->node(3).replica->tip());
  }
}

TEST_CASE("conservation holds at every height of a 200-block run") {
  for (auto mode : {consensus::Mode::PoW, consensus::Mode::PoS}) {
    auto c = minimal();
    c.consensus.mode = mode;
    c.nodes[1].stake = 5;
    c.contract.epoch_mint = 7;
    c.nodes[2].customer.max_submits = 0;
    c.nodes.push_back(customer("device2", 5000, 3, 0));
    c.run.max_blocks = 200;
    auto sim = start(c);
    run_until(*sim, {});
    const auto& r = sim->observer();
    REQUIRE(r.height() == 200);
    auto chain = r.best_chain();
    auto state = sim->genesis();
    for (std::size_t h = 1; h < chain.size(); ++h) {
      state = contract::apply_block(state, chain[h], sim->context().params).value().state;
      CHECK(contract::circulating_supply(state) ==
            state.genesis_supply + 50 * Amount(h) + 7 * Amount(state.contract.epochs_distributed));
    }
    CHECK(state.contract.epochs_distributed == 10);
    CHECK(contract::world_digest(state) == contract::world_digest(r.state()));
  }
}

TEST_CASE("partitioned miners diverge and converge after healing") {
  SimConfig c;
  c.nodes = {node("admin", NodeKind::Admin, 100000), node("east", NodeKind::EdgeServer, 1000),
             node("west", NodeKind::EdgeServer, 1000), customer("device", 10000, 5, 0)};
  c.latency.partitions.push_back({45, 125, {{"east", "device", "admin"}, {"west"}}});
  auto sim = start(c);
  const auto& east = *sim->node(1).replica;
  const auto& west = *sim->node(2).replica;

  run_until(*sim, {.tick = 124});
  CHECK(east.tip() != west.tip());
  const auto healed_at = east.height();

  run_until(*sim, {.height = healed_at + 2});
  run_until(*sim, {.tick = sim->now() + 5});
  CHECK(east.tip() == west.tip());
  CHECK(east.height() == west.height());
  CHECK(west.invalid_blocks() == 0);
  // Transactions that only made it onto the losing branch were not lost.
  auto sealed = sealed_by(*sim, addr("device"));
  for (std::size_t i = 0; i < sealed.size(); ++i) CHECK(sealed[i].first.nonce == i);
}
