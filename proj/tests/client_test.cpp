#include <doctest.h>

#include <random>

#include "edgechain/client/client.hpp"
#include "edgechain/netsim/sim.hpp"
#include "support.hpp"

using namespace edgechain;
using namespace edgechain::client;

namespace {

netsim::SimConfig quiet_scenario() {
  netsim::SimConfig c;
  netsim::NodeSpec admin{.name = "admin", .kind = netsim::NodeKind::Admin, .balance = 100000};
  netsim::NodeSpec miner{.name = "miner", .kind = netsim::NodeKind::EdgeServer, .balance = 1000};
  netsim::NodeSpec poor{.name = "poor", .kind = netsim::NodeKind::UpdateRepository, .balance = 0};
  c.nodes = {admin, miner, poor};
  c.contract.update_url = "repo://fw/v1";
  return c;
}

std::unique_ptr<netsim::Sim> start() {
  auto sim = netsim::init_sim(quiet_scenario(), 1);
  REQUIRE(sim);
  return std::move(sim).value();
}

}  // namespace

TEST_CASE("create_account") {
  ledger::MockSignatureScheme scheme;
  auto a = create_account(scheme, as_bytes("a")).value();
  CHECK(a.address == testing::address_from_hex("bf5d3affb73efd2ec6c36ad3112dd933efed63c4"));
  CHECK(create_account(scheme, as_bytes("a")).value().address == a.address);
  CHECK(create_account(scheme, as_bytes("b")).value().address != a.address);
  CHECK(scheme.knows(a.address));
  CHECK(create_account(scheme, {}).error() == AccountError::EmptySeed);
}

TEST_CASE("submit and get_receipt") {
  auto sim = start();
  auto& admin = *sim->node(0).handle;
  netsim::run_until(*sim, {.height = 1});  // deployment sealed

  auto nonce = admin.nonce_cache;
  auto t1 = submit(admin, ledger::PermissionUpdate{netsim::address_for("x"), true}, {}, 100);
  auto t2 = submit(admin, ledger::PermissionUpdate{netsim::address_for("y"), true}, {}, 100);
  REQUIRE(t1);
  REQUIRE(t2);
  CHECK(admin.nonce_cache == nonce + 2);
  CHECK(std::holds_alternative<Pending>(get_receipt(admin, t1.value())));
  CHECK(std::holds_alternative<Unknown>(get_receipt(admin, testing::digest_from_hex(std::string(64, 'e')))));

  netsim::run_until(*sim, {.height = 2});
  auto r1 = get_receipt(admin, t1.value());
  REQUIRE(std::holds_alternative<contract::Receipt>(r1));
  CHECK(std::get<contract::Receipt>(r1).success());
  CHECK(std::get<contract::Receipt>(r1).tx_hash == t1.value());
  CHECK(std::holds_alternative<contract::Receipt>(get_receipt(admin, t2.value())));
}

TEST_CASE("unfunded sender") {
  auto sim = start();
  auto& poor = *sim->node(2).handle;
  auto r = submit(poor, ledger::ContractCall{contract::method::register_device, testing::u32_args(1)}, {}, 100);
  CHECK(r.error() == DropReason::InsufficientFunds);
  CHECK(poor.nonce_cache == 0);
}

TEST_CASE("nonce cache repair") {
  auto sim = start();
  auto& admin = *sim->node(0).handle;
  netsim::run_until(*sim, {.height = 1});
  admin.nonce_cache = 0;  // stale after the deployment
  REQUIRE(submit(admin, ledger::PermissionUpdate{netsim::address_for("x"), true}, {}, 100));
  CHECK(admin.nonce_cache == 2);
  admin.nonce_cache = 9;  // ahead of the node
  REQUIRE(submit(admin, ledger::PermissionUpdate{netsim::address_for("y"), true}, {}, 100));
  CHECK(admin.nonce_cache == 3);
}

TEST_CASE("query") {
  auto sim = start();
  auto& admin = *sim->node(0).handle;
  auto miner = netsim::address_for("miner");
  CHECK(std::get<Amount>(query(admin, Balance{miner}).value()) == 1000);
  CHECK(std::get<ContractInfo>(query(admin, ContractMeta{}).value()) == ContractInfo{});
  netsim::run_until(*sim, {.height = 1});
  CHECK(std::get<ContractInfo>(query(admin, ContractMeta{}).value()) == ContractInfo{1, "repo://fw/v1", 10, true});
  CHECK(query(admin, Device{miner}).error() == QueryError::UnknownAddress);
  CHECK(query(admin, Quota{miner}).error() == QueryError::UnknownAddress);
  CHECK(std::get<std::vector<contract::ActivityEntry>>(query(admin, Activity{miner}).value()).empty());
}

TEST_CASE("property: queries have no side effects and sealed receipts stay visible") {
  netsim::SimConfig c = quiet_scenario();
  netsim::NodeSpec dev{.name = "dev", .kind = netsim::NodeKind::Customer, .balance = 5000};
  dev.customer.submit_period = 4;
  c.nodes.push_back(dev);
  auto sim = netsim::init_sim(c, 2).value();
  auto& h = *sim->node(3).handle;
  const std::vector<Query> menu{Balance{h.account.address}, Device{h.account.address}, Activity{h.account.address},
                                ContractMeta{}, Quota{h.account.address}};
  std::mt19937_64 rng(11);
  std::vector<Digest256> seen;
  for (int round = 0; round < 60; ++round) {
    netsim::run_until(*sim, {.tick = sim->now() + 1 + rng() % 7});
    const auto& r = *sim->node(1).replica;
    auto digest = contract::world_digest(r.state());
    auto tip = r.tip();
    for (int q = 0; q < 10; ++q) (void)query(h, menu[rng() % menu.size()]);
    CHECK(contract::world_digest(r.state()) == digest);
    CHECK(r.tip() == tip);

    for (const auto& t : sim->node(3).customer.outstanding) seen.push_back(t.hash);
    for (const auto& hash : seen) {
      auto status = get_receipt(h, hash);
      if (r.status(hash).index() == 0) CHECK(std::holds_alternative<contract::Receipt>(status));
    }
  }
  std::size_t sealed = 0;
  for (const auto& hash : seen) sealed += std::holds_alternative<contract::Receipt>(get_receipt(h, hash));
  CHECK(sealed > 50);
  for (const auto& hash : seen) CHECK_FALSE(std::holds_alternative<Unknown>(get_receipt(h, hash)));
}
