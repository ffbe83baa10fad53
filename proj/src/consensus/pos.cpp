#include "edgechain/consensus/pos.hpp"

#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "edgechain/ledger/hash.hpp"

namespace edgechain::consensus {

namespace mp = boost::multiprecision;

Result<Address, PosError> pos_select(const StakeSet& stakes, std::uint64_t seed, std::uint64_t epoch) {
  std::set<Address> seen;
  mp::uint256_t total = 0;
  for (const auto& s : stakes) {
    if (!seen.insert(s.address).second) return PosError::DuplicateStaker;
    total += mp::uint256_t(s.stake) * (mp::uint256_t(s.age) + 1);
  }
  if (total == 0) return PosError::EmptyStakeSet;

  auto draw_input = Encoder{}.u64(seed).u64(epoch).bytes();
  auto draw = sha256(draw_input);
  mp::uint256_t r;
  mp::import_bits(r, draw.bytes.begin(), draw.bytes.end());
  r %= total;

  mp::uint256_t cumulative = 0;
  for (const auto& s : stakes) {
    cumulative += mp::uint256_t(s.stake) * (mp::uint256_t(s.age) + 1);
    if (cumulative > r) return s.address;
  }
  // Unreachable: the final cumulative weight equals total > r.
  return PosError::EmptyStakeSet;
}

StakeSet stake_set_after(const StakeSet& genesis, std::span<const ledger::Block> prefix) {
  std::uint64_t tip_height = prefix.empty() ? 0 : prefix.back().header.height;
  std::map<Address, std::uint64_t> last_produced;
  for (const auto& b : prefix) {
    if (b.header.height > 0) last_produced[b.header.producer] = b.header.height;
  }
  StakeSet out = genesis;
  for (auto& s : out) {
    auto it = last_produced.find(s.address);
    s.age = it == last_produced.end() ? s.age + tip_height : tip_height - it->second;
  }
  return out;
}

}  // namespace edgechain::consensus
