#include "edgechain/consensus/finality.hpp"

namespace edgechain::consensus {

Result<Finality, FinalityError> finality_check(std::uint64_t votes, std::uint64_t nodes) {
  if (nodes == 0) return FinalityError::NoNodes;
  if (votes > nodes) return FinalityError::VotesExceedNodes;
  // votes > 2n/3  <=>  3 * votes > 2 * n
  unsigned __int128 lhs = static_cast<unsigned __int128>(votes) * 3;
  unsigned __int128 rhs = static_cast<unsigned __int128>(nodes) * 2;
  return lhs > rhs ? Finality::Final : Finality::NotFinal;
}

}  // namespace edgechain::consensus
