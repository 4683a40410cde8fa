#include "bdd.hpp"

#include <cassert>
#include <limits>

namespace bowtie::detail {

namespace {
constexpr std::int32_t kTerminalVar = std::numeric_limits<std::int32_t>::max();
}

Bdd::Bdd() {
  nodes_.push_back(Node{kTerminalVar, kFalse, kFalse});  // 0
  nodes_.push_back(Node{kTerminalVar, kTrue, kTrue});    // 1
}

Bdd::Ref Bdd::make(std::int32_t var, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  const std::uint64_t key = key3(static_cast<std::uint32_t>(var) + 1, lo, hi);
  auto [it, inserted] = unique_.try_emplace(key, 0);
  if (!inserted) return it->second;
  assert(lo < nodes_.size() && hi < nodes_.size());
  nodes_.push_back(Node{var, lo, hi});
  it->second = static_cast<Ref>(nodes_.size() - 1);
  return it->second;
}

Bdd::Ref Bdd::var(std::int32_t index) { return make(index, kFalse, kTrue); }

Bdd::Ref Bdd::apply(bool conjunction, Ref a, Ref b) {
  if (a == b) return a;
  if (conjunction) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
  } else {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
  }
  if (a > b) std::swap(a, b);  // both operations are commutative
  auto& cache = conjunction ? and_cache_ : or_cache_;
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const Node na = nodes_[a];
  const Node nb = nodes_[b];
  const std::int32_t v = na.var < nb.var ? na.var : nb.var;
  const Ref a_lo = na.var == v ? na.lo : a;
  const Ref a_hi = na.var == v ? na.hi : a;
  const Ref b_lo = nb.var == v ? nb.lo : b;
  const Ref b_hi = nb.var == v ? nb.hi : b;
  const Ref lo = apply(conjunction, a_lo, b_lo);
  const Ref hi = apply(conjunction, a_hi, b_hi);
  const Ref result = make(v, lo, hi);
  cache.emplace(key, result);
  return result;
}

Bdd::Ref Bdd::apply_and(Ref a, Ref b) { return apply(true, a, b); }
Bdd::Ref Bdd::apply_or(Ref a, Ref b) { return apply(false, a, b); }

Bdd::Ref Bdd::at_least_rec(std::span<const Ref> items, std::size_t i, int need,
                           std::vector<std::vector<Ref>>& memo) {
  if (need <= 0) return kTrue;
  if (items.size() - i < static_cast<std::size_t>(need)) return kFalse;
  Ref& slot = memo[i][static_cast<std::size_t>(need)];
  if (slot != std::numeric_limits<Ref>::max()) return slot;
  const Ref with = apply_and(items[i], at_least_rec(items, i + 1, need - 1, memo));
  const Ref without = at_least_rec(items, i + 1, need, memo);
  slot = apply_or(with, without);
  return slot;
}

Bdd::Ref Bdd::at_least(int k, std::span<const Ref> items) {
  std::vector<std::vector<Ref>> memo(
      items.size() + 1,
      std::vector<Ref>(static_cast<std::size_t>(k) + 1,
                       std::numeric_limits<Ref>::max()));
  return at_least_rec(items, 0, k, memo);
}

double Bdd::evaluate(Ref root, std::span<const double> q) const {
  if (root == kFalse) return 0.0;
  if (root == kTrue) return 1.0;
  std::vector<double> prob(static_cast<std::size_t>(root) + 1);
  prob[kFalse] = 0.0;
  prob[kTrue] = 1.0;
  for (Ref i = 2; i <= root; ++i) {
    const Node& n = nodes_[i];
    const double qi = q[static_cast<std::size_t>(n.var)];
    prob[i] = qi * prob[n.hi] + (1.0 - qi) * prob[n.lo];
  }
  return prob[root];
}

}  // namespace bowtie::detail
