#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace bowtie::detail {

/// Reduced ordered binary decision diagram over coherent (negation-free)
/// structure functions. Node children always have smaller indices than the
/// node itself, so probabilities can be evaluated in one forward pass.
class Bdd {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  Bdd();

  Ref var(std::int32_t index);
  Ref apply_and(Ref a, Ref b);
  Ref apply_or(Ref a, Ref b);

  /// At-least-k-of-n over arbitrary sub-functions (not just variables).
  Ref at_least(int k, std::span<const Ref> items);

  /// P(root = 1) given independent per-variable probabilities q.
  double evaluate(Ref root, std::span<const double> q) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::int32_t var;
    Ref lo;
    Ref hi;
  };

  Ref make(std::int32_t var, Ref lo, Ref hi);
  Ref apply(bool conjunction, Ref a, Ref b);
  Ref at_least_rec(std::span<const Ref> items, std::size_t i, int need,
                   std::vector<std::vector<Ref>>& memo);

  static std::uint64_t key3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // 21 bits per field; plenty for the model sizes this engine targets.
    return (a << 42) | (b << 21) | c;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Ref> unique_;
  std::unordered_map<std::uint64_t, Ref> and_cache_;
  std::unordered_map<std::uint64_t, Ref> or_cache_;
};

}  // namespace bowtie::detail
