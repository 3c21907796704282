#pragma once

#include <array>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "hbc/mps.hpp"
#include "hbc/transfer.hpp"

namespace hbc {

/// Leading eigendata of the mixed transfer map on an ordered edge
/// (p0, p1) of the discretized parameter space.  The reverse edge is
/// represented implicitly by the conjugate transpose.
struct EdgeOverlap {
  Complex eta;          // leading eigenvalue
  Matrix v;             // D0 x D1 eigenvector, |.|_F = 1
  double gap = 0.0;     // modulus gap to the subleading eigenvalue
  std::pair<int, int> edge{-1, -1};
};

struct EdgeOptions {
  EigsOptions eigs;
  double min_rel_gap = 1e-8;  // closeness assertion threshold
};

/// Leading eigenpair of the mixed transfer map between two canonical MPS.
/// Throws NotCloseError when the leading modulus is (nearly) degenerate:
/// the states may lie in different phases.
EdgeOverlap edge_overlap(const CanonicalMps& a0, const CanonicalMps& a1,
                         const EdgeOptions& opts = {});

/// |eta| per site; equals 1 iff the states are gauge equivalent.
double edge_fidelity(const EdgeOverlap& e);

/// Memoized per-edge overlaps for a vertex-indexed family of states.
/// Each undirected edge is computed once in the canonical direction
/// (smaller vertex id first); queries in the reverse direction return
/// the conjugate transpose, enforcing V10 = V01+ exactly.  Safe for
/// concurrent lookup/insertion (lock-striped shards).
class OverlapCache {
 public:
  using StateProvider = std::function<const CanonicalMps&(int)>;

  explicit OverlapCache(StateProvider states, EdgeOptions opts = {})
      : states_(std::move(states)), opts_(opts) {}

  /// Overlap oriented p0 -> p1.
  EdgeOverlap get(int p0, int p1);

  const CanonicalMps& state(int p) const { return states_(p); }

  /// Smallest relative modulus gap seen across computed edges.
  double min_rel_gap() const;
  std::size_t edges_computed() const;

 private:
  static constexpr std::size_t kShards = 32;
  struct Shard {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, EdgeOverlap> map;
    double min_rel_gap = 2.0;
  };

  EdgeOverlap canonical_get(int lo, int hi);

  StateProvider states_;
  EdgeOptions opts_;
  mutable std::array<Shard, kShards> shards_;
};

}  // namespace hbc
