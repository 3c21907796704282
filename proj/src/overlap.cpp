#include "hbc/overlap.hpp"

#include <cmath>

namespace hbc {

EdgeOverlap edge_overlap(const CanonicalMps& a0, const CanonicalMps& a1,
                         const EdgeOptions& opts) {
  if (a0.phys_dim() != a1.phys_dim())
    throw DimensionError("edge_overlap: physical dimensions differ");
  TransferMap mixed(a0.tensor(), a1.tensor());
  SpectralResult lead = leading_eigenpair(mixed, opts.eigs);
  const double rel_gap = lead.gap / std::max(std::abs(lead.eta), 1e-300);
  if (rel_gap < opts.min_rel_gap)
    throw NotCloseError(
        "edge_overlap: (nearly) modulus-degenerate mixed transfer map, "
        "relative gap " +
        std::to_string(rel_gap));
  EdgeOverlap out;
  out.eta = lead.eta;
  out.v = std::move(lead.vec);
  out.gap = lead.gap;
  return out;
}

double edge_fidelity(const EdgeOverlap& e) { return std::abs(e.eta); }

EdgeOverlap OverlapCache::get(int p0, int p1) {
  if (p0 == p1) {
    // Self edge: eta = 1, v = 1/sqrt(D) by the right-canonical condition.
    const CanonicalMps& s = states_(p0);
    EdgeOverlap out;
    out.eta = 1.0;
    const int dim = s.bond_dim();
    out.v = Matrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim));
    out.gap = s.gap();
    out.edge = {p0, p1};
    return out;
  }
  const int lo = std::min(p0, p1), hi = std::max(p0, p1);
  EdgeOverlap fwd = canonical_get(lo, hi);
  if (p0 == lo) {
    fwd.edge = {p0, p1};
    return fwd;
  }
  EdgeOverlap rev;
  rev.eta = std::conj(fwd.eta);
  rev.v = fwd.v.adjoint();
  rev.gap = fwd.gap;
  rev.edge = {p0, p1};
  return rev;
}

EdgeOverlap OverlapCache::canonical_get(int lo, int hi) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
      static_cast<std::uint32_t>(hi);
  Shard& shard = shards_[key % kShards];
  std::lock_guard<std::mutex> guard(shard.mutex);
  auto it = shard.map.find(key);
  if (it != shard.map.end()) return it->second;
  EdgeOverlap e = edge_overlap(states_(lo), states_(hi), opts_);
  e.edge = {lo, hi};
  shard.min_rel_gap =
      std::min(shard.min_rel_gap, e.gap / std::max(std::abs(e.eta), 1e-300));
  shard.map.emplace(key, e);
  return e;
}

double OverlapCache::min_rel_gap() const {
  double m = 2.0;
  for (auto& shard : shards_) {
    std::lock_guard<std::mutex> guard(shard.mutex);
    m = std::min(m, shard.min_rel_gap);
  }
  return m;
}

std::size_t OverlapCache::edges_computed() const {
  std::size_t n = 0;
  for (auto& shard : shards_) {
    std::lock_guard<std::mutex> guard(shard.mutex);
    n += shard.map.size();
  }
  return n;
}

}  // namespace hbc
