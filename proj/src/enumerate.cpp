#include "selmer/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

namespace selmer {

namespace {

// Depth-first search over totally isotropic subspaces of a nondegenerate
// space. A subspace in echelon form is reached from the span of its rows
// minus the first one, so every node is visited once; children prepend a
// vector whose pivot lies below the current minimum pivot.
class Search {
public:
  Search(const BilinearSpace &q, std::function<void(const std::vector<std::uint64_t> &)> emit)
      : q_(q), target_(q.dim() / 2), emit_(std::move(emit)) {
    if (q.canonical_bits())
      iso_functional_ = q.apply(q.canonical_bits());
  }

  void run() {
    std::vector<std::uint64_t> rows;
    visit(rows, static_cast<int>(q_.dim()));
  }

private:
  void visit(std::vector<std::uint64_t> &rows, int min_pivot) {
    if (rows.size() == target_) {
      emit_(rows);
      return;
    }
    // Vectors orthogonal to S and isotropic, reduced modulo S.
    std::vector<std::uint64_t> constraints;
    for (auto r : rows)
      constraints.push_back(q_.apply(r));
    if (iso_functional_)
      constraints.push_back(iso_functional_);
    auto y = Subspace::from_bits(q_.dim(), constraints).annihilator();
    auto s = Subspace::from_echelon(q_.dim(), rows);
    std::vector<std::uint64_t> x;
    for (auto r : y.rows())
      x.push_back(s.reduce(r));
    f2::rref(x);

    std::size_t below = 0;
    for (auto r : x)
      if (f2::lowest(r) < min_pivot)
        ++below;
    if (rows.size() + below < target_)
      return;

    for (std::size_t i = 0; i < x.size(); ++i) {
      const int pivot = f2::lowest(x[i]);
      if (pivot >= min_pivot)
        break;
      const std::size_t tail = x.size() - i - 1;
      for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << tail); ++combo) {
        std::uint64_t v = x[i];
        for (std::size_t j = 0; j < tail; ++j)
          if ((combo >> j) & 1U)
            v ^= x[i + 1 + j];
        rows.insert(rows.begin(), v);
        visit(rows, pivot);
        rows.erase(rows.begin());
      }
    }
  }

  const BilinearSpace &q_;
  std::size_t target_;
  std::uint64_t iso_functional_ = 0;
  std::function<void(const std::vector<std::uint64_t> &)> emit_;
};

} // namespace

void for_each_mti(const BilinearSpace &space, const Subspace &containing,
                  const std::function<void(const Subspace &)> &visit, std::size_t cap) {
  if (space.dim() > cap)
    throw CapExceeded("enumeration: space dimension " + std::to_string(space.dim()) +
                      " exceeds the cap " + std::to_string(cap));
  if (containing.ambient_dim() != space.dim())
    throw std::invalid_argument("enumeration: containing subspace has wrong dimension");
  if (!space.is_totally_isotropic(containing))
    throw std::invalid_argument("enumeration: containing subspace is not totally isotropic");

  // MTIs containing T correspond to MTIs of the quotient T^perp / T.
  const auto perp = space.orthogonal(containing);
  std::vector<std::uint64_t> lift;
  {
    Subspace acc = containing;
    for (auto r : perp.rows()) {
      if (acc.contains_bits(r))
        continue;
      lift.push_back(r);
      acc = sum(acc, Subspace::from_bits(space.dim(), {r}));
    }
  }
  std::vector<std::uint64_t> qgram(lift.size());
  for (std::size_t i = 0; i < lift.size(); ++i)
    for (std::size_t j = 0; j < lift.size(); ++j)
      if (space.eval_bits(lift[i], lift[j]))
        qgram[i] |= std::uint64_t{1} << j;
  const BilinearSpace quotient(lift.size(), std::move(qgram));

  Search search(quotient, [&](const std::vector<std::uint64_t> &rows) {
    std::vector<std::uint64_t> full = containing.rows();
    for (auto r : rows) {
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < lift.size(); ++i)
        if ((r >> i) & 1U)
          v ^= lift[i];
      full.push_back(v);
    }
    visit(Subspace::from_bits(space.dim(), std::move(full)));
  });
  search.run();
}

std::vector<Subspace> enumerate_mti(const BilinearSpace &space, const Subspace &containing,
                                    std::size_t cap) {
  std::vector<Subspace> out;
  for_each_mti(space, containing, [&](const Subspace &s) { out.push_back(s); }, cap);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_mti(const BilinearSpace &space, const Subspace &containing,
                        std::size_t cap) {
  std::uint64_t n = 0;
  for_each_mti(space, containing, [&](const Subspace &) { ++n; }, cap);
  return n;
}

std::size_t isotropy_rank(const BilinearSpace &space, const Subspace &s) {
  if (!space.split())
    throw std::invalid_argument("isotropy_rank: space has no V+W split");
  if (s.ambient_dim() != space.dim())
    throw std::invalid_argument("isotropy_rank: dimension mismatch");
  const std::uint64_t right = ~f2::mask(*space.split());
  std::vector<std::uint64_t> projected;
  for (auto r : s.rows())
    projected.push_back(r & right);
  return s.dim() - f2::rank(std::move(projected));
}

RankHistogram rank_histogram(const BilinearSpace &space, const Subspace &containing,
                             std::size_t cap) {
  if (!space.split())
    throw std::invalid_argument("rank_histogram: space has no V+W split");
  RankHistogram h;
  for_each_mti(space, containing, [&](const Subspace &s) { ++h[isotropy_rank(space, s)]; },
               cap);
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

MtiSampler::MtiSampler(const BilinearSpace &space, const Subspace &containing,
                       std::uint64_t seed, std::size_t cap)
    : all_(enumerate_mti(space, containing, cap)), seed_(seed) {
  if (all_.empty())
    throw std::logic_error("MtiSampler: no maximal totally isotropic subspaces");
}

std::size_t MtiSampler::index(std::uint64_t counter) const {
  std::mt19937_64 rng(splitmix64(seed_ ^ splitmix64(counter)));
  const std::uint64_t n = all_.size();
  // Rejection keeps the index exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

const Subspace &MtiSampler::draw(std::uint64_t counter) const { return all_[index(counter)]; }

Subspace sample_uniform_mti(const BilinearSpace &space, const Subspace &containing,
                            std::uint64_t seed, std::size_t cap) {
  return MtiSampler(space, containing, seed, cap).draw(0);
}

} // namespace selmer
