#pragma once

// Colorability of the subspace hypergraph of PG(n-1,q).
//
// exists_coloring is a complete backtracking search. Propagation keeps a
// per-subspace color tally: once every colored point of a subspace shares a
// color and exactly one point is left, that color is removed from the last
// point's domain (for q = 2, t = 2 this is the rule "two points of a line
// agree, so the third must differ"). Symmetry breaking only allows a branch
// to open the next unused color, which loses no solution up to renaming.
//
// local_search is a min-conflicts walk over the number of monochromatic
// subspaces with seeded restarts. brute_force_reference enumerates every
// assignment and serves as the test oracle.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pgchroma/coloring.hpp"
#include "pgchroma/error.hpp"
#include "pgchroma/pg.hpp"
#include "pgchroma/verify.hpp"

namespace pgchroma {

enum class VariableOrder { StaticCanonical, MaxDegreeFirst };

struct SearchConfig {
  bool symmetry_breaking = true;
  bool propagation = true;
  VariableOrder variable_order = VariableOrder::MaxDegreeFirst;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> time_limit_secs;
  std::uint64_t seed = 0;
  int restarts = 64;
  int threads = 1;
};

enum class SearchStatus { Sat, Unsat, Unknown };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Sat: return "SAT";
    case SearchStatus::Unsat: return "UNSAT";
    case SearchStatus::Unknown: return "Unknown";
  }
  return "?";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<Coloring> certificate;
  std::uint64_t nodes = 0;
  std::chrono::duration<double> elapsed{};
};

/// Subspaces of PG(n-1,q) as explicit point lists; only for search-sized spaces.
struct Hypergraph {
  SpacePtr space;
  int t = 2;
  int edge_size = 0;
  std::vector<std::uint32_t> edges;                    ///< flat, edge_size ids per edge
  std::vector<std::vector<std::uint32_t>> incident;    ///< point -> edges

  std::size_t edge_count() const noexcept { return edge_size == 0 ? 0 : edges.size() / static_cast<std::size_t>(edge_size); }
  const std::uint32_t* edge(std::size_t e) const noexcept { return edges.data() + e * static_cast<std::size_t>(edge_size); }
};

inline Hypergraph build_hypergraph(SpacePtr space, int t) {
  Hypergraph h;
  h.space = space;
  h.t = t;
  h.incident.resize(space->size());
  if (t > space->n()) return h;
  h.edge_size = static_cast<int>(point_count(t, space->q()));
  enumerate_subspaces(*space, t, [&](const Subspace& s) {
    const auto e = static_cast<std::uint32_t>(h.edge_count());
    for (PointId p : s.point_ids) {
      h.edges.push_back(p.idx);
      h.incident[p.idx].push_back(e);
    }
    return true;
  });
  return h;
}

inline std::string describe(const SearchConfig& c) {
  std::ostringstream s;
  s << "symmetry=" << (c.symmetry_breaking ? "on" : "off") << " propagation=" << (c.propagation ? "on" : "off")
    << " order=" << (c.variable_order == VariableOrder::MaxDegreeFirst ? "max-degree" : "canonical")
    << " node_limit=" << (c.node_limit ? std::to_string(*c.node_limit) : "none")
    << " time_limit=" << (c.time_limit_secs ? std::to_string(*c.time_limit_secs) : "none") << " seed=" << c.seed;
  return s.str();
}

namespace detail {

class Clock {
 public:
  explicit Clock(std::optional<double> limit) : start_(std::chrono::steady_clock::now()), limit_(limit) {}
  std::chrono::duration<double> elapsed() const { return std::chrono::steady_clock::now() - start_; }
  bool expired() const { return limit_ && elapsed().count() > *limit_; }

 private:
  std::chrono::steady_clock::time_point start_;
  std::optional<double> limit_;
};

class Backtracker {
 public:
  Backtracker(const Hypergraph& h, int k, const SearchConfig& config)
      : h_(h), k_(k), config_(config), clock_(config.time_limit_secs) {
    const std::size_t npts = h.space->size();
    const std::size_t nedges = h.edge_count();
    color_.assign(npts, -1);
    domain_.assign(npts, k >= 32 ? ~0U : ((1U << k) - 1));
    uncolored_.assign(nedges, h.edge_size);
    tally_.assign(nedges * static_cast<std::size_t>(k), 0);
    active_.assign(npts, 0);
  }

  SearchStatus run() {
    if (h_.edge_count() == 0) {
      std::fill(color_.begin(), color_.end(), 0);
      return SearchStatus::Sat;
    }
    const bool found = dfs();
    if (found) return SearchStatus::Sat;
    return aborted_ ? SearchStatus::Unknown : SearchStatus::Unsat;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::chrono::duration<double> elapsed() const { return clock_.elapsed(); }
  const std::vector<int>& colors() const noexcept { return color_; }

 private:
  struct Removal {
    std::uint32_t point;
    std::uint32_t bit;
  };

  int pick() const {
    int best = -1;
    int best_dom = 0;
    int best_active = 0;
    for (std::size_t p = 0; p < color_.size(); ++p) {
      if (color_[p] >= 0) continue;
      if (config_.variable_order == VariableOrder::StaticCanonical) return static_cast<int>(p);
      const int dom = std::popcount(domain_[p]);
      const int act = active_[p];
      if (best < 0 || dom < best_dom || (dom == best_dom && act > best_active)) {
        best = static_cast<int>(p);
        best_dom = dom;
        best_active = act;
      }
    }
    return best;
  }

  // Colors p; returns false on a monochromatic subspace or an emptied domain.
  bool assign(std::uint32_t p, int c) {
    color_[p] = c;
    bool ok = true;
    const int size = h_.edge_size;
    for (std::uint32_t e : h_.incident[p]) {
      auto& tally = tally_[static_cast<std::size_t>(e) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c)];
      ++tally;
      --uncolored_[e];
      if (uncolored_[e] == size - 1) {
        for (int i = 0; i < size; ++i) ++active_[h_.edge(e)[i]];
      }
      if (tally == size) ok = false;
      if (ok && config_.propagation && uncolored_[e] == 1 && tally == size - 1) {
        const std::uint32_t* pts = h_.edge(e);
        for (int i = 0; i < size; ++i) {
          const std::uint32_t u = pts[i];
          if (color_[u] >= 0) continue;
          if (domain_[u] & (1U << c)) {
            domain_[u] &= ~(1U << c);
            trail_.push_back({u, 1U << c});
            if (domain_[u] == 0) ok = false;
          }
        }
      }
    }
    return ok;
  }

  void unassign(std::uint32_t p, std::size_t trail_mark) {
    const int c = color_[p];
    const int size = h_.edge_size;
    for (std::uint32_t e : h_.incident[p]) {
      --tally_[static_cast<std::size_t>(e) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c)];
      if (uncolored_[e] == size - 1) {
        for (int i = 0; i < size; ++i) --active_[h_.edge(e)[i]];
      }
      ++uncolored_[e];
    }
    color_[p] = -1;
    while (trail_.size() > trail_mark) {
      domain_[trail_.back().point] |= trail_.back().bit;
      trail_.pop_back();
    }
  }

  bool dfs() {
    const int v = pick();
    if (v < 0) return true;
    const auto p = static_cast<std::uint32_t>(v);
    std::uint32_t allowed = domain_[p];
    if (config_.symmetry_breaking && max_used_ + 2 < 32) allowed &= (1U << (max_used_ + 2)) - 1;
    for (int c = 0; c < k_; ++c) {
      if (!(allowed & (1U << c))) continue;
      ++nodes_;
      if ((config_.node_limit && nodes_ > *config_.node_limit) || ((nodes_ & 1023U) == 0 && clock_.expired())) {
        aborted_ = true;
        return false;
      }
      const std::size_t mark = trail_.size();
      const int saved_max = max_used_;
      max_used_ = std::max(max_used_, c);
      if (assign(p, c) && dfs()) return true;
      unassign(p, mark);
      max_used_ = saved_max;
      if (aborted_) return false;
    }
    return false;
  }

  const Hypergraph& h_;
  int k_;
  SearchConfig config_;
  Clock clock_;
  std::vector<int> color_;
  std::vector<std::uint32_t> domain_;
  std::vector<int> uncolored_;
  std::vector<int> tally_;
  std::vector<int> active_;
  std::vector<Removal> trail_;
  int max_used_ = -1;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

inline Coloring to_coloring(SpacePtr space, int t, int k, const std::vector<int>& colors) {
  std::vector<Color> c(colors.size());
  std::transform(colors.begin(), colors.end(), c.begin(), [](int x) { return static_cast<Color>(x); });
  return Coloring(std::move(space), t, k, std::move(c));
}

inline void check_instance(const ProjectiveSpace& space, int t, int k) {
  if (t < 2) throw Error(ErrorKind::InvalidDimension, "t must be at least 2");
  if (t > space.n()) throw Error(ErrorKind::DimensionMismatch, "t exceeds n");
  if (k < 1 || k > 31) throw Error(ErrorKind::ParameterMismatch, "search supports 1 <= k <= 31");
}

// Every certificate leaves the search only after independent verification.
inline void certify(const Coloring& c) {
  if (!verify(c, {VerifyMethod::Stream, 1}).proper)
    throw Error(ErrorKind::CorruptCertificate, "search produced an improper coloring");
}

}  // namespace detail

inline SearchOutcome exists_coloring(const Hypergraph& h, int k, const SearchConfig& config = {}) {
  detail::check_instance(*h.space, h.t, k);
  detail::Backtracker bt(h, k, config);
  SearchOutcome out;
  out.status = bt.run();
  out.nodes = bt.nodes();
  out.elapsed = bt.elapsed();
  if (out.status == SearchStatus::Sat) {
    out.certificate = detail::to_coloring(h.space, h.t, k, bt.colors());
    detail::certify(*out.certificate);
  }
  return out;
}

inline SearchOutcome exists_coloring(SpacePtr space, int t, int k, const SearchConfig& config = {}) {
  detail::check_instance(*space, t, k);
  return exists_coloring(build_hypergraph(space, t), k, config);
}

/// Nonexistence record for an UNSAT (or budget-limited) run.
struct Attestation {
  int n = 0;
  int q = 0;
  int t = 0;
  int k = 0;
  SearchStatus status = SearchStatus::Unknown;
  std::string config;
  std::uint64_t nodes = 0;
  double elapsed_secs = 0;

  std::string text() const {
    std::ostringstream s;
    s << "attestation " << to_string(status) << '\n'
      << "instance n=" << n << " q=" << q << " t=" << t << " k=" << k << '\n'
      << "config " << config << '\n'
      << "nodes=" << nodes << '\n'
      << "elapsed_secs=" << elapsed_secs << '\n';
    return s.str();
  }
};

inline Attestation attest(const ProjectiveSpace& space, int t, int k, const SearchConfig& config,
                          const SearchOutcome& outcome) {
  return {space.n(), space.q(), t, k, outcome.status, describe(config), outcome.nodes, outcome.elapsed.count()};
}

struct ChiResult {
  bool exact = false;
  int lower = 1;  ///< chi >= lower, attested by UNSAT runs below it
  int upper = 0;  ///< chi <= upper when a certificate was found (0 otherwise)
  std::optional<Coloring> certificate;
  std::vector<Attestation> attestations;  ///< one per k tried, in order
};

/// Smallest k with a proper coloring, trying k = 1, 2, ... with exists_coloring.
/// On a budget-limited k the result is an interval; larger k are still tried
/// (up to n colors) to find an upper certificate.
inline ChiResult chi_exact(SpacePtr space, int t, const SearchConfig& config = {}) {
  const Hypergraph h = build_hypergraph(space, t);
  ChiResult r;
  bool unknown_seen = false;
  const int k_max = std::min(31, std::max(1, space->n()));
  for (int k = 1; k <= k_max; ++k) {
    SearchOutcome out = exists_coloring(h, k, config);
    r.attestations.push_back(attest(*space, t, k, config, out));
    if (out.status == SearchStatus::Sat) {
      r.upper = k;
      r.certificate = std::move(out.certificate);
      r.exact = !unknown_seen;
      return r;
    }
    if (out.status == SearchStatus::Unsat && !unknown_seen) r.lower = k + 1;
    if (out.status == SearchStatus::Unknown) unknown_seen = true;
  }
  return r;
}

namespace detail {

struct LocalRun {
  bool success = false;
  std::vector<int> colors;
  std::uint64_t moves = 0;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t restart) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One min-conflicts run from a random start. A move takes a uniformly random
// violated subspace, a uniformly random point on it, and recolors that point
// to the other color with the fewest resulting violations (lowest id on ties).
// The run ends after 50 * |points| moves without a new best.
inline LocalRun min_conflicts(const Hypergraph& h, int k, std::uint64_t seed, std::optional<std::uint64_t> move_cap,
                              const Clock& clock) {
  const std::size_t npts = h.space->size();
  const std::size_t nedges = h.edge_count();
  const int size = h.edge_size;
  std::mt19937_64 rng(seed);
  LocalRun run;
  run.colors.resize(npts);
  for (auto& c : run.colors) c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));

  std::vector<int> tally(nedges * static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> slot(nedges, -1);  // position in `violated`
  std::vector<std::uint32_t> violated;
  auto count = [&](std::size_t e, int c) -> int& { return tally[e * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)]; };
  auto mark = [&](std::uint32_t e, bool on) {
    if (on && slot[e] < 0) {
      slot[e] = static_cast<std::int64_t>(violated.size());
      violated.push_back(e);
    } else if (!on && slot[e] >= 0) {
      const std::uint32_t last = violated.back();
      violated[static_cast<std::size_t>(slot[e])] = last;
      slot[last] = slot[e];
      violated.pop_back();
      slot[e] = -1;
    }
  };
  for (std::size_t e = 0; e < nedges; ++e) {
    const std::uint32_t* pts = h.edge(e);
    for (int i = 0; i < size; ++i) ++count(e, run.colors[pts[i]]);
    for (int c = 0; c < k; ++c)
      if (count(e, c) == size) mark(static_cast<std::uint32_t>(e), true);
  }

  std::size_t best = violated.size();
  std::uint64_t stagnant = 0;
  const std::uint64_t patience = 50 * static_cast<std::uint64_t>(npts);
  std::vector<int> delta(static_cast<std::size_t>(k));
  while (!violated.empty()) {
    if (stagnant >= patience) return run;
    if (move_cap && run.moves >= *move_cap) return run;
    if ((run.moves & 4095U) == 0 && clock.expired()) return run;
    const std::uint32_t e = violated[rng() % violated.size()];
    const std::uint32_t p = h.edge(e)[rng() % static_cast<std::uint64_t>(size)];
    const int cur = run.colors[p];
    std::fill(delta.begin(), delta.end(), 0);
    for (std::uint32_t f : h.incident[p]) {
      if (count(f, cur) == size) {
        for (int c = 0; c < k; ++c) delta[static_cast<std::size_t>(c)] -= 1;
      }
      for (int c = 0; c < k; ++c)
        if (c != cur && count(f, c) == size - 1) delta[static_cast<std::size_t>(c)] += 1;
    }
    int choice = -1;
    for (int c = 0; c < k; ++c) {
      if (c == cur) continue;
      if (choice < 0 || delta[static_cast<std::size_t>(c)] < delta[static_cast<std::size_t>(choice)]) choice = c;
    }
    if (choice < 0) return run;  // k == 1
    for (std::uint32_t f : h.incident[p]) {
      --count(f, cur);
      ++count(f, choice);
      if (count(f, choice) == size) mark(f, true);
      else if (count(f, cur) == size - 1) mark(f, false);
    }
    run.colors[p] = choice;
    ++run.moves;
    if (violated.size() < best) {
      best = violated.size();
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }
  run.success = true;
  return run;
}

}  // namespace detail

/// Min-conflicts with restarts. Restart i is seeded from (seed, i) and runs
/// independently, so `threads` only changes wall time: the reported result is
/// always the lowest-numbered successful restart.
inline SearchOutcome local_search(const Hypergraph& h, int k, const SearchConfig& config = {}) {
  detail::check_instance(*h.space, h.t, k);
  detail::Clock clock(config.time_limit_secs);
  SearchOutcome out;
  const int threads = std::max(1, config.threads);
  for (int first = 0; first < config.restarts; first += threads) {
    const int wave = std::min(threads, config.restarts - first);
    std::vector<detail::LocalRun> runs(static_cast<std::size_t>(wave));
    auto job = [&](int i) {
      runs[static_cast<std::size_t>(i)] = detail::min_conflicts(
          h, k, detail::mix_seed(config.seed, static_cast<std::uint64_t>(first + i)), config.node_limit, clock);
    };
    if (wave == 1) {
      job(0);
    } else {
      std::vector<std::jthread> pool;
      for (int i = 0; i < wave; ++i) pool.emplace_back(job, i);
    }
    for (const auto& r : runs) {
      out.nodes += r.moves;
      if (r.success) {
        out.status = SearchStatus::Sat;
        out.certificate = detail::to_coloring(h.space, h.t, k, r.colors);
        detail::certify(*out.certificate);
        out.elapsed = clock.elapsed();
        return out;
      }
    }
    if (clock.expired()) break;
  }
  out.status = SearchStatus::Unknown;
  out.elapsed = clock.elapsed();
  return out;
}

inline SearchOutcome local_search(SpacePtr space, int t, int k, const SearchConfig& config = {}) {
  detail::check_instance(*space, t, k);
  return local_search(build_hypergraph(space, t), k, config);
}

/// Plain enumeration of all k^|points| assignments. Ground truth for tiny spaces.
inline SearchStatus brute_force_reference(SpacePtr space, int t, int k) {
  detail::check_instance(*space, t, k);
  const std::size_t npts = space->size();
  double total = 1;
  for (std::size_t i = 0; i < npts; ++i) total *= k;
  if (total > 1e8) throw Error(ErrorKind::TooLarge, "k^|points| exceeds 1e8");
  const Hypergraph h = build_hypergraph(space, t);
  std::vector<int> a(npts, 0);
  while (true) {
    bool proper = true;
    for (std::size_t e = 0; e < h.edge_count() && proper; ++e) {
      const std::uint32_t* pts = h.edge(e);
      bool mono = true;
      for (int i = 1; i < h.edge_size && mono; ++i) mono = a[pts[i]] == a[pts[0]];
      proper = !mono;
    }
    if (proper) return SearchStatus::Sat;
    std::size_t i = 0;
    while (i < npts && ++a[i] == k) a[i++] = 0;
    if (i == npts) return SearchStatus::Unsat;
  }
}

}  // namespace pgchroma
