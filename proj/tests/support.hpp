#pragma once

// Reference implementations and randomized property checks shared by the unit
// tests and the acceptance runner. The oracles avoid the library's fast paths:
// subspaces come from spans of point tuples, properness from a scan of those.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pgchroma/pgchroma.hpp"

namespace pgtest {

using namespace pgchroma;

// ---------------------------------------------------------------- oracles

inline std::uint64_t code_of(const ProjectiveSpace& s, const std::vector<int>& v) {
  std::uint64_t c = 0;
  for (int x : v) c = c * static_cast<std::uint64_t>(s.q()) + static_cast<std::uint64_t>(x);
  return c;
}

inline std::vector<int> vec_of(const ProjectiveSpace& s, PointId p) {
  std::vector<int> v;
  for (auto e : s.coords(p)) v.push_back(e.code);
  return v;
}

/// Every t-subspace as a sorted id list, found by spanning point tuples.
inline std::set<std::vector<std::uint32_t>> oracle_subspaces(const ProjectiveSpace& s, int t) {
  const Field& f = s.field();
  const int q = s.q();
  const int n = s.n();
  const std::size_t want = point_count(t, q);
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> pick(static_cast<std::size_t>(t));
  std::function<void(int, std::uint32_t)> rec = [&](int depth, std::uint32_t from) {
    if (depth == t) {
      std::set<std::uint32_t> span;
      std::vector<int> coef(static_cast<std::size_t>(t), 0);
      while (true) {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < t; ++i) {
          const auto g = vec_of(s, PointId{pick[static_cast<std::size_t>(i)]});
          for (int j = 0; j < n; ++j)
            v[static_cast<std::size_t>(j)] = f.add(static_cast<std::uint8_t>(v[static_cast<std::size_t>(j)]),
                                                   f.mul(static_cast<std::uint8_t>(coef[static_cast<std::size_t>(i)]),
                                                         static_cast<std::uint8_t>(g[static_cast<std::size_t>(j)])));
        }
        const std::uint64_t c = code_of(s, v);
        if (c != 0) span.insert(s.index_of(c));
        int i = 0;
        while (i < t && ++coef[static_cast<std::size_t>(i)] == q) coef[static_cast<std::size_t>(i++)] = 0;
        if (i == t) break;
      }
      if (span.size() == want) out.insert(std::vector<std::uint32_t>(span.begin(), span.end()));
      return;
    }
    for (std::uint32_t p = from; p < s.size(); ++p) {
      pick[static_cast<std::size_t>(depth)] = p;
      rec(depth + 1, p + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// True iff no oracle subspace is monochromatic.
inline bool oracle_proper(const Coloring& c, const std::set<std::vector<std::uint32_t>>& subspaces) {
  for (const auto& sub : subspaces) {
    bool mono = true;
    for (auto p : sub) mono = mono && c.colors[p] == c.colors[sub.front()];
    if (mono) return false;
  }
  return true;
}

inline bool oracle_proper(const Coloring& c) { return oracle_proper(c, oracle_subspaces(*c.space, c.t)); }

/// Count of t-subspaces from the recurrence [n,t] = [n-1,t-1] + q^t [n-1,t].
inline boost::multiprecision::cpp_int gaussian_recurrence(int n, int t, int q) {
  using boost::multiprecision::cpp_int;
  std::vector<std::vector<cpp_int>> g(static_cast<std::size_t>(n + 1), std::vector<cpp_int>(static_cast<std::size_t>(n + 1), 0));
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) {
      cpp_int qj = 1;
      for (int r = 0; r < j; ++r) qj *= q;
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] + qj * g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  return g[static_cast<std::size_t>(n)][static_cast<std::size_t>(t)];
}

// ------------------------------------------------------- random colorings

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// c'(x) = c(Mx) for a random invertible M built from elementary row
/// operations, followed by a random renaming of colors. Keeps properness.
inline Coloring scramble(const Coloring& c, Rng& rng) {
  const ProjectiveSpace& s = *c.space;
  const Field& f = s.field();
  const int n = s.n();
  const int q = s.q();
  struct Op {
    int kind, i, j, lambda;
  };
  std::vector<Op> ops;
  if (n > 1)
    for (int r = 0; r < 3 * n; ++r) {
      const int i = uniform(rng, 0, n - 1);
      int j = uniform(rng, 0, n - 2);
      if (j >= i) ++j;
      ops.push_back({uniform(rng, 0, 2), i, j, uniform(rng, 1, q - 1)});
    }
  std::vector<int> perm(static_cast<std::size_t>(c.k));
  for (int i = 0; i < c.k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<Color> colors(s.size());
  for (std::uint32_t p = 0; p < s.size(); ++p) {
    std::vector<int> v = vec_of(s, PointId{p});
    for (const Op& op : ops) {
      auto& vi = v[static_cast<std::size_t>(op.i)];
      const int vj = v[static_cast<std::size_t>(op.j)];
      if (op.kind == 0) vi = f.add(static_cast<std::uint8_t>(vi), f.mul(static_cast<std::uint8_t>(op.lambda), static_cast<std::uint8_t>(vj)));
      else if (op.kind == 1) std::swap(vi, v[static_cast<std::size_t>(op.j)]);
      else vi = f.mul(static_cast<std::uint8_t>(op.lambda), static_cast<std::uint8_t>(vi));
    }
    colors[p] = static_cast<Color>(perm[c.colors[s.index_of(code_of(s, v))]]);
  }
  return Coloring(c.space, c.t, c.k, std::move(colors));
}

/// A proper coloring of PG(n-1,q) for subspace dimension t, randomized.
inline Coloring random_proper(int n, int q, int t, Rng& rng, const BaseTable& table) {
  const auto space = ProjectiveSpace::create(n, q);
  if (n < t) return uniform_coloring(space, t);
  Coloring base = replay(schedule(n, q, t, table), table);
  if (uniform(rng, 0, 2) == 0 && space->size() <= 400) {
    SearchConfig cfg;
    cfg.seed = rng();
    cfg.restarts = 4;
    auto out = local_search(space, t, base.k, cfg);
    if (out.status == SearchStatus::Sat) base = *out.certificate;
  }
  return scramble(base, rng);
}

inline Coloring random_coloring(SpacePtr space, int t, int k, Rng& rng) {
  std::vector<Color> colors(space->size());
  for (auto& c : colors) c = static_cast<Color>(uniform(rng, 0, k - 1));
  return Coloring(std::move(space), t, k, std::move(colors));
}

// ------------------------------------------------------------- properties

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

/// quotient_compose of proper factors is proper with k_A + k_B colors.
inline PropertyResult composition_soundness(std::uint64_t seed, int cases, const BaseTable& table) {
  Rng rng(seed);
  PropertyResult r;
  const int qs[] = {2, 3, 4, 5};
  for (int i = 0; i < cases; ++i) {
    const int q = qs[uniform(rng, 0, 3)];
    const int t = uniform(rng, 2, 3);
    // keep both factors at <= 121 points and the product small enough to stream
    const int max_factor = q == 2 ? 6 : q == 3 ? 5 : 3;
    const int max_total = q == 2 ? 10 : q == 3 ? 6 : q == 4 ? 5 : 4;
    const int n = uniform(rng, 2, max_total);
    const int d = uniform(rng, std::max(1, n - max_factor), std::min(n - 1, max_factor));
    const Coloring a = random_proper(n - d, q, t, rng, table);
    const Coloring b = random_proper(d, q, t, rng, table);
    const Coloring c = quotient_compose(a, b, n);
    ++r.cases;
    std::ostringstream tag;
    tag << "case " << i << " q=" << q << " t=" << t << " n=" << n << " d=" << d;
    if (c.k != a.k + b.k) r.fail(tag.str() + ": color count");
    if (n >= t && !verify(c, {VerifyMethod::Stream, 1}).proper) r.fail(tag.str() + ": improper");
  }
  return r;
}

/// reserved_lift_compose: proper, k_U + k_A+ - 1 colors, reserved class absent.
inline PropertyResult reserved_lift_soundness(std::uint64_t seed, int cases, const BaseTable& table) {
  Rng rng(seed);
  PropertyResult r;
  for (int i = 0; i < cases; ++i) {
    const int n = uniform(rng, 2, 12);
    const int d = uniform(rng, 1, n - 1);
    const Coloring u = random_proper(d, 2, 2, rng, table);
    const Coloring aplus = random_proper(n - d + 1, 2, 2, rng, table);
    const auto used = u.class_sizes();
    std::vector<int> candidates;
    for (int c = 0; c < u.k; ++c)
      if (used[static_cast<std::size_t>(c)] > 0) candidates.push_back(c);
    const auto reserved = static_cast<Color>(candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(candidates.size()) - 1))]);
    const Coloring c = reserved_lift_compose(u, aplus, reserved, n);
    ++r.cases;
    std::ostringstream tag;
    tag << "case " << i << " n=" << n << " d=" << d << " r=" << int{reserved};
    if (c.k != u.k + aplus.k - 1) r.fail(tag.str() + ": color count");
    if (!verify(c, {VerifyMethod::PairLoop, 1}).proper) r.fail(tag.str() + ": improper");
    // No point whose U-part carries the reserved color keeps a U-palette color,
    // and every U-palette color is the renamed cU color of its point.
    const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
    for (std::uint32_t p = 0; p < c.colors.size(); ++p) {
      const std::uint64_t x = c.space->code(PointId{p});
      const std::uint64_t low = x & mask;
      const int out = c.colors[p];
      if (out < u.k - 1) {
        if (low == 0) {
          r.fail(tag.str() + ": U color on the A side");
          break;
        }
        const int cu = u.colors[low - 1];
        if (cu == reserved || out != (cu < reserved ? cu : cu - 1)) {
          r.fail(tag.str() + ": reserved color leaked");
          break;
        }
      }
    }
  }
  return r;
}

/// normalize(lambda v) == normalize(v), lead coordinate 1, same projective point.
inline PropertyResult normalize_orbit_invariance(std::uint64_t seed, int cases) {
  Rng rng(seed);
  PropertyResult r;
  const int qs[] = {2, 3, 4, 5, 7, 8, 9};
  for (int i = 0; i < cases; ++i) {
    const int q = qs[uniform(rng, 0, 6)];
    const int n = uniform(rng, 1, 8);
    const Field f = build_field(q);
    Coords v(static_cast<std::size_t>(n));
    do {
      for (auto& x : v) x.code = static_cast<std::uint8_t>(uniform(rng, 0, q - 1));
    } while (std::all_of(v.begin(), v.end(), [](FieldElement x) { return x.code == 0; }));
    const FieldElement lambda{static_cast<std::uint8_t>(uniform(rng, 1, q - 1))};
    Coords w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](FieldElement x) { return f.mul(lambda, x); });
    const Coords nv = normalize(f, v);
    const Coords nw = normalize(f, w);
    ++r.cases;
    auto lead = std::find_if(nv.begin(), nv.end(), [](FieldElement x) { return x.code != 0; });
    if (nv != nw) r.fail("case " + std::to_string(i) + ": orbit not invariant");
    else if (lead == nv.end() || lead->code != 1) r.fail("case " + std::to_string(i) + ": lead not 1");
    else {
      const auto space = ProjectiveSpace::create(n, q);
      if (space->id_of(v) != space->id_of(w)) r.fail("case " + std::to_string(i) + ": different ids");
    }
  }
  return r;
}

/// Edge colors of a lift are invariant under translation by any vector.
inline PropertyResult lift_translation_invariance(std::uint64_t seed, int cases, const BaseTable& table) {
  Rng rng(seed);
  PropertyResult r;
  for (int i = 0; i < cases; ++i) {
    const int n = uniform(rng, 2, 9);
    const Coloring c = random_proper(n, 2, 2, rng, table);
    const EdgeColoring e = schur_lift(c);
    const std::uint32_t N = e.vertex_count();
    for (int trial = 0; trial < 8; ++trial) {
      const auto u = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(N) - 1));
      auto v = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(N) - 2));
      if (v >= u) ++v;
      const auto w = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(N) - 1));
      ++r.cases;
      if (e.color(u ^ w, v ^ w) != e.color(u, v))
        r.fail("case " + std::to_string(i) + ": translation by " + std::to_string(w));
    }
  }
  return r;
}

/// All verifier methods agree with the span oracle and with each other.
inline PropertyResult verifier_oracle_agreement(std::uint64_t seed, int cases, const BaseTable& table) {
  Rng rng(seed);
  PropertyResult r;
  struct Shape {
    int n, q, t;
  };
  const Shape shapes[] = {{2, 2, 2}, {3, 2, 2}, {4, 2, 2}, {5, 2, 2}, {4, 2, 3}, {5, 2, 3}, {3, 3, 2},
                          {4, 3, 2}, {3, 4, 2}, {3, 5, 2}, {4, 3, 3}, {3, 7, 2}, {3, 8, 2}, {3, 9, 2}};
  std::map<std::tuple<int, int, int>, std::set<std::vector<std::uint32_t>>> cache;
  for (int i = 0; i < cases; ++i) {
    const Shape sh = shapes[uniform(rng, 0, static_cast<int>(std::size(shapes)) - 1)];
    auto& subs = cache[{sh.n, sh.q, sh.t}];
    const auto space = ProjectiveSpace::create(sh.n, sh.q);
    if (subs.empty()) subs = oracle_subspaces(*space, sh.t);
    Coloring c = uniform(rng, 0, 1) == 0 ? random_coloring(space, sh.t, uniform(rng, 2, 4), rng)
                                         : random_proper(sh.n, sh.q, sh.t, rng, table);
    if (uniform(rng, 0, 1) == 0) c.colors[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(c.colors.size()) - 1))] = 0;
    ++r.cases;
    std::ostringstream tag;
    tag << "case " << i << " n=" << sh.n << " q=" << sh.q << " t=" << sh.t;
    const bool expect = oracle_proper(c, subs);
    const auto a = verify(c, {VerifyMethod::Auto, 1});
    const auto s = verify(c, {VerifyMethod::Stream, 1});
    const auto s3 = verify(c, {VerifyMethod::Stream, 3});
    if (a.proper != expect || s.proper != expect || s3.proper != expect) {
      r.fail(tag.str() + ": verdict differs from oracle");
      continue;
    }
    if (a.witness != s.witness || s.witness != s3.witness) r.fail(tag.str() + ": witnesses differ");
    if (sh.q == 2 && sh.t == 2) {
      const auto p = verify(c, {VerifyMethod::PairLoop, 1});
      if (p.proper != expect || p.witness != s.witness) r.fail(tag.str() + ": pair loop differs");
    }
    if (!expect) {
      const auto& w = s.witness->point_ids;
      std::vector<std::uint32_t> ids;
      for (auto p : w) ids.push_back(p.idx);
      bool mono = true;
      for (auto p : ids) mono = mono && c.colors[p] == c.colors[ids.front()];
      if (!subs.count(ids) || !mono) r.fail(tag.str() + ": witness is not a monochromatic subspace");
    }
  }
  return r;
}

}  // namespace pgtest
