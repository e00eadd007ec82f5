#pragma once

// Composition schedules and the table of base colorings they start from.
//
// A schedule is a chain: one Base step, then Quotient or ReservedLift steps,
// each adding a factor taken from the base table. Plans serialize as text:
//
//   plan q=2 t=2 n=7 k=5
//   base n=1 k=1 source=builtin
//   lift d=4 k=3 source=search
//   lift d=4 k=3 source=search
//
// A file-backed factor is written `file=<name>` instead of `source=...`.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pgchroma/certificate.hpp"
#include "pgchroma/coloring.hpp"
#include "pgchroma/constructors.hpp"
#include "pgchroma/error.hpp"
#include "pgchroma/pg.hpp"
#include "pgchroma/search.hpp"
#include "pgchroma/verify.hpp"

#ifndef PGCHROMA_DATA_DIR
#define PGCHROMA_DATA_DIR "data/certificates"
#endif

namespace pgchroma {

enum class BaseSource { Builtin, Search, File };

inline std::string_view to_string(BaseSource s) {
  switch (s) {
    case BaseSource::Builtin: return "builtin";
    case BaseSource::Search: return "search";
    case BaseSource::File: return "file";
  }
  return "?";
}

/// A base coloring of PG(n-1,q) with k colors and where it comes from.
struct BaseRef {
  int n = 0;
  int k = 0;
  BaseSource source = BaseSource::Builtin;
  std::string file;  ///< certificate path for BaseSource::File
};

enum class StepKind { Base, Quotient, ReservedLift };

struct ScheduleStep {
  StepKind kind = StepKind::Base;
  BaseRef factor;  ///< for Base the starting coloring, otherwise the factor of dimension d = factor.n
};

struct Schedule {
  int q = 2;
  int t = 2;
  int n = 0;
  std::vector<ScheduleStep> steps;
  int claimed_colors = 0;

  /// Recomputes (dimension, colors) from the steps alone.
  std::pair<int, int> arithmetic() const {
    int dim = 0;
    int k = 0;
    for (const auto& s : steps) {
      switch (s.kind) {
        case StepKind::Base: dim = s.factor.n; k = s.factor.k; break;
        case StepKind::Quotient: dim += s.factor.n; k += s.factor.k; break;
        case StepKind::ReservedLift: dim += s.factor.n - 1; k += s.factor.k - 1; break;
      }
    }
    return {dim, k};
  }

  std::string plan_text() const {
    std::ostringstream s;
    s << "plan q=" << q << " t=" << t << " n=" << n << " k=" << claimed_colors << '\n';
    for (const auto& step : steps) {
      switch (step.kind) {
        case StepKind::Base: s << "base n=" << step.factor.n; break;
        case StepKind::Quotient: s << "quotient d=" << step.factor.n; break;
        case StepKind::ReservedLift: s << "lift d=" << step.factor.n; break;
      }
      s << " k=" << step.factor.k;
      if (step.factor.source == BaseSource::File) s << " file=" << step.factor.file;
      else s << " source=" << to_string(step.factor.source);
      s << '\n';
    }
    return s.str();
  }
};

inline Schedule parse_plan(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& msg) {
    return Error(ErrorKind::ParseError, "plan line " + std::to_string(line) + ": " + msg, line);
  };
  auto value_of = [&](const std::vector<std::string_view>& tokens, std::string_view key) -> std::optional<std::string> {
    for (auto tok : tokens)
      if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=')
        return std::string(tok.substr(key.size() + 1));
    return std::nullopt;
  };
  auto int_of = [&](const std::vector<std::string_view>& tokens, std::string_view key) {
    auto v = value_of(tokens, key);
    int out = 0;
    if (!v || !detail::parse_int(*v, out)) throw fail("missing " + std::string(key) + "=<int>");
    return out;
  };

  Schedule s;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto body = detail::trim(raw);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = detail::split_ws(body);
    if (!header) {
      if (tokens.front() != "plan") throw fail("expected 'plan q= t= n= k='");
      s.q = int_of(tokens, "q");
      s.t = int_of(tokens, "t");
      s.n = int_of(tokens, "n");
      s.claimed_colors = int_of(tokens, "k");
      header = true;
      continue;
    }
    ScheduleStep step;
    if (tokens.front() == "base") {
      step.kind = StepKind::Base;
      step.factor.n = int_of(tokens, "n");
    } else if (tokens.front() == "quotient" || tokens.front() == "lift") {
      step.kind = tokens.front() == "lift" ? StepKind::ReservedLift : StepKind::Quotient;
      step.factor.n = int_of(tokens, "d");
    } else {
      throw fail("unknown step '" + std::string(tokens.front()) + "'");
    }
    if ((step.kind == StepKind::Base) != s.steps.empty()) throw fail("a plan has exactly one base step, first");
    step.factor.k = int_of(tokens, "k");
    if (auto f = value_of(tokens, "file")) {
      step.factor.source = BaseSource::File;
      step.factor.file = *f;
    } else if (auto src = value_of(tokens, "source")) {
      if (*src == "builtin") step.factor.source = BaseSource::Builtin;
      else if (*src == "search") step.factor.source = BaseSource::Search;
      else throw fail("unknown source '" + *src + "'");
    } else {
      throw fail("step needs source= or file=");
    }
    s.steps.push_back(std::move(step));
  }
  if (!header) throw Error(ErrorKind::ParseError, "empty plan", 1);
  if (s.steps.empty()) throw Error(ErrorKind::ParseError, "plan has no base step", line);
  const auto [dim, k] = s.arithmetic();
  if (dim != s.n || k != s.claimed_colors)
    throw Error(ErrorKind::ChecksumMismatch, "plan steps give n=" + std::to_string(dim) + " k=" + std::to_string(k) +
                                                 ", header says n=" + std::to_string(s.n) + " k=" +
                                                 std::to_string(s.claimed_colors));
  return s;
}

/// Known base colorings keyed by (q, t, n). Lookups for n < t always succeed
/// with the one-color coloring.
class BaseTable {
 public:
  using Key = std::tuple<int, int, int>;

  BaseTable() = default;
  explicit BaseTable(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {}

  /// Built-in hyperplane bases, the searched chi_2(4) = 3 base, and every
  /// certificate named q<q>_t<t>_n<n>_k<k>.pgc in data_dir.
  static BaseTable standard(std::filesystem::path data_dir = PGCHROMA_DATA_DIR) {
    BaseTable table(data_dir);
    for (int q : {2, 3, 4, 5, 7, 8, 9}) table.add(q, 2, {2, 2, BaseSource::Builtin, {}});
    table.add(2, 2, {3, 3, BaseSource::Builtin, {}});
    table.add(2, 2, {4, 3, BaseSource::Search, {}});
    std::error_code ec;
    if (std::filesystem::is_directory(data_dir, ec)) {
      static const std::regex name(R"(q(\d+)_t(\d+)_n(\d+)_k(\d+)\.pgc)");
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(data_dir)) files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& path : files) {
        std::smatch m;
        const std::string fname = path.filename().string();
        if (!std::regex_match(fname, m, name)) continue;
        table.add(std::stoi(m[1]), std::stoi(m[2]), {std::stoi(m[3]), std::stoi(m[4]), BaseSource::File, fname});
      }
    }
    return table;
  }

  /// Keeps the entry with fewer colors when (q,t,n) is already present.
  void add(int q, int t, BaseRef ref) {
    const Key key{q, t, ref.n};
    auto it = entries_.find(key);
    if (it == entries_.end() || ref.k < it->second.k) entries_[key] = std::move(ref);
  }

  std::optional<BaseRef> find(int q, int t, int n) const {
    if (n >= 1 && n < t) return BaseRef{n, 1, BaseSource::Builtin, {}};
    auto it = entries_.find({q, t, n});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::pair<Key, BaseRef>> entries() const { return {entries_.begin(), entries_.end()}; }
  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

  /// Materializes a base and checks it: right shape, k colors, proper.
  Coloring load(int q, int t, const BaseRef& ref) const {
    const std::string key = std::to_string(q) + "/" + std::to_string(t) + "/" + std::to_string(ref.n) + "/" +
                            std::to_string(ref.k) + "/" + std::string(to_string(ref.source)) + "/" + ref.file;
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->entries.find(key); it != cache_->entries.end()) return it->second;
    }
    Coloring c = materialize(q, t, ref);
    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::CorruptCertificate, "base (q=" + std::to_string(q) + ", t=" + std::to_string(t) +
                                                      ", n=" + std::to_string(ref.n) + ", k=" + std::to_string(ref.k) +
                                                      ") " + why);
    };
    if (c.q() != q || c.t != t || c.n() != ref.n) throw bad("has the wrong parameters");
    if (c.k != ref.k) throw bad("declares k=" + std::to_string(c.k));
    if (ref.n >= t && !verify(c).proper) throw bad("is not proper");
    std::lock_guard lock(cache_->mutex);
    cache_->entries.emplace(key, c);
    return c;
  }

  Coloring load(int q, int t, int n) const {
    auto ref = find(q, t, n);
    if (!ref) throw Error(ErrorKind::MissingBase, "no base coloring for q=" + std::to_string(q) + " t=" +
                                                      std::to_string(t) + " n=" + std::to_string(n));
    return load(q, t, *ref);
  }

  std::filesystem::path resolve(const std::string& file) const {
    std::filesystem::path p(file);
    if (p.is_absolute() || std::filesystem::exists(p)) return p;
    return data_dir_ / p;
  }

 private:
  Coloring materialize(int q, int t, const BaseRef& ref) const {
    SpacePtr space = ProjectiveSpace::create(ref.n, q);
    switch (ref.source) {
      case BaseSource::Builtin:
        if (ref.n < t) return uniform_coloring(space, t);
        if (t == 2 && ref.k == ref.n) return iterated_hyperplane(space);
        throw Error(ErrorKind::MissingBase, "no built-in construction with k=" + std::to_string(ref.k));
      case BaseSource::Search: {
        SearchOutcome out = exists_coloring(space, t, ref.k);
        if (out.status != SearchStatus::Sat)
          throw Error(ErrorKind::MissingBase, "search found no " + std::to_string(ref.k) + "-coloring");
        return std::move(*out.certificate);
      }
      case BaseSource::File: {
        const auto path = resolve(ref.file);
        if (!std::filesystem::exists(path)) throw Error(ErrorKind::MissingBase, "missing certificate " + path.string());
        try {
          return read_certificate(path.string());
        } catch (const Error& e) {
          throw Error(ErrorKind::CorruptCertificate, path.string() + ": " + e.what());
        }
      }
    }
    throw Error(ErrorKind::MissingBase, "unknown base source");
  }

  std::filesystem::path data_dir_;
  std::map<Key, BaseRef> entries_;
  struct Cache {
    std::mutex mutex;
    std::map<std::string, Coloring> entries;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct ScheduleOptions {
  /// Reserved-lift factor dimension (q = 2, t = 2). Default 4.
  std::optional<int> lift_d;
  /// Quotient factor dimension. Default depends on (q, t) and the table.
  std::optional<int> quotient_d;
};

namespace detail {

// Cheapest way to cover dimension r with table factors joined by quotients.
inline std::vector<BaseRef> residual_chain(int q, int t, int r, const BaseTable& table) {
  constexpr int kInf = 1 << 20;
  std::vector<int> best(static_cast<std::size_t>(r + 1), kInf);
  std::vector<int> piece(static_cast<std::size_t>(r + 1), 0);
  best[0] = 0;
  for (int j = 1; j <= r; ++j)
    for (int i = j; i >= 1; --i) {
      auto ref = table.find(q, t, i);
      if (!ref || best[static_cast<std::size_t>(j - i)] == kInf) continue;
      const int cost = best[static_cast<std::size_t>(j - i)] + ref->k;
      if (cost < best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = cost;
        piece[static_cast<std::size_t>(j)] = i;
      }
    }
  if (best[static_cast<std::size_t>(r)] == kInf)
    throw Error(ErrorKind::MissingBase, "no base covers dimension " + std::to_string(r));
  std::vector<BaseRef> chain;
  for (int j = r; j > 0; j -= piece[static_cast<std::size_t>(j)]) chain.push_back(*table.find(q, t, piece[static_cast<std::size_t>(j)]));
  return chain;
}

inline void push_chain(Schedule& s, const std::vector<BaseRef>& chain) {
  for (const auto& ref : chain)
    s.steps.push_back({s.steps.empty() ? StepKind::Base : StepKind::Quotient, ref});
}

inline BaseRef require(const BaseTable& table, int q, int t, int d) {
  auto ref = table.find(q, t, d);
  if (!ref) throw Error(ErrorKind::MissingBase, "schedule needs a base for q=" + std::to_string(q) + " t=" +
                                                    std::to_string(t) + " n=" + std::to_string(d));
  return *ref;
}

inline Schedule finish(Schedule s) {
  s.claimed_colors = s.arithmetic().second;
  return s;
}

}  // namespace detail

/// Reserved lifts with a d-dimensional factor: n = (d-1)m + r, r in [1, d-1].
inline Schedule lift_schedule(int n, int d, const BaseTable& table) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "lift factor needs d >= 2");
  const BaseRef factor = detail::require(table, 2, 2, d);
  const int m = (n - 1) / (d - 1);
  const int r = n - m * (d - 1);
  Schedule s{2, 2, n, {}, 0};
  detail::push_chain(s, detail::residual_chain(2, 2, r, table));
  for (int i = 0; i < m; ++i) s.steps.push_back({StepKind::ReservedLift, factor});
  return detail::finish(std::move(s));
}

/// Quotients with a d-dimensional factor: n = dm + r, r in [1, d].
inline Schedule quotient_schedule(int n, int q, int t, int d, const BaseTable& table) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "quotient factor needs d >= 1");
  const BaseRef factor = detail::require(table, q, t, d);
  const int m = (n - 1) / d;
  const int r = n - m * d;
  Schedule s{q, t, n, {}, 0};
  detail::push_chain(s, detail::residual_chain(q, t, r, table));
  for (int i = 0; i < m; ++i) s.steps.push_back({StepKind::Quotient, factor});
  return detail::finish(std::move(s));
}

inline Schedule schedule(int n, int q, int t, const BaseTable& table, const ScheduleOptions& options = {}) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "n must be at least 1");
  if (t < 2) throw Error(ErrorKind::InvalidDimension, "t must be at least 2");
  if (!is_supported_order(q)) throw Error(ErrorKind::UnsupportedOrder, "unsupported q=" + std::to_string(q));
  if (options.lift_d) {
    if (q != 2 || t != 2) throw Error(ErrorKind::ParameterMismatch, "reserved lifts need q = 2 and t = 2");
    return lift_schedule(n, *options.lift_d, table);
  }
  if (options.quotient_d) return quotient_schedule(n, q, t, *options.quotient_d, table);
  if (q == 2 && t == 2) return lift_schedule(n, 4, table);
  if (t == 2 && q >= 5 && table.find(q, 2, 4)) return quotient_schedule(n, q, 2, 4, table);
  if (t == 2 && (q == 3 || q == 4) && table.find(q, 2, 5)) return quotient_schedule(n, q, 2, 5, table);
  return quotient_schedule(n, q, t, t - 1, table);
}

/// Builds the coloring a schedule describes, loading each factor from the table.
inline Coloring replay(const Schedule& s, const BaseTable& table) {
  if (s.steps.empty() || s.steps.front().kind != StepKind::Base)
    throw Error(ErrorKind::ParseError, "schedule must start with a base step");
  const auto [dim, k] = s.arithmetic();
  if (dim != s.n || k != s.claimed_colors)
    throw Error(ErrorKind::ChecksumMismatch, "schedule arithmetic does not match its header");
  Coloring cur = table.load(s.q, s.t, s.steps.front().factor);
  for (std::size_t i = 1; i < s.steps.size(); ++i) {
    const auto& step = s.steps[i];
    const Coloring factor = table.load(s.q, s.t, step.factor);
    if (step.kind == StepKind::Quotient) {
      cur = quotient_compose(cur, factor, cur.n() + factor.n());
    } else if (step.kind == StepKind::ReservedLift) {
      cur = reserved_lift_compose(factor, cur, 0, cur.n() + factor.n() - 1);
    } else {
      throw Error(ErrorKind::ParseError, "base step after the first");
    }
  }
  if (cur.k != s.claimed_colors) throw Error(ErrorKind::ChecksumMismatch, "replay produced a different color count");
  return cur;
}

}  // namespace pgchroma
