// pgchroma: construct, verify, search and lift colorings of projective spaces.
//
// Exit codes: 0 success, 1 improper coloring or failed self-check,
// 2 invalid parameters or malformed input, 3 inexact result under --require-exact.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pgchroma/pgchroma.hpp"

namespace {

using namespace pgchroma;

constexpr int kExitImproper = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInexact = 3;

struct Common {
  int n = 0;
  int q = 2;
  int t = 2;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string format = "text";
  std::string budget_nodes;
  double budget_secs = 0;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::string secs() const {
    std::ostringstream s;
    s << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s.str();
  }
};

RunManifest base_manifest(const std::string& command, const Common& o) {
  RunManifest m;
  m.set("command", command);
  m.set("n", std::to_string(o.n));
  m.set("q", std::to_string(o.q));
  m.set("t", std::to_string(o.t));
  m.set("seed", std::to_string(o.seed));
  m.set("threads", std::to_string(o.threads));
  return m;
}

void finish_manifest(RunManifest& m, const std::string& artifact, const Timer& timer) {
  m.artifact("output", artifact);
  m.set("elapsed_secs", timer.secs());
  m.write(artifact + ".manifest");
}

std::optional<std::uint64_t> parse_budget(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size() || v < 0 || !std::isfinite(v)) throw Error(ErrorKind::ParameterMismatch, "bad node budget " + text);
  return static_cast<std::uint64_t>(v);
}

SearchConfig search_config(const Common& o) {
  SearchConfig c;
  c.node_limit = parse_budget(o.budget_nodes);
  if (o.budget_secs > 0) c.time_limit_secs = o.budget_secs;
  c.seed = o.seed;
  c.threads = o.threads;
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path + " for writing");
  out << text;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Published bounds a coloring of PG(n-1,q) can be compared against.
std::string bounds_met(int n, int q, int t, int k) {
  std::ostringstream s;
  auto line = [&](const std::string& name, int bound) {
    s << "bound " << name << " = " << bound << (k <= bound ? " met" : " NOT met") << '\n';
  };
  line("ceil(n/(t-1))", ceil_div(n, t - 1));
  if (q == 2 && t == 2) line("floor(2n/3)+1", 2 * n / 3 + 1);
  if (q >= 5 && t == 2) line("ceil(n/2)+1", ceil_div(n, 2) + 1);
  if ((q == 3 || q == 4) && t == 2) line("ceil(3n/5)+2", ceil_div(3 * n, 5) + 2);
  return s.str();
}

Coloring build_coloring(const Common& o, const std::string& strategy, const BaseTable& table) {
  if (strategy == "hyperplane") {
    if (o.t != 2) throw Error(ErrorKind::ParameterMismatch, "hyperplane coloring is for t = 2");
    return iterated_hyperplane(ProjectiveSpace::create(o.n, o.q));
  }
  ScheduleOptions opts;
  if (strategy.rfind("lift:", 0) == 0) opts.lift_d = std::stoi(strategy.substr(5));
  else if (strategy.rfind("quotient:", 0) == 0) opts.quotient_d = std::stoi(strategy.substr(9));
  else if (strategy != "schedule") throw Error(ErrorKind::ParameterMismatch, "unknown strategy " + strategy);
  return replay(schedule(o.n, o.q, o.t, table, opts), table);
}

void print_report(const VerificationReport& r, const Coloring& c) {
  std::cout << (r.proper ? "proper" : "improper") << '\n';
  std::cout << "n=" << c.n() << " q=" << c.q() << " t=" << c.t << " k=" << c.k << '\n';
  std::cout << "method=" << r.method << " checked=" << r.subspaces_checked << '\n';
  std::cout << "class_sizes=";
  for (std::size_t i = 0; i < r.class_sizes.size(); ++i) std::cout << (i ? "," : "") << r.class_sizes[i];
  std::cout << '\n';
  if (r.witness) {
    std::cout << "witness color=" << int{c[r.witness->point_ids.front()]} << ':';
    for (PointId p : r.witness->point_ids) std::cout << ' ' << c.space->label(p);
    std::cout << '\n';
  }
}

int cmd_points(const Common& o) {
  const auto space = ProjectiveSpace::create(o.n, o.q);
  for (std::uint32_t i = 0; i < space->size(); ++i) std::cout << space->label({i}) << '\n';
  return 0;
}

int cmd_subspaces(const Common& o, bool count_only) {
  const auto space = ProjectiveSpace::create(o.n, o.q);
  if (o.t < 1 || o.t > o.n) throw Error(ErrorKind::InvalidDimension, "need 1 <= t <= n");
  const auto expected = gaussian_binomial(o.n, o.t, o.q);
  std::uint64_t walked = 0;
  if (count_only) {
    walked = count_subspaces(*space, o.t);
    std::cout << walked << '\n';
  } else {
    enumerate_subspaces(*space, o.t, [&](const Subspace& s) {
      ++walked;
      for (std::size_t i = 0; i < s.point_ids.size(); ++i) std::cout << (i ? " " : "") << space->label(s.point_ids[i]);
      std::cout << '\n';
      return true;
    });
  }
  if (expected != walked) {
    std::cerr << "enumeration found " << walked << " subspaces, Gaussian binomial gives " << expected << '\n';
    return kExitImproper;
  }
  return 0;
}

int cmd_color(const Common& o, const std::string& strategy) {
  Timer timer;
  const BaseTable table = BaseTable::standard();
  const Coloring c = build_coloring(o, strategy, table);
  const VerificationReport r = verify(c, {VerifyMethod::Auto, o.threads});
  if (!r.proper) {
    std::cerr << "self-verification failed\n";
    print_report(r, c);
    return kExitImproper;
  }
  std::ostream& info = o.out.empty() ? std::cerr : std::cout;
  if (o.out.empty()) {
    write_certificate(c, std::cout);
  } else {
    write_certificate(c, o.out);
    RunManifest m = base_manifest("color", o);
    m.set("strategy", strategy);
    m.set("k", std::to_string(c.k));
    finish_manifest(m, o.out, timer);
  }
  info << "k=" << c.k << " verified=proper method=" << r.method << '\n' << bounds_met(c.n(), c.q(), c.t, c.k);
  return 0;
}

int cmd_verify(const std::string& file, const std::string& method, int threads) {
  Coloring c;
  try {
    c = read_certificate(file);
  } catch (const Error& e) {
    std::cout << "malformed: " << e.what() << '\n';
    return kExitInvalid;
  }
  VerifyOptions opts{VerifyMethod::Auto, threads};
  if (method == "stream") opts.method = VerifyMethod::Stream;
  else if (method == "pairs") opts.method = VerifyMethod::PairLoop;
  else if (method != "auto") throw Error(ErrorKind::ParameterMismatch, "unknown method " + method);
  if (c.t > c.n()) {
    std::cout << "proper\n(no " << c.t << "-dimensional subspaces in dimension " << c.n() << ")\n";
    return 0;
  }
  const VerificationReport r = verify(c, opts);
  print_report(r, c);
  return r.proper ? 0 : kExitImproper;
}

int cmd_chi(const Common& o, bool require_exact) {
  Timer timer;
  const auto space = ProjectiveSpace::create(o.n, o.q);
  if (o.t > o.n) {
    std::cout << "chi_" << o.q << "(" << o.t << ";" << o.n << ") = 1\n";
    return 0;
  }
  const SearchConfig config = search_config(o);
  ChiResult r = chi_exact(space, o.t, config);
  std::string upper_source = "search";
  if (!r.certificate) {
    const BaseTable table = BaseTable::standard();
    Coloring c = replay(schedule(o.n, o.q, o.t, table), table);
    if (!verify(c).proper) return kExitImproper;
    r.upper = c.k;
    r.certificate = std::move(c);
    upper_source = "schedule";
  }
  for (const auto& a : r.attestations) std::cout << a.text();
  const std::string name = o.t == 2 ? "chi_" + std::to_string(o.q) + "(" + std::to_string(o.n) + ")"
                                    : "chi_" + std::to_string(o.q) + "(" + std::to_string(o.t) + ";" +
                                          std::to_string(o.n) + ")";
  if (r.exact) {
    std::cout << name << " = " << r.upper << '\n';
  } else {
    std::cout << name << " in [" << r.lower << ".." << r.upper << "] (upper bound from " << upper_source << ")\n";
  }
  if (!o.out.empty()) {
    write_certificate(*r.certificate, o.out);
    RunManifest m = base_manifest("chi", o);
    m.set("budget_nodes", o.budget_nodes.empty() ? "none" : o.budget_nodes);
    m.set("budget_secs", o.budget_secs > 0 ? std::to_string(o.budget_secs) : "none");
    m.set("lower", std::to_string(r.lower));
    m.set("upper", std::to_string(r.upper));
    std::uint64_t nodes = 0;
    for (const auto& a : r.attestations) nodes += a.nodes;
    m.set("nodes", std::to_string(nodes));
    finish_manifest(m, o.out, timer);
  }
  return (require_exact && !r.exact) ? kExitInexact : 0;
}

int cmd_search(const Common& o, int k, bool local, int restarts) {
  Timer timer;
  const auto space = ProjectiveSpace::create(o.n, o.q);
  SearchConfig config = search_config(o);
  config.restarts = restarts;
  const SearchOutcome out = local ? local_search(space, o.t, k, config) : exists_coloring(space, o.t, k, config);
  std::cout << "status=" << to_string(out.status) << " nodes=" << out.nodes << '\n';
  if (out.status != SearchStatus::Sat) {
    std::cout << attest(*space, o.t, k, config, out).text();
    return 0;
  }
  if (o.out.empty()) {
    write_certificate(*out.certificate, std::cout);
  } else {
    write_certificate(*out.certificate, o.out);
    RunManifest m = base_manifest(local ? "search --local" : "search", o);
    m.set("k", std::to_string(k));
    m.set("restarts", std::to_string(restarts));
    m.set("config", describe(config));
    m.set("nodes", std::to_string(out.nodes));
    finish_manifest(m, o.out, timer);
  }
  return 0;
}

int cmd_ramsey_lift(const std::string& file, const Common& o) {
  Timer timer;
  Coloring c;
  try {
    c = read_certificate(file);
  } catch (const Error& e) {
    std::cout << "malformed: " << e.what() << '\n';
    return kExitInvalid;
  }
  EdgeColoring e = [&] {
    try {
      return schur_lift(c);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::ImproperSource) std::cout << "improper source: " << err.what() << '\n';
      throw;
    }
  }();
  const TriangleReport r = verify_triangle_free(e);
  std::cout << "K_" << e.vertex_count() << " k=" << e.k() << (r.triangle_free ? " triangle-free" : " has a triangle")
            << " triples=" << r.triples << " edges_scanned=" << r.edges_scanned << '\n';
  if (r.witness) std::cout << "witness " << (*r.witness)[0] << ' ' << (*r.witness)[1] << ' ' << (*r.witness)[2] << '\n';
  if (r.triangle_free) std::cout << "R(3;" << e.k() << ") > " << e.vertex_count() << '\n';
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    write_edge_coloring(e, out);
    out.close();
    RunManifest m;
    m.set("command", "ramsey lift");
    m.set("source", file);
    m.set("source_fnv1a", file_hash(file));
    finish_manifest(m, o.out, timer);
  }
  return r.triangle_free ? 0 : kExitImproper;
}

int cmd_ramsey_table(int nmax, const Common& o) {
  const BaseTable table = BaseTable::standard();
  const BoundLedger ledger = bound_table(nmax, table);
  if (o.format == "csv") std::cout << ledger.csv();
  else if (o.format == "text") std::cout << ledger.text();
  else throw Error(ErrorKind::ParameterMismatch, "unknown format " + o.format);
  return 0;
}

int cmd_ramsey_rq(const Common& o, int k) {
  const BaseTable table = BaseTable::standard();
  std::cout << rq_ledger(o.q, o.t, k, table).text();
  return 0;
}

int cmd_schedule(const Common& o, const std::string& strategy) {
  const BaseTable table = BaseTable::standard();
  ScheduleOptions opts;
  if (strategy.rfind("lift:", 0) == 0) opts.lift_d = std::stoi(strategy.substr(5));
  else if (strategy.rfind("quotient:", 0) == 0) opts.quotient_d = std::stoi(strategy.substr(9));
  else if (strategy != "schedule") throw Error(ErrorKind::ParameterMismatch, "unknown strategy " + strategy);
  const Schedule s = schedule(o.n, o.q, o.t, table, opts);
  if (o.out.empty()) std::cout << s.plan_text();
  else write_text(o.out, s.plan_text());
  return 0;
}

int cmd_replay(const std::string& plan_file, const Common& o) {
  Timer timer;
  std::ifstream in(plan_file);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + plan_file);
  std::stringstream buf;
  buf << in.rdbuf();
  const Schedule s = parse_plan(buf.str());
  const BaseTable table = BaseTable::standard();
  const Coloring c = replay(s, table);
  const VerificationReport r = verify(c, {VerifyMethod::Auto, o.threads});
  if (!r.proper) {
    print_report(r, c);
    return kExitImproper;
  }
  if (o.out.empty()) {
    write_certificate(c, std::cout);
  } else {
    write_certificate(c, o.out);
    RunManifest m;
    m.set("command", "replay");
    m.set("plan", plan_file);
    m.set("plan_fnv1a", file_hash(plan_file));
    finish_manifest(m, o.out, timer);
  }
  (o.out.empty() ? std::cerr : std::cout) << "k=" << c.k << " verified=proper\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colorings of finite projective spaces without monochromatic subspaces"};
  app.require_subcommand(1);
  Common o;

  auto space_opts = [&](CLI::App* sub, bool with_t) {
    sub->add_option("-n", o.n, "vector space dimension")->required()->check(CLI::Range(1, kMaxDimension));
    sub->add_option("-q", o.q, "field order")->check(CLI::IsMember({2, 3, 4, 5, 7, 8, 9}));
    if (with_t) sub->add_option("-t", o.t, "subspace dimension (2 = lines)")->check(CLI::Range(1, kMaxDimension));
  };
  auto run_opts = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  };
  auto budget_opts = [&](CLI::App* sub) {
    sub->add_option("--budget-nodes", o.budget_nodes, "node limit per search (accepts 1e6)");
    sub->add_option("--budget-secs", o.budget_secs, "time limit per search in seconds")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "random seed");
  };

  auto* points = app.add_subcommand("points", "list the points of PG(n-1,q) in canonical order");
  space_opts(points, false);

  auto* subspaces = app.add_subcommand("subspaces", "list or count t-dimensional subspaces");
  space_opts(subspaces, true);
  bool count_only = false;
  subspaces->add_flag("--count", count_only, "print only the count");

  std::string strategy = "schedule";
  auto* color = app.add_subcommand("color", "construct and verify a coloring");
  space_opts(color, true);
  run_opts(color);
  color->add_option("--strategy", strategy, "hyperplane | schedule | quotient:<d> | lift:<d>");

  std::string file;
  std::string method = "auto";
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate file");
  verify_cmd->add_option("file", file, "certificate")->required();
  verify_cmd->add_option("--method", method, "auto | stream | pairs");
  verify_cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));

  bool require_exact = false;
  auto* chi = app.add_subcommand("chi", "chromatic number by exact search");
  space_opts(chi, true);
  run_opts(chi);
  budget_opts(chi);
  chi->add_flag("--require-exact", require_exact, "exit 3 unless the value is exact");

  int k = 0;
  bool local = false;
  int restarts = 64;
  auto* search = app.add_subcommand("search", "decide k-colorability");
  space_opts(search, true);
  run_opts(search);
  budget_opts(search);
  search->add_option("-k", k, "number of colors")->required()->check(CLI::Range(1, 31));
  search->add_flag("--local", local, "min-conflicts local search instead of exact search");
  search->add_option("--restarts", restarts, "local search restarts")->check(CLI::PositiveNumber);

  auto* ramsey = app.add_subcommand("ramsey", "Ramsey lifts and bound ledgers");
  ramsey->require_subcommand(1);
  auto* lift = ramsey->add_subcommand("lift", "lift a GF(2) line coloring to K_{2^n}");
  lift->add_option("file", file, "certificate")->required();
  lift->add_option("--out", o.out, "edge coloring output path");
  int nmax = 13;
  auto* table = ramsey->add_subcommand("table", "bounds on chi_2(n)");
  table->add_option("--nmax", nmax, "largest n")->check(CLI::Range(2, kMaxDimension));
  table->add_option("--format", o.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));
  auto* rq = ramsey->add_subcommand("rq", "lower bound on the vector-space Ramsey number R_q(t;k)");
  rq->add_option("-q", o.q, "field order")->check(CLI::IsMember({2, 3, 4, 5, 7, 8, 9}));
  rq->add_option("-t", o.t, "subspace dimension")->check(CLI::Range(2, 64));
  rq->add_option("-k", k, "number of colors")->required()->check(CLI::Range(1, 64));

  auto* sched = app.add_subcommand("schedule", "print the composition plan");
  space_opts(sched, true);
  sched->add_option("--strategy", strategy, "schedule | quotient:<d> | lift:<d>");
  sched->add_option("--out", o.out, "plan output path");

  std::string plan;
  auto* replay_cmd = app.add_subcommand("replay", "rebuild and verify a coloring from a plan file");
  replay_cmd->add_option("plan", plan, "plan file")->required();
  run_opts(replay_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*points) return cmd_points(o);
    if (*subspaces) return cmd_subspaces(o, count_only);
    if (*color) return cmd_color(o, strategy);
    if (*verify_cmd) return cmd_verify(file, method, o.threads);
    if (*chi) return cmd_chi(o, require_exact);
    if (*search) return cmd_search(o, k, local, restarts);
    if (*lift) return cmd_ramsey_lift(file, o);
    if (*table) return cmd_ramsey_table(nmax, o);
    if (*rq) return cmd_ramsey_rq(o, k);
    if (*sched) return cmd_schedule(o, strategy);
    if (*replay_cmd) return cmd_replay(plan, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ImproperSource || e.kind() == ErrorKind::CorruptCertificate ? kExitImproper
                                                                                               : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
