#include "chevmod/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <json.hpp>

#include "chevmod/chevalley.hpp"
#include "chevmod/gf.hpp"
#include "chevmod/linrep.hpp"
#include "chevmod/permmod.hpp"
#include "chevmod/rootsys.hpp"

namespace chevmod::cli {

using nlohmann::ordered_json;
using permmod::Context;
using rootsys::Subset;

namespace {

constexpr int kSchemaVersion = 1;

std::string subset_label(Subset J, int rank) { return "J={" + rootsys::format_subset(J, rank) + "}"; }

CheckReport from_sweep(const rootsys::SweepReport& s) {
  CheckReport r;
  r.total = s.total;
  r.vacuous = s.vacuous;
  r.failed = s.counterexamples.size();
  for (const auto& c : s.counterexamples) {
    if (r.failures.size() < CheckReport::kMaxFailureMessages) r.failures.push_back(c);
  }
  return r;
}

bool divides(unsigned a, unsigned b) { return a != 0 && b % a == 0; }

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> registry = {
      {"combinatorics", "stable inversion sets and ladder separation in W", false, false},
      {"structure", "root subgroup structure of G and the U_w sums", false, false},
      {"lemma-3.2", "simple reflections acting on u w eta_J", false, false},
      {"filtration", "eta_J filtration of k[G/B] and its subquotients E_J", false, false},
      {"prop-3.4", "basis {u w C_J} of E_J", false, false},
      {"prop-3.5", "parabolic realization E'_J = kG D_J of E_J", false, false},
      {"steinberg", "sum over W_J of (-1)^l(w) w U_{w_J} C_J equals C_J", true, false},
      {"lemma-4.5", "commutation absorption on U_A U_B w C_J", true, true},
      {"theta", "mixed-level operators Theta(w,d,b,a) and their transversal steps", true, true},
      {"prop-4.3", "some U_{w_J w^-1, q^c} w C_J lies in the submodule generated by xi", true, true},
      {"prop-4.4", "induction step from s w C_J to w C_J for s w > w in Y^J", true, true},
      {"fixed-points", "every nonzero cyclic submodule has nonzero U-fixed vectors", true, false},
      {"section-5", "Carter-Lusztig vectors f^J and the simple socle of E'_J", true, false},
      {"socle", "simple socle of E'_J", true, false},
      {"composition", "composition factors of k[G/B] and of each E_J", false, false},
  };
  return registry;
}

std::string list_suites() {
  std::ostringstream os;
  for (const auto& s : suite_registry()) {
    os << s.name << "\t" << s.anchor;
    if (s.needs_defining) os << " [defining characteristic]";
    if (s.needs_extension) os << " [level b]";
    os << "\n";
  }
  return os.str();
}

RunConfig normalize(RunConfig c) {
  try {
    rootsys::parse_type(c.type);
  } catch (const std::exception&) {
    throw UsageError("unsupported group type '" + c.type + "' (expected A1, A2, A3 or B2)");
  }
  unsigned p = 0;
  try {
    p = gf::prime_power(c.q).first;
  } catch (const std::exception&) {
    throw UsageError("q = " + std::to_string(c.q) + " is not a prime power");
  }
  if (c.a == 0) throw UsageError("--a must be positive");
  if (c.b == 0) c.b = 2 * c.a;
  if (!divides(c.a, c.b)) throw UsageError("--b must be a multiple of --a");
  if (c.ell == 0) c.ell = p;
  if (!gf::is_prime(c.ell) || c.ell > 251) throw UsageError("--char must be a prime at most 251");
  if (c.suites.empty()) c.suites = {"all"};

  std::vector<std::string> chosen;
  const auto& reg = suite_registry();
  const bool all = std::find(c.suites.begin(), c.suites.end(), "all") != c.suites.end();
  if (all) {
    for (const auto& s : reg) chosen.push_back(s.name);
  } else {
    std::set<std::string> wanted(c.suites.begin(), c.suites.end());
    for (const auto& name : wanted) {
      auto it = std::find_if(reg.begin(), reg.end(), [&](const SuiteInfo& s) { return s.name == name; });
      if (it == reg.end()) throw UsageError("unknown suite '" + name + "'");
      if (it->needs_defining && c.ell != p) {
        throw UsageError("the " + name + " suite requires the defining characteristic (--char " + std::to_string(p) +
                         ")");
      }
      if (it->needs_extension && c.b == c.a) throw UsageError("the " + name + " suite requires --b different from --a");
    }
    // Registry order is the dependency order.
    for (const auto& s : reg) {
      if (wanted.count(s.name)) chosen.push_back(s.name);
    }
  }
  c.suites = chosen;
  return c;
}

namespace {

class Runner {
 public:
  explicit Runner(const RunConfig& c) : cfg_(c) {
    const auto type = rootsys::parse_type(c.type);
    try {
      ctx_ = std::make_unique<Context>(type, c.q, c.a, c.ell, c.budget);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    rank_ = ctx_->roots().rank();
  }

  const Context& ctx() const { return *ctx_; }

  const Context& ext() {
    if (!ext_) {
      try {
        ext_ = std::make_unique<Context>(rootsys::parse_type(cfg_.type), cfg_.q, cfg_.b, cfg_.ell, cfg_.budget);
      } catch (const BudgetExceeded&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    return *ext_;
  }
  /// Whether a selected, runnable suite works at level b.
  bool wants_extension() const {
    if (!ctx_->defining() || cfg_.a == cfg_.b) return false;
    for (const auto& s : suite_registry()) {
      if (s.needs_extension && std::find(cfg_.suites.begin(), cfg_.suites.end(), s.name) != cfg_.suites.end()) {
        return true;
      }
    }
    return false;
  }

  std::vector<Subset> subsets() const {
    std::vector<Subset> out;
    for (Subset J = 0; J <= ctx_->roots().full_set(); ++J) out.push_back(J);
    return out;
  }
  std::string label(Subset J) const { return subset_label(J, rank_); }
  std::uint64_t seed(const std::string& suite, std::uint64_t salt = 0) const {
    std::uint64_t h = 1469598103934665603ull ^ cfg_.seed;
    for (char ch : suite) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
    return h ^ (salt * 0x9e3779b97f4a7c15ull);
  }

  SuiteReport execute(const SuiteInfo& info);

 private:
  using Parts = std::vector<SuitePart>;
  void combinatorics(Parts& parts, std::string& na);
  void structure(Parts& parts);
  void per_j(Parts& parts, const std::function<CheckReport(Subset)>& f) {
    for (Subset J : subsets()) parts.push_back({label(J), f(J)});
  }
  void composition(Parts& parts);

  RunConfig cfg_;
  std::unique_ptr<Context> ctx_;
  std::unique_ptr<Context> ext_;
  int rank_ = 0;
};

void Runner::combinatorics(Parts& parts, std::string&) {
  const auto& W = ctx_->weyl();
  parts.push_back({"stable inversion sets", from_sweep(rootsys::sweep_stable_inversion_sets(W))});
  for (Subset J : subsets()) {
    CheckReport r = from_sweep(rootsys::sweep_ladder_separation(W, J));
    // The sets Phi^-_{w_J w^-1}, w in Y^J, are pairwise distinct.
    std::set<std::vector<int>> seen;
    const auto Y = W.y_set(J);
    for (int w : Y) seen.insert(permmod::theta_roots(W, J, w));
    r.record(seen.size() == Y.size(), "two elements of Y^J share Phi^-_{w_J w^-1}");
    r.note("|Y^J|", std::to_string(Y.size()));
    parts.push_back({"ladder separation " + label(J), r});
  }
}

void Runner::structure(Parts& parts) {
  chevalley::StructureOptions opts;
  opts.seed = seed("structure");
  const auto s = chevalley::check_structure_facts(ctx_->group(), opts);
  parts.push_back({"conjugation", s.conjugation});
  parts.push_back({"positive part", s.positive_part});
  parts.push_back({"multiplication", s.multiplication});
  parts.push_back({"uniqueness", s.uniqueness});
  parts.push_back({"commutators", s.commutators});
  parts.push_back({"torus", s.torus});
  // U_w sums: the product of root-subgroup sums equals the sum over U_w.
  CheckReport u;
  const auto& W = ctx_->weyl();
  const auto probes = std::vector<linrep::Vec>{ctx_->one_tr(), ctx_->eta(ctx_->roots().full_set())};
  const std::size_t qa = ctx_->subfield(cfg_.a).size();
  for (int w = 0; w < W.size(); ++w) {
    std::size_t order = 1;
    for (int k = 0; k < W.length(w); ++k) order *= qa;
    if (order > 512) {
      u.skip();
      continue;
    }
    for (const auto& v : probes) {
      u.record(ctx_->u_sum(w, cfg_.a, v) == ctx_->u_sum_enumerated(w, cfg_.a, v),
               [&] { return "U_w sum order dependence for w=" + W.format(w); });
    }
  }
  u.note("exhaustive", s.exhaustive ? "true" : "false");
  parts.push_back({"U_w sums", u});
}

void Runner::composition(Parts& parts) {
  const auto summary = permmod::composition_report(*ctx_, seed("composition"));
  CheckReport r;
  int sum = 0;
  std::ostringstream dims;
  for (std::size_t i = 0; i < summary.borel_factors.size(); ++i) {
    sum += summary.borel_factors[i];
    dims << (i ? "," : "") << summary.borel_factors[i];
  }
  r.record(sum == summary.dim, "factor dimensions do not sum to the module dimension");
  r.note("module dimension", std::to_string(summary.dim));
  r.note("factor count", std::to_string(summary.borel_factors.size()));
  r.note("factor dimensions", dims.str());
  // Jordan-Holder: the factors of the E_J together are those of k[G/B].
  std::vector<int> merged;
  for (const auto& [J, f] : summary.piece_factors) {
    merged.insert(merged.end(), f.begin(), f.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    r.note("E_" + label(J).substr(2) + " factors", os.str());
  }
  std::sort(merged.begin(), merged.end());
  r.record(merged == summary.borel_factors, "factors of the E_J differ from those of k[G/B]");
  parts.push_back({"k[G/B]", r});
}

SuiteReport Runner::execute(const SuiteInfo& info) {
  SuiteReport rep;
  rep.name = info.name;
  rep.anchor = info.anchor;
  if (info.needs_defining && !ctx_->defining()) {
    rep.status = "skipped";
    rep.reason = "requires the defining characteristic";
    return rep;
  }
  if (info.needs_extension && cfg_.a == cfg_.b) {
    rep.status = "skipped";
    rep.reason = "requires b != a";
    return rep;
  }
  const auto start = std::chrono::steady_clock::now();
  std::string na;
  auto& parts = rep.parts;
  const unsigned a = cfg_.a, b = cfg_.b;
  const auto& n = info.name;
  if (n == "combinatorics") {
    combinatorics(parts, na);
  } else if (n == "structure") {
    structure(parts);
  } else if (n == "lemma-3.2") {
    per_j(parts, [&](Subset J) { return permmod::verify_simple_reflection_action(*ctx_, J); });
  } else if (n == "filtration") {
    parts.push_back({"level a", permmod::verify_filtration(*ctx_)});
    if (wants_extension()) parts.push_back({"level b", permmod::verify_filtration(ext())});
  } else if (n == "prop-3.4") {
    per_j(parts, [&](Subset J) { return permmod::verify_quotient_basis(*ctx_, J); });
  } else if (n == "prop-3.5") {
    per_j(parts, [&](Subset J) { return permmod::verify_parabolic_realization(*ctx_, J, seed(n, J)); });
  } else if (n == "steinberg") {
    for (unsigned m = 1; m <= a; ++m) {
      if (!divides(m, a)) continue;
      for (Subset J : subsets()) {
        parts.push_back({label(J) + " m=" + std::to_string(m), permmod::verify_steinberg_identity(*ctx_, J, m)});
      }
    }
  } else if (n == "lemma-4.5") {
    per_j(parts, [&](Subset J) { return permmod::verify_commutation_absorption(ext(), J, a, b); });
  } else if (n == "theta") {
    per_j(parts, [&](Subset J) { return permmod::verify_theta_steps(ext(), J, a, b); });
  } else if (n == "prop-4.3") {
    per_j(parts, [&](Subset J) { return permmod::verify_separation(ext(), J, a, b); });
  } else if (n == "prop-4.4") {
    per_j(parts, [&](Subset J) { return permmod::verify_induction_steps(ext(), J, a, b); });
    std::size_t cases = 0;
    for (const auto& p : parts) cases += p.report.total;
    if (cases == 0) na = "no pair w, s w in Y^J with s w > w";
  } else if (n == "fixed-points") {
    parts.push_back({"k[G/B]", permmod::verify_fixed_points(*ctx_, cfg_.fixed_samples, seed(n))});
  } else if (n == "section-5") {
    per_j(parts, [&](Subset J) { return permmod::verify_socle_route(*ctx_, J, cfg_.socle_samples, seed(n, J)); });
  } else if (n == "socle") {
    per_j(parts, [&](Subset J) { return permmod::verify_socle(*ctx_, J, seed(n, J)); });
  } else if (n == "composition") {
    composition(parts);
  } else {
    throw std::logic_error("unregistered suite " + n);
  }
  for (const auto& p : parts) rep.totals.absorb(p.report);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!na.empty()) {
    rep.status = "not-applicable";
    rep.reason = na;
  } else if (rep.totals.failed > 0) {
    rep.status = "fail";
  } else if (rep.totals.checked() == 0) {
    rep.status = "empty";
    rep.reason = "no non-vacuous case";
  } else {
    rep.status = "pass";
  }
  return rep;
}

ordered_json part_json(const SuitePart& p) {
  ordered_json j;
  j["label"] = p.label;
  j["checked"] = p.report.checked();
  j["vacuous"] = p.report.vacuous;
  j["failed"] = p.report.failed;
  j["failures"] = p.report.failures;
  ordered_json notes = ordered_json::array();
  for (const auto& [k, v] : p.report.notes) notes.push_back({{"key", k}, {"value", v}});
  j["notes"] = notes;
  return j;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const RunConfig cfg = normalize(config);
  Runner runner(cfg);
  RunResult result;
  for (const auto& name : cfg.suites) {
    const auto& reg = suite_registry();
    const auto& info = *std::find_if(reg.begin(), reg.end(), [&](const SuiteInfo& s) { return s.name == name; });
    result.suites.push_back(runner.execute(info));
  }

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  ordered_json meta;
  meta["type"] = cfg.type;
  meta["group"] = runner.ctx().group().name();
  meta["q"] = cfg.q;
  meta["a"] = cfg.a;
  meta["b"] = cfg.b;
  meta["char"] = cfg.ell;
  meta["defining"] = runner.ctx().defining();
  meta["seed"] = cfg.seed;
  meta["budget"] = cfg.budget;
  meta["module_dim"] = runner.ctx().borel().dim();
  meta["suites"] = cfg.suites;
  doc["meta"] = meta;
  ordered_json suites = ordered_json::array();
  std::ostringstream summary;
  summary << runner.ctx().describe() << ", dim k[G/B] = " << runner.ctx().borel().dim() << "\n";
  bool bad = false;
  for (const auto& s : result.suites) {
    ordered_json j;
    j["name"] = s.name;
    j["anchor"] = s.anchor;
    j["status"] = s.status;
    if (!s.reason.empty()) j["reason"] = s.reason;
    j["checked"] = s.totals.checked();
    j["vacuous"] = s.totals.vacuous;
    j["failed"] = s.totals.failed;
    if (cfg.timing) j["seconds"] = s.seconds;
    ordered_json parts = ordered_json::array();
    for (const auto& p : s.parts) parts.push_back(part_json(p));
    j["parts"] = parts;
    suites.push_back(j);
    bad = bad || s.status == "fail" || s.status == "empty";
    summary << "  " << s.name << std::string(s.name.size() < 14 ? 14 - s.name.size() : 1, ' ') << s.status;
    if (s.status != "skipped" && s.status != "not-applicable") {
      summary << "  checked=" << s.totals.checked() << " vacuous=" << s.totals.vacuous << " failed=" << s.totals.failed;
    }
    if (!s.reason.empty()) summary << "  (" << s.reason << ")";
    summary << "\n";
    for (const auto& f : s.totals.failures) summary << "      " << f << "\n";
  }
  doc["suites"] = suites;
  result.exit_code = bad ? kFailure : kSuccess;
  summary << (bad ? "FAIL" : "OK") << "\n";
  result.json = doc.dump(2) + "\n";
  result.summary = summary.str();
  return result;
}

namespace {

std::string format_vector(const linrep::Vec& v) {
  std::ostringstream os;
  std::size_t support = 0;
  for (auto x : v) support += x != 0;
  os << "dim " << v.size() << ", support " << support << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) os << "  " << i << ": " << unsigned(v[i]) << "\n";
  }
  return os.str();
}

std::string format_elements(const rootsys::WeylGroup& W, const std::vector<int>& ws) {
  std::string out = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + W.format(ws[i]);
  return out + "}\n";
}

}  // namespace

std::string inspect(const RunConfig& config, const std::string& object) {
  const RunConfig cfg = normalize(config);
  const auto colon = object.find(':');
  const std::string name = object.substr(0, colon);
  std::string arg;
  if (colon != std::string::npos) {
    arg = object.substr(colon + 1);
    const auto eq = arg.find('=');
    if (eq == std::string::npos || (arg.substr(0, eq) != "J" && arg.substr(0, eq) != "K")) {
      throw UsageError("object argument must look like J=12");
    }
    arg = arg.substr(eq + 1);
  }
  static const std::set<std::string> known = {"eta", "D", "fcl", "frakf", "YJ", "WJ", "EJ"};
  if (!known.count(name)) throw UsageError("unknown object '" + object + "'");
  Context ctx(rootsys::parse_type(cfg.type), cfg.q, cfg.a, cfg.ell, cfg.budget);
  Subset J = 0;
  try {
    J = rootsys::parse_subset(arg, ctx.roots().rank());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto& W = ctx.weyl();
  if (name == "eta") return format_vector(ctx.eta(J));
  if (name == "D") return format_vector(ctx.bigD(J));
  if (name == "fcl") return format_vector(ctx.f_cl(J, cfg.a));
  if (name == "frakf") return format_vector(ctx.frak_f(J, cfg.a));
  if (name == "YJ") return format_elements(W, W.y_set(J));
  if (name == "WJ") return format_elements(W, W.parabolic(J));
  const auto& E = *ctx.piece(J).E;
  std::ostringstream os;
  os << "dim " << E.dim() << "\nC_J:\n" << format_vector(ctx.piece(J).C);
  return os.str();
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification harness for permutation modules of finite Chevalley groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string object;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--type", cfg.type, "group type: A1, A2, A3 or B2")->required();
    sub->add_option("--q", cfg.q, "prime power q")->required();
    sub->add_option("--a", cfg.a, "field level a: the group is G(GF(q^a))");
    sub->add_option("--b", cfg.b, "extension level for the mixed-level suites (default 2a)");
    sub->add_option("--char", cfg.ell, "coefficient characteristic (default p)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--budget", cfg.budget, "largest permitted module dimension");
  };
  auto* run_cmd = app.add_subcommand("run", "run verification suites");
  add_config(run_cmd);
  run_cmd->add_option("--suites", cfg.suites, "comma-separated suite names, or all")->delimiter(',');
  run_cmd->add_option("--out", cfg.out, "path of the JSON report");
  run_cmd->add_flag("--timing", cfg.timing, "record wall-clock times in the report");
  run_cmd->add_option("--socle-samples", cfg.socle_samples, "random vectors per J in the socle route");
  run_cmd->add_option("--fixed-samples", cfg.fixed_samples, "random vectors in the fixed-point suite");
  app.add_subcommand("list", "list the registered suites");
  auto* inspect_cmd = app.add_subcommand("inspect", "print a named object");
  add_config(inspect_cmd);
  inspect_cmd->add_option("object", object, "eta:J=.., D:J=.., fcl:J=.., frakf:K=.., YJ:J=.., WJ:J=.., EJ:J=..")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }
  try {
    if (app.got_subcommand("list")) {
      out << list_suites();
      return kSuccess;
    }
    if (app.got_subcommand("inspect")) {
      out << inspect(cfg, object);
      return kSuccess;
    }
    const auto result = run(cfg);
    out << result.summary;
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "cannot write " << cfg.out << "\n";
        return kUsage;
      }
      f << result.json;
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace chevmod::cli
