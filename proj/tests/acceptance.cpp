// Acceptance run: one PASS/FAIL line per criterion. All comparisons are
// exact; runtime limits are wall-clock.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "chevmod/chevalley.hpp"
#include "chevmod/cli.hpp"
#include "chevmod/linrep.hpp"
#include "chevmod/permmod.hpp"
#include "chevmod/rootsys.hpp"

using namespace chevmod;
using permmod::Context;
using rootsys::CartanType;
using rootsys::Subset;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Context make(CartanType t, unsigned q, unsigned level, unsigned ell = 0) {
  return Context(t, q, level, ell == 0 ? gf::prime_power(q).first : ell);
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int report(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= limit_seconds;
  const bool pass = o.pass && in_time;
  std::printf("criterion %2d %s  %s: %s [%.2fs, limit %.0fs%s]\n", id, pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.c_str(), secs, limit_seconds, in_time ? "" : ", too slow");
  std::fflush(stdout);
  return pass ? 0 : 1;
}

void absorb(Outcome& o, const CheckReport& r, const std::string& where) {
  if (r.failed > 0) {
    o.pass = false;
    o.detail += " [" + where + ": " + (r.failures.empty() ? "failure" : r.failures.front()) + "]";
  }
}

}  // namespace

int main() {
  int failures = 0;

  failures += report(1, "six composition factors of k[SL_3(F_2)/B]", 5, [] {
    const auto ctx = make(CartanType::A2, 2, 1);
    const auto f = linrep::composition_factors(ctx.borel().module(), 1);
    int sum = 0;
    for (int d : f) sum += d;
    Outcome o;
    o.pass = f.size() == 6 && sum == 21 && ctx.borel().dim() == 21;
    o.detail = std::to_string(f.size()) + " factors {" + join(f) + "}, sum " + std::to_string(sum);
    return o;
  });

  failures += report(2, "filtration pieces", 30, [] {
    Outcome o;
    for (auto [t, expect] : std::vector<std::pair<CartanType, int>>{
             {CartanType::A1, 3}, {CartanType::A2, 21}, {CartanType::B2, 45}}) {
      const auto start = std::chrono::steady_clock::now();
      const auto ctx = make(t, 2, 1);
      int total = 0, nonzero = 0;
      std::vector<int> dims;
      for (Subset J = 0; J <= ctx.roots().full_set(); ++J) {
        const int d = ctx.piece(J).E->dim();
        dims.push_back(d);
        total += d;
        nonzero += d > 0;
      }
      absorb(o, permmod::verify_filtration(ctx), ctx.group().name());
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      o.pass = o.pass && nonzero == (1 << ctx.roots().rank()) && total == expect && ctx.borel().dim() == expect &&
               secs < 10;
      o.detail += " " + ctx.group().name() + ": " + join(dims) + " -> " + std::to_string(total);
    }
    return o;
  });

  failures += report(3, "Steinberg piece dimension and irreducibility", 30, [] {
    Outcome o;
    for (auto [t, q] : std::vector<std::pair<CartanType, unsigned>>{
             {CartanType::A1, 2}, {CartanType::A1, 3}, {CartanType::A2, 2}, {CartanType::B2, 2}}) {
      const auto ctx = make(t, q, 1);
      const auto& E = *ctx.piece(ctx.roots().full_set()).E;
      const auto expect = ipow(q, ctx.weyl().length(ctx.weyl().longest()));
      const bool irr = linrep::meataxe(E.module(), 3).irreducible;
      o.pass = o.pass && static_cast<std::uint64_t>(E.dim()) == expect && irr;
      o.detail += " " + ctx.group().name() + ": dim " + std::to_string(E.dim()) + (irr ? " irreducible" : " REDUCIBLE");
    }
    return o;
  });

  failures += report(4, "simple reflection case identities", 60, [] {
    Outcome o;
    std::size_t checked = 0;
    for (auto [t, q] : std::vector<std::pair<CartanType, unsigned>>{
             {CartanType::A1, 2}, {CartanType::A1, 3}, {CartanType::A2, 2}}) {
      const auto ctx = make(t, q, 1);
      for (Subset J = 0; J <= ctx.roots().full_set(); ++J) {
        const auto r = permmod::verify_simple_reflection_action(ctx, J);
        absorb(o, r, ctx.group().name());
        checked += r.checked();
      }
    }
    o.pass = o.pass && checked > 0;
    o.detail = std::to_string(checked) + " identities checked" + o.detail;
    return o;
  });

  failures += report(5, "structure facts and Weyl group sweeps", 300, [] {
    Outcome o;
    std::size_t sweep_checked = 0, matrix_checked = 0;
    for (auto t : {CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2}) {
      rootsys::WeylGroup W(t);
      const auto s = rootsys::sweep_stable_inversion_sets(W);
      std::size_t local = s.checked();
      bool clean = s.counterexamples.empty();
      for (Subset J = 0; J <= W.datum().full_set(); ++J) {
        const auto l = rootsys::sweep_ladder_separation(W, J);
        local += l.checked();
        clean = clean && l.counterexamples.empty();
      }
      o.pass = o.pass && clean && local > 0;
      sweep_checked += local;
    }
    const std::vector<std::tuple<CartanType, unsigned, unsigned>> groups = {
        {CartanType::A1, 2, 1}, {CartanType::A1, 3, 1}, {CartanType::A1, 2, 2}, {CartanType::A1, 5, 1},
        {CartanType::A1, 7, 1}, {CartanType::A1, 2, 3}, {CartanType::A1, 3, 2}, {CartanType::A1, 2, 4},
        {CartanType::A2, 2, 1}, {CartanType::A2, 3, 1}, {CartanType::A2, 2, 2}, {CartanType::A2, 2, 4},
        {CartanType::A3, 2, 1}, {CartanType::A3, 3, 1}, {CartanType::A3, 2, 4}, {CartanType::B2, 2, 1},
        {CartanType::B2, 3, 1}, {CartanType::B2, 2, 2}, {CartanType::B2, 2, 4}};
    for (auto [t, p, k] : groups) {
      chevalley::ChevalleyGroup G(t, gf::FieldSpec::make(p, k));
      chevalley::StructureOptions opts;
      const auto r = chevalley::check_structure_facts(G, opts);
      const bool should_be_exhaustive = G.field().order() <= 9;
      if (r.exhaustive != should_be_exhaustive) {
        o.pass = false;
        o.detail += " [" + G.name() + ": unexpected sweep mode]";
      }
      for (const auto* rep : {&r.conjugation, &r.positive_part, &r.multiplication, &r.uniqueness, &r.commutators,
                              &r.torus}) {
        absorb(o, *rep, G.name());
        const bool vacuous_ok = rep == &r.commutators && G.roots().rank() == 1;
        if (rep->checked() == 0 && !vacuous_ok) {
          o.pass = false;
          o.detail += " [" + G.name() + ": empty fact]";
        }
        if (!r.exhaustive && !vacuous_ok && rep->checked() < 1000) {
          o.pass = false;
          o.detail += " [" + G.name() + ": fewer than 1000 samples]";
        }
        matrix_checked += rep->checked();
      }
    }
    o.detail = std::to_string(sweep_checked) + " Weyl cases, " + std::to_string(matrix_checked) + " matrix cases over " +
               std::to_string(groups.size()) + " groups" + o.detail;
    return o;
  });

  failures += report(6, "mixed-level machinery for SL_3, q=2, a=1, b=2", 600, [] {
    Outcome o;
    const auto ctx = make(CartanType::A2, 2, 2);
    const auto& W = ctx.weyl();
    std::size_t pairs = 0, witnesses = 0, theta = 0;
    for (Subset J = 0; J < 4; ++J) {
      const auto p = permmod::verify_induction_steps(ctx, J, 1, 2);
      absorb(o, p, "induction step");
      pairs += p.checked();
      const auto Y = W.y_set(J);
      const auto r = permmod::find_separation_witness(ctx, J, Y, 0, 1, 2, std::vector<linrep::Scalar>(Y.size(), 1));
      if (r.precondition) {
        ++witnesses;
        if (!r.found) {
          o.pass = false;
          o.detail += " [no separation witness for J=" + rootsys::format_subset(J, 2) + "]";
        }
      }
      const auto t = permmod::verify_theta_steps(ctx, J, 1, 2);
      absorb(o, t, "theta steps");
      theta += t.checked();
    }
    o.pass = o.pass && pairs > 0 && witnesses > 0 && theta > 0;
    o.detail = std::to_string(pairs) + " induction pairs, " + std::to_string(witnesses) + " separation witnesses, " +
               std::to_string(theta) + " theta identities" + o.detail;
    return o;
  });

  failures += report(7, "Carter-Lusztig vectors and simple socles", 120, [] {
    Outcome o;
    std::size_t checked = 0;
    for (auto [t, q] : std::vector<std::pair<CartanType, unsigned>>{
             {CartanType::A1, 2}, {CartanType::A1, 3}, {CartanType::A2, 2}}) {
      const auto ctx = make(t, q, 1);
      for (Subset J = 0; J <= ctx.roots().full_set(); ++J) {
        const auto r = permmod::verify_socle_route(ctx, J, 20, 100 + J);
        absorb(o, r, ctx.group().name() + " J=" + rootsys::format_subset(J, ctx.roots().rank()));
        checked += r.checked();
      }
    }
    o.pass = o.pass && checked > 0;
    o.detail = std::to_string(checked) + " checks" + o.detail;
    return o;
  });

  failures += report(8, "U-fixed vectors in cyclic submodules", 120, [] {
    Outcome o;
    for (auto [t, q] : std::vector<std::pair<CartanType, unsigned>>{
             {CartanType::A1, 2}, {CartanType::A1, 3}, {CartanType::A2, 2}, {CartanType::B2, 2}}) {
      const auto ctx = make(t, q, 1);
      const auto r = permmod::verify_fixed_points(ctx, 100, 17);
      absorb(o, r, ctx.group().name());
      const std::size_t good = r.checked() - r.failed;
      o.pass = o.pass && good == 100 && r.checked() == 100;
      o.detail += " " + ctx.group().name() + ": " + std::to_string(good) + "/100";
    }
    return o;
  });

  failures += report(9, "cross-characteristic count for SL_2(F_2), l=5", 10, [] {
    const auto ctx = make(CartanType::A1, 2, 1, 5);
    const auto f = linrep::composition_factors(ctx.borel().module(), 1);
    Outcome o;
    o.pass = f.size() == 2 && ctx.borel().dim() == 3;
    o.detail = std::to_string(f.size()) + " factors {" + join(f) + "}";
    return o;
  });

  failures += report(10, "byte-identical reports", 120, [] {
    cli::RunConfig c;
    c.type = "A2";
    c.q = 2;
    c.suites = {"all"};
    const auto a = cli::run(c);
    const auto b = cli::run(c);
    Outcome o;
    o.pass = a.json == b.json && !a.json.empty();
    o.detail = std::to_string(a.json.size()) + " bytes, " + (o.pass ? "identical" : "different");
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
