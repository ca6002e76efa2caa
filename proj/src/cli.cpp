#include "gadgetforge/cli.hpp"

#include "gadgetforge/bounds.hpp"
#include "gadgetforge/disjointness.hpp"
#include "gadgetforge/errors.hpp"
#include "gadgetforge/gadgets.hpp"
#include "gadgetforge/graphs.hpp"
#include "gadgetforge/hashing.hpp"
#include "gadgetforge/hitting.hpp"
#include "gadgetforge/textio.hpp"
#include "gadgetforge/thickness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace gadgetforge::cli {

namespace {

using nlohmann::json;

struct Session {
  std::ostream& out;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  bool json_output = false;
  json params = json::object();
  json outputs = json::object();
  std::string first_output;

  void write_artifact(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file " + path);
    f << content;
    if (!f.flush()) throw Error("failed writing " + path);
    outputs[path] = hex64(fnv1a64(content));
    if (first_output.empty()) first_output = path;
  }

  void write_manifest() {
    if (first_output.empty()) return;
    json m;
    std::string line = "gadgetforge";
    for (const auto& a : argv) line += " " + a;
    m["command"] = line;
    m["seed"] = seed;
    m["params"] = params;
    m["outputs"] = outputs;
    m["version"] = kVersion;
    std::ofstream f(first_output + ".manifest.json");
    f << m.dump(2) << '\n';
  }

  void emit(const json& report, const std::function<void()>& text) {
    if (json_output) {
      out << report.dump(2) << '\n';
    } else {
      text();
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Terminating decimals print as decimals, anything else as num/den.
std::string format_rational(const Rational& r) {
  BigInt den = denominator(r);
  unsigned twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return to_fraction_string(r);
  const unsigned digits = std::max(twos, fives);
  BigInt scaled = numerator(r) * boost::multiprecision::pow(BigInt(10), digits) / denominator(r);
  const bool neg = scaled < 0;
  std::string s = (neg ? BigInt(-scaled) : scaled).str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return (neg ? "-" : "") + s;
}

std::string indices(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

HashMode parse_mode(const std::string& s) {
  if (s == "full") return HashMode::FullIndep;
  if (s == "poly10") return HashMode::Poly10Wise;
  throw ValidationError("mode must be 'full' or 'poly10'");
}

json hit_report_json(const HitReport& r) {
  return {{"trials", r.trials},       {"hits", r.hits},
          {"hit_rate", r.hit_rate},   {"estimated_delta", r.estimated_delta},
          {"wilson_lo", r.wilson_lo}, {"wilson_hi", r.wilson_hi},
          {"strategy", to_string(r.strategy)}, {"t_left", r.t_left}, {"t_right", r.t_right}};
}

std::string dist_text(const HittingDistribution& d) {
  std::ostringstream ss;
  write_distribution(ss, d);
  return ss.str();
}

// --- verify-all -------------------------------------------------------------

struct Check {
  std::string name;
  std::function<bool()> body;
};

bool run_verify_all(Session& s, std::uint32_t q) {
  const auto g = build_ap(q);
  const auto c = build_sqr_coloring(q);
  const auto gadget = build_gadget_from_colored_graph(g, c);
  std::vector<Check> checks = {
      {"ap-graph regular, degree q, one common neighbour",
       [&] { return g.degree() == q && max_common_neighbors(g) == 1; }},
      {"ap-graph second eigenvalue sqrt(q)",
       [&] {
         auto rep = spectral_report(g);
         return std::abs(rep.gamma_hat * q - std::sqrt(double(q))) < 1e-6 && rep.multiplicity_of_d == 1;
       }},
      {"gadget is a subfunction of SQR", [&] { return verify_subfunction(gadget, q).ok(); }},
      {"expander distributions exact, monochromatic",
       [&] {
         for (int b : {0, 1}) {
           auto d = build_expander_distribution(g, c, b);
           if (d.total_mass() != 1 || !verify_monochromatic(d, gadget).ok) return false;
         }
         return true;
       }},
      {"hitting monotone in t",
       [&] {
         auto d = build_expander_distribution(g, c, 1);
         Rational prev = -1;
         for (std::uint32_t t = 1; t <= std::min<std::uint32_t>(q * q, 3); ++t) {
           Rational p = test_hitting_exact(d, t, t);
           if (p < prev) return false;
           prev = p;
         }
         return true;
       }},
      {"sparsified distribution keeps total mass 1",
       [&] { return sparsify(build_expander_distribution(g, c, 0), 4, s.seed).total_mass() == 1; }},
      {"4-wise hash family exact for n=3", [&] { return verify_kwise(HashFamily(3, 4)).ok; }},
      {"disj0 support is 0-monochromatic",
       [&] {
         auto d = build_disj0_distribution(6, 2);
         return verify_monochromatic(d, disj_gadget_matrix(DisjGadget(6, 2))).ok;
       }},
      {"X_2 is reducible", [&] { return peel_core(build_xn(2, 3), 2).empty(); }},
      {"In(X_2, 1) certificate at eps=1", [&] { return verify_theorem5(2, 1, Rational(1)).ok(); }},
      {"corollary bound at 2^300, 2^50",
       [&] { return corollary1_bound(Rational(300), Rational(50)) == Rational(25, 2); }},
  };
  bool all = true;
  json results = json::array();
  for (const auto& check : checks) {
    bool ok = false;
    std::string error;
    try {
      ok = check.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    all = all && ok;
    results.push_back({{"check", check.name}, {"ok", ok}, {"error", error}});
    if (!s.json_output) {
      s.out << (ok ? "PASS " : "FAIL ") << check.name << (error.empty() ? "" : " (" + error + ")") << '\n';
    }
  }
  if (s.json_output) s.out << json{{"q", q}, {"seed", s.seed}, {"checks", results}, {"ok", all}}.dump(2) << '\n';
  return all;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session s{out, args, 0, false, json::object(), json::object(), {}};
  CLI::App app{"gadgetforge: gadgets, hitting distributions and thickness certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed and --json may follow the subcommand
  app.set_help_flag("--help", "print help");  // frees -h; --h is a parameter
  app.set_version_flag("--version", kVersion);
  app.add_flag("--json", s.json_output, "JSON reports instead of text");
  app.add_option("--seed", s.seed, "master seed for all randomness");

  std::function<int()> action;
  auto bind = [&](CLI::App* cmd, std::function<int()> fn) {
    cmd->callback([&action, fn] { action = fn; });
  };

  // gadget ap|disj|verify
  auto* gadget = app.add_subcommand("gadget", "build or verify gadgets");
  gadget->require_subcommand(1);
  std::uint32_t q = 3, m = 4, k = 2;
  std::string color = "sqr", out_path, in_path;
  {
    auto* ap = gadget->add_subcommand("ap", "gadget g(AP_q, c) from a coloured affine-plane graph");
    ap->add_option("--q", q, "prime q")->required();
    ap->add_option("--color", color, "'sqr' or a colouring file")->capture_default_str();
    ap->add_option("--out", out_path, "gadget output file");
    bind(ap, [&] {
      const auto g = build_ap(q);
      const auto c = color == "sqr" ? build_sqr_coloring(q) : [&] {
        std::istringstream in(read_file(color));
        return read_coloring(in);
      }();
      const auto pg = build_gadget_from_colored_graph(g, c);
      s.params = {{"q", q}, {"color", color}};
      if (color == "sqr") s.params["nonresidue"] = find_nonresidue(q).value();
      if (!out_path.empty()) {
        std::ostringstream ss;
        write_gadget(ss, pg);
        s.write_artifact(out_path, ss.str());
      }
      json rep{{"rows", pg.rows()},       {"cols", pg.cols()},
               {"defined", pg.defined_count()}, {"ones_in_coloring", c.ones()},
               {"balanced", is_balanced(c)},    {"hash", hex64(pg.identity_hash())}};
      s.emit(rep, [&] {
        out << "gadget " << pg.rows() << "x" << pg.cols() << " defined=" << pg.defined_count()
            << " balanced=" << (is_balanced(c) ? "yes" : "no") << " hash=" << hex64(pg.identity_hash()) << '\n';
      });
      return 0;
    });

    auto* dj = gadget->add_subcommand("disj", "dense DISJ^m_k matrix");
    dj->add_option("--m", m)->required();
    dj->add_option("--k", k)->required();
    dj->add_option("--out", out_path);
    bind(dj, [&] {
      const auto pg = disj_gadget_matrix(DisjGadget(m, k));
      s.params = {{"m", m}, {"k", k}};
      if (!out_path.empty()) {
        std::ostringstream ss;
        write_gadget(ss, pg);
        s.write_artifact(out_path, ss.str());
      }
      s.emit({{"side", pg.rows()}, {"hash", hex64(pg.identity_hash())}}, [&] {
        out << "disj " << pg.rows() << "x" << pg.cols() << " hash=" << hex64(pg.identity_hash()) << '\n';
      });
      return 0;
    });

    auto* vf = gadget->add_subcommand("verify", "check a q^2 x q^2 gadget file against SQR^q");
    vf->add_option("--q", q)->required();
    vf->add_option("--in", in_path)->required();
    bind(vf, [&] {
      std::istringstream in(read_file(in_path));
      const auto rep = verify_subfunction(read_gadget(in), q);
      json j{{"ok", rep.ok()}, {"cells_checked", rep.cells_checked}, {"defined_cells", rep.defined_cells}};
      if (rep.counterexample) j["counterexample"] = {rep.counterexample->row, rep.counterexample->col};
      s.emit(j, [&] {
        out << (rep.ok() ? "ok" : "MISMATCH") << " defined=" << rep.defined_cells;
        if (rep.counterexample) out << " at " << rep.counterexample->row << "," << rep.counterexample->col;
        out << '\n';
      });
      return rep.ok() ? 0 : 1;
    });
  }

  // spectral
  auto* spectral = app.add_subcommand("spectral", "spectrum and expansion of AP_q or a graph file");
  std::size_t samples = 200;
  {
    spectral->add_option("--q", q, "prime q");
    spectral->add_option("--graph", in_path, "graph file instead of AP_q");
    spectral->add_option("--samples", samples, "random sets for the expansion check")->capture_default_str();
    bind(spectral, [&] {
      const auto g = [&] {
        if (in_path.empty()) return build_ap(q);
        std::istringstream in(read_file(in_path));
        return read_graph(in);
      }();
      const auto rep = spectral_report(g);
      const auto exp = check_vertex_expansion(g, rep.gamma_hat, samples, s.seed);
      const bool affine = check_affine_like(g.vertex_count(), g.degree(), rep.gamma_hat);
      s.params = {{"q", q}, {"graph", in_path}, {"samples", samples}};
      json j{{"m", g.vertex_count()}, {"d", g.degree()}, {"gamma_hat", rep.gamma_hat},
             {"lambda2", rep.eigenvalues.size() > 1 ? rep.eigenvalues[1] : 0.0},
             {"multiplicity_of_d", rep.multiplicity_of_d}, {"sweeps", rep.sweeps},
             {"max_common_neighbors", max_common_neighbors(g)}, {"affine_like", affine},
             {"theorem2_h", theorem2_h(rep.gamma_hat)}, {"expansion_ok", exp.passed()},
             {"expansion_min_slack", exp.min_slack}};
      s.emit(j, [&] {
        out << "m=" << g.vertex_count() << " d=" << g.degree() << " gamma_hat=" << rep.gamma_hat
            << " mult(d)=" << rep.multiplicity_of_d << " affine_like=" << (affine ? "yes" : "no")
            << " theorem2_h=" << theorem2_h(rep.gamma_hat) << " expansion=" << (exp.passed() ? "ok" : "VIOLATED")
            << '\n';
      });
      return exp.passed() ? 0 : 1;
    });
  }

  // hitdist build|list|sample|test|sparsify|bound
  auto* hit = app.add_subcommand("hitdist", "hitting distributions on g(AP_q, SQR)");
  hit->require_subcommand(1);
  int b = 0, h = 1;
  std::string mode = "full", strategy = "random-sets";
  std::uint32_t t = 0;
  std::uint64_t trials = 10000, count = 10, sparsify_c = 8;
  bool exact_test = false;
  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--q", q, "prime q (rebuild the distribution)");
    cmd->add_option("--b", b, "colour 0 or 1")->capture_default_str();
    cmd->add_option("--color", b, "alias of --b");
    cmd->add_option("--mode", mode, "full or poly10")->capture_default_str();
    cmd->add_option("--in", in_path, "distribution file instead of --q");
  };
  auto load_dist = [&]() {
    s.params["q"] = q;
    s.params["b"] = b;
    s.params["mode"] = mode;
    if (!in_path.empty()) {
      s.params["in"] = in_path;
      std::istringstream in(read_file(in_path));
      return read_distribution(in);
    }
    ExpanderDistOptions opt;
    opt.mode = parse_mode(mode);
    return build_expander_distribution(build_ap(q), build_sqr_coloring(q), b, opt);
  };
  {
    auto* bld = hit->add_subcommand("build", "build and export a distribution");
    add_source(bld);
    bld->add_option("--out", out_path);
    bind(bld, [&] {
      auto d = load_dist();
      const std::string text = dist_text(d);
      if (!out_path.empty()) s.write_artifact(out_path, text);
      json j{{"mode", d.exact() ? "exact" : "sampler-only"},
             {"support", d.support.size()},
             {"support_size", d.support_size ? d.support_size->str() : "unknown"},
             {"warnings", d.warnings}};
      s.emit(j, [&] {
        out << "mode=" << (d.exact() ? "exact" : "sampler-only") << " support="
            << (d.support_size ? d.support_size->str() : "unknown") << '\n';
        for (const auto& w : d.warnings) out << "warning: " << w << '\n';
      });
      return 0;
    });

    auto* lst = hit->add_subcommand("list", "print the support");
    add_source(lst);
    bind(lst, [&] {
      auto d = load_dist();
      out << dist_text(d);
      return 0;
    });

    auto* smp = hit->add_subcommand("sample", "draw rectangles");
    add_source(smp);
    smp->add_option("--count", count)->capture_default_str();
    bind(smp, [&] {
      auto d = load_dist();
      s.params["count"] = count;
      json arr = json::array();
      for (std::uint64_t i = 0; i < count; ++i) {
        Rng rng = Rng::derive(s.seed, i);
        auto r = sample_rectangle(d, rng);
        if (s.json_output) {
          arr.push_back({{"left", r.left}, {"right", r.right}});
        } else {
          out << indices(r.left) << " | " << indices(r.right) << '\n';
        }
      }
      if (s.json_output) out << arr.dump(2) << '\n';
      return 0;
    });

    auto* tst = hit->add_subcommand("test", "hitting test; exact or Monte-Carlo");
    add_source(tst);
    tst->add_option("--t", t, "set size on each side (default side/4)");
    tst->add_option("--trials", trials)->capture_default_str();
    tst->add_option("--strategy", strategy, "random-sets, neighborhood-avoid, first-coord-slab")
        ->capture_default_str();
    tst->add_flag("--exact", exact_test, "exact minimum over all set pairs");
    bind(tst, [&] {
      auto d = load_dist();
      const auto side = static_cast<std::uint32_t>(d.gadget.rows);
      if (t == 0) t = (side + 3) / 4;
      s.params["t"] = t;
      if (exact_test) {
        const Rational p = test_hitting_exact(d, t, t);
        s.emit({{"t", t}, {"min_hit", to_fraction_string(p)}, {"min_hit_real", static_cast<double>(p)}},
               [&] { out << "t=" << t << " min_hit=" << to_fraction_string(p) << " (" << static_cast<double>(p) << ")\n"; });
        return 0;
      }
      s.params["trials"] = trials;
      s.params["strategy"] = strategy;
      const auto rep = test_hitting_mc(d, t, t, trials, parse_hit_strategy(strategy), s.seed);
      s.emit(hit_report_json(rep), [&] {
        out << "t=" << t << " trials=" << rep.trials << " hits=" << rep.hits << " rate=" << rep.hit_rate
            << " wilson=[" << rep.wilson_lo << ", " << rep.wilson_hi << "] delta~" << rep.estimated_delta << '\n';
      });
      return 0;
    });

    auto* sp = hit->add_subcommand("sparsify", "uniform distribution on c 2^k draws");
    add_source(sp);
    sp->add_option("--c", sparsify_c)->capture_default_str();
    sp->add_option("--out", out_path);
    bind(sp, [&] {
      auto d = sparsify(load_dist(), sparsify_c, s.seed);
      s.params["c"] = sparsify_c;
      const std::string text = dist_text(d);
      if (!out_path.empty()) {
        s.write_artifact(out_path, text);
      } else {
        out << text;
      }
      return 0;
    });

    auto* bd = hit->add_subcommand("bound", "support lower bound for both colours at h");
    bd->add_option("--q", q)->required();
    bd->add_option("--h", h)->required();
    bd->add_option("--mode", mode)->capture_default_str();
    bind(bd, [&] {
      ExpanderDistOptions opt;
      opt.mode = parse_mode(mode);
      const auto g = build_ap(q);
      const auto c = build_sqr_coloring(q);
      auto d0 = build_expander_distribution(g, c, 0, opt);
      auto d1 = build_expander_distribution(g, c, 1, opt);
      const auto chk = support_lower_bound_check(d0, d1, h);
      const auto th = theorem2_h(spectral_report(g).gamma_hat);
      s.params = {{"q", q}, {"h", h}, {"mode", mode}};
      json j{{"ok", chk.ok}, {"theorem2_h", th}};
      if (chk.violated_color) j["violated_color"] = *chk.violated_color;
      s.emit(j, [&] {
        out << "support>=2^" << h << ": " << (chk.ok ? "yes" : "no");
        if (chk.violated_color) out << " (colour " << *chk.violated_color << ")";
        out << " theorem2_h=" << th << '\n';
      });
      return chk.ok ? 0 : 1;
    });
  }

  // disj disj0|disj1|bound
  auto* disj = app.add_subcommand("disj", "disjointness hitting distributions");
  disj->require_subcommand(1);
  std::uint64_t big_m = 20, big_k = 2, big_t = 2;
  {
    auto* d0 = disj->add_subcommand("disj0", "colour-0 distribution {U_I x U_I}");
    d0->add_option("--m", m)->required();
    d0->add_option("--k", k)->required();
    d0->add_option("--out", out_path);
    bind(d0, [&] {
      auto d = build_disj0_distribution(m, k);
      s.params = {{"m", m}, {"k", k}};
      const std::string text = dist_text(d);
      if (!out_path.empty()) s.write_artifact(out_path, text);
      s.emit({{"support", d.support.size()}, {"side", d.gadget.rows}, {"coverage_holds", disj0_coverage_holds(m, k)}},
             [&] { out << "support=" << d.support.size() << " side=" << d.gadget.rows << '\n'; });
      return 0;
    });
    auto* d1 = disj->add_subcommand("disj1", "sample a colour-1 rectangle U_A x V_A");
    d1->add_option("--m", m)->required();
    d1->add_option("--k", k)->required();
    bind(d1, [&] {
      auto r = sample_disj1_rectangle(m, k, s.seed);
      s.params = {{"m", m}, {"k", k}};
      std::string a;
      for (std::uint32_t i = 0; i < m; ++i) a += (r.half_mask >> i & 1) ? '1' : '0';
      s.emit({{"A", a}, {"side", r.left_size.str()}, {"h", r.h}, {"t", r.t}, {"in_regime", r.in_regime}}, [&] {
        out << "A=" << a << " side=" << r.left_size.str() << " h=" << r.h << " t=" << r.t
            << " in_regime=" << (r.in_regime ? "yes" : "no") << '\n';
      });
      return 0;
    });
    auto* bd = disj->add_subcommand("bound", "miss-probability bound and exact distance term");
    bd->add_option("--m", big_m)->required();
    bd->add_option("--k", big_k)->required();
    bd->add_option("--h", h)->required();
    bd->add_option("--t", big_t)->required();
    bind(bd, [&] {
      auto r = disj1_failure_bound(big_m, big_k, static_cast<unsigned>(h), big_t);
      s.params = {{"m", big_m}, {"k", big_k}, {"h", h}, {"t", big_t}};
      json j{{"exp_term", r.exp_term}, {"distance_term", to_fraction_string(r.distance_term)},
             {"miss_bound", r.miss_bound}};
      if (big_m <= 4096) j["distance_exact"] = to_fraction_string(disj1_distance_exact(big_m, big_k, big_t));
      s.emit(j, [&] {
        out << "exp_term=" << r.exp_term << " distance_term=" << to_fraction_string(r.distance_term)
            << " miss_bound=" << r.miss_bound << '\n';
      });
      return 0;
    });
  }

  // thickness build|inflate|stats|peel|verify
  auto* thick = app.add_subcommand("thickness", "reducible sets, inflation and peeling");
  thick->require_subcommand(1);
  unsigned n = 2;
  std::uint64_t grid_m = 3, inflate_s = 2, threshold = 2;
  std::string eps_text = "1/2";
  auto load_grid = [&] {
    std::istringstream in(read_file(in_path));
    return read_gridset(in);
  };
  auto emit_grid = [&](const GridSet& x) {
    std::ostringstream ss;
    write_gridset(ss, x);
    if (!out_path.empty()) {
      s.write_artifact(out_path, ss.str());
      s.emit({{"size", x.size()}, {"n", x.arity()}, {"m", x.alphabet()}},
             [&] { out << "size=" << x.size() << '\n'; });
    } else {
      out << ss.str();
    }
  };
  {
    auto* bl = thick->add_subcommand("build", "X_n over alphabet m");
    bl->add_option("--n", n)->required();
    bl->add_option("--m", grid_m)->required();
    bl->add_option("--out", out_path);
    bind(bl, [&] {
      s.params = {{"n", n}, {"m", grid_m}};
      emit_grid(build_xn(n, grid_m));
      return 0;
    });
    auto* inf = thick->add_subcommand("inflate", "In(X, s)");
    inf->add_option("--in", in_path)->required();
    inf->add_option("--s", inflate_s)->required();
    inf->add_option("--out", out_path);
    bind(inf, [&] {
      s.params = {{"in", in_path}, {"s", inflate_s}};
      emit_grid(inflate(load_grid(), inflate_s));
      return 0;
    });
    auto* st = thick->add_subcommand("stats", "AvgDeg_i and MinDeg_i");
    st->add_option("--in", in_path);
    st->add_option("--n", n);
    st->add_option("--m", grid_m);
    bind(st, [&] {
      const auto x = in_path.empty() ? build_xn(n, grid_m) : load_grid();
      const auto ds = degree_stats(x);
      json avg = json::array(), mn = json::array();
      for (unsigned i = 0; i < x.arity(); ++i) {
        avg.push_back(to_fraction_string(ds.avg_deg[i]));
        mn.push_back(ds.min_deg[i]);
      }
      s.emit({{"size", x.size()}, {"avg_deg", avg}, {"min_deg", mn}}, [&] {
        for (unsigned i = 0; i < x.arity(); ++i) {
          out << "coord " << i + 1 << ": avg=" << to_fraction_string(ds.avg_deg[i]) << " min=" << ds.min_deg[i] << '\n';
        }
      });
      return 0;
    });
    auto* pl = thick->add_subcommand("peel", "core with MinDeg >= threshold");
    pl->add_option("--in", in_path);
    pl->add_option("--n", n);
    pl->add_option("--m", grid_m);
    pl->add_option("--threshold", threshold)->required();
    pl->add_option("--out", out_path);
    bind(pl, [&] {
      const auto x = in_path.empty() ? build_xn(n, grid_m) : load_grid();
      s.params = {{"threshold", threshold}};
      const auto core = peel_core(x, threshold);
      if (!out_path.empty()) {
        emit_grid(core);
      } else {
        s.emit({{"core_size", core.size()}}, [&] { out << "core_size=" << core.size() << '\n'; });
      }
      return 0;
    });
    auto* vf = thick->add_subcommand("verify", "average-degree and empty-core checks for In(X_n, s)");
    vf->add_option("--n", n)->required();
    vf->add_option("--s", inflate_s)->required();
    vf->add_option("--eps", eps_text, "rational or decimal")->required();
    bind(vf, [&] {
      const auto rep = verify_theorem5(n, inflate_s, parse_rational(eps_text));
      s.params = {{"n", n}, {"s", inflate_s}, {"eps", eps_text}};
      json avg = json::array();
      for (const auto& a : rep.avg_deg) avg.push_back(to_fraction_string(a));
      s.emit({{"m", rep.m}, {"size", rep.size}, {"avg_deg", avg}, {"target", to_fraction_string(rep.avg_target)},
              {"avg_ok", rep.avg_ok}, {"core_empty", rep.core_empty}, {"ok", rep.ok()}},
             [&] {
               out << "m=" << rep.m << " |Y|=" << rep.size << " target=" << to_fraction_string(rep.avg_target)
                   << " avg_ok=" << (rep.avg_ok ? "yes" : "no") << " core_empty=" << (rep.core_empty ? "yes" : "no")
                   << '\n';
             });
      return rep.ok() ? 0 : 1;
    });
  }

  // bound
  auto* bound = app.add_subcommand("bound", "simulation-theorem lower bounds");
  std::string q_bits, n_bits, eps_bound;
  std::int64_t bound_h = 0;
  {
    bound->add_option("--q-bits", q_bits, "log2 q (corollary form)");
    bound->add_option("--n-bits", n_bits, "log2 n");
    bound->add_option("--h", bound_h, "hitting parameter h (theorem form)");
    bound->add_option("--eps", eps_bound, "epsilon (theorem form)");
    bind(bound, [&] {
      if (n_bits.empty()) throw CLI::ValidationError("--n-bits is required");
      s.params = {{"q_bits", q_bits}, {"n_bits", n_bits}, {"h", bound_h}, {"eps", eps_bound}};
      std::optional<Rational> r;
      if (!q_bits.empty()) {
        r = corollary1_bound(parse_rational(q_bits), parse_rational(n_bits));
      } else if (bound_h != 0 && !eps_bound.empty()) {
        const Rational nb = parse_rational(n_bits);
        if (denominator(nb) != 1 || nb < 0) throw ValidationError("--n-bits must be a nonnegative integer here");
        r = simulation_bound(bound_h, pow2(static_cast<std::uint64_t>(numerator(nb))), parse_rational(eps_bound));
      } else {
        throw CLI::ValidationError("give --q-bits, or --h with --eps");
      }
      s.emit({{"applicable", r.has_value()}, {"bound", r ? format_rational(*r) : ""}},
             [&] { out << (r ? format_rational(*r) : std::string("inapplicable")) << '\n'; });
      return r ? 0 : 1;
    });
  }

  auto* all = app.add_subcommand("verify-all", "small-instance self-check suite");
  all->add_option("--q", q)->capture_default_str();
  bind(all, [&] { return run_verify_all(s, q) ? 0 : 1; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    const int code = action();
    s.write_manifest();
    return code;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gadgetforge::cli
