#include "bp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "bp/congruence.hpp"
#include "bp/picture.hpp"
#include "bp/replication.hpp"
#include "bp/spectral.hpp"

namespace bp::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr long kSnakeLimit = 10000;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t cap = 10000;
  long terms = 20;
  double tolerance = 1e-12;
};

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

json with_schema(json doc) {
  json out;
  out["schema"] = "bp/1";
  for (auto& [k, v] : doc.items()) out[k] = v;
  return out;
}

Vertex parse_vertex(const std::string& text) { return Vertex::of(parse_matrix(text)); }

json id_list(const std::vector<Vertex>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(v.id());
  return arr;
}

void emit_vertices(std::ostream& out, const Globals& g, json header, const std::vector<Vertex>& vs) {
  if (g.json) {
    header["count"] = vs.size();
    header["vertices"] = id_list(vs);
    emit(out, with_schema(std::move(header)));
  } else {
    for (const auto& v : vs) out << v.id() << "\n";
  }
}

void emit_graph(std::ostream& out, const std::vector<Vertex>& vs, const std::string& format,
                json extra) {
  if (parse_graph_format(format) == GraphFormat::dot) {
    out << export_graph(vs, GraphFormat::dot);
    return;
  }
  json doc = graph_json(vs);
  for (auto& [k, v] : extra.items()) doc[k] = v;
  emit(out, doc);
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::vector<GroupElement> parse_generators(const std::vector<std::string>& texts) {
  std::vector<GroupElement> gens;
  for (const auto& t : texts) gens.emplace_back(parse_matrix(t));
  return gens;
}

// Series source: a built-in constructor or a class from a McKay-Thompson CSV.
struct SeriesSource {
  std::string builtin;
  std::string path;
  std::string label;

  void attach(CLI::App* cmd) {
    cmd->add_option("--builtin", builtin, "Built-in series: j, J, E4, E6 or delta");
    cmd->add_option("--series", path, "McKay-Thompson CSV (class,n,value)");
    cmd->add_option("--class", label, "Class label within --series");
  }

  QSeries load(long precision) const {
    if (!builtin.empty() && !path.empty()) throw DomainError("use either --builtin or --series");
    if (!path.empty()) {
      if (label.empty()) throw DomainError("--series requires --class");
      auto table = load_mckay_thompson(path);
      auto it = table.find(label);
      if (it == table.end()) throw DomainError("class '" + label + "' not found in " + path);
      return it->second;
    }
    return builtin_series(builtin.empty() ? "J" : builtin, precision);
  }

  static QSeries builtin_series(const std::string& name, long precision) {
    if (precision < 1) throw DomainError("terms must be >= 1");
    if (name == "j") return j_series(precision);
    if (name == "J") return big_j_series(precision);
    if (name == "E4") return eisenstein_e4(precision);
    if (name == "E6") return eisenstein_e6(precision);
    if (name == "delta") return delta_series(precision);
    throw DomainError("unknown series '" + name + "', expected j, J, E4, E6 or delta");
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattices, the big picture, Hecke operators and moonshine q-series", "bp"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Seed for pseudorandom sampling");
  app.add_option("--cap", g.cap, "Cap on enumeration sizes");
  app.add_option("--terms", g.terms, "Number of q-series coefficients");
  app.add_option("--tolerance", g.tolerance, "Numeric tolerance");
  app.add_option("--threads-hint", "Accepted for compatibility; enumeration is sequential");

  std::map<CLI::App*, std::function<void()>> actions;
  auto command = [&](const std::string& name, const std::string& help) {
    return app.add_subcommand(name, help);
  };

  // canon
  std::string canon_matrix;
  auto* canon = command("canon", "Canonical vertex of a rational matrix class");
  canon->add_option("--matrix", canon_matrix, "Matrix \"a,b;c,d\"")->required();
  actions[canon] = [&] {
    RatMat2 m = parse_matrix(canon_matrix);
    PglClass cls = primitive_rep(m);
    Vertex v = Vertex::of(m);
    if (g.json) {
      emit(out, with_schema({{"input", canon_matrix},
                             {"class", format_matrix(cls.rep())},
                             {"alpha", rat_string(alpha_of(m))},
                             {"delta1", cls.det().get_str()},
                             {"vertex", v.id()}}));
    } else {
      out << v.id() << "\n";
    }
  };

  // dist
  std::string dist_u, dist_v;
  auto* dist = command("dist", "Hyperdistance between two classes");
  dist->add_option("--u", dist_u)->required();
  dist->add_option("--v", dist_v)->required();
  actions[dist] = [&] {
    Vertex u = parse_vertex(dist_u), v = parse_vertex(dist_v);
    Integer d = hyperdistance(u, v);
    if (g.json) {
      json factors = json::object();
      if (d.fits_slong_p())
        for (auto [p, e] : factorize(d.get_si())) factors[std::to_string(p)] = e;
      emit(out, with_schema({{"u", u.id()}, {"v", v.id()}, {"hyperdistance", d.get_str()},
                             {"log", std::log(d.get_d())}, {"p_adic", factors}}));
    } else {
      out << d << "\n";
    }
  };

  // neighbors
  std::string nb_vertex = "1,0;0,1";
  long nb_p = 2;
  auto* nb = command("neighbors", "The p+1 neighbours of a vertex in the p-tree");
  nb->add_option("--vertex", nb_vertex);
  nb->add_option("--p", nb_p)->required();
  actions[nb] = [&] {
    Vertex v = parse_vertex(nb_vertex);
    emit_vertices(out, g, {{"vertex", v.id()}, {"p", nb_p}}, neighbors(v, nb_p));
  };

  // sphere / ball
  std::string sp_center = "1,0;0,1";
  long sp_n = 1;
  auto* sp = command("sphere", "Vertices at hyperdistance exactly N");
  sp->add_option("--center", sp_center);
  sp->add_option("--n", sp_n)->required();
  actions[sp] = [&] {
    Vertex c = parse_vertex(sp_center);
    emit_vertices(out, g, {{"center", c.id()}, {"N", sp_n}}, sphere(c, sp_n));
  };
  std::string ball_center = "1,0;0,1";
  long ball_radius = 1;
  auto* bl = command("ball", "Vertices at hyperdistance at most R");
  bl->add_option("--center", ball_center);
  bl->add_option("--radius", ball_radius)->required();
  actions[bl] = [&] {
    Vertex c = parse_vertex(ball_center);
    emit_vertices(out, g, {{"center", c.id()}, {"radius", ball_radius}}, ball(c, ball_radius));
  };

  // geodesic
  std::string geo_u, geo_v;
  auto* geo = command("geodesic", "A shortest prime-step path");
  geo->add_option("--u", geo_u)->required();
  geo->add_option("--v", geo_v)->required();
  actions[geo] = [&] {
    Vertex u = parse_vertex(geo_u), v = parse_vertex(geo_v);
    emit_vertices(out, g, {{"u", u.id()}, {"v", v.id()}, {"hyperdistance", hyperdistance(u, v).get_str()}},
                  geodesic(u, v).vertices);
  };

  // thread / snake
  long th_n = 1;
  std::string th_format = "json";
  auto* th = command("thread", "The (1|N)-thread");
  th->add_option("--n", th_n)->required();
  th->add_option("--format", th_format, "json or dot");
  actions[th] = [&] {
    emit_graph(out, thread(th_n).vertices, th_format, {{"N", th_n}, {"kind", "thread"}});
  };
  long sn_n = 1;
  std::string sn_format = "json";
  auto* sn = command("snake", "Vertices within a divisor of 24 of the (1|N)-thread");
  sn->add_option("--n", sn_n)->required();
  sn->add_option("--format", sn_format, "json or dot");
  actions[sn] = [&] {
    if (sn_n > kSnakeLimit) throw DomainError("snake enumeration limited to N <= 10000");
    emit_graph(out, snake(sn_n).vertices, sn_format, {{"N", sn_n}, {"kind", "snake"}});
  };

  // al
  long al_n = 1, al_e = 1;
  auto* al = command("al", "Atkin-Lehner representative W_e for Gamma_0(N)");
  al->add_option("--n", al_n)->required();
  al->add_option("--e", al_e)->required();
  actions[al] = [&] {
    GroupElement w = atkin_lehner(al_n, al_e);
    if (g.json) {
      emit(out, with_schema({{"N", al_n}, {"e", al_e}, {"matrix", format_matrix(w.rep())},
                             {"det", w.det().get_str()},
                             {"square_in_gamma0", in_gamma0(w * w, al_n)}}));
    } else {
      out << format_matrix(w.rep()) << "\n";
    }
  };

  // normalizer
  long nm_n = 1;
  std::string nm_matrix;
  auto* nm = command("normalizer", "Membership in the normalizer of Gamma_0(N)");
  nm->add_option("--n", nm_n)->required();
  nm->add_option("--matrix", nm_matrix)->required();
  actions[nm] = [&] {
    GroupElement x{parse_matrix(nm_matrix)};
    bool member = in_normalizer(x, nm_n);
    if (g.json) {
      emit(out, with_schema({{"N", nm_n}, {"h", normalizer_h(nm_n)}, {"matrix", format_matrix(x.rep())},
                             {"member", member}}));
    } else {
      out << (member ? "true" : "false") << "\n";
    }
  };

  // stab-check
  long sc_n = 1;
  int sc_samples = 200, sc_word = 3;
  auto* sc = command("stab-check", "Sample Gamma_0(N) and test which vertices it fixes");
  sc->add_option("--n", sc_n)->required();
  sc->add_option("--samples", sc_samples);
  sc->add_option("--word-length", sc_word);
  actions[sc] = [&] {
    if (sc_n > kSnakeLimit) throw DomainError("snake enumeration limited to N <= 10000");
    auto th_vs = thread(sc_n).vertices;
    auto sn_vs = snake(sc_n).vertices;
    long base_ok = 0, nu_ok = 0, thread_ok = 0, snake_ok = 0, snake_setwise = 0;
    std::set<Vertex> moved;
    std::set<Vertex> snake_set(sn_vs.begin(), sn_vs.end());
    for (int i = 0; i < sc_samples; ++i) {
      GroupElement x = random_gamma0_element(sc_n, g.seed + static_cast<std::uint64_t>(i), sc_word);
      base_ok += act(x, Vertex::base()) == Vertex::base();
      nu_ok += act(x, Vertex::nu(sc_n)) == Vertex::nu(sc_n);
      thread_ok += std::all_of(th_vs.begin(), th_vs.end(), [&](const Vertex& v) { return act(x, v) == v; });
      bool all_fixed = true, inside = true;
      for (const auto& v : sn_vs) {
        Vertex w = act(x, v);
        if (w != v) {
          all_fixed = false;
          moved.insert(v);
        }
        if (!snake_set.count(w)) inside = false;
      }
      snake_ok += all_fixed;
      snake_setwise += inside;
    }
    json doc{{"N", sc_n}, {"samples", sc_samples}, {"seed", g.seed},
             {"fixes_base", base_ok}, {"fixes_nu_N", nu_ok}, {"fixes_thread", thread_ok},
             {"fixes_snake_pointwise", snake_ok}, {"preserves_snake_setwise", snake_setwise},
             {"snake_size", sn_vs.size()}, {"snake_vertices_moved", moved.size()}};
    emit(out, with_schema(std::move(doc)));
  };

  // orbit / invariant-tree
  std::vector<std::string> orbit_gens;
  std::string orbit_vertex = "1,0;0,1";
  auto* ob = command("orbit", "Orbit of a vertex under generated group");
  ob->add_option("--gen", orbit_gens, "Generator matrix (repeatable)")->required();
  ob->add_option("--vertex", orbit_vertex);
  actions[ob] = [&] {
    Vertex v = parse_vertex(orbit_vertex);
    emit_vertices(out, g, {{"vertex", v.id()}}, orbit(parse_generators(orbit_gens), v, g.cap));
  };
  std::vector<std::string> tree_gens;
  std::string tree_format = "json";
  auto* tr = command("invariant-tree", "Finite invariant tree through the orbit of the base vertex");
  tr->add_option("--gen", tree_gens, "Generator matrix (repeatable)")->required();
  tr->add_option("--format", tree_format, "json or dot");
  actions[tr] = [&] {
    auto gens = parse_generators(tree_gens);
    if (parse_graph_format(tree_format) == GraphFormat::dot)
      out << export_graph(invariant_tree_vertices(gens, g.cap), GraphFormat::dot);
    else
      emit(out, invariant_tree(gens, g.cap));
  };

  // hecke / project
  long hk_n = 1;
  std::string hk_vertex = "1,0;0,1";
  auto* hk = command("hecke", "T_N applied to a basis vector");
  hk->add_option("--n", hk_n)->required();
  hk->add_option("--vertex", hk_vertex);
  actions[hk] = [&] {
    emit(out, state_json(hecke_apply(VertexState::delta(parse_vertex(hk_vertex)), hk_n)));
  };
  std::string pj_kind;
  long pj_n = 1, pj_ball = 0;
  auto* pj = command("project", "Projection of the uniform vector on a ball");
  pj->add_option("--kind", pj_kind, "sphere, thread or snake")->required();
  pj->add_option("--n", pj_n)->required();
  pj->add_option("--ball", pj_ball, "Ball radius of the input vector (default N)");
  actions[pj] = [&] {
    VertexState xi;
    for (const auto& v : ball(Vertex::base(), pj_ball > 0 ? pj_ball : pj_n)) xi.add(v, 1.0);
    emit(out, state_json(project(xi, parse_projection_kind(pj_kind), pj_n)));
  };

  // evolve-check
  std::vector<double> ev_t{0.5, 1.0, std::acos(-1.0)};
  int ev_trials = 5;
  auto* ev = command("evolve-check", "Check e^{itH} pi(f) e^{-itH} = pi(sigma_t f) on random data");
  ev->add_option("--t", ev_t, "Times (repeatable)");
  ev->add_option("--trials", ev_trials);
  actions[ev] = [&] {
    double worst = 0.0;
    for (int i = 0; i < ev_trials; ++i) {
      std::uint64_t s = g.seed * 1000 + static_cast<std::uint64_t>(i);
      Kernel f = random_kernel(s, 4, 6, false);
      CosetState xi = random_coset_state(s + 500, 6, 12);
      for (double t : ev_t) worst = std::max(worst, evolve_conjugation_error(f, xi, t));
    }
    emit(out, with_schema({{"seed", g.seed}, {"trials", ev_trials}, {"t", ev_t},
                           {"max_error", worst}, {"tolerance", g.tolerance},
                           {"ok", worst <= g.tolerance}}));
  };

  // partition / gibbs
  std::vector<double> pf_beta{3.0};
  long pf_x = 10000;
  std::string pf_mode = "coset";
  auto* pf = command("partition", "Truncated partition function, CSV beta,X,mode,value");
  pf->add_option("--beta", pf_beta, "Inverse temperature (repeatable)");
  pf->add_option("--x", pf_x, "Determinant cutoff X");
  pf->add_option("--mode", pf_mode, "coset or vertex");
  actions[pf] = [&] {
    Mode mode = parse_mode(pf_mode);
    out << "beta,X,mode,value\n";
    for (double beta : pf_beta)
      out << fixed(beta, 12) << "," << pf_x << "," << mode_name(mode) << ","
          << fixed(partition_function(beta, pf_x, mode), 15) << "\n";
  };
  double gb_beta = 3.0;
  long gb_x = 10000;
  std::string gb_mode = "coset", gb_obs = "det";
  auto* gb = command("gibbs", "Truncated Gibbs expectation");
  gb->add_option("--beta", gb_beta);
  gb->add_option("--x", gb_x);
  gb->add_option("--mode", gb_mode, "coset or vertex");
  gb->add_option("--obs", gb_obs, "one, det or identity");
  actions[gb] = [&] {
    Mode mode = parse_mode(gb_mode);
    std::function<double(long)> obs;
    if (gb_obs == "one") obs = [](long) { return 1.0; };
    else if (gb_obs == "det") obs = [](long n) { return double(n); };
    else if (gb_obs == "identity") obs = [](long n) { return n == 1 ? 1.0 : 0.0; };
    else throw DomainError("unknown observable '" + gb_obs + "', expected one, det or identity");
    double value = gibbs_expectation(obs, gb_beta, gb_x, mode);
    if (g.json)
      emit(out, with_schema({{"beta", gb_beta}, {"X", gb_x}, {"mode", mode_name(mode)},
                             {"obs", gb_obs}, {"value", value}}));
    else
      out << fixed(value, 15) << "\n";
  };

  // qseries
  std::string qs_name;
  auto* qs = command("qseries", "Classical q-expansions");
  qs->add_option("name", qs_name, "j, J, E4, E6 or delta")->required();
  actions[qs] = [&] { emit(out, series_json(SeriesSource::builtin_series(qs_name, g.terms), g.terms)); };

  // faber
  SeriesSource fb_src;
  long fb_k = 1;
  auto* fb = command("faber", "Faber polynomial Q_k of a normalized series");
  fb_src.attach(fb);
  fb->add_option("--k", fb_k)->required();
  actions[fb] = [&] {
    QSeries f = fb_src.load(std::max(fb_k, g.terms));
    FaberPolynomial q = faber(f, fb_k);
    json doc = faber_json(q);
    long upto = std::min(g.terms, f.precision() - fb_k + 1);
    doc["series"] = series_json(faber_apply(q, f), upto);
    doc["series"].erase("schema");
    emit(out, doc);
  };

  // replicate / verify-replicable
  SeriesSource rp_src;
  long rp_k = 1;
  auto* rp = command("replicate", "The k-th replicate of a normalized series");
  rp_src.attach(rp);
  rp->add_option("--k", rp_k)->required();
  actions[rp] = [&] {
    if (rp_k < 1) throw DomainError("replicate index must be >= 1");
    ReplicateFamily family(rp_src.load(replicate_base_precision(rp_k, g.terms)));
    emit(out, series_json(replicate(family, rp_k, g.terms), g.terms));
  };
  SeriesSource vr_src;
  long vr_kmax = 4, vr_numeric = 0;
  auto* vr = command("verify-replicable", "Run the replication recursion for k <= k-max");
  vr_src.attach(vr);
  vr->add_option("--k-max", vr_kmax);
  vr->add_option("--numeric-terms", vr_numeric, "Also check the functional equation numerically");
  actions[vr] = [&] {
    if (vr_kmax < 1) throw DomainError("k_max must be >= 1");
    long t = std::max(g.terms, vr_numeric);
    QSeries f = vr_src.load(replicate_base_precision(vr_kmax, t));
    emit(out, report_json(is_replicable(f, vr_kmax, g.terms, vr_numeric)));
  };

  // eval
  SeriesSource evs_src;
  double ev_re = 0.0, ev_im = 1.0;
  auto* evs = command("eval", "Numeric value of a series at z");
  evs_src.attach(evs);
  evs->add_option("--re", ev_re);
  evs->add_option("--im", ev_im);
  actions[evs] = [&] {
    QSeries f = evs_src.load(g.terms);
    Evaluation e = evaluate(f, {ev_re, ev_im}, g.terms);
    emit(out, with_schema({{"z", {{"re", ev_re}, {"im", ev_im}}},
                           {"terms", g.terms},
                           {"value", {{"re", e.value.real()}, {"im", e.value.imag()}}},
                           {"tail_bound", e.tail_bound}}));
  };

  // export
  std::string ex_kind = "ball", ex_center = "1,0;0,1", ex_format = "dot";
  long ex_n = 1;
  auto* ex = command("export", "Export a finite piece of the big picture");
  ex->add_option("--kind", ex_kind, "ball, sphere, neighbors, thread or snake");
  ex->add_option("--center", ex_center);
  ex->add_option("--n", ex_n, "Radius, sphere index, prime or level");
  ex->add_option("--format", ex_format, "dot or json");
  actions[ex] = [&] {
    Vertex c = parse_vertex(ex_center);
    std::vector<Vertex> vs;
    if (ex_kind == "ball") vs = ball(c, ex_n);
    else if (ex_kind == "sphere") vs = sphere(c, ex_n);
    else if (ex_kind == "neighbors") {
      vs = neighbors(c, ex_n);
      vs.push_back(c);
    } else if (ex_kind == "thread") vs = thread(ex_n).vertices;
    else if (ex_kind == "snake") {
      if (ex_n > kSnakeLimit) throw DomainError("snake enumeration limited to N <= 10000");
      vs = snake(ex_n).vertices;
    } else {
      throw DomainError("unknown export kind '" + ex_kind + "'");
    }
    if (vs.size() > g.cap) throw DomainError("export exceeds cap");
    out << export_graph(vs, parse_graph_format(ex_format));
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    for (auto* sub : app.get_subcommands()) actions.at(sub)();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bp::cli
