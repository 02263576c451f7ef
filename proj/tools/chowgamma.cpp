// chowgamma: JSON front end for Chow polynomials, gamma-vectors and structural checks.
//
// Exit codes: 0 ok, 2 invalid input, 3 failed check or disagreement between methods.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "instance_io.hpp"

using namespace chowgamma;
using namespace chowgamma::cli;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kFailed = 3;

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHOWGAMMA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return hw;
}

// Runs fn(i) for i in [0, n) on up to thread_cap() workers; results stay in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  const unsigned k = std::min<unsigned>(thread_cap(), static_cast<unsigned>(std::max<std::size_t>(1, n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

struct Input {
  std::string file;
  std::string inline_json;
};

json read_instance(const Input& in) {
  std::string text;
  if (!in.inline_json.empty()) {
    text = in.inline_json;
  } else if (!in.file.empty() && in.file != "-") {
    std::ifstream f(in.file);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot open " + in.file);
    text.assign(std::istreambuf_iterator<char>(f), {});
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- chow

struct ChowResult {
  json payload;
  bool agree = true;
};

ChowResult chow_methods(const BuiltMatroid& bm, const std::string& method) {
  ChowResult r;
  json per = json::object();
  std::optional<Polynomial> reference;
  auto record = [&](const std::string& name, const std::function<Polynomial()>& fn) {
    if (method != "all" && method != name) return;
    try {
      Polynomial p = fn();
      per[name] = poly_json(p);
      if (!reference) reference = p;
      else if (!(p == *reference)) r.agree = false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::TooLarge || e.kind() == ErrorKind::MixedFactorStep ||
          e.kind() == ErrorKind::NoBinaryFiltration) {
        per[name] = {{"skipped", error_json(e)}};
      } else {
        throw;
      }
    }
  };
  record("fy", [&] { return chow_polynomial(bm); });
  record("deletion", [&] { return chow_by_deletion(bm); });
  record("filtration", [&] { return chow_by_filtration(bm, g_min(bm.lattice())); });
  record("oracle", [&] { return toric_hilbert_oracle(bm, 6); });
  r.payload = {{"chow", reference ? poly_json(*reference) : json(nullptr)}, {"methods_agree", r.agree}, {"per_method", per}};
  return r;
}

int cmd_chow(const Input& in, const std::string& method, bool corpus) {
  if (corpus) {
    const auto c = build_corpus();
    auto rows = parallel_map<ChowResult>(c.size(), [&](std::size_t i) { return chow_methods(c[i].built, "all"); });
    json table = json::array();
    bool all = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      all = all && rows[i].agree;
      json row = rows[i].payload;
      row["name"] = c[i].name;
      table.push_back(row);
    }
    emit({{"instances", table}, {"all_pass", all}, {"count", c.size()}});
    return all ? kOk : kFailed;
  }
  BuiltMatroid bm = build(parse_instance(read_instance(in)));
  ChowResult r = chow_methods(bm, method);
  emit(r.payload);
  return r.agree ? kOk : kFailed;
}

// ---------------------------------------------------------------- gamma

struct GammaResult {
  json payload;
  bool ok = true;
};

GammaResult gamma_report(const BuiltMatroid& bm, bool with_descents, bool with_complex) {
  GammaResult r;
  const Polynomial h = chow_polynomial(bm);
  const GammaVector gv = gamma_expansion(h);
  r.payload = {{"chow", poly_json(h)}, {"gamma", gv.gammas}, {"gamma_positive", gv.is_positive()}};
  const bool complete = is_complete(bm);
  r.payload["complete"] = complete;
  if (with_descents) {
    if (bm.is_irreducible()) {
      const Polynomial d = gamma_by_descents(bm);
      const bool match = d == gv.as_polynomial();
      r.payload["descent_formula"] = poly_json(d);
      r.payload["match"] = match;
      if (complete && !match) r.ok = false;
    } else {
      r.payload["descent_formula"] = nullptr;
      r.payload["match"] = nullptr;
    }
  }
  if (with_complex) {
    GammaComplex g = gamma_complex(bm);
    json faces = json::array();
    for (const auto& f : g.complex.faces) {
      std::vector<Flat> fs;
      for (int v : f) fs.push_back(g.complex.vertices[v]);
      faces.push_back(flats_json(fs));
    }
    ComplexStats st = complex_stats(g.complex);
    BalanceReport bal = balanced_check(bm, g.complex);
    r.payload["complex"] = {{"faces", faces},
                            {"f_vector", st.f},
                            {"downward_closed", g.downward_closed},
                            {"balanced", bal.balanced()},
                            {"pure", bal.pure},
                            {"flag", st.flag}};
  }
  return r;
}

int cmd_gamma(const Input& in, bool with_descents, bool with_complex, bool corpus) {
  if (corpus) {
    const auto c = build_corpus();
    auto rows = parallel_map<GammaResult>(c.size(), [&](std::size_t i) { return gamma_report(c[i].built, true, false); });
    json table = json::array();
    bool all = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      all = all && rows[i].ok;
      json row = rows[i].payload;
      row["name"] = c[i].name;
      table.push_back(row);
    }
    emit({{"instances", table}, {"all_pass", all}, {"count", c.size()}});
    return all ? kOk : kFailed;
  }
  BuiltMatroid bm = build(parse_instance(read_instance(in)));
  GammaResult r = gamma_report(bm, with_descents, with_complex);
  emit(r.payload);
  return r.ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- check

int cmd_check(const Input& in, const std::string& what) {
  ParsedInstance p = parse_instance(read_instance(in));
  json out = {{"check", what}};
  bool result = true;
  if (what == "building-set") {
    try {
      build(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingIrreducible && e.kind() != ErrorKind::JoinClosureViolation &&
          e.kind() != ErrorKind::NotAFlat)
        throw;
      result = false;
      out["error"] = error_json(e);
      out["witness"] = flats_json(e.witness());
    }
  } else if (what == "complete") {
    BuiltMatroid bm = build(p);
    if (auto v = completeness_violation(bm)) {
      result = false;
      out["witness"] = {{"from", flat_json(v->from)}, {"to", flat_json(v->to)}, {"offending", flat_json(v->offending)}};
    }
    out["order"] = bm.order().sequence();
  } else if (what == "flag") {
    FlagReport r = flag_report(build(p));
    result = r.flag;
    if (!r.flag) {
      json w = json::array();
      for (const auto& x : r.witnesses) w.push_back(flats_json(x));
      out["witness"] = w;
    }
  } else if (what == "modular-cut") {
    if (!p.has_cut) throw Error(ErrorKind::InvalidInput, "cut: missing field \"cut\"");
    BuiltMatroid bm = build(p);
    try {
      ModularCut c = validate_modular_cut(bm.lattice(), p.cut);
      out["proper"] = c.proper;
      out["atom_free"] = c.atom_free;
      out["g_compatible"] = is_g_compatible(bm, c);
      out["minimal"] = flats_json(c.minimal());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotUpwardClosed && e.kind() != ErrorKind::NotMeetClosed && e.kind() != ErrorKind::NotAFlat)
        throw;
      result = false;
      out["error"] = error_json(e);
      out["witness"] = flats_json(e.witness());
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown check \"" + what + "\"");
  }
  out["result"] = result;
  emit(out);
  return result ? kOk : kFailed;
}

// ---------------------------------------------------------------- m0n

int cmd_m0n(int max_n) {
  if (max_n < 2 || max_n > 8) throw Error(ErrorKind::BadParameters, "--n must lie in 2..8");
  json rows = json::array();
  bool all = true;
  for (int n = 2; n <= max_n; ++n) {
    auto l = std::make_shared<const GeomLattice>(lattice_of_flats(make_partition(n)));
    BuiltMatroid bm(l, g_min(*l));
    const Polynomial h = chow_polynomial(bm);
    const GammaVector gv = gamma_expansion(h);
    const Polynomial trees = m0n_gamma(n, TreeDescentRule::NestedConsistent);
    const Polynomial facets = gamma_by_descents(bm);
    std::vector<std::int64_t> f = gv.gammas;
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    const bool agree = h == chow_by_deletion(bm) && trees == gv.as_polynomial() && facets == trees;
    const bool kk = kruskal_katona_check(f);
    all = all && agree && kk;
    rows.push_back({{"n", n},
                    {"poincare", poly_json(h)},
                    {"gamma", gv.gammas},
                    {"stable_trees_by_descent", poly_json(trees)},
                    {"kruskal_katona", kk},
                    {"methods_agree", agree}});
  }
  emit({{"rows", rows}, {"all_pass", all}});
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chow polynomials and gamma-vectors of built matroids"};
  app.require_subcommand(1);
  Input in;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("instance", in.file, "Instance JSON file ('-' or omitted: stdin)");
    sub->add_option("--json", in.inline_json, "Instance JSON given inline");
  };

  std::string method = "all";
  bool corpus = false, with_descents = false, with_complex = false;
  std::string what;
  int m0n_n = 7;

  auto* chow = app.add_subcommand("chow", "Chow polynomial by one or all methods");
  add_input(chow);
  chow->add_option("--method", method, "fy | deletion | filtration | oracle | all")
      ->check(CLI::IsMember({"fy", "deletion", "filtration", "oracle", "all"}));
  chow->add_flag("--corpus", corpus, "Run the built-in corpus instead of one instance");

  auto* gamma = app.add_subcommand("gamma", "gamma-vector, descent formula and Gamma complex");
  add_input(gamma);
  gamma->add_flag("--with-descents", with_descents, "Evaluate the descent formula");
  gamma->add_flag("--with-complex", with_complex, "Emit the Gamma complex");
  gamma->add_flag("--corpus", corpus, "Run the built-in corpus instead of one instance");

  auto* check = app.add_subcommand("check", "Structural checks with witnesses");
  check->add_option("what", what, "building-set | complete | flag | modular-cut")
      ->required()
      ->check(CLI::IsMember({"building-set", "complete", "flag", "modular-cut"}));
  add_input(check);

  auto* m0n = app.add_subcommand("m0n", "Poincare polynomials of the moduli spaces, n = 2..N");
  m0n->add_option("--n", m0n_n, "Largest n (2..8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*chow) return cmd_chow(in, method, corpus);
    if (*gamma) return cmd_gamma(in, with_descents, with_complex, corpus);
    if (*check) return cmd_check(in, what);
    if (*m0n) return cmd_m0n(m0n_n);
  } catch (const Error& e) {
    std::cerr << json({{"error", error_json(e)}}).dump() << "\n";
    return e.kind() == ErrorKind::FiberMismatch || e.kind() == ErrorKind::Internal ? kFailed : kInvalid;
  }
  return kInvalid;
}
