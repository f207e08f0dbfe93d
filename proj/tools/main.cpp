#include "cli_support.hpp"

#include "hkcob/cobordism.hpp"
#include "hkcob/genfun.hpp"
#include "hkcob/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

using namespace hkcob;
using namespace hkcob::cli;

namespace {

struct Settings {
  std::string format = "json";
  bool decimal = false;
  std::string cache;
  std::string config;
  int threads = 1;
  std::string correction = "sum_squares";
  std::string surface = "k3";
};

// Precedence: command-line flag, then config file, then HKCOB_CACHE, then built-in default.
void apply_config(Settings& s, const CLI::App& app) {
  if (!s.config.empty()) {
    std::ifstream in(s.config);
    if (!in) throw std::invalid_argument("cannot read config file " + s.config);
    json cfg = json::parse(in);
    auto take = [&](const char* key, const char* flag, auto& field) {
      if (cfg.contains(key) && app.count(flag) == 0) cfg.at(key).get_to(field);
    };
    take("format", "--format", s.format);
    take("cache", "--cache", s.cache);
    take("threads", "--threads", s.threads);
    take("correction", "--correction", s.correction);
    take("surface", "--surface", s.surface);
  }
  if (s.cache.empty())
    if (const char* env = std::getenv("HKCOB_CACHE")) s.cache = env;
  if (s.threads < 1) throw std::invalid_argument("--threads must be >= 1");
}

struct Runtime {
  Settings settings;
  WorkerPool pool{1};
  std::shared_ptr<ChernEngine> engine;
  std::unique_ptr<CobordismBasis> basis;

  explicit Runtime(const Settings& s) : settings(s), pool(s.threads) {
    engine = std::make_shared<ChernEngine>(correction_by_name(s.correction), s.correction);
    if (!s.cache.empty()) engine->set_store(std::make_shared<FileStateStore>(s.cache));
    basis = std::make_unique<CobordismBasis>(engine, pool.runner());
  }

  void emit(ResultRecord r) const {
    r.correction = settings.correction;
    std::cout << render(r, settings.format, settings.decimal);
  }
};

// ------------------------------------------------------------------ chern

struct ChernArgs {
  std::string family;
  int n = 0;
  std::string partition;
  std::string basis = "ch";
  std::string surface;
};

void cmd_chern(Runtime& rt, const ChernArgs& a, bool surface_given) {
  if (a.n < 1) throw std::invalid_argument("N >= 1 required");
  const Family fam = parse_family(a.family);
  if (fam == Family::kummer && surface_given)
    throw std::invalid_argument("--surface applies to Hilbert schemes only; Kum_n(A) always uses the abelian surface");
  const SurfaceChoice surface = parse_surface(a.surface.empty() ? rt.settings.surface : a.surface);
  if (a.basis != "ch" && a.basis != "c") throw std::invalid_argument("--basis must be ch or c");

  std::vector<Partition> wanted;
  if (!a.partition.empty())
    wanted.push_back(parse_partition_of(a.partition, a.n));
  // c-numbers need every ch-monomial
  const std::vector<Partition> needed = (a.basis == "c" || wanted.empty()) ? partitions_of(a.n) : wanted;
  if (wanted.empty()) wanted = needed;

  std::vector<Rational> values(needed.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < needed.size(); ++i)
    jobs.emplace_back([&, i] {
      values[i] = fam == Family::hilb ? rt.engine->hilb_ch_number(a.n, needed[i], surface)
                                      : rt.engine->kummer_ch_number(a.n, needed[i]);
    });
  rt.pool.run(jobs);

  ResultRecord r;
  r.kind = "chern";
  r.params = {{"family", a.family}, {"n", a.n}};
  if (fam == Family::hilb) r.params["surface"] = surface.describe();
  if (!a.partition.empty()) r.params["partition"] = wanted.front().to_string();
  if (a.basis == "ch") {
    r.basis = "ch_2k";
    for (std::size_t i = 0; i < needed.size(); ++i) r.values.emplace_back(needed[i].to_string(), values[i]);
  } else {
    r.basis = "c_2k";
    ChernVector v;
    v.dim = 2 * a.n;
    for (std::size_t i = 0; i < needed.size(); ++i) v.ch[needed[i].scaled(2)] = values[i];
    const auto c = ch_to_c(v);
    for (const auto& ks : wanted) r.values.emplace_back(ks.to_string(), c.at(ks.scaled(2)));
  }
  rt.emit(r);
}

// ------------------------------------------------------------------ expand

ChernVector vector_from_record(const json& j) {
  const std::string basis = j.value("basis", "ch_2k");
  if (basis != "ch_2k" && basis != "c_2k") throw std::invalid_argument("input basis must be ch_2k or c_2k");
  if (!j.contains("values") || !j.at("values").is_object()) throw std::invalid_argument("input lacks a values object");
  std::map<Partition, Rational> vals;
  int n = -1;
  for (const auto& [key, value] : j.at("values").items()) {
    const Partition ks = Partition::parse(key);
    if (n < 0) n = ks.size();
    if (ks.size() != n) throw std::invalid_argument("dimension mismatch: partition " + key + " does not sum to " + std::to_string(n));
    vals[ks.scaled(2)] = parse_rational(value.get<std::string>());
  }
  if (n < 1) throw std::invalid_argument("input has no values");
  if (j.contains("params") && j.at("params").contains("n") && j.at("params").at("n").get<int>() != n)
    throw std::invalid_argument("dimension mismatch: params.n differs from the partitions");
  ChernVector v;
  if (basis == "ch_2k") {
    v.dim = 2 * n;
    v.ch = vals;
  } else {
    v = c_to_ch(2 * n, vals, true);
  }
  v.validate();
  return v;
}

void cmd_expand(Runtime& rt, const std::string& family, const std::string& target, const std::string& input) {
  const Family fam = parse_family(family);
  ChernVector v;
  ResultRecord r;
  r.kind = "expand";
  r.params = {{"family", family}};
  if (!target.empty()) {
    const Target t = parse_target(target);
    r.params["target"] = target;
    if (t.kind == "hilb") v = rt.basis->generator(Family::hilb, t.n);
    else if (t.kind == "kummer") v = rt.basis->generator(Family::kummer, t.n);
    else if (t.kind == "og6") v = fixtures::og6();
    else {
      v = fixtures::og10(*rt.basis);
      r.params["derived_fixture"] = true;
    }
  } else {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot read " + input);
    v = vector_from_record(json::parse(in));
    r.params["input"] = std::filesystem::path(input).filename().string();
  }
  const int n = v.dim / 2;
  r.params["n"] = n;
  const auto coeffs = rt.basis->expand(v, fam);
  r.basis = fam == Family::hilb ? "S^[I]" : "Kum_I";
  for (const auto& I : partitions_of(n)) r.values.emplace_back(I.to_string(), coeffs.at(I));
  r.checks["euler_affine"] = euler_affine_check(coeffs, n);
  rt.emit(r);
}

// ------------------------------------------------------------------ genus

ChernVector target_vector(Runtime& rt, const Target& t) {
  if (t.kind == "hilb") return rt.basis->generator(Family::hilb, t.n);
  if (t.kind == "kummer") return rt.basis->generator(Family::kummer, t.n);
  if (t.kind == "og6") return fixtures::og6();
  return fixtures::og10(*rt.basis);
}

void cmd_genus(Runtime& rt, const std::string& genus, const std::string& target) {
  const Target t = parse_target(target);
  const ChernVector v = target_vector(rt, t);
  ResultRecord r;
  r.kind = "genus";
  r.params = {{"genus", genus}, {"target", target}};
  if (genus == "todd") {
    r.basis = "genus";
    r.values.emplace_back("todd", evaluate_genus(genus_polynomial(todd_series(), v.dim), v)[0]);
  } else if (genus == "milnor") {
    r.basis = "genus";
    r.values.emplace_back("milnor", milnor_genus(v));
  } else if (genus == "chi-y") {
    r.basis = "(-1)^p chi(Omega^p)";
    const auto list = signed_hodge_euler_list(evaluate_genus(genus_polynomial(chi_y_series(), v.dim), v));
    for (std::size_t p = 0; p < list.size(); ++p) r.values.emplace_back(std::to_string(p), list[p]);
    std::vector<Rational> half(list.begin(), list.begin() + t.n + 1);
    r.checks["increasing_to_middle"] = increasing_check(half, t.n);
  } else {
    throw std::invalid_argument("unknown genus '" + genus + "' (todd, chi-y, milnor)");
  }
  rt.emit(r);
}

// ------------------------------------------------------------------ gottsche

void cmd_gottsche(Runtime& rt, const std::string& betti, int n) {
  if (n < 1) throw std::invalid_argument("N >= 1 required");
  const BettiVector b = BettiVector::parse(betti);
  const auto out = gottsche_betti(b, n);
  ResultRecord r;
  r.kind = "gottsche";
  r.params = {{"betti", betti}, {"n", n}};
  r.basis = "b_i";
  for (std::size_t i = 0; i < out.size(); ++i) r.values.emplace_back(std::to_string(i), Rational(out[i]));
  rt.emit(r);
}

// ------------------------------------------------------------------ verify

struct Report {
  struct Line {
    std::string suite, name, expected, actual;
    bool pass;
  };
  std::vector<Line> lines;
  std::string suite;

  void check(const std::string& name, const Rational& expected, const Rational& actual) {
    lines.push_back({suite, name, to_string(expected), to_string(actual), expected == actual});
  }
  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    lines.push_back({suite, name, "true", ok ? "true" : "false" + (detail.empty() ? "" : " (" + detail + ")"), ok});
  }
  void check_list(const std::string& name, const std::vector<Rational>& expected, const std::vector<Rational>& actual) {
    auto show = [](const std::vector<Rational>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ",") + to_string(x);
      return s;
    };
    lines.push_back({suite, name, show(expected), show(actual), expected == actual});
  }
  bool ok() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

void suite_identities(Report& rep, int max_n) {
  rep.suite = "identities";
  for (int n = 1; n <= max_n; ++n) {
    for (int id = 1; id <= 3; ++id) {
      auto [lhs, rhs] = identity_sides(id, n);
      rep.check("binomial identity " + std::to_string(id) + " n=" + std::to_string(n), rhs, lhs);
    }
    bool four = true, five = true;
    for (int k = 0; k <= n; ++k) {
      four = four && identity_check(4, n, k);
      if (n >= 2 && k >= 1) five = five && identity_check(5, n, k);
    }
    rep.check("alternating identity 4 n=" + std::to_string(n) + " all k", four);
    rep.check("alternating identity 5 n=" + std::to_string(n) + " all k", five);
    auto [lhs, rhs] = double_sum_identity(n);
    rep.check("double sum n=" + std::to_string(n), rhs, lhs);
  }
}

void suite_closed_forms(Report& rep, Runtime& rt, int max_n) {
  rep.suite = "closed-forms";
  struct Job {
    std::string name;
    Rational expected, actual;
    std::function<Rational()> compute;
  };
  std::vector<Job> list;
  for (int n = 1; n <= max_n; ++n) {
    list.push_back({"S^[" + std::to_string(n) + "] int ch_" + std::to_string(2 * n), closed_form_hilb_top(n, 24), 0,
                    [&rt, n] { return rt.engine->hilb_ch_number(n, Partition{n}); }});
    list.push_back({"Kum_" + std::to_string(n) + " int ch_" + std::to_string(2 * n), closed_form_kummer_top(n), 0,
                    [&rt, n] { return rt.engine->kummer_ch_number(n, Partition{n}); }});
    for (int k = 1; k < n; ++k)
      list.push_back({"Kum_" + std::to_string(n) + " int ch_" + std::to_string(2 * k) + " ch_" + std::to_string(2 * n - 2 * k),
                      closed_form_kummer_double(n, k), 0,
                      [&rt, n, k] { return rt.engine->kummer_ch_number(n, Partition{k, n - k}); }});
  }
  std::vector<std::function<void()>> jobs;
  for (auto& j : list) jobs.emplace_back([&j] { j.actual = j.compute(); });
  rt.pool.run(jobs);
  for (const auto& j : list) rep.check(j.name, j.expected, j.actual);
}

void suite_tables(Report& rep, Runtime& rt, int max_n) {
  rep.suite = "tables";
  const int upto = std::clamp(max_n, 3, 5);
  const auto computed = chern_number_matrix_dim6({rt.basis->generator(Family::hilb, 3), rt.basis->generator(Family::kummer, 3)});
  const auto fixed = chern_number_matrix_dim6({fixtures::k3_hilb3(), fixtures::kummer3(), fixtures::og6()});
  rep.check_list("K3^[3] c2^3, c2c4, c6", fixed[0], computed[0]);
  rep.check_list("Kum_3 c2^3, c2c4, c6", fixed[1], computed[1]);
  rep.check("K3^[3], Kum_3, OG6 Chern matrix nonsingular", determinant(fixed) != 0);
  for (int k = 2; k <= upto; ++k) {
    const auto a = rt.basis->expand(rt.basis->generator(Family::hilb, k), Family::kummer);
    const auto ea = fixtures::hilb_in_kummer_basis(k);
    for (const auto& [I, v] : ea) rep.check("S^[" + std::to_string(k) + "] coefficient of Kum_" + I.to_string(), v, a.at(I));
    const auto b = rt.basis->expand(rt.basis->generator(Family::kummer, k), Family::hilb);
    const auto eb = fixtures::kummer_in_hilb_basis(k);
    for (const auto& [I, v] : eb) rep.check("Kum_" + std::to_string(k) + " coefficient of S^[" + I.to_string() + "]", v, b.at(I));
  }
  const auto og6 = rt.basis->expand(fixtures::og6(), Family::kummer);
  for (const auto& [I, v] : fixtures::og6_kummer_coefficients()) rep.check("OG6 coefficient of Kum_" + I.to_string(), v, og6.at(I));
  rep.check("OG6 affine relation over S^[I]", euler_affine_check(rt.basis->expand(fixtures::og6(), Family::hilb), 3));
}

void suite_genus(Report& rep, Runtime& rt, int max_n) {
  rep.suite = "genus";
  auto chi_list = [](const ChernVector& v) {
    return signed_hodge_euler_list(evaluate_genus(genus_polynomial(chi_y_series(), v.dim), v));
  };
  for (int n = 1; n <= std::min(max_n, 4); ++n) {
    const auto& v = rt.basis->generator(Family::hilb, n);
    rep.check("Todd(S^[" + std::to_string(n) + "])", Rational(n + 1), evaluate_genus(genus_polynomial(todd_series(), v.dim), v)[0]);
  }
  auto og6 = chi_list(fixtures::og6());
  og6.resize(4);
  rep.check_list("OG6 (-1)^p chi^p, p=0..3", fixtures::og6_signed_hodge_euler(), og6);
  Rational alt = 0;
  for (const auto& x : chi_list(fixtures::og6())) alt += x;
  rep.check("OG6 sum (-1)^p chi^p = c6", Rational(1920), alt);
  for (int n = 1; n <= std::min(max_n, 5); ++n) {
    const auto gs = gottsche_soergel_kummer_chi(n + 1);
    std::vector<Rational> expected;
    for (int p = 0; p <= 2 * n; ++p) expected.push_back(gs[p]);
    rep.check_list("Kum_" + std::to_string(n) + " chi list against Goettsche-Soergel", expected,
                   chi_list(rt.basis->generator(Family::kummer, n)));
  }
  const auto b2 = gottsche_betti(BettiVector::rational_elliptic(), 2);
  const auto b3 = gottsche_betti(BettiVector::rational_elliptic(), 3);
  rep.check_list("b2, b4 of Sigma^[2]", {11, 66}, {Rational(b2[2]), Rational(b2[4])});
  rep.check_list("b2, b4, b6 of Sigma^[3]", {11, 77, 342}, {Rational(b3[2]), Rational(b3[4]), Rational(b3[6])});
  rep.check("det of the 2x2 chi matrix", Rational(198), small_dimension_chi_matrix(2).det);
  rep.check("3x3 chi matrix nonsingular", small_dimension_chi_matrix(3).det != 0);
  if (max_n >= 5) {
    auto og10 = chi_list(fixtures::og10(*rt.basis));
    og10.resize(6);
    rep.check_list("OG10 (-1)^p chi^p, p=0..5 (derived fixture)", fixtures::og10_signed_hodge_euler(), og10);
  }
}

int cmd_verify(Runtime& rt, const std::string& suite, int max_n_flag) {
  Report rep;
  auto pick = [&](int fallback) { return max_n_flag > 0 ? max_n_flag : fallback; };
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "identities") { suite_identities(rep, pick(40)); known = true; }
  if (all || suite == "closed-forms") { suite_closed_forms(rep, rt, pick(4)); known = true; }
  if (all || suite == "tables") { suite_tables(rep, rt, pick(4)); known = true; }
  if (all || suite == "genus") { suite_genus(rep, rt, pick(3)); known = true; }
  if (!known) throw std::invalid_argument("unknown suite '" + suite + "' (identities, closed-forms, tables, genus, all)");

  if (rt.settings.format == "json") {
    json lines = json::array();
    for (const auto& l : rep.lines)
      lines.push_back({{"suite", l.suite}, {"check", l.name}, {"expected", l.expected}, {"actual", l.actual}, {"pass", l.pass}});
    json out = {{"kind", "verify"},
                {"params", {{"suite", suite}, {"max_n", max_n_flag}}},
                {"checks", lines},
                {"passed", rep.ok()},
                {"meta", {{"engine_version", kEngineVersion}, {"conventions_hash", conventions_hash(rt.settings.correction)}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    int failed = 0;
    for (const auto& l : rep.lines) {
      std::cout << (l.pass ? "PASS " : "FAIL ") << "[" << l.suite << "] " << l.name;
      if (!l.pass) {
        ++failed;
        std::cout << "\n       expected " << l.expected << "\n       actual   " << l.actual;
      } else {
        std::cout << " = " << l.actual;
      }
      std::cout << "\n";
    }
    std::cout << rep.lines.size() - static_cast<std::size_t>(failed) << "/" << rep.lines.size() << " checks passed\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern numbers of Hilbert schemes of points and generalized Kummer varieties"};
  app.set_version_flag("--version", std::string("hkcob ") + kEngineVersion);
  app.require_subcommand(1);

  Settings settings;
  app.add_option("--format", settings.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--decimal", settings.decimal, "Append decimal approximations (marked with ~)");
  app.add_option("--cache", settings.cache, "Directory for cached intermediate states (default: $HKCOB_CACHE)");
  app.add_option("--config", settings.config, "JSON file with defaults: format, cache, threads, correction, surface");
  app.add_option("--threads", settings.threads, "Worker threads");
  app.add_option("--correction", settings.correction, "Correction coefficient s(lambda): sum_squares, sum_abs, length");

  ChernArgs chern;
  auto* c_chern = app.add_subcommand("chern", "Chern-character or Chern numbers of S^[n] or Kum_n(A)");
  c_chern->add_option("family", chern.family, "hilb or kummer")->required()->check(CLI::IsMember({"hilb", "kummer"}));
  c_chern->add_option("--n", chern.n, "Half the complex dimension")->required();
  c_chern->add_option("--partition", chern.partition, "k1,k2,... summing to n: the monomial ch_2k1 ch_2k2 ...");
  c_chern->add_option("--basis", chern.basis, "ch (Chern character) or c (Chern classes)")->check(CLI::IsMember({"ch", "c"}));
  c_chern->add_option("--surface", chern.surface, "k3 or c2=<rational> (Hilbert schemes only)");

  std::string family, target, input;
  auto* c_expand = app.add_subcommand("expand", "Coefficients in the S^[I] or Kum_I(A) basis");
  c_expand->add_option("--family", family, "hilb or kummer")->required();
  auto* opt_target = c_expand->add_option("--target", target, "hilb:n, kummer:n, og6:3 or og10:5");
  auto* opt_input = c_expand->add_option("--input", input, "JSON record produced by `chern` (ch or c basis)");
  opt_target->excludes(opt_input);
  opt_input->excludes(opt_target);

  std::string suite;
  int max_n = 0;
  auto* c_verify = app.add_subcommand("verify", "Run a built-in verification suite");
  c_verify->add_option("--suite", suite, "identities, closed-forms, tables, genus or all")->required();
  c_verify->add_option("--max-n", max_n, "Largest n to check (suite-specific default)");

  std::string genus, genus_target;
  auto* c_genus = app.add_subcommand("genus", "Todd, chi_y or Milnor genus of a target");
  c_genus->add_option("--genus", genus, "todd, chi-y or milnor")->required();
  c_genus->add_option("--target", genus_target, "hilb:n, kummer:n, og6:3 or og10:5")->required();

  std::string betti;
  int gn = 0;
  auto* c_gottsche = app.add_subcommand("gottsche", "Betti numbers of Hilbert schemes of points");
  c_gottsche->add_option("--betti", betti, "b0,b1,b2,b3,b4")->required();
  c_gottsche->add_option("--n", gn, "Number of points")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    apply_config(settings, app);
    Runtime rt(settings);
    if (*c_chern) cmd_chern(rt, chern, c_chern->count("--surface") > 0);
    if (*c_expand) {
      if (target.empty() && input.empty()) throw std::invalid_argument("expand needs --target or --input");
      cmd_expand(rt, family, target, input);
    }
    if (*c_verify) return cmd_verify(rt, suite, max_n);
    if (*c_genus) cmd_genus(rt, genus, genus_target);
    if (*c_gottsche) cmd_gottsche(rt, betti, gn);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
