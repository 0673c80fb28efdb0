#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "inctree/asymptotics.hpp"
#include "inctree/experiments.hpp"
#include "inctree/generators.hpp"
#include "inctree/number_field.hpp"
#include "inctree/series.hpp"
#include "inctree/spectral.hpp"
#include "inctree/tree_io.hpp"

#ifndef INCTREE_BUILD_ID
#define INCTREE_BUILD_ID "unknown"
#endif

using namespace inctree;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct Globals {
  std::uint64_t seed = 1;
  std::string format;  // empty: the subcommand's own default
  std::optional<double> tol;
  unsigned threads = 0;
  bool deterministic = false;
};

bool want_csv(const Globals& g, bool csv_default) {
  if (g.format.empty()) return csv_default;
  return g.format == "csv";
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json report_header(const Globals& g, const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  if (!g.deterministic) j["generated_at"] = utc_timestamp();
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

double num(Real x) { return static_cast<double>(x); }

Json quad(const QuadratureResult& r) {
  return Json{{"value", num(r.value)}, {"error_estimate", num(r.abs_error_estimate)},
              {"evaluations", r.evaluations}, {"converged", r.converged}};
}

Json rational(const mpq_class& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"value", q.get_d()}};
}

Json moments_json(const Moments& m) {
  return Json{{"count", m.count}, {"mean", num(m.mean)}, {"variance", num(m.variance)},
              {"skewness", num(m.skewness)}, {"excess_kurtosis", num(m.excess_kurtosis)}};
}

Json ks_json(const KSResult& k) {
  return Json{{"count", k.count},
              {"statistic_raw", num(k.statistic_raw)},
              {"statistic_corrected", num(k.statistic_corrected)},
              {"lattice_step", num(k.lattice_step)},
              {"critical_value", num(k.critical_value)},
              {"p_value_raw", num(k.p_value_raw)},
              {"p_value_corrected", num(k.p_value_corrected)},
              {"alpha", num(k.alpha)},
              {"passed", k.passed}};
}

std::vector<RootedTree> read_trees(std::istream& in) {
  std::vector<RootedTree> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_tree(line));
    } catch (const TreeError& e) {
      throw TreeError(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<RootedTree> read_trees(const std::string& path) {
  if (path.empty() || path == "-") return read_trees(std::cin);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return read_trees(f);
}

RootedTree read_one_tree(const std::string& path) {
  auto trees = read_trees(path);
  if (trees.size() != 1) {
    throw std::invalid_argument(path + ": expected exactly one tree, found " + std::to_string(trees.size()));
  }
  return std::move(trees.front());
}

// "v:k,v:k" with 0-based vertices.
std::vector<Attachment> parse_assignments(const std::string& text) {
  std::vector<Attachment> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("assignment '" + item + "' is not v:k");
    try {
      std::size_t used = 0;
      auto v = std::stoul(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      auto rest = item.substr(colon + 1);
      auto k = std::stoul(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(item);
      out.push_back({static_cast<Vertex>(v), k});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("assignment '" + item + "' is not v:k");
    }
  }
  return out;
}

int run_gen(const Globals& g, const std::string& family, std::size_t n, std::size_t count) {
  auto f = parse_family(family);
  const bool json = g.format == "json";
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = make_engine({g.seed, i});
    auto t = generate(f, n, rng);
    std::cout << (json ? format_tree_json(t) : format_tree_line(t)) << '\n';
  }
  return 0;
}

int run_enum(const Globals& g, const std::string& family, std::size_t n, const std::string& mode) {
  auto f = parse_family(family);
  EnumMode m = EnumMode::Natural;
  if (mode == "unordered") {
    if (f != FamilyId::BinaryIncreasing) throw std::invalid_argument("--mode unordered applies to bin only");
    m = EnumMode::UnorderedBinary;
  }
  auto atoms = enum_shapes(f, n, m);
  if (want_csv(g, true)) {
    std::cout << "shape_key,prob_num,prob_den\n";
    for (const auto& a : atoms) {
      std::cout << a.shape.key << ',' << a.prob.get_num().get_str() << ',' << a.prob.get_den().get_str() << '\n';
    }
    return 0;
  }
  auto j = report_header(g, "enum");
  j["family"] = to_string(f);
  j["n"] = n;
  j["mode"] = mode;
  auto shapes = Json::array();
  for (const auto& a : atoms) {
    shapes.push_back({{"shape_key", a.shape.key},
                      {"prob_num", a.prob.get_num().get_str()},
                      {"prob_den", a.prob.get_den().get_str()},
                      {"tree", format_tree_line(relabel_bfs(a.representative))}});
  }
  j["shapes"] = std::move(shapes);
  emit(j);
  return 0;
}

int run_mult(const Globals& g, const std::string& matrix, const std::string& alpha, const std::string& file,
             bool want_toll) {
  auto kind = parse_matrix_kind(matrix);
  auto spec = EigenvalueSpec::parse(alpha);
  auto trees = read_trees(file);
  const bool csv = want_csv(g, false);
  const char* key = want_toll ? "toll" : "multiplicity";
  if (csv) std::cout << key << '\n';
  for (const auto& t : trees) {
    auto c = diagonalize(t, kind, spec);
    long v = want_toll ? c.toll : static_cast<long>(c.multiplicity);
    if (csv) {
      std::cout << v << '\n';
    } else {
      std::cout << "{\"" << key << "\": " << v << "}\n";
    }
  }
  return 0;
}

int run_toll_series(const Globals& g, const std::string& family, const std::string& alpha, const std::string& matrix,
                    std::size_t k_exact, std::size_t k_mc, std::size_t samples, const std::string& rows_csv) {
  auto f = parse_family(family);
  auto spec = EigenvalueSpec::parse(alpha);
  auto kind = parse_matrix_kind(matrix);
  if (k_exact == 0) k_exact = f == FamilyId::Recursive ? 14 : 18;
  k_mc = std::max(k_mc, k_exact);
  auto rep = toll_series(f, spec, k_exact, k_mc, samples, g.seed, RunOptions{g.threads}, kind);

  auto write_rows = [&](std::ostream& os) {
    os << "k,exact,value,half_width,samples,weight_num,weight_den\n";
    for (const auto& r : rep.rows) {
      os << r.k << ',' << (r.exact ? 1 : 0) << ',';
      os.precision(17);
      os << num(r.value) << ',' << num(r.half_width) << ',' << r.samples << ',' << r.weight.get_num().get_str()
         << ',' << r.weight.get_den().get_str() << '\n';
    }
  };
  if (!rows_csv.empty()) {
    std::ofstream out(rows_csv);
    if (!out) throw std::invalid_argument("cannot write " + rows_csv);
    write_rows(out);
  }
  if (want_csv(g, false)) {
    write_rows(std::cout);
    return 0;
  }

  auto j = report_header(g, "toll-series");
  j["family"] = to_string(f);
  j["alpha"] = spec.to_string();
  j["matrix"] = to_string(kind);
  j["k_exact"] = k_exact;
  j["k_mc"] = k_mc;
  j["samples"] = samples;
  j["seed"] = g.seed;
  auto rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row{{"k", r.k}, {"exact", r.exact}, {"value", num(r.value)}, {"half_width", num(r.half_width)},
             {"samples", r.samples}, {"weight", r.weight.get_str()}};
    if (r.exact_value) row["exact_value"] = r.exact_value->get_str();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["exact_partial_sum"] = rational(rep.exact_partial_sum);
  j["partial_sum"] = num(rep.partial_sum);
  j["half_width"] = num(rep.half_width);
  j["tail_bound"] = rational(rep.tail_bound);
  j["bracket"] = {num(rep.partial_sum - rep.tail_bound.get_d()), num(rep.partial_sum + rep.tail_bound.get_d())};
  if (k_exact >= 7) {
    auto ex = extrapolate_mu(rep);
    j["heuristic"] = {{"estimate", num(ex.heuristic)}, {"a", num(ex.a)}, {"b", num(ex.b)}, {"c", num(ex.c)},
                      {"c_at_bound", ex.c_at_bound}, {"rows_fitted", ex.rows_fitted}};
  }
  emit(j);
  return 0;
}

int run_constants(const Globals& g, const std::string& family, bool closed_form) {
  const Real tol = g.tol ? static_cast<Real>(*g.tol) : 1e-15L;
  const bool rec = family == "all" || parse_family(family) == FamilyId::Recursive;
  const bool bin = family == "all" || parse_family(family) == FamilyId::BinaryIncreasing;
  auto j = report_header(g, "constants");
  j["tol"] = num(tol);
  if (rec) {
    auto c = constants_rec(tol);
    j["euler_gompertz"] = num(c.G.value);
    j["mean_rec"] = num(c.mean.value);
    j["k1"] = num(c.K1_direct.value);
    j["rec"] = {{"G", quad(c.G)},
                {"mean", quad(c.mean)},
                {"K1_direct", quad(c.K1_direct)},
                {"K1_log_form", quad(c.K1_log_form)},
                {"K1_laguerre_form", quad(c.K1_laguerre_form)}};
  }
  if (bin) {
    auto c = constants_bin(tol);
    j["mean_bin"] = num(c.C1.value);
    j["k2"] = num(c.K2.value);
    j["bin"] = {{"C1", quad(c.C1)},
                {"C2", quad(c.C2)},
                {"K2", quad(c.K2)},
                {"F_minus_at_0", num(c.F_minus_at_0)},
                {"G_minus_at_0", num(c.G_minus_at_0)}};
  }
  if (closed_form) {
    auto checks = Json::object();
    for (auto f : {FamilyId::Recursive, FamilyId::BinaryIncreasing}) {
      if ((f == FamilyId::Recursive && !rec) || (f == FamilyId::BinaryIncreasing && !bin)) continue;
      auto cf = closed_form_check(f);
      checks[std::string(to_string(f))] = {
          {"order", cf.order}, {"max_abs_diff", num(cf.max_abs_diff)}, {"passed", cf.passed}};
    }
    j["closed_form_check"] = std::move(checks);
  }
  emit(j);
  return 0;
}

int run_series(const Globals& g, const std::string& family, std::size_t order, bool per_n) {
  auto f = parse_family(family);
  auto tab = series_solve(f, order);
  const std::size_t first = per_n ? 1 : order;
  if (want_csv(g, true)) {
    std::cout << "n,mean_num,mean_den,var_num,var_den\n";
    for (std::size_t n = first; n <= order; ++n) {
      std::cout << n << ',' << tab.mean[n].get_num().get_str() << ',' << tab.mean[n].get_den().get_str() << ','
                << tab.variance[n].get_num().get_str() << ',' << tab.variance[n].get_den().get_str() << '\n';
    }
    return 0;
  }
  auto j = report_header(g, "series");
  j["family"] = to_string(f);
  j["order"] = order;
  auto rows = Json::array();
  for (std::size_t n = first; n <= order; ++n) {
    rows.push_back({{"n", n}, {"mean", rational(tab.mean[n])}, {"variance", rational(tab.variance[n])}});
  }
  j["rows"] = std::move(rows);
  emit(j);
  return 0;
}

int run_mc(const Globals& g, const std::string& family, const std::vector<std::string>& alphas,
           const std::string& matrix, std::size_t n, std::size_t samples, const std::string& per_sample) {
  auto f = parse_family(family);
  auto kind = parse_matrix_kind(matrix);
  std::vector<EigenvalueSpec> specs;
  for (const auto& a : alphas) specs.push_back(EigenvalueSpec::parse(a));
  auto rep = mc_clt(f, specs, kind, n, samples, g.seed, RunOptions{g.threads}, !per_sample.empty());

  if (!per_sample.empty()) {
    std::ofstream out(per_sample);
    if (!out) throw std::invalid_argument("cannot write " + per_sample);
    out << "sample";
    for (const auto& s : specs) out << ',' << s.to_string();
    out << '\n';
    for (std::size_t i = 0; i < samples; ++i) {
      out << i;
      for (const auto& col : rep.values) out << ',' << static_cast<long long>(col[i]);
      out << '\n';
    }
  }

  auto j = report_header(g, "mc");
  j["family"] = to_string(f);
  j["matrix"] = to_string(kind);
  j["n"] = n;
  j["samples"] = samples;
  j["seed"] = g.seed;
  auto per_spec = Json::array();
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const auto& m = rep.moments[s];
    per_spec.push_back({{"alpha", specs[s].to_string()},
                        {"moments", moments_json(m)},
                        {"mean_over_n", num(m.mean / static_cast<Real>(n))},
                        {"variance_over_n", num(m.variance / static_cast<Real>(n))},
                        {"ks", ks_json(rep.ks[s])}});
  }
  j["specs"] = std::move(per_spec);
  if (specs.size() > 1) {
    auto cov = Json::array();
    for (const auto& row : rep.covariance) {
      auto r = Json::array();
      for (Real x : row) r.push_back(num(x));
      cov.push_back(std::move(r));
    }
    j["covariance"] = std::move(cov);
  }
  emit(j);
  return 0;
}

int run_fringe(const Globals& g, const std::string& family, const std::string& pattern) {
  auto f = parse_family(family);
  FringePattern p(read_one_tree(pattern));
  auto r = fringe_mu(f, p);
  auto j = report_header(g, "fringe");
  j["family"] = to_string(f);
  j["pattern_size"] = p.size();
  j["pattern_key"] = p.key(natural_mode(f)).key;
  j["beta"] = rational(r.beta);
  j["mu"] = rational(r.mu);
  emit(j);
  return 0;
}

int run_forcing(const Globals& g, const std::string& base, const std::string& pattern, const std::string& assign,
                const std::string& alpha) {
  auto b = read_one_tree(base);
  FringePattern p(read_one_tree(pattern));
  auto spec = EigenvalueSpec::parse(alpha);
  auto r = forcing_check(b, p, parse_assignments(assign), spec);
  auto j = report_header(g, "forcing");
  j["alpha"] = spec.to_string();
  j["holds"] = r.holds;
  j["multiplicity"] = r.multiplicity;
  j["bound"] = r.bound;
  j["result_size"] = r.result_size;
  emit(j);
  return 0;
}

int run_independence(const Globals& g, const std::string& family, std::size_t n, std::size_t samples) {
  auto f = parse_family(family);
  auto r = independence_report(f, n, samples, g.seed, RunOptions{g.threads});
  const Real nn = static_cast<Real>(n);
  auto j = report_header(g, "independence");
  j["family"] = to_string(f);
  j["n"] = n;
  j["samples"] = samples;
  j["seed"] = g.seed;
  j["independence"] = moments_json(r.independence);
  j["matching"] = moments_json(r.matching);
  j["nullity"] = moments_json(r.nullity);
  j["independence_mean_over_n"] = num(r.independence.mean / nn);
  j["independence_variance_over_n"] = num(r.independence.variance / nn);
  j["identity_failures"] = r.identity_failures;
  j["koenig_failures"] = r.koenig_failures;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue multiplicities of random increasing trees"};
  app.set_version_flag("--version", INCTREE_BUILD_ID);
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Quadrature tolerance");
  app.add_option("--threads", g.threads, "Worker threads (0: available parallelism)")->capture_default_str();
  app.add_flag("--deterministic", g.deterministic, "Omit the timestamp from JSON reports");

  const std::vector<std::string> families{"rec", "bin", "recursive", "binary"};
  const std::vector<std::string> kinds{"adj", "lap", "modlap"};

  std::string family, matrix = "adj", alpha, file, mode = "natural", rows_csv, per_sample;
  std::string pattern, base, assign;
  std::vector<std::string> alphas;
  std::size_t n = 0, count = 1, order = 0, k_exact = 0, k_mc = 30, samples = 1000;
  bool per_n = false, closed_form = false;

  auto* gen = app.add_subcommand("gen", "Generate random trees in the line format");
  gen->add_option("--family", family)->required()->check(CLI::IsMember(families));
  gen->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", count)->capture_default_str();

  auto* en = app.add_subcommand("enum", "Enumerate shapes with exact probabilities");
  en->add_option("--family", family)->required()->check(CLI::IsMember(families));
  en->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  en->add_option("--mode", mode, "natural, or unordered for bin")
      ->check(CLI::IsMember({"natural", "unordered"}))
      ->capture_default_str();

  auto* mult = app.add_subcommand("mult", "Multiplicity of an eigenvalue, one tree per input line");
  auto* tl = app.add_subcommand("toll", "Toll of an eigenvalue, one tree per input line");
  for (auto* sc : {mult, tl}) {
    sc->add_option("--matrix", matrix)->check(CLI::IsMember(kinds))->capture_default_str();
    sc->add_option("--alpha", alpha, "Rational literal or monic integer polynomial in x")->required();
    sc->add_option("file", file, "Tree file (default stdin)");
  }

  auto* ts = app.add_subcommand("toll-series", "Exact and Monte Carlo toll series");
  ts->add_option("--family", family)->required()->check(CLI::IsMember(families));
  ts->add_option("--alpha", alpha)->required();
  ts->add_option("--matrix", matrix)->check(CLI::IsMember(kinds))->capture_default_str();
  ts->add_option("--k-exact", k_exact, "Last exactly enumerated size (default 14 for rec, 18 for bin)");
  ts->add_option("--k-mc", k_mc)->capture_default_str();
  ts->add_option("--samples", samples, "Trees per Monte Carlo size")->capture_default_str();
  ts->add_option("--rows-csv", rows_csv, "Also write the rows as CSV to this file");

  auto* cs = app.add_subcommand("constants", "Limit constants by quadrature");
  family = "all";
  cs->add_option("--family", family)->check(CLI::IsMember({"rec", "bin", "recursive", "binary", "all"}));
  cs->add_flag("--closed-form", closed_form, "Check series coefficients against the closed forms");

  auto* se = app.add_subcommand("series", "Exact mean and variance of N_0 from the series");
  se->add_option("--family", family)->required()->check(CLI::IsMember(families));
  se->add_option("--order", order)->required()->check(CLI::PositiveNumber);
  se->add_flag("--emit-per-n", per_n, "One row for every n up to the order");

  auto* mc = app.add_subcommand("mc", "Monte Carlo moments and normality");
  mc->add_option("--family", family)->required()->check(CLI::IsMember(families));
  mc->add_option("--alpha", alphas, "Repeat for several eigenvalues")->required();
  mc->add_option("--matrix", matrix)->check(CLI::IsMember(kinds))->capture_default_str();
  mc->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  mc->add_option("--samples", samples)->capture_default_str();
  mc->add_option("--per-sample", per_sample, "Write per-sample values as CSV");

  auto* fr = app.add_subcommand("fringe", "Fringe subtree probability and series weight");
  fr->add_option("--family", family)->required()->check(CLI::IsMember(families));
  fr->add_option("--pattern", pattern, "File holding one tree")->required();

  auto* fo = app.add_subcommand("forcing", "Check the multiplicity bound after attaching copies");
  fo->add_option("--base", base, "File holding one tree")->required();
  fo->add_option("--pattern", pattern, "File holding one tree")->required();
  fo->add_option("--assign", assign, "Comma separated v:k with 0-based v")->required();
  fo->add_option("--alpha", alpha)->required();

  auto* ind = app.add_subcommand("independence", "Independence number, matching number and nullity");
  ind->add_option("--family", family)->required()->check(CLI::IsMember(families));
  ind->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ind->add_option("--samples", samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::cout.precision(17);
    if (*gen) return run_gen(g, family, n, count);
    if (*en) return run_enum(g, family, n, mode);
    if (*mult) return run_mult(g, matrix, alpha, file, false);
    if (*tl) return run_mult(g, matrix, alpha, file, true);
    if (*ts) return run_toll_series(g, family, alpha, matrix, k_exact, k_mc, samples, rows_csv);
    if (*cs) return run_constants(g, family, closed_form);
    if (*se) return run_series(g, family, order, per_n);
    if (*mc) return run_mc(g, family, alphas, matrix, n, samples, per_sample);
    if (*fr) return run_fringe(g, family, pattern);
    if (*fo) return run_forcing(g, base, pattern, assign, alpha);
    if (*ind) return run_independence(g, family, n, samples);
  } catch (const ReducibleMinimalPolynomial& e) {
    std::cerr << "inctree: " << e.what() << '\n';
    return 3;
  } catch (const ResourceGuardError& e) {
    std::cerr << "inctree: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "inctree: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "inctree: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "inctree: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
