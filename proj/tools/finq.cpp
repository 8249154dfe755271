// finq: command-line front end for the finite quantum-algebra library.
// Exit codes: 0 success, 1 domain error (or a failing verify-all), 2 usage error.

#include "finq/catalog.hpp"
#include "finq/cliff.hpp"
#include "finq/io.hpp"
#include "finq/liecore.hpp"
#include "finq/palev.hpp"
#include "finq/perfinite.hpp"
#include "finq/qset.hpp"
#include "finq/verify.hpp"
#include "finq/vertexnet.hpp"
#include "finq/yang.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace finq;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string mode = "exact";
  double tol = kDefaultTolerance;
  std::string out;
  std::string format;  // resolved per subcommand when empty
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, std::string>> args;  // subcommand options, in declaration order

  bool exact() const { return mode == "exact"; }
};

using Table = std::vector<std::vector<std::string>>;  // first row is the header

struct Output {
  Json result = Json::object();
  Table table;      // used by csv
  std::string text;  // used by text
  int exit_code = 0;
};

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

Json config_json(const RunConfig& c) {
  Json args = Json::object();
  for (const auto& [k, v] : c.args) args[k] = v;
  return {{"subcommand", c.subcommand}, {"mode", c.mode}, {"tol", short_double(c.tol)},
          {"format", c.format},         {"seed", c.seed}, {"out", c.out},
          {"args", args}};
}

std::string config_comment(const RunConfig& c) {
  std::string s = "# finq " + c.subcommand + " mode=" + c.mode + " tol=" + short_double(c.tol) +
                  " format=" + c.format + " seed=" + std::to_string(c.seed);
  for (const auto& [k, v] : c.args) s += " " + k + "=" + v;
  return s + "\n";
}

void flatten(const Json& j, const std::string& prefix, Table& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string render(const RunConfig& c, const Output& o) {
  if (c.format == "json") {
    Json doc = {{"config", config_json(c)}, {"result", o.result}};
    return doc.dump(2) + "\n";
  }
  std::string s = config_comment(c);
  if (c.format == "text") return s + o.text;
  Table rows = o.table;
  if (rows.empty()) {
    rows.push_back({"key", "value"});
    flatten(o.result, "", rows);
  }
  for (const auto& r : rows) s += csv_row(r) + "\n";
  return s;
}

std::filesystem::path output_path(const RunConfig& c) {
  const char* dir = std::getenv("FINQ_OUTPUT_DIR");
  if (c.out.empty()) {
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / (c.subcommand + "." + c.format);
  }
  std::filesystem::path p(c.out);
  if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + p.string() + "'");
  f << body;
}

std::vector<Rational> parse_schedule(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  if (out.empty()) throw UsageError("empty schedule");
  return out;
}

void require_exact(const RunConfig& c) {
  if (!c.exact()) throw UsageError("subcommand '" + c.subcommand + "' supports exact mode only");
}

// ---------------------------------------------------------------------------

struct SetsArgs {
  std::optional<std::size_t> enumerate_rank;
  std::string decode;
  std::string set;
  std::vector<std::string> xor_pair, por_pair;
};

Json set_json(const PerfiniteSet& x) {
  return {{"set", x.to_string()}, {"code", x.code().str()}, {"grade", x.grade()}, {"rank", x.rank()}};
}

Output run_sets(const SetsArgs& a) {
  Output o;
  if (a.enumerate_rank) {
    Json list = Json::array();
    for (const auto& x : enumerate(*a.enumerate_rank)) list.push_back(set_json(x));
    o.result["enumerate"] = list;
    o.table.push_back({"set", "code", "grade", "rank"});
    for (const auto& x : list)
      o.table.push_back({x["set"], x["code"], std::to_string(x["grade"].get<int>()), std::to_string(x["rank"].get<int>())});
  }
  if (!a.decode.empty()) {
    BigInt code;
    try {
      code = BigInt(a.decode);
    } catch (const std::exception&) {
      throw UsageError("--decode expects a natural number");
    }
    o.result["decode"] = set_json(PerfiniteSet::decode(code));
  }
  if (!a.set.empty()) {
    const auto x = PerfiniteSet::parse(a.set);
    Json j = set_json(x);
    j["iota"] = iota(x).to_string();
    j["grade_parity"] = grade_parity(x);
    o.result["set"] = j;
  }
  if (a.xor_pair.size() == 2)
    o.result["xor"] = xor_union(PerfiniteSet::parse(a.xor_pair[0]), PerfiniteSet::parse(a.xor_pair[1])).to_string();
  if (a.por_pair.size() == 2)
    o.result["por"] = to_string(por(PerfiniteSet::parse(a.por_pair[0]), PerfiniteSet::parse(a.por_pair[1])));
  if (o.result.empty()) throw UsageError("sets: give --enumerate, --decode, --set, --xor or --por");
  return o;
}

// ---------------------------------------------------------------------------

struct QsetArgs {
  std::size_t rank = 2;
  std::string metric = "zero";
  std::string top_scale = "1";
  std::string v, w;
  bool signature = false;
};

template <typename Scalar>
Scalar to_scalar(const Rational& r) {
  if constexpr (ScalarTraits<Scalar>::exact) return r;
  else return r.convert_to<double>();
}

// Terms "SET=COEF;SET=COEF", SET in brace syntax or "top".
template <typename Scalar>
Multivector<Scalar> parse_terms(const std::string& text, const typename RankFrame<Scalar>::Ptr& f) {
  Multivector<Scalar> m(f);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.rfind('=');
    if (eq == std::string::npos) throw UsageError("multivector term '" + item + "' needs SET=COEF");
    const std::string set = item.substr(0, eq);
    const Scalar c = to_scalar<Scalar>(parse_rational(item.substr(eq + 1)));
    const Blade b = set == "top" ? f->top_blade() : f->blade_of(PerfiniteSet::parse(set));
    m.add(b, c);
  }
  return m;
}

template <typename Scalar>
Json mv_json(const Multivector<Scalar>& w) {
  Json out = Json::array();
  for (const auto& [b, c] : w.terms()) out.push_back({w.frame()->label(b).to_string(), format_scalar(c)});
  return out;
}

template <typename Scalar>
Output run_qset(const QsetArgs& a, const RunConfig& cfg) {
  Output o;
  const auto preset = parse_metric_preset(a.metric);
  const auto f = RankFrame<Scalar>::build(a.rank, preset, to_scalar<Scalar>(parse_rational(a.top_scale)), cfg.tol);
  Json frame = {{"rank", a.rank}, {"generators", f->generator_count()}, {"dimension", f->dimension()},
                {"metric", to_string(preset)}};
  Json gens = Json::array();
  for (const auto& m : f->monads()) gens.push_back(m.to_string());
  frame["monads"] = gens;
  o.result["frame"] = frame;
  if (a.signature) {
    const auto s = signature_report<Scalar>(f);
    o.result["signature"] = {{"plus", s.plus}, {"minus", s.minus}, {"zero", s.zero}};
  }
  if (!a.w.empty()) {
    const auto w = parse_terms<Scalar>(a.w, f);
    Json r = {{"w", mv_json(w)}, {"berezin_norm", format_scalar(berezin_norm(w))}, {"grade_op", mv_json(grade_op(w))}};
    if constexpr (ScalarTraits<Scalar>::exact) r["w_exact"] = to_json(w);
    if (!a.v.empty()) {
      const auto v = parse_terms<Scalar>(a.v, f);
      r["v"] = mv_json(v);
      r["grassmann_vw"] = mv_json(grassmann(v, w));
      r["clifford_vw"] = mv_json(clifford(v, w));
      r["beta_vw"] = format_scalar(beta_form(v, w));
    }
    o.result["products"] = r;
  }
  return o;
}

// ---------------------------------------------------------------------------

struct GammaArgs {
  int p = 1, q = 1;
  bool check = false, top = false, matrices = false;
};

Output run_gamma(const GammaArgs& a) {
  Output o;
  const GammaSet g = build_gammas(a.p, a.q);
  o.result = {{"p", g.p}, {"q", g.q}, {"dim", g.dim}, {"minimal", g.minimal}, {"eta", g.eta}};
  if (!g.note.empty()) o.result["note"] = g.note;
  std::ostringstream text;
  text << "Cl(" << g.p << "," << g.q << "): " << g.size() << " gammas of size " << g.dim << "x" << g.dim << "\n";
  if (a.check) {
    const auto r = check_anticommutation(g);
    const std::string line = std::to_string(r.exact) + "/" + std::to_string(r.checked) + " anticommutation relations exact";
    o.result["check"] = line;
    text << line << "\n";
    if (!r.ok()) o.exit_code = 1;
  }
  if (a.top) {
    o.result["top_square_sign"] = top_square_sign(g.p, g.q);
    o.result["top"] = to_json(top_element(g));
  }
  if (a.matrices) {
    Json ms = Json::array();
    for (const auto& m : g.gammas) ms.push_back(to_json(m));
    o.result["gammas"] = ms;
  }
  o.text = text.str();
  return o;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
Table constants_table(const StructureConstants<Scalar>& sc, double tol = 0.0) {
  Table t{{"i", "j", "k", "c"}};
  for (std::size_t i = 0; i < sc.dim(); ++i)
    for (std::size_t j = i + 1; j < sc.dim(); ++j)
      for (std::size_t k = 0; k < sc.dim(); ++k)
        if (!ScalarTraits<Scalar>::is_zero(sc(i, j, k), tol))
          t.push_back({sc.labels()[i], sc.labels()[j], sc.labels()[k], format_scalar(sc(i, j, k))});
  return t;
}

template <typename Scalar>
MatrixAlgebra<Scalar> preset_in_mode(const std::string& name, double tol) {
  const auto exact = algebra_preset(name);
  if constexpr (ScalarTraits<Scalar>::exact) return exact;
  else {
    std::vector<Mat<double>> basis;
    for (const auto& m : exact.basis) basis.push_back(m.cast<double>());
    return MatrixAlgebra<double>::make(std::move(basis), exact.labels, tol);
  }
}

template <typename Scalar>
Output run_structure(const std::string& preset, const RunConfig& cfg) {
  Output o;
  const auto sc = structure_constants(preset_in_mode<Scalar>(preset, cfg.tol));
  o.table = constants_table(sc, cfg.tol);
  Json rows = Json::array();
  for (std::size_t r = 1; r < o.table.size(); ++r)
    rows.push_back({{"i", o.table[r][0]}, {"j", o.table[r][1]}, {"k", o.table[r][2]}, {"c", o.table[r][3]}});
  o.result = {{"algebra", preset},
              {"dimension", sc.dim()},
              {"labels", sc.labels()},
              {"closure_residual", format_scalar(sc.closure_residual)},
              {"jacobi_residual", format_scalar(jacobi_residual(sc))},
              {"brackets", rows}};
  return o;
}

template <typename Scalar>
Json killing_json(const SemisimplicityReport<Scalar>& r) {
  Json j = {{"semisimple", r.semisimple},
            {"determinant", format_scalar(r.determinant)},
            {"rank", r.killing_rank},
            {"signature", {{"plus", r.killing_signature.plus}, {"minus", r.killing_signature.minus}, {"zero", r.killing_signature.zero}}}};
  if (r.condition) j["condition"] = format_scalar(*r.condition);
  if (!r.caveat.empty()) j["caveat"] = r.caveat;
  return j;
}

template <typename Scalar>
Output run_killing(const std::string& preset, const RunConfig& cfg) {
  Output o;
  const auto sc = structure_constants(preset_in_mode<Scalar>(preset, cfg.tol));
  const Mat<Scalar> k = killing_form(sc);
  o.result = {{"algebra", preset}, {"killing_form", to_json(k)}, {"report", killing_json(is_semisimple(sc, cfg.tol))}};
  o.table.push_back({"row"});
  for (const auto& l : sc.labels()) o.table[0].push_back(l);
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    std::vector<std::string> row{sc.labels()[static_cast<std::size_t>(r)]};
    for (Eigen::Index c = 0; c < k.cols(); ++c) row.push_back(format_scalar(k(r, c)));
    o.table.push_back(std::move(row));
  }
  return o;
}

// ---------------------------------------------------------------------------

Output run_contract(const std::string& preset, const std::string& schedule_text) {
  Output o;
  const auto fam = contraction_preset(preset);
  const auto schedule = parse_schedule(schedule_text);
  const auto rep = contract(fam, schedule);
  const auto& labels = fam.algebra.labels;
  o.table.push_back({"N", "bracket", "deviation_exact", "deviation", "numeric_max_relative_error"});
  Json points = Json::array();
  for (const auto& pt : rep.points) {
    Json br = Json::array();
    for (const auto& b : pt.brackets) {
      const std::string name = "[" + labels[b.i] + "," + labels[b.j] + "]";
      const std::string ex = b.exact ? format_scalar(*b.exact) : "";
      br.push_back({{"bracket", name}, {"exact", ex}, {"value", format_scalar(b.value)}});
      o.table.push_back({format_scalar(pt.parameter), name, ex, format_scalar(b.value),
                         format_scalar(pt.numeric_max_relative_error)});
    }
    points.push_back({{"N", format_scalar(pt.parameter)},
                      {"max_deviation", format_scalar(pt.max_deviation)},
                      {"max_deviation_exact", pt.max_deviation_exact ? format_scalar(*pt.max_deviation_exact) : ""},
                      {"numeric_max_relative_error", format_scalar(pt.numeric_max_relative_error)},
                      {"numeric_max_absolute_error", format_scalar(pt.numeric_max_absolute_error)},
                      {"brackets", br}});
  }
  Json exps = Json::array();
  for (const auto& e : fam.exponents) exps.push_back(format_scalar(e));
  o.result = {{"preset", preset},
              {"labels", labels},
              {"exponents", exps},
              {"symbolic_order", format_scalar(rep.symbolic_order)},
              {"convergence_order", rep.convergence_order ? format_scalar(*rep.convergence_order) : ""},
              {"limit_class", to_string(rep.limit_class)},
              {"limit_brackets", constants_table(rep.limit).size() - 1},
              {"original_killing", killing_json(rep.original_killing)},
              {"limit_killing", killing_json(rep.limit_killing)},
              {"points", points}};
  return o;
}

// ---------------------------------------------------------------------------

struct YangArgs {
  std::string signature;  // "p,q"
  std::string preset = "yang-3-3";
  std::string N = "1000";
  std::string schedule = "1e2,1e4,1e6";
  std::string table_out;
  std::string accumulate;  // feynman | penrose
  std::size_t direction = 1;
  std::size_t terms = 3;
};

Output run_yang(const YangArgs& a, const RunConfig& cfg) {
  Output o;
  YangFrame f;
  std::string name = a.preset;
  if (!a.signature.empty()) {
    const auto comma = a.signature.find(',');
    if (comma == std::string::npos) throw UsageError("--signature expects p,q");
    int p = 0, q = 0;
    try {
      p = std::stoi(a.signature.substr(0, comma));
      q = std::stoi(a.signature.substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("--signature expects p,q");
    }
    f = build_yang(p, q);
    name = "Cl(" + std::to_string(p) + "," + std::to_string(q) + ")";
  } else {
    f = build_yang_preset(a.preset);
  }
  const Rational N = parse_rational(a.N);
  const auto k = is_semisimple(f.constants);
  Json map = Json::object();
  for (std::size_t m = 0; m < f.mu.size(); ++m) map[std::to_string(m + 1)] = f.mu[m];
  map["5"] = f.index5;
  map["6"] = f.index6;
  Json units = Json::object();
  for (std::size_t i = 0; i < f.units.size(); ++i) units[f.generators.labels[i]] = f.units[i].to_string();

  const auto rep = contract_to_hp(f, parse_schedule(a.schedule));
  Json points = Json::array();
  for (const auto& pt : rep.points)
    points.push_back({{"N", format_scalar(pt.N)},
                      {"max_deviation", format_scalar(pt.max_deviation)},
                      {"deviation_times_N", format_scalar(Rational(pt.max_deviation * pt.N))},
                      {"decaying_brackets", pt.bracket_deviation.size()},
                      {"hbar_consistent", pt.hbar_consistent}});
  const auto defect = gauge_defect(f, N);
  Json norms = Json::object();
  for (std::size_t i = 0; i < defect.norm.size(); ++i) norms[f.generators.labels[i]] = format_scalar(defect.norm[i]);

  o.result = {{"frame", name},
              {"gamma_signature", {f.gammas.p, f.gammas.q}},
              {"index_map", map},
              {"labels", f.generators.labels},
              {"units", units},
              {"closure_residual", format_scalar(f.constants.closure_residual)},
              {"killing", killing_json(k)},
              {"hp_limit_matches", rep.limit_matches_target},
              {"hp_killing", killing_json(is_semisimple(rep.target.constants))},
              {"contraction", points},
              {"gauge_defect", {{"N", format_scalar(N)}, {"max_norm", format_scalar(defect.max_norm)}, {"norms", norms}}}};

  Table table{{"a", "b", "commutator"}};
  const auto entries = commutator_table(f, N);
  for (const auto& e : entries) {
    std::string rhs;
    for (const auto& [kk, c] : e.terms) rhs += (rhs.empty() ? "" : " + ") + format_scalar(c) + "*" + f.generators.labels[kk];
    table.push_back({f.generators.labels[e.i], f.generators.labels[e.j], rhs.empty() ? "0" : rhs});
  }
  o.result["commutators"] = entries.size();
  o.table = table;
  if (!a.table_out.empty()) {
    std::string body = config_comment(cfg);
    for (const auto& r : table) body += csv_row(r) + "\n";
    write_file(a.table_out, body);
  }
  if (!a.accumulate.empty()) {
    const auto kind = parse_accumulator(a.accumulate);
    Json lines = Json::array();
    for (const auto& l : accumulate_coordinate(a.direction, a.terms, kind))
      lines.push_back({{"value", std::to_string(l.value) + (l.imaginary ? "i" : "")}, {"multiplicity", l.multiplicity}});
    o.result["accumulation"] = {{"kind", to_string(kind)}, {"direction", a.direction}, {"terms", a.terms}, {"spectrum", lines}};
  }
  return o;
}

// ---------------------------------------------------------------------------

struct PalevArgs {
  std::string preset = "spin3";
  std::string j = "8";
  std::string levels = "0,1,2";
  std::string normal_order;
  std::string relations = "h1";
};

Output run_palev(const PalevArgs& a) {
  Output o;
  const auto osc = build_oscillator(parse_oscillator_preset(a.preset), parse_rational(a.j));
  o.table.push_back({"j", "n", "deviation_squared", "deviation"});
  Json rows = Json::array();
  std::stringstream ss(a.levels);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t n = 0;
    try {
      n = std::stoul(item);
    } catch (const std::exception&) {
      throw UsageError("--levels expects comma-separated naturals");
    }
    const auto d = bose_deviation(osc, n);
    const std::string value = d.exact ? format_scalar(*d.exact) : format_scalar(d.norm);
    o.table.push_back({format_scalar(osc.j), std::to_string(n), format_scalar(d.norm_squared), value});
    rows.push_back({{"n", n}, {"deviation_squared", format_scalar(d.norm_squared)}, {"deviation", value}});
  }
  o.result = {{"preset", to_string(osc.preset)},
              {"j", format_scalar(osc.j)},
              {"dim", osc.dim},
              {"surd", format_scalar(osc.a.d)},
              {"exclusion_bound", exclusion_bound(osc)},
              {"bose_deviation", rows}};
  if (!a.normal_order.empty()) {
    const auto rel = RelationSet::preset(a.relations);
    const auto poly = NCPolynomial::parse(a.normal_order, rel);
    o.result["normal_order"] = {{"relations", rel.name()}, {"input", poly.to_string(rel)},
                                {"normal_form", normal_order(poly, rel).to_string(rel)}};
  }
  return o;
}

// ---------------------------------------------------------------------------

Output run_net_eval(const std::string& file, bool enforce_parity) {
  Output o;
  const auto net = load_network(file);
  const auto parity = parity_check(net);
  ContractOptions opts;
  opts.enforce_parity = enforce_parity;
  const auto res = contract(net, opts);
  Json plan = Json::array();
  for (const auto& s : res.plan) plan.push_back({s.left, s.right, s.result_size});
  o.result = {{"vertices", net.vertices.size()}, {"edges", net.edges.size()}, {"parity", to_json(parity)},
              {"plan", plan}, {"tensor", to_json(res.tensor)}};
  o.table.push_back({});
  for (std::size_t k = 0; k < res.tensor.rank(); ++k) o.table[0].push_back("i" + std::to_string(k));
  o.table[0].push_back("value");
  for (const auto& [idx, v] : res.tensor.entries) {
    std::vector<std::string> row;
    for (auto i : idx) row.push_back(std::to_string(i));
    row.push_back(format_scalar(v));
    o.table.push_back(std::move(row));
  }
  return o;
}

Output run_verify(const RunConfig& cfg) {
  Output o;
  const auto rep = verify_all(cfg.seed);
  Json checks = Json::array();
  o.table.push_back({"status", "module", "check", "detail"});
  for (const auto& c : rep.checks) {
    checks.push_back({{"module", c.module}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    o.table.push_back({c.passed ? "PASS" : "FAIL", c.module, c.name, c.detail});
  }
  o.result = {{"passed", rep.passed_count()}, {"total", rep.checks.size()}, {"checks", checks}};
  o.text = rep.to_text();
  o.exit_code = rep.all_passed() ? 0 : 1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finq: exact finite quantum algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--mode", cfg.mode, "arithmetic: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", cfg.tol, "float-mode tolerance");
  app.add_option("--out", cfg.out, "output file (relative paths resolve under $FINQ_OUTPUT_DIR)");
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  SetsArgs sets;
  auto* c_sets = app.add_subcommand("sets", "perfinite sets and Ackermann codes");
  c_sets->add_option("--enumerate", sets.enumerate_rank, "list all sets up to this rank (<= 3)");
  c_sets->add_option("--decode", sets.decode, "decode an Ackermann code");
  c_sets->add_option("--set", sets.set, "inspect a set given in brace syntax");
  c_sets->add_option("--xor", sets.xor_pair, "symmetric union of two sets")->expected(2);
  c_sets->add_option("--por", sets.por_pair, "partial or of two sets")->expected(2);

  QsetArgs qs;
  auto* c_qset = app.add_subcommand("qset", "multivectors over a rank frame");
  c_qset->add_option("--rank", qs.rank, "frame rank (<= 4)");
  c_qset->add_option("--metric", qs.metric, "zero, berezin or hyperbolic");
  c_qset->add_option("--top-scale", qs.top_scale, "scale of the top element");
  c_qset->add_option("--v", qs.v, "terms SET=COEF;... (SET may be 'top')");
  c_qset->add_option("--w", qs.w, "terms SET=COEF;...");
  c_qset->add_flag("--signature", qs.signature, "inertia of the Berezin form");

  GammaArgs ga;
  auto* c_gamma = app.add_subcommand("gamma", "real gamma matrices of Cl(p,q)");
  c_gamma->add_option("--p", ga.p, "number of gammas squaring to +1");
  c_gamma->add_option("--q", ga.q, "number of gammas squaring to -1");
  c_gamma->add_flag("--check", ga.check, "verify all anticommutation relations");
  c_gamma->add_flag("--top", ga.top, "export the top element");
  c_gamma->add_flag("--matrices", ga.matrices, "export the gamma matrices");

  std::string structure_preset = "so3";
  auto* c_structure = app.add_subcommand("structure", "structure constants of a named algebra");
  c_structure->add_option("--preset", structure_preset, "so3, h1, spin21, so4, so3xso3, spin:<p>,<q>");

  std::string killing_preset = "so3";
  auto* c_killing = app.add_subcommand("killing", "Killing form and semisimplicity");
  c_killing->add_option("--preset", killing_preset, "so3, h1, spin21, so4, so3xso3, spin:<p>,<q>");

  std::string contract_name = "spin21-to-h1", contract_schedule = "1e3,1e6";
  auto* c_contract = app.add_subcommand("contract", "contraction deviations along a schedule of N");
  c_contract->add_option("--preset", contract_name, "spin21-to-h1 or so4-to-iso3");
  c_contract->add_option("--schedule", contract_schedule, "comma-separated N values");

  YangArgs ya;
  auto* c_yang = app.add_subcommand("yang", "Yang generators and the contraction to hp(3,1)");
  c_yang->add_option("--signature", ya.signature, "gamma signature p,q (overrides --preset)");
  c_yang->add_option("--preset", ya.preset, "yang-3-3, yang-5-1 or spin21");
  c_yang->add_option("--N", ya.N, "size used for the commutator table and gauge defect");
  c_yang->add_option("--schedule", ya.schedule, "comma-separated N values");
  c_yang->add_option("--table-out", ya.table_out, "write the commutator table as CSV");
  c_yang->add_option("--accumulate", ya.accumulate, "feynman or penrose coordinate spectrum");
  c_yang->add_option("--direction", ya.direction, "accumulation direction");
  c_yang->add_option("--terms", ya.terms, "number of accumulated terms (<= 12)");

  PalevArgs pa;
  auto* c_palev = app.add_subcommand("palev", "Palev oscillators and normal ordering");
  c_palev->add_option("--preset", pa.preset, "spin3 or spin21");
  c_palev->add_option("--j", pa.j, "spin (half-integer)");
  c_palev->add_option("--levels", pa.levels, "comma-separated levels n");
  c_palev->add_option("--normal-order", pa.normal_order, "polynomial to normal-order");
  c_palev->add_option("--relations", pa.relations, "h1, spin3 or spin21");

  std::string net_file;
  bool enforce_parity = false;
  auto* c_net = app.add_subcommand("net", "vertex networks");
  c_net->require_subcommand(1);
  auto* c_net_eval = c_net->add_subcommand("eval", "contract a network description file");
  c_net_eval->add_option("file", net_file, "network JSON")->required();
  c_net_eval->add_flag("--enforce-parity", enforce_parity, "fail on parity findings");

  auto* c_verify = app.add_subcommand("verify-all", "run the full invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  for (CLI::App* level = sub; level; level = level->get_subcommands().empty() ? nullptr : level->get_subcommands().front()) {
    if (level != sub) cfg.subcommand += " " + level->get_name();
    for (const CLI::Option* opt : level->get_options()) {
      if (opt->get_name() == "--help" || opt->count() == 0) continue;
      std::string v;
      for (const auto& r : opt->results()) v += (v.empty() ? "" : " ") + r;
      cfg.args.emplace_back(opt->get_name(), v.empty() ? "true" : v);
    }
  }
  // Tables default to csv, reports to text, everything else to json.
  if (cfg.format.empty()) {
    if (sub == c_verify || sub == c_gamma) cfg.format = "text";
    else if (sub == c_contract || sub == c_palev) cfg.format = "csv";
    else cfg.format = "json";
  }

  try {
    Output out;
    if (sub == c_sets) {
      require_exact(cfg);
      out = run_sets(sets);
    } else if (sub == c_qset) {
      out = cfg.exact() ? run_qset<Rational>(qs, cfg) : run_qset<double>(qs, cfg);
    } else if (sub == c_gamma) {
      require_exact(cfg);
      out = run_gamma(ga);
    } else if (sub == c_structure) {
      out = cfg.exact() ? run_structure<Rational>(structure_preset, cfg) : run_structure<double>(structure_preset, cfg);
    } else if (sub == c_killing) {
      out = cfg.exact() ? run_killing<Rational>(killing_preset, cfg) : run_killing<double>(killing_preset, cfg);
    } else if (sub == c_contract) {
      require_exact(cfg);
      out = run_contract(contract_name, contract_schedule);
    } else if (sub == c_yang) {
      require_exact(cfg);
      out = run_yang(ya, cfg);
    } else if (sub == c_palev) {
      require_exact(cfg);
      out = run_palev(pa);
    } else if (sub == c_net) {
      require_exact(cfg);
      out = run_net_eval(net_file, enforce_parity);
    } else {
      require_exact(cfg);
      out = run_verify(cfg);
    }
    if (cfg.format == "text" && out.text.empty()) {
      // No dedicated text form: fall back to CSV rows.
      cfg.format = "csv";
    }
    const std::string body = render(cfg, out);
    const auto path = output_path(cfg);
    if (path.empty()) std::cout << body;
    else write_file(path, body);
    return out.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << sub->help();
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
