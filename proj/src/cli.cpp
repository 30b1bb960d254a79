#include "equilens/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "equilens/digits.hpp"
#include "equilens/discrepancy.hpp"
#include "equilens/errors.hpp"
#include "equilens/lattice.hpp"
#include "equilens/measures.hpp"
#include "equilens/report.hpp"
#include "equilens/sequences.hpp"

namespace equilens::cli {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kMeasures = {"spectral",      "diaphony",   "discrete-discrepancy",
                                            "star",          "extreme-oracle", "sigma-lattice",
                                            "p-alpha",       "bz-index",   "discrepancy-spectral"};

// Float comparisons in the sandwich checks allow this much rounding slack;
// the discrete side is exact, the oracle carries a few ulps.
constexpr double kSlack = 1e-12;

struct AnalyzeArgs {
  std::string seq;
  std::vector<long long> N;
  std::string sweep;
  std::string measure;
  std::string system = "trig";
  std::string weight = "r";
  double alpha = 2.0;
  double rel_tol = 1e-3;
  std::string method = "auto";
  std::vector<int> bases;
  std::vector<int> resolution;
  double epsilon = 0.0;
  bool star = false;
  long long K = 0;
  std::string format;  // empty: json, or csv for sweeps
  bool allow_large = false;
};

std::vector<long long> parse_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ArgumentError("invalid integer '" + tok + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

// "trig", or one entry per coordinate: walsh:b, badic:b, trig.
padic::HybridSystemConfig parse_system(const std::string& text, std::size_t s) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  if (tokens.size() == 1 && tokens[0] == "trig") tokens.assign(s, "trig");
  if (tokens.size() != s) {
    throw ArgumentError("system '" + text + "' names " + std::to_string(tokens.size()) + " coordinates, sequence has " +
                        std::to_string(s));
  }
  std::vector<int> walsh_coords, badic_coords, trig_coords, walsh_bases, badic_bases;
  for (std::size_t i = 0; i < s; ++i) {
    const auto& t = tokens[i];
    if (t == "trig") {
      trig_coords.push_back(static_cast<int>(i));
      continue;
    }
    const auto colon = t.find(':');
    const std::string kind = t.substr(0, colon);
    if (colon == std::string::npos || (kind != "walsh" && kind != "badic")) {
      throw ArgumentError("system entry '" + t + "' must be trig, walsh:b or badic:b");
    }
    const auto b = parse_list(t.substr(colon + 1));
    if (b.size() != 1) throw ArgumentError("system entry '" + t + "' needs one base");
    auto& coords = kind == "walsh" ? walsh_coords : badic_coords;
    auto& bases = kind == "walsh" ? walsh_bases : badic_bases;
    coords.push_back(static_cast<int>(i));
    bases.push_back(static_cast<int>(b[0]));
  }
  std::vector<int> assignment = walsh_coords;
  assignment.insert(assignment.end(), badic_coords.begin(), badic_coords.end());
  assignment.insert(assignment.end(), trig_coords.begin(), trig_coords.end());
  return padic::HybridSystemConfig::make(static_cast<int>(walsh_coords.size()), static_cast<int>(badic_coords.size()),
                                         static_cast<int>(trig_coords.size()), walsh_bases, badic_bases, assignment);
}

ojson ints(const std::vector<int>& v) { return ojson(v); }

std::vector<long long> to_ll(const padic::IndexVector& k) {
  std::vector<long long> out;
  for (Eigen::Index i = 0; i < k.size(); ++i) out.push_back(k(i));
  return out;
}

discrepancy::ResolutionVector resolution_for(const AnalyzeArgs& a, std::size_t s) {
  std::vector<int> bases = a.bases;
  if (bases.empty()) bases.assign(s, 2);
  if (bases.size() == 1 && s > 1) bases.assign(s, bases[0]);
  if (bases.size() != s) throw ArgumentError("--base needs one value or one per coordinate");
  if (a.epsilon > 0.0) {
    if (!a.resolution.empty()) throw ArgumentError("give either --resolution or --epsilon, not both");
    return discrepancy::choose_resolution(a.epsilon, bases);
  }
  if (a.resolution.empty()) throw ArgumentError("this measure needs --resolution or --epsilon");
  std::vector<int> g = a.resolution;
  if (g.size() == 1 && s > 1) g.assign(s, g[0]);
  if (g.size() != s) throw ArgumentError("--resolution needs one value or one per coordinate");
  discrepancy::ResolutionVector res{bases, g};
  res.validate(true);
  return res;
}

// Everything a measure needs, checked before any computation.
struct Plan {
  AnalyzeArgs args;
  sequences::SequenceSpec seq;
  std::vector<std::size_t> Ns;
  std::optional<padic::HybridSystemConfig> system;
  std::optional<discrepancy::ResolutionVector> res;
  std::optional<lattice::LatticeRuleSpec> rule;
  measures::DiaphonyOptions::Method method = measures::DiaphonyOptions::Method::automatic;
};

Plan plan_analysis(const AnalyzeArgs& a) {
  Plan p;
  p.args = a;
  if (std::find(kMeasures.begin(), kMeasures.end(), a.measure) == kMeasures.end()) {
    throw ArgumentError("unknown measure '" + a.measure + "'");
  }
  if (!a.format.empty() && a.format != "json" && a.format != "csv") throw ArgumentError("--format must be json or csv");
  p.seq = sequences::parse_sequence(a.seq);
  const std::size_t s = p.seq.dimension();

  std::vector<long long> Ns = a.N;
  if (!a.sweep.empty()) {
    if (!Ns.empty()) throw ArgumentError("give either --N or --sweep, not both");
    Ns = parse_list(a.sweep);
  }
  if (Ns.empty()) {
    const auto size = p.seq.finite_size();
    if (!size) throw ArgumentError("--N is required for infinite sequences");
    Ns.push_back(static_cast<long long>(*size));
  }
  const auto size = p.seq.finite_size();
  for (auto n : Ns) {
    if (n < 1) throw ArgumentError("N must be at least 1");
    if (size && static_cast<std::size_t>(n) > *size) {
      throw ArgumentError("N=" + std::to_string(n) + " exceeds the " + std::to_string(*size) + " points of the sequence");
    }
    p.Ns.push_back(static_cast<std::size_t>(n));
  }

  const auto& m = a.measure;
  if (m == "spectral" || m == "diaphony") {
    p.system = parse_system(a.system, s);
    measures::weight_for_system(a.weight, *p.system);
    if (m == "diaphony") {
      if (!(a.alpha > 1.0)) throw ArgumentError("--alpha must exceed 1");
      if (!(a.rel_tol > 0.0)) throw ArgumentError("--rel-tol must be positive");
      if (a.method == "shells") p.method = measures::DiaphonyOptions::Method::shells;
      else if (a.method == "kernel") p.method = measures::DiaphonyOptions::Method::kernel;
      else if (a.method != "auto") throw ArgumentError("--method must be auto, shells or kernel");
    }
  } else if (m == "discrete-discrepancy" || m == "discrepancy-spectral") {
    p.res = resolution_for(a, s);
  } else if (m == "star") {
    if (s != 1) throw ArgumentError("star oracle needs a one-dimensional sequence");
  } else if (m == "extreme-oracle") {
    if (s > 3) throw ArgumentError("extreme-oracle needs s <= 3");
    for (auto n : p.Ns)
      if (n > 64) throw ArgumentError("extreme-oracle needs N <= 64");
  } else {
    const auto* g = std::get_if<sequences::Glp>(&p.seq.variant);
    if (g == nullptr) throw ArgumentError("measure '" + m + "' needs a glp: sequence");
    p.rule = g->rule;
    for (auto n : p.Ns) {
      if (static_cast<std::int64_t>(n) != g->rule.modulus()) throw ArgumentError("lattice measures use N equal to the modulus");
    }
    if (m == "p-alpha") {
      if (!(a.alpha > 1.0)) throw ArgumentError("--alpha must exceed 1 for p-alpha");
      if (a.K < 0) throw ArgumentError("--K must be positive");
    }
    if (!a.allow_large && (g->rule.dimension() > 3 || g->rule.modulus() > 10'000) && m != "p-alpha") {
      throw ResourceLimitError("exhaustive lattice search needs s <= 3 and N <= 10^4; pass --allow-large");
    }
  }
  return p;
}

MeasureReport compute(const Plan& p, std::size_t N) {
  const auto& a = p.args;
  MeasureReport r;
  r.measure = a.measure;
  r.N = static_cast<long long>(N);
  r.parameters["sequence"] = p.seq.describe();
  const auto& m = a.measure;

  if (m == "spectral" || m == "diaphony") {
    const auto points = sequences::generate(p.seq, N);
    const measures::HybridWeylSystem sys(*p.system, points, N);
    const auto w = measures::weight_for_system(a.weight, *p.system);
    r.system = p.system->describe();
    r.weight = w.name;
    r.parameters["norm"] = "max";
    r.parameters["normalizer"] = w.normalizer;
    if (m == "spectral") {
      const auto res = measures::spectral_test(sys, w);
      r.value = res.value;
      r.argmax_index = to_ll(res.argmax_index);
      r.K = res.shell_bound;
      r.tail_bound = res.tail_bound / res.normalizer;
      r.parameters["evaluated"] = res.evaluated;
    } else {
      measures::DiaphonyOptions opt;
      opt.rel_tol = a.rel_tol;
      opt.method = p.method;
      const auto res = measures::diaphony(sys, w, a.alpha, opt);
      r.value = res.value;
      r.K = res.truncation_K;
      r.tail_bound = res.tail_error_bound;
      r.parameters["alpha"] = a.alpha;
      r.parameters["method"] = res.method;
      r.parameters["rel_tol"] = a.rel_tol;
      r.parameters["evaluated"] = res.evaluated;
    }
    return r;
  }

  if (m == "discrete-discrepancy" || m == "discrepancy-spectral") {
    const auto points = sequences::generate(p.seq, N);
    const auto& res = *p.res;
    r.system = "indicator";
    r.weight = m == "discrepancy-spectral" ? "rho_g" : "none";
    r.parameters["base"] = ints(res.bases);
    r.parameters["resolution"] = ints(res.g);
    r.parameters["star"] = a.star;
    if (a.epsilon > 0.0) r.parameters["epsilon"] = a.epsilon;
    const auto eps = discrepancy::epsilon_bounds(res);
    if (m == "discrete-discrepancy") {
      r.value = a.star ? discrepancy::discrete_star_discrepancy(points, N, res)
                       : discrepancy::discrete_discrepancy(points, N, res);
      r.parameters["epsilon_b"] = a.star ? eps.epsilon_star : eps.epsilon;
    } else {
      const auto out = discrepancy::discrepancy_spectral_test(points, N, res, a.star);
      r.value = out.value;
      r.tail_bound = out.tail_cap;
      r.parameters["grid_branch"] = out.grid_branch;
      r.parameters["tail_branch"] = out.tail_branch;
      r.parameters["tail_evaluated"] = out.tail_evaluated;
    }
    return r;
  }

  if (m == "star" || m == "extreme-oracle") {
    const auto points = sequences::generate(p.seq, N);
    r.system = "indicator";
    r.weight = "none";
    r.value = m == "star" ? discrepancy::exact_star_discrepancy_1d(points, N)
                          : discrepancy::exact_extreme_discrepancy_small(points, N);
    return r;
  }

  const auto& rule = *p.rule;
  lattice::SearchOptions search;
  search.allow_large = a.allow_large;
  r.system = "trig";
  if (m == "sigma-lattice") {
    const auto res = lattice::sigma_lattice(rule, search);
    r.value = res.value;
    r.weight = "euclidean";
    r.argmax_index = to_ll(res.witness);
    r.K = static_cast<double>(rule.modulus());
  } else if (m == "bz-index") {
    const auto res = lattice::babenko_zaremba(rule, search);
    r.value = res.value;
    r.weight = "r";
    r.argmax_index = to_ll(res.witness);
    r.K = static_cast<double>(rule.modulus());
  } else {
    const std::int64_t K = a.K > 0 ? a.K : rule.modulus();
    const auto res = lattice::p_alpha(rule, a.alpha, K);
    r.value = res.value;
    r.weight = "r";
    r.K = static_cast<double>(res.K);
    r.tail_bound = res.tail_bound;
    r.parameters["alpha"] = a.alpha;
  }
  return r;
}

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Plan p = plan_analysis(a);
  std::vector<MeasureReport> reports;
  for (auto n : p.Ns) reports.push_back(compute(p, n));
  const bool csv = a.format == "csv" || (a.format.empty() && !a.sweep.empty());
  if (csv) {
    out << csv_header() << '\n';
    for (const auto& r : reports) out << csv_row(r) << '\n';
  } else if (reports.size() == 1) {
    out << to_json(reports[0]).dump() << '\n';
  } else {
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump() << '\n';
  }
  return kOk;
}

std::string format_coordinate(const UnitCoordinate& c) {
  if (c.exact()) {
    std::ostringstream os;
    os << c.rational().num << '/' << c.rational().den;
    return os.str();
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", c.value());
  return buf;
}

int run_generate(const std::string& seq_text, long long N, const std::string& format, std::ostream& out) {
  const auto seq = sequences::parse_sequence(seq_text);
  std::size_t n = 0;
  if (N > 0) {
    n = static_cast<std::size_t>(N);
  } else if (auto size = seq.finite_size()) {
    n = *size;
  } else {
    throw ArgumentError("--N is required for infinite sequences");
  }
  if (format != "points" && format != "json") throw ArgumentError("--format must be points or json");
  const auto pts = sequences::generate(seq, n);
  if (format == "points") {
    out << "# " << seq.describe() << " N=" << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < pts.dimension(); ++j) out << (j ? " " : "") << format_coordinate(pts.at(i, j));
      out << '\n';
    }
    return kOk;
  }
  ojson j;
  j["schema"] = kSchemaVersion;
  j["sequence"] = seq.describe();
  j["N"] = n;
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < n; ++i) {
    ojson row = ojson::array();
    for (std::size_t c = 0; c < pts.dimension(); ++c) row.push_back(format_coordinate(pts.at(i, c)));
    rows.push_back(row);
  }
  j["points"] = rows;
  out << j.dump() << '\n';
  return kOk;
}

int verify_digits(int base, int m, std::ostream& out) {
  if (base < 2) throw ArgumentError("--base must be at least 2");
  if (m < 1 || m > 12) throw ArgumentError("--m must lie in [1, 12]");
  bool ok = true;
  ojson parts = ojson::array();
  std::vector<std::map<std::uint64_t, std::uint64_t>> profiles;
  const auto partitions = digits::enumerate_partitions(m);
  for (const auto& part : partitions) {
    const digits::AdditionSpec spec(base, part);
    const auto report = digits::verify_group_axioms(spec, std::uint64_t{1} << 20);
    const auto profile = digits::order_profile(spec);
    ok = ok && report.ok();
    ojson e;
    e["partition"] = part.to_string();
    e["exhaustive"] = report.exhaustive;
    e["group"] = report.ok();
    e["max_order"] = digits::max_element_order(spec);
    parts.push_back(e);
    profiles.push_back(profile);
  }
  bool distinct = true;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j) distinct = distinct && profiles[i] != profiles[j];

  // (1,...,1) must be digitwise addition and (m) carry addition.
  const digits::AdditionSpec xor_spec(base, digits::Partition(std::vector<int>(static_cast<std::size_t>(m), 1)));
  const digits::AdditionSpec carry_spec(base, digits::Partition({m}));
  std::uint64_t size = 1;
  for (int i = 0; i < m; ++i) size *= static_cast<std::uint64_t>(base);
  const std::uint64_t step = size * size <= (std::uint64_t{1} << 22) ? 1 : size * size / (std::uint64_t{1} << 22) + 1;
  bool xor_match = true, carry_match = true;
  for (std::uint64_t pair = 0; pair < size * size; pair += step) {
    const auto x = digits::DigitVector::from_integer(base, static_cast<std::size_t>(m), pair / size);
    const auto y = digits::DigitVector::from_integer(base, static_cast<std::size_t>(m), pair % size);
    xor_match = xor_match && digits::partition_add(x, y, xor_spec) == digits::xor_add(x, y);
    carry_match = carry_match && digits::partition_add(x, y, carry_spec) == digits::carry_add(x, y);
  }
  ok = ok && distinct && xor_match && carry_match;

  ojson j;
  j["schema"] = kSchemaVersion;
  j["check"] = "digits";
  j["base"] = base;
  j["m"] = m;
  j["partitions"] = parts;
  j["profiles_distinct"] = distinct;
  j["xor_matches_unit_partition"] = xor_match;
  j["carry_matches_single_block"] = carry_match;
  j["ok"] = ok;
  out << j.dump() << '\n';
  return ok ? kOk : kVerificationFailed;
}

int verify_sloan_kachoyan(const std::string& seq_text, long long K, std::ostream& out) {
  const auto seq = sequences::parse_sequence(seq_text);
  const auto* g = std::get_if<sequences::Glp>(&seq.variant);
  if (g == nullptr) throw ArgumentError("sloan-kachoyan needs a glp: sequence");
  const std::int64_t bound = K > 0 ? K : g->rule.modulus();
  const auto report = lattice::sloan_kachoyan_check(g->rule, bound);
  ojson j;
  j["schema"] = kSchemaVersion;
  j["check"] = "sloan-kachoyan";
  j["sequence"] = seq.describe();
  j["K"] = bound;
  j["checked"] = report.checked;
  j["max_deviation"] = report.max_deviation;
  j["violations"] = report.violations.size();
  j["ok"] = report.ok();
  out << j.dump() << '\n';
  return report.ok() ? kOk : kVerificationFailed;
}

int verify_sandwich(const AnalyzeArgs& a, std::ostream& out) {
  const auto seq = sequences::parse_sequence(a.seq);
  const std::size_t s = seq.dimension();
  std::size_t N = 0;
  if (!a.N.empty()) {
    if (a.N.size() != 1 || a.N[0] < 1) throw ArgumentError("--N must be a single positive value");
    N = static_cast<std::size_t>(a.N[0]);
  } else if (auto size = seq.finite_size()) {
    N = *size;
  } else {
    throw ArgumentError("--N is required for infinite sequences");
  }
  if (s > 3 || N > 64) throw ArgumentError("sandwich check needs s <= 3 and N <= 64 for the exact oracle");
  const auto res = resolution_for(a, s);
  const auto pts = sequences::generate(seq, N);
  const double discrete = discrepancy::discrete_discrepancy(pts, N, res);
  const double oracle = discrepancy::exact_extreme_discrepancy_small(pts, N);
  const auto eps = discrepancy::epsilon_bounds(res);
  bool ok = discrete <= oracle + kSlack && oracle <= discrete + eps.epsilon + kSlack;
  ok = ok && eps.epsilon <= eps.extreme_cap && eps.epsilon_star <= eps.star_cap;
  ojson j;
  j["schema"] = kSchemaVersion;
  j["check"] = "sandwich";
  j["sequence"] = seq.describe();
  j["N"] = N;
  j["resolution"] = ints(res.g);
  j["discrete"] = discrete;
  j["oracle"] = oracle;
  j["epsilon"] = eps.epsilon;
  if (s == 1) {
    const double dstar = discrepancy::discrete_star_discrepancy(pts, N, res);
    const double ostar = discrepancy::exact_star_discrepancy_1d(pts, N);
    ok = ok && dstar <= ostar + kSlack && ostar <= dstar + eps.epsilon_star + kSlack;
    j["discrete_star"] = dstar;
    j["oracle_star"] = ostar;
    j["epsilon_star"] = eps.epsilon_star;
  }
  j["ok"] = ok;
  out << j.dump() << '\n';
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"equilens: spectral tests, diaphony and discrepancy of point sequences"};
  app.require_subcommand(1);

  AnalyzeArgs a;
  std::string Nlist;
  auto* analyze = app.add_subcommand("analyze", "Evaluate one measure on a sequence");
  analyze->add_option("--seq", a.seq, "halton:b,..  kron:a,..  glp:a,..@N  hybrid:(..)+(..)  file:PATH")->required();
  analyze->add_option("--N", Nlist, "Number of points (default: all points of a finite sequence)");
  analyze->add_option("--sweep", a.sweep, "Comma-separated N values, one CSV row each");
  analyze->add_option("--measure", a.measure, "Measure name")->required();
  analyze->add_option("--system", a.system, "trig, or per coordinate walsh:b / badic:b / trig")->capture_default_str();
  analyze->add_option("--weight", a.weight, "r, euclidean or digit")->capture_default_str();
  analyze->add_option("--alpha", a.alpha, "Diaphony / P_alpha exponent")->capture_default_str();
  analyze->add_option("--rel-tol", a.rel_tol, "Diaphony relative tail tolerance")->capture_default_str();
  analyze->add_option("--method", a.method, "Diaphony method: auto, shells or kernel")->capture_default_str();
  analyze->add_option("--base", a.bases, "Discrepancy bases (one, or one per coordinate)")->delimiter(',');
  analyze->add_option("--resolution", a.resolution, "Resolution exponents g")->delimiter(',');
  analyze->add_option("--epsilon", a.epsilon, "Choose g so the approximation error is below epsilon");
  analyze->add_flag("--star", a.star, "Star (anchored) discrepancy");
  analyze->add_option("--K", a.K, "Truncation bound for p-alpha (default N)");
  analyze->add_option("--format", a.format, "json or csv (default json; csv for --sweep)");
  analyze->add_flag("--allow-large", a.allow_large, "Permit exhaustive lattice searches beyond s <= 3, N <= 10^4");

  std::string gen_seq, gen_format = "points";
  long long gen_N = 0;
  auto* generate = app.add_subcommand("generate", "Print the first N points of a sequence");
  generate->add_option("--seq", gen_seq, "Sequence spec")->required();
  generate->add_option("--N", gen_N, "Number of points");
  generate->add_option("--format", gen_format, "points or json")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  int v_base = 2, v_m = 0;
  auto* v_digits = verify->add_subcommand("digits", "Group axioms for every partition-defined addition");
  v_digits->add_option("--base", v_base, "Digit base")->capture_default_str();
  v_digits->add_option("--m", v_m, "Digit-vector length")->required();
  std::string sk_seq;
  long long sk_K = 0;
  auto* v_sk = verify->add_subcommand("sloan-kachoyan", "Character sums over lattice nodes vs dual membership");
  v_sk->add_option("--seq", sk_seq, "glp:a,..@N")->required();
  v_sk->add_option("--K", sk_K, "Index bound (default N)");
  AnalyzeArgs sw;
  std::string sw_N;
  auto* v_sw = verify->add_subcommand("sandwich", "Discrete discrepancy sandwich against the exact oracle");
  v_sw->add_option("--seq", sw.seq, "Sequence spec")->required();
  v_sw->add_option("--N", sw_N, "Number of points");
  v_sw->add_option("--base", sw.bases, "Bases")->delimiter(',');
  v_sw->add_option("--resolution", sw.resolution, "Resolution exponents g")->delimiter(',');
  v_sw->add_option("--epsilon", sw.epsilon, "Choose g from epsilon");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  }

  try {
    if (*analyze) {
      if (!Nlist.empty()) a.N = parse_list(Nlist);
      return run_analyze(a, out);
    }
    if (*generate) return run_generate(gen_seq, gen_N, gen_format, out);
    if (*v_digits) return verify_digits(v_base, v_m, out);
    if (*v_sk) return verify_sloan_kachoyan(sk_seq, sk_K, out);
    if (*v_sw) {
      if (!sw_N.empty()) sw.N = parse_list(sw_N);
      return verify_sandwich(sw, out);
    }
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what();
    if (e.has_bracket()) err << "; value lies in [" << e.lower() << ", " << e.upper() << "]";
    err << '\n';
    return kResourceLimit;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  }
  err << "error: no command given\n";
  return kArgumentError;
}

}  // namespace equilens::cli
