#include "equilens/sequences.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "equilens/errors.hpp"
#include "equilens/padic.hpp"
#include "equilens/parallel.hpp"

namespace equilens::sequences {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ArgumentError("invalid " + what + " '" + tok + "'");
  }
  if (used != tok.size()) throw ArgumentError("invalid " + what + " '" + tok + "'");
  return v;
}

// Double-double sqrt(P): hi rounded, lo from the exact residual P - hi^2.
std::pair<double, double> dd_sqrt(double P) {
  const double hi = std::sqrt(P);
  const double r = std::fma(-hi, hi, P);
  return {hi, r / (2.0 * hi)};
}

// (hi, lo) + j with j an integer, renormalized.
std::pair<double, double> dd_add(double hi, double lo, double j) {
  const double s = hi + j;
  const double bb = s - hi;
  const double err = (hi - (s - bb)) + (j - bb);
  const double h = s + (err + lo);
  return {h, (err + lo) - (h - s)};
}

bool is_plain_decimal(const std::string& t) {
  bool digit = false, dot = false;
  for (char ch : t) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digit = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digit;
}

// Exact rational for a plain decimal with at most 18 fractional digits and
// an integer part that keeps the numerator in 64 bits.
std::optional<Rational> decimal_rational(const std::string& t) {
  if (!is_plain_decimal(t)) return std::nullopt;
  const auto dot = t.find('.');
  const std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  if (fp.size() > 18) return std::nullopt;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  int128 num = 0;
  for (char ch : ip + fp) {
    num = num * 10 + (ch - '0');
    if (num > INT64_MAX) return std::nullopt;
  }
  return Rational(static_cast<std::int64_t>(num), den);
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

KroneckerAlpha KroneckerAlpha::parse(const std::string& token) {
  KroneckerAlpha a;
  a.label = token;
  if (token.empty()) throw ArgumentError("empty Kronecker step");
  std::string head = token;
  double shift = 0.0;
  if (token.rfind("sqrt", 0) == 0 || token.rfind("golden", 0) == 0) {
    const auto pos = token.find_first_of("+-", 1);
    if (pos != std::string::npos) {
      head = token.substr(0, pos);
      shift = static_cast<double>(parse_int(token.substr(pos), "Kronecker shift"));
    }
    std::pair<double, double> v;
    if (head == "golden") {
      // (sqrt5 - 1)/2, the fractional part of the golden ratio.
      auto r5 = dd_sqrt(5.0);
      v = dd_add(r5.first, r5.second, -1.0);
      v = {v.first / 2.0, v.second / 2.0};
    } else {
      const auto P = parse_int(head.substr(4), "square root argument");
      if (P < 2) throw ArgumentError("sqrt argument must be at least 2");
      const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(P))));
      if (root * root == P) throw ArgumentError("sqrt" + std::to_string(P) + " is rational");
      v = dd_sqrt(static_cast<double>(P));
    }
    v = dd_add(v.first, v.second, shift);
    a.hi = v.first;
    a.lo = v.second;
    return a;
  }
  const bool negative = token[0] == '-';
  const std::string body = negative ? token.substr(1) : token;
  if (auto r = decimal_rational(body)) {
    const long double num = static_cast<long double>(r->num);
    const long double den = static_cast<long double>(r->den);
    a.hi = static_cast<double>(num / den);
    a.lo = static_cast<double>((num - static_cast<long double>(a.hi) * den) / den);
  } else {
    std::size_t used = 0;
    try {
      a.hi = std::stod(body, &used);
    } catch (const std::exception&) {
      throw ArgumentError("invalid Kronecker step '" + token + "'");
    }
    if (used != body.size() || !std::isfinite(a.hi)) throw ArgumentError("invalid Kronecker step '" + token + "'");
  }
  if (negative) {
    a.hi = -a.hi;
    a.lo = -a.lo;
  }
  return a;
}

std::size_t SequenceSpec::dimension() const {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halton>) return v.bases.size();
        else if constexpr (std::is_same_v<T, Kronecker>) return v.alphas.size();
        else if constexpr (std::is_same_v<T, Glp>) return v.rule.dimension();
        else if constexpr (std::is_same_v<T, FilePoints>) return v.points->dimension();
        else {
          std::size_t s = 0;
          for (const auto& p : v.parts) s += p.dimension();
          return s;
        }
      },
      variant);
}

std::string SequenceSpec::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halton>) return "halton:" + join_ints(v.bases);
        else if constexpr (std::is_same_v<T, Kronecker>) {
          std::string out = "kron:";
          for (std::size_t i = 0; i < v.alphas.size(); ++i) out += (i ? "," : "") + v.alphas[i].label;
          return out;
        } else if constexpr (std::is_same_v<T, Glp>) return "glp:" + v.rule.to_string();
        else if constexpr (std::is_same_v<T, FilePoints>) return "file:" + v.path;
        else {
          std::string out = "hybrid:";
          for (std::size_t i = 0; i < v.parts.size(); ++i) out += (i ? "+(" : "(") + v.parts[i].describe() + ")";
          return out;
        }
      },
      variant);
}

std::optional<std::size_t> SequenceSpec::finite_size() const {
  if (const auto* g = std::get_if<Glp>(&variant)) return static_cast<std::size_t>(g->rule.modulus());
  if (const auto* f = std::get_if<FilePoints>(&variant)) return f->points->size();
  if (const auto* h = std::get_if<Hybrid>(&variant)) {
    std::optional<std::size_t> n;
    for (const auto& p : h->parts) {
      if (auto m = p.finite_size()) n = n ? std::min(*n, *m) : *m;
    }
    return n;
  }
  return std::nullopt;
}

SequenceSpec parse_sequence(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("sequence '" + text + "' needs a kind prefix such as halton:");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (body.empty()) throw ArgumentError("sequence '" + text + "' has no parameters");
  SequenceSpec spec;
  if (kind == "halton") {
    Halton h;
    for (const auto& t : split(body, ',')) {
      const auto b = parse_int(t, "Halton base");
      if (b < 2 || b > 1'000'000) throw ArgumentError("Halton bases must lie in [2, 10^6]");
      h.bases.push_back(static_cast<int>(b));
    }
    spec.variant = h;
  } else if (kind == "kron") {
    Kronecker k;
    for (const auto& t : split(body, ',')) k.alphas.push_back(KroneckerAlpha::parse(t));
    spec.variant = k;
  } else if (kind == "glp") {
    const auto at = body.find('@');
    if (at == std::string::npos) throw ArgumentError("glp sequence needs the form glp:a1,...,as@N");
    std::vector<std::int64_t> a;
    for (const auto& t : split(body.substr(0, at), ',')) a.push_back(parse_int(t, "generator entry"));
    spec.variant = Glp{lattice::LatticeRuleSpec(a, parse_int(body.substr(at + 1), "modulus"))};
  } else if (kind == "hybrid") {
    Hybrid h;
    std::size_t i = 0;
    while (i < body.size()) {
      if (body[i] != '(') throw ArgumentError("hybrid parts must be parenthesized: hybrid:(spec)+(spec)");
      int depth = 0;
      std::size_t j = i;
      for (; j < body.size(); ++j) {
        if (body[j] == '(') ++depth;
        if (body[j] == ')' && --depth == 0) break;
      }
      if (j == body.size()) throw ArgumentError("unbalanced parentheses in hybrid sequence");
      h.parts.push_back(parse_sequence(body.substr(i + 1, j - i - 1)));
      i = j + 1;
      if (i < body.size()) {
        if (body[i] != '+') throw ArgumentError("hybrid parts are joined with '+'");
        ++i;
        if (i == body.size()) throw ArgumentError("trailing '+' in hybrid sequence");
      }
    }
    if (h.parts.size() < 2) throw ArgumentError("hybrid sequence needs at least two parts");
    spec.variant = h;
  } else if (kind == "file") {
    spec.variant = FilePoints{body, std::make_shared<const PointSet>(load_points(body))};
  } else {
    throw ArgumentError("unknown sequence kind '" + kind + "'");
  }
  return spec;
}

Rational halton_coordinate(std::uint64_t n, int base) { return padic::radical_inverse(n, base); }

double kronecker_coordinate(std::uint64_t n, const KroneckerAlpha& alpha) {
  if (n > (std::uint64_t{1} << 53)) throw RangeError("Kronecker index exceeds 2^53");
  const double nd = static_cast<double>(n);
  const double p = nd * alpha.hi;
  const double e = std::fma(nd, alpha.hi, -p);
  double t = (p - std::floor(p)) + (e + nd * alpha.lo);
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

namespace {

void append_point(const SequenceSpec& spec, std::uint64_t n, UnitPoint& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halton>) {
          for (int b : v.bases) out.push_back(UnitCoordinate::from_rational(halton_coordinate(n, b)));
        } else if constexpr (std::is_same_v<T, Kronecker>) {
          for (const auto& a : v.alphas) out.push_back(UnitCoordinate::from_double(kronecker_coordinate(n, a)));
        } else if constexpr (std::is_same_v<T, Glp>) {
          if (n >= static_cast<std::uint64_t>(v.rule.modulus())) throw RangeError("glp index n must be below N");
          for (std::size_t i = 0; i < v.rule.dimension(); ++i) {
            out.push_back(UnitCoordinate::from_rational(lattice::node_coordinate(v.rule, static_cast<std::int64_t>(n), i)));
          }
        } else if constexpr (std::is_same_v<T, FilePoints>) {
          if (n >= v.points->size()) throw RangeError("point index exceeds the file's point count");
          const auto p = v.points->point(static_cast<std::size_t>(n));
          out.insert(out.end(), p.begin(), p.end());
        } else {
          for (const auto& part : v.parts) append_point(part, n, out);
        }
      },
      spec.variant);
}

}  // namespace

UnitPoint point_at(const SequenceSpec& spec, std::uint64_t n) {
  UnitPoint p;
  p.reserve(spec.dimension());
  append_point(spec, n, p);
  return p;
}

PointSet generate(const SequenceSpec& spec, std::size_t N) {
  if (auto size = spec.finite_size(); size && N > *size) {
    throw RangeError("sequence '" + spec.describe() + "' has only " + std::to_string(*size) + " points");
  }
  PointSet out(N, spec.dimension());
  parallel_for(N, [&](std::size_t n) { out.set_point(n, point_at(spec, n)); });
  return out;
}

UnitCoordinate parse_coordinate(const std::string& token) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const auto p = parse_int(token.substr(0, slash), "numerator");
    const auto q = parse_int(token.substr(slash + 1), "denominator");
    if (q <= 0) throw ArgumentError("rational coordinate needs a positive denominator");
    if (p < 0 || p >= q) throw RangeError("coordinate " + token + " is not in [0,1)");
    return UnitCoordinate::from_rational(Rational(p, q));
  }
  if (auto r = decimal_rational(token)) {
    if (r->num >= r->den) throw RangeError("coordinate " + token + " is not in [0,1)");
    return UnitCoordinate::from_rational(*r);
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse coordinate '" + token + "'");
  }
  if (used != token.size()) throw ArgumentError("cannot parse coordinate '" + token + "'");
  if (!(x >= 0.0 && x < 1.0)) throw RangeError("coordinate " + token + " is not in [0,1)");
  return UnitCoordinate::from_double(x);
}

PointSet parse_points(std::istream& in) {
  std::vector<UnitPoint> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    UnitPoint p;
    bool comment = false;
    while (ls >> tok) {
      if (p.empty() && tok[0] == '#') {
        comment = true;
        break;
      }
      try {
        p.push_back(parse_coordinate(tok));
      } catch (const RangeError& e) {
        throw RangeError("line " + std::to_string(line_no) + ", coordinate " + std::to_string(p.size() + 1) + ": " + e.what());
      } catch (const ArgumentError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
      }
    }
    if (comment || p.empty()) continue;
    if (dim == 0) dim = p.size();
    if (p.size() != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) + " coordinates, found " +
                           std::to_string(p.size()),
                       line_no);
    }
    rows.push_back(std::move(p));
  }
  if (rows.empty()) throw ParseError("point file contains no points", line_no);
  PointSet out(rows.size(), dim);
  for (std::size_t n = 0; n < rows.size(); ++n) out.set_point(n, rows[n]);
  return out;
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open point file '" + path + "'");
  return parse_points(in);
}

}  // namespace equilens::sequences
