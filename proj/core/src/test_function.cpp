#include "lue/test_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "lue/errors.hpp"

namespace lue {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw InvalidArgument("not a number: '" + std::string(token) + "'");
  return v;
}

namespace {

using Kind = FunctionTerm::Kind;

struct KindName {
  Kind kind;
  std::string_view name;
};

constexpr KindName kNames[] = {
    {Kind::identity, "identity"},   {Kind::constant, "const"},  {Kind::power, "power"},
    {Kind::poly, "poly"},           {Kind::cheb, "cheb"},       {Kind::indicator, "indicator"},
    {Kind::abs_shift, "abs-shift"}, {Kind::abs, "abs"},         {Kind::hat, "hat"},
    {Kind::cheb_ext, "cheb-ext"},
};

std::string_view kind_name(Kind k) {
  for (const auto& kn : kNames)
    if (kn.kind == k) return kn.name;
  return "identity";
}

std::optional<Kind> kind_from_name(std::string_view s) {
  for (const auto& kn : kNames)
    if (kn.name == s) return kn.kind;
  return std::nullopt;
}


// a_1..a_N at coeffs[first..]; returns sum_k a_k T_k(y).
double cheb_series(const std::vector<double>& p, std::size_t first, double y) {
  double b1 = 0.0;
  double b2 = 0.0;
  const std::size_t N = p.size() - first;
  for (std::size_t k = N; k >= 1; --k) {
    const double b0 = p[first + k - 1] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  // With c_0 = 0: f = c_0 + y b_1 - b_2 where b_1, b_2 are the last two values.
  return y * b1 - b2;
}

// d/dy sum_k a_k T_k(y) = sum_k k a_k U_{k-1}(y).
double cheb_series_derivative(const std::vector<double>& p, std::size_t first, double y) {
  double u_prev = 0.0;  // U_{-1}
  double u = 1.0;       // U_0
  double d = 0.0;
  for (std::size_t k = 1; first + k - 1 < p.size(); ++k) {
    d += static_cast<double>(k) * p[first + k - 1] * u;
    const double next = 2.0 * y * u - u_prev;
    u_prev = u;
    u = next;
  }
  return d;
}

double cheb_ext_eval(const std::vector<double>& p, double x) {
  const double eps = p[0];
  const double c0 = p[1];
  const double x0 = 4.0 + eps;
  auto g = [&](double z) { return c0 + cheb_series(p, 2, (z - 2.0) / 2.0); };
  if (x <= x0) return g(x);
  const double g0 = g(x0);
  if (x >= x0 + eps) return g0;
  const double dg = 0.5 * cheb_series_derivative(p, 2, (x0 - 2.0) / 2.0);
  const double s = (x - x0) / eps;
  return g0 + dg * eps * (s * s * s - 2.0 * s * s + s);
}

std::size_t arity(Kind k) {
  switch (k) {
    case Kind::identity:
    case Kind::abs_shift: return 0;
    case Kind::constant:
    case Kind::power:
    case Kind::abs: return 1;
    case Kind::indicator: return 2;
    case Kind::hat: return 3;
    default: return std::numeric_limits<std::size_t>::max();
  }
}

void validate(const FunctionTerm& t) {
  const std::size_t need = arity(t.kind);
  const auto& p = t.params;
  if (need != std::numeric_limits<std::size_t>::max() && p.size() != need)
    throw InvalidArgument(std::string(kind_name(t.kind)) + ": expected " + std::to_string(need) +
                          " parameter(s)");
  for (double v : p)
    if (!std::isfinite(v)) throw InvalidArgument("test function parameters must be finite");
  switch (t.kind) {
    case Kind::power:
      if (p[0] < 0 || p[0] != std::floor(p[0]) || p[0] > 64)
        throw InvalidArgument("power: exponent must be an integer in [0, 64]");
      break;
    case Kind::poly:
      if (p.empty()) throw InvalidArgument("poly: needs at least one coefficient");
      break;
    case Kind::cheb:
      if (p.empty()) throw InvalidArgument("cheb: needs at least one coefficient");
      break;
    case Kind::indicator:
      if (!(p[0] < p[1])) throw InvalidArgument("indicator: need a < b");
      break;
    case Kind::hat:
      if (!(p[0] < p[1] && p[1] < p[2])) throw InvalidArgument("hat: need l < p < r");
      break;
    case Kind::cheb_ext:
      if (p.size() < 2 || !(p[0] > 0.0)) throw InvalidArgument("cheb-ext: need eps > 0 and c0");
      break;
    default: break;
  }
  if (!std::isfinite(t.weight) || !std::isfinite(t.shift))
    throw InvalidArgument("test function weight and shift must be finite");
}

}  // namespace

double FunctionTerm::operator()(double x0) const {
  const double x = x0 + shift;
  const auto& p = params;
  double v = 0.0;
  switch (kind) {
    case Kind::identity: v = x; break;
    case Kind::constant: v = p[0]; break;
    case Kind::power: v = std::pow(x, static_cast<int>(p[0])); break;
    case Kind::poly:
      for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
      break;
    case Kind::cheb: v = cheb_series(p, 0, (x - 2.0) / 2.0); break;
    case Kind::indicator: v = (x >= p[0] && x <= p[1]) ? 1.0 : 0.0; break;
    case Kind::abs_shift: v = std::abs(x - 2.0); break;
    case Kind::abs: v = std::abs(x - p[0]); break;
    case Kind::hat:
      if (x > p[0] && x <= p[1])
        v = (x - p[0]) / (p[1] - p[0]);
      else if (x > p[1] && x < p[2])
        v = (p[2] - x) / (p[2] - p[1]);
      break;
    case Kind::cheb_ext: v = cheb_ext_eval(p, x); break;
  }
  return weight * v;
}

TestFunction::TestFunction(std::vector<FunctionTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("test function needs at least one term");
  for (const auto& t : terms_) validate(t);
}

namespace {

TestFunction single(Kind k, std::vector<double> params) {
  FunctionTerm t;
  t.kind = k;
  t.params = std::move(params);
  return TestFunction({t});
}

bool is_number_token(std::string_view tok) {
  if (tok.empty()) return false;
  try {
    parse_number(tok);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

}  // namespace

TestFunction TestFunction::identity() { return single(Kind::identity, {}); }
TestFunction TestFunction::constant(double c) { return single(Kind::constant, {c}); }
TestFunction TestFunction::power(int k) { return single(Kind::power, {static_cast<double>(k)}); }
TestFunction TestFunction::poly(std::vector<double> c) { return single(Kind::poly, std::move(c)); }
TestFunction TestFunction::cheb(std::vector<double> c) { return single(Kind::cheb, std::move(c)); }
TestFunction TestFunction::indicator(double a, double b) { return single(Kind::indicator, {a, b}); }
TestFunction TestFunction::abs_shift() { return single(Kind::abs_shift, {}); }
TestFunction TestFunction::abs(double c) { return single(Kind::abs, {c}); }
TestFunction TestFunction::hat(double l, double p, double r) { return single(Kind::hat, {l, p, r}); }

TestFunction TestFunction::cheb_ext(double eps, double c0, std::vector<double> coefficients) {
  std::vector<double> p{eps, c0};
  p.insert(p.end(), coefficients.begin(), coefficients.end());
  return single(Kind::cheb_ext, std::move(p));
}

TestFunction TestFunction::parse(std::string_view text) {
  std::vector<std::string> tokens;
  {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw InvalidArgument("empty test function descriptor");
  std::vector<FunctionTerm> terms;
  std::size_t i = 0;
  while (true) {
    FunctionTerm t;
    if (i + 1 < tokens.size() && is_number_token(tokens[i]) && tokens[i + 1] == "*") {
      t.weight = parse_number(tokens[i]);
      i += 2;
    }
    if (i < tokens.size() && tokens[i] == "shift") {
      if (i + 1 >= tokens.size()) throw InvalidArgument("shift: missing offset");
      t.shift = parse_number(tokens[i + 1]);
      i += 2;
    }
    if (i >= tokens.size()) throw InvalidArgument("test function: missing term");
    const auto kind = kind_from_name(tokens[i]);
    if (!kind) throw InvalidArgument("unknown test function '" + tokens[i] + "'");
    t.kind = *kind;
    ++i;
    while (i < tokens.size() && tokens[i] != "+") t.params.push_back(parse_number(tokens[i++]));
    terms.push_back(std::move(t));
    if (i >= tokens.size()) break;
    ++i;  // '+'
    if (i >= tokens.size()) throw InvalidArgument("test function: dangling '+'");
  }
  return TestFunction(std::move(terms));
}

std::string TestFunction::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k > 0) out += " + ";
    if (t.weight != 1.0) out += format_number(t.weight) + " * ";
    if (t.shift != 0.0) out += "shift " + format_number(t.shift) + " ";
    out += kind_name(t.kind);
    for (double v : t.params) out += " " + format_number(v);
  }
  return out;
}

double TestFunction::operator()(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t(x);
  return s;
}

namespace {

void term_breaks(const FunctionTerm& t, std::vector<double>& kinks, std::vector<double>& jumps) {
  const auto& p = t.params;
  auto put = [&](std::vector<double>& v, double x) { v.push_back(x - t.shift); };
  switch (t.kind) {
    case Kind::indicator:
      put(jumps, p[0]);
      put(jumps, p[1]);
      break;
    case Kind::abs_shift: put(kinks, 2.0); break;
    case Kind::abs: put(kinks, p[0]); break;
    case Kind::hat:
      for (double v : p) put(kinks, v);
      break;
    case Kind::cheb_ext:
      put(kinks, 4.0 + p[0]);
      put(kinks, 4.0 + 2.0 * p[0]);
      break;
    default: break;
  }
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<double> TestFunction::breakpoints() const {
  std::vector<double> kinks;
  std::vector<double> jumps;
  for (const auto& t : terms_) term_breaks(t, kinks, jumps);
  kinks.insert(kinks.end(), jumps.begin(), jumps.end());
  sort_unique(kinks);
  return kinks;
}

std::vector<double> TestFunction::jumps() const {
  std::vector<double> kinks;
  std::vector<double> jumps;
  for (const auto& t : terms_) term_breaks(t, kinks, jumps);
  sort_unique(jumps);
  return jumps;
}

bool TestFunction::is_constant() const {
  for (const auto& t : terms_) {
    if (t.weight == 0.0 || t.kind == Kind::constant) continue;
    if (t.kind == Kind::power && t.params[0] == 0) continue;
    if (t.kind == Kind::poly || t.kind == Kind::cheb) {
      const std::size_t first = t.kind == Kind::poly ? 1 : 0;
      if (std::all_of(t.params.begin() + first, t.params.end(), [](double v) { return v == 0.0; }))
        continue;
    }
    if (t.kind == Kind::cheb_ext &&
        std::all_of(t.params.begin() + 2, t.params.end(), [](double v) { return v == 0.0; }))
      continue;
    return false;
  }
  return true;
}

int TestFunction::degree_hint() const {
  int d = 0;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::identity: d = std::max(d, 1); break;
      case Kind::power: d = std::max(d, static_cast<int>(t.params[0])); break;
      case Kind::poly: d = std::max(d, static_cast<int>(t.params.size()) - 1); break;
      case Kind::cheb: d = std::max(d, static_cast<int>(t.params.size())); break;
      case Kind::cheb_ext: d = std::max(d, static_cast<int>(t.params.size()) - 2); break;
      default: break;
    }
  }
  return d;
}

std::optional<Interval> TestFunction::support_hint() const {
  Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& t : terms_) {
    const auto& p = t.params;
    switch (t.kind) {
      case Kind::constant: continue;
      case Kind::indicator:
      case Kind::hat:
        iv.lo = std::min(iv.lo, p.front() - t.shift);
        iv.hi = std::max(iv.hi, p.back() - t.shift);
        break;
      case Kind::cheb_ext:
        iv.lo = std::min(iv.lo, 0.0);
        iv.hi = std::max(iv.hi, 4.0 + 2.0 * p[0] - t.shift);
        break;
      default: return std::nullopt;
    }
  }
  if (iv.lo > iv.hi) return Interval{0.0, 0.0};
  return iv;
}

std::optional<double> TestFunction::lipschitz_hint() const {
  double L = 0.0;
  for (const auto& t : terms_) {
    const auto& p = t.params;
    const double w = std::abs(t.weight);
    switch (t.kind) {
      case Kind::constant: break;
      case Kind::identity:
      case Kind::abs_shift:
      case Kind::abs: L += w; break;
      case Kind::hat: L += w * std::max(1.0 / (p[1] - p[0]), 1.0 / (p[2] - p[1])); break;
      default: return std::nullopt;
    }
  }
  return L;
}

TestFunction TestFunction::shifted(double s) const {
  auto terms = terms_;
  for (auto& t : terms) t.shift += s;
  return TestFunction(std::move(terms));
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return TestFunction(std::move(terms));
}

TestFunction operator*(double c, const TestFunction& f) {
  auto terms = f.terms_;
  for (auto& t : terms) t.weight *= c;
  return TestFunction(std::move(terms));
}

TestFunction operator-(const TestFunction& a, const TestFunction& b) { return a + (-1.0) * b; }

}  // namespace lue
