#include "gsds/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gsds {

bool GradedLexDesc::operator()(const Exponents& a, const Exponents& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly::Poly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{}, constant);
}

Poly Poly::zero(std::vector<std::string> vars) {
  Poly p;
  p.vars_ = std::move(vars);
  return p;
}

Poly Poly::constant(const Rational& value) { return Poly(value); }

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents exps,
                    const Rational& coeff) {
  if (vars.size() != exps.size()) {
    throw std::invalid_argument("monomial: exponent/variable length mismatch");
  }
  Poly p;
  p.vars_ = std::move(vars);
  if (coeff != 0) p.terms_.emplace(std::move(exps), coeff);
  return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, TermMap terms) {
  Poly p;
  p.vars_ = std::move(vars);
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0) {
      it = terms.erase(it);
    } else {
      if (it->first.size() != p.vars_.size()) {
        throw std::invalid_argument("from_terms: exponent length mismatch");
      }
      ++it;
    }
  }
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant");
  return terms_.begin()->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const Exponents& e = terms_.begin()->first;  // leading term is max degree
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0L));
}

int Poly::var_index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return -1;
  return static_cast<int>(it - vars_.begin());
}

int Poly::degree_in(const std::string& var) const {
  int idx = var_index(var);
  if (idx < 0 || terms_.empty()) return terms_.empty() ? -1 : 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading_coefficient of zero");
  return terms_.begin()->second;
}

std::size_t Poly::max_coefficient_bits() const {
  std::size_t m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, bit_size(c));
  return m;
}

std::vector<std::string> variable_union(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

Poly Poly::aligned_to(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      throw std::invalid_argument("aligned_to: target lacks variable " +
                                  vars_[i]);
    }
    where[i] = static_cast<int>(it - vars.begin());
  }
  TermMap out;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    out.emplace(std::move(ne), c);
  }
  return Poly::from_terms(vars, std::move(out));
}

namespace {

// Shared alignment for binary operations.
std::pair<Poly, Poly> aligned(const Poly& a, const Poly& b) {
  if (a.variables() == b.variables()) return {a, b};
  auto u = variable_union(a.variables(), b.variables());
  return {a.aligned_to(u), b.aligned_to(u)};
}

}  // namespace

Poly Poly::operator-() const {
  TermMap out;
  for (const auto& [e, c] : terms_) out.emplace(e, -c);
  return Poly::from_terms(vars_, std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  auto [pa, pb] = aligned(a, b);
  Poly::TermMap out = pa.terms_;
  for (const auto& [e, c] : pb.terms_) {
    auto [it, fresh] = out.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return Poly::from_terms(pa.vars_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  auto [pa, pb] = aligned(a, b);
  Poly::TermMap out;
  const std::size_t n = pa.vars_.size();
  Exponents e(n);
  for (const auto& [ea, ca] : pa.terms_) {
    for (const auto& [eb, cb] : pb.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      auto [it, fresh] = out.emplace(e, ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return Poly::from_terms(pa.vars_, std::move(out));
}

Poly operator*(const Rational& c, const Poly& p) {
  if (c == 0) return Poly::zero(p.vars_);
  Poly::TermMap out;
  for (const auto& [e, k] : p.terms_) out.emplace(e, c * k);
  return Poly::from_terms(p.vars_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  auto [pa, pb] = aligned(a, b);
  return pa.terms_ == pb.terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    bool coeff_shown = (a != 1) || !any_var;
    if (coeff_shown) os << gsds::to_string(a);
    bool need_star = coeff_shown;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::uint64_t Poly::stable_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : to_string()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

Poly partial_derivative(const Poly& p, const std::string& var) {
  int idx = p.var_index(var);
  if (idx < 0) {
    throw std::invalid_argument("partial_derivative: unknown variable " + var);
  }
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    if (e[idx] == 0) continue;
    Exponents ne = e;
    ne[idx] -= 1;
    out.emplace(std::move(ne), c * Rational(e[idx]));
  }
  return Poly::from_terms(p.variables(), std::move(out));
}

Poly top_form(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("top_form of zero polynomial");
  long d = p.total_degree();
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    if (std::accumulate(e.begin(), e.end(), 0L) == d) out.emplace(e, c);
  }
  return Poly::from_terms(p.variables(), std::move(out));
}

Rational eval_exact(const Poly& p, const std::map<std::string, Rational>& at) {
  std::vector<Rational> point;
  point.reserve(p.variables().size());
  for (const auto& v : p.variables()) {
    auto it = at.find(v);
    if (it == at.end()) {
      throw std::invalid_argument("eval_exact: missing binding for " + v);
    }
    point.push_back(it->second);
  }
  Rational acc(0);
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) t *= pow(point[i], static_cast<unsigned>(e[i]));
    }
    acc += t;
  }
  return acc;
}

namespace {

// Recursive Horner over the variable at `idx`, one variable at a time.
std::complex<double> horner_eval(
    const std::vector<std::pair<Exponents, std::complex<double>>>& terms,
    std::size_t lo, std::size_t hi, std::size_t idx,
    const std::vector<std::complex<double>>& point) {
  if (idx == point.size()) {
    // all exponents consumed; [lo,hi) is a single constant
    return terms[lo].second;
  }
  // terms are sorted descending in exponent of idx within [lo,hi)
  std::complex<double> acc(0.0, 0.0);
  int prev_e = -1;
  std::size_t i = lo;
  while (i < hi) {
    int e = terms[i].first[idx];
    std::size_t j = i;
    while (j < hi && terms[j].first[idx] == e) ++j;
    if (prev_e >= 0) {
      int gap = prev_e - e;
      for (int k = 0; k < gap; ++k) acc *= point[idx];
    }
    acc += horner_eval(terms, i, j, idx + 1, point);
    prev_e = e;
    i = j;
  }
  for (int k = 0; k < prev_e; ++k) acc *= point[idx];
  return acc;
}

}  // namespace

std::complex<double> eval_complex(
    const Poly& p, const std::map<std::string, std::complex<double>>& at) {
  if (p.is_zero()) return {0.0, 0.0};
  std::vector<std::complex<double>> point;
  for (const auto& v : p.variables()) {
    auto it = at.find(v);
    if (it == at.end()) {
      throw std::invalid_argument("eval_complex: missing binding for " + v);
    }
    point.push_back(it->second);
  }
  std::vector<std::pair<Exponents, std::complex<double>>> terms;
  terms.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, to_complex(c));
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  return horner_eval(terms, 0, terms.size(), 0, point);
}

std::vector<Poly> coefficients_in(const Poly& p, const std::string& var) {
  if (p.is_zero()) return {};
  int idx = p.var_index(var);
  if (idx < 0) return {p};
  int d = p.degree_in(var);
  std::vector<Poly::TermMap> maps(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponents ne = e;
    int k = ne[idx];
    ne[idx] = 0;
    maps[k].emplace(std::move(ne), c);
  }
  std::vector<Poly> out;
  out.reserve(maps.size());
  for (auto& m : maps) {
    out.push_back(Poly::from_terms(p.variables(), std::move(m)));
  }
  return out;
}

Poly from_coefficients(const std::vector<Poly>& coeffs,
                       const std::string& var) {
  Poly acc;
  Poly v = Poly::variable(var);
  Poly vpow = Poly::constant(Rational(1));
  for (const auto& c : coeffs) {
    acc += c * vpow;
    vpow *= v;
  }
  return acc;
}

Poly rename_variables(const Poly& p,
                      const std::map<std::string, std::string>& renames) {
  std::vector<std::string> vars;
  for (const auto& v : p.variables()) {
    auto it = renames.find(v);
    vars.push_back(it == renames.end() ? v : it->second);
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j]) {
        throw std::invalid_argument("rename_variables: name collision " +
                                    vars[i]);
      }
    }
  }
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms()) out.emplace(e, c);
  return Poly::from_terms(std::move(vars), std::move(out));
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& bindings) {
  // Peel one bound variable per level; Horner in that variable. Variables
  // present in the list but with zero exponent everywhere need no work.
  std::string var;
  for (const auto& v : p.variables()) {
    if (bindings.count(v) && p.degree_in(v) >= 1) {
      var = v;
      break;
    }
  }
  if (var.empty()) return p;
  auto coeffs = coefficients_in(p, var);
  if (coeffs.empty()) return p;
  const Poly& repl = bindings.at(var);
  Poly acc = substitute(coeffs.back(), bindings);
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = acc * repl + substitute(coeffs[i], bindings);
  }
  return acc;
}

// --------------------------- parser ---------------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at offset " +
                                std::to_string(pos) + ": " + what);
  }

  Poly parse_expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') {
      neg = (s[pos] == '-');
      ++pos;
    }
    Poly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos;
        Poly t = parse_term();
        acc = (c == '+') ? acc + t : acc - t;
      } else {
        break;
      }
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos;
        Poly f = parse_factor();
        if (c == '*') {
          acc *= f;
        } else {
          if (!f.is_constant() || f.is_zero()) {
            fail("'/' requires a nonzero constant divisor");
          }
          acc = (Rational(1) / f.constant_value()) * acc;
        }
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
                 c == '_' || std::isdigit(static_cast<unsigned char>(c))) {
        // juxtaposition: 3x, 2(x+1), (x+1)(x-1)
        acc *= parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly parse_factor() {
    Poly base = parse_base();
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      long e = parse_int();
      if (e < 0) fail("negative exponent");
      if (e > 512) fail("exponent too large");
      Poly acc = Poly::constant(Rational(1));
      Poly b = base;
      while (e > 0) {
        if (e & 1) acc *= b;
        e >>= 1;
        if (e > 0) b *= b;
      }
      return acc;
    }
    return base;
  }

  Poly parse_base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Poly inner = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Poly::constant(parse_number());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_')) {
        name.push_back(s[pos++]);
      }
      return Poly::variable(name);
    }
    fail("unexpected character");
  }

  long parse_int() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = (s[pos] == '-');
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected integer");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos++] - '0');
      if (v > 1000000) fail("exponent too large");
    }
    return neg ? -v : v;
  }

  Rational parse_number() {
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits.push_back(s[pos++]);
    }
    return rational_from_string(digits);
  }
};

}  // namespace

Poly parse_poly(const std::string& text) {
  Parser p(text);
  Poly out = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

// ----------------------- homogenization ------------------------------------

HomogPoly homogenize(const Poly& p, const std::string& t_var) {
  if (p.is_zero()) throw std::invalid_argument("homogenize zero polynomial");
  if (p.var_index(t_var) >= 0) {
    throw std::invalid_argument("homogenizing variable already present");
  }
  int d = p.total_degree();
  std::vector<std::string> vars = p.variables();
  vars.push_back(t_var);
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponents ne = e;
    long deg = std::accumulate(e.begin(), e.end(), 0L);
    ne.push_back(d - static_cast<int>(deg));
    out.emplace(std::move(ne), c);
  }
  return HomogPoly{Poly::from_terms(std::move(vars), std::move(out)), d};
}

bool HomogPoly::check() const {
  for (const auto& [e, c] : base.terms()) {
    if (std::accumulate(e.begin(), e.end(), 0L) != claimed_degree) return false;
  }
  return true;
}

Poly dehomogenize(const HomogPoly& hp, const std::string& var_set_to_one) {
  std::map<std::string, Poly> b;
  b.emplace(var_set_to_one, Poly::constant(Rational(1)));
  Poly q = substitute(hp.base, b);
  // drop the now-constant variable from the list
  std::vector<std::string> vars;
  for (const auto& v : q.variables()) {
    if (v != var_set_to_one) vars.push_back(v);
  }
  int idx = q.var_index(var_set_to_one);
  Poly::TermMap out;
  for (const auto& [e, c] : q.terms()) {
    Exponents ne;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (static_cast<int>(i) != idx) ne.push_back(e[i]);
    }
    auto [it, fresh] = out.emplace(std::move(ne), c);
    if (!fresh) it->second += c;
  }
  return Poly::from_terms(std::move(vars), std::move(out));
}

}  // namespace gsds
