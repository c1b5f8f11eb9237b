#include "qmz/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace qmz {

namespace {

// intermediate value: scalar rational, or form / q^pole (pole > 0 only for
// expressions involving j, whose expansion starts at q^{-1})
struct PVal {
  bool scalar = false;
  Rational num;
  QuasiModularForm form;
  int pole = 0;
};

QuasiModularForm shift_components_up(const QuasiModularForm& f, int n) {
  if (n == 0) return f;
  std::vector<PowerSeries> comps;
  for (const auto& c : f.components) comps.push_back(c.shift_up(n));
  return QuasiModularForm(f.weight, comps);
}

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int order;

  Parser(const std::string& text, int ord) : s(text), order(ord) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1])))
      fail("expected an integer");
    return std::strtol(s.substr(start, pos - start).c_str(), nullptr, 10);
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }

  PVal scalar(const Rational& r) const {
    PVal v;
    v.scalar = true;
    v.num = r;
    return v;
  }

  QuasiModularForm as_form(const PVal& v) const {
    if (!v.scalar) return v.form;
    return qm_modular(PowerSeries::constant(v.num, order), 0);
  }

  PVal add(PVal a, PVal b, int sign) {
    if (a.scalar && b.scalar)
      return scalar(sign > 0 ? Rational(a.num + b.num) : Rational(a.num - b.num));
    QuasiModularForm fa = as_form(a), fb = as_form(b);
    if (fa.weight != fb.weight && !fa.is_zero() && !fb.is_zero())
      throw DomainError("cannot add forms of weights " + std::to_string(fa.weight) + " and " +
                        std::to_string(fb.weight));
    int pole = std::max(a.pole, b.pole);
    fa = shift_components_up(fa, pole - a.pole);
    fb = shift_components_up(fb, pole - b.pole);
    PVal v;
    v.form = sign > 0 ? qm_add(fa, fb) : qm_sub(fa, fb);
    v.pole = pole;
    return v;
  }

  PVal mul(PVal a, PVal b) {
    if (a.scalar && b.scalar) return scalar(a.num * b.num);
    if (a.scalar || b.scalar) {
      const PVal& f = a.scalar ? b : a;
      const Rational& c = a.scalar ? a.num : b.num;
      PVal v = f;
      v.form = qm_scale(f.form, c);
      return v;
    }
    PVal v;
    v.form = qm_mul(a.form, b.form);
    v.pole = a.pole + b.pole;
    return v;
  }

  PVal parse_expr() {
    skip_ws();
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    PVal v = parse_term();
    if (sign < 0) v = mul(scalar(Rational(-1)), v);
    while (true) {
      if (accept('+')) v = add(v, parse_term(), 1);
      else if (accept('-')) v = add(v, parse_term(), -1);
      else break;
    }
    return v;
  }

  PVal parse_term() {
    PVal v = parse_factor();
    while (accept('*')) v = mul(v, parse_factor());
    return v;
  }

  PVal parse_factor() {
    PVal v = parse_primary();
    while (accept('^')) {
      long e = integer();
      if (e < 0) fail("negative exponents are not supported");
      if (v.scalar) {
        Rational r = 1;
        for (long i = 0; i < e; ++i) r *= v.num;
        v = scalar(r);
      } else {
        PVal w;
        w.form = qm_pow(v.form, static_cast<int>(e));
        w.pole = v.pole * static_cast<int>(e);
        v = w;
      }
    }
    return v;
  }

  PVal parse_primary() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of expression");
    if (accept('(')) {
      PVal v = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      if (accept('/')) return scalar(frac(num, integer()));
      return scalar(Rational(num));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::string name = ident();
    if (name == "D" || name == "theta") {
      if (!accept('(')) fail("expected '(' after " + name);
      PVal v = parse_expr();
      if (!accept(')')) fail("expected ')'");
      if (v.scalar) return scalar(Rational(0));
      PVal w;
      if (name == "theta") {
        if (v.pole != 0) throw DomainError("theta is not defined on j-expressions");
        w.form = serre_theta(v.form);
        return w;
      }
      // D(f / q^m) = (Df - m f) / q^m; the correction keeps D's weight
      w.form = d_form(v.form);
      if (v.pole) {
        QuasiModularForm corr = qm_scale(v.form, Rational(-v.pole));
        corr.weight = w.form.weight;
        w.form = qm_add(w.form, corr);
      }
      w.pole = v.pole;
      return w;
    }
    PVal v;
    if (name == "Delta") {
      v.form = qm_modular(delta(order), 12);
      return v;
    }
    if (name == "j") {
      v.form = qm_modular(j_times_q(order), 0);
      v.pole = 1;
      return v;
    }
    if (name.size() > 1 && name[0] == 'E') {
      long k = std::strtol(name.c_str() + 1, nullptr, 10);
      if (std::to_string(k) != name.substr(1) || k < 2 || k % 2)
        fail("unknown generator " + name);
      if (k == 2) {
        v.form = qm_e2(order);
        return v;
      }
      v.form = qm_modular(eisenstein_general(k, order), k);
      return v;
    }
    fail("unknown generator " + name);
  }
};

QuasiModularForm parse_once(const std::string& text, int order) {
  Parser p(text, order);
  PVal v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  QuasiModularForm f = p.as_form(v);
  if (v.pole > 0) {
    std::vector<PowerSeries> comps;
    for (const auto& c : f.components) {
      int fn = c.first_nonzero();
      if (fn >= 0 && fn < v.pole) throw DomainError("expression has a pole at q = 0");
      comps.push_back(c.shift_down(v.pole));
    }
    f = QuasiModularForm(f.weight, comps);
  }
  return f;
}

}  // namespace

QuasiModularForm parse_form(const std::string& text, int order) {
  std::string t = text;
  size_t colon = t.find(':');
  if (colon != std::string::npos) {
    std::string head = t.substr(0, colon);
    long k = std::strtol(t.c_str() + colon + 1, nullptr, 10);
    if (head == "gap") return gap_form(k);
    if (head == "extremal") return extremal_form(k);
    if (head == "Ek'") {
      int ord = order > 0 ? order : default_order(k + 2);
      return d_form(qm_modular(eisenstein_general(k, ord), k));
    }
    throw ParseError("unknown preset: " + head);
  }
  if (order > 0) return parse_once(t, order);
  QuasiModularForm probe = parse_once(t, 24);
  return parse_once(t, default_order(probe.weight));
}

}  // namespace qmz
