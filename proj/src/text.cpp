// Infix grammar shared by the CLI and every JSON payload.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | symbol | ('exp' | 'ln') '(' expr ')' | '(' expr ')'
//   symbol  := x | t | z | u | u_x | u_t | u_xx | u_xt | u_tt
//            | k | k1..k5 | c1..c4 | eps
//            | (xi | tau | eta | f | g | h | p) ['_' {x|t|u|z}] ['(' vars ')']

#include <cctype>
#include <string>
#include <vector>

#include "liesym/error.hpp"
#include "liesym/expr.hpp"

namespace liesym {

namespace {

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Xi: return "xi";
    case Fn::Tau: return "tau";
    case Fn::Eta: return "eta";
    case Fn::F: return "f";
    case Fn::G: return "g";
    case Fn::H: return "h";
    case Fn::P: return "p";
  }
  return "?";
}

std::string signature_list(std::uint8_t sig) {
  std::string s;
  auto add = [&](std::uint8_t bit, const char* n) {
    if (!(sig & bit)) return;
    if (!s.empty()) s += ",";
    s += n;
  };
  add(arg::x, "x");
  add(arg::t, "t");
  add(arg::u, "u");
  add(arg::z, "z");
  return s;
}

bool term_negative(const Expr& t) {
  if (t.is_rational()) return t.value().is_negative();
  return t.kind() == Kind::Product && t.args()[0].is_rational() && t.args()[0].value().is_negative();
}

std::string print_term(const Expr& t);

std::string print_atom(const Expr& b) {
  switch (b.kind()) {
    case Kind::Sum:
    case Kind::Product:
    case Kind::Power: return "(" + print(b) + ")";
    case Kind::Rational:
      if (b.value().is_negative() || !b.value().is_integer()) return "(" + b.value().str() + ")";
      return b.value().str();
    default: return print(b);
  }
}

std::string print_exponent(const Expr& e) {
  if (e.is_rational() && e.value().is_integer() && !e.value().is_negative()) return e.value().str();
  return "(" + print(e) + ")";
}

std::string print_factor(const Expr& f) {
  if (f.kind() == Kind::Power) return print_atom(f.base()) + "^" + print_exponent(f.exponent());
  return print_atom(f);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string print_term(const Expr& t) {
  if (t.is_rational()) return t.value().str();
  Rational r(1);
  std::vector<Expr> factors;
  if (t.kind() == Kind::Product) {
    for (const auto& f : t.args()) {
      if (f.is_rational()) {
        r = f.value();
      } else {
        factors.push_back(f);
      }
    }
  } else {
    factors.push_back(t);
  }
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : factors) {
    if (f.kind() == Kind::Power && f.exponent().is_rational() && f.exponent().value().is_negative()) {
      Rational e = -f.exponent().value();
      if (e.is_one()) {
        den.push_back(print_atom(f.base()));
      } else {
        den.push_back(print_atom(f.base()) + "^" + print_exponent(Expr(e)));
      }
    } else {
      num.push_back(print_factor(f));
    }
  }
  const std::int64_t n = r.num() < 0 ? -r.num() : r.num();
  if (n != 1 || num.empty()) num.insert(num.begin(), std::to_string(n));
  if (r.den() != 1) den.insert(den.begin(), std::to_string(r.den()));
  std::string s = r.is_negative() ? "-" : "";
  s += join(num, "*");
  if (!den.empty()) s += "/" + (den.size() == 1 ? den[0] : "(" + join(den, "*") + ")");
  return s;
}

// ---- parser ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::MalformedExpression, why + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::raw_product({Expr(-1), term()}));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms[0] : Expr::raw_sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> f{unary()};
    for (;;) {
      if (accept('*')) {
        f.push_back(unary());
      } else if (accept('/')) {
        f.push_back(Expr::raw_power(unary(), Expr(-1)));
      } else {
        break;
      }
    }
    return f.size() == 1 ? f[0] : Expr::raw_product(std::move(f));
  }

  Expr unary() {
    if (accept('-')) return Expr::raw_product({Expr(-1), unary()});
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (accept('^')) return Expr::raw_power(b, unary());
    return b;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return Expr(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return identifier(s_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr identifier(const std::string& id) {
    if (id == "exp" || id == "ln" || id == "log") {
      expect('(');
      Expr a = expr();
      expect(')');
      return id == "exp" ? Expr::raw_exp(a) : Expr::raw_ln(a);
    }
    if (id == "x") return sym::x();
    if (id == "t") return sym::t();
    if (id == "z") return sym::z();
    if (id == "u") return sym::u();
    if (id == "u_x") return sym::u_x();
    if (id == "u_t") return sym::u_t();
    if (id == "u_xx") return sym::u_xx();
    if (id == "u_xt" || id == "u_tx") return sym::u_xt();
    if (id == "u_tt") return sym::u_tt();
    if (id == "k" || id == "eps") return Expr::constant(id);
    if (id.size() == 2 && id[0] == 'k' && id[1] >= '1' && id[1] <= '5') return Expr::constant(id);
    if (id.size() == 2 && id[0] == 'c' && id[1] >= '1' && id[1] <= '4') return Expr::constant(id);

    const auto us = id.find('_');
    const std::string head = id.substr(0, us);
    static const std::pair<const char*, Fn> names[] = {{"xi", Fn::Xi}, {"tau", Fn::Tau}, {"eta", Fn::Eta}, {"f", Fn::F},
                                                       {"g", Fn::G},   {"h", Fn::H},     {"p", Fn::P}};
    for (const auto& [n, fn] : names) {
      if (head != n) continue;
      DerivIndex d;
      if (us != std::string::npos) {
        const std::string suffix = id.substr(us + 1);
        if (suffix.empty()) fail("empty derivative suffix in '" + id + "'");
        for (char ch : suffix) {
          switch (ch) {
            case 'x': ++d.x; break;
            case 't': ++d.t; break;
            case 'u': ++d.u; break;
            case 'z': ++d.z; break;
            default: fail("bad derivative variable in '" + id + "'");
          }
        }
      }
      std::optional<std::uint8_t> sig;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        std::uint8_t bits = 0;
        skip_ws();
        if (!accept(')')) {
          do {
            skip_ws();
            if (pos_ >= s_.size()) fail("unterminated argument list");
            switch (s_[pos_++]) {
              case 'x': bits |= arg::x; break;
              case 't': bits |= arg::t; break;
              case 'u': bits |= arg::u; break;
              case 'z': bits |= arg::z; break;
              default: fail("bad argument in signature of '" + id + "'");
            }
          } while (accept(','));
          expect(')');
        }
        sig = bits;
      }
      return Expr::func(fn, d, sig);
    }
    fail("unknown identifier '" + id + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string symbol_name(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const: return e.name();
    case Kind::Var: return e.var() == IndepVar::X ? "x" : (e.var() == IndepVar::T ? "t" : "z");
    case Kind::Jet:
      switch (e.jet()) {
        case Jet::U: return "u";
        case Jet::Ux: return "u_x";
        case Jet::Ut: return "u_t";
        case Jet::Uxx: return "u_xx";
        case Jet::Uxt: return "u_xt";
        case Jet::Utt: return "u_tt";
      }
      break;
    case Kind::Func: {
      const auto& f = e.func();
      std::string s = fn_name(f.name);
      if (f.d.order() > 0) {
        s += "_";
        s.append(f.d.x, 'x');
        s.append(f.d.t, 't');
        s.append(f.d.u, 'u');
        s.append(f.d.z, 'z');
      }
      if (f.signature != default_signature(f.name)) s += "(" + signature_list(f.signature) + ")";
      return s;
    }
    default: break;
  }
  throw Error(ErrorCode::MalformedExpression, "symbol_name of a non-symbol");
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Kind::Rational: return e.value().str();
    case Kind::Const:
    case Kind::Var:
    case Kind::Jet:
    case Kind::Func: return symbol_name(e);
    case Kind::Exp: return "exp(" + print(e.arg()) + ")";
    case Kind::Ln: return "ln(" + print(e.arg()) + ")";
    case Kind::Sum: {
      auto a = e.args();
      std::string s = print_term(a[0]);
      for (std::size_t i = 1; i < a.size(); ++i) {
        if (term_negative(a[i])) {
          s += " - " + print_term(-a[i]);
        } else {
          s += " + " + print_term(a[i]);
        }
      }
      return s;
    }
    case Kind::Product:
    case Kind::Power: return print_term(e);
  }
  return "?";
}

Expr parse_raw(const std::string& text) { return Parser(text).parse_all(); }

Expr parse(const std::string& text) { return normalize(parse_raw(text)); }

}  // namespace liesym
