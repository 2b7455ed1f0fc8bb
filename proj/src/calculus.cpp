#include <set>

#include "liesym/error.hpp"
#include "liesym/expr.hpp"

namespace liesym {

namespace {

/// Signature bit an independent variable (or u) occupies, 0 for higher jets.
std::uint8_t signature_bit(const Expr& v) {
  if (v.kind() == Kind::Var) {
    switch (v.var()) {
      case IndepVar::X: return arg::x;
      case IndepVar::T: return arg::t;
      case IndepVar::Z: return arg::z;
    }
  }
  if (v.kind() == Kind::Jet && v.jet() == Jet::U) return arg::u;
  return 0;
}

Expr diff(const Expr& e, const Expr& v, std::uint8_t bit) {
  if (!depends_on(e, v)) return Expr();
  switch (e.kind()) {
    case Kind::Var:
    case Kind::Jet: return e == v ? Expr(1) : Expr();
    case Kind::Func: {
      if (e == v) return Expr(1);
      const auto& f = e.func();
      if (!(f.signature & bit)) return Expr();
      DerivIndex d = f.d;
      switch (bit) {
        case arg::x: ++d.x; break;
        case arg::t: ++d.t; break;
        case arg::u: ++d.u; break;
        default: ++d.z; break;
      }
      if (d.order() > kMaxUnknownDerivOrder)
        throw Error(ErrorCode::DerivativeOrderExceeded, "derivative of " + symbol_name(e) + " beyond order 3");
      return Expr::func(f.name, d, f.signature);
    }
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) terms.push_back(diff(a, v, bit));
      return sum(std::move(terms));
    }
    case Kind::Product: {
      auto a = e.args();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Expr di = diff(a[i], v, bit);
        if (di.is_zero()) continue;
        std::vector<Expr> f;
        f.reserve(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) f.push_back(j == i ? di : a[j]);
        terms.push_back(product(std::move(f)));
      }
      return sum(std::move(terms));
    }
    case Kind::Power: {
      const Expr& b = e.base();
      const Expr& ex = e.exponent();
      if (!depends_on(ex, v)) return product({ex, pow(b, ex - Expr(1)), diff(b, v, bit)});
      return e * (diff(ex, v, bit) * ln(b) + ex * diff(b, v, bit) / b);
    }
    case Kind::Exp: return e * diff(e.arg(), v, bit);
    case Kind::Ln: return diff(e.arg(), v, bit) / e.arg();
    default: return Expr();
  }
}

void check_first_order(const Expr& e) {
  if (contains_jet(e, 2))
    throw Error(ErrorCode::DerivativeOrderExceeded, "total derivative of an expression containing second-order jets");
}

void gather(const Expr& e, std::set<Expr, ExprLess>& out) {
  if (e.is_symbol()) {
    out.insert(e);
    return;
  }
  for (const auto& a : e.args()) gather(a, out);
}

Expr subst(const Expr& e, const std::vector<std::pair<Expr, Expr>>& rules) {
  if (e.is_symbol()) {
    for (const auto& [target, repl] : rules)
      if (e == target) return repl;
    return e;
  }
  if (e.is_rational()) return e;
  std::vector<Expr> a;
  a.reserve(e.args().size());
  bool changed = false;
  for (const auto& c : e.args()) {
    a.push_back(subst(c, rules));
    changed = changed || !(a.back() == c);
  }
  if (!changed) return e;
  return detail::rebuild(e, std::move(a));
}

}  // namespace

bool depends_on(const Expr& e, const Expr& s) {
  switch (e.kind()) {
    case Kind::Rational: return false;
    case Kind::Const:
    case Kind::Var:
    case Kind::Jet: return e == s;
    case Kind::Func: {
      if (e == s) return true;
      const std::uint8_t bit = signature_bit(s);
      return bit != 0 && (e.func().signature & bit);
    }
    default:
      for (const auto& a : e.args())
        if (depends_on(a, s)) return true;
      return false;
  }
}

bool contains_jet(const Expr& e, int min_order) {
  if (e.kind() == Kind::Jet) return jet_order(e.jet()) >= min_order;
  for (const auto& a : e.args())
    if (contains_jet(a, min_order)) return true;
  return false;
}

std::vector<Expr> free_symbols(const Expr& e) {
  std::set<Expr, ExprLess> s;
  gather(e, s);
  return {s.begin(), s.end()};
}

Expr partial_diff(const Expr& e, const Expr& v) {
  const bool ok = v.kind() == Kind::Var || v.kind() == Kind::Func || (v.kind() == Kind::Jet && v.jet() != Jet::Utt);
  if (!ok) throw Error(ErrorCode::MalformedExpression, "cannot differentiate with respect to " + print(v));
  return diff(normalize(e), v, signature_bit(v));
}

Expr total_diff_x(const Expr& e) {
  check_first_order(e);
  return sum({partial_diff(e, sym::x()), sym::u_x() * partial_diff(e, sym::u()),
              sym::u_xx() * partial_diff(e, sym::u_x()), sym::u_xt() * partial_diff(e, sym::u_t())});
}

Expr total_diff_t(const Expr& e) {
  check_first_order(e);
  return sum({partial_diff(e, sym::t()), sym::u_t() * partial_diff(e, sym::u()),
              sym::u_tt() * partial_diff(e, sym::u_t()), sym::u_xt() * partial_diff(e, sym::u_x())});
}

Expr substitute(const Expr& e, const Expr& target, const Expr& replacement) {
  return substitute(e, {{target, replacement}});
}

Expr substitute(const Expr& e, const std::vector<std::pair<Expr, Expr>>& rules) {
  std::vector<std::pair<Expr, Expr>> r;
  r.reserve(rules.size());
  for (const auto& [a, b] : rules) {
    if (!a.is_symbol()) throw Error(ErrorCode::MalformedExpression, "substitution target must be a symbol");
    r.emplace_back(a, normalize(b));
  }
  return subst(normalize(e), r);
}

}  // namespace liesym
