#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "liesym/error.hpp"

namespace liesym {

struct Expr::Node {
  Kind kind = Kind::Rational;
  bool canonical = true;
  std::size_t hash = 0;
  Rational value;
  std::string name;
  std::uint8_t tag = 0;
  FuncSymbol func;
  std::vector<Expr> args;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

int rank(Kind k) {
  switch (k) {
    case Kind::Rational: return 0;
    case Kind::Const: return 1;
    case Kind::Var: return 2;
    case Kind::Func: return 3;
    case Kind::Ln: return 4;
    case Kind::Sum: return 5;
    case Kind::Product: return 6;
    case Kind::Power: return 7;
    case Kind::Exp: return 8;
    case Kind::Jet: return 9;
  }
  return 10;
}

}  // namespace

std::uint8_t default_signature(Fn name) {
  switch (name) {
    case Fn::Xi:
    case Fn::Tau:
    case Fn::Eta: return arg::x | arg::t | arg::u;
    case Fn::F:
    case Fn::G: return arg::u;
    case Fn::H:
    case Fn::P: return arg::z;
  }
  return 0;
}

int jet_order(Jet j) {
  switch (j) {
    case Jet::U: return 0;
    case Jet::Ux:
    case Jet::Ut: return 1;
    default: return 2;
  }
}

// ---- construction ----------------------------------------------------------

Expr Expr::make(Kind kind, std::vector<Expr> args, bool canonical) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->canonical = canonical;
  std::size_t h = static_cast<std::size_t>(kind) * 131;
  for (const auto& a : args) h = mix(h, a.hash());
  n->hash = h;
  n->args = std::move(args);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(Rational r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rational;
  n->value = r;
  n->hash = mix(std::hash<std::int64_t>{}(r.num()), std::hash<std::int64_t>{}(r.den()));
  node_ = std::move(n);
}

Expr Expr::constant(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->name = name;
  n->hash = mix(17, std::hash<std::string>{}(name));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::var(IndepVar v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->tag = static_cast<std::uint8_t>(v);
  n->hash = mix(29, n->tag);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::jet(Jet j) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Jet;
  n->tag = static_cast<std::uint8_t>(j);
  n->hash = mix(43, n->tag);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::func(Fn name, DerivIndex d, std::optional<std::uint8_t> signature) {
  const std::uint8_t sig = signature.value_or(default_signature(name));
  if ((d.x && !(sig & arg::x)) || (d.t && !(sig & arg::t)) || (d.u && !(sig & arg::u)) ||
      (d.z && !(sig & arg::z)))
    return Expr();
  if (d.order() > kMaxUnknownDerivOrder)
    throw Error(ErrorCode::DerivativeOrderExceeded, "unknown-function derivative beyond order 3");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->func = FuncSymbol{name, sig, d};
  std::size_t h = mix(61, static_cast<std::size_t>(name));
  h = mix(h, sig);
  h = mix(h, (d.x << 12) | (d.t << 8) | (d.u << 4) | d.z);
  n->hash = h;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::raw_sum(std::vector<Expr> terms) { return make(Kind::Sum, std::move(terms), false); }
Expr Expr::raw_product(std::vector<Expr> factors) { return make(Kind::Product, std::move(factors), false); }
Expr Expr::raw_power(Expr base, Expr exponent) { return make(Kind::Power, {std::move(base), std::move(exponent)}, false); }
Expr Expr::raw_exp(Expr a) { return make(Kind::Exp, {std::move(a)}, false); }
Expr Expr::raw_ln(Expr a) { return make(Kind::Ln, {std::move(a)}, false); }

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_canonical() const { return node_->canonical; }
std::size_t Expr::hash() const { return node_->hash; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
IndepVar Expr::var() const { return static_cast<IndepVar>(node_->tag); }
Jet Expr::jet() const { return static_cast<Jet>(node_->tag); }
const FuncSymbol& Expr::func() const { return node_->func; }
std::span<const Expr> Expr::args() const { return node_->args; }

bool Expr::is_symbol() const {
  switch (kind()) {
    case Kind::Const:
    case Kind::Var:
    case Kind::Jet:
    case Kind::Func: return true;
    default: return false;
  }
}

std::string Expr::str() const { return print(*this); }

// ---- ordering --------------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
  if (&a == &b) return 0;
  const int ra = rank(a.kind());
  const int rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Rational: {
      auto c = a.value() <=> b.value();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Const: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Var: return a.var() == b.var() ? 0 : (a.var() < b.var() ? -1 : 1);
    case Kind::Jet: return a.jet() == b.jet() ? 0 : (a.jet() < b.jet() ? -1 : 1);
    case Kind::Func: {
      auto c = a.func() <=> b.func();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    default: {
      auto aa = a.args();
      auto bb = b.args();
      const std::size_t n = std::min(aa.size(), bb.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(aa[i], bb[i]); c != 0) return c;
      }
      if (aa.size() != bb.size()) return aa.size() < bb.size() ? -1 : 1;
      return 0;
    }
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

// ---- canonicalization ------------------------------------------------------

namespace {

Expr c_sum(std::vector<Expr> terms);
Expr c_product(std::vector<Expr> factors);
Expr c_power(const Expr& b, const Expr& e);
Expr c_exp(const Expr& a);
Expr c_ln(const Expr& a);

class Builder {
 public:
  static Expr canonical(Kind k, std::vector<Expr> args);
};

}  // namespace

class ExprBuilder {
 public:
  static Expr make(Kind k, std::vector<Expr> args) { return Expr::make(k, std::move(args), true); }
};

namespace {

Expr Builder::canonical(Kind k, std::vector<Expr> args) { return ExprBuilder::make(k, std::move(args)); }

const Expr& one() {
  static const Expr v(1);
  return v;
}

struct Term {
  Rational coeff;
  Expr rest;
};

/// Splits a canonical term into rational coefficient and the remaining part
/// (1 for a pure constant).
Term split_term(const Expr& t) {
  if (t.is_rational()) return {t.value(), one()};
  if (t.kind() == Kind::Product && t.args()[0].is_rational()) {
    auto a = t.args();
    if (a.size() == 2) return {a[0].value(), a[1]};
    return {a[0].value(), Builder::canonical(Kind::Product, std::vector<Expr>(a.begin() + 1, a.end()))};
  }
  return {Rational(1), t};
}

Expr make_term(const Rational& c, const Expr& rest) {
  if (c.is_zero()) return Expr();
  if (rest.is_one()) return Expr(c);
  if (c.is_one()) return rest;
  std::vector<Expr> f;
  f.emplace_back(c);
  if (rest.kind() == Kind::Product) {
    for (const auto& a : rest.args()) f.push_back(a);
  } else {
    f.push_back(rest);
  }
  return Builder::canonical(Kind::Product, std::move(f));
}

/// Leading coefficient of a canonical Sum and the Sum divided by it.
std::pair<Rational, Expr> content(const Expr& s) {
  Rational c = split_term(s.args()[0]).coeff;
  if (c.is_one()) return {c, s};
  std::vector<Expr> terms;
  terms.reserve(s.args().size());
  for (const auto& t : s.args()) {
    Term p = split_term(t);
    terms.push_back(make_term(p.coeff / c, p.rest));
  }
  return {c, Builder::canonical(Kind::Sum, std::move(terms))};
}

Expr c_sum(std::vector<Expr> in) {
  std::vector<Term> items;
  items.reserve(in.size());
  for (const auto& t : in) {
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.args()) items.push_back(split_term(c));
    } else if (!t.is_zero()) {
      items.push_back(split_term(t));
    }
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Term& a, const Term& b) { return compare(a.rest, b.rest) < 0; });
  std::vector<Expr> out;
  for (std::size_t i = 0; i < items.size();) {
    Rational c = items[i].coeff;
    std::size_t j = i + 1;
    while (j < items.size() && items[j].rest == items[i].rest) {
      c += items[j].coeff;
      ++j;
    }
    if (!c.is_zero()) out.push_back(make_term(c, items[i].rest));
    i = j;
  }
  if (out.empty()) return Expr();
  if (out.size() == 1) return out[0];
  return Builder::canonical(Kind::Sum, std::move(out));
}

bool is_rational_integer(const Expr& e) { return e.is_rational() && e.value().is_integer(); }

const Expr& base_of(const Expr& f) { return f.kind() == Kind::Power ? f.base() : f; }

int compare_factor(const Expr& a, const Expr& b) {
  if (int c = compare(base_of(a), base_of(b)); c != 0) return c;
  const Expr ea = a.kind() == Kind::Power ? a.exponent() : one();
  const Expr eb = b.kind() == Kind::Power ? b.exponent() : one();
  return compare(ea, eb);
}

Expr c_product(std::vector<Expr> in) {
  Rational r(1);
  std::vector<Expr> exp_args;
  std::vector<std::pair<Expr, Expr>> pw;

  std::function<void(const Expr&, const Expr&)> add_power = [&](const Expr& b, const Expr& e) {
    if (b.kind() == Kind::Sum && is_rational_integer(e)) {
      auto [c, s] = content(b);
      if (!c.is_one()) r *= c.pow(e.value().num());
      pw.emplace_back(s, e);
      return;
    }
    pw.emplace_back(b, e);
  };
  std::function<void(const Expr&)> add = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Rational: r *= f.value(); break;
      case Kind::Product:
        for (const auto& c : f.args()) add(c);
        break;
      case Kind::Exp: exp_args.push_back(f.arg()); break;
      case Kind::Power: add_power(f.base(), f.exponent()); break;
      default: add_power(f, one()); break;
    }
  };
  for (const auto& f : in) add(f);
  if (r.is_zero()) return Expr();

  std::optional<Expr> exp_factor;
  if (!exp_args.empty()) {
    Expr e = c_exp(c_sum(exp_args));
    auto take = [&](const Expr& piece) {
      switch (piece.kind()) {
        case Kind::Rational: r *= piece.value(); break;
        case Kind::Exp: exp_factor = piece; break;
        case Kind::Power: add_power(piece.base(), piece.exponent()); break;
        default: add_power(piece, one()); break;
      }
    };
    if (e.kind() == Kind::Product) {
      for (const auto& p : e.args()) take(p);
    } else {
      take(e);
    }
  }

  std::stable_sort(pw.begin(), pw.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });

  std::vector<Expr> factors;
  std::vector<Expr> sums;
  bool needs_rerun = false;
  for (std::size_t i = 0; i < pw.size();) {
    std::vector<Expr> exps{pw[i].second};
    std::size_t j = i + 1;
    while (j < pw.size() && pw[j].first == pw[i].first) exps.push_back(pw[j++].second);
    Expr p = c_power(pw[i].first, exps.size() == 1 ? exps[0] : c_sum(std::move(exps)));
    switch (p.kind()) {
      case Kind::Rational: r *= p.value(); break;
      case Kind::Sum: sums.push_back(p); break;
      case Kind::Product:
      case Kind::Exp:
        factors.push_back(p);
        needs_rerun = true;
        break;
      default: factors.push_back(p); break;
    }
    i = j;
  }
  if (r.is_zero()) return Expr();
  if (exp_factor) factors.push_back(*exp_factor);
  if (needs_rerun) {
    factors.emplace_back(r);
    for (auto& s : sums) factors.push_back(std::move(s));
    return c_product(std::move(factors));
  }

  std::stable_sort(factors.begin(), factors.end(), [](const Expr& a, const Expr& b) { return compare_factor(a, b) < 0; });
  Expr head;
  if (factors.empty()) {
    head = Expr(r);
  } else if (factors.size() == 1 && r.is_one()) {
    head = factors[0];
  } else {
    std::vector<Expr> all;
    all.reserve(factors.size() + 1);
    if (!r.is_one()) all.emplace_back(r);
    for (auto& f : factors) all.push_back(std::move(f));
    head = Builder::canonical(Kind::Product, std::move(all));
  }
  if (sums.empty()) return head;

  std::vector<Expr> terms{head};
  for (const auto& s : sums) {
    std::vector<Expr> next;
    next.reserve(terms.size() * s.args().size());
    for (const auto& t : terms)
      for (const auto& c : s.args()) next.push_back(c_product({t, c}));
    // Merge after each factor to keep intermediate sizes small.
    Expr merged = c_sum(std::move(next));
    if (merged.kind() == Kind::Sum) {
      terms.assign(merged.args().begin(), merged.args().end());
    } else {
      terms = {merged};
    }
  }
  return c_sum(std::move(terms));
}

/// Distributes a product of two canonical expressions term by term.
Expr multiply_out(const Expr& a, const Expr& b) {
  auto terms = [](const Expr& e) {
    return e.kind() == Kind::Sum ? std::vector<Expr>(e.args().begin(), e.args().end()) : std::vector<Expr>{e};
  };
  std::vector<Expr> out;
  for (const auto& p : terms(a))
    for (const auto& q : terms(b)) out.push_back(c_product({p, q}));
  return c_sum(std::move(out));
}

/// Exact q-th root of a non-negative integer, if any.
std::optional<std::int64_t> int_root(std::int64_t v, std::int64_t q) {
  if (v < 0) return std::nullopt;
  if (v < 2) return v;
  auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(q))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
    __int128 p = 1;
    for (std::int64_t i = 0; i < q && p <= v; ++i) p *= c;
    if (p == v) return c;
  }
  return std::nullopt;
}

Expr c_power(const Expr& b, const Expr& e) {
  if (e.is_zero()) return one();
  if (e.is_one()) return b;
  switch (b.kind()) {
    case Kind::Rational: {
      const Rational& v = b.value();
      if (v.is_zero()) {
        if (e.is_rational() && !e.value().is_negative()) return Expr();
        throw Error(ErrorCode::MalformedExpression, "zero raised to a non-positive power");
      }
      if (v.is_one()) return one();
      if (!e.is_rational()) break;
      const Rational& q = e.value();
      if (q.is_integer()) {
        if (q.num() > 64 || q.num() < -64) break;
        return Expr(v.pow(q.num()));
      }
      if (!v.is_negative() && q.den() <= 16) {
        auto rn = int_root(v.num(), q.den());
        auto rd = int_root(v.den(), q.den());
        if (rn && rd) return Expr(Rational(*rn, *rd).pow(q.num()));
      }
      break;
    }
    case Kind::Power: return c_power(b.base(), c_product({b.exponent(), e}));
    case Kind::Product: {
      std::vector<Expr> f;
      f.reserve(b.args().size());
      for (const auto& a : b.args()) f.push_back(c_power(a, e));
      return c_product(std::move(f));
    }
    case Kind::Exp: return c_exp(c_product({b.arg(), e}));
    case Kind::Sum: {
      if (!is_rational_integer(e)) break;
      const std::int64_t n = e.value().num();
      if (n > 0) {
        if (n > 32) throw Error(ErrorCode::Overflow, "expansion power too large");
        Expr result = b;
        for (std::int64_t i = 1; i < n; ++i) result = multiply_out(result, b);
        return result;
      }
      auto [c, s] = content(b);
      if (!c.is_one()) return c_product({Expr(c.pow(n)), c_power(s, e)});
      break;
    }
    default: break;
  }
  return Builder::canonical(Kind::Power, {b, e});
}

Expr c_exp(const Expr& a) {
  if (a.is_zero()) return one();
  if (a.kind() == Kind::Ln) return a.arg();
  std::vector<Expr> terms;
  if (a.kind() == Kind::Sum) {
    terms.assign(a.args().begin(), a.args().end());
  } else {
    terms.push_back(a);
  }
  std::vector<Expr> powers;
  std::vector<Expr> rest;
  for (const auto& t : terms) {
    if (t.kind() == Kind::Ln) {
      powers.push_back(t.arg());
      continue;
    }
    if (t.kind() == Kind::Product) {
      int n_ln = 0;
      std::size_t at = 0;
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (t.args()[i].kind() == Kind::Ln) {
          ++n_ln;
          at = i;
        }
      }
      if (n_ln == 1) {
        std::vector<Expr> coeff;
        for (std::size_t i = 0; i < t.args().size(); ++i)
          if (i != at) coeff.push_back(t.args()[i]);
        powers.push_back(c_power(t.args()[at].arg(), c_product(std::move(coeff))));
        continue;
      }
    }
    rest.push_back(t);
  }
  if (powers.empty()) return Builder::canonical(Kind::Exp, {a});
  if (!rest.empty()) {
    Expr r = c_sum(std::move(rest));
    powers.push_back(Builder::canonical(Kind::Exp, {r}));
  }
  return c_product(std::move(powers));
}

Expr c_ln(const Expr& a) {
  switch (a.kind()) {
    case Kind::Rational: {
      const Rational& v = a.value();
      if (v.is_zero()) throw Error(ErrorCode::MalformedExpression, "logarithm of zero");
      if (v.is_one()) return Expr();
      if (!v.is_negative() && v < Rational(1)) {
        return c_product({Expr(-1), Builder::canonical(Kind::Ln, {Expr(v.reciprocal())})});
      }
      break;
    }
    case Kind::Exp: return a.arg();
    case Kind::Power: return c_product({a.exponent(), c_ln(a.base())});
    case Kind::Product: {
      if (a.args()[0].is_rational() && a.args()[0].value().is_negative()) break;
      std::vector<Expr> parts;
      for (const auto& f : a.args()) parts.push_back(c_ln(f));
      return c_sum(std::move(parts));
    }
    case Kind::Sum: {
      auto [c, s] = content(a);
      if (c.is_one() || c.is_negative()) break;
      return c_sum({c_ln(Expr(c)), Builder::canonical(Kind::Ln, {s})});
    }
    default: break;
  }
  return Builder::canonical(Kind::Ln, {a});
}

}  // namespace

Expr normalize(const Expr& e) {
  if (e.is_canonical()) return e;
  std::vector<Expr> a;
  a.reserve(e.args().size());
  for (const auto& c : e.args()) a.push_back(normalize(c));
  switch (e.kind()) {
    case Kind::Sum: return c_sum(std::move(a));
    case Kind::Product: return c_product(std::move(a));
    case Kind::Power: return c_power(a[0], a[1]);
    case Kind::Exp: return c_exp(a[0]);
    case Kind::Ln: return c_ln(a[0]);
    default: return e;
  }
}

namespace detail {
Expr rebuild(const Expr& e, std::vector<Expr> a) {
  switch (e.kind()) {
    case Kind::Sum: return c_sum(std::move(a));
    case Kind::Product: return c_product(std::move(a));
    case Kind::Power: return c_power(a[0], a[1]);
    case Kind::Exp: return c_exp(a[0]);
    case Kind::Ln: return c_ln(a[0]);
    default: return e;
  }
}
}  // namespace detail

Expr operator+(const Expr& a, const Expr& b) { return c_sum({normalize(a), normalize(b)}); }
Expr operator-(const Expr& a, const Expr& b) { return c_sum({normalize(a), c_product({Expr(-1), normalize(b)})}); }
Expr operator-(const Expr& a) { return c_product({Expr(-1), normalize(a)}); }
Expr operator*(const Expr& a, const Expr& b) { return c_product({normalize(a), normalize(b)}); }
Expr operator/(const Expr& a, const Expr& b) { return c_product({normalize(a), c_power(normalize(b), Expr(-1))}); }
Expr pow(const Expr& b, const Expr& e) { return c_power(normalize(b), normalize(e)); }
Expr exp(const Expr& a) { return c_exp(normalize(a)); }
Expr ln(const Expr& a) { return c_ln(normalize(a)); }

Expr sum(std::vector<Expr> terms) {
  for (auto& t : terms) t = normalize(t);
  return c_sum(std::move(terms));
}

Expr product(std::vector<Expr> factors) {
  for (auto& f : factors) f = normalize(f);
  return c_product(std::move(factors));
}

namespace sym {
Expr x() { return Expr::var(IndepVar::X); }
Expr t() { return Expr::var(IndepVar::T); }
Expr z() { return Expr::var(IndepVar::Z); }
Expr u() { return Expr::jet(Jet::U); }
Expr u_x() { return Expr::jet(Jet::Ux); }
Expr u_t() { return Expr::jet(Jet::Ut); }
Expr u_xx() { return Expr::jet(Jet::Uxx); }
Expr u_xt() { return Expr::jet(Jet::Uxt); }
Expr u_tt() { return Expr::jet(Jet::Utt); }
Expr k(int i) { return i == 0 ? Expr::constant("k") : Expr::constant("k" + std::to_string(i)); }
Expr c(int i) { return Expr::constant("c" + std::to_string(i)); }
Expr rat(std::int64_t n, std::int64_t d) { return Expr(Rational(n, d)); }
}  // namespace sym

}  // namespace liesym
