#include <cmath>
#include <cstdlib>
#include <map>
#include <random>

#include "liesym/error.hpp"
#include "liesym/expr.hpp"

namespace liesym {

namespace {

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is_zero()) return {};
  if (e.kind() == Kind::Sum) return {e.args().begin(), e.args().end()};
  return {e};
}

std::vector<Expr> factors_of(const Expr& t) {
  if (t.kind() == Kind::Product) return {t.args().begin(), t.args().end()};
  return {t};
}

bool is_derivative_jet(const Expr& e) { return e.kind() == Kind::Jet && jet_order(e.jet()) >= 1; }

/// Splits a term into (jet monomial, coefficient) where the monomial only
/// holds jets of order >= 1 raised to positive integer powers.
std::pair<Expr, Expr> split_jet(const Expr& term) {
  std::vector<Expr> jet;
  std::vector<Expr> rest;
  for (const auto& f : factors_of(term)) {
    const bool plain = is_derivative_jet(f);
    const bool powered = f.kind() == Kind::Power && is_derivative_jet(f.base()) && f.exponent().is_rational() &&
                         f.exponent().value().is_integer() && !f.exponent().value().is_negative();
    if (plain || powered) {
      jet.push_back(f);
    } else if (contains_jet(f, 1)) {
      throw Error(ErrorCode::NonPolynomialInJet, "jet variable inside " + print(f));
    } else {
      rest.push_back(f);
    }
  }
  return {product(std::move(jet)), product(std::move(rest))};
}

struct Fraction {
  Expr num;
  std::map<Expr, std::int64_t, ExprLess> den;
};

Fraction term_fraction(const Expr& t) {
  Fraction fr;
  std::vector<Expr> num;
  for (const auto& f : factors_of(t)) {
    if (f.kind() == Kind::Power && f.base().kind() == Kind::Sum && f.exponent().is_rational() &&
        f.exponent().value().is_integer() && f.exponent().value().is_negative()) {
      fr.den[f.base()] += -f.exponent().value().num();
    } else {
      num.push_back(f);
    }
  }
  fr.num = product(std::move(num));
  return fr;
}

double eval(const Expr& e, const Bindings& b) {
  switch (e.kind()) {
    case Kind::Rational: return e.value().to_double();
    case Kind::Const:
    case Kind::Var:
    case Kind::Jet:
    case Kind::Func: {
      const std::string n = symbol_name(e);
      auto it = b.find(n);
      if (it == b.end()) throw Error(ErrorCode::UnboundSymbol, "no binding for '" + n + "'");
      return it->second;
    }
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& a : e.args()) s += eval(a, b);
      return s;
    }
    case Kind::Product: {
      double p = 1.0;
      for (const auto& a : e.args()) p *= eval(a, b);
      return p;
    }
    case Kind::Power: {
      const double base = eval(e.base(), b);
      const Expr& ex = e.exponent();
      if (ex.is_rational() && ex.value().is_integer()) {
        if (base == 0.0 && ex.value().is_negative()) throw Error(ErrorCode::DomainError, "division by zero");
        return std::pow(base, static_cast<double>(ex.value().num()));
      }
      const double p = eval(ex, b);
      if (base < 0.0 || (base == 0.0 && p <= 0.0))
        throw Error(ErrorCode::DomainError, "non-integer power of non-positive base in " + print(e));
      return std::pow(base, p);
    }
    case Kind::Exp: return std::exp(eval(e.arg(), b));
    case Kind::Ln: {
      const double a = eval(e.arg(), b);
      if (!(a > 0.0)) throw Error(ErrorCode::DomainError, "logarithm of non-positive value in " + print(e));
      return std::log(a);
    }
  }
  return 0.0;
}

/// Seeded random-probe test. Returns true if every probe vanishes.
bool probes_vanish(const Expr& e) {
  constexpr int kProbes = 20;
  constexpr int kMaxAttempts = 400;
  constexpr double kRelTol = 1e-9;
  const auto symbols = free_symbols(e);
  const auto terms = terms_of(e);
  std::mt19937_64 rng(probe_seed());
  std::uniform_real_distribution<double> mag(1.0 / 3.0, 3.0);
  std::uniform_real_distribution<double> indep(0.5, 3.0);
  std::bernoulli_distribution negative(0.5);
  int valid = 0;
  int failures = 0;
  for (int attempt = 0; attempt < kMaxAttempts && valid < kProbes; ++attempt) {
    const bool positive_only = failures >= 40;
    Bindings b;
    for (const auto& s : symbols) {
      double v = 0.0;
      if (s.kind() == Kind::Var) {
        v = indep(rng);
      } else {
        v = mag(rng);
        if (!positive_only && negative(rng)) v = -v;
      }
      b[symbol_name(s)] = v;
    }
    try {
      double value = 0.0;
      double scale = 0.0;
      for (const auto& t : terms) {
        const double tv = eval(t, b);
        value += tv;
        scale += std::fabs(tv);
      }
      if (!std::isfinite(value) || !std::isfinite(scale)) {
        ++failures;
        continue;
      }
      ++valid;
      if (std::fabs(value) > kRelTol * scale) return false;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DomainError) throw;
      ++failures;
    }
  }
  return valid == kProbes;
}

}  // namespace

std::uint64_t probe_seed() {
  if (const char* s = std::getenv("LIESYM_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (end != s) return v;
  }
  return 20240917ULL;
}

Collected collect(const Expr& e, const std::vector<Expr>& monomials) {
  Collected out;
  std::vector<Expr> keys;
  std::vector<std::vector<Expr>> parts(monomials.size());
  for (const auto& m : monomials) keys.push_back(normalize(m));
  std::vector<Expr> remainder;
  for (const auto& term : terms_of(normalize(e))) {
    auto [mono, coeff] = split_jet(term);
    bool placed = false;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == mono) {
        parts[i].push_back(coeff);
        placed = true;
        break;
      }
    }
    if (!placed) remainder.push_back(term);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out.coefficients.emplace_back(keys[i], sum(std::move(parts[i])));
  out.remainder = sum(std::move(remainder));
  return out;
}

std::vector<std::pair<Expr, Expr>> jet_monomials(const Expr& e) {
  std::map<Expr, std::vector<Expr>, ExprLess> groups;
  for (const auto& term : terms_of(normalize(e))) {
    auto [mono, coeff] = split_jet(term);
    groups[mono].push_back(coeff);
  }
  std::vector<std::pair<Expr, Expr>> out;
  for (auto& [m, c] : groups) out.emplace_back(m, sum(std::move(c)));
  return out;
}

Expr linear_coefficient(const Expr& e, const Expr& symbol) {
  std::vector<Expr> parts;
  for (const auto& term : terms_of(normalize(e))) {
    auto f = factors_of(term);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == symbol) {
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        parts.push_back(product(std::move(f)));
        break;
      }
    }
  }
  return sum(std::move(parts));
}

Expr together_numerator(const Expr& e) {
  std::vector<Fraction> fr;
  std::map<Expr, std::int64_t, ExprLess> lcm;
  for (const auto& t : terms_of(normalize(e))) {
    fr.push_back(term_fraction(t));
    for (const auto& [b, n] : fr.back().den) lcm[b] = std::max(lcm[b], n);
  }
  if (lcm.empty()) return normalize(e);
  std::vector<Expr> num;
  for (const auto& f : fr) {
    std::vector<Expr> parts{f.num};
    for (const auto& [b, n] : lcm) {
      auto it = f.den.find(b);
      const std::int64_t have = it == f.den.end() ? 0 : it->second;
      if (n - have > 0) parts.push_back(pow(b, Expr(n - have)));
    }
    num.push_back(product(std::move(parts)));
  }
  return sum(std::move(num));
}

bool is_zero(const Expr& e) {
  const Expr n = normalize(e);
  if (n.is_zero()) return true;
  if (together_numerator(n).is_zero()) return true;
  if (probes_vanish(n))
    throw Error(ErrorCode::ProbableZero, "canonical form is nonzero but all probes vanish: " + print(n));
  return false;
}

double eval_numeric(const Expr& e, const Bindings& bindings) { return eval(normalize(e), bindings); }

}  // namespace liesym
