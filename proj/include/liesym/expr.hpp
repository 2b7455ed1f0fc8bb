#pragma once

// Immutable symbolic expressions over the fixed vocabulary used by the
// symmetry analysis: exact rationals, named constants, the independent
// variables x, t, z, the jet coordinates of u up to second order, and
// derivative symbols of the unknown functions xi, tau, eta, f, g, h, p.
//
// Every Expr produced by the arithmetic operators, the builders and
// normalize() is in canonical form:
//   * Sum and Product children are flattened, sorted and merged;
//   * a Product carries at most one rational coefficient, placed first;
//   * equal bases in a Product are merged by adding exponents and all Exp
//     factors are merged into one Exp;
//   * products containing Sums (or positive integer powers of Sums) are
//     distributed, so the result is a sum of products;
//   * x^0 = 1, x^1 = x, exp(0) = 1, ln(1) = 0, exp(ln a) = a, ln(exp a) = a.
// Structural equality of canonical forms is the identity test.

#include <cstdint>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

enum class Kind : std::uint8_t { Rational, Const, Var, Jet, Func, Power, Exp, Ln, Product, Sum };

enum class IndepVar : std::uint8_t { X, T, Z };

/// Jet coordinates of u. Each one is an independent coordinate on jet space.
enum class Jet : std::uint8_t { U, Ux, Ut, Uxx, Uxt, Utt };

enum class Fn : std::uint8_t { Xi, Tau, Eta, F, G, H, P };

/// Argument bits for unknown-function signatures.
namespace arg {
inline constexpr std::uint8_t x = 1;
inline constexpr std::uint8_t t = 2;
inline constexpr std::uint8_t u = 4;
inline constexpr std::uint8_t z = 8;
}  // namespace arg

struct DerivIndex {
  std::uint8_t x = 0;
  std::uint8_t t = 0;
  std::uint8_t u = 0;
  std::uint8_t z = 0;

  int order() const { return x + t + u + z; }
  friend auto operator<=>(const DerivIndex&, const DerivIndex&) = default;
};

inline constexpr int kMaxUnknownDerivOrder = 3;

struct FuncSymbol {
  Fn name = Fn::Xi;
  std::uint8_t signature = 0;
  DerivIndex d;

  friend auto operator<=>(const FuncSymbol&, const FuncSymbol&) = default;
};

std::uint8_t default_signature(Fn name);
int jet_order(Jet j);

class Expr {
 public:
  Expr();  // the rational 0
  Expr(Rational r);  // NOLINT(implicit)
  Expr(std::int64_t n) : Expr(Rational(n)) {}  // NOLINT(implicit)
  Expr(int n) : Expr(Rational(n)) {}  // NOLINT(implicit)

  static Expr constant(const std::string& name);
  static Expr var(IndepVar v);
  static Expr jet(Jet j);
  /// Unknown-function symbol. signature defaults to the function's usual
  /// arguments (xi/tau/eta: t,x,u; f,g: u; h,p: z). A derivative with respect
  /// to a variable outside the signature is the zero expression.
  static Expr func(Fn name, DerivIndex d = {}, std::optional<std::uint8_t> signature = {});

  // Non-canonical constructors used by the parser and by normalize() tests.
  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_power(Expr base, Expr exponent);
  static Expr raw_exp(Expr a);
  static Expr raw_ln(Expr a);

  Kind kind() const;
  bool is_canonical() const;
  std::size_t hash() const;

  const Rational& value() const;        // Kind::Rational
  const std::string& name() const;      // Kind::Const
  IndepVar var() const;                 // Kind::Var
  Jet jet() const;                      // Kind::Jet
  const FuncSymbol& func() const;       // Kind::Func
  std::span<const Expr> args() const;   // Sum, Product children; Power {base, exponent}; Exp/Ln {arg}
  const Expr& base() const { return args()[0]; }
  const Expr& exponent() const { return args()[1]; }
  const Expr& arg() const { return args()[0]; }

  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_zero() const { return is_rational() && value().is_zero(); }
  bool is_one() const { return is_rational() && value().is_one(); }
  /// True for symbols: Const, Var, Jet, Func.
  bool is_symbol() const;

  std::string str() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Kind kind, std::vector<Expr> args, bool canonical);

  std::shared_ptr<const Node> node_;

  friend class ExprBuilder;
};

/// Total order on expressions: kind rank first, then contents.
int compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr normalize(const Expr& raw);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);

// Shorthands used throughout the library and tests.
namespace sym {
Expr x();
Expr t();
Expr z();
Expr u();
Expr u_x();
Expr u_t();
Expr u_xx();
Expr u_xt();
Expr u_tt();
Expr k(int i);   // k1..k5
Expr c(int i);   // c1..c4
Expr rat(std::int64_t n, std::int64_t d = 1);
}  // namespace sym

// ---- text grammar ----------------------------------------------------------

/// Infix printer. parse(print(e)) == e for every canonical e.
std::string print(const Expr& e);
/// Parse the infix grammar and normalize. Throws MalformedExpression.
Expr parse(const std::string& text);
/// Parse without normalizing (the raw tree as written).
Expr parse_raw(const std::string& text);
/// Spelling of a symbol as used by print() and as the key for eval bindings.
std::string symbol_name(const Expr& symbol);

// ---- calculus --------------------------------------------------------------

/// Partial derivative with respect to a Var or Jet symbol. Unknown-function
/// symbols gain a derivative index when the variable is in their signature.
/// A Func symbol may also be given as v; it is then treated as an independent
/// coordinate (used for chain-ruling h(z) through a similarity variable).
Expr partial_diff(const Expr& e, const Expr& v);
Expr total_diff_x(const Expr& e);
Expr total_diff_t(const Expr& e);

/// Replace every occurrence of a symbol, then canonicalize.
Expr substitute(const Expr& e, const Expr& target, const Expr& replacement);
Expr substitute(const Expr& e, const std::vector<std::pair<Expr, Expr>>& rules);
/// Apply a rewrite to every Func symbol (used to impose dependence restrictions).
template <class F>
Expr map_funcs(const Expr& e, F&& fn);

bool depends_on(const Expr& e, const Expr& symbol);
/// True if e contains any Jet symbol of order >= min_order.
bool contains_jet(const Expr& e, int min_order = 0);
std::vector<Expr> free_symbols(const Expr& e);

// ---- analysis --------------------------------------------------------------

struct Collected {
  std::vector<std::pair<Expr, Expr>> coefficients;  // (monomial, coefficient), in request order
  Expr remainder;
};

/// Split an expanded expression by jet monomials (products of jet variables
/// of order >= 1, or the constant 1). Terms whose jet part is not listed go to
/// the remainder.
Collected collect(const Expr& e, const std::vector<Expr>& monomials);
/// Every distinct jet monomial present in e, with its coefficient.
std::vector<std::pair<Expr, Expr>> jet_monomials(const Expr& e);
/// Coefficient of the first power of a symbol in an expanded expression.
Expr linear_coefficient(const Expr& e, const Expr& symbol);

/// Numerator of e after bringing all Sum powers over a common denominator.
Expr together_numerator(const Expr& e);

/// Decide e == 0. Returns true if the canonical form (or its common-denominator
/// numerator) is 0. If the form is structurally nonzero but 20 seeded random
/// probes all vanish to relative 1e-9, throws Error(ProbableZero).
bool is_zero(const Expr& e);

using Bindings = std::map<std::string, double>;
/// Floating evaluation. Bindings are keyed by symbol_name().
double eval_numeric(const Expr& e, const Bindings& bindings = {});

/// Seed for randomized probes; LIESYM_SEED overrides the default.
std::uint64_t probe_seed();

// ---- template definitions --------------------------------------------------

namespace detail {
Expr rebuild(const Expr& e, std::vector<Expr> new_args);
}

template <class F>
Expr map_funcs(const Expr& e, F&& fn) {
  switch (e.kind()) {
    case Kind::Func:
      return normalize(fn(e));
    case Kind::Rational:
    case Kind::Const:
    case Kind::Var:
    case Kind::Jet:
      return e;
    default: {
      std::vector<Expr> out;
      out.reserve(e.args().size());
      for (const auto& a : e.args()) out.push_back(map_funcs(a, fn));
      return detail::rebuild(e, std::move(out));
    }
  }
}

}  // namespace liesym
