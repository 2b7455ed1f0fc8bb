#include "liesym/prolongation.hpp"

#include "liesym/error.hpp"

namespace liesym {

namespace {

void check_component(const Expr& e, const char* which) {
  if (contains_jet(e, 1))
    throw Error(ErrorCode::InvalidCoefficient, std::string(which) + " depends on derivative jets: " + print(e));
}

}  // namespace

VectorField make_vector_field(const Expr& xi, const Expr& tau, const Expr& eta) {
  VectorField v{normalize(xi), normalize(tau), normalize(eta)};
  check_component(v.xi, "xi");
  check_component(v.tau, "tau");
  check_component(v.eta, "eta");
  return v;
}

VectorField combine(const Expr& a, const VectorField& v, const Expr& b, const VectorField& w) {
  return {a * v.xi + b * w.xi, a * v.tau + b * w.tau, a * v.eta + b * w.eta};
}

ProlongedField prolong2(const VectorField& vf) {
  const VectorField v = make_vector_field(vf.xi, vf.tau, vf.eta);
  const Expr dx_xi = total_diff_x(v.xi);
  const Expr dx_tau = total_diff_x(v.tau);
  ProlongedField pf;
  pf.base = v;
  pf.mu_x = total_diff_x(v.eta) - sym::u_x() * dx_xi - sym::u_t() * dx_tau;
  pf.mu_t = total_diff_t(v.eta) - sym::u_x() * total_diff_t(v.xi) - sym::u_t() * total_diff_t(v.tau);
  pf.mu_xx = total_diff_x(pf.mu_x) - sym::u_xx() * dx_xi - sym::u_xt() * dx_tau;
  return pf;
}

Expr apply_prolonged(const ProlongedField& pf, const Expr& target) {
  const Expr e = normalize(target);
  if (depends_on(e, sym::u_xt()) || depends_on(e, sym::u_tt()))
    throw Error(ErrorCode::UncoveredJetVariable, "no prolongation coefficient for u_xt/u_tt in " + print(e));
  return sum({pf.base.xi * partial_diff(e, sym::x()), pf.base.tau * partial_diff(e, sym::t()),
              pf.base.eta * partial_diff(e, sym::u()), pf.mu_x * partial_diff(e, sym::u_x()),
              pf.mu_t * partial_diff(e, sym::u_t()), pf.mu_xx * partial_diff(e, sym::u_xx())});
}

Expr apply(const VectorField& vf, const Expr& e) {
  return sum({vf.xi * partial_diff(e, sym::x()), vf.tau * partial_diff(e, sym::t()), vf.eta * partial_diff(e, sym::u())});
}

VectorField bracket(const VectorField& v, const VectorField& w) {
  return {apply(v, w.xi) - apply(w, v.xi), apply(v, w.tau) - apply(w, v.tau), apply(v, w.eta) - apply(w, v.eta)};
}

std::string print(const VectorField& vf) {
  return "xi=" + print(vf.xi) + "; tau=" + print(vf.tau) + "; eta=" + print(vf.eta);
}

VectorField parse_vector_field(const std::string& text) {
  Expr parts[3];
  bool seen[3] = {false, false, false};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    start = end + 1;
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::MalformedExpression, "expected name=expr in '" + item + "'");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    int k = name == "xi" ? 0 : name == "tau" ? 1 : name == "eta" ? 2 : -1;
    if (k < 0) throw Error(ErrorCode::MalformedExpression, "unknown component '" + name + "'");
    if (seen[k]) throw Error(ErrorCode::MalformedExpression, "component '" + name + "' given twice");
    seen[k] = true;
    parts[k] = parse(item.substr(eq + 1));
  }
  return make_vector_field(parts[0], parts[1], parts[2]);
}

}  // namespace liesym
