#include "entrocone/entropy.hpp"

#include <cctype>

#include "entrocone/errors.hpp"

namespace entrocone {

std::string ObservableLabel::name(bool show_setting) const {
  std::string out(1, static_cast<char>('A' + party));
  if (show_setting) out += std::to_string(setting);
  return out;
}

EntropyVector EntropyVector::exact(SpacePtr space, RatVec v) {
  if (static_cast<int>(v.size()) != space->dim())
    throw DimensionMismatchError("entropy vector length != space dimension");
  if (v[0] != 0) throw DimensionMismatchError("H({}) must be 0");
  EntropyVector e;
  e.space = std::move(space);
  e.kind = ScalarKind::Rational;
  e.rational = std::move(v);
  return e;
}

EntropyVector EntropyVector::floating(SpacePtr space, std::vector<double> v) {
  if (static_cast<int>(v.size()) != space->dim())
    throw DimensionMismatchError("entropy vector length != space dimension");
  if (v[0] != 0.0) throw DimensionMismatchError("H({}) must be 0");
  EntropyVector e;
  e.space = std::move(space);
  e.kind = ScalarKind::Float64;
  e.values = std::move(v);
  return e;
}

std::vector<double> EntropyVector::as_doubles() const {
  if (kind == ScalarKind::Float64) return values;
  std::vector<double> out(rational.size());
  for (std::size_t i = 0; i < rational.size(); ++i)
    out[i] = rational[i].convert_to<double>();
  return out;
}

std::size_t elemental_count(int n) {
  if (n < 1) throw Error("elemental_count: need n >= 1");
  if (n == 1) return 1;
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  return (std::size_t{1} << (n - 2)) * pairs + static_cast<std::size_t>(n);
}

HCone elemental_inequalities(VarSet vars, SpacePtr space) {
  const int n = popcount(vars);
  if (n < 1) throw Error("elemental_inequalities: need at least one variable");
  const std::vector<int> members = set_members(vars);
  const int d = space->dim();

  HCone cone;
  cone.space = space;

  auto row = [&]() {
    LinearForm f;
    f.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    f.rel = Rel::GeqZero;
    return f;
  };
  // H({}) carries no coefficient anywhere (it is the normalization
  // equality); dropping it keeps rows identical to their functional()
  // renderings, which certificate matching relies on.
  auto bump = [&](LinearForm& f, VarSet s, int delta) {
    if (s == kEmptySet) return;
    f.coeffs[static_cast<std::size_t>(space->index_of(s))] += delta;
  };

  // Monotonicity: H(vars) - H(vars \ {i}) >= 0.
  for (int i : members) {
    LinearForm f = row();
    bump(f, vars, +1);
    bump(f, vars & ~(VarSet{1} << i), -1);
    cone.inequalities.push_back(std::move(f));
  }
  // Submodularity: H(S+i) + H(S+j) - H(S+i+j) - H(S) >= 0 for i < j,
  // S subset of vars - {i,j}.
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const VarSet vi = VarSet{1} << members[a];
      const VarSet vj = VarSet{1} << members[b];
      const VarSet rest = vars & ~(vi | vj);
      const std::vector<int> rm = set_members(rest);
      for (VarSet pick = 0; pick < (VarSet{1} << rm.size()); ++pick) {
        VarSet s = 0;
        for (std::size_t t = 0; t < rm.size(); ++t)
          if ((pick >> t) & 1u) s |= VarSet{1} << rm[t];
        LinearForm f = row();
        bump(f, s | vi, +1);
        bump(f, s | vj, +1);
        bump(f, s | vi | vj, -1);
        bump(f, s, -1);
        cone.inequalities.push_back(std::move(f));
      }
    }
  }
  // Normalization H({}) = 0.
  LinearForm eq = row();
  eq.rel = Rel::EqZero;
  eq.coeffs[0] = 1;
  cone.equalities.push_back(std::move(eq));
  return cone;
}

HCone elemental_inequalities(int n, SpacePtr space) {
  if (n < 1) throw Error("elemental_inequalities: need n >= 1");
  if (space->num_vars() != n || space->dim() != (1 << n))
    throw DimensionMismatchError("elemental_inequalities(n): space must be the full 2^n lattice");
  return elemental_inequalities(static_cast<VarSet>((VarSet{1} << n) - 1), std::move(space));
}

// ---------------------------------------------------------------------------
// Expression parser: sum of [coeff *] H(...) / I(...) terms.
// ---------------------------------------------------------------------------
namespace {

struct Parser {
  const std::string& s;
  const CoordinateSpace& space;
  std::size_t at = 0;

  void skip() {
    while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
  }
  bool eat(char c) {
    skip();
    if (at < s.size() && s[at] == c) {
      ++at;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("expression: " + what + " at position " + std::to_string(at) + " in '" + s + "'");
  }

  VarSet var_list() {
    VarSet out = 0;
    for (;;) {
      skip();
      std::size_t start = at;
      while (at < s.size() && (std::isalnum(static_cast<unsigned char>(s[at])) || s[at] == '_')) ++at;
      if (at == start) fail("expected a variable name");
      out |= VarSet{1} << space.var_index(s.substr(start, at - start));
      if (!eat(',')) break;
    }
    return out;
  }

  int coord(VarSet set) { return space.index_of(set); }

  // H(S), H(S|T), I(A:B), I(A:B|C): adds sign-weighted coefficients.
  void term(RatVec& coeffs, const Rational& weight) {
    skip();
    if (at >= s.size()) fail("expected a term");
    const char head = s[at];
    if (head != 'H' && head != 'I') fail("expected H(...) or I(...)");
    ++at;
    if (!eat('(')) fail("expected '('");
    auto add = [&](VarSet set, int sign) {
      if (set == kEmptySet) return;  // H({}) is identically zero
      coeffs[static_cast<std::size_t>(coord(set))] += weight * sign;
    };
    if (head == 'H') {
      const VarSet sset = var_list();
      if (eat('|')) {
        const VarSet tset = var_list();
        add(sset | tset, +1);
        add(tset, -1);
      } else {
        add(sset, +1);
      }
    } else {
      const VarSet a = var_list();
      if (!eat(':')) fail("expected ':' in I(...)");
      const VarSet b = var_list();
      VarSet c = 0;
      if (eat('|')) c = var_list();
      add(a | c, +1);
      add(b | c, +1);
      add(a | b | c, -1);
      add(c, -1);
    }
    if (!eat(')')) fail("expected ')'");
  }

  Rational number() {
    skip();
    std::size_t start = at;
    while (at < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[at])) || s[at] == '/' || s[at] == '.'))
      ++at;
    std::string lit = s.substr(start, at - start);
    if (lit.empty()) fail("expected a number");
    if (lit.find('.') != std::string::npos) fail("decimal coefficients not supported, use p/q");
    return parse_rational(lit);
  }

  RatVec parse() {
    RatVec coeffs(static_cast<std::size_t>(space.dim()), Rational(0));
    bool first = true;
    for (;;) {
      skip();
      if (at >= s.size()) {
        if (first) fail("empty expression");
        break;
      }
      Rational sign = 1;
      if (eat('+')) {
        sign = 1;
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      skip();
      Rational weight = sign;
      if (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
        weight = sign * number();
        if (!eat('*')) fail("expected '*' after coefficient");
      }
      term(coeffs, weight);
      first = false;
    }
    return coeffs;
  }
};

}  // namespace

LinearForm functional(const std::string& expr, const SpacePtr& space) {
  Parser p{expr, *space};
  LinearForm f;
  f.coeffs = p.parse();
  f.rel = Rel::GeqZero;
  return f;
}

}  // namespace entrocone
