#include "entrocone/boxes.hpp"

#include <algorithm>
#include <cmath>

#include "entrocone/errors.hpp"

namespace entrocone {

std::size_t Box::table_size() const {
  std::size_t n = 1;
  for (int p = 0; p < parties; ++p)
    n *= static_cast<std::size_t>(settings[static_cast<std::size_t>(p)]) *
         static_cast<std::size_t>(outcomes[static_cast<std::size_t>(p)]);
  return n;
}

std::size_t Box::index(const std::vector<int>& setting, const std::vector<int>& outcome) const {
  std::size_t idx = 0;
  for (int p = 0; p < parties; ++p)
    idx = idx * static_cast<std::size_t>(settings[static_cast<std::size_t>(p)]) +
          static_cast<std::size_t>(setting[static_cast<std::size_t>(p)]);
  for (int p = 0; p < parties; ++p)
    idx = idx * static_cast<std::size_t>(outcomes[static_cast<std::size_t>(p)]) +
          static_cast<std::size_t>(outcome[static_cast<std::size_t>(p)]);
  return idx;
}

Rational Box::rat_at(const std::vector<int>& setting, const std::vector<int>& outcome) const {
  if (kind != ScalarKind::Rational) throw Error("box is not rational");
  return rtable[index(setting, outcome)];
}

double Box::at(const std::vector<int>& setting, const std::vector<int>& outcome) const {
  const std::size_t i = index(setting, outcome);
  return kind == ScalarKind::Rational ? rtable[i].convert_to<double>() : ftable[i];
}

bool Box::same_shape(const Box& other) const {
  return parties == other.parties && settings == other.settings && outcomes == other.outcomes;
}

namespace {

template <typename F>
void for_each_tuple(const std::vector<int>& radices, F&& fn) {
  std::vector<int> t(radices.size(), 0);
  for (;;) {
    fn(t);
    int p = static_cast<int>(radices.size()) - 1;
    while (p >= 0 && ++t[static_cast<std::size_t>(p)] == radices[static_cast<std::size_t>(p)]) {
      t[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
}

}  // namespace

void Box::check() const {
  const std::size_t n = table_size();
  if (kind == ScalarKind::Rational) {
    if (rtable.size() != n) throw DimensionMismatchError("box table size mismatch");
  } else if (ftable.size() != n) {
    throw DimensionMismatchError("box table size mismatch");
  }
  for_each_tuple(settings, [&](const std::vector<int>& s) {
    if (kind == ScalarKind::Rational) {
      Rational sum = 0;
      for_each_tuple(outcomes, [&](const std::vector<int>& a) {
        const Rational& p = rtable[index(s, a)];
        if (p < 0) throw Error("box probability below zero");
        sum += p;
      });
      if (sum != 1) throw Error("box setting row does not sum to 1 exactly");
    } else {
      double sum = 0;
      for_each_tuple(outcomes, [&](const std::vector<int>& a) {
        const double p = ftable[index(s, a)];
        if (p < -1e-12) throw Error("box probability below zero");
        sum += p;
      });
      if (std::abs(sum - 1.0) > 1e-12) throw Error("box setting row does not sum to 1");
    }
  });
}

// ---------------------------------------------------------------------------
// Named boxes (all exact). Parity delta tables over bits.
// ---------------------------------------------------------------------------

namespace {

Box parity_box(int parties, std::vector<int> settings,
               const std::function<int(const std::vector<int>&)>& parity_of_settings) {
  // p(outcomes | settings) = 1 / 2^{parties-1} when xor(outcomes) equals
  // the prescribed parity, else 0.
  Box box;
  box.parties = parties;
  box.settings = std::move(settings);
  box.outcomes.assign(static_cast<std::size_t>(parties), 2);
  box.kind = ScalarKind::Rational;
  box.rtable.assign(box.table_size(), Rational(0));
  const Rational w(1, 1 << (parties - 1));
  for_each_tuple(box.settings, [&](const std::vector<int>& s) {
    const int target = parity_of_settings(s);
    for_each_tuple(box.outcomes, [&](const std::vector<int>& a) {
      int x = 0;
      for (int v : a) x ^= v;
      if (x == target) box.rtable[box.index(s, a)] = w;
    });
  });
  return box;
}

}  // namespace

Box named_box(const std::string& id) {
  if (id == "pr")
    return parity_box(2, {2, 2}, [](const std::vector<int>& s) { return s[0] & s[1]; });
  if (id == "pc2")
    return parity_box(2, {2, 2}, [](const std::vector<int>&) { return 0; });
  if (id == "xyz")
    return parity_box(3, {2, 2, 2},
                      [](const std::vector<int>& s) { return s[0] & s[1] & s[2]; });
  if (id == "nltri")
    return parity_box(3, {2, 2, 2}, [](const std::vector<int>& s) {
      return (s[1] & s[2]) ^ s[0] ^ s[1] ^ s[2];
    });
  if (id == "pc3")
    return parity_box(3, {2, 2, 2}, [](const std::vector<int>&) { return 0; });
  if (id == "biloc_activation") {
    // p(a,b,c|x) = 1/4 iff a xor b = x*c; only the first party chooses.
    Box box;
    box.parties = 3;
    box.settings = {2, 1, 1};
    box.outcomes = {2, 2, 2};
    box.kind = ScalarKind::Rational;
    box.rtable.assign(box.table_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            if ((a ^ b) == (x & c)) box.rtable[box.index({x, 0, 0}, {a, b, c})] = Rational(1, 4);
    return box;
  }
  if (id == "genuine_nonbilocal") {
    // (1/8) [ delta(xor = f(x,y,z)) + delta(xor = 0) ] with
    // f = xyz + xy + xz + yz + z + 1 over GF(2).
    Box box;
    box.parties = 3;
    box.settings = {2, 2, 2};
    box.outcomes = {2, 2, 2};
    box.kind = ScalarKind::Rational;
    box.rtable.assign(box.table_size(), Rational(0));
    for_each_tuple(box.settings, [&](const std::vector<int>& s) {
      const int x = s[0], y = s[1], z = s[2];
      const int f = (x & y & z) ^ (x & y) ^ (x & z) ^ (y & z) ^ z ^ 1;
      for_each_tuple(box.outcomes, [&](const std::vector<int>& a) {
        const int parity = a[0] ^ a[1] ^ a[2];
        Rational p = 0;
        if (parity == f) p += Rational(1, 8);
        if (parity == 0) p += Rational(1, 8);
        box.rtable[box.index(s, a)] = p;
      });
    });
    return box;
  }
  throw UnknownNameError("unknown box id '" + id + "'");
}

std::vector<std::string> named_box_ids() {
  return {"pr", "pc2", "xyz", "nltri", "pc3", "biloc_activation", "genuine_nonbilocal"};
}

Box mix(const std::vector<Box>& boxes, const std::vector<Rational>& weights) {
  if (boxes.empty() || boxes.size() != weights.size())
    throw Error("mix: need matching boxes and weights");
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error("mix: negative weight");
    sum += w;
  }
  if (sum != 1) throw Error("mix: weights must sum to 1");
  Box out = boxes[0];
  if (out.kind != ScalarKind::Rational) throw Error("mix: rational overload needs rational boxes");
  for (auto& p : out.rtable) p *= weights[0];
  for (std::size_t b = 1; b < boxes.size(); ++b) {
    if (!boxes[b].same_shape(out) || boxes[b].kind != ScalarKind::Rational)
      throw DimensionMismatchError("mix: box shape mismatch");
    for (std::size_t i = 0; i < out.rtable.size(); ++i)
      out.rtable[i] += weights[b] * boxes[b].rtable[i];
  }
  return out;
}

Box mix(const std::vector<Box>& boxes, const std::vector<double>& weights) {
  if (boxes.empty() || boxes.size() != weights.size())
    throw Error("mix: need matching boxes and weights");
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw Error("mix: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error("mix: weights must sum to 1");
  Box out;
  out.parties = boxes[0].parties;
  out.settings = boxes[0].settings;
  out.outcomes = boxes[0].outcomes;
  out.kind = ScalarKind::Float64;
  out.ftable.assign(boxes[0].table_size(), 0.0);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    if (!boxes[b].same_shape(out)) throw DimensionMismatchError("mix: box shape mismatch");
    for (std::size_t i = 0; i < out.ftable.size(); ++i) {
      const double p = boxes[b].kind == ScalarKind::Rational
                           ? boxes[b].rtable[i].convert_to<double>()
                           : boxes[b].ftable[i];
      out.ftable[i] += weights[b] * p;
    }
  }
  return out;
}

Box uniform_like(const Box& box) {
  Box out;
  out.parties = box.parties;
  out.settings = box.settings;
  out.outcomes = box.outcomes;
  out.kind = ScalarKind::Rational;
  std::size_t cells = 1;
  for (int p = 0; p < box.parties; ++p) cells *= static_cast<std::size_t>(box.outcomes[static_cast<std::size_t>(p)]);
  out.rtable.assign(out.table_size(), Rational(1, static_cast<long>(cells)));
  return out;
}

Box white_noise(const Box& box, const Rational& visibility) {
  if (visibility < 0 || visibility > 1) throw Error("white_noise: visibility outside [0,1]");
  return mix({box, uniform_like(box)}, std::vector<Rational>{visibility, 1 - visibility});
}

Box white_noise(const Box& box, double visibility) {
  if (visibility < 0 || visibility > 1) throw Error("white_noise: visibility outside [0,1]");
  return mix({box, uniform_like(box)}, std::vector<double>{visibility, 1 - visibility});
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

namespace {

struct ContextDistribution {
  // Joint over the context's parties (every context picks one observable
  // per party, in party order).
  std::vector<int> card;    // outcome cardinality per position
  std::vector<double> p;    // probabilities
  std::vector<Rational> rp;  // exact, when available
  bool exact = false;
};

ContextDistribution context_distribution(const Box& box, const MarginalScenario& scenario,
                                         VarSet ctx) {
  // One setting per party.
  std::vector<int> setting(static_cast<std::size_t>(box.parties), -1);
  for (int v : set_members(ctx)) {
    const ObservableLabel& l = scenario.labels[static_cast<std::size_t>(v)];
    if (setting[static_cast<std::size_t>(l.party)] != -1)
      throw Error("context uses two observables of one party");
    setting[static_cast<std::size_t>(l.party)] = l.setting;
  }
  for (int p = 0; p < box.parties; ++p)
    if (setting[static_cast<std::size_t>(p)] < 0)
      throw Error("context does not cover every party");

  ContextDistribution out;
  out.card = box.outcomes;
  out.exact = box.kind == ScalarKind::Rational;
  std::size_t cells = 1;
  for (int c : out.card) cells *= static_cast<std::size_t>(c);
  out.p.assign(cells, 0.0);
  if (out.exact) out.rp.assign(cells, Rational(0));
  std::size_t at = 0;
  for_each_tuple(out.card, [&](const std::vector<int>& a) {
    if (out.exact) {
      out.rp[at] = box.rat_at(setting, a);
      out.p[at] = out.rp[at].convert_to<double>();
    } else {
      out.p[at] = box.at(setting, a);
    }
    ++at;
  });
  return out;
}

double shannon_bits(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

// Exact entropy in bits for distributions with power-of-two probabilities.
Rational shannon_bits_exact(const std::vector<Rational>& p) {
  Rational h = 0;
  for (const auto& x : p) {
    if (x == 0) continue;
    if (numerator(x) != 1) throw Error("entropy not exactly representable (probability not 2^-k)");
    const BigInt den = denominator(x);
    // den must be a power of two; the exponent is the surprisal.
    BigInt d = den;
    long k = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++k;
    }
    if (d != 1) throw Error("entropy not exactly representable (probability not 2^-k)");
    h += x * k;
  }
  return h;
}

// Marginal of the context distribution on the positions in `keep`.
template <typename T>
std::vector<T> marginalize(const std::vector<T>& p, const std::vector<int>& card,
                           const std::vector<int>& keep) {
  std::vector<int> kcard;
  for (int k : keep) kcard.push_back(card[static_cast<std::size_t>(k)]);
  std::size_t cells = 1;
  for (int c : kcard) cells *= static_cast<std::size_t>(c);
  std::vector<T> out(cells, T(0));
  std::size_t at = 0;
  for_each_tuple(card, [&](const std::vector<int>& a) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      idx = idx * static_cast<std::size_t>(kcard[i]) + static_cast<std::size_t>(a[static_cast<std::size_t>(keep[i])]);
    out[idx] += p[at];
    ++at;
  });
  return out;
}

template <bool Exact>
EntropyVector entropy_vector_impl(const Box& box, const MarginalScenario& scenario) {
  box.check();
  SpacePtr space = scenario.observable_space();
  const int dim = space->dim();
  std::vector<bool> have(static_cast<std::size_t>(dim), false);
  std::vector<double> vals(static_cast<std::size_t>(dim), 0.0);
  RatVec rvals;
  if (Exact) rvals.assign(static_cast<std::size_t>(dim), Rational(0));
  have[0] = true;

  for (VarSet ctx : scenario.contexts) {
    const ContextDistribution dist = context_distribution(box, scenario, ctx);
    if (Exact && !dist.exact) throw Error("exact entropies need a rational box");
    const std::vector<int> members = set_members(ctx);
    // Position of each context variable within the party-ordered tuple.
    std::vector<int> party_of;
    for (int v : members) party_of.push_back(scenario.labels[static_cast<std::size_t>(v)].party);

    for (VarSet pick = 1; pick < (VarSet{1} << members.size()); ++pick) {
      VarSet sub = 0;
      std::vector<int> keep;
      for (std::size_t t = 0; t < members.size(); ++t) {
        if ((pick >> t) & 1u) {
          sub |= VarSet{1} << members[t];
          keep.push_back(party_of[t]);
        }
      }
      const int idx = space->index_of(sub);
      double h;
      Rational rh;
      if (Exact) {
        const std::vector<Rational> marg = marginalize(dist.rp, dist.card, keep);
        rh = shannon_bits_exact(marg);
        h = rh.convert_to<double>();
      } else {
        const std::vector<double> marg = marginalize(dist.p, dist.card, keep);
        h = shannon_bits(marg);
      }
      if (have[static_cast<std::size_t>(idx)]) {
        // Contexts overlapping on this subset must agree (nonsignaling).
        const double prev = Exact ? rvals[static_cast<std::size_t>(idx)].convert_to<double>()
                                  : vals[static_cast<std::size_t>(idx)];
        if (std::abs(prev - h) > 1e-12)
          throw SignalingBoxError("signaling box: contexts disagree on " + space->set_label(sub));
      } else {
        have[static_cast<std::size_t>(idx)] = true;
        if (Exact)
          rvals[static_cast<std::size_t>(idx)] = rh;
        else
          vals[static_cast<std::size_t>(idx)] = h;
      }
    }
  }
  if (Exact) return EntropyVector::exact(space, std::move(rvals));
  return EntropyVector::floating(space, std::move(vals));
}

}  // namespace

EntropyVector entropy_vector(const Box& box, const MarginalScenario& scenario) {
  return entropy_vector_impl<false>(box, scenario);
}

EntropyVector entropy_vector_exact(const Box& box, const MarginalScenario& scenario) {
  return entropy_vector_impl<true>(box, scenario);
}

double evaluate(const NamedInequality& ineq, const Box& box) {
  const MarginalScenario scenario = ineq.scenario.build();
  const EntropyVector h = entropy_vector(box, scenario);
  const LinearForm f = ineq.form(h.space);
  const std::vector<double> v = h.as_doubles();
  double acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (f.coeffs[i] != 0) acc += f.coeffs[i].convert_to<double>() * v[i];
  return acc;
}

Rational evaluate_exact(const NamedInequality& ineq, const Box& box) {
  const MarginalScenario scenario = ineq.scenario.build();
  const EntropyVector h = entropy_vector_exact(box, scenario);
  const LinearForm f = ineq.form(h.space);
  return f.eval(h.rational);
}

}  // namespace entrocone
