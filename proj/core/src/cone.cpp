#include "entrocone/cone.hpp"

#include "entrocone/errors.hpp"

namespace entrocone {

bool LinearForm::is_zero() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

Rational LinearForm::eval(const RatVec& h) const {
  if (h.size() != coeffs.size()) throw DimensionMismatchError("form/vector length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) acc += coeffs[i] * h[i];
  return acc;
}

LinearForm negated(const LinearForm& f) {
  LinearForm out = f;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

void HCone::check_consistent() const {
  const int d = dim();
  for (const auto& f : inequalities) {
    if (f.dim() != d) throw DimensionMismatchError("inequality row length != space dimension");
    if (f.rel != Rel::GeqZero) throw DimensionMismatchError("inequality row with EqZero relation");
  }
  for (const auto& f : equalities) {
    if (f.dim() != d) throw DimensionMismatchError("equality row length != space dimension");
    if (f.rel != Rel::EqZero) throw DimensionMismatchError("equality row with GeqZero relation");
  }
}

std::string row_ref_label(const RowRef& r) {
  switch (r.kind) {
    case RowRef::Inequality:
      return "ineq[" + std::to_string(r.index) + "]";
    case RowRef::Equality:
      return "eq[" + std::to_string(r.index) + "]";
    case RowRef::Pin:
      return "pin[" + std::to_string(r.index) + "]";
  }
  return "?";
}

Pins Pins::on_coordinates(const std::vector<int>& coords, const RatVec& v) {
  Pins p;
  p.values.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) p.values.emplace_back(coords[i], v[i]);
  return p;
}

namespace {

bool verify_impl(const Certificate& cert, const HCone& system, const Pins* pins) {
  const int d = system.dim();
  if (cert.target.dim() != d) throw DimensionMismatchError("certificate target dimension mismatch");
  RatVec acc(static_cast<std::size_t>(d), Rational(0));
  Rational constant = 0;
  for (const auto& [ref, mult] : cert.terms) {
    const RatVec* row = nullptr;
    Rational row_const = 0;
    RatVec pin_row;
    switch (ref.kind) {
      case RowRef::Inequality: {
        if (ref.index < 0 || ref.index >= static_cast<int>(system.inequalities.size()))
          throw UnknownNameError("certificate references missing " + row_ref_label(ref));
        if (mult < 0) return false;  // inequality multipliers must be nonnegative
        row = &system.inequalities[static_cast<std::size_t>(ref.index)].coeffs;
        break;
      }
      case RowRef::Equality: {
        if (ref.index < 0 || ref.index >= static_cast<int>(system.equalities.size()))
          throw UnknownNameError("certificate references missing " + row_ref_label(ref));
        row = &system.equalities[static_cast<std::size_t>(ref.index)].coeffs;
        break;
      }
      case RowRef::Pin: {
        if (pins == nullptr || ref.index < 0 ||
            ref.index >= static_cast<int>(pins->values.size()))
          throw UnknownNameError("certificate references missing " + row_ref_label(ref));
        // Pin h[c] = v as the affine row h[c] - v (an equality).
        const auto& [coord, value] = pins->values[static_cast<std::size_t>(ref.index)];
        pin_row.assign(static_cast<std::size_t>(d), Rational(0));
        pin_row[static_cast<std::size_t>(coord)] = 1;
        row_const = -value;
        row = &pin_row;
        break;
      }
    }
    for (std::size_t i = 0; i < row->size(); ++i)
      if ((*row)[i] != 0) acc[i] += mult * (*row)[i];
    constant += mult * row_const;
  }
  return acc == cert.target.coeffs && constant == cert.constant;
}

}  // namespace

bool verify_certificate(const Certificate& cert, const HCone& system) {
  return verify_impl(cert, system, nullptr);
}

bool verify_certificate(const Certificate& cert, const HCone& system, const Pins& pins) {
  return verify_impl(cert, system, &pins);
}

}  // namespace entrocone
