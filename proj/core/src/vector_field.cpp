#include "gaq/vector_field.hpp"

#include <set>

namespace gaq {

VectorField::VectorField(Components components) {
  for (auto& [name, value] : components) {
    if (!value.is_zero()) components_.emplace(name, std::move(value));
  }
}

VectorField VectorField::partial(const std::string& coordinate) {
  VectorField x;
  x.components_.emplace(coordinate, RationalExpr(1));
  return x;
}

RationalExpr VectorField::component(std::string_view coordinate) const {
  auto it = components_.find(std::string(coordinate));
  return it == components_.end() ? RationalExpr() : it->second;
}

RationalExpr VectorField::apply(const RationalExpr& f) const {
  RationalExpr out;
  for (const auto& [name, value] : components_) {
    if (!f.depends_on(name)) continue;
    out += value * f.differentiate(name);
  }
  return out;
}

VectorField VectorField::without(std::string_view coordinate) const {
  VectorField out = *this;
  out.components_.erase(std::string(coordinate));
  return out;
}

VectorField VectorField::substitute(const Bindings& bindings) const {
  Components out;
  for (const auto& [name, value] : components_) out.emplace(name, value.substitute(bindings));
  return VectorField(std::move(out));
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& [name, value] : out.components_) value = -value;
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (const auto& [name, value] : other.components_) {
    auto [it, inserted] = components_.try_emplace(name, value);
    if (!inserted) {
      it->second += value;
      if (it->second.is_zero()) components_.erase(it);
    }
  }
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) { return *this += -other; }

VectorField operator*(const RationalExpr& f, const VectorField& x) {
  if (f.is_zero()) return VectorField();
  VectorField out = x;
  for (auto& [name, value] : out.components_) value *= f;
  return out;
}

std::string VectorField::str() const {
  if (components_.empty()) return "0";
  std::string out;
  for (const auto& [name, value] : components_) {
    RationalExpr shown = value;
    bool negative = false;
    if (value.num().size() == 1 && value.num().leading_coefficient().is_real() &&
        value.num().leading_coefficient().re() < 0) {
      negative = true;
      shown = -value;
    }
    const bool simple = shown.num().size() == 1 && shown.is_polynomial();
    const std::string coeff = shown.is_one() ? "" : (simple ? shown.str() : "(" + shown.str() + ")") + "*";
    if (out.empty()) {
      out = (negative ? "-" : "") + coeff + "D[" + name + "]";
    } else {
      out += (negative ? " - " : " + ") + coeff + "D[" + name + "]";
    }
  }
  return out;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  std::set<std::string> names;
  for (const auto& [name, v] : x.components()) names.insert(name);
  for (const auto& [name, v] : y.components()) names.insert(name);
  VectorField::Components out;
  for (const auto& name : names) out.emplace(name, x.apply(y.component(name)) - y.apply(x.component(name)));
  return VectorField(std::move(out));
}

VectorField combine(const std::vector<RationalExpr>& coefficients, const std::vector<VectorField>& fields) {
  VectorField out;
  for (std::size_t i = 0; i < coefficients.size() && i < fields.size(); ++i) {
    if (!coefficients[i].is_zero()) out += coefficients[i] * fields[i];
  }
  return out;
}

}  // namespace gaq
