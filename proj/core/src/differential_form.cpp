#include "gaq/differential_form.hpp"

#include <algorithm>

#include "gaq/errors.hpp"

namespace gaq {

namespace {

// Sorts the index in place; returns the permutation sign, or 0 on a repeat.
int sort_index(DifferentialForm::Index& index) {
  int sign = 1;
  for (std::size_t i = 1; i < index.size(); ++i) {
    for (std::size_t j = i; j > 0 && index[j - 1] >= index[j]; --j) {
      if (index[j - 1] == index[j]) return 0;
      std::swap(index[j - 1], index[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

DifferentialForm::DifferentialForm(int degree, const std::vector<std::pair<Index, RationalExpr>>& terms)
    : degree_(degree) {
  for (const auto& [index, value] : terms) {
    if (static_cast<int>(index.size()) != degree) throw StructureError("form term has wrong degree");
    add(index, value);
  }
}

void DifferentialForm::add(Index index, RationalExpr value) {
  const int sign = sort_index(index);
  if (sign == 0 || value.is_zero()) return;
  if (sign < 0) value = -value;
  auto [it, inserted] = terms_.try_emplace(std::move(index), value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DifferentialForm DifferentialForm::function(const RationalExpr& f) {
  DifferentialForm w(0);
  w.add({}, f);
  return w;
}

DifferentialForm DifferentialForm::differential(const std::string& coordinate) {
  DifferentialForm w(1);
  w.add({coordinate}, RationalExpr(1));
  return w;
}

RationalExpr DifferentialForm::coefficient(const Index& index) const {
  Index sorted = index;
  const int sign = sort_index(sorted);
  if (sign == 0) return RationalExpr();
  auto it = terms_.find(sorted);
  if (it == terms_.end()) return RationalExpr();
  return sign > 0 ? it->second : -it->second;
}

RationalExpr DifferentialForm::as_function() const {
  if (degree_ != 0) throw StructureError("not a 0-form");
  return coefficient({});
}

std::optional<RationalExpr> DifferentialForm::ratio_to(const DifferentialForm& other) const {
  if (other.is_zero() || other.degree_ != degree_) return std::nullopt;
  const auto& [index, value] = *other.terms_.begin();
  RationalExpr c = coefficient(index) / value;
  if (!(*this == c * other)) return std::nullopt;
  return c;
}

DifferentialForm DifferentialForm::substitute(const Bindings& bindings) const {
  DifferentialForm out(degree_);
  for (const auto& [index, value] : terms_) out.add(index, value.substitute(bindings));
  return out;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm out = *this;
  for (auto& [index, value] : out.terms_) value = -value;
  return out;
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  if (degree_ != other.degree_) throw StructureError("adding forms of different degree");
  for (const auto& [index, value] : other.terms_) add(index, value);
  return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& other) { return *this += -other; }

DifferentialForm operator*(const RationalExpr& f, const DifferentialForm& w) {
  DifferentialForm out(w.degree_);
  if (f.is_zero()) return out;
  for (const auto& [index, value] : w.terms_) out.terms_.emplace(index, f * value);
  return out;
}

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [index, value] : terms_) {
    std::string basis;
    for (const auto& name : index) basis += (basis.empty() ? "" : "&") + ("d(" + name + ")");
    std::string coeff;
    bool negative = false;
    RationalExpr shown = value;
    if (value.num().size() == 1 && value.num().leading_coefficient().is_real() &&
        value.num().leading_coefficient().re() < 0) {
      negative = true;
      shown = -value;
    }
    if (basis.empty()) {
      coeff = shown.str();
    } else if (!shown.is_one()) {
      const bool simple = shown.num().size() == 1 && shown.is_polynomial();
      coeff = (simple ? shown.str() : "(" + shown.str() + ")") + "*";
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + coeff + basis;
    } else {
      out += (negative ? " - " : " + ") + coeff + basis;
    }
  }
  return out;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  DifferentialForm out(a.degree() + b.degree());
  for (const auto& [ia, va] : a.terms()) {
    for (const auto& [ib, vb] : b.terms()) {
      DifferentialForm::Index joined = ia;
      joined.insert(joined.end(), ib.begin(), ib.end());
      out += DifferentialForm(out.degree(), {{joined, va * vb}});
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& w, const std::vector<std::string>& coordinates) {
  DifferentialForm out(w.degree() + 1);
  for (const auto& [index, value] : w.terms()) {
    for (const auto& x : coordinates) {
      if (!value.depends_on(x)) continue;
      DifferentialForm::Index joined{x};
      joined.insert(joined.end(), index.begin(), index.end());
      out += DifferentialForm(out.degree(), {{joined, value.differentiate(x)}});
    }
  }
  return out;
}

DifferentialForm interior_product(const VectorField& x, const DifferentialForm& w) {
  if (w.degree() == 0) throw StructureError("interior product of a 0-form");
  DifferentialForm out(w.degree() - 1);
  for (const auto& [index, value] : w.terms()) {
    for (std::size_t r = 0; r < index.size(); ++r) {
      RationalExpr component = x.component(index[r]);
      if (component.is_zero()) continue;
      DifferentialForm::Index rest = index;
      rest.erase(rest.begin() + static_cast<long>(r));
      RationalExpr term = component * value;
      if (r % 2 == 1) term = -term;
      out += DifferentialForm(out.degree(), {{rest, term}});
    }
  }
  return out;
}

DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w,
                                const std::vector<std::string>& coordinates) {
  if (w.degree() == 0) return DifferentialForm::function(x.apply(w.as_function()));
  DifferentialForm out = interior_product(x, exterior_derivative(w, coordinates));
  out += exterior_derivative(interior_product(x, w), coordinates);
  return out;
}

RationalExpr pairing(const DifferentialForm& w, const VectorField& x) {
  if (w.degree() != 1) throw StructureError("pairing needs a 1-form");
  return interior_product(x, w).as_function();
}

DifferentialForm pullback(const DifferentialForm& w, const Bindings& map,
                          const std::vector<std::string>& new_coordinates) {
  DifferentialForm out(w.degree());
  for (const auto& [index, value] : w.terms()) {
    DifferentialForm term = DifferentialForm::function(value.substitute(map));
    for (const auto& name : index) {
      auto it = map.find(name);
      DifferentialForm dx = it == map.end()
                                ? DifferentialForm::differential(name)
                                : exterior_derivative(DifferentialForm::function(it->second), new_coordinates);
      term = wedge(term, dx);
    }
    out += term;
  }
  return out;
}

}  // namespace gaq
