// polynomial.hpp -- univariate polynomials over a FiniteField.
//
// Dense representation, constant term first, no trailing zeros. The zero
// polynomial has degree -1 (the "minus infinity" marker). Degrees in this
// library stay tiny (~2g+2), so all algorithms are the naive exact ones.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "picgen/finite_field.hpp"

namespace picgen {

class Polynomial {
 public:
  Polynomial() : f_(nullptr) {}
  explicit Polynomial(const FiniteField* f) : f_(f) {}
  Polynomial(const FiniteField* f, std::vector<FieldElement> coeffs)
      : f_(f), c_(std::move(coeffs)) {
    trim();
  }

  static Polynomial zero(const FiniteField* f) { return Polynomial(f); }
  static Polynomial constant(const FieldElement& a) {
    return Polynomial(a.field_ptr(), {a});
  }
  static Polynomial x(const FiniteField* f) {
    return Polynomial(f, {f->zero(), f->one()});
  }
  // from prime-subfield residues, constant term first
  static Polynomial from_ints(const FiniteField* f,
                              const std::vector<std::int64_t>& v) {
    std::vector<FieldElement> c;
    c.reserve(v.size());
    for (auto r : v) c.push_back(f->from_int(r));
    return Polynomial(f, std::move(c));
  }
  // from canonical element encodings, constant term first
  static Polynomial from_encodings(const FiniteField* f,
                                   const std::vector<std::uint64_t>& v) {
    std::vector<FieldElement> c;
    c.reserve(v.size());
    for (auto code : v) c.push_back(f->from_encoding(code));
    return Polynomial(f, std::move(c));
  }

  const FiniteField* field_ptr() const { return f_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == f_->one(); }
  bool is_monic() const { return !c_.empty() && c_.back() == f_->one(); }

  FieldElement coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return f_->zero();
    return c_[static_cast<std::size_t>(i)];
  }
  FieldElement leading() const {
    if (c_.empty()) throw input_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  std::vector<std::uint64_t> encodings() const {
    std::vector<std::uint64_t> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(e.encoding());
    return v;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()),
                                a.f_->zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] = r[i] + a.c_[i];
      if (i < b.c_.size()) r[i] = r[i] + b.c_[i];
    }
    return Polynomial(a.f_, std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()),
                                a.f_->zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] = r[i] + a.c_[i];
      if (i < b.c_.size()) r[i] = r[i] - b.c_[i];
    }
    return Polynomial(a.f_, std::move(r));
  }
  Polynomial operator-() const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const auto& e : c_) r.push_back(-e);
    return Polynomial(f_, std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.f_);
    std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1, a.f_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(a.f_, std::move(r));
  }
  friend Polynomial operator*(const FieldElement& s, const Polynomial& a) {
    std::vector<FieldElement> r;
    r.reserve(a.c_.size());
    for (const auto& e : a.c_) r.push_back(s * e);
    return Polynomial(a.f_, std::move(r));
  }

  // quotient and remainder; b must be nonzero
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b) {
    a.check_same(b);
    if (b.is_zero()) throw input_error("polynomial division by zero");
    Polynomial rem = a;
    if (a.degree() < b.degree()) return {Polynomial(a.f_), rem};
    FieldElement lead_inv = b.leading().inverse();
    std::vector<FieldElement> quo(
        static_cast<std::size_t>(a.degree() - b.degree()) + 1, a.f_->zero());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      int off = rem.degree() - b.degree();
      FieldElement t = rem.leading() * lead_inv;
      quo[static_cast<std::size_t>(off)] = t;
      std::vector<FieldElement> rc = rem.c_;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        rc[static_cast<std::size_t>(off) + j] =
            rc[static_cast<std::size_t>(off) + j] - t * b.c_[j];
      rem = Polynomial(a.f_, std::move(rc));
    }
    return {Polynomial(a.f_, std::move(quo)), rem};
  }

  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    return divmod(a, b).first;
  }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) {
    return divmod(a, b).second;
  }

  // exact division; throws if the remainder is nonzero
  friend Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw input_error("exact_div: division not exact");
    return q;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * *this;
  }

  FieldElement eval(const FieldElement& x) const {
    FieldElement acc = f_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // canonical ordering key: degree first, then coefficient encodings from the top
  friend bool poly_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      auto ea = a.c_[i].encoding(), eb = b.c_[i].encoding();
      if (ea != eb) return ea < eb;
    }
    return false;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& a) {
    if (a.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << a.c_[i].encoding();
      if (i > 0) os << "*x^" << i;
    }
    return os;
  }

 private:
  void check_same(const Polynomial& b) const {
    if (f_ != b.f_) throw input_error("field mismatch in polynomial arithmetic");
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const FiniteField* f_;
  std::vector<FieldElement> c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b) {
  if (a.field_ptr() != b.field_ptr())
    throw input_error("field mismatch in gcd");
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// monic g with s*a + t*b = g
struct XgcdResult {
  Polynomial g, s, t;
};
inline XgcdResult xgcd(const Polynomial& a, const Polynomial& b) {
  if (a.field_ptr() != b.field_ptr())
    throw input_error("field mismatch in xgcd");
  const FiniteField* f = a.field_ptr();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(f->one()), s1 = Polynomial::zero(f);
  Polynomial t0 = Polynomial::zero(f), t1 = Polynomial::constant(f->one());
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  FieldElement lead_inv = r0.leading().inverse();
  return {lead_inv * r0, lead_inv * s0, lead_inv * t0};
}

inline Polynomial derivative(const Polynomial& a) {
  const FiniteField* f = a.field_ptr();
  if (a.degree() < 1) return Polynomial::zero(f);
  std::vector<FieldElement> r;
  r.reserve(static_cast<std::size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i)
    r.push_back(f->from_int(i) * a.coeff(i));
  return Polynomial(f, std::move(r));
}

inline bool is_separable(const Polynomial& a) {
  if (a.is_zero()) throw input_error("separability of the zero polynomial");
  return gcd(a, derivative(a)).is_one();
}

// Monic polynomials of fixed degree in canonical order (lower coefficients
// read as a base-q integer of encodings).
inline Polynomial monic_from_index(const FiniteField* f, int deg,
                                   std::uint64_t index) {
  std::vector<FieldElement> c;
  c.reserve(static_cast<std::size_t>(deg) + 1);
  for (int i = 0; i < deg; ++i) {
    c.push_back(f->from_encoding(index % f->q()));
    index /= f->q();
  }
  c.push_back(f->one());
  return Polynomial(f, std::move(c));
}

// Factor into monic irreducibles (with multiplicity, canonical order) times
// the leading coefficient. Root scan plus trial division by canonically
// enumerated polynomials of increasing degree; any divisor found after all
// smaller-degree factors are removed is automatically irreducible. Desk-scale
// only (the oracle fields keep q^deg around 1e5 or less).
struct FactorTerm {
  Polynomial factor;
  int multiplicity;
};
inline std::vector<FactorTerm> factor(const Polynomial& a) {
  if (a.is_zero()) throw input_error("factor of the zero polynomial");
  const FiniteField* f = a.field_ptr();
  std::vector<FactorTerm> out;
  Polynomial rest = a.monic();
  // linear factors by root scan in canonical order
  for (std::uint64_t code = 0; code < f->q() && rest.degree() >= 1; ++code) {
    FieldElement r = f->from_encoding(code);
    if (!rest.eval(r).is_zero()) continue;
    Polynomial lin(f, {-r, f->one()});
    int mult = 0;
    while (rest.eval(r).is_zero()) {
      rest = exact_div(rest, lin);
      ++mult;
    }
    out.push_back({lin, mult});
  }
  for (int d = 2; rest.degree() >= 2 * d; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= f->q();
    for (std::uint64_t idx = 0; idx < count && rest.degree() >= 2 * d; ++idx) {
      Polynomial cand = monic_from_index(f, d, idx);
      if (!divmod(rest, cand).second.is_zero()) continue;
      int mult = 0;
      while (divmod(rest, cand).second.is_zero()) {
        rest = exact_div(rest, cand);
        ++mult;
      }
      out.push_back({cand, mult});
    }
  }
  if (rest.degree() >= 1) out.push_back({rest, 1});
  std::sort(out.begin(), out.end(), [](const FactorTerm& a, const FactorTerm& b) {
    return poly_less(a.factor, b.factor);
  });
  return out;
}

}  // namespace picgen
