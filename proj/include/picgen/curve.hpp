// curve.hpp -- hyperelliptic curve models y^2 + h(x) y = f(x), ramified at
// infinity (one point above infinity, kept as a symbolic marker). Validation
// checks every model condition individually and reports the first failure by
// clause name. Includes point enumeration, the hyperelliptic involution, Tv,
// and the characteristic-2 invariants (d0, d1, epsilon, lambda2, H_C).
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "picgen/polynomial.hpp"

namespace picgen {

class validation_error : public input_error {
 public:
  validation_error(std::string clause, const std::string& msg)
      : input_error(msg), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

class HyperellipticModel;
using ModelPtr = std::shared_ptr<const HyperellipticModel>;

struct AffinePoint {
  FieldElement x, y;
  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const AffinePoint& a, const AffinePoint& b) {
    return !(a == b);
  }
};

class HyperellipticModel : public std::enable_shared_from_this<HyperellipticModel> {
 public:
  // checks every model condition; throws validation_error naming the first
  // failed clause
  static ModelPtr validate(FieldPtr field, int g, Polynomial f, Polynomial h) {
    if (f.field_ptr() != field.get() || h.field_ptr() != field.get())
      throw validation_error("field", "f and h must live over the given field");
    if (g < 1) throw validation_error("genus", "genus must be >= 1");
    if (f.degree() != 2 * g + 1 && f.degree() != 2 * g + 2)
      throw validation_error("degree-f", "deg(f) must be 2g+1 or 2g+2");
    if (field->p() != 2) {
      if (!h.is_zero())
        throw validation_error("h-zero", "h must be zero in odd characteristic");
      if (!is_separable(f))
        throw validation_error("f-separable", "f is not separable");
      if (f.degree() != 2 * g + 1)
        throw validation_error("ramified-infinity",
                               "deg(f) must be 2g+1 for infinity to ramify");
    } else {
      if (h.is_zero())
        throw validation_error("h-nonzero",
                               "h must be nonzero in characteristic 2");
      if (h.degree() > g + 1)
        throw validation_error("h-degree", "deg(h) must be at most g+1");
      // (h, h'^2 f + f'^2) = (1): the affine model is smooth
      Polynomial dh = derivative(h), df = derivative(f);
      if (!gcd(h, dh * dh * f + df * df).is_one())
        throw validation_error("h-coprime",
                               "h shares a root with h'^2 f + f'^2");
      FieldElement hg1 = h.coeff(g + 1);
      FieldElement lead = h.coeff(g) * h.coeff(g) * f.coeff(2 * g + 2) +
                          f.coeff(2 * g + 1) * f.coeff(2 * g + 1);
      if (hg1.is_zero() && lead.is_zero())
        throw validation_error(
            "leading-pair",
            "h_{g+1} and h_g^2 f_{2g+2} + f_{2g+1}^2 are both zero");
      if (h.degree() < 1 || h.degree() > g)
        throw validation_error("ramified-infinity",
                               "deg(h) must lie in [1, g] for infinity to ramify");
      // d1 = f_{2g+1} + sqrt(f_{2g+2}) h_g must be a unit (its square is the
      // leading pair value once h_{g+1} = 0)
      FieldElement d1 = f.coeff(2 * g + 1) +
                        *sqrt(f.coeff(2 * g + 2)) * h.coeff(g);
      if (d1.is_zero())
        throw validation_error("d1-nonzero", "d1 vanishes for this (f, h)");
    }
    return ModelPtr(new HyperellipticModel(std::move(field), g, std::move(f),
                                           std::move(h)));
  }

  const FieldPtr& field() const { return k_; }
  int genus() const { return g_; }
  const Polynomial& f() const { return f_; }
  const Polynomial& h() const { return h_; }
  bool exceptional() const {  // characteristic 2 with deg(h) = g
    return k_->p() == 2 && h_.degree() == g_;
  }

  bool on_curve(const AffinePoint& pt) const {
    return pt.y * pt.y + h_.eval(pt.x) * pt.y == f_.eval(pt.x);
  }

  // In characteristic 2 with deg(f) = 2g+2, Cantor reduction needs the
  // equivalent model with deg(f) = 2g+1 obtained by y -> y + s x^{g+1},
  // s = sqrt(f_{2g+2}). Exposed for the Jacobian layer; identity otherwise.
  const Polynomial& working_f() const { return f_work_; }
  const FieldElement& y_shift() const { return y_shift_; }  // the s above
  bool needs_shift() const { return !y_shift_.is_zero(); }

  friend bool operator==(const HyperellipticModel& a, const HyperellipticModel& b) {
    return a.k_.get() == b.k_.get() && a.g_ == b.g_ && a.f_ == b.f_ && a.h_ == b.h_;
  }

 private:
  HyperellipticModel(FieldPtr k, int g, Polynomial f, Polynomial h)
      : k_(std::move(k)), g_(g), f_(std::move(f)), h_(std::move(h)),
        y_shift_(k_->zero()), f_work_(f_) {
    if (k_->p() == 2 && f_.degree() == 2 * g_ + 2) {
      y_shift_ = *sqrt(f_.coeff(2 * g_ + 2));
      // f_new = f + f_{2g+2} x^{2g+2} + s h x^{g+1}
      std::vector<FieldElement> mono(static_cast<std::size_t>(g_) + 2, k_->zero());
      mono.back() = y_shift_;
      Polynomial sx(k_.get(), std::move(mono));  // s * x^{g+1}
      f_work_ = f_ + sx * sx + sx * h_;
    }
  }

  FieldPtr k_;
  int g_;
  Polynomial f_, h_;
  FieldElement y_shift_;
  Polynomial f_work_;
};

// Tv of the monic polynomial of a place: minus the subleading coefficient
inline FieldElement tv(const Polynomial& u) {
  if (!u.is_monic() || u.degree() < 1)
    throw input_error("tv requires a monic polynomial of degree >= 1");
  return -u.coeff(u.degree() - 1);
}

inline AffinePoint involution(const HyperellipticModel& m, const AffinePoint& p) {
  return {p.x, -p.y - m.h().eval(p.x)};
}

// All affine points with x in S, in S order; per x the points are ordered by
// the canonical encoding of y.
inline std::vector<AffinePoint> points_with_x_in(
    const HyperellipticModel& m, const std::vector<FieldElement>& xs) {
  std::vector<AffinePoint> out;
  const FiniteField& k = *m.field();
  for (const auto& x : xs) {
    FieldElement fx = m.f().eval(x);
    FieldElement hx = m.h().eval(x);
    if (k.p() == 2) {
      if (hx.is_zero()) {
        out.push_back({x, *sqrt(fx)});
      } else {
        // y = h(x) z with z^2 + z = f(x)/h(x)^2
        FieldElement rhs = fx / (hx * hx);
        auto z = artin_schreier_solve(rhs);
        if (!z) continue;
        FieldElement y1 = hx * *z, y2 = y1 + hx;
        if (y1.encoding() > y2.encoding()) std::swap(y1, y2);
        out.push_back({x, y1});
        out.push_back({x, y2});
      }
    } else {
      if (fx.is_zero()) {
        out.push_back({x, k.zero()});
        continue;
      }
      auto r = sqrt(fx);
      if (!r) continue;
      FieldElement y1 = *r, y2 = -*r;
      if (y1.encoding() > y2.encoding()) std::swap(y1, y2);
      out.push_back({x, y1});
      out.push_back({x, y2});
    }
  }
  return out;
}

inline ModelPtr base_change(const HyperellipticModel& m, const FieldEmbedding& emb) {
  if (emb.source().get() != m.field().get())
    throw input_error("base_change: embedding source does not match the model field");
  auto lift = [&](const Polynomial& p) {
    std::vector<FieldElement> c;
    c.reserve(p.coeffs().size());
    for (const auto& e : p.coeffs()) c.push_back(emb.apply(e));
    return Polynomial(emb.target().get(), std::move(c));
  };
  return HyperellipticModel::validate(emb.target(), m.genus(), lift(m.f()),
                                      lift(m.h()));
}

// #C(F_{q^j}) including the point at infinity; solution counts only, no point
// materialization
inline std::uint64_t count_points(const HyperellipticModel& m, int j,
                                  std::uint64_t guard = 1000000) {
  if (j < 1) throw input_error("extension degree must be >= 1");
  const FiniteField& k = *m.field();
  unsigned __int128 qj = 1;
  for (int t = 0; t < j; ++t) qj *= k.q();
  if (qj > guard)
    throw resource_error("count_points: q^j exceeds the desk guard");

  ModelPtr mj = m.shared_from_this();
  FieldPtr ext = m.field();
  if (j > 1) {
    ext = make_field(k.p(), k.n() * j);
    auto emb = make_embedding(m.field(), ext);
    mj = base_change(m, emb);
  }
  std::uint64_t count = 1;  // the ramified point at infinity
  const FiniteField& kx = *ext;
  for (std::uint64_t code = 0; code < kx.q(); ++code) {
    FieldElement x = kx.from_encoding(code);
    FieldElement fx = mj->f().eval(x);
    FieldElement hx = mj->h().eval(x);
    if (kx.p() == 2) {
      if (hx.is_zero()) count += 1;
      else if (trace_to_F2(fx / (hx * hx)) == 0) count += 2;
    } else {
      if (fx.is_zero()) count += 1;
      else if (fx.pow((kx.q() - 1) / 2) == kx.one()) count += 2;
    }
  }
  return count;
}

// characteristic-2 exceptional-case invariants (deg h = g)
struct Char2Invariants {
  FieldElement d0, d1;
  FieldElement h_g;            // nonzero
  int epsilon;                 // +1 or -1
  FieldElement lambda2_scale;  // d1 / h_g^2
};

inline Char2Invariants char2_invariants(const HyperellipticModel& m) {
  if (!m.exceptional())
    throw input_error("char2_invariants requires characteristic 2 and deg(h) = g");
  const int g = m.genus();
  FieldElement s = *sqrt(m.f().coeff(2 * g + 2));
  FieldElement d0 = m.f().coeff(2 * g) + s * m.h().coeff(g - 1);
  FieldElement d1 = m.f().coeff(2 * g + 1) + s * m.h().coeff(g);
  FieldElement hg = m.h().coeff(g);
  FieldElement hg2 = hg * hg;
  int eps = trace_to_F2(d0 / hg2) == 0 ? 1 : -1;
  return {d0, d1, hg, eps, d1 / hg2};
}

// H_C = {x : lambda2(x) = -epsilon} with lambda2(x) = (-1)^{tr(x d1/h_g^2)}
inline bool in_H_C(const Char2Invariants& inv, const FieldElement& x) {
  int lambda2 = trace_to_F2(x * inv.lambda2_scale) == 0 ? 1 : -1;
  return lambda2 == -inv.epsilon;
}

}  // namespace picgen
