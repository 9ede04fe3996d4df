// jacobian.hpp -- Pic^0_k(C) arithmetic in Mumford representation.
//
// Classes are reduced pairs (u, v): u monic of degree <= g, deg v < deg u,
// u | v^2 + h v - f. With one ramified point at infinity these representatives
// are unique per class, which gives canonical equality and a finite
// enumerable oracle. Cantor composition/reduction runs on the working model
// (deg f = 2g+1); characteristic-2 models given with deg f = 2g+2 are shifted
// in and out transparently (see HyperellipticModel::working_f).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "picgen/abelian_group.hpp"
#include "picgen/curve.hpp"

namespace picgen {

class MumfordDivisor {
 public:
  MumfordDivisor(ModelPtr model, Polynomial u, Polynomial v)
      : m_(std::move(model)), u_(std::move(u)), v_(std::move(v)) {
    if (!u_.is_monic()) throw input_error("mumford: u must be monic");
    if (u_.degree() > m_->genus())
      throw input_error("mumford: class is not reduced (deg u > g)");
    if (!v_.is_zero() && v_.degree() >= u_.degree())
      throw input_error("mumford: deg v must be below deg u");
    Polynomial rem = (v_ * v_ + m_->h() * v_ - m_->f()) % u_;
    if (!rem.is_zero())
      throw input_error("mumford: u does not divide v^2 + h v - f");
  }

  static MumfordDivisor identity(ModelPtr model) {
    const FiniteField* k = model->field().get();
    return MumfordDivisor(std::move(model),
                          Polynomial::constant(k->one()),
                          Polynomial::zero(k));
  }

  const ModelPtr& model() const { return m_; }
  const Polynomial& u() const { return u_; }
  const Polynomial& v() const { return v_; }
  bool is_identity() const { return u_.degree() == 0; }

  // canonical key: u encodings then v encodings (sizes determine the split)
  std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> key() const {
    return {u_.encodings(), v_.encodings()};
  }

  friend bool operator==(const MumfordDivisor& a, const MumfordDivisor& b) {
    return a.m_.get() == b.m_.get() && a.u_ == b.u_ && a.v_ == b.v_;
  }
  friend bool operator!=(const MumfordDivisor& a, const MumfordDivisor& b) {
    return !(a == b);
  }

 private:
  ModelPtr m_;
  Polynomial u_, v_;
};

namespace detail {

// shift v by s x^{g+1} mod u (its own inverse in characteristic 2)
inline Polynomial shift_v(const HyperellipticModel& m, const Polynomial& u,
                          const Polynomial& v) {
  if (!m.needs_shift()) return v;
  const FiniteField* k = m.field().get();
  std::vector<FieldElement> mono(static_cast<std::size_t>(m.genus()) + 2, k->zero());
  mono.back() = m.y_shift();
  return (v + Polynomial(k, std::move(mono))) % u;
}

// Cantor reduction on the working model; (u, v) semi-reduced, any degree
inline std::pair<Polynomial, Polynomial> reduce_pair(const HyperellipticModel& m,
                                                     Polynomial u, Polynomial v) {
  const Polynomial& f = m.working_f();
  const Polynomial& h = m.h();
  while (u.degree() > m.genus()) {
    Polynomial unew = exact_div(f - v * h - v * v, u);
    Polynomial vnew = (-h - v) % unew;
    u = unew.monic();
    v = std::move(vnew);
  }
  u = u.monic();
  v = v % u;
  return {std::move(u), std::move(v)};
}

}  // namespace detail

inline MumfordDivisor identity(ModelPtr model) {
  return MumfordDivisor::identity(std::move(model));
}

// Cantor composition and reduction
inline MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) {
  if (a.model().get() != b.model().get())
    throw input_error("add: divisors live on different models");
  const HyperellipticModel& m = *a.model();
  const Polynomial& f = m.working_f();
  const Polynomial& h = m.h();

  Polynomial u1 = a.u(), v1 = detail::shift_v(m, a.u(), a.v());
  Polynomial u2 = b.u(), v2 = detail::shift_v(m, b.u(), b.v());

  auto g1 = xgcd(u1, u2);                       // g1.g = e1 u1 + e2 u2
  auto g2 = xgcd(g1.g, v1 + v2 + h);            // d = c1 g1.g + c2 (v1+v2+h)
  const Polynomial& d = g2.g;
  Polynomial s1 = g2.s * g1.s;
  Polynomial s2 = g2.s * g1.t;
  const Polynomial& s3 = g2.t;

  Polynomial u = exact_div(u1 * u2, d * d);
  Polynomial num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f);
  Polynomial v = exact_div(num, d) % u;

  auto [ur, vr] = detail::reduce_pair(m, std::move(u), std::move(v));
  vr = detail::shift_v(m, ur, vr);
  return MumfordDivisor(a.model(), std::move(ur), std::move(vr));
}

inline MumfordDivisor neg(const MumfordDivisor& d) {
  // the hyperelliptic involution acts as v -> (-v - h) mod u in the original
  // coordinates
  Polynomial v = (-d.v() - d.model()->h()) % d.u();
  return MumfordDivisor(d.model(), d.u(), std::move(v));
}

inline MumfordDivisor scalar_mul(const MumfordDivisor& d, std::int64_t mth) {
  MumfordDivisor base = mth < 0 ? neg(d) : d;
  std::uint64_t e = static_cast<std::uint64_t>(mth < 0 ? -mth : mth);
  MumfordDivisor acc = MumfordDivisor::identity(d.model());
  while (e) {
    if (e & 1) acc = add(acc, base);
    if (e >>= 1) base = add(base, base);
  }
  return acc;
}

// phi_C(P) = [P] - [infinity']
inline MumfordDivisor phi(ModelPtr model, const AffinePoint& p) {
  if (!model->on_curve(p)) throw input_error("phi: point not on the curve");
  const FiniteField* k = model->field().get();
  Polynomial u(k, {-p.x, k->one()});
  Polynomial v = Polynomial::constant(p.y);
  return MumfordDivisor(std::move(model), std::move(u), std::move(v));
}

// psi_C on a reduced class in the characteristic-2 exceptional case:
// tr_{k/F_2}((Tv(u) d1 + deg(u) d0) / h_g^2). Valid on Mumford pairs since
// every place in the support has residue degree factor 1 and Tv is additive
// over the factors of u.
inline int psi(const MumfordDivisor& d) {
  const HyperellipticModel& m = *d.model();
  auto inv = char2_invariants(m);  // throws outside the exceptional case
  const FiniteField* k = m.field().get();
  FieldElement tvu = d.u().degree() >= 1 ? tv(d.u()) : k->zero();
  FieldElement degu = (d.u().degree() % 2) ? k->one() : k->zero();
  FieldElement arg = (tvu * inv.d1 + degu * inv.d0) / (inv.h_g * inv.h_g);
  return trace_to_F2(arg);
}

// L-polynomial value at 1 from point counts over F_{q^j}, j = 1..g, via
// Newton's identities; this is the Picard group order.
inline std::uint64_t group_order_via_zeta(const HyperellipticModel& m,
                                          std::uint64_t guard = 1000000) {
  const int g = m.genus();
  const std::int64_t q = static_cast<std::int64_t>(m.field()->q());
  std::vector<std::int64_t> power_sums(static_cast<std::size_t>(g) + 1, 0);
  for (int j = 1; j <= g; ++j) {
    std::int64_t qj = 1;
    for (int t = 0; t < j; ++t) qj *= q;
    std::int64_t nj = static_cast<std::int64_t>(count_points(m, j, guard));
    power_sums[static_cast<std::size_t>(j)] = qj + 1 - nj;  // sum of root powers
  }
  std::vector<std::int64_t> e(static_cast<std::size_t>(g) + 1, 0);
  e[0] = 1;
  for (int mm = 1; mm <= g; ++mm) {
    std::int64_t acc = 0;
    std::int64_t sign = 1;
    for (int i = 1; i <= mm; ++i) {
      acc += sign * e[static_cast<std::size_t>(mm - i)] *
             power_sums[static_cast<std::size_t>(i)];
      sign = -sign;
    }
    if (acc % mm != 0) throw input_error("zeta: Newton identity not integral");
    e[static_cast<std::size_t>(mm)] = acc / mm;
  }
  std::vector<std::int64_t> aa(2 * static_cast<std::size_t>(g) + 1, 0);
  aa[0] = 1;
  std::int64_t sign = -1;
  for (int i = 1; i <= g; ++i) {
    aa[static_cast<std::size_t>(i)] = sign * e[static_cast<std::size_t>(i)];
    sign = -sign;
  }
  std::int64_t qpow = 1;
  for (int i = g - 1; i >= 0; --i) {
    qpow *= q;  // q^{g-i}
    aa[static_cast<std::size_t>(2 * g - i)] = qpow * aa[static_cast<std::size_t>(i)];
  }
  std::int64_t l1 = 0;
  for (auto c : aa) l1 += c;
  if (l1 < 1) throw input_error("zeta: nonpositive class number");
  // loose Weil-interval sanity
  double sq = std::sqrt(static_cast<double>(q));
  double lo = std::pow(sq - 1.0, 2.0 * g), hi = std::pow(sq + 1.0, 2.0 * g);
  if (static_cast<double>(l1) < lo - 1e-6 || static_cast<double>(l1) > hi + 1e-6)
    throw input_error("zeta: class number outside the Weil interval");
  return static_cast<std::uint64_t>(l1);
}

// ---- the brute-force oracle ----

struct PicardTable {
  ModelPtr model;
  std::vector<MumfordDivisor> elements;
  GroupStructure structure;
  std::size_t identity_index = 0;

  std::size_t index_of(const MumfordDivisor& d) const {
    auto it = index_by_key.find(d.key());
    if (it == index_by_key.end())
      throw input_error("divisor not present in the Picard table");
    return it->second;
  }
  std::size_t add_indices(std::size_t a, std::size_t b) const {
    GroupElement s = structure.to_group(a) + structure.to_group(b);
    return structure.to_index(s);
  }

  std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>,
           std::size_t> index_by_key;
};

// Enumerate every reduced pair, check the count against the zeta oracle, and
// recover the abstract group structure through Cantor addition.
inline PicardTable enumerate_picard(ModelPtr model,
                                    std::uint64_t guard = 1000000) {
  const HyperellipticModel& m = *model;
  const FiniteField& k = *m.field();
  const int g = m.genus();
  {
    unsigned __int128 work = 0, qd = 1;
    for (int d = 1; d <= g; ++d) {
      qd *= k.q();
      work += qd * qd;
    }
    if (work > guard)
      throw resource_error("enumerate_picard: search space exceeds the desk guard");
  }

  PicardTable table;
  table.model = model;
  table.elements.push_back(MumfordDivisor::identity(model));
  for (int d = 1; d <= g; ++d) {
    std::uint64_t ucount = 1, vcount = 1;
    for (int t = 0; t < d; ++t) { ucount *= k.q(); vcount *= k.q(); }
    for (std::uint64_t ui = 0; ui < ucount; ++ui) {
      Polynomial u = monic_from_index(&k, d, ui);
      for (std::uint64_t vi = 0; vi < vcount; ++vi) {
        std::vector<std::uint64_t> venc;
        std::uint64_t t = vi;
        for (int j = 0; j < d; ++j) {
          venc.push_back(t % k.q());
          t /= k.q();
        }
        Polynomial v = Polynomial::from_encodings(&k, venc);
        Polynomial rem = (v * v + m.h() * v - m.f()) % u;
        if (!rem.is_zero()) continue;
        table.elements.emplace_back(model, u, v);
      }
    }
  }
  std::uint64_t zeta_order = group_order_via_zeta(m, guard);
  if (table.elements.size() != zeta_order)
    throw input_error("picard enumeration disagrees with the zeta order");

  for (std::size_t i = 0; i < table.elements.size(); ++i)
    table.index_by_key.emplace(table.elements[i].key(), i);

  auto op = [&table](std::size_t a, std::size_t b) {
    return table.index_of(add(table.elements[a], table.elements[b]));
  };

  // add-closure: all pairs at small orders, deterministic sampling above
  const std::size_t n = table.elements.size();
  if (n <= 200) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) op(a, b);
  } else {
    std::uint64_t s = 0x2545F4914F6CDD1DULL;
    for (int iter = 0; iter < 10000; ++iter) {
      s ^= s << 13; s ^= s >> 7; s ^= s << 17;
      std::size_t a = static_cast<std::size_t>(s % n);
      s ^= s << 13; s ^= s >> 7; s ^= s << 17;
      op(a, static_cast<std::size_t>(s % n));
    }
  }

  table.structure = structure_from_table(n, op);
  table.identity_index = table.index_of(MumfordDivisor::identity(model));
  return table;
}

// subgroup generated by the given table indices
inline std::vector<std::size_t> closure_indices(const PicardTable& table,
                                                const std::vector<std::size_t>& gens) {
  std::unordered_set<std::size_t> seen{table.identity_index};
  std::vector<std::size_t> members{table.identity_index};
  std::vector<std::size_t> queue{table.identity_index};
  while (!queue.empty()) {
    std::size_t y = queue.back();
    queue.pop_back();
    for (std::size_t gidx : gens) {
      std::size_t z = table.add_indices(y, gidx);
      if (seen.insert(z).second) {
        members.push_back(z);
        queue.push_back(z);
      }
    }
  }
  return members;
}

// Norm of [P] - [infinity'] from the extension down to k: the reduced
// k-rational class of sum_j [Frob_q^j(P)] - [k':k][infinity'].
//
//   (a) the Frobenius orbit O of P has size e | [k':k];
//   (b) if the involution acts freely on O the orbit class is principal;
//   (c) otherwise the orbit x-coordinates are distinct, so interpolation
//       gives a semi-reduced pair over k' whose coefficients are Frobenius
//       stable, retract to k and reduce with Cantor;
//   (d) multiply by [k':k]/e for the repeated Galois conjugates.
inline MumfordDivisor from_orbit(const ModelPtr& model_k, const ModelPtr& model_ext,
                                 const AffinePoint& p, const FieldEmbedding& emb) {
  const HyperellipticModel& cext = *model_ext;
  if (!cext.on_curve(p)) throw input_error("from_orbit: point not on the curve");
  const std::uint64_t q = emb.source()->q();
  const int rel_deg = emb.relative_degree();

  std::vector<AffinePoint> orbit{p};
  for (AffinePoint cur{p.x.pow(q), p.y.pow(q)}; cur != p;
       cur = AffinePoint{cur.x.pow(q), cur.y.pow(q)}) {
    orbit.push_back(cur);
    if (static_cast<int>(orbit.size()) > rel_deg)
      throw input_error("from_orbit: orbit exceeds the extension degree");
  }
  const int e = static_cast<int>(orbit.size());
  if (rel_deg % e != 0)
    throw input_error("from_orbit: orbit size does not divide the degree");

  AffinePoint conj = involution(cext, p);
  if (conj != p) {
    for (const auto& qpt : orbit)
      if (qpt == conj)
        return MumfordDivisor::identity(model_k);  // conjugate-paired orbit
  }

  // distinct x-coordinates (paired orbits were dispatched above)
  for (int a = 0; a < e; ++a)
    for (int b = a + 1; b < e; ++b)
      if (orbit[static_cast<std::size_t>(a)].x == orbit[static_cast<std::size_t>(b)].x)
        throw input_error("from_orbit: repeated x-coordinate in an unpaired orbit");

  const FiniteField* kx = cext.field().get();
  Polynomial mpoly = Polynomial::constant(kx->one());
  for (const auto& qpt : orbit)
    mpoly = mpoly * Polynomial(kx, {-qpt.x, kx->one()});
  // Lagrange interpolation through (x(Q), y(Q))
  Polynomial w = Polynomial::zero(kx);
  for (int a = 0; a < e; ++a) {
    Polynomial numer = Polynomial::constant(kx->one());
    FieldElement denom = kx->one();
    for (int b = 0; b < e; ++b) {
      if (b == a) continue;
      numer = numer * Polynomial(kx, {-orbit[static_cast<std::size_t>(b)].x, kx->one()});
      denom = denom * (orbit[static_cast<std::size_t>(a)].x -
                       orbit[static_cast<std::size_t>(b)].x);
    }
    w = w + (orbit[static_cast<std::size_t>(a)].y / denom) * numer;
  }

  const FiniteField* kbase = model_k->field().get();
  auto retract_poly = [&](const Polynomial& poly) {
    std::vector<FieldElement> c;
    c.reserve(poly.coeffs().size());
    for (const auto& coeff : poly.coeffs()) {
      auto r = emb.retract(coeff);
      if (!r)
        throw input_error("from_orbit: Galois-stable coefficient failed to retract");
      c.push_back(*r);
    }
    return Polynomial(kbase, std::move(c));
  };
  Polynomial u = retract_poly(mpoly);
  Polynomial v = retract_poly(w);
  // semi-reduced over k by construction; shift into working coordinates,
  // reduce, shift back
  v = detail::shift_v(*model_k, u, v);
  auto [ur, vr] = detail::reduce_pair(*model_k, std::move(u), std::move(v));
  vr = detail::shift_v(*model_k, ur, vr);
  MumfordDivisor orbit_class(model_k, std::move(ur), std::move(vr));
  return scalar_mul(orbit_class, rel_deg / e);
}

inline MumfordDivisor from_orbit(const ModelPtr& model_k, const AffinePoint& p,
                                 const FieldEmbedding& emb) {
  return from_orbit(model_k, base_change(*model_k, emb), p, emb);
}

}  // namespace picgen
