// abelian_group.hpp -- finite abelian groups with explicit invariant factors,
// characters, discrete Fourier coefficients, the shape parameter, and interval
// constructions.
//
// structure_from_table recovers the invariant-factor decomposition of a group
// given only an opaque multiplication oracle, via a greedy generating set and
// the Smith normal form of the relation lattice, and returns coordinate maps
// in both directions.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "picgen/finite_field.hpp"

namespace picgen {

class FinAbGroup;
using GroupPtr = std::shared_ptr<const FinAbGroup>;

class GroupElement {
 public:
  GroupElement() : g_(nullptr) {}
  GroupElement(const FinAbGroup* g, std::vector<std::int64_t> coords);

  const FinAbGroup& group() const { return *g_; }
  const FinAbGroup* group_ptr() const { return g_; }
  const std::vector<std::int64_t>& coords() const { return c_; }
  std::uint64_t code() const;  // mixed-radix encoding, used for hashing/order

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.g_ == b.g_ && a.c_ == b.c_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  GroupElement operator-() const;
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    return a + (-b);
  }

 private:
  const FinAbGroup* g_;
  std::vector<std::int64_t> c_;
};

class FinAbGroup : public std::enable_shared_from_this<FinAbGroup> {
 public:
  // factors are normalized: entries of 1 dropped; divisibility chain required
  static GroupPtr make(std::vector<std::int64_t> invariant_factors) {
    std::vector<std::int64_t> fs;
    for (auto d : invariant_factors) {
      if (d < 1) throw input_error("invariant factor must be >= 1");
      if (d > 1) fs.push_back(d);
    }
    for (std::size_t i = 0; i + 1 < fs.size(); ++i)
      if (fs[i + 1] % fs[i] != 0)
        throw input_error("invariant factors must form a divisibility chain");
    return GroupPtr(new FinAbGroup(std::move(fs)));
  }

  const std::vector<std::int64_t>& invariant_factors() const { return d_; }
  std::uint64_t order() const { return order_; }
  std::size_t rank() const { return d_.size(); }

  GroupElement identity() const {
    return GroupElement(this, std::vector<std::int64_t>(d_.size(), 0));
  }
  GroupElement element(std::vector<std::int64_t> coords) const {
    return GroupElement(this, std::move(coords));
  }
  GroupElement element_by_code(std::uint64_t code) const {
    std::vector<std::int64_t> c(d_.size());
    for (std::size_t j = 0; j < d_.size(); ++j) {
      c[j] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(d_[j]));
      code /= static_cast<std::uint64_t>(d_[j]);
    }
    return GroupElement(this, std::move(c));
  }

 private:
  explicit FinAbGroup(std::vector<std::int64_t> d) : d_(std::move(d)) {
    order_ = 1;
    for (auto x : d_) order_ *= static_cast<std::uint64_t>(x);
  }
  std::vector<std::int64_t> d_;
  std::uint64_t order_;
};

inline GroupElement::GroupElement(const FinAbGroup* g,
                                  std::vector<std::int64_t> coords)
    : g_(g), c_(std::move(coords)) {
  const auto& d = g->invariant_factors();
  if (c_.size() != d.size()) throw input_error("coordinate rank mismatch");
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = mod_pos(c_[j], d[j]);
}
inline std::uint64_t GroupElement::code() const {
  const auto& d = g_->invariant_factors();
  std::uint64_t acc = 0;
  for (std::size_t j = c_.size(); j-- > 0;)
    acc = acc * static_cast<std::uint64_t>(d[j]) + static_cast<std::uint64_t>(c_[j]);
  return acc;
}
inline GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (a.g_ != b.g_) throw input_error("group mismatch");
  std::vector<std::int64_t> c(a.c_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.c_[j] + b.c_[j];
  return GroupElement(a.g_, std::move(c));
}
inline GroupElement GroupElement::operator-() const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = -c_[j];
  return GroupElement(g_, std::move(c));
}

// chi(g) = exp(2*pi*i * sum_j e_j g_j / d_j)
class Character {
 public:
  Character(const FinAbGroup* g, std::vector<std::int64_t> exponents)
      : g_(g), e_(std::move(exponents)) {
    const auto& d = g->invariant_factors();
    if (e_.size() != d.size()) throw input_error("character rank mismatch");
    for (std::size_t j = 0; j < e_.size(); ++j) e_[j] = mod_pos(e_[j], d[j]);
  }
  static Character trivial(const FinAbGroup* g) {
    return Character(g, std::vector<std::int64_t>(g->rank(), 0));
  }
  static Character by_code(const FinAbGroup* g, std::uint64_t code) {
    return Character(g, g->element_by_code(code).coords());
  }

  const FinAbGroup* group_ptr() const { return g_; }
  const std::vector<std::int64_t>& exponents() const { return e_; }
  bool is_trivial() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int64_t v) { return v == 0; });
  }

  std::complex<double> value(const GroupElement& x) const {
    if (x.group_ptr() != g_) throw input_error("character/element group mismatch");
    const auto& d = g_->invariant_factors();
    double angle = 0.0;
    for (std::size_t j = 0; j < e_.size(); ++j)
      angle += static_cast<double>(mod_pos(e_[j] * x.coords()[j], d[j])) /
               static_cast<double>(d[j]);
    angle = 2.0 * std::numbers::pi * angle;
    return {std::cos(angle), std::sin(angle)};
  }
  // chi(x^{-1}) = conj(chi(x))
  std::complex<double> value_inv(const GroupElement& x) const {
    return std::conj(value(x));
  }

  friend Character operator*(const Character& a, const Character& b) {
    if (a.g_ != b.g_) throw input_error("character group mismatch");
    std::vector<std::int64_t> e(a.e_.size());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = a.e_[j] + b.e_[j];
    return Character(a.g_, std::move(e));
  }
  friend bool operator==(const Character& a, const Character& b) {
    return a.g_ == b.g_ && a.e_ == b.e_;
  }

 private:
  const FinAbGroup* g_;
  std::vector<std::int64_t> e_;
};

// deduplicated list of elements; insertion order is preserved
class Subset {
 public:
  explicit Subset(const FinAbGroup* g) : g_(g) {}
  Subset(const FinAbGroup* g, const std::vector<GroupElement>& elems) : g_(g) {
    for (const auto& e : elems) insert(e);
  }

  void insert(const GroupElement& e) {
    if (e.group_ptr() != g_) throw input_error("subset/element group mismatch");
    if (seen_.insert(e.code()).second) elems_.push_back(e);
  }
  bool contains(const GroupElement& e) const { return seen_.count(e.code()) > 0; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  const FinAbGroup* group_ptr() const { return g_; }

 private:
  const FinAbGroup* g_;
  std::vector<GroupElement> elems_;
  std::unordered_set<std::uint64_t> seen_;
};

// f = sum over the support of c_g * g
struct GroupRingFunction {
  Subset support;
  std::vector<std::complex<double>> coefficients;  // aligned with support order

  static GroupRingFunction indicator(const Subset& s) {
    return {s, std::vector<std::complex<double>>(s.size(), {1.0, 0.0})};
  }
};

// f_chi = sum_g c_g chi(g^{-1})
inline std::complex<double> fourier_coefficient(const GroupRingFunction& f,
                                                const Character& chi) {
  if (f.support.group_ptr() != chi.group_ptr())
    throw input_error("group mismatch in fourier_coefficient");
  std::complex<double> acc = 0.0;
  const auto& el = f.support.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    acc += f.coefficients[i] * chi.value_inv(el[i]);
  return acc;
}

// (#S/#G) * sum_chi |f_chi| / |f_chi0| for the supplied witness; a certified
// upper bound on sh_G(S)
inline double shape_upper_bound(const Subset& s, const GroupRingFunction& f) {
  const FinAbGroup* g = s.group_ptr();
  if (f.support.group_ptr() != g)
    throw input_error("witness group mismatch");
  for (const auto& e : f.support.elements())
    if (!s.contains(e)) throw input_error("witness not supported on S");
  Character chi0 = Character::trivial(g);
  double denom = std::abs(fourier_coefficient(f, chi0));
  if (denom < 1e-12) throw input_error("witness has vanishing trivial coefficient");
  double total = 0.0;
  for (std::uint64_t code = 0; code < g->order(); ++code)
    total += std::abs(fourier_coefficient(f, Character::by_code(g, code)));
  return (static_cast<double>(s.size()) / static_cast<double>(g->order())) *
         total / denom;
}

// Witness-functional minimization via ADMM on min ||z||_1 s.t. z = F c,
// sum(c) = 1, where F is the character-value matrix on the support. The
// character columns are orthogonal (F^H F = #G * I), which makes the c-update
// closed-form. Every iterate is itself a witness with f_chi0 = 1, so the
// reported value is always a sound upper bound on sh_G(S), converged or not.
struct ShapeEstimate {
  double value;
  GroupRingFunction witness;
};

inline ShapeEstimate shape_estimate_with_witness(const Subset& s,
                                                 double tol = 1e-4,
                                                 int max_iter = 10000) {
  if (s.size() == 0) throw input_error("shape of the empty set");
  const FinAbGroup* g = s.group_ptr();
  if (g->order() > 4096) throw resource_error("shape_estimate: group order above 4096");
  const std::size_t nS = s.size();
  const std::uint64_t nG = g->order();

  // character table on the support: F[chi][s] = chi(s^{-1})
  std::vector<std::vector<std::complex<double>>> F(nG);
  for (std::uint64_t code = 0; code < nG; ++code) {
    Character chi = Character::by_code(g, code);
    auto& row = F[code];
    row.reserve(nS);
    for (const auto& e : s.elements()) row.push_back(chi.value_inv(e));
  }

  auto apply_F = [&](const std::vector<std::complex<double>>& c) {
    std::vector<std::complex<double>> out(nG, 0.0);
    for (std::uint64_t i = 0; i < nG; ++i) {
      std::complex<double> acc = 0.0;
      for (std::size_t j = 0; j < nS; ++j) acc += F[i][j] * c[j];
      out[i] = acc;
    }
    return out;
  };
  auto apply_Fh = [&](const std::vector<std::complex<double>>& z) {
    std::vector<std::complex<double>> out(nS, 0.0);
    for (std::uint64_t i = 0; i < nG; ++i)
      for (std::size_t j = 0; j < nS; ++j) out[j] += std::conj(F[i][j]) * z[i];
    return out;
  };
  auto objective = [&](const std::vector<std::complex<double>>& fc) {
    double t = 0.0;
    for (const auto& v : fc) t += std::abs(v);
    return (static_cast<double>(nS) / static_cast<double>(nG)) * t;
  };

  // deterministic start: the indicator of S normalized to f_chi0 = 1
  std::vector<std::complex<double>> c(nS, 1.0 / static_cast<double>(nS));
  std::vector<std::complex<double>> z = apply_F(c);
  std::vector<std::complex<double>> u(nG, 0.0);
  double best = objective(z);
  std::vector<std::complex<double>> best_c = c;

  const double rho = 1.0;
  int stall = 0;
  for (int it = 0; it < max_iter && stall < 300; ++it) {
    std::vector<std::complex<double>> fc = apply_F(c);
    // z-update: complex soft threshold of Fc + u at 1/rho
    for (std::uint64_t i = 0; i < nG; ++i) {
      std::complex<double> w = fc[i] + u[i];
      double a = std::abs(w);
      z[i] = (a > 1.0 / rho) ? w * ((a - 1.0 / rho) / a) : 0.0;
    }
    // c-update: least squares against z - u, then project onto sum(c) = 1
    std::vector<std::complex<double>> rhs(nG);
    for (std::uint64_t i = 0; i < nG; ++i) rhs[i] = z[i] - u[i];
    std::vector<std::complex<double>> chat = apply_Fh(rhs);
    std::complex<double> mean = 0.0;
    for (auto& v : chat) {
      v /= static_cast<double>(nG);
      mean += v;
    }
    mean = (mean - 1.0) / static_cast<double>(nS);
    for (auto& v : chat) v -= mean;
    c = std::move(chat);
    // dual update
    fc = apply_F(c);
    for (std::uint64_t i = 0; i < nG; ++i) u[i] += fc[i] - z[i];

    double v = objective(fc);
    if (v < best - 1e-12) {
      best = v;
      best_c = c;
      stall = 0;
    } else {
      ++stall;
    }
    if (best <= 1.0 + tol * 0.01) break;  // sh >= 1 always; cannot do better
  }
  GroupRingFunction w{s, best_c};
  return {best, w};
}

inline double shape_estimate(const Subset& s, double tol = 1e-4,
                             int max_iter = 10000) {
  return shape_estimate_with_witness(s, tol, max_iter).value;
}

// true iff S - s0 is a subgroup (equivalently S is a coset of a subgroup)
inline bool is_coset(const Subset& s) {
  if (s.size() == 0) throw input_error("is_coset of the empty set");
  const GroupElement& s0 = s.elements().front();
  std::unordered_set<std::uint64_t> t;
  std::vector<GroupElement> shifted;
  shifted.reserve(s.size());
  for (const auto& e : s.elements()) {
    GroupElement d = e - s0;
    t.insert(d.code());
    shifted.push_back(d);
  }
  for (const auto& a : shifted)
    for (const auto& b : shifted)
      if (!t.count((a + b).code())) return false;
  return true;
}

// {start, ..., start+length-1} mod n
inline Subset standard_interval(std::int64_t n, std::int64_t start,
                                std::int64_t length, const GroupPtr& g) {
  if (length < 1 || length > n)
    throw input_error("interval length out of range");
  Subset s(g.get());
  for (std::int64_t j = 0; j < length; ++j)
    s.insert(g->element({mod_pos(start + j, n)}));
  if (s.size() != static_cast<std::size_t>(length))
    throw input_error("interval construction lost elements");
  return s;
}
inline std::pair<GroupPtr, Subset> standard_interval(std::int64_t n,
                                                     std::int64_t start,
                                                     std::int64_t length) {
  if (n < 1) throw input_error("modulus must be >= 1");
  GroupPtr g = FinAbGroup::make({n});
  Subset s = standard_interval(n, start, length, g);
  return {g, std::move(s)};
}

inline Subset translate(const Subset& s, const GroupElement& b) {
  Subset out(s.group_ptr());
  for (const auto& e : s.elements()) out.insert(e + b);
  return out;
}

// ---- the additive group of a finite field, and intervals inside it ----

inline GroupPtr additive_group(const FiniteField& f) {
  return FinAbGroup::make(std::vector<std::int64_t>(
      static_cast<std::size_t>(f.n()), f.p()));
}
inline GroupElement to_additive(const GroupPtr& g, const FieldElement& a) {
  return g->element(a.coeffs());
}
inline Subset to_additive_subset(const GroupPtr& g,
                                 const std::vector<FieldElement>& elems) {
  Subset s(g.get());
  for (const auto& a : elems) s.insert(to_additive(g, a));
  return s;
}

// Interval of #S = c*p^i inside the span of the given F_p-basis vectors
// (Lemma-style construction: W = first i+1 basis vectors, S = preimage under
// the functional of a length-c standard interval of F_p).
inline std::vector<FieldElement> interval_in_span(
    const FiniteField& f, const std::vector<FieldElement>& basis, int c, int i,
    const std::optional<std::vector<std::int64_t>>& functional = std::nullopt,
    std::int64_t start = 0) {
  const std::int64_t p = f.p();
  const int dim = static_cast<int>(basis.size());
  if (c == 1 && i == dim) {
    // degenerate case: the whole span
    std::vector<FieldElement> all;
    std::vector<std::int64_t> a(static_cast<std::size_t>(dim), 0);
    for (;;) {
      FieldElement acc = f.zero();
      for (int j = 0; j < dim; ++j)
        if (a[static_cast<std::size_t>(j)] != 0)
          acc = acc + f.from_int(a[static_cast<std::size_t>(j)]) *
                          basis[static_cast<std::size_t>(j)];
      all.push_back(acc);
      int j = 0;
      while (j < dim && ++a[static_cast<std::size_t>(j)] == p) {
        a[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == dim) break;
    }
    return all;
  }
  if (c < 1 || c > p - 1) throw input_error("interval: c out of range");
  if (i < 0 || i >= dim) throw input_error("interval: exponent out of range");
  std::vector<std::int64_t> phi;
  if (functional) {
    phi = *functional;
    if (phi.size() != static_cast<std::size_t>(i) + 1)
      throw input_error("functional must have i+1 coefficients");
    bool nonzero = false;
    for (auto& t : phi) {
      t = mod_pos(t, p);
      nonzero = nonzero || t != 0;
    }
    if (!nonzero) throw input_error("functional must be nonzero");
  } else {
    phi.assign(static_cast<std::size_t>(i) + 1, 0);
    phi[static_cast<std::size_t>(i)] = 1;  // project to the last W-coordinate
  }
  std::vector<std::int64_t> block(static_cast<std::size_t>(c));
  for (int j = 0; j < c; ++j)
    block[static_cast<std::size_t>(j)] = mod_pos(start + j, p);
  std::vector<FieldElement> out;
  std::vector<std::int64_t> a(static_cast<std::size_t>(i) + 1, 0);
  for (;;) {
    std::int64_t val = 0;
    for (int j = 0; j <= i; ++j)
      val = (val + phi[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(j)]) % p;
    if (std::find(block.begin(), block.end(), val) != block.end()) {
      FieldElement acc = f.zero();
      for (int j = 0; j <= i; ++j)
        if (a[static_cast<std::size_t>(j)] != 0)
          acc = acc + f.from_int(a[static_cast<std::size_t>(j)]) *
                          basis[static_cast<std::size_t>(j)];
      out.push_back(acc);
    }
    int j = 0;
    while (j <= i && ++a[static_cast<std::size_t>(j)] == p) {
      a[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j > i) break;
  }
  std::uint64_t expected = static_cast<std::uint64_t>(c);
  for (int j = 0; j < i; ++j) expected *= static_cast<std::uint64_t>(p);
  if (out.size() != expected)
    throw input_error("interval construction produced wrong cardinality");
  return out;
}

// the spec form: the ambient space with its coordinate basis
inline std::vector<FieldElement> interval_in_vector_space(
    const FiniteField& f, int c, int i,
    const std::optional<std::vector<std::int64_t>>& functional = std::nullopt,
    std::int64_t start = 0) {
  std::vector<FieldElement> basis;
  basis.reserve(static_cast<std::size_t>(f.n()));
  for (int j = 0; j < f.n(); ++j) {
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(f.n()), 0);
    coeffs[static_cast<std::size_t>(j)] = 1;
    basis.push_back(f.from_coeffs(std::move(coeffs)));
  }
  return interval_in_span(f, basis, c, i, functional, start);
}

// ---- structure recovery from a multiplication oracle ----

struct GroupStructure {
  GroupPtr group;
  // table index -> coordinates in the invariant-factor decomposition
  std::vector<std::vector<std::int64_t>> coords_of;
  // coordinate code -> table index
  std::unordered_map<std::uint64_t, std::size_t> index_of_code;
  std::size_t identity_index = 0;

  GroupElement to_group(std::size_t idx) const {
    return group->element(coords_of[idx]);
  }
  std::size_t to_index(const GroupElement& e) const {
    auto it = index_of_code.find(e.code());
    if (it == index_of_code.end())
      throw input_error("element not present in structure map");
    return it->second;
  }
};

namespace detail {

// Smith normal form of the k x k integer matrix M (columns span the relation
// lattice). Returns diag entries; tracks U and U^{-1} with M' = U M V.
struct SnfResult {
  std::vector<std::int64_t> diag;
  std::vector<std::vector<std::int64_t>> U, Uinv;
};

inline SnfResult smith_normal_form(std::vector<std::vector<std::int64_t>> M) {
  const std::size_t k = M.size();
  std::vector<std::vector<std::int64_t>> U(k, std::vector<std::int64_t>(k, 0));
  auto Uinv = U;
  for (std::size_t i = 0; i < k; ++i) U[i][i] = Uinv[i][i] = 1;

  auto row_swap = [&](std::size_t a, std::size_t b) {
    std::swap(M[a], M[b]);
    std::swap(U[a], U[b]);
    for (std::size_t r = 0; r < k; ++r) std::swap(Uinv[r][a], Uinv[r][b]);
  };
  auto row_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    // row dst -= q * row src
    for (std::size_t j = 0; j < k; ++j) M[dst][j] -= q * M[src][j];
    for (std::size_t j = 0; j < k; ++j) U[dst][j] -= q * U[src][j];
    for (std::size_t r = 0; r < k; ++r) Uinv[r][src] += q * Uinv[r][dst];
  };
  auto row_negate = [&](std::size_t a) {
    for (std::size_t j = 0; j < k; ++j) M[a][j] = -M[a][j];
    for (std::size_t j = 0; j < k; ++j) U[a][j] = -U[a][j];
    for (std::size_t r = 0; r < k; ++r) Uinv[r][a] = -Uinv[r][a];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < k; ++i) std::swap(M[i][a], M[i][b]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t i = 0; i < k; ++i) M[i][dst] -= q * M[i][src];
  };

  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // locate minimal nonzero entry in the trailing submatrix
      std::size_t pi = t, pj = t;
      std::int64_t pv = 0;
      for (std::size_t i = t; i < k; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (M[i][j] != 0 &&
              (pv == 0 || std::llabs(M[i][j]) < std::llabs(pv))) {
            pv = M[i][j];
            pi = i;
            pj = j;
          }
      if (pv == 0) break;  // trailing block zero
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);
      if (M[t][t] < 0) row_negate(t);
      bool clean = true;
      for (std::size_t i = t + 1; i < k; ++i)
        if (M[i][t] != 0) {
          std::int64_t q = M[i][t] / M[t][t];
          row_axpy(i, t, q);
          if (M[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < k; ++j)
        if (M[t][j] != 0) {
          std::int64_t q = M[t][j] / M[t][t];
          col_axpy(j, t, q);
          if (M[t][j] != 0) clean = false;
        }
      if (clean) {
        bool zeros = true;
        for (std::size_t i = t + 1; i < k && zeros; ++i) zeros = M[i][t] == 0;
        for (std::size_t j = t + 1; j < k && zeros; ++j) zeros = M[t][j] == 0;
        if (zeros) break;
      }
    }
  }
  // enforce the divisibility chain d_t | d_{t+1}
  for (;;) {
    bool fixed = true;
    for (std::size_t t = 0; t + 1 < k; ++t) {
      std::int64_t a = M[t][t], b = M[t + 1][t + 1];
      if (a != 0 && b % a != 0) {
        fixed = false;
        // fold column t+1 into column t and re-reduce the 2x2 block
        col_axpy(t, t + 1, -1);
        for (;;) {
          if (M[t + 1][t] == 0) break;
          std::int64_t q = M[t][t] == 0 ? 0 : M[t + 1][t] / M[t][t];
          if (M[t][t] != 0) row_axpy(t + 1, t, q);
          if (M[t + 1][t] != 0) row_swap(t, t + 1);
        }
        // clear the fill-in at (t, t+1)
        if (M[t][t] != 0 && M[t][t + 1] != 0) {
          std::int64_t q = M[t][t + 1] / M[t][t];
          col_axpy(t + 1, t, q);
        }
        if (M[t][t] < 0) row_negate(t);
        if (M[t + 1][t + 1] < 0) row_negate(t + 1);
      }
    }
    if (fixed) break;
  }
  for (std::size_t t = 0; t < k; ++t)
    if (M[t][t] < 0) row_negate(t);

  SnfResult res;
  res.diag.resize(k);
  for (std::size_t t = 0; t < k; ++t) res.diag[t] = M[t][t];
  res.U = std::move(U);
  res.Uinv = std::move(Uinv);
  return res;
}

}  // namespace detail

// Recover the invariant-factor decomposition of an abelian group presented as
// indices 0..m-1 with a product oracle. The oracle must be total, commutative
// and closed; violations surface as input errors.
inline GroupStructure structure_from_table(
    std::size_t m, const std::function<std::size_t(std::size_t, std::size_t)>& op) {
  if (m == 0) throw input_error("empty element list");
  if (m > 100000) throw resource_error("structure_from_table: table too large");
  auto checked_op = [&](std::size_t a, std::size_t b) {
    std::size_t r = op(a, b);
    if (r >= m) throw input_error("operation left the element list (not closed)");
    return r;
  };

  // identity: walk powers of element 0 until the cycle returns
  std::size_t identity = 0;
  if (m > 1) {
    std::size_t prev = 0, cur = checked_op(0, 0);
    while (cur != 0) {
      prev = cur;
      cur = checked_op(cur, 0);
    }
    identity = prev;  // 0^(ord) with 0^(ord+1) = 0
  }
  for (std::size_t x = 0; x < m; ++x)
    if (checked_op(identity, x) != x)
      throw input_error("no two-sided identity found (not a group table?)");

  // greedy generators with coordinate bookkeeping
  std::vector<std::size_t> gens;
  std::vector<std::vector<std::int64_t>> rep(m);  // exponent vector per element
  std::vector<char> known(m, 0);
  known[identity] = 1;
  std::vector<std::size_t> members{identity};
  while (members.size() < m) {
    std::size_t x = 0;
    while (known[x]) ++x;
    gens.push_back(x);
    for (auto& v : rep) v.resize(gens.size(), 0);
    // multiply the current subgroup by powers of x
    std::vector<std::size_t> frontier = members;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t y : frontier) {
        std::size_t z = checked_op(y, x);
        if (!known[z]) {
          known[z] = 1;
          rep[z] = rep[y];
          rep[z].back() += 1;
          members.push_back(z);
          next.push_back(z);
        }
      }
      frontier = std::move(next);
    }
  }
  const std::size_t k = gens.size();

  GroupStructure out;
  if (k == 0) {
    out.group = FinAbGroup::make({});
    out.coords_of.assign(1, {});
    out.index_of_code[0] = identity;
    out.identity_index = identity;
    return out;
  }

  // relation lattice: for every (y, j), rep(y) + e_j - rep(y * g_j)
  // reduced incrementally into a row-echelon basis over Z
  std::vector<std::vector<std::int64_t>> basis;  // rows with pivot order
  std::vector<int> pivot_of_row;
  auto reduce_insert = [&](std::vector<std::int64_t> v) {
    for (;;) {
      int pos = -1;
      for (std::size_t j = 0; j < k; ++j)
        if (v[j] != 0) { pos = static_cast<int>(j); break; }
      if (pos < 0) return;
      int found = -1;
      for (std::size_t r = 0; r < basis.size(); ++r)
        if (pivot_of_row[r] == pos) { found = static_cast<int>(r); break; }
      if (found < 0) {
        if (v[static_cast<std::size_t>(pos)] < 0)
          for (auto& t : v) t = -t;
        basis.push_back(std::move(v));
        pivot_of_row.push_back(pos);
        return;
      }
      auto& b = basis[static_cast<std::size_t>(found)];
      std::int64_t bv = b[static_cast<std::size_t>(pos)];
      std::int64_t vv = v[static_cast<std::size_t>(pos)];
      std::int64_t q = vv / bv;
      for (std::size_t j = 0; j < k; ++j) v[j] -= q * b[j];
      if (v[static_cast<std::size_t>(pos)] != 0) std::swap(b, v);
    }
  };
  for (std::size_t y = 0; y < m; ++y) {
    if (!known[y]) continue;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t z = checked_op(y, gens[j]);
      std::vector<std::int64_t> delta = rep[y];
      delta[j] += 1;
      for (std::size_t t = 0; t < k; ++t) delta[t] -= rep[z][t];
      reduce_insert(std::move(delta));
    }
  }
  if (basis.size() != k)
    throw input_error("relation lattice is not full rank (oracle not a finite group?)");

  // columns of A span the lattice: A = basis^T
  std::vector<std::vector<std::int64_t>> A(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < k; ++j) A[j][r] = basis[r][j];
  auto snf = detail::smith_normal_form(std::move(A));

  std::vector<std::int64_t> factors = snf.diag;
  std::uint64_t prod = 1;
  for (auto d : factors) {
    if (d <= 0) throw input_error("degenerate invariant factor");
    prod *= static_cast<std::uint64_t>(d);
  }
  if (prod != m)
    throw input_error("relation lattice index does not match table size");

  out.group = FinAbGroup::make(factors);
  const auto& dnz = out.group->invariant_factors();
  // positions of nontrivial factors within snf.diag
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < k; ++t)
    if (snf.diag[t] > 1) keep.push_back(t);
  if (keep.size() != dnz.size())
    throw input_error("factor bookkeeping mismatch");

  out.coords_of.assign(m, {});
  for (std::size_t y = 0; y < m; ++y) {
    if (!known[y]) throw input_error("oracle element unreachable from generators");
    std::vector<std::int64_t> w(dnz.size(), 0);
    for (std::size_t tt = 0; tt < keep.size(); ++tt) {
      std::size_t t = keep[tt];
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += snf.U[t][j] * rep[y][j];
      w[tt] = mod_pos(acc, dnz[tt]);
    }
    out.coords_of[y] = std::move(w);
  }
  out.identity_index = identity;
  for (std::size_t y = 0; y < m; ++y) {
    std::uint64_t code = out.group->element(out.coords_of[y]).code();
    auto [it, fresh] = out.index_of_code.emplace(code, y);
    (void)it;
    if (!fresh) throw input_error("coordinate map is not injective");
  }
  return out;
}

}  // namespace picgen
