// finite_field.hpp -- exact arithmetic in F_p and F_{p^n}.
//
// Fields are interned: make_field(p, n) always returns the same object for the
// same arguments, carrying the canonically smallest irreducible modulus (see
// canonical ordering below), so every derived quantity is reproducible.
//
// Canonical ordering: a coefficient vector (constant term first) is read as a
// base-p integer; "first"/"smallest" everywhere means smallest such integer.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <vector>

#include "picgen/numeric.hpp"

namespace picgen {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// run counters for the cost accounting in GenRunReport
namespace opcount {
inline thread_local std::uint64_t field_mults = 0;
inline thread_local std::uint64_t sqrt_calls = 0;
inline thread_local std::uint64_t artin_schreier_calls = 0;
inline void reset() { field_mults = sqrt_calls = artin_schreier_calls = 0; }
}  // namespace opcount

namespace detail {
// dense polynomials over F_p as int64 coefficient vectors, constant term first;
// used only for modulus construction before FiniteField exists
using PVec = std::vector<std::int64_t>;

inline void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PVec pmulmod(const PVec& a, const PVec& b, const PVec& m, std::int64_t p) {
  // m monic; result reduced mod m
  if (a.empty() || b.empty()) return {};
  PVec c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  const std::size_t n = m.size() - 1;
  for (std::size_t i = c.size(); i-- > n;) {
    std::int64_t t = c[i] % p;
    if (t == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      c[i - n + j] = mod_pos(c[i - n + j] - t * m[j], p);
    c[i] = 0;
  }
  c.resize(n);
  ptrim(c);
  return c;
}

inline PVec ppowmod(PVec base, std::uint64_t e, const PVec& m, std::int64_t p) {
  PVec r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline PVec pgcd(PVec a, PVec b, std::int64_t p) {
  ptrim(a); ptrim(b);
  while (!b.empty()) {
    // a mod b
    std::int64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
      std::int64_t f = a.back() % p;
      if (f != 0) {
        std::int64_t t = f * lead_inv % p;
        std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
          a[off + j] = mod_pos(a[off + j] - t * b[j], p);
      }
      a.pop_back();
      ptrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// monic m of degree n is irreducible over F_p iff it shares no root with any
// F_{p^d}, d <= n/2, i.e. gcd(m, x^{p^d} - x) = 1 for all such d
inline bool is_irreducible(const PVec& m, std::int64_t p) {
  const int n = static_cast<int>(m.size()) - 1;
  if (n == 1) return true;
  PVec xp{0, 1};
  for (int d = 1; d <= n / 2; ++d) {
    xp = ppowmod(xp, static_cast<std::uint64_t>(p), m, p);
    PVec diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_pos(diff[1] - 1, p);
    ptrim(diff);
    PVec g = pgcd(diff, m, p);
    if (g.size() != 1) return false;
  }
  return true;
}
}  // namespace detail

class FieldElement;

class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t q() const { return q_; }
  // monic irreducible of degree n, constant term first, length n+1
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;          // prime-subfield element
  FieldElement from_coeffs(std::vector<std::int64_t> c) const;
  FieldElement from_encoding(std::uint64_t code) const; // canonical base-p integer
  FieldElement generator() const;                       // the class of x

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
  }

  static FieldPtr make(std::int64_t p, int n);
  static FieldPtr make(std::int64_t p, int n, std::vector<std::int64_t> modulus);

 private:
  FiniteField(std::int64_t p, int n, std::vector<std::int64_t> modulus,
              std::uint64_t q)
      : p_(p), n_(n), q_(q), modulus_(std::move(modulus)) {}

  std::int64_t p_;
  int n_;
  std::uint64_t q_;
  std::vector<std::int64_t> modulus_;

  friend class FieldElement;
};

class FieldElement {
 public:
  FieldElement() : f_(nullptr) {}
  FieldElement(const FiniteField* f, std::vector<std::int64_t> c)
      : f_(f), c_(std::move(c)) {
    c_.resize(static_cast<std::size_t>(f->n()), 0);
    for (auto& x : c_) x = mod_pos(x, f->p());
  }

  const FiniteField& field() const { return *f_; }
  const FiniteField* field_ptr() const { return f_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
  }

  std::uint64_t encoding() const {
    std::uint64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = acc * static_cast<std::uint64_t>(f_->p()) +
            static_cast<std::uint64_t>(c_[i]);
    return acc;
  }

  // value in F_p when the element lies in the prime subfield
  std::int64_t as_prime_residue() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) throw input_error("element not in prime subfield");
    return c_.empty() ? 0 : c_[0];
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  FieldElement operator-() const {
    std::vector<std::int64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(-c_[i], f_->p());
    return FieldElement(f_, std::move(r));
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    std::vector<std::int64_t> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = (a.c_[i] + b.c_[i]) % a.f_->p();
    return FieldElement(a.f_, std::move(r));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    std::vector<std::int64_t> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = mod_pos(a.c_[i] - b.c_[i], a.f_->p());
    return FieldElement(a.f_, std::move(r));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    ++opcount::field_mults;
    const std::int64_t p = a.f_->p();
    const std::size_t n = a.c_.size();
    if (n == 1)
      return FieldElement(a.f_, {a.c_[0] * b.c_[0] % p});
    std::vector<std::int64_t> c(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % p;
    }
    const auto& m = a.f_->modulus();
    for (std::size_t i = c.size(); i-- > n;) {
      std::int64_t t = c[i];
      if (t == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        c[i - n + j] = mod_pos(c[i - n + j] - t * m[j], p);
    }
    c.resize(n);
    return FieldElement(a.f_, std::move(c));
  }

  FieldElement pow(std::uint64_t e) const {
    FieldElement r = f_->one(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  FieldElement inverse() const {
    if (is_zero()) throw input_error("inverse of zero");
    if (f_->n() == 1)
      return FieldElement(f_, {inv_mod(c_[0], f_->p())});
    // extended Euclid against the modulus
    detail::PVec a = c_, m = f_->modulus(), s0{1}, s1{};
    detail::ptrim(a);
    detail::PVec r0 = a, r1 = m;
    // invariants: r0 = s0*a (mod modulus), r1 = s1*a (mod modulus)
    while (!r1.empty()) {
      // divide r0 by r1
      detail::PVec quo;
      detail::PVec rem = r0;
      std::int64_t lead_inv = inv_mod(r1.back(), f_->p());
      if (rem.size() >= r1.size()) quo.resize(rem.size() - r1.size() + 1, 0);
      while (rem.size() >= r1.size() && !rem.empty()) {
        std::int64_t t = rem.back() * lead_inv % f_->p();
        std::size_t off = rem.size() - r1.size();
        quo[off] = t;
        for (std::size_t j = 0; j < r1.size(); ++j)
          rem[off + j] = mod_pos(rem[off + j] - t * r1[j], f_->p());
        detail::ptrim(rem);
      }
      // s_new = s0 - quo*s1
      detail::PVec qs;
      if (!quo.empty() && !s1.empty()) {
        qs.assign(quo.size() + s1.size() - 1, 0);
        for (std::size_t i = 0; i < quo.size(); ++i)
          for (std::size_t j = 0; j < s1.size(); ++j)
            qs[i + j] = (qs[i + j] + quo[i] * s1[j]) % f_->p();
      }
      detail::PVec snew(std::max(s0.size(), qs.size()), 0);
      for (std::size_t i = 0; i < snew.size(); ++i) {
        std::int64_t v = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
        snew[i] = mod_pos(v, f_->p());
      }
      detail::ptrim(snew);
      r0 = r1; r1 = rem;
      s0 = s1; s1 = snew;
    }
    // r0 = gcd = nonzero constant c; inverse = s0 / c reduced mod modulus
    if (r0.size() != 1) throw input_error("inverse: element not invertible");
    std::int64_t cinv = inv_mod(r0[0], f_->p());
    detail::PVec res = detail::pmulmod(s0, {cinv}, f_->modulus(), f_->p());
    return FieldElement(f_, std::move(res));
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
    return os << a.encoding();
  }

 private:
  void check_same(const FieldElement& b) const {
    if (f_ != b.f_) throw input_error("field mismatch in element arithmetic");
  }

  const FiniteField* f_;
  std::vector<std::int64_t> c_;
};

inline FieldElement FiniteField::zero() const {
  return FieldElement(this, std::vector<std::int64_t>(static_cast<std::size_t>(n_), 0));
}
inline FieldElement FiniteField::one() const { return from_int(1); }
inline FieldElement FiniteField::from_int(std::int64_t v) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_), 0);
  c[0] = mod_pos(v, p_);
  return FieldElement(this, std::move(c));
}
inline FieldElement FiniteField::from_coeffs(std::vector<std::int64_t> c) const {
  if (c.size() > static_cast<std::size_t>(n_))
    throw input_error("coefficient vector longer than extension degree");
  return FieldElement(this, std::move(c));
}
inline FieldElement FiniteField::from_encoding(std::uint64_t code) const {
  if (code >= q_) throw input_error("encoding out of range");
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    c[static_cast<std::size_t>(i)] =
        static_cast<std::int64_t>(code % static_cast<std::uint64_t>(p_));
    code /= static_cast<std::uint64_t>(p_);
  }
  return FieldElement(this, std::move(c));
}
inline FieldElement FiniteField::generator() const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_), 0);
  if (n_ == 1) return zero();  // modulus is x, so the generator class is 0
  c[1] = 1;
  return FieldElement(this, std::move(c));
}

namespace detail {
struct FieldKey {
  std::int64_t p;
  int n;
  std::vector<std::int64_t> modulus;
  bool operator<(const FieldKey& o) const {
    return std::tie(p, n, modulus) < std::tie(o.p, o.n, o.modulus);
  }
};
inline std::map<FieldKey, std::shared_ptr<const FiniteField>>& field_registry() {
  static std::map<FieldKey, std::shared_ptr<const FiniteField>> reg;
  return reg;
}
inline std::mutex& field_registry_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

inline FieldPtr FiniteField::make(std::int64_t p, int n,
                                  std::vector<std::int64_t> modulus) {
  if (!is_prime_trial(p)) throw input_error("p is not prime");
  if (n < 1) throw input_error("extension degree must be >= 1");
  std::uint64_t q = checked_pow_u64(static_cast<std::uint64_t>(p), n);
  if (modulus.size() != static_cast<std::size_t>(n) + 1)
    throw input_error("modulus must have degree n");
  for (auto& c : modulus) c = mod_pos(c, p);
  if (modulus.back() != 1) throw input_error("modulus must be monic");
  if (!detail::is_irreducible(modulus, p))
    throw input_error("modulus is reducible");
  std::lock_guard<std::mutex> lk(detail::field_registry_mutex());
  auto& reg = detail::field_registry();
  detail::FieldKey key{p, n, modulus};
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  auto f = std::shared_ptr<const FiniteField>(
      new FiniteField(p, n, std::move(modulus), q));
  reg.emplace(std::move(key), f);
  return f;
}

inline FieldPtr FiniteField::make(std::int64_t p, int n) {
  if (!is_prime_trial(p)) throw input_error("p is not prime");
  if (n < 1) throw input_error("extension degree must be >= 1");
  checked_pow_u64(static_cast<std::uint64_t>(p), n);
  if (n == 1) return make(p, 1, {0, 1});  // modulus x: F_p[x]/(x)
  // scan lower-coefficient vectors in canonical order for the first irreducible
  std::uint64_t limit = checked_pow_u64(static_cast<std::uint64_t>(p), n);
  for (std::uint64_t v = 1; v < limit; ++v) {
    if (v % static_cast<std::uint64_t>(p) == 0) continue;  // x would divide
    std::vector<std::int64_t> m(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t t = v;
    for (int i = 0; i < n; ++i) {
      m[static_cast<std::size_t>(i)] =
          static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    m[static_cast<std::size_t>(n)] = 1;
    if (detail::is_irreducible(m, p)) return make(p, n, std::move(m));
  }
  throw input_error("no irreducible modulus found");  // unreachable
}

inline FieldPtr make_field(std::int64_t p, int n) { return FiniteField::make(p, n); }
inline FieldPtr make_field(std::int64_t p, int n, std::vector<std::int64_t> modulus) {
  return FiniteField::make(p, n, std::move(modulus));
}

// a^{p^j}; frobenius(a, n) == a
inline FieldElement frobenius(const FieldElement& a, int j) {
  if (j < 0) throw input_error("frobenius power must be >= 0");
  const auto& f = a.field();
  int jm = j % f.n();
  if (jm == 0) return a;
  std::uint64_t e = checked_pow_u64(static_cast<std::uint64_t>(f.p()), jm);
  return a.pow(e);
}

// tr_{k/F_p}(a) = sum over j of a^{p^j}, landing in F_p
inline std::int64_t trace_to_prime(const FieldElement& a) {
  const auto& f = a.field();
  FieldElement acc = f.zero(), cur = a;
  for (int j = 0; j < f.n(); ++j) {
    acc = acc + cur;
    if (j + 1 < f.n()) cur = cur.pow(static_cast<std::uint64_t>(f.p()));
  }
  return acc.as_prime_residue();
}

// absolute trace down to F_2 (characteristic 2 only)
inline int trace_to_F2(const FieldElement& a) {
  if (a.field().p() != 2) throw input_error("trace_to_F2 requires characteristic 2");
  return static_cast<int>(trace_to_prime(a));
}

// first element in canonical enumeration with a^{(q-1)/2} = -1
inline FieldElement first_nonresidue(const FiniteField& f) {
  if (f.p() == 2) throw input_error("no quadratic nonresidue in characteristic 2");
  std::uint64_t half = (f.q() - 1) / 2;
  FieldElement minus_one = f.from_int(-1);
  for (std::uint64_t code = 0; code < f.q(); ++code) {
    FieldElement a = f.from_encoding(code);
    if (a.pow(half) == minus_one) return a;
  }
  throw input_error("no nonresidue found");  // unreachable for odd q
}
inline FieldElement first_nonresidue(const FieldPtr& f) { return first_nonresidue(*f); }

// Canonical square root: characteristic 2 has the unique root a^{2^{N-1}};
// odd characteristic uses Tonelli-Shanks and returns the root with the smaller
// encoding, or nullopt for a nonresidue.
inline std::optional<FieldElement> sqrt(const FieldElement& a) {
  ++opcount::sqrt_calls;
  const auto& f = a.field();
  if (a.is_zero()) return a;
  if (f.p() == 2) {
    FieldElement r = a;
    for (int i = 1; i < f.n(); ++i) r = r * r;
    return r;
  }
  const std::uint64_t q = f.q();
  FieldElement minus_one = f.from_int(-1);
  if (a.pow((q - 1) / 2) == minus_one) return std::nullopt;
  FieldElement r = f.zero();
  if (q % 4 == 3) {
    r = a.pow((q + 1) / 4);
  } else {
    // Tonelli-Shanks: q-1 = 2^s * m with m odd
    std::uint64_t m = q - 1;
    int s = 0;
    while (m % 2 == 0) { m /= 2; ++s; }
    FieldElement z = first_nonresidue(f).pow(m);  // generator of the 2-Sylow
    FieldElement c = z;
    FieldElement t = a.pow(m);
    r = a.pow((m + 1) / 2);
    int e = s;
    while (!(t == f.one())) {
      FieldElement t2 = t;
      int i = 0;
      while (!(t2 == f.one())) { t2 = t2 * t2; ++i; }
      FieldElement b = c;
      for (int j = 0; j < e - i - 1; ++j) b = b * b;
      r = r * b;
      c = b * b;
      t = t * c;
      e = i;
    }
  }
  FieldElement neg = -r;
  return (r.encoding() <= neg.encoding()) ? r : neg;
}

// Solve z^p - z = a; solvable iff tr_{k/F_p}(a) = 0, the solution set is then
// z + F_p and the representative with zero constant coefficient is returned.
inline std::optional<FieldElement> artin_schreier_solve(const FieldElement& a) {
  ++opcount::artin_schreier_calls;
  const auto& f = a.field();
  const std::int64_t p = f.p();
  const int n = f.n();
  if (n == 1) {
    if (a.is_zero()) return f.zero();
    return std::nullopt;  // z^p - z = 0 on F_p
  }
  // columns: L(x^j) = (x^j)^p - x^j in the power basis
  std::vector<std::vector<std::int64_t>> M(static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> basis(static_cast<std::size_t>(n), 0);
    basis[static_cast<std::size_t>(j)] = 1;
    FieldElement ej = f.from_coeffs(basis);
    FieldElement img = ej.pow(static_cast<std::uint64_t>(p)) - ej;
    for (int i = 0; i < n; ++i)
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          img.coeffs()[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < n; ++i)
    M[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] =
        a.coeffs()[static_cast<std::size_t>(i)];
  // Gaussian elimination over F_p
  std::vector<int> pivot_col(static_cast<std::size_t>(n), -1);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int sel = -1;
    for (int i = row; i < n; ++i)
      if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(M[static_cast<std::size_t>(sel)], M[static_cast<std::size_t>(row)]);
    std::int64_t inv = inv_mod(M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p);
    for (int jj = col; jj <= n; ++jj)
      M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)] =
          M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)] * inv % p;
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      std::int64_t fvz = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (fvz == 0) continue;
      for (int jj = col; jj <= n; ++jj)
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] = mod_pos(
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] -
                fvz * M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)], p);
    }
    pivot_col[static_cast<std::size_t>(row)] = col;
    ++row;
  }
  for (int i = row; i < n; ++i)
    if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] != 0)
      return std::nullopt;  // inconsistent: trace(a) != 0
  std::vector<std::int64_t> z(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < row; ++i)
    z[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
  // normalize within z + F_p: zero constant coefficient minimizes the encoding
  z[0] = 0;
  return f.from_coeffs(std::move(z));
}

// Embedding k -> k' determined by the first root of k's modulus in k'.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr source, FieldPtr target)
      : src_(std::move(source)), dst_(std::move(target)),
        gen_image_(dst_->zero()) {
    if (src_->p() != dst_->p())
      throw input_error("embedding requires equal characteristic");
    if (dst_->n() % src_->n() != 0)
      throw input_error("embedding requires source degree dividing target degree");
    gen_image_ = find_first_root();
    // precompute target coordinates of gen_image^j for retraction
    powers_.reserve(static_cast<std::size_t>(src_->n()));
    FieldElement cur = dst_->one();
    for (int j = 0; j < src_->n(); ++j) {
      powers_.push_back(cur);
      if (j + 1 < src_->n()) cur = cur * gen_image_;
    }
  }

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }
  const FieldElement& image_of_generator() const { return gen_image_; }
  int relative_degree() const { return dst_->n() / src_->n(); }

  FieldElement apply(const FieldElement& a) const {
    if (a.field_ptr() != src_.get()) throw input_error("embedding: element not in source");
    FieldElement acc = dst_->zero();
    for (std::size_t j = a.coeffs().size(); j-- > 0;)
      acc = acc * gen_image_ + dst_->from_int(a.coeffs()[j]);
    return acc;
  }

  // unique preimage when e lies in the image subfield, nullopt otherwise
  std::optional<FieldElement> retract(const FieldElement& e) const {
    if (e.field_ptr() != dst_.get()) throw input_error("retract: element not in target");
    const std::int64_t p = src_->p();
    const int rows = dst_->n(), cols = src_->n();
    std::vector<std::vector<std::int64_t>> M(static_cast<std::size_t>(rows),
        std::vector<std::int64_t>(static_cast<std::size_t>(cols) + 1, 0));
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i)
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            powers_[static_cast<std::size_t>(j)].coeffs()[static_cast<std::size_t>(i)];
    for (int i = 0; i < rows; ++i)
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] =
          e.coeffs()[static_cast<std::size_t>(i)];
    std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
      int sel = -1;
      for (int i = row; i < rows; ++i)
        if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { sel = i; break; }
      if (sel < 0) continue;
      std::swap(M[static_cast<std::size_t>(sel)], M[static_cast<std::size_t>(row)]);
      std::int64_t inv = inv_mod(M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p);
      for (int jj = col; jj <= cols; ++jj)
        M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)] =
            M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)] * inv % p;
      for (int i = 0; i < rows; ++i) {
        if (i == row) continue;
        std::int64_t fvz = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
        if (fvz == 0) continue;
        for (int jj = col; jj <= cols; ++jj)
          M[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] = mod_pos(
              M[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] -
                  fvz * M[static_cast<std::size_t>(row)][static_cast<std::size_t>(jj)], p);
      }
      pivot_col[static_cast<std::size_t>(row)] = col;
      ++row;
    }
    for (int i = row; i < rows; ++i)
      if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] != 0)
        return std::nullopt;  // not in the image subfield
    std::vector<std::int64_t> c(static_cast<std::size_t>(cols), 0);
    for (int i = 0; i < row; ++i)
      c[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
          M[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)];
    return src_->from_coeffs(std::move(c));
  }

 private:
  FieldElement find_first_root() const {
    const auto& m = src_->modulus();
    for (std::uint64_t code = 0; code < dst_->q(); ++code) {
      FieldElement x = dst_->from_encoding(code);
      FieldElement acc = dst_->zero();
      for (std::size_t j = m.size(); j-- > 0;)
        acc = acc * x + dst_->from_int(m[j]);
      if (acc.is_zero()) return x;
    }
    throw input_error("no root of source modulus in target");  // unreachable
  }

  FieldPtr src_, dst_;
  FieldElement gen_image_;
  std::vector<FieldElement> powers_;
};

inline FieldEmbedding make_embedding(FieldPtr k, FieldPtr k_prime) {
  return FieldEmbedding(std::move(k), std::move(k_prime));
}

}  // namespace picgen
