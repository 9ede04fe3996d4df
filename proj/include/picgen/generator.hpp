// generator.hpp -- the deterministic generator pipeline and its checkers.
//
// plan() sizes the run with exact integer arithmetic: pick the extension
// exponent i with t <= q^i < t q for t = (2^4(2g+1) + 2^2)^2, set
// r = ceil(4(2g+1) q^{i/2}), and choose the smallest interval cardinality
// c p^j >= r with c in {1..p-1} (this always lands in [r, 2r]). generate()
// builds the extension, enumerates the curve points above the interval, and
// pushes every point through the norm map back to k. In the exceptional case
// (p = 2, deg h = g) the interval is built inside the hyperplane
// ker(x -> tr(x d1/h_g^2)) and translated into H_C when needed.
//
// check_generation() and char_sum_table() evaluate the generation-theorem
// hypotheses and the character-sum bounds against the brute-force oracle.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "picgen/jacobian.hpp"

namespace picgen {

struct GenParams {
  int g = 0;
  std::int64_t p = 0;
  std::uint64_t q = 0;
  int s = 0;                       // 2 if p = 2, else 3
  std::int64_t t = 0;              // (2^4(2g+1) + 2^2)^2
  int i = 0;                       // extension exponent, t <= q^i < t q
  std::uint64_t q_to_i = 0;
  std::uint64_t r = 0;             // ceil(4(2g+1) q^{i/2})
  std::uint64_t interval_size = 0; // c * p^j
  int interval_c = 0;
  int interval_j = 0;
  bool in_H_C = false;             // exceptional case: S must land inside H_C
};

// integer-only planning; usable without constructing fields or curves
inline GenParams plan_params(int g, std::int64_t p, int n, bool exceptional) {
  if (g < 1 || n < 1 || !is_prime_trial(p)) throw input_error("plan: bad (g, p, n)");
  GenParams out;
  out.g = g;
  out.p = p;
  out.q = checked_pow_u64(static_cast<std::uint64_t>(p), n);
  out.s = (p == 2) ? 2 : 3;
  std::int64_t base = 16 * (2 * g + 1) + 4;
  out.t = base * base;
  out.i = 0;
  unsigned __int128 qi = 1;
  while (qi < static_cast<unsigned __int128>(out.t)) {
    qi *= out.q;
    ++out.i;
    if (qi > static_cast<unsigned __int128>(INT64_MAX))
      throw input_error("plan: q^i overflows");
  }
  out.q_to_i = static_cast<std::uint64_t>(qi);

  // r = ceil(sqrt(16 (2g+1)^2 q^i)), exact in integers
  std::uint64_t inner = 16ULL * static_cast<std::uint64_t>(2 * g + 1) *
                        static_cast<std::uint64_t>(2 * g + 1) * out.q_to_i;
  out.r = ceil_sqrt_u64(inner);

  // smallest c p^j >= r with c in {1..p-1}
  std::uint64_t best = 0;
  std::uint64_t pj = 1;
  for (int j = 0;; ++j) {
    std::uint64_t c = (out.r + pj - 1) / pj;  // ceil(r / p^j)
    if (c <= static_cast<std::uint64_t>(p) - 1 && c >= 1) {
      std::uint64_t candidate = c * pj;
      if (best == 0 || candidate < best) {
        best = candidate;
        out.interval_c = static_cast<int>(c);
        out.interval_j = j;
      }
    }
    if (pj >= out.r) break;  // larger j only yields p^j >= this one
    pj *= static_cast<std::uint64_t>(p);
  }
  out.interval_size = best;
  out.in_H_C = exceptional;

  // the planned chains; violations would be programming errors
  if (!(static_cast<std::uint64_t>(out.t) <= out.q_to_i &&
        static_cast<unsigned __int128>(out.q_to_i) <
            static_cast<unsigned __int128>(out.t) * out.q))
    throw input_error("plan: t <= q^i < t q violated");
  if (!(out.r <= out.interval_size && out.interval_size <= 2 * out.r))
    throw input_error("plan: interval size escaped [r, 2r]");
  if (!(4 * out.r <= out.q_to_i))
    throw input_error("plan: 4r <= q^i violated");
  return out;
}

inline GenParams plan(const HyperellipticModel& m) {
  return plan_params(m.genus(), m.field()->p(), m.field()->n(), m.exceptional());
}

struct GenRunReport {
  GenParams params;
  bool plan_only = false;
  std::uint64_t points_found = 0;
  std::vector<MumfordDivisor> generators;  // distinct, identity dropped
  std::uint64_t field_mults = 0;
  std::uint64_t sqrt_calls = 0;
  std::uint64_t artin_schreier_calls = 0;
};

// The interval S of k' used by the run: a plain vector-space interval, or an
// interval of the hyperplane ker(tr(. d1/h_g^2)) translated into H_C in the
// exceptional case.
inline std::vector<FieldElement> build_run_interval(const HyperellipticModel& ext_model,
                                                    const GenParams& params) {
  const FiniteField& kx = *ext_model.field();
  if (!params.in_H_C)
    return interval_in_vector_space(kx, params.interval_c, params.interval_j);

  auto inv = char2_invariants(ext_model);
  auto tau = [&](const FieldElement& x) {
    return trace_to_F2(x * inv.lambda2_scale);
  };
  // basis of ker(tau): pick a pivot with tau = 1, correct the rest
  const int n = kx.n();
  int pivot = -1;
  std::vector<FieldElement> std_basis;
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
    c[static_cast<std::size_t>(j)] = 1;
    std_basis.push_back(kx.from_coeffs(std::move(c)));
    if (pivot < 0 && tau(std_basis.back()) == 1) pivot = j;
  }
  if (pivot < 0) throw input_error("run interval: tau is identically zero");
  std::vector<FieldElement> kernel_basis;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    FieldElement b = std_basis[static_cast<std::size_t>(j)];
    if (tau(b) == 1) b = b + std_basis[static_cast<std::size_t>(pivot)];
    kernel_basis.push_back(b);
  }

  // interval of cardinality 2^j inside the hyperplane (p = 2 forces c = 1)
  int j = params.interval_j;
  const int dim = static_cast<int>(kernel_basis.size());
  std::vector<FieldElement> s =
      (j == dim) ? interval_in_span(kx, kernel_basis, 1, dim)
                 : interval_in_span(kx, kernel_basis, params.interval_c, j);

  if (inv.epsilon == 1) {
    // H_C is the nontrivial coset; shift by the first element with tau = 1
    FieldElement shift = kx.zero();
    for (std::uint64_t code = 0; code < kx.q(); ++code) {
      FieldElement cand = kx.from_encoding(code);
      if (tau(cand) == 1) { shift = cand; break; }
    }
    for (auto& x : s) x = x + shift;
  }
  for (const auto& x : s)
    if (!in_H_C(inv, x))
      throw input_error("run interval left H_C");
  return s;
}

inline GenRunReport generate(const ModelPtr& model, std::uint64_t guard = 1000000) {
  GenRunReport report;
  report.params = plan(*model);
  if (report.params.q_to_i > guard) {
    report.plan_only = true;
    return report;
  }
  opcount::reset();

  const FiniteField& k = *model->field();
  FieldPtr ext = make_field(k.p(), k.n() * report.params.i);
  FieldEmbedding emb = make_embedding(model->field(), ext);
  ModelPtr ext_model = base_change(*model, emb);

  std::vector<FieldElement> s = build_run_interval(*ext_model, report.params);
  std::vector<AffinePoint> pts = points_with_x_in(*ext_model, s);
  report.points_found = pts.size();

  std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>,
           MumfordDivisor> dedup;
  for (const auto& p : pts) {
    MumfordDivisor d = from_orbit(model, ext_model, p, emb);
    if (d.is_identity()) continue;
    dedup.emplace(d.key(), d);
  }
  report.generators.reserve(dedup.size());
  for (auto& [key, d] : dedup) report.generators.push_back(std::move(d));
  report.field_mults = opcount::field_mults;
  report.sqrt_calls = opcount::sqrt_calls;
  report.artin_schreier_calls = opcount::artin_schreier_calls;
  return report;
}

// ---- empirical checkers for the generation theorems ----

enum class SubsetMode { coset, interval, explicit_set };

struct GenerationCheck {
  std::size_t subset_size = 0;
  std::uint64_t curve_points = 0;  // #C(k) including infinity
  double shape_bound = 0.0;        // sound upper bound used for sh(S)
  bool hypothesis_main = false;    // strict-inequality hypothesis
  bool hypothesis_size_form = false;  // #S >= 2t(2g-2+s) sqrt(q) variant
  bool forms_disagree = false;
  bool exceptional = false;
  bool meets_H_C = false;          // S ∩ H_C nonempty
  bool hypothesis_intersection = false;  // sub-case inequality on S ∩ H_C
  std::size_t generated_order = 0;
  bool generated_full = false;
  bool generated_kernel = false;   // closure equals ker(psi) exactly
  bool conclusion_holds = false;   // the applicable conclusions all hold
};

// sound shape upper bound for an arbitrary subset of k^+
inline double shape_bound_for(const std::vector<FieldElement>& xs,
                              const FiniteField& k, SubsetMode mode) {
  auto ag = additive_group(k);
  Subset s = to_additive_subset(ag, xs);
  if (is_coset(s)) return 1.0;
  if (mode == SubsetMode::interval) return 2.0;
  return shape_upper_bound(s, GroupRingFunction::indicator(s));
}

inline GenerationCheck check_generation(const PicardTable& table,
                                        const std::vector<FieldElement>& xs,
                                        SubsetMode mode) {
  const HyperellipticModel& m = *table.model;
  const FiniteField& k = *m.field();
  GenerationCheck out;
  out.exceptional = m.exceptional();

  // deduplicate the subset
  std::vector<FieldElement> sx;
  {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& x : xs)
      if (seen.insert(x.encoding()).second) sx.push_back(x);
  }
  out.subset_size = sx.size();
  if (sx.empty()) throw input_error("check_generation: empty subset");

  out.curve_points = count_points(m, 1);
  out.shape_bound = shape_bound_for(sx, k, mode);

  const int g = m.genus();
  const int s = (k.p() == 2) ? 2 : 3;
  const double sq = std::sqrt(static_cast<double>(k.q()));
  const double lhs = std::pow(static_cast<double>(k.q()), 1.5) * 2.0 *
                     (2 * g - 2 + s) * out.shape_bound;
  const double rhs = (static_cast<double>(out.curve_points) +
                      (2 * g - 2 + 2 * s) * sq) *
                     static_cast<double>(sx.size());
  out.hypothesis_main = lhs < rhs;

  {
    double t_form = (mode == SubsetMode::coset || out.shape_bound <= 1.0) ? 1.0 : 2.0;
    bool size_ok = static_cast<double>(sx.size()) >=
                   2.0 * t_form * (2 * g - 2 + s) * sq;
    bool applies = !out.exceptional &&
                   static_cast<double>(out.curve_points) > (2 * g - 2) * sq;
    out.hypothesis_size_form = applies && size_ok;
  }
  out.forms_disagree = out.hypothesis_main != out.hypothesis_size_form;

  // closure of phi(C_S) against the oracle
  std::vector<std::size_t> gens;
  for (const auto& p : points_with_x_in(m, sx))
    gens.push_back(table.index_of(phi(table.model, p)));
  auto closure = closure_indices(table, gens);
  out.generated_order = closure.size();
  out.generated_full = closure.size() == table.elements.size();

  if (!out.exceptional) {
    out.conclusion_holds = !out.hypothesis_main || out.generated_full;
    return out;
  }

  auto inv = char2_invariants(m);
  std::vector<FieldElement> meet;
  for (const auto& x : sx)
    if (in_H_C(inv, x)) meet.push_back(x);
  out.meets_H_C = !meet.empty();
  if (out.meets_H_C) {
    double shb = shape_bound_for(meet, k, SubsetMode::explicit_set);
    double lhs2 = std::pow(static_cast<double>(k.q()), 1.5) * (2 * g - 2 + s) * shb;
    double rhs2 = (static_cast<double>(out.curve_points) +
                   (2 * g - 2 + 2 * s) * sq) *
                  static_cast<double>(meet.size());
    out.hypothesis_intersection = lhs2 < rhs2;
  }

  // kernel comparison
  std::unordered_set<std::size_t> closure_set(closure.begin(), closure.end());
  std::size_t kernel_size = 0;
  bool closure_is_kernel = true;
  for (std::size_t idx = 0; idx < table.elements.size(); ++idx) {
    bool in_kernel = psi(table.elements[idx]) == 0;
    if (in_kernel) ++kernel_size;
    if (in_kernel != (closure_set.count(idx) > 0)) closure_is_kernel = false;
  }
  out.generated_kernel = closure_is_kernel && closure.size() == kernel_size;

  bool ok = true;
  if (!out.meets_H_C) {
    // unconditional containment: points over x outside H_C land in ker(psi)
    std::size_t inside = 0;
    for (std::size_t idx : closure)
      if (psi(table.elements[idx]) == 0) ++inside;
    ok = ok && inside == closure.size();
  }
  if (out.hypothesis_main) {
    ok = ok && (out.generated_full || out.generated_kernel);
    if (!out.meets_H_C) ok = ok && out.generated_kernel;
    if (out.meets_H_C && out.hypothesis_intersection) ok = ok && out.generated_full;
  }
  out.conclusion_holds = ok;
  return out;
}

// ---- character sums ----

struct CharSumRow {
  std::uint64_t lambda_code = 0;  // c in k indexing lambda_c
  std::uint64_t chi_code = 0;     // character of Pic^0
  std::complex<double> value;
  // |value - shift| <= bound; exact rows carry bound 0 and a tight tolerance
  std::complex<double> shift;
  double bound = 0.0;
  bool exact = false;
};

struct CharSumTable {
  std::vector<CharSumRow> rows;
  bool exceptional = false;
  int epsilon = 1;
  std::uint64_t lambda2_code = 0;
  std::uint64_t chi2_code = 0;
  double max_twist_error = 0.0;  // exceptional case: c_{(l,x)(l2,x2)} = eps c_{(l,x)}
  double max_bound_violation = 0.0;
  double max_exact_error = 0.0;
};

inline CharSumTable char_sum_table(const PicardTable& table) {
  const HyperellipticModel& m = *table.model;
  const FiniteField& k = *m.field();
  const auto& group = *table.structure.group;
  const int g = m.genus();
  const int s = (k.p() == 2) ? 2 : 3;
  const double sq = std::sqrt(static_cast<double>(k.q()));
  const double curve_points = static_cast<double>(count_points(m, 1));

  CharSumTable out;
  out.exceptional = m.exceptional();

  // all affine rational points with their group coordinates
  std::vector<FieldElement> all;
  all.reserve(k.q());
  for (std::uint64_t c = 0; c < k.q(); ++c) all.push_back(k.from_encoding(c));
  auto pts = points_with_x_in(m, all);
  std::vector<GroupElement> classes;
  classes.reserve(pts.size());
  for (const auto& p : pts)
    classes.push_back(table.structure.to_group(table.index_of(phi(table.model, p))));

  std::uint64_t chi2_code = 0;
  int eps = 1;
  std::uint64_t lambda2_code = 0;
  if (out.exceptional) {
    auto inv = char2_invariants(m);
    eps = inv.epsilon;
    lambda2_code = inv.lambda2_scale.encoding();
    // chi2 = (-1)^psi as an explicit character: exponent d_j/2 wherever psi is
    // 1 on the j-th coordinate generator
    const auto& d = group.invariant_factors();
    std::vector<std::int64_t> expn(d.size(), 0);
    for (std::size_t j = 0; j < d.size(); ++j) {
      std::vector<std::int64_t> unit(d.size(), 0);
      unit[j] = 1;
      std::size_t gen_idx = table.structure.to_index(group.element(unit));
      if (psi(table.elements[gen_idx]) == 1) {
        if (d[j] % 2 != 0)
          throw input_error("char_sum_table: psi nontrivial on an odd factor");
        expn[j] = d[j] / 2;
      }
    }
    chi2_code = group.element(expn).code();
    Character chi2(&group, expn);
    for (std::size_t idx = 0; idx < table.elements.size(); ++idx) {
      double expect = psi(table.elements[idx]) == 0 ? 1.0 : -1.0;
      if (std::abs(chi2.value(table.structure.to_group(idx)).real() - expect) > 1e-9)
        throw input_error("char_sum_table: chi2 does not realize psi");
    }
  }
  out.epsilon = eps;
  out.lambda2_code = lambda2_code;
  out.chi2_code = chi2_code;

  const double tau = 2.0 * std::numbers::pi / static_cast<double>(k.p());
  auto lambda_value = [&](std::uint64_t ccode, const FieldElement& x) {
    std::int64_t tr = trace_to_prime(k.from_encoding(ccode) * x);
    double ang = tau * static_cast<double>(tr);
    return std::complex<double>(std::cos(ang), std::sin(ang));
  };

  std::map<std::pair<std::uint64_t, std::uint64_t>, std::complex<double>> values;
  for (std::uint64_t lc = 0; lc < k.q(); ++lc) {
    for (std::uint64_t cc = 0; cc < group.order(); ++cc) {
      Character chi = Character::by_code(&group, cc);
      std::complex<double> acc = 0.0;
      for (std::size_t idx = 0; idx < pts.size(); ++idx)
        acc += lambda_value(lc, pts[idx].x) * chi.value(classes[idx]);
      values[{lc, cc}] = acc;

      CharSumRow row;
      row.lambda_code = lc;
      row.chi_code = cc;
      row.value = acc;
      if (!out.exceptional) {
        if (lc == 0 && cc == 0) {
          row.exact = true;
          row.shift = curve_points - 1.0;
        } else if (lc == 0) {
          row.shift = -1.0;
          row.bound = (2 * g - 2) * sq;
        } else {
          row.shift = 0.0;
          row.bound = (2 * g - 2 + s) * sq;
        }
      } else {
        if (lc == 0 && cc == 0) {
          row.exact = true;
          row.shift = curve_points - 1.0;
        } else if (lc == lambda2_code && cc == chi2_code) {
          row.exact = true;
          row.shift = eps * (curve_points - 1.0);
        } else if (lc == 0) {
          row.shift = -1.0;
          row.bound = (2 * g - 2) * sq;
        } else if (lc == lambda2_code) {
          row.shift = -static_cast<double>(eps);
          row.bound = (2 * g - 2) * sq;
        } else {
          row.shift = 0.0;
          row.bound = (2 * g - 2 + s) * sq;
        }
      }
      double err = std::abs(row.value - row.shift);
      if (row.exact)
        out.max_exact_error = std::max(out.max_exact_error, err);
      else
        out.max_bound_violation =
            std::max(out.max_bound_violation, err - row.bound);
      out.rows.push_back(std::move(row));
    }
  }

  if (out.exceptional) {
    for (std::uint64_t lc = 0; lc < k.q(); ++lc)
      for (std::uint64_t cc = 0; cc < group.order(); ++cc) {
        std::uint64_t lt = (k.from_encoding(lc) + k.from_encoding(lambda2_code)).encoding();
        GroupElement prod = group.element_by_code(cc) + group.element_by_code(chi2_code);
        std::complex<double> lhs = values[{lt, prod.code()}];
        std::complex<double> rhs = static_cast<double>(eps) * values[{lc, cc}];
        out.max_twist_error = std::max(out.max_twist_error, std::abs(lhs - rhs));
      }
  }
  return out;
}

// ---- subset families for the falsification sweeps ----

struct SubsetInstance {
  std::string label;
  std::vector<FieldElement> elements;
  SubsetMode mode;
};

// every coset of every additive subgroup of k^+ (desk scale: q <= 64)
inline std::vector<SubsetInstance> all_cosets(const FiniteField& k) {
  if (k.q() > 64) throw resource_error("all_cosets: field too large");
  // subspaces by incremental span closure, deduplicated by bitmask
  std::vector<std::uint64_t> subspaces{1};  // {0}
  std::unordered_set<std::uint64_t> seen{1};
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : frontier) {
      for (std::uint64_t vcode = 1; vcode < k.q(); ++vcode) {
        if (mask & (1ULL << vcode)) continue;
        // span(mask, v): close under addition of v and existing members
        std::uint64_t grown = mask;
        FieldElement v = k.from_encoding(vcode);
        std::vector<FieldElement> members;
        for (std::uint64_t e = 0; e < k.q(); ++e)
          if (mask & (1ULL << e)) members.push_back(k.from_encoding(e));
        std::vector<FieldElement> queue{v};
        while (!queue.empty()) {
          FieldElement w = queue.back();
          queue.pop_back();
          if (grown & (1ULL << w.encoding())) continue;
          grown |= 1ULL << w.encoding();
          std::vector<FieldElement> snapshot;
          for (std::uint64_t e = 0; e < k.q(); ++e)
            if (grown & (1ULL << e)) snapshot.push_back(k.from_encoding(e));
          for (const auto& mbr : snapshot) queue.push_back(mbr + w);
        }
        if (seen.insert(grown).second) {
          subspaces.push_back(grown);
          next.push_back(grown);
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<SubsetInstance> out;
  for (std::uint64_t mask : subspaces) {
    std::unordered_set<std::uint64_t> covered;
    for (std::uint64_t shift = 0; shift < k.q(); ++shift) {
      if (covered.count(shift)) continue;
      FieldElement b = k.from_encoding(shift);
      SubsetInstance inst;
      inst.mode = SubsetMode::coset;
      inst.label = "coset:" + std::to_string(mask) + "+" + std::to_string(shift);
      for (std::uint64_t e = 0; e < k.q(); ++e)
        if (mask & (1ULL << e)) {
          FieldElement x = k.from_encoding(e) + b;
          covered.insert(x.encoding());
          inst.elements.push_back(x);
        }
      out.push_back(std::move(inst));
    }
  }
  return out;
}

// interval instances: vector-space intervals over varied (c, j, start,
// functional), plus canonical translates (translation preserves the shape
// bound). Deduplicated as sets; capped at `target` per curve, exhaustive when
// fewer exist.
inline std::vector<SubsetInstance> interval_family(const FiniteField& k,
                                                   std::size_t target = 50) {
  std::vector<SubsetInstance> out;
  std::unordered_set<std::string> dedup;
  auto push = [&](std::vector<FieldElement> elems, const std::string& label) {
    if (out.size() >= target) return;
    std::vector<std::uint64_t> codes;
    codes.reserve(elems.size());
    for (const auto& e : elems) codes.push_back(e.encoding());
    std::sort(codes.begin(), codes.end());
    std::string key;
    for (auto c : codes) key += std::to_string(c) + ",";
    if (!dedup.insert(key).second) return;
    out.push_back({label, std::move(elems), SubsetMode::interval});
  };

  const std::int64_t p = k.p();
  const int n = k.n();
  if (n == 1) {
    // prime field: standard intervals of Z/p
    for (std::int64_t len = 1; len <= p && out.size() < target; ++len)
      for (std::int64_t st = 0; st < p && out.size() < target; ++st) {
        std::vector<FieldElement> elems;
        for (std::int64_t j = 0; j < len; ++j)
          elems.push_back(k.from_int(st + j));
        push(std::move(elems), "interval:" + std::to_string(p) + ":" +
                                   std::to_string(st) + ":" + std::to_string(len));
      }
    return out;
  }

  // extension fields: preimages of shifted blocks under varied functionals
  for (int i = 0; i < n && out.size() < target; ++i) {
    std::uint64_t func_count = 1;
    for (int t = 0; t <= i; ++t) func_count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t fidx = 1; fidx < func_count && out.size() < target; ++fidx) {
      std::vector<std::int64_t> phi(static_cast<std::size_t>(i) + 1, 0);
      std::uint64_t tmp = fidx;
      for (int t = 0; t <= i; ++t) {
        phi[static_cast<std::size_t>(t)] =
            static_cast<std::int64_t>(tmp % static_cast<std::uint64_t>(p));
        tmp /= static_cast<std::uint64_t>(p);
      }
      for (int c = 1; c <= static_cast<int>(p) - 1 && out.size() < target; ++c)
        for (std::int64_t st = 0; st < p && out.size() < target; ++st) {
          auto elems = interval_in_vector_space(k, c, i, phi, st);
          push(std::move(elems),
               "vsinterval:c" + std::to_string(c) + ":i" + std::to_string(i) +
                   ":f" + std::to_string(fidx) + ":s" + std::to_string(st));
        }
    }
  }
  // intervals inside non-coordinate lines: spans of a single direction vector
  for (std::uint64_t vcode = 1; vcode < k.q() && out.size() < target; ++vcode) {
    std::vector<FieldElement> line{k.from_encoding(vcode)};
    for (int c = 1; c <= static_cast<int>(p) - 1 && out.size() < target; ++c)
      for (std::int64_t st = 0; st < p && out.size() < target; ++st)
        push(interval_in_span(k, line, c, 0, std::nullopt, st),
             "lineinterval:v" + std::to_string(vcode) + ":c" + std::to_string(c) +
                 ":s" + std::to_string(st));
    push(interval_in_span(k, line, 1, 1),
         "lineinterval:v" + std::to_string(vcode) + ":full");
  }
  // translates of the canonical intervals (same shape bound)
  for (std::uint64_t shift = 1; shift < k.q() && out.size() < target; ++shift) {
    FieldElement b = k.from_encoding(shift);
    for (int i = 0; i < n && out.size() < target; ++i) {
      for (int c = 1; c <= static_cast<int>(p) - 1 && out.size() < target; ++c) {
        auto elems = interval_in_vector_space(k, c, i);
        for (auto& x : elems) x = x + b;
        push(std::move(elems), "vsinterval-translate:c" + std::to_string(c) +
                                   ":i" + std::to_string(i) + ":b" +
                                   std::to_string(shift));
      }
    }
  }
  return out;
}

}  // namespace picgen
