// io.hpp -- JSON serialization for fields, curves, divisors and run reports,
// plus the CLI subset-spec grammar:
//   coset:<g1,g2,...>:<shift>   additive span of the generators, shifted
//   interval:<n>:<start>:<len>  standard interval of Z/n (prime fields, n = p)
//   vsinterval:<c>:<i>          vector-space interval of cardinality c*p^i
//   explicit:<e1,e2,...>        elements by canonical encoding
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "picgen/generator.hpp"

namespace picgen {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const FiniteField& f) {
  Json j;
  j["p"] = f.p();
  j["n"] = f.n();
  j["modulus"] = f.modulus();
  return j;
}

inline FieldPtr field_from_json(const Json& j) {
  if (!j.contains("p") || !j.contains("n"))
    throw input_error("field spec needs p and n");
  std::int64_t p = j.at("p").get<std::int64_t>();
  int n = j.at("n").get<int>();
  if (j.contains("modulus"))
    return make_field(p, n, j.at("modulus").get<std::vector<std::int64_t>>());
  return make_field(p, n);
}

inline Json curve_to_json(const HyperellipticModel& m, const std::string& name = "") {
  Json j;
  if (!name.empty()) j["name"] = name;
  j["field"] = field_to_json(*m.field());
  j["g"] = m.genus();
  j["f"] = m.f().encodings();
  j["h"] = m.h().encodings();
  return j;
}

inline ModelPtr curve_from_json(const Json& j) {
  if (!j.contains("field") || !j.contains("g") || !j.contains("f") ||
      !j.contains("h"))
    throw input_error("curve spec needs field, g, f, h");
  FieldPtr k = field_from_json(j.at("field"));
  int g = j.at("g").get<int>();
  Polynomial f = Polynomial::from_encodings(
      k.get(), j.at("f").get<std::vector<std::uint64_t>>());
  Polynomial h = Polynomial::from_encodings(
      k.get(), j.at("h").get<std::vector<std::uint64_t>>());
  return HyperellipticModel::validate(std::move(k), g, std::move(f), std::move(h));
}

inline ModelPtr curve_from_file(const std::string& path, std::string* name = nullptr) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open curve file: " + path);
  Json j = Json::parse(in);
  if (name && j.contains("name")) *name = j.at("name").get<std::string>();
  return curve_from_json(j);
}

inline Json divisor_to_json(const MumfordDivisor& d) {
  Json j;
  j["u"] = d.u().encodings();
  j["v"] = d.v().encodings();
  return j;
}

inline MumfordDivisor divisor_from_json(const ModelPtr& model, const Json& j) {
  if (!j.contains("u") || !j.contains("v"))
    throw input_error("divisor spec needs u and v");
  const FiniteField* k = model->field().get();
  Polynomial u = Polynomial::from_encodings(
      k, j.at("u").get<std::vector<std::uint64_t>>());
  Polynomial v = Polynomial::from_encodings(
      k, j.at("v").get<std::vector<std::uint64_t>>());
  return MumfordDivisor(model, std::move(u), std::move(v));
}

inline Json params_to_json(const GenParams& p) {
  Json j;
  j["g"] = p.g;
  j["p"] = p.p;
  j["q"] = p.q;
  j["s"] = p.s;
  j["t"] = p.t;
  j["i"] = p.i;
  j["q_to_i"] = p.q_to_i;
  j["r"] = p.r;
  j["interval_size"] = p.interval_size;
  j["interval_c"] = p.interval_c;
  j["interval_j"] = p.interval_j;
  j["in_H_C"] = p.in_H_C;
  return j;
}

inline Json report_to_json(const GenRunReport& r) {
  Json j;
  j["params"] = params_to_json(r.params);
  j["plan_only"] = r.plan_only;
  j["points_found"] = r.points_found;
  Json gens = Json::array();
  for (const auto& d : r.generators) gens.push_back(divisor_to_json(d));
  j["generators"] = std::move(gens);
  j["counters"] = {{"field_mults", r.field_mults},
                   {"sqrt_calls", r.sqrt_calls},
                   {"artin_schreier_calls", r.artin_schreier_calls}};
  return j;
}

inline Json check_to_json(const GenerationCheck& c) {
  Json j;
  j["subset_size"] = c.subset_size;
  j["curve_points"] = c.curve_points;
  j["shape_bound"] = c.shape_bound;
  j["hypothesis_main"] = c.hypothesis_main;
  j["hypothesis_size_form"] = c.hypothesis_size_form;
  j["forms_disagree"] = c.forms_disagree;
  j["exceptional"] = c.exceptional;
  if (c.exceptional) {
    j["meets_H_C"] = c.meets_H_C;
    j["hypothesis_intersection"] = c.hypothesis_intersection;
    j["generated_kernel"] = c.generated_kernel;
  }
  j["generated_order"] = c.generated_order;
  j["generated_full"] = c.generated_full;
  j["conclusion_holds"] = c.conclusion_holds;
  return j;
}

// ---- subset specs ----

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}
inline std::vector<std::uint64_t> parse_codes(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (const auto& tok : split(s, ','))
    out.push_back(static_cast<std::uint64_t>(std::stoull(tok)));
  return out;
}
}  // namespace detail

inline SubsetInstance parse_subset_spec(const FiniteField& k, const std::string& spec) {
  auto parts = detail::split(spec, ':');
  if (parts.empty()) throw input_error("empty subset spec");
  SubsetInstance inst;
  inst.label = spec;
  const std::string& kind = parts[0];
  if (kind == "coset") {
    if (parts.size() != 3) throw input_error("coset spec: coset:<gens>:<shift>");
    inst.mode = SubsetMode::coset;
    FieldElement shift = k.from_encoding(std::stoull(parts[2]));
    // additive span of the generators
    std::vector<FieldElement> span{k.zero()};
    std::unordered_set<std::uint64_t> seen{k.zero().encoding()};
    for (auto code : detail::parse_codes(parts[1])) {
      FieldElement v = k.from_encoding(code);
      std::vector<FieldElement> frontier = span;
      while (!frontier.empty()) {
        std::vector<FieldElement> next;
        for (const auto& w : frontier) {
          FieldElement cand = w + v;
          if (seen.insert(cand.encoding()).second) {
            span.push_back(cand);
            next.push_back(cand);
          }
        }
        frontier = std::move(next);
      }
    }
    for (const auto& w : span) inst.elements.push_back(w + shift);
  } else if (kind == "interval") {
    if (parts.size() != 4)
      throw input_error("interval spec: interval:<n>:<start>:<len>");
    std::int64_t n = std::stoll(parts[1]);
    std::int64_t start = std::stoll(parts[2]);
    std::int64_t len = std::stoll(parts[3]);
    if (k.n() != 1 || n != k.p())
      throw input_error("interval specs require a prime field with n = p");
    if (len < 1 || len > n) throw input_error("interval length out of range");
    inst.mode = SubsetMode::interval;
    for (std::int64_t t = 0; t < len; ++t)
      inst.elements.push_back(k.from_int(start + t));
  } else if (kind == "vsinterval") {
    if (parts.size() != 3) throw input_error("vsinterval spec: vsinterval:<c>:<i>");
    inst.mode = SubsetMode::interval;
    inst.elements = interval_in_vector_space(k, std::stoi(parts[1]),
                                             std::stoi(parts[2]));
  } else if (kind == "explicit") {
    if (parts.size() != 2) throw input_error("explicit spec: explicit:<codes>");
    inst.mode = SubsetMode::explicit_set;
    std::unordered_set<std::uint64_t> seen;
    for (auto code : detail::parse_codes(parts[1]))
      if (seen.insert(code).second)
        inst.elements.push_back(k.from_encoding(code));
    if (inst.elements.empty()) throw input_error("explicit subset is empty");
  } else {
    throw input_error("unknown subset spec kind: " + kind);
  }
  return inst;
}

}  // namespace picgen
