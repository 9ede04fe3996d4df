// cli.hpp -- command-line front end. run_command() is a pure function from
// argv to (exit code, output, error) so the CLI is testable in-process;
// tools/picgen.cpp is a thin wrapper around it.
//
// Subcommands: validate, points, count, picard {enumerate|order|add|psi},
// shape, generate, check, charsum, suite. Exit codes: 0 ok, 1 a check or
// validation failed, 2 usage error. PICGEN_GUARD raises the desk-scale
// resource guards.
#pragma once

#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "picgen/suite.hpp"

namespace picgen {

struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string error;
};

namespace cli_detail {

inline std::uint64_t default_guard() {
  if (const char* env = std::getenv("PICGEN_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
  }
  return 1000000;
}

inline std::string complex_str(const std::complex<double>& z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() >= 0) os << "+" << std::setprecision(12) << z.imag() << "i";
  else os << std::setprecision(12) << z.imag() << "i";
  return os.str();
}

}  // namespace cli_detail

inline CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult result;
  std::ostringstream out, err;

  CLI::App app{"deterministic Picard-group generator toolkit"};
  app.require_subcommand(1);
  std::uint64_t guard = cli_detail::default_guard();

  std::string curve_path, subset_spec, d1_json, d2_json, d_json, group_list;
  std::string picard_action;
  int ext_degree = 1;
  bool json_mode = false, plan_only = false;
  double tol = 1e-4;
  int max_iter = 10000;
  std::int64_t field_p = 0;
  int field_n = 1;

  auto* validate_cmd = app.add_subcommand("validate", "validate a curve file");
  validate_cmd->add_option("curve", curve_path)->required();

  auto* points_cmd = app.add_subcommand("points", "points with x in a subset");
  points_cmd->add_option("curve", curve_path)->required();
  points_cmd->add_option("--xset", subset_spec, "subset spec")->required();

  auto* count_cmd = app.add_subcommand("count", "count points over an extension");
  count_cmd->add_option("curve", curve_path)->required();
  count_cmd->add_option("--ext", ext_degree, "extension degree j");

  auto* picard_cmd = app.add_subcommand("picard", "Picard group operations");
  picard_cmd->add_option("action", picard_action, "enumerate|order|add|psi")
      ->required();
  picard_cmd->add_option("curve", curve_path)->required();
  picard_cmd->add_option("--d1", d1_json, "first divisor as JSON");
  picard_cmd->add_option("--d2", d2_json, "second divisor as JSON");
  picard_cmd->add_option("--d", d_json, "divisor as JSON");
  picard_cmd->add_flag("--json", json_mode);

  auto* shape_cmd = app.add_subcommand("shape", "shape parameter of a subset");
  shape_cmd->add_option("--group", group_list, "invariant factors d1,d2,...");
  shape_cmd->add_option("--field-p", field_p, "prime of the ambient field");
  shape_cmd->add_option("--field-n", field_n, "extension degree");
  shape_cmd->add_option("--subset", subset_spec)->required();
  shape_cmd->add_option("--tol", tol, "solver tolerance (default 1e-4)");
  shape_cmd->add_option("--max-iter", max_iter, "iteration cap (default 10000)");

  auto* generate_cmd = app.add_subcommand("generate", "run the generator pipeline");
  generate_cmd->add_option("curve", curve_path)->required();
  generate_cmd->add_flag("--plan-only", plan_only);
  generate_cmd->add_flag("--json", json_mode);
  generate_cmd->add_option("--guard", guard, "resource guard on q^i");

  auto* check_cmd = app.add_subcommand("check", "generation-theorem checker");
  check_cmd->add_option("curve", curve_path)->required();
  check_cmd->add_option("--subset", subset_spec)->required();
  check_cmd->add_flag("--json", json_mode);

  auto* charsum_cmd = app.add_subcommand("charsum", "character-sum table");
  charsum_cmd->add_option("curve", curve_path)->required();
  charsum_cmd->add_flag("--json", json_mode);

  auto* suite_cmd = app.add_subcommand("suite", "run the verification suite");
  suite_cmd->add_option("corpus", curve_path, "corpus directory")->required();
  suite_cmd->add_flag("--json", json_mode);
  suite_cmd->add_option("--guard", guard, "resource guard");

  std::vector<std::string> argv_copy = args;
  std::vector<const char*> argv;
  argv.push_back("picgen");
  for (const auto& a : argv_copy) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    usage << app.help();
    result.exit_code = 2;
    result.error = std::string(e.what()) + "\n" + usage.str();
    return result;
  }

  try {
    if (*validate_cmd) {
      try {
        auto m = curve_from_file(curve_path);
        out << "valid, g=" << m->genus() << ", q=" << m->field()->q() << "\n";
      } catch (const validation_error& e) {
        out << "invalid (" << e.clause() << "): " << e.what() << "\n";
        result.exit_code = 1;
      }
    } else if (*points_cmd) {
      auto m = curve_from_file(curve_path);
      auto inst = parse_subset_spec(*m->field(), subset_spec);
      auto pts = points_with_x_in(*m, inst.elements);
      for (const auto& p : pts)
        out << p.x.encoding() << "," << p.y.encoding() << "\n";
      out << "count=" << pts.size() << "\n";
    } else if (*count_cmd) {
      auto m = curve_from_file(curve_path);
      out << count_points(*m, ext_degree, guard) << "\n";
    } else if (*picard_cmd) {
      auto m = curve_from_file(curve_path);
      if (picard_action == "order") {
        out << group_order_via_zeta(*m, guard) << "\n";
      } else if (picard_action == "enumerate") {
        auto table = enumerate_picard(m, guard);
        if (json_mode) {
          Json j;
          j["order"] = table.elements.size();
          j["invariant_factors"] = table.structure.group->invariant_factors();
          Json els = Json::array();
          for (const auto& d : table.elements) els.push_back(divisor_to_json(d));
          j["elements"] = std::move(els);
          out << j.dump(2) << "\n";
        } else {
          out << "order=" << table.elements.size() << " structure=[";
          const auto& fs = table.structure.group->invariant_factors();
          for (std::size_t i = 0; i < fs.size(); ++i)
            out << (i ? "," : "") << fs[i];
          out << "]\n";
          for (const auto& d : table.elements)
            out << divisor_to_json(d).dump() << "\n";
        }
      } else if (picard_action == "add") {
        if (d1_json.empty() || d2_json.empty())
          throw input_error("picard add needs --d1 and --d2");
        auto a = divisor_from_json(m, Json::parse(d1_json));
        auto b = divisor_from_json(m, Json::parse(d2_json));
        out << divisor_to_json(add(a, b)).dump() << "\n";
      } else if (picard_action == "psi") {
        if (d_json.empty()) throw input_error("picard psi needs --d");
        auto d = divisor_from_json(m, Json::parse(d_json));
        out << psi(d) << "\n";
      } else {
        throw input_error("unknown picard action: " + picard_action);
      }
    } else if (*shape_cmd) {
      GroupPtr g;
      Subset subset{nullptr};
      if (!group_list.empty()) {
        std::vector<std::int64_t> dims;
        for (const auto& tok : detail::split(group_list, ','))
          dims.push_back(std::stoll(tok));
        g = FinAbGroup::make(dims);
        auto parts = detail::split(subset_spec, ':');
        Subset s(g.get());
        if (parts[0] == "explicit" && parts.size() == 2) {
          for (auto code : detail::parse_codes(parts[1]))
            s.insert(g->element_by_code(code));
        } else if (parts[0] == "interval" && parts.size() == 4 && g->rank() == 1) {
          s = standard_interval(std::stoll(parts[1]), std::stoll(parts[2]),
                                std::stoll(parts[3]), g);
        } else {
          throw input_error("group mode supports explicit:<codes> and interval specs");
        }
        subset = std::move(s);
      } else {
        if (field_p == 0) throw input_error("shape needs --group or --field-p");
        auto k = make_field(field_p, field_n);
        auto inst = parse_subset_spec(*k, subset_spec);
        g = additive_group(*k);
        subset = to_additive_subset(g, inst.elements);
      }
      auto est = shape_estimate_with_witness(subset, tol, max_iter);
      double indicator =
          shape_upper_bound(subset, GroupRingFunction::indicator(subset));
      out << "size=" << subset.size() << " estimate=" << std::setprecision(10)
          << est.value << " indicator_bound=" << std::setprecision(10)
          << indicator << " is_coset=" << (is_coset(subset) ? 1 : 0)
          << " tol=" << tol << "\n";
    } else if (*generate_cmd) {
      auto m = curve_from_file(curve_path);
      GenRunReport report =
          plan_only ? GenRunReport{plan(*m), true, 0, {}, 0, 0, 0}
                    : generate(m, guard);
      if (json_mode) {
        out << report_to_json(report).dump(2) << "\n";
      } else {
        const auto& p = report.params;
        out << "plan: s=" << p.s << " t=" << p.t << " i=" << p.i
            << " q^i=" << p.q_to_i << " r=" << p.r
            << " interval=" << p.interval_size << " (c=" << p.interval_c
            << ", j=" << p.interval_j << ") in_H_C=" << (p.in_H_C ? 1 : 0)
            << "\n";
        if (report.plan_only) {
          out << "plan-only (guard " << guard << ")\n";
        } else {
          out << "points_found=" << report.points_found
              << " generators=" << report.generators.size()
              << " sqrt_calls=" << report.sqrt_calls
              << " artin_schreier_calls=" << report.artin_schreier_calls << "\n";
          for (const auto& d : report.generators)
            out << divisor_to_json(d).dump() << "\n";
        }
      }
    } else if (*check_cmd) {
      auto m = curve_from_file(curve_path);
      auto inst = parse_subset_spec(*m->field(), subset_spec);
      auto table = enumerate_picard(m, guard);
      auto chk = check_generation(table, inst.elements, inst.mode);
      if (json_mode) {
        out << check_to_json(chk).dump(2) << "\n";
      } else {
        out << "subset_size=" << chk.subset_size << " shape_bound="
            << chk.shape_bound << " hypothesis=" << (chk.hypothesis_main ? 1 : 0)
            << " generated_order=" << chk.generated_order
            << " full=" << (chk.generated_full ? 1 : 0)
            << " conclusion=" << (chk.conclusion_holds ? 1 : 0) << "\n";
      }
      if (!chk.conclusion_holds) result.exit_code = 1;
    } else if (*charsum_cmd) {
      auto m = curve_from_file(curve_path);
      auto table = enumerate_picard(m, guard);
      auto cs = char_sum_table(table);
      if (json_mode) {
        Json j;
        j["exceptional"] = cs.exceptional;
        j["epsilon"] = cs.epsilon;
        j["max_bound_violation"] = cs.max_bound_violation;
        j["max_exact_error"] = cs.max_exact_error;
        j["max_twist_error"] = cs.max_twist_error;
        j["tolerances"] = {{"bound", 1e-6}, {"exact", 1e-9}, {"twist", 1e-6}};
        Json rows = Json::array();
        for (const auto& r : cs.rows)
          rows.push_back({{"lambda", r.lambda_code},
                          {"chi", r.chi_code},
                          {"re", r.value.real()},
                          {"im", r.value.imag()},
                          {"bound", r.bound},
                          {"exact", r.exact}});
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
      } else {
        out << "rows=" << cs.rows.size()
            << " max_bound_violation=" << cs.max_bound_violation
            << " max_exact_error=" << cs.max_exact_error
            << " max_twist_error=" << cs.max_twist_error
            << " (tolerances 1e-6 / 1e-9 / 1e-6)\n";
        for (const auto& r : cs.rows)
          out << "lambda=" << r.lambda_code << " chi=" << r.chi_code
              << " value=" << cli_detail::complex_str(r.value)
              << (r.exact ? " exact" : " bound=") << (r.exact ? "" : std::to_string(r.bound))
              << "\n";
      }
      if (cs.max_bound_violation > 1e-6 || cs.max_exact_error > 1e-9 ||
          cs.max_twist_error > 1e-6)
        result.exit_code = 1;
    } else if (*suite_cmd) {
      auto verdict = run_suite_dir(curve_path, guard);
      if (json_mode) {
        out << verdict_to_json(verdict).dump(2) << "\n";
      } else {
        for (const auto& c : verdict.checks)
          out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
              << "\n";
        out << (verdict.all_pass() ? "suite: all checks passed"
                                   : "suite: FAILURES present")
            << "\n";
      }
      if (!verdict.all_pass()) result.exit_code = 1;
    }
  } catch (const validation_error& e) {
    err << "validation error (" << e.clause() << "): " << e.what() << "\n";
    result.exit_code = 1;
  } catch (const resource_error& e) {
    err << "resource guard: " << e.what()
        << " (raise with PICGEN_GUARD or --guard)\n";
    result.exit_code = 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = 1;
  }

  result.output = out.str();
  result.error += err.str();
  return result;
}

}  // namespace picgen
