// Copyright 2026 The pimodulo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pimodulo/commands.hpp"

#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pimodulo/algebra.hpp"
#include "pimodulo/printer.hpp"
#include "pimodulo/reduction.hpp"
#include "pimodulo/scan.hpp"
#include "pimodulo/syntax.hpp"
#include "pimodulo/typing.hpp"

namespace pimodulo::cli {
namespace {

using nlohmann::json;

// One json-lines record. Text mode has its own printing at each call site.
void emit(std::ostream& out, const std::string& id, const std::string& kind,
          const std::string& status, json detail) {
  json line = {{"id", id}, {"kind", kind}, {"status", status}, {"detail", std::move(detail)}};
  out << line.dump() << '\n';
}

void emit_config(std::ostream& out, const RunConfig& cfg, const std::string& command) {
  json detail = {{"command", command},  {"theory", cfg.theory}, {"fuel", cfg.fuel},
                 {"seed", cfg.seed},     {"jobs", cfg.jobs},     {"algebra_size", cfg.algebra_size},
                 {"mode", cfg.mode},     {"context", cfg.context}};
  if (cfg.max_size) detail["max_size"] = *cfg.max_size;
  emit(out, "config", "config", "ok", std::move(detail));
}

bool json_mode(const RunConfig& cfg) { return cfg.format == Format::Json; }

// Both messages already carry the error code; parse errors also the span.
std::string describe(const ParseError& e) { return e.what(); }

std::string describe(const TypeError& e) {
  return e.span() ? e.span()->to_string() + ": " + e.what() : std::string(e.what());
}

ReductionMode pick_mode(const RunConfig& cfg, const Theory& theory) {
  if (cfg.mode == "beta") return ReductionMode::Beta;
  if (cfg.mode == "betar") return ReductionMode::BetaR;
  return theory.rules.empty() ? ReductionMode::Beta : ReductionMode::BetaR;
}

std::string_view mode_name(ReductionMode m) { return m == ReductionMode::Beta ? "beta" : "betar"; }

// Loads the theory and runs the body, mapping the shared failure modes to
// exit codes.
template <typename Body>
int guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    if (json_mode(cfg)) emit(out, "error", "io", "error", e.what());
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << describe(e) << '\n';
    if (json_mode(cfg)) emit(out, "error", "parse", "error", describe(e));
    return kParseError;
  } catch (const TypeError& e) {
    err << "error: " << describe(e) << '\n';
    if (json_mode(cfg)) emit(out, "error", "type", "error", describe(e));
    return e.code() == TypeErrorCode::FuelExhausted ? kFuelExhausted : kTypeError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    if (json_mode(cfg)) emit(out, "error", "usage", "error", e.what());
    return kParseError;
  }
}

ModelKind require_model(const Theory& theory) {
  auto kind = model_kind(theory);
  if (!kind) throw std::invalid_argument("no built-in model interprets theory `" + theory.name + "`");
  return *kind;
}

json tally_json(const LemmaTally& t) {
  return {{"holds", t.holds}, {"fails", t.fails}, {"unknown", t.unknown}, {"skipped", t.skipped}};
}

}  // namespace

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("PIMODULO_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return Fuel::kDefault;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    JudgementFile file = parse_judgement_file(read_file(cfg.term_file), cfg.term_file);
    ElaborateOptions eo;
    eo.extra_simple_types = suffix_instances(file);
    Theory theory = load_theory(cfg.theory, eo);
    if (json_mode(cfg)) emit_config(out, cfg, "check");

    Fuel theory_fuel(cfg.fuel);
    TheoryReport report = check_theory(theory, theory_fuel);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (!report.ok()) {
      bool fuel_only = true;
      for (const auto& item : report.items) {
        if (item.ok) continue;
        fuel_only = fuel_only && item.code == to_string(TypeErrorCode::FuelExhausted);
        if (json_mode(cfg)) {
          emit(out, "theory/" + item.subject, item.category, "error",
               {{"code", item.code}, {"message", item.message}});
        } else {
          out << "theory " << item.category << ' ' << item.subject << ": " << item.code << ": "
              << item.message << '\n';
        }
      }
      return fuel_only ? kFuelExhausted : kTypeError;
    }

    std::size_t type_errors = 0;
    std::size_t fuel_errors = 0;
    for (const Judgement& j : file.items) {
      const std::string id = (cfg.term_file.empty() ? "<input>" : cfg.term_file) + ":" +
                             std::to_string(j.line);
      std::string status = "ok";
      std::string detail;
      try {
        ResolvedJudgement r = resolve(j, theory);
        Fuel fuel(cfg.fuel);
        check_context(theory, r.context, fuel);
        if (r.type) {
          infer(theory, r.context, *r.type, fuel);
          check(theory, r.context, r.subject, *r.type, fuel);
          detail = print_term(*r.type);
        } else {
          detail = print_term(infer(theory, r.context, r.subject, fuel));
        }
      } catch (TypeError& e) {
        if (!e.span()) e.set_span(j.span);
        if (e.code() == TypeErrorCode::FuelExhausted) {
          status = "fuel-exhausted";
          ++fuel_errors;
        } else {
          status = "type-error";
          ++type_errors;
        }
        detail = describe(e);
      }
      if (json_mode(cfg)) {
        emit(out, id, "judgement", status, detail);
      } else if (status == "ok") {
        out << id << ": ok : " << detail << '\n';
      } else {
        out << id << ": " << status << ": " << detail << '\n';
      }
    }
    if (!json_mode(cfg)) {
      out << file.items.size() << " judgements, " << type_errors << " type errors, "
          << fuel_errors << " out of fuel\n";
    }
    if (type_errors) return kTypeError;
    return fuel_errors ? kFuelExhausted : kOk;
  });
}

int cmd_normalize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    SurfacePtr surface = parse_surface_term(cfg.term, "<term>");
    ElaborateOptions eo;
    eo.extra_simple_types = suffix_instances(surface);
    Theory theory = load_theory(cfg.theory, eo);
    const Term input = resolve(surface, theory);
    const ReductionMode mode = pick_mode(cfg, theory);
    if (json_mode(cfg)) emit_config(out, cfg, "normalize");

    std::uint64_t step = 0;
    TraceFn trace;
    if (cfg.trace) {
      trace = [&](const Reduct& r) {
        ++step;
        if (json_mode(cfg)) {
          emit(out, "step/" + std::to_string(step), "trace", "step",
               {{"position", position_to_string(r.position)},
                {"rule", r.step},
                {"term", print_term(r.term)}});
        } else {
          out << position_to_string(r.position) << '\t' << r.step << '\t' << print_term(r.term)
              << '\n';
        }
      };
    }
    Fuel fuel(cfg.fuel);
    NormalizeResult res = normalize(input, theory, mode, fuel, trace);
    const std::string printed = print_term(res.term);
    if (json_mode(cfg)) {
      emit(out, "result", "normalize", res.exhausted ? "fuel-exhausted" : "normal",
           {{"input", print_term(input)},
            {"term", printed},
            {"steps", res.steps},
            {"mode", mode_name(mode)}});
    } else if (res.exhausted) {
      out << "fuel exhausted after " << res.steps << " steps; last term:\n" << printed << '\n';
    } else {
      out << printed << '\n';
    }
    if (res.exhausted) {
      err << "fuel exhausted (" << cfg.fuel << " steps)\n";
      return kFuelExhausted;
    }
    return kOk;
  });
}

int cmd_model_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Theory theory = load_theory(cfg.theory);
    const ModelKind kind = require_model(theory);
    ModelCheckOptions opt;
    opt.max_algebra_size = cfg.algebra_size;
    opt.sampled_algebras = cfg.sampled_algebras;
    opt.seed = cfg.seed;
    opt.max_size = cfg.max_size.value_or(opt.max_size);
    opt.pairs = cfg.pairs;
    opt.substitutions = cfg.substitutions;
    opt.jobs = cfg.jobs;
    if (!cfg.context.empty()) opt.context = parse_context(cfg.context, theory);
    if (json_mode(cfg)) emit_config(out, cfg, "model-check");

    ModelCheckReport report = model_check(theory, opt);
    if (json_mode(cfg)) {
      for (const auto& [name, tally] : report.lemmas) {
        emit(out, "lemma/" + name, "lemma", tally.fails ? "fail" : "pass", tally_json(tally));
      }
    } else {
      out << "model " << to_string(report.kind) << ", context " << print_context(report.context)
          << ", " << report.algebras << " algebras, seed " << cfg.seed << '\n';
      out << "pairs " << report.pairs.size() << " (excluded " << report.excluded_pairs
          << "), substitutions " << report.substitutions.size() << " (excluded "
          << report.excluded_substitutions << ")\n";
      for (const auto& [name, t] : report.lemmas) {
        out << "  " << name << ": holds " << t.holds << ", fails " << t.fails << ", unknown "
            << t.unknown << ", skipped " << t.skipped << '\n';
      }
    }
    if (report.counterexample) {
      const Counterexample& c = *report.counterexample;
      if (json_mode(cfg)) {
        emit(out, "counterexample", "counterexample", "fail",
             {{"lemma", c.lemma},
              {"algebra", c.algebra},
              {"valuation", c.valuation},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"detail", c.detail}});
      } else {
        out << "counterexample for " << c.lemma << "\n  lhs: " << c.lhs << "\n  rhs: " << c.rhs
            << "\n  valuation: " << c.valuation << "\n  detail: " << c.detail << "\nalgebra:\n"
            << c.algebra;
      }
    }
    if (json_mode(cfg)) {
      emit(out, "summary", "model-check", report.ok() ? "pass" : "fail",
           {{"model", to_string(kind)},
            {"algebras", report.algebras},
            {"pairs", report.pairs.size()},
            {"excluded_pairs", report.excluded_pairs},
            {"substitutions", report.substitutions.size()},
            {"excluded_substitutions", report.excluded_substitutions},
            {"seed", cfg.seed}});
    } else {
      out << (report.ok() ? "no counterexample\n" : "counterexample found\n");
    }
    return report.ok() ? kOk : kCounterexample;
  });
}

int cmd_consistency_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Theory theory = load_theory(cfg.theory);
    const ModelKind kind = require_model(theory);
    const bool stt = kind == ModelKind::Stt;
    const std::string default_var = stt ? "x : o" : "x : U_Type";
    const std::string eps = stt ? "eps x" : "eps_Type x";
    Context ctx = parse_context(cfg.context.empty() ? default_var : cfg.context, theory);
    Term target = parse_term(cfg.target.empty() ? eps : cfg.target, theory, ctx);
    ConsistencyOptions opt;
    opt.max_size = cfg.max_size.value_or(opt.max_size);
    opt.fuel = cfg.fuel;
    if (json_mode(cfg)) emit_config(out, cfg, "consistency-scan");

    auto report_scan = [&](const std::string& id, const Term& goal, bool control) {
      ConsistencyReport r = consistency_scan(theory, ctx, goal, opt);
      std::vector<std::string> found;
      for (const Term& t : r.inhabitants) found.push_back(print_term(t));
      // The control expects inhabitants, the main target none.
      const bool pass = control ? !found.empty() : found.empty();
      if (json_mode(cfg)) {
        emit(out, id, control ? "control" : "consistency", pass ? "pass" : "fail",
             {{"target", print_term(goal)},
              {"context", print_context(ctx)},
              {"max_size", opt.max_size},
              {"enumerated", r.enumerated},
              {"normal", r.normal},
              {"truncated", r.truncated},
              {"inhabitants", found}});
      } else {
        out << (control ? "control " : "target ") << print_term(goal) << " in "
            << print_context(ctx) << ": " << r.enumerated << " terms, " << r.normal
            << " normal, " << found.size() << " inhabitants" << (r.truncated ? " (truncated)" : "")
            << (pass ? "" : "  FAIL") << '\n';
        for (const auto& f : found) out << "  " << f << '\n';
      }
      return pass;
    };

    bool ok = report_scan("target", target, false);
    if (cfg.control) ok = report_scan("control", parse_term(eps + " -> " + eps, theory, ctx), true) && ok;
    return ok ? kOk : kCounterexample;
  });
}

int cmd_sn_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    Theory theory = load_theory(cfg.theory);
    SnScanOptions opt;
    opt.max_size = cfg.max_size.value_or(opt.max_size);
    opt.count = cfg.count;
    opt.fuel = cfg.fuel;
    opt.seed = cfg.seed;
    opt.mode = cfg.mode == "betar" ? ReductionMode::BetaR : ReductionMode::Beta;
    opt.jobs = cfg.jobs;
    if (!cfg.context.empty()) {
      opt.context = parse_context(cfg.context, theory);
    } else if (auto kind = model_kind(theory)) {
      opt.context = default_context(*kind, theory);
    }
    if (json_mode(cfg)) emit_config(out, cfg, "sn-scan");

    SnScanReport report = sn_scan(theory, opt);
    std::size_t index = 0;
    for (const SnScanResult& r : report.results) {
      const bool sn = r.verdict.normalizing();
      if (json_mode(cfg)) {
        emit(out, "term/" + std::to_string(index), "sn", sn ? "sn" : "unknown",
             {{"term", print_term(r.term)},
              {"max_depth", r.verdict.max_depth},
              {"visited", r.verdict.visited}});
      } else if (!sn) {
        out << "fuel exhausted: " << print_term(r.term) << '\n';
      }
      ++index;
    }
    const double total = static_cast<double>(report.results.size());
    const double rate = total > 0 ? static_cast<double>(report.exhausted) / total : 0.0;
    const bool ok = rate <= cfg.unknown_threshold;
    if (json_mode(cfg)) {
      emit(out, "summary", "sn-scan", ok ? "pass" : "fail",
           {{"terms", report.results.size()},
            {"pool", report.pool},
            {"reducible_pool", report.reducible_pool},
            {"normalizing", report.normalizing},
            {"reducible", report.reducible},
            {"exhausted", report.exhausted},
            {"max_depth", report.max_depth},
            {"mode", mode_name(opt.mode)},
            {"seed", cfg.seed}});
    } else {
      out << "pool         " << report.pool << " (" << report.reducible_pool << " not normal)\n"
          << "terms        " << report.results.size() << '\n'
          << "normalizing  " << report.normalizing << " (" << report.reducible
          << " took a step)\n"
          << "exhausted    " << report.exhausted << '\n'
          << "max depth    " << report.max_depth << '\n'
          << "mode         " << mode_name(opt.mode) << ", seed " << cfg.seed << '\n';
    }
    return ok ? kOk : kFuelExhausted;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.fuel = default_fuel();
  std::string format = "text";
  std::uint32_t max_size = 0;

  CLI::App app{"Type checker and model sweeps for the lambda-Pi calculus modulo theory",
               "pimodulo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--theory", cfg.theory, "builtin name (stt, cc) or .th path")
      ->capture_default_str();
  app.add_option("--fuel", cfg.fuel, "reduction step budget (env PIMODULO_FUEL)")
      ->capture_default_str();
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed)->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-size", max_size, "largest generated term (nodes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", cfg.mode, "beta or betar")->check(CLI::IsMember({"beta", "betar"}));
  app.add_option("--context", cfg.context, "context `x : A, ...` for generated terms");

  auto* check = app.add_subcommand("check", "type-check every judgement of a .tm file");
  check->add_option("file", cfg.term_file)->required();

  auto* norm = app.add_subcommand("normalize", "print the normal form of a term");
  norm->add_option("term", cfg.term)->required();
  norm->add_flag("--trace", cfg.trace, "print one line per step");

  auto* model = app.add_subcommand("model-check", "sweep the model lemmas over finite algebras");
  model->add_option("--algebra-size", cfg.algebra_size, "largest carrier")
      ->check(CLI::Range(1U, kMaxCarrier));
  model->add_option("--pairs", cfg.pairs)->capture_default_str();
  model->add_option("--substitutions", cfg.substitutions)->capture_default_str();
  model->add_option("--samples", cfg.sampled_algebras, "algebras per size above 2")
      ->capture_default_str();

  auto* cons = app.add_subcommand("consistency-scan", "search normal inhabitants of a type");
  cons->add_option("--target", cfg.target, "type to inhabit");
  cons->add_flag("!--no-control", cfg.control, "skip the positive control");

  auto* sn = app.add_subcommand("sn-scan", "strong normalization of sampled well-typed terms");
  sn->add_option("--count", cfg.count)->capture_default_str();
  sn->add_option("--unknown-threshold", cfg.unknown_threshold,
                 "largest tolerated fraction of fuel-exhausted verdicts")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kParseError;
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (max_size) cfg.max_size = max_size;

  if (*check) return cmd_check(cfg, out, err);
  if (*norm) return cmd_normalize(cfg, out, err);
  if (*model) return cmd_model_check(cfg, out, err);
  if (*cons) return cmd_consistency_scan(cfg, out, err);
  return cmd_sn_scan(cfg, out, err);
}

}  // namespace pimodulo::cli
