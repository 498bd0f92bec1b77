// Batch front end: parse an instance file, dispatch to the engine, emit a
// machine-readable report (or a human-readable table with --format table).
//
// Exit codes: 0 success (validation failures and NonSplit are data, not
// errors), 1 domain error, 2 precision or parse error.

#include <CLI11.hpp>
#include <iostream>
#include <random>
#include <string>

#include "abeloid/json_io.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/unipotent.hpp"

namespace {

using namespace abeloid;

struct Options {
  std::string instance_path;
  std::string tol;
  std::string format = "json";
  long seed = 0;
};

const AbeloidModel& require_model(const Instance& inst, const char* cmd) {
  if (!inst.model)
    throw InvalidInput(cmd, "instance is missing the abeloid model (g + abeloid keys)");
  return *inst.model;
}

const PadicRep& require_rep(const Instance& inst, const char* cmd) {
  if (!inst.rep) throw InvalidInput(cmd, "instance is missing a rep");
  return *inst.rep;
}

std::optional<int> parse_tol_units(const Instance& inst, const std::string& tol) {
  if (tol.empty()) return std::nullopt;
  std::size_t slash = tol.find('/');
  long num = std::stol(tol.substr(0, slash == std::string::npos ? tol.size() : slash));
  long den = slash == std::string::npos ? 1 : std::stol(tol.substr(slash + 1));
  long e = inst.field->ram_index();
  if (den == 0 || (num * e) % den != 0)
    throw ParseError("tol", "tolerance must be a rational with denominator dividing e");
  return static_cast<int>(num * e / den);
}

Json run_validate(const Instance& inst) {
  if (inst.rep) {
    Json j = validation_to_json(validate_rep(*inst.rep));
    j["kind"] = "rep";
    return j;
  }
  if (inst.higgs) {
    Json j = validation_to_json(validate_higgs(*inst.higgs, require_model(inst, "validate")));
    j["kind"] = "higgs";
    return j;
  }
  if (inst.model) {
    Json j = validation_to_json(inst.model->validate());
    j["kind"] = "abeloid";
    return j;
  }
  throw InvalidInput("validate", "nothing to validate: supply rep, higgs, or abeloid");
}

Json run_decompose(const Instance& inst) {
  BlockDecomposition d = decompose_rep(require_rep(inst, "decompose"));
  Json j = decomposition_to_json(d);
  j["num_blocks"] = static_cast<int>(d.blocks.size());
  return j;
}

Json run_to_higgs(const Instance& inst) {
  HiggsModel h = rep_to_higgs(require_rep(inst, "to-higgs"), require_model(inst, "to-higgs"));
  return higgs_to_json(h);
}

Json run_from_higgs(const Instance& inst) {
  if (!inst.higgs) throw InvalidInput("from-higgs", "instance is missing higgs data");
  PadicRep rep = higgs_to_rep(*inst.higgs, require_model(inst, "from-higgs"));
  return rep_to_json(rep);
}

Json run_roundtrip(const Instance& inst, std::mt19937_64& rng) {
  const PadicRep& rep = require_rep(inst, "roundtrip");
  const AbeloidModel& model = require_model(inst, "roundtrip");
  HiggsModel h = rep_to_higgs(rep, model);
  PadicRep back = higgs_to_rep(h, model);
  std::optional<MatrixK> t = find_invertible_intertwiner(rep, back, rng);
  Json j{{"isomorphic", t.has_value()}, {"higgs_blocks", static_cast<int>(h.blocks.size())}};
  if (t) j["intertwiner"] = matrix_to_json(*t);
  return j;
}

Json run_analytic_check(const Instance& inst) {
  const AbeloidModel& model = require_model(inst, "analytic-check");
  const PadicRep& rep = require_rep(inst, "analytic-check");
  BlockDecomposition d = decompose_rep(rep);
  Json blocks = Json::array();
  bool all = true;
  for (const RepBlock& b : d.blocks) {
    bool chi_ok = analytic_test_character(b.character, model);
    AnalyticWitness w = analytic_test_unipotent(b.unipotent, model);
    all = all && chi_ok && w.analytic;
    Json entry{{"character", character_to_json(b.character)},
               {"character_analytic", chi_ok},
               {"unipotent_analytic", w.analytic}};
    if (!w.analytic) {
      entry["witness"] = matrix_to_json(*w.witness);
      entry["witness_column"] = w.column + 1;
    }
    blocks.push_back(std::move(entry));
  }
  return Json{{"analytic", all}, {"blocks", std::move(blocks)}};
}

Json run_hom(const Instance& inst, std::optional<int> tol) {
  if (inst.rep && inst.rep2) {
    HomSpace h = hom_space(*inst.rep, *inst.rep2, tol);
    Json basis = Json::array();
    for (const MatrixK& t : h.basis) basis.push_back(matrix_to_json(t));
    return Json{{"dimension", h.dimension}, {"basis", std::move(basis)}};
  }
  if (inst.higgs && inst.higgs2) {
    int dim = higgs_hom_dim(*inst.higgs, *inst.higgs2, require_model(inst, "hom"), tol);
    return Json{{"dimension", dim}};
  }
  throw InvalidInput("hom", "hom needs rep+rep2 or higgs+higgs2");
}

Json run_tensor(const Instance& inst) {
  if (inst.rep && inst.rep2) return rep_to_json(tensor_rep(*inst.rep, *inst.rep2));
  if (inst.higgs && inst.higgs2)
    return higgs_to_json(higgs_tensor(*inst.higgs, *inst.higgs2, require_model(inst, "tensor")));
  throw InvalidInput("tensor", "tensor needs rep+rep2 or higgs+higgs2");
}

Json run_cohomology(const Instance& inst, std::optional<int> tol) {
  if (!inst.gammas) throw InvalidInput("cohomology", "instance is missing cohomology.gammas");
  std::vector<int> dims = koszul_cohomology_dims(*inst.gammas, tol);
  int euler = 0;
  for (std::size_t d = 0; d < dims.size(); ++d) euler += (d % 2 == 0 ? dims[d] : -dims[d]);
  int floor = inst.field->precision_cap();
  for (const Scalar& gmm : *inst.gammas) floor = std::min(floor, gmm.precision_units());
  return Json{{"dims", dims}, {"euler", euler}, {"precision_floor", floor}};
}

Json run_ext1(const Instance& inst, std::optional<int> tol) {
  if (!inst.chi1 || !inst.chi2) throw InvalidInput("ext1", "instance is missing ext1.chi1/chi2");
  return Json{{"dimension", ext1_line(*inst.chi1, *inst.chi2, tol)},
              {"equal_characters", inst.chi1->equal_at_precision(*inst.chi2)}};
}

Json run_split_ext(const Instance& inst, std::optional<int> tol) {
  if (!inst.split_ext) throw InvalidInput("split-ext", "instance is missing split_ext data");
  SplitResult r = split_higgs_extension(inst.split_ext->b, inst.split_ext->theta,
                                        inst.split_ext->rho_offdiag, tol);
  Json j{{"split", r.split}};
  if (r.conjugation) j["conjugation"] = matrix_to_json(*r.conjugation);
  return j;
}

void print_table(const Json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        os << pad << key << ":\n";
        print_table(value, os, indent + 2);
      } else {
        os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& item : j) {
      if (item.is_object() || item.is_array()) {
        os << pad << "-\n";
        print_table(item, os, indent + 2);
      } else {
        os << pad << "- " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

int emit(const Json& report, const Options& opt) {
  if (opt.format == "table")
    print_table(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return 0;
}

Json error_json(const Error& e, const char* type) {
  Json j{{"error", Json{{"type", type}, {"operation", e.operation()}, {"message", e.what()}}}};
  if (e.precision_units()) j["error"]["precision_units"] = *e.precision_units();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-precision p-adic engine for representations of T_p A and "
               "pro-finite-etale Higgs data on abeloid varieties"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--instance", opt.instance_path, "instance JSON file")->required();
  app.add_option("--tol", opt.tol, "valuation tolerance for rank decisions (rational)");
  app.add_option("--format", opt.format, "output format: json|table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", opt.seed, "seed for randomized isomorphism probes");

  const char* names[] = {"validate",  "decompose", "to-higgs",   "from-higgs",
                         "roundtrip", "analytic-check", "hom",   "tensor",
                         "cohomology", "ext1",     "split-ext"};
  for (const char* n : names) app.add_subcommand(n);

  CLI11_PARSE(app, argc, argv);
  std::string cmd = app.get_subcommands().front()->get_name();
  std::mt19937_64 rng(static_cast<unsigned long>(opt.seed));

  try {
    Instance inst = load_instance_file(opt.instance_path);
    std::optional<int> tol = parse_tol_units(inst, opt.tol);
    Json report;
    if (cmd == "validate")
      report = run_validate(inst);
    else if (cmd == "decompose")
      report = run_decompose(inst);
    else if (cmd == "to-higgs")
      report = run_to_higgs(inst);
    else if (cmd == "from-higgs")
      report = run_from_higgs(inst);
    else if (cmd == "roundtrip")
      report = run_roundtrip(inst, rng);
    else if (cmd == "analytic-check")
      report = run_analytic_check(inst);
    else if (cmd == "hom")
      report = run_hom(inst, tol);
    else if (cmd == "tensor")
      report = run_tensor(inst);
    else if (cmd == "cohomology")
      report = run_cohomology(inst, tol);
    else if (cmd == "ext1")
      report = run_ext1(inst, tol);
    else if (cmd == "split-ext")
      report = run_split_ext(inst, tol);
    return emit(report, opt);
  } catch (const ParseError& e) {
    std::cout << error_json(e, "parse").dump(2) << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cout << error_json(e, "precision").dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    std::cout << error_json(e, "domain").dump(2) << "\n";
    return 1;
  }
}
