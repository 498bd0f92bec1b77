#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "abeloid/higgs.hpp"
#include "abeloid/koszul.hpp"

namespace abeloid {

using Json = nlohmann::json;

// Instance file: field config plus whatever data the subcommand needs.
//
//   {"field": {"p": 5, "precision": 16, "poly": ["0","1"], "mode": "unramified"},
//    "g": 1,
//    "abeloid": {"omega_basis": M, "analytic_basis": M, "ordinary": b,
//                "canonical_directions": [..]},
//    "rep": {"n": n, "generators": [M, ...]},  "rep2": ...,
//    "higgs": {"blocks": [{"line": {"chi_an": [s..], "theta": [s..]},
//                          "unipotent": {"n": n, "analytic_logs": [M..],
//                                        "higgs_fields": [M..]}}]},  "higgs2": ...,
//    "cohomology": {"gammas": [s, ...]},
//    "ext1": {"chi1": [s..], "chi2": [s..]},
//    "split_ext": {"b": [s..], "theta": [s..], "rho_offdiag": [s..]}}
//
// Scalar literals are rational strings "a/b", coordinate objects
// {"coords": ["a0/b0", ...]}, or digit-expansion strings as emitted by
// reports ("c0 + c1*pi + ... + O(pi^M)").
struct Instance {
  FieldPtr field;
  std::optional<AbeloidModel> model;
  std::optional<PadicRep> rep;
  std::optional<PadicRep> rep2;
  std::optional<HiggsModel> higgs;
  std::optional<HiggsModel> higgs2;
  std::optional<std::vector<Scalar>> gammas;
  std::optional<CharacterTuple> chi1;
  std::optional<CharacterTuple> chi2;
  struct SplitExtData {
    std::vector<Scalar> b;
    std::vector<Scalar> theta;
    std::vector<Scalar> rho_offdiag;
  };
  std::optional<SplitExtData> split_ext;
};

Instance load_instance(const Json& j);
Instance load_instance_file(const std::string& path);

Scalar parse_scalar(const FieldPtr& field, const Json& j);
MatrixK parse_matrix(const FieldPtr& field, const Json& j);

Json scalar_to_json(const Scalar& s);  // digit-expansion string
Json matrix_to_json(const MatrixK& m);
Json rep_to_json(const PadicRep& rep);
Json character_to_json(const CharacterTuple& chi);
Json higgs_to_json(const HiggsModel& h);
Json decomposition_to_json(const BlockDecomposition& d);
Json validation_to_json(const ValidationReport& r);

}  // namespace abeloid
