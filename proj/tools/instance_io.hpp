#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chowgamma/corpus.hpp"

namespace chowgamma::cli {

using nlohmann::json;

/// A parsed instance whose building set has not been validated yet.
struct ParsedInstance {
  std::shared_ptr<const GeomLattice> lattice;
  std::string matroid_label;
  std::string bset_kind;                  // min | max | explicit | augmented | chordal
  std::vector<Flat> bset;                 // candidate flats, unvalidated for "explicit"
  std::optional<GroundOrder> order;
  std::optional<BuiltMatroid> prebuilt;   // augmented instances come fully built
  std::vector<Flat> cut;                  // optional modular cut for checks
  bool has_cut = false;
};

/// Throws Error(InvalidInput, ...) with a located message on malformed input.
ParsedInstance parse_instance(const json& input);
/// Validates the building set; throws the validation error unchanged.
BuiltMatroid build(const ParsedInstance& p);

json flat_json(Flat f);
json flats_json(const std::vector<Flat>& fs);
json poly_json(const Polynomial& p);
json error_json(const Error& e);
Flat parse_flat(const json& j, int n, const std::string& where);

}  // namespace chowgamma::cli
