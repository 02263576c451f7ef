#include "instance_io.hpp"

namespace chowgamma::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::vector<Flat> parse_flats(const json& j, int n, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of index arrays");
  std::vector<Flat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_flat(j[i], n, where + "[" + std::to_string(i) + "]"));
  return out;
}

Matroid parse_matroid(const json& m, std::string& label) {
  const std::string where = "matroid";
  const json& type = field(m, "type", where);
  if (!type.is_string()) bad(where + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "uniform") {
    int r = int_field(m, "r", where), n = int_field(m, "n", where);
    label = "U" + std::to_string(r) + "," + std::to_string(n);
    return make_uniform(r, n);
  }
  if (t == "boolean") {
    int n = int_field(m, "n", where);
    label = "B" + std::to_string(n);
    return make_boolean(n);
  }
  if (t == "partition") {
    int n = int_field(m, "n", where);
    label = "Pi" + std::to_string(n);
    return make_partition(n);
  }
  if (t == "graphic") {
    int v = int_field(m, "vertices", where);
    const json& e = field(m, "edges", where);
    if (!e.is_array()) bad(where + ".edges", "expected an array of pairs");
    std::vector<std::pair<int, int>> edges;
    for (const auto& x : e) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer() || !x[1].is_number_integer())
        bad(where + ".edges", "each edge is a pair of vertex indices");
      edges.emplace_back(x[0].get<int>(), x[1].get<int>());
    }
    label = "graphic";
    return make_graphic(v, edges);
  }
  if (t == "rank-table") {
    int n = int_field(m, "n", where);
    const json& r = field(m, "ranks", where);
    if (!r.is_array()) bad(where + ".ranks", "expected an array indexed by subset bitmask");
    std::vector<int> table;
    for (const auto& x : r) {
      if (!x.is_number_integer()) bad(where + ".ranks", "ranks must be integers");
      table.push_back(x.get<int>());
    }
    label = "rank-table";
    return Matroid::from_rank_table(n, std::move(table));
  }
  bad(where + ".type", "unknown matroid type \"" + t + "\"");
}

}  // namespace

Flat parse_flat(const json& j, int n, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of element indices");
  Mask m = 0;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(where, "element indices must be integers");
    int e = x.get<int>();
    if (e < 0 || e >= n) bad(where, "element " + std::to_string(e) + " is outside the ground set");
    m |= bit(e);
  }
  return Flat{m};
}

ParsedInstance parse_instance(const json& input) {
  if (!input.is_object()) bad("instance", "expected a JSON object");
  ParsedInstance p;
  const json& m = field(input, "matroid", "instance");
  std::optional<Matroid> matroid;
  if (m.is_object() && m.value("type", "") == "flats") {
    int n = int_field(m, "n", "matroid");
    p.lattice = std::make_shared<const GeomLattice>(GeomLattice::from_flats(n, parse_flats(field(m, "flats", "matroid"), n, "matroid.flats")));
    p.matroid_label = "flats";
  } else {
    matroid = parse_matroid(m, p.matroid_label);
    p.lattice = std::make_shared<const GeomLattice>(lattice_of_flats(*matroid));
  }
  const int n = p.lattice->ground_size();

  const json b = input.contains("building_set") ? input.at("building_set") : json("min");
  if (b.is_string()) {
    p.bset_kind = b.get<std::string>();
    if (p.bset_kind == "min") {
      p.bset = g_min(*p.lattice).elements();
    } else if (p.bset_kind == "max") {
      p.bset = g_max(*p.lattice).elements();
    } else if (p.bset_kind == "augmented") {
      if (!matroid) bad("building_set", "augmented needs a matroid given by type, not by flats");
      p.prebuilt = augmented_built_matroid(*matroid);
      p.lattice = p.prebuilt->lattice_ptr();
      p.bset = p.prebuilt->bset().elements();
      p.order = p.prebuilt->order();
    } else {
      bad("building_set", "unknown building set \"" + p.bset_kind + "\"");
    }
  } else if (b.is_array()) {
    p.bset_kind = "explicit";
    p.bset = parse_flats(b, n, "building_set");
  } else if (b.is_object() && b.contains("chordal")) {
    p.bset_kind = "chordal";
    if (p.matroid_label.empty() || p.matroid_label[0] != 'B') bad("building_set", "chordal sets need a Boolean matroid");
    const json& k = b.at("chordal");
    if (!k.is_number_integer()) bad("building_set.chordal", "expected an index");
    auto all = chordal_building_sets(*p.lattice, n);
    const int idx = k.get<int>();
    if (idx < 0 || idx >= static_cast<int>(all.size()))
      bad("building_set.chordal", "index out of range (0.." + std::to_string(all.size() - 1) + ")");
    p.bset = all[idx].elements();
  } else {
    bad("building_set", "expected \"min\", \"max\", \"augmented\", a flat list or {\"chordal\": k}");
  }

  const int ground = p.lattice->ground_size();
  if (input.contains("order")) {
    const json& o = input.at("order");
    if (!o.is_array()) bad("order", "expected a permutation of the ground set");
    std::vector<int> seq;
    for (const auto& x : o) {
      if (!x.is_number_integer()) bad("order", "expected integers");
      seq.push_back(x.get<int>());
    }
    if (static_cast<int>(seq.size()) != ground) bad("order", "length differs from the ground set size");
    p.order = GroundOrder(std::move(seq));
  }
  if (input.contains("cut")) {
    p.has_cut = true;
    p.cut = parse_flats(input.at("cut"), ground, "cut");
  }
  return p;
}

BuiltMatroid build(const ParsedInstance& p) {
  if (p.prebuilt) return p.order ? p.prebuilt->with_order(*p.order) : *p.prebuilt;
  BuildingSet b = validate_building_set(*p.lattice, p.bset);
  BuiltMatroid bm(p.lattice, std::move(b));
  return p.order ? bm.with_order(*p.order) : bm;
}

json flat_json(Flat f) { return elements_of(f.bits); }

json flats_json(const std::vector<Flat>& fs) {
  json out = json::array();
  for (Flat f : fs) out.push_back(flat_json(f));
  return out;
}

json poly_json(const Polynomial& p) {
  json out = json::array();
  for (auto c : p.coeffs()) out.push_back(c);
  return out;
}

json error_json(const Error& e) {
  return {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", flats_json(e.witness())}};
}

}  // namespace chowgamma::cli
