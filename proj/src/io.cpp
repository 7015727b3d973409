#include "rzlab/io.hpp"

#include <algorithm>

#include "rzlab/quaternion.hpp"

namespace rzlab {

namespace {

std::vector<IntPoly> int_blocks(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of integer arrays");
  std::vector<IntPoly> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw FormatError(std::string(what) + " must be an array of integer arrays");
    IntPoly p;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw FormatError(std::string(what) + " entries must be integers");
      p.push_back(x.get<std::int64_t>());
    }
    out.push_back(std::move(p));
  }
  return out;
}

Json eelem_json(const EElem& x) {
  const auto v = x.valuation();
  return {{"valuation", v ? Json(*v) : Json(nullptr)}, {"repr", x.to_string()}};
}

Json tally_json(const std::map<NormClass, int>& m) {
  Json out = Json::array();
  for (const auto& [k, n] : m) out.push_back({{"ell", k.ell}, {"hyperbolic", k.hyperbolic}, {"count", n}});
  return out;
}

template <class F>
Json guarded(F fn) {
  try {
    return fn();
  } catch (const Error& err) {
    return {{"error", err.kind()}, {"message", err.what()}};
  }
}

}  // namespace

// ---- descriptors ----

FieldSpec FieldSpec::shorthand(int f, int e, ExtKind kind, int vt, int precision) {
  FieldSpec s;
  s.f = f;
  s.e = e;
  s.eisenstein = Field::default_eisenstein(e, f);
  s.precision = precision;
  s.kind = kind;
  if (kind == ExtKind::RU) {
    if (vt < 1 || vt > e) throw InvalidExtension("v(t) must lie in [1, e]");
    // pi_0^vt as an e x f block array (vt = e is 2 times a unit, handled by
    // multiplying out in the field).
    auto F = Field::make(f, e, s.eisenstein, precision);
    OF t = F->one();
    for (int i = 0; i < vt; ++i) t = t * F->uniformizer();
    s.t = t.coefficients();
  }
  return s;
}

FieldSpec FieldSpec::from_json(const Json& j) {
  try {
    FieldSpec s;
    s.f = j.at("f").get<int>();
    s.e = j.at("e").get<int>();
    s.eisenstein = j.contains("eisenstein") ? int_blocks(j.at("eisenstein"), "eisenstein")
                                            : Field::default_eisenstein(s.e, s.f);
    s.precision = j.value("precision", kDefaultPrecision);
    if (j.contains("unram")) {
      const auto u = int_blocks(Json::array({j.at("unram")}), "unram");
      s.unram = u[0];
    }
    const Json ext = j.value("ext", Json::object());
    s.kind = ext_kind_from_string(ext.value("kind", std::string("RP")));
    if (s.kind == ExtKind::RU) {
      if (!ext.contains("t")) throw FormatError("RU extensions need \"t\"");
      s.t = int_blocks(ext.at("t"), "t");
    }
    return s;
  } catch (const Json::exception& err) {
    throw FormatError(std::string("field descriptor: ") + err.what());
  }
}

Json FieldSpec::to_json() const {
  Json ext{{"kind", rzlab::to_string(kind)}};
  if (kind == ExtKind::RU) ext["t"] = t;
  Json j{{"f", f}, {"e", e}, {"eisenstein", eisenstein}, {"precision", precision}, {"ext", ext}};
  if (!unram.empty()) j["unram"] = unram;
  return j;
}

std::shared_ptr<const Extension> FieldSpec::build() const {
  if (f < 1 || e < 1) throw FormatError("f and e must be positive");
  auto F = Field::make(f, e, eisenstein, precision, unram);
  switch (kind) {
    case ExtKind::RP: return Extension::make_rp(F);
    case ExtKind::RU: return Extension::make_ru(F, OF::from_coeffs(*F, t));
    case ExtKind::UNRAM: return Extension::make_unramified(F);
  }
  throw FormatError("unknown extension kind");
}

Json of_to_json(const OF& x) {
  const std::uint64_t mask = x.field().mask();
  auto blocks = x.coefficients();
  for (auto& b : blocks)
    for (auto& c : b) {
      const auto u = static_cast<std::uint64_t>(c);
      if (u > mask / 2) c = -static_cast<std::int64_t>(mask - u) - 1;  // symmetric representative
    }
  return blocks;
}

OF of_from_json(const Field& field, const Json& j) { return OF::from_coeffs(field, int_blocks(j, "O_F element")); }

Lattice lattice_from_json(const Extension& ext, const Json& j) {
  try {
    const Json& b = j.at("basis");
    if (!b.is_array() || b.size() != 2) throw FormatError("a lattice basis has two columns");
    Basis basis;
    const EElem scale = EElem::pi_pow(ext, j.value("shift", 0));
    for (int c = 0; c < 2; ++c) {
      if (!b[c].is_array() || b[c].size() != 2) throw FormatError("each column has two entries");
      for (int r = 0; r < 2; ++r) {
        const Json& entry = b[c][r];
        if (!entry.is_array() || entry.size() != 2) throw FormatError("an O_E entry is a pair [a, b]");
        const OE x(ext, of_from_json(ext.field(), entry[0]), of_from_json(ext.field(), entry[1]));
        basis[c][r] = EElem(x) * scale;
      }
    }
    return Lattice::from_basis(ext, basis);
  } catch (const Json::exception& err) {
    throw FormatError(std::string("lattice descriptor: ") + err.what());
  }
}

Json lattice_to_json(const Lattice& lat) {
  const LatticeKey& k = lat.key();
  const int m = std::min({0, k.a, k.b, k.start});
  const Lattice integral = lat.scaled(-m);
  Json cols = Json::array();
  for (const auto& col : integral.basis()) {
    Json c = Json::array();
    for (const auto& x : col) {
      const OE v = x.to_integral();
      c.push_back({of_to_json(v.a()), of_to_json(v.b())});
    }
    cols.push_back(std::move(c));
  }
  return {{"basis", cols}, {"shift", m}, {"key", k.to_string()}};
}

// ---- reports ----

Json describe_field(const Extension& ext) {
  const Field& F = ext.field();
  Json j{{"f", F.f()},
         {"e", F.e()},
         {"q", F.q()},
         {"precision", F.precision()},
         {"kind", to_string(ext.kind())},
         {"ramified", ext.ramified()},
         {"pi0", of_to_json(ext.pi0())}};
  if (ext.ramified()) {
    j["different_exponent"] = inverse_different_exponent(ext);
    j["different_exponent_scan"] = inverse_different_exponent_scan(ext);
  } else {
    j["different_exponent"] = 0;  // unramified: trivial different
  }
  if (ext.kind() == ExtKind::RU) {
    j["t"] = of_to_json(ext.t());
    j["vt"] = ext.vt();
  }
  if (ext.ramified()) j["hyperbolic_norm_exponent"] = hyperbolic_norm_exponent(ext);
  j["u"] = of_to_json(ext.u());
  return j;
}

Json classify_lattice(const Lattice& lat) {
  const Extension& ext = lat.ext();
  Json j{{"key", lat.key().to_string()}, {"norm_exponent", norm_exponent(lat)}};
  const auto i = modularity(lat);
  j["modularity"] = i ? Json(*i) : Json(nullptr);
  j["hyperbolic"] = nullptr;
  j["normal_form"] = nullptr;
  if (i && supported_modularity(ext, *i)) {
    j["hyperbolic"] = is_hyperbolic(lat, *i);
    const NormalForm nf = normal_form_basis(lat, *i);
    Json gram = Json::array();
    for (const auto& row : nf.gram) gram.push_back({eelem_json(row[0]), eelem_json(row[1])});
    const auto xv = nf.x.valuation();
    j["normal_form"] = {{"x_valuation", xv ? Json(*xv) : Json(nullptr)}, {"x", nf.x.to_string()}, {"gram", gram}};
  }
  if (ext.kind() == ExtKind::RU && i && *i == 0) j["isotropic_lines"] = isotropic_line_count(lat);
  return j;
}

Json neighbors_json(const Lattice& lat, int from_i, int to_i) {
  const NeighborTally t = modular_neighbors(lat, from_i, to_i);
  Json ns = Json::array();
  for (const auto& m : t.neighbors) {
    const NormClass c = norm_class(m, to_i);
    ns.push_back({{"key", m.key().to_string()}, {"ell", c.ell}, {"hyperbolic", c.hyperbolic}});
  }
  const NormClass src = norm_class(lat, from_i);
  return {{"key", lat.key().to_string()},
          {"from", from_i},
          {"to", to_i},
          {"source", {{"ell", src.ell}, {"hyperbolic", src.hyperbolic}}},
          {"total", t.total},
          {"tally", tally_json(t.counts)},
          {"neighbors", ns}};
}

Json props_json(const PropsReport& rep) {
  Json cases = Json::array();
  for (const auto& c : rep.cases) {
    Json checks = Json::array();
    for (const auto& chk : c.checks) {
      checks.push_back({{"source", {{"ell", chk.source.ell}, {"hyperbolic", chk.source.hyperbolic}}},
                        {"expected", tally_json(chk.expected)},
                        {"observed", tally_json(chk.observed)},
                        {"pass", chk.pass()}});
    }
    Json cj{{"id", c.id},     {"statement", c.statement}, {"from", c.from_i},
            {"to", c.to_i},   {"applicable", c.applicable}, {"pass", c.pass()},
            {"checks", checks}};
    if (!c.note.empty()) cj["note"] = c.note;
    cases.push_back(std::move(cj));
  }
  const auto applicable = std::count_if(rep.cases.begin(), rep.cases.end(), [](const auto& c) { return c.applicable; });
  const auto passed = std::count_if(rep.cases.begin(), rep.cases.end(),
                                    [](const auto& c) { return c.applicable && c.pass(); });
  return {{"extension", rep.extension}, {"q", rep.q},           {"e", rep.e},
          {"vt", rep.vt},               {"applicable", applicable}, {"passed", passed},
          {"pass", rep.pass()},         {"cases", cases}};
}

Json walks_json(const WalkReport& rep) {
  Json failures = Json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"key", f.key.to_string()},
                        {"from", f.from_i},
                        {"to", f.to_i},
                        {"source", {{"ell", f.check.source.ell}, {"hyperbolic", f.check.source.hyperbolic}}},
                        {"expected", tally_json(f.check.expected)},
                        {"observed", tally_json(f.check.observed)}});
  }
  return {{"seed", rep.seed},   {"samples", rep.samples}, {"steps", rep.steps},
          {"checks", rep.checks}, {"pass", rep.pass()},     {"failures", failures}};
}

Json quat_check(const std::shared_ptr<const Extension>& ext, int digits) {
  const auto alg = QuatAlgebra::make(ext);
  Json j{{"kind", to_string(ext->kind())}, {"alpha", alg->alpha().to_string()}, {"beta", alg->beta().to_string()}};
  bool pass = true;

  const auto basis = alg->integral_basis();
  const bool closed = is_closed_order(basis);
  pass &= closed;
  j["closed_order"] = closed;
  j["discriminant"] = guarded([&]() -> Json {
    const DiscriminantReport d = basis_discriminant(basis);
    Json r{{"det_valuation", d.det_valuation}};
    r["reduced_valuation"] = d.reduced_valuation ? Json(*d.reduced_valuation) : Json(nullptr);
    pass &= d.reduced_valuation == 1;
    return r;
  });
  if (j["discriminant"].contains("error")) pass = false;

  j["gamma_relation"] = guarded([&]() -> Json {
    const bool ok = verify_gamma_relation(*alg, digits);
    pass &= ok;
    return {{"digits", digits}, {"holds", ok}};
  });
  if (j["gamma_relation"].contains("error")) pass = false;

  // The algebra is a division algebra because these are not norms from E.
  Json nn = Json::object();
  const bool rp = ext->kind() == ExtKind::RP;
  const OF quad = rp ? alg->alpha().to_integral() : alg->beta().to_integral();
  const bool quad_norm = is_norm(quad, *ext);
  nn[rp ? "delta_squared" : "theta_tilde_squared"] = {{"value", of_to_json(quad)}, {"is_norm", quad_norm}};
  const OF w = find_non_norm_uniformizer(*ext);
  const bool w_norm = is_norm(w, *ext);
  nn["uniformizer"] = {{"value", of_to_json(w)}, {"is_norm", w_norm}};
  pass &= !quad_norm && !w_norm;
  j["non_norms"] = nn;
  j["pass"] = pass;
  return j;
}

Json tangent_json(const Extension& ext) {
  const DeformRelations derived = derive_relations(ext);
  const DeformRelations ref = reference_relations(ext);
  const RelationComparison cmp = compare_relations(derived, ref);
  const int dim = tangent_dimension(derived);
  Json gens = Json::array();
  for (std::size_t i = 0; i < derived.generators.size(); ++i)
    gens.push_back({{"label", derived.labels[i]}, {"poly", derived.generators[i].to_string()}});
  return {{"f", derived.f},
          {"e", derived.e},
          {"vt", derived.vt},
          {"tangent_dim", dim},
          {"reference_tangent_dim", tangent_dimension(ref)},
          {"drinfeld_dim", kDrinfeldDimension},
          {"verdict", dim > kDrinfeldDimension ? "naive ≠ Drinfeld" : "no difference at first order"},
          {"ideal_equal", cmp.equal},
          {"missing_from_derived", cmp.missing_from_derived},
          {"missing_from_reference", cmp.missing_from_reference},
          {"syntactic_differences", cmp.syntactic_differences},
          {"derived", gens}};
}

Json stats_json(const FiberGraph& g) {
  const GraphStats s = graph_stats(g);
  Json classes = Json::array();
  for (const auto& [c, n] : s.vertices) {
    Json deg = Json::object();
    if (const auto it = s.degrees.find(c); it != s.degrees.end())
      for (const auto& [d, k] : it->second) deg[std::to_string(d)] = k;
    classes.push_back(
        {{"kind", to_string(c.kind)}, {"ell", c.ell}, {"hyperbolic", c.hyperbolic}, {"vertices", n}, {"degrees", deg}});
  }
  Json tails = Json::array();
  for (const auto& t : tails_report(g)) {
    tails.push_back({{"attachment", t.attachment.to_string()},
                     {"attachments", t.attachments},
                     {"lines", t.lines},
                     {"points", t.points},
                     {"max_drop", t.max_drop},
                     {"closed", t.closed}});
  }
  return {{"case", to_string(g.kind)},
          {"q", g.q},
          {"radius", g.radius},
          {"lines", g.count(VertexKind::Line)},
          {"points", g.count(VertexKind::Point)},
          {"edges", s.edges},
          {"frontier", s.frontier},
          {"classes", classes},
          {"tails", tails}};
}

}  // namespace rzlab
