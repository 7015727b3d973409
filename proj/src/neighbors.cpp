#include "rzlab/neighbors.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace rzlab {

namespace {

struct CaseSpec {
  const char* id;
  const char* statement;
  int from_i;
  int to_i;
  bool hyperbolic_source;
};

// Source lattices: the hyperbolic one, or every non-hyperbolic norm class.
constexpr CaseSpec kCases[] = {
    {"RP.1", "hyperbolic Pi^-1-modular: q+1 hyperbolic unimodular sublattices", -1, 0, true},
    {"RP.2", "Pi^-1-modular of norm l: one unimodular sublattice of norm l+1 and q of norm l", -1, 0, false},
    {"RP.3", "hyperbolic unimodular: 2 hyperbolic and q-1 Pi^-1-modular superlattices of norm 2/pi_0", 0, -1,
     true},
    {"RP.4", "unimodular of norm l: one Pi^-1-modular superlattice of norm l and q of norm l-1 unless l = 0", 0,
     -1, false},
    {"RU.1", "hyperbolic unimodular: q+1 hyperbolic Pi-modular sublattices", 0, 1, true},
    {"RU.2", "unimodular of norm l: one Pi-modular sublattice of norm l+1 and q of norm l unless l = 0", 0, 1,
     false},
    {"RU.3", "hyperbolic Pi-modular: 2 hyperbolic and q-1 unimodular superlattices of norm t/pi_0", 1, 0, true},
    {"RU.4", "Pi-modular of norm l: q unimodular superlattices of norm l-1 and one of norm l", 1, 0, false},
};

const CaseSpec& find_case(const Extension& ext, const std::string& id) {
  for (const auto& c : kCases)
    if (id == c.id) {
      if (id.compare(0, 2, to_string(ext.kind())) != 0)
        throw CaseInapplicable("case " + id + " does not apply to " + to_string(ext.kind()) + " extensions");
      return c;
    }
  throw FormatError("unknown neighbor case '" + id + "'");
}

// Smallest norm exponent of a Pi^i-modular lattice.
int min_norm_exponent(const Extension& ext, int i) { return (ext.kind() == ExtKind::RU && i == 1) ? 1 : 0; }

std::map<NormClass, int> expected_tally(const Extension& ext, const std::string& id, int ell) {
  const int q = ext.q();
  const int h = hyperbolic_norm_exponent(ext);
  std::map<NormClass, int> m;
  auto add = [&](int l, bool hyp, int n) {
    if (n > 0) m[{l, hyp}] += n;
  };
  if (id == "RP.1" || id == "RU.1") {
    add(h, true, q + 1);
  } else if (id == "RP.2") {
    add(ell + 1, ell + 1 == h, 1);
    add(ell, false, q);
  } else if (id == "RP.3" || id == "RU.3") {
    add(h, true, 2);
    add(h - 1, false, q - 1);
  } else if (id == "RP.4") {
    add(ell, false, 1);
    if (ell != 0) add(ell - 1, false, q);
  } else if (id == "RU.2") {
    add(ell + 1, ell + 1 == h, 1);
    if (ell != 0) add(ell, false, q);
  } else if (id == "RU.4") {
    add(ell - 1, false, q);
    add(ell, false, 1);
  }
  return m;
}

}  // namespace

std::map<NormClass, int> expected_neighbor_tally(const Extension& ext, int from_i, int to_i,
                                                 const NormClass& source) {
  for (const auto& c : kCases)
    if (std::string(c.id).compare(0, 2, to_string(ext.kind())) == 0 && c.from_i == from_i && c.to_i == to_i &&
        c.hyperbolic_source == source.hyperbolic)
      return expected_tally(ext, c.id, source.ell);
  throw UnsupportedModularity("no classified step from Pi^" + std::to_string(from_i) + " to Pi^" +
                              std::to_string(to_i));
}

NormClass norm_class(const Lattice& lat, int i) { return {norm_exponent(lat), is_hyperbolic(lat, i)}; }

NeighborTally modular_neighbors(const Lattice& lat, int from_i, int to_i) {
  const Extension& ext = lat.ext();
  if (!supported_modularity(ext, from_i) || !supported_modularity(ext, to_i) || std::abs(from_i - to_i) != 1)
    throw UnsupportedModularity("no neighbor step from Pi^" + std::to_string(from_i) + " to Pi^" +
                                std::to_string(to_i) + " for " + to_string(ext.kind()));
  if (!is_pi_modular(lat, from_i))
    throw UnsupportedModularity("lattice is not Pi^" + std::to_string(from_i) + "-modular");
  const auto candidates = to_i > from_i ? sublattices_index1(lat) : superlattices_index1(lat);
  NeighborTally out;
  for (const auto& m : candidates) {
    if (!is_pi_modular(m, to_i)) continue;
    ++out.counts[norm_class(m, to_i)];
    ++out.total;
    out.neighbors.push_back(m);
  }
  std::sort(out.neighbors.begin(), out.neighbors.end());
  return out;
}

bool CaseReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CaseCheck& c) { return c.pass(); });
}

bool PropsReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.pass(); });
}

std::vector<std::string> neighbor_case_ids(const Extension& ext) {
  const std::string prefix = to_string(ext.kind());
  std::vector<std::string> ids;
  for (const auto& c : kCases)
    if (prefix.compare(0, 2, c.id, 2) == 0) ids.emplace_back(c.id);
  return ids;
}

CaseReport run_neighbor_case(const Extension& ext, const std::string& id) {
  const CaseSpec& spec = find_case(ext, id);
  const int h = hyperbolic_norm_exponent(ext);
  CaseReport rep;
  rep.id = spec.id;
  rep.statement = spec.statement;
  rep.from_i = spec.from_i;
  rep.to_i = spec.to_i;

  std::vector<std::optional<int>> sources;
  if (spec.hyperbolic_source) {
    sources.push_back(std::nullopt);
  } else {
    for (int l = min_norm_exponent(ext, spec.from_i); l < h; ++l) sources.push_back(l);
  }
  if (sources.empty())
    throw CaseInapplicable("case " + id + ": every Pi^" + std::to_string(spec.from_i) +
                           "-modular lattice is hyperbolic here");

  for (const auto& ell : sources) {
    const Lattice w = witness_lattice(ext, spec.from_i, ell);
    CaseCheck chk;
    chk.source = norm_class(w, spec.from_i);
    chk.expected = expected_neighbor_tally(ext, spec.from_i, spec.to_i, chk.source);
    chk.observed = modular_neighbors(w, spec.from_i, spec.to_i).counts;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

PropsReport verify_neighbor_props(const Extension& ext) {
  if (!ext.ramified()) throw InvalidExtension("neighbor cases are stated for ramified extensions");
  PropsReport out;
  out.extension = to_string(ext.kind());
  out.q = ext.q();
  out.e = ext.e();
  out.vt = ext.kind() == ExtKind::RU ? ext.vt() : 0;
  for (const auto& id : neighbor_case_ids(ext)) {
    try {
      out.cases.push_back(run_neighbor_case(ext, id));
    } catch (const CaseInapplicable& err) {
      CaseReport skipped;
      skipped.id = id;
      skipped.statement = find_case(ext, id).statement;
      skipped.from_i = find_case(ext, id).from_i;
      skipped.to_i = find_case(ext, id).to_i;
      skipped.applicable = false;
      skipped.note = err.what();
      out.cases.push_back(std::move(skipped));
    }
  }
  return out;
}

WalkReport sample_neighbor_walks(const Extension& ext, int samples, std::uint64_t seed, int steps) {
  if (!ext.ramified()) throw InvalidExtension("neighbor walks are stated for ramified extensions");
  if (samples < 0 || steps < 1) throw FormatError("samples must be >= 0 and steps >= 1");
  const int lo = ext.kind() == ExtKind::RP ? -1 : 0;
  const int h = hyperbolic_norm_exponent(ext);
  std::mt19937_64 rng(seed);
  WalkReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.steps = steps;

  for (int s = 0; s < samples; ++s) {
    int i = lo + static_cast<int>(rng() % 2);
    // Norm exponents below h, or the hyperbolic class; some may be empty.
    std::vector<std::optional<int>> classes{std::nullopt};
    for (int l = min_norm_exponent(ext, i); l < h; ++l) classes.push_back(l);
    Lattice cur = witness_lattice(ext, i, classes[rng() % classes.size()]);
    for (int k = 0; k < steps; ++k) {
      const int j = i == lo ? lo + 1 : lo;
      const NeighborTally t = modular_neighbors(cur, i, j);
      CaseCheck chk;
      chk.source = norm_class(cur, i);
      chk.expected = expected_neighbor_tally(ext, i, j, chk.source);
      chk.observed = t.counts;
      ++rep.checks;
      if (!chk.pass()) rep.failures.push_back({cur.key(), i, j, std::move(chk)});
      if (t.neighbors.empty()) break;
      cur = t.neighbors[rng() % t.neighbors.size()];
      i = j;
    }
  }
  return rep;
}

}  // namespace rzlab
