// rzlab: command-line front end. Reports are JSON on stdout unless --out is
// given. Exit codes: 0 success, 1 failed verification, 2 bad input.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rzlab/io.hpp"
#include "rzlab/quaternion.hpp"

using namespace rzlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct FieldOpts {
  std::string path;
  int f = 1;
  int e = 1;
  std::string ext = "rp";
  int vt = 1;
  std::optional<int> precision;
};

struct Options {
  FieldOpts field;
  std::string in;
  std::string out;
  std::string base;
  std::string case_kind;
  std::string format = "json";
  int radius = 1;
  int jobs = 1;
  int digits = 16;
  int samples = 20;
  std::uint64_t seed = 1;
  std::optional<int> from_i, to_i;
};

void add_field_options(CLI::App* sub, FieldOpts& o) {
  auto* path = sub->add_option("--field", o.path, "Field descriptor (JSON)")->check(CLI::ExistingFile);
  sub->add_option("--f", o.f, "Residue degree of F over Q_2")->excludes(path);
  sub->add_option("--e", o.e, "Ramification index of F over Q_2")->excludes(path);
  sub->add_option("--ext", o.ext, "Extension type: rp, ru or unram")
      ->transform(CLI::IsMember({"rp", "ru", "unram"}, CLI::ignore_case))
      ->excludes(path);
  sub->add_option("--vt", o.vt, "v(t) for ru, t = pi_0^vt")->excludes(path);
  sub->add_option("--precision", o.precision, "Working precision in pi_0-digits (raised if too low)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw FormatError(path + ": " + err.what());
  }
}

ExtKind kind_of(const std::string& s) {
  if (s == "rp") return ExtKind::RP;
  if (s == "ru") return ExtKind::RU;
  return ExtKind::UNRAM;
}

/// Precision: --precision, else RZLAB_PRECISION, else the descriptor. The
/// result is raised to what the operation needs: per_e digits per unit of e,
/// and `digits` checked digits on top of a margin of 2e.
std::shared_ptr<const Extension> resolve_field(const FieldOpts& o, int per_e, int digits = 0) {
  FieldSpec spec = o.path.empty() ? FieldSpec::shorthand(o.f, o.e, kind_of(o.ext), o.vt)
                                  : FieldSpec::from_json(read_json_file(o.path));
  if (o.precision) {
    spec.precision = *o.precision;
  } else if (const char* env = std::getenv("RZLAB_PRECISION"); env && *env) {
    try {
      std::size_t used = 0;
      spec.precision = std::stoi(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw FormatError(std::string("RZLAB_PRECISION is not an integer: ") + env);
    }
  }
  const int needed = std::max(spec.e * per_e, digits + 2 * spec.e);
  if (spec.precision < needed) {
    std::cerr << "rzlab: precision raised from " << spec.precision << " to " << needed << "\n";
    spec.precision = needed;
  }
  return spec.build();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw FormatError("cannot write " + out);
  os << text;
}

void emit(const Json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

Lattice read_lattice(const Extension& ext, const std::string& path) {
  if (path.empty()) throw FormatError("--in is required");
  return lattice_from_json(ext, read_json_file(path));
}

// ---- subcommands ----

int field_describe(const Options& o) {
  emit(describe_field(*resolve_field(o.field, 6)), o.out);
  return kExitOk;
}

int lattice_classify(const Options& o) {
  const auto E = resolve_field(o.field, 6);
  emit(classify_lattice(read_lattice(*E, o.in)), o.out);
  return kExitOk;
}

int lattice_neighbors(const Options& o) {
  const auto E = resolve_field(o.field, 6);
  const Lattice lat = read_lattice(*E, o.in);
  int from = 0;
  if (o.from_i) {
    from = *o.from_i;
  } else if (const auto m = modularity(lat)) {
    from = *m;
  } else {
    throw UnsupportedModularity("the lattice is not Pi^i-modular for any i");
  }
  int to = from + 1;
  if (o.to_i) {
    to = *o.to_i;
  } else if (!supported_modularity(*E, to)) {
    to = from - 1;
  }
  emit(neighbors_json(lat, from, to), o.out);
  return kExitOk;
}

int verify_props(const Options& o) {
  const auto E = resolve_field(o.field, 6);
  const PropsReport props = verify_neighbor_props(*E);
  const WalkReport walks = sample_neighbor_walks(*E, o.samples, o.seed);
  Json j = props_json(props);
  j["walks"] = walks_json(walks);
  j["pass"] = props.pass() && walks.pass();
  emit(j, o.out);
  return j["pass"].get<bool>() ? kExitOk : kExitFailed;
}

FieldOpts graph_field(const Options& o) {
  FieldOpts f = o.field;
  if (!o.case_kind.empty() && f.path.empty()) f.ext = o.case_kind;
  return f;
}

FiberGraph build_graph(const Options& o) {
  if (o.radius < 0) throw FormatError("--radius must be >= 0");
  const auto E = resolve_field(graph_field(o), o.radius + 6);
  if (!o.case_kind.empty() && kind_of(o.case_kind) != E->kind())
    throw InvalidExtension("--case " + o.case_kind + " does not match the field's extension " + to_string(E->kind()));
  const Lattice base = o.base.empty() ? default_base_line(*E) : read_lattice(*E, o.base);
  return build_ball(base, o.radius, o.jobs);
}

int graph_build(const Options& o) {
  const FiberGraph g = build_graph(o);
  std::ostringstream os;
  if (o.format == "dot")
    write_dot(os, g);
  else
    write_json(os, g);
  emit(os.str(), o.out);
  return kExitOk;
}

int cmd_graph_stats(const Options& o) {
  FiberGraph g;
  if (!o.in.empty()) {
    std::ifstream is(o.in);
    if (!is) throw FormatError("cannot read " + o.in);
    g = read_json(is);
  } else {
    g = build_graph(o);
  }
  emit(stats_json(g), o.out);
  return kExitOk;
}

int quat_check_cmd(const Options& o) {
  if (o.digits < 1) throw FormatError("--digits must be positive");
  const auto E = resolve_field(o.field, 6, o.digits);
  const Json j = quat_check(E, o.digits);
  emit(j, o.out);
  return j["pass"].get<bool>() ? kExitOk : kExitFailed;
}

int deform_tangent(const Options& o) {
  const auto E = resolve_field(o.field, 6);
  const Json j = tangent_json(*E);
  emit(j, o.out);
  return j["ideal_equal"].get<bool>() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rzlab: hermitian lattices, neighbor counts and fiber graphs over ramified 2-adic extensions"};
  app.require_subcommand(1);
  Options o;
  int (*action)(const Options&) = nullptr;
  std::string name;

  auto leaf = [&](CLI::App* parent, const std::string& cmd, const std::string& help, int (*fn)(const Options&)) {
    CLI::App* sub = parent->add_subcommand(cmd, help);
    add_field_options(sub, o.field);
    sub->add_option("--out", o.out, "Write the report here instead of stdout");
    sub->callback([&action, &name, fn, parent, cmd] {
      action = fn;
      name = parent->get_name() + " " + cmd;
    });
    return sub;
  };

  auto* field = app.add_subcommand("field", "Field information")->require_subcommand(1);
  leaf(field, "describe", "q, e, f and the different exponent", field_describe);

  auto* lattice = app.add_subcommand("lattice", "Single-lattice reports")->require_subcommand(1);
  leaf(lattice, "classify", "Modularity, norm exponent, hyperbolicity and normal form", lattice_classify)
      ->add_option("--in", o.in, "Lattice descriptor (JSON)")
      ->required();
  auto* nb = leaf(lattice, "neighbors", "Pi^j-modular lattices at index 1", lattice_neighbors);
  nb->add_option("--in", o.in, "Lattice descriptor (JSON)")->required();
  nb->add_option("--from", o.from_i, "Modularity of the input (default: computed)");
  nb->add_option("--to", o.to_i, "Modularity of the neighbors (default: the other supported one)");

  auto* verify = app.add_subcommand("verify", "Exhaustive checks")->require_subcommand(1);
  auto* props = leaf(verify, "props", "Neighbor-count cases on witnesses and on random walks", verify_props);
  props->add_option("--samples", o.samples, "Number of random walks")->check(CLI::NonNegativeNumber);
  props->add_option("--seed", o.seed, "Seed for the random walks");

  auto* graph = app.add_subcommand("graph", "Fiber incidence graph")->require_subcommand(1);
  for (auto [cmd, help, fn] : {std::tuple{"build", "Build and export a ball", graph_build},
                               std::tuple{"stats", "Vertex, degree and tail counts", cmd_graph_stats}}) {
    auto* sub = leaf(graph, cmd, help, fn);
    sub->add_option("--case", o.case_kind, "rp or ru")->transform(CLI::IsMember({"rp", "ru"}, CLI::ignore_case));
    sub->add_option("--radius", o.radius, "Number of line layers beyond the base line");
    sub->add_option("--base", o.base, "Base line descriptor (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    if (std::string(cmd) == "build")
      sub->add_option("--format", o.format, "dot or json")->transform(CLI::IsMember({"dot", "json"}));
    else
      sub->add_option("--in", o.in, "Graph export (JSON) instead of building")->check(CLI::ExistingFile);
  }

  auto* quat = app.add_subcommand("quat", "Quaternion algebra")->require_subcommand(1);
  leaf(quat, "check", "Discriminant, gamma relation and non-norm verdicts", quat_check_cmd)
      ->add_option("--digits", o.digits, "Digits for the gamma relation");

  auto* deform = app.add_subcommand("deform", "First-order deformations")->require_subcommand(1);
  leaf(deform, "tangent", "Tangent dimension at the hyperbolic point", deform_tangent);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action(o);
  } catch (const Error& err) {
    std::cerr << "rzlab " << name << ": " << err.kind() << ": " << err.what() << "\n";
    return err.is_input_error() ? kExitInput : kExitFailed;
  } catch (const Json::exception& err) {
    std::cerr << "rzlab " << name << ": FormatError: " << err.what() << "\n";
    return kExitInput;
  }
}
