// mechkit command-line tool: analyze, transform, compare, amd, fixtures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mechkit/json_io.hpp"
#include "mechkit/mechkit.hpp"

namespace {

using mechkit::InputError;
using mechkit::Scalar;
using mechkit::io::Json;

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

struct Loaded {
  mechkit::Instance instance;
  mechkit::Mechanism mechanism;
};

Loaded load(const std::string& instance_path, const std::string& mechanism_path) {
  Loaded l;
  l.instance = mechkit::io::instance_from_json(mechkit::io::read_file(instance_path));
  l.mechanism = mechkit::io::mechanism_from_json(mechkit::io::read_file(mechanism_path), l.instance);
  return l;
}

Scalar parse_scalar(const std::string& text, const std::string& flag) {
  try {
    return Scalar::parse(text);
  } catch (const InputError& e) {
    throw InputError(flag + ": " + e.what());
  }
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError(flag + ": expected comma-separated nonnegative integers, got \"" + text + "\"");
    }
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw InputError(flag + ": empty list");
  return out;
}

// "0,2;1,3" -> one index list per agent. A single list applies to every agent.
std::vector<std::vector<std::size_t>> parse_grid(const std::string& text, std::size_t agents) {
  std::vector<std::vector<std::size_t>> grid;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) grid.push_back(parse_index_list(part, "--grid"));
  if (grid.size() == 1 && agents > 1) grid.assign(agents, grid[0]);
  if (grid.size() != agents) throw InputError("--grid: expected one list per agent");
  return grid;
}

struct Options {
  std::string instance;
  std::string mechanism;
  // transform
  std::string flavor = "bic";
  std::string trace;
  std::string out;
  std::string out_mechanism;
  std::string dot;
  // compare
  std::string eta = "0";
  std::string mode = "fullTypeSet";
  std::size_t r = 8;
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  bool csv = false;
  // amd
  std::string lambda = "0";
  std::string grid;
  std::string ic = "bic";
  std::string lp_dump;
  // fixtures
  std::string fixture;
  std::string m = "4";
  std::string eps = "1/10";
  std::size_t classes = 2;
  std::string ms = "3,3";
  std::string f1 = "1/2";
  std::string out_dir;
};

int cmd_analyze(const Options& o) {
  const Loaded l = load(o.instance, o.mechanism);
  std::cout << mechkit::io::dump(mechkit::io::to_json(mechkit::analyze(l.instance, l.mechanism)));
  return 0;
}

int cmd_transform(const Options& o) {
  const Loaded l = load(o.instance, o.mechanism);
  mechkit::Flavor flavor;
  if (o.flavor == "bic") flavor = mechkit::Flavor::kBic;
  else if (o.flavor == "eeic") flavor = mechkit::Flavor::kEeic;
  else throw InputError("--flavor: expected bic or eeic");
  if (!o.dot.empty()) {
    std::string dot;
    for (const auto& m : mechkit::interim_rules(l.instance, l.mechanism)) {
      const auto model = mechkit::AgentModel::of(l.instance, m.agent);
      const auto w = mechkit::is_uniform(model.distribution) ? mechkit::Weighting::kUniform
                                                             : mechkit::Weighting::kDensityWeighted;
      dot += mechkit::to_dot(mechkit::build_graph(model, m, w), l.instance.type_spaces[m.agent],
                             "agent" + std::to_string(m.agent));
    }
    write_file(o.dot, dot);
  }
  const auto result = mechkit::transform_mechanism(l.instance, l.mechanism, flavor);
  Json report = mechkit::io::to_json(result.report);
  if (!o.trace.empty()) write_file(o.trace, mechkit::io::dump(report["steps"]));
  if (!o.out.empty()) {
    write_file(o.out, mechkit::io::dump(mechkit::io::to_json(l.instance, result.induced)));
  }
  if (!o.out_mechanism.empty()) {
    if (!result.report.materialized) {
      throw InputError("--out-mechanism: no ex-post table for this instance (needs one agent or "
                       "outcomeCoordinates)");
    }
    write_file(o.out_mechanism, mechkit::io::dump(mechkit::io::to_json(*result.report.materialized)));
  }
  std::cout << mechkit::io::dump(report);
  return 0;
}

int cmd_compare(const Options& o) {
  const Loaded l = load(o.instance, o.mechanism);
  mechkit::RSConfig cfg;
  cfg.eta = parse_scalar(o.eta, "--eta");
  cfg.r = o.r;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  if (o.mode == "fullTypeSet") cfg.mode = mechkit::RSMode::kFullTypeSet;
  else if (o.mode == "sampled") cfg.mode = mechkit::RSMode::kSampled;
  else throw InputError("--mode: expected fullTypeSet or sampled");
  const auto tg = mechkit::transform_mechanism(l.instance, l.mechanism).report;
  const auto rs = mechkit::rs_transform(l.instance, l.mechanism, cfg);
  const auto bh = mechkit::bei_huang(l.instance, l.mechanism);

  struct Line {
    std::string method, revenue_loss, welfare_delta, bic;
  };
  auto rs_line = [&](const mechkit::RSReport& r) {
    if (r.revenue) {
      return Line{r.method, (r.revenue_before - *r.revenue).str(), (*r.welfare - r.welfare_before).str(),
                  r.eps_bic->is_zero() ? "true" : "false"};
    }
    std::ostringstream loss, dw;
    loss << r.revenue_before.to_double() - r.revenue_estimate->mean;
    dw << r.welfare_estimate->mean - r.welfare_before.to_double();
    return Line{r.method, loss.str(), dw.str(), "unchecked"};
  };
  const std::vector<Line> lines = {
      {"type-graph", tg.revenue_loss.str(), (tg.after.welfare - tg.before.welfare).str(),
       tg.certificates.bic ? "true" : "false"},
      rs_line(rs), rs_line(bh)};
  if (o.csv) {
    std::cout << "method,revenueLoss,welfareDelta,bic\n";
    for (const auto& x : lines) {
      std::cout << x.method << "," << x.revenue_loss << "," << x.welfare_delta << "," << x.bic << "\n";
    }
    return 0;
  }
  Json j;
  j["table"] = Json::array();
  for (const auto& x : lines) {
    Json row;
    row["method"] = x.method;
    row["revenueLoss"] = x.revenue_loss;
    row["welfareDelta"] = x.welfare_delta;
    row["bic"] = x.bic;
    j["table"].push_back(std::move(row));
  }
  Json t = mechkit::io::to_json(tg);
  t.erase("steps");
  j["typeGraph"] = std::move(t);
  j["replicaSurrogate"] = mechkit::io::to_json(rs);
  j["beiHuang"] = mechkit::io::to_json(bh);
  std::cout << mechkit::io::dump(j);
  return 0;
}

int cmd_amd(const Options& o) {
  const auto inst = mechkit::io::instance_from_json(mechkit::io::read_file(o.instance));
  const Scalar lambda = parse_scalar(o.lambda, "--lambda");
  mechkit::IcMode ic;
  if (o.ic == "bic") ic = mechkit::IcMode::kBic;
  else if (o.ic == "dsic") ic = mechkit::IcMode::kDsic;
  else throw InputError("--ic: expected bic or dsic");
  std::vector<std::vector<std::size_t>> grid;
  if (o.grid.empty()) {
    for (std::size_t i = 0; i < inst.num_agents(); ++i) grid.push_back(mechkit::detail::iota(inst.num_types(i)));
  } else {
    grid = parse_grid(o.grid, inst.num_agents());
  }
  if (!o.lp_dump.empty()) {
    const auto d = mechkit::discretize_and_couple(inst, grid);
    write_file(o.lp_dump, mechkit::dump_lp(mechkit::build_lp(d.coarse, lambda, ic)));
  }
  const auto result = mechkit::amd_pipeline(inst, lambda, grid, ic);
  std::cout << mechkit::io::dump(mechkit::io::to_json(result.report));
  return 0;
}

int cmd_fixtures_list() {
  for (const auto& spec : mechkit::fixture_registry()) {
    std::cout << spec.name << "\t" << spec.description << "\n";
  }
  return 0;
}

int cmd_fixtures_emit(const Options& o) {
  const auto& spec = mechkit::find_fixture(o.fixture);
  mechkit::FixtureParams p;
  p.m = parse_index_list(o.m, "--m").front();
  p.eps = parse_scalar(o.eps, "--eps");
  p.classes = o.classes;
  p.ms = parse_index_list(o.ms, "--ms");
  p.f1 = parse_scalar(o.f1, "--f1");
  const auto f = spec.build(p);
  Json expected = Json::array();
  for (const auto& q : spec.expected(p)) expected.push_back(mechkit::io::to_json(q));
  if (o.out_dir.empty()) {
    Json bundle;
    bundle["fixture"] = spec.name;
    bundle["instance"] = mechkit::io::to_json(f.instance);
    bundle["mechanism"] = mechkit::io::to_json(f.mechanism);
    bundle["expected"] = std::move(expected);
    std::cout << mechkit::io::dump(bundle);
    return 0;
  }
  std::filesystem::create_directories(o.out_dir);
  const std::string base = (std::filesystem::path(o.out_dir) / spec.name).string();
  write_file(base + ".instance.json", mechkit::io::dump(mechkit::io::to_json(f.instance)));
  write_file(base + ".mechanism.json", mechkit::io::dump(mechkit::io::to_json(f.mechanism)));
  write_file(base + ".expected.json", mechkit::io::dump(expected));
  std::cout << base << ".instance.json\n" << base << ".mechanism.json\n" << base << ".expected.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-type mechanism analysis and BIC repair"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "epsilon levels, welfare, revenue, IR and menus");
  analyze->add_option("instance", o.instance, "instance JSON")->required();
  analyze->add_option("mechanism", o.mechanism, "mechanism JSON")->required();

  auto* transform = app.add_subcommand("transform", "repair an eps-BIC mechanism to exact BIC");
  transform->add_option("instance", o.instance, "instance JSON")->required();
  transform->add_option("mechanism", o.mechanism, "mechanism JSON")->required();
  transform->add_option("--flavor", o.flavor, "bic or eeic")->capture_default_str();
  transform->add_option("--trace", o.trace, "write the step trace here");
  transform->add_option("--out", o.out, "write the transformed interim mechanism here");
  transform->add_option("--out-mechanism", o.out_mechanism, "write the ex-post table here");
  transform->add_option("--dot", o.dot, "write the input type graphs (Graphviz) here");

  auto* compare = app.add_subcommand("compare", "type-graph repair vs replica-surrogate baselines");
  compare->add_option("instance", o.instance, "instance JSON")->required();
  compare->add_option("mechanism", o.mechanism, "mechanism JSON")->required();
  compare->add_option("--eta", o.eta, "price discount in [0, 1]")->capture_default_str();
  compare->add_option("--mode", o.mode, "fullTypeSet or sampled")->capture_default_str();
  compare->add_option("--r", o.r, "replicas and surrogates per draw")->capture_default_str();
  compare->add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
  compare->add_option("--trials", o.trials, "draws per type in sampled mode")->capture_default_str();
  compare->add_flag("--csv", o.csv, "print the comparison table as CSV");

  auto* amd = app.add_subcommand("amd", "LP-based design, lift, and repair");
  amd->add_option("instance", o.instance, "instance JSON")->required();
  amd->add_option("--lambda", o.lambda, "weight on welfare in [0, 1]")->capture_default_str();
  amd->add_option("--grid", o.grid, "retained type indices, e.g. 0,2 or 0,2;1,3 per agent");
  amd->add_option("--ic", o.ic, "bic or dsic")->capture_default_str();
  amd->add_option("--lp-dump", o.lp_dump, "write the LP in text form here");

  auto* fixtures = app.add_subcommand("fixtures", "built-in instances");
  fixtures->require_subcommand(1);
  auto* list = fixtures->add_subcommand("list", "list fixture names");
  auto* emit = fixtures->add_subcommand("emit", "write a fixture's instance and mechanism");
  emit->add_option("name", o.fixture, "fixture name")->required();
  emit->add_option("--m", o.m, "type count")->capture_default_str();
  emit->add_option("--eps", o.eps, "regret level")->capture_default_str();
  emit->add_option("--C", o.classes, "menu classes")->capture_default_str();
  emit->add_option("--ms", o.ms, "chain lengths, comma separated")->capture_default_str();
  emit->add_option("--f1", o.f1, "probability of the first type")->capture_default_str();
  emit->add_option("--out-dir", o.out_dir, "write files here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*transform) return cmd_transform(o);
    if (*compare) return cmd_compare(o);
    if (*amd) return cmd_amd(o);
    if (*list) return cmd_fixtures_list();
    if (*emit) return cmd_fixtures_emit(o);
  } catch (const mechkit::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const mechkit::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    if (!e.trace().empty()) std::cerr << "trace:\n" << e.trace();
    return kExitInternal;
  }
  return kExitInput;
}
