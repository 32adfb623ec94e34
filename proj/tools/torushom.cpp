#include <CLI11.hpp>

#include <iostream>
#include <set>

#include "torushom/fixture.hpp"
#include "torushom/report.hpp"

using namespace torushom;
using nlohmann::json;

namespace {

Coefficients pick_coefficients(const std::string& flag, const Fixture& f) {
  if (!flag.empty()) return Coefficients::parse(flag);
  return Coefficients::parse(f.coefficients.value_or("z"));
}

// Prints the poset validation report before rethrowing, so malformed input explains itself.
std::unique_ptr<Model> open_model(const std::string& path) {
  Fixture f = load_fixture(path);
  const auto rep = validate(f.poset);
  if (!rep.ok()) {
    for (const auto& v : rep.violations)
      if (v.find("pure") == std::string::npos) std::cerr << "invalid poset: " << v << "\n";
  }
  return std::make_unique<Model>(f);
}

std::vector<IntVector> parse_rows(const std::vector<std::string>& rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) {
    IntVector v;
    std::string cur;
    for (char ch : r + ",") {
      if (ch == ',') {
        try {
          v.push_back(BigInt(cur));
        } catch (const std::exception&) {
          throw TorusError(ErrorCode::ParseError, "bad lambda row '" + r + "'");
        }
        cur.clear();
      } else {
        cur += ch;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology and intersection products of manifolds with locally standard torus actions"};
  app.require_subcommand(1);
  std::string coeffs_flag;
  bool as_json = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--coeffs", coeffs_flag, "coefficients: z, q or f<p>");
    sub->add_flag("--json", as_json, "emit JSON");
  };

  std::string path;
  auto* report = app.add_subcommand("report", "print every computed invariant of a fixture");
  common(report);
  report->add_option("fixture", path, "fixture JSON")->required();

  std::string expr1, expr2;
  auto* intersect = app.add_subcommand("intersect", "intersect two cycle expressions");
  common(intersect);
  intersect->add_option("fixture", path, "fixture JSON")->required();
  intersect->add_option("x", expr1, "first expression, e.g. dia:L:e1")->required();
  intersect->add_option("y", expr2, "second expression, e.g. face:4")->required();

  auto* check = app.add_subcommand("check", "run the consistency checks; exit 1 on failure");
  common(check);
  check->add_option("fixture", path, "fixture JSON")->required();

  std::string kind, name = "polygon";
  std::vector<int> lengths;
  std::vector<std::string> lambda_rows;
  std::uint64_t seed = 0;
  bool seeded = false;
  auto* example = app.add_subcommand("example", "generate a fixture");
  example->add_option("kind", kind, "polygon_with_holes")->required()->check(CLI::IsMember({"polygon_with_holes"}));
  example->add_option("--lengths", lengths, "facets per boundary component, outer first")->required();
  auto* lam_opt = example->add_option("--lambda", lambda_rows, "one row per facet, e.g. 1,0 0,1 ...");
  auto* seed_opt = example->add_option("--seed", seed, "draw a random valid lambda");
  lam_opt->excludes(seed_opt);
  example->add_option("--name", name, "fixture name");

  CLI11_PARSE(app, argc, argv);
  seeded = seed_opt->count() > 0;

  try {
    if (*example) {
      const auto rows = seeded ? random_polygon_lambda(lengths, seed) : parse_rows(lambda_rows);
      Fixture f = polygon_with_holes(lengths, rows, name);
      Model m(f);  // validates
      std::cout << dump_fixture(f);
      return 0;
    }
    auto model = open_model(path);
    const Coefficients coeffs = pick_coefficients(coeffs_flag, model->fixture());
    if (*report) {
      json r = report_json(*model, coeffs);
      std::cout << (as_json ? r.dump(2) + "\n" : report_text(r));
      return 0;
    }
    if (*check) {
      const auto res = check_fixture(*model, coeffs);
      if (as_json) {
        std::cout << json{{"passed", res.passed}, {"failures", res.failures}, {"ok", res.ok()}}.dump(2) << "\n";
      } else {
        for (const auto& p : res.passed) std::cout << "ok   " << p << "\n";
        for (const auto& f : res.failures) std::cout << "FAIL " << f << "\n";
      }
      return res.ok() ? 0 : 1;
    }
    const auto& cc = model->calculus(coeffs);
    const auto x = cc.parse(expr1), y = cc.parse(expr2);
    const auto z = cc.intersect(x, y);
    std::set<std::pair<int, int>> bideg;
    for (auto b : cc.bidegrees(z)) bideg.insert(b);
    if (as_json) {
      json out = {{"x", expr1}, {"y", expr2}, {"result", cc.render(z)}, {"reduced", cc.render_reduced(z)}};
      json b = json::array();
      for (auto [k, l] : bideg) b.push_back({k, l});
      out["bidegrees"] = b;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << cc.render_reduced(z) << "\n";
      std::cout << "bidegree";
      if (bideg.empty()) std::cout << " (zero class)";
      for (auto [k, l] : bideg) std::cout << " (" << k << "," << l << ")";
      std::cout << "\n";
    }
    return 0;
  } catch (const TorusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
