#include "torushom/report.hpp"

#include <iomanip>
#include <sstream>

#include "torushom/homology_x.hpp"

namespace torushom {

using nlohmann::json;

namespace {

std::string describe(const HomologyGroup& g, const Coefficients& coeffs) {
  return GroupData{g.free_rank, g.torsion}.describe(coeffs);
}

json homology_json(const std::map<int, HomologyGroup>& h, int n, const Coefficients& coeffs) {
  json out = json::array();
  for (int q = 0; q <= n; ++q) out.push_back(h.count(q) ? describe(h.at(q), coeffs) : "0");
  return out;
}

std::string join(const json& arr) {
  std::string out;
  for (const auto& x : arr) {
    if (!out.empty()) out += ", ";
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

}  // namespace

json report_json(const Model& m, const Coefficients& coeffs) {
  const auto& s = m.poset();
  const auto& lam = m.lambda();
  const auto& k = m.complex();
  const int n = m.n();
  json r;
  r["name"] = m.fixture().name;
  r["n"] = n;
  r["coefficients"] = coeffs.name();

  const auto fh = fh_vectors(s);
  const auto bb = buchsbaum_check(s, coeffs);
  r["poset"] = {{"elements", s.size()},
                {"f", fh.f},
                {"h", fh.h},
                {"h_prime", h_prime_vector(s, coeffs)},
                {"buchsbaum", bb.buchsbaum}};
  if (!bb.buchsbaum) r["poset"]["buchsbaum_witness"] = {{"element", bb.witness_element}, {"degree", bb.witness_degree}};

  const auto valid = k.validate();
  r["complex"] = {{"valid", valid.ok()}, {"violations", valid.violations}, {"euler_characteristic", k.euler_characteristic()}};
  r["homology"] = {{"boundary", homology_json(k.homology(Selector::Boundary, coeffs), n, coeffs)},
                   {"total", homology_json(k.homology(Selector::Total, coeffs), n, coeffs)},
                   {"relative", homology_json(k.homology(Selector::Relative, coeffs), n, coeffs)}};

  const auto star = check_star(s, lam, coeffs);
  r["star"] = {{"ok", star.ok}};
  if (!star.ok) {
    r["star"]["witness"] = star.witness_element;
    r["star"]["det"] = star.witness_det.str();
    return r;
  }

  json relations = json::array(), e2 = json::array(), einf = json::array();
  for (int q = 0; q <= n; ++q) {
    const std::size_t first = q < n ? relation_rows(s, lam, k, q, RelationKind::First, coeffs).size() : 0;
    const std::size_t second = q <= n - 2 ? relation_rows(s, lam, k, q, RelationKind::Second, coeffs).size() : 0;
    relations.push_back({{"q", q}, {"first_kind", first}, {"second_kind", second}});
    e2.push_back(face_module(s, lam, k, q, coeffs, false).dimension());
    einf.push_back(face_module(s, lam, k, q, coeffs).dimension());
  }
  r["relations"] = relations;
  r["e2"] = e2;
  r["e_infinity"] = einf;

  const auto table = bigraded_betti(s, lam, k, coeffs);
  json cells = json::array();
  for (int a = 0; a <= n; ++a) {
    json row = json::array();
    for (int b = 0; b <= n; ++b) row.push_back(table.at(a, b).group.describe(coeffs));
    cells.push_back(row);
  }
  r["bigraded"] = {{"cells", cells}, {"totals", table.totals}, {"euler_characteristic", table.euler_characteristic()}};

  QuotientRing ring(s, lam, coeffs);
  json socle = json::array(), kernel = json::array(), ns = json::array();
  for (int d = 0; d <= n; ++d) socle.push_back(ring.socle_basis(d).size());
  for (int d = 1; d <= n; ++d) kernel.push_back(kernel_of_g(s, lam, k, d, coeffs).dimension());
  for (int q = 0; q < n; ++q) {
    const auto rep = novik_swartz_check(s, lam, k, q, coeffs);
    ns.push_back({{"q", q},
                  {"elements", rep.elements},
                  {"rank", rep.rank},
                  {"expected_rank", rep.expected_rank},
                  {"all_in_socle", rep.all_in_socle},
                  {"ok", rep.ok()}});
  }
  r["socle"] = socle;
  r["kernel_of_g"] = kernel;
  r["novik_swartz"] = ns;
  r["equivariant_series"] = equivariant_series(s, k, 2 * n);

  const auto cons = consistency_report(s, lam, k, coeffs);
  r["consistency"] = {{"passed", cons.passed}, {"failures", cons.failures}};
  return r;
}

std::string report_text(const json& r) {
  std::ostringstream out;
  auto line = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(22) << label << value << "\n";
  };
  line("fixture", r["name"].get<std::string>());
  line("n", r["n"].dump());
  line("coefficients", r["coefficients"].get<std::string>());
  const auto& p = r["poset"];
  line("elements", p["elements"].dump());
  line("f", join(p["f"]));
  line("h", join(p["h"]));
  line("h'", join(p["h_prime"]));
  std::string bb = p["buchsbaum"].get<bool>() ? "yes" : "no";
  if (p.contains("buchsbaum_witness"))
    bb += " (link of " + p["buchsbaum_witness"]["element"].dump() + ", degree " + p["buchsbaum_witness"]["degree"].dump() + ")";
  line("buchsbaum", bb);
  const auto& c = r["complex"];
  line("complex", c["valid"].get<bool>() ? "valid" : "invalid");
  for (const auto& v : c["violations"]) line("", v.get<std::string>());
  line("chi(Q)", c["euler_characteristic"].dump());
  line("H(dQ)", join(r["homology"]["boundary"]));
  line("H(Q)", join(r["homology"]["total"]));
  line("H(Q,dQ)", join(r["homology"]["relative"]));
  if (!r["star"]["ok"].get<bool>()) {
    line("star condition", "fails at element " + r["star"]["witness"].dump() + " (det " + r["star"]["det"].get<std::string>() + ")");
    return out.str();
  }
  line("star condition", "holds");
  for (const auto& rel : r["relations"])
    line("relations q=" + rel["q"].dump(),
         rel["first_kind"].dump() + " first kind, " + rel["second_kind"].dump() + " second kind");
  line("E2_{q,q}", join(r["e2"]));
  line("Einf_{q,q}", join(r["e_infinity"]));
  out << "bigraded H_{k,l}(X)  (row k, column l)\n";
  const auto& cells = r["bigraded"]["cells"];
  std::size_t width = 1;
  for (const auto& row : cells)
    for (const auto& x : row) width = std::max(width, x.get<std::string>().size());
  for (std::size_t a = 0; a < cells.size(); ++a) {
    out << "  k=" << a << " ";
    for (const auto& x : cells[a]) out << " " << std::right << std::setw(static_cast<int>(width)) << x.get<std::string>();
    out << "\n";
  }
  line("totals", join(r["bigraded"]["totals"]));
  line("chi(X)", r["bigraded"]["euler_characteristic"].dump());
  line("socle dims", join(r["socle"]));
  line("ker g dims", join(r["kernel_of_g"]));
  for (const auto& ns : r["novik_swartz"])
    line("novik-swartz q=" + ns["q"].dump(), "rank " + ns["rank"].dump() + " of " + ns["elements"].dump() +
                                                 " (expected " + ns["expected_rank"].dump() + ")" +
                                                 (ns["ok"].get<bool>() ? "" : "  FAILED"));
  line("equivariant series", join(r["equivariant_series"]));
  for (const auto& x : r["consistency"]["passed"]) line("check", "ok   " + x.get<std::string>());
  for (const auto& x : r["consistency"]["failures"]) line("check", "FAIL " + x.get<std::string>());
  return out.str();
}

CheckResult check_fixture(const Model& m, const Coefficients& coeffs) {
  CheckResult out;
  const auto valid = m.complex().validate();
  if (!valid.ok())
    for (const auto& v : valid.violations) out.failures.push_back("complex: " + v);
  else
    out.passed.push_back("complex valid");
  const auto star = check_star(m.poset(), m.lambda(), coeffs);
  if (!star.ok) {
    out.failures.push_back("star condition fails at element " + std::to_string(star.witness_element));
    return out;
  }
  out.passed.push_back("star condition");
  if (!valid.ok()) return out;
  const auto cons = consistency_report(m.poset(), m.lambda(), m.complex(), coeffs);
  for (const auto& x : cons.passed) out.passed.push_back(x);
  for (const auto& x : cons.failures) out.failures.push_back(x);
  for (int q = 0; q < m.n(); ++q) {
    const auto ns = novik_swartz_check(m.poset(), m.lambda(), m.complex(), q, coeffs);
    const std::string label = "novik-swartz q=" + std::to_string(q);
    if (ns.ok()) out.passed.push_back(label);
    else
      for (const auto& v : ns.violations) out.failures.push_back(label + ": " + v);
  }
  const auto im = ideal_membership(m.poset(), m.lambda(), coeffs);
  if (im.ok()) out.passed.push_back("relations lie in the theta ideal");
  else
    for (const auto& f : im.failures) out.failures.push_back("not in the theta ideal: " + f);
  return out;
}

}  // namespace torushom
