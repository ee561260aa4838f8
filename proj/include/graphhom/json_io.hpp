#pragma once

#include <json.hpp>

#include <fstream>
#include <string>

#include "graphhom/hochschild.hpp"
#include "graphhom/ribbon.hpp"
#include "graphhom/star.hpp"

namespace graphhom {

using nlohmann::json; // object keys are kept sorted, so dumps are canonical

inline json rational_to_json(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw budget_error("rational too large for JSON output");
  return json::array({q.get_num().get_si(), q.get_den().get_si()});
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return rat(j.get<long>());
  if (j.is_array() && j.size() == 2) return rat(j[0].get<long>(), j[1].get<long>());
  throw validation_error("expected an integer or a [num, den] pair");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

// {"dim": d, "c": [[i, j, k, num, den], ...], "unit": [rat, ...]} (1-indexed)
inline AlgebraTable algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("c"))
    throw validation_error("algebra file needs fields dim and c");
  AlgebraTable a;
  a.dim = j.at("dim").get<int>();
  if (a.dim < 1 || a.dim > 6) throw validation_error("algebra dimension out of range");
  a.c = Multilinear(a.dim, 2);
  for (const auto& entry : j.at("c")) {
    if (!entry.is_array() || entry.size() != 5)
      throw validation_error("structure constant entries are [i, j, k, num, den]");
    int i = entry[0].get<int>() - 1, jj = entry[1].get<int>() - 1, k = entry[2].get<int>() - 1;
    if (i < 0 || i >= a.dim || jj < 0 || jj >= a.dim || k < 0 || k >= a.dim)
      throw validation_error("structure constant index out of range");
    a.c.at({i, jj}, k) += rat(entry[3].get<long>(), entry[4].get<long>());
  }
  if (j.contains("unit")) {
    std::vector<Rational> u;
    for (const auto& e : j.at("unit")) u.push_back(rational_from_json(e));
    a.unit = std::move(u);
  }
  a.validate();
  return a;
}

// algebra fields plus "terms": [[[i, j, k, num, den], ...], ...] for m_1..m_N
inline DeformationSeries deformation_from_json(const json& j) {
  DeformationSeries s;
  s.algebra = algebra_from_json(j);
  if (j.contains("terms")) {
    for (const auto& term : j.at("terms")) {
      Cochain m(s.algebra.dim, 2);
      for (const auto& entry : term) {
        if (!entry.is_array() || entry.size() != 5)
          throw validation_error("deformation term entries are [i, j, k, num, den]");
        int i = entry[0].get<int>() - 1, jj = entry[1].get<int>() - 1, k = entry[2].get<int>() - 1;
        m.at({i, jj}, k) += rat(entry[3].get<long>(), entry[4].get<long>());
      }
      s.terms.push_back(std::move(m));
    }
  }
  s.validate();
  return s;
}

// {"d": d, "alpha": {"i,j": [[[e1..ed], num, den], ...], ...}} (1-indexed keys);
// missing mirror entries are filled by antisymmetry
inline PolyPoisson poisson_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("alpha"))
    throw validation_error("poisson file needs fields d and alpha");
  PolyPoisson p;
  p.d = j.at("d").get<int>();
  if (p.d < 1 || p.d > 6) throw validation_error("poisson dimension out of range");
  p.alpha.assign(p.d, std::vector<Poly>(p.d, Poly(p.d)));
  std::vector<std::vector<bool>> given(p.d, std::vector<bool>(p.d, false));
  for (const auto& [key, val] : j.at("alpha").items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw validation_error("alpha keys look like \"i,j\"");
    int i = std::stoi(key.substr(0, comma)) - 1;
    int jj = std::stoi(key.substr(comma + 1)) - 1;
    if (i < 0 || i >= p.d || jj < 0 || jj >= p.d)
      throw validation_error("alpha key out of range: " + key);
    Poly poly(p.d);
    for (const auto& term : val) {
      if (!term.is_array() || term.size() != 3)
        throw validation_error("alpha terms are [[e1..ed], num, den]");
      Poly::Exponents e = term[0].get<std::vector<int>>();
      poly.add_term(e, rat(term[1].get<long>(), term[2].get<long>()));
    }
    p.alpha[i][jj] = poly;
    given[i][jj] = true;
  }
  for (int i = 0; i < p.d; ++i)
    for (int jj = 0; jj < p.d; ++jj)
      if (given[i][jj] && !given[jj][i]) p.alpha[jj][i] = -p.alpha[i][jj];
  p.validate();
  return p;
}

// {"g1,g2": [num, den], ...}
inline std::map<std::string, Rational> weight_table_from_json(const json& j) {
  std::map<std::string, Rational> table;
  for (const auto& [code, val] : j.items()) {
    AdmissibleGraph::from_code(code); // validates the key
    table[code] = rational_from_json(val);
  }
  return table;
}

inline json weight_table_to_json(const std::map<std::string, Rational>& table) {
  json out = json::object();
  for (const auto& [code, w] : table) out[code] = rational_to_json(w);
  return out;
}

inline json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json rat_pair = rational_to_json(c);
    terms.push_back(json::array({json(e), rat_pair[0], rat_pair[1]}));
  }
  return terms;
}

inline json star_series_to_json(const StarSeries& s) {
  json out;
  out["order"] = s.order;
  out["vars"] = s.vars;
  out["weight_mode"] = s.exact_mode ? "exact" : "mc";
  out["jacobi_ok"] = s.jacobi_ok;
  json coeffs = json::array();
  for (int k = 0; k <= s.order; ++k) {
    json c;
    c["power"] = k;
    if (s.exact_mode) {
      c["terms"] = poly_to_json(s.exact[k]);
    } else {
      json terms = json::array();
      for (const auto& [e, v] : s.mc[k].value)
        terms.push_back(json::array({json(e), v, s.mc[k].error.at(e)}));
      c["terms"] = terms;
    }
    coeffs.push_back(std::move(c));
  }
  out["coefficients"] = std::move(coeffs);
  return out;
}

// {"half_edges": 2m, "sigma": [[cycle], ...], "iota": [[a, b], ...],
//  "boundary_labels": {"min dart of orbit": label}}
inline json ribbon_graph_to_json(const RibbonGraph& g) {
  json out;
  out["half_edges"] = g.darts();
  json cycles = json::array();
  std::vector<char> seen(g.darts(), 0);
  for (int h = 0; h < g.darts(); ++h) {
    if (seen[h]) continue;
    json cycle = json::array();
    for (int x = h; !seen[x]; x = g.sigma[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    cycles.push_back(std::move(cycle));
  }
  out["sigma"] = std::move(cycles);
  json pairs = json::array();
  for (auto [a, b] : canonical_edges(g)) pairs.push_back(json::array({a, b}));
  out["iota"] = std::move(pairs);
  json labels = json::object();
  for (const auto& orbit : g.boundary_cycles()) {
    int min_dart = *std::min_element(orbit.begin(), orbit.end());
    labels[std::to_string(min_dart)] = g.label[orbit[0]];
  }
  out["boundary_labels"] = std::move(labels);
  return out;
}

inline RibbonGraph ribbon_graph_from_json(const json& j) {
  RibbonGraph g;
  int darts = j.at("half_edges").get<int>();
  g.sigma.assign(darts, -1);
  g.iota.assign(darts, -1);
  g.label.assign(darts, 0);
  for (const auto& cycle : j.at("sigma")) {
    std::vector<int> c = cycle.get<std::vector<int>>();
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= darts) throw validation_error("dart out of range in sigma");
      g.sigma[c[i]] = c[(i + 1) % c.size()];
    }
  }
  for (const auto& pair : j.at("iota")) {
    int a = pair[0].get<int>(), b = pair[1].get<int>();
    if (a < 0 || a >= darts || b < 0 || b >= darts) throw validation_error("dart out of range in iota");
    g.iota[a] = b;
    g.iota[b] = a;
  }
  if (j.contains("boundary_labels")) {
    for (const auto& [dart, label] : j.at("boundary_labels").items()) {
      int start = std::stoi(dart);
      if (start < 0 || start >= darts) throw validation_error("dart out of range in labels");
      int x = start;
      do {
        g.label[x] = label.get<int>();
        x = g.sigma[g.iota[x]];
      } while (x != start);
    }
  } else {
    int next = 1;
    std::vector<char> seen(darts, 0);
    for (int h = 0; h < darts; ++h) {
      if (seen[h]) continue;
      for (int x = h; !seen[x]; x = g.sigma[g.iota[x]]) {
        seen[x] = 1;
        g.label[x] = next;
      }
      ++next;
    }
  }
  g.validate();
  return g;
}

inline json betti_to_json(const std::map<int, int>& betti, bool omit_zeros) {
  json out = json::object();
  for (const auto& [deg, b] : betti)
    if (b != 0 || !omit_zeros) out[std::to_string(deg)] = b;
  return out;
}

} // namespace graphhom
