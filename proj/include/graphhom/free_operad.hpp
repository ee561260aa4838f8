#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "graphhom/matrix.hpp"
#include "graphhom/planar_tree.hpp"

namespace graphhom {

struct Generator {
  std::string name;
  int arity;
  auto operator<=>(const Generator&) const = default;
};

// Tree with every internal vertex decorated by a generator; decor entries
// follow the preorder order of internal vertices.
struct DecoratedTree {
  PlanarTree shape;
  std::vector<int> decor; // index into the presentation's generator list

  auto operator<=>(const DecoratedTree&) const = default;

  std::string to_text(const std::vector<Generator>& gens) const {
    std::string plain = shape.to_text();
    std::string out;
    size_t v = 0;
    for (char ch : plain) {
      if (ch == '(') out += gens[decor[v++]].name;
      out += ch;
    }
    return out;
  }
};

using DecoratedChain = std::map<DecoratedTree, Rational>;

// Operad with generators and defining relations. Relations are chains of
// decorated trees, each homogeneous in arity. When `symmetric` is set the
// arity-n component carries the full S_n leaf-relabeling action; otherwise
// everything is per fixed leaf order.
struct OperadPresentation {
  std::vector<Generator> generators;
  std::vector<DecoratedChain> relations;
  bool symmetric = true;

  void validate() const {
    for (const auto& rel : relations) {
      if (rel.empty()) throw validation_error("empty relation");
      int arity = rel.begin()->first.shape.leaf_count();
      for (const auto& [t, c] : rel) {
        if (t.shape.leaf_count() != arity)
          throw validation_error("relation mixes arities");
        check_decor(t);
      }
    }
  }

  void check_decor(const DecoratedTree& t) const {
    if (t.shape.vertex_count() != static_cast<int>(t.decor.size()))
      throw validation_error("decoration length mismatch");
    size_t v = 0;
    const auto& code = t.shape.code();
    for (int entry : code) {
      if (entry >= 0) continue;
      int gen = t.decor[v++];
      if (gen < 0 || gen >= static_cast<int>(generators.size()))
        throw validation_error("unknown generator in decoration");
      if (generators[gen].arity != -entry)
        throw validation_error("generator arity does not match vertex arity");
    }
  }
};

namespace detail {

// Decorated grafting; degree zero, no signs. Merged decor is preorder again:
// t1's vertices before the replaced leaf, then t2's, then the rest of t1's.
inline DecoratedTree graft_decorated(const DecoratedTree& t1, int leaf_label,
                                     const DecoratedTree& t2) {
  SignedTree g = graft(t1.shape, leaf_label, t2.shape);
  size_t vertices_before = 0;
  const auto& code = t1.shape.code();
  for (int entry : code) {
    if (entry == leaf_label) break;
    if (entry < 0) ++vertices_before;
  }
  std::vector<int> decor(t1.decor.begin(), t1.decor.begin() + vertices_before);
  decor.insert(decor.end(), t2.decor.begin(), t2.decor.end());
  decor.insert(decor.end(), t1.decor.begin() + vertices_before, t1.decor.end());
  return {g.tree, std::move(decor)};
}

} // namespace detail

// Basis of the arity-n component of the free operad on the presentation's
// generators: decorated trees, with all n! leaf labelings when symmetric.
inline std::vector<DecoratedTree> free_operad_basis(const OperadPresentation& p, int n) {
  if (n < 1) throw validation_error("free operad basis needs n >= 1");
  std::vector<DecoratedTree> out;
  if (n == 1) {
    out.push_back({PlanarTree::leaf(1), {}});
    return out;
  }
  std::vector<char> has_gen(16, 0);
  for (const auto& g : p.generators)
    if (g.arity < static_cast<int>(has_gen.size())) has_gen[g.arity] = 1;

  for (const auto& shape : enumerate_planar_trees(n, 2)) {
    // every vertex arity must admit a generator
    bool ok = true;
    std::vector<int> arities;
    for (int entry : shape.code())
      if (entry < 0) {
        arities.push_back(-entry);
        if (-entry >= static_cast<int>(has_gen.size()) || !has_gen[-entry]) ok = false;
      }
    if (!ok) continue;
    // all decoration choices
    std::vector<std::vector<int>> choices(arities.size());
    for (size_t v = 0; v < arities.size(); ++v)
      for (int g = 0; g < static_cast<int>(p.generators.size()); ++g)
        if (p.generators[g].arity == arities[v]) choices[v].push_back(g);
    std::vector<int> decor(arities.size(), 0);
    auto rec = [&](auto&& self, size_t v) -> void {
      if (v == arities.size()) {
        out.push_back({shape, decor});
        return;
      }
      for (int g : choices[v]) {
        decor[v] = g;
        self(self, v + 1);
      }
    };
    rec(rec, 0);
  }

  if (p.symmetric) {
    std::vector<DecoratedTree> labeled;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (const auto& t : out) labeled.push_back({t.shape.relabel(perm), t.decor});
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(labeled.begin(), labeled.end());
    labeled.erase(std::unique(labeled.begin(), labeled.end()), labeled.end());
    return labeled;
  }
  return out;
}

// Dimension of the arity-n component of the quotient operad. The ideal slice
// is spanned by grafting generator corollas into relations (and relations
// into corollas) until arity n, then relabeling leaves when symmetric; its
// corank in the free basis is the answer.
inline int presentation_dimension(const OperadPresentation& p, int n) {
  p.validate();
  if (n < 1) throw validation_error("presentation dimension needs n >= 1");
  if (p.symmetric && (n > 6 || (n > 4 && p.generators.size() > 1)))
    throw budget_error("symmetric presentation dimension capped (arity 6, or 4 with several generators)");
  if (!p.symmetric && n > 8) throw budget_error("presentation dimension capped at arity 8");

  std::vector<DecoratedTree> basis = free_operad_basis(p, n);
  if (basis.size() > 30000) throw budget_error("free operad basis too large");
  std::map<DecoratedTree, int> col;
  for (const auto& t : basis) col[t] = static_cast<int>(col.size());

  // closure of the relation set under single corolla compositions
  std::map<int, std::vector<DecoratedChain>> by_arity;
  int min_arity = n + 1;
  for (const auto& rel : p.relations) {
    int a = rel.begin()->first.shape.leaf_count();
    if (a <= n) {
      by_arity[a].push_back(rel);
      min_arity = std::min(min_arity, a);
    }
  }
  for (int a = min_arity; a < n; ++a) {
    auto it = by_arity.find(a);
    if (it == by_arity.end()) continue;
    for (const auto& vec : it->second) {
      for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
        int ag = p.generators[g].arity;
        if (a + ag - 1 > n) continue;
        DecoratedTree corolla{PlanarTree::corolla(ag), {g}};
        // relation composed with a corolla at each leaf
        for (int i = 1; i <= a; ++i) {
          DecoratedChain next;
          for (const auto& [t, c] : vec) {
            DecoratedTree u = detail::graft_decorated(t, i, corolla);
            next[u] += c;
          }
          by_arity[a + ag - 1].push_back(std::move(next));
        }
        // corolla composed with the relation at each slot
        for (int j = 1; j <= ag; ++j) {
          DecoratedChain next;
          for (const auto& [t, c] : vec) {
            DecoratedTree u = detail::graft_decorated(corolla, j, t);
            next[u] += c;
          }
          by_arity[a + ag - 1].push_back(std::move(next));
        }
      }
    }
    if (by_arity.count(a + 1) && by_arity[a + 1].size() > 30000)
      throw budget_error("ideal spanning set too large");
  }

  std::vector<DecoratedChain> spanning;
  if (auto it = by_arity.find(n); it != by_arity.end()) spanning = it->second;

  std::vector<DecoratedChain> rows;
  if (p.symmetric) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (const auto& vec : spanning) {
        DecoratedChain relabeled;
        for (const auto& [t, c] : vec)
          relabeled[DecoratedTree{t.shape.relabel(perm), t.decor}] += c;
        rows.push_back(std::move(relabeled));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    rows = spanning;
  }
  if (rows.size() > 600000) throw budget_error("ideal spanning set too large");

  RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(basis.size()));
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (const auto& [t, c] : rows[r]) {
      if (c == 0) continue;
      auto jt = col.find(t);
      if (jt == col.end()) throw validation_error("relation leaves the free basis");
      m.add(r, jt->second, c);
    }
  return static_cast<int>(basis.size()) - rank_rational(m);
}

// --- the three stock presentations ---

namespace detail {

inline DecoratedTree dec(const std::string& text, const std::vector<Generator>& gens) {
  // parse generator-prefixed tree text, e.g. "•(1 ∘(2 3))"
  std::string plain;
  std::vector<int> decor;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(' || text[i] == ')' || text[i] == ' ' ||
        (text[i] >= '0' && text[i] <= '9')) {
      plain += text[i++];
      continue;
    }
    // multi-byte generator symbol up to the following '('
    size_t j = i;
    while (j < text.size() && text[j] != '(') ++j;
    std::string name = text.substr(i, j - i);
    int idx = -1;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
      if (gens[g].name == name) idx = g;
    if (idx < 0) throw validation_error("unknown generator symbol: " + name);
    decor.push_back(idx);
    i = j;
  }
  return {PlanarTree::parse(plain), decor};
}

inline DecoratedChain rel(const std::vector<std::pair<std::string, int>>& terms,
                          const std::vector<Generator>& gens) {
  DecoratedChain out;
  for (const auto& [text, coeff] : terms) out[dec(text, gens)] += rat(coeff);
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

} // namespace detail

// One binary generator, associativity.
inline OperadPresentation assoc_presentation() {
  OperadPresentation p;
  p.generators = {{"•", 2}}; // •
  p.relations = {detail::rel({{"•(•(1 2) 3)", 1}, {"•(1 •(2 3))", -1}},
                             p.generators)};
  p.symmetric = true;
  return p;
}

// One binary generator, antisymmetry and Jacobi.
inline OperadPresentation lie_presentation() {
  OperadPresentation p;
  p.generators = {{"∘", 2}}; // ∘
  auto& g = p.generators;
  p.relations = {
      detail::rel({{"∘(1 2)", 1}, {"∘(2 1)", 1}}, g),
      detail::rel({{"∘(∘(1 2) 3)", 1},
                   {"∘(∘(2 3) 1)", 1},
                   {"∘(∘(3 1) 2)", 1}},
                  g),
  };
  p.symmetric = true;
  return p;
}

// Dot and bracket: commutative associative dot, Lie bracket, Leibniz rule.
inline OperadPresentation poisson_presentation() {
  OperadPresentation p;
  p.generators = {{"•", 2}, {"∘", 2}};
  auto& g = p.generators;
  p.relations = {
      detail::rel({{"•(1 2)", 1}, {"•(2 1)", -1}}, g),
      detail::rel({{"•(•(1 2) 3)", 1}, {"•(1 •(2 3))", -1}}, g),
      detail::rel({{"∘(1 2)", 1}, {"∘(2 1)", 1}}, g),
      detail::rel({{"∘(∘(1 2) 3)", 1},
                   {"∘(∘(2 3) 1)", 1},
                   {"∘(∘(3 1) 2)", 1}},
                  g),
      detail::rel({{"∘(1 •(2 3))", 1},
                   {"•(∘(1 2) 3)", -1},
                   {"•(2 ∘(1 3))", -1}},
                  g),
  };
  p.symmetric = true;
  return p;
}

inline OperadPresentation presentation_by_name(const std::string& name) {
  if (name == "assoc") return assoc_presentation();
  if (name == "lie") return lie_presentation();
  if (name == "poisson") return poisson_presentation();
  throw validation_error("unknown presentation: " + name);
}

} // namespace graphhom
