#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "graphhom/chain_complex.hpp"
#include "graphhom/rational.hpp"

namespace graphhom {

// Rooted planar tree with labeled leaves. Stored as the preorder code:
// an internal vertex with a children contributes -a, a leaf contributes its
// (positive) label. This code is the canonical form; equality, ordering and
// hashing all go through it.
//
// Every node owns the edge below it, so the node count equals the edge count
// with the root edge included. The tree with a single leaf (the operad unit)
// has no vertices and one edge.
class PlanarTree {
public:
  using Code = std::vector<int>;

  PlanarTree() : code_{1} {}

  static PlanarTree leaf(int label) {
    if (label <= 0) throw validation_error("leaf label must be positive");
    PlanarTree t;
    t.code_ = {label};
    return t;
  }

  static PlanarTree make_internal(const std::vector<PlanarTree>& children) {
    if (children.size() < 2) throw validation_error("internal vertex needs >= 2 children");
    PlanarTree t;
    t.code_.clear();
    t.code_.push_back(-static_cast<int>(children.size()));
    for (const auto& c : children) t.code_.insert(t.code_.end(), c.code_.begin(), c.code_.end());
    return t;
  }

  // Corolla: one vertex, leaves 1..n in planar order.
  static PlanarTree corolla(int n) {
    if (n < 2) throw validation_error("corolla arity must be >= 2");
    std::vector<PlanarTree> ch;
    for (int i = 1; i <= n; ++i) ch.push_back(leaf(i));
    return make_internal(ch);
  }

  static PlanarTree from_code(Code code) {
    PlanarTree t;
    t.code_ = std::move(code);
    size_t pos = 0;
    t.validate(pos);
    if (pos != t.code_.size()) throw validation_error("trailing data in tree code");
    return t;
  }

  const Code& code() const { return code_; }

  bool is_leaf() const { return code_.size() == 1 && code_[0] > 0; }

  int leaf_count() const {
    int n = 0;
    for (int v : code_)
      if (v > 0) ++n;
    return n;
  }

  int vertex_count() const {
    int n = 0;
    for (int v : code_)
      if (v < 0) ++n;
    return n;
  }

  // Edges including the root edge: one per node.
  int edge_count() const { return static_cast<int>(code_.size()); }

  // |T| = v(T) + 1 - n.
  int degree() const { return vertex_count() + 1 - leaf_count(); }

  std::vector<int> leaf_labels() const {
    std::vector<int> out;
    for (int v : code_)
      if (v > 0) out.push_back(v);
    return out;
  }

  // Children subtrees of the root vertex; empty for the unit tree.
  std::vector<PlanarTree> children() const {
    std::vector<PlanarTree> out;
    if (is_leaf()) return out;
    size_t pos = 1;
    int arity = -code_[0];
    for (int c = 0; c < arity; ++c) {
      size_t start = pos;
      skip_subtree(pos);
      PlanarTree ch;
      ch.code_ = Code(code_.begin() + start, code_.begin() + pos);
      out.push_back(std::move(ch));
    }
    return out;
  }

  // Applies label i -> perm[i-1].
  PlanarTree relabel(const std::vector<int>& perm) const {
    PlanarTree t = *this;
    for (int& v : t.code_)
      if (v > 0) {
        if (v > static_cast<int>(perm.size())) throw validation_error("relabel permutation too short");
        v = perm[v - 1];
      }
    return t;
  }

  // `(1 (2 3))`; a bare label for the unit tree.
  std::string to_text() const {
    std::string out;
    size_t pos = 0;
    print(pos, out);
    return out;
  }

  static PlanarTree parse(const std::string& text) {
    size_t pos = 0;
    Code code;
    parse_node(text, pos, code);
    skip_spaces(text, pos);
    if (pos != text.size()) throw validation_error("trailing characters in tree text");
    return from_code(std::move(code));
  }

  auto operator<=>(const PlanarTree&) const = default;

private:
  void validate(size_t& pos) const {
    if (pos >= code_.size()) throw validation_error("truncated tree code");
    int v = code_[pos++];
    if (v == 0) throw validation_error("zero entry in tree code");
    if (v > 0) return;
    int arity = -v;
    if (arity < 2) throw validation_error("internal vertex of arity < 2");
    for (int c = 0; c < arity; ++c) validate(pos);
  }

  void skip_subtree(size_t& pos) const {
    int v = code_[pos++];
    if (v < 0)
      for (int c = 0; c < -v; ++c) skip_subtree(pos);
  }

  void print(size_t& pos, std::string& out) const {
    int v = code_[pos++];
    if (v > 0) {
      out += std::to_string(v);
      return;
    }
    out += '(';
    for (int c = 0; c < -v; ++c) {
      if (c) out += ' ';
      print(pos, out);
    }
    out += ')';
  }

  static void skip_spaces(const std::string& s, size_t& pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }

  static void parse_node(const std::string& s, size_t& pos, Code& code) {
    skip_spaces(s, pos);
    if (pos >= s.size()) throw validation_error("truncated tree text");
    if (s[pos] == '(') {
      ++pos;
      size_t arity_slot = code.size();
      code.push_back(0);
      int arity = 0;
      for (;;) {
        skip_spaces(s, pos);
        if (pos >= s.size()) throw validation_error("unbalanced parenthesis in tree text");
        if (s[pos] == ')') {
          ++pos;
          break;
        }
        parse_node(s, pos, code);
        ++arity;
      }
      if (arity < 2) throw validation_error("internal vertex of arity < 2 in tree text");
      code[arity_slot] = -arity;
    } else {
      size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == start) throw validation_error("expected leaf label in tree text");
      code.push_back(std::stoi(s.substr(start, pos - start)));
    }
  }

  Code code_;
};

// Formal Q-linear combination of trees; zero coefficients are never stored.
using TreeChain = std::map<PlanarTree, Rational>;

inline void chain_add(TreeChain& chain, const PlanarTree& t, const Rational& c) {
  if (c == 0) return;
  auto it = chain.find(t);
  if (it == chain.end()) {
    chain[t] = c;
    return;
  }
  it->second += c;
  if (it->second == 0) chain.erase(it);
}

struct SignedTree {
  PlanarTree tree;
  int sign; // +1 or -1
};

namespace detail {

// Edges of t strictly to the right of the path from the leaf labeled
// `leaf_label` to the root. Edges on the path itself (root edge included)
// do not count; a subtree hanging to the right counts with its full edge set.
inline bool edges_right_of_path(const PlanarTree& t, int leaf_label, int& count) {
  if (t.is_leaf()) return t.leaf_labels()[0] == leaf_label;
  auto ch = t.children();
  for (size_t i = 0; i < ch.size(); ++i) {
    if (edges_right_of_path(ch[i], leaf_label, count)) {
      for (size_t j = i + 1; j < ch.size(); ++j) count += ch[j].edge_count();
      return true;
    }
  }
  return false;
}

inline PlanarTree substitute_leaf(const PlanarTree& t, int leaf_label, const PlanarTree& repl) {
  PlanarTree::Code out;
  int offset = repl.leaf_count() - 1;
  for (int v : t.code()) {
    if (v == leaf_label) {
      for (int w : repl.code()) out.push_back(w > 0 ? w + leaf_label - 1 : w);
    } else if (v > leaf_label) {
      out.push_back(v + offset);
    } else {
      out.push_back(v);
    }
  }
  return PlanarTree::from_code(std::move(out));
}

} // namespace detail

// Operadic grafting t1 o_i t2: the root of t2 replaces the leaf of t1
// labeled i, no new vertex is created, and the remaining leaves are
// renumbered. The sign is (-1)^((e(t2) - 1) * r) where r counts the edges
// of t1 strictly to the right of the path from leaf i to the root.
inline SignedTree graft(const PlanarTree& t1, int leaf_index, const PlanarTree& t2) {
  if (leaf_index < 1 || leaf_index > t1.leaf_count())
    throw validation_error("graft: leaf index out of range");
  {
    auto labels = t1.leaf_labels();
    if (std::find(labels.begin(), labels.end(), leaf_index) == labels.end())
      throw validation_error("graft: no leaf with that label");
  }
  int r = 0;
  detail::edges_right_of_path(t1, leaf_index, r);
  long exponent = static_cast<long>(t2.edge_count() - 1) * r;
  int sign = (exponent % 2 == 0) ? 1 : -1;
  return {detail::substitute_leaf(t1, leaf_index, t2), sign};
}

inline void chain_add_graft(TreeChain& out, const PlanarTree& t1, int i, const PlanarTree& t2,
                            const Rational& coeff) {
  SignedTree g = graft(t1, i, t2);
  chain_add(out, g.tree, coeff * g.sign);
}

namespace detail {

struct VertexRef {
  size_t code_pos;   // position of the vertex in the preorder code
  int preorder_node; // preorder index of the vertex among all nodes
};

inline void collect_vertices(const PlanarTree::Code& code, std::vector<VertexRef>& out) {
  for (size_t pos = 0; pos < code.size(); ++pos)
    if (code[pos] < 0) out.push_back({pos, static_cast<int>(pos)});
}

// Subtree extent [pos, end) in a preorder code.
inline size_t subtree_end(const PlanarTree::Code& code, size_t pos) {
  int pending = 1;
  while (pending > 0) {
    int v = code[pos++];
    --pending;
    if (v < 0) pending += -v;
  }
  return pos;
}

} // namespace detail

// Differential on the span of trees whose internal vertices all have >= 2
// children: dT is the signed sum of one-edge expansions T' with T'/e = T.
// An expansion splits a vertex of arity a into a bottom vertex of arity
// k = a - l + 1 and a top vertex of arity l (k, l >= 2) carrying children
// i+1 .. i+l. The sign is (-1)^(number of edges strictly before the new edge
// in the preorder edge order, root edge excluded), which is the preorder node
// index of the new vertex minus one.
inline TreeChain tree_differential(const PlanarTree& t) {
  TreeChain out;
  const auto& code = t.code();
  for (size_t pos = 0; pos < code.size(); ++pos) {
    if (code[pos] >= 0) continue;
    int arity = -code[pos];
    if (arity < 3) continue;
    // children extents
    std::vector<std::pair<size_t, size_t>> child_span;
    size_t p = pos + 1;
    for (int c = 0; c < arity; ++c) {
      size_t end = detail::subtree_end(code, p);
      child_span.push_back({p, end});
      p = end;
    }
    for (int l = 2; l <= arity - 1; ++l) {
      for (int i = 0; i + l <= arity; ++i) {
        PlanarTree::Code expanded;
        expanded.reserve(code.size() + 1);
        expanded.insert(expanded.end(), code.begin(), code.begin() + pos);
        expanded.push_back(-(arity - l + 1));
        for (int c = 0; c < i; ++c)
          expanded.insert(expanded.end(), code.begin() + child_span[c].first,
                          code.begin() + child_span[c].second);
        size_t new_vertex_pos = expanded.size();
        expanded.push_back(-l);
        for (int c = i; c < i + l; ++c)
          expanded.insert(expanded.end(), code.begin() + child_span[c].first,
                          code.begin() + child_span[c].second);
        for (int c = i + l; c < arity; ++c)
          expanded.insert(expanded.end(), code.begin() + child_span[c].first,
                          code.begin() + child_span[c].second);
        expanded.insert(expanded.end(), code.begin() + child_span[arity - 1].second, code.end());
        int sign = (new_vertex_pos - 1) % 2 == 0 ? 1 : -1;
        chain_add(out, PlanarTree::from_code(std::move(expanded)), rat(sign));
      }
    }
  }
  return out;
}

inline TreeChain tree_differential(const TreeChain& chain) {
  TreeChain out;
  for (const auto& [t, c] : chain)
    for (const auto& [u, s] : tree_differential(t)) chain_add(out, u, c * s);
  return out;
}

// All planar rooted trees with n leaves labeled 1..n in planar order and
// every internal vertex having >= min_children children. min_children = 2
// gives the basis of the A-infinity component.
inline std::vector<PlanarTree> enumerate_planar_trees(int n, int min_children = 2) {
  if (n < 1) throw validation_error("tree enumeration needs n >= 1");
  if (min_children < 2) throw validation_error("min_children must be >= 2");
  if (n > 12) throw budget_error("tree enumeration capped at 12 leaves");
  // shapes by leaf count, leaves labeled in planar order at the end
  std::vector<std::vector<PlanarTree>> shapes(n + 1);
  shapes[1] = {PlanarTree::leaf(1)};
  for (int size = 2; size <= n; ++size) {
    // root arity k, composition size = n1 + ... + nk
    std::vector<PlanarTree> acc;
    std::vector<PlanarTree> picked;
    auto rec = [&](auto&& self, int remaining) -> void {
      if (remaining == 0) {
        if (static_cast<int>(picked.size()) >= min_children) {
          // relabel children so leaves read 1..size in planar order
          std::vector<PlanarTree> ch;
          int next = 1;
          for (const auto& sub : picked) {
            std::vector<int> perm(sub.leaf_count());
            for (int j = 0; j < sub.leaf_count(); ++j) perm[j] = next + j;
            next += sub.leaf_count();
            ch.push_back(sub.relabel(perm));
          }
          acc.push_back(PlanarTree::make_internal(ch));
        }
        return;
      }
      for (int part = 1; part <= remaining; ++part) {
        if (part == size) continue; // root must have >= 2 children
        for (const auto& sub : shapes[part]) {
          picked.push_back(sub);
          self(self, remaining - part);
          picked.pop_back();
        }
      }
    };
    rec(rec, size);
    // dedup (identical shapes can only arise once here, but keep it canonical)
    std::set<PlanarTree> uniq(acc.begin(), acc.end());
    shapes[size].assign(uniq.begin(), uniq.end());
  }
  return shapes[n];
}

// Chain complex of the arity-n component for one fixed leaf order, graded by
// chain degree k = -|T| = n - 1 - v(T) in [0, n-2]. The tree differential
// adds a vertex, so it lowers k by one.
inline ChainComplex ainf_component(int n) {
  if (n < 1) throw validation_error("ainf component needs n >= 1");
  if (n > 8) throw budget_error("ainf component capped at arity 8");
  if (n == 1) {
    ChainComplex c(0, 0);
    c.set_dim(0, 1);
    return c;
  }
  auto trees = enumerate_planar_trees(n, 2);
  int top = n - 2;
  std::vector<std::map<PlanarTree, int>> basis(top + 1); // degree k -> tree -> index
  for (const auto& t : trees) {
    int k = n - 1 - t.vertex_count();
    basis[k][t] = 0;
  }
  for (auto& level : basis) {
    int idx = 0;
    for (auto& [t, i] : level) i = idx++;
  }
  ChainComplex c(0, top);
  for (int k = 0; k <= top; ++k) c.set_dim(k, static_cast<int>(basis[k].size()));
  for (int k = 1; k <= top; ++k) {
    RationalMatrix d(static_cast<int>(basis[k - 1].size()), static_cast<int>(basis[k].size()));
    for (const auto& [t, col] : basis[k]) {
      for (const auto& [u, coeff] : tree_differential(t)) d.add(basis[k - 1].at(u), col, coeff);
    }
    c.set_differential(k, d);
  }
  return c;
}

} // namespace graphhom
