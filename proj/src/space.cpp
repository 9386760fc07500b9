#include "stopwright/space.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "stopwright/error.hpp"

namespace stopwright {

std::string Time::str() const {
  return is_never() ? std::string("inf") : std::to_string(n_);
}

FilteredSpace FilteredSpace::from_tree(std::span<const TreeNode> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::kStructure, "empty tree");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!index.emplace(nodes[i].id, i).second)
      throw Error(ErrorCode::kStructure, "duplicate node id '" + nodes[i].id + "'");
  }

  std::optional<std::size_t> root;
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].parent) {
      if (root)
        throw Error(ErrorCode::kStructure,
                    "more than one root: '" + nodes[*root].id + "' and '" +
                        nodes[i].id + "'");
      root = i;
      continue;
    }
    auto it = index.find(*nodes[i].parent);
    if (it == index.end())
      throw Error(ErrorCode::kStructure, "node '" + nodes[i].id +
                                             "' is orphaned: unknown parent '" +
                                             *nodes[i].parent + "'");
    children[it->second].push_back(i);
  }
  if (!root) throw Error(ErrorCode::kStructure, "no root node");

  // Depth-first walk collecting nodes per depth; unreachable nodes sit on a
  // parent cycle.
  std::vector<int> depth(nodes.size(), -1);
  std::vector<std::vector<std::size_t>> by_depth;
  std::vector<std::size_t> leaves;
  std::function<void(std::size_t, int)> visit = [&](std::size_t v, int d) {
    depth[v] = d;
    if (by_depth.size() <= static_cast<std::size_t>(d)) by_depth.resize(d + 1);
    by_depth[d].push_back(v);
    if (children[v].empty()) leaves.push_back(v);
    for (std::size_t c : children[v]) visit(c, d + 1);
  };
  visit(*root, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (depth[i] < 0)
      throw Error(ErrorCode::kStructure,
                  "node '" + nodes[i].id + "' is orphaned (not reachable from root)");
  }

  const int horizon = depth[leaves.front()];
  if (horizon == 0)
    throw Error(ErrorCode::kStructure, "root must have at least one child");
  for (std::size_t v : leaves) {
    if (depth[v] != horizon)
      throw Error(ErrorCode::kStructure,
                  "leaf depths differ: '" + nodes[leaves.front()].id +
                      "' at depth " + std::to_string(horizon) + ", '" +
                      nodes[v].id + "' at depth " + std::to_string(depth[v]));
    if (!nodes[v].prob)
      throw Error(ErrorCode::kStructure,
                  "leaf '" + nodes[v].id + "' has no probability");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!children[i].empty() && nodes[i].prob)
      throw Error(ErrorCode::kStructure,
                  "internal node '" + nodes[i].id + "' carries a probability");
  }

  Rational total;
  for (std::size_t v : leaves) {
    if (nodes[v].prob->sign() <= 0)
      throw Error(ErrorCode::kZeroProbability,
                  "leaf '" + nodes[v].id + "' has probability " +
                      nodes[v].prob->str());
    total += *nodes[v].prob;
  }
  if (total != Rational(1))
    throw Error(ErrorCode::kProbabilitySum,
                "leaf probabilities sum to " + total.str());

  FilteredSpace space;
  space.horizon_ = horizon;
  space.root_id_ = nodes[*root].id;
  std::vector<std::size_t> atom_of_leaf(nodes.size(), 0);
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    atom_of_leaf[leaves[a]] = a;
    space.atom_probs_.push_back(*nodes[leaves[a]].prob);
  }

  // Leaves below each node, in depth-first order.
  std::vector<std::vector<std::size_t>> below(nodes.size());
  std::function<void(std::size_t)> collect = [&](std::size_t v) {
    if (children[v].empty()) {
      below[v].push_back(atom_of_leaf[v]);
      return;
    }
    for (std::size_t c : children[v]) {
      collect(c);
      below[v].insert(below[v].end(), below[c].begin(), below[c].end());
    }
  };
  collect(*root);

  std::vector<std::size_t> block_index(nodes.size(), 0);
  space.levels_.resize(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    Level& lv = space.levels_[static_cast<std::size_t>(n - 1)];
    lv.block_of_atom.assign(leaves.size(), 0);
    const auto& layer = by_depth[static_cast<std::size_t>(n)];
    for (std::size_t b = 0; b < layer.size(); ++b) {
      const std::size_t v = layer[b];
      block_index[v] = b;
      lv.ids.push_back(nodes[v].id);
      lv.atoms.push_back(below[v]);
      Rational p;
      for (std::size_t a : below[v]) {
        p += space.atom_probs_[a];
        lv.block_of_atom[a] = b;
      }
      lv.probs.push_back(p);
      lv.parent.push_back(n >= 2 ? block_index[index.at(*nodes[v].parent)] : 0);
    }
  }
  return space;
}

std::optional<std::size_t> FilteredSpace::find_block(int n,
                                                     std::string_view id) const {
  if (n < 1 || n > horizon_) return std::nullopt;
  const auto& ids = level(n).ids;
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

bool FilteredSpace::same_shape(const FilteredSpace& other) const {
  if (horizon_ != other.horizon_ || atom_probs_ != other.atom_probs_)
    return false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].atoms != other.levels_[i].atoms) return false;
  }
  return true;
}

AtomValues FilteredSpace::lift(std::span<const Rational> block_values,
                               int n) const {
  AtomValues out(num_atoms());
  for (std::size_t a = 0; a < num_atoms(); ++a)
    out[a] = block_values[block_of(n, a)];
  return out;
}

AdaptedProcess AdaptedProcess::constant(const FilteredSpace& space,
                                        const Rational& c) {
  AdaptedProcess x;
  for (int n = 1; n <= space.horizon(); ++n)
    x.values.emplace_back(space.num_blocks(n), c);
  x.infinity.assign(space.num_atoms(), c);
  return x;
}

const Rational& AdaptedProcess::at(const FilteredSpace& space, Time t,
                                   std::size_t atom) const {
  if (t.is_never()) return infinity[atom];
  return values[static_cast<std::size_t>(t.step() - 1)]
               [space.block_of(t.step(), atom)];
}

bool AdaptedProcess::fits(const FilteredSpace& space) const {
  if (values.size() != static_cast<std::size_t>(space.horizon())) return false;
  for (int n = 1; n <= space.horizon(); ++n) {
    if (values[static_cast<std::size_t>(n - 1)].size() != space.num_blocks(n))
      return false;
  }
  return infinity.size() == space.num_atoms();
}

Event Event::none(const FilteredSpace& space) { return Event(space.num_atoms()); }

Event Event::all(const FilteredSpace& space) {
  Event e(space.num_atoms());
  e.member_.assign(space.num_atoms(), true);
  return e;
}

Event Event::of(const FilteredSpace& space,
                std::initializer_list<std::size_t> atoms) {
  Event e(space.num_atoms());
  for (std::size_t a : atoms) e.member_.at(a) = true;
  return e;
}

std::vector<std::size_t> Event::atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < member_.size(); ++a)
    if (member_[a]) out.push_back(a);
  return out;
}

AtomValues Event::indicator() const {
  AtomValues f(member_.size());
  for (std::size_t a = 0; a < member_.size(); ++a)
    f[a] = member_[a] ? Rational(1) : Rational(0);
  return f;
}

Rational expectation(const FilteredSpace& space, std::span<const Rational> f) {
  Rational sum;
  for (std::size_t a = 0; a < space.num_atoms(); ++a)
    sum += space.prob(a) * f[a];
  return sum;
}

BlockValues conditional_expectation(const FilteredSpace& space,
                                    std::span<const Rational> f, int m,
                                    int n) {
  BlockValues out(space.num_blocks(n));
  for (std::size_t c = 0; c < space.num_blocks(m); ++c) {
    const std::size_t b = space.block_of(n, space.block_atoms(m, c).front());
    out[b] += space.block_prob(m, c) * f[c];
  }
  for (std::size_t b = 0; b < out.size(); ++b) out[b] /= space.block_prob(n, b);
  return out;
}

bool is_measurable(const FilteredSpace& space, std::span<const Rational> f,
                   int n) {
  for (std::size_t b = 0; b < space.num_blocks(n); ++b) {
    const auto atoms = space.block_atoms(n, b);
    for (std::size_t a : atoms)
      if (f[a] != f[atoms.front()]) return false;
  }
  return true;
}

bool is_measurable(const FilteredSpace& space, const Event& event, int n) {
  const AtomValues f = event.indicator();
  return is_measurable(space, f, n);
}

}  // namespace stopwright
