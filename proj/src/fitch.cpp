#include "maf/fitch.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace maf {

namespace {

using StateSet = std::uint64_t;

int lowest(StateSet s) { return std::countr_zero(s); }

}  // namespace

FitchResult fitch_min_cuts(const PhyloTree& t, const StateLabeling& states) {
  FitchResult out;
  if (t.node_count() <= 1) return out;
  const auto n = static_cast<std::size_t>(t.node_count());

  auto leaf_state = [&](int v) {
    auto it = states.find(t.node(v).taxon);
    if (it == states.end()) throw std::invalid_argument("fitch: leaf without a state");
    if (it->second < 0 || it->second >= 64) throw std::invalid_argument("fitch: state out of range");
    return it->second;
  };

  // The stored root of an unrooted tree is a leaf; the pass runs on its
  // single child's subtree and settles the root edge at the end.
  std::vector<StateSet> set(n, 0);
  for (int v = t.node_count() - 1; v >= 1; --v) {
    if (t.is_leaf(v)) {
      set[static_cast<std::size_t>(v)] = StateSet{1} << leaf_state(v);
      continue;
    }
    const auto [c0, c1] = t.node(v).child;
    const StateSet a = set[static_cast<std::size_t>(c0)], b = set[static_cast<std::size_t>(c1)];
    set[static_cast<std::size_t>(v)] = (a & b) ? (a & b) : (a | b);
  }

  std::vector<int> state(n, -1);
  if (t.is_leaf(0)) {
    state[0] = leaf_state(0);
  } else {
    const auto [c0, c1] = t.node(0).child;
    const StateSet a = set[static_cast<std::size_t>(c0)], b = set[static_cast<std::size_t>(c1)];
    state[0] = lowest((a & b) ? (a & b) : (a | b));
  }
  for (int v = 1; v < t.node_count(); ++v) {
    const int up = state[static_cast<std::size_t>(t.parent(v))];
    if (t.is_leaf(v)) {
      state[static_cast<std::size_t>(v)] = leaf_state(v);
    } else {
      const StateSet s = set[static_cast<std::size_t>(v)];
      state[static_cast<std::size_t>(v)] = (s >> up) & 1U ? up : lowest(s);
    }
    if (state[static_cast<std::size_t>(v)] != up) out.cut.push_back(v);
  }
  out.changes = static_cast<int>(out.cut.size());
  return out;
}

}  // namespace maf
