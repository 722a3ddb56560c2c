#pragma once

#include <algorithm>
#include <optional>

#include "plancheck/model.hpp"

// Operational core: when does a world satisfy a state, and how do an
// action's effects rewrite a world.

namespace plancheck {

// A world satisfies a state when every positive literal's atom is a member
// and every negative literal's atom is not (closed world). Returns the first
// unsatisfied literal in state order as evidence, or nullopt when satisfied.
[[nodiscard]] inline std::optional<Literal> satisfies(const World &w,
                                                      const State &s) {
  for (const Literal &l : s.literals) {
    const bool in = contains(w, l.atom);
    if (l.polarity == Polarity::positive ? !in : in) return l;
  }
  return std::nullopt;
}

// Effect application, literal by literal:
//
//   update_world([], w)        = w
//   update_world((+,p)::S, w)  = p prepended to update_world(S, w)
//   update_world((-,p)::S, w)  = remove_all(p, update_world(S, w))
//
// The head literal is applied outermost, i.e. last — so when an atom is
// duplicated in the effects, the earlier literal's polarity wins. remove_all
// deletes every occurrence, keeping "negative effect" synonymous with
// "atom absent".
[[nodiscard]] inline World update_world(const State &e, World w) {
  for (auto it = e.literals.rbegin(); it != e.literals.rend(); ++it) {
    if (it->polarity == Polarity::positive) {
      w.atoms.insert(w.atoms.begin(), it->atom);
    } else {
      std::erase(w.atoms, it->atom);
    }
  }
  return w;
}

// Set equality: same atoms, ignoring order and multiplicity.
[[nodiscard]] inline bool world_set_eq(World a, World b) {
  auto canon = [](World &w) {
    std::sort(w.atoms.begin(), w.atoms.end());
    w.atoms.erase(std::unique(w.atoms.begin(), w.atoms.end()), w.atoms.end());
  };
  canon(a);
  canon(b);
  return a.atoms == b.atoms;
}

}  // namespace plancheck
