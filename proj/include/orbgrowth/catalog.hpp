#ifndef ORBGROWTH_CATALOG_HPP_
#define ORBGROWTH_CATALOG_HPP_

#include <string>
#include <vector>

#include "orbgrowth/perm_group.hpp"

namespace orbgrowth {

/// A named group shipped with the library, stored in the group file format
/// so that the data/groups/ files and the in-code catalog share one source
/// of truth.
struct CatalogEntry {
  std::string name;
  std::string file_text;
};

/// Small catalogue of transitive groups used by the oracle test suites.
/// The Petersen generators are the permutations induced on the ten
/// 2-subsets of {0..4} (in lexicographic order) by (0 1 2 3 4) and (0 1).
inline std::vector<CatalogEntry> const& group_catalog() {
  static std::vector<CatalogEntry> const entries = {
      {"cyclic4",
       "degree 4\n"
       "(0 1 2 3)\n"},
      {"cyclic5",
       "degree 5\n"
       "(0 1 2 3 4)\n"},
      {"cyclic6",
       "degree 6\n"
       "(0 1 2 3 4 5)\n"},
      {"dihedral4",
       "degree 4\n"
       "(0 1 2 3)\n"
       "(1 3)\n"},
      {"sym3",
       "degree 3\n"
       "(0 1 2)\n"
       "(0 1)\n"},
      {"sym4",
       "degree 4\n"
       "(0 1 2 3)\n"
       "(0 1)\n"},
      {"frobenius21",
       "# Frobenius group of order 21: 7-cycle and x -> 2x (mod 7)\n"
       "degree 7\n"
       "(0 1 2 3 4 5 6)\n"
       "(1 2 4)(3 6 5)\n"},
      {"petersen",
       "# Automorphism group of the Petersen graph (order 120)\n"
       "degree 10\n"
       "(0 4 7 9 3)(1 5 8 2 6)\n"
       "(1 4)(2 5)(3 6)\n"},
  };
  return entries;
}

inline FinitePermGroup catalog_group(std::string const& name) {
  for (auto const& entry : group_catalog())
    if (entry.name == name) return parse_group_text(entry.file_text);
  throw ValueError("unknown catalog group: " + name);
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_CATALOG_HPP_
