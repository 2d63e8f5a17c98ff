#pragma once

#include <optional>
#include <vector>

#include "merocurve/charseq.hpp"

namespace merocurve {

// Contact of two branches: (1/n') max over conjugate pairs of
// ord_X[z_j(X^{n'}) - z'_{j'}(X^n)]. Infinite exactly for equal branches;
// equality is certified by refining past a bound computed from exact
// resultants of the parent classes. Branches must carry their origin.
ExtRat contact(const Branch& f, const Branch& fp);

// contact / (n n'): symmetric, the X-scale agreement order of closest roots.
ExtRat noc(const Branch& f, const Branch& fp);

// Copy of `other` carrying the conjugate root that agrees longest with ref's
// root. The copy realizes noc(ref, other), which makes level constants
// comparable across branches in contact.
Branch aligned_branch(const Branch& ref, const Branch& other);

// The contact levels of a factorization: non-integer contact rates c_i of
// each factor plus all pairwise nocs of distinct factors. Sorted, unique.
std::vector<Rat> contact_set(const Factorization& F);

// Contact levels of the combined factor list of F and G; equal cross pairs
// contribute nothing.
std::vector<Rat> contact_set_product(const Factorization& F,
                                     const Factorization& G);

// A node of the contact tree: the stem (indices into the tree's branch
// list), the level, and the level data cached from the lowest-index stem
// member. The root has level -inf and no cached data.
struct Bud {
  std::vector<size_t> stem;
  ExtRat level;
  long parent = -1;  // index into ContactTree::buds, -1 for the root
  std::optional<LambdaData> data;
};

// Finite strict contact tree over a branch list: one bud per equivalence
// class (noc >= level) per level, plus the improper root. Same-level stems
// are disjoint and refine the stems one level down.
struct ContactTree {
  std::vector<Branch> branches;
  std::vector<std::vector<ExtRat>> nocs;  // pairwise, diagonal +inf
  std::vector<ExtRat> levels;             // -inf, l_1 < ... < l_h
  std::vector<Bud> buds;                  // root first, then by level
};

// One class of a stem under the strict relation noc > level, with the
// class's strict degree and reduced constant at that level. The improper
// root has a single class with Dstar = 1.
struct StrictFriend {
  std::vector<size_t> members;
  long Dstar = 1;
  Num E0;
};

// The strict tree over the given branches and levels; empty input yields
// the tree of the single branch Y.
ContactTree build_tree(const std::vector<Branch>& stems,
                       const std::vector<Rat>& levels);

// Tree over factor(F) and its contact set. Throws ConstantInput when F has
// no monic factors. The overload with options pins the coefficient tower,
// which lets callers factor further polynomials over the same field.
ContactTree tree_of(const MPoly& F);
ContactTree tree_of(const MPoly& F, const NewtonOptions& opt);
ContactTree tree_of_product(const MPoly& F, const MPoly& G);

// Tree over the factors of an existing factorization (same error).
ContactTree tree_over(const Factorization& fac);

// Children of a bud: the next-level buds that split its stem.
std::vector<size_t> roof(const ContactTree& T, size_t bud);
// All buds strictly above: higher level, stem contained in this stem.
std::vector<size_t> preroof(const ContactTree& T, size_t bud);

std::vector<StrictFriend> strict_friends(const ContactTree& T, size_t bud);

// -D(B) + sum of the strict friends' Dstar (0 for the root).
long d_prime(const ContactTree& T, size_t bud);
// -D(B) + sum of the stem degrees (-1 + sum for the root).
long d_double_prime(const ContactTree& T, size_t bud);

// min over the stem of noc(f, member); +inf only for f in a stem of one.
ExtRat stem_noc(const ContactTree& T, size_t bud, const Branch& f);
// stem_noc capped at the level: the level at which f parts from the bud.
// Proper buds only.
Rat bud_noc(const ContactTree& T, size_t bud, const Branch& f);

bool in_flower(const ContactTree& T, size_t bud, const Branch& f);
bool in_strict_flower(const ContactTree& T, size_t bud, const Branch& f);

// Ultrametric check: among the three pairwise nocs the two smallest agree.
bool verify_contact_triangle(const Branch& f, const Branch& fp,
                             const Branch& fpp);

// Intersection identity: ord_X f'(X^n, z) = S(f, noc(f,f')) n' n for
// distinct branches; vacuously true for equal ones.
bool verify_contact_intersection(const Branch& f, const Branch& fp);

}  // namespace merocurve
