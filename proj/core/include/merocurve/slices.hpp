#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merocurve/contact.hpp"

namespace merocurve {

// Deformation triple attached to a proper bud: z is the stem
// representative's canonical root truncated below the level and rescaled
// onto the X^V grid, V is the smallest grid compatible with the level, and
// W = level * V.
struct BudEdge {
  Series z;
  long V = 1;
  long W = 0;
};

BudEdge bud_edge(const ContactTree& T, size_t bud);

// Initial X-coefficient of H(X^V, z(X) + X^W Y) as a polynomial in Y over
// the coefficient tower. Zero H yields the zero polynomial. Throws
// NotOnEdge when z does not live on the X^V grid below W.
KPoly minco(const MPoly& H, const Series& z, long V, long W);

// Split of the monic part of minco(H) by the stem: sinco collects the
// roots shared with some stem member's minco, pinco the others. Both are
// monic; both are 1 when H = 0.
KPoly sinco(const MPoly& H, const std::vector<Branch>& stem, const Series& z,
            long V, long W);
KPoly pinco(const MPoly& H, const std::vector<Branch>& stem, const Series& z,
            long V, long W);

// Slices of a factored H along a contact tree, as sorted index sets into
// H.factors. For each bud: omega holds the factors whose noc with every
// stem member reaches the level (all of them at the root), omega_prime
// those with noc exactly the level throughout (none at the root), and
// omega_star the rest of omega. omega_tb strips the children's omegas from
// omega, and omega_star_tb strips omega_prime from omega_tb. For a
// non-root bud, omega_star_pair lists the factors whose noc with that
// bud's stem exceeds the parent level somewhere without falling below it,
// minus the bud's own omega; it is indexed by the child bud.
struct SliceAssignment {
  Factorization H;
  std::vector<std::vector<ExtRat>> noc_table;  // factor x tree branch
  std::vector<std::vector<size_t>> omega;
  std::vector<std::vector<size_t>> omega_prime;
  std::vector<std::vector<size_t>> omega_star;
  std::vector<std::vector<size_t>> omega_tb;
  std::vector<std::vector<size_t>> omega_star_tb;
  std::vector<std::vector<size_t>> omega_star_pair;
};

SliceAssignment assign_slices(const Factorization& H, const ContactTree& T);

// Monic product of the selected factors (budget-limited coefficients), and
// its Y-degree counted with factor multiplicities.
MPoly slice_poly(const Factorization& H, const std::vector<size_t>& idx);
long slice_deg(const Factorization& H, const std::vector<size_t>& idx);

// The partition identities of an assignment: omega splits into omega_tb
// plus the children's omegas, omega_tb into omega_prime plus omega_star_tb,
// omega_star_tb into the children's omega_star_pair sets, and the omega_tb
// sets over all buds partition the full factor list.
bool verify_slice_partitions(const SliceAssignment& sa, const ContactTree& T);

// Valuation of H at a bud. For a proper bud this is ord_X of the content
// plus, for each factor, multiplicity times degree times the S-invariant at
// the level where the factor parts from the stem; for the root it is ord_X
// of H itself. Throws ZeroArgument when H is zero.
Rat strength(const Factorization& H, const ContactTree& T, size_t bud);

// ord_X H(X^V, z + X^W Y) = V * strength at a proper bud's edge, and
// ord_X H = strength at the root.
bool verify_strength(const MPoly& Hpoly, const Factorization& H,
                     const ContactTree& T, size_t bud);

// Constant and reduced degree of the strict slice at a bud: A is the
// product of the A-invariants of the omega_star factors at the level, D the
// Y-degree of the strict slice divided by the strict degree Dstar. The
// _at form evaluates one strict class of the stem instead of the whole
// bud; the plain form requires a bud whose stem is pairwise strict.
struct DoublyStrict {
  Num A;
  long D = 0;
};

DoublyStrict doubly_strict(const Factorization& H, const ContactTree& T,
                           size_t bud);
DoublyStrict doubly_strict_at(const Factorization& H, const ContactTree& T,
                              size_t bud, const StrictFriend& fr);

// Per-bud row of a factorization report. The primitive slice is compared
// against the tree's degree data, the full slice against the subdiscrepancy
// degree, the roof product against the slices above, and the intersection
// orders with the stem against degree times strength.
struct BudReport {
  size_t bud = 0;
  bool predicted = true;
  std::vector<size_t> primitive;  // omega_prime indices into H.factors
  MPoly slice;                    // monic product of the primitive factors
  long deg_prime = 0;
  long deg_omega = 0;
  long want_prime = 0;   // D'(B)
  long want_omega = 0;   // D''(B)
  bool degree_match = false;
  bool roof_match = false;
  std::vector<Rat> ints;       // per stem member, for predicted proper buds
  std::vector<Rat> want_ints;  // deg(f) * S(B) * deg_prime
  bool int_match = false;
};

struct FactorizationReport {
  ContactTree tree;
  SliceAssignment slices;  // slices.H is the factored derivative/jacobian
  std::vector<BudReport> buds;
  bool split_match = false;  // primitive slices partition the factor list
  bool all_match = false;    // every predicted row checks out
};

// Contact-structure factorization of F_Y along the tree of F. F must have
// a monic factor and be squarefree.
FactorizationReport derivative_factorization(const MPoly& F,
                                             const NewtonOptions& opt = {});

// Same for the jacobian of (F, G) along the tree of FG, or for (FG)_Y when
// product_rule is set. Buds where G's slice is nontrivial, or where G's
// strength vanishes in jacobian mode, are marked not predicted.
FactorizationReport jacobian_factorization(const MPoly& F, const MPoly& G,
                                           bool product_rule = false,
                                           const NewtonOptions& opt = {});

// One verified consequence of the slice calculus at one bud. applicable
// reports whether the hypotheses held; holds is true unless an applicable
// conclusion failed, in which case note carries the failing quantity.
struct LemmaCheck {
  std::string name;
  size_t bud = 0;
  bool applicable = false;
  bool holds = true;
  std::string note;
};

// Checks the derivative and jacobian slice laws on F, G and the tree of
// FG: degree transfer under partial_y, strict-degree drop, minco/pinco/
// sinco transfer from F_Y to the jacobian and to (FG)_Y, propagation of
// the jacobian hypothesis up the tree, and the product-iff-degree
// criterion for the primitive decomposition.
std::vector<LemmaCheck> verify_sp_lemmas(const MPoly& F, const MPoly& G,
                                         const ContactTree& T);

}  // namespace merocurve
